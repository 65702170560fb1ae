//! CSV and SVG renderings of a feasibility grid, and atomic file writes.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use ghzshare_core::feasibility::{phi_threshold_genuine, phi_threshold_standard};
use ghzshare_core::{FeasibilityGrid, ScenarioKind};
use tempfile::NamedTempFile;

/// Shortest round-trip decimal of `x` after rounding to 12 significant digits.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    format!("{rounded}")
}

pub fn csv_header(grid: &FeasibilityGrid) -> &'static str {
    match grid.kind {
        ScenarioKind::Standard => "phi,p,value1,value2,double_violation",
        ScenarioKind::Genuine => "phi,p,value1,value2,double_violation,v",
    }
}

/// One row per cell, φ-major then p.
pub fn to_csv(grid: &FeasibilityGrid) -> String {
    let mut out = String::with_capacity(grid.cells().len() * 48);
    out.push_str(csv_header(grid));
    out.push('\n');
    let v = grid.v.map(format_number);
    for (phi, p, cell) in grid.iter() {
        write!(
            out,
            "{},{},{},{},{}",
            format_number(phi),
            format_number(p),
            format_number(cell.value1),
            format_number(cell.value2),
            u8::from(cell.double_violation)
        )
        .unwrap();
        if let Some(v) = &v {
            out.push(',');
            out.push_str(v);
        }
        out.push('\n');
    }
    out
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

struct Frame {
    phi_max: f64,
}

impl Frame {
    fn x(&self, phi: f64) -> f64 {
        LEFT + (phi / self.phi_max).clamp(0.0, 1.0) * (WIDTH - LEFT - RIGHT)
    }

    fn y(&self, p: f64) -> f64 {
        HEIGHT - BOTTOM - p.clamp(0.0, 1.0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn half_step(axis: &[f64], i: usize) -> (f64, f64) {
    let lo = if i > 0 {
        (axis[i] - axis[i - 1]) / 2.0
    } else if axis.len() > 1 {
        (axis[1] - axis[0]) / 2.0
    } else {
        0.0
    };
    let hi = if i + 1 < axis.len() {
        (axis[i + 1] - axis[i]) / 2.0
    } else {
        lo
    };
    (lo, hi)
}

/// Closed-form window edges `(lo(φ), hi(φ))` for `φ` above the threshold.
fn boundary_curves(grid: &FeasibilityGrid) -> (f64, Vec<(f64, f64, f64)>) {
    let threshold = match grid.kind {
        ScenarioKind::Standard => Some(phi_threshold_standard()),
        ScenarioKind::Genuine => grid.v.and_then(|v| phi_threshold_genuine(v).ok()),
    };
    let Some(t) = threshold else {
        return (f64::NAN, Vec::new());
    };
    let phi_max = std::f64::consts::FRAC_PI_4;
    let pts = (0..=200)
        .map(|k| {
            let phi = t + (phi_max - t) * k as f64 / 200.0;
            let s = (2.0 * phi).sin();
            // Unclamped edges meet at the threshold; the frame clamps them.
            let (lo, hi) = match grid.kind {
                ScenarioKind::Standard => (1.0 / s - 1.0, 3.0 - 2.0 / s),
                ScenarioKind::Genuine => {
                    let v = grid.v.unwrap_or(0.5);
                    (
                        std::f64::consts::SQRT_2 / s - 1.0,
                        1.0 + 1.0 / v - std::f64::consts::SQRT_2 / (v * s),
                    )
                }
            };
            (phi, lo, hi)
        })
        .collect();
    (t, pts)
}

/// Standalone SVG 1.1 figure: flagged cells filled over the `(φ, p)`
/// rectangle with the closed-form window edges overlaid.
pub fn to_svg(grid: &FeasibilityGrid) -> String {
    let f = Frame {
        phi_max: std::f64::consts::FRAC_PI_4,
    };
    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    let title = match (grid.kind, grid.v) {
        (ScenarioKind::Standard, _) => "Double violation of the Mermin inequality".to_string(),
        (ScenarioKind::Genuine, Some(v)) => format!(
            "Double violation of the Svetlichny inequality, v = {}",
            format_number(v)
        ),
        (ScenarioKind::Genuine, None) => "Double violation of the Svetlichny inequality".to_string(),
    };
    writeln!(s, r#"<title>{title}</title>"#).unwrap();
    writeln!(
        s,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    )
    .unwrap();

    // Flagged region, one rectangle per contiguous run in p.
    writeln!(s, r##"<g fill="#4a90d9" stroke="none">"##).unwrap();
    let np = grid.p.len();
    for (i, &phi) in grid.phi.iter().enumerate() {
        let (dl, dr) = half_step(&grid.phi, i);
        let mut j = 0;
        while j < np {
            if !grid.cell(i, j).double_violation {
                j += 1;
                continue;
            }
            let start = j;
            while j < np && grid.cell(i, j).double_violation {
                j += 1;
            }
            let (pl, _) = half_step(&grid.p, start);
            let (_, ph) = half_step(&grid.p, j - 1);
            let x0 = f.x(phi - dl);
            let x1 = f.x(phi + dr);
            let y0 = f.y(grid.p[j - 1] + ph);
            let y1 = f.y(grid.p[start] - pl);
            writeln!(
                s,
                r#"<rect x="{x0:.2}" y="{y0:.2}" width="{:.2}" height="{:.2}"/>"#,
                (x1 - x0).max(0.0),
                (y1 - y0).max(0.0)
            )
            .unwrap();
        }
    }
    writeln!(s, "</g>").unwrap();

    let (threshold, curve) = boundary_curves(grid);
    if !curve.is_empty() {
        for (name, pick) in [("lower", 0usize), ("upper", 1usize)] {
            let pts: Vec<String> = curve
                .iter()
                .map(|&(phi, lo, hi)| {
                    let p = if pick == 0 { lo } else { hi };
                    format!("{:.2},{:.2}", f.x(phi), f.y(p))
                })
                .collect();
            writeln!(
                s,
                r##"<polyline class="boundary-{name}" points="{}" fill="none" stroke="#c0392b" stroke-width="1.5"/>"##,
                pts.join(" ")
            )
            .unwrap();
        }
        writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#555" stroke-dasharray="4 3"/>"##,
            f.y(0.0),
            f.y(1.0),
            x = f.x(threshold)
        )
        .unwrap();
    }

    // Axes.
    writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        WIDTH - LEFT - RIGHT,
        HEIGHT - TOP - BOTTOM
    )
    .unwrap();
    writeln!(s, r#"<g font-family="sans-serif" font-size="12" fill="black">"#).unwrap();
    for (phi, label) in [(0.0, "0"), (std::f64::consts::PI / 8.0, "π/8"), (f.phi_max, "π/4")] {
        let x = f.x(phi);
        let y = f.y(0.0);
        writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{y:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#,
            y + 5.0
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{label}</text>"#,
            y + 20.0
        )
        .unwrap();
    }
    for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let y = f.y(p);
        writeln!(
            s,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/>"#,
            LEFT - 5.0
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{p}</text>"#,
            LEFT - 8.0,
            y + 4.0
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">φ (rad)</text>"#,
        (LEFT + WIDTH - RIGHT) / 2.0,
        HEIGHT - 15.0
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">p</text>"#,
        (TOP + HEIGHT - BOTTOM) / 2.0,
        (TOP + HEIGHT - BOTTOM) / 2.0
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="14">{title}</text>"#,
        WIDTH / 2.0
    )
    .unwrap();
    writeln!(s, "</g>").unwrap();
    writeln!(s, "</svg>").unwrap();
    s
}

/// Stages every `(path, contents)` in a temporary file next to its target
/// and renames them into place only once all writes succeeded.
pub fn write_atomically(files: &[(&Path, &str)]) -> Result<()> {
    let mut staged = Vec::with_capacity(files.len());
    for (path, contents) in files {
        let dir = match path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d,
            _ => Path::new("."),
        };
        let mut tmp = NamedTempFile::new_in(dir).with_context(|| format!("cannot write to {}", dir.display()))?;
        tmp.write_all(contents.as_bytes())
            .and_then(|_| tmp.flush())
            .and_then(|_| relax_permissions(tmp.as_file()))
            .with_context(|| format!("writing {}", path.display()))?;
        staged.push((tmp, *path));
    }
    for (tmp, path) in staged {
        tmp.persist(path)
            .with_context(|| format!("renaming into {}", path.display()))?;
    }
    Ok(())
}

// Temporary files are created owner-only; give outputs the usual mode.
#[cfg(unix)]
fn relax_permissions(f: &std::fs::File) -> std::io::Result<()> {
    use std::os::unix::fs::PermissionsExt;
    f.set_permissions(std::fs::Permissions::from_mode(0o644))
}

#[cfg(not(unix))]
fn relax_permissions(_: &std::fs::File) -> std::io::Result<()> {
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ghzshare_core::feasibility::{p_samples, phi_samples, scan};

    #[test]
    fn number_format() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(1.0), "1");
        assert_eq!(format_number(0.5), "0.5");
        assert_eq!(format_number(0.1 + 0.2), "0.3");
        assert_eq!(format_number(std::f64::consts::PI), "3.14159265359");
        assert_eq!(format_number(-2.0 / 3.0), "-0.666666666667");
        assert_eq!(format_number(4.0 * std::f64::consts::SQRT_2), "5.65685424949");
        assert_eq!(format_number(1234567.0), "1234567");
    }

    #[test]
    fn csv_layout() {
        let g = scan(ScenarioKind::Standard, &phi_samples(3), &p_samples(2), None).unwrap();
        let csv = to_csv(&g);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "phi,p,value1,value2,double_violation");
        assert_eq!(lines.len(), 1 + 6);
        // Last row: φ = π/4, p = 1 → (4, 2), not a double violation.
        assert_eq!(lines[6], "0.785398163397,1,4,2,0");

        let g = scan(ScenarioKind::Genuine, &phi_samples(2), &p_samples(2), Some(0.8)).unwrap();
        let csv = to_csv(&g);
        assert!(csv.starts_with("phi,p,value1,value2,double_violation,v\n"));
        assert!(csv
            .lines()
            .skip(1)
            .all(|l| l.ends_with(",0.8") && l.split(',').count() == 6));
    }

    #[test]
    fn svg_is_well_formed_enough() {
        let g = scan(ScenarioKind::Standard, &phi_samples(40), &p_samples(40), None).unwrap();
        let svg = to_svg(&g);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains(r#"version="1.1""#));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("boundary-lower") && svg.contains("boundary-upper"));
        assert!(svg.matches("<rect").count() > 2);

        let g = scan(ScenarioKind::Genuine, &phi_samples(10), &p_samples(10), Some(0.5)).unwrap();
        let svg = to_svg(&g);
        assert!(!svg.contains("boundary-lower"));
    }
}
