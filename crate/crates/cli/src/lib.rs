//! Command implementations behind the `ghzshare` binary.

use std::f64::consts::FRAC_PI_4;
use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Result};
use ghzshare_core::feasibility::{self, p_samples, phi_samples};
use ghzshare_core::lhvbound;
use ghzshare_core::{FeasibilityGrid, Inequality, ScenarioKind};

pub mod output;
pub mod verify;

/// Invalid parameters; reported with exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()).into())
}

/// Exit code for an error returned by one of the commands.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    if e.is::<UsageError>() {
        2
    } else {
        1
    }
}

fn check_bias(v: f64) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        return usage(format!("v must lie in (0, 1), got {v}"));
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub kind: ScenarioKind,
    pub grid_phi: usize,
    pub grid_p: usize,
    pub v: Option<f64>,
    /// CSV destination; standard output when absent.
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_phi < 1 {
            return usage("--grid-phi must be at least 1");
        }
        if self.grid_p < 2 {
            return usage("--grid-p must be at least 2");
        }
        match (self.kind, self.v) {
            (ScenarioKind::Genuine, Some(v)) => check_bias(v),
            (ScenarioKind::Genuine, None) => usage("a genuine scan needs --v"),
            (ScenarioKind::Standard, Some(_)) => usage("a standard scan takes no --v"),
            (ScenarioKind::Standard, None) => Ok(()),
        }
    }
}

pub struct ScanOutput {
    pub grid: FeasibilityGrid,
    pub csv: String,
}

/// Runs the scan, refuses to emit anything if the grid contradicts the
/// closed-form windows, then writes the requested files.
pub fn run_scan(cfg: &ScanConfig) -> Result<ScanOutput> {
    cfg.validate()?;
    let grid = feasibility::scan(cfg.kind, &phi_samples(cfg.grid_phi), &p_samples(cfg.grid_p), cfg.v)?;
    let bad = grid.window_inconsistencies();
    if let Some(&(i, j)) = bad.first() {
        bail!(
            "{} cells disagree with the closed-form window, first at phi = {}, p = {}",
            bad.len(),
            grid.phi[i],
            grid.p[j]
        );
    }
    let csv = output::to_csv(&grid);
    let svg = cfg.svg.as_ref().map(|_| output::to_svg(&grid));
    let mut files = Vec::new();
    if let Some(path) = &cfg.out {
        files.push((path.as_path(), csv.as_str()));
    }
    if let (Some(path), Some(svg)) = (&cfg.svg, &svg) {
        files.push((path.as_path(), svg.as_str()));
    }
    output::write_atomically(&files)?;
    Ok(ScanOutput { grid, csv })
}

pub fn scan_summary(cfg: &ScanConfig, grid: &FeasibilityGrid) -> String {
    let mut s = format!(
        "{} scan: {} x {} cells, {} with a double violation",
        cfg.kind.name(),
        grid.phi.len(),
        grid.p.len(),
        grid.flagged_count()
    );
    if let Some(v) = cfg.v {
        write!(s, " (v = {v})").unwrap();
    }
    if let Some(p) = &cfg.out {
        write!(s, "; csv -> {}", p.display()).unwrap();
    }
    if let Some(p) = &cfg.svg {
        write!(s, "; svg -> {}", p.display()).unwrap();
    }
    s
}

fn fmt_window(w: &ghzshare_core::Interval) -> String {
    if w.empty {
        "empty".to_string()
    } else {
        format!("({:.4}, {:.4})", w.lo, w.hi)
    }
}

/// Threshold and window report for the given biases.
pub fn windows_report(biases: &[f64]) -> Result<String> {
    for &v in biases {
        check_bias(v)?;
    }
    let vt = feasibility::v_threshold_genuine();
    let mut s = String::new();
    writeln!(
        s,
        "standard phi threshold = {:.4}",
        feasibility::phi_threshold_standard()
    )?;
    writeln!(
        s,
        "standard window at phi = pi/4: {}",
        fmt_window(&feasibility::p_window_standard(FRAC_PI_4)?)
    )?;
    writeln!(s, "genuine v threshold = {vt:.4}")?;
    for &v in biases {
        if v <= vt {
            writeln!(s, "v = {v}: no window (v below {vt:.4})")?;
            continue;
        }
        writeln!(
            s,
            "v = {v}: phi threshold = {:.4}, window at phi = pi/4: {}",
            feasibility::phi_threshold_genuine(v)?,
            fmt_window(&feasibility::p_window_genuine(FRAC_PI_4, v)?)
        )?;
    }
    Ok(s)
}

/// Classical bounds from enumeration next to the quantum witnesses.
pub fn bounds_report() -> Result<String> {
    let local = lhvbound::enumerate_local(Inequality::Mermin);
    let hybrid = lhvbound::enumerate_hybrid(None);
    let mq = lhvbound::quantum_witness_max(Inequality::Mermin)?;
    let sq = lhvbound::quantum_witness_max(Inequality::Svetlichny)?;
    if local.count != 64 || hybrid.count != 3072 {
        bail!(
            "strategy enumeration produced {} local and {} hybrid strategies",
            local.count,
            hybrid.count
        );
    }
    if f64::from(local.max) >= mq || f64::from(hybrid.max) >= sq {
        bail!("quantum witness does not exceed the classical bound");
    }
    let mut s = String::new();
    writeln!(s, "mermin_classical_max = {}", local.max)?;
    writeln!(s, "svetlichny_classical_max = {}", hybrid.max)?;
    writeln!(s, "mermin_quantum_witness ≈ {mq:.4}")?;
    writeln!(s, "svetlichny_quantum_witness ≈ {sq:.4}")?;
    writeln!(s, "local_strategies = {}", local.count)?;
    writeln!(s, "hybrid_strategies = {}", hybrid.count)?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows_text() {
        let r = windows_report(&[0.8, 0.9, 0.6]).unwrap();
        assert!(r.contains("standard phi threshold = 0.4240"));
        assert!(r.contains("standard window at phi = pi/4: (0.0000, 1.0000)"));
        assert!(r.contains("genuine v threshold = 0.7071"));
        assert!(r.contains("v = 0.8: phi threshold = 0.6829, window at phi = pi/4: (0.4142, 0.4822)"));
        assert!(r.contains("v = 0.9: phi threshold = 0.6429, window at phi = pi/4: (0.4142, 0.5398)"));
        assert!(r.contains("v = 0.6: no window (v below 0.7071)"));
        assert!(windows_report(&[1.0]).unwrap_err().is::<UsageError>());
    }

    #[test]
    fn bounds_text() {
        let r = bounds_report().unwrap();
        assert!(r.contains("mermin_classical_max = 2\n"));
        assert!(r.contains("svetlichny_classical_max = 4\n"));
        assert!(r.contains("mermin_quantum_witness ≈ 4.0000"));
        assert!(r.contains("svetlichny_quantum_witness ≈ 5.6569"));
        assert!(r.contains("local_strategies = 64"));
        assert!(r.contains("hybrid_strategies = 3072"));
    }

    #[test]
    fn scan_config_validation() {
        let base = ScanConfig {
            kind: ScenarioKind::Genuine,
            grid_phi: 10,
            grid_p: 10,
            v: Some(0.8),
            out: None,
            svg: None,
        };
        assert!(base.validate().is_ok());
        for bad in [
            ScanConfig {
                v: None,
                ..base.clone()
            },
            ScanConfig {
                v: Some(1.0),
                ..base.clone()
            },
            ScanConfig {
                grid_p: 1,
                ..base.clone()
            },
            ScanConfig {
                grid_phi: 0,
                ..base.clone()
            },
            ScanConfig {
                kind: ScenarioKind::Standard,
                ..base.clone()
            },
        ] {
            let e = bad.validate().unwrap_err();
            assert_eq!(exit_code(&e), 2, "{bad:?}");
        }
    }
}
