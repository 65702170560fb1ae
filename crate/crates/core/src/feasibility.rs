//! Double-violation windows, thresholds and sampled feasibility grids.
//!
//! With `s = sin 2φ`, both Mermin values exceed 2 iff
//! `1/s − 1 < p < 3 − 2/s`, and both Svetlichny values exceed 4 iff
//! `√2/s − 1 < p < 1 + 1/v − √2/(v s)`. Windows are clamped to `[0, 1]`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, SQRT_2};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scenario::{genuine_case_values, standard_case_values, MixtureParams, ScenarioKind, ScenarioReport};

/// Open interval of mixing probabilities, possibly empty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub empty: bool,
}

impl Interval {
    fn clamped(lo: f64, hi: f64) -> Self {
        let lo = lo.max(0.0);
        let hi = hi.min(1.0);
        Self {
            lo,
            hi,
            empty: lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less),
        }
    }

    fn empty() -> Self {
        Self {
            lo: f64::NAN,
            hi: f64::NAN,
            empty: true,
        }
    }

    pub fn contains(&self, p: f64) -> bool {
        !self.empty && p > self.lo && p < self.hi
    }
}

fn standard_window_at(sin2phi: f64) -> Interval {
    if sin2phi <= 0.0 {
        return Interval::empty();
    }
    Interval::clamped(1.0 / sin2phi - 1.0, 3.0 - 2.0 / sin2phi)
}

fn genuine_window_at(sin2phi: f64, v: f64) -> Interval {
    if sin2phi <= 0.0 {
        return Interval::empty();
    }
    Interval::clamped(SQRT_2 / sin2phi - 1.0, 1.0 + 1.0 / v - SQRT_2 / (v * sin2phi))
}

fn check_window_phi(phi: f64) -> Result<f64> {
    if phi.is_finite() && phi > 0.0 && phi <= FRAC_PI_4 {
        Ok((2.0 * phi).sin())
    } else {
        Err(Error::OutOfRange {
            name: "phi",
            value: phi,
            domain: "(0, pi/4]",
        })
    }
}

fn check_open_unit(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value: v,
            domain: "(0, 1)",
        })
    }
}

/// Mermin double-violation window in `p`.
pub fn p_window_standard(phi: f64) -> Result<Interval> {
    Ok(standard_window_at(check_window_phi(phi)?))
}

/// Infimum of `φ` with a nonempty Mermin window: `sin 2φ = 3/4`.
pub fn phi_threshold_standard() -> f64 {
    0.5 * 0.75f64.asin()
}

/// Svetlichny double-violation window in `p` for bias `v`.
pub fn p_window_genuine(phi: f64, v: f64) -> Result<Interval> {
    let s = check_window_phi(phi)?;
    check_open_unit("v", v)?;
    Ok(genuine_window_at(s, v))
}

/// Infimum bias with any Svetlichny window; attained at `φ = π/4`.
pub fn v_threshold_genuine() -> f64 {
    FRAC_1_SQRT_2
}

/// Infimum of `φ` with a nonempty Svetlichny window at bias `v`:
/// `sin 2φ = √2 (1 + v) / (1 + 2v)`.
pub fn phi_threshold_genuine(v: f64) -> Result<f64> {
    check_open_unit("v", v)?;
    if v <= v_threshold_genuine() {
        return Err(Error::NoThreshold(v));
    }
    Ok(0.5 * (SQRT_2 * (1.0 + v) / (1.0 + 2.0 * v)).asin())
}

/// `n` evenly spaced state parameters in `(0, π/4]`, ending at `π/4`.
pub fn phi_samples(n: usize) -> Vec<f64> {
    (1..=n).map(|i| FRAC_PI_4 * (i as f64 / n as f64)).collect()
}

/// `n ≥ 2` evenly spaced probabilities covering `[0, 1]`.
pub fn p_samples(n: usize) -> Vec<f64> {
    assert!(n >= 2, "need at least two p samples");
    (0..n).map(|j| j as f64 / (n - 1) as f64).collect()
}

/// Summary of one scanned parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub value1: f64,
    pub value2: f64,
    pub double_violation: bool,
}

impl From<ScenarioReport> for Cell {
    fn from(r: ScenarioReport) -> Self {
        Self {
            value1: r.value1,
            value2: r.value2,
            double_violation: r.double_violation,
        }
    }
}

/// Simulated values over a `(φ, p)` grid, stored φ-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityGrid {
    pub kind: ScenarioKind,
    pub v: Option<f64>,
    pub phi: Vec<f64>,
    pub p: Vec<f64>,
    cells: Vec<Cell>,
}

impl FeasibilityGrid {
    pub const AXIS1: &'static str = "phi";
    pub const AXIS2: &'static str = "p";

    pub fn cell(&self, i: usize, j: usize) -> &Cell {
        &self.cells[i * self.p.len() + j]
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// `(φᵢ, pⱼ, cell)` in φ-major order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, &Cell)> + '_ {
        let np = self.p.len();
        self.cells
            .iter()
            .enumerate()
            .map(move |(k, c)| (self.phi[k / np], self.p[k % np], c))
    }

    pub fn flagged_count(&self) -> usize {
        self.cells.iter().filter(|c| c.double_violation).count()
    }

    pub fn bound(&self) -> f64 {
        self.kind.bound()
    }

    /// Closed-form window at any `φ`, including points just outside the
    /// scanned domain (`φ ≤ 0` has no window).
    pub fn closed_window(&self, phi: f64) -> Interval {
        let s = (2.0 * phi).sin();
        if phi <= 0.0 {
            return Interval::empty();
        }
        match self.kind {
            ScenarioKind::Standard => standard_window_at(s),
            ScenarioKind::Genuine => genuine_window_at(s, self.v.unwrap_or(0.5)),
        }
    }

    fn in_window(&self, phi: f64, p: f64) -> bool {
        self.closed_window(phi).contains(p)
    }

    /// Cells whose closed-form membership changes somewhere within one grid
    /// step in either direction; their classification is resolution-dependent.
    pub fn in_boundary_band(&self, i: usize, j: usize) -> bool {
        let dphi = local_step(&self.phi, i);
        let dp = local_step(&self.p, j);
        let (phi, p) = (self.phi[i], self.p[j]);
        let here = self.in_window(phi, p);
        const OFFSETS: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];
        OFFSETS.iter().any(|a| {
            OFFSETS
                .iter()
                .any(|b| self.in_window(phi + a * dphi, p + b * dp) != here)
        })
    }

    /// Cells outside the boundary band whose flag disagrees with the
    /// closed-form window.
    pub fn window_inconsistencies(&self) -> Vec<(usize, usize)> {
        let np = self.p.len();
        (0..self.phi.len())
            .flat_map(|i| (0..np).map(move |j| (i, j)))
            .filter(|&(i, j)| {
                self.cell(i, j).double_violation != self.in_window(self.phi[i], self.p[j])
                    && !self.in_boundary_band(i, j)
            })
            .collect()
    }
}

fn local_step(axis: &[f64], i: usize) -> f64 {
    let before = if i > 0 { axis[i] - axis[i - 1] } else { 0.0 };
    let after = if i + 1 < axis.len() { axis[i + 1] - axis[i] } else { 0.0 };
    before.max(after)
}

fn check_axis(axis: &'static str, samples: &[f64], lo: f64, hi: f64) -> Result<()> {
    let err = |reason| Err(Error::InvalidAxis { axis, reason });
    if samples.is_empty() {
        return err("no samples");
    }
    if samples.iter().any(|x| !x.is_finite() || *x < lo || *x > hi) {
        return err("sample outside the parameter domain");
    }
    if samples.windows(2).any(|w| w[0] >= w[1]) {
        return err("samples must be strictly increasing");
    }
    Ok(())
}

/// Simulates every `(φᵢ, pⱼ)` cell. The chain simulation runs once per φ
/// row; rows are evaluated in parallel and assembled in order.
pub fn scan(kind: ScenarioKind, phi_samples: &[f64], p_samples: &[f64], v: Option<f64>) -> Result<FeasibilityGrid> {
    check_axis(FeasibilityGrid::AXIS1, phi_samples, 0.0, FRAC_PI_4)?;
    check_axis(FeasibilityGrid::AXIS2, p_samples, 0.0, 1.0)?;
    match (kind, v) {
        (ScenarioKind::Standard, Some(_)) => return Err(Error::UnexpectedBias),
        (ScenarioKind::Genuine, None) => return Err(Error::MissingBias),
        (ScenarioKind::Genuine, Some(v)) => check_open_unit("v", v)?,
        (ScenarioKind::Standard, None) => {}
    }

    let rows: Vec<Vec<Cell>> = phi_samples
        .par_iter()
        .map(|&phi| {
            let values = match kind {
                ScenarioKind::Standard => standard_case_values(phi)?,
                ScenarioKind::Genuine => genuine_case_values(phi, v.expect("checked above"))?,
            };
            p_samples
                .iter()
                .map(|&p| {
                    let params = MixtureParams { p, v };
                    Ok(ScenarioReport::from_pair(kind, phi, params, values.mix(p)).into())
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    Ok(FeasibilityGrid {
        kind,
        v,
        phi: phi_samples.to_vec(),
        p: p_samples.to_vec(),
        cells: rows.into_iter().flatten().collect(),
    })
}
