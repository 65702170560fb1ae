//! The two-Charlie sharing scenarios with their fixed measurement settings.
//!
//! Each scenario mixes two Charlie strategies with shared randomness: with
//! probability `p` every Charlie uses two projective measurements, with
//! probability `1 − p` Charlie₁ replaces one of them by the identity. The
//! inequality values are linear in the mixture, so a mixed value is the
//! `p`-weighted average of the two per-strategy values, each obtained by
//! density-matrix simulation of the Charlie chain.
//!
//! Every headline quantity also has a closed form (`*_closed`), which the
//! tests hold against the simulated path.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, SQRT_2};

use crate::bell::{self, Inequality, TripartiteSettings};
use crate::error::{check_closed, Error, Result};
use crate::luders::{chain, CharlieStrategy, InputDistribution};
use crate::qstate::{
    bloch_obs, ghz, identity_measurement, pauli, projective_from_observable, to_density, DensityOperator,
    DichotomicMeasurement, Observable, PauliAxis,
};

/// Margin a value must clear above the classical bound to count as a violation.
pub const VIOLATION_MARGIN: f64 = 1e-9;

/// `value > bound + VIOLATION_MARGIN`.
pub fn is_violation(value: f64, bound: f64) -> bool {
    value > bound + VIOLATION_MARGIN
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioKind {
    /// Standard nonlocality, tested with the Mermin inequality.
    Standard,
    /// Genuine nonlocality, tested with the Svetlichny inequality.
    Genuine,
}

impl ScenarioKind {
    pub fn inequality(self) -> Inequality {
        match self {
            ScenarioKind::Standard => Inequality::Mermin,
            ScenarioKind::Genuine => Inequality::Svetlichny,
        }
    }

    pub fn bound(self) -> f64 {
        self.inequality().bound()
    }

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Standard => "standard",
            ScenarioKind::Genuine => "genuine",
        }
    }
}

/// Which strategy every party follows for one round of shared randomness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharlieCase {
    /// Both of Charlie₁'s measurements are projective (chosen with probability `p`).
    BothProjective,
    /// One of Charlie₁'s measurements is the identity (probability `1 − p`).
    OneIdentity,
}

/// Alice and Bob's observables and an ordered list of Charlies.
#[derive(Debug, Clone, PartialEq)]
pub struct SequentialScenario {
    pub alice: [Observable; 2],
    pub bob: [Observable; 2],
    pub charlies: Vec<CharlieStrategy>,
}

impl SequentialScenario {
    /// Inequality value for every Alice–Bob–Charlieₖ triple, in order.
    pub fn values(&self, rho0: &DensityOperator, kind: Inequality) -> Result<Vec<f64>> {
        let states = chain(rho0, &self.charlies);
        self.charlies
            .iter()
            .zip(&states)
            .map(|(charlie, rho)| {
                let settings = TripartiteSettings {
                    a: self.alice.clone(),
                    b: self.bob.clone(),
                    c: charlie.observables(),
                };
                bell::value(rho, &settings, kind)
            })
            .collect()
    }
}

fn proj(o: Observable) -> DichotomicMeasurement {
    projective_from_observable(&o).expect("fixed settings are genuine ±1 observables")
}

fn sx() -> Observable {
    pauli(PauliAxis::X)
}

fn sy() -> Observable {
    pauli(PauliAxis::Y)
}

/// Mermin scenario: `A = (σx, σy)`, `B = (−σy, σx)`. Charlie₁ measures
/// `(σx, σy)` or `(σx, I)`; Charlie₂ always measures `(σx, σy)`.
pub fn standard_sequence(case: CharlieCase) -> SequentialScenario {
    let charlie2 = CharlieStrategy::unbiased(proj(sx()), proj(sy()));
    let charlie1 = match case {
        CharlieCase::BothProjective => charlie2.clone(),
        CharlieCase::OneIdentity => CharlieStrategy::unbiased(proj(sx()), identity_measurement()),
    };
    SequentialScenario {
        alice: [sx(), sy()],
        bob: [sy().negated(), sx()],
        charlies: vec![charlie1, charlie2],
    }
}

/// Svetlichny scenario: `A = (σx, σy)`, `B = ((σx − σy)/√2, (σx + σy)/√2)`.
/// Charlie₁ measures `(−σy, σx)` unbiased, or `(I, σx)` with the identity
/// input drawn with probability `v`; Charlie₂ always measures `(−σy, σx)`.
pub fn genuine_sequence(case: CharlieCase, v: f64) -> Result<SequentialScenario> {
    check_bias(v)?;
    let charlie2 = CharlieStrategy::unbiased(proj(sy().negated()), proj(sx()));
    let charlie1 = match case {
        CharlieCase::BothProjective => charlie2.clone(),
        CharlieCase::OneIdentity => {
            CharlieStrategy::new(identity_measurement(), proj(sx()), InputDistribution::new(v)?)
        }
    };
    Ok(SequentialScenario {
        alice: [sx(), sy()],
        bob: [
            bloch_obs(FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0)?,
            bloch_obs(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0)?,
        ],
        charlies: vec![charlie1, charlie2],
    })
}

/// Inequality values for Charlie₁ and Charlie₂.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SequentialPair {
    pub first: f64,
    pub second: f64,
}

impl SequentialPair {
    fn from_values(v: &[f64]) -> Self {
        Self {
            first: v[0],
            second: v[1],
        }
    }

    pub fn as_tuple(self) -> (f64, f64) {
        (self.first, self.second)
    }
}

/// Simulated per-strategy values at one state parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseValues {
    pub both_projective: SequentialPair,
    pub one_identity: SequentialPair,
}

impl CaseValues {
    /// Values under shared randomness choosing `BothProjective` with probability `p`.
    pub fn mix(&self, p: f64) -> SequentialPair {
        let (a, b) = (self.both_projective, self.one_identity);
        SequentialPair {
            first: p * a.first + (1.0 - p) * b.first,
            second: p * a.second + (1.0 - p) * b.second,
        }
    }
}

fn check_phi(phi: f64) -> Result<()> {
    check_closed("phi", phi, 0.0, FRAC_PI_4, "[0, pi/4]")
}

fn check_p(p: f64) -> Result<()> {
    check_closed("p", p, 0.0, 1.0, "[0, 1]")
}

fn check_bias(v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "v",
            value: v,
            domain: "(0, 1)",
        })
    }
}

fn simulate_case(rho: &DensityOperator, seq: &SequentialScenario, kind: Inequality) -> Result<SequentialPair> {
    Ok(SequentialPair::from_values(&seq.values(rho, kind)?))
}

/// Simulates both Mermin strategies on `|GHZ_φ⟩`.
pub fn standard_case_values(phi: f64) -> Result<CaseValues> {
    check_phi(phi)?;
    let rho = to_density(&ghz(phi)?);
    Ok(CaseValues {
        both_projective: simulate_case(
            &rho,
            &standard_sequence(CharlieCase::BothProjective),
            Inequality::Mermin,
        )?,
        one_identity: simulate_case(&rho, &standard_sequence(CharlieCase::OneIdentity), Inequality::Mermin)?,
    })
}

/// Simulates both Svetlichny strategies on `|GHZ_φ⟩` with bias `v`.
pub fn genuine_case_values(phi: f64, v: f64) -> Result<CaseValues> {
    check_phi(phi)?;
    check_bias(v)?;
    let rho = to_density(&ghz(phi)?);
    Ok(CaseValues {
        both_projective: simulate_case(
            &rho,
            &genuine_sequence(CharlieCase::BothProjective, v)?,
            Inequality::Svetlichny,
        )?,
        one_identity: simulate_case(
            &rho,
            &genuine_sequence(CharlieCase::OneIdentity, v)?,
            Inequality::Svetlichny,
        )?,
    })
}

/// Simulated `(M₁, M₂)`.
pub fn standard_pair_simulated(phi: f64, p: f64) -> Result<(f64, f64)> {
    check_p(p)?;
    Ok(standard_case_values(phi)?.mix(p).as_tuple())
}

/// `((2p + 2) sin 2φ, (3 − p) sin 2φ)`.
pub fn standard_pair_closed(phi: f64, p: f64) -> Result<(f64, f64)> {
    check_phi(phi)?;
    check_p(p)?;
    let s = (2.0 * phi).sin();
    Ok(((2.0 * p + 2.0) * s, (3.0 - p) * s))
}

/// Simulated `(S₁, S₂)`.
pub fn genuine_pair_simulated(phi: f64, p: f64, v: f64) -> Result<(f64, f64)> {
    check_p(p)?;
    Ok(genuine_case_values(phi, v)?.mix(p).as_tuple())
}

/// `(2√2 (p + 1) sin 2φ, 2√2 [1 + v(1 − p)] sin 2φ)`.
pub fn genuine_pair_closed(phi: f64, p: f64, v: f64) -> Result<(f64, f64)> {
    check_phi(phi)?;
    check_p(p)?;
    check_bias(v)?;
    let s = 2.0 * SQRT_2 * (2.0 * phi).sin();
    Ok(((p + 1.0) * s, (1.0 + v * (1.0 - p)) * s))
}

/// Mixing probability `p` and, for the genuine scenario, the bias `v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureParams {
    pub p: f64,
    pub v: Option<f64>,
}

impl MixtureParams {
    pub fn new(p: f64, v: Option<f64>) -> Result<Self> {
        check_p(p)?;
        if let Some(v) = v {
            check_bias(v)?;
        }
        Ok(Self { p, v })
    }

    /// Bias used by the genuine scenario; absent means unbiased.
    pub fn bias(&self) -> f64 {
        self.v.unwrap_or(0.5)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioReport {
    pub kind: ScenarioKind,
    pub phi: f64,
    pub params: MixtureParams,
    pub value1: f64,
    pub value2: f64,
    pub bound: f64,
    pub double_violation: bool,
}

impl ScenarioReport {
    pub(crate) fn from_pair(kind: ScenarioKind, phi: f64, params: MixtureParams, pair: SequentialPair) -> Self {
        let bound = kind.bound();
        Self {
            kind,
            phi,
            params,
            value1: pair.first,
            value2: pair.second,
            bound,
            double_violation: is_violation(pair.first, bound) && is_violation(pair.second, bound),
        }
    }
}

/// Simulated report for one parameter point.
pub fn report(kind: ScenarioKind, phi: f64, params: MixtureParams) -> Result<ScenarioReport> {
    let values = match kind {
        ScenarioKind::Standard => {
            if params.v.is_some() {
                return Err(Error::UnexpectedBias);
            }
            standard_case_values(phi)?
        }
        ScenarioKind::Genuine => genuine_case_values(phi, params.bias())?,
    };
    Ok(ScenarioReport::from_pair(kind, phi, params, values.mix(params.p)))
}
