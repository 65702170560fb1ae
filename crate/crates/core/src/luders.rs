//! Lüders state update for a measurement on the third qubit.
//!
//! For projective effects `√E = E`, so a Charlie whose input `z` is drawn
//! from `q(z)` maps
//!
//! ```text
//! ρ ↦ Σ_z q(z) Σ_c (I ⊗ I ⊗ E_{c|z}) ρ (I ⊗ I ⊗ E_{c|z})
//! ```
//!
//! and hands the result to the next Charlie in the sequence.

use crate::cmatrix::ComplexMatrix;
use crate::error::{check_closed, Error, Result};
use crate::qstate::{DensityOperator, DichotomicMeasurement, Observable};

/// Distribution of Charlie's binary input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputDistribution {
    prob_z0: f64,
}

impl InputDistribution {
    pub fn new(prob_z0: f64) -> Result<Self> {
        check_closed("prob_z0", prob_z0, 0.0, 1.0, "[0, 1]")?;
        Ok(Self { prob_z0 })
    }

    pub fn uniform() -> Self {
        Self { prob_z0: 0.5 }
    }

    pub fn prob_z0(&self) -> f64 {
        self.prob_z0
    }

    pub fn prob_z1(&self) -> f64 {
        1.0 - self.prob_z0
    }
}

impl Default for InputDistribution {
    fn default() -> Self {
        Self::uniform()
    }
}

/// One Charlie: a measurement per input plus the input distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct CharlieStrategy {
    pub meas_z0: DichotomicMeasurement,
    pub meas_z1: DichotomicMeasurement,
    pub inputs: InputDistribution,
}

impl CharlieStrategy {
    pub fn new(meas_z0: DichotomicMeasurement, meas_z1: DichotomicMeasurement, inputs: InputDistribution) -> Self {
        Self {
            meas_z0,
            meas_z1,
            inputs,
        }
    }

    pub fn unbiased(meas_z0: DichotomicMeasurement, meas_z1: DichotomicMeasurement) -> Self {
        Self::new(meas_z0, meas_z1, InputDistribution::uniform())
    }

    /// Observables `C_0`, `C_1` used in the correlators.
    pub fn observables(&self) -> [Observable; 2] {
        [self.meas_z0.observable(), self.meas_z1.observable()]
    }

    fn branches(&self) -> [(f64, &DichotomicMeasurement); 2] {
        [
            (self.inputs.prob_z0(), &self.meas_z0),
            (self.inputs.prob_z1(), &self.meas_z1),
        ]
    }
}

/// `I₂ ⊗ I₂ ⊗ e`.
pub fn embed_third(e: &ComplexMatrix) -> Result<ComplexMatrix> {
    if e.rows() != 2 || e.cols() != 2 {
        return Err(Error::DimensionMismatch {
            op: "embed_third",
            lhs: (e.rows(), e.cols()),
            rhs: (2, 2),
        });
    }
    Ok(ComplexMatrix::identity(4).kron(e))
}

/// Post-measurement state averaged over Charlie's inputs and outcomes.
pub fn luders_update(rho: &DensityOperator, strategy: &CharlieStrategy) -> DensityOperator {
    let mut out = ComplexMatrix::zeros(rho.matrix().rows(), rho.matrix().cols());
    for (weight, meas) in strategy.branches() {
        if weight == 0.0 {
            continue;
        }
        for effect in meas.effects() {
            if effect.as_slice().iter().all(|z| z.norm() == 0.0) {
                continue;
            }
            let k = embed_third(effect).expect("effects are 2x2");
            let term = k.matmul(rho.matrix()).and_then(|m| m.matmul(&k)).expect("8x8 operands");
            out = out.add(&term.scale_real(weight)).expect("8x8 operands");
        }
    }
    DensityOperator::from_matrix_unchecked(out)
}

/// States seen by each Charlie in turn: element `k` is the input to
/// Charlie `k + 1`, and the last element is the state after every listed
/// Charlie has measured.
pub fn chain(rho0: &DensityOperator, strategies: &[CharlieStrategy]) -> Vec<DensityOperator> {
    let mut states = Vec::with_capacity(strategies.len() + 1);
    states.push(rho0.clone());
    for s in strategies {
        let next = luders_update(states.last().expect("nonempty"), s);
        states.push(next);
    }
    states
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmatrix::Complex;
    use crate::qstate::{ghz, identity_measurement, pauli, projective_from_observable, to_density, PauliAxis};
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_4;

    fn proj(axis: PauliAxis) -> DichotomicMeasurement {
        projective_from_observable(&pauli(axis)).unwrap()
    }

    fn conj_third(rho: &DensityOperator, axis: PauliAxis) -> ComplexMatrix {
        let k = embed_third(pauli(axis).matrix()).unwrap();
        k.matmul(rho.matrix()).unwrap().matmul(&k).unwrap()
    }

    fn ghz_rho(phi: f64) -> DensityOperator {
        to_density(&ghz(phi).unwrap())
    }

    #[test]
    fn embed_third_examples() {
        assert_eq!(
            embed_third(&ComplexMatrix::identity(2)).unwrap(),
            ComplexMatrix::identity(8)
        );

        let x3 = embed_third(pauli(PauliAxis::X).matrix()).unwrap();
        let psi = ghz(FRAC_PI_4).unwrap();
        let col = ComplexMatrix::column(psi.amplitudes()).unwrap();
        let out = x3.matmul(&col).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for (i, z) in out.as_slice().iter().enumerate() {
            let expected = if i == 1 || i == 6 { h } else { 0.0 };
            assert!((z - Complex::new(expected, 0.0)).norm() < 1e-15, "index {i}");
        }

        let p = proj(PauliAxis::Y).effect0().clone();
        let e = embed_third(&p).unwrap();
        assert!(e.matmul(&e).unwrap().max_abs_diff(&e).unwrap() < 1e-15);

        assert!(embed_third(&ComplexMatrix::identity(4)).is_err());
    }

    #[test]
    fn pm1_unbiased_update() {
        let rho = ghz_rho(0.3);
        let s = CharlieStrategy::unbiased(proj(PauliAxis::X), proj(PauliAxis::Y));
        let got = luders_update(&rho, &s);
        let expected = rho
            .matrix()
            .scale_real(0.5)
            .add(&conj_third(&rho, PauliAxis::X).scale_real(0.25))
            .unwrap()
            .add(&conj_third(&rho, PauliAxis::Y).scale_real(0.25))
            .unwrap();
        assert!(got.matrix().max_abs_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn pm2_unbiased_update() {
        let rho = ghz_rho(0.6);
        let s = CharlieStrategy::unbiased(proj(PauliAxis::X), identity_measurement());
        let got = luders_update(&rho, &s);
        let expected = rho
            .matrix()
            .scale_real(0.75)
            .add(&conj_third(&rho, PauliAxis::X).scale_real(0.25))
            .unwrap();
        assert!(got.matrix().max_abs_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn biased_identity_update() {
        let rho = ghz_rho(FRAC_PI_4);
        for v in [0.1, 0.5, 0.8, 0.9] {
            let s = CharlieStrategy::new(
                identity_measurement(),
                proj(PauliAxis::X),
                InputDistribution::new(v).unwrap(),
            );
            let got = luders_update(&rho, &s);
            let expected = rho
                .matrix()
                .scale_real((1.0 + v) / 2.0)
                .add(&conj_third(&rho, PauliAxis::X).scale_real((1.0 - v) / 2.0))
                .unwrap();
            assert!(got.matrix().max_abs_diff(&expected).unwrap() < 1e-15, "v = {v}");
        }
    }

    #[test]
    fn chain_examples() {
        let rho = ghz_rho(0.5);
        let id = CharlieStrategy::unbiased(identity_measurement(), identity_measurement());
        let states = chain(&rho, &[id]);
        assert_eq!(states.len(), 2);
        assert_eq!(states[0], rho);
        assert!(states[1].matrix().max_abs_diff(rho.matrix()).unwrap() <= 1e-14);

        assert_eq!(chain(&rho, &[]), vec![rho.clone()]);

        let pm1 = CharlieStrategy::unbiased(proj(PauliAxis::X), proj(PauliAxis::Y));
        let states = chain(&rho, &[pm1.clone(), pm1.clone(), pm1]);
        assert_eq!(states.len(), 4);
        for s in &states {
            s.check().unwrap();
        }
    }

    #[test]
    fn input_distribution_domain() {
        assert!(InputDistribution::new(-0.1).is_err());
        assert!(InputDistribution::new(1.1).is_err());
        let d = InputDistribution::new(0.3).unwrap();
        assert_eq!(d.prob_z0() + d.prob_z1(), 1.0);
    }

    fn random_state() -> impl Strategy<Value = DensityOperator> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 64).prop_map(|v| {
            let g = ComplexMatrix::new(8, 8, v.into_iter().map(|(a, b)| Complex::new(a, b)).collect()).unwrap();
            let m = g.matmul(&g.adjoint()).unwrap();
            let t = m.trace().unwrap().re;
            let m = m.scale_real(1.0 / t);
            // Symmetrize away rounding so the validated constructor accepts it.
            let m = m.add(&m.adjoint()).unwrap().scale_real(0.5);
            DensityOperator::new(m).unwrap()
        })
    }

    fn random_measurement() -> impl Strategy<Value = DichotomicMeasurement> {
        prop_oneof![
            1 => Just(identity_measurement()),
            4 => (0.0f64..std::f64::consts::PI, 0.0f64..std::f64::consts::TAU).prop_map(|(t, a)| {
                let o = crate::qstate::bloch_obs(t.sin() * a.cos(), t.sin() * a.sin(), t.cos()).unwrap();
                projective_from_observable(&o).unwrap()
            }),
        ]
    }

    proptest! {
        #[test]
        fn update_preserves_trace_and_positivity(
            rho in random_state(),
            m0 in random_measurement(),
            m1 in random_measurement(),
            q in 0.0f64..=1.0,
        ) {
            let s = CharlieStrategy::new(m0, m1, InputDistribution::new(q).unwrap());
            let out = luders_update(&rho, &s);
            prop_assert!((out.trace() - rho.trace()).abs() <= 1e-12);
            prop_assert!(out.matrix().is_psd(1e-10).unwrap());
            prop_assert!(out.matrix().is_hermitian(1e-12).unwrap());
        }

        #[test]
        fn pm1_twice_has_closed_form(rho in random_state()) {
            let s = CharlieStrategy::unbiased(proj(PauliAxis::X), proj(PauliAxis::Y));
            let twice = luders_update(&luders_update(&rho, &s), &s);
            // XY = iZ, so the cross terms of the composed channel are Z-conjugations.
            let expected = rho.matrix().scale_real(0.375)
                .add(&conj_third(&rho, PauliAxis::X).scale_real(0.25)).unwrap()
                .add(&conj_third(&rho, PauliAxis::Y).scale_real(0.25)).unwrap()
                .add(&conj_third(&rho, PauliAxis::Z).scale_real(0.125)).unwrap();
            prop_assert!(twice.matrix().max_abs_diff(&expected).unwrap() <= 1e-12);
        }

        #[test]
        fn half_bias_matches_unbiased(rho in random_state(), m0 in random_measurement(), m1 in random_measurement()) {
            let biased = CharlieStrategy::new(m0.clone(), m1.clone(), InputDistribution::new(0.5).unwrap());
            let unbiased = CharlieStrategy::unbiased(m0, m1);
            let d = luders_update(&rho, &biased).matrix().max_abs_diff(luders_update(&rho, &unbiased).matrix()).unwrap();
            prop_assert!(d <= 1e-12);
        }
    }
}
