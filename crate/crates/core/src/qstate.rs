//! Three-qubit states, single-qubit observables and dichotomic measurements.
//!
//! Basis states are ordered `|abc⟩` with qubit A as the most significant
//! bit, so `|000⟩` is index 0 and `|111⟩` is index 7. Operators on the
//! joint space are therefore written `A ⊗ B ⊗ C`.

use std::f64::consts::FRAC_PI_4;

use crate::cmatrix::{Complex, ComplexMatrix, DEFAULT_TOL, I, ONE, ZERO};
use crate::error::{check_closed, Error, Result};

/// Dimension of the three-qubit space.
pub const DIM: usize = 8;

/// Tolerance for positivity of density operators.
pub const PSD_TOL: f64 = 1e-10;

/// Normalized three-qubit pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: [Complex; DIM],
}

impl PureState {
    pub fn new(amplitudes: [Complex; DIM]) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::InvalidState("pure state is not normalized"));
        }
        Ok(Self { amplitudes })
    }

    pub fn amplitudes(&self) -> &[Complex; DIM] {
        &self.amplitudes
    }
}

/// Generalized GHZ state `cos φ |000⟩ + sin φ |111⟩` for `0 ≤ φ ≤ π/4`.
pub fn ghz(phi: f64) -> Result<PureState> {
    check_closed("phi", phi, 0.0, FRAC_PI_4, "[0, pi/4]")?;
    let mut amplitudes = [ZERO; DIM];
    amplitudes[0] = Complex::new(phi.cos(), 0.0);
    amplitudes[DIM - 1] = Complex::new(phi.sin(), 0.0);
    PureState::new(amplitudes)
}

/// Density operator on the three-qubit space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let rho = Self { matrix };
        rho.check()?;
        Ok(rho)
    }

    /// Skips validation; callers produce the matrix with a channel that
    /// preserves the invariants.
    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        debug_assert_eq!((matrix.rows(), matrix.cols()), (DIM, DIM));
        Self { matrix }
    }

    /// Re-checks every density-operator invariant.
    pub fn check(&self) -> Result<()> {
        let m = &self.matrix;
        if m.rows() != DIM || m.cols() != DIM {
            return Err(Error::InvalidState("density operator must be 8x8"));
        }
        if !m.is_hermitian(DEFAULT_TOL)? {
            return Err(Error::InvalidState("density operator is not Hermitian"));
        }
        if (m.trace()? - ONE).norm() > DEFAULT_TOL {
            return Err(Error::InvalidState("density operator does not have unit trace"));
        }
        if !m.is_psd(PSD_TOL)? {
            return Err(Error::InvalidState("density operator is not positive semidefinite"));
        }
        Ok(())
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().map(|t| t.re).unwrap_or(f64::NAN)
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        self.matrix
            .trace_product(&self.matrix)
            .map(|t| t.re)
            .unwrap_or(f64::NAN)
    }

    /// Convex combination `weight·self + (1 − weight)·other`.
    pub fn mix(&self, weight: f64, other: &Self) -> Result<Self> {
        check_closed("weight", weight, 0.0, 1.0, "[0, 1]")?;
        let m = self
            .matrix
            .scale_real(weight)
            .add(&other.matrix.scale_real(1.0 - weight))?;
        Ok(Self::from_matrix_unchecked(m))
    }
}

/// Outer product `|ψ⟩⟨ψ|`.
pub fn to_density(psi: &PureState) -> DensityOperator {
    let mut data = Vec::with_capacity(DIM * DIM);
    for a in psi.amplitudes() {
        for b in psi.amplitudes() {
            data.push(a * b.conj());
        }
    }
    let m = ComplexMatrix::new(DIM, DIM, data).expect("amplitudes are finite");
    DensityOperator::from_matrix_unchecked(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

/// Hermitian 2×2 operator that squares to the identity: a ±1-valued
/// observable, or the identity itself.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    matrix: ComplexMatrix,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if matrix.rows() != 2 || matrix.cols() != 2 {
            return Err(Error::InvalidObservable("observable must be 2x2"));
        }
        if !matrix.is_hermitian(DEFAULT_TOL)? {
            return Err(Error::InvalidObservable("observable is not Hermitian"));
        }
        let sq = matrix.matmul(&matrix)?;
        if sq.max_abs_diff(&ComplexMatrix::identity(2))? > DEFAULT_TOL {
            return Err(Error::InvalidObservable("observable does not square to the identity"));
        }
        Ok(Self { matrix })
    }

    pub fn identity() -> Self {
        Self {
            matrix: ComplexMatrix::identity(2),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// True when the observable has a zero trace, i.e. eigenvalues ±1.
    pub fn is_traceless(&self) -> bool {
        self.matrix.trace().map(|t| t.norm() <= DEFAULT_TOL).unwrap_or(false)
    }

    pub fn negated(&self) -> Self {
        Self {
            matrix: self.matrix.scale_real(-1.0),
        }
    }
}

pub fn pauli(axis: PauliAxis) -> Observable {
    let data = match axis {
        PauliAxis::X => vec![ZERO, ONE, ONE, ZERO],
        PauliAxis::Y => vec![ZERO, -I, I, ZERO],
        PauliAxis::Z => vec![ONE, ZERO, ZERO, -ONE],
    };
    Observable {
        matrix: ComplexMatrix::new(2, 2, data).expect("2x2 literal"),
    }
}

/// `n·σ` for a unit Bloch vector `n`.
pub fn bloch_obs(nx: f64, ny: f64, nz: f64) -> Result<Observable> {
    let norm_sq = nx * nx + ny * ny + nz * nz;
    if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > 1e-10 {
        return Err(Error::NonUnitBloch(norm_sq));
    }
    let m = pauli(PauliAxis::X)
        .matrix
        .scale_real(nx)
        .add(&pauli(PauliAxis::Y).matrix.scale_real(ny))?
        .add(&pauli(PauliAxis::Z).matrix.scale_real(nz))?;
    Observable::new(m)
}

/// Two-outcome measurement with effects for outcomes +1 and −1.
#[derive(Debug, Clone, PartialEq)]
pub struct DichotomicMeasurement {
    effect0: ComplexMatrix,
    effect1: ComplexMatrix,
}

impl DichotomicMeasurement {
    /// Both effects must be Hermitian projectors summing to the identity.
    pub fn new(effect0: ComplexMatrix, effect1: ComplexMatrix) -> Result<Self> {
        for e in [&effect0, &effect1] {
            if e.rows() != 2 || e.cols() != 2 {
                return Err(Error::InvalidMeasurement("effects must be 2x2"));
            }
            if !e.is_hermitian(DEFAULT_TOL)? || !e.is_idempotent(DEFAULT_TOL)? {
                return Err(Error::InvalidMeasurement("effects must be Hermitian projectors"));
            }
        }
        if effect0.add(&effect1)?.max_abs_diff(&ComplexMatrix::identity(2))? > DEFAULT_TOL {
            return Err(Error::InvalidMeasurement("effects do not sum to the identity"));
        }
        Ok(Self { effect0, effect1 })
    }

    /// Effect for outcome +1.
    pub fn effect0(&self) -> &ComplexMatrix {
        &self.effect0
    }

    /// Effect for outcome −1.
    pub fn effect1(&self) -> &ComplexMatrix {
        &self.effect1
    }

    pub fn effects(&self) -> [&ComplexMatrix; 2] {
        [&self.effect0, &self.effect1]
    }

    /// `effect0 − effect1`.
    pub fn observable(&self) -> Observable {
        let m = self.effect0.sub(&self.effect1).expect("effects are 2x2");
        Observable { matrix: m }
    }
}

/// Spectral projectors `(I ± o)/2` of a traceless ±1 observable.
pub fn projective_from_observable(o: &Observable) -> Result<DichotomicMeasurement> {
    if !o.is_traceless() {
        return Err(Error::InvalidMeasurement(
            "observable is identity-like; use identity_measurement",
        ));
    }
    let id = ComplexMatrix::identity(2);
    let e0 = id.add(o.matrix())?.scale_real(0.5);
    let e1 = id.sub(o.matrix())?.scale_real(0.5);
    DichotomicMeasurement::new(e0, e1)
}

/// The trivial measurement: outcome +1 with certainty, state untouched.
pub fn identity_measurement() -> DichotomicMeasurement {
    DichotomicMeasurement {
        effect0: ComplexMatrix::identity(2),
        effect1: ComplexMatrix::zeros(2, 2),
    }
}
