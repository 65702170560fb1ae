//! Tripartite correlators and the Mermin / Svetlichny expressions.

use crate::cmatrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::qstate::{DensityOperator, Observable};

/// Imaginary residue above which an expectation value is rejected.
pub const IMAG_RESIDUE_TOL: f64 = 1e-10;

/// One signed correlator `sign · ⟨A_x B_y C_z⟩` of a Bell expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub sign: i32,
}

const fn term(x: usize, y: usize, z: usize, sign: i32) -> Term {
    Term { x, y, z, sign }
}

/// `⟨A1B0C0⟩ + ⟨A0B1C0⟩ + ⟨A0B0C1⟩ − ⟨A1B1C1⟩`
pub const MERMIN_TERMS: [Term; 4] = [term(1, 0, 0, 1), term(0, 1, 0, 1), term(0, 0, 1, 1), term(1, 1, 1, -1)];

/// The Mermin terms plus `⟨A0B1C1⟩ + ⟨A1B0C1⟩ + ⟨A1B1C0⟩ − ⟨A0B0C0⟩`.
pub const SVETLICHNY_TERMS: [Term; 8] = [
    term(0, 0, 1, 1),
    term(0, 1, 0, 1),
    term(1, 0, 0, 1),
    term(1, 1, 1, -1),
    term(0, 1, 1, 1),
    term(1, 0, 1, 1),
    term(1, 1, 0, 1),
    term(0, 0, 0, -1),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Inequality {
    /// Fully-local bound 2; violation certifies standard tripartite nonlocality.
    Mermin,
    /// Hybrid-local bound 4; violation certifies genuine tripartite nonlocality.
    Svetlichny,
}

impl Inequality {
    pub fn terms(self) -> &'static [Term] {
        match self {
            Inequality::Mermin => &MERMIN_TERMS,
            Inequality::Svetlichny => &SVETLICHNY_TERMS,
        }
    }

    /// Classical bound.
    pub fn bound(self) -> f64 {
        match self {
            Inequality::Mermin => 2.0,
            Inequality::Svetlichny => 4.0,
        }
    }

    /// Largest value reachable with ±1 observables.
    pub fn algebraic_max(self) -> f64 {
        self.terms().len() as f64
    }
}

/// Two observables for each of Alice, Bob and Charlie, indexed by input.
#[derive(Debug, Clone, PartialEq)]
pub struct TripartiteSettings {
    pub a: [Observable; 2],
    pub b: [Observable; 2],
    pub c: [Observable; 2],
}

impl TripartiteSettings {
    pub fn new(a0: Observable, a1: Observable, b0: Observable, b1: Observable, c0: Observable, c1: Observable) -> Self {
        Self {
            a: [a0, a1],
            b: [b0, b1],
            c: [c0, c1],
        }
    }
}

/// `Tr[ρ (a ⊗ b ⊗ c)]` for arbitrary 2×2 operators. The trace must be real
/// up to [`IMAG_RESIDUE_TOL`]; the imaginary part is dropped after the check.
pub fn correlator(rho: &DensityOperator, a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix) -> Result<f64> {
    let op = a.kron(b).kron(c);
    let t = rho.matrix().trace_product(&op)?;
    if t.im.abs() > IMAG_RESIDUE_TOL {
        return Err(Error::ImaginaryResidue(t.im));
    }
    Ok(t.re)
}

pub fn expectation(rho: &DensityOperator, a: &Observable, b: &Observable, c: &Observable) -> Result<f64> {
    correlator(rho, a.matrix(), b.matrix(), c.matrix())
}

/// Evaluates a signed sum of correlators.
pub fn inequality_value(rho: &DensityOperator, s: &TripartiteSettings, terms: &[Term]) -> Result<f64> {
    terms.iter().try_fold(0.0, |acc, t| {
        let e = expectation(rho, &s.a[t.x], &s.b[t.y], &s.c[t.z])?;
        Ok(acc + f64::from(t.sign) * e)
    })
}

pub fn mermin_value(rho: &DensityOperator, s: &TripartiteSettings) -> Result<f64> {
    inequality_value(rho, s, &MERMIN_TERMS)
}

pub fn svetlichny_value(rho: &DensityOperator, s: &TripartiteSettings) -> Result<f64> {
    inequality_value(rho, s, &SVETLICHNY_TERMS)
}

pub fn value(rho: &DensityOperator, s: &TripartiteSettings, kind: Inequality) -> Result<f64> {
    inequality_value(rho, s, kind.terms())
}
