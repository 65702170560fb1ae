//! Classical bounds of the Mermin and Svetlichny expressions by exhaustive
//! enumeration of deterministic hidden-variable strategies.
//!
//! Both local models are convex hulls of their deterministic points, so the
//! maximum over the model is the maximum over the finite list enumerated
//! here. Fully-local strategies fix one ±1 outcome per party and input
//! (2⁶ = 64 of them). Hybrid strategies pick a bipartition, let each paired
//! party's outcome depend on both paired inputs (2⁴ × 2⁴, signaling within
//! the pair allowed) and the remaining party's outcome on its own input
//! (2²), for 3 × 1024 = 3072 strategies.

use std::collections::BTreeMap;

use crate::bell::{Inequality, Term};
use crate::error::Result;
use crate::scenario::{genuine_pair_simulated, standard_pair_simulated};

/// Outcome as a function of the three inputs.
pub trait DeterministicStrategy {
    /// `(a, b, c)` outcomes, each ±1, for inputs `(x, y, z)`.
    fn outcomes(&self, x: usize, y: usize, z: usize) -> (i32, i32, i32);

    fn evaluate(&self, terms: &[Term]) -> i32 {
        terms
            .iter()
            .map(|t| {
                let (a, b, c) = self.outcomes(t.x, t.y, t.z);
                t.sign * a * b * c
            })
            .sum()
    }
}

fn sign(bit: u32) -> i32 {
    if bit == 0 {
        1
    } else {
        -1
    }
}

fn bit(pattern: u32, index: usize) -> u32 {
    (pattern >> index) & 1
}

/// One ±1 outcome per party and input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeterministicLocalStrategy {
    pub a: [i32; 2],
    pub b: [i32; 2],
    pub c: [i32; 2],
}

impl DeterministicLocalStrategy {
    /// Decodes a 6-bit pattern (bits `a0 a1 b0 b1 c0 c1`, low first).
    pub fn from_bits(pattern: u32) -> Self {
        assert!(pattern < 64, "local strategies are indexed by 6 bits");
        let s = |i| sign(bit(pattern, i));
        Self {
            a: [s(0), s(1)],
            b: [s(2), s(3)],
            c: [s(4), s(5)],
        }
    }

    pub fn all() -> impl Iterator<Item = Self> {
        (0..64).map(Self::from_bits)
    }
}

impl DeterministicStrategy for DeterministicLocalStrategy {
    fn outcomes(&self, x: usize, y: usize, z: usize) -> (i32, i32, i32) {
        (self.a[x], self.b[y], self.c[z])
    }
}

/// Which two parties share an arbitrary joint response.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bipartition {
    /// Alice and Bob paired, Charlie alone.
    AbC,
    /// Alice and Charlie paired, Bob alone.
    AcB,
    /// Bob and Charlie paired, Alice alone.
    BcA,
}

impl Bipartition {
    pub const ALL: [Bipartition; 3] = [Bipartition::AbC, Bipartition::AcB, Bipartition::BcA];

    pub fn label(self) -> &'static str {
        match self {
            Bipartition::AbC => "AB|C",
            Bipartition::AcB => "AC|B",
            Bipartition::BcA => "BC|A",
        }
    }
}

/// Deterministic point of the hybrid-local model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeterministicHybridStrategy {
    pub bipartition: Bipartition,
    /// Outcome tables of the two paired parties, indexed by
    /// `first_input + 2 · second_input` of the pair (in A, B, C order).
    pub joint: [[i32; 4]; 2],
    /// Outcome of the remaining party for each of its inputs.
    pub solo: [i32; 2],
}

impl DeterministicHybridStrategy {
    pub fn from_bits(bipartition: Bipartition, joint_first: u32, joint_second: u32, solo: u32) -> Self {
        assert!(joint_first < 16 && joint_second < 16 && solo < 4);
        let table = |p: u32| [0, 1, 2, 3].map(|i| sign(bit(p, i)));
        Self {
            bipartition,
            joint: [table(joint_first), table(joint_second)],
            solo: [sign(bit(solo, 0)), sign(bit(solo, 1))],
        }
    }

    pub fn all_for(bipartition: Bipartition) -> impl Iterator<Item = Self> {
        (0..16u32).flat_map(move |j1| {
            (0..16u32).flat_map(move |j2| (0..4u32).map(move |s| Self::from_bits(bipartition, j1, j2, s)))
        })
    }

    pub fn all() -> impl Iterator<Item = Self> {
        Bipartition::ALL.into_iter().flat_map(Self::all_for)
    }
}

impl DeterministicStrategy for DeterministicHybridStrategy {
    fn outcomes(&self, x: usize, y: usize, z: usize) -> (i32, i32, i32) {
        let [first, second] = self.joint;
        match self.bipartition {
            Bipartition::AbC => {
                let k = x + 2 * y;
                (first[k], second[k], self.solo[z])
            }
            Bipartition::AcB => {
                let k = x + 2 * z;
                (first[k], self.solo[y], second[k])
            }
            Bipartition::BcA => {
                let k = y + 2 * z;
                (self.solo[x], first[k], second[k])
            }
        }
    }
}

/// Summary of an exhaustive enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub count: usize,
    pub max: i32,
    pub min: i32,
    pub maximizers: usize,
    /// Number of strategies attaining each value.
    pub histogram: BTreeMap<i32, usize>,
}

pub fn enumerate<S: DeterministicStrategy>(strategies: impl IntoIterator<Item = S>, terms: &[Term]) -> Enumeration {
    let mut histogram = BTreeMap::new();
    let mut count = 0;
    for s in strategies {
        *histogram.entry(s.evaluate(terms)).or_insert(0) += 1;
        count += 1;
    }
    let max = histogram.keys().next_back().copied().unwrap_or(i32::MIN);
    let min = histogram.keys().next().copied().unwrap_or(i32::MAX);
    Enumeration {
        count,
        max,
        min,
        maximizers: histogram.get(&max).copied().unwrap_or(0),
        histogram,
    }
}

/// All 64 fully-local strategies against the given expression.
pub fn enumerate_local(kind: Inequality) -> Enumeration {
    enumerate(DeterministicLocalStrategy::all(), kind.terms())
}

/// Hybrid strategies against the Svetlichny expression, optionally
/// restricted to one bipartition.
pub fn enumerate_hybrid(only: Option<Bipartition>) -> Enumeration {
    let terms = Inequality::Svetlichny.terms();
    match only {
        Some(b) => enumerate(DeterministicHybridStrategy::all_for(b), terms),
        None => enumerate(DeterministicHybridStrategy::all(), terms),
    }
}

pub fn mermin_classical_max() -> f64 {
    f64::from(enumerate_local(Inequality::Mermin).max)
}

pub fn svetlichny_classical_max() -> f64 {
    f64::from(enumerate_hybrid(None).max)
}

/// Simulated value of the fixed quantum settings at `φ = π/4`, `p = 1`.
/// A witness that the classical bound is exceeded, not a Tsirelson-type bound.
pub fn quantum_witness_max(kind: Inequality) -> Result<f64> {
    let phi = std::f64::consts::FRAC_PI_4;
    Ok(match kind {
        Inequality::Mermin => standard_pair_simulated(phi, 1.0)?.0,
        Inequality::Svetlichny => genuine_pair_simulated(phi, 1.0, 0.5)?.0,
    })
}
