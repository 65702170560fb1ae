use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {lhs:?} vs {rhs:?}")]
    DimensionMismatch {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("{name} = {value} is outside {domain}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("Bloch vector is not a unit vector (squared norm {0})")]
    NonUnitBloch(f64),

    #[error("invalid observable: {0}")]
    InvalidObservable(&'static str),

    #[error("invalid measurement: {0}")]
    InvalidMeasurement(&'static str),

    #[error("invalid state: {0}")]
    InvalidState(&'static str),

    #[error("expectation value has imaginary residue {0:e}")]
    ImaginaryResidue(f64),

    #[error("no genuine threshold exists for v = {0} (requires 1/sqrt(2) < v < 1)")]
    NoThreshold(f64),

    #[error("invalid sample axis `{axis}`: {reason}")]
    InvalidAxis { axis: &'static str, reason: &'static str },

    #[error("the standard scenario has unbiased inputs; a bias v is not accepted")]
    UnexpectedBias,

    #[error("the genuine scenario requires a bias v")]
    MissingBias,
}

/// Checks `lo <= value <= hi`.
pub(crate) fn check_closed(name: &'static str, value: f64, lo: f64, hi: f64, domain: &'static str) -> Result<()> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(())
    } else {
        Err(Error::OutOfRange { name, value, domain })
    }
}
