//! Exact density-matrix simulation of sequential tripartite nonlocality
//! sharing on generalized GHZ states.
//!
//! Alice and Bob each hold one qubit of `cos φ|000⟩ + sin φ|111⟩`; a
//! sequence of Charlies measures the third qubit projectively, each passing
//! the Lüders-updated state to the next. The crate evaluates the Mermin and
//! Svetlichny values seen by every Charlie, compares them with their closed
//! forms, locates the parameter windows where two Charlies both violate,
//! and certifies the classical bounds by enumerating deterministic
//! hidden-variable strategies.
//!
//! ```
//! use ghzshare_core::{feasibility, scenario};
//!
//! let (m1, m2) = scenario::standard_pair_simulated(std::f64::consts::FRAC_PI_4, 0.5).unwrap();
//! assert!((m1 - 3.0).abs() < 1e-12 && (m2 - 2.5).abs() < 1e-12);
//! assert!((feasibility::phi_threshold_standard() - 0.424).abs() < 5e-4);
//! ```

pub mod bell;
pub mod cmatrix;
mod error;
pub mod feasibility;
pub mod lhvbound;
pub mod luders;
pub mod qstate;
pub mod scenario;

pub use bell::{Inequality, TripartiteSettings};
pub use cmatrix::{Complex, ComplexMatrix};
pub use error::{Error, Result};
pub use feasibility::{FeasibilityGrid, Interval};
pub use luders::{CharlieStrategy, InputDistribution};
pub use qstate::{DensityOperator, DichotomicMeasurement, Observable, PureState};
pub use scenario::{MixtureParams, ScenarioKind, ScenarioReport};
