//! Exact verification of graded bialgebra identities, mapping cones and cone
//! products, with loop homology models of spheres as ground truth.

pub mod bialgebra;
pub mod chain;
pub mod cone;
pub mod error;
pub mod fixtures;
pub mod exact;
pub mod graded;
pub mod ops;
pub mod report;
pub mod scenario;
pub mod suite;

pub use bialgebra::{check_axioms, lambda_eta, AxiomReport, Truncation, UiabInstance};
pub use error::{Error, Result};
pub use exact::{ExactMatrix, Ring, Scalar};
pub use graded::{BasisElement, GradedMap, GradedModule, TensorElement, Vector};
pub use report::{CheckResult, Report, Section, Status, Witness};
