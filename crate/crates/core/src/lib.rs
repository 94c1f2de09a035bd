//! Classification of isotropic vectors and isotropic subspaces under
//! paramodular groups.

pub mod arith;
pub mod error;
pub mod group;
pub mod gspaces;
pub mod invariants;
pub mod ints;
pub mod matrix;
pub mod oracle;
pub mod orbits_lines;
pub mod polarization;
pub mod vector;

pub use error::{Error, Result};
pub use group::{GroupElement, GroupKind, MatrixDoc, Verdict, Violation};
pub use matrix::{IntMatrix, RatMatrix};
pub use polarization::Polarization;
pub use vector::SympVector;
pub use invariants::DivisorTuple;
pub use gspaces::{IsotropicLattice, Reduction, TransformationTape};
