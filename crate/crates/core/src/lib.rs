//! Orthogonal and paraorthogonal polynomials on the unit circle.
//!
//! Weights live in [`measures`], bases in [`opuc`], paraorthogonal polynomials,
//! GGT matrices and zeros in [`popuc`], and parameter sweeps in [`trajectory`].

pub mod angle;
pub mod descriptor;
pub mod error;
pub mod measures;
pub mod opuc;
pub mod poly;
pub mod popuc;
pub mod quadrature;
pub mod specfun;
pub mod trajectory;

pub use num_complex::Complex64;

pub use descriptor::FamilyDescriptor;
pub use error::{Error, Result};
pub use measures::{MarkovProfile, MomentSequence, ProfileShape, SweepParam, WeightFamily, WeightKind};
pub use opuc::OpucBasis;
pub use poly::ComplexPolynomial;
pub use popuc::{GgtMatrix, ZeroOptions, ZeroSet};
pub use trajectory::{Anchor, BRule, Direction, TrajectoryTable, Verdict};
