//! Finite automorphism groups of A = E×E for elliptic curves with complex
//! multiplication by an imaginary quadratic order R, and the Kodaira–Enriques
//! type of the quotient A/H.
//!
//! Modules, bottom-up:
//! - [`quad_order`]: exact arithmetic in R and its fraction field.
//! - [`matrix_group`]: GL(2,R), finite orders, eigenvalue classes, recognition.
//! - [`torus`]: torsion points, affine automorphisms, affine closure.
//! - [`fixed_points`]: Smith normal form and fixed loci on A.
//! - [`classifier`]: the surface-type decision.
//! - [`catalog`]: encoded group realizations and self-verification.

pub mod catalog;
pub mod classifier;
pub mod error;
pub mod fixed_points;
pub mod matrix_group;
pub mod quad_order;
pub mod torus;

pub use error::{Error, Result};
pub use matrix_group::{CatalogLabel, EigenClass, EigenPair, Family, LinearGroup, Mat2};
pub use quad_order::{QuadElem, Rational, RingSpec, RootOfUnity};
