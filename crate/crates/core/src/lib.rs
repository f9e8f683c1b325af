//! Numerical calculus for quaternionic slice-regular functions.
//!
//! The crate implements the quaternion algebra, stem/slice functions with
//! their non-commutative *-product, the intrinsic scalar/vector calculus,
//! square roots of slice-preserving polynomials, and the *-exponential with
//! its closed forms, classification and sum-rule decision procedure.
//!
//! Grid-wide evaluations are data-parallel; the default `parallel` feature
//! runs them on rayon, disabling it falls back to identical sequential code.

pub mod analytic;
pub mod error;
pub mod grid;
pub mod intrinsic;
pub mod quaternion;
pub mod report;
pub mod slicefn;
pub mod sqrt;
pub mod starexp;
pub mod tol;

pub use error::{Error, Result};
pub use quaternion::{orthonormal_basis, sphere_coords, Basis, ImaginaryUnit, Quaternion};
pub use slicefn::{PlanarDomain, QuaternionPolynomial, SliceFunction, StemValue};
