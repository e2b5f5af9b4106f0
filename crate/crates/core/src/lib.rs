//! The Lerch zeta function ζ(s,a,c) = Σ_{n≥0} e^{2πina}(n+c)^{-s} as a
//! multivalued function of three complex variables.
//!
//! Numerical routines are generic over the scalar type ([`Real`], i.e. `f32`
//! or `f64`); the `*64` aliases below fix `f64`, for which the documented
//! tolerances hold.

// `!(x < y)` is used on purpose so that NaN inputs are rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// oracle digits in tests are kept as printed
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod branchkit;
pub mod continuation;
pub mod error;
pub mod evaluator;
pub mod funceq;
pub mod monodromy;
pub mod quadrature;
pub mod real;
pub mod verify;

pub use continuation::{
    classify, dde_shift, evaluate, evaluate_on_cover, pde_residual, transform_eval, BranchState, Direction, EvalOptions,
    RegionTag,
};
pub use error::{LerchError, Result};
pub use evaluator::{ContourSpec, LerchValue, Method, Point3, SeriesKind};
pub use monodromy::{Generator, Word};
pub use real::{Real, C};

pub type Complex64 = num_complex::Complex<f64>;
pub type Point3f64 = Point3<f64>;
pub type LerchValue64 = LerchValue<f64>;
pub type ContourSpec64 = ContourSpec<f64>;
pub type EvalOptions64 = EvalOptions<f64>;
