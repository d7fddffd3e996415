//! Numerical toolkit for weighted Hardy spaces `H²_ω` on the unit disk.
//!
//! The space is fixed by a weight sequence `ω` ([`weights`]); functions are
//! represented by truncated Taylor expansions ([`series`]). On top of that
//! substrate the crate computes:
//!
//! * optimal polynomial approximants `p_n*` to `1/f` and inner-ness checks
//!   ([`approximants`]),
//! * reproducing kernels and Gram matrices over finite point sets ([`kernels`]),
//! * Shapiro–Shields inner functions vanishing on a prescribed finite set, and
//!   the distance from `1` to the invariant subspace they generate, by three
//!   independent routes ([`shapiro_shields`]),
//! * closed-form reference functions (Blaschke factors, Bergman extremal
//!   functions, atomic singular inner functions) in [`oracles`].
//!
//! All numerical code is generic over the real scalar `T: Real` (`f32` or
//! `f64`); the aliases at the crate root fix `T = f64`, which is what the CLI
//! uses.

// `!(x > 0)` style comparisons deliberately reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approximants;
pub mod cli;
pub mod error;
pub mod kernels;
pub mod linalg;
pub mod oracles;
pub mod scalar;
pub mod series;
pub mod shapiro_shields;
pub mod weights;

pub use error::{Error, Result};
pub use num_complex::Complex;
pub use scalar::Real;

pub type Complex64 = Complex<f64>;
pub type Complex32 = Complex<f32>;

pub type WeightSequence64 = weights::WeightSequence<f64>;
pub type TaylorSeries64 = series::TaylorSeries<f64>;
pub type Polynomial64 = series::Polynomial<f64>;
pub type PointSet64 = kernels::PointSet<f64>;
pub type GramMatrix64 = kernels::GramMatrix<f64>;
pub type HermitianMatrix64 = linalg::HermitianMatrix<f64>;
pub type ApproximantResult64 = approximants::ApproximantResult<f64>;
pub type ShapiroShieldsResult64 = shapiro_shields::ShapiroShieldsResult<f64>;

pub type WeightSequence32 = weights::WeightSequence<f32>;
pub type TaylorSeries32 = series::TaylorSeries<f32>;
pub type Polynomial32 = series::Polynomial<f32>;
pub type PointSet32 = kernels::PointSet<f32>;
pub type ApproximantResult32 = approximants::ApproximantResult<f32>;
pub type ShapiroShieldsResult32 = shapiro_shields::ShapiroShieldsResult<f32>;
