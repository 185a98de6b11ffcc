//! Number-phase operators on truncated weighted Bergman bases.
//!
//! The crate realizes the pair (N, Φ) — the number operator and the one-sided
//! phase shift — in the orthonormal basis of a weighted Bergman space on the
//! unit disc, builds the two-parameter state family `f_{w,k}`, and provides
//! three independent verification routes for the identities the family is
//! supposed to satisfy: series summation ([`specfun`], [`moments`]), finite
//! linear algebra ([`hilbert`], [`optimize`]) and quadrature on the disc
//! ([`analytic`]).
//!
//! All numerical kernels are generic over the scalar type through [`Real`];
//! `f64` is the working precision for every stated tolerance, `f32` works at
//! reduced accuracy. Concrete aliases for the common `f64` instantiation are
//! exported at the crate root.

use std::fmt;
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};

pub mod analytic;
mod error;
pub mod export;
pub mod hilbert;
pub mod moments;
pub mod optimize;
pub mod specfun;
pub mod states;

pub use error::{Error, Result};
pub use hilbert::{CoeffState, OpLabel, OperatorMatrix};
pub use moments::{MomentReport, Observable};
pub use optimize::{FitResult, MinimizeOutcome, OptimizeSettings, TruncationPolicy};
pub use specfun::{SeriesResult, WeightParam};
pub use states::{NormalizationConstant, StateParams};

/// Floating-point scalar the kernels are generic over: `f32` or `f64`.
pub trait Real:
    Float + FromPrimitive + NumAssign + Sum<Self> + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex coefficient over the generic scalar.
pub type Complex<T> = num_complex::Complex<T>;

pub type Complex64 = num_complex::Complex<f64>;
pub type State64 = hilbert::CoeffState<f64>;
pub type Params64 = states::StateParams<f64>;
pub type Report64 = moments::MomentReport<f64>;
pub type Fit64 = optimize::FitResult<f64>;
pub type Weight64 = specfun::WeightParam<f64>;

/// Converts an `f64` constant into the working scalar.
#[inline]
pub(crate) fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("constant representable in scalar type")
}

/// Converts a nonnegative integer into the working scalar.
#[inline]
pub(crate) fn uint<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("index representable in scalar type")
}
