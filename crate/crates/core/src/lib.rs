//! Exact realizability tests for closed almost complex manifolds whose Betti
//! numbers vanish outside degrees `0`, `n/2` and `n`.
//!
//! Only the Chern classes `c_K` and `c_{2K}` (with `K = n/4`) may be nonzero,
//! so every characteristic class lives in the truncated ring with basis
//! `{1, c_K, c_K^2, c_{2K}}` and every Chern number is a rational linear form in
//! `x = <c_K^2, mu>` and `y = <c_{2K}, mu>`. The crate is layered bottom-up:
//!
//! - [`numtheory`]: Bernoulli numbers, factorials, 2-adic orders and the
//!   combinatorial sums feeding the relation coefficients.
//! - [`graded`]: the truncated graded ring, generic over the [`Scalar`] type,
//!   used as an independent symbolic route to the Todd, A-hat and L classes.
//! - [`relations`]: closed-form signature equation and divisibility
//!   conditions per dimension, cross-checked against [`graded`].
//! - [`realize`]: verdicts for `(n, sigma, chi)`, the congruence lattice of
//!   realizable pairs and the 2-adic divisibility bounds.
//! - [`cli`]: the command-line front end.

pub mod cli;
mod error;
pub mod graded;
pub mod lattice;
pub mod numtheory;
pub mod realize;
pub mod relations;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Unbounded signed integer.
pub type ExactInt = num_bigint::BigInt;
/// Reduced fraction of [`ExactInt`]s with positive denominator.
pub type ExactRational = num_rational::BigRational;

/// Element of the truncated ring over exact rationals.
pub type GradedClass = graded::Graded<ExactRational>;
/// Linear form `a_x x + a_y y` over exact rationals.
pub type PairingForm = graded::Pairing<ExactRational>;
/// Floating-point instantiation of the graded ring, for quick numeric checks.
pub type GradedClassF64 = graded::Graded<f64>;
/// Floating-point pairing form.
pub type PairingFormF64 = graded::Pairing<f64>;

pub use graded::MiddleIndex;
pub use lattice::LatticeBasis;
pub use realize::{CharacterizationReport, Congruence, Verdict};
pub use relations::{DivisibilityCondition, RelationSet};
