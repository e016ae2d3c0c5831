//! Exact arithmetic for the toroidal Lie algebras `ĝ_R = g ⊗ R ⊕ Ω¹_R/dR`,
//! their three-term L∞ cocycle model, and the vacuum vertex algebra
//! `V(ĝ_R)` for `R = A[t, t⁻¹]`.
//!
//! Everything is computed over arbitrary-precision rationals, so every
//! identity check is exact: a nonzero residual is a failure, never noise.
//!
//! The crate is `no_std` and only needs `alloc`. IO, parsing and the command
//! line live in the companion `toroidal-cli` crate.
#![no_std]

extern crate alloc;

mod error;
pub mod functor;
pub mod kaehler;
pub mod lc;
pub mod lie;
pub mod linalg;
pub mod report;
pub mod ring;
pub mod toroidal;
pub mod vacuum;

pub use error::{Error, Result};
pub use kaehler::{CentralClass, KTerm, KaehlerElement};
pub use lc::Lc;
pub use lie::{LieAlgebra, LieElement};
pub use report::{Instance, Report};
pub use ring::{Exponent, RingElement, RingHom, RingSpec, Variable};
pub use toroidal::{
    CeConvention, CocycleVariant, KComplexElement, LoopKey, PureTensor, ToroidalAlgebra, ToroidalElement,
};
pub use vacuum::{FieldSpec, NegGenerator, PbwMonomial, Prediction, VacuumModule, VacuumState, Window};

/// Coefficient field.
pub type Rational = num_rational::BigRational;

/// `n / d` as a [`Rational`]. Panics on `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// The integer `n` as a [`Rational`].
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
