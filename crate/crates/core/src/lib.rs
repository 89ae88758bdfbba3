//! Evaluation codes on the invertible matrices over a finite field.
//!
//! Evaluating every linear form on the space of `n x n` matrices at the
//! points of `GL_n(F_q)`, taken in a fixed canonical order, yields a linear
//! `[gamma(n,q), n^2]` code whose minimum distance has an exact closed form.
//! This crate builds those codes and checks everything it claims three ways:
//!
//! * [`formulas`] evaluates the closed forms (`gamma(n,q)`, q-analogs, the
//!   partial-trace section counts `f_k`, code parameters, Singleton and
//!   Griesmer defects) in exact arbitrary-precision arithmetic.
//! * [`code`] constructs the generator matrix, enumerates codeword weights,
//!   and computes the minimum distance by exhaustive scan, by
//!   hyperplane-section counting, and by formula.
//! * [`sections`] counts hyperplane sections of `GL_n(F_q)` by brute force
//!   and canonicalizes them to rank/shift form.
//! * [`bruhat`] factors invertible matrices as lower x permutation x upper
//!   (LPU) and measures the cell structure of the `a_11 = 0` locus.
//!
//! The underlying exact arithmetic lives in [`gf`] (small finite fields with
//! deterministic element encodings) and [`matrix`] (dense matrix algebra and
//! canonical enumeration of `M_n` and `GL_n`).

pub mod bruhat;
pub mod code;
pub mod formulas;
pub mod gf;
pub mod matrix;
pub mod sections;

pub use bruhat::{BruhatFactorization, Perm};
pub use code::{Codeword, EvaluationCode, WeightDistribution};
pub use formulas::{CodeParams, QInt};
pub use gf::{Felt, FieldCtx};
pub use matrix::{Mat, MatIndex};
pub use sections::{CanonicalSection, Hyperplane};

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("modulus must be a monic irreducible polynomial of degree m over F_p")]
    ReduciblePolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different field contexts")]
    MixedFields,
    #[error("matrix dimensions do not match")]
    DimensionMismatch,
    #[error("hyperplane normal must be nonzero")]
    ZeroNormal,
    #[error("argument out of range: {0}")]
    OutOfRange(&'static str),
    #[error("computation infeasible: {0}")]
    Infeasible(String),
    #[error("matrix is singular")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;
