//! Eigenpairs and singular tuples of real dense tensors.
//!
//! A tensor `T` of order `k` is identified with its multilinear form
//! `f_T(x_1, ..., x_k) = sum T[i_1..i_k] x_1[i_1] ... x_k[i_k]`. Unit eigenvectors
//! are the critical points of `v -> f_T(v, ..., v)` restricted to the unit sphere,
//! and singular tuples are the critical points of `f_T` restricted to a product of
//! unit spheres. Both are computed here by multi-start search with a Newton polish,
//! in the Euclidean norm and in general `L^p` norms (`1 < p < inf`).
//!
//! For symmetric tensors the critical points of the restriction to `S^{n-1}` are
//! classified by Morse index, and the resulting index histogram is checked against
//! the constraints the topology of the sphere imposes ([`morse`]).
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the aliases below
//! fix the common `f64` case. The [`oracle`], [`io`] and [`report`] modules are
//! `f64`-only.

// Negated comparisons are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod io;
pub mod linalg;
pub mod morse;
pub mod norms;
pub mod oracle;
pub mod report;
pub mod scalar;
pub mod solver;
pub mod tensor;

pub use error::{Error, Result};
pub use morse::{audit, IndexHistogram, MorseReport};
pub use norms::NormParam;
pub use scalar::Scalar;
pub use solver::{
    classify_index, dedupe, generalized_eigenpairs, mode_eigenpairs, residual_eigen, singular_tuples,
    symmetric_eigenpairs, EigenPair, EigenSet, MorseClass, PairKind, SingularSet, SingularTuple, SolverConfig,
    StepControl,
};
pub use tensor::{random_tensor, symmetrize, DenseTensor, Shape, SymmetryCertificate};

/// Double-precision tensor.
pub type Tensor = DenseTensor<f64>;
/// Single-precision tensor.
pub type Tensor32 = DenseTensor<f32>;
/// Double-precision eigenpair.
pub type Eigenpair = EigenPair<f64>;
/// Double-precision singular tuple.
pub type Tuple = SingularTuple<f64>;
/// Double-precision solver configuration.
pub type Config = SolverConfig<f64>;
/// Double-precision norm parameter.
pub type Norm = NormParam<f64>;
