//! Eigenpairs and singular tuples as stationary points on unit spheres.
//!
//! Every solver is a multi-start search: each restart draws a random point on the
//! unit sphere (or product of spheres), optionally follows a gradient flow or an
//! alternating update toward a critical point, and finishes with a damped Newton
//! iteration on the full Lagrangian stationarity system. Candidates whose residual
//! passes `gradient_tolerance` are deduplicated and returned in a deterministic order.
//!
//! Restarts are independent; they run in parallel and are gathered in restart order,
//! so the output does not depend on scheduling.

mod config;
mod eigen;
mod index;
mod singular;

use std::borrow::Cow;
use std::cmp::Ordering;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub use config::{SolverConfig, StepControl};
pub(crate) use eigen::polish_symmetric as eigen_polish;
pub use eigen::{generalized_eigenpairs, mode_eigenpairs, residual_eigen, symmetric_eigenpairs};
pub use index::restricted_hessian;
pub use index::{classify_index, MorseClass};
pub use singular::{singular_residuals, singular_tuples};

use crate::linalg::distance;
use crate::norms::{unit_normalize, NormParam};
use crate::scalar::Scalar;

/// Which stationarity equation an eigenpair satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    /// Critical point of `f_T(v, ..., v)` on the sphere of a symmetric tensor.
    Symmetric,
    /// Stationarity in the given argument slot (0-based) of a square tensor.
    Mode(usize),
}

impl PairKind {
    /// External numbering: 0 for symmetric pairs, `i + 1` for mode `i`.
    pub fn code(self) -> usize {
        match self {
            PairKind::Symmetric => 0,
            PairKind::Mode(i) => i + 1,
        }
    }
}

/// A unit eigenvector with its eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair<T> {
    /// Unit vector in the configured `p`-norm.
    pub vector: Vec<T>,
    /// `lambda = f_T(v, ..., v)`.
    pub value: T,
    pub kind: PairKind,
    /// Stationarity defect, see [`residual_eigen`].
    pub residual: T,
    /// Morse index on the sphere (symmetric Euclidean pairs only).
    pub index: Option<usize>,
    pub nondegenerate: Option<bool>,
    /// Some coordinate is within `1e-8` of zero while `p < 2`, where the
    /// `p`-norm is not twice differentiable.
    pub near_nonsmooth: bool,
}

/// Critical points of `f_T` on a product of unit spheres, one vector per mode.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularTuple<T> {
    pub vectors: Vec<Vec<T>>,
    /// Singular value after sign canonicalization (`sigma >= 0`).
    pub sigma: T,
    /// `f_T(vectors)` before the sign flip.
    pub raw_sigma: T,
    /// Per-mode Lagrange multipliers `v_i . grad_i f / (v_i . phi_{p-1}(v_i))`.
    pub multipliers: Vec<T>,
    /// Per-mode stationarity defects `|grad_i f - sigma phi_{p-1}(v_i)|`.
    pub mode_residuals: Vec<T>,
    /// Largest of `mode_residuals`.
    pub residual: T,
    /// `sigma` vanishes within `1e-8 * max|T|`; the sign of such a tuple is not
    /// determined and it may lie on a degenerate critical set.
    pub degenerate: bool,
}

/// Output of an eigen solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSet<T> {
    /// Sorted by descending value, ties broken lexicographically by vector.
    pub pairs: Vec<EigenPair<T>>,
    pub restarts: usize,
    /// Accepted candidates before deduplication.
    pub accepted_candidates: usize,
}

impl<T: Scalar> EigenSet<T> {
    /// Nothing converged: no real eigenpair was found at this search effort.
    /// This does not prove that none exists.
    pub fn empty_at_effort(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.empty_at_effort() {
            out.push(format!("no real eigenpair found after {} restarts (empty at this effort)", self.restarts));
        }
        let nonsmooth = self.pairs.iter().filter(|p| p.near_nonsmooth).count();
        if nonsmooth > 0 {
            out.push(format!("{nonsmooth} pair(s) have near-zero coordinates where the p-norm is not smooth"));
        }
        let degenerate = self.pairs.iter().filter(|p| p.nondegenerate == Some(false)).count();
        if degenerate > 0 {
            out.push(format!("{degenerate} pair(s) are degenerate critical points"));
        }
        out
    }
}

/// Output of the singular tuple solver.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSet<T> {
    /// Sorted by descending sigma, ties broken lexicographically.
    pub tuples: Vec<SingularTuple<T>>,
    pub restarts: usize,
    pub accepted_candidates: usize,
}

impl<T: Scalar> SingularSet<T> {
    pub fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.tuples.is_empty() {
            out.push(format!("no singular tuple found after {} restarts", self.restarts));
        }
        let zero = self.tuples.iter().filter(|t| t.degenerate).count();
        if zero > 0 {
            out.push(format!("{zero} tuple(s) with vanishing singular value flagged degenerate"));
        }
        out
    }
}

/// Anything [`dedupe`] can cluster.
pub trait Candidate<T: Clone> {
    /// Point coordinates; tuples concatenate their vectors.
    fn coords(&self) -> Cow<'_, [T]>;
    fn residual(&self) -> T;
}

impl<T: Scalar> Candidate<T> for EigenPair<T> {
    fn coords(&self) -> Cow<'_, [T]> {
        Cow::Borrowed(&self.vector)
    }
    fn residual(&self) -> T {
        self.residual
    }
}

impl<T: Scalar> Candidate<T> for SingularTuple<T> {
    fn coords(&self) -> Cow<'_, [T]> {
        Cow::Owned(self.vectors.concat())
    }
    fn residual(&self) -> T {
        self.residual
    }
}

fn lex_cmp<T: Scalar>(a: &[T], b: &[T]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.partial_cmp(y).unwrap_or(Ordering::Equal))
        .find(|o| o.is_ne())
        .unwrap_or_else(|| a.len().cmp(&b.len()))
}

/// Greedy clustering by Euclidean distance `<= tol`.
///
/// Candidates are visited in order of increasing residual (ties by coordinates), so
/// each cluster is represented by its lowest-residual member. Antipodal points are
/// distinct critical points and are never merged.
pub fn dedupe<T: Scalar, C: Candidate<T>>(points: Vec<C>, tol: T) -> Vec<C> {
    let mut keyed: Vec<(Vec<T>, C)> = points.into_iter().map(|c| (c.coords().into_owned(), c)).collect();
    keyed.sort_by(|(ka, a), (kb, b)| {
        a.residual().partial_cmp(&b.residual()).unwrap_or(Ordering::Equal).then_with(|| lex_cmp(ka, kb))
    });
    let mut survivors: Vec<(Vec<T>, C)> = Vec::new();
    for (key, c) in keyed {
        if survivors.iter().all(|(s, _)| distance(s, &key) > tol) {
            survivors.push((key, c));
        }
    }
    survivors.into_iter().map(|(_, c)| c).collect()
}

/// Random stream for restart `restart` of a run seeded with `seed`.
pub(crate) fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// Point on the unit `p`-sphere of `R^n` from a normalized Gaussian draw.
pub(crate) fn random_unit<T: Scalar>(rng: &mut ChaCha8Rng, n: usize, p: NormParam<T>) -> Vec<T> {
    loop {
        let x: Vec<T> = (0..n).map(|_| T::lit(StandardNormal.sample(rng))).collect();
        if let Ok(u) = unit_normalize(&x, p) {
            return u;
        }
    }
}
