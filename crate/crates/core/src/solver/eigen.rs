use rayon::prelude::*;

use super::{dedupe, lex_cmp, random_unit, restart_rng, EigenPair, EigenSet, PairKind, SolverConfig};
use crate::error::{Error, Result};
use crate::linalg::{dot, norm2, solve, Matrix};
use crate::norms::{p_norm, phi, unit_normalize, NormParam};
use crate::scalar::Scalar;
use crate::solver::index::classify_index;
use crate::tensor::DenseTensor;

/// `|k grad_i f_T(v, ..., v) - lambda k phi_{p-1}(v)|_2`, the defect of the
/// mode-`mode` eigen equation `grad_i f_T(v,...,v) = lambda grad |v|_p^k` on the
/// unit `p`-sphere (where `grad |v|_p^k = k phi_{p-1}(v)`).
///
/// The slot gradient is scaled by `k` so that, for symmetric tensors, the left side
/// is the full gradient of `v -> f_T(v, ..., v)` and the multiplier equals
/// `f_T(v, ..., v)`.
pub fn residual_eigen<T: Scalar>(t: &DenseTensor<T>, v: &[T], lambda: T, mode: usize, p: NormParam<T>) -> Result<T> {
    if !t.is_square() {
        return Err(Error::Shape(format!("eigenpairs need a square tensor, got {:?}", t.dims())));
    }
    let norm = p_norm(v, p);
    if (norm - T::one()).abs() > T::epsilon().sqrt() {
        return Err(Error::Precondition(format!("vector has p-norm {norm}, expected 1")));
    }
    let problem = EigenProblem::new(t, mode, p, false)?;
    Ok(problem.residual(v, lambda))
}

/// Unit eigenpairs of a symmetric tensor: the critical points of `f_T(v, ..., v)`
/// on `S^{n-1}` together with their critical values, each classified by Morse index.
///
/// Returns [`Error::Degenerate`] when the critical set is evidently not a finite set
/// of nondegenerate points (e.g. the identity matrix, where every point is critical).
pub fn symmetric_eigenpairs<T: Scalar>(t: &DenseTensor<T>, config: &SolverConfig<T>) -> Result<EigenSet<T>> {
    config.validate()?;
    if !config.p.is_euclidean() {
        return Err(Error::Argument(
            "symmetric eigenpairs use the Euclidean norm; use generalized eigenpairs for p != 2".into(),
        ));
    }
    let cert = t.symmetry()?;
    if !cert.is_symmetric() {
        return Err(Error::NotSymmetric { max_asymmetry: cert.max_asymmetry.as_f64() });
    }
    let problem = EigenProblem::new(t, 0, config.p, true)?;
    let mut set = problem.search(config, PairKind::Symmetric)?;
    let mut degenerate = 0;
    for pair in &mut set.pairs {
        let class = classify_index(t, &pair.vector, pair.value)?;
        pair.index = Some(class.index);
        pair.nondegenerate = Some(class.nondegenerate);
        if !class.nondegenerate {
            degenerate += 1;
        }
    }
    if 2 * degenerate > set.pairs.len() {
        return Err(Error::Degenerate(format!(
            "{degenerate} of {} critical points have a singular restricted Hessian",
            set.pairs.len()
        )));
    }
    Ok(set)
}

/// Mode-`mode` (0-based) unit eigenpairs of a square tensor in the Euclidean norm.
pub fn mode_eigenpairs<T: Scalar>(t: &DenseTensor<T>, mode: usize, config: &SolverConfig<T>) -> Result<EigenSet<T>> {
    if !config.p.is_euclidean() {
        return Err(Error::Argument(
            "mode eigenpairs use the Euclidean norm; use generalized eigenpairs for p != 2".into(),
        ));
    }
    generalized_eigenpairs(t, mode, config)
}

/// Mode-`mode` (0-based) unit eigenpairs in the `config.p` norm:
/// `grad_i f_T(v, ..., v) = lambda grad |v|_p^k` with `|v|_p = 1`.
pub fn generalized_eigenpairs<T: Scalar>(
    t: &DenseTensor<T>,
    mode: usize,
    config: &SolverConfig<T>,
) -> Result<EigenSet<T>> {
    config.validate()?;
    let flow = t.is_symmetric();
    let problem = EigenProblem::new(t, mode, config.p, flow)?;
    problem.search(config, PairKind::Mode(mode))
}

/// Largest number of isolated critical points on the sphere for an order-`k`
/// tensor on `R^n`: twice the generic count of eigenvector lines,
/// `((k-1)^n - 1) / (k-2)` (`n` for matrices).
fn isolated_point_bound(n: usize, k: usize) -> usize {
    let lines = if k == 2 {
        n
    } else {
        let km1 = (k - 1) as u128;
        let pow = (0..n).fold(1u128, |acc, _| acc.saturating_mul(km1));
        ((pow - 1) / (k as u128 - 2)).min(usize::MAX as u128 / 4) as usize
    };
    2 * lines
}

pub(crate) struct EigenProblem<'a, T> {
    t: &'a DenseTensor<T>,
    mode: usize,
    p: NormParam<T>,
    k: usize,
    n: usize,
    /// Run projected ascent/descent before Newton (the field is a gradient only
    /// for symmetric tensors).
    flow: bool,
}

impl<'a, T: Scalar> EigenProblem<'a, T> {
    pub(crate) fn new(t: &'a DenseTensor<T>, mode: usize, p: NormParam<T>, flow: bool) -> Result<Self> {
        if !t.is_square() {
            return Err(Error::Shape(format!("eigenpairs need a square tensor, got {:?}", t.dims())));
        }
        let k = t.order();
        if k < 2 {
            return Err(Error::Argument("eigenpairs need a tensor of order at least 2".into()));
        }
        if mode >= k {
            return Err(Error::Argument(format!(
                "mode {mode} out of range for an order-{k} tensor (modes are 0-based)"
            )));
        }
        let n = t.dims()[0];
        Ok(Self { t, mode, p, k, n, flow })
    }

    fn kk(&self) -> T {
        T::from_usize_lossy(self.k)
    }

    fn value(&self, v: &[T]) -> T {
        self.t.contract_except(&vec![v; self.k], &[])[0]
    }

    /// `k grad_mode f_T(v, ..., v)`.
    fn field(&self, v: &[T]) -> Vec<T> {
        let k = self.kk();
        self.t.contract_except(&vec![v; self.k], &[self.mode]).into_iter().map(|g| k * g).collect()
    }

    fn normal(&self, v: &[T]) -> Vec<T> {
        phi(v, self.p.p() - T::one())
    }

    fn residual_parts(&self, v: &[T], lambda: T) -> Vec<T> {
        let kl = self.kk() * lambda;
        self.field(v).into_iter().zip(self.normal(v)).map(|(g, nv)| g - kl * nv).collect()
    }

    fn residual(&self, v: &[T], lambda: T) -> T {
        norm2(&self.residual_parts(v, lambda))
    }

    /// Lagrangian stationarity system `[G(v) - k lambda phi(v); (1 - sum |v|^p) / p]`.
    fn system(&self, z: &[T]) -> Vec<T> {
        let (v, lambda) = (&z[..self.n], z[self.n]);
        let mut f = self.residual_parts(v, lambda);
        let p = self.p.p();
        let sum: T = v.iter().map(|x| x.abs().powf(p)).sum();
        f.push((T::one() - sum) / p);
        f
    }

    fn jacobian(&self, z: &[T]) -> Option<Matrix<T>> {
        let n = self.n;
        let (v, lambda) = (&z[..n], z[n]);
        let k = self.kk();
        let mut jac = Matrix::zeros(n + 1, n + 1);
        let jm = self.t.mode_jacobian(v, self.mode).ok()?;
        let q = self.p.p() - T::one();
        let normal = self.normal(v);
        let floor = T::lit(1e-12);
        for r in 0..n {
            for c in 0..n {
                jac.set(r, c, k * jm.get(r, c));
            }
            // d/dv_r of phi_q(v_r) = q |v_r|^(q-1), singular at 0 for p < 2.
            let dphi = if q == T::one() { T::one() } else { q * v[r].abs().max(floor).powf(q - T::one()) };
            jac.set(r, r, jac.get(r, r) - k * lambda * dphi);
            jac.set(r, n, -k * normal[r]);
            jac.set(n, r, -normal[r]);
        }
        Some(jac)
    }

    /// Damped Newton on the stationarity system from `(v0, f(v0))`.
    fn newton(&self, v0: &[T], config: &SolverConfig<T>) -> Vec<T> {
        let mut z = v0.to_vec();
        z.push(self.value(v0));
        let mut fz = self.system(&z);
        let mut fnorm = norm2(&fz);
        let target = config.gradient_tolerance * T::lit(1e-3);
        for _ in 0..config.step.newton_iterations {
            if fnorm <= target {
                break;
            }
            let Some(jac) = self.jacobian(&z) else { break };
            let rhs: Vec<T> = fz.iter().map(|&x| -x).collect();
            let Some(delta) = solve(&jac, &rhs) else { break };
            let mut t = T::one();
            let mut improved = false;
            while t >= T::lit(1.0 / 1024.0) {
                let trial: Vec<T> = z.iter().zip(&delta).map(|(&a, &d)| a + t * d).collect();
                let ft = self.system(&trial);
                let nt = norm2(&ft);
                if nt.is_finite() && nt < (T::one() - T::lit(1e-4) * t) * fnorm {
                    z = trial;
                    fz = ft;
                    fnorm = nt;
                    improved = true;
                    break;
                }
                t = t * T::lit(0.5);
            }
            if !improved {
                break;
            }
        }
        z.truncate(self.n);
        z
    }

    /// Projected ascent (`sign = 1`) or descent (`sign = -1`) of `f_T(v, ..., v)` on
    /// the unit `p`-sphere with renormalization as retraction.
    fn flow_phase(&self, v0: Vec<T>, sign: T, config: &SolverConfig<T>) -> Vec<T> {
        let s = &config.step;
        let mut v = v0;
        let mut f = self.value(&v);
        let mut alpha = s.initial_step;
        for _ in 0..config.max_iterations {
            let g = self.field(&v);
            let nv = self.normal(&v);
            let coef = dot(&g, &nv) / dot(&nv, &nv);
            let d: Vec<T> = g.iter().zip(&nv).map(|(&gi, &ni)| sign * (gi - coef * ni)).collect();
            let dn2 = dot(&d, &d);
            if dn2.sqrt() <= s.switch_tolerance * (T::one() + norm2(&g)) {
                break;
            }
            let mut accepted = false;
            while alpha >= s.min_step {
                let trial: Vec<T> = v.iter().zip(&d).map(|(&a, &b)| a + alpha * b).collect();
                if let Ok(u) = unit_normalize(&trial, self.p) {
                    let fu = self.value(&u);
                    if sign * (fu - f) >= s.armijo * alpha * dn2 {
                        v = u;
                        f = fu;
                        accepted = true;
                        break;
                    }
                }
                alpha = alpha * s.shrink;
            }
            if !accepted {
                break;
            }
            alpha = alpha * s.grow;
        }
        v
    }

    fn finalize(&self, v: &[T], kind: PairKind, tol: T) -> Option<EigenPair<T>> {
        if v.iter().any(|x| !x.is_finite()) {
            return None;
        }
        let v = unit_normalize(v, self.p).ok()?;
        let (v, value, residual) = self.snap_zeros(v, tol);
        if !(residual <= tol) {
            return None;
        }
        let near_nonsmooth = self.p.p() < T::lit(2.0) && v.iter().any(|x| x.abs() < T::lit(1e-8));
        Some(EigenPair { vector: v, value, kind, residual, index: None, nondegenerate: None, near_nonsmooth })
    }

    /// For `p > 2` or `k > 2` the Jacobian is singular along coordinate planes and
    /// Newton creeps toward zero coordinates. Zero out the largest set of small
    /// coordinates that still leaves a converged point.
    fn snap_zeros(&self, v: Vec<T>, tol: T) -> (Vec<T>, T, T) {
        let value = self.value(&v);
        let residual = self.residual(&v, value);
        let mut small: Vec<usize> = (0..self.n).filter(|&j| v[j] != T::zero() && v[j].abs() < T::lit(1e-2)).collect();
        small.sort_by(|&a, &b| v[a].abs().partial_cmp(&v[b].abs()).unwrap_or(std::cmp::Ordering::Equal));
        for m in (1..=small.len()).rev() {
            let mut w = v.clone();
            for &j in &small[..m] {
                w[j] = T::zero();
            }
            let Ok(w) = unit_normalize(&w, self.p) else { continue };
            let wv = self.value(&w);
            let wr = self.residual(&w, wv);
            if wr <= tol && wr <= residual.max(tol * T::lit(1e-2)) {
                return (w, wv, wr);
            }
        }
        (v, value, residual)
    }

    fn run_restart(&self, restart: usize, config: &SolverConfig<T>, kind: PairKind) -> Vec<EigenPair<T>> {
        let mut rng = restart_rng(config.seed, restart);
        let start = random_unit(&mut rng, self.n, self.p);
        let tol = config.gradient_tolerance;
        let mut out = Vec::with_capacity(3);
        out.extend(self.finalize(&self.newton(&start, config), kind, tol));
        if self.flow {
            for sign in [T::one(), -T::one()] {
                let v = self.flow_phase(start.clone(), sign, config);
                out.extend(self.finalize(&self.newton(&v, config), kind, tol));
            }
        }
        out
    }

    pub(crate) fn search(&self, config: &SolverConfig<T>, kind: PairKind) -> Result<EigenSet<T>> {
        let candidates: Vec<EigenPair<T>> = (0..config.restarts)
            .into_par_iter()
            .map(|r| self.run_restart(r, config, kind))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect();
        let accepted_candidates = candidates.len();
        let mut pairs = dedupe(candidates, config.dedupe_tolerance);

        let mut bound = isolated_point_bound(self.n, self.k).max(3 * self.n);
        if !self.p.is_euclidean() {
            bound = bound.saturating_mul(4);
        }
        if pairs.len() > bound {
            return Err(Error::Degenerate(format!(
                "{} distinct critical points exceed the {bound} an isolated critical set can have; \
                 the critical set is not discrete",
                pairs.len()
            )));
        }
        pairs.sort_by(|a, b| {
            b.value
                .partial_cmp(&a.value)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then_with(|| lex_cmp(&a.vector, &b.vector))
        });
        Ok(EigenSet { pairs, restarts: config.restarts, accepted_candidates })
    }

    /// Newton polish from an arbitrary start, for external seeding (grid searches).
    pub(crate) fn polish_from(&self, start: &[T], config: &SolverConfig<T>, kind: PairKind) -> Option<EigenPair<T>> {
        let v = unit_normalize(start, self.p).ok()?;
        self.finalize(&self.newton(&v, config), kind, config.gradient_tolerance)
    }
}

/// Newton polish of a symmetric Euclidean eigenpair from `start`; used by the
/// grid-seeded oracle search.
pub(crate) fn polish_symmetric<T: Scalar>(
    t: &DenseTensor<T>,
    start: &[T],
    config: &SolverConfig<T>,
) -> Result<Option<EigenPair<T>>> {
    let problem = EigenProblem::new(t, 0, NormParam::euclidean(), true)?;
    Ok(problem.polish_from(start, config, PairKind::Symmetric))
}
