use rayon::prelude::*;

use super::{dedupe, lex_cmp, random_unit, restart_rng, SingularSet, SingularTuple, SolverConfig};
use crate::error::{Error, Result};
use crate::linalg::{dot, norm2, solve, Matrix};
use crate::norms::{phi, unit_normalize, NormParam};
use crate::scalar::Scalar;
use crate::tensor::DenseTensor;

/// Per-mode stationarity defects `|grad_i f_T(v) - sigma phi_{p-1}(v_i)|_2`.
pub fn singular_residuals<T: Scalar>(
    t: &DenseTensor<T>,
    vectors: &[Vec<T>],
    sigma: T,
    p: NormParam<T>,
) -> Result<Vec<T>> {
    let refs: Vec<&[T]> = vectors.iter().map(Vec::as_slice).collect();
    (0..t.order())
        .map(|i| {
            let g = t.mode_gradient(&refs, i)?;
            let nv = phi(&vectors[i], p.p() - T::one());
            Ok(norm2(&g.iter().zip(&nv).map(|(&a, &b)| a - sigma * b).collect::<Vec<_>>()))
        })
        .collect()
}

/// Singular tuples: critical points of `f_T` on the product of unit `p`-spheres,
/// `grad_i f_T(v_1, ..., v_k) = sigma grad |v_i|_p` with `|v_i|_p = 1` for every mode.
///
/// Each restart runs an alternating update (every `v_i` moved to the maximizer of
/// the linear function `grad_i f_T` on its sphere) followed by Newton, plus a
/// Newton run straight from the random start, which also reaches saddle tuples.
/// Tuples with `sigma < 0` are mapped to `sigma > 0` by negating `v_1`.
pub fn singular_tuples<T: Scalar>(t: &DenseTensor<T>, config: &SolverConfig<T>) -> Result<SingularSet<T>> {
    config.validate()?;
    if t.order() < 2 {
        return Err(Error::Argument("singular tuples need a tensor of order at least 2".into()));
    }
    let problem = SingularProblem { t, p: config.p, dims: t.dims().to_vec() };
    let candidates: Vec<SingularTuple<T>> = (0..config.restarts)
        .into_par_iter()
        .map(|r| problem.run_restart(r, config))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let accepted_candidates = candidates.len();
    let mut tuples = dedupe(candidates, config.dedupe_tolerance);
    tuples.sort_by(|a, b| {
        b.sigma
            .partial_cmp(&a.sigma)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| lex_cmp(&a.vectors.concat(), &b.vectors.concat()))
    });
    Ok(SingularSet { tuples, restarts: config.restarts, accepted_candidates })
}

struct SingularProblem<'a, T> {
    t: &'a DenseTensor<T>,
    p: NormParam<T>,
    dims: Vec<usize>,
}

impl<T: Scalar> SingularProblem<'_, T> {
    fn k(&self) -> usize {
        self.dims.len()
    }

    fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.k() + 1);
        off.push(0);
        for &d in &self.dims {
            off.push(off.last().unwrap() + d);
        }
        off
    }

    fn split<'z>(&self, z: &'z [T]) -> Vec<&'z [T]> {
        let off = self.offsets();
        (0..self.k()).map(|i| &z[off[i]..off[i + 1]]).collect()
    }

    fn grads(&self, vs: &[&[T]]) -> Vec<Vec<T>> {
        (0..self.k()).map(|i| self.t.contract_except(vs, &[i])).collect()
    }

    fn value(&self, vs: &[&[T]]) -> T {
        self.t.contract_except(vs, &[])[0]
    }

    fn normal(&self, v: &[T]) -> Vec<T> {
        phi(v, self.p.p() - T::one())
    }

    /// Unknowns: concatenated vectors, then one multiplier per mode.
    fn system(&self, z: &[T]) -> Vec<T> {
        let total = self.offsets()[self.k()];
        let vs = self.split(&z[..total]);
        let sig = &z[total..];
        let p = self.p.p();
        let mut f = Vec::with_capacity(z.len());
        for (i, g) in self.grads(&vs).into_iter().enumerate() {
            let nv = self.normal(vs[i]);
            f.extend(g.iter().zip(&nv).map(|(&a, &b)| a - sig[i] * b));
        }
        for v in &vs {
            let sum: T = v.iter().map(|x| x.abs().powf(p)).sum();
            f.push((T::one() - sum) / p);
        }
        f
    }

    fn jacobian(&self, z: &[T]) -> Option<Matrix<T>> {
        let off = self.offsets();
        let total = off[self.k()];
        let vs = self.split(&z[..total]);
        let sig = &z[total..];
        let size = total + self.k();
        let q = self.p.p() - T::one();
        let floor = T::lit(1e-12);
        let mut jac = Matrix::zeros(size, size);
        for i in 0..self.k() {
            for j in (0..self.k()).filter(|&j| j != i) {
                let block = self.t.mode_pair_block(&vs, i, j).ok()?;
                for r in 0..self.dims[i] {
                    for c in 0..self.dims[j] {
                        jac.set(off[i] + r, off[j] + c, block.get(r, c));
                    }
                }
            }
            let nv = self.normal(vs[i]);
            for r in 0..self.dims[i] {
                let x = vs[i][r];
                let dphi = if q == T::one() { T::one() } else { q * x.abs().max(floor).powf(q - T::one()) };
                jac.set(off[i] + r, off[i] + r, -sig[i] * dphi);
                jac.set(off[i] + r, total + i, -nv[r]);
                jac.set(total + i, off[i] + r, -nv[r]);
            }
        }
        Some(jac)
    }

    fn newton(&self, vs0: &[Vec<T>], config: &SolverConfig<T>) -> Vec<Vec<T>> {
        let mut z: Vec<T> = vs0.concat();
        let refs: Vec<&[T]> = vs0.iter().map(Vec::as_slice).collect();
        let f0 = self.value(&refs);
        z.extend(std::iter::repeat_n(f0, self.k()));
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
            let mut step = T::one();
            let mut improved = false;
            while step >= T::lit(1.0 / 1024.0) {
                let trial: Vec<T> = z.iter().zip(&delta).map(|(&a, &d)| a + step * d).collect();
                let ft = self.system(&trial);
                let nt = norm2(&ft);
                if nt.is_finite() && nt < (T::one() - T::lit(1e-4) * step) * fnorm {
                    z = trial;
                    fz = ft;
                    fnorm = nt;
                    improved = true;
                    break;
                }
                step = step * T::lit(0.5);
            }
            if !improved {
                break;
            }
        }
        let total = self.offsets()[self.k()];
        self.split(&z[..total]).into_iter().map(<[T]>::to_vec).collect()
    }

    /// Alternating maximization: `v_i <- argmax_{|u|_p = 1} <grad_i f, u>`,
    /// i.e. `phi_{1/(p-1)}(grad_i f)` normalized.
    fn alternating(&self, mut vs: Vec<Vec<T>>, config: &SolverConfig<T>) -> Vec<Vec<T>> {
        let inv = (self.p.p() - T::one()).recip();
        let tol = config.step.switch_tolerance;
        for _ in 0..config.max_iterations {
            for i in 0..self.k() {
                let refs: Vec<&[T]> = vs.iter().map(Vec::as_slice).collect();
                let g = self.t.contract_except(&refs, &[i]);
                match unit_normalize(&phi(&g, inv), self.p) {
                    Ok(u) => vs[i] = u,
                    Err(_) => return vs,
                }
            }
            let refs: Vec<&[T]> = vs.iter().map(Vec::as_slice).collect();
            let sigma = self.value(&refs);
            let worst = self
                .grads(&refs)
                .iter()
                .zip(&vs)
                .map(|(g, v)| {
                    let nv = self.normal(v);
                    norm2(&g.iter().zip(&nv).map(|(&a, &b)| a - sigma * b).collect::<Vec<_>>())
                })
                .fold(T::zero(), T::max);
            if worst <= tol * (T::one() + sigma.abs()) {
                break;
            }
        }
        vs
    }

    fn finalize(&self, vs: Vec<Vec<T>>, config: &SolverConfig<T>) -> Option<SingularTuple<T>> {
        let mut vectors = Vec::with_capacity(vs.len());
        for v in vs {
            if v.iter().any(|x| !x.is_finite()) {
                return None;
            }
            vectors.push(unit_normalize(&v, self.p).ok()?);
        }
        let refs: Vec<&[T]> = vectors.iter().map(Vec::as_slice).collect();
        let raw_sigma = self.value(&refs);
        let grads = self.grads(&refs);
        let mut multipliers: Vec<T> =
            grads.iter().zip(&vectors).map(|(g, v)| dot(v, g) / dot(v, &self.normal(v))).collect();
        let mode_residuals = singular_residuals(self.t, &vectors, raw_sigma, self.p).ok()?;
        let residual = mode_residuals.iter().copied().fold(T::zero(), T::max);
        if !(residual <= config.gradient_tolerance) {
            return None;
        }
        let mut sigma = raw_sigma;
        if raw_sigma < T::zero() {
            vectors[0].iter_mut().for_each(|x| *x = -*x);
            sigma = -raw_sigma;
            multipliers.iter_mut().for_each(|m| *m = -*m);
        }
        let degenerate = sigma.abs() <= T::lit(1e-8) * self.t.max_abs();
        Some(SingularTuple { vectors, sigma, raw_sigma, multipliers, mode_residuals, residual, degenerate })
    }

    fn run_restart(&self, restart: usize, config: &SolverConfig<T>) -> Vec<SingularTuple<T>> {
        let mut rng = restart_rng(config.seed, restart);
        let start: Vec<Vec<T>> = self.dims.iter().map(|&n| random_unit(&mut rng, n, self.p)).collect();
        let mut out = Vec::with_capacity(2);
        out.extend(self.finalize(self.newton(&start, config), config));
        let ascended = self.alternating(start, config);
        out.extend(self.finalize(self.newton(&ascended, config), config));
        out
    }
}
