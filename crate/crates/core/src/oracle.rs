//! Independent ground truth for the solvers (double precision only).
//!
//! * [`jacobi_eigen`] and [`svd_small`]: classical matrix eigen/singular
//!   decompositions, the reference for order-2 tensors.
//! * [`circle_critical_points`]: every critical point of `f_T` on the unit circle,
//!   found by bracketing sign changes of the angular derivative on a fine grid and
//!   bisecting. This is the only complete enumeration available; it certifies the
//!   multi-start solver on `R^2`.
//! * [`sphere_grid_search`]: Newton polish seeded from a spherical Fibonacci grid
//!   on `S^2`, a high-recall but uncertified cross-check.
//!
//! Only `evaluate` and `sym_gradient` are shared with the solver code path.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::morse::{euler_parity_check, IndexHistogram};
use crate::solver::{classify_index, dedupe, SolverConfig};
use crate::tensor::DenseTensor;

/// Symmetric eigendecomposition: eigenvalues ascending, eigenvectors as the
/// matching columns of an orthogonal matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix<f64>,
}

impl SymmetricEigen {
    pub fn vector(&self, j: usize) -> Vec<f64> {
        (0..self.vectors.rows()).map(|r| self.vectors.get(r, j)).collect()
    }
}

/// Cyclic Jacobi rotations until the off-diagonal Frobenius mass is at most
/// `1e-14 * |A|_F`.
pub fn jacobi_eigen(a: &Matrix<f64>) -> Result<SymmetricEigen> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::Shape(format!("matrix is {}x{}, not square", n, a.cols())));
    }
    if n > 32 {
        return Err(Error::Argument(format!("Jacobi oracle is limited to n <= 32, got {n}")));
    }
    let scale = a.frobenius();
    for r in 0..n {
        for c in 0..r {
            if (a.get(r, c) - a.get(c, r)).abs() > 1e-12 * scale {
                return Err(Error::Argument("Jacobi oracle needs a symmetric matrix".into()));
            }
        }
    }
    let mut m = a.clone();
    let mut v = Matrix::identity(n);
    let off = |m: &Matrix<f64>| {
        let mut s = 0.0;
        for r in 0..n {
            for c in 0..n {
                if r != c {
                    s += m.get(r, c) * m.get(r, c);
                }
            }
        }
        s.sqrt()
    };
    for _sweep in 0..100 {
        if off(&m) <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (m.get(q, q) - m.get(p, p)) / (2.0 * apq);
                let t = if theta == 0.0 { 1.0 } else { theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt()) };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (kp, kq) = (m.get(k, p), m.get(k, q));
                    m.set(k, p, c * kp - s * kq);
                    m.set(k, q, s * kp + c * kq);
                }
                for k in 0..n {
                    let (pk, qk) = (m.get(p, k), m.get(q, k));
                    m.set(p, k, c * pk - s * qk);
                    m.set(q, k, s * pk + c * qk);
                }
                m.set(p, q, 0.0);
                m.set(q, p, 0.0);
                for k in 0..n {
                    let (kp, kq) = (v.get(k, p), v.get(k, q));
                    v.set(k, p, c * kp - s * kq);
                    v.set(k, q, s * kp + c * kq);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m.get(i, i).partial_cmp(&m.get(j, j)).unwrap());
    let values = order.iter().map(|&i| m.get(i, i)).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, new, v.get(r, old));
        }
    }
    Ok(SymmetricEigen { values, vectors })
}

/// Singular value decomposition of a small matrix.
#[derive(Debug, Clone)]
pub struct SmallSvd {
    /// Descending, one per column of `A`.
    pub sigma: Vec<f64>,
    /// Unit right singular vectors.
    pub right: Vec<Vec<f64>>,
    /// Unit left singular vectors, present where `sigma > 1e-12 * |A|_F`.
    pub left: Vec<Option<Vec<f64>>>,
}

/// SVD via [`jacobi_eigen`] of `A^T A`, with `u_j = A v_j / sigma_j`.
pub fn svd_small(a: &Matrix<f64>) -> Result<SmallSvd> {
    if a.rows() > 32 || a.cols() > 32 {
        return Err(Error::Argument("SVD oracle is limited to 32x32".into()));
    }
    let ata = a.transpose().matmul(a);
    // Mirror to remove rounding asymmetry of the product.
    let n = ata.cols();
    let mut sym = ata.clone();
    for r in 0..n {
        for c in 0..r {
            let x = 0.5 * (ata.get(r, c) + ata.get(c, r));
            sym.set(r, c, x);
            sym.set(c, r, x);
        }
    }
    let eig = jacobi_eigen(&sym)?;
    let scale = a.frobenius();
    let mut sigma = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    let mut left = Vec::with_capacity(n);
    for j in (0..n).rev() {
        let s = eig.values[j].max(0.0).sqrt();
        let v = eig.vector(j);
        let u = if s > 1e-12 * scale { Some(a.mul_vec(&v).into_iter().map(|x| x / s).collect()) } else { None };
        sigma.push(s);
        right.push(v);
        left.push(u);
    }
    Ok(SmallSvd { sigma, right, left })
}

/// One critical point of `f_T` on a sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPoint {
    pub vector: Vec<f64>,
    pub value: f64,
    pub index: usize,
}

#[derive(Debug, Clone)]
pub struct CriticalSet {
    pub points: Vec<CriticalPoint>,
    /// Only the circle oracle produces complete sets.
    pub complete: bool,
    /// Grid spacing (radians) of the final search.
    pub resolution: f64,
}

impl CriticalSet {
    pub fn histogram(&self, n: usize) -> Result<IndexHistogram> {
        let mut h = IndexHistogram::new(n)?;
        for p in &self.points {
            h.add(p.index)?;
        }
        Ok(h)
    }
}

fn require_symmetric(t: &DenseTensor<f64>, n: usize) -> Result<()> {
    if !t.is_square() || t.dims()[0] != n || t.order() < 2 {
        return Err(Error::Shape(format!(
            "expected a symmetric tensor of order >= 2 on R^{n}, got shape {:?}",
            t.dims()
        )));
    }
    let cert = t.symmetry()?;
    if !cert.is_symmetric() {
        return Err(Error::NotSymmetric { max_asymmetry: cert.max_asymmetry });
    }
    Ok(())
}

const MAX_CIRCLE_GRID: usize = 1 << 20;

/// All critical points of `g(theta) = f_T(cos theta, sin theta)` on the unit circle.
///
/// The angular derivative `g'(theta) = sym_gradient(v) . (-sin theta, cos theta)` is
/// sampled on `max(4096, ceil(2 pi / resolution))` points; sign changes are bisected
/// until `|g'| <= 1e-13`, and the index comes from the sign of `g''` (central
/// differences with step `1e-5`). A set with nonzero alternating index sum means roots
/// were missed, and the grid is doubled (up to `2^20` points).
pub fn circle_critical_points(t: &DenseTensor<f64>, resolution: f64) -> Result<CriticalSet> {
    require_symmetric(t, 2)?;
    if !(resolution > 0.0) {
        return Err(Error::Argument("resolution must be positive".into()));
    }
    let g = |theta: f64| t.eval_diag(&[theta.cos(), theta.sin()]).expect("shape checked");
    let dg = |theta: f64| {
        let (s, c) = theta.sin_cos();
        let grad = t.sym_gradient(&[c, s]).expect("shape checked");
        -s * grad[0] + c * grad[1]
    };

    let mut size = ((2.0 * PI / resolution).ceil() as usize).max(4096);
    loop {
        let step = 2.0 * PI / size as f64;
        let thetas: Vec<f64> = (0..size).map(|j| j as f64 * step).collect();
        let derivs: Vec<f64> = thetas.iter().map(|&th| dg(th)).collect();
        let gmax = thetas.iter().map(|&th| g(th).abs()).fold(0.0, f64::max);
        let dmax = derivs.iter().map(|d| d.abs()).fold(0.0, f64::max);
        if dmax <= 1e-10 * (1.0 + gmax) {
            return Err(Error::Degenerate("f_T is constant on the circle; every point is critical".into()));
        }

        let mut roots = Vec::new();
        for j in 0..size {
            let (a, b) = (derivs[j], derivs[(j + 1) % size]);
            if a == 0.0 {
                roots.push(thetas[j]);
            } else if a * b < 0.0 {
                roots.push(bisect(&dg, thetas[j], thetas[j] + step, a));
            }
        }

        let h = 1e-5;
        let curvature_floor = 1e-4 * gmax.max(f64::MIN_POSITIVE);
        let mut points = Vec::with_capacity(roots.len());
        for theta in roots {
            let value = g(theta);
            let second = (g(theta + h) - 2.0 * value + g(theta - h)) / (h * h);
            if second.abs() <= curvature_floor {
                return Err(Error::Degenerate(format!(
                    "critical point at theta = {theta} has vanishing second derivative"
                )));
            }
            points.push(CriticalPoint {
                vector: vec![theta.cos(), theta.sin()],
                value,
                index: if second > 0.0 { 0 } else { 1 },
            });
        }
        let set = CriticalSet { points, complete: true, resolution: step };
        if euler_parity_check(&set.histogram(2)?).0 {
            return Ok(set);
        }
        if size >= MAX_CIRCLE_GRID {
            return Err(Error::Degenerate(
                "critical points on the circle fail the parity check at maximum grid refinement".into(),
            ));
        }
        size *= 2;
    }
}

fn bisect(dg: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, dlo: f64) -> f64 {
    let lo_sign = dlo.signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let d = dg(mid);
        if d.abs() <= 1e-13 || mid <= lo || mid >= hi {
            return mid;
        }
        if d.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Points of a spherical Fibonacci grid on `S^2`.
pub fn fibonacci_sphere(count: usize) -> Vec<[f64; 3]> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let z = 1.0 - (2 * i + 1) as f64 / count as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = i as f64 * golden;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

/// Critical points of `f_T` on `S^2` found by Newton polish from every node of a
/// Fibonacci grid with at least `ceil(4 pi / resolution^2)` points. Recall is
/// heuristic, so the set is never marked complete.
pub fn sphere_grid_search(t: &DenseTensor<f64>, resolution: f64) -> Result<CriticalSet> {
    require_symmetric(t, 3)?;
    if !(resolution > 0.0) {
        return Err(Error::Argument("resolution must be positive".into()));
    }
    if t.max_abs() == 0.0 {
        return Err(Error::Degenerate("zero tensor: every point is critical".into()));
    }
    let count = (4.0 * PI / (resolution * resolution)).ceil() as usize;
    let config = SolverConfig::<f64>::default();
    let mut candidates = Vec::new();
    for seed in fibonacci_sphere(count) {
        if let Some(pair) = crate::solver::eigen_polish(t, &seed, &config)? {
            candidates.push(pair);
        }
    }
    let pairs = dedupe(candidates, config.dedupe_tolerance);
    let mut points = Vec::with_capacity(pairs.len());
    let mut degenerate = 0;
    for pair in pairs {
        let class = classify_index(t, &pair.vector, pair.value)?;
        if !class.nondegenerate {
            degenerate += 1;
        }
        points.push(CriticalPoint { vector: pair.vector, value: pair.value, index: class.index });
    }
    if 2 * degenerate > points.len() {
        return Err(Error::Degenerate(format!(
            "{degenerate} of {} grid-seeded critical points are degenerate",
            points.len()
        )));
    }
    points.sort_by(|a, b| b.value.partial_cmp(&a.value).unwrap());
    Ok(CriticalSet { points, complete: false, resolution })
}
