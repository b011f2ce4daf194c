//! Dense tensors and their associated multilinear forms.
//!
//! Entries are stored row-major (last index fastest). All contractions reduce one
//! mode at a time from the highest index down, so the summation order, and hence
//! every rounding, is fixed by the shape alone.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Dimensions `(n_1, ..., n_k)` of an order-`k` tensor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shape(Vec<usize>);

impl Shape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Shape("a tensor needs at least one mode".into()));
        }
        if let Some(pos) = dims.iter().position(|&d| d == 0) {
            return Err(Error::Shape(format!("mode {pos} has dimension 0")));
        }
        Ok(Self(dims))
    }

    /// Order-`k` shape with every dimension equal to `n`.
    pub fn square(n: usize, k: usize) -> Result<Self> {
        Self::new(vec![n; k])
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    /// Number of entries, `prod n_i`.
    pub fn len(&self) -> usize {
        self.0.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_square(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    fn unravel(&self, mut flat: usize, idx: &mut [usize]) {
        for (slot, &d) in idx.iter_mut().zip(&self.0).rev() {
            *slot = flat % d;
            flat /= d;
        }
    }

    fn ravel(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.0).fold(0, |acc, (&i, &d)| acc * d + i)
    }
}

/// A real order-`k` tensor `[T_{i_1...i_k}]` with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor<T> {
    shape: Shape,
    entries: Vec<T>,
}

/// Result of a symmetry check on a square tensor.
#[derive(Debug, Clone)]
pub struct SymmetryCertificate<T> {
    /// Largest `|T[perm(idx)] - T[idx]|` over all indices and permutations.
    pub max_asymmetry: T,
    /// Largest `|T[idx]|`.
    pub max_entry: T,
}

impl<T: Scalar> SymmetryCertificate<T> {
    /// Relative tolerance used to accept floating-point input as symmetric.
    pub fn tolerance() -> T {
        T::lit(1e-10)
    }

    pub fn is_symmetric(&self) -> bool {
        self.max_asymmetry <= Self::tolerance() * self.max_entry
    }

    pub fn is_exactly_symmetric(&self) -> bool {
        self.max_asymmetry == T::zero()
    }
}

impl<T: Scalar> DenseTensor<T> {
    pub fn new(shape: Shape, entries: Vec<T>) -> Result<Self> {
        if entries.len() != shape.len() {
            return Err(Error::Shape(format!(
                "shape {:?} needs {} entries, got {}",
                shape.dims(),
                shape.len(),
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|x| !x.is_finite()) {
            return Err(Error::Argument(format!("entry {pos} is not finite")));
        }
        Ok(Self { shape, entries })
    }

    pub fn from_dims(dims: &[usize], entries: Vec<T>) -> Result<Self> {
        Self::new(Shape::new(dims.to_vec())?, entries)
    }

    pub fn zeros(shape: Shape) -> Self {
        let entries = vec![T::zero(); shape.len()];
        Self { shape, entries }
    }

    /// Builds a tensor entry by entry from its multi-index.
    pub fn from_fn(shape: Shape, mut f: impl FnMut(&[usize]) -> T) -> Result<Self> {
        let mut idx = vec![0; shape.order()];
        let entries = (0..shape.len())
            .map(|flat| {
                shape.unravel(flat, &mut idx);
                f(&idx)
            })
            .collect();
        Self::new(shape, entries)
    }

    /// Order-`k` tensor on `R^n` with `T[j,...,j] = diag[j]` and zeros elsewhere.
    pub fn diagonal(diag: &[T], k: usize) -> Result<Self> {
        let shape = Shape::square(diag.len(), k)?;
        Self::from_fn(shape, |idx| if idx.iter().all(|&i| i == idx[0]) { diag[idx[0]] } else { T::zero() })
    }

    /// An `m x n` matrix given by rows, viewed as an order-2 tensor.
    pub fn matrix(rows: &[&[T]]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        Self::from_dims(&[m, n], rows.iter().flat_map(|r| r.iter().copied()).collect())
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dims(&self) -> &[usize] {
        self.shape.dims()
    }

    pub fn order(&self) -> usize {
        self.shape.order()
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.shape.is_square()
    }

    pub fn get(&self, idx: &[usize]) -> T {
        self.entries[self.shape.ravel(idx)]
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> T {
        self.entries.iter().fold(T::zero(), |m, x| m.max(x.abs()))
    }

    /// `alpha * T`.
    pub fn scaled(&self, alpha: T) -> Self {
        Self { shape: self.shape.clone(), entries: self.entries.iter().map(|&x| alpha * x).collect() }
    }

    /// Entrywise conversion to another scalar type.
    pub fn cast<U: Scalar>(&self) -> DenseTensor<U> {
        DenseTensor { shape: self.shape.clone(), entries: self.entries.iter().map(|x| U::lit(x.as_f64())).collect() }
    }

    /// Reorders modes: mode `j` of the result is mode `perm[j]` of `self`.
    /// For a matrix, `permute_modes(&[1, 0])` is the transpose.
    pub fn permute_modes(&self, perm: &[usize]) -> Result<Self> {
        let k = self.order();
        let mut seen = vec![false; k];
        if perm.len() != k || perm.iter().any(|&p| p >= k || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Argument(format!("{perm:?} is not a permutation of 0..{k}")));
        }
        let dims: Vec<usize> = perm.iter().map(|&p| self.dims()[p]).collect();
        let mut src = vec![0; k];
        Self::from_fn(Shape::new(dims)?, |idx| {
            for (j, &p) in perm.iter().enumerate() {
                src[p] = idx[j];
            }
            self.get(&src)
        })
    }

    fn check_vectors(&self, vectors: &[&[T]]) -> Result<()> {
        if vectors.len() != self.order() {
            return Err(Error::Shape(format!(
                "order-{} tensor needs {} vectors, got {}",
                self.order(),
                self.order(),
                vectors.len()
            )));
        }
        for (i, (v, &n)) in vectors.iter().zip(self.dims()).enumerate() {
            if v.len() != n {
                return Err(Error::Shape(format!("vector {i} has length {}, mode {i} has dimension {n}", v.len())));
            }
        }
        Ok(())
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.order() {
            return Err(Error::Argument(format!(
                "mode {mode} out of range for an order-{} tensor (modes are 0-based)",
                self.order()
            )));
        }
        Ok(())
    }

    /// Contracts every mode not listed in `keep` against the matching vector.
    /// The result is row-major over the kept modes in ascending mode order.
    /// Vectors for kept modes are ignored.
    pub(crate) fn contract_except(&self, vectors: &[&[T]], keep: &[usize]) -> Vec<T> {
        let mut dims = self.dims().to_vec();
        let mut data = self.entries.clone();
        for m in (0..self.order()).rev() {
            if keep.contains(&m) {
                continue;
            }
            data = contract_mode(&data, &dims, m, vectors[m]);
            dims.remove(m);
        }
        data
    }

    /// The multilinear form `f_T(x_1, ..., x_k)`.
    pub fn evaluate(&self, vectors: &[&[T]]) -> Result<T> {
        self.check_vectors(vectors)?;
        Ok(self.contract_except(vectors, &[])[0])
    }

    /// `f_T` with `|T|` and `|x_i|` in place of `T` and `x_i`: a bound on the
    /// magnitude of every partial sum in [`evaluate`](Self::evaluate), used to
    /// scale roundoff tolerances.
    pub fn abs_evaluate(&self, vectors: &[&[T]]) -> Result<T> {
        self.check_vectors(vectors)?;
        let abs = Self { shape: self.shape.clone(), entries: self.entries.iter().map(|x| x.abs()).collect() };
        let absv: Vec<Vec<T>> = vectors.iter().map(|v| v.iter().map(|x| x.abs()).collect()).collect();
        let refs: Vec<&[T]> = absv.iter().map(Vec::as_slice).collect();
        Ok(abs.contract_except(&refs, &[])[0])
    }

    /// Gradient of `f_T` with respect to its `mode`-th argument (0-based), i.e. the
    /// contraction of `T` against every vector except `vectors[mode]`.
    pub fn mode_gradient(&self, vectors: &[&[T]], mode: usize) -> Result<Vec<T>> {
        self.check_mode(mode)?;
        self.check_vectors(vectors)?;
        Ok(self.contract_except(vectors, &[mode]))
    }

    /// The `n_a x n_b` block of second derivatives of `f_T` with respect to
    /// arguments `a` and `b` (`a != b`): `T` contracted in every other mode.
    pub fn mode_pair_block(&self, vectors: &[&[T]], a: usize, b: usize) -> Result<Matrix<T>> {
        self.check_mode(a)?;
        self.check_mode(b)?;
        if a == b {
            return Err(Error::Argument("mode pair block needs two distinct modes".into()));
        }
        self.check_vectors(vectors)?;
        let (lo, hi) = (a.min(b), a.max(b));
        let data = self.contract_except(vectors, &[lo, hi]);
        let block = Matrix::from_row_major(self.dims()[lo], self.dims()[hi], data);
        Ok(if a < b { block } else { block.transpose() })
    }

    /// Jacobian of `v -> mode_gradient(T, (v, ..., v), mode)`: the sum over all
    /// other slots `r` of the `(mode, r)` second-derivative blocks.
    pub fn mode_jacobian(&self, v: &[T], mode: usize) -> Result<Matrix<T>> {
        self.require_square("mode Jacobian")?;
        self.check_mode(mode)?;
        let n = self.dims()[0];
        let vectors = vec![v; self.order()];
        let mut jac = Matrix::zeros(n, n);
        for r in (0..self.order()).filter(|&r| r != mode) {
            jac.add_assign(&self.mode_pair_block(&vectors, mode, r)?);
        }
        Ok(jac)
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Shape(format!("{what} needs a square tensor, got {:?}", self.dims())));
        }
        Ok(())
    }

    /// `f_T(v, ..., v)`, the homogeneous polynomial of a square tensor.
    pub fn eval_diag(&self, v: &[T]) -> Result<T> {
        self.require_square("diagonal evaluation")?;
        self.evaluate(&vec![v; self.order()])
    }

    /// Gradient of the homogeneous polynomial `v -> f_T(v, ..., v)`.
    ///
    /// For a symmetric tensor every slot contributes the same contraction, so this
    /// is `k * mode_gradient(T, (v, ..., v), 0)`, and `v . sym_gradient(v) = k f_T(v)`.
    pub fn sym_gradient(&self, v: &[T]) -> Result<Vec<T>> {
        self.require_square("symmetric gradient")?;
        let k = T::from_usize_lossy(self.order());
        Ok(self.mode_gradient(&vec![v; self.order()], 0)?.into_iter().map(|g| k * g).collect())
    }

    /// Hessian of `v -> f_T(v, ..., v)` for a symmetric tensor: `k(k-1)` times the
    /// contraction of `T` against `v` in all modes but two. Zero for `k = 1`.
    pub fn sym_hessian(&self, v: &[T]) -> Result<Matrix<T>> {
        self.require_square("symmetric Hessian")?;
        let n = self.dims()[0];
        if v.len() != n {
            return Err(Error::Shape(format!("vector length {} != {n}", v.len())));
        }
        let k = self.order();
        if k < 2 {
            return Ok(Matrix::zeros(n, n));
        }
        let c = T::from_usize_lossy(k * (k - 1));
        let mut h = self.mode_pair_block(&vec![v; k], 0, 1)?;
        h.scale(c);
        // The two-mode contraction of a symmetric tensor is symmetric; mirror the
        // upper triangle so the result is exactly so.
        for a in 0..n {
            for b in 0..a {
                let x = h.get(b, a);
                h.set(a, b, x);
            }
        }
        Ok(h)
    }

    /// `|v . sym_gradient(v) - k f_T(v, ..., v)|`. Vanishes up to roundoff for
    /// symmetric tensors (Euler's identity for homogeneous functions).
    pub fn euler_residual(&self, v: &[T]) -> Result<T> {
        let g = self.sym_gradient(v)?;
        let vg = crate::linalg::dot(v, &g);
        let kf = T::from_usize_lossy(self.order()) * self.eval_diag(v)?;
        Ok((vg - kf).abs())
    }

    /// Canonical flat index of each entry's permutation orbit (flat index of the
    /// sorted multi-index).
    fn orbit_keys(&self) -> Vec<usize> {
        let mut idx = vec![0; self.order()];
        (0..self.entries.len())
            .map(|flat| {
                self.shape.unravel(flat, &mut idx);
                idx.sort_unstable();
                self.shape.ravel(&idx)
            })
            .collect()
    }

    pub fn symmetry(&self) -> Result<SymmetryCertificate<T>> {
        self.require_square("symmetry check")?;
        let keys = self.orbit_keys();
        let mut lo = vec![T::infinity(); self.entries.len()];
        let mut hi = vec![T::neg_infinity(); self.entries.len()];
        for (&key, &x) in keys.iter().zip(&self.entries) {
            lo[key] = lo[key].min(x);
            hi[key] = hi[key].max(x);
        }
        let max_asymmetry = keys.iter().map(|&key| hi[key] - lo[key]).fold(T::zero(), T::max);
        Ok(SymmetryCertificate { max_asymmetry, max_entry: self.max_abs() })
    }

    /// True when the tensor is square and symmetric within the relative tolerance
    /// of [`SymmetryCertificate::tolerance`].
    pub fn is_symmetric(&self) -> bool {
        self.symmetry().is_ok_and(|c| c.is_symmetric())
    }
}

/// Contracts mode `m` of a row-major array with dimensions `dims` against `vec`.
fn contract_mode<T: Scalar>(data: &[T], dims: &[usize], m: usize, vec: &[T]) -> Vec<T> {
    let pre: usize = dims[..m].iter().product();
    let n = dims[m];
    let post: usize = dims[m + 1..].iter().product();
    let mut out = vec![T::zero(); pre * post];
    for a in 0..pre {
        let row = &mut out[a * post..(a + 1) * post];
        for (b, &w) in vec.iter().enumerate() {
            let src = &data[(a * n + b) * post..(a * n + b + 1) * post];
            for (o, &x) in row.iter_mut().zip(src) {
                *o = *o + x * w;
            }
        }
    }
    out
}

/// Averages a square tensor over all permutations of its indices.
///
/// Orbits whose entries are already equal are copied unchanged, so symmetric input
/// comes back bit-identical and the map is exactly idempotent.
pub fn symmetrize<T: Scalar>(t: &DenseTensor<T>) -> Result<DenseTensor<T>> {
    t.require_square("symmetrize")?;
    let keys = t.orbit_keys();
    let len = t.entries.len();
    let mut sum = vec![T::zero(); len];
    let mut count = vec![0usize; len];
    let mut uniform = vec![true; len];
    for (&key, &x) in keys.iter().zip(&t.entries) {
        if count[key] > 0 && t.entries[key] != x {
            uniform[key] = false;
        }
        sum[key] = sum[key] + x;
        count[key] += 1;
    }
    let entries = keys
        .iter()
        .map(|&key| if uniform[key] { t.entries[key] } else { sum[key] / T::from_usize_lossy(count[key]) })
        .collect();
    DenseTensor::new(t.shape.clone(), entries)
}

/// Random tensor with i.i.d. standard normal entries.
///
/// The stream is ChaCha8 seeded with `seed` via `SeedableRng::seed_from_u64`,
/// sampled with `rand_distr::StandardNormal` in `f64` and then converted; entries
/// are drawn in row-major order. With `symmetric` the draw is passed through
/// [`symmetrize`].
pub fn random_tensor<T: Scalar>(shape: &Shape, seed: u64, symmetric: bool) -> Result<DenseTensor<T>> {
    if symmetric && !shape.is_square() {
        return Err(Error::Argument(format!("a symmetric tensor needs a square shape, got {:?}", shape.dims())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = (0..shape.len()).map(|_| T::lit(StandardNormal.sample(&mut rng))).collect();
    let t = DenseTensor::new(shape.clone(), entries)?;
    if symmetric {
        symmetrize(&t)
    } else {
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t2(rows: &[&[f64]]) -> DenseTensor<f64> {
        DenseTensor::matrix(rows).unwrap()
    }

    fn cubic() -> DenseTensor<f64> {
        DenseTensor::diagonal(&[1.0, 1.0], 3).unwrap()
    }

    #[test]
    fn shape_validation() {
        assert!(Shape::new(vec![]).is_err());
        assert!(Shape::new(vec![2, 0]).is_err());
        assert!(Shape::new(vec![3, 3, 3]).unwrap().is_square());
        assert!(!Shape::new(vec![2, 3]).unwrap().is_square());
        assert!(DenseTensor::from_dims(&[2, 2], vec![1.0; 3]).is_err());
        assert!(DenseTensor::from_dims(&[2], vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let id = t2(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert_eq!(id.evaluate(&[&[1.0, 0.0], &[1.0, 0.0]]).unwrap(), 1.0);

        let ones = DenseTensor::from_dims(&[2, 2, 2], vec![1.0; 8]).unwrap();
        let x = [1.0, 1.0];
        assert_eq!(ones.evaluate(&[&x, &x, &x]).unwrap(), 8.0);

        let (a, b) = (0.7, -1.3);
        let v = [a, b];
        let got = cubic().evaluate(&[&v, &v, &v]).unwrap();
        assert!((got - (a * a * a + b * b * b)).abs() < 1e-15);
    }

    #[test]
    fn evaluate_rejects_mismatched_vectors() {
        let id = t2(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert!(matches!(id.evaluate(&[&[1.0, 0.0, 0.0], &[1.0, 0.0]]), Err(Error::Shape(_))));
        assert!(matches!(id.evaluate(&[&[1.0, 0.0]]), Err(Error::Shape(_))));
        assert!(matches!(id.mode_gradient(&[&[1.0, 0.0], &[1.0, 0.0]], 2), Err(Error::Argument(_))));
    }

    #[test]
    fn mode_gradient_examples() {
        let a = t2(&[&[1.0, 2.0], &[3.0, 4.0]]);
        // Frozen from central differences of evaluate (exact for a linear function).
        let g = a.mode_gradient(&[&[0.3, -0.2], &[1.0, 0.0]], 0).unwrap();
        assert_eq!(g, vec![1.0, 3.0]);

        let zero = DenseTensor::<f64>::zeros(Shape::new(vec![2, 3, 2]).unwrap());
        let g = zero.mode_gradient(&[&[1.0, 2.0], &[1.0, 2.0, 3.0], &[4.0, 5.0]], 1).unwrap();
        assert_eq!(g, vec![0.0; 3]);
    }

    #[test]
    fn order_one_tensor_is_linear() {
        let t = DenseTensor::from_dims(&[3], vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(t.evaluate(&[&[1.0, 1.0, 1.0]]).unwrap(), 6.0);
        assert_eq!(t.mode_gradient(&[&[5.0, 5.0, 5.0]], 0).unwrap(), vec![1.0, 2.0, 3.0]);
        let h = t.sym_hessian(&[1.0, 0.0, 0.0]).unwrap();
        assert!(h.data().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn sym_gradient_examples() {
        let d = t2(&[&[1.0, 0.0], &[0.0, 2.0]]);
        // Av = (1, 0); the gradient of v^T A v is 2Av.
        assert_eq!(d.mode_gradient(&[&[1.0, 0.0], &[1.0, 0.0]], 0).unwrap(), vec![1.0, 0.0]);
        assert_eq!(d.sym_gradient(&[1.0, 0.0]).unwrap(), vec![2.0, 0.0]);

        let (a, b) = (0.4, -0.9);
        let v = [a, b];
        assert_eq!(cubic().mode_gradient(&[&v, &v, &v], 0).unwrap(), vec![a * a, b * b]);
        let g = cubic().sym_gradient(&v).unwrap();
        assert!((g[0] - 3.0 * a * a).abs() < 1e-15 && (g[1] - 3.0 * b * b).abs() < 1e-15);

        let rect = DenseTensor::from_dims(&[2, 3], vec![0.0; 6]).unwrap();
        assert!(matches!(rect.sym_gradient(&[1.0, 0.0]), Err(Error::Shape(_))));
    }

    #[test]
    fn sym_hessian_examples() {
        let a = t2(&[&[1.0, -0.5], &[-0.5, 3.0]]);
        let h = a.sym_hessian(&[0.3, 0.8]).unwrap();
        assert_eq!(h.data(), &[2.0, -1.0, -1.0, 6.0]);

        let h = cubic().sym_hessian(&[1.0, 0.0]).unwrap();
        assert_eq!(h.data(), &[6.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn euler_residual_quadratic_and_cubic() {
        let d = t2(&[&[1.0, 0.0], &[0.0, 2.0]]);
        assert!(d.euler_residual(&[3.0, 4.0]).unwrap() < 1e-12);
        assert!(cubic().euler_residual(&[0.3, -1.7]).unwrap() < 1e-12);
    }

    #[test]
    fn symmetrize_examples() {
        let n = t2(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let s = symmetrize(&n).unwrap();
        assert_eq!(s.entries(), &[0.0, 0.5, 0.5, 0.0]);
        assert!(s.symmetry().unwrap().is_exactly_symmetric());

        let sym = t2(&[&[1.0, 0.1], &[0.1, 2.0]]);
        assert_eq!(symmetrize(&sym).unwrap(), sym);

        assert!(symmetrize(&DenseTensor::from_dims(&[2, 3], vec![0.0; 6]).unwrap()).is_err());
    }

    #[test]
    fn symmetry_certificate_sees_all_permutations() {
        // T[0,1,2] differs from T[2,1,0] but only through a non-adjacent swap chain.
        let mut e = vec![0.0; 27];
        e[5] = 1.0; // (0,1,2)
        let t = DenseTensor::from_dims(&[3, 3, 3], e).unwrap();
        assert_eq!(t.symmetry().unwrap().max_asymmetry, 1.0);
        assert!(!t.is_symmetric());
    }

    #[test]
    fn random_tensor_contract() {
        let shape = Shape::new(vec![3, 3, 3]).unwrap();
        let a: DenseTensor<f64> = random_tensor(&shape, 11, false).unwrap();
        let b: DenseTensor<f64> = random_tensor(&shape, 11, false).unwrap();
        let c: DenseTensor<f64> = random_tensor(&shape, 12, false).unwrap();
        assert_eq!(a.entries(), b.entries());
        assert_ne!(a.entries(), c.entries());
        let s: DenseTensor<f64> = random_tensor(&shape, 11, true).unwrap();
        assert!(s.symmetry().unwrap().max_asymmetry <= 1e-15);
        let rect = Shape::new(vec![2, 3]).unwrap();
        assert!(matches!(random_tensor::<f64>(&rect, 0, true), Err(Error::Argument(_))));
    }

    #[test]
    fn permute_modes_transposes() {
        let a = t2(&[&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]]);
        let at = a.permute_modes(&[1, 0]).unwrap();
        assert_eq!(at.dims(), &[3, 2]);
        assert_eq!(at.entries(), &[1.0, 4.0, 2.0, 5.0, 3.0, 6.0]);
        assert!(a.permute_modes(&[0, 0]).is_err());
    }

    #[test]
    fn works_in_single_precision() {
        let t = DenseTensor::<f32>::diagonal(&[1.0, 1.0], 3).unwrap();
        let v = [0.5f32, 0.25];
        assert!((t.eval_diag(&v).unwrap() - (0.125 + 0.015625)).abs() < 1e-7);
    }
}
