//! Small dense linear algebra used by the solvers.

use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> T {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: T) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn scale(&mut self, alpha: T) {
        self.data.iter_mut().for_each(|x| *x = *x * alpha);
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = *a + b;
        }
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        (0..self.rows).map(|r| dot(self.row(r), x)).collect()
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(r, j);
                for c in 0..other.cols {
                    let x = out.get(r, c) + a * other.get(j, c);
                    out.set(r, c, x);
                }
            }
        }
        out
    }

    pub fn frobenius(&self) -> T {
        norm2(&self.data)
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.as_f64()).collect() }
    }
}

#[inline]
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

#[inline]
pub fn norm2<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

pub fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

pub fn distance<T: Scalar>(a: &[T], b: &[T]) -> T {
    norm2(&sub(a, b))
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
/// Returns `None` when a pivot vanishes.
pub fn solve<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    let n = a.rows;
    assert_eq!(a.cols, n);
    assert_eq!(b.len(), n);
    let mut m = a.data.clone();
    let mut x = b.to_vec();
    let scale = a.data.iter().fold(T::zero(), |s, v| s.max(v.abs()));
    if scale == T::zero() {
        return None;
    }
    let tiny = scale * T::epsilon() * T::from_usize_lossy(n);
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[i * n + col].abs().partial_cmp(&m[j * n + col].abs()).unwrap()).unwrap();
        if m[pivot * n + col].abs() <= tiny {
            return None;
        }
        if pivot != col {
            for c in 0..n {
                m.swap(pivot * n + c, col * n + c);
            }
            x.swap(pivot, col);
        }
        let p = m[col * n + col];
        for r in col + 1..n {
            let factor = m[r * n + col] / p;
            if factor == T::zero() {
                continue;
            }
            for c in col..n {
                m[r * n + c] = m[r * n + c] - factor * m[col * n + c];
            }
            x[r] = x[r] - factor * x[col];
        }
    }
    for r in (0..n).rev() {
        let s = (r + 1..n).fold(x[r], |s, c| s - m[r * n + c] * x[c]);
        x[r] = s / m[r * n + r];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Orthonormal basis of the complement of the unit vector `v`, as the columns
/// of an `n x (n-1)` matrix (the last `n-1` columns of the Householder
/// reflection sending `e_1` to `v`).
pub fn tangent_basis<T: Scalar>(v: &[T]) -> Matrix<T> {
    let n = v.len();
    // Reflect along u = v - s e_1 with s chosen against cancellation; the reflection
    // maps e_1 to +-v and its remaining columns span v-perp.
    let s = if v[0] >= T::zero() { -T::one() } else { T::one() };
    let mut u = v.to_vec();
    u[0] = u[0] - s;
    let uu = dot(&u, &u);
    let mut basis = Matrix::zeros(n, n.saturating_sub(1));
    for c in 1..n {
        for r in 0..n {
            let id = if r == c { T::one() } else { T::zero() };
            let h = if uu > T::zero() { id - T::lit(2.0) * u[r] * u[c] / uu } else { id };
            basis.set(r, c - 1, h);
        }
    }
    basis
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn symmetric_eigenvalues<T: Scalar>(m: &Matrix<T>) -> Vec<f64> {
    let n = m.rows;
    if n == 0 {
        return Vec::new();
    }
    let mf = m.to_f64();
    let na = nalgebra::DMatrix::from_row_slice(n, n, mf.data());
    let mut ev: Vec<f64> = na.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}
