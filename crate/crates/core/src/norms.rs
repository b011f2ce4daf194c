//! `L^p` norms, the signed power map and the gradient of the `p`-norm.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Norm exponent `p` with `1 < p < inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormParam<T>(T);

impl<T: Scalar> NormParam<T> {
    pub fn new(p: T) -> Result<Self> {
        if !(p.is_finite() && p > T::one()) {
            return Err(Error::Argument(format!("norm exponent must satisfy 1 < p < inf, got {p}")));
        }
        Ok(Self(p))
    }

    pub fn euclidean() -> Self {
        Self(T::lit(2.0))
    }

    pub fn p(self) -> T {
        self.0
    }

    pub fn is_euclidean(self) -> bool {
        self.0 == T::lit(2.0)
    }
}

impl<T: Scalar> Default for NormParam<T> {
    fn default() -> Self {
        Self::euclidean()
    }
}

/// `(sum |x_i|^p)^(1/p)`.
pub fn p_norm<T: Scalar>(x: &[T], p: NormParam<T>) -> T {
    if p.is_euclidean() {
        return x.iter().map(|&v| v * v).sum::<T>().sqrt();
    }
    let p = p.p();
    x.iter().map(|v| v.abs().powf(p)).sum::<T>().powf(p.recip())
}

/// Sign with `sgn(0) = 0`.
#[inline]
pub fn sgn<T: Scalar>(x: T) -> T {
    if x > T::zero() {
        T::one()
    } else if x < T::zero() {
        -T::one()
    } else {
        T::zero()
    }
}

/// Signed power `x -> sgn(x) |x|^p`, componentwise.
pub fn phi<T: Scalar>(x: &[T], p: T) -> Vec<T> {
    if p == T::one() {
        return x.to_vec();
    }
    x.iter().map(|&v| sgn(v) * v.abs().powf(p)).collect()
}

/// `phi(x, p - 1) / ||x||_p^(p-1)`, the gradient of `||.||_p` at `x != 0`.
pub fn p_norm_gradient<T: Scalar>(x: &[T], p: NormParam<T>) -> Result<Vec<T>> {
    let norm = p_norm(x, p);
    if norm == T::zero() {
        return Err(Error::Domain("the p-norm is not differentiable at the origin".into()));
    }
    let q = p.p() - T::one();
    let denom = if q == T::one() { norm } else { norm.powf(q) };
    Ok(phi(x, q).into_iter().map(|v| v / denom).collect())
}

/// `x / ||x||_p`.
pub fn unit_normalize<T: Scalar>(x: &[T], p: NormParam<T>) -> Result<Vec<T>> {
    let norm = p_norm(x, p);
    if !(norm > T::zero()) || !norm.is_finite() {
        return Err(Error::Domain("cannot normalize a zero or non-finite vector".into()));
    }
    Ok(x.iter().map(|&v| v / norm).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn np(p: f64) -> NormParam<f64> {
        NormParam::new(p).unwrap()
    }

    #[test]
    fn rejects_invalid_exponents() {
        for p in [1.0, 0.5, f64::INFINITY, f64::NAN] {
            assert!(NormParam::new(p).is_err(), "p = {p}");
        }
    }

    #[test]
    fn norm_examples() {
        assert_eq!(p_norm(&[3.0, 4.0], np(2.0)), 5.0);
        assert!((p_norm(&[1.0, 1.0], np(3.0)) - 2f64.powf(1.0 / 3.0)).abs() < 1e-15);
        assert_eq!(p_norm(&[0.0, 0.0], np(3.0)), 0.0);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&[-2.0, 0.0, 3.0], 2.0), vec![-4.0, 0.0, 9.0]);
        assert_eq!(phi(&[-2.5, 0.0, 3.0], 1.0), vec![-2.5, 0.0, 3.0]);
        assert_eq!(phi(&[-2.5, 0.0, 3.0], 0.0), vec![-1.0, 0.0, 1.0]);
        // Sign is kept for even powers.
        assert_eq!(phi(&[-2.0], 2.0), vec![-4.0]);
    }

    #[test]
    fn gradient_examples() {
        let g = p_norm_gradient(&[3.0, 4.0], np(2.0)).unwrap();
        assert_eq!(g, vec![0.6, 0.8]);
        let g = p_norm_gradient(&[0.0, 1.0], np(3.0)).unwrap();
        assert_eq!(g, vec![0.0, 1.0]);
        assert!(matches!(p_norm_gradient(&[0.0, 0.0], np(3.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn euclidean_gradient_is_normalized_vector() {
        let x = [0.3, -1.7, 2.2];
        let g = p_norm_gradient(&x, np(2.0)).unwrap();
        let n = p_norm(&x, np(2.0));
        for (gi, xi) in g.iter().zip(x) {
            assert_eq!(*gi, xi / n);
        }
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(unit_normalize(&[3.0, 4.0], np(2.0)).unwrap(), vec![0.6, 0.8]);
        let u = unit_normalize(&[1.0, 1.0], np(3.0)).unwrap();
        let c = 2f64.powf(-1.0 / 3.0);
        assert!((u[0] - c).abs() < 1e-15 && (u[1] - c).abs() < 1e-15);
        let twice = unit_normalize(&u, np(3.0)).unwrap();
        assert!((twice[0] - u[0]).abs() < 1e-15);
        assert!(unit_normalize(&[0.0, 0.0], np(2.0)).is_err());
    }
}
