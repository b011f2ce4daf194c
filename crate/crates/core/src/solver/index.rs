use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigenvalues, tangent_basis, Matrix};
use crate::norms::{p_norm, NormParam};
use crate::scalar::Scalar;
use crate::solver::eigen::residual_eigen;
use crate::tensor::DenseTensor;

/// Morse classification of a critical point of `f_T` on `S^{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MorseClass {
    /// Number of negative eigenvalues of the restricted second variation, in `0..n`.
    pub index: usize,
    pub nondegenerate: bool,
    /// Eigenvalues of the restricted second variation, ascending.
    pub spectrum: Vec<f64>,
}

/// Second variation of `f_T` on the sphere at `v`, in an orthonormal basis `B` of
/// the tangent space: `B^T (hess f(v) - k lambda I) B`.
///
/// Along the geodesic `c(t) = cos(t) v + sin(t) w` (`w` a unit tangent vector),
/// `(f o c)''(0) = w^T hess f(v) w - k f(v)`, which is the quadratic form above.
pub fn restricted_hessian<T: Scalar>(t: &DenseTensor<T>, v: &[T], lambda: T) -> Result<Matrix<T>> {
    let mut m = t.sym_hessian(v)?;
    let kl = T::from_usize_lossy(t.order()) * lambda;
    for i in 0..v.len() {
        m.set(i, i, m.get(i, i) - kl);
    }
    let b = tangent_basis(v);
    Ok(b.transpose().matmul(&m).matmul(&b))
}

/// Morse index and nondegeneracy of an accepted symmetric Euclidean eigenpair.
///
/// Eigenvalues of the restricted second variation within
/// `1e-8 * max(1, |H_R|_F)` of zero count as vanishing.
pub fn classify_index<T: Scalar>(t: &DenseTensor<T>, v: &[T], lambda: T) -> Result<MorseClass> {
    if !t.is_symmetric() {
        return Err(Error::Precondition("index classification needs a symmetric tensor".into()));
    }
    let p2 = NormParam::euclidean();
    if (p_norm(v, p2) - T::one()).abs() > T::epsilon().sqrt() {
        return Err(Error::Precondition("index classification needs a unit vector".into()));
    }
    let k = T::from_usize_lossy(t.order());
    let limit = T::epsilon().sqrt() * (T::one() + k * t.max_abs());
    let residual = residual_eigen(t, v, lambda, 0, p2)?;
    if residual > limit {
        return Err(Error::Precondition(format!(
            "eigenpair residual {residual:e} too large to classify (limit {limit:e})"
        )));
    }
    let hr = restricted_hessian(t, v, lambda)?;
    let spectrum = symmetric_eigenvalues(&hr);
    let eps = 1e-8 * hr.frobenius().as_f64().max(1.0);
    Ok(MorseClass {
        index: spectrum.iter().filter(|&&e| e < -eps).count(),
        nondegenerate: spectrum.iter().all(|e| e.abs() > eps),
        spectrum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix_indices() {
        let d = DenseTensor::diagonal(&[1.0, 2.0], 2).unwrap();
        let c = classify_index(&d, &[1.0, 0.0], 1.0).unwrap();
        assert_eq!((c.index, c.nondegenerate), (0, true));
        let c = classify_index(&d, &[0.0, -1.0], 2.0).unwrap();
        assert_eq!((c.index, c.nondegenerate), (1, true));
    }

    #[test]
    fn cubic_maximum_at_e1() {
        let t = DenseTensor::<f64>::diagonal(&[1.0, 1.0], 3).unwrap();
        let hr = restricted_hessian(&t, &[1.0, 0.0], 1.0).unwrap();
        assert!((hr.get(0, 0) + 3.0).abs() < 1e-14);
        assert_eq!(classify_index(&t, &[1.0, 0.0], 1.0).unwrap().index, 1);
    }

    #[test]
    fn identity_is_degenerate_everywhere() {
        let id = DenseTensor::diagonal(&[1.0, 1.0, 1.0], 2).unwrap();
        let v = [0.6, 0.0, 0.8];
        let c = classify_index(&id, &v, 1.0).unwrap();
        assert!(!c.nondegenerate);
    }

    #[test]
    fn rejects_non_critical_points() {
        let d = DenseTensor::diagonal(&[1.0, 2.0], 2).unwrap();
        assert!(matches!(classify_index(&d, &[0.6, 0.8], 1.64), Err(Error::Precondition(_))));
    }
}
