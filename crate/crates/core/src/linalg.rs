//! Thin wrappers over faer decompositions with this crate's error type.

use faer::linalg::solvers::DenseSolveCore;
use faer::{c64, Mat, MatRef, Side};

use crate::error::{Error, Result};

/// Eigenvalues (ascending) and eigenvectors of a real symmetric matrix.
pub fn symmetric_eigen(m: MatRef<'_, f64>) -> Result<(Vec<f64>, Mat<f64>)> {
    let evd = m
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Numerical(format!("symmetric eigensolver failed: {e:?}")))?;
    let values = (0..m.nrows()).map(|k| evd.S()[k]).collect();
    Ok((values, evd.U().to_owned()))
}

pub fn symmetric_eigenvalues(m: MatRef<'_, f64>) -> Result<Vec<f64>> {
    m.self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Numerical(format!("symmetric eigensolver failed: {e:?}")))
}

pub fn hermitian_eigenvalues(m: MatRef<'_, c64>) -> Result<Vec<f64>> {
    m.self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Numerical(format!("hermitian eigensolver failed: {e:?}")))
}

pub fn singular_values(m: MatRef<'_, c64>) -> Result<Vec<f64>> {
    m.singular_values()
        .map_err(|e| Error::Numerical(format!("SVD failed: {e:?}")))
}

/// Inverse via partial-pivot LU, with the residual `max |M M^-1 - I|`.
pub fn inverse_with_residual(m: MatRef<'_, c64>) -> (Mat<c64>, f64) {
    let n = m.nrows();
    let inv = m.partial_piv_lu().inverse();
    let prod = m * &inv;
    let mut residual = 0.0f64;
    for j in 0..n {
        for i in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            let d = (prod[(i, j)] - c64::new(target, 0.0)).norm();
            residual = residual.max(if d.is_nan() { f64::INFINITY } else { d });
        }
    }
    (inv, residual)
}

pub fn to_complex(m: MatRef<'_, f64>) -> Mat<c64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| c64::new(m[(i, j)], 0.0))
}

/// `(M - M^T) / 2` in place.
pub fn antisymmetrize(m: &mut Mat<c64>) {
    let n = m.nrows();
    for j in 0..n {
        m[(j, j)] = c64::new(0.0, 0.0);
        for i in j + 1..n {
            let v = (m[(i, j)] - m[(j, i)]) * 0.5;
            m[(i, j)] = v;
            m[(j, i)] = -v;
        }
    }
}

/// `(M + M^dag) / 2` in place.
pub fn hermitize(m: &mut Mat<c64>) {
    let n = m.nrows();
    for j in 0..n {
        m[(j, j)] = c64::new(m[(j, j)].re, 0.0);
        for i in j + 1..n {
            let v = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            m[(i, j)] = v;
            m[(j, i)] = v.conj();
        }
    }
}

pub fn max_abs(m: MatRef<'_, c64>) -> f64 {
    let mut best = 0.0f64;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            best = best.max(m[(i, j)].norm());
        }
    }
    best
}

/// Binary entropy `-p ln p - (1-p) ln(1-p)` with the endpoint limits.
pub fn binary_entropy(p: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { -x * x.ln() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// Clamps spectral values into `[0, 1]`, rejecting excursions beyond `tol`.
pub fn clamp_unit(values: &mut [f64], tol: f64, what: &str) -> Result<()> {
    for v in values.iter_mut() {
        if !v.is_finite() || *v < -tol || *v > 1.0 + tol {
            return Err(Error::Numerical(format!(
                "{what} eigenvalue {v:.3e} outside [0, 1] beyond tolerance {tol:.0e}"
            )));
        }
        *v = v.clamp(0.0, 1.0);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_entropy_limits() {
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0), 0.0);
        assert!((binary_entropy(0.5) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn clamp_rejects_far_values() {
        let mut v = vec![-1e-12, 0.3, 1.0 + 1e-12];
        clamp_unit(&mut v, 1e-10, "test").unwrap();
        assert_eq!(v, vec![0.0, 0.3, 1.0]);
        assert!(clamp_unit(&mut [1.1], 1e-10, "test").is_err());
    }

    #[test]
    fn inverse_residual_is_small_for_well_conditioned() {
        let m = Mat::from_fn(5, 5, |i, j| {
            c64::new(if i == j { 4.0 } else { 0.3 }, (i as f64 - j as f64) * 0.1)
        });
        let (_, r) = inverse_with_residual(m.as_ref());
        assert!(r < 1e-13);
    }
}
