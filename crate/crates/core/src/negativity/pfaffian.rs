//! Pfaffians of complex skew-symmetric matrices.
//!
//! Parlett–Reid reduction to tridiagonal form with partial pivoting: each
//! step eliminates one column pair with a skew rank-2 update, and every
//! row/column interchange flips the sign. The result is carried as a
//! log-magnitude and a unit phase so that products of thousands of pivots
//! neither overflow nor underflow.

use faer::{c64, Mat, MatRef};

use crate::error::{Error, Result};
use crate::linalg::max_abs;

/// Relative tolerance on `|Y + Y^T|` accepted before antisymmetrizing.
pub const SKEW_TOL: f64 = 1e-12;

/// Even-dimensional complex matrix with `Y^T = -Y`.
#[derive(Debug, Clone)]
pub struct SkewMatrix {
    matrix: Mat<c64>,
}

impl SkewMatrix {
    /// Validates antisymmetry within [`SKEW_TOL`] (relative to the largest
    /// entry) and stores the exactly antisymmetrized matrix.
    pub fn new(matrix: Mat<c64>) -> Result<Self> {
        Self::with_tolerance(matrix, SKEW_TOL)
    }

    pub fn with_tolerance(mut matrix: Mat<c64>, tol: f64) -> Result<Self> {
        let n = matrix.nrows();
        if matrix.ncols() != n {
            return Err(Error::Dimension(format!(
                "skew matrix must be square, got {}x{}",
                n,
                matrix.ncols()
            )));
        }
        if n % 2 != 0 {
            return Err(Error::Dimension(format!(
                "Pfaffian needs an even dimension, got {n}"
            )));
        }
        let scale = max_abs(matrix.as_ref()).max(f64::MIN_POSITIVE);
        let mut asym = 0.0f64;
        for j in 0..n {
            for i in j..n {
                asym = asym.max((matrix[(i, j)] + matrix[(j, i)]).norm());
            }
        }
        if !(asym <= tol * scale) {
            return Err(Error::Validation(format!(
                "matrix is not skew-symmetric: |Y + Y^T| = {asym:.3e} (scale {scale:.3e})"
            )));
        }
        crate::linalg::antisymmetrize(&mut matrix);
        Ok(SkewMatrix { matrix })
    }

    pub fn from_real(matrix: MatRef<'_, f64>) -> Result<Self> {
        Self::new(crate::linalg::to_complex(matrix))
    }

    pub fn matrix(&self) -> &Mat<c64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// Pfaffian in polar form: `Pf = phase * exp(log_abs)`, with `log_abs = -inf`
/// for a singular matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogPfaffian {
    pub log_abs: f64,
    pub phase: c64,
}

impl LogPfaffian {
    pub fn value(&self) -> c64 {
        self.phase * self.log_abs.exp()
    }

    pub fn is_zero(&self) -> bool {
        self.log_abs == f64::NEG_INFINITY
    }
}

pub fn pfaffian(y: &SkewMatrix) -> c64 {
    log_pfaffian(y).value()
}

pub fn log_pfaffian(y: &SkewMatrix) -> LogPfaffian {
    let mut a = y.matrix.clone();
    let n = a.nrows();
    let mut log_abs = 0.0f64;
    let mut phase = c64::new(1.0, 0.0);
    let zero = LogPfaffian {
        log_abs: f64::NEG_INFINITY,
        phase: c64::new(0.0, 0.0),
    };

    let mut pivot_col = Vec::with_capacity(n);
    let mut tau = Vec::with_capacity(n);
    for k in (0..n).step_by(2) {
        // Largest entry below the diagonal in column k.
        let mut kp = k + 1;
        let mut best = a[(k + 1, k)].norm();
        for i in k + 2..n {
            let v = a[(i, k)].norm();
            if v > best {
                best = v;
                kp = i;
            }
        }
        if kp != k + 1 {
            // Symmetric interchange of k+1 and kp; columns before k are dead.
            for j in k..n {
                let t = a[(k + 1, j)];
                a[(k + 1, j)] = a[(kp, j)];
                a[(kp, j)] = t;
            }
            for i in k..n {
                let t = a[(i, k + 1)];
                a[(i, k + 1)] = a[(i, kp)];
                a[(i, kp)] = t;
            }
            phase = -phase;
        }
        let pivot = a[(k, k + 1)];
        if pivot.norm() == 0.0 {
            return zero;
        }
        log_abs += pivot.norm().ln();
        phase *= pivot / pivot.norm();

        if k + 2 < n {
            let m = n - (k + 2);
            pivot_col.clear();
            pivot_col.extend((k + 2..n).map(|i| a[(i, k + 1)]));
            tau.clear();
            tau.extend((k + 2..n).map(|j| a[(k, j)] / pivot));
            for jj in 0..m {
                let col = &mut a.col_as_slice_mut(k + 2 + jj)[k + 2..];
                let aj = pivot_col[jj];
                let tj = tau[jj];
                for ((x, &ti), &ai) in col.iter_mut().zip(&tau).zip(&pivot_col) {
                    *x += ti * aj - ai * tj;
                }
            }
        }
    }
    LogPfaffian { log_abs, phase }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> c64 {
        c64::new(re, im)
    }

    fn skew_from_upper(n: usize, f: impl Fn(usize, usize) -> c64) -> SkewMatrix {
        let m = Mat::from_fn(n, n, |i, j| {
            if i < j {
                f(i, j)
            } else if i > j {
                -f(j, i)
            } else {
                c(0.0, 0.0)
            }
        });
        SkewMatrix::new(m).unwrap()
    }

    #[test]
    fn two_by_two() {
        let y = skew_from_upper(2, |_, _| c(2.5, -1.0));
        assert!((pfaffian(&y) - c(2.5, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn four_by_four_expansion() {
        let vals = [[0.0, 1.3, -0.4, 2.0], [0.0, 0.0, 0.7, -1.1], [0.0, 0.0, 0.0, 0.9]];
        let y = skew_from_upper(4, |i, j| c(vals[i][j], 0.1 * (i + 2 * j) as f64));
        let e = |i: usize, j: usize| c(vals[i][j], 0.1 * (i + 2 * j) as f64);
        let expected = e(0, 1) * e(2, 3) - e(0, 2) * e(1, 3) + e(0, 3) * e(1, 2);
        assert!((pfaffian(&y) - expected).norm() < 1e-14);
    }

    #[test]
    fn zero_pivot_gives_zero() {
        let y = SkewMatrix::new(Mat::zeros(4, 4)).unwrap();
        assert!(log_pfaffian(&y).is_zero());
        assert_eq!(pfaffian(&y), c(0.0, 0.0));
    }

    #[test]
    fn rejects_odd_and_non_skew() {
        assert!(matches!(
            SkewMatrix::new(Mat::zeros(3, 3)),
            Err(Error::Dimension(_))
        ));
        let mut m = Mat::<c64>::zeros(2, 2);
        m[(0, 1)] = c(1.0, 0.0);
        m[(1, 0)] = c(1.0, 0.0);
        assert!(matches!(SkewMatrix::new(m), Err(Error::Validation(_))));
    }

    #[test]
    fn large_block_diagonal_does_not_overflow() {
        // 600 blocks of [[0, 1e3], [-1e3, 0]]: Pf = 1e1800.
        let n = 1200;
        let m = Mat::from_fn(n, n, |i, j| {
            if j == i + 1 && i % 2 == 0 {
                c(1e3, 0.0)
            } else if i == j + 1 && j % 2 == 0 {
                c(-1e3, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let lp = log_pfaffian(&SkewMatrix::new(m).unwrap());
        assert!((lp.log_abs - 1800.0 * 10f64.ln()).abs() < 1e-9);
        assert!((lp.phase - c(1.0, 0.0)).norm() < 1e-12);
    }
}
