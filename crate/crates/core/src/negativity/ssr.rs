//! SSR logarithmic negativity of a fermionic Gaussian state through the
//! Grassmann-kernel representation.
//!
//! The state is written as a Gaussian Grassmann kernel with skew matrix
//! `Gamma`, whose inverse holds the two-point functions. The partial time
//! reversal on A relabels the A variables with phases `-i` (matrix `T`),
//! producing a kernel `S'` for `rho^{R_A}` and `S''` for its adjoint. The
//! product `(rho^{R_A})^dag rho^{R_A}` is again Gaussian, `prefactor * rho''`
//! with kernel `Gamma'`, and
//!
//! ```text
//! E = 1/2 ln[(-1)^n Pf(B) Pf(Gamma') / Pf(Gamma)^2]
//!     + sum_i ln(sqrt(<d_i^dag d_i>) + sqrt(<d_i d_i^dag>))
//! ```
//!
//! where the occupations are those of `rho''`.
//!
//! Block notation: every `2n x 2n` matrix is split into `n x n` blocks
//! `(1,1) (1,2) / (2,1) (2,2)` following the variable order
//! `(xi_1..xi_n, xibar_1..xibar_n)`.

use faer::{c64, Mat, MatRef};

use super::pfaffian::{log_pfaffian, LogPfaffian, SkewMatrix};
use crate::error::{Error, Result};
use crate::gaussian::{CorrelationMatrix, OCCUPATION_TOL};
use crate::lattice::Bipartition;
use crate::linalg::{
    antisymmetrize, clamp_unit, hermitian_eigenvalues, hermitize, inverse_with_residual, max_abs,
};

/// Allowed `|Im| / |Re|` of the Pfaffian prefactor before it is treated as
/// lying off the positive real axis.
pub const BRANCH_TOL: f64 = 1e-6;

/// Residual above which a matrix inversion is reported as singular.
const INVERSE_RESIDUAL_TOL: f64 = 1e-8;

const ZERO: c64 = c64 { re: 0.0, im: 0.0 };
const ONE: c64 = c64 { re: 1.0, im: 0.0 };

/// Grassmann kernel matrix of a Gaussian state, modes in site order.
#[derive(Debug, Clone)]
pub struct GammaMatrix {
    matrix: Mat<c64>,
}

impl GammaMatrix {
    pub fn matrix(&self) -> &Mat<c64> {
        &self.matrix
    }

    pub fn num_modes(&self) -> usize {
        self.matrix.nrows() / 2
    }

    /// Relabels modes so that mode `k` of the result is mode `order[k]` here.
    pub fn permuted(&self, order: &[usize]) -> GammaMatrix {
        let n = self.num_modes();
        let idx = |k: usize| if k < n { order[k] } else { n + order[k - n] };
        GammaMatrix {
            matrix: Mat::from_fn(2 * n, 2 * n, |a, b| self.matrix[(idx(a), idx(b))]),
        }
    }
}

fn block(m: &Mat<c64>, n: usize, r: usize, c: usize) -> MatRef<'_, c64> {
    m.as_ref().submatrix(r * n, c * n, n, n)
}

fn assemble(n: usize, blocks: [[Option<MatRef<'_, c64>>; 2]; 2]) -> Mat<c64> {
    Mat::from_fn(2 * n, 2 * n, |i, j| {
        match blocks[i / n][j / n] {
            Some(b) => b[(i % n, j % n)],
            None => ZERO,
        }
    })
}

/// `J = [[0, -1], [1, 0]]` in the `n x n` block layout.
fn j_entry(n: usize, i: usize, j: usize) -> c64 {
    if i < n && j == i + n {
        -ONE
    } else if i >= n && j + n == i {
        ONE
    } else {
        ZERO
    }
}

/// Builds `Gamma` from `Gamma^{-1} = [[<c_j c_i>, -<c_j^dag c_i>], [<c_i^dag c_j>, <c_j^dag c_i^dag>]]`.
///
/// `pairing[(i, j)] = <c_i c_j>`; `None` selects the number-conserving path.
pub fn gamma_from_correlations(
    c: &CorrelationMatrix,
    pairing: Option<MatRef<'_, c64>>,
) -> Result<GammaMatrix> {
    let n = c.num_modes();
    let occ = c.occupations();
    if occ.first().is_some_and(|&v| v <= 0.0) || occ.last().is_some_and(|&v| v >= 1.0) {
        return Err(Error::SingularState(format!(
            "occupations span [{:.3e}, {:.3e}] and touch 0 or 1",
            occ.first().copied().unwrap_or(0.0),
            occ.last().copied().unwrap_or(0.0)
        )));
    }
    match pairing {
        None => {
            // Gamma^{-1} = [[0, -C^T], [C, 0]]  =>  Gamma = [[0, C^{-1}], [-C^{-T}, 0]].
            let cm = crate::linalg::to_complex(c.matrix().as_ref());
            let (inv, residual) = inverse_with_residual(cm.as_ref());
            if !(residual <= INVERSE_RESIDUAL_TOL) {
                return Err(Error::SingularState(format!(
                    "correlation matrix inversion residual {residual:.3e}"
                )));
            }
            let mut g = Mat::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
                (true, false) => inv[(i, j - n)],
                (false, true) => -inv[(j, i - n)],
                _ => ZERO,
            });
            antisymmetrize(&mut g);
            Ok(GammaMatrix { matrix: g })
        }
        Some(f) => {
            if f.nrows() != n || f.ncols() != n {
                return Err(Error::Dimension(format!(
                    "pairing block must be {n}x{n}, got {}x{}",
                    f.nrows(),
                    f.ncols()
                )));
            }
            let cm = c.matrix();
            let ginv = Mat::from_fn(2 * n, 2 * n, |a, b| {
                let (i, j) = (a % n, b % n);
                match (a < n, b < n) {
                    (true, true) => f[(j, i)],
                    (true, false) => c64::new(-cm[(j, i)], 0.0),
                    (false, true) => c64::new(cm[(i, j)], 0.0),
                    (false, false) => f[(i, j)].conj(),
                }
            });
            let (mut g, residual) = inverse_with_residual(ginv.as_ref());
            if !(residual <= INVERSE_RESIDUAL_TOL) {
                return Err(Error::SingularState(format!(
                    "two-point block matrix inversion residual {residual:.3e}"
                )));
            }
            antisymmetrize(&mut g);
            Ok(GammaMatrix { matrix: g })
        }
    }
}

/// Matrices of the partial-time-reversal construction for one bipartition.
#[derive(Debug, Clone)]
pub struct SsrIntermediates {
    pub n_a: usize,
    /// `Gamma` relabelled so that A's modes come first.
    pub gamma: Mat<c64>,
    pub s_prime: Mat<c64>,
    pub s_double_prime: Mat<c64>,
    pub b: Mat<c64>,
    pub gamma_prime: Mat<c64>,
    /// `max |B B^{-1} - 1|` when inverting `B`.
    pub b_inverse_residual: f64,
}

/// Index map and phase of `T`: row `a` of `T` has its single entry in column
/// `source(a)` with value `phase(a)`.
fn t_source(n: usize, n_a: usize, a: usize) -> (usize, c64) {
    let minus_i = c64::new(0.0, -1.0);
    if a < n_a {
        (a + n, minus_i)
    } else if a < n {
        (a, ONE)
    } else if a < n + n_a {
        (a - n, minus_i)
    } else {
        (a, ONE)
    }
}

/// The partial-reversal matrix `T` (symmetric, a phased permutation).
pub fn reversal_matrix(n_a: usize, n_b: usize) -> Mat<c64> {
    let n = n_a + n_b;
    let mut t = Mat::zeros(2 * n, 2 * n);
    for a in 0..2 * n {
        let (s, ph) = t_source(n, n_a, a);
        t[(a, s)] = ph;
    }
    t
}

pub fn ssr_transform(gamma: &GammaMatrix, partition: &Bipartition) -> Result<SsrIntermediates> {
    let n = gamma.num_modes();
    if partition.num_sites() != n {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} sites but the state has {n} modes",
            partition.num_sites()
        )));
    }
    let n_a = partition.a().len();
    let g = if partition.is_leading_block() {
        gamma.matrix().clone()
    } else {
        gamma.permuted(&partition.ordering()).matrix
    };

    // S' = T (Gamma + J) T, entry-wise: phase_a phase_b M[src_a, src_b].
    let src: Vec<(usize, c64)> = (0..2 * n).map(|a| t_source(n, n_a, a)).collect();
    let mut s1 = Mat::from_fn(2 * n, 2 * n, |a, b| {
        let (sa, pa) = src[a];
        let (sb, pb) = src[b];
        pa * pb * (g[(sa, sb)] + j_entry(n, sa, sb))
    });
    antisymmetrize(&mut s1);

    let adj = |r: usize, c: usize| block(&s1, n, r, c).adjoint().to_owned();
    let (s1_22h, s1_12h, s1_21h, s1_11h) = (adj(1, 1), adj(0, 1), adj(1, 0), adj(0, 0));
    let mut s2 = assemble(
        n,
        [
            [Some(s1_22h.as_ref()), Some(s1_12h.as_ref())],
            [Some(s1_21h.as_ref()), Some(s1_11h.as_ref())],
        ],
    );
    antisymmetrize(&mut s2);

    let id = Mat::<c64>::identity(n, n);
    let neg_id = -&id;
    let mut b = assemble(
        n,
        [
            [Some(block(&s1, n, 0, 0)), Some(neg_id.as_ref())],
            [Some(id.as_ref()), Some(block(&s2, n, 1, 1))],
        ],
    );
    antisymmetrize(&mut b);

    let (b_inv, b_inverse_residual) = inverse_with_residual(b.as_ref());
    if !(b_inverse_residual <= INVERSE_RESIDUAL_TOL) {
        let condition = max_abs(b.as_ref()) * max_abs(b_inv.as_ref()) * (2 * n) as f64;
        return Err(Error::DegenerateTransform {
            reason: format!("B inversion residual {b_inverse_residual:.3e}"),
            condition,
        });
    }

    let left = assemble(n, [[None, Some(block(&s2, n, 0, 1))], [Some(block(&s1, n, 1, 0)), None]]);
    let right = assemble(n, [[None, Some(block(&s1, n, 0, 1))], [Some(block(&s2, n, 1, 0)), None]]);
    let diag = assemble(n, [[Some(block(&s2, n, 0, 0)), None], [None, Some(block(&s1, n, 1, 1))]]);
    let coupled = &left * (&b_inv * &right);
    let mut gp = Mat::from_fn(2 * n, 2 * n, |i, j| diag[(i, j)] - coupled[(i, j)] - j_entry(n, i, j));
    antisymmetrize(&mut gp);

    Ok(SsrIntermediates {
        n_a,
        gamma: g,
        s_prime: s1,
        s_double_prime: s2,
        b,
        gamma_prime: gp,
        b_inverse_residual,
    })
}

/// Everything computed on the way to the negativity.
#[derive(Debug, Clone)]
pub struct NegativityDiagnostics {
    /// `(-1)^n Pf(B) Pf(Gamma') / Pf(Gamma)^2` as log-magnitude and phase.
    pub prefactor: LogPfaffian,
    /// Eigenvalues of the `2n x 2n` covariance matrix of `rho''`; they come in
    /// pairs `(nu, 1 - nu)`.
    pub covariance_spectrum: Vec<f64>,
    /// Unclamped negativity.
    pub raw: f64,
}

impl NegativityDiagnostics {
    pub fn value(&self) -> f64 {
        self.raw.max(0.0)
    }

    /// The same quantity written through the pseudo-energies
    /// `eps = ln((1 - nu) / nu)`; only meaningful for interior occupations.
    pub fn raw_from_pseudo_energies(&self) -> f64 {
        let occupation_term: f64 = self
            .covariance_spectrum
            .iter()
            .map(|&nu| {
                let eps = ((1.0 - nu) / nu).ln();
                (1.0 + (-eps / 2.0).exp()).ln() - 0.5 * (1.0 + (-eps).exp()).ln()
            })
            .sum::<f64>()
            / 2.0;
        0.5 * self.prefactor.log_abs + occupation_term
    }
}

/// SSR logarithmic negativity between A and B, clamped at zero.
pub fn ssr_negativity(c: &CorrelationMatrix, partition: &Bipartition) -> Result<f64> {
    Ok(ssr_negativity_detailed(c, partition)?.value())
}

pub fn ssr_negativity_detailed(
    c: &CorrelationMatrix,
    partition: &Bipartition,
) -> Result<NegativityDiagnostics> {
    let gamma = gamma_from_correlations(c, None)?;
    negativity_from_gamma(&gamma, partition)
}

pub fn negativity_from_gamma(gamma: &GammaMatrix, partition: &Bipartition) -> Result<NegativityDiagnostics> {
    let n = gamma.num_modes();
    let inter = ssr_transform(gamma, partition)?;

    let pf_b = log_pfaffian(&SkewMatrix::new(inter.b.clone())?);
    let pf_gp = log_pfaffian(&SkewMatrix::new(inter.gamma_prime.clone())?);
    let pf_g = log_pfaffian(&SkewMatrix::new(inter.gamma.clone())?);
    if pf_b.is_zero() || pf_gp.is_zero() || pf_g.is_zero() {
        return Err(Error::Numerical("vanishing Pfaffian in the negativity prefactor".into()));
    }
    let sign = if n % 2 == 0 { ONE } else { -ONE };
    let phase = sign * pf_b.phase * pf_gp.phase / (pf_g.phase * pf_g.phase);
    let prefactor = LogPfaffian {
        log_abs: pf_b.log_abs + pf_gp.log_abs - 2.0 * pf_g.log_abs,
        phase,
    };
    if !(phase.re > 0.0 && phase.im.abs() <= BRANCH_TOL * phase.re) {
        return Err(Error::BranchCut {
            re: phase.re,
            im: phase.im,
        });
    }

    // Covariance matrix of rho'' from Gamma'^{-1} = G:
    // [[G21, G22^T], [G11^T, 1 + G12]].
    let (g, residual) = inverse_with_residual(inter.gamma_prime.as_ref());
    if !(residual <= INVERSE_RESIDUAL_TOL) {
        return Err(Error::Numerical(format!(
            "Gamma' inversion residual {residual:.3e}"
        )));
    }
    let mut cov = Mat::from_fn(2 * n, 2 * n, |a, b| {
        let (i, j) = (a % n, b % n);
        match (a < n, b < n) {
            (true, true) => g[(n + i, j)],
            (true, false) => g[(n + j, n + i)],
            (false, true) => g[(j, i)],
            (false, false) => g[(i, n + j)] + if i == j { ONE } else { ZERO },
        }
    });
    hermitize(&mut cov);
    let mut spectrum = hermitian_eigenvalues(cov.as_ref())?;
    clamp_unit(&mut spectrum, OCCUPATION_TOL.max(1e-8), "rho'' covariance")?;

    // Each pair (nu, 1 - nu) contributes the same term; halve the full sum.
    let occupation_term: f64 = spectrum
        .iter()
        .map(|&nu| (nu.sqrt() + (1.0 - nu).sqrt()).ln())
        .sum::<f64>()
        / 2.0;

    Ok(NegativityDiagnostics {
        prefactor,
        covariance_spectrum: spectrum,
        raw: 0.5 * prefactor.log_abs + occupation_term,
    })
}
