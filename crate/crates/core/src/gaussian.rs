//! Thermal states of quadratic fermion Hamiltonians.
//!
//! A number-conserving Gaussian state is fully described by its correlation
//! matrix `C_ij = <c_i^dag c_j>`; reduced states are principal submatrices,
//! and entropies follow from their eigenvalues.

use faer::Mat;

use crate::error::{Error, Result};
use crate::lattice::{Bipartition, Lattice, Offset};
use crate::linalg::{binary_entropy, clamp_unit, symmetric_eigen, symmetric_eigenvalues};
use crate::models::SingleParticleHamiltonian;

/// Guard band for occupation eigenvalues that stray outside `[0, 1]`.
pub const OCCUPATION_TOL: f64 = 1e-10;

/// Fermi factor `1 / (e^x + 1)` evaluated without overflow.
pub fn fermi(x: f64) -> f64 {
    if x >= 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

#[derive(Debug, Clone)]
pub struct CorrelationMatrix {
    matrix: Mat<f64>,
    beta: f64,
    occupations: Vec<f64>,
}

impl CorrelationMatrix {
    /// Wraps an explicit real symmetric correlation matrix.
    pub fn from_matrix(matrix: Mat<f64>, beta: f64) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::Dimension("correlation matrix must be square".into()));
        }
        let mut occupations = symmetric_eigenvalues(matrix.as_ref())?;
        clamp_unit(&mut occupations, OCCUPATION_TOL, "correlation matrix")?;
        Ok(CorrelationMatrix {
            matrix,
            beta,
            occupations,
        })
    }

    pub fn matrix(&self) -> &Mat<f64> {
        &self.matrix
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn num_modes(&self) -> usize {
        self.matrix.nrows()
    }

    /// Normal-mode occupations, ascending.
    pub fn occupations(&self) -> &[f64] {
        &self.occupations
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i, j)]
    }

    /// Principal submatrix on `subset` (in the given order).
    pub fn restrict(&self, subset: &[usize]) -> Result<Mat<f64>> {
        let n = self.num_modes();
        if let Some(&bad) = subset.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: bad, len: n });
        }
        Ok(Mat::from_fn(subset.len(), subset.len(), |a, b| {
            self.matrix[(subset[a], subset[b])]
        }))
    }

    /// Entropy of the full state from its normal-mode occupations.
    pub fn total_entropy(&self) -> f64 {
        self.occupations.iter().map(|&f| binary_entropy(f)).sum()
    }
}

/// `C = U f(beta * eps) U^T` for `h = U eps U^T`.
pub fn thermal_correlation_matrix(h: &SingleParticleHamiltonian, beta: f64) -> Result<CorrelationMatrix> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::Validation(format!(
            "beta must be positive and finite, got {beta}"
        )));
    }
    let n = h.num_modes();
    let (energies, u) = symmetric_eigen(h.matrix().as_ref())?;

    let scale = energies.iter().fold(1.0f64, |m, e| m.max(e.abs()));
    let residual = (h.matrix() * &u - Mat::from_fn(n, n, |i, k| u[(i, k)] * energies[k])).norm_max();
    if !(residual <= 1e-8 * scale * (n as f64).max(1.0)) {
        return Err(Error::Numerical(format!(
            "eigendecomposition residual {residual:.3e} too large"
        )));
    }

    let occ: Vec<f64> = energies.iter().map(|&e| fermi(beta * e)).collect();
    let weighted = Mat::from_fn(n, n, |i, k| u[(i, k)] * occ[k]);
    let mut c = &weighted * u.transpose();
    // Exact symmetry; the product is symmetric only up to round-off.
    for j in 0..n {
        for i in j + 1..n {
            let v = 0.5 * (c[(i, j)] + c[(j, i)]);
            c[(i, j)] = v;
            c[(j, i)] = v;
        }
    }
    let mut occupations = occ;
    occupations.sort_by(f64::total_cmp);
    Ok(CorrelationMatrix {
        matrix: c,
        beta,
        occupations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub target: usize,
    pub distance: f64,
    pub magnitude: f64,
    /// `magnitude * distance^alpha`.
    pub scaled: f64,
}

/// `|C_{origin, origin + r}|` and its `|r|^alpha`-scaled value along `offsets`.
pub fn two_point_sweep(
    c: &CorrelationMatrix,
    lattice: &Lattice,
    origin: usize,
    offsets: &[Offset],
    alpha: f64,
) -> Result<Vec<SweepPoint>> {
    if lattice.num_sites() != c.num_modes() {
        return Err(Error::Dimension(format!(
            "lattice has {} sites but the correlation matrix {} modes",
            lattice.num_sites(),
            c.num_modes()
        )));
    }
    offsets
        .iter()
        .map(|&off| {
            let target = lattice.displace(origin, off)?;
            let distance = lattice.distance(origin, target)?;
            let magnitude = c.get(origin, target).abs();
            Ok(SweepPoint {
                target,
                distance,
                magnitude,
                scaled: magnitude * distance.powf(alpha),
            })
        })
        .collect()
}

/// von Neumann entropy (nats) of the reduced state on `subset`.
pub fn subsystem_entropy(c: &CorrelationMatrix, subset: &[usize]) -> Result<f64> {
    if subset.is_empty() {
        return Err(Error::Validation("entropy subset must be nonempty".into()));
    }
    let sub = c.restrict(subset)?;
    let mut nu = symmetric_eigenvalues(sub.as_ref())?;
    clamp_unit(&mut nu, OCCUPATION_TOL, "reduced correlation")?;
    Ok(nu.iter().map(|&v| binary_entropy(v)).sum())
}

/// Mutual information `S_A + S_B - S_AB`, clamped at zero.
pub fn gaussian_mutual_information(c: &CorrelationMatrix, partition: &Bipartition) -> Result<f64> {
    Ok(mutual_information_parts(c, partition)?.value())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MutualInformation {
    pub entropy_a: f64,
    pub entropy_b: f64,
    pub entropy_ab: f64,
}

impl MutualInformation {
    pub fn raw(&self) -> f64 {
        self.entropy_a + self.entropy_b - self.entropy_ab
    }

    pub fn value(&self) -> f64 {
        self.raw().max(0.0)
    }
}

pub fn mutual_information_parts(c: &CorrelationMatrix, partition: &Bipartition) -> Result<MutualInformation> {
    if partition.num_sites() != c.num_modes() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} sites but the state has {} modes",
            partition.num_sites(),
            c.num_modes()
        )));
    }
    Ok(MutualInformation {
        entropy_a: subsystem_entropy(c, partition.a())?,
        entropy_b: subsystem_entropy(c, partition.b())?,
        entropy_ab: subsystem_entropy(c, &(0..c.num_modes()).collect::<Vec<_>>())?,
    })
}
