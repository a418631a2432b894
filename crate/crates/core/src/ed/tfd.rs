//! Thermofield doubles of Gibbs states.

use faer::Mat;

use crate::error::{Error, Result};
use crate::lattice::Bipartition;

use super::operator::{site_bit, BasisKind, DenseOperator};

pub const MAX_TFD_SITES: usize = 10;

/// `|TFD> = sum_n sqrt(p_n) |n>_L |n>_R`, stored as the amplitude matrix
/// `psi[(l, r)] = <l|_L <r|_R |TFD>`.
///
/// For a real Hamiltonian this matrix is `sqrt(rho)`.
#[derive(Debug, Clone)]
pub struct TfdState {
    num_sites: usize,
    amplitudes: Mat<f64>,
}

pub fn tfd_state(h: &DenseOperator, beta: f64) -> Result<TfdState> {
    let n = h.num_sites();
    if n > MAX_TFD_SITES {
        return Err(Error::Capacity {
            what: "thermofield double",
            requested: n,
            limit: MAX_TFD_SITES,
            estimate: format!("4^{n} amplitudes"),
        });
    }
    super::check_beta(beta)?;
    let spectrum = h.eigen()?;
    let e0 = spectrum.ground_energy();
    let z: f64 = spectrum
        .blocks()
        .iter()
        .flat_map(|b| b.values.iter())
        .map(|&e| (-beta * (e - e0)).exp())
        .sum();
    let root = spectrum.map(|e| (-0.5 * beta * (e - e0)).exp() / z.sqrt());
    Ok(TfdState {
        num_sites: n,
        amplitudes: root.to_dense(),
    })
}

impl TfdState {
    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    pub fn amplitudes(&self) -> &Mat<f64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm_l2()
    }

    /// `S(tr_{B_L B_R} |TFD><TFD|)`.
    pub fn entanglement_entropy(&self, partition: &Bipartition) -> Result<f64> {
        let n = self.num_sites;
        if partition.num_sites() != n {
            return Err(Error::InvalidPartition(format!(
                "partition covers {} sites, state has {n}",
                partition.num_sites()
            )));
        }
        // Schmidt matrix: rows (a_L, a_R), columns (b_L, b_R).
        let (a, b) = (partition.a(), partition.b());
        let index = |s: usize, sites: &[usize]| {
            sites
                .iter()
                .fold(0usize, |acc, &site| (acc << 1) | usize::from(s & site_bit(n, site) != 0))
        };
        let dim = 1usize << n;
        let ia: Vec<usize> = (0..dim).map(|s| index(s, a)).collect();
        let ib: Vec<usize> = (0..dim).map(|s| index(s, b)).collect();
        let (da, db) = (1usize << a.len(), 1usize << b.len());
        let mut m = Mat::<f64>::zeros(da * da, db * db);
        for r in 0..dim {
            for l in 0..dim {
                m[(ia[l] * da + ia[r], ib[l] * db + ib[r])] = self.amplitudes[(l, r)];
            }
        }
        // The smaller Gram matrix has the same nonzero spectrum.
        let (gram, sites) = if a.len() <= b.len() {
            (&m * m.transpose(), 2 * a.len())
        } else {
            (m.transpose() * &m, 2 * b.len())
        };
        DenseOperator::from_dense(sites, BasisKind::Spin, &gram)?.entropy()
    }
}

/// Entanglement entropy of the thermofield double of `exp(-beta H)`.
pub fn tfd_entanglement_entropy(h: &DenseOperator, beta: f64, partition: &Bipartition) -> Result<f64> {
    tfd_state(h, beta)?.entanglement_entropy(partition)
}
