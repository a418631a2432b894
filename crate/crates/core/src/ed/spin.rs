//! Long-range Heisenberg Hamiltonians in the `S^z` product basis.

use crate::error::{Error, Result};
use crate::lattice::Bipartition;
use crate::models::CouplingTable;

use super::operator::{site_bit, BasisKind, DenseOperator};

/// Largest chain handled by [`heisenberg_dense`].
pub const MAX_SPIN_SITES: usize = 14;

/// `H = sum_{i<j} J_ij S_i . S_j`, stored by magnetization sector.
pub fn heisenberg_dense(couplings: &CouplingTable) -> Result<DenseOperator> {
    heisenberg_filtered(couplings, |_, _| true)
}

/// The part of `H` coupling `A` to `B`, i.e. the terms straddling the cut.
pub fn heisenberg_boundary(couplings: &CouplingTable, partition: &Bipartition) -> Result<DenseOperator> {
    if partition.num_sites() != couplings.num_sites() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} sites, couplings {}",
            partition.num_sites(),
            couplings.num_sites()
        )));
    }
    heisenberg_filtered(couplings, |i, j| partition.contains_a(i) != partition.contains_a(j))
}

fn heisenberg_filtered(
    couplings: &CouplingTable,
    keep: impl Fn(usize, usize) -> bool,
) -> Result<DenseOperator> {
    let n = couplings.num_sites();
    if n > MAX_SPIN_SITES {
        let sectors: f64 = (0..=n).map(|w| binomial(n, w).powi(2)).sum();
        return Err(Error::Capacity {
            what: "Heisenberg exact diagonalization",
            requested: n,
            limit: MAX_SPIN_SITES,
            estimate: format!("about {:.1} GB of sector blocks", sectors * 8.0 / 1e9),
        });
    }
    if n == 0 {
        return Err(Error::Validation("Heisenberg chain needs at least one site".into()));
    }
    let terms: Vec<(usize, usize, f64)> = couplings
        .entries()
        .iter()
        .copied()
        .filter(|&(i, j, v)| v != 0.0 && keep(i, j))
        .map(|(i, j, v)| (site_bit(n, i), site_bit(n, j), v))
        .collect();
    DenseOperator::from_conserving_fn(n, BasisKind::Spin, |s| {
        let mut col = Vec::with_capacity(terms.len() + 1);
        let mut diag = 0.0;
        for &(bi, bj, v) in &terms {
            let aligned = (s & bi != 0) == (s & bj != 0);
            if aligned {
                diag += 0.25 * v;
            } else {
                diag -= 0.25 * v;
                col.push((s ^ bi ^ bj, 0.5 * v));
            }
        }
        col.push((s, diag));
        col
    })
}

/// Checks `[H, S^z_total] = 0`: every stored block must live in one
/// magnetization sector.
pub fn conserves_magnetization(op: &DenseOperator) -> bool {
    op.blocks().iter().all(|b| {
        let w = b.basis.first().map(|s| s.count_ones());
        b.basis.iter().all(|s| Some(s.count_ones()) == w)
    })
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(n: usize, j: f64) -> CouplingTable {
        let entries = (0..n)
            .flat_map(|i| (i + 1..n).map(move |k| (i, k, j)))
            .collect();
        CouplingTable::from_entries(n, entries).unwrap()
    }

    #[test]
    fn two_site_singlet_triplet() {
        let h = heisenberg_dense(&uniform(2, 1.0)).unwrap();
        let ev = h.eigenvalues().unwrap();
        let expected = [-0.75, 0.25, 0.25, 0.25];
        for (a, b) in ev.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14);
        }
        assert!(conserves_magnetization(&h));
        assert!(h.hermiticity_error() == 0.0);
    }

    #[test]
    fn three_site_multiplets() {
        // Uniform all-to-all: H = (S_tot^2 - 9/4) / 2 -> S=1/2 (x2, dim 2 each) at -3/4, S=3/2 at 3/4.
        let h = heisenberg_dense(&uniform(3, 1.0)).unwrap();
        let ev = h.eigenvalues().unwrap();
        for v in &ev[..4] {
            assert!((v + 0.75).abs() < 1e-13);
        }
        for v in &ev[4..] {
            assert!((v - 0.75).abs() < 1e-13);
        }
    }

    #[test]
    fn boundary_term_keeps_only_crossing_pairs() {
        let table = CouplingTable::from_entries(3, vec![(0, 1, 1.0), (1, 2, 2.0), (0, 2, 0.5)]).unwrap();
        let p = Bipartition::new(3, vec![0]).unwrap();
        let hb = heisenberg_boundary(&table, &p).unwrap();
        let only = CouplingTable::from_entries(3, vec![(0, 1, 1.0), (0, 2, 0.5)]).unwrap();
        let expected = heisenberg_dense(&only).unwrap();
        assert!((hb.to_dense() - expected.to_dense()).norm_max() == 0.0);
    }

    #[test]
    fn mirrored_sectors_reconstruct_h() {
        let table = CouplingTable::from_entries(
            5,
            vec![(0, 1, 0.9), (0, 3, 0.2), (1, 2, -0.4), (2, 4, 1.1), (3, 4, 0.6), (1, 4, 0.3)],
        )
        .unwrap();
        let h = heisenberg_dense(&table).unwrap();
        let rebuilt = h.eigen().unwrap().map(|e| e);
        assert!((rebuilt.to_dense() - h.to_dense()).norm_max() < 1e-13);
    }

    #[test]
    fn capacity_error_past_cap() {
        let table = CouplingTable::from_entries(MAX_SPIN_SITES + 1, vec![]).unwrap();
        assert!(matches!(heisenberg_dense(&table), Err(Error::Capacity { .. })));
    }
}
