//! Block-diagonal dense operators on `2^N`-dimensional product spaces.
//!
//! Basis state `s` encodes site `k` in bit `N - 1 - k`, so site 0 is the most
//! significant bit. An operator is stored as dense blocks over disjoint sets
//! of basis states; entries between different blocks are exactly zero. Both
//! Hamiltonians implemented here conserve the number of set bits, which gives
//! the natural block structure.

use faer::Mat;

use crate::error::{Error, Result};
use crate::linalg::symmetric_eigen;

/// What the bits of a basis state mean. Fermionic operators carry the
/// Jordan–Wigner sign convention with modes ordered by site index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    /// Bit set = spin up.
    Spin,
    /// Bit set = mode occupied; `|s> = prod_{k ascending} (c_k^dag)^{s_k} |0>`.
    Fermion,
}

#[derive(Debug, Clone)]
pub struct Block {
    pub basis: Vec<usize>,
    pub matrix: Mat<f64>,
}

/// Real block-diagonal operator; all implemented models are real in the
/// product basis.
#[derive(Debug, Clone)]
pub struct DenseOperator {
    num_sites: usize,
    kind: BasisKind,
    blocks: Vec<Block>,
}

/// Position of `site`'s bit inside a basis index.
#[inline]
pub fn site_bit(num_sites: usize, site: usize) -> usize {
    1 << (num_sites - 1 - site)
}

impl DenseOperator {
    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    pub fn dim(&self) -> usize {
        1 << self.num_sites
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn from_blocks(num_sites: usize, kind: BasisKind, blocks: Vec<Block>) -> Result<Self> {
        let dim = 1usize << num_sites;
        let mut seen = vec![false; dim];
        for b in &blocks {
            if b.matrix.nrows() != b.basis.len() || b.matrix.ncols() != b.basis.len() {
                return Err(Error::Dimension("block matrix does not match its basis".into()));
            }
            for &s in &b.basis {
                if s >= dim || seen[s] {
                    return Err(Error::Validation(format!(
                        "basis state {s} missing range or repeated across blocks"
                    )));
                }
                seen[s] = true;
            }
        }
        if seen.iter().any(|&v| !v) {
            return Err(Error::Validation("blocks do not cover the full basis".into()));
        }
        Ok(DenseOperator {
            num_sites,
            kind,
            blocks,
        })
    }

    /// Splits a full matrix into the connected components of its nonzero
    /// pattern.
    pub fn from_dense(num_sites: usize, kind: BasisKind, m: &Mat<f64>) -> Result<Self> {
        let dim = 1usize << num_sites;
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::Dimension(format!(
                "expected a {dim}x{dim} matrix, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let mut parent: Vec<usize> = (0..dim).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for j in 0..dim {
            for i in 0..dim {
                if i != j && (m[(i, j)] != 0.0 || m[(j, i)] != 0.0) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; dim];
        for s in 0..dim {
            let r = find(&mut parent, s);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(s);
        }
        let blocks = groups
            .into_iter()
            .map(|basis| {
                let matrix = Mat::from_fn(basis.len(), basis.len(), |p, q| m[(basis[p], basis[q])]);
                Block { basis, matrix }
            })
            .collect();
        Ok(DenseOperator {
            num_sites,
            kind,
            blocks,
        })
    }

    /// Builds a set-bit-conserving operator column by column: `column(s)`
    /// returns the nonzero `(t, <t|O|s>)`.
    pub fn from_conserving_fn(
        num_sites: usize,
        kind: BasisKind,
        mut column: impl FnMut(usize) -> Vec<(usize, f64)>,
    ) -> Result<Self> {
        let dim = 1usize << num_sites;
        let mut sectors: Vec<Vec<usize>> = vec![Vec::new(); num_sites + 1];
        let mut rank = vec![0usize; dim];
        for s in 0..dim {
            let w = s.count_ones() as usize;
            rank[s] = sectors[w].len();
            sectors[w].push(s);
        }
        let mut blocks = Vec::with_capacity(num_sites + 1);
        for basis in sectors {
            let mut matrix = Mat::<f64>::zeros(basis.len(), basis.len());
            for (q, &s) in basis.iter().enumerate() {
                for (t, v) in column(s) {
                    if t >= dim || t.count_ones() != s.count_ones() {
                        return Err(Error::Validation(format!(
                            "operator maps state {s} outside its sector"
                        )));
                    }
                    matrix[(rank[t], q)] += v;
                }
            }
            blocks.push(Block { basis, matrix });
        }
        Ok(DenseOperator {
            num_sites,
            kind,
            blocks,
        })
    }

    pub fn to_dense(&self) -> Mat<f64> {
        let mut m = Mat::zeros(self.dim(), self.dim());
        for b in &self.blocks {
            for (q, &t) in b.basis.iter().enumerate() {
                for (p, &s) in b.basis.iter().enumerate() {
                    m[(s, t)] = b.matrix[(p, q)];
                }
            }
        }
        m
    }

    pub fn trace(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| (0..b.basis.len()).map(|k| b.matrix[(k, k)]).sum::<f64>())
            .sum()
    }

    /// `max |O - O^T|`.
    pub fn hermiticity_error(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| (&b.matrix - b.matrix.transpose()).norm_max())
            .fold(0.0, f64::max)
    }

    /// Block-wise eigendecomposition. A block that is the exact bit-flip
    /// image of an earlier one (as for spin-flip symmetric Hamiltonians)
    /// reuses that decomposition with its rows reversed.
    pub fn eigen(&self) -> Result<Spectrum> {
        let all = self.dim() - 1;
        let mut by_first = std::collections::HashMap::new();
        let mut blocks: Vec<BlockEigen> = Vec::with_capacity(self.blocks.len());
        for (idx, b) in self.blocks.iter().enumerate() {
            let d = b.basis.len();
            let mirror = b
                .basis
                .last()
                .and_then(|&last| by_first.get(&(last ^ all)).copied())
                .filter(|&c: &usize| {
                    let other = &self.blocks[c];
                    other.basis.len() == d
                        && (0..d).all(|p| other.basis[d - 1 - p] == b.basis[p] ^ all)
                        && (0..d).all(|q| (0..d).all(|p| other.matrix[(d - 1 - p, d - 1 - q)] == b.matrix[(p, q)]))
                });
            let eig = match mirror {
                Some(c) => {
                    let src = &blocks[c];
                    BlockEigen {
                        basis: b.basis.clone(),
                        values: src.values.clone(),
                        vectors: Mat::from_fn(d, d, |p, k| src.vectors[(d - 1 - p, k)]),
                    }
                }
                None => {
                    let (values, vectors) = symmetric_eigen(b.matrix.as_ref())?;
                    BlockEigen {
                        basis: b.basis.clone(),
                        values,
                        vectors,
                    }
                }
            };
            if let Some(&first) = b.basis.first() {
                by_first.insert(first, idx);
            }
            blocks.push(eig);
        }
        Ok(Spectrum {
            num_sites: self.num_sites,
            kind: self.kind,
            blocks,
        })
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let mut all = Vec::with_capacity(self.dim());
        for b in &self.blocks {
            all.extend(crate::linalg::symmetric_eigenvalues(b.matrix.as_ref())?);
        }
        all.sort_by(f64::total_cmp);
        Ok(all)
    }

    /// Largest absolute eigenvalue.
    pub fn operator_norm(&self) -> Result<f64> {
        Ok(self
            .eigenvalues()?
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs())))
    }

    /// `tr(self * other)` for operators on the same space.
    pub fn trace_product(&self, other: &DenseOperator) -> Result<f64> {
        if other.num_sites != self.num_sites {
            return Err(Error::Dimension("operators act on different spaces".into()));
        }
        let dense = other.to_dense();
        let mut acc = 0.0;
        for b in &self.blocks {
            for (q, &t) in b.basis.iter().enumerate() {
                for (p, &s) in b.basis.iter().enumerate() {
                    acc += b.matrix[(p, q)] * dense[(t, s)];
                }
            }
        }
        Ok(acc)
    }

    /// Reduced operator on `keep` (sorted ascending, in the kept order).
    ///
    /// For fermionic operators this is the partial trace in the
    /// Jordan–Wigner basis; it equals the fermionic reduced state when the
    /// kept modes precede all traced ones (see [`Self::reorder_modes`]).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DenseOperator> {
        let n = self.num_sites;
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&k| k >= n) {
            return Err(Error::IndexOutOfRange { index: bad, len: n });
        }
        if keep.is_empty() {
            return Err(Error::Validation("partial trace must keep at least one site".into()));
        }
        let k = keep.len();
        let keep_mask: usize = keep.iter().map(|&s| site_bit(n, s)).sum();
        // Kept index of each full basis state.
        let reduced_index = |s: usize| {
            keep.iter()
                .fold(0usize, |acc, &site| (acc << 1) | usize::from(s & site_bit(n, site) != 0))
        };
        let mut out = Mat::<f64>::zeros(1 << k, 1 << k);
        for b in &self.blocks {
            let red: Vec<usize> = b.basis.iter().map(|&s| reduced_index(s)).collect();
            let rest: Vec<usize> = b.basis.iter().map(|&s| s & !keep_mask).collect();
            for q in 0..b.basis.len() {
                for p in 0..b.basis.len() {
                    if rest[p] == rest[q] {
                        out[(red[p], red[q])] += b.matrix[(p, q)];
                    }
                }
            }
        }
        DenseOperator::from_dense(k, self.kind, &out)
    }

    /// Fermionic relabelling: mode `k` of the result is mode `order[k]` here.
    ///
    /// Each basis state picks up the sign of the permutation that reorders
    /// its creation operators.
    pub fn reorder_modes(&self, order: &[usize]) -> Result<DenseOperator> {
        let n = self.num_sites;
        check_permutation(order, n)?;
        let perm = mode_permutation(n, order);
        let fermion = self.kind == BasisKind::Fermion;
        let map = |s: usize| -> (usize, f64) {
            let (t, sign) = perm[s];
            (t, if fermion { sign } else { 1.0 })
        };
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mapped: Vec<(usize, f64)> = b.basis.iter().map(|&s| map(s)).collect();
                Block {
                    basis: mapped.iter().map(|&(t, _)| t).collect(),
                    matrix: Mat::from_fn(b.basis.len(), b.basis.len(), |p, q| {
                        mapped[p].1 * mapped[q].1 * b.matrix[(p, q)]
                    }),
                }
            })
            .collect();
        Ok(DenseOperator {
            num_sites: n,
            kind: self.kind,
            blocks,
        })
    }

    /// von Neumann entropy `-tr(rho ln rho)` in nats.
    pub fn entropy(&self) -> Result<f64> {
        let mut total = 0.0;
        for p in self.eigenvalues()? {
            if p < -DENSITY_TOL {
                return Err(Error::Numerical(format!(
                    "density matrix eigenvalue {p:.3e} is negative beyond tolerance"
                )));
            }
            if p > 0.0 {
                total -= p * p.ln();
            }
        }
        Ok(total)
    }

    /// `rho_A (x) rho_B` laid out on the full site ordering.
    pub fn product_of_marginals(&self, a: &[usize], b: &[usize]) -> Result<DenseOperator> {
        let n = self.num_sites;
        let rho_a = self.partial_trace(a)?.to_dense();
        let rho_b = self.partial_trace(b)?.to_dense();
        let idx = |s: usize, sites: &[usize]| {
            sites
                .iter()
                .fold(0usize, |acc, &site| (acc << 1) | usize::from(s & site_bit(n, site) != 0))
        };
        let dim = self.dim();
        let ia: Vec<usize> = (0..dim).map(|s| idx(s, a)).collect();
        let ib: Vec<usize> = (0..dim).map(|s| idx(s, b)).collect();
        let m = Mat::from_fn(dim, dim, |s, t| rho_a[(ia[s], ia[t])] * rho_b[(ib[s], ib[t])]);
        DenseOperator::from_dense(n, self.kind, &m)
    }
}

/// Tolerance on negative density-matrix eigenvalues before they are treated
/// as an error rather than round-off.
pub const DENSITY_TOL: f64 = 1e-10;

/// Image of every basis state under the mode relabelling `order` (new mode
/// `k` is old mode `order[k]`), with the fermionic reordering sign.
pub(crate) fn mode_permutation(n: usize, order: &[usize]) -> Vec<(usize, f64)> {
    (0..1usize << n)
        .map(|s| {
            let mut t = 0usize;
            let mut olds = Vec::with_capacity(n);
            for (new, &old) in order.iter().enumerate() {
                if s & site_bit(n, old) != 0 {
                    t |= site_bit(n, new);
                    olds.push(old);
                }
            }
            let mut inversions = 0usize;
            for x in 0..olds.len() {
                for y in x + 1..olds.len() {
                    inversions += usize::from(olds[x] > olds[y]);
                }
            }
            (t, if inversions % 2 == 1 { -1.0 } else { 1.0 })
        })
        .collect()
}

fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(Error::Validation(format!(
            "mode order has {} entries for {n} modes",
            order.len()
        )));
    }
    for &o in order {
        if o >= n || seen[o] {
            return Err(Error::Validation("mode order is not a permutation".into()));
        }
        seen[o] = true;
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct BlockEigen {
    pub basis: Vec<usize>,
    pub values: Vec<f64>,
    pub vectors: Mat<f64>,
}

/// Eigen-decomposition of a block-diagonal operator, block by block.
#[derive(Debug, Clone)]
pub struct Spectrum {
    num_sites: usize,
    kind: BasisKind,
    blocks: Vec<BlockEigen>,
}

impl Spectrum {
    pub fn blocks(&self) -> &[BlockEigen] {
        &self.blocks
    }

    pub fn ground_energy(&self) -> f64 {
        self.blocks
            .iter()
            .flat_map(|b| b.values.iter().copied())
            .fold(f64::INFINITY, f64::min)
    }

    /// `f(H)` by functional calculus.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> DenseOperator {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let d = b.basis.len();
                let fv: Vec<f64> = b.values.iter().map(|&e| f(e)).collect();
                let scaled = Mat::from_fn(d, d, |i, k| b.vectors[(i, k)] * fv[k]);
                Block {
                    basis: b.basis.clone(),
                    matrix: &scaled * b.vectors.transpose(),
                }
            })
            .collect();
        DenseOperator {
            num_sites: self.num_sites,
            kind: self.kind,
            blocks,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_dense_finds_blocks() {
        let mut m = Mat::<f64>::zeros(4, 4);
        m[(0, 0)] = 1.0;
        m[(1, 2)] = 0.5;
        m[(2, 1)] = 0.5;
        m[(3, 3)] = 2.0;
        let op = DenseOperator::from_dense(2, BasisKind::Spin, &m).unwrap();
        assert_eq!(op.blocks().len(), 3);
        assert!((op.to_dense() - &m).norm_max() == 0.0);
        assert_eq!(op.trace(), 3.0);
    }

    #[test]
    fn partial_trace_of_product_state() {
        // rho_A = diag(0.3, 0.7) on site 0, rho_B = [[0.6, 0.1], [0.1, 0.4]] on site 1.
        let ra = [[0.3, 0.0], [0.0, 0.7]];
        let rb = [[0.6, 0.1], [0.1, 0.4]];
        let m = Mat::from_fn(4, 4, |s, t| ra[s >> 1][t >> 1] * rb[s & 1][t & 1]);
        let op = DenseOperator::from_dense(2, BasisKind::Spin, &m).unwrap();
        let a = op.partial_trace(&[0]).unwrap().to_dense();
        let b = op.partial_trace(&[1]).unwrap().to_dense();
        for i in 0..2 {
            for j in 0..2 {
                assert!((a[(i, j)] - ra[i][j]).abs() < 1e-15);
                assert!((b[(i, j)] - rb[i][j]).abs() < 1e-15);
            }
        }
        let all = op.partial_trace(&[0, 1]).unwrap().to_dense();
        assert!((all - &m).norm_max() < 1e-15);
        let prod = op.product_of_marginals(&[0], &[1]).unwrap().to_dense();
        assert!((prod - &m).norm_max() < 1e-15);
    }

    #[test]
    fn bell_pair_reduces_to_maximally_mixed() {
        // (|01> + |10>)/sqrt2
        let mut m = Mat::<f64>::zeros(4, 4);
        for &s in &[1usize, 2] {
            for &t in &[1usize, 2] {
                m[(s, t)] = 0.5;
            }
        }
        let op = DenseOperator::from_dense(2, BasisKind::Spin, &m).unwrap();
        let r = op.partial_trace(&[1]).unwrap().to_dense();
        assert!((r[(0, 0)] - 0.5).abs() < 1e-15 && (r[(1, 1)] - 0.5).abs() < 1e-15);
        assert_eq!(r[(0, 1)], 0.0);
        assert!(op.entropy().unwrap().abs() < 1e-12);
        assert!((op.partial_trace(&[0]).unwrap().entropy().unwrap() - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn fermionic_swap_sign() {
        // Two modes, |11> = c0^dag c1^dag |0>; swapping labels gives -|11>.
        let m = Mat::from_fn(4, 4, |s, t| if s == 3 || t == 3 { 1.0 } else { 0.0 });
        let op = DenseOperator::from_dense(2, BasisKind::Fermion, &m).unwrap();
        let r = op.reorder_modes(&[1, 0]).unwrap().to_dense();
        assert_eq!(r[(3, 3)], 1.0);
        assert_eq!(r[(3, 1)], -1.0); // |01> <-> |10> swap, sign from |11> only
        assert_eq!(r[(3, 2)], -1.0);
        let spin = DenseOperator::from_dense(2, BasisKind::Spin, &m).unwrap();
        assert_eq!(spin.reorder_modes(&[1, 0]).unwrap().to_dense()[(3, 1)], 1.0);
        assert!(op.reorder_modes(&[0, 0]).is_err());
    }
}
