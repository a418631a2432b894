//! Open-boundary hypercubic lattices in one and two dimensions.
//!
//! Sites are numbered row-major with the first axis slowest, so the first
//! `extent * extent / 2` sites of a square lattice form a half-plane.

use crate::error::{Error, Result};

/// Distance used when reporting displacements `|r|`.
///
/// Couplings always use the Manhattan distance; the metric only changes how
/// sweep distances are measured for scaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Metric {
    #[default]
    Manhattan,
    Euclidean,
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "manhattan" => Ok(Metric::Manhattan),
            "euclidean" => Ok(Metric::Euclidean),
            other => Err(Error::Validation(format!(
                "unknown metric `{other}` (expected manhattan|euclidean)"
            ))),
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Metric::Manhattan => "manhattan",
            Metric::Euclidean => "euclidean",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    dimension: usize,
    extent: usize,
    metric: Metric,
}

/// Lattice displacement; the second component must be zero in 1D.
pub type Offset = [isize; 2];

impl Lattice {
    pub fn new(dimension: usize, extent: usize) -> Result<Self> {
        if dimension != 1 && dimension != 2 {
            return Err(Error::InvalidGeometry(format!(
                "dimension must be 1 or 2, got {dimension}"
            )));
        }
        if extent < 2 {
            return Err(Error::InvalidGeometry(format!(
                "extent must be at least 2, got {extent}"
            )));
        }
        Ok(Lattice {
            dimension,
            extent,
            metric: Metric::Manhattan,
        })
    }

    pub fn chain(extent: usize) -> Result<Self> {
        Self::new(1, extent)
    }

    pub fn square(extent: usize) -> Result<Self> {
        Self::new(2, extent)
    }

    pub fn with_metric(mut self, metric: Metric) -> Self {
        self.metric = metric;
        self
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn extent(&self) -> usize {
        self.extent
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn num_sites(&self) -> usize {
        self.extent.pow(self.dimension as u32)
    }

    fn check(&self, site: usize) -> Result<()> {
        if site < self.num_sites() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: site,
                len: self.num_sites(),
            })
        }
    }

    /// Coordinates of `site`; the unused second axis is 0 in 1D.
    pub fn coords(&self, site: usize) -> Result<[usize; 2]> {
        self.check(site)?;
        Ok(self.coords_unchecked(site))
    }

    fn coords_unchecked(&self, site: usize) -> [usize; 2] {
        match self.dimension {
            1 => [site, 0],
            _ => [site / self.extent, site % self.extent],
        }
    }

    pub fn site(&self, coords: [usize; 2]) -> Result<usize> {
        let in_range = coords[0] < self.extent
            && match self.dimension {
                1 => coords[1] == 0,
                _ => coords[1] < self.extent,
            };
        if !in_range {
            return Err(Error::InvalidGeometry(format!(
                "coordinates {coords:?} outside a {}D lattice of extent {}",
                self.dimension, self.extent
            )));
        }
        Ok(match self.dimension {
            1 => coords[0],
            _ => coords[0] * self.extent + coords[1],
        })
    }

    /// Site reached from `site` by `offset`, if it lies on the lattice.
    pub fn displace(&self, site: usize, offset: Offset) -> Result<usize> {
        let c = self.coords(site)?;
        if self.dimension == 1 && offset[1] != 0 {
            return Err(Error::InvalidGeometry(
                "1D displacement must have a zero second component".into(),
            ));
        }
        let target = [
            c[0] as isize + offset[0],
            c[1] as isize + offset[1],
        ];
        let limit = self.extent as isize;
        let off_lattice = target[0] < 0
            || target[0] >= limit
            || target[1] < 0
            || (self.dimension == 2 && target[1] >= limit);
        if off_lattice {
            return Err(Error::IndexOutOfRange {
                index: (target[0].max(0) as usize) * self.extent + target[1].max(0) as usize,
                len: self.num_sites(),
            });
        }
        self.site([target[0] as usize, target[1] as usize])
    }

    pub fn manhattan_distance(&self, i: usize, j: usize) -> Result<usize> {
        self.check(i)?;
        self.check(j)?;
        Ok(self.manhattan_unchecked(i, j))
    }

    pub(crate) fn manhattan_unchecked(&self, i: usize, j: usize) -> usize {
        let a = self.coords_unchecked(i);
        let b = self.coords_unchecked(j);
        a[0].abs_diff(b[0]) + a[1].abs_diff(b[1])
    }

    /// Distance between two sites under the lattice's configured metric.
    pub fn distance(&self, i: usize, j: usize) -> Result<f64> {
        self.check(i)?;
        self.check(j)?;
        Ok(match self.metric {
            Metric::Manhattan => self.manhattan_unchecked(i, j) as f64,
            Metric::Euclidean => {
                let a = self.coords_unchecked(i);
                let b = self.coords_unchecked(j);
                let dx = a[0].abs_diff(b[0]) as f64;
                let dy = a[1].abs_diff(b[1]) as f64;
                dx.hypot(dy)
            }
        })
    }

    /// Nearest neighbours of `site` under open boundaries.
    pub fn neighbours(&self, site: usize) -> Vec<usize> {
        let offsets: &[Offset] = match self.dimension {
            1 => &[[-1, 0], [1, 0]],
            _ => &[[-1, 0], [1, 0], [0, -1], [0, 1]],
        };
        offsets
            .iter()
            .filter_map(|&o| self.displace(site, o).ok())
            .collect()
    }

    /// Half split along the first axis; requires an even extent.
    pub fn half_bipartition(&self) -> Result<Bipartition> {
        if self.extent % 2 != 0 {
            return Err(Error::InvalidPartition(format!(
                "half split needs an even extent, got {}",
                self.extent
            )));
        }
        let half = self.num_sites() / 2;
        Bipartition::new(self.num_sites(), (0..half).collect())
    }

    /// Sites of A that have a nearest neighbour in B.
    pub fn boundary(&self, partition: &Bipartition) -> Result<BoundarySet> {
        self.check_partition(partition)?;
        let sites = partition
            .a()
            .iter()
            .copied()
            .filter(|&i| self.neighbours(i).iter().any(|&j| partition.contains_b(j)))
            .collect();
        Ok(BoundarySet { sites })
    }

    pub fn boundary_size(&self, partition: &Bipartition) -> Result<usize> {
        Ok(self.boundary(partition)?.size())
    }

    /// Exact `sum_{i in A} sum_{j in B} d_ij^(-exponent)` with Manhattan `d`.
    pub fn boundary_double_sum(&self, partition: &Bipartition, exponent: f64) -> Result<f64> {
        if !(exponent > 0.0) || !exponent.is_finite() {
            return Err(Error::Validation(format!(
                "exponent must be positive and finite, got {exponent}"
            )));
        }
        self.check_partition(partition)?;
        if partition.a().is_empty() || partition.b().is_empty() {
            return Err(Error::InvalidPartition("both sides must be nonempty".into()));
        }
        // Sum by distance histogram; the number of distinct distances is small.
        let max_d = self.dimension * (self.extent - 1);
        let mut counts = vec![0u64; max_d + 1];
        for &i in partition.a() {
            for &j in partition.b() {
                counts[self.manhattan_unchecked(i, j)] += 1;
            }
        }
        if counts[0] > 0 {
            return Err(Error::InvalidPartition("A and B overlap".into()));
        }
        Ok(counts
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .map(|(d, &c)| c as f64 * (d as f64).powf(-exponent))
            .sum())
    }

    fn check_partition(&self, partition: &Bipartition) -> Result<()> {
        if partition.num_sites() != self.num_sites() {
            return Err(Error::InvalidPartition(format!(
                "partition covers {} sites but lattice has {}",
                partition.num_sites(),
                self.num_sites()
            )));
        }
        Ok(())
    }
}

/// Complementary split of `0..num_sites` into A and B, both kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    a: Vec<usize>,
    b: Vec<usize>,
    in_a: Vec<bool>,
}

impl Bipartition {
    pub fn new(num_sites: usize, mut a: Vec<usize>) -> Result<Self> {
        a.sort_unstable();
        let mut in_a = vec![false; num_sites];
        for &i in &a {
            if i >= num_sites {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: num_sites,
                });
            }
            if in_a[i] {
                return Err(Error::InvalidPartition(format!("site {i} listed twice")));
            }
            in_a[i] = true;
        }
        let b = (0..num_sites).filter(|&i| !in_a[i]).collect();
        Ok(Bipartition { a, b, in_a })
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn num_sites(&self) -> usize {
        self.in_a.len()
    }

    pub fn contains_a(&self, site: usize) -> bool {
        self.in_a.get(site).copied().unwrap_or(false)
    }

    pub fn contains_b(&self, site: usize) -> bool {
        site < self.in_a.len() && !self.in_a[site]
    }

    /// A followed by B; the mode order assumed by the partial time reversal.
    pub fn ordering(&self) -> Vec<usize> {
        self.a.iter().chain(self.b.iter()).copied().collect()
    }

    /// True when A is exactly the leading block `0..|A|`.
    pub fn is_leading_block(&self) -> bool {
        self.a.iter().enumerate().all(|(k, &i)| k == i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundarySet {
    sites: Vec<usize>,
}

impl BoundarySet {
    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn size(&self) -> usize {
        self.sites.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn construction_counts_sites() {
        assert_eq!(Lattice::chain(4).unwrap().num_sites(), 4);
        assert_eq!(Lattice::square(3).unwrap().num_sites(), 9);
        assert_eq!(Lattice::square(40).unwrap().num_sites(), 1600);
        assert!(matches!(Lattice::chain(1), Err(Error::InvalidGeometry(_))));
        assert!(matches!(Lattice::new(3, 4), Err(Error::InvalidGeometry(_))));
    }

    #[test]
    fn manhattan_examples() {
        let chain = Lattice::chain(10).unwrap();
        assert_eq!(chain.manhattan_distance(3, 7).unwrap(), 4);
        let sq = Lattice::square(40).unwrap();
        let o = sq.site([0, 0]).unwrap();
        let p = sq.site([2, 3]).unwrap();
        assert_eq!(sq.manhattan_distance(o, p).unwrap(), 5);
        let origin = sq.site([10, 10]).unwrap();
        for r in 1..20 {
            let t = sq.displace(origin, [r, r]).unwrap();
            assert_eq!(sq.manhattan_distance(origin, t).unwrap(), 2 * r as usize);
        }
        assert!(matches!(
            chain.manhattan_distance(0, 10),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn euclidean_metric_on_diagonal() {
        let sq = Lattice::square(8).unwrap().with_metric(Metric::Euclidean);
        let o = sq.site([1, 1]).unwrap();
        let t = sq.displace(o, [3, 3]).unwrap();
        assert!((sq.distance(o, t).unwrap() - 3.0 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn half_splits() {
        let p = Lattice::chain(4).unwrap().half_bipartition().unwrap();
        assert_eq!(p.a(), &[0, 1]);
        assert_eq!(p.b(), &[2, 3]);
        let p = Lattice::square(4).unwrap().half_bipartition().unwrap();
        assert_eq!((p.a().len(), p.b().len()), (8, 8));
        let p = Lattice::chain(1000).unwrap().half_bipartition().unwrap();
        assert_eq!(p.a().len(), 500);
        assert!(matches!(
            Lattice::chain(5).unwrap().half_bipartition(),
            Err(Error::InvalidPartition(_))
        ));
    }

    #[test]
    fn boundary_sizes() {
        for n in [2, 4, 10, 64] {
            let l = Lattice::chain(n).unwrap();
            assert_eq!(l.boundary_size(&l.half_bipartition().unwrap()).unwrap(), 1);
        }
        let l = Lattice::square(4).unwrap();
        assert_eq!(l.boundary_size(&l.half_bipartition().unwrap()).unwrap(), 4);
        let l = Lattice::square(40).unwrap();
        assert_eq!(l.boundary_size(&l.half_bipartition().unwrap()).unwrap(), 40);
    }

    #[test]
    fn boundary_members_touch_b() {
        let l = Lattice::square(6).unwrap();
        let p = Bipartition::new(36, vec![0, 1, 6, 7, 14, 35]).unwrap();
        let boundary = l.boundary(&p).unwrap();
        for &i in p.a() {
            let touches = l.neighbours(i).iter().any(|&j| p.contains_b(j));
            assert_eq!(boundary.sites().contains(&i), touches);
        }
    }

    #[test]
    fn double_sum_examples() {
        let l = Lattice::chain(4).unwrap();
        let p = l.half_bipartition().unwrap();
        // brute force: pairs (1,2) d=1, (0,2) d=2, (1,3) d=2, (0,3) d=3
        let expected = 1.0 + 1.0 / 16.0 + 1.0 / 16.0 + 1.0 / 81.0;
        assert!((l.boundary_double_sum(&p, 4.0).unwrap() - expected).abs() < 1e-14);
        assert!((expected - 1.137346).abs() < 1e-6);

        let l = Lattice::chain(2).unwrap();
        let p = l.half_bipartition().unwrap();
        assert_eq!(l.boundary_double_sum(&p, 2.0).unwrap(), 1.0);
    }

    #[test]
    fn double_sum_converges_above_threshold() {
        let sum = |n: usize, e: f64| {
            let l = Lattice::chain(n).unwrap();
            l.boundary_double_sum(&l.half_bipartition().unwrap(), e).unwrap()
        };
        let ratio = sum(1024, 3.0) / sum(512, 3.0);
        assert!((ratio - 1.0).abs() < 0.05, "ratio {ratio}");
    }

    #[test]
    fn double_sum_area_dichotomy() {
        // 1D: exponent > 2 saturates, exponent < 2 keeps growing.
        let ratio = |d: usize, n: usize, e: f64| {
            let l = Lattice::new(d, n).unwrap();
            let p = l.half_bipartition().unwrap();
            l.boundary_double_sum(&p, e).unwrap() / l.boundary_size(&p).unwrap() as f64
        };
        let grow: Vec<f64> = [64, 128, 256, 512].iter().map(|&n| ratio(1, n, 1.5)).collect();
        assert!(grow.windows(2).all(|w| w[1] > w[0] * 1.05), "{grow:?}");
        let flat: Vec<f64> = [64, 128, 256, 512].iter().map(|&n| ratio(1, n, 3.0)).collect();
        assert!(flat.windows(2).all(|w| w[1] / w[0] < 1.01), "{flat:?}");
        let grow2: Vec<f64> = [8, 16, 32].iter().map(|&n| ratio(2, n, 2.0)).collect();
        assert!(grow2.windows(2).all(|w| w[1] > w[0] * 1.05), "{grow2:?}");
        let flat2: Vec<f64> = [8, 16, 32].iter().map(|&n| ratio(2, n, 4.0)).collect();
        // Saturating with a 1/L finite-size correction.
        assert!(flat2[2] - flat2[1] < 0.75 * (flat2[1] - flat2[0]), "{flat2:?}");
        assert!(flat2[2] / flat2[1] < 1.05, "{flat2:?}");
    }

    #[test]
    fn double_sum_rejects_overlap_and_bad_exponent() {
        let l = Lattice::chain(4).unwrap();
        let p = l.half_bipartition().unwrap();
        assert!(l.boundary_double_sum(&p, 0.0).is_err());
        let empty_b = Bipartition::new(4, vec![0, 1, 2, 3]).unwrap();
        assert!(matches!(
            l.boundary_double_sum(&empty_b, 2.0),
            Err(Error::InvalidPartition(_))
        ));
        assert!(Bipartition::new(4, vec![1, 1]).is_err());
    }

    #[test]
    fn double_sum_monotone_in_exponent() {
        let l = Lattice::square(6).unwrap();
        let p = l.half_bipartition().unwrap();
        let values: Vec<f64> = (1..8)
            .map(|k| l.boundary_double_sum(&p, k as f64 * 0.5).unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[1] < w[0]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn coordinate_round_trip(dim in 1usize..=2, extent in 2usize..30, seed in any::<usize>()) {
            let l = Lattice::new(dim, extent).unwrap();
            let site = seed % l.num_sites();
            prop_assert_eq!(l.site(l.coords(site).unwrap()).unwrap(), site);
        }

        #[test]
        fn manhattan_is_a_metric(extent in 2usize..25, i in any::<usize>(), j in any::<usize>(), k in any::<usize>()) {
            let l = Lattice::square(extent).unwrap();
            let n = l.num_sites();
            let (i, j, k) = (i % n, j % n, k % n);
            let d = |a, b| l.manhattan_distance(a, b).unwrap();
            prop_assert_eq!(d(i, j), d(j, i));
            prop_assert_eq!(d(i, j) == 0, i == j);
            prop_assert!(d(i, k) <= d(i, j) + d(j, k));
        }
    }
}
