//! Vertices of `K(n, k)` as bitmasks, and adjacency predicates.
//!
//! Bit `i` of a mask selects position `i` of the ground set. For distinct
//! `k`-subsets `A` and `B`:
//!
//! * `K(n, k)`: adjacent iff `A ∩ B = ∅`.
//! * `K²(n, k)`: adjacent iff `A ∩ B = ∅` or `|A ∩ B| >= 3k - n`.
//! * `J^m(n, k)`: adjacent iff `k - m <= |A ∩ B| <= k - 1`.
//!
//! Edges are never stored; every predicate depends only on `|A ∩ B|`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_GROUND: usize = 62;
/// Vertex-count guard for enumeration.
pub const MAX_VERTICES: u128 = 200_000;
/// Vertex-count guard for full regularity scans.
pub const MAX_DEGREE_SCAN: u128 = 20_000;

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KSubset {
    mask: u64,
    n: u32,
}

impl KSubset {
    pub fn new(mask: u64, n: usize) -> Result<Self> {
        if n > MAX_GROUND || mask >> n != 0 || mask == 0 {
            return Err(Error::InvalidParameters(format!(
                "mask {mask:#b} is not a nonempty subset of {n} positions"
            )));
        }
        Ok(KSubset { mask, n: n as u32 })
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        self.mask
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Ground-set positions in ascending order.
    pub fn positions(&self) -> impl Iterator<Item = usize> {
        let mut rest = self.mask;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(bit)
            }
        })
    }

    #[inline]
    pub fn intersect_size(&self, other: &KSubset) -> usize {
        (self.mask & other.mask).count_ones() as usize
    }
}

/// Masks with exactly `k` of the low `n` bits set, in increasing order.
#[derive(Clone, Debug)]
pub struct KSubsets {
    next: u64,
    limit: u64,
}

impl KSubsets {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n <= MAX_GROUND && k >= 1 && k <= n);
        KSubsets {
            next: (1u64 << k) - 1,
            limit: 1u64 << n,
        }
    }
}

impl Iterator for KSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let current = self.next;
        if current >= self.limit {
            return None;
        }
        // Gosper's hack
        let low = current & current.wrapping_neg();
        let ripple = current + low;
        self.next = (((ripple ^ current) >> 2) / low) | ripple;
        Some(current)
    }
}

pub fn enumerate_vertices(n: usize, k: usize) -> Result<Vec<KSubset>> {
    if k == 0 || k > n || n > MAX_GROUND {
        return Err(Error::InvalidParameters(format!(
            "need 0 < k <= n <= {MAX_GROUND}, got n = {n}, k = {k}"
        )));
    }
    let count = binomial(n, k);
    if count > MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "C(n, k)",
            size: count,
            limit: MAX_VERTICES,
        });
    }
    Ok(KSubsets::new(n, k)
        .map(|mask| KSubset { mask, n: n as u32 })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Variant {
    Kneser,
    KneserSquare,
    JohnsonPower { m: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraphSpec")]
pub struct GraphSpec {
    pub n: usize,
    pub k: usize,
    pub variant: Variant,
}

#[derive(Deserialize)]
struct RawGraphSpec {
    n: usize,
    k: usize,
    variant: Variant,
}

impl TryFrom<RawGraphSpec> for GraphSpec {
    type Error = Error;

    fn try_from(raw: RawGraphSpec) -> Result<Self> {
        GraphSpec::new(raw.n, raw.k, raw.variant)
    }
}

impl GraphSpec {
    pub fn new(n: usize, k: usize, variant: Variant) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        if k == 0 || k > n || n > MAX_GROUND {
            return bad(format!(
                "need 0 < k <= n <= {MAX_GROUND}, got n = {n}, k = {k}"
            ));
        }
        match variant {
            Variant::Kneser | Variant::KneserSquare if n < 2 * k => {
                bad(format!("Kneser graphs need n >= 2k, got n = {n}, k = {k}"))
            }
            Variant::JohnsonPower { m } if m == 0 || m > k => bad(format!(
                "Johnson power needs 1 <= m <= k, got m = {m}, k = {k}"
            )),
            _ => Ok(GraphSpec { n, k, variant }),
        }
    }

    pub fn kneser(n: usize, k: usize) -> Result<Self> {
        Self::new(n, k, Variant::Kneser)
    }

    pub fn kneser_square(n: usize, k: usize) -> Result<Self> {
        Self::new(n, k, Variant::KneserSquare)
    }

    pub fn johnson_power(n: usize, k: usize, m: usize) -> Result<Self> {
        Self::new(n, k, Variant::JohnsonPower { m })
    }

    pub fn vertex_count(&self) -> u128 {
        binomial(self.n, self.k)
    }

    /// Adjacency of two distinct vertices as a function of `|A ∩ B|`.
    #[inline]
    pub fn adjacent_by_intersection(&self, s: usize) -> bool {
        let (n, k, s) = (self.n as i64, self.k as i64, s as i64);
        match self.variant {
            Variant::Kneser => s == 0,
            Variant::KneserSquare => s == 0 || s >= 3 * k - n,
            Variant::JohnsonPower { m } => k - m as i64 <= s && s < k,
        }
    }

    /// Lookup table over `|A ∩ B|` in `0..k` (distinct vertices only).
    pub fn intersection_table(&self) -> Vec<bool> {
        (0..self.k)
            .map(|s| self.adjacent_by_intersection(s))
            .collect()
    }

    /// Irreflexive: `adjacent(A, A)` is false.
    pub fn adjacent(&self, a: &KSubset, b: &KSubset) -> bool {
        a != b && self.adjacent_by_intersection(a.intersect_size(b))
    }

    /// Verifies that every vertex has the same degree and returns it.
    pub fn degree_check(&self) -> Result<usize> {
        let count = self.vertex_count();
        if count > MAX_DEGREE_SCAN {
            return Err(Error::TooLarge {
                what: "C(n, k)",
                size: count,
                limit: MAX_DEGREE_SCAN,
            });
        }
        let vertices = enumerate_vertices(self.n, self.k)?;
        let mut expected = None;
        for (i, a) in vertices.iter().enumerate() {
            let degree = vertices.iter().filter(|b| self.adjacent(a, b)).count();
            match expected {
                None => expected = Some(degree),
                Some(e) if e != degree => {
                    return Err(Error::NotRegular {
                        vertex: i,
                        degree,
                        expected: e,
                    })
                }
                _ => {}
            }
        }
        Ok(expected.unwrap_or(0))
    }
}

/// Whether distinct `A`, `B` share a common neighbor in `K(n, k)`:
/// `k - r <= |A ∩ B| <= k - 1` with `r = n - 2k`.
pub fn distance2_related(n: usize, k: usize, a: &KSubset, b: &KSubset) -> bool {
    a != b && distance2_by_intersection(n, k, a.intersect_size(b))
}

#[inline]
pub fn distance2_by_intersection(n: usize, k: usize, s: usize) -> bool {
    let (n, k, s) = (n as i64, k as i64, s as i64);
    let r = n - 2 * k;
    k - r <= s && s < k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ks(mask: u64, n: usize) -> KSubset {
        KSubset::new(mask, n).unwrap()
    }

    #[test]
    fn enumeration() {
        let masks: Vec<u64> = enumerate_vertices(4, 2)
            .unwrap()
            .iter()
            .map(|v| v.mask())
            .collect();
        assert_eq!(masks, [0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(enumerate_vertices(8, 3).unwrap().len(), 56);
        let big = enumerate_vertices(16, 7).unwrap();
        assert_eq!(big.len(), 11440);
        assert!(big.windows(2).all(|w| w[0].mask() < w[1].mask()));
        assert!(big.iter().all(|v| v.k() == 7));
        assert!(matches!(
            enumerate_vertices(40, 20),
            Err(Error::TooLarge { .. })
        ));
        assert!(enumerate_vertices(4, 0).is_err());
        assert_eq!(enumerate_vertices(62, 1).unwrap().len(), 62);
    }

    #[test]
    fn full_width_enumeration_terminates() {
        let v: Vec<u64> = KSubsets::new(62, 61).collect();
        assert_eq!(v.len(), 62);
    }

    #[test]
    fn intersections() {
        let a = ks(0b0111, 4);
        assert_eq!(a.intersect_size(&a), 3);
        assert_eq!(ks(0b0011, 4).intersect_size(&ks(0b1100, 4)), 0);
        assert_eq!(a.intersect_size(&ks(0b1101, 4)), 2);
        assert_eq!(ks(0b1010, 4).positions().collect::<Vec<_>>(), [1, 3]);
    }

    #[test]
    fn degenerate_squares() {
        // n = 2k: perfect matching
        let spec = GraphSpec::kneser_square(6, 3).unwrap();
        let vs = enumerate_vertices(6, 3).unwrap();
        for a in &vs {
            for b in &vs {
                assert_eq!(spec.adjacent(a, b), a != b && a.intersect_size(b) == 0);
            }
        }
        // n >= 3k - 1: complete
        let spec = GraphSpec::kneser_square(5, 2).unwrap();
        let vs = enumerate_vertices(5, 2).unwrap();
        for a in &vs {
            for b in &vs {
                assert_eq!(spec.adjacent(a, b), a != b);
            }
        }
    }

    #[test]
    fn johnson_adjacency() {
        let j1 = GraphSpec::johnson_power(6, 3, 1).unwrap();
        assert!(j1.adjacent(&ks(0b000111, 6), &ks(0b001011, 6)));
        assert!(!j1.adjacent(&ks(0b000111, 6), &ks(0b011001, 6)));
        assert!(GraphSpec::johnson_power(6, 3, 0).is_err());
        assert!(GraphSpec::johnson_power(6, 3, 4).is_err());
        assert!(GraphSpec::kneser(5, 3).is_err());
    }

    #[test]
    fn distance_two() {
        let (a, b) = (ks(0b0000111, 7), ks(0b0001011, 7));
        assert!(distance2_related(7, 3, &a, &b));
        assert!(!distance2_related(7, 3, &a, &ks(0b0111000, 7)));
        assert!(!distance2_related(7, 3, &a, &a));
        assert!(!distance2_by_intersection(10, 4, 1));
        assert!(distance2_by_intersection(10, 4, 2));
    }

    #[test]
    fn square_is_kneser_plus_distance_two() {
        for (n, k) in [(7, 3), (8, 3), (10, 4)] {
            let square = GraphSpec::kneser_square(n, k).unwrap();
            let kneser = GraphSpec::kneser(n, k).unwrap();
            let johnson = GraphSpec::johnson_power(n, k, n - 2 * k).unwrap();
            let vs = enumerate_vertices(n, k).unwrap();
            for a in &vs {
                for b in &vs {
                    let d2 = distance2_related(n, k, a, b);
                    assert_eq!(square.adjacent(a, b), kneser.adjacent(a, b) || d2);
                    assert_eq!(johnson.adjacent(a, b), d2);
                    assert_eq!(square.adjacent(a, b), square.adjacent(b, a));
                }
                assert!(!square.adjacent(a, a) && !johnson.adjacent(a, a));
            }
        }
    }

    #[test]
    fn regularity() {
        assert_eq!(
            GraphSpec::kneser_square(7, 3)
                .unwrap()
                .degree_check()
                .unwrap(),
            16
        );
        // complete graph on 56 vertices
        assert_eq!(
            GraphSpec::kneser_square(8, 3)
                .unwrap()
                .degree_check()
                .unwrap(),
            55
        );
        assert_eq!(GraphSpec::kneser(8, 4).unwrap().degree_check().unwrap(), 1);
        for k in 2..=6usize {
            for r in 1..k {
                let n = 2 * k + r;
                if binomial(n, k) > 3000 {
                    continue;
                }
                let spec = GraphSpec::kneser_square(n, k).unwrap();
                let deg = spec.degree_check().unwrap() as u128;
                // vertices meeting a fixed A in exactly s points: C(k, s) C(n - k, k - s)
                let counted: u128 = (0..k)
                    .filter(|&s| spec.adjacent_by_intersection(s))
                    .map(|s| binomial(k, s) * binomial(n - k, k - s))
                    .sum();
                assert_eq!(deg, counted, "K²({n},{k})");
                let square_of_kneser_degree = binomial(k + r, r) * binomial(k + r, r);
                if r == 1 {
                    assert_eq!(deg, square_of_kneser_degree);
                } else {
                    assert!(deg < square_of_kneser_degree);
                }
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(16, 7), 11440);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial(62, 31), 465428353255261088);
    }
}
