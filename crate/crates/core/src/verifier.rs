//! Exhaustive certification of colorings, plus exact and greedy chromatic
//! numbers for tiny instances.
//!
//! [`verify_table`] scans every unordered vertex pair. The pair predicate
//! depends only on `|A ∩ B|`, so it is reduced to a bit table indexed by
//! the popcount of `A & B`. Rows are split across workers and merged by
//! summing counts and keeping the smallest violating pair, so the report
//! does not depend on the worker count.

use std::cmp::Reverse;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{color_indices, distinct_count, ColorVector, GroundSet};
use crate::error::{Error, Result};
use crate::esym::{esym_naive, esym_prefix, NAIVE_LIMIT};
use crate::kneser::{
    distance2_by_intersection, distance2_related, enumerate_vertices, GraphSpec, KSubset, Variant,
    MAX_VERTICES,
};

/// Vertex-count guard for [`exact_chromatic`].
pub const MAX_EXACT: u128 = 60;
/// Vertex-count guard for [`greedy_chromatic`].
pub const MAX_GREEDY: u128 = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// Proper coloring of `K²(n, k)`.
    SquareProper,
    /// Injective coloring of `K(n, k)`: pairs with a common neighbor differ.
    Injective,
    /// Proper coloring of `J^m(n, k)`.
    JohnsonMProper,
}

impl Property {
    fn expected_variant(self, spec: &GraphSpec) -> bool {
        matches!(
            (self, spec.variant),
            (Property::SquareProper, Variant::KneserSquare)
                | (Property::Injective, Variant::Kneser)
                | (Property::JohnsonMProper, Variant::JohnsonPower { .. })
        )
    }

    /// Whether two distinct vertices meeting in `s` points must differ.
    fn constrains(self, spec: &GraphSpec, s: usize) -> bool {
        match self {
            Property::Injective => distance2_by_intersection(spec.n, spec.k, s),
            Property::SquareProper | Property::JohnsonMProper => spec.adjacent_by_intersection(s),
        }
    }

    /// Same predicate evaluated from the vertices themselves.
    fn constrains_pair(self, spec: &GraphSpec, a: &KSubset, b: &KSubset) -> bool {
        match self {
            Property::Injective => distance2_related(spec.n, spec.k, a, b),
            Property::SquareProper | Property::JohnsonMProper => spec.adjacent(a, b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub a: usize,
    pub b: usize,
    pub mask_a: u64,
    pub mask_b: u64,
    pub color_a: ColorVector,
    pub color_b: ColorVector,
    pub intersection: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub spec: GraphSpec,
    pub ground: GroundSet,
    pub r: usize,
    pub property: Property,
    pub passed: bool,
    pub violation: Option<Violation>,
    /// Constrained pairs that share a color.
    pub violations: u64,
    pub distinct_colors: usize,
    /// Constrained pairs examined (all of them; the scan never stops early).
    pub pairs_checked: u64,
    pub color_space: u64,
    /// Wall time; not serialized so reports stay byte-identical across runs.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Copy, Default)]
struct ScanTally {
    checked: u64,
    violations: u64,
    first: Option<(usize, usize)>,
}

impl ScanTally {
    fn merge(self, other: ScanTally) -> ScanTally {
        let first = match (self.first, other.first) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        ScanTally {
            checked: self.checked + other.checked,
            violations: self.violations + other.violations,
            first,
        }
    }
}

fn scan_row(i: usize, masks: &[u64], colors: &[u64], related: u64) -> ScanTally {
    let (mi, ci) = (masks[i], colors[i]);
    let mut tally = ScanTally::default();
    for j in i + 1..masks.len() {
        let s = (mi & masks[j]).count_ones();
        if related >> s & 1 == 1 {
            tally.checked += 1;
            if colors[j] == ci {
                tally.violations += 1;
                tally.first.get_or_insert((i, j));
            }
        }
    }
    tally
}

fn scan(masks: &[u64], colors: &[u64], related: u64, workers: usize) -> Result<ScanTally> {
    let rows = 0..masks.len();
    if workers <= 1 {
        return Ok(rows
            .map(|i| scan_row(i, masks, colors, related))
            .fold(ScanTally::default(), ScanTally::merge));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameters(format!("thread pool: {e}")))?;
    Ok(pool.install(|| {
        rows.into_par_iter()
            .map(|i| scan_row(i, masks, colors, related))
            .reduce(ScanTally::default, ScanTally::merge)
    }))
}

fn check_instance(spec: &GraphSpec, ground: &GroundSet, property: Property) -> Result<()> {
    if ground.n() != spec.n {
        return Err(Error::InvalidParameters(format!(
            "ground set has {} elements, graph needs n = {}",
            ground.n(),
            spec.n
        )));
    }
    if !property.expected_variant(spec) {
        return Err(Error::InvalidParameters(format!(
            "property {property:?} does not apply to graph variant {:?}",
            spec.variant
        )));
    }
    let count = spec.vertex_count();
    if count > MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "C(n, k)",
            size: count,
            limit: MAX_VERTICES,
        });
    }
    Ok(())
}

/// Certifies an externally supplied coloring, one color index per vertex
/// in enumeration order.
pub fn verify_table(
    spec: &GraphSpec,
    ground: &GroundSet,
    r: usize,
    property: Property,
    colors: &[u64],
    workers: usize,
) -> Result<VerificationReport> {
    let start = Instant::now();
    check_instance(spec, ground, property)?;
    let color_space = ground.color_space(r)?;
    let vertices = enumerate_vertices(spec.n, spec.k)?;
    if colors.len() != vertices.len() {
        return Err(Error::InvalidParameters(format!(
            "{} colors supplied for {} vertices",
            colors.len(),
            vertices.len()
        )));
    }
    if let Some(&c) = colors.iter().find(|&&c| c >= color_space) {
        return Err(Error::InvalidParameters(format!(
            "color index {c} is outside the color space {color_space}"
        )));
    }
    let masks: Vec<u64> = vertices.iter().map(|v| v.mask()).collect();
    let related = (0..spec.k)
        .filter(|&s| property.constrains(spec, s))
        .fold(0u64, |bits, s| bits | 1 << s);
    let tally = scan(&masks, colors, related, workers)?;

    let field = ground.field();
    let violation = tally
        .first
        .map(|(a, b)| -> Result<Violation> {
            Ok(Violation {
                a,
                b,
                mask_a: masks[a],
                mask_b: masks[b],
                color_a: ColorVector::decode(field, colors[a], r)?,
                color_b: ColorVector::decode(field, colors[b], r)?,
                intersection: (masks[a] & masks[b]).count_ones() as usize,
            })
        })
        .transpose()?;
    Ok(VerificationReport {
        spec: *spec,
        ground: ground.clone(),
        r,
        property,
        passed: violation.is_none(),
        violation,
        violations: tally.violations,
        distinct_colors: distinct_count(colors),
        pairs_checked: tally.checked,
        color_space,
        elapsed: start.elapsed(),
    })
}

/// Colors every vertex with `(e_1, ..., e_r)` and certifies `property`.
///
/// For [`Property::JohnsonMProper`] pass `r = m` to use the coloring
/// truncated to `m` entries.
pub fn verify_coloring(
    spec: &GraphSpec,
    ground: &GroundSet,
    r: usize,
    property: Property,
    workers: usize,
) -> Result<VerificationReport> {
    let start = Instant::now();
    check_instance(spec, ground, property)?;
    let colors = color_indices(ground, spec.k, r)?;
    let mut report = verify_table(spec, ground, r, property, &colors, workers)?;
    report.elapsed = start.elapsed();
    Ok(report)
}

fn recorded_violation(report: &VerificationReport) -> Result<&Violation> {
    match (&report.violation, report.passed) {
        (Some(v), false) => Ok(v),
        _ => Err(Error::Precondition(
            "recheck needs a failed report with a recorded violation".into(),
        )),
    }
}

/// The violating vertices, if the recorded indices and masks agree with
/// the enumeration and the pair is really constrained.
fn recheck_pair(report: &VerificationReport, v: &Violation) -> Result<Option<(KSubset, KSubset)>> {
    let spec = &report.spec;
    let a = KSubset::new(v.mask_a, spec.n)?;
    let b = KSubset::new(v.mask_b, spec.n)?;
    if a.k() != spec.k || b.k() != spec.k {
        return Ok(None);
    }
    let vertices = enumerate_vertices(spec.n, spec.k)?;
    if vertices.get(v.a) != Some(&a) || vertices.get(v.b) != Some(&b) {
        return Ok(None);
    }
    Ok(report
        .property
        .constrains_pair(spec, &a, &b)
        .then_some((a, b)))
}

/// Recomputes the recorded violating pair from scratch: vertex indices,
/// both colors (from the subset definition when `k` is small) and the
/// adjacency predicate. True iff the violation is genuine.
pub fn recheck_violation(report: &VerificationReport) -> Result<bool> {
    let violation = recorded_violation(report)?;
    let Some((a, b)) = recheck_pair(report, violation)? else {
        return Ok(false);
    };
    let field = report.ground.field();
    let recolor = |v: &KSubset| -> Result<ColorVector> {
        let members = report.ground.subset(v);
        let entries = if members.len() <= NAIVE_LIMIT {
            (1..=report.r)
                .map(|i| esym_naive(field, &members, i))
                .collect::<Result<Vec<_>>>()?
        } else {
            esym_prefix(field, &members, report.r)?.values
        };
        Ok(ColorVector::from_entries(field, entries))
    };
    let (ca, cb) = (recolor(&a)?, recolor(&b)?);
    Ok(ca == violation.color_a && cb == violation.color_b && ca == cb)
}

/// Like [`recheck_violation`] for a report produced by [`verify_table`]
/// on an external table: the colors are read back from `colors` instead of
/// being recomputed.
pub fn recheck_table_violation(report: &VerificationReport, colors: &[u64]) -> Result<bool> {
    let violation = recorded_violation(report)?;
    if recheck_pair(report, violation)?.is_none() {
        return Ok(false);
    }
    let field = report.ground.field();
    let read = |i: usize| -> Result<Option<ColorVector>> {
        colors
            .get(i)
            .map(|&c| ColorVector::decode(field, c, report.r))
            .transpose()
    };
    let (ca, cb) = (read(violation.a)?, read(violation.b)?);
    Ok(ca.is_some()
        && ca == cb
        && ca.as_ref() == Some(&violation.color_a)
        && cb.as_ref() == Some(&violation.color_b))
}

// ---------------------------------------------------------------------------
// chromatic numbers

fn guard(spec: &GraphSpec, limit: u128) -> Result<Vec<KSubset>> {
    let count = spec.vertex_count();
    if count > limit {
        return Err(Error::TooLarge {
            what: "C(n, k)",
            size: count,
            limit,
        });
    }
    enumerate_vertices(spec.n, spec.k)
}

/// Greedy coloring in `order` (ascending vertex index when `None`).
pub fn greedy_coloring(spec: &GraphSpec, order: Option<&[usize]>) -> Result<Vec<usize>> {
    let vertices = guard(spec, MAX_GREEDY)?;
    let count = vertices.len();
    let default_order: Vec<usize>;
    let order = match order {
        Some(o) => {
            let mut seen = vec![false; count];
            let valid = o.len() == count
                && o.iter()
                    .all(|&v| v < count && !std::mem::replace(&mut seen[v], true));
            if !valid {
                return Err(Error::InvalidParameters(
                    "greedy order must be a permutation of the vertex indices".into(),
                ));
            }
            o
        }
        None => {
            default_order = (0..count).collect();
            &default_order
        }
    };
    let mut color = vec![usize::MAX; count];
    let mut stamp = vec![usize::MAX; count + 1];
    for (step, &v) in order.iter().enumerate() {
        for &u in &order[..step] {
            if spec.adjacent(&vertices[v], &vertices[u]) {
                stamp[color[u]] = step;
            }
        }
        color[v] = (0..)
            .find(|&c| stamp[c] != step)
            .expect("a free color exists");
    }
    Ok(color)
}

/// Number of colors used by [`greedy_coloring`].
pub fn greedy_chromatic(spec: &GraphSpec, order: Option<&[usize]>) -> Result<usize> {
    Ok(greedy_coloring(spec, order)?
        .into_iter()
        .max()
        .map_or(0, |c| c + 1))
}

struct Dsatur<'a> {
    adj: &'a [u64],
    color: Vec<Option<usize>>,
    /// Bit `c` set when some neighbor has color `c`.
    seen: Vec<u64>,
    best: usize,
    lower: usize,
}

impl Dsatur<'_> {
    fn pick(&self) -> Option<usize> {
        (0..self.adj.len())
            .filter(|&v| self.color[v].is_none())
            .max_by_key(|&v| (self.seen[v].count_ones(), Reverse(v)))
    }

    fn assign(&mut self, v: usize, c: usize, touched: &mut Vec<usize>) {
        self.color[v] = Some(c);
        let mut rest = self.adj[v];
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.color[u].is_none() && self.seen[u] >> c & 1 == 0 {
                self.seen[u] |= 1 << c;
                touched.push(u);
            }
        }
    }

    fn unassign(&mut self, v: usize, c: usize, touched: &[usize]) {
        self.color[v] = None;
        for &u in touched {
            self.seen[u] &= !(1 << c);
        }
    }

    fn search(&mut self, used: usize) {
        if self.best == self.lower || used >= self.best {
            return;
        }
        let Some(v) = self.pick() else {
            self.best = used;
            return;
        };
        let blocked = self.seen[v];
        let mut touched = Vec::new();
        for c in 0..=used {
            if blocked >> c & 1 == 1 || (c == used && used + 1 >= self.best) {
                continue;
            }
            touched.clear();
            self.assign(v, c, &mut touched);
            self.search(used.max(c + 1));
            self.unassign(v, c, &touched);
            if self.best == self.lower {
                return;
            }
        }
    }
}

fn greedy_max_clique(adj: &[u64]) -> usize {
    (0..adj.len())
        .map(|start| {
            let mut clique = 1u64 << start;
            let mut candidates = adj[start];
            while candidates != 0 {
                let u = candidates.trailing_zeros();
                clique |= 1 << u;
                candidates &= adj[u as usize];
            }
            clique.count_ones() as usize
        })
        .max()
        .unwrap_or(0)
}

/// Exact chromatic number by DSATUR branch and bound (ties to the lowest
/// index), seeded with a greedy clique and a greedy coloring.
pub fn exact_chromatic(spec: &GraphSpec) -> Result<usize> {
    let vertices = guard(spec, MAX_EXACT)?;
    let count = vertices.len();
    let adj: Vec<u64> = vertices
        .iter()
        .map(|a| {
            vertices
                .iter()
                .enumerate()
                .filter(|(_, b)| spec.adjacent(a, b))
                .fold(0u64, |bits, (j, _)| bits | 1 << j)
        })
        .collect();
    let lower = greedy_max_clique(&adj);
    let upper = greedy_chromatic(spec, None)?;
    let mut search = Dsatur {
        adj: &adj,
        color: vec![None; count],
        seen: vec![0; count],
        best: upper,
        lower,
    };
    search.search(0);
    Ok(search.best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{build_ground_set, Construction};

    #[test]
    fn square_full_field_passes() {
        let ground = build_ground_set(3, 2, Construction::FullField).unwrap();
        let spec = GraphSpec::kneser_square(8, 3).unwrap();
        let report = verify_coloring(&spec, &ground, 2, Property::SquareProper, 1).unwrap();
        assert!(report.passed);
        assert_eq!(report.pairs_checked, 1540);
        assert!(report.distinct_colors <= 64);
    }

    #[test]
    fn truncation_fails_with_recheckable_pair() {
        let ground = build_ground_set(3, 2, Construction::FullField).unwrap();
        let spec = GraphSpec::kneser_square(8, 3).unwrap();
        let report = verify_coloring(&spec, &ground, 1, Property::SquareProper, 1).unwrap();
        assert!(!report.passed);
        let v = report.violation.clone().unwrap();
        assert!(v.a < v.b);
        assert_eq!(v.color_a, v.color_b);
        assert!(recheck_violation(&report).unwrap());

        let mut tampered = report.clone();
        let field = *ground.field();
        let other = (v.color_a.index + 1) % 8;
        tampered.violation.as_mut().unwrap().color_b =
            ColorVector::decode(&field, other, 1).unwrap();
        assert!(!recheck_violation(&tampered).unwrap());

        let passed = verify_coloring(&spec, &ground, 2, Property::SquareProper, 1).unwrap();
        assert!(matches!(
            recheck_violation(&passed),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn external_table_violation_rechecks_against_the_table() {
        let ground = build_ground_set(3, 2, Construction::FullField).unwrap();
        let spec = GraphSpec::kneser_square(8, 3).unwrap();
        let mut colors = color_indices(&ground, 3, 2).unwrap();
        colors[7] = colors[3];
        let report = verify_table(&spec, &ground, 2, Property::SquareProper, &colors, 1).unwrap();
        assert_eq!(report.violations, 1);
        let v = report.violation.as_ref().unwrap();
        assert_eq!((v.a, v.b), (3, 7));
        assert!(recheck_table_violation(&report, &colors).unwrap());
        // The canonical coloring never produced this pair.
        assert!(!recheck_violation(&report).unwrap());
        colors[7] ^= 1;
        assert!(!recheck_table_violation(&report, &colors).unwrap());
    }

    #[test]
    fn injective_prime_prefix() {
        let ground = build_ground_set(4, 2, Construction::PrimePrefix).unwrap();
        let spec = GraphSpec::kneser(10, 4).unwrap();
        let report = verify_coloring(&spec, &ground, 2, Property::Injective, 1).unwrap();
        assert!(report.passed);
        assert_eq!(report.color_space, 121);
    }

    #[test]
    fn mismatched_instances_rejected() {
        let ground = build_ground_set(3, 2, Construction::FullField).unwrap();
        let wrong_n = GraphSpec::kneser_square(7, 3).unwrap();
        assert!(verify_coloring(&wrong_n, &ground, 2, Property::SquareProper, 1).is_err());
        let wrong_variant = GraphSpec::kneser(8, 3).unwrap();
        assert!(verify_coloring(&wrong_variant, &ground, 2, Property::SquareProper, 1).is_err());
        let spec = GraphSpec::kneser_square(8, 3).unwrap();
        assert!(verify_table(&spec, &ground, 2, Property::SquareProper, &[0; 3], 1).is_err());
        assert!(verify_table(&spec, &ground, 2, Property::SquareProper, &[64; 56], 1).is_err());
    }

    #[test]
    fn worker_count_does_not_change_reports() {
        let ground =
            build_ground_set(5, 2, Construction::FieldMinusSubfield { t_prime: 2 }).unwrap();
        let spec = GraphSpec::kneser_square(12, 5).unwrap();
        for r in [1, 2] {
            let base = verify_coloring(&spec, &ground, r, Property::SquareProper, 1).unwrap();
            for workers in [2, 3, 8] {
                let other =
                    verify_coloring(&spec, &ground, r, Property::SquareProper, workers).unwrap();
                assert_eq!(
                    serde_json::to_string(&base).unwrap(),
                    serde_json::to_string(&other).unwrap()
                );
            }
        }
    }

    #[test]
    fn degenerate_chromatic_numbers() {
        assert_eq!(
            exact_chromatic(&GraphSpec::kneser_square(4, 2).unwrap()).unwrap(),
            2
        );
        assert_eq!(
            exact_chromatic(&GraphSpec::kneser_square(5, 2).unwrap()).unwrap(),
            10
        );
        assert_eq!(
            exact_chromatic(&GraphSpec::kneser(5, 2).unwrap()).unwrap(),
            3
        );
        let v = exact_chromatic(&GraphSpec::kneser_square(7, 3).unwrap()).unwrap();
        assert!((5..=8).contains(&v), "χ(K²(7,3)) = {v}");
        assert!(exact_chromatic(&GraphSpec::kneser_square(9, 3).unwrap()).is_err());
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(
            greedy_chromatic(&GraphSpec::kneser_square(5, 2).unwrap(), None).unwrap(),
            10
        );
        assert_eq!(
            greedy_chromatic(&GraphSpec::kneser_square(4, 2).unwrap(), None).unwrap(),
            2
        );
        assert!(greedy_chromatic(&GraphSpec::kneser_square(8, 3).unwrap(), None).unwrap() >= 21);
        let spec = GraphSpec::kneser_square(7, 3).unwrap();
        let reversed: Vec<usize> = (0..35).rev().collect();
        let colors = greedy_coloring(&spec, Some(&reversed)).unwrap();
        let vs = enumerate_vertices(7, 3).unwrap();
        for i in 0..35 {
            for j in 0..35 {
                if spec.adjacent(&vs[i], &vs[j]) {
                    assert_ne!(colors[i], colors[j]);
                }
            }
        }
        assert!(greedy_chromatic(&spec, Some(&[0, 0, 1])).is_err());
    }
}
