//! Ground sets inside finite fields, the symmetric-polynomial coloring, and
//! closed-form bounds on `χ(K²(2k + r, k))`.
//!
//! A vertex `A` (a `k`-subset of the ground set `X ⊂ F`) gets the color
//! `(e_1(A), ..., e_r(A)) ∈ F^r`. Two vertices meeting in `k - r..=k - 1`
//! points always get different colors. Disjoint vertices are separated too
//! when `F` has characteristic 2 and `e_1(X), e_3(X), ...` vanish up to
//! index `r`, which is what the binary constructions below guarantee.

use std::fmt;

use log::warn;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::esym;
use crate::gf::{is_prime, Field, FieldElement};
use crate::kneser::{binomial, enumerate_vertices, GraphSpec, KSubset, KSubsets};

/// Size guard for [`clique_witness`].
pub const MAX_CLIQUE_WITNESS: u128 = 100_000;

// ---------------------------------------------------------------------------
// primes

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeMode {
    /// `n <= p <= 9(n + 3)/8`, valid for `n >= 2`.
    Bertrand98,
    /// `n <= p <= (1 + 1/(2 ln² n)) n`, valid for `n >= 3275`.
    Ln2,
}

impl PrimeMode {
    /// Inclusive integer upper end of the interval for `n`.
    pub fn upper_end(self, n: u64) -> u64 {
        match self {
            PrimeMode::Bertrand98 => 9 * (n + 3) / 8,
            PrimeMode::Ln2 => {
                let ln = (n as f64).ln();
                ((1.0 + 1.0 / (2.0 * ln * ln)) * n as f64).floor() as u64
            }
        }
    }

    pub fn min_n(self) -> u64 {
        match self {
            PrimeMode::Bertrand98 => 2,
            PrimeMode::Ln2 => 3275,
        }
    }
}

/// Largest `n` accepted by [`find_prime_in_interval`]; trial division up
/// to `2^20` per candidate.
pub const MAX_PRIME_SEARCH: u64 = 1 << 40;

/// Smallest prime `p >= n` inside the mode's interval.
///
/// [`Error::NoPrimeInInterval`] means the interval theorem is false at `n`.
pub fn find_prime_in_interval(n: u64, mode: PrimeMode) -> Result<u64> {
    if n > MAX_PRIME_SEARCH {
        return Err(Error::TooLarge {
            what: "n",
            size: n as u128,
            limit: MAX_PRIME_SEARCH as u128,
        });
    }
    if n < mode.min_n() {
        return Err(Error::InvalidParameters(format!(
            "{mode:?} interval needs n >= {}, got {n}",
            mode.min_n()
        )));
    }
    let hi = mode.upper_end(n);
    (n..=hi)
        .find(|&p| is_prime(p))
        .ok_or(Error::NoPrimeInInterval { lo: n, hi })
}

// ---------------------------------------------------------------------------
// ground sets

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    /// `X = GF(2^t)`, needs `2k + r = 2^t`.
    FullField,
    /// `X = GF(2^t) \ {0}`, needs `2k + r = 2^t - 1`.
    FieldMinusZero,
    /// `X = GF(2^t) \ GF(2^t')`, needs `2k + r = 2^t - 2^t'`.
    FieldMinusSubfield {
        t_prime: u32,
    },
    /// `X = (GF(2^t) \ GF(2^t')) ∪ {0}`, needs `2k + r = 2^t - 2^t' + 1`.
    FieldMinusSubfieldPlusZero {
        t_prime: u32,
    },
    /// `X = {0, ..., 2k + r - 1} ⊂ GF(p)` for the prime `p` found in
    /// `[2k + r, 9(2k + r + 3)/8]`.
    PrimePrefix,
    Explicit,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::FullField => write!(f, "full_field"),
            Construction::FieldMinusZero => write!(f, "field_minus_zero"),
            Construction::FieldMinusSubfield { t_prime } => {
                write!(f, "field_minus_subfield({t_prime})")
            }
            Construction::FieldMinusSubfieldPlusZero { t_prime } => {
                write!(f, "field_minus_subfield_plus_zero({t_prime})")
            }
            Construction::PrimePrefix => write!(f, "prime_prefix"),
            Construction::Explicit => write!(f, "explicit"),
        }
    }
}

/// Ordered ground set `X`; position `i` of a vertex mask selects `elements[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGroundSet", into = "RawGroundSet")]
pub struct GroundSet {
    field: Field,
    construction: Construction,
    elements: Vec<FieldElement>,
}

#[derive(Serialize, Deserialize)]
struct RawGroundSet {
    field: Field,
    construction: Construction,
    n: usize,
    elements: Vec<u32>,
}

impl TryFrom<RawGroundSet> for GroundSet {
    type Error = Error;

    fn try_from(raw: RawGroundSet) -> Result<Self> {
        if raw.n != raw.elements.len() {
            return Err(Error::InvalidParameters(format!(
                "ground set declares n = {} but lists {} elements",
                raw.n,
                raw.elements.len()
            )));
        }
        let elements = raw
            .elements
            .iter()
            .map(|&v| raw.field.element(v as u64))
            .collect::<Result<Vec<_>>>()?;
        let mut ground = GroundSet::explicit(raw.field, elements)?;
        ground.construction = raw.construction;
        Ok(ground)
    }
}

impl From<GroundSet> for RawGroundSet {
    fn from(g: GroundSet) -> Self {
        RawGroundSet {
            field: g.field,
            construction: g.construction,
            n: g.elements.len(),
            elements: g.elements.iter().map(|e| e.value()).collect(),
        }
    }
}

impl GroundSet {
    pub fn explicit(field: Field, elements: Vec<FieldElement>) -> Result<Self> {
        for &e in &elements {
            field.element(e.value() as u64)?;
        }
        let mut sorted = elements.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0].value()));
        }
        Ok(GroundSet {
            field,
            construction: Construction::Explicit,
            elements,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn n(&self) -> usize {
        self.elements.len()
    }

    /// `|F|^r`, the number of available colors.
    pub fn color_space(&self, r: usize) -> Result<u64> {
        let order = self.field.order();
        (order as u64)
            .checked_pow(r as u32)
            .ok_or(Error::ColorSpaceOverflow { order, r })
    }

    /// Field elements selected by a vertex mask.
    pub fn subset(&self, vertex: &KSubset) -> Vec<FieldElement> {
        vertex.positions().map(|i| self.elements[i]).collect()
    }

    /// Canonical color index of the vertex `mask`; `scratch.len()` is `r`.
    #[inline]
    pub(crate) fn color_index_with(&self, mask: u64, scratch: &mut [FieldElement]) -> u64 {
        scratch.fill(self.field.zero());
        let mut rest = mask;
        let items = std::iter::from_fn(|| {
            if rest == 0 {
                return None;
            }
            let bit = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(self.elements[bit])
        });
        esym::accumulate(&self.field, items, scratch);
        encode(self.field.order(), scratch)
    }
}

fn encode(order: u32, entries: &[FieldElement]) -> u64 {
    entries
        .iter()
        .rev()
        .fold(0u64, |acc, e| acc * order as u64 + e.value() as u64)
}

fn check_range(k: usize, r: usize) -> Result<()> {
    if r == 0 || k < 2 || r + 1 > k {
        return Err(Error::InvalidParameters(format!(
            "need k >= 2 and 1 <= r <= k - 1, got k = {k}, r = {r}"
        )));
    }
    if r + 2 > k {
        warn!("r = {r} = k - 1 is outside 1 <= r <= k - 2; accepted for r <= k - 1");
    }
    Ok(())
}

fn log2_exact(x: usize) -> Option<u32> {
    (x.is_power_of_two()).then(|| x.trailing_zeros())
}

fn mismatch(n: usize, construction: Construction) -> Error {
    Error::ArithmeticMismatch {
        n,
        construction: construction.to_string(),
    }
}

/// Binary field and subfield for `n = 2^t - 2^t' + extra`, with the
/// divisibility and size conditions on `t'`.
fn subfield_split(
    n: usize,
    r: usize,
    t_prime: u32,
    extra: usize,
    construction: Construction,
) -> Result<(Field, Vec<FieldElement>)> {
    if t_prime == 0 || t_prime > crate::gf::MAX_BINARY_DEGREE {
        return Err(mismatch(n, construction));
    }
    let total = (n + (1usize << t_prime))
        .checked_sub(extra)
        .ok_or_else(|| mismatch(n, construction))?;
    let t = log2_exact(total).ok_or_else(|| mismatch(n, construction))?;
    if t % t_prime != 0 {
        return Err(Error::NotASubfieldDegree { sub: t_prime, t });
    }
    if (1usize << t_prime) < r + 2 {
        return Err(Error::SubfieldTooSmall {
            t_prime,
            need: r + 2,
        });
    }
    let field = Field::binary(t)?;
    let sub = field.subfield_elements(t_prime)?;
    Ok((field, sub))
}

pub fn build_ground_set(k: usize, r: usize, construction: Construction) -> Result<GroundSet> {
    check_range(k, r)?;
    let n = 2 * k + r;
    let (field, elements): (Field, Vec<FieldElement>) = match construction {
        Construction::FullField => {
            let t = log2_exact(n).ok_or_else(|| mismatch(n, construction))?;
            let field = Field::binary(t)?;
            (field, field.elements().collect())
        }
        Construction::FieldMinusZero => {
            let t = log2_exact(n + 1).ok_or_else(|| mismatch(n, construction))?;
            let field = Field::binary(t)?;
            (field, field.elements().skip(1).collect())
        }
        Construction::FieldMinusSubfield { t_prime } => {
            let (field, sub) = subfield_split(n, r, t_prime, 0, construction)?;
            let rest = field
                .elements()
                .filter(|e| sub.binary_search(e).is_err())
                .collect();
            (field, rest)
        }
        Construction::FieldMinusSubfieldPlusZero { t_prime } => {
            let (field, sub) = subfield_split(n, r, t_prime, 1, construction)?;
            let rest = field
                .elements()
                .filter(|&e| e == field.zero() || sub.binary_search(&e).is_err())
                .collect();
            (field, rest)
        }
        Construction::PrimePrefix => {
            let p = find_prime_in_interval(n as u64, PrimeMode::Bertrand98)?;
            let field = Field::prime(p as u32)?;
            (field, field.elements().take(n).collect())
        }
        Construction::Explicit => {
            return Err(Error::InvalidParameters(
                "explicit ground sets are built with GroundSet::explicit".into(),
            ))
        }
    };
    debug_assert_eq!(elements.len(), n);
    Ok(GroundSet {
        field,
        construction,
        elements,
    })
}

/// Whether `e_{2m+1}(X) = 0` for every `m` with `2m + 1 <= r`.
pub fn check_ground_set(ground: &GroundSet, r: usize) -> bool {
    if r == 0 {
        return true;
    }
    let field = ground.field();
    let mut values = vec![field.zero(); r];
    esym::accumulate(field, ground.elements().iter().copied(), &mut values);
    values.iter().step_by(2).all(|&e| e == field.zero())
}

// ---------------------------------------------------------------------------
// colors

/// `(e_1(A), ..., e_r(A))` and its index `Σ entries[i]·|F|^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColorVector {
    pub entries: Vec<FieldElement>,
    pub index: u64,
}

impl ColorVector {
    pub fn from_entries(field: &Field, entries: Vec<FieldElement>) -> Self {
        let index = encode(field.order(), &entries);
        ColorVector { entries, index }
    }

    pub fn decode(field: &Field, mut index: u64, r: usize) -> Result<Self> {
        let order = field.order() as u64;
        let original = index;
        let mut entries = Vec::with_capacity(r);
        for _ in 0..r {
            entries.push(field.element(index % order)?);
            index /= order;
        }
        if index != 0 {
            return Err(Error::InvalidParameters(format!(
                "color index {original} is outside {order}^{r}"
            )));
        }
        Ok(ColorVector {
            entries,
            index: original,
        })
    }
}

pub fn color_vertex(ground: &GroundSet, vertex: &KSubset, r: usize) -> ColorVector {
    let field = ground.field();
    let mut entries = vec![field.zero(); r];
    esym::accumulate(
        field,
        vertex.positions().map(|i| ground.elements[i]),
        &mut entries,
    );
    ColorVector::from_entries(field, entries)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringRow {
    pub vertex_index: usize,
    pub mask: u64,
    pub color_index: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringTable {
    pub groundset: GroundSet,
    pub k: usize,
    pub r: usize,
    pub distinct_colors: usize,
    pub rows: Vec<ColoringRow>,
}

impl ColoringTable {
    pub fn color_indices(&self) -> Vec<u64> {
        self.rows.iter().map(|row| row.color_index).collect()
    }
}

pub(crate) fn distinct_count(colors: &[u64]) -> usize {
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len()
}

/// Colors of every vertex, in vertex enumeration order.
pub(crate) fn color_indices(ground: &GroundSet, k: usize, r: usize) -> Result<Vec<u64>> {
    ground.color_space(r)?;
    let vertices = enumerate_vertices(ground.n(), k)?;
    let mut scratch = vec![ground.field().zero(); r];
    Ok(vertices
        .iter()
        .map(|v| ground.color_index_with(v.mask(), &mut scratch))
        .collect())
}

pub fn color_all(ground: &GroundSet, k: usize, r: usize) -> Result<ColoringTable> {
    let vertices = enumerate_vertices(ground.n(), k)?;
    let colors = color_indices(ground, k, r)?;
    let rows = vertices
        .iter()
        .zip(&colors)
        .enumerate()
        .map(|(vertex_index, (v, &color_index))| ColoringRow {
            vertex_index,
            mask: v.mask(),
            color_index,
        })
        .collect();
    Ok(ColoringTable {
        groundset: ground.clone(),
        k,
        r,
        distinct_colors: distinct_count(&colors),
        rows,
    })
}

/// The `C(k + 2r, r)` vertices of `K²(2k + r, k)` containing positions
/// `0..k - r`; pairwise adjacency is checked before returning.
pub fn clique_witness(k: usize, r: usize) -> Result<Vec<KSubset>> {
    if r == 0 || r >= k {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= r <= k - 1, got k = {k}, r = {r}"
        )));
    }
    let size = binomial(k + 2 * r, r);
    if size > MAX_CLIQUE_WITNESS {
        return Err(Error::TooLarge {
            what: "C(k + 2r, r)",
            size,
            limit: MAX_CLIQUE_WITNESS,
        });
    }
    let n = 2 * k + r;
    let spec = GraphSpec::kneser_square(n, k)?;
    let fixed_len = k - r;
    let fixed = (1u64 << fixed_len) - 1;
    let members = KSubsets::new(k + 2 * r, r)
        .map(|free| KSubset::new(fixed | free << fixed_len, n))
        .collect::<Result<Vec<_>>>()?;
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            if !spec.adjacent(a, b) {
                return Err(Error::NotAClique(a.mask(), b.mask()));
            }
        }
    }
    Ok(members)
}

// ---------------------------------------------------------------------------
// bounds

/// Exact rational bound. Serializes as a JSON integer when integral and
/// small enough, otherwise as `"p/q (≈ x.xxxxx)"`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Bound(pub BigRational);

impl Bound {
    fn int(v: impl Into<BigInt>) -> Self {
        Bound(BigRational::from_integer(v.into()))
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Decimal rounded half-up to 5 places.
    pub fn approx(&self) -> String {
        let scale = BigInt::from(100_000);
        let scaled = (&self.0 * BigRational::from_integer(scale.clone())
            + BigRational::new(BigInt::one(), BigInt::from(2)))
        .floor()
        .to_integer();
        let (whole, frac) = scaled.div_mod_floor(&scale);
        format!("{whole}.{:05}", frac.to_u64().unwrap_or(0))
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(
                f,
                "{}/{} (≈ {})",
                self.0.numer(),
                self.0.denom(),
                self.approx()
            )
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self
            .0
            .is_integer()
            .then(|| self.0.numer().to_u64())
            .flatten()
        {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.to_string()),
        }
    }
}

fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

fn pow(base: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * base)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JohnsonBound {
    pub m: usize,
    pub upper: Bound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubfieldForm {
    /// `2k + r = 2^t - 2^t'`
    MinusSubfield,
    /// `2k + r = 2^t - 2^t' + 1`
    MinusSubfieldPlusZero,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubfieldBound {
    pub form: SubfieldForm,
    pub t: u32,
    pub t_prime: u32,
    pub upper: Bound,
    /// False for the `+ 1` form at `r = 1`, where the coloring argument
    /// does not apply (the vertex pair partitioning `X \ {0}` collides).
    pub counted_in_best: bool,
}

/// A decomposition that matches the arithmetic but has `t' ∤ t`, so no
/// subfield of that order exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RejectedDecomposition {
    pub form: SubfieldForm,
    pub t: u32,
    pub t_prime: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerFamilyBound {
    /// Exponent `n` in `2k + 1 = (2^n - 1)p + rem`.
    pub n: u32,
    pub p: u64,
    pub rem: u64,
    pub upper: Bound,
}

/// Earlier bounds for `χ(K²(2k + 1, k))`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct R1Bounds {
    /// `4k + 2`.
    pub linear_4k: Bound,
    /// `3k + 2`, `k >= 3`.
    pub linear_3k: Option<Bound>,
    /// `8k/3 + 20/3`.
    pub eight_thirds_k: Bound,
    /// `2k + 2` when `2k + 1 = 2^t - 1`.
    pub mersenne_2k: Option<Bound>,
    /// `32k/15 + 32`, `k >= 7`.
    pub large_k: Option<Bound>,
    /// `2^(n+1) k/(2^n - 1) + 2^n (2^(n+1) - 3)/(2^n - 1)` for each `n >= 2`
    /// with `2^n - 1 <= 2k + 1`.
    pub power_family: Vec<PowerFamilyBound>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub k: usize,
    pub r: usize,
    pub n: usize,
    /// `χ(K(n, k)) = n - 2k + 2`, for reference.
    pub kneser_chromatic: usize,
    pub clique_lower: Bound,
    pub trivial_upper: Bound,
    pub thm1_upper: Bound,
    pub thm1_upper_floor: Bound,
    pub injective_upper: Bound,
    pub injective_upper_floor: Bound,
    pub johnson_uppers: Vec<JohnsonBound>,
    pub thm2a_upper: Option<Bound>,
    pub thm2b_upper: Option<Bound>,
    pub cor3_uppers: Vec<SubfieldBound>,
    pub cor3_rejected: Vec<RejectedDecomposition>,
    pub r1_bounds: Option<R1Bounds>,
    pub best_upper: Bound,
    pub best_source: String,
}

fn r1_bounds(k: usize) -> R1Bounds {
    let k_i = k as i64;
    let kr = BigRational::from_integer(BigInt::from(k_i));
    let n1 = 2 * k + 1;
    let power_family = (2u32..)
        .take_while(|&e| (1usize << e) - 1 <= n1)
        .map(|e| {
            let q = (1i64 << e) - 1;
            let upper = ratio(1 << (e + 1), q) * &kr + ratio((1 << e) * ((1 << (e + 1)) - 3), q);
            PowerFamilyBound {
                n: e,
                p: n1 as u64 / q as u64,
                rem: n1 as u64 % q as u64,
                upper: Bound(upper),
            }
        })
        .collect();
    R1Bounds {
        linear_4k: Bound::int(4 * k_i + 2),
        linear_3k: (k >= 3).then(|| Bound::int(3 * k_i + 2)),
        eight_thirds_k: Bound(ratio(8 * k_i + 20, 3)),
        mersenne_2k: (n1 + 1).is_power_of_two().then(|| Bound::int(2 * k_i + 2)),
        large_k: (k >= 7).then(|| Bound(ratio(32 * k_i + 480, 15))),
        power_family,
    }
}

/// Every bound on `χ(K²(2k + r, k))` that applies to `(k, r)`.
pub fn bounds_report(k: usize, r: usize) -> Result<BoundsReport> {
    if k < 2 || r == 0 || r >= k {
        return Err(Error::InvalidParameters(format!(
            "need k >= 2 and 1 <= r <= k - 1, got k = {k}, r = {r}"
        )));
    }
    let n = 2 * k + r;
    let n_big = BigInt::from(n);
    let clique_lower = Bound::int(binomial(k + 2 * r, r));
    let c = binomial(k + r, r);
    let trivial_upper = Bound::int(BigInt::from(c) * BigInt::from(c));

    // 9k/4 + 9(r + 3)/8 = (18k + 9r + 27)/8
    let base = ratio((18 * k + 9 * r + 27) as i64, 8);
    let injective = pow(&base, r);
    let thm1 = BigRational::from_integer(BigInt::from(2)) * &injective;
    let johnson_uppers = (2..=r)
        .map(|m| JohnsonBound {
            m,
            upper: Bound(pow(&base, m)),
        })
        .collect();

    let thm2a_upper = n
        .is_power_of_two()
        .then(|| Bound::int(num_traits::pow(n_big.clone(), r)));
    let thm2b_upper = (n + 1)
        .is_power_of_two()
        .then(|| Bound::int(num_traits::pow(BigInt::from(n + 1), r)));

    let mut cor3_uppers = Vec::new();
    let mut cor3_rejected = Vec::new();
    for t in 2..=crate::gf::MAX_BINARY_DEGREE {
        for t_prime in 1..t {
            if (1usize << t_prime) < r + 2 {
                continue;
            }
            let diff = (1usize << t) - (1usize << t_prime);
            let forms = [
                (SubfieldForm::MinusSubfield, diff),
                (SubfieldForm::MinusSubfieldPlusZero, diff + 1),
            ];
            for (form, size) in forms {
                if size != n {
                    continue;
                }
                if t % t_prime != 0 {
                    cor3_rejected.push(RejectedDecomposition { form, t, t_prime });
                    continue;
                }
                let upper = Bound::int(num_traits::pow(BigInt::from(n + (1usize << t_prime)), r));
                cor3_uppers.push(SubfieldBound {
                    form,
                    t,
                    t_prime,
                    upper,
                    counted_in_best: !(form == SubfieldForm::MinusSubfieldPlusZero && r == 1),
                });
            }
        }
    }

    let r1 = (r == 1).then(|| r1_bounds(k));

    let mut candidates: Vec<(String, &Bound)> = Vec::new();
    // C(k + r, r)² only bounds χ for k >= 3; K²(5, 2) is K_10
    if k >= 3 {
        candidates.push(("trivial_upper".into(), &trivial_upper));
    }
    let thm1_bound = Bound(thm1.clone());
    candidates.push(("thm1_upper".into(), &thm1_bound));
    if let Some(b) = &thm2a_upper {
        candidates.push(("thm2a_upper".into(), b));
    }
    if let Some(b) = &thm2b_upper {
        candidates.push(("thm2b_upper".into(), b));
    }
    for sb in cor3_uppers.iter().filter(|sb| sb.counted_in_best) {
        candidates.push((
            format!("cor3_upper(t={},t'={})", sb.t, sb.t_prime),
            &sb.upper,
        ));
    }
    if let Some(r1) = &r1 {
        candidates.push(("linear_4k".into(), &r1.linear_4k));
        candidates.push(("eight_thirds_k".into(), &r1.eight_thirds_k));
        for (name, b) in [
            ("linear_3k", &r1.linear_3k),
            ("mersenne_2k", &r1.mersenne_2k),
            ("large_k", &r1.large_k),
        ] {
            if let Some(b) = b {
                candidates.push((name.into(), b));
            }
        }
        for fam in &r1.power_family {
            candidates.push((format!("power_family(n={})", fam.n), &fam.upper));
        }
    }
    // first minimum wins, so ties resolve in the listing order above
    let (best_source, best) = candidates
        .iter()
        .fold(None::<&(String, &Bound)>, |acc, cand| match acc {
            Some(cur) if cur.1 <= cand.1 => Some(cur),
            _ => Some(cand),
        })
        .map(|(name, b)| (name.clone(), Bound::int(b.floor())))
        .expect("thm1_upper is always a candidate");
    debug_assert!(!best.0.is_zero());

    Ok(BoundsReport {
        k,
        r,
        n,
        kneser_chromatic: r + 2,
        clique_lower,
        trivial_upper,
        thm1_upper_floor: Bound::int(thm1_bound.floor()),
        thm1_upper: thm1_bound,
        injective_upper_floor: Bound::int(Bound(injective.clone()).floor()),
        injective_upper: Bound(injective),
        johnson_uppers,
        thm2a_upper,
        thm2b_upper,
        cor3_uppers,
        cor3_rejected,
        r1_bounds: r1,
        best_upper: best,
        best_source,
    })
}
