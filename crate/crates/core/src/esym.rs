//! Elementary symmetric polynomials `e_i(Z)` of a set `Z` of field elements.
//!
//! `e_0(Z) = 1` and `e_i(Z) = 0` for `i > |Z|`. The production path folds
//! one element at a time through `E_i ← E_i + z·E_{i-1}`, which costs
//! `O(|Z|·r)`. [`esym_naive`] sums over subsets literally and exists as an
//! oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// Largest set [`esym_naive`] will enumerate.
pub const NAIVE_LIMIT: usize = 12;

/// `(e_1(Z), ..., e_r(Z))` over a fixed field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ESymVector {
    pub field: Field,
    pub values: Vec<FieldElement>,
}

impl ESymVector {
    pub fn r(&self) -> usize {
        self.values.len()
    }

    /// `e_i(Z)` for `0 <= i <= r`.
    pub fn get(&self, i: usize) -> FieldElement {
        if i == 0 {
            self.field.one()
        } else {
            self.values[i - 1]
        }
    }
}

/// Folds `items` into `out`, where `out[i]` accumulates `e_{i+1}`.
/// `out` must be zeroed by the caller. No validation.
#[inline]
pub(crate) fn accumulate<I>(field: &Field, items: I, out: &mut [FieldElement])
where
    I: IntoIterator<Item = FieldElement>,
{
    for z in items {
        for i in (0..out.len()).rev() {
            let lower = if i == 0 { field.one() } else { out[i - 1] };
            out[i] = field.add(out[i], field.mul(z, lower));
        }
    }
}

fn check_members(field: &Field, z: &[FieldElement]) -> Result<()> {
    for &a in z {
        field.element(a.value() as u64)?;
    }
    let mut sorted = z.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateElement(w[0].value()));
    }
    Ok(())
}

pub fn esym_prefix(field: &Field, z: &[FieldElement], r: usize) -> Result<ESymVector> {
    if r == 0 {
        return Err(Error::InvalidParameters(
            "truncation order r must be >= 1".into(),
        ));
    }
    check_members(field, z)?;
    let mut values = vec![field.zero(); r];
    accumulate(field, z.iter().copied(), &mut values);
    Ok(ESymVector {
        field: *field,
        values,
    })
}

/// `e_i(Z)` straight from the definition: the sum of the products of all
/// `i`-element subsets of `Z`.
pub fn esym_naive(field: &Field, z: &[FieldElement], i: usize) -> Result<FieldElement> {
    if z.len() > NAIVE_LIMIT {
        return Err(Error::SetTooLarge {
            size: z.len(),
            limit: NAIVE_LIMIT,
        });
    }
    let mut total = field.zero();
    for mask in 0u32..1 << z.len() {
        if mask.count_ones() as usize != i {
            continue;
        }
        let product = z
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask >> bit & 1 == 1)
            .fold(field.one(), |acc, (_, &a)| field.mul(acc, a));
        total = field.add(total, product);
    }
    Ok(total)
}

/// Checks `e_i(X ∪ Y) = Σ_{s=0}^{i} e_s(X)·e_{i-s}(Y)` for `1 <= i <= r`.
///
/// The left side is evaluated from the subset definition when `X ∪ Y` is
/// small enough, otherwise by the recurrence; the right side always uses
/// the recurrence on `X` and `Y` separately.
pub fn esym_union_check(
    field: &Field,
    x: &[FieldElement],
    y: &[FieldElement],
    r: usize,
) -> Result<bool> {
    if let Some(&shared) = x.iter().find(|a| y.contains(a)) {
        return Err(Error::NotDisjoint(shared.value()));
    }
    let union: Vec<FieldElement> = x.iter().chain(y).copied().collect();
    let ex = esym_prefix(field, x, r)?;
    let ey = esym_prefix(field, y, r)?;
    let lhs: Vec<FieldElement> = if union.len() <= NAIVE_LIMIT {
        (1..=r)
            .map(|i| esym_naive(field, &union, i))
            .collect::<Result<_>>()?
    } else {
        esym_prefix(field, &union, r)?.values
    };
    Ok((1..=r).all(|i| {
        let rhs = (0..=i).fold(field.zero(), |acc, s| {
            field.add(acc, field.mul(ex.get(s), ey.get(i - s)))
        });
        lhs[i - 1] == rhs
    }))
}
