//! Prime fields `GF(p)` and binary extension fields `GF(2^t)`.
//!
//! Elements are canonical integers. For `GF(p)` that is the residue in
//! `[0, p)`. For `GF(2^t)` it is the little-endian coefficient vector of the
//! polynomial representative (constant term in bit 0), so addition is XOR.
//! The binary modulus is the smallest irreducible polynomial of degree `t`
//! with nonzero constant term, compared as an integer.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported extension degree for binary fields.
pub const MAX_BINARY_DEGREE: u32 = 16;

/// Deterministic primality by trial division over `6j ± 1`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Wire form of a field: `{"kind":"prime","p":11}` or
/// `{"kind":"binary","t":3,"modulus":11}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldKind {
    Prime { p: u32 },
    Binary { t: u32, modulus: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FieldKind", into = "FieldKind")]
pub struct Field {
    kind: FieldKind,
    order: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn degree(poly: u32) -> u32 {
    debug_assert!(poly != 0);
    31 - poly.leading_zeros()
}

/// Remainder of `a` modulo `m` over GF(2)[x].
fn poly_rem(mut a: u32, m: u32) -> u32 {
    let dm = degree(m);
    while a != 0 && degree(a) >= dm {
        a ^= m << (degree(a) - dm);
    }
    a
}

fn is_irreducible(poly: u32) -> bool {
    let d = degree(poly);
    if d == 0 {
        return false;
    }
    // any factorization has a factor of degree <= d/2
    (2u32..1 << (d / 2 + 1)).all(|g| poly_rem(poly, g) != 0)
}

fn smallest_irreducible(t: u32) -> u32 {
    (1u32 << t..1 << (t + 1))
        .find(|&f| f & 1 == 1 && is_irreducible(f))
        .expect("an irreducible polynomial exists for every degree")
}

impl Field {
    /// `GF(p)`.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(Field {
            kind: FieldKind::Prime { p },
            order: p,
        })
    }

    /// `GF(2^t)` with the canonical modulus.
    pub fn binary(t: u32) -> Result<Self> {
        if !(1..=MAX_BINARY_DEGREE).contains(&t) {
            return Err(Error::DegreeOutOfRange(t));
        }
        Ok(Field {
            kind: FieldKind::Binary {
                t,
                modulus: smallest_irreducible(t),
            },
            order: 1 << t,
        })
    }

    /// `GF(2^t)` with an explicit modulus, which must be irreducible of degree `t`.
    pub fn binary_with_modulus(t: u32, modulus: u32) -> Result<Self> {
        if !(1..=MAX_BINARY_DEGREE).contains(&t) {
            return Err(Error::DegreeOutOfRange(t));
        }
        if modulus == 0 || degree(modulus) != t || !is_irreducible(modulus) {
            return Err(Error::NotIrreducible { modulus, degree: t });
        }
        Ok(Field {
            kind: FieldKind::Binary { t, modulus },
            order: 1 << t,
        })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn characteristic(&self) -> u32 {
        match self.kind {
            FieldKind::Prime { p } => p,
            FieldKind::Binary { .. } => 2,
        }
    }

    pub fn is_binary(&self) -> bool {
        matches!(self.kind, FieldKind::Binary { .. })
    }

    /// Extension degree over the prime subfield.
    pub fn degree(&self) -> u32 {
        match self.kind {
            FieldKind::Prime { .. } => 1,
            FieldKind::Binary { t, .. } => t,
        }
    }

    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value < self.order as u64 {
            Ok(FieldElement(value as u32))
        } else {
            Err(Error::InvalidElement {
                value,
                order: self.order,
            })
        }
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// All elements in ascending encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match self.kind {
            FieldKind::Prime { p } => FieldElement(((a.0 as u64 + b.0 as u64) % p as u64) as u32),
            FieldKind::Binary { .. } => FieldElement(a.0 ^ b.0),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match self.kind {
            FieldKind::Prime { p } => FieldElement(if a.0 == 0 { 0 } else { p - a.0 }),
            FieldKind::Binary { .. } => a,
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match self.kind {
            FieldKind::Prime { p } => FieldElement(((a.0 as u64 * b.0 as u64) % p as u64) as u32),
            FieldKind::Binary { t, modulus } => {
                let (mut x, mut y, mut acc) = (a.0, b.0, 0u32);
                while y != 0 {
                    if y & 1 != 0 {
                        acc ^= x;
                    }
                    y >>= 1;
                    x <<= 1;
                    if x >> t & 1 != 0 {
                        x ^= modulus;
                    }
                }
                FieldElement(acc)
            }
        }
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse as `a^(|F| - 2)`; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            None
        } else {
            Some(self.pow(a, self.order as u64 - 2))
        }
    }

    /// Elements of the subfield `GF(2^sub)`: the fixed points of `a ↦ a^(2^sub)`.
    ///
    /// Fails unless `self` is binary of degree `t` with `sub | t`.
    pub fn subfield_elements(&self, sub: u32) -> Result<Vec<FieldElement>> {
        let t = match self.kind {
            FieldKind::Binary { t, .. } => t,
            FieldKind::Prime { .. } => return Err(Error::NotBinaryField),
        };
        if sub == 0 || t % sub != 0 {
            return Err(Error::NotASubfieldDegree { sub, t });
        }
        let q = 1u64 << sub;
        let members: Vec<FieldElement> = self.elements().filter(|&a| self.pow(a, q) == a).collect();
        assert_eq!(
            members.len() as u64,
            q,
            "subfield must have 2^{sub} elements"
        );
        let contains = |x: FieldElement| members.binary_search(&x).is_ok();
        for &a in &members {
            if let Some(ai) = self.inv(a) {
                assert!(contains(ai), "subfield not closed under inversion");
            }
            for &b in &members {
                assert!(
                    contains(self.add(a, b)) && contains(self.mul(a, b)),
                    "subfield not closed under add/mul"
                );
            }
        }
        Ok(members)
    }
}

impl TryFrom<FieldKind> for Field {
    type Error = Error;

    fn try_from(kind: FieldKind) -> Result<Self> {
        match kind {
            FieldKind::Prime { p } => Field::prime(p),
            FieldKind::Binary { t, modulus } => Field::binary_with_modulus(t, modulus),
        }
    }
}

impl From<Field> for FieldKind {
    fn from(field: Field) -> Self {
        field.kind
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Prime { p } => write!(f, "GF({p})"),
            FieldKind::Binary { t, .. } => write!(f, "GF(2^{t})"),
        }
    }
}
