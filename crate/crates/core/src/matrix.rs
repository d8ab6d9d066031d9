//! The desk-scale instance matrix reproduced by `kneser-chroma report`.

use serde::Serialize;

use crate::coloring::{build_ground_set, Construction};
use crate::error::Result;
use crate::kneser::GraphSpec;
use crate::verifier::{verify_coloring, Property, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DeskInstance {
    pub name: &'static str,
    pub k: usize,
    pub r: usize,
    pub construction: Construction,
    pub property: Property,
    /// Number of coloring entries used; `r` except for truncations and Johnson powers.
    pub entries: usize,
    /// Verdict the underlying claim predicts.
    pub claimed_pass: bool,
}

impl DeskInstance {
    pub fn n(&self) -> usize {
        2 * self.k + self.r
    }

    pub fn spec(&self) -> Result<GraphSpec> {
        let n = self.n();
        match self.property {
            Property::SquareProper => GraphSpec::kneser_square(n, self.k),
            Property::Injective => GraphSpec::kneser(n, self.k),
            Property::JohnsonMProper => GraphSpec::johnson_power(n, self.k, self.entries),
        }
    }

    pub fn run(&self, workers: usize) -> Result<VerificationReport> {
        let ground = build_ground_set(self.k, self.r, self.construction)?;
        verify_coloring(&self.spec()?, &ground, self.entries, self.property, workers)
    }
}

const fn square(
    name: &'static str,
    k: usize,
    r: usize,
    construction: Construction,
) -> DeskInstance {
    DeskInstance {
        name,
        k,
        r,
        construction,
        property: Property::SquareProper,
        entries: r,
        claimed_pass: true,
    }
}

pub fn desk_instances() -> Vec<DeskInstance> {
    vec![
        square("full field GF(8), K²(8,3)", 3, 2, Construction::FullField),
        square("full field GF(16), K²(16,7)", 7, 2, Construction::FullField),
        square("GF(8)\\{0}, K²(7,3)", 3, 1, Construction::FieldMinusZero),
        square("GF(16)\\{0}, K²(15,6)", 6, 3, Construction::FieldMinusZero),
        square(
            "GF(16)\\GF(4), K²(12,5)",
            5,
            2,
            Construction::FieldMinusSubfield { t_prime: 2 },
        ),
        square(
            "(GF(16)\\GF(4))∪{0}, K²(13,6)",
            6,
            1,
            Construction::FieldMinusSubfieldPlusZero { t_prime: 2 },
        ),
        DeskInstance {
            name: "GF(11) prefix, injective K(10,4)",
            k: 4,
            r: 2,
            construction: Construction::PrimePrefix,
            property: Property::Injective,
            entries: 2,
            claimed_pass: true,
        },
        DeskInstance {
            name: "GF(11) prefix, J²(10,4)",
            k: 4,
            r: 2,
            construction: Construction::PrimePrefix,
            property: Property::JohnsonMProper,
            entries: 2,
            claimed_pass: true,
        },
        DeskInstance {
            name: "truncated to e_1, K²(8,3)",
            k: 3,
            r: 2,
            construction: Construction::FullField,
            property: Property::SquareProper,
            entries: 1,
            claimed_pass: false,
        },
    ]
}
