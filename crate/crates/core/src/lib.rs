//! Algebraic colorings of Kneser graph squares.
//!
//! A vertex of the Kneser graph `K(n, k)` is a `k`-subset of a ground set
//! `X`. When `X` is a subset of a finite field `F`, the map
//!
//! ```text
//! f(A) = (e_1(A), e_2(A), ..., e_r(A))  in F^r
//! ```
//!
//! built from the elementary symmetric polynomials of `A` separates every
//! pair of vertices at distance two in `K(2k + r, k)`. Over a field of
//! characteristic 2, and with a ground set whose odd-index symmetric
//! polynomials vanish, it also separates disjoint pairs, so it properly
//! colors the square `K²(2k + r, k)` with at most `|F|^r` colors.
//!
//! The crate is split into:
//!
//! * [`gf`]: prime fields `GF(p)` and binary fields `GF(2^t)`.
//! * [`esym`]: elementary symmetric polynomial evaluation.
//! * [`kneser`]: bitmask vertices and adjacency predicates for `K`, `K²`
//!   and Johnson graph powers.
//! * [`coloring`]: ground-set constructions, the coloring map and the
//!   closed-form bound calculators.
//! * [`verifier`]: exhaustive certification, exact and greedy chromatic
//!   numbers for tiny instances.
//! * [`matrix`]: the fixed list of desk-scale instances reproduced by the
//!   CLI `report` command.

pub mod coloring;
pub mod error;
pub mod esym;
pub mod gf;
pub mod kneser;
pub mod matrix;
pub mod verifier;

pub use coloring::{
    bounds_report, build_ground_set, check_ground_set, clique_witness, color_all, color_vertex,
    find_prime_in_interval, BoundsReport, ColorVector, ColoringRow, ColoringTable, Construction,
    GroundSet, PrimeMode,
};
pub use error::{Error, Result};
pub use esym::{esym_naive, esym_prefix, esym_union_check, ESymVector};
pub use gf::{is_prime, Field, FieldElement, FieldKind};
pub use kneser::{binomial, enumerate_vertices, GraphSpec, KSubset, Variant};
pub use verifier::{
    exact_chromatic, greedy_chromatic, recheck_table_violation, recheck_violation, verify_coloring,
    verify_table, Property, VerificationReport, Violation,
};
