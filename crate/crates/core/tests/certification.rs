//! Exhaustive certification sweeps over desk-scale instances.

use kneser_chroma::coloring::Construction;
use kneser_chroma::esym_naive;
use kneser_chroma::kneser::distance2_related;
use kneser_chroma::{
    binomial, bounds_report, build_ground_set, check_ground_set, clique_witness,
    enumerate_vertices, exact_chromatic, greedy_chromatic, verify_coloring, GraphSpec, GroundSet,
    Property,
};

/// Every binary construction with field degree `t <= max_t`, as `(k, r, construction)`.
fn binary_instances(max_t: u32) -> Vec<(usize, usize, Construction)> {
    let mut out = Vec::new();
    for k in 2..=40usize {
        for r in 1..k {
            let mut push = |c: Construction| {
                if build_ground_set(k, r, c).is_ok_and(|g| g.field().degree() <= max_t) {
                    out.push((k, r, c));
                }
            };
            push(Construction::FullField);
            push(Construction::FieldMinusZero);
            for t_prime in 1..max_t {
                push(Construction::FieldMinusSubfield { t_prime });
                push(Construction::FieldMinusSubfieldPlusZero { t_prime });
            }
        }
    }
    out
}

/// Pair scan with colors from the subset definition and predicates
/// evaluated directly on the vertices.
fn naive_verdict(spec: &GraphSpec, ground: &GroundSet, r: usize, property: Property) -> bool {
    let vs = enumerate_vertices(spec.n, spec.k).unwrap();
    let field = ground.field();
    let colors: Vec<Vec<_>> = vs
        .iter()
        .map(|v| {
            let members = ground.subset(v);
            (1..=r)
                .map(|i| esym_naive(field, &members, i).unwrap())
                .collect()
        })
        .collect();
    for i in 0..vs.len() {
        for j in 0..vs.len() {
            if i == j {
                continue;
            }
            let constrained = match property {
                Property::Injective => distance2_related(spec.n, spec.k, &vs[i], &vs[j]),
                _ => spec.adjacent(&vs[i], &vs[j]),
            };
            if constrained && colors[i] == colors[j] {
                return false;
            }
        }
    }
    true
}

#[test]
fn constructions_vanish_on_odd_indices() {
    let instances = binary_instances(5);
    assert_eq!(instances.len(), 18);
    for (k, r, c) in instances {
        let g = build_ground_set(k, r, c).unwrap();
        assert!(check_ground_set(&g, r), "(k, r) = ({k}, {r}), {c}");
    }
}

#[test]
fn binary_constructions_color_the_square() {
    let mut seen = 0;
    for (k, r, c) in binary_instances(4) {
        let n = 2 * k + r;
        if binomial(n, k) > 200_000 {
            continue;
        }
        let g = build_ground_set(k, r, c).unwrap();
        let spec = GraphSpec::kneser_square(n, k).unwrap();
        let report = verify_coloring(&spec, &g, r, Property::SquareProper, 4).unwrap();
        // With r = 1 the plus-zero form leaves S = {0} for some disjoint pairs,
        // and then e_1(A) = e_1(B).
        let expected = !(r == 1 && matches!(c, Construction::FieldMinusSubfieldPlusZero { .. }));
        assert_eq!(report.passed, expected, "(k, r) = ({k}, {r}), {c}");
        assert!(report.distinct_colors as u64 <= report.color_space);
        seen += 1;
    }
    assert!(seen >= 8, "only {seen} instances");
}

#[test]
fn prime_prefix_injective() {
    for (k, r) in [(3, 1), (3, 2), (4, 2), (5, 2), (6, 3)] {
        let n = 2 * k + r;
        let g = build_ground_set(k, r, Construction::PrimePrefix).unwrap();
        let spec = GraphSpec::kneser(n, k).unwrap();
        let report = verify_coloring(&spec, &g, r, Property::Injective, 2).unwrap();
        assert!(report.passed, "(k, r) = ({k}, {r})");
        for m in 1..=r {
            let spec = GraphSpec::johnson_power(n, k, m).unwrap();
            let report = verify_coloring(&spec, &g, m, Property::JohnsonMProper, 2).unwrap();
            assert!(report.passed, "J^{m}({n},{k})");
        }
    }
}

#[test]
fn fast_scan_agrees_with_naive_scan() {
    let mut cases = 0;
    for k in 2..=6usize {
        for r in 1..k {
            let n = 2 * k + r;
            if binomial(n, k) > 300 {
                continue;
            }
            let mut grounds = vec![build_ground_set(k, r, Construction::PrimePrefix).unwrap()];
            for c in [Construction::FullField, Construction::FieldMinusZero] {
                if let Ok(g) = build_ground_set(k, r, c) {
                    grounds.push(g);
                }
            }
            for g in &grounds {
                for entries in 1..=r {
                    let checks = [
                        (
                            GraphSpec::kneser_square(n, k).unwrap(),
                            Property::SquareProper,
                        ),
                        (GraphSpec::kneser(n, k).unwrap(), Property::Injective),
                        (
                            GraphSpec::johnson_power(n, k, entries).unwrap(),
                            Property::JohnsonMProper,
                        ),
                    ];
                    for (spec, property) in checks {
                        let fast = verify_coloring(&spec, g, entries, property, 1).unwrap();
                        assert_eq!(
                            fast.passed,
                            naive_verdict(&spec, g, entries, property),
                            "{spec:?} {property:?} r = {entries} over {}",
                            g.construction()
                        );
                        cases += 1;
                    }
                }
            }
        }
    }
    assert!(cases >= 20);
}

#[test]
fn degenerate_squares_have_known_chromatic_numbers() {
    for n in 2..=12usize {
        for k in 1..=n / 2 {
            let count = binomial(n, k);
            if count > 60 {
                continue;
            }
            let spec = GraphSpec::kneser_square(n, k).unwrap();
            let chi = exact_chromatic(&spec).unwrap();
            if n == 2 * k {
                assert_eq!(chi, 2, "K²({n},{k})");
            } else if n + 1 >= 3 * k {
                assert_eq!(chi as u128, count, "K²({n},{k})");
            }
        }
    }
}

#[test]
fn kneser_chromatic_matches_known_value() {
    for (n, k) in [(5, 2), (6, 2), (7, 2), (7, 3), (8, 3)] {
        let chi = exact_chromatic(&GraphSpec::kneser(n, k).unwrap()).unwrap();
        assert_eq!(chi, n - 2 * k + 2, "K({n},{k})");
    }
}

#[test]
fn bound_chain_is_monotone() {
    for (k, r) in [(2, 1), (3, 1), (3, 2)] {
        let n = 2 * k + r;
        let spec = GraphSpec::kneser_square(n, k).unwrap();
        let clique = clique_witness(k, r).unwrap().len();
        let exact = exact_chromatic(&spec).unwrap();
        let greedy = greedy_chromatic(&spec, None).unwrap();
        let best = bounds_report(k, r).unwrap().best_upper.floor();
        assert!(clique <= exact, "(k, r) = ({k}, {r})");
        assert!(exact <= greedy);
        assert!(
            num_bigint::BigInt::from(greedy) <= best,
            "greedy {greedy} vs bound {best}"
        );
    }
}
