mod common;

use std::sync::OnceLock;

use acx::acomplex::build_complex;
use acx::classify::{
    dedupe, enumerate_setting, inequalities_hold, is_normalised, Candidate, SettingId,
    classify_setting,
};
use acx::cli::{format_rational, parse_rational, InputDocument};
use acx::exactla::{hnf, min_integral_multiplier, snf, solve_rational, IntMat, Rat};
use acx::polyhedra::{truncate, Cone};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMat> {
    prop::collection::vec(-6i64..=6, rows * cols).prop_map(move |entries| {
        IntMat::from_fn(rows, cols, |i, j| BigInt::from(entries[i * cols + j]))
    })
}

fn shaped_matrix() -> impl Strategy<Value = IntMat> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(rows, cols)| matrix(rows, cols))
}

fn vector(n: usize, bound: i64) -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec(-bound..=bound, n).prop_map(|v| v.into_iter().map(BigInt::from).collect())
}

fn is_unimodular(u: &IntMat) -> bool {
    u.det().abs().is_one()
}

fn contains_point(cone: &Cone, x: &[BigInt]) -> bool {
    cone.contains_int(x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hermite_form_is_reduced_echelon(m in shaped_matrix()) {
        let (h, u) = hnf(&m);
        prop_assert!(is_unimodular(&u));
        prop_assert!(u.mul(&m) == h);
        let mut last_pivot = None;
        for i in 0..h.rows() {
            match (0..h.cols()).find(|&j| !h.get(i, j).is_zero()) {
                Some(j) => {
                    prop_assert!(last_pivot.is_none_or(|p| p < j));
                    prop_assert!(h.get(i, j).is_positive());
                    for above in 0..i {
                        prop_assert!(!h.get(above, j).is_negative() && h.get(above, j) < h.get(i, j));
                    }
                    last_pivot = Some(j);
                }
                None => prop_assert!((i..h.rows()).all(|k| (0..h.cols()).all(|j| h.get(k, j).is_zero()))),
            }
        }
    }

    #[test]
    fn smith_form_is_diagonal_chain(m in shaped_matrix()) {
        let (s, u, v) = snf(&m);
        prop_assert!(is_unimodular(&u) && is_unimodular(&v));
        prop_assert!(u.mul(&m).mul(&v) == s);
        let diagonal: Vec<BigInt> = (0..s.rows().min(s.cols())).map(|i| s.get(i, i).clone()).collect();
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                prop_assert!(i == j || s.get(i, j).is_zero());
            }
        }
        prop_assert!(diagonal.iter().all(|d| !d.is_negative()));
        for pair in diagonal.windows(2) {
            prop_assert!(pair[1].is_zero() || (!pair[0].is_zero() && pair[1].is_multiple_of(&pair[0])));
        }
    }

    #[test]
    fn multiplier_clears_denominators(m in matrix(3, 3), b in vector(3, 5)) {
        prop_assume!(!m.det().is_zero());
        let rhs: Vec<Rat> = b.iter().map(|x| Rat::from_integer(x.clone())).collect();
        let solution = solve_rational(&m.to_rat(), &rhs).expect("non-singular");
        let expected = solution.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        prop_assert_eq!(min_integral_multiplier(&m, &rhs), Some(expected));
    }

    #[test]
    fn cone_round_trips_through_inequalities(gens in prop::collection::vec(vector(3, 4), 1..6)) {
        let cone = Cone::from_generators(3, &gens).unwrap();
        let back = Cone::from_inequalities(3, cone.equations(), cone.facets()).unwrap();
        prop_assert_eq!(&back, &cone);
        prop_assert!(gens.iter().all(|g| contains_point(&cone, g)));
    }

    #[test]
    fn intersection_is_pointwise(
        first in prop::collection::vec(vector(3, 3), 1..5),
        second in prop::collection::vec(vector(3, 3), 1..5),
        probes in prop::collection::vec(vector(3, 4), 16),
    ) {
        let a = Cone::from_generators(3, &first).unwrap();
        let b = Cone::from_generators(3, &second).unwrap();
        let meet = a.intersect(&b);
        for x in &probes {
            prop_assert_eq!(contains_point(&meet, x), contains_point(&a, x) && contains_point(&b, x));
        }
    }

    #[test]
    fn truncation_vertices_sit_on_two_levels(
        gens in prop::collection::vec(vector(3, 4), 3..6),
        weights in prop::collection::vec(1i64..=3, 6),
    ) {
        let cone = Cone::from_generators(3, &gens).unwrap();
        prop_assume!(cone.is_pointed() && cone.dim() == 3);
        // minus a positive combination of the facet normals is negative on every ray
        let u: Vec<Rat> = (0..3)
            .map(|k| {
                let sum: BigInt = cone.facets().iter().zip(weights.iter().cycle()).map(|(f, w)| &f[k] * w).sum();
                Rat::from_integer(-sum)
            })
            .collect();
        let cell = truncate(&cone, &u).unwrap();
        prop_assert!(cell.is_polytope());
        prop_assert!(cell.has_origin_vertex());
        for v in &cell.vertices {
            let value = v.iter().zip(&u).fold(Rat::zero(), |acc, (x, y)| acc + x * y);
            prop_assert!(value.is_zero() || value == -Rat::one());
        }
    }

    #[test]
    fn rational_strings_round_trip(numer in -10_000i64..10_000, denom in 1i64..500) {
        let x = Rat::new(numer.into(), denom.into());
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn input_documents_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(data) = (0..50).find_map(|_| common::random_data(&mut rng)) {
            let doc = InputDocument::from_data(&data, None);
            let text = serde_json::to_string(&doc).unwrap();
            let back = InputDocument::from_json(&text).unwrap();
            prop_assert_eq!(&back, &doc);
            prop_assert!(back.to_data().unwrap() == data);
        }
    }
}

fn index_two_candidates() -> &'static [Candidate] {
    static CANDIDATES: OnceLock<Vec<Candidate>> = OnceLock::new();
    CANDIDATES.get_or_init(|| {
        SettingId::ALL.iter().flat_map(|&id| classify_setting(id, 2, 1).unwrap().accepted).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dedupe_ignores_input_order(seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let original = index_two_candidates();
        let mut shuffled = original.to_vec();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let summary = |groups: Vec<acx::classify::DedupeGroup>| {
            let mut classes: Vec<(acx::classify::Fingerprint, Vec<String>)> = groups
                .into_iter()
                .map(|g| {
                    let mut members: Vec<String> = std::iter::once(&g.representative)
                        .chain(&g.duplicates)
                        .map(|c| c.tuple.to_string())
                        .collect();
                    members.sort();
                    (g.fingerprint, members)
                })
                .collect();
            classes.sort();
            classes
        };
        let before = summary(dedupe(original));
        let after = summary(dedupe(&shuffled));
        prop_assert_eq!(before.iter().map(|(_, m)| m.len()).sum::<usize>(), original.len());
        prop_assert_eq!(before, after);
    }
}

#[test]
fn enumerated_tuples_are_normalised_and_sorted() {
    for iota in 1..=3 {
        for id in SettingId::ALL {
            let tuples = enumerate_setting(id, iota).tuples;
            assert!(tuples.windows(2).all(|w| w[0] < w[1]), "setting {id} at {iota} not strictly sorted");
            for t in &tuples {
                assert!(is_normalised(t), "{t} is not normalised");
                assert!(inequalities_hold(t), "{t} violates the defining inequalities");
            }
        }
    }
}

#[test]
fn setting_two_mixed_case_respects_parity() {
    // with d01 = 0 the two exponent blocks enter symmetrically, so only the
    // ordered representative l21 ≥ l22 is emitted
    for iota in 1..=3 {
        for t in enumerate_setting(SettingId::new(2).unwrap(), iota).tuples {
            if t.get("d01") == 0 {
                assert!(t.get("l21") >= t.get("l22"), "{t}");
            }
        }
    }
}

#[test]
fn boundary_cells_avoid_the_origin() {
    let mut instances = vec![common::worked_example()];
    for iota in 1..=2 {
        for c in SettingId::ALL.iter().flat_map(|&id| classify_setting(id, iota, 1).unwrap().accepted) {
            instances.push((c.data, c.fan));
        }
    }
    for (data, fan) in instances {
        let ac = build_complex(&data, &fan).unwrap();
        for b in &ac.boundary_cells {
            let u = &ac.cells[b.cell].support.u;
            for v in &b.vertices {
                assert!(v.iter().any(|x| !x.is_zero()), "origin in a boundary cell of {:?}", data.p());
                let value = v.iter().zip(u).fold(Rat::zero(), |acc, (x, y)| acc + x * y);
                assert_eq!(value, -Rat::one());
            }
        }
        for (k, cell) in ac.cells.iter().enumerate() {
            let reaches_level = cell.cell.vertices.len() > 1;
            assert_eq!(ac.boundary_cells.iter().any(|b| b.cell == k), reaches_level, "cell {k} of {:?}", data.p());
        }
    }
}
