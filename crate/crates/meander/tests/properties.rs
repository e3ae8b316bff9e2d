//! Randomised invariants over diagrams, strata, components, lifts and the union-find.

use std::sync::OnceLock;

use proptest::prelude::*;

use meander::canonical::{canonical_form, symmetry_images};
use meander::dsu::Dsu;
use meander::enumerate::{enumerate_with, shared_variants, EnumerationQuery, ExecMode};
use meander::surface::{classify_component, lift_with, BranchSet, Component, PillowcaseCover};
use meander::verify::{table_formula, Case};
use meander::{CombinatorialMap, Kind, MeanderDiagram, StratumSignature};

/// Every diagram with at most six crossings, including shared-anchor variants.
fn corpus() -> &'static [MeanderDiagram] {
    static CORPUS: OnceLock<Vec<MeanderDiagram>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut out = Vec::new();
        for kind in Kind::ALL {
            for n in 1..=6 {
                for d in enumerate_with(&EnumerationQuery::new(kind, n), ExecMode::Sequential) {
                    out.extend(shared_variants(&d));
                    out.push(d);
                }
            }
        }
        out
    })
}

fn diagram() -> impl Strategy<Value = MeanderDiagram> {
    (0..corpus().len()).prop_map(|i| corpus()[i].clone())
}

fn component() -> impl Strategy<Value = Component> {
    prop_oneof![
        (2u32..8).prop_map(|g| Component::AbelianOneZero { g }),
        (2u32..8).prop_map(|g| Component::AbelianTwoZeros { g }),
        (0u32..6, 0u32..6).prop_map(|(a, b)| Component::TwoFixedZeros { j: a.min(b), k: a.max(b) }),
        (0u32..6, 0u32..6)
            .prop_filter("not both zero", |&(j, k)| j + k > 0)
            .prop_map(|(j, k)| Component::FixedZeroAndPair { j, k }),
        (0u32..6, 1u32..6).prop_map(|(a, b)| Component::TwoPairs { j: a.min(b), k: a.max(b) }),
        Just(Component::FixedZeroAndPolePair),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn diagrams_are_valid_and_round_trip_through_json(d in diagram()) {
        prop_assert!(d.validate().is_ok());
        let back = MeanderDiagram::from_json(&d.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), d.to_json());
        prop_assert_eq!(canonical_form(&back), canonical_form(&d));
    }

    #[test]
    fn symmetries_preserve_the_canonical_form_and_stratum(d in diagram()) {
        let code = canonical_form(&d);
        let s = meander::stratum(&d).unwrap();
        for image in symmetry_images(&d) {
            prop_assert!(image.validate().is_ok());
            prop_assert_eq!(image.crossings(), d.crossings());
            prop_assert_eq!(canonical_form(&image), code.clone());
            prop_assert_eq!(meander::stratum(&image).unwrap(), s.clone());
        }
    }

    #[test]
    fn sphere_invariants_hold(d in diagram()) {
        let m = CombinatorialMap::build(&d).unwrap();
        prop_assert_eq!(m.euler_characteristic().unwrap(), 2);
        prop_assert_eq!(meander::stratum(&d).unwrap().sum(), -4);
    }

    #[test]
    fn random_lifts_obey_riemann_hurwitz(d in diagram(), bits in any::<u64>()) {
        let m = CombinatorialMap::build(&d).unwrap();
        let ft = m.face_table().unwrap();
        let mut b = BranchSet::all_poles(&m, &ft);
        for f in 0..ft.faces.len() {
            if ft.faces[f].order() != -1 {
                b.faces[f] = bits >> (f % 64) & 1 == 1;
            }
        }
        prop_assume!(b.size().is_multiple_of(2));
        let (lift, _) = lift_with(&m, &b).unwrap();
        let cover = &lift.cover;
        prop_assert!(cover.is_connected());
        let chi = 4 - b.size() as i64;
        prop_assert_eq!(cover.euler_characteristic(), chi);
        let g = cover.genus() as i32;
        prop_assert_eq!(2 - 2 * g as i64, chi);
        prop_assert_eq!(cover.stratum().unwrap().sum(), 4 * g - 4);
        let back = PillowcaseCover::from_json(&cover.to_json()).unwrap();
        prop_assert_eq!(&back, cover);
        if let Ok(c) = classify_component(&lift) {
            prop_assert_eq!(c.genus() as i32, g);
            prop_assert_eq!(c.stratum().orders, cover.stratum().unwrap().orders);
        }
    }

    #[test]
    fn strata_round_trip_through_text(orders in prop::collection::vec(-1i32..9, 0..10)) {
        let s = StratumSignature::new(orders).unwrap();
        let text = s.to_string();
        prop_assert_eq!(text.parse::<StratumSignature>().unwrap(), s.clone());
        prop_assert!(text.starts_with("Q(") && text.ends_with(')'));
    }

    #[test]
    fn components_round_trip_through_text(c in component()) {
        prop_assert_eq!(c.to_string().parse::<Component>().unwrap(), c);
        // Abelian components are listed by the orders of their squared differential.
        prop_assert_eq!(c.stratum().sum(), 4 * c.genus() as i32 - 4);
        prop_assert_eq!(c.quotient_stratum().sum(), -4);
    }

    #[test]
    fn separating_cores_never_reduce_the_square_count(c in component()) {
        let values: Vec<usize> = Case::ALL.iter().filter_map(|&case| table_formula(c, case).ok()).collect();
        prop_assert!(!values.is_empty());
        prop_assert!(values.windows(2).all(|w| w[0] <= w[1]), "{c}: {values:?}");
    }

    #[test]
    fn union_find_matches_a_naive_partition(
        n in 1usize..40,
        ops in prop::collection::vec((any::<usize>(), any::<usize>(), any::<bool>()), 0..80),
    ) {
        let mut dsu = Dsu::new(n);
        let mut history: Vec<Vec<usize>> = vec![(0..n).collect()];
        for (a, b, undo) in ops {
            if undo && history.len() > 1 {
                dsu.undo();
                history.pop();
            } else {
                let (a, b) = (a % n, b % n);
                let mut label = history.last().unwrap().clone();
                let (from, to) = (label[a], label[b]);
                for l in label.iter_mut() {
                    if *l == from {
                        *l = to;
                    }
                }
                history.push(label);
                dsu.union(a, b);
            }
            let label = history.last().unwrap();
            for x in 0..n {
                for y in 0..n {
                    prop_assert_eq!(dsu.same(x, y), label[x] == label[y]);
                }
            }
            let mut classes = label.clone();
            classes.sort_unstable();
            classes.dedup();
            prop_assert_eq!(dsu.components(), classes.len());
        }
    }
}
