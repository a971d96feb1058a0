//! Property suites: free-algebra laws under proptest, quotient-ring laws and
//! extension arithmetic under seeded sampling, and the independence
//! cross-check of the structured normal-form multiplication against plain
//! word rewriting on the flattened presentation.

mod common;

use proptest::prelude::*;

use common::*;
use pbwforge::coeffring::Strategy as ReductionStrategy;
use pbwforge::dsl;
use pbwforge::freealg::{Alphabet, FreePoly, Word};
use pbwforge::homog;
use pbwforge::scalar::Scalar;
use pbwforge::skewext::FiltrationMode;

// ---- free algebra, via proptest ----

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::new(if n == 0 { 1 } else { n }, d).unwrap())
}

fn arb_poly(letters: usize, max_len: usize) -> impl Strategy<Value = FreePoly> {
    let word = proptest::collection::vec(0..letters, 0..=max_len);
    proptest::collection::vec((word, arb_scalar()), 1..=5).prop_map(move |terms| {
        let alphabet = Alphabet::new((0..letters).map(|i| format!("g{i}"))).unwrap();
        FreePoly::from_terms(
            alphabet,
            terms
                .into_iter()
                .map(|(letters, coeff)| (Word::from_letters(letters), coeff)),
        )
    })
}

proptest! {
    #[test]
    fn homogenization_round_trip(f in arb_poly(3, 5)) {
        prop_assume!(!f.is_zero());
        let degree = f.degree().unwrap();
        let h = f.homogenized("hz").unwrap();
        prop_assert!(h.is_homogeneous());
        prop_assert_eq!(h.degree(), Some(degree));
        let z = h.alphabet().index_of("hz").unwrap();
        let back = h.substitute_unit(z);
        let lifted = f.map_letters(h.alphabet().clone(), |id| id);
        prop_assert_eq!(back, lifted);
    }

    #[test]
    fn product_degree_is_additive(f in arb_poly(3, 4), g in arb_poly(3, 4)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let product = f.mul(&g).unwrap();
        prop_assert_eq!(
            product.degree(),
            Some(f.degree().unwrap() + g.degree().unwrap())
        );
    }

    #[test]
    fn leading_part_is_multiplicative(f in arb_poly(3, 4), g in arb_poly(3, 4)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let lhs = f.mul(&g).unwrap().leading_part().unwrap();
        let rhs = f
            .leading_part()
            .unwrap()
            .mul(&g.leading_part().unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_form_is_stable(f in arb_poly(3, 5)) {
        let rebuilt = FreePoly::from_terms(
            f.alphabet().clone(),
            f.terms().map(|(w, c)| (w.clone(), c.clone())),
        );
        prop_assert_eq!(rebuilt, f);
    }
}

// ---- quotient-ring laws, sampled ----

#[test]
fn reduction_strategies_agree_on_catalog_bases() {
    for name in ALL_ENTRIES {
        let ext = load(name);
        let ring = ext.base();
        let mut rng = rng_for(name, 1);
        for _ in 0..60 {
            let raw = random_relement(&mut rng, ring, 4);
            let left = ring
                .reduce_with(raw.poly(), ReductionStrategy::LeftmostInnermost)
                .unwrap();
            let right = ring
                .reduce_with(raw.poly(), ReductionStrategy::RightmostOutermost)
                .unwrap();
            assert_eq!(left, right, "strategy disagreement on {name}");
        }
    }
}

#[test]
fn ring_degree_is_submultiplicative() {
    for name in ALL_ENTRIES {
        let ext = load(name);
        let ring = ext.base();
        if ring.generator_count() == 0 {
            continue;
        }
        let mut rng = rng_for(name, 2);
        for _ in 0..80 {
            let a = random_relement(&mut rng, ring, 4);
            let b = random_relement(&mut rng, ring, 4);
            let product = a.mul(&b, ring).unwrap();
            if !product.is_zero() {
                assert!(
                    product.deg().unwrap() <= a.deg().unwrap() + b.deg().unwrap(),
                    "degree grew under multiplication on {name}"
                );
            }
        }
    }
}

#[test]
fn twisted_leibniz_rule_holds_exactly() {
    for name in FILTERED_ENTRIES {
        let ext = load(name);
        let ring = ext.base();
        if ring.generator_count() == 0 {
            continue;
        }
        let mut rng = rng_for(name, 3);
        for i in 0..ext.variable_count() {
            let sigma = ext.sigma(i);
            let delta = ext.delta(i);
            for _ in 0..40 {
                let a = random_relement(&mut rng, ring, 4);
                let b = random_relement(&mut rng, ring, 4);
                let product = a.mul(&b, ring).unwrap();
                let lhs = delta.apply(&product, ring).unwrap();
                let rhs = sigma
                    .apply(&a, ring)
                    .unwrap()
                    .mul(&delta.apply(&b, ring).unwrap(), ring)
                    .unwrap()
                    .add(&delta.apply(&a, ring).unwrap().mul(&b, ring).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "Leibniz violated on {name} variable {i}");
            }
        }
    }
}

#[test]
fn filtered_maps_respect_element_degrees() {
    for name in FILTERED_ENTRIES {
        let ext = load(name);
        let ring = ext.base();
        if ring.generator_count() == 0 {
            continue;
        }
        let mut rng = rng_for(name, 4);
        for i in 0..ext.variable_count() {
            for _ in 0..40 {
                let a = random_relement(&mut rng, ring, 4);
                let deg = a.deg().unwrap();
                let sa = ext.sigma(i).apply(&a, ring).unwrap();
                if !sa.is_zero() {
                    assert!(sa.deg().unwrap() <= deg, "sigma raised degree on {name}");
                }
                let da = ext.delta(i).apply(&a, ring).unwrap();
                if !da.is_zero() {
                    assert!(
                        da.deg().unwrap() <= deg + 1,
                        "delta broke the shift on {name}"
                    );
                }
            }
        }
    }
}

// ---- extension arithmetic cross-checks ----

#[test]
fn structured_product_matches_word_rewriting() {
    for name in FILTERED_ENTRIES {
        let ext = load(name);
        let flat = homog::full_presentation(&ext).unwrap();
        let mut rng = rng_for(name, 5);
        for _ in 0..40 {
            let f = random_aelement(&mut rng, &ext, 3);
            let g = random_aelement(&mut rng, &ext, 3);
            let structured = flatten_element(&ext.mul(&f, &g).unwrap(), &ext, &flat);
            let word_level = flatten_element(&f, &ext, &flat)
                .mul(&flatten_element(&g, &ext, &flat), &flat)
                .unwrap();
            assert_eq!(structured, word_level, "product mismatch on {name}");
        }
    }
}

#[test]
fn display_round_trips_through_the_expression_parser() {
    for name in FILTERED_ENTRIES {
        let ext = load(name);
        let mut rng = rng_for(name, 6);
        for _ in 0..25 {
            let f = random_aelement(&mut rng, &ext, 3);
            let shown = ext.display(&f).to_string();
            let parsed = dsl::evaluate_element(&ext, &shown)
                .unwrap_or_else(|e| panic!("`{shown}` failed to re-parse on {name}: {e:?}"));
            assert_eq!(
                parsed, f,
                "display round trip changed the element on {name}"
            );
        }
    }
}

#[test]
fn trivial_filtration_collapses_tdeg_onto_monomial_degree() {
    for name in ALL_ENTRIES {
        let ext = load(name);
        let mut rng = rng_for(name, 7);
        for _ in 0..40 {
            let f = random_aelement(&mut rng, &ext, 3);
            assert_eq!(
                ext.tdeg_with(&f, FiltrationMode::Trivial).unwrap(),
                ext.lr_degree(&f).unwrap(),
                "degree functions differ on {name}"
            );
        }
    }
}

#[test]
fn emitter_round_trips_every_catalog_entry() {
    for entry in pbwforge::catalog::entries() {
        let file = pbwforge::catalog::load(entry.name).unwrap();
        let ext = file.extension.unwrap();
        let emitted = dsl::emit_extension(&ext, file.central.as_deref());
        let reparsed = dsl::parse(&emitted)
            .unwrap_or_else(|e| panic!("emitted `{}` does not reparse: {e:?}", entry.name));
        assert_eq!(
            reparsed.ring,
            *ext.base(),
            "ring round trip failed for {}",
            entry.name
        );
        assert_eq!(
            reparsed.extension.unwrap(),
            ext,
            "extension round trip failed for {}",
            entry.name
        );
    }
}

#[test]
fn homogenized_rules_are_homogeneous() {
    for name in FILTERED_ENTRIES {
        let ext = load(name);
        let h = homog::homogenize_extension(&ext).unwrap();
        let flat = h.full_presentation().unwrap();
        for rule in flat.ring().rules() {
            assert!(
                rule.rhs().is_zero()
                    || (rule.rhs().is_homogeneous()
                        && rule.rhs().degree() == Some(rule.lhs().degree())),
                "inhomogeneous homogenized rule on {name}"
            );
        }
    }
}
