mod common;

use std::cmp::Ordering;

use common::Poly;
use forcing_core::ordinal::{parse, sup};
use forcing_core::{Ordinal, OrdinalKind};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(0u64..=5, 0..5).prop_map(|mut c| {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly(c)
    })
}

/// Ordinals below ω^(ω^ω): sums of terms whose exponents are below ω^ω.
fn deep() -> impl Strategy<Value = Ordinal> {
    prop::collection::vec((poly(), 1u64..=4), 0..4).prop_map(|mut terms| {
        terms.sort_by_key(|t| std::cmp::Reverse(t.0.to_ordinal()));
        terms.dedup_by(|a, b| a.0 == b.0);
        let terms = terms
            .into_iter()
            .map(|(e, c)| (e.to_ordinal(), c.into()))
            .collect();
        Ordinal::from_terms(terms).expect("strictly decreasing exponents")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn add_and_mul_match_coefficient_model(a in poly(), b in poly()) {
        prop_assert_eq!(&a.to_ordinal() + &b.to_ordinal(), a.add(&b).to_ordinal());
        prop_assert_eq!(&a.to_ordinal() * &b.to_ordinal(), a.mul(&b).to_ordinal());
    }

    #[test]
    fn compare_matches_substitution(a in poly(), b in poly()) {
        // coefficients are at most 5, so base 6 is an order embedding
        prop_assert_eq!(a.to_ordinal().compare(&b.to_ordinal()), a.eval(6).cmp(&b.eval(6)));
    }

    #[test]
    fn compare_is_a_total_order(a in deep(), b in deep(), c in deep()) {
        prop_assert_eq!(a.compare(&b), b.compare(&a).reverse());
        prop_assert_eq!(a.compare(&b) == Ordering::Equal, a == b);
        if a.compare(&b) != Ordering::Greater && b.compare(&c) != Ordering::Greater {
            prop_assert_ne!(a.compare(&c), Ordering::Greater);
        }
    }

    #[test]
    fn associativity_and_left_distributivity(a in deep(), b in deep(), c in deep()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn successor_and_unit_clauses(a in deep(), b in deep()) {
        let one = Ordinal::one();
        prop_assert_eq!(&a + &Ordinal::zero(), a.clone());
        prop_assert_eq!(&a + &(&b + &one), &(&a + &b) + &one);
        prop_assert_eq!(&a * &Ordinal::zero(), Ordinal::zero());
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert_eq!(&a * &(&b + &one), &(&a * &b) + &a);
    }

    #[test]
    fn addition_is_strictly_monotone_on_the_right(a in deep(), b in deep(), c in deep()) {
        if b < c {
            prop_assert!(&a + &b < &a + &c);
        }
    }

    #[test]
    fn pow_successor_clause(a in deep(), b in deep()) {
        prop_assert_eq!(a.pow(&b.successor()), &a.pow(&b) * &a);
    }

    #[test]
    fn pow_adds_exponents(a in poly(), b in poly(), c in poly()) {
        let (a, b, c) = (a.to_ordinal(), b.to_ordinal(), c.to_ordinal());
        prop_assert_eq!(a.pow(&(&b + &c)), &a.pow(&b) * &a.pow(&c));
    }

    #[test]
    fn rendering_round_trips(a in deep()) {
        prop_assert_eq!(parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn classification(a in deep()) {
        let kind = a.classify();
        prop_assert_eq!(kind == OrdinalKind::Zero, a.is_zero());
        prop_assert_eq!(a.successor().classify(), OrdinalKind::Successor);
        if kind == OrdinalKind::Limit {
            // no ordinal has a limit as its successor
            prop_assert!(a.terms().last().is_some_and(|t| !t.exponent().is_zero()));
        }
    }
}

#[test]
fn pow_limit_clause_is_a_supremum() {
    // a^w is the least ordinal above every a^n
    for a in ["2", "3", "w", "w+1", "w^2*3+w"] {
        let a = parse(a).unwrap();
        let limit = a.pow(&Ordinal::omega());
        let finite: Vec<Ordinal> = (0..12u64).map(|n| a.pow(&Ordinal::from_nat(n))).collect();
        assert!(finite.iter().all(|x| x < &limit));
        assert!(finite.windows(2).all(|w| w[0] < w[1]));
        // sampled ordinals below the limit are below some finite power
        let samples = ["5", "1000", "w*7", "w^3+2", "w^(w)*2", "w^(w+1)*3+w"];
        for x in samples
            .map(|s| parse(s).unwrap())
            .iter()
            .filter(|x| *x < &limit)
        {
            assert!(finite.iter().any(|y| x < y), "{x} below {limit}");
        }
    }
}

#[test]
fn sup_is_the_maximum() {
    let xs = ["1", "3", "2"].map(|s| parse(s).unwrap());
    assert_eq!(sup(&xs), Ordinal::from_nat(3u64));
    assert_eq!(sup(&[]), Ordinal::zero());
    let ys = ["w", "w+1"].map(|s| parse(s).unwrap());
    assert_eq!(sup(&ys).to_string(), "w + 1");
}
