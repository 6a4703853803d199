mod common;

use std::collections::BTreeSet;

use common::*;
use fairxp_core::explain::{
    ascending_order, compute_explanation, enumerate_minimal_explanations, is_explanation,
};
use fairxp_core::model::{exists_flip, find_flip};
use fairxp_core::{Classifier, ModelOverride, PartialAssignment};
use rand::Rng;

#[test]
fn greedy_output_is_sufficient_and_minimal() {
    let mut rng = rng(11);
    for _ in 0..40 {
        let n = rng.gen_range(1..=8);
        let m = random_model(&mut rng, n);
        for _ in 0..5 {
            let x = random_individual(&mut rng, n);
            for _ in 0..3 {
                let order = random_order(&mut rng, n);
                let (e, trace) = compute_explanation(&m, &x, &order, None).unwrap();
                let mask = e.literals.mask();
                assert!(oracle_sufficient(&m, &x, mask, &all_real));
                for i in (0..n).filter(|i| mask & 1 << i != 0) {
                    assert!(!oracle_sufficient(&m, &x, mask & !(1 << i), &all_real));
                }
                assert_eq!(trace.replay(), e.literals);
                assert!(x.extends(&e.literals));
            }
        }
    }
}

#[test]
fn every_order_reaches_a_minimal_explanation_and_all_are_reached() {
    let mut rng = rng(12);
    for _ in 0..20 {
        let n = rng.gen_range(1..=6);
        let m = random_model(&mut rng, n);
        let x = random_individual(&mut rng, n);
        let expected = oracle_minimal(&m, &x, &all_real);
        let mut reached = BTreeSet::new();
        for _ in 0..50 {
            let order = random_order(&mut rng, n);
            let (e, _) = compute_explanation(&m, &x, &order, None).unwrap();
            assert!(expected.contains(&e.literals.mask()));
            reached.insert(e.literals.mask());
        }
        // each minimal explanation is the result of any order listing its
        // complement first
        for &mask in &expected {
            let mut order: Vec<_> = (0..n).filter(|i| mask & 1 << i == 0).collect();
            order.extend((0..n).filter(|i| mask & 1 << i != 0));
            let order: Vec<_> = order.into_iter().map(fairxp_core::FeatureId::new).collect();
            let (e, _) = compute_explanation(&m, &x, &order, None).unwrap();
            assert_eq!(e.literals.mask(), mask);
        }
    }
}

#[test]
fn enumeration_matches_brute_force() {
    let mut rng = rng(13);
    for _ in 0..60 {
        let n = rng.gen_range(1..=7);
        let m = random_model(&mut rng, n);
        let x = random_individual(&mut rng, n);
        let all = enumerate_minimal_explanations(&m, &x, None).unwrap();
        let masks: BTreeSet<u32> = all.iter().map(|e| e.literals.mask()).collect();
        assert_eq!(masks, oracle_minimal(&m, &x, &all_real));
        // canonical order, no duplicates, antichain
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for a in &all {
            for b in &all {
                assert!(a == b || !a.literals.is_subset(&b.literals));
            }
        }
    }
}

#[test]
fn enumeration_under_knowledge_matches_brute_force() {
    let mut rng = rng(14);
    let mut checked = 0;
    while checked < 60 {
        let n = rng.gen_range(2..=7);
        let m = random_model(&mut rng, n);
        let (k, patterns) = random_knowledge(&mut rng, n, 0);
        let x = random_individual(&mut rng, n);
        if !oracle_real(&patterns, x.bits()) {
            assert!(enumerate_minimal_explanations(&m, &x, Some(&k)).is_err());
            continue;
        }
        let real = |b: u32| oracle_real(&patterns, b);
        let all = enumerate_minimal_explanations(&m, &x, Some(&k)).unwrap();
        let masks: BTreeSet<u32> = all.iter().map(|e| e.literals.mask()).collect();
        assert_eq!(masks, oracle_minimal(&m, &x, &real));
        for e in &all {
            assert!(e.bk_aware);
            let vacuous =
                !(0..1u32 << n).any(|b| agrees(b, e.literals.mask(), x.bits()) && real(b));
            assert_eq!(e.vacuous, vacuous);
        }
        checked += 1;
    }
}

#[test]
fn knowledge_only_shrinks_explanations() {
    // every plain explanation stays sufficient under K, so each minimal one
    // contains some minimal explanation under K
    let mut rng = rng(15);
    let mut checked = 0;
    while checked < 60 {
        let n = rng.gen_range(2..=7);
        let m = random_model(&mut rng, n);
        let (k, patterns) = random_knowledge(&mut rng, n, 0);
        let x = random_individual(&mut rng, n);
        if !oracle_real(&patterns, x.bits()) {
            continue;
        }
        let plain = enumerate_minimal_explanations(&m, &x, None).unwrap();
        let with_k = enumerate_minimal_explanations(&m, &x, Some(&k)).unwrap();
        for e in &plain {
            assert!(is_explanation(&m, &e.literals, e.decision, Some(&k)));
            assert!(with_k.iter().any(|f| f.literals.is_subset(&e.literals)));
        }
        checked += 1;
    }
}

#[test]
fn flip_search_matches_scan() {
    let mut rng = rng(16);
    for _ in 0..100 {
        let n = rng.gen_range(1..=8);
        let m = random_model(&mut rng, n);
        let (k, patterns) = random_knowledge(&mut rng, n.max(2), 0);
        let x = random_individual(&mut rng, n);
        let mask = rng.gen_range(0..1u32 << n);
        let xp = x.as_assignment().restrict(mask);
        let d = m.decide(&x).unwrap();
        assert_eq!(
            exists_flip(&m, &xp, d, None),
            !oracle_sufficient(&m, &x, mask, &all_real)
        );
        if let Some(y) = find_flip(&m, &xp, d, None) {
            assert!(y.extends(&xp));
            assert_ne!(m.decide(&y).unwrap(), d);
        }
        if k.len() == n {
            let real = |b: u32| oracle_real(&patterns, b);
            let flip = find_flip(&m, &xp, d, Some(&k));
            assert_eq!(flip.is_some(), !oracle_sufficient(&m, &x, mask, &real));
            if let Some(y) = flip {
                assert!(real(y.bits()) && y.extends(&xp));
            }
        }
    }
}

#[test]
fn sufficiency_is_upward_closed() {
    let mut rng = rng(17);
    for _ in 0..60 {
        let n = rng.gen_range(1..=7);
        let m = random_model(&mut rng, n);
        let x = random_individual(&mut rng, n);
        let d = m.decide(&x).unwrap();
        let full = x.as_assignment();
        for mask in 0..1u32 << n {
            let xp = full.restrict(mask);
            if !exists_flip(&m, &xp, d, None) {
                for i in 0..n {
                    assert!(!exists_flip(&m, &full.restrict(mask | 1 << i), d, None));
                }
            }
        }
    }
}

#[test]
fn empty_override_changes_nothing() {
    let mut rng = rng(18);
    for _ in 0..20 {
        let n = rng.gen_range(1..=6);
        let m = random_model(&mut rng, n);
        let o = ModelOverride::new(m.clone());
        let x = random_individual(&mut rng, n);
        assert_eq!(
            enumerate_minimal_explanations(&m, &x, None).unwrap(),
            enumerate_minimal_explanations(&o, &x, None).unwrap()
        );
        let order = ascending_order(n);
        assert_eq!(
            compute_explanation(&m, &x, &order, None).unwrap(),
            compute_explanation(&o, &x, &order, None).unwrap()
        );
    }
}

#[test]
fn empty_explanation_iff_constant() {
    let mut rng = rng(19);
    for _ in 0..40 {
        let n = rng.gen_range(1..=5);
        let m = random_model(&mut rng, n);
        let x = random_individual(&mut rng, n);
        let d = m.decide(&x).unwrap();
        let constant = (0..1u32 << n).all(|b| m.decide_bits(b) == d);
        let (e, _) = compute_explanation(&m, &x, &ascending_order(n), None).unwrap();
        assert_eq!(e.literals == PartialAssignment::empty(), constant);
    }
}
