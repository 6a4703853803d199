//! Random instances and brute-force oracles shared by the integration tests.
//!
//! The oracles only use `Classifier::decide` and raw bit arithmetic; they
//! never go through `exists_flip`, the enumeration, or the solver.

#![allow(dead_code)]

use std::collections::BTreeSet;

use fairxp_core::knowledge::ConstraintSet;
use fairxp_core::{
    Classifier, DecisionModel, FeatureId, FeatureSpace, Formula, Individual, Literal,
    PartialAssignment,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn space(n: usize) -> FeatureSpace {
    FeatureSpace::anonymous(n).unwrap()
}

pub fn random_model(rng: &mut impl Rng, n: usize) -> DecisionModel {
    // bias the density so some models are close to constant
    let density: f64 = rng.gen_range(0.1..0.9);
    let outputs: Vec<bool> = (0..1usize << n).map(|_| rng.gen_bool(density)).collect();
    DecisionModel::truth_table(space(n), &outputs).unwrap()
}

/// Random model that ignores `blind`: decisions are copied across the flip.
pub fn random_blind_model(rng: &mut impl Rng, n: usize, blind: FeatureId) -> DecisionModel {
    let base = random_model(rng, n);
    DecisionModel::from_fn(space(n), |x| {
        base.decide(&x.with(blind, false)).unwrap().is_favorable()
    })
}

/// A forbidden pattern `(mask, values)`: violated iff `x & mask == values`.
pub type Pattern = (u32, u32);

pub fn random_pattern(rng: &mut impl Rng, n: usize, avoid: u32, max_len: usize) -> Pattern {
    let mut feats: Vec<usize> = (0..n).filter(|i| avoid & (1 << i) == 0).collect();
    feats.shuffle(rng);
    let len = rng.gen_range(1..=max_len.min(feats.len()).max(1));
    let mut mask = 0;
    let mut values = 0;
    for &f in feats.iter().take(len) {
        mask |= 1 << f;
        if rng.gen_bool(0.5) {
            values |= 1 << f;
        }
    }
    (mask, values)
}

pub fn pattern_formula(p: Pattern) -> Formula {
    Formula::forbid(
        PartialAssignment::from_literals(bits_literals(p.0, p.1))
            .unwrap()
            .literals(),
    )
}

pub fn bits_literals(mask: u32, values: u32) -> Vec<Literal> {
    (0..32)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| Literal::new(FeatureId::new(i), values & (1 << i) != 0))
        .collect()
}

pub fn oracle_real(patterns: &[Pattern], bits: u32) -> bool {
    patterns.iter().all(|(m, v)| bits & m != *v)
}

/// Random satisfiable background knowledge given as forbidden patterns,
/// none of which mentions a feature in `avoid`.
pub fn random_knowledge(rng: &mut impl Rng, n: usize, avoid: u32) -> (ConstraintSet, Vec<Pattern>) {
    loop {
        let count = rng.gen_range(1..=4);
        let patterns: Vec<Pattern> = (0..count)
            .map(|_| random_pattern(rng, n, avoid, 3))
            .collect();
        if !(0..1u32 << n).any(|b| oracle_real(&patterns, b)) {
            continue;
        }
        let fs = patterns.iter().map(|p| pattern_formula(*p)).collect();
        return (ConstraintSet::new(fs, n).unwrap(), patterns);
    }
}

pub fn agrees(bits: u32, mask: u32, values: u32) -> bool {
    bits & mask == values & mask
}

/// `xp` (the literals of `x` over `mask`) forces `x`'s decision on every
/// individual accepted by `real`.
pub fn oracle_sufficient<M: Classifier + ?Sized>(
    m: &M,
    x: &Individual,
    mask: u32,
    real: &dyn Fn(u32) -> bool,
) -> bool {
    let n = x.len();
    let d = m.decide(x).unwrap();
    (0..1u32 << n)
        .filter(|&y| agrees(y, mask, x.bits()) && real(y))
        .all(|y| m.decide_bits(y) == d)
}

/// Masks of every subset-minimal sufficient subset of `x`, by scanning all
/// `2^n` subsets.
pub fn oracle_minimal<M: Classifier + ?Sized>(
    m: &M,
    x: &Individual,
    real: &dyn Fn(u32) -> bool,
) -> BTreeSet<u32> {
    let n = x.len();
    let sufficient: Vec<bool> = (0..1u32 << n)
        .map(|mask| oracle_sufficient(m, x, mask, real))
        .collect();
    (0..1u32 << n)
        .filter(|&mask| {
            sufficient[mask as usize]
                && (0..n).all(|i| mask & (1 << i) == 0 || !sufficient[(mask & !(1 << i)) as usize])
        })
        .collect()
}

pub fn all_real(_: u32) -> bool {
    true
}

pub fn random_order(rng: &mut impl Rng, n: usize) -> Vec<FeatureId> {
    let mut order: Vec<FeatureId> = (0..n).map(FeatureId::new).collect();
    order.shuffle(rng);
    order
}

pub fn random_individual(rng: &mut impl Rng, n: usize) -> Individual {
    Individual::from_bits(rng.gen_range(0..1u32 << n), n).unwrap()
}

/// Plain recursive evaluation on raw bits.
pub fn oracle_eval(f: &Formula, bits: u32) -> bool {
    match f {
        Formula::Const(b) => *b,
        Formula::Lit(l) => (bits >> l.feature.index() & 1 == 1) == l.positive,
        Formula::Not(g) => !oracle_eval(g, bits),
        Formula::And(gs) => gs.iter().all(|g| oracle_eval(g, bits)),
        Formula::Or(gs) => gs.iter().any(|g| oracle_eval(g, bits)),
        Formula::Implies(a, b) => !oracle_eval(a, bits) || oracle_eval(b, bits),
    }
}

pub fn oracle_satisfiable(fs: &[Formula], n: usize, mask: u32, values: u32) -> bool {
    (0..1u32 << n).any(|b| agrees(b, mask, values) && fs.iter().all(|f| oracle_eval(f, b)))
}

/// Every individual accepted by `real` and agreeing with `(mask, values)`
/// gets decision `d`.
pub fn oracle_forces<M: Classifier + ?Sized>(
    m: &M,
    n: usize,
    mask: u32,
    values: u32,
    d: fairxp_core::Decision,
    real: &dyn Fn(u32) -> bool,
) -> bool {
    (0..1u32 << n)
        .filter(|&y| agrees(y, mask, values) && real(y))
        .all(|y| m.decide_bits(y) == d)
}

/// Conditions of a proxy witness checked by scanning the population:
/// context avoids `p` and `q`; it does not pin `p` on its own; with `q`
/// added it pins `p` and is still realizable.
pub fn oracle_witness(
    real: &dyn Fn(u32) -> bool,
    n: usize,
    p: usize,
    q: usize,
    ctx: (u32, u32),
    q_value: bool,
    p_value: bool,
) -> bool {
    let (mask, values) = ctx;
    if p == q || mask & (1 << p | 1 << q) != 0 {
        return false;
    }
    let pop: Vec<u32> = (0..1u32 << n).filter(|&y| real(y)).collect();
    let p_of = |y: u32| y >> p & 1 == 1;
    let in_ctx: Vec<u32> = pop
        .iter()
        .copied()
        .filter(|&y| agrees(y, mask, values))
        .collect();
    let with_q: Vec<u32> = in_ctx
        .iter()
        .copied()
        .filter(|&y| (y >> q & 1 == 1) == q_value)
        .collect();
    in_ctx.iter().any(|&y| p_of(y) != p_value)
        && !with_q.is_empty()
        && with_q.iter().all(|&y| p_of(y) == p_value)
}

/// Every conjunction of at most `arity` literals with zero support whose
/// proper sub-conjunctions all have support.
pub fn oracle_mined(rows: &[u32], n: usize, arity: usize) -> BTreeSet<(u32, u32)> {
    let supported = |mask: u32, values: u32| rows.iter().any(|r| r & mask == values);
    let mut out = BTreeSet::new();
    for mask in (0..1u32 << n).filter(|m| m.count_ones() as usize <= arity && *m != 0) {
        let mut values = mask;
        loop {
            let minimal = !supported(mask, values)
                && (0..n)
                    .filter(|i| mask & 1 << i != 0)
                    .all(|i| supported(mask & !(1 << i), values & !(1 << i)));
            if minimal {
                out.insert((mask, values));
            }
            if values == 0 {
                break;
            }
            values = (values - 1) & mask;
        }
    }
    out
}
