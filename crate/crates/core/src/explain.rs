//! Abductive explanations: sufficiency checks, the greedy deletion
//! algorithm with its step-by-step trace, and enumeration of every
//! subset-minimal explanation.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::knowledge::ConstraintSet;
use crate::logic::features_of;
use crate::model::exists_flip;
use crate::{Classifier, Decision, Error, FeatureId, Individual, PartialAssignment, Result};

/// A sufficient subset of an individual's literals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Explanation {
    pub literals: PartialAssignment,
    pub decision: Decision,
    /// Computed against background knowledge (sufficiency only over `[[K]]`).
    pub bk_aware: bool,
    /// No real individual extends the literals, so sufficiency holds only
    /// vacuously.
    pub vacuous: bool,
}

impl Explanation {
    fn new(literals: PartialAssignment, decision: Decision, k: Option<&ConstraintSet>) -> Self {
        Explanation {
            literals,
            decision,
            bk_aware: k.is_some(),
            vacuous: k.is_some_and(|k| !k.satisfiable(&literals)),
        }
    }
}

/// One removal attempt of the greedy algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub feature: FeatureId,
    /// Candidate checked at this step: the current explanation without the
    /// feature's literal.
    pub candidate: PartialAssignment,
    /// Whether some (real) extension of the candidate changes the decision.
    pub flip_exists: bool,
    /// The literal stays in the explanation (exactly when a flip exists).
    pub kept: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplanationTrace {
    pub individual: Individual,
    pub steps: Vec<TraceStep>,
}

impl ExplanationTrace {
    /// Rebuilds the final explanation from the recorded verdicts alone.
    pub fn replay(&self) -> PartialAssignment {
        self.steps
            .iter()
            .filter(|s| !s.kept)
            .fold(self.individual.as_assignment(), |xp, s| {
                xp.without(s.feature)
            })
    }
}

fn check_subject<M: Classifier + ?Sized>(
    m: &M,
    x: &Individual,
    k: Option<&ConstraintSet>,
) -> Result<Decision> {
    let d = m.decide(x)?;
    if let Some(k) = k {
        if k.len() != x.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                actual: k.len(),
            });
        }
        if !k.check_real(x) {
            return Err(Error::NotReal);
        }
    }
    Ok(d)
}

/// `xp` forces decision `d` on every (real) individual extending it.
pub fn is_explanation<M: Classifier + ?Sized>(
    m: &M,
    xp: &PartialAssignment,
    d: Decision,
    k: Option<&ConstraintSet>,
) -> bool {
    !exists_flip(m, xp, d, k)
}

/// Feature order `0, 1, ..., len-1`.
pub fn ascending_order(len: usize) -> Vec<FeatureId> {
    (0..len).map(FeatureId::new).collect()
}

/// Greedy deletion: starting from all of `x`, drop each literal in `order`
/// unless dropping it lets some (real) extension change the decision. The
/// result is subset-minimal.
///
/// In background-knowledge mode `x` itself must be real.
pub fn compute_explanation<M: Classifier + ?Sized>(
    m: &M,
    x: &Individual,
    order: &[FeatureId],
    k: Option<&ConstraintSet>,
) -> Result<(Explanation, ExplanationTrace)> {
    let d = check_subject(m, x, k)?;
    let mut seen = 0u32;
    for f in order {
        if f.index() >= x.len() || seen & (1 << f.index()) != 0 {
            return Err(Error::InvalidOrder);
        }
        seen |= 1 << f.index();
    }
    if order.len() != x.len() {
        return Err(Error::InvalidOrder);
    }

    let mut xp = x.as_assignment();
    let mut steps = Vec::with_capacity(order.len());
    for &f in order {
        let candidate = xp.without(f);
        let flip_exists = exists_flip(m, &candidate, d, k);
        if !flip_exists {
            xp = candidate;
        }
        steps.push(TraceStep {
            feature: f,
            candidate,
            flip_exists,
            kept: flip_exists,
        });
    }
    let trace = ExplanationTrace {
        individual: *x,
        steps,
    };
    Ok((Explanation::new(xp, d, k), trace))
}

/// Every subset-minimal explanation of `m`'s decision on `x`, in canonical
/// order (lexicographic over sorted literals).
///
/// Sufficiency is upward closed, so the scan walks down from `x` through
/// sufficient sets only; a sufficient set none of whose one-literal
/// deletions is sufficient is minimal.
pub fn enumerate_minimal_explanations<M: Classifier + ?Sized>(
    m: &M,
    x: &Individual,
    k: Option<&ConstraintSet>,
) -> Result<Vec<Explanation>> {
    let d = check_subject(m, x, k)?;
    let full = x.as_assignment();
    let mut verdicts: BTreeMap<u32, bool> = BTreeMap::new();
    let mut sufficient = |mask: u32| -> bool {
        *verdicts.entry(mask).or_insert_with(|| {
            let xp = full.restrict(mask);
            !exists_flip(m, &xp, d, k)
        })
    };

    let mut visited = BTreeSet::new();
    let mut stack = alloc::vec![full.mask()];
    visited.insert(full.mask());
    let mut minimal = Vec::new();
    while let Some(mask) = stack.pop() {
        let mut is_minimal = true;
        for f in features_of(mask) {
            let child = mask & !(1 << f.index());
            if sufficient(child) {
                is_minimal = false;
                if visited.insert(child) {
                    stack.push(child);
                }
            }
        }
        if is_minimal {
            minimal.push(Explanation::new(full.restrict(mask), d, k));
        }
    }
    minimal.sort();
    Ok(minimal)
}
