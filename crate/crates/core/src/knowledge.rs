//! Background knowledge: the constraints every real individual satisfies,
//! the population `[[K]]` they carve out, and zero-support pattern mining.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::logic::{Formula, Literal, PartialAssignment, Theory};
use crate::{Error, FeatureId, Individual, Result, MAX_FEATURES};

/// A satisfiable set of constraints over a space of `len` features.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSet {
    theory: Theory,
    len: usize,
}

impl ConstraintSet {
    /// Rejects constraints mentioning features outside the space, and sets
    /// that no individual satisfies.
    pub fn new(constraints: Vec<Formula>, len: usize) -> Result<Self> {
        if len > MAX_FEATURES {
            return Err(Error::TooManyFeatures {
                count: len,
                max: MAX_FEATURES,
            });
        }
        for c in &constraints {
            c.check_vars(len)?;
        }
        let theory = Theory::new(constraints);
        if !theory.satisfiable(&PartialAssignment::empty()) {
            return Err(Error::Unsatisfiable);
        }
        Ok(ConstraintSet { theory, len })
    }

    pub fn empty(len: usize) -> Result<Self> {
        ConstraintSet::new(Vec::new(), len)
    }

    /// One `forbid` constraint per pattern.
    pub fn from_forbidden(patterns: &[PartialAssignment], len: usize) -> Result<Self> {
        let constraints = patterns
            .iter()
            .map(|p| Formula::forbid(p.literals()))
            .collect();
        ConstraintSet::new(constraints, len)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn constraints(&self) -> &[Formula] {
        self.theory.formulas()
    }

    pub fn is_empty(&self) -> bool {
        self.theory.formulas().is_empty()
    }

    /// `x |= K`.
    pub fn check_real(&self, x: &Individual) -> bool {
        self.theory.holds_bits(x.bits())
    }

    pub(crate) fn holds_bits(&self, bits: u32) -> bool {
        self.theory.holds_bits(bits)
    }

    /// `K, fixed` is consistent.
    pub fn satisfiable(&self, fixed: &PartialAssignment) -> bool {
        self.theory.satisfiable(fixed)
    }

    /// `K, assumptions |= goal`.
    pub fn entails(&self, assumptions: &PartialAssignment, goal: Literal) -> bool {
        self.theory.entails(assumptions, goal)
    }

    /// Whether some constraint semantically depends on `v`; a syntactic
    /// occurrence inside a tautology does not count.
    pub fn mentions(&self, v: FeatureId) -> bool {
        self.constraints().iter().any(|c| !c.is_independent(v))
    }

    /// `[[K]]`, in table-index order.
    pub fn real_individuals(&self) -> RealPopulation {
        let members: Vec<Individual> = Individual::all(self.len)
            .filter(|x| self.check_real(x))
            .collect();
        // satisfiability was checked at construction
        debug_assert!(!members.is_empty());
        RealPopulation { members }
    }
}

/// `[[K]] = { x | x |= K }`, never empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealPopulation {
    members: Vec<Individual>,
}

impl RealPopulation {
    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &Individual) -> bool {
        self.members.binary_search(x).is_ok()
    }
}

pub fn real_individuals(k: &ConstraintSet) -> RealPopulation {
    k.real_individuals()
}

pub fn check_real(k: &ConstraintSet, x: &Individual) -> bool {
    k.check_real(x)
}

fn supported(rows: &[Individual], pattern: &PartialAssignment) -> bool {
    rows.iter().any(|r| r.extends(pattern))
}

/// Mines the prime forbidden patterns of a dataset: conjunctions of at most
/// `max_arity` literals that no row satisfies while every proper
/// sub-conjunction is satisfied by some row.
///
/// Patterns are returned in canonical order. They describe the sample, not
/// the population.
pub fn mine_forbidden_patterns(
    rows: &[Individual],
    len: usize,
    max_arity: usize,
) -> Result<Vec<PartialAssignment>> {
    if rows.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if max_arity > len {
        return Err(Error::ArityTooLarge {
            arity: max_arity,
            len,
        });
    }
    if let Some(bad) = rows.iter().find(|r| r.len() != len) {
        return Err(Error::DimensionMismatch {
            expected: len,
            actual: bad.len(),
        });
    }

    let mut forbidden = Vec::new();
    // supported conjunctions of the previous size; the empty one has the
    // whole dataset as support
    let mut frontier: BTreeSet<PartialAssignment> = BTreeSet::new();
    frontier.insert(PartialAssignment::empty());
    for _ in 0..max_arity {
        let mut next = BTreeSet::new();
        for base in &frontier {
            // extend only above the highest mentioned feature, so each
            // conjunction is generated once
            let start = 32 - base.mask().leading_zeros();
            for f in (start as usize..len).map(FeatureId::new) {
                for positive in [false, true] {
                    let candidate = PartialAssignment::from_raw(
                        base.mask() | (1 << f.index()),
                        base.value_bits() | if positive { 1 << f.index() } else { 0 },
                    );
                    let subsets_supported = candidate
                        .vars()
                        .filter(|v| *v != f)
                        .all(|v| frontier.contains(&candidate.without(v)));
                    if !subsets_supported {
                        continue;
                    }
                    if supported(rows, &candidate) {
                        next.insert(candidate);
                    } else {
                        forbidden.push(candidate);
                    }
                }
            }
        }
        frontier = next;
    }
    forbidden.sort();
    Ok(forbidden)
}
