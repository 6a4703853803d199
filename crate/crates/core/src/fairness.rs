//! Individual fairness through counterpart explanations.
//!
//! Features are split into a base part `B` (identical across subgroups), the
//! protected part `P`, and an equivalence part `E` (subgroup-dependent
//! expressions of the same aptitude). A [`MappingSpec`] rewrites the
//! `P ∪ E` literals of an explanation into the other subgroup and copies the
//! base literals verbatim.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::explain::{enumerate_minimal_explanations, is_explanation};
use crate::knowledge::ConstraintSet;
use crate::logic::full_mask;
use crate::{Classifier, Decision, Error, FeatureId, Individual, PartialAssignment, Result};

/// Disjoint cover `B ∪ P ∪ E` of the feature set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeaturePartition {
    base: u32,
    protected: u32,
    equivalence: u32,
    len: usize,
}

fn mask_of(fs: &[FeatureId]) -> u32 {
    fs.iter().fold(0, |m, f| m | (1 << f.index()))
}

impl FeaturePartition {
    pub fn new(
        base: &[FeatureId],
        protected: &[FeatureId],
        equivalence: &[FeatureId],
        len: usize,
    ) -> Result<Self> {
        let invalid = |msg: &str| Err(Error::InvalidPartition(msg.to_string()));
        if base
            .iter()
            .chain(protected)
            .chain(equivalence)
            .any(|f| f.index() >= len)
        {
            return invalid("feature outside the feature set");
        }
        let (b, p, e) = (mask_of(base), mask_of(protected), mask_of(equivalence));
        let total = base.len() + protected.len() + equivalence.len();
        if b & p != 0 || b & e != 0 || p & e != 0 || (b | p | e).count_ones() as usize != total {
            return invalid("parts overlap");
        }
        if b | p | e != full_mask(len) {
            return invalid("parts do not cover every feature");
        }
        if p == 0 {
            return invalid("protected part is empty");
        }
        Ok(FeaturePartition {
            base: b,
            protected: p,
            equivalence: e,
            len,
        })
    }

    pub fn base_mask(&self) -> u32 {
        self.base
    }

    pub fn protected_mask(&self) -> u32 {
        self.protected
    }

    pub fn equivalence_mask(&self) -> u32 {
        self.equivalence
    }

    /// `P ∪ E`.
    pub fn mapped_mask(&self) -> u32 {
        self.protected | self.equivalence
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MappingRule {
    pub source: PartialAssignment,
    pub target: PartialAssignment,
}

/// Chained mapping `M_{i->j}` from the subgroup `protected = source_value`
/// to the subgroup `protected = target_value`.
///
/// A rule applies to an explanation whose `P ∪ E` literals are exactly the
/// rule's source. Sources are unique, so at most one rule applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingSpec {
    protected: FeatureId,
    source_value: bool,
    target_value: bool,
    rules: Vec<MappingRule>,
}

impl MappingSpec {
    /// Rules must only mention `P ∪ E` features. Repeated identical rules are
    /// merged; two different targets for one source are rejected.
    pub fn new(
        protected: FeatureId,
        source_value: bool,
        target_value: bool,
        rules: Vec<MappingRule>,
        partition: &FeaturePartition,
    ) -> Result<Self> {
        let invalid = |msg: &str| Err(Error::InvalidMapping(msg.to_string()));
        if partition.protected_mask() & (1 << protected.index()) == 0 {
            return invalid("mapped feature is not in the protected part");
        }
        let mapped = partition.mapped_mask();
        let mut rules = rules;
        rules.sort();
        rules.dedup();
        for r in &rules {
            if (r.source.mask() | r.target.mask()) & !mapped != 0 {
                return invalid("rule rewrites a base feature");
            }
        }
        if rules.windows(2).any(|w| w[0].source == w[1].source) {
            return invalid("ambiguous rules: one source maps to several targets");
        }
        Ok(MappingSpec {
            protected,
            source_value,
            target_value,
            rules,
        })
    }

    pub fn protected(&self) -> FeatureId {
        self.protected
    }

    pub fn source_value(&self) -> bool {
        self.source_value
    }

    pub fn target_value(&self) -> bool {
        self.target_value
    }

    pub fn rules(&self) -> &[MappingRule] {
        &self.rules
    }

    /// Swaps sources and targets. Fails unless the mapping is injective.
    pub fn inverse(&self, partition: &FeaturePartition) -> Result<Self> {
        let rules = self
            .rules
            .iter()
            .map(|r| MappingRule {
                source: r.target,
                target: r.source,
            })
            .collect();
        MappingSpec::new(
            self.protected,
            self.target_value,
            self.source_value,
            rules,
            partition,
        )
    }

    fn rule_for(&self, pe: &PartialAssignment) -> Option<&MappingRule> {
        self.rules
            .binary_search_by(|r| r.source.cmp(pe))
            .ok()
            .map(|i| &self.rules[i])
    }
}

/// Counterpart of `xp`: base literals copied, `P ∪ E` literals rewritten by
/// the applicable rule. `None` outside the mapping's domain.
pub fn map_explanation(
    ms: &MappingSpec,
    fp: &FeaturePartition,
    xp: &PartialAssignment,
) -> Option<PartialAssignment> {
    let base = xp.restrict(fp.base_mask());
    let pe = xp.restrict(fp.mapped_mask());
    let rule = ms.rule_for(&pe)?;
    // disjoint supports, cannot clash
    base.union(&rule.target).ok()
}

/// `xp` has a counterpart that agrees with it on every base literal.
pub fn is_fairness_criterion(
    ms: &MappingSpec,
    fp: &FeaturePartition,
    xp: &PartialAssignment,
) -> bool {
    counterpart(ms, fp, xp).is_some()
}

fn counterpart(
    ms: &MappingSpec,
    fp: &FeaturePartition,
    xp: &PartialAssignment,
) -> Option<PartialAssignment> {
    map_explanation(ms, fp, xp)
        .filter(|cp| cp.restrict(fp.base_mask()) == xp.restrict(fp.base_mask()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FairnessReason {
    /// A criterion's counterpart is sufficient for the same decision.
    Fair,
    /// No minimal explanation lies in the mapping's domain.
    NoCriterion,
    /// Every counterpart admits a (real) individual with another decision.
    CounterpartChangesDecision,
    /// The only sufficient counterparts are satisfied by no real individual.
    CounterpartUnrealizable,
}

impl FairnessReason {
    pub fn code(self) -> &'static str {
        match self {
            FairnessReason::Fair => "fair",
            FairnessReason::NoCriterion => "no-criterion-exists",
            FairnessReason::CounterpartChangesDecision => "counterpart-changes-decision",
            FairnessReason::CounterpartUnrealizable => "counterpart-unrealizable",
        }
    }
}

/// Outcome for one minimal explanation of the subject.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CriterionCheck {
    pub explanation: PartialAssignment,
    pub counterpart: Option<PartialAssignment>,
    /// Counterpart sufficient for the subject's decision (and realizable
    /// under `K`).
    pub counterpart_sufficient: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FairnessVerdict {
    pub subject: Individual,
    pub decision: Decision,
    pub fair: bool,
    pub criterion: Option<PartialAssignment>,
    pub counterpart: Option<PartialAssignment>,
    pub reason: FairnessReason,
    /// Every minimal explanation, in canonical order.
    pub checks: Vec<CriterionCheck>,
}

/// `x` is fairly treated when one of its minimal explanations is a
/// criterion whose counterpart forces the same decision. The first such
/// pair in canonical explanation order is reported.
pub fn audit_individual_fairness<M: Classifier + ?Sized>(
    m: &M,
    x: &Individual,
    ms: &MappingSpec,
    fp: &FeaturePartition,
    k: Option<&ConstraintSet>,
) -> Result<FairnessVerdict> {
    if fp.len() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            actual: fp.len(),
        });
    }
    let explanations = enumerate_minimal_explanations(m, x, k)?;
    let decision = m.decide(x)?;
    let mut checks = Vec::with_capacity(explanations.len());
    let mut unrealizable = false;
    for e in &explanations {
        let cp = counterpart(ms, fp, &e.literals);
        let sufficient = cp.is_some_and(|cp| {
            let ok = is_explanation(m, &cp, decision, k);
            let real = k.is_none_or(|k| k.satisfiable(&cp));
            unrealizable |= ok && !real;
            ok && real
        });
        checks.push(CriterionCheck {
            explanation: e.literals,
            counterpart: cp,
            counterpart_sufficient: sufficient,
        });
    }
    let chosen = checks.iter().find(|c| c.counterpart_sufficient);
    let reason = match chosen {
        Some(_) => FairnessReason::Fair,
        None if checks.iter().all(|c| c.counterpart.is_none()) => FairnessReason::NoCriterion,
        None if unrealizable => FairnessReason::CounterpartUnrealizable,
        None => FairnessReason::CounterpartChangesDecision,
    };
    Ok(FairnessVerdict {
        subject: *x,
        decision,
        fair: chosen.is_some(),
        criterion: chosen.map(|c| c.explanation),
        counterpart: chosen.and_then(|c| c.counterpart),
        reason,
        checks,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MappingReport {
    /// Pairs of rule indices sharing a target.
    pub injectivity_violations: Vec<(usize, usize)>,
    /// Real individuals of the source subgroup that no rule source covers.
    pub uncovered: Vec<Individual>,
    /// Real individuals of the source subgroup that were checked.
    pub checked: usize,
}

impl MappingReport {
    pub fn is_consistent(&self) -> bool {
        self.injectivity_violations.is_empty() && self.uncovered.is_empty()
    }
}

/// Checks that the mapping is injective on its domain and that every real
/// individual of the source subgroup lies in the domain of some rule (its
/// `P ∪ E` literals extend the rule's source).
pub fn check_mapping_consistency(ms: &MappingSpec, k: &ConstraintSet) -> MappingReport {
    let mut report = MappingReport::default();
    for (i, a) in ms.rules.iter().enumerate() {
        for (j, b) in ms.rules.iter().enumerate().skip(i + 1) {
            if a.target == b.target {
                report.injectivity_violations.push((i, j));
            }
        }
    }
    for x in k.real_individuals().members() {
        if x.value(ms.protected) != ms.source_value {
            continue;
        }
        report.checked += 1;
        if !ms.rules.iter().any(|r| x.extends(&r.source)) {
            report.uncovered.push(*x);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{DecisionModel, FeatureSpace, Literal};
    use alloc::vec;

    fn f(i: usize) -> FeatureId {
        FeatureId::new(i)
    }

    fn lits(ls: &[Literal]) -> PartialAssignment {
        PartialAssignment::from_literals(ls.iter().copied()).unwrap()
    }

    // features 0,1 base; 2 protected; 3 equivalence
    fn partition() -> FeaturePartition {
        FeaturePartition::new(&[f(0), f(1)], &[f(2)], &[f(3)], 4).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(FeaturePartition::new(&[f(0)], &[f(0)], &[f(1)], 2).is_err());
        assert!(FeaturePartition::new(&[f(0)], &[f(1)], &[], 3).is_err());
        assert!(FeaturePartition::new(&[f(0), f(1)], &[], &[], 2).is_err());
        assert!(FeaturePartition::new(&[f(0), f(0)], &[f(1)], &[], 2).is_err());
    }

    #[test]
    fn mapping_rejects_base_rewrites_and_ambiguity() {
        let fp = partition();
        let bad = MappingRule {
            source: lits(&[Literal::positive(f(0))]),
            target: PartialAssignment::empty(),
        };
        assert!(MappingSpec::new(f(2), true, false, vec![bad], &fp).is_err());
        let r1 = MappingRule {
            source: lits(&[Literal::positive(f(3))]),
            target: lits(&[Literal::negative(f(3))]),
        };
        let r2 = MappingRule {
            source: r1.source,
            target: lits(&[Literal::negative(f(2))]),
        };
        assert!(MappingSpec::new(f(2), true, false, vec![r1, r2], &fp).is_err());
        assert!(MappingSpec::new(f(2), true, false, vec![r1, r1], &fp).is_ok());
    }

    #[test]
    fn map_copies_base_and_rewrites_rest() {
        let fp = partition();
        let rule = MappingRule {
            source: lits(&[Literal::positive(f(3))]),
            target: lits(&[Literal::negative(f(2)), Literal::negative(f(3))]),
        };
        let identity = MappingRule {
            source: PartialAssignment::empty(),
            target: PartialAssignment::empty(),
        };
        let ms = MappingSpec::new(f(2), true, false, vec![rule, identity], &fp).unwrap();
        let xp = lits(&[Literal::positive(f(0)), Literal::positive(f(3))]);
        let cp = map_explanation(&ms, &fp, &xp).unwrap();
        assert_eq!(
            cp,
            lits(&[
                Literal::positive(f(0)),
                Literal::negative(f(2)),
                Literal::negative(f(3))
            ])
        );
        let base_only = lits(&[Literal::negative(f(1))]);
        assert_eq!(map_explanation(&ms, &fp, &base_only), Some(base_only));
        assert!(is_fairness_criterion(&ms, &fp, &base_only));
        let outside = lits(&[Literal::negative(f(3))]);
        assert_eq!(map_explanation(&ms, &fp, &outside), None);
        assert!(!is_fairness_criterion(&ms, &fp, &outside));
    }

    #[test]
    fn protected_bit_model_is_unfair_under_swap() {
        let fp = partition();
        let space = FeatureSpace::anonymous(4).unwrap();
        let m = DecisionModel::from_fn(space, |x| x.value(f(2)));
        let swap = MappingRule {
            source: lits(&[Literal::positive(f(2))]),
            target: lits(&[Literal::negative(f(2))]),
        };
        let ms = MappingSpec::new(f(2), true, false, vec![swap], &fp).unwrap();
        let x = Individual::from_bits(0b0100, 4).unwrap();
        let v = audit_individual_fairness(&m, &x, &ms, &fp, None).unwrap();
        assert!(!v.fair);
        assert_eq!(v.reason, FairnessReason::CounterpartChangesDecision);
    }

    #[test]
    fn no_criterion_reason() {
        let fp = partition();
        let space = FeatureSpace::anonymous(4).unwrap();
        let m = DecisionModel::from_fn(space, |x| x.value(f(3)));
        let ms = MappingSpec::new(f(2), true, false, vec![], &fp).unwrap();
        let x = Individual::from_bits(0b1000, 4).unwrap();
        let v = audit_individual_fairness(&m, &x, &ms, &fp, None).unwrap();
        assert_eq!(v.reason, FairnessReason::NoCriterion);
        assert!(v.criterion.is_none() && v.counterpart.is_none());
    }

    #[test]
    fn consistency_report() {
        let fp = partition();
        let k = ConstraintSet::empty(4).unwrap();
        let to_not3 = lits(&[Literal::negative(f(3))]);
        let r1 = MappingRule {
            source: lits(&[Literal::positive(f(3))]),
            target: to_not3,
        };
        let r2 = MappingRule {
            source: lits(&[Literal::positive(f(2)), Literal::positive(f(3))]),
            target: to_not3,
        };
        let ms = MappingSpec::new(f(2), true, false, vec![r1, r2], &fp).unwrap();
        let report = check_mapping_consistency(&ms, &k);
        assert_eq!(report.injectivity_violations.len(), 1);
        // source subgroup (f2 = 1) with f3 = 0 is uncovered: 4 individuals
        assert_eq!(report.checked, 8);
        assert_eq!(report.uncovered.len(), 4);
        assert!(!report.is_consistent());
        assert!(ms.inverse(&fp).is_err());
    }
}
