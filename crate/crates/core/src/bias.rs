//! Explicit bias, proxy variables, factors of proxy discrimination, and
//! bias under background knowledge.

use alloc::vec::Vec;

use crate::explain::{enumerate_minimal_explanations, Explanation};
use crate::knowledge::ConstraintSet;
use crate::logic::{full_mask, subsets, Formula};
use crate::model::ModelOverride;
use crate::{
    Classifier, Decision, Error, FeatureId, Individual, Literal, PartialAssignment, Result,
};

/// The decision on `x` changes when only the protected feature is flipped.
pub fn is_biased_decision<M: Classifier + ?Sized>(
    m: &M,
    x: &Individual,
    protected: FeatureId,
) -> Result<bool> {
    check_feature(protected, m.feature_count())?;
    Ok(m.decide(x)? != m.decide(&x.flip(protected))?)
}

fn check_feature(f: FeatureId, len: usize) -> Result<()> {
    if f.index() >= len {
        return Err(Error::FeatureOutOfRange {
            index: f.index(),
            len,
        });
    }
    Ok(())
}

/// First individual (table-index order) whose decision is biased, if any.
pub fn is_process_biased<M: Classifier + ?Sized>(
    m: &M,
    protected: FeatureId,
) -> Option<Individual> {
    let len = m.feature_count();
    if protected.index() >= len {
        return None;
    }
    Individual::all(len)
        .find(|x| m.decide_bits(x.bits()) != m.decide_bits(x.flip(protected).bits()))
}

/// How a single explanation relates to the protected feature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExplanationClass {
    /// Mentions the protected feature.
    ExplicitlyBiased,
    /// Avoids the protected feature, but `K` and the explanation entail its
    /// value.
    ProxyFactor {
        protected_value: bool,
    },
    /// No real individual satisfies the explanation.
    Vacuous,
    Unbiased,
}

impl ExplanationClass {
    pub fn is_biased(self) -> bool {
        matches!(
            self,
            ExplanationClass::ExplicitlyBiased | ExplanationClass::ProxyFactor { .. }
        )
    }
}

/// Result of the factor-of-proxy-discrimination test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProxyFactor {
    /// The explanation mentions the protected feature; the explicit-bias
    /// test applies instead.
    MentionsProtected,
    /// `K` and the explanation are inconsistent.
    Vacuous,
    /// `K, XP |= p = value`.
    Factor(bool),
    NotAFactor,
}

/// `p` not in `vars(xp)` and `K, xp |= (p = v)` for some `v`.
///
/// The quantifier over `[[K]]` in the usual statement of this test does not
/// bind anything, so it is read as plain entailment. Inconsistent
/// explanations are reported as [`ProxyFactor::Vacuous`], never as factors.
pub fn proxy_factor(
    xp: &PartialAssignment,
    k: &ConstraintSet,
    protected: FeatureId,
) -> ProxyFactor {
    if xp.mentions(protected) {
        return ProxyFactor::MentionsProtected;
    }
    if !k.satisfiable(xp) {
        return ProxyFactor::Vacuous;
    }
    for value in [false, true] {
        if k.entails(xp, Literal::new(protected, value)) {
            return ProxyFactor::Factor(value);
        }
    }
    ProxyFactor::NotAFactor
}

fn classify(e: &Explanation, k: Option<&ConstraintSet>, protected: FeatureId) -> ExplanationClass {
    if e.literals.mentions(protected) {
        return ExplanationClass::ExplicitlyBiased;
    }
    match k.map(|k| proxy_factor(&e.literals, k, protected)) {
        Some(ProxyFactor::Factor(v)) => ExplanationClass::ProxyFactor { protected_value: v },
        Some(ProxyFactor::Vacuous) => ExplanationClass::Vacuous,
        _ => ExplanationClass::Unbiased,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedExplanation {
    pub explanation: Explanation,
    pub class: ExplanationClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiasVerdict {
    pub subject: Individual,
    pub decision: Decision,
    /// Every minimal explanation (without background knowledge) mentions the
    /// protected feature; equivalently, flipping it changes the decision.
    pub explicit_bias: bool,
    /// Every minimal explanation under `K` is explicitly biased or a factor
    /// of proxy discrimination. Only present when `K` was supplied.
    pub bk_aware_bias: Option<bool>,
    /// Minimal explanations without background knowledge.
    pub evidence: Vec<ClassifiedExplanation>,
    /// Minimal explanations under `K`, when supplied.
    pub bk_evidence: Vec<ClassifiedExplanation>,
}

pub fn audit_explicit_bias<M: Classifier + ?Sized>(
    m: &M,
    x: &Individual,
    protected: FeatureId,
) -> Result<BiasVerdict> {
    check_feature(protected, m.feature_count())?;
    let decision = m.decide(x)?;
    let evidence: Vec<ClassifiedExplanation> = enumerate_minimal_explanations(m, x, None)?
        .into_iter()
        .map(|explanation| ClassifiedExplanation {
            class: classify(&explanation, None, protected),
            explanation,
        })
        .collect();
    let explicit_bias = evidence
        .iter()
        .all(|c| c.class == ExplanationClass::ExplicitlyBiased);
    Ok(BiasVerdict {
        subject: *x,
        decision,
        explicit_bias,
        bk_aware_bias: None,
        evidence,
        bk_evidence: Vec::new(),
    })
}

/// Explicit audit plus the background-knowledge-aware one. `x` must be real.
pub fn audit_bk_aware_bias<M: Classifier + ?Sized>(
    m: &M,
    x: &Individual,
    k: &ConstraintSet,
    protected: FeatureId,
) -> Result<BiasVerdict> {
    let mut verdict = audit_explicit_bias(m, x, protected)?;
    let bk_evidence: Vec<ClassifiedExplanation> = enumerate_minimal_explanations(m, x, Some(k))?
        .into_iter()
        .map(|explanation| ClassifiedExplanation {
            class: classify(&explanation, Some(k), protected),
            explanation,
        })
        .collect();
    verdict.bk_aware_bias = Some(bk_evidence.iter().all(|c| c.class.is_biased()));
    verdict.bk_evidence = bk_evidence;
    Ok(verdict)
}

/// A context `Φ` (a conjunction of literals over features other than `p`
/// and `q`) under which knowing `q = proxy_value` lets one infer
/// `p = protected_value` from the background knowledge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProxyWitness {
    pub protected: FeatureId,
    pub proxy: FeatureId,
    pub context: PartialAssignment,
    pub proxy_value: bool,
    pub protected_value: bool,
}

impl ProxyWitness {
    pub fn context_formula(&self) -> Formula {
        self.context.to_formula()
    }

    fn proxy_literal(&self) -> Literal {
        Literal::new(self.proxy, self.proxy_value)
    }

    fn protected_literal(&self) -> Literal {
        Literal::new(self.protected, self.protected_value)
    }

    /// Re-checks every condition against `k`: the context avoids both
    /// variables, does not entail `p` on its own, entails it together with
    /// the proxy literal, and stays consistent.
    pub fn verify(&self, k: &ConstraintSet) -> bool {
        if self.proxy == self.protected
            || self.context.mentions(self.proxy)
            || self.context.mentions(self.protected)
        {
            return false;
        }
        let Ok(with_proxy) = self.context.with(self.proxy_literal()) else {
            return false;
        };
        !k.entails(&self.context, self.protected_literal())
            && k.entails(&with_proxy, self.protected_literal())
            && k.satisfiable(&with_proxy)
    }
}

/// Every proxy witness for `protected` whose context has at most
/// `max_context_arity` literals. Ordered by proxy feature, then context
/// (size, then literals), then `(proxy_value, protected_value)`.
pub fn find_proxies(
    k: &ConstraintSet,
    protected: FeatureId,
    max_context_arity: usize,
) -> Result<Vec<ProxyWitness>> {
    let len = k.len();
    check_feature(protected, len)?;
    let mut witnesses = Vec::new();
    for proxy in (0..len).map(FeatureId::new).filter(|q| *q != protected) {
        let pool = full_mask(len) & !(1 << protected.index()) & !(1 << proxy.index());
        let mut contexts: Vec<PartialAssignment> = small_subsets(pool, max_context_arity)
            .into_iter()
            .flat_map(|m| subsets(m).map(move |values| PartialAssignment::from_raw(m, values)))
            .collect();
        contexts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        for context in contexts {
            for proxy_value in [false, true] {
                for protected_value in [false, true] {
                    let w = ProxyWitness {
                        protected,
                        proxy,
                        context,
                        proxy_value,
                        protected_value,
                    };
                    if w.verify(k) {
                        witnesses.push(w);
                    }
                }
            }
        }
    }
    Ok(witnesses)
}

/// Subsets of `pool` with at most `max` members.
fn small_subsets(pool: u32, max: usize) -> Vec<u32> {
    fn extend(rest: u32, current: u32, left: usize, out: &mut Vec<u32>) {
        out.push(current);
        if left == 0 {
            return;
        }
        let mut rest = rest;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= rest - 1;
            extend(rest, current | bit, left - 1, out);
        }
    }
    let mut out = Vec::new();
    extend(pool, 0, max, &mut out);
    out
}

/// `m` together with a twin that differs only on one unreal individual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiasedTwin<M> {
    pub model: ModelOverride<M>,
    /// Real individual satisfying the witness context and proxy literal.
    pub real: Individual,
    /// `real` with the protected feature flipped; violates `K`.
    pub unreal: Individual,
}

/// Builds a decision process equivalent to `m` on `[[K]]` that is biased on
/// the protected feature, from an unbiased `m` and a proxy witness.
///
/// Takes the first real individual (table-index order) satisfying the
/// context and the proxy literal, and flips the decision of its
/// protected-flipped twin, which the witness guarantees is not real.
pub fn construct_biased_twin<M: Classifier + Clone>(
    m: &M,
    k: &ConstraintSet,
    w: &ProxyWitness,
) -> Result<BiasedTwin<M>> {
    if k.len() != m.feature_count() {
        return Err(Error::DimensionMismatch {
            expected: m.feature_count(),
            actual: k.len(),
        });
    }
    if is_process_biased(m, w.protected).is_some() {
        return Err(Error::AlreadyBiased);
    }
    if !w.verify(k) {
        return Err(Error::InvalidWitness);
    }
    let fixed = w
        .context
        .with(w.proxy_literal())
        .map_err(|_| Error::InvalidWitness)?;
    let real = Individual::all(m.feature_count())
        .find(|x| x.extends(&fixed) && k.check_real(x))
        .ok_or(Error::InvalidWitness)?;
    let unreal = real.flip(w.protected);
    if k.check_real(&unreal) || real.value(w.protected) != w.protected_value {
        return Err(Error::InvalidWitness);
    }
    let flipped = m.decide(&unreal)?.negate();
    let model = ModelOverride::new(m.clone()).with_exception(unreal, flipped)?;
    Ok(BiasedTwin {
        model,
        real,
        unreal,
    })
}
