//! Command pipelines over parsed inputs. The CLI reads files and renders
//! the returned report bodies.

use fairxp_core::bias::{
    audit_bk_aware_bias, audit_explicit_bias, find_proxies, is_process_biased,
    ClassifiedExplanation, ExplanationClass, ProxyWitness,
};
use fairxp_core::explain::{ascending_order, compute_explanation, enumerate_minimal_explanations};
use fairxp_core::fairness::{
    audit_individual_fairness, check_mapping_consistency, FairnessVerdict, FeaturePartition,
    MappingSpec,
};
use fairxp_core::knowledge::{mine_forbidden_patterns, ConstraintSet};
use fairxp_core::{
    Classifier, DecisionModel, FeatureId, FeatureSpace, Individual, PartialAssignment,
};

use crate::error::{Error, Result};
use crate::formats::{conjunction_str, write_bk, write_individual, Dataset};
use crate::report::{
    AuditBody, Classified, CriterionRow, ExplainBody, FairnessSection, IndividualAudit,
    MappingBody, ProxiesBody, Summary, TraceRow,
};

fn cells(space: &FeatureSpace, x: &Individual, pa: &PartialAssignment) -> Vec<String> {
    space
        .ids()
        .map(|f| match pa.mentions(f) {
            true => (x.value(f) as u8).to_string(),
            false => "?".to_string(),
        })
        .collect()
}

/// Parses a comma separated feature order; it must list every feature once.
pub fn parse_order(text: &str, space: &FeatureSpace) -> Result<Vec<FeatureId>> {
    let order = text
        .split(',')
        .map(|n| {
            space
                .lookup(n.trim())
                .map_err(|e| Error::Usage(e.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut seen = 0u32;
    for f in &order {
        if seen & (1 << f.index()) != 0 {
            return Err(Error::Usage(format!(
                "feature {} repeated in --order",
                space.name(*f)
            )));
        }
        seen |= 1 << f.index();
    }
    if order.len() != space.len() {
        return Err(Error::Usage(
            "--order must list every feature exactly once".to_string(),
        ));
    }
    Ok(order)
}

pub fn explain(
    m: &DecisionModel,
    x: &Individual,
    order: Option<&[FeatureId]>,
    k: Option<&ConstraintSet>,
    trace: bool,
    all: bool,
) -> Result<ExplainBody> {
    let space = m.features();
    let default_order = ascending_order(space.len());
    let order = order.unwrap_or(&default_order);
    let (e, steps) = compute_explanation(m, x, order, k)?;
    let trace = trace.then(|| {
        steps
            .steps
            .iter()
            .map(|s| TraceRow {
                cells: cells(space, x, &s.candidate),
                flip_exists: s.flip_exists,
            })
            .collect()
    });
    let all_minimal = if all {
        Some(
            enumerate_minimal_explanations(m, x, k)?
                .iter()
                .map(|e| conjunction_str(space, &e.literals))
                .collect(),
        )
    } else {
        None
    };
    Ok(ExplainBody {
        features: space.names().to_vec(),
        individual: write_individual(x, space),
        decision: m.decide(x)?.as_u8(),
        real: k.map(|k| k.check_real(x)),
        trace,
        explanation: conjunction_str(space, &e.literals),
        final_cells: cells(space, x, &e.literals),
        vacuous: e.vacuous,
        all_minimal,
    })
}

/// `q=M ctx=(P=1) q:=1 => p:=1`.
pub fn witness_str(w: &ProxyWitness, space: &FeatureSpace) -> String {
    let ctx: Vec<String> = w
        .context
        .literals()
        .map(|l| format!("{}={}", space.name(l.feature), l.positive as u8))
        .collect();
    format!(
        "q={} ctx=({}) q:={} => p:={}",
        space.name(w.proxy),
        ctx.join(","),
        w.proxy_value as u8,
        w.protected_value as u8
    )
}

pub fn proxies(
    k: &ConstraintSet,
    space: &FeatureSpace,
    protected: FeatureId,
    arity: usize,
) -> Result<ProxiesBody> {
    if k.len() != space.len() {
        return Err(Error::invalid(
            "background knowledge and feature set differ in size",
        ));
    }
    Ok(ProxiesBody {
        protected: space.name(protected).to_string(),
        witnesses: find_proxies(k, protected, arity)?
            .iter()
            .map(|w| witness_str(w, space))
            .collect(),
    })
}

pub fn mapping_report(ms: &MappingSpec, k: &ConstraintSet, space: &FeatureSpace) -> MappingBody {
    let report = check_mapping_consistency(ms, k);
    let rule = |i: usize| {
        let r = &ms.rules()[i];
        format!(
            "{{{}}} => {{{}}}",
            space.assignment_str(&r.source),
            space.assignment_str(&r.target)
        )
    };
    MappingBody {
        consistent: report.is_consistent(),
        checked: report.checked,
        injectivity_violations: report
            .injectivity_violations
            .iter()
            .map(|(i, j)| {
                format!(
                    "rules {} and {} share a target: {} / {}",
                    i + 1,
                    j + 1,
                    rule(*i),
                    rule(*j)
                )
            })
            .collect(),
        uncovered: report
            .uncovered
            .iter()
            .map(|x| write_individual(x, space))
            .collect(),
    }
}

/// Mined patterns as a background knowledge file.
pub fn mine(data: &Dataset, max_arity: usize) -> Result<String> {
    let patterns = mine_forbidden_patterns(&data.rows, data.features.len(), max_arity)?;
    let k = ConstraintSet::from_forbidden(&patterns, data.features.len())?;
    write_bk(&k, &data.features)
}

fn class_str(c: ExplanationClass, space: &FeatureSpace, protected: FeatureId) -> String {
    match c {
        ExplanationClass::ExplicitlyBiased => "explicitly-biased".to_string(),
        ExplanationClass::ProxyFactor { protected_value } => {
            format!(
                "proxy-factor({}={})",
                space.name(protected),
                protected_value as u8
            )
        }
        ExplanationClass::Vacuous => "vacuous".to_string(),
        ExplanationClass::Unbiased => "unbiased".to_string(),
    }
}

fn classified(
    rows: &[ClassifiedExplanation],
    space: &FeatureSpace,
    protected: FeatureId,
) -> Vec<Classified> {
    rows.iter()
        .map(|c| Classified {
            explanation: conjunction_str(space, &c.explanation.literals),
            class: class_str(c.class, space, protected),
        })
        .collect()
}

fn fairness_section(v: &FairnessVerdict, space: &FeatureSpace) -> FairnessSection {
    let s = |pa: &PartialAssignment| conjunction_str(space, pa);
    FairnessSection {
        fair: v.fair,
        criterion: v.criterion.as_ref().map(s),
        counterpart: v.counterpart.as_ref().map(s),
        reason: v.reason.code().to_string(),
        checks: v
            .checks
            .iter()
            .map(|c| CriterionRow {
                explanation: s(&c.explanation),
                counterpart: c.counterpart.as_ref().map(s),
                counterpart_sufficient: c.counterpart_sufficient,
            })
            .collect(),
    }
}

/// Options of the composite audit.
pub struct AuditOptions<'a> {
    pub protected: FeatureId,
    pub k: Option<&'a ConstraintSet>,
    pub fairness: Option<(&'a MappingSpec, &'a FeaturePartition)>,
    pub context_arity: usize,
}

/// Audits each `(label, individual)`. Individuals violating the background
/// knowledge only get the explicit-bias audit.
pub fn audit(
    m: &DecisionModel,
    subjects: &[(String, Individual)],
    opts: &AuditOptions,
) -> Result<AuditBody> {
    let space = m.features();
    let p = opts.protected;
    if let Some(k) = opts.k {
        if k.len() != space.len() {
            return Err(Error::invalid(
                "background knowledge and model differ in size",
            ));
        }
    }
    let proxies = match opts.k {
        Some(k) => Some(proxies(k, space, p, opts.context_arity)?.witnesses),
        None => None,
    };
    let mapping = match (opts.fairness, opts.k) {
        (Some((ms, _)), Some(k)) => Some(mapping_report(ms, k, space)),
        (Some((ms, _)), None) => Some(mapping_report(
            ms,
            &ConstraintSet::empty(space.len())?,
            space,
        )),
        _ => None,
    };

    let mut individuals = Vec::with_capacity(subjects.len());
    for (label, x) in subjects {
        let real = opts.k.map(|k| k.check_real(x));
        let usable_k = match (opts.k, real) {
            (Some(k), Some(true)) => Some(Some(k)),
            (Some(_), _) => None,
            (None, _) => Some(None),
        };
        let verdict = match usable_k {
            Some(Some(k)) => audit_bk_aware_bias(m, x, k, p)?,
            _ => audit_explicit_bias(m, x, p)?,
        };
        let fairness = match (opts.fairness, usable_k) {
            (Some((ms, fp)), Some(k)) => Some(fairness_section(
                &audit_individual_fairness(m, x, ms, fp, k)?,
                space,
            )),
            _ => None,
        };
        individuals.push(IndividualAudit {
            label: label.clone(),
            individual: write_individual(x, space),
            decision: verdict.decision.as_u8(),
            real,
            explanations: classified(&verdict.evidence, space, p),
            explicit_bias: verdict.explicit_bias,
            bk_explanations: verdict
                .bk_aware_bias
                .map(|_| classified(&verdict.bk_evidence, space, p)),
            bk_aware_bias: verdict.bk_aware_bias,
            fairness,
        });
    }

    let count = |f: &dyn Fn(&IndividualAudit) -> Option<bool>| {
        individuals.iter().filter(|i| f(i) == Some(true)).count()
    };
    let summary = Summary {
        individuals: individuals.len(),
        explicitly_biased: count(&|i| Some(i.explicit_bias)),
        bk_aware_biased: opts.k.map(|_| count(&|i| i.bk_aware_bias)),
        fair: opts
            .fairness
            .map(|_| count(&|i| i.fairness.as_ref().map(|f| f.fair))),
        process_bias_witness: is_process_biased(m, p).map(|x| write_individual(&x, space)),
    };
    Ok(AuditBody {
        protected: space.name(p).to_string(),
        proxies,
        mapping,
        individuals,
        summary,
    })
}
