//! Run reports. Each command produces a [`Report`], rendered either as
//! structured text or as JSON. Both renderings depend only on the inputs
//! and parameters; timing goes to stderr.

use std::fmt::Write;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InputFile {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

impl InputFile {
    pub fn new(role: &str, path: &str, contents: &[u8]) -> Self {
        InputFile {
            role: role.to_string(),
            path: path.to_string(),
            sha256: format!("{:x}", Sha256::digest(contents)),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputFile>,
    /// Parameter name and value, in a fixed order per command.
    pub parameters: Vec<(String, String)>,
    pub body: Body,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Body {
    Explain(ExplainBody),
    Audit(AuditBody),
    Proxies(ProxiesBody),
    Mapping(MappingBody),
    Bundle(BundleBody),
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TraceRow {
    /// One cell per feature: `0`, `1`, or `?` for a dropped literal.
    pub cells: Vec<String>,
    pub flip_exists: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExplainBody {
    pub features: Vec<String>,
    pub individual: String,
    pub decision: u8,
    pub real: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceRow>>,
    pub explanation: String,
    pub final_cells: Vec<String>,
    pub vacuous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_minimal: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Classified {
    pub explanation: String,
    pub class: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CriterionRow {
    pub explanation: String,
    pub counterpart: Option<String>,
    pub counterpart_sufficient: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FairnessSection {
    pub fair: bool,
    pub criterion: Option<String>,
    pub counterpart: Option<String>,
    pub reason: String,
    pub checks: Vec<CriterionRow>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IndividualAudit {
    pub label: String,
    pub individual: String,
    pub decision: u8,
    /// Whether the individual satisfies the background knowledge, when
    /// supplied. Background-aware sections are skipped otherwise.
    pub real: Option<bool>,
    pub explanations: Vec<Classified>,
    pub explicit_bias: bool,
    pub bk_explanations: Option<Vec<Classified>>,
    pub bk_aware_bias: Option<bool>,
    pub fairness: Option<FairnessSection>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub individuals: usize,
    pub explicitly_biased: usize,
    pub bk_aware_biased: Option<usize>,
    pub fair: Option<usize>,
    /// First individual (table-index order) whose decision changes when
    /// only the protected feature is flipped.
    pub process_bias_witness: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AuditBody {
    pub protected: String,
    pub proxies: Option<Vec<String>>,
    pub mapping: Option<MappingBody>,
    pub individuals: Vec<IndividualAudit>,
    pub summary: Summary,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ProxiesBody {
    pub protected: String,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MappingBody {
    pub consistent: bool,
    pub checked: usize,
    pub injectivity_violations: Vec<String>,
    pub uncovered: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BundleCheck {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BundleBody {
    pub checks: Vec<BundleCheck>,
    pub pass: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        line(w, &format!("command: {}", self.command));
        for input in &self.inputs {
            line(
                w,
                &format!(
                    "input {}: {} sha256:{}",
                    input.role, input.path, input.sha256
                ),
            );
        }
        for (name, value) in &self.parameters {
            line(w, &format!("{name}: {value}"));
        }
        line(w, "");
        match &self.body {
            Body::Explain(b) => explain_text(w, b),
            Body::Audit(b) => audit_text(w, b),
            Body::Proxies(b) => {
                line(
                    w,
                    &format!("proxies of {}: {}", b.protected, b.witnesses.len()),
                );
                for wit in &b.witnesses {
                    line(w, &format!("  {wit}"));
                }
            }
            Body::Mapping(b) => mapping_text(w, b, ""),
            Body::Bundle(b) => {
                for c in &b.checks {
                    let status = if c.pass { "PASS" } else { "FAIL" };
                    line(w, &format!("{status} {}: {}", c.name, c.actual));
                    if !c.pass {
                        line(w, &format!("     expected: {}", c.expected));
                    }
                }
                line(
                    w,
                    &format!("bundle: {}", if b.pass { "ok" } else { "FAILED" }),
                );
            }
        }
        out
    }
}

fn line(out: &mut String, s: &str) {
    out.push_str(s);
    out.push('\n');
}

fn bool_str(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn opt_bool(b: Option<bool>) -> &'static str {
    b.map(bool_str).unwrap_or("n/a")
}

/// Step table: a label column, one column per feature, and the flip
/// column (`T` when some extension changes the decision).
fn trace_table(out: &mut String, features: &[String], rows: &[TraceRow], final_cells: &[String]) {
    let label_width = "final".len().max(rows.len().to_string().len());
    let widths: Vec<usize> = features.iter().map(|f| f.len().max(1)).collect();
    let render = |label: &str, cells: &[String], flip: &str| {
        let mut s = format!("{label:<label_width$}");
        for (cell, width) in cells.iter().zip(&widths) {
            let _ = write!(s, " {cell:>width$}");
        }
        if !flip.is_empty() {
            let _ = write!(s, "  {flip}");
        }
        s.trim_end().to_string()
    };
    line(out, &render("step", features, "exists"));
    for (i, r) in rows.iter().enumerate() {
        line(
            out,
            &render(
                &(i + 1).to_string(),
                &r.cells,
                if r.flip_exists { "T" } else { "F" },
            ),
        );
    }
    line(out, &render("final", final_cells, ""));
}

fn explain_text(out: &mut String, b: &ExplainBody) {
    line(out, &format!("individual: {}", b.individual));
    line(out, &format!("decision: {}", b.decision));
    if let Some(real) = b.real {
        line(out, &format!("real: {}", bool_str(real)));
    }
    if let Some(trace) = &b.trace {
        line(out, "");
        trace_table(out, &b.features, trace, &b.final_cells);
        line(out, "");
    }
    line(out, &format!("explanation: {}", b.explanation));
    if b.vacuous {
        line(out, "vacuous: true");
    }
    if let Some(all) = &b.all_minimal {
        line(out, &format!("minimal explanations: {}", all.len()));
        for e in all {
            line(out, &format!("  {e}"));
        }
    }
}

fn classified(out: &mut String, title: &str, rows: &[Classified]) {
    line(out, &format!("  {title}:"));
    let width = rows.iter().map(|r| r.explanation.len()).max().unwrap_or(0);
    for r in rows {
        line(out, &format!("    {:<width$}  {}", r.explanation, r.class));
    }
}

fn mapping_text(out: &mut String, b: &MappingBody, indent: &str) {
    line(
        out,
        &format!("{indent}mapping consistent: {}", bool_str(b.consistent)),
    );
    line(
        out,
        &format!("{indent}source individuals checked: {}", b.checked),
    );
    line(
        out,
        &format!(
            "{indent}injectivity violations: {}",
            b.injectivity_violations.len()
        ),
    );
    for v in &b.injectivity_violations {
        line(out, &format!("{indent}  {v}"));
    }
    line(
        out,
        &format!("{indent}uncovered individuals: {}", b.uncovered.len()),
    );
    for u in &b.uncovered {
        line(out, &format!("{indent}  {u}"));
    }
}

fn audit_text(out: &mut String, b: &AuditBody) {
    if let Some(proxies) = &b.proxies {
        line(
            out,
            &format!("proxies of {}: {}", b.protected, proxies.len()),
        );
        for p in proxies {
            line(out, &format!("  {p}"));
        }
        line(out, "");
    }
    if let Some(m) = &b.mapping {
        mapping_text(out, m, "");
        line(out, "");
    }
    for ind in &b.individuals {
        line(
            out,
            &format!("individual {}: {}", ind.label, ind.individual),
        );
        line(out, &format!("  decision: {}", ind.decision));
        if let Some(real) = ind.real {
            line(out, &format!("  real: {}", bool_str(real)));
        }
        classified(out, "explanations", &ind.explanations);
        line(
            out,
            &format!("  explicit_bias: {}", bool_str(ind.explicit_bias)),
        );
        if let Some(bk) = &ind.bk_explanations {
            classified(out, "bk_explanations", bk);
        }
        line(
            out,
            &format!("  bk_aware_bias: {}", opt_bool(ind.bk_aware_bias)),
        );
        if let Some(f) = &ind.fairness {
            line(out, &format!("  fair: {}", bool_str(f.fair)));
            line(
                out,
                &format!("  criterion: {}", f.criterion.as_deref().unwrap_or("none")),
            );
            line(
                out,
                &format!(
                    "  counterpart: {}",
                    f.counterpart.as_deref().unwrap_or("none")
                ),
            );
            line(out, &format!("  reason: {}", f.reason));
            line(out, "  criteria checked:");
            for c in &f.checks {
                let cp = c.counterpart.as_deref().unwrap_or("none");
                line(
                    out,
                    &format!(
                        "    {} => {}  sufficient={}",
                        c.explanation,
                        cp,
                        bool_str(c.counterpart_sufficient)
                    ),
                );
            }
        }
        line(out, "");
    }
    let s = &b.summary;
    line(out, "summary:");
    line(out, &format!("  individuals: {}", s.individuals));
    line(
        out,
        &format!("  explicitly_biased: {}", s.explicitly_biased),
    );
    let count = |c: Option<usize>| {
        c.map(|c| c.to_string())
            .unwrap_or_else(|| "n/a".to_string())
    };
    line(
        out,
        &format!("  bk_aware_biased: {}", count(s.bk_aware_biased)),
    );
    line(out, &format!("  fair: {}", count(s.fair)));
    line(
        out,
        &format!(
            "  process_bias_witness: {}",
            s.process_bias_witness.as_deref().unwrap_or("none")
        ),
    );
}
