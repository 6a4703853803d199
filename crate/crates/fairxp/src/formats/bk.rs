use fairxp_core::knowledge::ConstraintSet;
use fairxp_core::{FeatureSpace, Formula, Literal};

use super::{check_ascii, content_lines, parse_literals};
use crate::error::{Error, Result};

/// One constraint per line: `forbid L & L & ...` or `L & ... -> L`.
pub fn parse_bk(text: &str, space: &FeatureSpace) -> Result<ConstraintSet> {
    check_ascii(text)?;
    let mut constraints = Vec::new();
    for (line, content) in content_lines(text) {
        let formula = if let Some(rest) = content.strip_prefix("forbid") {
            if !rest.starts_with(char::is_whitespace) {
                return Err(Error::parse(
                    line,
                    format!("expected `forbid <lit> & ...`, got `{content}`"),
                ));
            }
            let pa = parse_literals(space, rest, '&', line)?;
            Formula::forbid(pa.literals())
        } else if let Some((body, head)) = content.split_once("->") {
            if body.trim().is_empty() {
                return Err(Error::parse(line, "rule without body"));
            }
            let body = parse_literals(space, body, '&', line)?;
            let head = parse_literals(space, head, '&', line)?;
            let mut lits = head.literals();
            let (Some(head), None) = (lits.next(), lits.next()) else {
                return Err(Error::parse(line, "rule head must be a single literal"));
            };
            Formula::rule(body.literals(), head)
        } else {
            return Err(Error::parse(
                line,
                format!("expected `forbid <lit> & ...` or `<lit> & ... -> <lit>`, got `{content}`"),
            ));
        };
        constraints.push(formula);
    }
    Ok(ConstraintSet::new(constraints, space.len())?)
}

fn literals_of(fs: &[Formula]) -> Option<Vec<Literal>> {
    fs.iter()
        .map(|f| match f {
            Formula::Lit(l) => Some(*l),
            _ => None,
        })
        .collect()
}

fn join(space: &FeatureSpace, lits: &[Literal]) -> String {
    lits.iter()
        .map(|l| space.literal_str(*l))
        .collect::<Vec<_>>()
        .join(" & ")
}

/// Fails on constraints outside the two line shapes.
pub fn write_bk(k: &ConstraintSet, space: &FeatureSpace) -> Result<String> {
    let mut out = String::new();
    for c in k.constraints() {
        let line = match c {
            Formula::Not(inner) => match inner.as_ref() {
                Formula::And(fs) => literals_of(fs)
                    .filter(|lits| !lits.is_empty())
                    .map(|lits| format!("forbid {}", join(space, &lits))),
                _ => None,
            },
            Formula::Implies(body, head) => match (body.as_ref(), head.as_ref()) {
                (Formula::And(fs), Formula::Lit(h)) => literals_of(fs)
                    .filter(|lits| !lits.is_empty())
                    .map(|lits| format!("{} -> {}", join(space, &lits), space.literal_str(*h))),
                _ => None,
            },
            _ => None,
        };
        let line = line.ok_or_else(|| {
            Error::invalid(format!(
                "constraint {} has no background knowledge file form",
                c.display(space)
            ))
        })?;
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}
