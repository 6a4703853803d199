//! Text file formats: models (JSON), background knowledge, mappings,
//! partitions, datasets and individuals. Every writer's output parses back
//! to an equal value.

mod bk;
mod dataset;
mod mapping;
mod model;

pub use bk::{parse_bk, write_bk};
pub use dataset::{parse_dataset, parse_individual, write_dataset, write_individual, Dataset};
pub use mapping::{parse_mapping, parse_partition, write_mapping, write_partition};
pub use model::{parse_model, write_model};

use fairxp_core::{FeatureSpace, PartialAssignment};

use crate::error::{AtLine, Error, Result};

/// Meaningful lines with their 1-based numbers; `#` starts a comment.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub(crate) fn check_ascii(text: &str) -> Result<()> {
    match text.lines().position(|l| !l.is_ascii()) {
        Some(i) => Err(Error::parse(i + 1, "non-ASCII character")),
        None => Ok(()),
    }
}

/// Literals separated by `sep`; an all-blank list is empty.
pub(crate) fn parse_literals(
    space: &FeatureSpace,
    text: &str,
    sep: char,
    line: usize,
) -> Result<PartialAssignment> {
    let mut pa = PartialAssignment::empty();
    if text.trim().is_empty() {
        return Ok(pa);
    }
    for part in text.split(sep) {
        if part.trim().is_empty() {
            return Err(Error::parse(
                line,
                format!("empty literal in `{}`", text.trim()),
            ));
        }
        let lit = space.parse_literal(part).at_line(line)?;
        pa.insert(lit).map_err(|_| {
            Error::parse(line, format!("contradictory literals in `{}`", text.trim()))
        })?;
    }
    Ok(pa)
}

/// `A & !B & C`, or `TRUE` for the empty conjunction.
pub fn conjunction_str(space: &FeatureSpace, pa: &PartialAssignment) -> String {
    if pa.is_empty() {
        return "TRUE".to_string();
    }
    pa.literals()
        .map(|l| space.literal_str(l))
        .collect::<Vec<_>>()
        .join(" & ")
}
