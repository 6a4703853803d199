use fairxp_core::fairness::{FeaturePartition, MappingRule, MappingSpec};
use fairxp_core::{FeatureId, FeatureSpace, PartialAssignment};

use super::{check_ascii, content_lines, parse_literals};
use crate::error::{AtLine, Error, Result};

/// Three lines `base:`, `protected:` and `equivalence:`, each followed by
/// comma separated feature names.
pub fn parse_partition(text: &str, space: &FeatureSpace) -> Result<FeaturePartition> {
    check_ascii(text)?;
    let mut parts: [Option<Vec<FeatureId>>; 3] = [None, None, None];
    for (line, content) in content_lines(text) {
        let (key, names) = content.split_once(':').ok_or_else(|| {
            Error::parse(line, format!("expected `<part>: names`, got `{content}`"))
        })?;
        let slot = match key.trim() {
            "base" => 0,
            "protected" => 1,
            "equivalence" => 2,
            other => return Err(Error::parse(line, format!("unknown part `{other}`"))),
        };
        if parts[slot].is_some() {
            return Err(Error::parse(
                line,
                format!("part `{}` given twice", key.trim()),
            ));
        }
        let ids = names
            .split(',')
            .map(str::trim)
            .filter(|n| !n.is_empty())
            .map(|n| space.lookup(n).at_line(line))
            .collect::<Result<Vec<_>>>()?;
        parts[slot] = Some(ids);
    }
    let [Some(base), Some(protected), Some(equivalence)] = parts else {
        return Err(Error::invalid(
            "partition needs base:, protected: and equivalence: lines",
        ));
    };
    FeaturePartition::new(&base, &protected, &equivalence, space.len())
        .map_err(|e| Error::invalid(e.to_string()))
}

fn names(space: &FeatureSpace, mask: u32) -> String {
    space
        .ids()
        .filter(|f| mask & (1 << f.index()) != 0)
        .map(|f| space.name(f))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn write_partition(fp: &FeaturePartition, space: &FeatureSpace) -> String {
    format!(
        "base: {}\nprotected: {}\nequivalence: {}\n",
        names(space, fp.base_mask()),
        names(space, fp.protected_mask()),
        names(space, fp.equivalence_mask())
    )
}

fn parse_side(space: &FeatureSpace, text: &str, line: usize) -> Result<PartialAssignment> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| {
            Error::parse(
                line,
                format!("expected `{{<lit>, ...}}`, got `{}`", text.trim()),
            )
        })?;
    parse_literals(space, inner, ',', line)
}

fn parse_value(text: &str, line: usize) -> Result<(&str, bool)> {
    let (name, value) = text.split_once('=').ok_or_else(|| {
        Error::parse(
            line,
            format!("expected NAME=0 or NAME=1, got `{}`", text.trim()),
        )
    })?;
    let value = match value.trim() {
        "0" => false,
        "1" => true,
        other => return Err(Error::parse(line, format!("value `{other}` is not 0 or 1"))),
    };
    Ok((name.trim(), value))
}

/// Header `mapping NAME=v -> NAME=w` naming the source and target subgroup,
/// then one rule `{<lit>, ...} => {<lit>, ...}` per line.
pub fn parse_mapping(
    text: &str,
    space: &FeatureSpace,
    fp: &FeaturePartition,
) -> Result<MappingSpec> {
    check_ascii(text)?;
    let mut lines = content_lines(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| Error::invalid("empty mapping file"))?;
    let spec = header
        .strip_prefix("mapping")
        .filter(|r| r.starts_with(char::is_whitespace))
        .ok_or_else(|| Error::parse(line, "expected header `mapping NAME=v -> NAME=w`"))?;
    let (from, to) = spec
        .split_once("->")
        .ok_or_else(|| Error::parse(line, "expected header `mapping NAME=v -> NAME=w`"))?;
    let (from_name, source_value) = parse_value(from, line)?;
    let (to_name, target_value) = parse_value(to, line)?;
    if from_name != to_name {
        return Err(Error::parse(
            line,
            "header must name the same feature on both sides",
        ));
    }
    if source_value == target_value {
        return Err(Error::parse(line, "source and target subgroup coincide"));
    }
    let protected = space.lookup(from_name).at_line(line)?;

    let mut rules = Vec::new();
    for (line, content) in lines {
        let (source, target) = content.split_once("=>").ok_or_else(|| {
            Error::parse(
                line,
                format!("expected `{{...}} => {{...}}`, got `{content}`"),
            )
        })?;
        rules.push(MappingRule {
            source: parse_side(space, source, line)?,
            target: parse_side(space, target, line)?,
        });
    }
    MappingSpec::new(protected, source_value, target_value, rules, fp)
        .map_err(|e| Error::invalid(e.to_string()))
}

pub fn write_mapping(ms: &MappingSpec, space: &FeatureSpace) -> String {
    let name = space.name(ms.protected());
    let mut out = format!(
        "mapping {name}={} -> {name}={}\n",
        ms.source_value() as u8,
        ms.target_value() as u8
    );
    for r in ms.rules() {
        out.push_str(&format!(
            "{{{}}} => {{{}}}\n",
            space.assignment_str(&r.source),
            space.assignment_str(&r.target)
        ));
    }
    out
}
