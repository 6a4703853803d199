use fairxp_core::{FeatureSpace, Individual};

use super::check_ascii;
use crate::error::{AtLine, Error, Result};

/// Header of feature names, then one row of `0`/`1` values per individual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dataset {
    pub features: FeatureSpace,
    pub rows: Vec<Individual>,
}

pub fn parse_dataset(text: &str) -> Result<Dataset> {
    check_ascii(text)?;
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::invalid("empty dataset file"))?;
    let features = FeatureSpace::new(header.split(',').map(str::trim)).at_line(1)?;
    let mut rows = Vec::new();
    for (i, l) in lines {
        let values = l
            .split(',')
            .map(|v| match v.trim() {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(Error::parse(
                    i + 1,
                    format!("value `{other}` is not 0 or 1"),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != features.len() {
            return Err(Error::parse(
                i + 1,
                format!("expected {} values, got {}", features.len(), values.len()),
            ));
        }
        rows.push(Individual::from_values(&values).at_line(i + 1)?);
    }
    Ok(Dataset { features, rows })
}

pub fn write_dataset(d: &Dataset) -> String {
    let mut out = d.features.names().join(",");
    out.push('\n');
    for r in &d.rows {
        let vals: Vec<&str> = r
            .values()
            .iter()
            .map(|v| if *v { "1" } else { "0" })
            .collect();
        out.push_str(&vals.join(","));
        out.push('\n');
    }
    out
}

/// `NAME=0|1` pairs separated by commas, one for every feature, in any
/// order.
pub fn parse_individual(text: &str, space: &FeatureSpace) -> Result<Individual> {
    let mut values: Vec<Option<bool>> = vec![None; space.len()];
    for part in text.split(',') {
        let (name, value) = part.split_once('=').ok_or_else(|| {
            Error::invalid(format!("expected NAME=0 or NAME=1, got `{}`", part.trim()))
        })?;
        let f = space
            .lookup(name.trim())
            .map_err(|e| Error::invalid(e.to_string()))?;
        let value = match value.trim() {
            "0" => false,
            "1" => true,
            other => return Err(Error::invalid(format!("value `{other}` is not 0 or 1"))),
        };
        if values[f.index()].replace(value).is_some() {
            return Err(Error::invalid(format!(
                "feature {} given twice",
                name.trim()
            )));
        }
    }
    let missing: Vec<&str> = space
        .ids()
        .filter(|f| values[f.index()].is_none())
        .map(|f| space.name(f))
        .collect();
    if !missing.is_empty() {
        return Err(Error::invalid(format!(
            "individual is missing {}",
            missing.join(", ")
        )));
    }
    let values: Vec<bool> = values.into_iter().map(Option::unwrap).collect();
    Ok(Individual::from_values(&values)?)
}

/// `A=1,G=0,...` in feature order.
pub fn write_individual(x: &Individual, space: &FeatureSpace) -> String {
    space
        .ids()
        .map(|f| format!("{}={}", space.name(f), x.value(f) as u8))
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dataset_roundtrip() {
        let d = parse_dataset("a,b,c\n1,0,1\n0,0,0\n").unwrap();
        assert_eq!(d.rows.len(), 2);
        assert_eq!(parse_dataset(&write_dataset(&d)).unwrap(), d);
    }

    #[test]
    fn dataset_errors() {
        for bad in ["", "a,b\n1,2\n", "a,b\n1\n", "a,a\n1,1\n", "a,b c\n1,1\n"] {
            assert!(parse_dataset(bad).is_err(), "{bad:?}");
        }
        let err = parse_dataset("a,b\n1,1\n0,x\n").unwrap_err();
        assert!(err.to_string().starts_with("3:"), "{err}");
    }

    #[test]
    fn individuals() {
        let space = FeatureSpace::new(["a", "b"]).unwrap();
        let x = parse_individual("b=1, a=0", &space).unwrap();
        assert_eq!(write_individual(&x, &space), "a=0,b=1");
        for bad in ["a=1", "a=1,b=1,a=0", "a=1,b=2", "a=1,c=0", "a1,b=0"] {
            assert!(parse_individual(bad, &space).is_err(), "{bad}");
        }
    }
}
