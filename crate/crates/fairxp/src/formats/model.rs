use fairxp_core::model::{table_string, Decimal, ModelKind};
use fairxp_core::{DecisionModel, FeatureSpace};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    features: Vec<String>,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    table: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bias: Option<String>,
}

/// Reads a model file: `features`, `kind` and either a `table` bit string
/// (index = big-endian feature bits) or decimal `weights` and `bias`.
pub fn parse_model(text: &str) -> Result<DecisionModel> {
    super::check_ascii(text)?;
    let file: ModelFile =
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    let space = FeatureSpace::new(file.features.iter().cloned())?;
    let unexpected = |field: &str| {
        Error::invalid(format!(
            "field `{field}` not allowed for kind `{}`",
            file.kind
        ))
    };
    match file.kind.as_str() {
        "truth-table" => {
            if file.weights.is_some() {
                return Err(unexpected("weights"));
            }
            if file.bias.is_some() {
                return Err(unexpected("bias"));
            }
            let table = file
                .table
                .as_deref()
                .ok_or_else(|| Error::invalid("missing field `table`"))?;
            let outputs = table
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(Error::invalid(format!(
                        "table contains `{c}`, expected 0 or 1"
                    ))),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(DecisionModel::truth_table(space, &outputs)?)
        }
        "linear-threshold" => {
            if file.table.is_some() {
                return Err(unexpected("table"));
            }
            let weights = file
                .weights
                .as_ref()
                .ok_or_else(|| Error::invalid("missing field `weights`"))?;
            let bias = file
                .bias
                .as_deref()
                .ok_or_else(|| Error::invalid("missing field `bias`"))?;
            let weights = weights
                .iter()
                .map(|w| w.parse::<Decimal>())
                .collect::<Result<Vec<_>, _>>()?;
            Ok(DecisionModel::linear_threshold(
                space,
                weights,
                bias.parse()?,
            )?)
        }
        other => Err(Error::invalid(format!(
            "unknown model kind `{other}` (expected truth-table or linear-threshold)"
        ))),
    }
}

pub fn write_model(m: &DecisionModel) -> String {
    let features = m.features().names().to_vec();
    let file = match m.kind() {
        ModelKind::TruthTable(t) => ModelFile {
            features,
            kind: "truth-table".to_string(),
            table: Some(table_string(t)),
            weights: None,
            bias: None,
        },
        ModelKind::LinearThreshold(l) => ModelFile {
            features,
            kind: "linear-threshold".to_string(),
            table: None,
            weights: Some(l.weights().iter().map(|w| w.to_string()).collect()),
            bias: Some(l.bias().to_string()),
        },
    };
    let mut out = serde_json::to_string_pretty(&file).expect("model file serializes");
    out.push('\n');
    out
}
