//! The reference credit bundle and its golden checks.

use fairxp_core::fairness::{FeaturePartition, MappingSpec};
use fairxp_core::knowledge::ConstraintSet;
use fairxp_core::{DecisionModel, FeatureSpace, Individual};

use crate::commands::{audit, explain, mapping_report, mine, proxies, AuditOptions};
use crate::error::Result;
use crate::formats::{
    parse_bk, parse_dataset, parse_individual, parse_mapping, parse_model, parse_partition, Dataset,
};
use crate::report::{BundleBody, BundleCheck, InputFile};

pub const MODEL: &str = include_str!("../bundle/credit.model.json");
pub const BK: &str = include_str!("../bundle/k1.bk");
pub const MAPPING: &str = include_str!("../bundle/credit.map");
pub const PARTITION: &str = include_str!("../bundle/credit.partition");
pub const DATASET: &str = include_str!("../bundle/credit.csv");

pub const HAWA: &str = "A=1,G=0,J=0,H=0,S=0,B=1,C=0,D=0,P=1,M=1";
pub const YAHYA: &str = "A=1,G=1,J=0,H=0,S=0,B=0,C=0,D=0,P=1,M=1";

/// Bundle file texts, in the order model, bk, mapping, partition, dataset.
pub struct BundleFiles {
    pub model: String,
    pub bk: String,
    pub mapping: String,
    pub partition: String,
    pub dataset: String,
}

impl BundleFiles {
    pub fn embedded() -> Self {
        BundleFiles {
            model: MODEL.to_string(),
            bk: BK.to_string(),
            mapping: MAPPING.to_string(),
            partition: PARTITION.to_string(),
            dataset: DATASET.to_string(),
        }
    }

    pub const NAMES: [&'static str; 5] = [
        "credit.model.json",
        "k1.bk",
        "credit.map",
        "credit.partition",
        "credit.csv",
    ];

    pub fn inputs(&self, dir: &str) -> Vec<InputFile> {
        let texts = [
            &self.model,
            &self.bk,
            &self.mapping,
            &self.partition,
            &self.dataset,
        ];
        let roles = ["model", "bk", "mapping", "partition", "dataset"];
        roles
            .iter()
            .zip(Self::NAMES)
            .zip(texts)
            .map(|((role, name), text)| {
                InputFile::new(role, &format!("{dir}/{name}"), text.as_bytes())
            })
            .collect()
    }
}

struct Loaded {
    model: DecisionModel,
    k: ConstraintSet,
    ms: MappingSpec,
    fp: FeaturePartition,
    data: Dataset,
}

fn load(files: &BundleFiles) -> Result<Loaded> {
    let model = parse_model(&files.model).map_err(|e| e.in_file("credit.model.json"))?;
    let space: &FeatureSpace = model.features();
    let k = parse_bk(&files.bk, space).map_err(|e| e.in_file("k1.bk"))?;
    let fp = parse_partition(&files.partition, space).map_err(|e| e.in_file("credit.partition"))?;
    let ms = parse_mapping(&files.mapping, space, &fp).map_err(|e| e.in_file("credit.map"))?;
    let data = parse_dataset(&files.dataset).map_err(|e| e.in_file("credit.csv"))?;
    Ok(Loaded {
        model,
        k,
        ms,
        fp,
        data,
    })
}

/// Runs the reference examples against the bundle files.
pub fn verify(files: &BundleFiles) -> Result<BundleBody> {
    let b = load(files)?;
    let space = b.model.features();
    let g = space.lookup("G")?;
    let hawa = parse_individual(HAWA, space)?;
    let yahya = parse_individual(YAHYA, space)?;
    let mut checks = Vec::new();
    let mut check = |name: &str, expected: &str, actual: String| {
        checks.push(BundleCheck {
            name: name.to_string(),
            expected: expected.to_string(),
            pass: expected == actual,
            actual,
        });
    };

    let e = explain(&b.model, &hawa, None, None, true, false)?;
    let pattern: String = e
        .trace
        .iter()
        .flatten()
        .map(|r| if r.flip_exists { 'T' } else { 'F' })
        .collect();
    check("hawa trace", "TFFFFTFTTF", pattern);
    check("hawa explanation", "A & B & !D & P", e.explanation);
    check(
        "hawa real under k1",
        "false",
        b.k.check_real(&hawa).to_string(),
    );

    let opts = AuditOptions {
        protected: g,
        k: Some(&b.k),
        fairness: Some((&b.ms, &b.fp)),
        context_arity: 1,
    };
    let report = audit(&b.model, &[("yahya".to_string(), yahya)], &opts)?;
    let y = &report.individuals[0];
    let fairness = y.fairness.as_ref();
    check("yahya decision", "1", y.decision.to_string());
    check("yahya explicit bias", "false", y.explicit_bias.to_string());
    check(
        "yahya bk-aware bias",
        "true",
        y.bk_aware_bias.map_or("n/a".to_string(), |b| b.to_string()),
    );
    check(
        "yahya fair",
        "true",
        fairness.is_some_and(|f| f.fair).to_string(),
    );
    check(
        "yahya criterion",
        "A & !S & !D & P & M",
        fairness
            .and_then(|f| f.criterion.clone())
            .unwrap_or_default(),
    );
    check(
        "yahya counterpart",
        "A & !G & !S & !D & !M",
        fairness
            .and_then(|f| f.counterpart.clone())
            .unwrap_or_default(),
    );
    check(
        "yahya is dataset row 0",
        "true",
        (b.data.rows.first() == Some(&yahya)).to_string(),
    );
    check(
        "model reads G",
        "true",
        report.summary.process_bias_witness.is_some().to_string(),
    );

    let mined = mine(&b.data, 3)?;
    check(
        "mined knowledge contains k1",
        "true",
        mined.lines().any(|l| l == "forbid !G & P & M").to_string(),
    );
    let arity1 = proxies(&b.k, space, g, 1)?.witnesses;
    check(
        "k1 proxy witness",
        "true",
        arity1
            .iter()
            .any(|w| w == "q=M ctx=(P=1) q:=1 => p:=1")
            .to_string(),
    );
    check(
        "k1 proxies without context",
        "0",
        proxies(&b.k, space, g, 0)?.witnesses.len().to_string(),
    );
    check(
        "mapping consistent with k1",
        "true",
        mapping_report(&b.ms, &b.k, space).consistent.to_string(),
    );
    check(
        "dataset rows are real",
        "true",
        b.data
            .rows
            .iter()
            .all(|r: &Individual| b.k.check_real(r))
            .to_string(),
    );

    let pass = checks.iter().all(|c| c.pass);
    Ok(BundleBody { checks, pass })
}
