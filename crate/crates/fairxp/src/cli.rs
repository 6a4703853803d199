//! `fairxp` command line.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fairxp_core::fairness::{FeaturePartition, MappingSpec};
use fairxp_core::knowledge::ConstraintSet;
use fairxp_core::{DecisionModel, FeatureSpace, Individual};

use crate::bundle::{self, BundleFiles};
use crate::commands::{self, AuditOptions};
use crate::error::{Error, ExitCode, Result};
use crate::formats::{
    parse_bk, parse_dataset, parse_individual, parse_mapping, parse_model, parse_partition, Dataset,
};
use crate::report::{Body, InputFile, Report};

#[derive(Parser, Debug)]
#[command(
    name = "fairxp",
    version,
    about = "Explanations, proxy discrimination and fairness audits for Boolean classifiers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute a minimal explanation of one decision.
    Explain(ExplainArgs),
    /// Bias, proxy and fairness audit of one individual or a dataset.
    Audit(AuditArgs),
    /// Mine forbidden patterns from a dataset as background knowledge.
    MineBk(MineArgs),
    /// List proxy variables of a protected feature.
    FindProxies(ProxyArgs),
    /// Check a mapping for injectivity and coverage of real individuals.
    CheckMapping(MappingArgs),
    /// Reproduce the reference examples from the credit bundle.
    VerifyBundle(BundleArgs),
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct Subject {
    /// Individual as NAME=0|1 pairs, e.g. A=1,G=0,...
    #[arg(long, conflicts_with = "row")]
    pub individual: Option<String>,
    /// Dataset file (header of feature names, rows of 0/1).
    #[arg(long)]
    pub dataset: Option<String>,
    /// Row index (0-based) into --dataset.
    #[arg(long, requires = "dataset")]
    pub row: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ExplainArgs {
    #[arg(long)]
    pub model: String,
    #[command(flatten)]
    pub subject: Subject,
    /// Feature order for the greedy deletion, comma separated.
    #[arg(long)]
    pub order: Option<String>,
    /// Background knowledge file; sufficiency is then checked on real individuals only.
    #[arg(long)]
    pub bk: Option<String>,
    /// Print the step table.
    #[arg(long)]
    pub trace: bool,
    /// Also list every minimal explanation.
    #[arg(long)]
    pub all: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct AuditArgs {
    #[arg(long)]
    pub model: String,
    #[command(flatten)]
    pub subject: Subject,
    /// Protected feature name.
    #[arg(long)]
    pub protected: String,
    #[arg(long)]
    pub bk: Option<String>,
    #[arg(long, requires = "partition")]
    pub mapping: Option<String>,
    #[arg(long, requires = "mapping")]
    pub partition: Option<String>,
    /// Maximum number of literals in a proxy context.
    #[arg(long, default_value_t = 2)]
    pub context_arity: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct MineArgs {
    #[arg(long)]
    pub dataset: String,
    #[arg(long, default_value_t = 3)]
    pub max_arity: usize,
    /// Write the file here instead of stdout.
    #[arg(long)]
    pub output: Option<String>,
}

#[derive(Args, Debug)]
pub struct Universe {
    /// Feature names, comma separated.
    #[arg(long, conflicts_with_all = ["model", "dataset"])]
    pub features: Option<String>,
    /// Take the feature names from a model file.
    #[arg(long, conflicts_with = "dataset")]
    pub model: Option<String>,
    /// Take the feature names from a dataset header.
    #[arg(long)]
    pub dataset: Option<String>,
}

#[derive(Args, Debug)]
pub struct ProxyArgs {
    #[arg(long)]
    pub bk: String,
    #[arg(long)]
    pub protected: String,
    #[arg(long, default_value_t = 2)]
    pub context_arity: usize,
    #[command(flatten)]
    pub universe: Universe,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct MappingArgs {
    #[arg(long)]
    pub mapping: String,
    #[arg(long)]
    pub partition: String,
    /// Background knowledge; without it every individual is real.
    #[arg(long)]
    pub bk: Option<String>,
    #[command(flatten)]
    pub universe: Universe,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct BundleArgs {
    /// Bundle directory; the copy compiled into the binary by default.
    #[arg(long)]
    pub dir: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

/// Runs the command line and returns the process exit status.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::Invalid as i32
            } else {
                0
            };
        }
    };
    let start = Instant::now();
    let mut stdout = std::io::stdout().lock();
    let status = match run(cli.command, &mut stdout) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code() as i32
        }
    };
    let _ = stdout.flush();
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    status
}

struct Inputs(Vec<InputFile>);

impl Inputs {
    fn read(&mut self, role: &str, path: &str) -> Result<String> {
        let bytes = fs::read(path).map_err(|source| Error::Io {
            path: path.to_string(),
            source,
        })?;
        self.0.push(InputFile::new(role, path, &bytes));
        String::from_utf8(bytes).map_err(|_| Error::invalid("file is not text").in_file(path))
    }

    fn model(&mut self, path: &str) -> Result<DecisionModel> {
        let text = self.read("model", path)?;
        parse_model(&text).map_err(|e| e.in_file(path))
    }

    fn bk(&mut self, path: &str, space: &FeatureSpace) -> Result<ConstraintSet> {
        let text = self.read("bk", path)?;
        parse_bk(&text, space).map_err(|e| e.in_file(path))
    }

    fn dataset(&mut self, path: &str) -> Result<Dataset> {
        let text = self.read("dataset", path)?;
        parse_dataset(&text).map_err(|e| e.in_file(path))
    }

    fn fairness(
        &mut self,
        mapping: &str,
        partition: &str,
        space: &FeatureSpace,
    ) -> Result<(MappingSpec, FeaturePartition)> {
        let text = self.read("partition", partition)?;
        let fp = parse_partition(&text, space).map_err(|e| e.in_file(partition))?;
        let text = self.read("mapping", mapping)?;
        let ms = parse_mapping(&text, space, &fp).map_err(|e| e.in_file(mapping))?;
        Ok((ms, fp))
    }

    fn subjects(&mut self, s: &Subject, space: &FeatureSpace) -> Result<Vec<(String, Individual)>> {
        if let Some(text) = &s.individual {
            return Ok(vec![("given".to_string(), parse_individual(text, space)?)]);
        }
        let Some(path) = &s.dataset else {
            return Err(Error::Usage("give --individual or --dataset".to_string()));
        };
        let data = self.dataset(path)?;
        if data.features != *space {
            return Err(
                Error::invalid("dataset header does not match the model features").in_file(path),
            );
        }
        match s.row {
            Some(i) => {
                let x = data.rows.get(i).ok_or_else(|| {
                    Error::Usage(format!("row {i} out of range ({} rows)", data.rows.len()))
                })?;
                Ok(vec![(format!("#{i}"), *x)])
            }
            None => Ok(data
                .rows
                .iter()
                .enumerate()
                .map(|(i, x)| (format!("#{i}"), *x))
                .collect()),
        }
    }

    fn universe(&mut self, u: &Universe) -> Result<FeatureSpace> {
        if let Some(names) = &u.features {
            return Ok(FeatureSpace::new(names.split(',').map(str::trim))?);
        }
        if let Some(path) = &u.model {
            return Ok(self.model(path)?.features().clone());
        }
        if let Some(path) = &u.dataset {
            return Ok(self.dataset(path)?.features);
        }
        Err(Error::Usage(
            "give the feature set with --features, --model or --dataset".to_string(),
        ))
    }
}

fn emit(out: &mut dyn Write, report: &Report, format: Format) -> Result<()> {
    let text = match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    out.write_all(text.as_bytes()).map_err(|source| Error::Io {
        path: "<stdout>".to_string(),
        source,
    })
}

fn param(name: &str, value: impl ToString) -> (String, String) {
    (name.to_string(), value.to_string())
}

/// Runs one command, writing its report to `out`. Returns the exit status
/// for commands that complete with a negative result.
pub fn run(command: Command, out: &mut dyn Write) -> Result<i32> {
    let mut inputs = Inputs(Vec::new());
    match command {
        Command::Explain(a) => {
            let model = inputs.model(&a.model)?;
            let space = model.features().clone();
            let k = a.bk.as_deref().map(|p| inputs.bk(p, &space)).transpose()?;
            let subjects = inputs.subjects(&a.subject, &space)?;
            let [(_, x)] = subjects.as_slice() else {
                return Err(Error::Usage(
                    "explain takes one individual (use --row with --dataset)".to_string(),
                ));
            };
            let order = a
                .order
                .as_deref()
                .map(|o| commands::parse_order(o, &space))
                .transpose()?;
            let body = commands::explain(&model, x, order.as_deref(), k.as_ref(), a.trace, a.all)?;
            let order_names = match &order {
                Some(o) => o
                    .iter()
                    .map(|f| space.name(*f))
                    .collect::<Vec<_>>()
                    .join(","),
                None => space.names().join(","),
            };
            let report = Report {
                command: "explain".to_string(),
                inputs: inputs.0,
                parameters: vec![
                    param("order", order_names),
                    param(
                        "background knowledge",
                        if k.is_some() { "yes" } else { "no" },
                    ),
                ],
                body: Body::Explain(body),
            };
            emit(out, &report, a.format)?;
        }
        Command::Audit(a) => {
            let model = inputs.model(&a.model)?;
            let space = model.features().clone();
            let protected = space
                .lookup(&a.protected)
                .map_err(|e| Error::Usage(e.to_string()))?;
            let k = a.bk.as_deref().map(|p| inputs.bk(p, &space)).transpose()?;
            let fairness = match (&a.mapping, &a.partition) {
                (Some(m), Some(p)) => Some(inputs.fairness(m, p, &space)?),
                _ => None,
            };
            let subjects = inputs.subjects(&a.subject, &space)?;
            if a.subject.individual.is_some() {
                if let Some(k) = &k {
                    if !k.check_real(&subjects[0].1) {
                        return Err(fairxp_core::Error::NotReal.into());
                    }
                }
            }
            let opts = AuditOptions {
                protected,
                k: k.as_ref(),
                fairness: fairness.as_ref().map(|(ms, fp)| (ms, fp)),
                context_arity: a.context_arity,
            };
            let body = commands::audit(&model, &subjects, &opts)?;
            let report = Report {
                command: "audit".to_string(),
                inputs: inputs.0,
                parameters: vec![
                    param("protected", &a.protected),
                    param("context arity", a.context_arity),
                ],
                body: Body::Audit(body),
            };
            emit(out, &report, a.format)?;
        }
        Command::MineBk(a) => {
            let data = inputs.dataset(&a.dataset)?;
            let text = commands::mine(&data, a.max_arity)?;
            match &a.output {
                Some(path) => fs::write(path, text).map_err(|source| Error::Io {
                    path: path.clone(),
                    source,
                })?,
                None => out.write_all(text.as_bytes()).map_err(|source| Error::Io {
                    path: "<stdout>".to_string(),
                    source,
                })?,
            }
        }
        Command::FindProxies(a) => {
            let space = inputs.universe(&a.universe)?;
            let protected = space
                .lookup(&a.protected)
                .map_err(|e| Error::Usage(e.to_string()))?;
            let k = inputs.bk(&a.bk, &space)?;
            let body = commands::proxies(&k, &space, protected, a.context_arity)?;
            let report = Report {
                command: "find-proxies".to_string(),
                inputs: inputs.0,
                parameters: vec![
                    param("protected", &a.protected),
                    param("context arity", a.context_arity),
                ],
                body: Body::Proxies(body),
            };
            emit(out, &report, a.format)?;
        }
        Command::CheckMapping(a) => {
            let space = inputs.universe(&a.universe)?;
            let (ms, _) = inputs.fairness(&a.mapping, &a.partition, &space)?;
            let k = match &a.bk {
                Some(p) => inputs.bk(p, &space)?,
                None => ConstraintSet::empty(space.len())?,
            };
            let body = commands::mapping_report(&ms, &k, &space);
            let report = Report {
                command: "check-mapping".to_string(),
                inputs: inputs.0,
                parameters: vec![],
                body: Body::Mapping(body),
            };
            emit(out, &report, a.format)?;
        }
        Command::VerifyBundle(a) => {
            let (files, dir) = match &a.dir {
                Some(dir) => {
                    let read = |name: &str| {
                        let path = Path::new(dir).join(name);
                        fs::read_to_string(&path).map_err(|source| Error::Io {
                            path: path.display().to_string(),
                            source,
                        })
                    };
                    let [model, bk, mapping, partition, dataset] = BundleFiles::NAMES;
                    let files = BundleFiles {
                        model: read(model)?,
                        bk: read(bk)?,
                        mapping: read(mapping)?,
                        partition: read(partition)?,
                        dataset: read(dataset)?,
                    };
                    (files, dir.trim_end_matches('/').to_string())
                }
                None => (BundleFiles::embedded(), "<embedded>".to_string()),
            };
            let body = bundle::verify(&files)?;
            let pass = body.pass;
            let report = Report {
                command: "verify-bundle".to_string(),
                inputs: files.inputs(&dir),
                parameters: vec![],
                body: Body::Bundle(body),
            };
            emit(out, &report, a.format)?;
            if !pass {
                return Ok(1);
            }
        }
    }
    Ok(ExitCode::Success as i32)
}
