//! Scenario resolution: CLI flags layered over an optional key=value
//! scenario file, with documented defaults underneath.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;

use crate::errors::CliError;
use crate::output::{param, Params};
use lrising::{BlockSpec, Method, Normalization, Target, Truncation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Brute,
    Factorized,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Brute => Method::Brute,
            MethodArg::Factorized => Method::Factorized,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HistNormArg {
    UnitSum,
    UnitMax,
}

impl From<HistNormArg> for Normalization {
    fn from(h: HistNormArg) -> Self {
        match h {
            HistNormArg::UnitSum => Normalization::UnitSum,
            HistNormArg::UnitMax => Normalization::UnitMax,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum OutputKind {
    Series,
    Spectrum,
    Relaxation,
    SteadyState,
}

/// A fully resolved run scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub n: usize,
    pub j: f64,
    pub alpha: f64,
    pub truncation: Truncation,
    pub target: Target,
    pub t_max: f64,
    pub steps: usize,
    pub normalize: bool,
    pub method: Method,
    pub outputs: BTreeSet<OutputKind>,
    pub bins: usize,
    pub hist_norm: Normalization,
    pub out_dir: PathBuf,
    pub svg: bool,
}

/// Scenario fields before defaulting; flags overlay file values.
#[derive(Debug, Clone, Default)]
pub struct Partial {
    pub n: Option<usize>,
    pub j: Option<f64>,
    pub alpha: Option<f64>,
    pub range: Option<String>,
    pub spin: Option<usize>,
    pub block_start: Option<usize>,
    pub block_size: Option<usize>,
    pub t_max: Option<f64>,
    pub steps: Option<usize>,
    pub normalize: Option<bool>,
    pub method: Option<MethodArg>,
    pub outputs: Option<Vec<OutputKind>>,
    pub bins: Option<usize>,
    pub hist_norm: Option<HistNormArg>,
    pub out: Option<PathBuf>,
    pub svg: Option<bool>,
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Args(format!("scenario key `{key}`: cannot parse `{value}`")))
}

fn parse_enum<T: ValueEnum>(key: &str, value: &str) -> Result<T, CliError> {
    T::from_str(value, true)
        .map_err(|_| CliError::Args(format!("scenario key `{key}`: unknown value `{value}`")))
}

impl Partial {
    /// Load a plain-text scenario file: one `key=value` per line, `#`
    /// comments and blank lines ignored. Keys match the long flag names
    /// with underscores.
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut p = Partial::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Args(format!(
                    "{}:{}: expected key=value, got `{line}`",
                    path.display(),
                    lineno + 1
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "n" => p.n = Some(parse_value(key, value)?),
                "j" => p.j = Some(parse_value(key, value)?),
                "alpha" => p.alpha = Some(parse_value(key, value)?),
                "range" => p.range = Some(value.to_string()),
                "spin" => p.spin = Some(parse_value(key, value)?),
                "block_start" => p.block_start = Some(parse_value(key, value)?),
                "block_size" => p.block_size = Some(parse_value(key, value)?),
                "t_max" => p.t_max = Some(parse_value(key, value)?),
                "steps" => p.steps = Some(parse_value(key, value)?),
                "normalize" => p.normalize = Some(parse_value(key, value)?),
                "method" => p.method = Some(parse_enum(key, value)?),
                "outputs" => {
                    let mut kinds = Vec::new();
                    for item in value.split(',') {
                        kinds.push(parse_enum("outputs", item.trim())?);
                    }
                    p.outputs = Some(kinds);
                }
                "bins" => p.bins = Some(parse_value(key, value)?),
                "hist_norm" => p.hist_norm = Some(parse_enum(key, value)?),
                "out" => p.out = Some(PathBuf::from(value)),
                "svg" => p.svg = Some(parse_value(key, value)?),
                other => {
                    return Err(CliError::Args(format!(
                        "{}:{}: unknown scenario key `{other}`",
                        path.display(),
                        lineno + 1
                    )));
                }
            }
        }
        Ok(p)
    }

    /// Layer `self` (the flags) over `under` (the file).
    pub fn overlay(self, under: Partial) -> Partial {
        Partial {
            n: self.n.or(under.n),
            j: self.j.or(under.j),
            alpha: self.alpha.or(under.alpha),
            range: self.range.or(under.range),
            spin: self.spin.or(under.spin),
            block_start: self.block_start.or(under.block_start),
            block_size: self.block_size.or(under.block_size),
            t_max: self.t_max.or(under.t_max),
            steps: self.steps.or(under.steps),
            normalize: self.normalize.or(under.normalize),
            method: self.method.or(under.method),
            outputs: self.outputs.or(under.outputs),
            bins: self.bins.or(under.bins),
            hist_norm: self.hist_norm.or(under.hist_norm),
            out: self.out.or(under.out),
            svg: self.svg.or(under.svg),
        }
    }

    /// Apply defaults and produce a validated scenario. A target (one
    /// spin, or a block start/size pair) must have been given.
    pub fn resolve(self) -> Result<Scenario, CliError> {
        let target = match (self.spin, self.block_start, self.block_size) {
            (Some(j), None, None) => Target::Spin(j),
            (None, Some(start), Some(len)) => {
                Target::Block(BlockSpec::new(start, len).map_err(CliError::from)?)
            }
            (None, None, None) => {
                return Err(CliError::Args(
                    "no target: give --spin J or --block-start S --block-size L".into(),
                ));
            }
            (Some(_), _, _) => {
                return Err(CliError::Args(
                    "choose either --spin or --block-start/--block-size, not both".into(),
                ));
            }
            _ => {
                return Err(CliError::Args(
                    "--block-start and --block-size must be given together".into(),
                ));
            }
        };
        let truncation = match self.range.as_deref() {
            None => Truncation::Exact,
            Some(s) if s.eq_ignore_ascii_case("exact") => Truncation::Exact,
            Some(s) => match s.parse::<usize>() {
                Ok(r) => Truncation::Range(r),
                Err(_) => {
                    return Err(CliError::Args(format!(
                        "--range accepts 1|2|3|...|exact, got `{s}`"
                    )));
                }
            },
        };
        let outputs: BTreeSet<OutputKind> = self
            .outputs
            .unwrap_or_else(|| vec![OutputKind::Series])
            .into_iter()
            .collect();
        if outputs.is_empty() {
            return Err(CliError::Args("outputs must not be empty".into()));
        }
        Ok(Scenario {
            n: self.n.unwrap_or(20),
            j: self.j.unwrap_or(1.0),
            alpha: self.alpha.unwrap_or(3.0),
            truncation,
            target,
            t_max: self.t_max.unwrap_or(10.0),
            steps: self.steps.unwrap_or(1000),
            normalize: self.normalize.unwrap_or(false),
            method: self.method.map(Method::from).unwrap_or(Method::Factorized),
            outputs,
            bins: self.bins.unwrap_or(201),
            hist_norm: self
                .hist_norm
                .map(Normalization::from)
                .unwrap_or(Normalization::UnitSum),
            out_dir: self.out.unwrap_or_else(|| PathBuf::from("out")),
            svg: self.svg.unwrap_or(false),
        })
    }
}

pub fn range_label(truncation: Truncation) -> String {
    match truncation {
        Truncation::Exact => "exact".to_string(),
        Truncation::Range(r) => r.to_string(),
    }
}

pub fn method_label(method: Method) -> &'static str {
    match method {
        Method::Brute => "brute",
        Method::Factorized => "factorized",
    }
}

impl Scenario {
    /// Model and grid parameters shared by all output files of this run.
    pub fn model_params(&self) -> Params {
        let mut p = vec![
            param("n", self.n),
            param("j", self.j),
            param("alpha", self.alpha),
            param("range", range_label(self.truncation)),
        ];
        match self.target {
            Target::Spin(j) => p.push(param("spin", j)),
            Target::Block(b) => {
                p.push(param("block_start", b.start()));
                p.push(param("block_size", b.len()));
            }
        }
        p
    }

    pub fn series_params(&self) -> Params {
        let mut p = self.model_params();
        p.push(param("t_max", self.t_max));
        p.push(param("steps", self.steps));
        p.push(param("normalize", self.normalize));
        p.push(param("method", method_label(self.method)));
        p.push(param("kind", "series"));
        p
    }

    pub fn spectrum_params(&self) -> Params {
        let mut p = self.model_params();
        p.push(param("bins", self.bins));
        p.push(param("hist_norm", crate::output::norm_label(self.hist_norm)));
        p.push(param("kind", "spectrum"));
        p
    }
}
