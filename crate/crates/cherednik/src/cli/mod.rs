//! Command-line front end. Every subcommand is a `JobConfig`; `run` turns a
//! config into a `ResultEnvelope` of plain JSON rows, which `render` writes as
//! JSON or flattened CSV.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::groups::{GroupKind, IrrepLabel, Partition, ReflectionGroup};
use crate::scalars::rational::{farey_range, fmt_rational};
use crate::scalars::{parse_rational, Cyclotomic, Rational};
use crate::typea::{genera_locus, hook_stats, intertwiner_check, kasatani_weights, parse_partition, spectra_unitary_check, TypeAError};
use crate::unitarity::{predictor_dihedral, predictor_rank1, rank1_shift, Certifier, Verdict};
use crate::verma::{param_arity, point_params, singular_vectors, Verma};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_MAX_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Certify,
    Sweep,
    Classify,
    Tableaux,
    Singular,
    Intertwine,
    Compare,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Certify => "certify",
            Command::Sweep => "sweep",
            Command::Classify => "classify",
            Command::Tableaux => "tableaux",
            Command::Singular => "singular",
            Command::Intertwine => "intertwine",
            Command::Compare => "compare",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

fn default_max_degree() -> usize {
    DEFAULT_MAX_DEGREE
}

/// One job. Parameters are comma-separated coordinates, each either a
/// rational "p/q" or a range "min:max:den" (all reduced fractions in range
/// with denominator at most den); ranges expand to their cartesian product.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_spec: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_spec: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameters: Option<String>,
    #[serde(default = "default_max_degree")]
    pub max_degree: usize,
    /// Defaults to 3n.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entry_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,
    #[serde(default)]
    pub format: Format,
    /// Defaults to available parallelism; CHEREDNIK_WORKERS overrides.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
}

impl JobConfig {
    pub fn new(command: Command) -> Self {
        JobConfig {
            command,
            group_spec: None,
            tau_spec: None,
            parameters: None,
            max_degree: DEFAULT_MAX_DEGREE,
            entry_bound: None,
            kappa: None,
            output_path: None,
            format: Format::Json,
            workers: None,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum CliError {
    #[error("config: {0}")]
    ConfigParse(String),
    #[error(transparent)]
    Group(#[from] crate::groups::GroupError),
    #[error(transparent)]
    TypeA(#[from] TypeAError),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("io: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        1
    }
}

fn config_err(s: impl Into<String>) -> CliError {
    CliError::ConfigParse(s.into())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultEnvelope {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: Command,
    pub config: JobConfig,
    pub wall_time: f64,
    pub results: Vec<Value>,
    /// Command-level data that is not one row per point.
    pub summary: Value,
    pub warnings: Vec<String>,
}

impl ResultEnvelope {
    /// 0 on success, 2 when some points failed but others produced results.
    pub fn exit_code(&self) -> i32 {
        if self.warnings.is_empty() {
            0
        } else {
            2
        }
    }

    /// The envelope without its timing, for byte comparisons.
    pub fn payload(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("envelope serializes");
        v.as_object_mut().unwrap().remove("wall_time");
        v
    }
}

/// Expands a parameter spec into points, in lexicographic order.
pub fn parse_parameters(spec: &str) -> Result<Vec<Vec<Rational>>, CliError> {
    let mut axes: Vec<Vec<Rational>> = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        let bad = || config_err(format!("bad coordinate '{}'", part));
        let fields: Vec<&str> = part.split(':').collect();
        let axis = match fields.as_slice() {
            [x] => vec![parse_rational(x).map_err(|_| bad())?],
            [lo, hi, den] => {
                let lo = parse_rational(lo).map_err(|_| bad())?;
                let hi = parse_rational(hi).map_err(|_| bad())?;
                let den: u64 = den.trim().parse().map_err(|_| bad())?;
                if den == 0 || lo > hi {
                    return Err(bad());
                }
                farey_range(&lo, &hi, den)
            }
            _ => return Err(bad()),
        };
        if axis.is_empty() {
            return Err(config_err(format!("range '{}' is empty", part)));
        }
        axes.push(axis);
    }
    let mut points = vec![Vec::new()];
    for axis in &axes {
        points = points
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(x.clone());
                    q
                })
            })
            .collect();
    }
    Ok(points)
}

fn point_json(p: &[Rational]) -> Value {
    Value::from(p.iter().map(fmt_rational).collect::<Vec<_>>())
}

fn group_of(cfg: &JobConfig) -> Result<ReflectionGroup, CliError> {
    let spec = cfg.group_spec.as_deref().ok_or_else(|| config_err("--group is required"))?;
    let kind: GroupKind = spec.parse()?;
    Ok(ReflectionGroup::build(kind)?)
}

fn tau_of(cfg: &JobConfig, g: &ReflectionGroup) -> Result<usize, CliError> {
    match cfg.tau_spec.as_deref() {
        Some(s) => Ok(g.parse_irrep(s)?),
        None => Ok(g.trivial()),
    }
}

fn points_of(cfg: &JobConfig, g: &ReflectionGroup) -> Result<Vec<Vec<Rational>>, CliError> {
    let spec = cfg.parameters.as_deref().ok_or_else(|| config_err("parameters are required (--c or --grid)"))?;
    let points = parse_parameters(spec)?;
    let a = param_arity(g);
    if points[0].len() != a {
        return Err(config_err(format!("{} takes {} coordinates, got {}", g.kind, a, points[0].len())));
    }
    Ok(points)
}

/// Membership oracle from the closed-form classification for (group, tau).
fn predictor(g: &ReflectionGroup, tau: usize) -> Result<Box<dyn Fn(&[Rational]) -> bool>, CliError> {
    match (&g.kind, &g.irreps[tau].label) {
        (GroupKind::Symmetric(_), IrrepLabel::Partition(p)) => {
            let locus = genera_locus(p);
            Ok(Box::new(move |c| locus.contains(c)))
        }
        (GroupKind::Cyclic(_), IrrepLabel::Character(k)) => {
            let k = *k;
            Ok(Box::new(move |b| predictor_rank1(&rank1_shift(b, k))))
        }
        _ => {
            let locus = predictor_dihedral(g, tau).map_err(|e| CliError::Unsupported(e.to_string()))?;
            Ok(Box::new(move |c| locus.contains(c)))
        }
    }
}

fn status(v: &Verdict, in_locus: bool) -> &'static str {
    match v {
        Verdict::NonUnitary { .. } => "non_unitary",
        Verdict::ConsistentUpTo { .. } if in_locus => "unitary_closed_form",
        Verdict::ConsistentUpTo { .. } => "consistent_up_to",
    }
}

fn verdict_row(v: &Verdict) -> Value {
    let mut o = Map::new();
    o.insert("kind".into(), json!(v.kind()));
    o.insert("checked_degree".into(), json!(v.checked_degree()));
    if let Some(w) = v.witness_degree() {
        o.insert("witness_degree".into(), json!(w));
    }
    if let Some(k) = v.kernel_dims() {
        o.insert("kernel_dims".into(), json!(k));
    }
    if let Verdict::NonUnitary { witness_norm, .. } = v {
        o.insert("witness_norm".into(), json!(witness_norm.to_string()));
    }
    Value::Object(o)
}

struct Output {
    results: Vec<Value>,
    summary: Value,
    warnings: Vec<String>,
}

fn certify_grid(cfg: &JobConfig, single: bool) -> Result<Output, CliError> {
    let g = group_of(cfg)?;
    let tau = tau_of(cfg, &g)?;
    let points = points_of(cfg, &g)?;
    if single && points.len() != 1 {
        return Err(config_err(format!("certify takes one point, got {}; use sweep", points.len())));
    }
    let inside = predictor(&g, tau)?;
    let cert = Certifier::new(&g, tau, cfg.max_degree).map_err(|e| CliError::Unsupported(e.to_string()))?;
    let verdicts = cert.sweep(&points, cfg.workers);
    let mut out = Output { results: Vec::new(), summary: Value::Null, warnings: Vec::new() };
    let mut discrepancies = Vec::new();
    for (p, v) in points.iter().zip(verdicts) {
        let in_locus = inside(p);
        let row = match v {
            Ok(v) => {
                let agrees = v.is_non_unitary() != in_locus;
                if !agrees {
                    discrepancies.push(point_json(p));
                }
                json!({
                    "point": point_json(p),
                    "verdict": verdict_row(&v),
                    "status": status(&v, in_locus),
                    "in_locus": in_locus,
                    "agrees": agrees,
                })
            }
            Err(e) => {
                out.warnings.push(format!("point {}: {}", crate::unitarity::fmt_point(p), e));
                json!({ "point": point_json(p), "error": e.to_string(), "in_locus": in_locus })
            }
        };
        out.results.push(row);
    }
    if cfg.command == Command::Compare {
        out.summary = json!({
            "group": g.kind.to_string(),
            "tau": g.irreps[tau].label.to_string(),
            "points": points.len(),
            "discrepancies": discrepancies,
        });
    }
    Ok(out)
}

fn classify(cfg: &JobConfig) -> Result<Output, CliError> {
    let g = group_of(cfg)?;
    let tau = tau_of(cfg, &g)?;
    let locus = match (&g.kind, &g.irreps[tau].label) {
        (GroupKind::Symmetric(_), IrrepLabel::Partition(p)) => genera_locus(p),
        (GroupKind::Cyclic(_), _) => {
            return Err(CliError::Unsupported("cyclic loci are given by a predicate, use compare or sweep".into()))
        }
        _ => predictor_dihedral(&g, tau).map_err(|e| CliError::Unsupported(e.to_string()))?,
    };
    let row = json!({
        "group": g.kind.to_string(),
        "tau": g.irreps[tau].label.to_string(),
        "locus": locus.to_json(),
        "display": locus.to_string(),
    });
    Ok(Output { results: vec![row], summary: Value::Null, warnings: Vec::new() })
}

fn tableau_shape(cfg: &JobConfig) -> Result<Partition, CliError> {
    let s = cfg.tau_spec.as_deref().ok_or_else(|| config_err("--tau is required"))?;
    let tau = parse_partition(s)?;
    if let Some(spec) = cfg.group_spec.as_deref() {
        match spec.parse::<GroupKind>()? {
            GroupKind::Symmetric(n) if n == tau.n() => {}
            _ => return Err(config_err(format!("{} is not a partition labelling an irrep of {}", tau, spec))),
        }
    }
    Ok(tau)
}

fn tableaux(cfg: &JobConfig) -> Result<Output, CliError> {
    let tau = tableau_shape(cfg)?;
    let ks = cfg.kappa.as_deref().ok_or_else(|| config_err("--kappa is required"))?;
    let kappa = parse_rational(ks).map_err(|_| config_err(format!("bad kappa '{}'", ks)))?;
    if !kappa.is_integer() || !kappa.is_positive() {
        return Err(config_err("tableaux needs a positive integer kappa"));
    }
    let kappa: i64 = kappa.to_integer().try_into().map_err(|_| config_err("kappa too large"))?;
    let bound = cfg.entry_bound.unwrap_or(3 * tau.n());
    let stats = hook_stats(&tau.conjugate());
    let summary = json!({ "tau": tau.to_string(), "kappa": kappa, "entry_bound": bound, "min_kappa": stats.big_n });
    match spectra_unitary_check(&tau, kappa, bound) {
        Ok(reports) => {
            let results = reports
                .iter()
                .map(|r| {
                    let mut v = r.to_json();
                    v["passes"] = json!(r.passes());
                    v
                })
                .collect();
            Ok(Output { results, summary, warnings: Vec::new() })
        }
        // a well-formed request outside the diagonalizable range: no rows, not a config error
        Err(e @ TypeAError::NotDiagonalizable(..)) => Ok(Output { results: Vec::new(), summary, warnings: vec![e.to_string()] }),
        Err(e) => Err(e.into()),
    }
}

fn singular(cfg: &JobConfig) -> Result<Output, CliError> {
    let g = group_of(cfg)?;
    let tau = tau_of(cfg, &g)?;
    let points = points_of(cfg, &g)?;
    if points.len() != 1 {
        return Err(config_err("singular takes one point"));
    }
    let point = &points[0];
    let params = point_params(&g, point).map_err(|e| config_err(e.to_string()))?;
    let mut v = Verma::new(&g, tau, params, Cyclotomic::one());
    let mut found: Vec<Vec<(IrrepLabel, usize)>> = vec![Vec::new()];
    let mut results = Vec::new();
    for m in 1..=cfg.max_degree {
        let s = singular_vectors(&mut v, m);
        let types: Vec<Value> = s.types.iter().map(|(l, k)| json!({ "irrep": l.to_string(), "multiplicity": k })).collect();
        results.push(json!({ "degree": m, "dimension": s.dimension, "types": types }));
        found.push(s.types);
    }
    let mut summary = json!({ "group": g.kind.to_string(), "tau": g.irreps[tau].label.to_string(), "point": point_json(point) });
    if let (GroupKind::Symmetric(n), true) = (g.kind, tau == g.trivial()) {
        let c = &point[0];
        let (r, m) = (c.numer(), c.denom());
        let m = usize::try_from(m).unwrap_or(usize::MAX);
        if let (Ok(r), true) = (i64::try_from(r), m >= 2 && m <= n) {
            if let Ok(ws) = kasatani_weights(n, r, m) {
                let pred: Vec<Value> = ws
                    .iter()
                    .map(|w| {
                        let label = IrrepLabel::Partition(w.tau.clone());
                        let seen = if w.degree.is_integer() && !w.degree.is_negative() {
                            usize::try_from(w.degree.to_integer()).ok().filter(|&d| d >= 1 && d <= cfg.max_degree).map(|d| {
                                found[d].iter().find(|(l, _)| *l == label).map(|(_, k)| *k).unwrap_or(0)
                            })
                        } else {
                            None
                        };
                        json!({ "tau": w.tau.to_string(), "degree": fmt_rational(&w.degree), "found_multiplicity": seen })
                    })
                    .collect();
                summary["kasatani"] = Value::from(pred);
            }
        }
    }
    Ok(Output { results, summary, warnings: Vec::new() })
}

fn intertwine(cfg: &JobConfig) -> Result<Output, CliError> {
    let n = match cfg.group_spec.as_deref() {
        Some(spec) => match spec.parse::<GroupKind>()? {
            GroupKind::Symmetric(n) if n >= 2 => n,
            _ => return Err(config_err("intertwine needs a symmetric group Sn:n with n >= 2")),
        },
        None => return Err(config_err("--group is required")),
    };
    let ks = cfg.kappa.as_deref().ok_or_else(|| config_err("--kappa is required"))?;
    let kappa = parse_rational(ks).map_err(|_| config_err(format!("bad kappa '{}'", ks)))?;
    if kappa.is_zero() {
        return Err(config_err("kappa must be nonzero"));
    }
    let r = intertwiner_check(n, &kappa, cfg.max_degree);
    let mut row = r.to_json();
    row["all_ok"] = json!(r.all_ok());
    let warnings = if r.all_ok() { Vec::new() } else { vec!["an intertwiner identity failed".to_string()] };
    Ok(Output { results: vec![row], summary: Value::Null, warnings })
}

/// Runs one job. Config errors come back as `Err`; per-point failures are
/// warnings inside the envelope.
pub fn run(cfg: &JobConfig) -> Result<ResultEnvelope, CliError> {
    let start = Instant::now();
    let out = match cfg.command {
        Command::Certify => certify_grid(cfg, true)?,
        Command::Sweep | Command::Compare => certify_grid(cfg, false)?,
        Command::Classify => classify(cfg)?,
        Command::Tableaux => tableaux(cfg)?,
        Command::Singular => singular(cfg)?,
        Command::Intertwine => intertwine(cfg)?,
    };
    Ok(ResultEnvelope {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        command: cfg.command,
        config: cfg.clone(),
        wall_time: start.elapsed().as_secs_f64(),
        results: out.results,
        summary: out.summary,
        warnings: out.warnings,
    })
}

/// Flattens nested objects into dotted keys. Arrays of scalars join with ';',
/// anything deeper stays as compact JSON.
pub fn flatten_row(v: &Value) -> Map<String, Value> {
    fn go(prefix: &str, v: &Value, out: &mut Map<String, Value>) {
        match v {
            Value::Object(o) => {
                for (k, x) in o {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{}.{}", prefix, k) };
                    go(&key, x, out);
                }
            }
            _ => {
                out.insert(prefix.to_string(), v.clone());
            }
        }
    }
    let mut out = Map::new();
    go("", v, &mut out);
    out
}

pub fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => a.iter().map(csv_cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

pub fn to_csv(results: &[Value]) -> Result<String, CliError> {
    let rows: Vec<Map<String, Value>> = results.iter().map(flatten_row).collect();
    let mut header: Vec<String> = rows.iter().flat_map(|r| r.keys().cloned()).collect();
    header.sort();
    header.dedup();
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(&header).map_err(io)?;
    for r in &rows {
        w.write_record(header.iter().map(|k| r.get(k).map(csv_cell).unwrap_or_default())).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

pub fn render(env: &ResultEnvelope) -> Result<String, CliError> {
    match env.config.format {
        Format::Json => Ok(serde_json::to_string_pretty(env).expect("envelope serializes") + "\n"),
        Format::Csv => to_csv(&env.results),
    }
}

#[derive(Parser, Debug)]
#[command(name = "cherednik", version, about = "Unitarity of lowest-weight modules of rational Cherednik algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Subcommand, Debug)]
pub enum CliCommand {
    /// Certify positivity at one parameter point
    Certify(JobArgs),
    /// Certify every point of a grid
    Sweep(JobArgs),
    /// Print the closed-form unitarity locus
    Classify(JobArgs),
    /// Enumerate periodic tableaux and check their weights
    Tableaux(JobArgs),
    /// Singular vectors by degree at one point
    Singular(JobArgs),
    /// Check the intertwiner identities on low degrees
    Intertwine(JobArgs),
    /// Sweep a grid and list disagreements with the closed form
    Compare(JobArgs),
    /// Run a job from a JSON config file
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Args, Debug, Clone)]
pub struct JobArgs {
    /// Sn:4, Cyc:5, DihOdd:2, DihEven:3
    #[arg(long)]
    pub group: Option<String>,
    /// Irrep: a partition "2,1", a character "chi2", or triv/sign/eps1/eps2/tauL
    #[arg(long)]
    pub tau: Option<String>,
    /// Parameter point, comma-separated rationals
    #[arg(long, visible_alias = "point", allow_hyphen_values = true, conflicts_with = "grid")]
    pub c: Option<String>,
    /// Grid, one "min:max:den" (or fixed rational) per coordinate
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    pub max_degree: usize,
    /// Largest tableau entry; defaults to 3n
    #[arg(long, visible_alias = "entry-bound")]
    pub bound: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<String>,
    #[arg(long, short)]
    pub output: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub workers: Option<usize>,
}

impl JobArgs {
    pub fn into_config(self, command: Command) -> JobConfig {
        JobConfig {
            command,
            group_spec: self.group,
            tau_spec: self.tau,
            parameters: self.c.or(self.grid),
            max_degree: self.max_degree,
            entry_bound: self.bound,
            kappa: self.kappa,
            output_path: self.output,
            format: self.format,
            workers: self.workers,
        }
    }
}

fn config_from(cmd: CliCommand) -> Result<JobConfig, CliError> {
    Ok(match cmd {
        CliCommand::Certify(a) => a.into_config(Command::Certify),
        CliCommand::Sweep(a) => a.into_config(Command::Sweep),
        CliCommand::Classify(a) => a.into_config(Command::Classify),
        CliCommand::Tableaux(a) => a.into_config(Command::Tableaux),
        CliCommand::Singular(a) => a.into_config(Command::Singular),
        CliCommand::Intertwine(a) => a.into_config(Command::Intertwine),
        CliCommand::Compare(a) => a.into_config(Command::Compare),
        CliCommand::Run { config } => {
            let text = std::fs::read_to_string(&config).map_err(|e| config_err(format!("{}: {}", config.display(), e)))?;
            serde_json::from_str(&text).map_err(|e| config_err(format!("{}: {}", config.display(), e)))?
        }
    })
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let outcome = config_from(cli.command).and_then(|cfg| {
        let env = run(&cfg)?;
        let text = render(&env)?;
        match &cfg.output_path {
            Some(path) => {
                std::fs::write(path, &text).map_err(|e| CliError::Io(format!("{}: {}", path, e)))?;
                let brief = json!({
                    "command": cfg.command.name(),
                    "output": path,
                    "rows": env.results.len(),
                    "warnings": env.warnings.len(),
                    "wall_time": env.wall_time,
                });
                println!("{}", brief);
            }
            None => print!("{}", text),
        }
        for w in &env.warnings {
            eprintln!("warning: {}", w);
        }
        Ok(env.exit_code())
    });
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            e.exit_code()
        }
    }
}
