//! The `tmv` command line.
//!
//! [`run`] parses arguments, dispatches a subcommand and returns the exit
//! status together with everything destined for stdout and stderr, so the
//! whole surface is testable in-process. Errors are reported as a single
//! `error: <kind>: <message>` line.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::bridge::{clique_family_to_tmv, is_valid_clique_family, tmv_to_clique_family};
use crate::constructions::{bounds, construct, lower_bound_balanced, rational_decimal, rational_string};
use crate::error::{Error, Result};
use crate::format::{certificate_document, parse_family, parse_plain_set, render_family, Document, SetDocument};
use crate::graph::GeneralGraph;
use crate::hamming::HammingShape;
use crate::random::{expected_bad_pairs_bound, random_tmv, random_tmv_with_probability, RandomRunReport};
use crate::solver::{
    brute_force_mut, build_conflict_graph_with_cap, max_independent_set, Method, SolveCertificate, SolveOptions,
    SolveStats, DEFAULT_CAP,
};
use crate::visibility::{all_squares_suitable, is_mv_set, is_tmv_hamming, is_total_mv_set};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(i32)]
pub enum ExitStatus {
    Success = 0,
    InvalidInput = 1,
    VerificationFailed = 2,
    Timeout = 3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: ExitStatus,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Structured,
}

/// Exact solver and constructions for total mutual-visibility in Hamming graphs.
#[derive(Debug, Parser)]
#[command(name = "tmv", version)]
pub struct RunConfig {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute mu_t exactly, with a witness set.
    Solve(SolveArgs),
    /// Check whether a vertex set is a total mutual-visibility set.
    Verify(VerifyArgs),
    /// Emit the explicit optimal set for shapes with up to three non-trivial factors.
    Construct(ConstructArgs),
    /// Run the randomized construction with bad-pair deletion.
    Random(RandomArgs),
    /// Closed-form values and bounds for a shape.
    Bounds(ShapeArg),
    /// Write the distance-2 conflict graph in DIMACS format.
    Export(ExportArgs),
    /// Convert between vertex sets and clique families.
    #[command(subcommand)]
    Bridge(BridgeCommand),
}

#[derive(Debug, Args)]
pub struct ShapeArg {
    /// Comma-separated factor sizes, e.g. `4,3,2`.
    #[arg(long)]
    pub shape: HammingShape,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolveMethod {
    Bb,
    Brute,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub shape: HammingShape,
    #[arg(long, value_enum, default_value_t = SolveMethod::Bb)]
    pub method: SolveMethod,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Time limit in seconds (0 = none).
    #[arg(long, default_value_t = 0.0)]
    pub timeout: f64,
    /// Fix one vertex in the solution (vertex-transitivity).
    #[arg(long)]
    pub symmetry: bool,
    /// Vertex cap for the conflict graph.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    /// Also write the certificate to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyMethod {
    /// No member pair at distance 2.
    Distance2,
    /// Every Cartesian square is X-suitable.
    Squares,
    /// Definition-level BFS checker on the materialized graph.
    Generic,
    /// distance2 and generic.
    Both,
    /// distance2, squares and generic.
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Expected shape; must match the set file.
    #[arg(long, conflicts_with = "graph")]
    pub shape: Option<HammingShape>,
    /// Edge-list graph instead of a Hamming graph.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Vertex-set file.
    #[arg(long)]
    pub set: PathBuf,
    /// Defaults to distance2 for shapes and generic for graphs.
    #[arg(long, value_enum)]
    pub method: Option<VerifyMethod>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long)]
    pub shape: HammingShape,
    /// Also write the set file here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    /// Factor size of the balanced shape.
    #[arg(long, required_unless_present = "advanced")]
    pub s: Option<u32>,
    /// Number of factors.
    #[arg(long, required_unless_present = "advanced")]
    pub r: Option<usize>,
    /// Seed of the first trial; trial k uses seed + k - 1.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
    /// Arbitrary shape and raw probability; carries no size guarantee.
    #[arg(long, requires_all = ["shape", "p"], conflicts_with_all = ["s", "r"])]
    pub advanced: bool,
    #[arg(long, requires = "advanced")]
    pub shape: Option<HammingShape>,
    /// Sampling probability as `a/b` or a decimal.
    #[arg(long, requires = "advanced")]
    pub p: Option<String>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long)]
    pub shape: HammingShape,
    /// Write the complement graph (for maximum-clique solvers).
    #[arg(long)]
    pub complement: bool,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum BridgeCommand {
    /// Vertex set -> clique family.
    ToCliques {
        #[arg(long)]
        shape: Option<HammingShape>,
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Clique family -> vertex set.
    FromCliques {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    status: ExitStatus::Success,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => {
                    let first = e.to_string();
                    let line = first.lines().next().unwrap_or("").trim_start_matches("error: ");
                    Outcome {
                        status: ExitStatus::InvalidInput,
                        stdout: String::new(),
                        stderr: format!("error: usage: {line}\n"),
                    }
                }
            };
        }
    };
    execute(&config)
}

/// Runs an already parsed configuration.
pub fn execute(config: &RunConfig) -> Outcome {
    match dispatch(config) {
        Ok((status, stdout)) => Outcome {
            status,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            status: ExitStatus::InvalidInput,
            stdout: String::new(),
            stderr: format!("error: {}: {}\n", e.kind(), e.to_string().replace('\n', " ")),
        },
    }
}

fn dispatch(config: &RunConfig) -> Result<(ExitStatus, String)> {
    let fmt = config.format;
    match &config.command {
        Command::Solve(a) => solve(a, fmt),
        Command::Verify(a) => verify(a, fmt),
        Command::Construct(a) => construct_cmd(a, fmt),
        Command::Random(a) => random_cmd(a, fmt),
        Command::Bounds(a) => bounds_cmd(&a.shape, fmt),
        Command::Export(a) => export(a),
        Command::Bridge(b) => bridge(b, fmt),
    }
}

fn emit(doc: &Document, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Structured => doc.render(),
        OutputFormat::Text => doc.render_aligned(),
    }
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<()> {
    if let Some(p) = path {
        fs::write(p, text)?;
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn solve(a: &SolveArgs, fmt: OutputFormat) -> Result<(ExitStatus, String)> {
    if !(a.timeout >= 0.0 && a.timeout.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "timeout must be >= 0, got {}",
            a.timeout
        )));
    }
    let cert = match a.method {
        SolveMethod::Bb => {
            let graph = build_conflict_graph_with_cap(&a.shape, a.cap)?;
            let opts = SolveOptions {
                threads: a.threads,
                timeout: (a.timeout > 0.0).then(|| Duration::from_secs_f64(a.timeout)),
                symmetry: a.symmetry,
            };
            max_independent_set(&graph, &opts)?
        }
        SolveMethod::Brute => {
            let started = std::time::Instant::now();
            let (value, witness) = brute_force_mut(&a.shape)?;
            SolveCertificate {
                shape: a.shape.clone(),
                value,
                optimal: true,
                witness,
                stats: SolveStats {
                    nodes: 0,
                    millis: started.elapsed().as_millis() as u64,
                    method: Method::BruteForce,
                },
            }
        }
    };
    let doc = certificate_document(&cert)?;
    write_out(&a.out, &doc.render())?;
    let text = match fmt {
        OutputFormat::Structured => doc.render(),
        OutputFormat::Text => {
            let mut out = format!("shape {}\nvalue {} optimal {}\n", cert.shape, cert.value, cert.optimal);
            for key in ["witness", "nodes", "millis", "method"] {
                out.push_str(&format!("{key} {}\n", doc.get(key).unwrap_or("")));
            }
            out
        }
    };
    let status = if cert.optimal {
        ExitStatus::Success
    } else {
        ExitStatus::Timeout
    };
    Ok((status, text))
}

fn verify(a: &VerifyArgs, fmt: OutputFormat) -> Result<(ExitStatus, String)> {
    let text = read(&a.set)?;
    let mut doc = Document::new();
    let mut verdicts: Vec<bool> = Vec::new();

    if let Some(graph_path) = &a.graph {
        let graph = GeneralGraph::parse_edge_list(&read(graph_path)?)?;
        let method = a.method.unwrap_or(VerifyMethod::Generic);
        if method != VerifyMethod::Generic {
            return Err(Error::InvalidParameter(
                "edge-list graphs support only --method generic".into(),
            ));
        }
        let set = parse_plain_set(&text, graph.vertex_count())?;
        let total = is_total_mv_set(&graph, &set)?;
        doc.push("vertices", graph.vertex_count())
            .push("size", set.len())
            .push("generic", total)
            .push("mv_set", is_mv_set(&graph, &set)?);
        verdicts.push(total);
    } else {
        let parsed = SetDocument::parse(&text)?;
        if let Some(expected) = &a.shape {
            if *expected != parsed.shape {
                return Err(Error::InvalidParameter(format!(
                    "--shape {expected} does not match set file shape {}",
                    parsed.shape
                )));
            }
        }
        let shape = &parsed.shape;
        let set = parsed.to_set()?;
        let method = a.method.unwrap_or(VerifyMethod::Distance2);
        doc.push("shape", shape).push("size", set.len());
        let run_d2 = matches!(method, VerifyMethod::Distance2 | VerifyMethod::Both | VerifyMethod::All);
        let run_sq = matches!(method, VerifyMethod::Squares | VerifyMethod::All);
        let run_gen = matches!(method, VerifyMethod::Generic | VerifyMethod::Both | VerifyMethod::All);
        if run_d2 {
            let v = is_tmv_hamming(shape, &set)?;
            doc.push("distance2", v);
            verdicts.push(v);
        }
        if run_sq {
            let v = all_squares_suitable(shape, &set)?;
            doc.push("squares", v);
            verdicts.push(v);
        }
        if run_gen {
            let graph = GeneralGraph::hamming(shape)?;
            let v = is_total_mv_set(&graph, &set)?;
            doc.push("generic", v);
            verdicts.push(v);
        }
    }

    let agree = verdicts.windows(2).all(|w| w[0] == w[1]);
    if verdicts.len() > 1 {
        doc.push("agreement", agree);
    }
    let verdict = agree && verdicts.iter().all(|&v| v);
    doc.push("verdict", verdict);
    let status = if verdict {
        ExitStatus::Success
    } else {
        ExitStatus::VerificationFailed
    };
    Ok((status, emit(&doc, fmt)))
}

fn construct_cmd(a: &ConstructArgs, fmt: OutputFormat) -> Result<(ExitStatus, String)> {
    let set = construct(&a.shape)?;
    let valid = is_tmv_hamming(&a.shape, &set)?;
    let set_doc = SetDocument::from_set(&a.shape, &set)?;
    write_out(&a.out, &set_doc.render())?;
    let mut doc = set_doc.document();
    doc.push("size", set.len()).push("valid", valid);
    let status = if valid {
        ExitStatus::Success
    } else {
        ExitStatus::VerificationFailed
    };
    Ok((status, emit(&doc, fmt)))
}

/// Parses `a/b`, an integer, or a plain decimal such as `0.05`.
pub fn parse_probability(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::InvalidParameter(format!("bad probability {text:?}"));
    let q = if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        BigRational::new(n, d)
    } else if let Some((int, frac)) = t.split_once('.') {
        if !frac.chars().all(|c| c.is_ascii_digit()) || frac.is_empty() {
            return Err(bad());
        }
        let int: BigInt = if int.is_empty() {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        BigRational::new(int * &scale + frac, scale)
    } else {
        BigRational::from_integer(t.parse().map_err(|_| bad())?)
    };
    if q < BigRational::zero() || q > BigRational::from_integer(1.into()) {
        return Err(Error::InvalidParameter(format!("probability {text} outside [0, 1]")));
    }
    Ok(q)
}

fn fresh_seed() -> u64 {
    use std::hash::{BuildHasher, Hasher};
    let mut h = std::collections::hash_map::RandomState::new().build_hasher();
    h.write_u128(
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_nanos()),
    );
    h.finish()
}

fn random_cmd(a: &RandomArgs, fmt: OutputFormat) -> Result<(ExitStatus, String)> {
    if a.trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    let (seed, seed_source) = match a.seed {
        Some(s) => (s, "flag"),
        None => (fresh_seed(), "generated"),
    };
    let mut doc = Document::new();
    let run_one: Box<dyn Fn(u64) -> Result<RandomRunReport>> = if a.advanced {
        let shape = a.shape.clone().expect("clap requires --shape with --advanced");
        let p = parse_probability(a.p.as_deref().expect("clap requires --p with --advanced"))?;
        doc.push("mode", "advanced").push("shape", &shape);
        Box::new(move |seed| random_tmv_with_probability(&shape, &p, seed))
    } else {
        let (s, r) = (a.s.expect("clap requires --s"), a.r.expect("clap requires --r"));
        doc.push("mode", "balanced").push("s", s).push("r", r);
        Box::new(move |seed| random_tmv(s, r, seed))
    };

    let mut reports = Vec::with_capacity(a.trials as usize);
    for k in 0..a.trials {
        reports.push(run_one(seed.wrapping_add(k))?);
    }
    let first = &reports[0];
    doc.push("seed", seed)
        .push("seed_source", seed_source)
        .push("trials", a.trials)
        .push("probability", rational_string(&first.probability))
        .push("expected_sampled", show_rational(&first.expected_sampled, fmt))
        .push("expected_bad_pairs", show_rational(&first.expected_bad_pairs, fmt));
    if let Some((s, r)) = first.balanced {
        let bad = expected_bad_pairs_bound(s, r)?;
        doc.push("expected_bad_pairs_simplified", show_rational(&bad.simplified, fmt))
            .push("lower_bound", show_rational(&lower_bound_balanced(s, r)?, fmt));
    }

    let mut all_valid = true;
    for (k, rep) in reports.iter().enumerate() {
        let valid = is_tmv_hamming(&rep.shape, &rep.set)?;
        all_valid &= valid;
        let vertices: Vec<String> = rep.set.vertices(&rep.shape)?.iter().map(|v| v.to_string()).collect();
        doc.push(
            "trial",
            format!(
                "{} seed {} sampled {} bad_pairs {} kept {} valid {} vertices {}",
                k + 1,
                rep.seed,
                rep.sampled,
                rep.bad_pairs,
                rep.kept,
                valid,
                vertices.join(" ")
            )
            .trim_end(),
        );
    }

    let n = BigInt::from(reports.len());
    let mean = |f: fn(&RandomRunReport) -> usize| {
        BigRational::new(reports.iter().map(|r| BigInt::from(f(r))).sum(), n.clone())
    };
    let kept = reports.iter().map(|r| r.kept);
    doc.push("kept_mean", show_rational(&mean(|r| r.kept), fmt))
        .push("kept_min", kept.clone().min().unwrap_or(0))
        .push("kept_max", kept.max().unwrap_or(0))
        .push("sampled_mean", show_rational(&mean(|r| r.sampled), fmt))
        .push("bad_pairs_mean", show_rational(&mean(|r| r.bad_pairs), fmt))
        .push("all_valid", all_valid);
    let status = if all_valid {
        ExitStatus::Success
    } else {
        ExitStatus::VerificationFailed
    };
    Ok((status, emit(&doc, fmt)))
}

fn show_rational(q: &BigRational, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Structured => rational_string(q),
        OutputFormat::Text if q.is_integer() => rational_string(q),
        OutputFormat::Text => format!("{} ({})", rational_string(q), rational_decimal(q, 4)),
    }
}

fn bounds_cmd(shape: &HammingShape, fmt: OutputFormat) -> Result<(ExitStatus, String)> {
    let rep = bounds(shape)?;
    let mut doc = Document::new();
    doc.push("shape", &rep.shape)
        .push(
            "normalized_shape",
            rep.normalized_shape
                .iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(","),
        )
        .push("r", shape.rank())
        .push("N", shape.factor_sum())
        .push("V", shape.vertex_count());
    if let Some(v) = rep.two_factor_value {
        doc.push("two_factor_value", v);
    }
    if let Some(v) = rep.theorem1_value {
        doc.push("theorem1_value", v);
    }
    if let Some(q) = &rep.upper_general {
        doc.push("upper_general", show_rational(q, fmt));
    }
    if let Some(b) = &rep.upper_balanced {
        doc.push("upper_balanced", b);
    }
    if let Some(q) = &rep.lower_balanced {
        doc.push("lower_balanced", show_rational(q, fmt));
    }
    Ok((ExitStatus::Success, emit(&doc, fmt)))
}

fn export(a: &ExportArgs) -> Result<(ExitStatus, String)> {
    let graph = build_conflict_graph_with_cap(&a.shape, a.cap)?;
    let text = graph.to_dimacs(a.complement);
    match &a.out {
        Some(p) => {
            fs::write(p, &text)?;
            let edges = text
                .lines()
                .find_map(|l| l.strip_prefix("p edge "))
                .and_then(|l| l.split_whitespace().nth(1))
                .and_then(|m| m.parse::<u64>().ok())
                .unwrap_or(0);
            Ok((
                ExitStatus::Success,
                format!(
                    "wrote {} vertices {} edges {edges}\n",
                    p.display(),
                    graph.vertex_count()
                ),
            ))
        }
        None => Ok((ExitStatus::Success, text)),
    }
}

fn bridge(cmd: &BridgeCommand, fmt: OutputFormat) -> Result<(ExitStatus, String)> {
    match cmd {
        BridgeCommand::ToCliques { shape, set, out } => {
            let parsed = SetDocument::parse(&read(set)?)?;
            if let Some(expected) = shape {
                if *expected != parsed.shape {
                    return Err(Error::InvalidParameter(format!(
                        "--shape {expected} does not match set file shape {}",
                        parsed.shape
                    )));
                }
            }
            let family = tmv_to_clique_family(&parsed.shape, &parsed.to_set()?)?;
            let rendered = render_family(&family);
            write_out(out, &rendered)?;
            let mut doc = Document::parse(&rendered)?;
            doc.push("size", family.len())
                .push("valid", is_valid_clique_family(&family));
            Ok((ExitStatus::Success, emit(&doc, fmt)))
        }
        BridgeCommand::FromCliques { family, out } => {
            let family = parse_family(&read(family)?)?;
            let set = clique_family_to_tmv(&family)?;
            let set_doc = SetDocument::from_set(family.shape(), &set)?;
            write_out(out, &set_doc.render())?;
            let mut doc = set_doc.document();
            doc.push("size", set.len())
                .push("valid", is_tmv_hamming(family.shape(), &set)?);
            Ok((ExitStatus::Success, emit(&doc, fmt)))
        }
    }
}

/// Mean of `values` as `f64`; only used for display-side summaries.
pub fn mean_f64(values: &[usize]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().sum::<usize>().to_f64().unwrap_or(f64::NAN) / values.len() as f64
}
