//! Batch verification harness.
//!
//! Each subcommand selects a suite of exact (or, for theta series,
//! certified numerical) checks over a parameter grid. Parameters come from
//! an optional `key = value` file, then `key=value` arguments, then flags,
//! later sources overriding earlier ones. Checks run on a rayon pool; the
//! report keeps the order in which checks were scheduled, so it does not
//! depend on the worker count.
//!
//! Exit status: 0 when every check passes or is skipped, 1 when any check
//! fails, 2 on a configuration or usage error.

pub mod suites;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalars::Scalar;
use crate::tableaux::Partition;
use crate::theta::LatticeCoset;
use crate::weil::Poly;

/// Version of the JSON report layout.
pub const REPORT_SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "special-cocycles", version, about = "Exact checks of special theta cocycles and certified theta sums")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Number of worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Theta tolerance as bits: tail bounds must be at most `2^-precision`.
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Largest `l'`, `|λ|` or Hermite degree swept.
    #[arg(long = "max-degree", global = true)]
    max_degree: Option<usize>,
    /// `key = value` configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Record per-check wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Args, Debug, Clone, Default)]
struct Assignments {
    /// Parameters such as `p=2 q=2 n=1 l=1`.
    #[arg(value_name = "KEY=VALUE")]
    pairs: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closedness, Fock intertwiner, K-invariance and operator forms.
    VerifyClosed(Assignments),
    /// Boundary restriction identities and the vanishing range.
    VerifyRestriction(Assignments),
    /// Product rules for the Schur-projected cocycles.
    VerifyProduct(Assignments),
    /// Young symmetrizer identities and the Schur-Weyl dimension count.
    VerifyTableaux(Assignments),
    /// Fourier transforms of Hermite functions.
    VerifyHermite(Assignments),
    /// Nilpotent cocycle property and the explicit primitive.
    VerifyNilpotent(Assignments),
    /// Certified evaluation of one theta sum.
    ThetaEval(Assignments),
    /// Every suite with its default grid, plus the theta suite.
    VerifyAll(Assignments),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Closed,
    Restriction,
    Product,
    Tableaux,
    Hermite,
    Nilpotent,
    Theta,
    All,
}

impl Suite {
    fn command_name(self) -> &'static str {
        match self {
            Suite::Closed => "verify-closed",
            Suite::Restriction => "verify-restriction",
            Suite::Product => "verify-product",
            Suite::Tableaux => "verify-tableaux",
            Suite::Hermite => "verify-hermite",
            Suite::Nilpotent => "verify-nilpotent",
            Suite::Theta => "theta-eval",
            Suite::All => "verify-all",
        }
    }
}

/// The theta sum evaluated by `theta-eval`.
#[derive(Clone, Debug)]
pub struct ThetaConfig {
    pub coset: LatticeCoset,
    pub poly: Poly,
    pub t: f64,
    /// Fixed enumeration radius; by default the radius grows until the tail
    /// bound meets the tolerance.
    pub radius: Option<f64>,
    pub certify: bool,
}

impl Default for ThetaConfig {
    fn default() -> Self {
        let quarter = BigRational::new(1.into(), 4.into());
        ThetaConfig {
            coset: LatticeCoset::scaled_integer(1, BigRational::one(), vec![quarter]).expect("rank one"),
            poly: Poly::var(1, 0),
            t: 4.0,
            radius: None,
            certify: true,
        }
    }
}

/// A validated run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub suite: Suite,
    /// `(p, q)` pairs; `None` selects the suite's default grid.
    pub spaces: Option<Vec<(usize, usize)>>,
    pub n: Option<Vec<usize>>,
    pub l: Option<Vec<usize>>,
    pub lp: Option<Vec<usize>>,
    pub partitions: Option<Vec<Partition>>,
    pub max_degree: Option<usize>,
    pub workers: usize,
    pub precision: u32,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub timing: bool,
    pub theta: ThetaConfig,
}

impl RunConfig {
    pub fn new(suite: Suite) -> Self {
        RunConfig {
            suite,
            spaces: None,
            n: None,
            l: None,
            lp: None,
            partitions: None,
            max_degree: None,
            workers: 0,
            precision: 40,
            seed: 20_240_611,
            out: None,
            timing: false,
            theta: ThetaConfig::default(),
        }
    }

    /// Builds a configuration from `key = value` pairs, rejecting unknown
    /// keys and values outside the supported ranges.
    pub fn from_pairs(suite: Suite, pairs: &BTreeMap<String, String>) -> Result<Self> {
        let mut cfg = RunConfig::new(suite);
        let (mut ps, mut qs) = (None, None);
        let mut theta = ThetaDraft::default();
        for (key, value) in pairs {
            match key.as_str() {
                "p" => ps = Some(int_list(key, value)?),
                "q" => qs = Some(int_list(key, value)?),
                "n" => cfg.n = Some(int_list(key, value)?),
                "l" => cfg.l = Some(int_list(key, value)?),
                "lp" | "l'" => cfg.lp = Some(int_list(key, value)?),
                "partition" | "partitions" => cfg.partitions = Some(partitions(value)?),
                "max-degree" => cfg.max_degree = Some(int(key, value)?),
                "workers" => cfg.workers = int(key, value)?,
                "precision" => cfg.precision = int(key, value)? as u32,
                "seed" => cfg.seed = int(key, value)? as u64,
                "out" => cfg.out = Some(PathBuf::from(value)),
                "timing" => cfg.timing = boolean(key, value)?,
                "basis" => theta.basis = Some(rational_rows(value)?),
                "shift" => theta.shift = Some(rational_row(value)?),
                "weight" => theta.weight = Some(rational(value)?),
                "poly" => theta.poly = Some(value.clone()),
                "t" => theta.t = Some(float(key, value)?),
                "radius" => theta.radius = Some(float(key, value)?),
                "certify" => theta.certify = Some(boolean(key, value)?),
                _ => return Err(Error::Config(format!("unknown key `{key}`"))),
            }
        }
        cfg.spaces = match (ps, qs) {
            (None, None) => None,
            (Some(ps), Some(qs)) => Some(ps.iter().flat_map(|&p| qs.iter().map(move |&q| (p, q))).collect()),
            _ => return Err(Error::Config("p and q must be given together".into())),
        };
        cfg.theta = theta.build()?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if let Some(sp) = &self.spaces {
            for &(p, q) in sp {
                if p == 0 || q == 0 || p + q > 6 {
                    return bad(format!("(p, q) = ({p}, {q}) is outside 1 <= p, q and p + q <= 6"));
                }
                if let Some(ls) = &self.l {
                    if let Some(&l) = ls.iter().find(|&&l| l == 0 || l > p.min(q)) {
                        return bad(format!("l = {l} must satisfy 1 <= l <= min(p, q) = {}", p.min(q)));
                    }
                }
            }
        }
        if let Some(&n) = self.n.as_ref().and_then(|v| v.iter().find(|&&n| n == 0 || n > 3)) {
            return bad(format!("n = {n} is outside 1..=3"));
        }
        if let Some(&l) = self.l.as_ref().and_then(|v| v.iter().find(|&&l| l == 0 || l > 3)) {
            return bad(format!("l = {l} is outside 1..=3"));
        }
        if let Some(&lp) = self.lp.as_ref().and_then(|v| v.iter().find(|&&x| x > 4)) {
            return bad(format!("l' = {lp} is above 4"));
        }
        if let Some(p) = self.partitions.as_ref().and_then(|v| v.iter().find(|p| p.size() == 0 || p.size() > 4)) {
            return bad(format!("partition {:?} must have 1..=4 boxes", p.parts()));
        }
        if self.max_degree.is_some_and(|d| d > 12) {
            return bad("max-degree is above 12".into());
        }
        if !(8..=52).contains(&self.precision) {
            return bad(format!("precision {} is outside 8..=52 bits", self.precision));
        }
        if self.workers > 1024 {
            return bad(format!("{} workers", self.workers));
        }
        Ok(())
    }
}

#[derive(Default)]
struct ThetaDraft {
    basis: Option<Vec<Vec<BigRational>>>,
    shift: Option<Vec<BigRational>>,
    weight: Option<BigRational>,
    poly: Option<String>,
    t: Option<f64>,
    radius: Option<f64>,
    certify: Option<bool>,
}

impl ThetaDraft {
    fn build(self) -> Result<ThetaConfig> {
        let default = ThetaConfig::default();
        let d = self.shift.as_ref().map(Vec::len).or(self.basis.as_ref().map(Vec::len)).unwrap_or(1);
        if d == 0 || d > 4 {
            return Err(Error::Config(format!("theta lattices have rank 1..=4, got {d}")));
        }
        let identity = || {
            (0..d)
                .map(|i| (0..d).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
                .collect()
        };
        let coset = match (&self.basis, &self.shift, &self.weight) {
            (None, None, None) => default.coset,
            _ => LatticeCoset::new(
                self.basis.unwrap_or_else(identity),
                self.shift.unwrap_or_else(|| vec![BigRational::zero(); d]),
                self.weight.unwrap_or_else(BigRational::one),
            )
            .map_err(|e| Error::Config(e.to_string()))?,
        };
        let poly = match self.poly {
            Some(s) => parse_poly(&s, d)?,
            None if d == 1 => default.poly,
            None => Poly::one(d),
        };
        let t = self.t.unwrap_or(default.t);
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Config(format!("t = {t} must be positive")));
        }
        if let Some(r) = self.radius {
            if !(r > 0.0 && r <= crate::theta::MAX_RADIUS) {
                return Err(Error::Config(format!("radius {r} is outside (0, {}]", crate::theta::MAX_RADIUS)));
            }
        }
        Ok(ThetaConfig { coset, poly, t, radius: self.radius, certify: self.certify.unwrap_or(true) })
    }
}

fn int(key: &str, v: &str) -> Result<usize> {
    v.trim().parse().map_err(|_| Error::Config(format!("{key}: `{v}` is not a non-negative integer")))
}

fn float(key: &str, v: &str) -> Result<f64> {
    v.trim().parse().map_err(|_| Error::Config(format!("{key}: `{v}` is not a number")))
}

fn boolean(key: &str, v: &str) -> Result<bool> {
    match v.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::Config(format!("{key}: `{v}` is not a boolean"))),
    }
}

/// `3`, `1,2` or `0..2` (inclusive).
fn int_list(key: &str, v: &str) -> Result<Vec<usize>> {
    if let Some((a, b)) = v.split_once("..") {
        let (a, b) = (int(key, a)?, int(key, b.trim_start_matches('='))?);
        if a > b {
            return Err(Error::Config(format!("{key}: empty range `{v}`")));
        }
        return Ok((a..=b).collect());
    }
    v.split(',').map(|x| int(key, x)).collect()
}

/// `2,1;1,1` is the list of partitions (2,1) and (1,1).
fn partitions(v: &str) -> Result<Vec<Partition>> {
    v.split(';')
        .map(|s| {
            let parts = int_list("partition", s)?;
            Partition::new(parts).map_err(|e| Error::Config(e.to_string()))
        })
        .collect()
}

fn rational(v: &str) -> Result<BigRational> {
    BigRational::from_str(v.trim()).map_err(|_| Error::Config(format!("`{v}` is not a fraction")))
}

fn rational_row(v: &str) -> Result<Vec<BigRational>> {
    v.split(',').map(rational).collect()
}

fn rational_rows(v: &str) -> Result<Vec<Vec<BigRational>>> {
    v.split(';').map(rational_row).collect()
}

/// Terms `coeff:e_0,e_1,...` separated by `;`, e.g. `1:1` for `x` or
/// `2:1,0;-1/3:0,2` for `2x_0 - x_1^2/3`.
fn parse_poly(v: &str, d: usize) -> Result<Poly> {
    let mut p = Poly::zero(d);
    for term in v.split(';') {
        let (c, e) = term
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("poly term `{term}` is not coeff:exponents")))?;
        let exps: Vec<u8> = e
            .split(',')
            .map(|x| x.trim().parse::<u8>().map_err(|_| Error::Config(format!("bad exponent `{x}`"))))
            .collect::<Result<_>>()?;
        if exps.len() != d {
            return Err(Error::Config(format!("poly term `{term}` has {} exponents for rank {d}", exps.len())));
        }
        p.add_term(exps, &Scalar::from_ratio(rational(c)?));
    }
    Ok(p)
}

/// Parses `key = value` lines; blank lines and `#` comments are ignored.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

/// Result of one check before it is wrapped in a [`Record`].
#[derive(Clone, Debug)]
pub struct Finding {
    pub holds: bool,
    pub witness: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub suite: &'static str,
    /// Stable identifier of the identity being checked.
    pub claim: &'static str,
    pub params: Value,
    pub outcome: Outcome,
    /// First differing term, certificate, or the reason for skipping.
    pub witness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: &'static str,
    pub summary: Summary,
    pub records: Vec<Record>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.fail > 0)
    }

    /// One line per check followed by the totals.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            let tag = match r.outcome {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::Skipped => "SKIP",
            };
            s += &format!("{tag} {:<26} {}", r.claim, r.params);
            if r.outcome != Outcome::Pass {
                s += &format!("  -- {}", r.witness);
            }
            s.push('\n');
        }
        let m = &self.summary;
        s += &format!("{}: {} passed, {} failed, {} skipped\n", self.command, m.pass, m.fail, m.skipped);
        s
    }
}

fn execute(c: &suites::Check, timing: bool) -> Record {
    let start = Instant::now();
    let (outcome, witness) = match (c.job)() {
        Ok(f) if f.holds => (Outcome::Pass, f.witness),
        Ok(f) => (Outcome::Fail, f.witness),
        Err(e @ (Error::SearchBudget(_) | Error::RadiusTooSmall(_) | Error::Unsupported(_))) => {
            (Outcome::Skipped, e.to_string())
        }
        Err(e) => (Outcome::Fail, format!("error: {e}")),
    };
    Record {
        suite: c.suite,
        claim: c.claim,
        params: c.params.clone(),
        outcome,
        witness,
        elapsed_ms: timing.then(|| start.elapsed().as_millis() as u64),
    }
}

/// Runs every check selected by `cfg` and assembles the report.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    let checks = suites::build(cfg);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let records: Vec<Record> = pool.install(|| checks.par_iter().map(|c| execute(c, cfg.timing)).collect());
    let mut summary = Summary::default();
    for r in &records {
        match r.outcome {
            Outcome::Pass => summary.pass += 1,
            Outcome::Fail => summary.fail += 1,
            Outcome::Skipped => summary.skipped += 1,
        }
    }
    Ok(Report { schema: REPORT_SCHEMA, command: cfg.suite.command_name(), summary, records })
}

fn config_from_cli(cli: Cli) -> Result<RunConfig> {
    let (suite, assignments) = match cli.command {
        Command::VerifyClosed(a) => (Suite::Closed, a),
        Command::VerifyRestriction(a) => (Suite::Restriction, a),
        Command::VerifyProduct(a) => (Suite::Product, a),
        Command::VerifyTableaux(a) => (Suite::Tableaux, a),
        Command::VerifyHermite(a) => (Suite::Hermite, a),
        Command::VerifyNilpotent(a) => (Suite::Nilpotent, a),
        Command::ThetaEval(a) => (Suite::Theta, a),
        Command::VerifyAll(a) => (Suite::All, a),
    };
    let mut pairs = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            parse_config_text(&text)?
        }
        None => BTreeMap::new(),
    };
    for a in &assignments.pairs {
        let (k, v) = a
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("argument `{a}` is not key=value")))?;
        pairs.insert(k.trim().to_string(), v.trim().to_string());
    }
    let flags = [
        ("out", cli.out.map(|p| p.display().to_string())),
        ("workers", cli.workers.map(|w| w.to_string())),
        ("precision", cli.precision.map(|p| p.to_string())),
        ("max-degree", cli.max_degree.map(|d| d.to_string())),
        ("timing", cli.timing.then(|| "true".to_string())),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            pairs.insert(k.into(), v);
        }
    }
    RunConfig::from_pairs(suite, &pairs)
}

fn write_report(report: &Report, out: &std::path::Path) -> Result<()> {
    let json = serde_json::to_string_pretty(report).map_err(|e| Error::Config(e.to_string()))?;
    if out.as_os_str() == "-" {
        println!("{json}");
        return Ok(());
    }
    std::fs::write(out, json + "\n").map_err(|e| Error::Config(format!("cannot write {}: {e}", out.display())))
}

/// Entry point of the binary; returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match config_from_cli(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("configuration error: {e}");
            return 2;
        }
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("configuration error: {e}");
            return 2;
        }
    };
    let to_stdout = cfg.out.as_deref().is_some_and(|p| p.as_os_str() == "-");
    if to_stdout {
        eprint!("{}", report.render_text());
    } else {
        print!("{}", report.render_text());
    }
    if let Some(out) = &cfg.out {
        if let Err(e) = write_report(&report, out) {
            eprintln!("{e}");
            return 2;
        }
    }
    report.exit_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(s: &[(&str, &str)]) -> BTreeMap<String, String> {
        s.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn restriction_example_passes() {
        let cfg = RunConfig::from_pairs(Suite::Restriction, &pairs(&[("p", "2"), ("q", "2"), ("n", "1"), ("l", "1"), ("lp", "0")])).unwrap();
        let report = run(&cfg).unwrap();
        assert!(report.records.iter().any(|r| r.claim == "local-restriction"));
        assert_eq!(report.summary.fail, 0, "{}", report.render_text());
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn closed_example_passes() {
        let cfg = RunConfig::from_pairs(Suite::Closed, &pairs(&[("p", "1"), ("q", "1"), ("n", "1")])).unwrap();
        let report = run(&cfg).unwrap();
        assert_eq!(report.summary.fail, 0);
        assert!(report.summary.pass >= 3);
    }

    #[test]
    fn empty_command_is_a_usage_error() {
        assert_eq!(main_with_args(["special-cocycles"]), 2);
        assert_eq!(main_with_args(["special-cocycles", "verify-closed", "p=0", "q=1"]), 2);
        assert_eq!(main_with_args(["special-cocycles", "verify-closed", "colour=blue"]), 2);
        assert_eq!(main_with_args(["special-cocycles", "theta-eval", "--precision", "99"]), 2);
    }

    #[test]
    fn hermite_suite_exits_with_failure() {
        assert_eq!(main_with_args(["special-cocycles", "verify-hermite", "--max-degree", "1"]), 1);
        assert_eq!(main_with_args(["special-cocycles", "verify-hermite", "--max-degree", "0"]), 0);
    }

    #[test]
    fn config_file_flags_and_arguments_layer() {
        let text = "# grid\np = 2\nq = 1\nn = 1\nlp = 0..1\nworkers = 3\n";
        let mut kv = parse_config_text(text).unwrap();
        assert_eq!(kv["lp"], "0..1");
        kv.insert("workers".into(), "2".into());
        let cfg = RunConfig::from_pairs(Suite::Closed, &kv).unwrap();
        assert_eq!(cfg.spaces, Some(vec![(2, 1)]));
        assert_eq!(cfg.lp, Some(vec![0, 1]));
        assert_eq!(cfg.workers, 2);
        assert!(parse_config_text("p 2").is_err());
        assert!(RunConfig::from_pairs(Suite::Closed, &pairs(&[("p", "2")])).is_err());
    }

    #[test]
    fn theta_poly_syntax() {
        let p = parse_poly("2:1,0;-1/3:0,2", 2).unwrap();
        assert_eq!(p.coeff(&[1, 0]), Scalar::from_int(2));
        assert_eq!(p.coeff(&[0, 2]), Scalar::from_frac(-1, 3));
        assert!(parse_poly("1:1", 2).is_err());
    }

    #[test]
    fn report_is_independent_of_worker_count() {
        let base = pairs(&[("p", "2"), ("q", "1"), ("n", "1")]);
        let mut one = RunConfig::from_pairs(Suite::Closed, &base).unwrap();
        one.workers = 1;
        let mut four = one.clone();
        four.workers = 4;
        let a = serde_json::to_string(&run(&one).unwrap()).unwrap();
        let b = serde_json::to_string(&run(&four).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn theta_eval_default_reports_value_and_certificate() {
        let cfg = RunConfig::from_pairs(Suite::Theta, &BTreeMap::new()).unwrap();
        let report = run(&cfg).unwrap();
        let claims: Vec<&str> = report.records.iter().map(|r| r.claim).collect();
        assert_eq!(claims, ["theta-value", "nonvanishing-certificate"]);
        assert_eq!(report.summary.pass, 2, "{}", report.render_text());
    }

    /// Pins the JSON layout: field names, order and value types.
    #[test]
    fn report_schema_golden() {
        let cfg = RunConfig::from_pairs(Suite::Hermite, &pairs(&[("max-degree", "1")])).unwrap();
        let v = serde_json::to_value(run(&cfg).unwrap()).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["command", "records", "schema", "summary"]);
        assert_eq!(v["schema"], 1);
        assert_eq!(v["command"], "verify-hermite");
        assert_eq!(v["summary"], serde_json::json!({"pass": 3, "fail": 1, "skipped": 0}));
        let first = &v["records"][0];
        assert_eq!(
            first,
            &serde_json::json!({
                "suite": "hermite",
                "claim": "hermite-fourier",
                "params": {"k": 0},
                "outcome": "pass",
                "witness": "transform (1), claimed (1)"
            })
        );
        let failing = &v["records"][2];
        assert_eq!(failing["claim"], "hermite-fourier");
        assert_eq!(failing["outcome"], "fail");
    }
}
