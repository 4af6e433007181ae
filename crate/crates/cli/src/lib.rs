//! Command-line driver for the `osp12` library: classification scans,
//! identity verification, spectra and the norm/eigenvector recurrences.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on
//! invalid input.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use osp12::classification::{GateReason, NormSequence, DEFAULT_K_MAX};
use osp12::matrix_rep::full_assignment;
use osp12::relations::DEFAULT_TOLERANCE;
use osp12::spectral::{merged_eigenvalues, spectrum_report, DEFAULT_INTERVALS};
use osp12::*;

pub const THREADS_ENV: &str = "OSP_SPECTRAL_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "osp12",
    version,
    about = "osp(1|2) representations of the Wigner-quantized H = xp"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the identity catalog, star structure and Wigner compatibility.
    Verify(VerifyArgs),
    /// Run the positivity gate over the lowest-weight candidates.
    Classify(ClassifyArgs),
    /// Eigenvalues of x, p or one or both parity blocks of H.
    Spectrum(SpectrumArgs),
    /// Norm sequence a_k, or the formal eigenvector coefficients with --t.
    Recurrence(RecurrenceArgs),
    /// Compare the second family at mu with the first at mu - 1/2.
    Equivalence(EquivalenceArgs),
}

#[derive(Debug, Clone, Args)]
pub struct MuArgs {
    /// `p/q` or an integer for exact mode, a decimal for floating mode.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "mu_range")]
    pub mu: Option<String>,

    /// Sweep START:STOP:STEP (inclusive).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "mu")]
    pub mu_range: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct DimArgs {
    #[arg(long, default_value_t = 64)]
    pub dim: usize,

    /// Sweep START:STOP:STEP (inclusive).
    #[arg(long)]
    pub dim_range: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Final,
    Equiv,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Final => Family::FinalActions,
            FamilyArg::Equiv => Family::EquivActions,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub mu: MuArgs,
    #[command(flatten)]
    pub dim: DimArgs,
    #[arg(long, value_enum, default_value_t = FamilyArg::Final)]
    pub family: FamilyArg,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub mu: MuArgs,
    /// Depth of the norm scan in each direction.
    #[arg(long, default_value_t = DEFAULT_K_MAX)]
    pub k_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OperatorArg {
    X,
    P,
    #[value(name = "H")]
    H,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[arg(long, value_enum)]
    pub operator: OperatorArg,
    #[command(flatten)]
    pub mu: MuArgs,
    /// Matrix size; for H this is the size of each parity block.
    #[command(flatten)]
    pub dim: DimArgs,
    /// Required for H.
    #[arg(long, value_enum)]
    pub parity: Option<ParityArg>,
    /// Half-widths a of the count windows [-a, a].
    #[arg(long = "interval", value_delimiter = ',', default_values_t = DEFAULT_INTERVALS.to_vec())]
    pub intervals: Vec<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct RecurrenceArgs {
    #[command(flatten)]
    pub mu: MuArgs,
    /// Casimir parameter delta; defaults to -mu.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
    #[arg(long, value_enum, default_value_t = BranchArg::Lambda1)]
    pub branch: BranchArg,
    #[arg(long, default_value_t = 20)]
    pub k_max: usize,
    /// Evaluate the formal eigenvector at this t instead of the norms.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    #[arg(long, value_enum, default_value_t = OperatorArg::X)]
    pub operator: OperatorArg,
    #[arg(long, value_enum, default_value_t = ParityArg::Even)]
    pub parity: ParityArg,
    #[arg(long, default_value_t = 12)]
    pub n_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Lambda1,
    Lambda2,
}

#[derive(Debug, Clone, Args)]
pub struct EquivalenceArgs {
    #[command(flatten)]
    pub mu: MuArgs,
    #[command(flatten)]
    pub dim: DimArgs,
}

// ---------------------------------------------------------------- outputs

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub mu: Number,
    pub dim: usize,
    pub family: Family,
    pub pass: bool,
    pub wigner_compatible: bool,
    pub reports: Vec<RelationReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyOutput {
    pub mu: Number,
    pub families: Vec<Family>,
    /// Both families present and related by mu -> mu - 1/2.
    pub equivalent: bool,
    pub classification: Classification,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumOutput {
    pub operator: String,
    pub mu: Number,
    pub dim: usize,
    pub blocks: Vec<SpectrumReport>,
    /// Union of both H blocks.
    pub merged: Option<Vec<f64>>,
    /// Odd block at mu has the off-diagonals of the even block at mu + 1/2.
    pub half_shift: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RecurrenceOutput {
    Norms {
        mu: Number,
        delta: Number,
        branch: Branch,
        /// (k, a_k), lowest index first.
        values: Vec<(i64, Number)>,
        truncation_bound: Option<i64>,
        verdict: GateReason,
    },
    FormalEigenvector {
        mu: Number,
        operator: String,
        label: SystemLabel,
        t: f64,
        coefficients: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Output {
    Verify(VerifyOutput),
    Classify(ClassifyOutput),
    Spectrum(SpectrumOutput),
    Recurrence(RecurrenceOutput),
    Equivalence(classification::EquivalenceReport),
}

impl Output {
    /// Whether every check carried by this report passed.
    pub fn passed(&self) -> bool {
        match self {
            Output::Verify(v) => v.pass,
            Output::Equivalence(e) => e.equivalent,
            _ => true,
        }
    }

    fn csv_header(&self) -> &'static str {
        match self {
            Output::Verify(_) => "mu,dim,identity,interior,residual,tolerance,pass",
            Output::Classify(_) => {
                "mu,delta,branch,admissible,family,lowest_weight_index,reason,equivalent_to_mu,duplicate_of"
            }
            Output::Spectrum(_) => "mu,dim,system,index,eigenvalue",
            Output::Recurrence(RecurrenceOutput::Norms { .. }) => "mu,delta,k,a_k",
            Output::Recurrence(RecurrenceOutput::FormalEigenvector { .. }) => "mu,t,n,alpha",
            Output::Equivalence(_) => "mu,shifted_mu,dim,equivalent,first_mismatch",
        }
    }

    fn csv_rows(&self) -> Vec<String> {
        let opt = |x: Option<String>| x.unwrap_or_default();
        match self {
            Output::Verify(v) => v
                .reports
                .iter()
                .map(|r| {
                    format!(
                        "{},{},{},{},{:e},{:e},{}",
                        v.mu, v.dim, r.identity, r.interior, r.residual, r.tolerance, r.pass
                    )
                })
                .collect(),
            Output::Classify(c) => c
                .classification
                .candidates
                .iter()
                .map(|x| {
                    let v = &x.verdict;
                    format!(
                        "{},{},{},{},{},{},{},{},{}",
                        c.mu,
                        x.delta,
                        enum_name(&x.branch),
                        v.admissible,
                        opt(v.family.map(|f| enum_name(&f))),
                        opt(v.lowest_weight_index.map(|i| i.to_string())),
                        enum_name(&v.reason),
                        opt(x.equivalent_to_mu.as_ref().map(Number::to_string)),
                        opt(x.duplicate_of.map(|i| i.to_string())),
                    )
                })
                .collect(),
            Output::Spectrum(s) => {
                let mut rows: Vec<String> = s
                    .blocks
                    .iter()
                    .flat_map(|b| {
                        let label = enum_name(&b.label);
                        b.eigenvalues
                            .iter()
                            .enumerate()
                            .map(move |(i, l)| format!("{},{},{label},{i},{l:e}", s.mu, s.dim))
                    })
                    .collect();
                if let Some(m) = &s.merged {
                    rows.extend(
                        m.iter()
                            .enumerate()
                            .map(|(i, l)| format!("{},{},merged,{i},{l:e}", s.mu, s.dim)),
                    );
                }
                rows
            }
            Output::Recurrence(RecurrenceOutput::Norms {
                mu, delta, values, ..
            }) => values
                .iter()
                .map(|(k, a)| format!("{mu},{delta},{k},{a}"))
                .collect(),
            Output::Recurrence(RecurrenceOutput::FormalEigenvector {
                mu,
                t,
                coefficients,
                ..
            }) => coefficients
                .iter()
                .enumerate()
                .map(|(n, a)| format!("{mu},{t:e},{n},{a:e}"))
                .collect(),
            Output::Equivalence(e) => vec![format!(
                "{},{},{},{},{}",
                e.mu,
                e.shifted_mu,
                e.dim,
                e.equivalent,
                opt(e.first_mismatch.map(|i| i.to_string()))
            )],
        }
    }
}

fn enum_name<T: Serialize>(x: &T) -> String {
    match serde_json::to_value(x) {
        Ok(serde_json::Value::String(s)) => s,
        _ => String::new(),
    }
}

// ---------------------------------------------------------------- errors

/// Failure while producing a report.
#[derive(Debug)]
pub enum RunError {
    /// Bad parameters or unusable input; exit 2.
    Invalid(anyhow::Error),
    /// A numerical check could not be completed; exit 1.
    Check(anyhow::Error),
}

impl From<osp12::Error> for RunError {
    fn from(e: osp12::Error) -> Self {
        match e {
            osp12::Error::NoConvergence(_) => RunError::Check(e.into()),
            _ => RunError::Invalid(e.into()),
        }
    }
}

impl From<anyhow::Error> for RunError {
    fn from(e: anyhow::Error) -> Self {
        RunError::Invalid(e)
    }
}

type RunResult<T> = std::result::Result<T, RunError>;

// ---------------------------------------------------------------- parsing

fn parse_number(s: &str) -> RunResult<Number> {
    s.parse::<Number>()
        .map_err(|_| RunError::Invalid(anyhow!("cannot parse number {s:?}")))
}

const MAX_SWEEP_POINTS: usize = 100_000;

fn split_range(s: &str) -> RunResult<(&str, &str, &str)> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [a, b, c] => Ok((a, b, c)),
        _ => Err(anyhow!("range must be START:STOP:STEP, got {s:?}").into()),
    }
}

pub fn parse_mu_range(s: &str) -> RunResult<Vec<Number>> {
    let (a, b, c) = split_range(s)?;
    let (start, stop, step) = (parse_number(a)?, parse_number(b)?, parse_number(c)?);
    if !step.is_positive() {
        return Err(anyhow!("range step must be positive, got {step}").into());
    }
    let mut out = Vec::new();
    let mut x = start;
    while x.compare(&stop).is_le() {
        if out.len() == MAX_SWEEP_POINTS {
            return Err(anyhow!("range {s:?} has more than {MAX_SWEEP_POINTS} points").into());
        }
        out.push(x.clone());
        x = &x + &step;
    }
    Ok(out)
}

pub fn parse_dim_range(s: &str) -> RunResult<Vec<usize>> {
    let (a, b, c) = split_range(s)?;
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| RunError::Invalid(anyhow!("cannot parse dimension {t:?}")))
    };
    let (start, stop, step) = (parse(a)?, parse(b)?, parse(c)?);
    if step == 0 {
        return Err(anyhow!("range step must be positive").into());
    }
    Ok((start..=stop)
        .step_by(step)
        .take(MAX_SWEEP_POINTS)
        .collect())
}

fn mus(args: &MuArgs) -> RunResult<Vec<Number>> {
    match (&args.mu, &args.mu_range) {
        (_, Some(r)) => parse_mu_range(r),
        (Some(m), None) => Ok(vec![parse_number(m)?]),
        (None, None) => Err(anyhow!("--mu or --mu-range is required").into()),
    }
}

fn dims(args: &DimArgs) -> RunResult<Vec<usize>> {
    match &args.dim_range {
        Some(r) => parse_dim_range(r),
        None => Ok(vec![args.dim]),
    }
}

fn is_sweep(mu: &MuArgs, dim: Option<&DimArgs>) -> bool {
    mu.mu_range.is_some() || dim.is_some_and(|d| d.dim_range.is_some())
}

// ---------------------------------------------------------------- runners

pub fn run_verify(
    mu: &Number,
    dim: usize,
    family: Family,
    tolerance: f64,
) -> RunResult<VerifyOutput> {
    let rep = build_rep(mu, dim, family)?;
    let assignment = full_assignment(&rep);
    let mut reports = defining_relation_suite()
        .iter()
        .map(|id| check_identity(id, &assignment, tolerance))
        .collect::<osp12::Result<Vec<_>>>()?;
    reports.push(star_adjoint_check(&assignment, tolerance)?);
    let ops = physical_operators(&rep);
    let wigner_compatible = verify_wigner_compatibility(&ops, tolerance)?
        .iter()
        .all(|r| r.pass);
    // [x, p] = i only holds in the oscillator case
    if family == Family::FinalActions && *mu == Number::ratio(1, 4) {
        reports.push(ops.canonical_commutator_check(tolerance));
    }
    Ok(VerifyOutput {
        mu: mu.clone(),
        dim,
        family,
        pass: wigner_compatible && reports.iter().all(|r| r.pass),
        wigner_compatible,
        reports,
    })
}

pub fn run_classify(mu: &Number, k_max: usize) -> ClassifyOutput {
    let classification = classify(mu, k_max);
    let families = classification.families();
    let equivalent = families.contains(&Family::EquivActions)
        && classification
            .candidates
            .iter()
            .any(|c| c.equivalent_to_mu.is_some() && c.duplicate_of.is_none());
    ClassifyOutput {
        mu: mu.clone(),
        families,
        equivalent,
        classification,
    }
}

fn operator_name(op: OperatorArg) -> &'static str {
    match op {
        OperatorArg::X => "x",
        OperatorArg::P => "p",
        OperatorArg::H => "H",
    }
}

fn system_for(
    op: OperatorArg,
    mu: &Number,
    dim: usize,
    parity: Parity,
) -> osp12::Result<TridiagonalSystem> {
    match op {
        OperatorArg::X => jacobi_of_position(mu, dim),
        OperatorArg::P => jacobi_of_momentum(mu, dim),
        OperatorArg::H => jacobi_of_hamiltonian(mu, dim, parity),
    }
}

pub fn run_spectrum(
    op: OperatorArg,
    mu: &Number,
    dim: usize,
    parity: Option<ParityArg>,
    intervals: &[f64],
) -> RunResult<SpectrumOutput> {
    if let Some(a) = intervals.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
        return Err(anyhow!("interval half-width must be positive, got {a}").into());
    }
    let parities = match (op, parity) {
        (OperatorArg::H, None) => bail_invalid("--parity even|odd|both is required for H")?,
        (OperatorArg::H, Some(ParityArg::Both)) => vec![Parity::Even, Parity::Odd],
        (OperatorArg::H, Some(ParityArg::Odd)) => vec![Parity::Odd],
        _ => vec![Parity::Even],
    };
    let blocks = parities
        .iter()
        .map(|&p| {
            let sys = system_for(op, mu, dim, p)?;
            spectrum_report(&sys, intervals)
        })
        .collect::<osp12::Result<Vec<_>>>()?;
    let both = blocks.len() == 2;
    let half_shift = if both {
        let odd = jacobi_of_hamiltonian(mu, dim, Parity::Odd)?;
        let shifted = jacobi_of_hamiltonian(&(mu + &Number::half()), dim, Parity::Even)?;
        Some(odd.offdiagonal_squares == shifted.offdiagonal_squares)
    } else {
        None
    };
    Ok(SpectrumOutput {
        operator: operator_name(op).to_string(),
        mu: mu.clone(),
        dim,
        merged: both.then(|| merged_eigenvalues(&blocks)),
        blocks,
        half_shift,
    })
}

fn bail_invalid<T>(msg: &str) -> RunResult<T> {
    Err(RunError::Invalid(anyhow!(msg.to_string())))
}

pub fn run_recurrence(args: &RecurrenceArgs, mu: &Number) -> RunResult<RecurrenceOutput> {
    if let Some(t) = args.t {
        let parity = match args.parity {
            ParityArg::Odd => Parity::Odd,
            ParityArg::Even => Parity::Even,
            ParityArg::Both => bail_invalid("the formal eigenvector needs a single parity")?,
        };
        let sys = system_for(args.operator, mu, args.n_max + 1, parity)?;
        let fe = formal_eigenvector(&sys, t, args.n_max)?;
        return Ok(RecurrenceOutput::FormalEigenvector {
            mu: mu.clone(),
            operator: operator_name(args.operator).to_string(),
            label: sys.label,
            t,
            coefficients: fe.coefficients,
        });
    }
    let delta = match &args.delta {
        Some(d) => parse_number(d)?,
        None => -mu,
    };
    let branch = match args.branch {
        BranchArg::Lambda1 => Branch::Lambda1,
        BranchArg::Lambda2 => Branch::Lambda2,
    };
    let params = RepParams::new(mu.clone(), delta.clone(), branch);
    let seq = NormSequence::build(&params, args.k_max);
    let verdict = positivity_gate(&params, args.k_max).reason;
    Ok(RecurrenceOutput::Norms {
        mu: mu.clone(),
        delta,
        branch,
        values: seq.values.into_iter().collect(),
        truncation_bound: seq.truncation_bound,
        verdict,
    })
}

// ---------------------------------------------------------------- driver

/// Worker count for sweeps: `OSP_SPECTRAL_THREADS` if set and positive,
/// otherwise rayon's default.
pub fn sweep_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(rayon::current_num_threads)
}

/// Evaluates `f` on every grid point in parallel; results keep grid order.
fn sweep<P: Sync, T: Send>(
    points: &[P],
    f: impl Fn(&P) -> RunResult<T> + Sync,
) -> RunResult<Vec<T>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(sweep_threads())
        .build()
        .map_err(|e| RunError::Check(e.into()))?;
    pool.install(|| points.par_iter().map(&f).collect())
}

fn grid(mu: &MuArgs, dim: Option<&DimArgs>) -> RunResult<Vec<(Number, usize)>> {
    let dims = match dim {
        Some(d) => dims(d)?,
        None => vec![0],
    };
    let mus = mus(mu)?;
    Ok(mus
        .iter()
        .flat_map(|m| dims.iter().map(move |&n| (m.clone(), n)))
        .collect())
}

/// Runs one command and returns its reports, one per grid point.
pub fn execute(command: &Command) -> RunResult<(Vec<Output>, bool)> {
    let (outputs, swept) = match command {
        Command::Verify(a) => {
            let family = a.family.into();
            let points = grid(&a.mu, Some(&a.dim))?;
            let out = sweep(&points, |(m, n)| {
                run_verify(m, *n, family, a.tolerance).map(Output::Verify)
            })?;
            (out, is_sweep(&a.mu, Some(&a.dim)))
        }
        Command::Classify(a) => {
            let points = grid(&a.mu, None)?;
            let out = sweep(&points, |(m, _)| {
                Ok(Output::Classify(run_classify(m, a.k_max)))
            })?;
            (out, is_sweep(&a.mu, None))
        }
        Command::Spectrum(a) => {
            let points = grid(&a.mu, Some(&a.dim))?;
            let out = sweep(&points, |(m, n)| {
                run_spectrum(a.operator, m, *n, a.parity, &a.intervals).map(Output::Spectrum)
            })?;
            (out, is_sweep(&a.mu, Some(&a.dim)))
        }
        Command::Recurrence(a) => {
            let points = grid(&a.mu, None)?;
            let out = sweep(&points, |(m, _)| {
                run_recurrence(a, m).map(Output::Recurrence)
            })?;
            (out, is_sweep(&a.mu, None))
        }
        Command::Equivalence(a) => {
            let points = grid(&a.mu, Some(&a.dim))?;
            let out = sweep(&points, |(m, n)| {
                Ok(Output::Equivalence(equivalence_shift(m, *n)?))
            })?;
            (out, is_sweep(&a.mu, Some(&a.dim)))
        }
    };
    Ok((outputs, swept))
}

pub fn render(outputs: &[Output], swept: bool, format: Format) -> anyhow::Result<String> {
    Ok(match format {
        Format::Json if swept => serde_json::to_string_pretty(outputs)? + "\n",
        Format::Json => serde_json::to_string_pretty(&outputs[0])? + "\n",
        Format::Csv => {
            let mut s = String::new();
            if let Some(first) = outputs.first() {
                s.push_str(first.csv_header());
                s.push('\n');
            }
            for o in outputs {
                for row in o.csv_rows() {
                    s.push_str(&row);
                    s.push('\n');
                }
            }
            s
        }
    })
}

fn emit(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

pub fn run(cli: &Cli) -> ExitCode {
    let (outputs, swept) = match execute(&cli.command) {
        Ok(x) => x,
        Err(RunError::Invalid(e)) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
        Err(RunError::Check(e)) => {
            eprintln!("check failed: {e:#}");
            return ExitCode::from(1);
        }
    };
    let written = render(&outputs, swept, cli.format).and_then(|text| emit(cli, &text));
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if outputs.iter().all(Output::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

pub fn parse_and_run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let _ = e.print();
            ExitCode::from(if e.use_stderr() { 2 } else { 0 })
        }
    }
}
