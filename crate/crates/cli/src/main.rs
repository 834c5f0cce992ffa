//! Command-line front end for the register-dephasing library: coherence
//! traces, decoherence-time tables, figure data, the discrete-mode oracle,
//! and CSV verification.
//!
//! Exit codes: 0 success, 2 invalid configuration, 3 numerical
//! non-convergence.

// validation guards use `!(x > 0.0)`-style comparisons to reject NaN too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod io;

use clap::{Args, Parser, Subcommand, ValueEnum};
use io::{fmt, labelled_trace_csv, trace_csv, verify_file, write_output, TraceRow};
use qrdephase_core::analysis::{
    self, decoherence_times, make_figure, make_table, AnalysisError, CellValue,
    CoherenceEvaluator, CollectiveQuadrature, IndependentQuadrature, PairCollectiveClosed,
    PairIndependentClosed, SingleQubitClosed, TableData, TfResult,
};
use qrdephase_core::bath::BathSpec;
use qrdephase_core::closedform::{self, PairBranch, PairCase};
use qrdephase_core::kernels::{self, QuadratureConfig, QuadratureError};
use qrdephase_core::register::{
    coherence_discrete, CoherenceLabel, Mode, ModeSet, RegisterGeometry,
};
use qrdephase_core::analysis::reference::RefCell;
use serde::Deserialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Quadrature(q) => CliError::Numerical(q.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<QuadratureError> for CliError {
    fn from(e: QuadratureError) -> Self {
        match e {
            QuadratureError::InvalidConfig(_) => CliError::Config(e.to_string()),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "qrdephase", version, about = "Pure-dephasing dynamics of qubit registers in bosonic baths")]
struct Cli {
    /// JSON file overriding quadrature tolerances and the scan horizon.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Single-qubit coherence trace.
    Single(SingleArgs),
    /// Two-qubit coherence trace for one branch and coupling mode.
    Pair(PairArgs),
    /// Arbitrary register elements from label and geometry files.
    Register(RegisterArgs),
    /// Reproduce a reference decoherence-time table (1, 2 or 3).
    Table(TableArgs),
    /// Emit the grid data of a reference figure (1–8).
    Figure(FigureArgs),
    /// Sample a bath spectral density into a discrete modes file.
    Modes(ModesArgs),
    /// Re-read an emitted CSV and re-check its invariants.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Closed,
    Quadrature,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coupling {
    Independent,
    Collective,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    OneDiffers,
    BothDiffer,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Plus,
    Minus,
}

impl From<CaseArg> for PairCase {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::OneDiffers => PairCase::OneDiffers,
            CaseArg::BothDiffer => PairCase::BothDiffer,
        }
    }
}

impl From<BranchArg> for PairBranch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Plus => PairBranch::Plus,
            BranchArg::Minus => PairBranch::Minus,
        }
    }
}

#[derive(Args)]
struct SingleArgs {
    /// Bath dimensionality (1 Ohmic, 3 super-Ohmic; others need quadrature).
    #[arg(long)]
    d: u32,
    /// Dimensionless coupling strength c_d.
    #[arg(long)]
    c: f64,
    /// Temperature parameter θ = ω_T/ω_c.
    #[arg(long)]
    theta: f64,
    /// Upper end of the time grid (ω_c t).
    #[arg(long)]
    tmax: f64,
    /// Number of grid points.
    #[arg(long, default_value_t = 201)]
    points: usize,
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    method: Method,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a decoherence-times JSON summary here.
    #[arg(long)]
    times_out: Option<PathBuf>,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long, value_enum)]
    coupling: Coupling,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    c: f64,
    #[arg(long)]
    theta: f64,
    /// Transit time ω_c t_s (ignored for collective coupling).
    #[arg(long, default_value_t = 0.0)]
    ts: f64,
    #[arg(long, value_enum, default_value_t = CaseArg::BothDiffer)]
    case: CaseArg,
    #[arg(long, value_enum)]
    branch: BranchArg,
    #[arg(long)]
    tmax: f64,
    #[arg(long, default_value_t = 201)]
    points: usize,
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    method: Method,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    times_out: Option<PathBuf>,
}

#[derive(Args)]
struct RegisterArgs {
    /// File with one element per line: `<i bits>,<j bits>`.
    #[arg(long)]
    labels_file: PathBuf,
    /// Geometry file: `positions p1 p2 …` or an L×L transit-time matrix.
    #[arg(long)]
    geometry_file: Option<PathBuf>,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    c: f64,
    #[arg(long)]
    theta: f64,
    #[arg(long, value_enum, default_value_t = Coupling::Independent)]
    coupling: Coupling,
    #[arg(long, value_enum, default_value_t = Method::Quadrature)]
    method: Method,
    /// Modes file for `--method oracle` (lines `x,weight,phase_1,…,phase_L`).
    #[arg(long)]
    modes_file: Option<PathBuf>,
    #[arg(long)]
    tmax: f64,
    #[arg(long, default_value_t = 201)]
    points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    /// Table id: 1, 2 or 3.
    id: u8,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FigureArgs {
    /// Figure id: 1–8.
    id: u8,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ModesArgs {
    #[arg(long)]
    d: u32,
    #[arg(long)]
    c: f64,
    /// Number of modes.
    #[arg(long)]
    n: usize,
    /// Sampling range upper end (frequencies in units of ω_c).
    #[arg(long, default_value_t = 60.0)]
    xmax: f64,
    /// Comma-separated collinear qubit positions (ω_c x).
    #[arg(long)]
    positions: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
}

/// Runtime overrides loaded from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    abs_tol: Option<f64>,
    rel_tol: Option<f64>,
    max_subdivisions: Option<u32>,
    cutoff_multiplier: Option<f64>,
    horizon: Option<f64>,
}

#[derive(Clone, Copy)]
struct RunConfig {
    quad: QuadratureConfig,
    horizon: f64,
}

fn load_config(path: Option<&Path>) -> Result<RunConfig, CliError> {
    let mut quad = QuadratureConfig::default();
    let mut horizon = analysis::DEFAULT_HORIZON;
    if let Some(path) = path {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config: {e}")))?;
        let file: ConfigFile = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("invalid config: {e}")))?;
        if let Some(v) = file.abs_tol {
            quad.abs_tol = v;
        }
        if let Some(v) = file.rel_tol {
            quad.rel_tol = v;
        }
        if let Some(v) = file.max_subdivisions {
            quad.max_subdivisions = v;
        }
        if let Some(v) = file.cutoff_multiplier {
            quad.cutoff_multiplier = v;
        }
        if let Some(v) = file.horizon {
            if !(v > 0.0) {
                return Err(CliError::Config("horizon must be positive".into()));
            }
            horizon = v;
        }
    }
    let quad = quad.validated().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(RunConfig { quad, horizon })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = load_config(cli.config.as_deref())?;
    match cli.command {
        Command::Single(args) => cmd_single(args, cfg),
        Command::Pair(args) => cmd_pair(args, cfg),
        Command::Register(args) => cmd_register(args, cfg),
        Command::Table(args) => cmd_table(args, cfg),
        Command::Figure(args) => cmd_figure(args, cfg),
        Command::Modes(args) => cmd_modes(args, cfg),
        Command::Verify(args) => verify_file(&args.file).map(|msg| println!("{msg}")),
    }
}

fn time_grid(tmax: f64, points: usize) -> Result<Vec<f64>, CliError> {
    if !(tmax >= 0.0) || !tmax.is_finite() {
        return Err(CliError::Config(format!("invalid tmax {tmax}")));
    }
    if tmax == 0.0 {
        return Ok(vec![0.0]);
    }
    Ok(analysis::lin_grid(0.0, tmax, points.max(2)))
}

fn bath_for(d: u32, c: f64, theta: f64) -> Result<BathSpec, CliError> {
    BathSpec::new(d, c, theta).map_err(|e| CliError::Config(e.to_string()))
}

fn require_closed_form(bath: &BathSpec) -> Result<(), CliError> {
    if !bath.has_closed_form() {
        return Err(CliError::Config(
            "closed form unavailable; use --method quadrature".into(),
        ));
    }
    Ok(())
}

fn times_json(times: &analysis::DecoherenceTimes) -> String {
    let t_f = match times.t_f {
        TfResult::Crossing(t) => serde_json::json!({"kind": "crossing", "value": t}),
        TfResult::Saturates(r) => serde_json::json!({"kind": "saturates", "residual": r}),
    };
    let doc = serde_json::json!({
        "tau_dec": times.tau_dec,
        "t_f": t_f,
        "recoherence": times.recoherence,
        "residual": times.residual,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("json");
    s.push('\n');
    s
}

fn write_times(
    path: Option<&Path>,
    eval: &dyn CoherenceEvaluator,
    cfg: &RunConfig,
) -> Result<(), CliError> {
    if let Some(path) = path {
        let times = decoherence_times(eval, cfg.horizon, 2000)?;
        write_output(Some(path), &times_json(&times))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// single
// ---------------------------------------------------------------------------

fn cmd_single(args: SingleArgs, cfg: RunConfig) -> Result<(), CliError> {
    let bath = bath_for(args.d, args.c, args.theta)?;
    let grid = time_grid(args.tmax, args.points)?;
    let rows = match args.method {
        Method::Closed => {
            require_closed_form(&bath)?;
            grid.iter()
                .map(|&tau| {
                    let gamma = closedform::gamma_single_closed(args.d, args.c, args.theta, tau)
                        .map_err(|e| CliError::Config(e.to_string()))?;
                    Ok(TraceRow {
                        tau,
                        gamma,
                        theta_phase: 0.0,
                        lambda_phase: 0.0,
                        magnitude: (-gamma).exp(),
                        phase: 0.0,
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?
        }
        Method::Quadrature => grid
            .iter()
            .map(|&tau| {
                let gamma = kernels::gamma_single(&bath, tau, &cfg.quad)?;
                Ok(TraceRow {
                    tau,
                    gamma,
                    theta_phase: 0.0,
                    lambda_phase: 0.0,
                    magnitude: (-gamma).exp(),
                    phase: 0.0,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?,
        Method::Oracle => {
            return Err(CliError::Config(
                "the oracle method applies to the register command".into(),
            ))
        }
    };
    write_output(args.out.as_deref(), &trace_csv(&rows))?;

    match args.method {
        Method::Closed => {
            let eval = SingleQubitClosed {
                d: args.d,
                c: args.c,
                theta: args.theta,
            };
            write_times(args.times_out.as_deref(), &eval, &cfg)
        }
        _ => {
            let eval = CollectiveQuadrature {
                bath,
                label: CoherenceLabel::from_bits("1", "0").expect("label"),
                cfg: cfg.quad,
            };
            write_times(args.times_out.as_deref(), &eval, &cfg)
        }
    }
}

// ---------------------------------------------------------------------------
// pair
// ---------------------------------------------------------------------------

/// Representative element of each two-qubit case/branch class:
/// one-differs Plus (00,01), one-differs Minus (00,10), both-differ Plus
/// (11,00), both-differ Minus (10,01).
fn pair_label(case: PairCase, branch: PairBranch) -> CoherenceLabel {
    let (i, j) = match (case, branch) {
        (PairCase::OneDiffers, PairBranch::Plus) => ("00", "01"),
        (PairCase::OneDiffers, PairBranch::Minus) => ("00", "10"),
        (PairCase::BothDiffer, PairBranch::Plus) => ("11", "00"),
        (PairCase::BothDiffer, PairBranch::Minus) => ("10", "01"),
    };
    CoherenceLabel::from_bits(i, j).expect("pair label")
}

fn cmd_pair(args: PairArgs, cfg: RunConfig) -> Result<(), CliError> {
    let bath = bath_for(args.d, args.c, args.theta)?;
    if !(args.ts >= 0.0) || !args.ts.is_finite() {
        return Err(CliError::Config(format!("invalid ts {}", args.ts)));
    }
    let case: PairCase = args.case.into();
    let branch: PairBranch = args.branch.into();
    let grid = time_grid(args.tmax, args.points)?;

    let rows = match (args.method, args.coupling) {
        (Method::Closed, Coupling::Independent) => {
            require_closed_form(&bath)?;
            grid.iter()
                .map(|&tau| {
                    let v = match args.d {
                        1 => closedform::pair_independent_d1(args.c, args.theta, tau, args.ts, case, branch),
                        _ => closedform::pair_independent_d3(args.c, args.theta, tau, args.ts, case, branch)
                            .map_err(|e| CliError::Config(e.to_string()))?,
                    };
                    Ok(closed_trace_row(tau, v.magnitude, v.phase))
                })
                .collect::<Result<Vec<_>, CliError>>()?
        }
        (Method::Closed, Coupling::Collective) => {
            require_closed_form(&bath)?;
            grid.iter()
                .map(|&tau| {
                    let v = closedform::pair_collective(args.d, args.c, args.theta, tau, case, branch)
                        .map_err(|e| CliError::Config(e.to_string()))?;
                    Ok(closed_trace_row(tau, v.magnitude, v.phase))
                })
                .collect::<Result<Vec<_>, CliError>>()?
        }
        (Method::Quadrature, coupling) => {
            let label = pair_label(case, branch);
            let geometry = match coupling {
                Coupling::Independent => RegisterGeometry::uniform(2, args.ts),
                Coupling::Collective => RegisterGeometry::zeros(2),
            }
            .map_err(|e| CliError::Config(e.to_string()))?;
            grid.iter()
                .map(|&tau| quadrature_trace_row(&bath, &geometry, &label, tau, &cfg.quad))
                .collect::<Result<Vec<_>, CliError>>()?
        }
        (Method::Oracle, _) => {
            return Err(CliError::Config(
                "the oracle method applies to the register command".into(),
            ))
        }
    };
    write_output(args.out.as_deref(), &trace_csv(&rows))?;

    if args.times_out.is_some() {
        match (args.method, args.coupling) {
            (Method::Closed, Coupling::Independent) => {
                let eval = PairIndependentClosed {
                    d: args.d,
                    c: args.c,
                    theta: args.theta,
                    tau_s: args.ts,
                    case,
                    branch,
                };
                write_times(args.times_out.as_deref(), &eval, &cfg)?;
            }
            (Method::Closed, Coupling::Collective) => {
                let eval = PairCollectiveClosed {
                    d: args.d,
                    c: args.c,
                    theta: args.theta,
                    case,
                    branch,
                };
                write_times(args.times_out.as_deref(), &eval, &cfg)?;
            }
            (_, coupling) => {
                let label = pair_label(case, branch);
                match coupling {
                    Coupling::Independent => {
                        let eval = IndependentQuadrature {
                            bath,
                            geometry: RegisterGeometry::uniform(2, args.ts)
                                .map_err(|e| CliError::Config(e.to_string()))?,
                            label,
                            cfg: cfg.quad,
                        };
                        write_times(args.times_out.as_deref(), &eval, &cfg)?;
                    }
                    Coupling::Collective => {
                        let eval = CollectiveQuadrature {
                            bath,
                            label,
                            cfg: cfg.quad,
                        };
                        write_times(args.times_out.as_deref(), &eval, &cfg)?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn closed_trace_row(tau: f64, magnitude: f64, phase: f64) -> TraceRow {
    TraceRow {
        tau,
        gamma: -magnitude.ln(),
        theta_phase: phase,
        lambda_phase: 0.0,
        magnitude,
        phase,
    }
}

fn quadrature_trace_row(
    bath: &BathSpec,
    geometry: &RegisterGeometry,
    label: &CoherenceLabel,
    tau: f64,
    quad: &QuadratureConfig,
) -> Result<TraceRow, CliError> {
    let f = kernels::decoherence_functions(bath, geometry, label, tau, quad)?;
    Ok(TraceRow {
        tau,
        gamma: f.gamma,
        theta_phase: f.theta_phase,
        lambda_phase: f.lambda_phase,
        magnitude: (-f.gamma).exp(),
        phase: f.aleph,
    })
}

// ---------------------------------------------------------------------------
// register
// ---------------------------------------------------------------------------

fn parse_labels(path: &Path) -> Result<Vec<CoherenceLabel>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read labels: {e}")))?;
    let mut labels = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (i, j) = line
            .split_once(',')
            .ok_or_else(|| CliError::Config(format!("labels line {}: expected `<i>,<j>`", idx + 1)))?;
        labels.push(
            CoherenceLabel::from_bits(i.trim(), j.trim())
                .map_err(|e| CliError::Config(format!("labels line {}: {e}", idx + 1)))?,
        );
    }
    if labels.is_empty() {
        return Err(CliError::Config("labels file contains no labels".into()));
    }
    Ok(labels)
}

fn parse_geometry(path: &Path, len: usize) -> Result<RegisterGeometry, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read geometry: {e}")))?;
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let parse_row = |line: &str, idx: usize| -> Result<Vec<f64>, CliError> {
        line.split_whitespace()
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| CliError::Config(format!("geometry line {}: bad number {t:?}", idx + 1)))
            })
            .collect()
    };
    let geometry = if let Some(rest) = lines.first().and_then(|l| l.strip_prefix("positions")) {
        let mut values = parse_row(rest, 0)?;
        for (idx, line) in lines.iter().enumerate().skip(1) {
            values.extend(parse_row(line, idx)?);
        }
        RegisterGeometry::collinear(&values).map_err(|e| CliError::Config(e.to_string()))?
    } else {
        let mut matrix = Vec::new();
        for (idx, line) in lines.iter().enumerate() {
            matrix.push(parse_row(line, idx)?);
        }
        RegisterGeometry::from_matrix(&matrix).map_err(|e| CliError::Config(e.to_string()))?
    };
    if geometry.len() != len {
        return Err(CliError::Config(format!(
            "geometry is for {} qubits but labels have {len}",
            geometry.len()
        )));
    }
    Ok(geometry)
}

fn parse_modes(path: &Path, len: usize) -> Result<ModeSet, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read modes: {e}")))?;
    let mut modes = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<f64> = line
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::Config(format!("modes line {}: bad number {t:?}", idx + 1)))
            })
            .collect::<Result<_, _>>()?;
        if fields.len() != 2 + len {
            return Err(CliError::Config(format!(
                "modes line {}: expected x,weight and {len} phases",
                idx + 1
            )));
        }
        modes.push(Mode {
            x: fields[0],
            weight: fields[1],
            phases: fields[2..].to_vec(),
        });
    }
    ModeSet::new(modes).map_err(|e| CliError::Config(e.to_string()))
}

fn cmd_register(args: RegisterArgs, cfg: RunConfig) -> Result<(), CliError> {
    let bath = bath_for(args.d, args.c, args.theta)?;
    let labels = parse_labels(&args.labels_file)?;
    let len = labels[0].len();
    if labels.iter().any(|l| l.len() != len) {
        return Err(CliError::Config("labels have mixed register lengths".into()));
    }
    let grid = time_grid(args.tmax, args.points)?;

    let mut rows = Vec::new();
    match args.method {
        Method::Oracle => {
            let modes_path = args.modes_file.as_deref().ok_or_else(|| {
                CliError::Config("--method oracle requires --modes-file".into())
            })?;
            let modes = parse_modes(modes_path, len)?;
            if modes.is_empty() {
                eprintln!("warning: empty mode set; coherences are trivially 1");
            }
            for label in &labels {
                let (ib, jb) = label_bits(label);
                for &tau in &grid {
                    let r = coherence_discrete(&modes, label, args.theta, tau)
                        .map_err(|e| CliError::Config(e.to_string()))?;
                    rows.push((
                        ib.clone(),
                        jb.clone(),
                        TraceRow {
                            tau,
                            gamma: r.functions.gamma,
                            theta_phase: r.functions.theta_phase,
                            lambda_phase: r.functions.lambda_phase,
                            magnitude: r.value.magnitude,
                            phase: r.value.phase,
                        },
                    ));
                }
            }
        }
        Method::Quadrature => match args.coupling {
            Coupling::Independent => {
                let geometry_path = args.geometry_file.as_deref().ok_or_else(|| {
                    CliError::Config("independent coupling requires --geometry-file".into())
                })?;
                let geometry = parse_geometry(geometry_path, len)?;
                for label in &labels {
                    let (ib, jb) = label_bits(label);
                    for &tau in &grid {
                        let row = quadrature_trace_row(&bath, &geometry, label, tau, &cfg.quad)?;
                        rows.push((ib.clone(), jb.clone(), row));
                    }
                }
            }
            Coupling::Collective => {
                for label in &labels {
                    let (ib, jb) = label_bits(label);
                    let class = qrdephase_core::register::dfs_classify(label);
                    for &tau in &grid {
                        let gamma = if class.damping_weight != 0.0 {
                            class.damping_weight * kernels::gamma_collective(&bath, tau, &cfg.quad)?
                        } else {
                            0.0
                        };
                        let theta_phase = if class.phase_weight != 0.0 {
                            class.phase_weight * kernels::theta_collective(&bath, tau, &cfg.quad)?
                        } else {
                            0.0
                        };
                        rows.push((
                            ib.clone(),
                            jb.clone(),
                            TraceRow {
                                tau,
                                gamma,
                                theta_phase,
                                lambda_phase: 0.0,
                                magnitude: (-gamma).exp(),
                                phase: theta_phase,
                            },
                        ));
                    }
                }
            }
        },
        Method::Closed => {
            require_closed_form(&bath)?;
            if matches!(args.coupling, Coupling::Independent) {
                return Err(CliError::Config(
                    "closed forms cover collective coupling here; use the pair command for \
                     two-qubit independent closed forms or --method quadrature"
                        .into(),
                ));
            }
            for label in &labels {
                let (ib, jb) = label_bits(label);
                let class = qrdephase_core::register::dfs_classify(label);
                for &tau in &grid {
                    let gamma = class.damping_weight
                        * closedform::gamma_single_closed(args.d, args.c, args.theta, tau)
                            .map_err(|e| CliError::Config(e.to_string()))?;
                    let theta_phase = class.phase_weight
                        * closedform::theta_functional_closed(args.d, args.c, tau)
                            .map_err(|e| CliError::Config(e.to_string()))?;
                    rows.push((
                        ib.clone(),
                        jb.clone(),
                        TraceRow {
                            tau,
                            gamma,
                            theta_phase,
                            lambda_phase: 0.0,
                            magnitude: (-gamma).exp(),
                            phase: theta_phase,
                        },
                    ));
                }
            }
        }
    }
    write_output(args.out.as_deref(), &labelled_trace_csv(&rows))
}

fn label_bits(label: &CoherenceLabel) -> (String, String) {
    let mut i = String::new();
    let mut j = String::new();
    for n in 0..label.len() {
        let (iv, jv) = label.pair(n);
        i.push(if iv > 0.0 { '1' } else { '0' });
        j.push(if jv > 0.0 { '1' } else { '0' });
    }
    (i, j)
}

// ---------------------------------------------------------------------------
// table / figure
// ---------------------------------------------------------------------------

fn cell_str(c: &CellValue) -> String {
    match c {
        CellValue::Number(v) => fmt(*v),
        CellValue::Saturates => "saturates".to_string(),
    }
}

fn ref_str(c: &RefCell) -> String {
    match c {
        RefCell::Num { value, .. } => fmt(*value),
        RefCell::Saturates => "saturates".to_string(),
    }
}

fn table_csv(table: &TableData) -> String {
    let mut out = String::new();
    let first = &table.rows[0];
    for (name, _) in &first.params {
        out.push_str(name);
        out.push(',');
    }
    let mut cols = Vec::new();
    for cell in &first.cells {
        cols.push(format!("{0},{0}_ref,{0}_dev", cell.column));
    }
    out.push_str(&cols.join(","));
    out.push('\n');

    for row in &table.rows {
        for (_, v) in &row.params {
            out.push_str(&fmt(*v));
            out.push(',');
        }
        let cells: Vec<String> = row
            .cells
            .iter()
            .map(|c| {
                format!(
                    "{},{},{}",
                    cell_str(&c.computed),
                    ref_str(&c.reference),
                    c.rel_dev.map(fmt).unwrap_or_default()
                )
            })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn cmd_table(args: TableArgs, _cfg: RunConfig) -> Result<(), CliError> {
    let table = make_table(args.id)?;
    write_output(args.out.as_deref(), &table_csv(&table))?;
    if !table.all_match() {
        eprintln!("warning: some cells deviate from the reference values beyond tolerance");
    }
    Ok(())
}

fn cmd_figure(args: FigureArgs, _cfg: RunConfig) -> Result<(), CliError> {
    let fig = make_figure(args.id)?;
    let mut out = String::from("family");
    for axis in &fig.axes {
        out.push(',');
        out.push_str(axis);
    }
    out.push('\n');
    for fam in &fig.families {
        for row in &fam.rows {
            out.push_str(&fam.label);
            for v in row {
                out.push(',');
                out.push_str(&fmt(*v));
            }
            out.push('\n');
        }
    }
    write_output(args.out.as_deref(), &out)
}

// ---------------------------------------------------------------------------
// modes
// ---------------------------------------------------------------------------

fn cmd_modes(args: ModesArgs, _cfg: RunConfig) -> Result<(), CliError> {
    let bath = bath_for(args.d, args.c, 0.0)?;
    let positions: Vec<f64> = args
        .positions
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Config(format!("bad position {t:?}")))
        })
        .collect::<Result<_, _>>()?;
    if positions.is_empty() {
        return Err(CliError::Config("at least one position required".into()));
    }
    let modes = ModeSet::riemann_sample(&bath, args.n, args.xmax, &positions)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let mut out = String::new();
    for m in modes.modes() {
        out.push_str(&fmt(m.x));
        out.push(',');
        out.push_str(&fmt(m.weight));
        for p in &m.phases {
            out.push(',');
            out.push_str(&fmt(*p));
        }
        out.push('\n');
    }
    write_output(args.out.as_deref(), &out)
}
