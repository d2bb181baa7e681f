//! Command-line front end: parses flags into a [`RunConfig`], dispatches to
//! `dkp_core`, and renders the result as CSV or JSON.
//!
//! Exit codes: 0 on success, 1 for domain errors (the computation itself
//! failed, e.g. a degenerate problem), 2 for usage errors.

// `!(x > y)` deliberately rejects NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod schema;
pub mod table;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use dkp_core::algebra::{beta_matrices, verify_dkp_algebra, RepKind};
use dkp_core::lieb::{self, LiebParams};
use dkp_core::spectrum::{
    classified_roots, solve_spectrum, sweep, sweep_constraints, Axis, Branch, OscillatorParams,
    QuantumNumbers, SolverOptions, SweepSpec,
};
use dkp_core::states::{
    build_state, first_order_closure, normalize, residual_second_order, sample_fields,
    total_charge, FieldGrid, RadialMapping, KUMMER_TOL,
};

use table::{Cell, Table};

#[derive(Debug, Parser)]
#[command(
    name = "dkp",
    version,
    about = "Spin-1 DKP oscillator in 2+1 dimensions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
pub enum Command {
    /// β-matrix algebra checks
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Bound-state energies
    #[command(subcommand)]
    Spectrum(SpectrumCmd),
    /// Eigenfunctions and equation-of-motion checks
    #[command(subcommand)]
    State(StateCmd),
    /// Lieb-lattice bands and polarization integrals
    #[command(subcommand)]
    Lieb(LiebCmd),
}

#[derive(Debug, Clone, Subcommand, Serialize)]
pub enum AlgebraCmd {
    /// Verify the trilinear DKP algebra exactly
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Subcommand, Serialize)]
pub enum SpectrumCmd {
    /// Energies for fixed quantum numbers
    #[command(allow_negative_numbers = true)]
    Solve(SolveArgs),
    /// Energies along an ω or ω̃ axis
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// Constraint-window boundaries ε± along an axis
    #[command(allow_negative_numbers = true)]
    Window(WindowArgs),
}

#[derive(Debug, Clone, Subcommand, Serialize)]
pub enum StateCmd {
    /// Sample Φ₁, Φ₂, Φ₃ and J⁰ of the normalized state on a polar grid
    #[command(allow_negative_numbers = true)]
    Eval(StateArgs),
    /// Run the equation-of-motion and normalization checks
    #[command(allow_negative_numbers = true)]
    Check(StateArgs),
}

#[derive(Debug, Clone, Subcommand, Serialize)]
pub enum LiebCmd {
    /// Band energies along k₁
    #[command(allow_negative_numbers = true)]
    Bands(BandsArgs),
    /// Π_even and Π_odd as functions of p̃²/m²
    #[command(allow_negative_numbers = true)]
    Polarization(PolarizationArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    /// Representation dimension; both when omitted
    #[arg(long, value_parser = ["3", "6"])]
    pub rep: Option<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OscArgs {
    #[arg(long)]
    pub mass: f64,
    #[arg(long, default_value_t = 0.0)]
    pub omega: f64,
    #[arg(long, default_value_t = 0.0)]
    pub omega_tilde: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LevelArgs {
    /// Angular quantum numbers, comma separated
    #[arg(
        long = "l",
        value_delimiter = ',',
        default_value = "0",
        allow_hyphen_values = true
    )]
    pub l: Vec<i32>,
    /// Radial quantum number
    #[arg(long, conflicts_with = "nr_max")]
    pub nr: Option<u32>,
    /// Use every radial quantum number from 0 to this value
    #[arg(long)]
    pub nr_max: Option<u32>,
    /// Residual tolerance relative to max(1, E², m²)
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxisArg {
    Omega,
    OmegaTilde,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RangeArgs {
    #[arg(long)]
    pub range_min: f64,
    #[arg(long)]
    pub range_max: f64,
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SolveArgs {
    #[command(flatten)]
    pub osc: OscArgs,
    #[command(flatten)]
    pub levels: LevelArgs,
    /// Also list rejected roots of the squared condition
    #[arg(long)]
    pub all: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    #[command(flatten)]
    pub osc: OscArgs,
    #[command(flatten)]
    pub levels: LevelArgs,
    #[arg(long, value_enum)]
    pub axis: AxisArg,
    #[command(flatten)]
    pub range: RangeArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct WindowArgs {
    #[command(flatten)]
    pub osc: OscArgs,
    #[arg(
        long = "l",
        value_delimiter = ',',
        default_value = "0",
        allow_hyphen_values = true
    )]
    pub l: Vec<i32>,
    #[arg(long, value_enum)]
    pub axis: AxisArg,
    #[command(flatten)]
    pub range: RangeArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchArg {
    Particle,
    Antiparticle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MappingArg {
    Linear,
    Sqrt,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct StateArgs {
    #[command(flatten)]
    pub osc: OscArgs,
    #[arg(long, default_value_t = 0)]
    pub nr: u32,
    #[arg(long = "l", default_value_t = 0)]
    pub l: i32,
    #[arg(long, value_enum, default_value_t = BranchArg::Particle)]
    pub branch: BranchArg,
    #[arg(long, default_value_t = 100)]
    pub r_points: usize,
    #[arg(long, default_value_t = 8)]
    pub phi_points: usize,
    /// Outer radius; the state's decay radius when omitted
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long, value_enum, default_value_t = MappingArg::Linear)]
    pub mapping: MappingArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BandsArgs {
    #[arg(long, default_value_t = 1.0)]
    pub vf: f64,
    /// Bandgap m (any sign)
    #[arg(long)]
    pub mass: f64,
    #[arg(long, default_value_t = 0.0)]
    pub k2: f64,
    #[command(flatten)]
    pub range: RangeArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PolarizationArgs {
    /// Values of p̃²/m², comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["range_min", "range_max"])]
    pub ptilde2_over_m2: Vec<f64>,
    #[arg(long, requires = "range_max")]
    pub range_min: Option<f64>,
    #[arg(long, requires = "range_min")]
    pub range_max: Option<f64>,
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub sign_m: i32,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// A parsed invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
}

impl RunConfig {
    pub fn try_from_args<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        Ok(RunConfig {
            command: Cli::try_parse_from(args)?.command,
        })
    }

    pub fn name(&self) -> &'static str {
        match &self.command {
            Command::Algebra(AlgebraCmd::Verify(_)) => "algebra verify",
            Command::Spectrum(SpectrumCmd::Solve(_)) => "spectrum solve",
            Command::Spectrum(SpectrumCmd::Sweep(_)) => "spectrum sweep",
            Command::Spectrum(SpectrumCmd::Window(_)) => "spectrum window",
            Command::State(StateCmd::Eval(_)) => "state eval",
            Command::State(StateCmd::Check(_)) => "state check",
            Command::Lieb(LiebCmd::Bands(_)) => "lieb bands",
            Command::Lieb(LiebCmd::Polarization(_)) => "lieb polarization",
        }
    }

    pub fn output(&self) -> &OutputArgs {
        match &self.command {
            Command::Algebra(AlgebraCmd::Verify(a)) => &a.out,
            Command::Spectrum(SpectrumCmd::Solve(a)) => &a.out,
            Command::Spectrum(SpectrumCmd::Sweep(a)) => &a.out,
            Command::Spectrum(SpectrumCmd::Window(a)) => &a.out,
            Command::State(StateCmd::Eval(a) | StateCmd::Check(a)) => &a.out,
            Command::Lieb(LiebCmd::Bands(a)) => &a.out,
            Command::Lieb(LiebCmd::Polarization(a)) => &a.out,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    Domain(dkp_core::Error),
    NoLevel {
        n_r: u32,
        l: i32,
        branch: &'static str,
    },
    Io(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "Usage",
            CliError::Domain(e) => e.code(),
            CliError::NoLevel { .. } => "NoAdmissibleLevel",
            CliError::Io(_) => "Io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    /// Single-line JSON record for stderr.
    pub fn record(&self) -> String {
        json!({"error": {"code": self.code(), "message": self.to_string(), "exit_code": self.exit_code()}})
            .to_string()
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::NoLevel { n_r, l, branch } => {
                write!(f, "no admissible {branch} level for n_r = {n_r}, l = {l}")
            }
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<dkp_core::Error> for CliError {
    fn from(e: dkp_core::Error) -> Self {
        CliError::Domain(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn finite(name: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(usage(format!("--{name} must be finite")))
    }
}

fn osc_params(a: &OscArgs) -> Result<OscillatorParams, CliError> {
    finite("omega", a.omega)?;
    finite("omega-tilde", a.omega_tilde)?;
    if !(finite("mass", a.mass)? > 0.0) {
        return Err(usage("--mass must be positive"));
    }
    Ok(OscillatorParams::new(a.mass, a.omega, a.omega_tilde)?)
}

fn solver_options(tol: Option<f64>) -> Result<SolverOptions, CliError> {
    match tol {
        None => Ok(SolverOptions::default()),
        Some(t) if t > 0.0 && t.is_finite() => Ok(SolverOptions::with_tol(t)),
        Some(_) => Err(usage("--tol must be positive")),
    }
}

fn qnums(levels: &LevelArgs) -> Vec<QuantumNumbers> {
    let nrs: Vec<u32> = match (levels.nr, levels.nr_max) {
        (_, Some(max)) => (0..=max).collect(),
        (Some(n), None) => vec![n],
        (None, None) => vec![0],
    };
    let mut ls = levels.l.clone();
    ls.sort_unstable();
    ls.dedup();
    ls.iter()
        .flat_map(|&l| nrs.iter().map(move |&n| QuantumNumbers::new(n, l)))
        .collect()
}

fn range(r: &RangeArgs) -> Result<(f64, f64, usize), CliError> {
    let (lo, hi) = (
        finite("range-min", r.range_min)?,
        finite("range-max", r.range_max)?,
    );
    if !(hi > lo) {
        return Err(usage("--range-max must exceed --range-min"));
    }
    if r.steps == 0 {
        return Err(usage("--steps must be positive"));
    }
    Ok((lo, hi, r.steps))
}

/// `steps` points from lo to hi inclusive.
fn inclusive_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![lo];
    }
    let h = (hi - lo) / (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                hi
            } else {
                lo + i as f64 * h
            }
        })
        .collect()
}

fn axis(a: AxisArg) -> Axis {
    match a {
        AxisArg::Omega => Axis::Omega,
        AxisArg::OmegaTilde => Axis::OmegaTilde,
    }
}

/// Executes the command and returns the table it produces.
pub fn run(config: &RunConfig) -> Result<Table, CliError> {
    match &config.command {
        Command::Algebra(AlgebraCmd::Verify(a)) => algebra_verify(a),
        Command::Spectrum(SpectrumCmd::Solve(a)) => spectrum_solve(a),
        Command::Spectrum(SpectrumCmd::Sweep(a)) => spectrum_sweep(a),
        Command::Spectrum(SpectrumCmd::Window(a)) => spectrum_window(a),
        Command::State(StateCmd::Eval(a)) => state_eval(a),
        Command::State(StateCmd::Check(a)) => state_check(a),
        Command::Lieb(LiebCmd::Bands(a)) => lieb_bands(a),
        Command::Lieb(LiebCmd::Polarization(a)) => lieb_polarization(a),
    }
}

/// Renders the table in the requested format.
pub fn render(config: &RunConfig, table: &Table) -> String {
    match config.output().format {
        Format::Csv => table.to_csv(),
        Format::Json => {
            let echo = serde_json::to_value(&config.command).expect("config serializes");
            table.to_json(config.name(), echo)
        }
    }
}

/// Parses, runs and writes; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_from_args(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = run(&config).and_then(|table| {
        let text = render(&config, &table);
        match &config.output().output {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
            None => {
                use std::io::Write;
                std::io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(|e| CliError::Io(e.to_string()))
            }
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.record());
            e.exit_code()
        }
    }
}

fn algebra_verify(a: &VerifyArgs) -> Result<Table, CliError> {
    let reps: Vec<RepKind> = match a.rep.as_deref() {
        Some("3") => vec![RepKind::ThreeDim],
        Some("6") => vec![RepKind::SixDim],
        _ => vec![RepKind::ThreeDim, RepKind::SixDim],
    };
    let mut t = Table::new(&schema::ALGEBRA_VERIFY);
    for rep in reps {
        let report = verify_dkp_algebra(&beta_matrices(rep))?;
        t.push(vec![
            rep.dim().into(),
            report.triples_checked.into(),
            report.max_deviation.into(),
            report.failing_triples.len().into(),
            report.holds().into(),
        ]);
    }
    Ok(t)
}

fn spectrum_solve(a: &SolveArgs) -> Result<Table, CliError> {
    let p = osc_params(&a.osc)?;
    let opts = solver_options(a.levels.tol)?;
    let mut t = Table::new(&schema::SPECTRUM_SOLVE);
    for q in qnums(&a.levels) {
        let levels = if a.all {
            classified_roots(&p, &q, &opts)?
        } else {
            solve_spectrum(&p, &q, &opts)?
        };
        for lvl in levels {
            t.push(vec![
                q.l.into(),
                q.n_r.into(),
                lvl.energy.into(),
                lvl.branch.as_str().into(),
                lvl.is_admissible().into(),
                lvl.flags.alpha2_positive.into(),
                lvl.flags.kappa2_positive.into(),
                lvl.flags.not_pm_m.into(),
                lvl.flags.window_ok.into(),
                lvl.residual.into(),
            ]);
        }
    }
    Ok(t)
}

fn spectrum_sweep(a: &SweepArgs) -> Result<Table, CliError> {
    let template = osc_params(&a.osc)?;
    let (min, max, steps) = range(&a.range)?;
    let spec = SweepSpec {
        template,
        qnums: qnums(&a.levels),
        axis: axis(a.axis),
        min,
        max,
        steps,
        opts: solver_options(a.levels.tol)?,
    };
    let mut t = Table::new(&schema::SPECTRUM_SWEEP);
    for row in sweep(&spec)? {
        t.push(vec![
            row.axis_value.into(),
            row.l.into(),
            row.n_r.into(),
            row.energy.into(),
            row.branch.as_str().into(),
            row.admissible.into(),
            row.residual.into(),
        ]);
    }
    Ok(t)
}

fn spectrum_window(a: &WindowArgs) -> Result<Table, CliError> {
    let template = osc_params(&a.osc)?;
    let (min, max, steps) = range(&a.range)?;
    let mut t = Table::new(&schema::SPECTRUM_WINDOW);
    for pt in sweep_constraints(&template, axis(a.axis), &a.l, min, max, steps)? {
        t.push(vec![
            pt.axis_value.into(),
            pt.l.into(),
            pt.eps_minus.into(),
            pt.eps_plus.into(),
        ]);
    }
    Ok(t)
}

fn select_state(a: &StateArgs) -> Result<dkp_core::states::BoundState, CliError> {
    let p = osc_params(&a.osc)?;
    let q = QuantumNumbers::new(a.nr, a.l);
    let want = match a.branch {
        BranchArg::Particle => Branch::Particle,
        BranchArg::Antiparticle => Branch::Antiparticle,
    };
    let level = solve_spectrum(&p, &q, &SolverOptions::default())?
        .into_iter()
        .find(|l| l.branch == want)
        .ok_or(CliError::NoLevel {
            n_r: a.nr,
            l: a.l,
            branch: want.as_str(),
        })?;
    Ok(build_state(&p, &q, &level)?)
}

fn state_eval(a: &StateArgs) -> Result<Table, CliError> {
    if a.r_points < 2 || a.phi_points == 0 {
        return Err(usage(
            "--r-points must be at least 2 and --phi-points at least 1",
        ));
    }
    let state = normalize(&select_state(a)?)?.state;
    let mapping = match a.mapping {
        MappingArg::Linear => RadialMapping::Linear,
        MappingArg::Sqrt => RadialMapping::Sqrt,
    };
    let r_min = 0.01 / state.alpha.sqrt();
    let r_max = match a.r_max {
        Some(r) if finite("r-max", r)? > r_min => r,
        Some(_) => return Err(usage(format!("--r-max must exceed {r_min}"))),
        None => state.decay_radius(),
    };
    let grid = FieldGrid::polar(r_min, r_max, a.r_points, a.phi_points, mapping)?;
    let f = sample_fields(&state, &grid)?;
    let mut t = Table::new(&schema::STATE_EVAL);
    for (i, (r, phi)) in grid.points().enumerate() {
        t.push(vec![
            r.into(),
            phi.into(),
            f.phi1[i].re.into(),
            f.phi1[i].im.into(),
            f.phi2[i].re.into(),
            f.phi2[i].im.into(),
            f.phi3[i].re.into(),
            f.phi3[i].im.into(),
            f.j0[i].into(),
        ]);
    }
    Ok(t)
}

fn state_check(a: &StateArgs) -> Result<Table, CliError> {
    let state = select_state(a)?;
    let mut t = Table::new(&schema::STATE_CHECK);
    let mut check = |name: &str, value: f64, tol: Option<f64>| {
        t.push(vec![
            name.into(),
            value.into(),
            tol.into(),
            match tol {
                Some(tol) => Cell::Bool(value.abs() <= tol),
                None => Cell::Empty,
            },
        ]);
    };
    check(
        "kummer_a_plus_nr",
        state.kummer_a + a.nr as f64,
        Some(KUMMER_TOL),
    );

    let radial = FieldGrid::for_state(&state, 2000, 1, RadialMapping::Sqrt)?;
    check(
        "radial_fd_residual",
        residual_second_order(&state, &radial)?.relative,
        Some(1e-6),
    );

    let plane = FieldGrid::for_state(&state, 50, 40, RadialMapping::Linear)?;
    let closure = first_order_closure(&state, &plane, None)?;
    check("closure_eq1", closure.eq1, Some(1e-8));
    check("closure_eq2", closure.eq2, Some(1e-8));
    check("closure_eq3", closure.eq3, Some(1e-8));

    let normalized = normalize(&state)?;
    let charge = total_charge(&normalized.state)?;
    check(
        "charge_abs_minus_one",
        charge.charge.abs() - 1.0,
        Some(1e-8),
    );
    check("charge_sign", normalized.charge_sign, None);
    let again = normalize(&normalized.state)?;
    let drift = (again.state.norm - normalized.state.norm) / normalized.state.norm;
    check("normalization_drift", drift, Some(1e-12));
    check(
        "charge_ratio_six_to_three",
        charge.six_to_three_ratio(),
        None,
    );
    Ok(t)
}

fn lieb_bands(a: &BandsArgs) -> Result<Table, CliError> {
    let vf = finite("vf", a.vf)?;
    if vf <= 0.0 {
        return Err(usage("--vf must be positive"));
    }
    let lp = LiebParams::new(vf, finite("mass", a.mass)?, 1.0)?;
    let (lo, hi, steps) = range(&a.range)?;
    let k2 = finite("k2", a.k2)?;
    let mut t = Table::new(&schema::LIEB_BANDS);
    for row in lieb::band_structure(&inclusive_grid(lo, hi, steps), k2, &lp) {
        let [e1, e2, e3] = row.energies;
        t.push(vec![
            row.k1.into(),
            row.k2.into(),
            e1.into(),
            e2.into(),
            e3.into(),
        ]);
    }
    Ok(t)
}

fn lieb_polarization(a: &PolarizationArgs) -> Result<Table, CliError> {
    if a.sign_m != 1 && a.sign_m != -1 {
        return Err(usage("--sign-m must be 1 or -1"));
    }
    let mut values: Vec<f64> = match (a.range_min, a.range_max) {
        (Some(lo), Some(hi)) => {
            let (lo, hi, steps) = range(&RangeArgs {
                range_min: lo,
                range_max: hi,
                steps: a.steps,
            })?;
            inclusive_grid(lo, hi, steps)
        }
        _ if !a.ptilde2_over_m2.is_empty() => a.ptilde2_over_m2.clone(),
        _ => return Err(usage("give --ptilde2-over-m2 or --range-min/--range-max")),
    };
    for &v in &values {
        finite("ptilde2-over-m2", v)?;
    }
    values.sort_by(f64::total_cmp);
    values.dedup();
    let mut t = Table::new(&schema::LIEB_POLARIZATION);
    for s in values {
        let even = lieb::pi_even(s)?.value;
        let odd = lieb::pi_odd(s, a.sign_m as f64)?.value;
        t.push(vec![s.into(), even.into(), odd.into()]);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Table, CliError> {
        let mut full = vec!["dkp"];
        full.extend_from_slice(args);
        run(&RunConfig::try_from_args(full).unwrap())
    }

    #[test]
    fn negative_values_parse() {
        let t = run_args(&[
            "spectrum", "solve", "--mass", "1", "--omega", "-1", "--l", "-2,1",
        ])
        .unwrap();
        assert!(!t.rows.is_empty());
        let t = run_args(&[
            "lieb",
            "polarization",
            "--ptilde2-over-m2",
            "-4",
            "--sign-m",
            "-1",
        ])
        .unwrap();
        assert!(matches!(t.rows[0][2], Cell::Float(x) if x.is_finite()));
    }

    #[test]
    fn quantum_number_expansion() {
        let levels = LevelArgs {
            l: vec![1, -1, 1],
            nr: None,
            nr_max: Some(1),
            tol: None,
        };
        let q = qnums(&levels);
        assert_eq!(
            q,
            vec![
                QuantumNumbers::new(0, -1),
                QuantumNumbers::new(1, -1),
                QuantumNumbers::new(0, 1),
                QuantumNumbers::new(1, 1)
            ]
        );
    }

    #[test]
    fn inclusive_grid_hits_endpoints() {
        let g = inclusive_grid(0.0, 4.0, 5);
        assert_eq!(g, vec![0.0, 1.0, 2.0, 3.0, 4.0]);
        assert_eq!(inclusive_grid(1.0, 2.0, 1), vec![1.0]);
    }

    #[test]
    fn usage_and_domain_errors_are_distinguished() {
        let e = run_args(&["spectrum", "solve", "--mass", "-1"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = run_args(&["spectrum", "solve", "--mass", "1"]).unwrap_err();
        assert_eq!((e.code(), e.exit_code()), ("DegenerateProblem", 1));
        let e = run_args(&["lieb", "polarization", "--ptilde2-over-m2", "5"]).unwrap_err();
        assert_eq!((e.code(), e.exit_code()), ("AboveThreshold", 1));
    }
}
