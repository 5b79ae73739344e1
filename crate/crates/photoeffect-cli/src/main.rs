//! Command-line front end: threshold reports, limiting-amplitude
//! evaluations, angular tables, flux scans, the stopping-potential
//! eigenvalue check, and the 1D time-domain verification.
//!
//! Exit codes: 0 success, 2 validation error, 3 numerical
//! nonconvergence (partial diagnostics on stderr).

mod config;
mod manifest;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use config::RunConfig;
use manifest::RunManifest;
use output::{report_csv, report_json, OutputFormat, Table, UnitsMode};
use photoeffect::einstein::{self, RadialGrid, StoppingPotentialProblem};
use photoeffect::farfield::{self, FarFieldPattern, SphericalDirection};
use photoeffect::helmholtz::{self, Branch, DrivenProblem, HelmholtzError};
use photoeffect::hydrogen::HydrogenGroundState;
use photoeffect::lap_timedomain::{self, AbsorberSpec, DrivenField1D, Grid1D, LapError};
use photoeffect::photocurrent::{self, AngularLaw, CurrentModel, PhotocurrentError};
use photoeffect::units::{self, Dimension};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "photoeffect",
    version,
    about = "First-order wave theory of the hydrogen photoeffect: limiting amplitudes, angular photocurrent laws, threshold rules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hydrogen ground-state red-bound report (threshold frequency,
    /// wavenumber, wavelength).
    Hydrogen(HydrogenArgs),
    /// Evaluate a limiting amplitude at one point.
    Amplitude(AmplitudeArgs),
    /// Closed-form far-field angular table on a (theta, phi) grid.
    Angular(AngularArgs),
    /// Angular photocurrent law table (Wentzel / Sommerfeld-Schur /
    /// Fisher-Sauter).
    AngularCurrent(AngularCurrentArgs),
    /// Total-flux scan over incident frequencies.
    Flux(FluxArgs),
    /// Threshold report: red bound, maximal energy, stopping voltage.
    Einstein(EinsteinArgs),
    /// Eigenvalue check of the stopping-potential ground-level shift.
    Minimax(MinimaxArgs),
    /// 1D time-domain verification of the limiting amplitude principle.
    VerifyLap(VerifyLapArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Output format of the primary report.
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Emit SI companion fields alongside atomic units.
    #[arg(long, value_enum, default_value = "atomic")]
    units: UnitsMode,
    /// Write the primary output here instead of stdout. Relative paths
    /// resolve under $PHOTOEFFECT_OUTPUT_DIR when that is set.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Write a reproducibility manifest (JSON) to this path.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Plain-text `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct FrequencyArgs {
    /// Incident angular frequency, a.u.
    #[arg(long, conflicts_with = "wavelength")]
    omega: Option<f64>,
    /// Incident vacuum wavelength, Ångström.
    #[arg(long)]
    wavelength: Option<f64>,
}

impl FrequencyArgs {
    fn resolve(&self) -> Result<f64, CliError> {
        match (self.omega, self.wavelength) {
            (Some(w), None) => Ok(w),
            (None, Some(lambda)) => {
                if lambda <= 0.0 {
                    return Err(CliError::Validation("wavelength must be positive".into()));
                }
                Ok(units::wavelength_angstrom_to_omega_au(lambda))
            }
            (None, None) => {
                Err(CliError::Validation("one of --omega or --wavelength is required".into()))
            }
            (Some(_), Some(_)) => unreachable!("clap conflict"),
        }
    }

    fn describe(&self) -> Vec<(String, String)> {
        let mut params = Vec::new();
        if let Some(w) = self.omega {
            params.push(("omega_au".into(), format!("{w}")));
        }
        if let Some(l) = self.wavelength {
            params.push(("wavelength_angstrom".into(), format!("{l}")));
        }
        params
    }
}

#[derive(Args)]
struct HydrogenArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BranchArg {
    Plus,
    Minus,
}

#[derive(Args)]
struct AmplitudeArgs {
    #[command(flatten)]
    frequency: FrequencyArgs,
    /// Evaluation point `x,y,z` in bohr.
    #[arg(long, value_parser = parse_point)]
    point: Point,
    /// Which limiting amplitude to evaluate.
    #[arg(long, value_enum, default_value = "plus")]
    branch: BranchArg,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Clone, Copy)]
struct Point([f64; 3]);

fn parse_point(s: &str) -> Result<Point, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err("expected three comma-separated coordinates".into());
    }
    let mut p = [0.0; 3];
    for (slot, part) in p.iter_mut().zip(&parts) {
        *slot = part.trim().parse::<f64>().map_err(|_| format!("bad coordinate `{part}`"))?;
    }
    Ok(Point(p))
}

#[derive(Args)]
struct AngularArgs {
    #[command(flatten)]
    frequency: FrequencyArgs,
    /// Grid as `<n_theta>x<n_phi>`.
    #[arg(long, default_value = "9x8", value_parser = parse_grid)]
    grid: GridDims,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Clone, Copy)]
struct GridDims(usize, usize);

fn parse_grid(s: &str) -> Result<GridDims, String> {
    let (a, b) = s.split_once('x').ok_or("expected `<n_theta>x<n_phi>`")?;
    let n_theta = a.parse::<usize>().map_err(|_| "bad theta count")?;
    let n_phi = b.parse::<usize>().map_err(|_| "bad phi count")?;
    if n_theta < 2 || n_phi < 1 {
        return Err("grid must be at least 2x1".into());
    }
    Ok(GridDims(n_theta, n_phi))
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LawArg {
    Wentzel,
    Ss,
    Fs,
}

impl From<LawArg> for AngularLaw {
    fn from(law: LawArg) -> Self {
        match law {
            LawArg::Wentzel => AngularLaw::Wentzel,
            LawArg::Ss => AngularLaw::SommerfeldSchur,
            LawArg::Fs => AngularLaw::FisherSauter,
        }
    }
}

#[derive(Args)]
struct AngularCurrentArgs {
    /// Angular law.
    #[arg(long, value_enum, default_value = "wentzel")]
    law: LawArg,
    /// Photoelectron velocity ratio v/c.
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    /// Grid as `<n_theta>x<n_phi>`.
    #[arg(long, default_value = "19x16", value_parser = parse_grid)]
    grid: GridDims,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct FluxArgs {
    /// Frequency scan `start:stop:count` in a.u.
    #[arg(long, value_parser = parse_scan)]
    omega_scan: Scan,
    /// Angular law used for the flux.
    #[arg(long, value_enum, default_value = "wentzel")]
    law: LawArg,
    /// Incident amplitude A.
    #[arg(long, default_value_t = 1.0)]
    amplitude: f64,
    /// Sphere radius, bohr.
    #[arg(long, default_value_t = 100.0)]
    radius: f64,
    /// Gauss order of the sphere quadrature.
    #[arg(long, default_value_t = 48)]
    nodes: usize,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Clone, Copy)]
struct Scan {
    start: f64,
    stop: f64,
    count: usize,
}

fn parse_scan(s: &str) -> Result<Scan, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err("expected `start:stop:count`".into());
    }
    let start = parts[0].parse::<f64>().map_err(|_| "bad start")?;
    let stop = parts[1].parse::<f64>().map_err(|_| "bad stop")?;
    let count = parts[2].parse::<usize>().map_err(|_| "bad count")?;
    if count == 0 || stop < start {
        return Err("need count >= 1 and stop >= start".into());
    }
    Ok(Scan { start, stop, count })
}

#[derive(Args)]
struct EinsteinArgs {
    #[command(flatten)]
    frequency: FrequencyArgs,
    /// Applied stopping voltage, volts.
    #[arg(long, default_value_t = 0.0)]
    ustop: f64,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct MinimaxArgs {
    /// Stopping voltage, volts.
    #[arg(long)]
    ustop: f64,
    /// Plateau radius in units of the Bohr radius.
    #[arg(long, default_value_t = 20.0)]
    plateau: f64,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct VerifyLapArgs {
    /// Driving frequency of the 1D analog, a.u.
    #[arg(long)]
    omega: f64,
    /// Evolution horizon, a.u. of time.
    #[arg(long)]
    t_final: f64,
    /// Disable the absorbing layer (negative control).
    #[arg(long)]
    no_absorber: bool,
    /// Write the extracted profile as CSV to this path.
    #[arg(long)]
    profile_out: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

enum CliError {
    Validation(String),
    Nonconvergence(String),
}

impl From<HelmholtzError> for CliError {
    fn from(e: HelmholtzError) -> Self {
        match e {
            HelmholtzError::QuadratureNonconvergence { .. } => {
                CliError::Nonconvergence(e.to_string())
            }
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<farfield::FarFieldError> for CliError {
    fn from(e: farfield::FarFieldError) -> Self {
        match e {
            farfield::FarFieldError::NonconvergentFit { .. } => {
                CliError::Nonconvergence(e.to_string())
            }
            farfield::FarFieldError::Helmholtz(inner) => inner.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<einstein::EinsteinError> for CliError {
    fn from(e: einstein::EinsteinError) -> Self {
        match e {
            einstein::EinsteinError::EigensolverNonconvergence(_)
            | einstein::EinsteinError::GridTooCoarse { .. } => {
                CliError::Nonconvergence(e.to_string())
            }
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<LapError> for CliError {
    fn from(e: LapError) -> Self {
        match e {
            LapError::InstabilityDetected { .. } | LapError::FitResidualDominant => {
                CliError::Nonconvergence(e.to_string())
            }
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<PhotocurrentError> for CliError {
    fn from(e: PhotocurrentError) -> Self {
        CliError::Validation(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Hydrogen(args) => run_hydrogen(args),
        Command::Amplitude(args) => run_amplitude(args),
        Command::Angular(args) => run_angular(args),
        Command::AngularCurrent(args) => run_angular_current(args),
        Command::Flux(args) => run_flux(args),
        Command::Einstein(args) => run_einstein(args),
        Command::Minimax(args) => run_minimax(args),
        Command::VerifyLap(args) => run_verify_lap(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Nonconvergence(msg)) => {
            eprintln!("numerical nonconvergence: {msg}");
            ExitCode::from(3)
        }
    }
}

fn load_config(common: &CommonArgs) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &common.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read config {path:?}: {e}")))?;
        cfg.apply_file(&text).map_err(CliError::Validation)?;
    }
    Ok(cfg)
}

fn resolve_path(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var("PHOTOEFFECT_OUTPUT_DIR") {
            return PathBuf::from(dir).join(path);
        }
    }
    path.to_path_buf()
}

/// Write the primary rendering to --out or stdout, then the manifest.
fn emit(
    common: &CommonArgs,
    rendered: String,
    mut manifest: RunManifest,
) -> Result<(), CliError> {
    match &common.out {
        Some(path) => {
            let path = resolve_path(path);
            std::fs::write(&path, rendered)
                .map_err(|e| CliError::Validation(format!("cannot write {path:?}: {e}")))?;
            manifest.record_output(&path.display().to_string());
        }
        None => {
            print!("{rendered}");
            manifest.record_output("stdout");
        }
    }
    if let Some(path) = &common.manifest {
        let path = resolve_path(path);
        std::fs::write(&path, report_json(&manifest))
            .map_err(|e| CliError::Validation(format!("cannot write {path:?}: {e}")))?;
    }
    Ok(())
}

fn common_params(common: &CommonArgs) -> Vec<(String, String)> {
    vec![
        ("format".into(), format!("{:?}", common.format).to_lowercase()),
        ("units".into(), format!("{:?}", common.units).to_lowercase()),
    ]
}

fn run_hydrogen(args: HydrogenArgs) -> Result<(), CliError> {
    let _ = load_config(&args.common)?;
    let report = HydrogenGroundState::new().red_bound();
    let rendered = match args.common.format {
        OutputFormat::Json => report_json(&report),
        OutputFormat::Csv => report_csv(&report),
    };
    let manifest = RunManifest::new("hydrogen", common_params(&args.common));
    emit(&args.common, rendered, manifest)
}

#[derive(Serialize)]
struct AmplitudeReport {
    omega_au: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega_si: Option<f64>,
    branch: String,
    point: [f64; 3],
    value_re: f64,
    value_im: f64,
    value_abs: f64,
    abs_error_estimate: f64,
    rel_error_estimate: f64,
    nodes_used: usize,
}

fn run_amplitude(args: AmplitudeArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.common)?;
    let omega = args.frequency.resolve()?;
    let ground = HydrogenGroundState::new();
    let spec = cfg.quadrature;
    let (result, branch_name) = match args.branch {
        BranchArg::Plus => {
            let problem = DrivenProblem::new(omega, ground, Branch::Plus)?;
            (helmholtz::w_plus(args.point.0, &problem, &spec)?, "plus")
        }
        BranchArg::Minus => {
            let problem = DrivenProblem::new(omega, ground, Branch::Minus)?;
            (helmholtz::w_minus(args.point.0, &problem, &spec)?, "minus")
        }
    };
    let report = AmplitudeReport {
        omega_au: omega,
        omega_si: matches!(args.common.units, UnitsMode::Si)
            .then(|| units::from_atomic(omega, Dimension::Frequency).value),
        branch: branch_name.into(),
        point: args.point.0,
        value_re: result.value.re,
        value_im: result.value.im,
        value_abs: result.value.norm(),
        abs_error_estimate: result.abs_error,
        rel_error_estimate: result.rel_error,
        nodes_used: result.nodes_used,
    };
    let rendered = match args.common.format {
        OutputFormat::Json => report_json(&report),
        OutputFormat::Csv => report_csv(&report),
    };
    let mut params = common_params(&args.common);
    params.extend(args.frequency.describe());
    params.push(("branch".into(), branch_name.into()));
    params.push(("point".into(), format!("{:?}", args.point.0)));
    params.extend(quadrature_params(&spec));
    let manifest = RunManifest::new("amplitude", params);
    emit(&args.common, rendered, manifest)
}

fn quadrature_params(spec: &helmholtz::QuadratureSpec) -> Vec<(String, String)> {
    vec![
        ("quadrature.radial_cutoff".into(), format!("{}", spec.radial_cutoff)),
        ("quadrature.node_budget".into(), format!("{}", spec.node_budget)),
        ("quadrature.singular_shell_radius".into(), format!("{}", spec.singular_shell_radius)),
        ("quadrature.target_rel_error".into(), format!("{}", spec.target_rel_error)),
    ]
}

fn run_angular(args: AngularArgs) -> Result<(), CliError> {
    let _ = load_config(&args.common)?;
    let omega = args.frequency.resolve()?;
    let ground = HydrogenGroundState::new();
    let pattern = FarFieldPattern::new(&ground, omega)?;
    let GridDims(n_theta, n_phi) = args.grid;

    let mut table = Table::new(&["theta", "phi", "amplitude_sq", "phase"]);
    for i in 0..n_theta {
        let theta = std::f64::consts::PI * i as f64 / (n_theta - 1) as f64;
        for j in 0..n_phi {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / n_phi as f64;
            let a = farfield::angular_amplitude(SphericalDirection::new(theta, phi), &pattern);
            table.push(vec![theta, phi, a.norm_sqr(), a.arg()]);
        }
    }
    let rendered = table.render(args.common.format);
    let mut params = common_params(&args.common);
    params.extend(args.frequency.describe());
    params.push(("grid".into(), format!("{n_theta}x{n_phi}")));
    let manifest = RunManifest::new("angular", params);
    emit(&args.common, rendered, manifest)
}

fn run_angular_current(args: AngularCurrentArgs) -> Result<(), CliError> {
    let _ = load_config(&args.common)?;
    let model = CurrentModel::new(args.law.into(), args.beta)?;
    let GridDims(n_theta, n_phi) = args.grid;
    let mut table = Table::new(&["theta", "phi", "angular_factor"]);
    for i in 0..n_theta {
        let theta = std::f64::consts::PI * i as f64 / (n_theta - 1) as f64;
        for j in 0..n_phi {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / n_phi as f64;
            let f = photocurrent::angular_factor(&model, SphericalDirection::new(theta, phi));
            table.push(vec![theta, phi, f]);
        }
    }
    let rendered = table.render(args.common.format);
    let mut params = common_params(&args.common);
    params.push(("law".into(), format!("{:?}", args.law).to_lowercase()));
    params.push(("beta".into(), format!("{}", args.beta)));
    params.push(("grid".into(), format!("{n_theta}x{n_phi}")));
    let manifest = RunManifest::new("angular-current", params);
    emit(&args.common, rendered, manifest)
}

fn run_flux(args: FluxArgs) -> Result<(), CliError> {
    let _ = load_config(&args.common)?;
    let ground = HydrogenGroundState::new();
    let si = matches!(args.common.units, UnitsMode::Si);
    let mut columns = vec!["omega", "k_r", "c_abs", "j_infinity", "j_infinity_abs"];
    if si {
        columns.push("omega_si");
    }
    let mut table = Table::new(&columns);
    let scan = args.omega_scan;
    for i in 0..scan.count {
        let omega = if scan.count == 1 {
            scan.start
        } else {
            scan.start + (scan.stop - scan.start) * i as f64 / (scan.count - 1) as f64
        };
        let pattern = FarFieldPattern::new(&ground, omega)?;
        let beta = match args.law {
            LawArg::Wentzel => 0.0,
            _ => photocurrent::beta_from_omega(omega)?,
        };
        let model = CurrentModel::new(args.law.into(), beta)?;
        let report =
            photocurrent::total_flux(&model, args.amplitude, &pattern, args.radius, args.nodes)?;
        let mut row = vec![
            omega,
            pattern.k_r,
            pattern.c.norm(),
            report.j_infinity,
            report.j_infinity_abs,
        ];
        if si {
            row.push(units::from_atomic(omega, Dimension::Frequency).value);
        }
        table.push(row);
    }
    let rendered = table.render(args.common.format);
    let mut params = common_params(&args.common);
    params.push(("omega_scan".into(), format!("{}:{}:{}", scan.start, scan.stop, scan.count)));
    params.push(("law".into(), format!("{:?}", args.law).to_lowercase()));
    params.push(("amplitude".into(), format!("{}", args.amplitude)));
    params.push(("radius".into(), format!("{}", args.radius)));
    params.push(("nodes".into(), format!("{}", args.nodes)));
    let manifest = RunManifest::new("flux", params);
    emit(&args.common, rendered, manifest)
}

#[derive(Serialize)]
struct EinsteinCliReport {
    #[serde(flatten)]
    report: einstein::EinsteinReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega_si: Option<f64>,
}

fn run_einstein(args: EinsteinArgs) -> Result<(), CliError> {
    let _ = load_config(&args.common)?;
    let omega = args.frequency.resolve()?;
    let report = einstein::einstein_report(omega, args.ustop)?;
    let wrapped = EinsteinCliReport {
        report,
        omega_si: matches!(args.common.units, UnitsMode::Si)
            .then(|| units::from_atomic(omega, Dimension::Frequency).value),
    };
    let rendered = match args.common.format {
        OutputFormat::Json => report_json(&wrapped),
        OutputFormat::Csv => report_csv(&wrapped),
    };
    let mut params = common_params(&args.common);
    params.extend(args.frequency.describe());
    params.push(("ustop_volts".into(), format!("{}", args.ustop)));
    let manifest = RunManifest::new("einstein", params);
    emit(&args.common, rendered, manifest)
}

#[derive(Serialize)]
struct MinimaxCliReport {
    u_stop_volts: f64,
    u_stop_au: f64,
    plateau_radius: f64,
    decay_width: f64,
    grid: RadialGrid,
    #[serde(flatten)]
    shift: einstein::ShiftReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    shift_ev: Option<f64>,
}

fn run_minimax(args: MinimaxArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.common)?;
    if args.ustop < 0.0 {
        return Err(CliError::Validation("--ustop must be nonnegative".into()));
    }
    let u_au = units::to_atomic(units::Quantity::new(args.ustop, Dimension::Voltage));
    let plateau = args.plateau;
    let r_max = cfg.minimax_r_max.max(2.0 * plateau + 2.0 * cfg.minimax_decay_width);
    let grid = RadialGrid { r_max, n_points: cfg.minimax_n_points };
    let problem = StoppingPotentialProblem::new(u_au, plateau, cfg.minimax_decay_width, grid)?;
    let shift = einstein::shift_report(&problem)?;
    let report = MinimaxCliReport {
        u_stop_volts: args.ustop,
        u_stop_au: u_au,
        plateau_radius: plateau,
        decay_width: cfg.minimax_decay_width,
        grid,
        shift_ev: matches!(args.common.units, UnitsMode::Si)
            .then(|| units::from_atomic(shift.shift, Dimension::Energy).value),
        shift,
    };
    let rendered = match args.common.format {
        OutputFormat::Json => report_json(&report),
        OutputFormat::Csv => report_csv(&report),
    };
    let mut params = common_params(&args.common);
    params.push(("ustop_volts".into(), format!("{}", args.ustop)));
    params.push(("plateau".into(), format!("{plateau}")));
    params.push(("r_max".into(), format!("{r_max}")));
    params.push(("n_points".into(), format!("{}", cfg.minimax_n_points)));
    params.push(("decay_width".into(), format!("{}", cfg.minimax_decay_width)));
    let manifest = RunManifest::new("minimax", params);
    emit(&args.common, rendered, manifest)
}

#[derive(Serialize)]
struct VerifyLapReport {
    omega: f64,
    t_final: f64,
    absorber_enabled: bool,
    grid: Grid1D,
    dt: f64,
    window: f64,
    discrepancy: f64,
    residual_norm: f64,
    residual_relative: f64,
    runtime_seconds: f64,
}

fn run_verify_lap(args: VerifyLapArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.common)?;
    if args.omega == 0.0 {
        return Err(CliError::Validation("omega must be nonzero".into()));
    }
    let started = std::time::Instant::now();
    let grid = Grid1D { x_max: cfg.lap_x_max, n_points: cfg.lap_n_points };
    let absorber = AbsorberSpec {
        enabled: !args.no_absorber,
        fraction: cfg.lap_absorber_fraction,
        strength: cfg.lap_absorber_strength,
    };
    let width = cfg.lap_source_width;
    let problem = DrivenField1D::new(
        grid,
        cfg.lap_dt,
        args.omega,
        |x| (-0.5 * (x / width).powi(2)).exp(),
        absorber,
        cfg.lap_stride,
    )?;
    let history = lap_timedomain::evolve_driven_1d(&problem, args.t_final)?;
    let window = 10.0 * 2.0 * std::f64::consts::PI / args.omega.abs();
    let extracted = lap_timedomain::extract_limiting_amplitude(&history, args.omega, window)?;
    let stationary = lap_timedomain::driven_limit_profile(&problem.source, grid, args.omega)?;
    let region = lap_timedomain::interior_indices(&grid, &AbsorberSpec::default());
    let discrepancy = lap_timedomain::lap_discrepancy(&extracted.profile, &stationary, &region);

    if let Some(path) = &args.profile_out {
        let mut table = Table::new(&["x", "extracted_re", "extracted_im", "stationary_re", "stationary_im"]);
        for (i, x) in grid.points().iter().enumerate() {
            table.push(vec![
                *x,
                extracted.profile.values[i].re,
                extracted.profile.values[i].im,
                stationary.values[i].re,
                stationary.values[i].im,
            ]);
        }
        let path = resolve_path(path);
        std::fs::write(&path, table.to_csv())
            .map_err(|e| CliError::Validation(format!("cannot write {path:?}: {e}")))?;
    }

    let report = VerifyLapReport {
        omega: args.omega,
        t_final: args.t_final,
        absorber_enabled: absorber.enabled,
        grid,
        dt: cfg.lap_dt,
        window,
        discrepancy,
        residual_norm: extracted.residual_norm,
        residual_relative: extracted.residual_relative,
        runtime_seconds: started.elapsed().as_secs_f64(),
    };
    let rendered = match args.common.format {
        OutputFormat::Json => report_json(&report),
        OutputFormat::Csv => report_csv(&report),
    };
    let mut params = common_params(&args.common);
    params.push(("omega".into(), format!("{}", args.omega)));
    params.push(("t_final".into(), format!("{}", args.t_final)));
    params.push(("absorber".into(), format!("{}", absorber.enabled)));
    params.push(("lap.x_max".into(), format!("{}", cfg.lap_x_max)));
    params.push(("lap.n_points".into(), format!("{}", cfg.lap_n_points)));
    params.push(("lap.dt".into(), format!("{}", cfg.lap_dt)));
    let manifest = RunManifest::new("verify-lap", params);
    emit(&args.common, rendered, manifest)
}
