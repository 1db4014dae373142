//! `conehardy` — spectral quantities, critical-curve classification, region
//! maps, convolution probes, and certified supersolution candidates for the
//! Hardy operator `-Δ - μ|x|⁻²` with Choquard right-hand sides on cone-like
//! domains.
//!
//! Exit codes: `0` success, `2` configuration error, `3` numerical failure,
//! `4` verification gate refused (the classifier's verdict is echoed).

mod config;
mod render;

use std::env;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use conehardy_core::{
    apriori_check, classify_scalar, classify_system, construct_scalar_candidate,
    construct_system_candidate, convolve, gamma_roots, principal_eigenvalue, region_scan,
    scalar_margin, system_margin, AprioriProbe, ConeDomain, ConePoint, ConvolveOptions,
    CriticalThresholds, Error as CoreError, GammaRoots, MarginGrid, OmegaSpec, Outcome, Profile,
    RegionCell, RegionScan, ScalarParams, SpectralData, SystemParams, Verdict,
};

use config::FileConfig;

/// Spectral quantities, critical-curve classification, region maps, and
/// certified supersolution candidates for Hardy–Choquard inequalities on
/// cone-like domains.
#[derive(Parser)]
#[command(name = "conehardy", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Principal eigenvalue, Hardy constant, and indicial roots
    Eigen(EigenArgs),
    /// Classify one exponent tuple against the critical curves
    Classify(TupleArgs),
    /// Classify a (p, q) rectangle and emit CSV, SVG, or JSON
    Region(RegionArgs),
    /// Evaluate the Riesz convolution of a profile at one point
    Convolve(ConvolveArgs),
    /// Construct a candidate supersolution and certify its margins
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OmegaKind {
    /// The whole unit sphere; the cone is the exterior of a ball
    Full,
    /// Axisymmetric geodesic cap of half-angle theta0
    Cap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatKind {
    Json,
    Csv,
    Svg,
}

#[derive(Args)]
struct CommonArgs {
    /// Ambient dimension N >= 2 [default: 3]
    #[arg(long, value_name = "N")]
    n: Option<usize>,

    /// Angular base of the cone [default: full]
    #[arg(long, value_enum, value_name = "KIND")]
    omega: Option<OmegaKind>,

    /// Cap half-angle in radians, in (0, pi); required with --omega cap
    #[arg(long, value_name = "RAD")]
    theta0: Option<f64>,

    /// Vertex radius rho > 0 [default: 1]
    #[arg(long, value_name = "RHO")]
    rho: Option<f64>,

    /// JSON file of defaults for any long option; explicit flags win
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Write the output here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Output format [default: json; region: csv]
    #[arg(long, value_enum, value_name = "FMT")]
    format: Option<FormatKind>,
}

#[derive(Args)]
struct EigenArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Hardy potential strength mu [default: 0]
    #[arg(long, allow_negative_numbers = true, value_name = "MU")]
    mu: Option<f64>,
}

#[derive(Args)]
struct TupleArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Hardy potential strength mu [default: 0]
    #[arg(long, allow_negative_numbers = true, value_name = "MU")]
    mu: Option<f64>,

    /// Riesz kernel exponent alpha in [0, N) [default: 1]
    #[arg(long, value_name = "ALPHA")]
    alpha: Option<f64>,

    /// Power under the convolution (required)
    #[arg(long, value_name = "P")]
    p: Option<f64>,

    /// Outer power (required)
    #[arg(long, value_name = "Q")]
    q: Option<f64>,

    /// Treat the tuple as the coupled system
    #[arg(long)]
    system: bool,

    /// Second-component power s > 1; required with --system
    #[arg(long, value_name = "S")]
    s: Option<f64>,
}

#[derive(Args)]
struct RegionArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Hardy potential strength mu [default: 0]
    #[arg(long, allow_negative_numbers = true, value_name = "MU")]
    mu: Option<f64>,

    /// Riesz kernel exponent alpha in [0, N) [default: 1]
    #[arg(long, value_name = "ALPHA")]
    alpha: Option<f64>,

    /// Upper end of the p range [default: 8]
    #[arg(long, value_name = "P")]
    p_max: Option<f64>,

    /// Upper end of the q range [default: 8]
    #[arg(long, value_name = "Q")]
    q_max: Option<f64>,

    /// Grid cells along p [default: 200]
    #[arg(long, value_name = "COUNT")]
    n_p: Option<usize>,

    /// Grid cells along q [default: 200]
    #[arg(long, value_name = "COUNT")]
    n_q: Option<usize>,

    /// Scan the coupled system instead of the scalar inequality
    #[arg(long)]
    system: bool,

    /// Second-component power s > 1; required with --system
    #[arg(long, value_name = "S")]
    s: Option<f64>,
}

#[derive(Args)]
struct ConvolveArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Riesz kernel exponent alpha in [0, N) [default: 1]
    #[arg(long, value_name = "ALPHA")]
    alpha: Option<f64>,

    /// Amplitude of the integrand profile [default: 1]
    #[arg(long, value_name = "C")]
    amplitude: Option<f64>,

    /// Radial exponent of the integrand profile (required)
    #[arg(long, allow_negative_numbers = true, value_name = "GAMMA")]
    gamma_f: Option<f64>,

    /// Logarithm power of the profile [default: 0]
    #[arg(long, value_name = "TAU")]
    tau: Option<f64>,

    /// Logarithm base factor; needs sigma * rho > 1 [default: 8 / rho]
    #[arg(long, value_name = "SIGMA")]
    sigma: Option<f64>,

    /// Power of the angular eigenfunction in the profile [default: 1]
    #[arg(long, value_name = "K")]
    phi_power: Option<f64>,

    /// Evaluation radius |x| (required)
    #[arg(long, value_name = "R")]
    x_radius: Option<f64>,

    /// Evaluation polar angle in [0, theta0) [default: 0]
    #[arg(long, value_name = "RAD")]
    x_polar: Option<f64>,

    /// Meridian resolution n, giving an n x n grid with n/2 azimuth nodes
    /// [default: 256 x 256 with 128]
    #[arg(long, value_name = "N")]
    resolution: Option<usize>,

    /// Radial truncation override [default: max(100 |x|, 100 rho)]
    #[arg(long, value_name = "R")]
    r_max: Option<f64>,

    /// Singular-ball exclusion radius override [default: min(|x|/100, dist(x, boundary)/4)]
    #[arg(long, value_name = "EPS")]
    eps_excl: Option<f64>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Hardy potential strength mu [default: 0]
    #[arg(long, allow_negative_numbers = true, value_name = "MU")]
    mu: Option<f64>,

    /// Riesz kernel exponent alpha in [0, N) [default: 1]
    #[arg(long, value_name = "ALPHA")]
    alpha: Option<f64>,

    /// Power under the convolution (required)
    #[arg(long, value_name = "P")]
    p: Option<f64>,

    /// Outer power (required)
    #[arg(long, value_name = "Q")]
    q: Option<f64>,

    /// Certify the coupled system instead of the scalar inequality
    #[arg(long)]
    system: bool,

    /// Second-component power s > 1; required with --system
    #[arg(long, value_name = "S")]
    s: Option<f64>,

    /// Margin grid: radial shells per decade [default: 48]
    #[arg(long, value_name = "COUNT")]
    shells_per_decade: Option<usize>,

    /// Margin grid: interior polar angles for cap domains [default: 48]
    #[arg(long, value_name = "COUNT")]
    n_angular: Option<usize>,

    /// Convolution resolution at each grid point [default: 96 x 64 with 32]
    #[arg(long, value_name = "N")]
    resolution: Option<usize>,

    /// Append the a priori quotient sweep to the report (scalar only)
    #[arg(long)]
    apriori: bool,

    /// Sweep moment m in [0, 1) [default: 0.5]
    #[arg(long, value_name = "M")]
    m: Option<f64>,

    /// Sweep cutoff exponent lambda_c > 4 [default: 5]
    #[arg(long, value_name = "L")]
    lambda_c: Option<f64>,

    /// Comma-separated sweep radii [default: 10,30,100,300 times rho]
    #[arg(long, value_delimiter = ',', value_name = "R1,R2,...")]
    radii: Option<Vec<f64>>,
}

enum Failure {
    Config(String),
    Numerical(String),
    GateRefused(String),
}

impl Failure {
    fn report(self) -> ExitCode {
        match self {
            Failure::Config(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            Failure::Numerical(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(3)
            }
            Failure::GateRefused(verdict) => {
                print!("{verdict}");
                eprintln!(
                    "error: verification gate refused; the classifier does not certify existence"
                );
                ExitCode::from(4)
            }
        }
    }
}

fn lift(e: CoreError) -> Failure {
    match e {
        CoreError::InvalidParameter(msg) => Failure::Config(msg),
        other => Failure::Numerical(other.to_string()),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.report(),
    }
}

fn run() -> Result<(), Failure> {
    init_threads()?;
    match Cli::parse().command {
        Cmd::Eigen(args) => cmd_eigen(args),
        Cmd::Classify(args) => cmd_classify(args),
        Cmd::Region(args) => cmd_region(args),
        Cmd::Convolve(args) => cmd_convolve(args),
        Cmd::Verify(args) => cmd_verify(args),
    }
}

/// Caps the global worker pool when `CONEHARDY_THREADS` is set.
fn init_threads() -> Result<(), Failure> {
    let Ok(raw) = env::var("CONEHARDY_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&k| k >= 1).ok_or_else(|| {
        Failure::Config(format!(
            "CONEHARDY_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Config(format!("cannot size the global thread pool: {e}")))
}

fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

fn require<T>(name: &str, flag: Option<T>, file: Option<T>) -> Result<T, Failure> {
    flag.or(file).ok_or_else(|| {
        Failure::Config(format!(
            "--{name} is required (set it as a flag or in the config file)"
        ))
    })
}

fn load_config(common: &CommonArgs) -> Result<FileConfig, Failure> {
    FileConfig::load(common.config.as_deref()).map_err(Failure::Config)
}

fn resolve_format(
    common: &CommonArgs,
    cfg: &FileConfig,
    default: FormatKind,
) -> Result<FormatKind, Failure> {
    if let Some(f) = common.format {
        return Ok(f);
    }
    match cfg.format.as_deref() {
        None => Ok(default),
        Some("json") => Ok(FormatKind::Json),
        Some("csv") => Ok(FormatKind::Csv),
        Some("svg") => Ok(FormatKind::Svg),
        Some(other) => Err(Failure::Config(format!(
            "format must be json, csv, or svg, got {other:?}"
        ))),
    }
}

fn require_json(common: &CommonArgs, cfg: &FileConfig, command: &str) -> Result<(), Failure> {
    match resolve_format(common, cfg, FormatKind::Json)? {
        FormatKind::Json => Ok(()),
        _ => Err(Failure::Config(format!(
            "{command} emits JSON only; drop --format or set it to json"
        ))),
    }
}

fn build_domain(common: &CommonArgs, cfg: &FileConfig) -> Result<ConeDomain, Failure> {
    let n = pick(common.n, cfg.n, 3);
    let kind = match (common.omega, cfg.omega.as_deref()) {
        (Some(k), _) => k,
        (None, None) | (None, Some("full")) => OmegaKind::Full,
        (None, Some("cap")) => OmegaKind::Cap,
        (None, Some(other)) => {
            return Err(Failure::Config(format!(
                "omega must be \"full\" or \"cap\", got {other:?}"
            )))
        }
    };
    let omega = match kind {
        OmegaKind::Full => OmegaSpec::FullSphere,
        OmegaKind::Cap => OmegaSpec::Cap {
            half_angle: require("theta0", common.theta0, cfg.theta0)?,
        },
    };
    let rho = pick(common.rho, cfg.rho, 1.0);
    ConeDomain::new(n, omega, rho).map_err(lift)
}

fn spectral_for(domain: &ConeDomain) -> Result<SpectralData, Failure> {
    principal_eigenvalue(&domain.omega, domain.n).map_err(lift)
}

/// Indicial roots, or — when `μ` exceeds the Hardy constant — a sentinel
/// with negative discriminant, which the classifier maps to the
/// supercriticality rule rather than an error.
fn roots_or_sentinel(spectral: &SpectralData, mu: f64) -> Result<GammaRoots, Failure> {
    match gamma_roots(spectral, mu) {
        Ok(r) => Ok(r),
        Err(CoreError::SupercriticalMu { .. }) => Ok(GammaRoots {
            gamma_minus: f64::NAN,
            gamma_plus: f64::NAN,
            mu,
            discriminant: -1.0,
        }),
        Err(e) => Err(lift(e)),
    }
}

fn emit(out: Option<&Path>, payload: &str) -> Result<(), Failure> {
    match out {
        None => {
            print!("{payload}");
            Ok(())
        }
        Some(path) => fs::write(path, payload)
            .map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display()))),
    }
}

fn json_payload(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn cmd_eigen(args: EigenArgs) -> Result<(), Failure> {
    let cfg = load_config(&args.common)?;
    require_json(&args.common, &cfg, "eigen")?;
    let domain = build_domain(&args.common, &cfg)?;
    let mu = pick(args.mu, cfg.mu, 0.0);
    let spectral = spectral_for(&domain)?;
    let roots = match gamma_roots(&spectral, mu) {
        Ok(r) => Some(r),
        Err(CoreError::SupercriticalMu { .. }) => None,
        Err(e) => return Err(lift(e)),
    };
    let record = json!({
        "domain": domain,
        "mu": mu,
        "lambda1": spectral.lambda1,
        "hardy_constant": spectral.hardy_constant,
        "gamma_star_minus": roots.map(|r| r.gamma_minus),
        "gamma_star_plus": roots.map(|r| r.gamma_plus),
        "discriminant": roots.map(|r| r.discriminant),
        "supercritical_mu": roots.is_none(),
    });
    emit(args.common.out.as_deref(), &json_payload(&record))
}

fn cmd_classify(args: TupleArgs) -> Result<(), Failure> {
    let cfg = load_config(&args.common)?;
    require_json(&args.common, &cfg, "classify")?;
    let domain = build_domain(&args.common, &cfg)?;
    let mu = pick(args.mu, cfg.mu, 0.0);
    let alpha = pick(args.alpha, cfg.alpha, 1.0);
    let p = require("p", args.p, cfg.p)?;
    let q = require("q", args.q, cfg.q)?;
    let system = args.system || cfg.system.unwrap_or(false);
    let spectral = spectral_for(&domain)?;
    let roots = roots_or_sentinel(&spectral, mu)?;
    let (params, verdict) = if system {
        let s = require("s", args.s, cfg.s)?;
        let params = SystemParams { alpha, p, q, s };
        let verdict = classify_system(&domain, &roots, &params).map_err(lift)?;
        (json!(params), verdict)
    } else {
        let params = ScalarParams { alpha, p, q };
        let verdict = classify_scalar(&domain, &roots, &params).map_err(lift)?;
        (json!(params), verdict)
    };
    let record = json!({
        "domain": domain,
        "mu": mu,
        "system": system,
        "params": params,
        "verdict": verdict,
    });
    emit(args.common.out.as_deref(), &json_payload(&record))
}

fn cmd_region(args: RegionArgs) -> Result<(), Failure> {
    let cfg = load_config(&args.common)?;
    let format = resolve_format(&args.common, &cfg, FormatKind::Csv)?;
    let domain = build_domain(&args.common, &cfg)?;
    let mu = pick(args.mu, cfg.mu, 0.0);
    let alpha = pick(args.alpha, cfg.alpha, 1.0);
    let p_max = pick(args.p_max, cfg.p_max, 8.0);
    let q_max = pick(args.q_max, cfg.q_max, 8.0);
    let n_p = pick(args.n_p, cfg.n_p, 200);
    let n_q = pick(args.n_q, cfg.n_q, 200);
    let system = args.system || cfg.system.unwrap_or(false);
    let spectral = spectral_for(&domain)?;
    let roots = roots_or_sentinel(&spectral, mu)?;
    let (scan, curve) = if system {
        let s = require("s", args.s, cfg.s)?;
        let scan = system_region_scan(&domain, &roots, alpha, s, p_max, q_max, n_p, n_q)?;
        let curve = scan.thresholds.system_curve(s);
        (scan, curve.is_finite().then_some(curve))
    } else {
        let scan = region_scan(&domain, &roots, alpha, p_max, q_max, n_p, n_q).map_err(lift)?;
        (scan, None)
    };
    let payload = match format {
        FormatKind::Csv => scan.to_csv(),
        FormatKind::Svg => render::region_svg(&scan, curve),
        FormatKind::Json => json_payload(&json!({
            "domain": domain,
            "mu": mu,
            "system_curve_value": curve,
            "scan": scan,
        })),
    };
    emit(args.common.out.as_deref(), &payload)
}

/// System counterpart of the library's scalar region scan: same grid
/// convention and row order, cells classified by the system cascade, and the
/// boundary flag marking the bands of `p = p_crit` and
/// `p + q = system_curve(s)`.
fn system_region_scan(
    domain: &ConeDomain,
    roots: &GammaRoots,
    alpha: f64,
    s: f64,
    p_max: f64,
    q_max: f64,
    n_p: usize,
    n_q: usize,
) -> Result<RegionScan, Failure> {
    if n_p == 0 || n_q == 0 || !(p_max > 0.0) || !(q_max > 0.0) {
        return Err(Failure::Config(
            "region scan needs positive grid dimensions and extents".into(),
        ));
    }
    let th = CriticalThresholds::new(domain.n, alpha, roots);
    let curve = th.system_curve(s);
    let mut cells = Vec::with_capacity(n_p * n_q);
    for i in 0..n_p {
        for j in 0..n_q {
            let p = (i + 1) as f64 * p_max / n_p as f64;
            let q = (j + 1) as f64 * q_max / n_q as f64;
            let v =
                classify_system(domain, roots, &SystemParams { alpha, p, q, s }).map_err(lift)?;
            cells.push(RegionCell {
                p,
                q,
                outcome: v.outcome,
                boundary: near_curve(p, th.p_crit) || near_curve(p + q, curve),
                rule_id: v.rules.first().map(|r| r.id),
            });
        }
    }
    Ok(RegionScan {
        thresholds: th,
        n_p,
        n_q,
        p_max,
        q_max,
        cells,
    })
}

/// The same relative band the classifier uses for "on the curve".
fn near_curve(value: f64, threshold: f64) -> bool {
    threshold.is_finite() && (value - threshold).abs() <= 1e-12 * threshold.abs().max(1.0)
}

fn cmd_convolve(args: ConvolveArgs) -> Result<(), Failure> {
    let cfg = load_config(&args.common)?;
    require_json(&args.common, &cfg, "convolve")?;
    let domain = build_domain(&args.common, &cfg)?;
    let alpha = pick(args.alpha, cfg.alpha, 1.0);
    let amplitude = pick(args.amplitude, cfg.amplitude, 1.0);
    let gamma_f = require("gamma-f", args.gamma_f, cfg.gamma_f)?;
    let tau = pick(args.tau, cfg.tau, 0.0);
    let sigma = pick(args.sigma, cfg.sigma, 8.0 / domain.rho);
    let phi_power = pick(args.phi_power, cfg.phi_power, 1.0);
    let x_radius = require("x-radius", args.x_radius, cfg.x_radius)?;
    let x_polar = pick(args.x_polar, cfg.x_polar, 0.0);
    let mut options = match args.resolution.or(cfg.resolution) {
        Some(res) => ConvolveOptions::with_resolution(res),
        None => ConvolveOptions::default(),
    };
    options.r_max = args.r_max.or(cfg.r_max);
    options.eps_excl = args.eps_excl.or(cfg.eps_excl);
    let f = Profile {
        amplitude,
        phi_power,
        gamma: gamma_f,
        tau,
        sigma,
    };
    let spectral = spectral_for(&domain)?;
    let x = ConePoint::on_meridian(domain.n, x_radius, x_polar);
    let result = convolve(&domain, &spectral, &f, alpha, &x, &options).map_err(lift)?;
    let record = json!({
        "domain": domain,
        "alpha": alpha,
        "profile": f,
        "x": { "radius": x_radius, "polar": x_polar },
        "options": options,
        "result": result,
    });
    emit(args.common.out.as_deref(), &json_payload(&record))
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let cfg = load_config(&args.common)?;
    require_json(&args.common, &cfg, "verify")?;
    let domain = build_domain(&args.common, &cfg)?;
    let mu = pick(args.mu, cfg.mu, 0.0);
    let alpha = pick(args.alpha, cfg.alpha, 1.0);
    let p = require("p", args.p, cfg.p)?;
    let q = require("q", args.q, cfg.q)?;
    let system = args.system || cfg.system.unwrap_or(false);
    let apriori = args.apriori || cfg.apriori.unwrap_or(false);
    let spectral = spectral_for(&domain)?;
    let roots = roots_or_sentinel(&spectral, mu)?;

    let mut grid = MarginGrid::for_domain(&domain);
    if let Some(v) = args.shells_per_decade.or(cfg.shells_per_decade) {
        grid.shells_per_decade = v;
    }
    if let Some(v) = args.n_angular.or(cfg.n_angular) {
        grid.n_angular = v;
    }
    if let Some(v) = args.resolution.or(cfg.resolution) {
        grid.conv = ConvolveOptions::with_resolution(v);
    }

    if system {
        if apriori {
            return Err(Failure::Config(
                "the a priori sweep applies to the scalar inequality; drop --apriori or --system"
                    .into(),
            ));
        }
        let s = require("s", args.s, cfg.s)?;
        let params = SystemParams { alpha, p, q, s };
        let verdict = classify_system(&domain, &roots, &params).map_err(lift)?;
        gate(&verdict)?;
        let candidate =
            construct_system_candidate(&domain, &spectral, &roots, &params).map_err(lift)?;
        let margins =
            system_margin(&domain, &spectral, &roots, &params, &candidate, &grid).map_err(lift)?;
        let record = json!({
            "domain": domain,
            "mu": mu,
            "params": params,
            "verdict": verdict,
            "candidate": candidate,
            "margins": margins,
        });
        return emit(args.common.out.as_deref(), &json_payload(&record));
    }

    let params = ScalarParams { alpha, p, q };
    let verdict = classify_scalar(&domain, &roots, &params).map_err(lift)?;
    gate(&verdict)?;
    let candidate = construct_scalar_candidate(&domain, &spectral, &roots, &params).map_err(lift)?;
    let margin = scalar_margin(&domain, &spectral, &roots, &params, &candidate, &grid)
        .map_err(lift)?;
    let mut record = json!({
        "domain": domain,
        "mu": mu,
        "params": params,
        "verdict": verdict,
        "candidate": candidate,
        "margin": margin,
    });
    if apriori {
        let m = pick(args.m, cfg.m, 0.5);
        let lambda_c = pick(args.lambda_c, cfg.lambda_c, 5.0);
        let radii = args
            .radii
            .clone()
            .or_else(|| cfg.radii.clone())
            .unwrap_or_else(|| [10.0, 30.0, 100.0, 300.0].iter().map(|f| f * domain.rho).collect());
        let probe = AprioriProbe { lambda_c, m, radii };
        let report = apriori_check(&domain, &spectral, &params, &candidate, &probe).map_err(lift)?;
        record["apriori"] = serde_json::to_value(&report).expect("reports serialize");
    }
    emit(args.common.out.as_deref(), &json_payload(&record))
}

/// Certification requires an existence verdict; anything else is echoed and
/// refused with exit code 4.
fn gate(verdict: &Verdict) -> Result<(), Failure> {
    if verdict.outcome == Outcome::Exists {
        return Ok(());
    }
    Err(Failure::GateRefused(json_payload(
        &json!({ "verdict": verdict }),
    )))
}
