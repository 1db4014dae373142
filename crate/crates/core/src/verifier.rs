//! Explicit supersolution candidates and numerical certification.
//!
//! In the strictly supercritical regime the inequality
//! `ℒ_H u ≥ (|x|^{-α} ∗ u^p) u^q` admits explicit separable supersolutions.
//! This module constructs them, evaluates `ℒ_H` on them in closed form, and
//! certifies the inequality numerically: the ratio `LHS / RHS` is scanned
//! over a log-radial × angular grid, its infimum is checked to be positive
//! and free of decay trends across radius decades, and the candidate
//! amplitude is then fitted so that the worst margin is exactly 1.
//!
//! The closed form used throughout: for `u = C φ(ω) r^γ log^τ(σ r)` with
//! `L = log(σ r)`,
//!
//! ```text
//!   ℒ_H u = C φ r^{γ-2} [ A L^τ - τ (2γ + N - 2) L^{τ-1} + τ(1-τ) L^{τ-2} ],
//!   A = λ₁ - μ - γ(γ + N - 2),
//! ```
//!
//! so power laws give `A C φ r^{γ-2}` and, at the borderline `μ = C_{H,Ω}`
//! where `γ = γ₋` is the double indicial root, the first two brackets vanish
//! and only the curvature of the logarithm survives.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::{ScalarParams, SystemParams};
use crate::error::{Error, Result};
use crate::geometry::{polar_nodes, unit_sphere_area, ConeDomain, ConePoint};
use crate::quadrature::{convolve, ConvolveOptions, Profile};
use crate::spectral::{GammaRoots, SpectralData};
use crate::util::{gl_panels, pairwise_sum};

/// Relative slack demanded of every strict inequality during candidate
/// construction: `lhs - rhs ≥ SLACK · max(1, |rhs|)`.
const SLACK: f64 = 1e-3;

/// Shape of a constructed supersolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateKind {
    /// `φ(ω) |x|^γ` with `γ` strictly between the indicial roots.
    PowerLaw,
    /// `φ(ω) |x|^{γ₋} log^τ(σ|x|)`, the borderline `μ = C_{H,Ω}` form.
    LogPower,
}

/// A candidate supersolution for the scalar inequality.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ScalarCandidate {
    pub kind: CandidateKind,
    pub profile: Profile,
}

/// A candidate pair for the system: `u` handles the convolution inequality
/// `ℒ_H u ≥ (|x|^{-α} ∗ v^p) v^q`, `v` the pointwise one `ℒ_H v ≥ u^s`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SystemCandidate {
    pub kind: CandidateKind,
    pub u: Profile,
    pub v: Profile,
}

fn slack_ok(lhs: f64, rhs: f64) -> bool {
    lhs - rhs >= SLACK * rhs.abs().max(1.0)
}

/// Builds the explicit scalar supersolution for the given parameters.
///
/// For `μ < C_{H,Ω}` the radial exponent is found by scanning
/// `γ(t) = γ₋ + t(-(N-2)/2 - γ₋)` over `t ∈ {0.05, 0.10, …, 0.95}` and
/// taking the smallest `t` for which all pointwise feasibility conditions
///
/// ```text
///   p|γ| > N - α,    q > 1 + (2-α)/|γ|,    p + q > 1 + (N-α+2)/|γ|
/// ```
///
/// hold with relative slack ≥ 1e-3, along with `|p|γ| - N| ≥ 1e-3` (which
/// keeps the convolution asymptotics off the logarithmic branch). For
/// `μ = C_{H,Ω}` the double root forces the logarithmic shape, with
/// `τ = 1/2` and `σ = 8/ρ` (the construction needs `σ > 4/ρ`).
///
/// Amplitudes are provisional (`C = 1`); they are fitted by the margin scan.
pub fn construct_scalar_candidate(
    domain: &ConeDomain,
    spectral: &SpectralData,
    roots: &GammaRoots,
    params: &ScalarParams,
) -> Result<ScalarCandidate> {
    params.validate(domain)?;
    if spectral.n != domain.n || spectral.omega != domain.omega {
        return Err(Error::InvalidParameter(
            "spectral data does not match the domain".into(),
        ));
    }
    let g = roots.abs_gamma_minus();
    if g == 0.0 {
        return Err(Error::InvalidParameter(
            "no candidate exists in the degenerate case |gamma-| = 0".into(),
        ));
    }
    if roots.discriminant == 0.0 {
        return Ok(ScalarCandidate {
            kind: CandidateKind::LogPower,
            profile: Profile::log_power(1.0, 1.0, roots.gamma_minus, 0.5, 8.0 / domain.rho),
        });
    }
    let nf = domain.n as f64;
    let mid = (2.0 - nf) / 2.0;
    for k in 1..20 {
        let t = 0.05 * k as f64;
        let gamma = roots.gamma_minus + t * (mid - roots.gamma_minus);
        let ag = -gamma;
        let feasible = slack_ok(params.p * ag, nf - params.alpha)
            && slack_ok(params.q, 1.0 + (2.0 - params.alpha) / ag)
            && slack_ok(params.p + params.q, 1.0 + (nf - params.alpha + 2.0) / ag)
            && (params.p * ag - nf).abs() >= SLACK;
        if feasible {
            return Ok(ScalarCandidate {
                kind: CandidateKind::PowerLaw,
                profile: Profile::power_law(1.0, 1.0, gamma),
            });
        }
    }
    Err(Error::NoFeasibleGamma {
        gamma_low: roots.gamma_minus,
        gamma_high: mid,
    })
}

/// `ℒ_H` applied to a separable profile, in closed form. Requires the
/// profile's angular factor to be the principal eigenfunction itself
/// (`phi_power = 1`), which every constructed candidate satisfies.
fn lhs_profile(f: &Profile, spectral: &SpectralData, mu: f64, r: f64, polar: f64) -> f64 {
    debug_assert!(
        f.phi_power == 1.0,
        "closed form needs the eigenfunction as angular factor"
    );
    let nf = spectral.n as f64;
    let a = spectral.lambda1 - mu - f.gamma * (f.gamma + nf - 2.0);
    let shell = f.amplitude * spectral.phi(polar) * r.powf(f.gamma - 2.0);
    if f.tau == 0.0 {
        return shell * a;
    }
    let l = (f.sigma * r).ln();
    let t = f.tau;
    shell
        * (a * l.powf(t) - t * (2.0 * f.gamma + nf - 2.0) * l.powf(t - 1.0)
            + t * (1.0 - t) * l.powf(t - 2.0))
}

/// `ℒ_H u` at `x` for a constructed candidate (exact closed form; the
/// caller guarantees `x` lies in the cone, and `σ|x| > 1` for log shapes).
pub fn lhs_hardy(
    candidate: &ScalarCandidate,
    spectral: &SpectralData,
    roots: &GammaRoots,
    x: &ConePoint,
) -> f64 {
    lhs_profile(&candidate.profile, spectral, roots.mu, x.r, x.polar)
}

/// Grid specification for margin scans: log-spaced radial shells from
/// `r_min` to `r_max`, uniformly spaced interior polar angles (one cell away
/// from the lateral boundary, where both sides of the inequality vanish with
/// `φ` and the ratio degenerates to 0/0), and the quadrature resolution used
/// for the convolution at each grid point.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MarginGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub shells_per_decade: usize,
    pub n_angular: usize,
    pub conv: ConvolveOptions,
}

impl MarginGrid {
    /// Two decades starting at `2ρ`, 48 shells per decade × 48 angles.
    pub fn for_domain(domain: &ConeDomain) -> Self {
        MarginGrid {
            r_min: 2.0 * domain.rho,
            r_max: 200.0 * domain.rho,
            shells_per_decade: 48,
            n_angular: 48,
            conv: ConvolveOptions {
                n_r: 96,
                n_theta: 64,
                n_psi: 32,
                r_max: None,
                eps_excl: None,
            },
        }
    }

    fn shells(&self) -> Vec<f64> {
        let decades = (self.r_max / self.r_min).log10();
        let count = (decades * self.shells_per_decade as f64).round() as usize;
        (0..=count)
            .map(|k| self.r_min * 10f64.powf(k as f64 / self.shells_per_decade as f64))
            .collect()
    }

    /// Polar sample angles; the axisymmetric full-sphere case needs only the
    /// axis itself.
    fn angles(&self, domain: &ConeDomain) -> Vec<f64> {
        if domain.omega.is_full() {
            return vec![0.0];
        }
        let theta0 = domain.omega.theta0();
        (0..self.n_angular)
            .map(|i| theta0 * (i + 1) as f64 / (self.n_angular + 1) as f64)
            .collect()
    }
}

/// Result of a margin scan for one inequality.
///
/// `min_ratio` is the grid infimum of `LHS/RHS` for the candidate as given
/// (unit amplitude from the constructors). `fitted_amplitude` is the
/// amplitude that makes the worst margin exactly `worst_margin_scaled`; for
/// a scalar candidate that target is 1, for system components the common
/// coupling constant decides (see [`system_margin`]).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MarginReport {
    pub grid: MarginGrid,
    pub n_points: usize,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub argmin_radius: f64,
    pub argmin_polar: f64,
    pub per_decade_min: Vec<f64>,
    pub decade_spread: f64,
    pub trend_free: bool,
    pub fitted_amplitude: f64,
    pub worst_margin_scaled: f64,
}

/// Scans ratios over the grid; `rhs` gets `(shell_index, r, ϑ)` and returns
/// the RHS value (the LHS is always the closed-form `ℒ_H`).
fn margin_scan<F>(
    lhs_of: impl Fn(f64, f64) -> f64 + Sync,
    rhs: F,
    shells: &[f64],
    angles: &[f64],
    grid: &MarginGrid,
) -> Result<(Vec<f64>, MarginStats)>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    let points: Vec<(usize, f64, f64)> = shells
        .iter()
        .enumerate()
        .flat_map(|(k, &r)| angles.iter().map(move |&t| (k, r, t)))
        .collect();
    let ratios: Vec<f64> = points
        .par_iter()
        .map(|&(_, r, t)| -> Result<f64> {
            let lhs = lhs_of(r, t);
            if !(lhs > 0.0) {
                return Err(Error::NonpositiveLhs { r, theta: t });
            }
            Ok(lhs / rhs(r, t)?)
        })
        .collect::<Result<Vec<f64>>>()?;

    let n_buckets = ((shells.len() - 1) / grid.shells_per_decade).max(1);
    let mut per_decade = vec![f64::INFINITY; n_buckets];
    let mut stats = MarginStats {
        min: f64::INFINITY,
        max: f64::NEG_INFINITY,
        argmin_r: shells[0],
        argmin_t: angles[0],
    };
    for (&(k, r, t), &ratio) in points.iter().zip(ratios.iter()) {
        let bucket = (k / grid.shells_per_decade).min(n_buckets - 1);
        per_decade[bucket] = per_decade[bucket].min(ratio);
        if ratio < stats.min {
            stats.min = ratio;
            stats.argmin_r = r;
            stats.argmin_t = t;
        }
        stats.max = stats.max.max(ratio);
    }
    Ok((per_decade, stats))
}

struct MarginStats {
    min: f64,
    max: f64,
    argmin_r: f64,
    argmin_t: f64,
}

fn assemble_report(
    grid: &MarginGrid,
    n_points: usize,
    per_decade: Vec<f64>,
    stats: MarginStats,
    fitted_amplitude: f64,
    worst_margin_scaled: f64,
) -> MarginReport {
    let lo = per_decade.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = per_decade.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let trending_down = per_decade.windows(2).all(|w| w[1] < w[0])
        && per_decade.len() > 1
        && per_decade[0] / per_decade[per_decade.len() - 1] > 2.0;
    MarginReport {
        grid: *grid,
        n_points,
        min_ratio: stats.min,
        max_ratio: stats.max,
        argmin_radius: stats.argmin_r,
        argmin_polar: stats.argmin_t,
        per_decade_min: per_decade,
        decade_spread: hi / lo,
        trend_free: !trending_down,
        fitted_amplitude,
        worst_margin_scaled,
    }
}

/// Certifies `ℒ_H u ≥ (|x|^{-α} ∗ u^p) u^q` on the grid.
///
/// The reported `fitted_amplitude` is `min_ratio^{1/(p+q-1)}`: rescaling the
/// candidate by it multiplies the ratio field by the exact inverse of its
/// infimum (homogeneity of degree `1 - (p+q)`), so the scaled candidate
/// attains margin 1 at the argmin and ≥ 1 everywhere else on the grid.
pub fn scalar_margin(
    domain: &ConeDomain,
    spectral: &SpectralData,
    roots: &GammaRoots,
    params: &ScalarParams,
    candidate: &ScalarCandidate,
    grid: &MarginGrid,
) -> Result<MarginReport> {
    params.validate(domain)?;
    let shells = grid.shells();
    let angles = grid.angles(domain);
    let up = candidate.profile.pow(params.p);
    let uq = candidate.profile.pow(params.q);

    // With a constant kernel the convolution no longer depends on x.
    let shared_conv = if params.alpha == 0.0 {
        let x = ConePoint::on_meridian(domain.n, shells[0], angles[0]);
        Some(convolve(domain, spectral, &up, 0.0, &x, &grid.conv)?.value)
    } else {
        None
    };

    let (per_decade, stats) = margin_scan(
        |r, t| lhs_profile(&candidate.profile, spectral, roots.mu, r, t),
        |r, t| {
            let conv = match shared_conv {
                Some(v) => v,
                None => {
                    let x = ConePoint::on_meridian(domain.n, r, t);
                    convolve(domain, spectral, &up, params.alpha, &x, &grid.conv)?.value
                }
            };
            Ok(conv * uq.eval(spectral, r, t))
        },
        &shells,
        &angles,
        grid,
    )?;

    let n_points = shells.len() * angles.len();
    let fitted = stats.min.powf(1.0 / (params.p + params.q - 1.0));
    let worst = stats.min / fitted.powf(params.p + params.q - 1.0);
    Ok(assemble_report(grid, n_points, per_decade, stats, fitted, worst))
}

/// Builds the explicit pair for the system in the strictly supercritical
/// regime.
///
/// The second component's exponent `b` is scanned exactly like the scalar
/// `γ` until the pointwise conditions
///
/// ```text
///   s > 1 + 2/|b|,   q > 1 + (2-α)/|b|,   p|b| > N - α,
///   (p + q - 1/s)|b| > N - α + 2 + 2/s,   p|b| ≠ N
/// ```
///
/// hold with slack. The first component's exponent is the midpoint of the
/// admissible window
///
/// ```text
///   max{ b, N - α + 2 + (p+q) b }  <  a  <  (b-2)/s,
/// ```
///
/// additionally capped by the upper indicial root so that `ℒ_H` stays
/// positive on `r^a` — the ordering chain alone does not guarantee that when
/// `μ > λ₁`, where both indicial roots are negative. At `μ = C_{H,Ω}` both
/// components collapse to the logarithmic shape, which works exactly when
/// `s > 1 + 2/|γ₋|` strictly.
pub fn construct_system_candidate(
    domain: &ConeDomain,
    spectral: &SpectralData,
    roots: &GammaRoots,
    params: &SystemParams,
) -> Result<SystemCandidate> {
    params.validate(domain)?;
    if spectral.n != domain.n || spectral.omega != domain.omega {
        return Err(Error::InvalidParameter(
            "spectral data does not match the domain".into(),
        ));
    }
    let g = roots.abs_gamma_minus();
    if g == 0.0 {
        return Err(Error::InvalidParameter(
            "no candidate exists in the degenerate case |gamma-| = 0".into(),
        ));
    }
    if roots.discriminant == 0.0 {
        // Strict threshold, not the scan slack: any genuine excess works.
        if !(params.s - (1.0 + 2.0 / g) > 1e-9) {
            return Err(Error::NoFeasiblePair);
        }
        let log = Profile::log_power(1.0, 1.0, roots.gamma_minus, 0.5, 8.0 / domain.rho);
        return Ok(SystemCandidate {
            kind: CandidateKind::LogPower,
            u: log,
            v: log,
        });
    }

    let nf = domain.n as f64;
    let mid = (2.0 - nf) / 2.0;
    let (p, q, s, alpha) = (params.p, params.q, params.s, params.alpha);
    for k in 1..20 {
        let t = 0.05 * k as f64;
        let b = roots.gamma_minus + t * (mid - roots.gamma_minus);
        let ab = -b;
        let feasible = slack_ok(s, 1.0 + 2.0 / ab)
            && slack_ok(q, 1.0 + (2.0 - alpha) / ab)
            && slack_ok(p * ab, nf - alpha)
            && slack_ok((p + q - 1.0 / s) * ab, nf - alpha + 2.0 + 2.0 / s)
            && (p * ab - nf).abs() >= SLACK;
        if !feasible {
            continue;
        }
        let lo = b.max(nf - alpha + 2.0 + (p + q) * b);
        let mut hi = (b - 2.0) / s;
        if roots.gamma_plus < 0.0 {
            hi = hi.min(roots.gamma_plus);
        }
        if !slack_ok(hi, lo) {
            continue;
        }
        let a = 0.5 * (lo + hi);
        let lhs_coeff = spectral.lambda1 - roots.mu - a * (a + nf - 2.0);
        let coeff_floor = 1e-9 * (spectral.lambda1 - roots.mu).abs().max(1.0);
        if !(slack_ok(0.0, hi) && lhs_coeff >= coeff_floor) {
            continue;
        }
        return Ok(SystemCandidate {
            kind: CandidateKind::PowerLaw,
            u: Profile::power_law(1.0, 1.0, a),
            v: Profile::power_law(1.0, 1.0, b),
        });
    }
    Err(Error::NoFeasiblePair)
}

/// Both margin reports for the system plus the coupled amplitudes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemMarginReport {
    /// `ℒ_H u` against `(|x|^{-α} ∗ v^p) v^q`.
    pub first: MarginReport,
    /// `ℒ_H v` against `u^s` (convolution-free).
    pub second: MarginReport,
    /// Common coupling constant: the smaller of the two raw margin infima.
    pub c: f64,
    /// Amplitude for `u`: `C^{(p+q+1)/(s(p+q)-1)}`.
    pub c1: f64,
    /// Amplitude for `v`: `C^{(s+1)/(s(p+q)-1)}`.
    pub c2: f64,
}

/// Certifies both system inequalities and fits the coupled amplitudes.
///
/// With `C = min(min_ratio₁, min_ratio₂)` the amplitudes are chosen to
/// satisfy `C₁^{s - 1/(p+q)} = C^{1 + 1/(p+q)}` and
/// `C₂^{p+q - 1/s} = C^{1 + 1/s}`, equivalently `C₂^{p+q} = C₁ C` and
/// `C₁^s = C₂ C`. Rescaling `(u, v) → (C₁ u, C₂ v)` then multiplies the
/// first ratio field by `C₁ / C₂^{p+q} = 1/C` and the second by
/// `C₂ / C₁^s = 1/C`, so both scaled margins are `min_ratioᵢ / C ≥ 1`
/// simultaneously.
pub fn system_margin(
    domain: &ConeDomain,
    spectral: &SpectralData,
    roots: &GammaRoots,
    params: &SystemParams,
    candidate: &SystemCandidate,
    grid: &MarginGrid,
) -> Result<SystemMarginReport> {
    params.validate(domain)?;
    let shells = grid.shells();
    let angles = grid.angles(domain);
    let (p, q, s) = (params.p, params.q, params.s);
    let vp = candidate.v.pow(p);
    let vq = candidate.v.pow(q);
    let us = candidate.u.pow(s);

    let shared_conv = if params.alpha == 0.0 {
        let x = ConePoint::on_meridian(domain.n, shells[0], angles[0]);
        Some(convolve(domain, spectral, &vp, 0.0, &x, &grid.conv)?.value)
    } else {
        None
    };

    let (per_decade1, stats1) = margin_scan(
        |r, t| lhs_profile(&candidate.u, spectral, roots.mu, r, t),
        |r, t| {
            let conv = match shared_conv {
                Some(v) => v,
                None => {
                    let x = ConePoint::on_meridian(domain.n, r, t);
                    convolve(domain, spectral, &vp, params.alpha, &x, &grid.conv)?.value
                }
            };
            Ok(conv * vq.eval(spectral, r, t))
        },
        &shells,
        &angles,
        grid,
    )?;
    let (per_decade2, stats2) = margin_scan(
        |r, t| lhs_profile(&candidate.v, spectral, roots.mu, r, t),
        |r, t| Ok(us.eval(spectral, r, t)),
        &shells,
        &angles,
        grid,
    )?;

    let c = stats1.min.min(stats2.min);
    let denom = s * (p + q) - 1.0;
    let c1 = c.powf((p + q + 1.0) / denom);
    let c2 = c.powf((s + 1.0) / denom);
    let worst1 = stats1.min * c1 / c2.powf(p + q);
    let worst2 = stats2.min * c2 / c1.powf(s);

    let n_points = shells.len() * angles.len();
    Ok(SystemMarginReport {
        first: assemble_report(grid, n_points, per_decade1, stats1, c1, worst1),
        second: assemble_report(grid, n_points, per_decade2, stats2, c2, worst2),
        c,
        c1,
        c2,
    })
}

/// `C¹` cutoff used by the a priori probe: 0 outside `[1, 4]`, smoothstep
/// ramps on `[1, 2]` and `[3, 4]`, exactly 1 on `[2, 3]`.
pub fn cutoff_eta(t: f64) -> f64 {
    let smooth = |u: f64| u * u * (3.0 - 2.0 * u);
    if t <= 1.0 || t >= 4.0 {
        0.0
    } else if t < 2.0 {
        smooth(t - 1.0)
    } else if t <= 3.0 {
        1.0
    } else {
        smooth(4.0 - t)
    }
}

/// Derivative of [`cutoff_eta`] (continuous across all four junctions).
pub fn cutoff_eta_prime(t: f64) -> f64 {
    let smooth_prime = |u: f64| 6.0 * u * (1.0 - u);
    if t <= 1.0 || t >= 4.0 {
        0.0
    } else if t < 2.0 {
        smooth_prime(t - 1.0)
    } else if t <= 3.0 {
        0.0
    } else {
        -smooth_prime(4.0 - t)
    }
}

/// Parameters of the a priori estimate probe: cutoff exponent `λ_c > 4`,
/// moment `m ∈ [0, 1)`, and the sweep of scaling radii `R`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AprioriProbe {
    pub lambda_c: f64,
    pub m: f64,
    pub radii: Vec<f64>,
}

/// Outcome of the a priori sweep: the quotient
///
/// ```text
///   Q(R) = (∫ u^{(p+q-m)/2} φ^{1/2} η_R^{λc/2} dx)²
///          / ( R^{α-2} ∫ u^{1-m} φ η_R^{λc-2} dx )
/// ```
///
/// for each `R`, its spread, and the measured log-log slope against the
/// exponent-counting prediction for a power-law `u`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AprioriReport {
    pub lambda_c: f64,
    pub m: f64,
    pub radii: Vec<f64>,
    pub q_values: Vec<f64>,
    pub max_over_min: f64,
    pub fitted_slope: f64,
    pub predicted_slope: f64,
    /// `max/min < 10³` and no growth trend in `R`.
    pub bounded: bool,
}

/// Evaluates the a priori quotient sweep for a power-law candidate.
///
/// Both integrals live on the annulus `R ≤ |x| ≤ 4R` (the support of
/// `η_R = η(|x|/R)`) and are computed with log-radial × polar Gauss panels;
/// no convolution is involved.
pub fn apriori_check(
    domain: &ConeDomain,
    spectral: &SpectralData,
    params: &ScalarParams,
    solution: &ScalarCandidate,
    probe: &AprioriProbe,
) -> Result<AprioriReport> {
    params.validate(domain)?;
    if solution.kind != CandidateKind::PowerLaw {
        return Err(Error::InvalidParameter(
            "the a priori probe is defined for power-law candidates".into(),
        ));
    }
    if !(probe.lambda_c > 4.0) {
        return Err(Error::InvalidParameter(format!(
            "cutoff exponent must exceed 4, got {}",
            probe.lambda_c
        )));
    }
    if !(0.0..1.0).contains(&probe.m) {
        return Err(Error::InvalidParameter(format!(
            "moment must lie in [0, 1), got {}",
            probe.m
        )));
    }
    if probe.radii.len() < 2 {
        return Err(Error::InvalidParameter(
            "the radius sweep needs at least two values".into(),
        ));
    }
    for &r in &probe.radii {
        if !(r >= domain.rho) {
            return Err(Error::InvalidParameter(format!(
                "sweep radius {r} reaches below the vertex sphere"
            )));
        }
    }

    let n = domain.n;
    let gamma = solution.profile.gamma;
    let c = solution.profile.amplitude;
    let e1 = (params.p + params.q - probe.m) / 2.0;
    let e2 = 1.0 - probe.m;
    let azimuth = unit_sphere_area(n - 1);
    let theta0 = domain.omega.theta0();
    let angles = polar_nodes(theta0, 48, n);
    let phi1: f64 = pairwise_sum(
        &angles
            .iter()
            .map(|&(t, w)| w * spectral.phi(t).powf(e1 + 0.5))
            .collect::<Vec<_>>(),
    );
    let phi2: f64 = pairwise_sum(
        &angles
            .iter()
            .map(|&(t, w)| w * spectral.phi(t).powf(e2 + 1.0))
            .collect::<Vec<_>>(),
    );

    let mut q_values = Vec::with_capacity(probe.radii.len());
    let mut radii = probe.radii.clone();
    radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for &big_r in &radii {
        let radial = gl_panels((big_r).ln(), (4.0 * big_r).ln(), 96);
        let nf = n as f64;
        let mut i1 = Vec::with_capacity(radial.len());
        let mut i2 = Vec::with_capacity(radial.len());
        for &(t, w) in &radial {
            let r = t.exp();
            let vol = w * (nf * t).exp();
            let eta = cutoff_eta(r / big_r);
            i1.push(vol * c.powf(e1) * r.powf(gamma * e1) * eta.powf(probe.lambda_c / 2.0));
            i2.push(vol * c.powf(e2) * r.powf(gamma * e2) * eta.powf(probe.lambda_c - 2.0));
        }
        let lhs = (azimuth * phi1 * pairwise_sum(&i1)).powi(2);
        let rhs = big_r.powf(params.alpha - 2.0) * azimuth * phi2 * pairwise_sum(&i2);
        q_values.push(lhs / rhs);
    }

    let xs: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let ys: Vec<f64> = q_values.iter().map(|q| q.ln()).collect();
    let xm = xs.iter().sum::<f64>() / xs.len() as f64;
    let ym = ys.iter().sum::<f64>() / ys.len() as f64;
    let fitted_slope = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - xm) * (y - ym))
        .sum::<f64>()
        / xs.iter().map(|x| (x - xm) * (x - xm)).sum::<f64>();
    let nf = n as f64;
    let predicted_slope = (2.0 * nf + (params.p + params.q - probe.m) * gamma)
        - (params.alpha - 2.0 + nf + (1.0 - probe.m) * gamma);
    let q_min = q_values.iter().cloned().fold(f64::INFINITY, f64::min);
    let q_max = q_values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let max_over_min = q_max / q_min;
    Ok(AprioriReport {
        lambda_c: probe.lambda_c,
        m: probe.m,
        radii,
        q_values,
        max_over_min,
        fitted_slope,
        predicted_slope,
        bounded: max_over_min.is_finite() && max_over_min < 1e3 && fitted_slope < 0.05,
    })
}
