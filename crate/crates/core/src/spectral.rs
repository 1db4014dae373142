//! Principal eigenvalue and eigenfunction of the Laplace–Beltrami operator
//! on the angular base, Hardy constant, and indicial roots.
//!
//! For an axisymmetric cap `{ϑ < θ₀}` the first Dirichlet eigenfunction is
//! axisymmetric, so the eigenvalue problem reduces to the singular
//! Sturm–Liouville equation
//!
//! ```text
//!   (sin ϑ)^{2-N} d/dϑ ( (sin ϑ)^{N-2} φ' ) + λ φ = 0,   φ'(0) = 0, φ(θ₀) = 0,
//! ```
//!
//! solved here by shooting from a series expansion at the pole and bisecting
//! on λ with a Sturm zero-count criterion. The eigenfunction is normalized
//! to `max φ = φ(0) = 1` and tabulated on Chebyshev-spaced nodes together
//! with its first two derivatives, so interpolation is two-point quintic
//! Hermite (machine-precision smooth, which downstream finite-difference
//! checks rely on).
//!
//! The Hardy constant of the cone is `C_{H,Ω} = λ₁ + ((N-2)/2)²`, and radial
//! power solutions `φ(ω) r^γ` of the linear problem have exponents solving
//! the indicial quadratic `γ (γ + N - 2) = λ₁ - μ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::OmegaSpec;

use std::f64::consts::PI;

const SCHEMA_VERSION: u32 = 1;

/// Series launch offset at the pole and integrator tolerance.
const THETA_START: f64 = 1e-4;
const ODE_TOL: f64 = 1e-12;

/// Number of tabulation nodes for the eigenfunction.
const TABLE_SIZE: usize = 2048;

/// Spectral data of the angular base: principal Dirichlet eigenvalue,
/// Hardy constant, and the tabulated eigenfunction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralData {
    version: u32,
    pub n: usize,
    pub omega: OmegaSpec,
    pub lambda1: f64,
    pub hardy_constant: f64,
    phi: PhiTable,
}

/// Eigenfunction samples on Chebyshev–Lobatto nodes of `[0, θ₀]` with first
/// and second derivatives (the latter from the ODE itself).
#[derive(Debug, Clone, Serialize, Deserialize)]
struct PhiTable {
    theta0: f64,
    /// `φ ≡ 1` (full sphere): evaluation short-circuits.
    constant: bool,
    theta: Vec<f64>,
    value: Vec<f64>,
    deriv: Vec<f64>,
    second: Vec<f64>,
}

impl SpectralData {
    /// Eigenfunction value `φ(ϑ)`, normalized to `φ(0) = max φ = 1`.
    pub fn phi(&self, theta: f64) -> f64 {
        self.phi.eval(theta).0
    }

    /// First derivative `φ'(ϑ)`.
    pub fn phi_deriv(&self, theta: f64) -> f64 {
        self.phi.eval(theta).1
    }

    /// Second derivative `φ''(ϑ)`.
    pub fn phi_second(&self, theta: f64) -> f64 {
        self.phi.eval(theta).2
    }

    pub fn theta0(&self) -> f64 {
        self.phi.theta0
    }

    /// Versioned JSON record for caching.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spectral data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let data: SpectralData = serde_json::from_str(s)
            .map_err(|e| Error::InvalidParameter(format!("bad spectral record: {e}")))?;
        if data.version != SCHEMA_VERSION {
            return Err(Error::InvalidParameter(format!(
                "unsupported spectral record version {}",
                data.version
            )));
        }
        Ok(data)
    }
}

impl PhiTable {
    fn eval(&self, theta: f64) -> (f64, f64, f64) {
        if self.constant {
            return (1.0, 0.0, 0.0);
        }
        let t = theta.clamp(0.0, self.theta0);
        // Segment lookup, then two-point quintic Hermite on it.
        let j = match self
            .theta
            .binary_search_by(|probe| probe.partial_cmp(&t).unwrap())
        {
            Ok(j) => j.min(self.theta.len() - 2),
            Err(j) => j.saturating_sub(1).min(self.theta.len() - 2),
        };
        let h = self.theta[j + 1] - self.theta[j];
        let u = (t - self.theta[j]) / h;
        quintic_hermite(
            u,
            h,
            (self.value[j], self.deriv[j], self.second[j]),
            (self.value[j + 1], self.deriv[j + 1], self.second[j + 1]),
        )
    }
}

/// Two-point quintic Hermite basis matching value, first and second
/// derivative at both segment ends; returns `(f, f', f'')` at parameter `u`.
fn quintic_hermite(u: f64, h: f64, left: (f64, f64, f64), right: (f64, f64, f64)) -> (f64, f64, f64) {
    let (f0, d0, s0) = left;
    let (f1, d1, s1) = right;
    let u2 = u * u;
    let u3 = u2 * u;
    let u4 = u3 * u;
    let u5 = u4 * u;

    let h00 = 1.0 - 10.0 * u3 + 15.0 * u4 - 6.0 * u5;
    let h10 = u - 6.0 * u3 + 8.0 * u4 - 3.0 * u5;
    let h20 = 0.5 * (u2 - 3.0 * u3 + 3.0 * u4 - u5);
    let h01 = 10.0 * u3 - 15.0 * u4 + 6.0 * u5;
    let h11 = -4.0 * u3 + 7.0 * u4 - 3.0 * u5;
    let h21 = 0.5 * (u3 - 2.0 * u4 + u5);
    let f = f0 * h00 + d0 * h * h10 + s0 * h * h * h20 + f1 * h01 + d1 * h * h11 + s1 * h * h * h21;

    let g00 = -30.0 * u2 + 60.0 * u3 - 30.0 * u4;
    let g10 = 1.0 - 18.0 * u2 + 32.0 * u3 - 15.0 * u4;
    let g20 = 0.5 * (2.0 * u - 9.0 * u2 + 12.0 * u3 - 5.0 * u4);
    let g01 = 30.0 * u2 - 60.0 * u3 + 30.0 * u4;
    let g11 = -12.0 * u2 + 28.0 * u3 - 15.0 * u4;
    let g21 = 0.5 * (3.0 * u2 - 8.0 * u3 + 5.0 * u4);
    let d = (f0 * g00 + d0 * h * g10 + s0 * h * h * g20 + f1 * g01 + d1 * h * g11 + s1 * h * h * g21) / h;

    let k00 = -60.0 * u + 180.0 * u2 - 120.0 * u3;
    let k10 = -36.0 * u + 96.0 * u2 - 60.0 * u3;
    let k20 = 1.0 - 9.0 * u + 18.0 * u2 - 10.0 * u3;
    let k01 = 60.0 * u - 180.0 * u2 + 120.0 * u3;
    let k11 = -24.0 * u + 84.0 * u2 - 60.0 * u3;
    let k21 = 3.0 * u - 12.0 * u2 + 10.0 * u3;
    let s = (f0 * k00 + d0 * h * k10 + s0 * h * h * k20 + f1 * k01 + d1 * h * k11 + s1 * h * h * k21)
        / (h * h);

    (f, d, s)
}

/// `C_{H,Ω} = λ₁(Ω) + ((N-2)/2)²`.
pub fn hardy_constant(lambda1: f64, n: usize) -> f64 {
    lambda1 + ((n as f64 - 2.0) / 2.0).powi(2)
}

/// Computes `λ₁(Ω)` and the normalized eigenfunction.
///
/// Full sphere: `λ₁ = 0`, `φ ≡ 1`. Cap: shooting as described in the module
/// docs; `λ₁` is resolved to relative accuracy well below `1e-8`.
pub fn principal_eigenvalue(omega: &OmegaSpec, n: usize) -> Result<SpectralData> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "dimension must be at least 2, got {n}"
        )));
    }
    omega.validate()?;
    match *omega {
        OmegaSpec::FullSphere => Ok(SpectralData {
            version: SCHEMA_VERSION,
            n,
            omega: *omega,
            lambda1: 0.0,
            hardy_constant: hardy_constant(0.0, n),
            phi: PhiTable {
                theta0: PI,
                constant: true,
                theta: vec![0.0, PI],
                value: vec![1.0, 1.0],
                deriv: vec![0.0, 0.0],
                second: vec![0.0, 0.0],
            },
        }),
        OmegaSpec::Cap { half_angle } => {
            let lambda1 = solve_cap_eigenvalue(half_angle, n)?;
            let phi = tabulate_phi(half_angle, n, lambda1)?;
            Ok(SpectralData {
                version: SCHEMA_VERSION,
                n,
                omega: *omega,
                lambda1,
                hardy_constant: hardy_constant(lambda1, n),
                phi,
            })
        }
    }
}

/// Series expansion of the regular solution at the pole:
/// `φ = 1 - λ ϑ² / (2(N-1)) + c₄ ϑ⁴ + O(ϑ⁶)`.
fn series_start(theta: f64, n: usize, lambda: f64) -> (f64, f64, f64) {
    let nf = n as f64;
    let c2 = -lambda / (2.0 * (nf - 1.0));
    let c4 = c2 * (2.0 * (nf - 2.0) / 3.0 - lambda) / (4.0 * (nf + 1.0));
    let t2 = theta * theta;
    let value = 1.0 + c2 * t2 + c4 * t2 * t2;
    let deriv = 2.0 * c2 * theta + 4.0 * c4 * t2 * theta;
    let second = 2.0 * c2 + 12.0 * c4 * t2;
    (value, deriv, second)
}

/// Right-hand side of the first-order system for `y = (φ, φ')`.
#[inline]
fn ode_rhs(theta: f64, y: [f64; 2], n: usize, lambda: f64) -> [f64; 2] {
    let cot = theta.cos() / theta.sin();
    [y[1], -((n as f64 - 2.0) * cot * y[1]) - lambda * y[0]]
}

/// Dormand–Prince 5(4) step with FSAL; returns `(y_new, k_last, error_norm)`.
#[allow(clippy::too_many_arguments)]
fn dopri5_step(
    theta: f64,
    y: [f64; 2],
    k1: [f64; 2],
    h: f64,
    n: usize,
    lambda: f64,
) -> ([f64; 2], [f64; 2], f64) {
    const A2: f64 = 1.0 / 5.0;
    const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
    const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
    const A5: [f64; 4] = [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
    ];
    const A6: [f64; 5] = [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
    ];
    const B5: [f64; 6] = [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];

    let add = |y: [f64; 2], coeffs: &[f64], ks: &[[f64; 2]]| {
        let mut out = y;
        for (c, k) in coeffs.iter().zip(ks.iter()) {
            out[0] += h * c * k[0];
            out[1] += h * c * k[1];
        }
        out
    };

    let k2 = ode_rhs(theta + A2 * h, add(y, &[A2], &[k1]), n, lambda);
    let k3 = ode_rhs(theta + 0.3 * h, add(y, &A3, &[k1, k2]), n, lambda);
    let k4 = ode_rhs(theta + 0.8 * h, add(y, &A4, &[k1, k2, k3]), n, lambda);
    let k5 = ode_rhs(
        theta + 8.0 / 9.0 * h,
        add(y, &A5, &[k1, k2, k3, k4]),
        n,
        lambda,
    );
    let k6 = ode_rhs(theta + h, add(y, &A6, &[k1, k2, k3, k4, k5]), n, lambda);
    let y5 = add(y, &B5, &[k1, k2, k3, k4, k5, k6]);
    let k7 = ode_rhs(theta + h, y5, n, lambda);
    let y4 = add(y, &B4, &[k1, k2, k3, k4, k5, k6, k7]);

    let err = ((y5[0] - y4[0]).abs()).max((y5[1] - y4[1]).abs());
    (y5, k7, err)
}

/// Integrates the system from `(theta, y)` to `theta_end` with adaptive
/// steps; reports whether `φ` changed sign strictly inside the interval.
fn integrate(
    mut theta: f64,
    mut y: [f64; 2],
    theta_end: f64,
    n: usize,
    lambda: f64,
) -> Result<([f64; 2], bool)> {
    let mut k1 = ode_rhs(theta, y, n, lambda);
    let mut h = (theta_end - theta) / 64.0;
    let mut sign_change = false;
    let mut last_sign = y[0].signum();
    let mut steps = 0usize;
    while theta < theta_end {
        if steps > 2_000_000 {
            return Err(Error::NoConvergence(format!(
                "eigenfunction integration exceeded step budget at lambda = {lambda}"
            )));
        }
        steps += 1;
        h = h.min(theta_end - theta);
        let (y_new, k_last, err) = dopri5_step(theta, y, k1, h, n, lambda);
        let scale = ODE_TOL + ODE_TOL * y[0].abs().max(y[1].abs());
        if err <= scale || h <= 1e-15 * theta_end {
            theta += h;
            y = y_new;
            k1 = k_last;
            if y[0] != 0.0 {
                let s = y[0].signum();
                if s != last_sign && theta < theta_end {
                    sign_change = true;
                }
                last_sign = s;
            }
        }
        // Standard PI-free step update with safety factor.
        let factor = if err > 0.0 {
            (0.9 * (scale / err).powf(0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h *= factor;
    }
    Ok((y, sign_change))
}

/// Shoots from the pole series at `THETA_START` to `θ₀`.
fn shoot(theta0: f64, n: usize, lambda: f64) -> Result<([f64; 2], bool)> {
    let start = THETA_START.min(theta0 / 2.0);
    let (value, deriv, _) = series_start(start, n, lambda);
    integrate(start, [value, deriv], theta0, n, lambda)
}

/// `true` when the regular solution for this λ already vanished somewhere in
/// `(0, θ₀]`; monotone in λ by Sturm comparison, so bisection applies.
fn has_zero(theta0: f64, n: usize, lambda: f64) -> Result<bool> {
    let (y, interior_sign_change) = shoot(theta0, n, lambda)?;
    Ok(interior_sign_change || y[0] <= 0.0)
}

fn solve_cap_eigenvalue(theta0: f64, n: usize) -> Result<f64> {
    let mut lo = 0.0_f64;
    let mut hi = 4.0 * (PI / theta0).powi(2);
    let mut grow = 0;
    while !has_zero(theta0, n, hi)? {
        hi *= 2.0;
        grow += 1;
        if grow > 60 {
            return Err(Error::NoConvergence(
                "failed to bracket the principal eigenvalue".into(),
            ));
        }
    }
    for _ in 0..90 {
        let mid = 0.5 * (lo + hi);
        if has_zero(theta0, n, mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-13 * hi.max(1.0) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Final integration pass at the converged eigenvalue, sampling the
/// eigenfunction on Chebyshev–Lobatto nodes (clustered at both endpoints).
fn tabulate_phi(theta0: f64, n: usize, lambda: f64) -> Result<PhiTable> {
    let m = TABLE_SIZE;
    let nodes: Vec<f64> = (0..m)
        .map(|j| theta0 / 2.0 * (1.0 - (PI * j as f64 / (m as f64 - 1.0)).cos()))
        .collect();

    let mut value = vec![0.0; m];
    let mut deriv = vec![0.0; m];
    let mut second = vec![0.0; m];

    let start = THETA_START.min(theta0 / 2.0);
    let mut theta = start;
    let mut y = {
        let (v, d, _) = series_start(start, n, lambda);
        [v, d]
    };
    for j in 0..m {
        let t = nodes[j];
        if t <= start {
            let (v, d, s) = series_start(t, n, lambda);
            value[j] = v;
            deriv[j] = d;
            second[j] = s;
            continue;
        }
        let (y_new, _) = integrate(theta, y, t, n, lambda)?;
        theta = t;
        y = y_new;
        value[j] = y[0];
        deriv[j] = y[1];
        // Second derivative straight from the ODE (regular away from 0).
        second[j] = ode_rhs(t, y, n, lambda)[1];
    }
    // φ(0) = 1 from the series; renormalize defensively anyway so that
    // max φ = 1 holds exactly on the table.
    let scale = value
        .iter()
        .cloned()
        .fold(f64::MIN, f64::max);
    for j in 0..m {
        value[j] /= scale;
        deriv[j] /= scale;
        second[j] /= scale;
    }
    Ok(PhiTable {
        theta0,
        constant: false,
        theta: nodes,
        value,
        deriv,
        second,
    })
}

/// Roots of the indicial quadratic `γ (γ + N - 2) = λ₁ - μ`.
///
/// `γ₋ ≤ (2-N)/2 ≤ γ₊` always holds; the discriminant is
/// `D = (N-2)² + 4 (λ₁ - μ)`, nonnegative exactly when `μ ≤ C_{H,Ω}`, with a
/// double root `(2-N)/2` at `μ = C_{H,Ω}`. Note that for `λ₁ < μ ≤ C_{H,Ω}`
/// *both* roots are negative — `γ₊` is an "upper" root only in the order
/// sense, not in sign.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GammaRoots {
    pub gamma_minus: f64,
    pub gamma_plus: f64,
    pub mu: f64,
    pub discriminant: f64,
}

impl GammaRoots {
    /// `|γ₋|`; the decay rate that parametrizes every critical threshold.
    pub fn abs_gamma_minus(&self) -> f64 {
        self.gamma_minus.abs()
    }

    /// Degenerate case `γ₋ = 0`, only possible for `N = 2`, `μ = λ₁`.
    pub fn is_degenerate(&self) -> bool {
        self.gamma_minus == 0.0
    }
}

/// Solves the indicial quadratic for the given `μ ≤ C_{H,Ω}`.
///
/// The smaller root is computed in the cancellation-free branch and the
/// larger one through the product of roots `γ₋ γ₊ = -(λ₁ - μ)`, which keeps
/// both residuals at machine level; the double root at `μ = C_{H,Ω}` comes
/// out as exactly `(2-N)/2`.
pub fn gamma_roots(spectral: &SpectralData, mu: f64) -> Result<GammaRoots> {
    if !mu.is_finite() {
        return Err(Error::InvalidParameter(format!("mu must be finite, got {mu}")));
    }
    let nm2 = spectral.n as f64 - 2.0;
    let mut disc = nm2 * nm2 + 4.0 * (spectral.lambda1 - mu);
    // λ₁ itself is known only to ~1e-13, so a μ meant to sit exactly at the
    // Hardy constant can land a few ulps past it; snap those to the double
    // root instead of rejecting them.
    let scale = (nm2 * nm2 + 4.0 * (spectral.lambda1 - mu).abs()).max(f64::MIN_POSITIVE);
    if disc.abs() <= 1e-12 * scale {
        disc = 0.0;
    }
    if disc < 0.0 {
        return Err(Error::SupercriticalMu {
            mu,
            hardy: spectral.hardy_constant,
        });
    }
    let sqrt_d = disc.sqrt();
    let gamma_minus = -(nm2 + sqrt_d) / 2.0;
    let gamma_plus = if gamma_minus != 0.0 {
        -(spectral.lambda1 - mu) / gamma_minus
    } else {
        0.0
    };
    Ok(GammaRoots {
        gamma_minus,
        gamma_plus,
        mu,
        discriminant: disc,
    })
}
