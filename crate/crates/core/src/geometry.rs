//! Cone-like domains `C_Ω^ρ`, spherical charts, surface measures, and
//! tensor-product quadrature grids.
//!
//! The angular base `Ω` is either the full unit sphere `S^{N-1}` or an
//! axisymmetric geodesic cap `{ϑ < θ₀}`, where the polar angle `ϑ ∈ [0, π]`
//! is measured from the cap axis `e_N`. The spherical chart used throughout
//! is
//!
//! ```text
//!   x_N = r cos ϑ_{N-1},   x_k = r cos ϑ_{k-1} ∏_{j=k}^{N-1} sin ϑ_j,
//!   x_1 = r ∏_{j=1}^{N-1} sin ϑ_j,
//! ```
//!
//! so the last angle is the polar angle and `ϑ_{N-1} = 0` maps to the pole
//! `(0, …, 0, r)`. For `N = 2` the single angle is measured from the axis
//! `(0, 1)` and the cap of half-angle `θ₀` is the arc `(-θ₀, θ₀)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::{gamma_half, gl_panels};

use std::f64::consts::PI;

/// Angular base of the cone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum OmegaSpec {
    /// The whole sphere `S^{N-1}`; the cone is the exterior of a ball.
    FullSphere,
    /// Axisymmetric geodesic cap of half-angle `θ₀ ∈ (0, π)`.
    Cap { half_angle: f64 },
}

impl OmegaSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            OmegaSpec::FullSphere => Ok(()),
            OmegaSpec::Cap { half_angle } => {
                if half_angle.is_finite() && half_angle > 0.0 && half_angle < PI {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!(
                        "cap half-angle must lie in (0, pi), got {half_angle}"
                    )))
                }
            }
        }
    }

    /// Polar extent of the base: `θ₀` for a cap, `π` for the full sphere.
    pub fn theta0(&self) -> f64 {
        match *self {
            OmegaSpec::FullSphere => PI,
            OmegaSpec::Cap { half_angle } => half_angle,
        }
    }

    pub fn is_full(&self) -> bool {
        matches!(self, OmegaSpec::FullSphere)
    }
}

/// The cone `C_Ω^ρ = {(r, ω) : r > ρ, ω ∈ Ω}` in dimension `N ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeDomain {
    pub n: usize,
    pub omega: OmegaSpec,
    pub rho: f64,
}

impl ConeDomain {
    pub fn new(n: usize, omega: OmegaSpec, rho: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "dimension must be at least 2, got {n}"
            )));
        }
        if !(rho.is_finite() && rho > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "vertex cutoff rho must be positive, got {rho}"
            )));
        }
        omega.validate()?;
        Ok(ConeDomain { n, omega, rho })
    }
}

/// A point of the cone, carrying both its radial/polar coordinates and the
/// full Cartesian vector (`|cart| = r` up to roundoff).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConePoint {
    pub r: f64,
    /// Polar angle from the cap axis, in `[0, π]`.
    pub polar: f64,
    pub cart: Vec<f64>,
}

impl ConePoint {
    /// Builds a point from the spherical chart; `angles` holds `N-1` angles
    /// with the polar angle last.
    pub fn from_spherical(r: f64, angles: &[f64]) -> Result<Self> {
        let cart = spherical_to_cartesian(r, angles)?;
        let polar = polar_of(&cart, r);
        Ok(ConePoint { r, polar, cart })
    }

    pub fn from_cartesian(cart: Vec<f64>) -> Result<Self> {
        if cart.len() < 2 {
            return Err(Error::InvalidParameter(
                "need at least two Cartesian components".into(),
            ));
        }
        let r = cart.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "point radius must be positive and finite, got {r}"
            )));
        }
        let polar = polar_of(&cart, r);
        Ok(ConePoint { r, polar, cart })
    }

    /// Representative point at azimuth zero: lies in the meridian plane
    /// spanned by `e_1` and the axis `e_N`. Sufficient for axisymmetric
    /// integrands.
    pub fn on_meridian(n: usize, r: f64, polar: f64) -> Self {
        let mut cart = vec![0.0; n];
        cart[0] = r * polar.sin();
        cart[n - 1] = r * polar.cos();
        ConePoint { r, polar, cart }
    }

    /// Spherical coordinates `(r, angles)` with the polar angle last.
    pub fn to_spherical(&self) -> (f64, Vec<f64>) {
        cartesian_to_spherical(&self.cart)
    }
}

fn polar_of(cart: &[f64], r: f64) -> f64 {
    let n = cart.len();
    (cart[n - 1] / r).clamp(-1.0, 1.0).acos()
}

/// Spherical chart -> Cartesian. `angles` holds `N-1` entries, polar last;
/// the first angle is azimuthal and unrestricted, the remaining ones must
/// lie in `[0, π]` (for `N = 2` the single signed angle is unrestricted in
/// `[-π, π]`).
pub fn spherical_to_cartesian(r: f64, angles: &[f64]) -> Result<Vec<f64>> {
    let n = angles.len() + 1;
    if n < 2 {
        return Err(Error::InvalidParameter(
            "need at least one angle (dimension >= 2)".into(),
        ));
    }
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "radius must be positive and finite, got {r}"
        )));
    }
    for (i, a) in angles.iter().enumerate() {
        if !a.is_finite() {
            return Err(Error::InvalidParameter(format!("angle {i} is not finite")));
        }
        // Non-azimuthal angles live in [0, pi].
        if i > 0 && !(0.0..=PI).contains(a) {
            return Err(Error::InvalidParameter(format!(
                "angle {i} must lie in [0, pi], got {a}"
            )));
        }
    }
    let mut cart = vec![0.0; n];
    let mut rem = r;
    for i in (1..n).rev() {
        let a = angles[i - 1];
        cart[i] = rem * a.cos();
        rem *= a.sin();
    }
    cart[0] = rem;
    Ok(cart)
}

/// Cartesian -> spherical chart, inverse of [`spherical_to_cartesian`] up to
/// the usual chart conventions at the poles.
pub fn cartesian_to_spherical(cart: &[f64]) -> (f64, Vec<f64>) {
    let n = cart.len();
    let r = cart.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut angles = vec![0.0; n - 1];
    // Partial norms: tail[k] = |(x_1, ..., x_k)|.
    let mut tail = 0.0_f64;
    let mut tails = vec![0.0; n];
    for k in 0..n {
        tail = tail.hypot(cart[k]);
        tails[k] = tail;
    }
    for i in (1..n - 1).rev() {
        angles[i] = tails[i].atan2(cart[i + 1]);
    }
    // Azimuth is signed; for N = 2 this makes the single angle signed from
    // the axis, matching the arc (-theta0, theta0) picture.
    angles[0] = cart[0].atan2(cart[1]);
    (r, angles)
}

/// Strict membership test for the open cone `{r > ρ, ϑ < θ₀}`.
pub fn contains(domain: &ConeDomain, point: &ConePoint) -> bool {
    if point.cart.len() != domain.n {
        return false;
    }
    if domain.omega.is_full() {
        return point.r > domain.rho;
    }
    point.r > domain.rho && point.polar < domain.omega.theta0()
}

/// Surface area of the unit sphere `S^{n-1}` in `R^n`: `2 π^{n/2} / Γ(n/2)`.
pub fn unit_sphere_area(n: usize) -> f64 {
    2.0 * PI.powf(n as f64 / 2.0) / gamma_half(n)
}

/// Surface measure `σ(Ω)` of the angular base inside `S^{N-1}`.
///
/// For a cap, `σ(Ω) = |S^{N-2}| ∫_0^{θ₀} sin^{N-2} ϑ dϑ`; for `N = 2` the
/// "equatorial sphere" `S^0` has measure 2, so a cap of half-angle `θ₀` is
/// the arc of length `2 θ₀`.
pub fn angular_measure(omega: &OmegaSpec, n: usize) -> f64 {
    match *omega {
        OmegaSpec::FullSphere => unit_sphere_area(n),
        OmegaSpec::Cap { half_angle } => {
            let equator = unit_sphere_area(n - 1);
            let pow = (n - 2) as i32;
            let integral: f64 = gl_panels(0.0, half_angle, 64)
                .iter()
                .map(|(t, w)| w * t.sin().powi(pow))
                .sum();
            equator * integral
        }
    }
}

/// Volume of the truncated cone `{r1 < |x| < r2, ω ∈ Ω}`:
/// `σ(Ω) (r2^N - r1^N) / N`.
pub fn truncated_measure(domain: &ConeDomain, r1: f64, r2: f64) -> Result<f64> {
    if !(r1.is_finite() && r2.is_finite() && r1 >= domain.rho && r1 < r2) {
        return Err(Error::InvalidParameter(format!(
            "need rho <= r1 < r2, got r1 = {r1}, r2 = {r2}, rho = {}",
            domain.rho
        )));
    }
    let nf = domain.n as f64;
    Ok(angular_measure(&domain.omega, domain.n) * (r2.powf(nf) - r1.powf(nf)) / nf)
}

/// Quadrature node of [`sample_grid`]: a meridian-plane point and the full
/// azimuthally-integrated volume weight attached to it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridPoint {
    pub point: ConePoint,
    pub weight: f64,
}

/// Tensor-product quadrature grid on the truncated cone, for axisymmetric
/// integrands `g(r, ϑ)`.
///
/// Radial nodes follow a geometric progression (Gauss panels in `log r`,
/// weighted by `r^{N-1} dr`), because the integrands of interest are power
/// laws in `r` and log-uniform nodes equidistribute their relative error.
/// Angular nodes are Gauss panels in the polar angle weighted by
/// `sin^{N-2} ϑ`; the azimuthal directions are integrated exactly into the
/// weight via the factor `|S^{N-2}|`. Weights therefore sum to
/// [`truncated_measure`].
pub fn sample_grid(
    domain: &ConeDomain,
    r1: f64,
    r2: f64,
    n_r: usize,
    n_ang: usize,
) -> Result<Vec<GridPoint>> {
    if n_r < 2 || n_ang < 2 {
        return Err(Error::InvalidParameter(format!(
            "grid needs at least 2 nodes per direction, got {n_r} x {n_ang}"
        )));
    }
    truncated_measure(domain, r1, r2)?; // validates the radial range
    let radial = log_radial_nodes(r1, r2, n_r, domain.n);
    let angular = polar_nodes(domain.omega.theta0(), n_ang, domain.n);
    let azimuth = unit_sphere_area(domain.n - 1);
    let mut out = Vec::with_capacity(radial.len() * angular.len());
    for &(r, wr) in &radial {
        for &(theta, wt) in &angular {
            out.push(GridPoint {
                point: ConePoint::on_meridian(domain.n, r, theta),
                weight: wr * wt * azimuth,
            });
        }
    }
    Ok(out)
}

/// Radial nodes `(r_i, w_i)` with `Σ w_i g(r_i) ≈ ∫_{r1}^{r2} g(r) r^{N-1} dr`,
/// log-spaced Gauss panels.
pub(crate) fn log_radial_nodes(r1: f64, r2: f64, n_r: usize, n: usize) -> Vec<(f64, f64)> {
    let nf = n as f64;
    gl_panels(r1.ln(), r2.ln(), n_r)
        .into_iter()
        .map(|(t, w)| (t.exp(), w * (nf * t).exp()))
        .collect()
}

/// Polar nodes `(ϑ_j, w_j)` with `Σ w_j h(ϑ_j) ≈ ∫_0^{θ₀} h(ϑ) sin^{N-2} ϑ dϑ`.
pub(crate) fn polar_nodes(theta0: f64, n_ang: usize, n: usize) -> Vec<(f64, f64)> {
    let pow = (n - 2) as i32;
    gl_panels(0.0, theta0, n_ang)
        .into_iter()
        .map(|(t, w)| (t, w * t.sin().powi(pow)))
        .collect()
}
