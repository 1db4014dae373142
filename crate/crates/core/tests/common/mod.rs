//! Finite-difference oracle shared by the integration suites.

use conehardy_core::{Profile, SpectralData};

/// Discrete `ℒ_H u = -Δu - μ|x|^{-2} u`, computed with a fourth-order
/// five-point second-derivative stencil along each Cartesian axis. Entirely
/// independent of the spherical calculus behind the closed forms: the only
/// thing it shares with the library is pointwise evaluation of the profile.
pub fn discrete_hardy_operator(f: &Profile, spectral: &SpectralData, mu: f64, x: &[f64]) -> f64 {
    let r2: f64 = x.iter().map(|c| c * c).sum();
    let h = 2e-3 * r2.sqrt();
    let eval = |y: &[f64]| {
        let rr = y.iter().map(|c| c * c).sum::<f64>().sqrt();
        let polar = (y[y.len() - 1] / rr).clamp(-1.0, 1.0).acos();
        f.eval(spectral, rr, polar)
    };
    let center = eval(x);
    let stencil = [
        (-2.0, -1.0 / 12.0),
        (-1.0, 4.0 / 3.0),
        (1.0, 4.0 / 3.0),
        (2.0, -1.0 / 12.0),
    ];
    let mut laplacian = 0.0;
    let mut y = x.to_vec();
    for i in 0..x.len() {
        let mut second = -2.5 * center;
        for (offset, coeff) in stencil {
            y[i] = x[i] + offset * h;
            second += coeff * eval(&y);
        }
        y[i] = x[i];
        laplacian += second / (h * h);
    }
    -laplacian - mu / r2 * center
}
