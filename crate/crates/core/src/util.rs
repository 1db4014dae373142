//! Small numeric helpers shared across modules.

use std::f64::consts::PI;

/// 4-point Gauss–Legendre nodes on [-1, 1].
pub(crate) const GL4_NODES: [f64; 4] = [
    -0.861_136_311_594_052_6,
    -0.339_981_043_584_856_26,
    0.339_981_043_584_856_26,
    0.861_136_311_594_052_6,
];

/// 4-point Gauss–Legendre weights on [-1, 1].
pub(crate) const GL4_WEIGHTS: [f64; 4] = [
    0.347_854_845_137_453_85,
    0.652_145_154_862_546_2,
    0.652_145_154_862_546_2,
    0.347_854_845_137_453_85,
];

/// Composite 4-point Gauss–Legendre rule on [a, b] with at least `n_nodes`
/// nodes. Returns `(node, weight)` pairs; weights sum to `b - a`.
pub(crate) fn gl_panels(a: f64, b: f64, n_nodes: usize) -> Vec<(f64, f64)> {
    let panels = n_nodes.div_ceil(4).max(1);
    let h = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * 4);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (x, w) in GL4_NODES.iter().zip(GL4_WEIGHTS.iter()) {
            out.push((mid + 0.5 * h * x, 0.5 * h * w));
        }
    }
    out
}

/// Γ(m/2) for integer m ≥ 1, via the half-integer recursion (exact values,
/// no general gamma function needed).
pub(crate) fn gamma_half(m: usize) -> f64 {
    debug_assert!(m >= 1);
    let (mut g, mut k) = if m % 2 == 0 { (1.0, 2) } else { (PI.sqrt(), 1) };
    while k < m {
        g *= k as f64 / 2.0;
        k += 2;
    }
    g
}

/// Deterministic pairwise summation: the result depends only on the order of
/// `xs`, never on thread scheduling, and keeps rounding error O(log n).
pub(crate) fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_panels_integrate_polynomials_exactly() {
        // Composite GL4 is exact through degree 7 on each panel.
        let nodes = gl_panels(0.0, 2.0, 8);
        let integral: f64 = nodes.iter().map(|(x, w)| w * x.powi(7)).sum();
        assert!((integral - 2.0_f64.powi(8) / 8.0).abs() < 1e-12);
        let total: f64 = nodes.iter().map(|(_, w)| w).sum();
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn gamma_half_matches_known_values() {
        assert!((gamma_half(1) - PI.sqrt()).abs() < 1e-15);
        assert!((gamma_half(2) - 1.0).abs() < 1e-15);
        assert!((gamma_half(3) - PI.sqrt() / 2.0).abs() < 1e-15);
        assert!((gamma_half(4) - 1.0).abs() < 1e-15);
        assert!((gamma_half(5) - 0.75 * PI.sqrt()).abs() < 1e-15);
        assert!((gamma_half(6) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn pairwise_sum_matches_sequential_on_small_inputs() {
        let xs: Vec<f64> = (0..1000).map(|i| (i as f64).sin()).collect();
        let seq: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - seq).abs() < 1e-9);
    }
}
