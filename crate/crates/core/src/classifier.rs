//! Existence / nonexistence classification of parameter tuples.
//!
//! Every threshold is a function of the decay rate `|γ₋|` of the linear
//! problem on the cone:
//!
//! ```text
//!   p_crit  = (N - α) / |γ₋|
//!   pq_crit = 1 + (N - α + 2) / |γ₋|          (threshold for p + q)
//!   q_min   = 1 + max(0, (2 - α) / |γ₋|)
//!   s_min   = 1 + 2 / |γ₋|                    (systems only)
//! ```
//!
//! all `+∞` in the degenerate case `|γ₋| = 0` (only `N = 2`, `μ = λ₁`).
//! Outcomes carry the list of rules that fired, so region scans can report
//! which criterion decided each cell. Comparisons against the critical
//! curves use a relative band of width `1e-12`: values inside the band are
//! treated as *on* the curve, and the equality rules are evaluated before
//! the strict ones so boundary points are never mis-attributed.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ConeDomain;
use crate::spectral::GammaRoots;

/// Relative half-width of the "on the curve" band.
const CURVE_BAND: f64 = 1e-12;

/// Scalar problem parameters: convolution exponent `α`, power `p` under the
/// convolution, outer power `q`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ScalarParams {
    pub alpha: f64,
    pub p: f64,
    pub q: f64,
}

/// System parameters: the scalar triple plus the coupling power `s` of the
/// second inequality.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SystemParams {
    pub alpha: f64,
    pub p: f64,
    pub q: f64,
    pub s: f64,
}

impl ScalarParams {
    pub fn validate(&self, domain: &ConeDomain) -> Result<()> {
        let n = domain.n as f64;
        if !(self.alpha >= 0.0 && self.alpha < n) {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie in [0, N); got alpha = {}, N = {}",
                self.alpha, domain.n
            )));
        }
        for (name, v) in [("p", self.p), ("q", self.q)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be a positive finite number, got {v}"
                )));
            }
        }
        Ok(())
    }
}

impl SystemParams {
    pub fn validate(&self, domain: &ConeDomain) -> Result<()> {
        ScalarParams {
            alpha: self.alpha,
            p: self.p,
            q: self.q,
        }
        .validate(domain)?;
        if !(self.s > 1.0 && self.s.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "s must be a finite number greater than 1, got {}",
                self.s
            )));
        }
        Ok(())
    }

    pub fn scalar(&self) -> ScalarParams {
        ScalarParams {
            alpha: self.alpha,
            p: self.p,
            q: self.q,
        }
    }
}

/// Critical thresholds for a given `(N, α, |γ₋|)`.
///
/// In the degenerate case all thresholds are `+∞`; since JSON cannot
/// represent infinities, the flag travels alongside them.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CriticalThresholds {
    pub p_crit: f64,
    pub pq_crit: f64,
    pub q_min: f64,
    pub s_min: f64,
    pub abs_gamma_minus: f64,
    pub degenerate: bool,
}

impl CriticalThresholds {
    pub fn new(n: usize, alpha: f64, roots: &GammaRoots) -> Self {
        let g = roots.abs_gamma_minus();
        let nf = n as f64;
        if g == 0.0 {
            return CriticalThresholds {
                p_crit: f64::INFINITY,
                pq_crit: f64::INFINITY,
                q_min: f64::INFINITY,
                s_min: f64::INFINITY,
                abs_gamma_minus: 0.0,
                degenerate: true,
            };
        }
        CriticalThresholds {
            p_crit: (nf - alpha) / g,
            pq_crit: 1.0 + (nf - alpha + 2.0) / g,
            q_min: 1.0 + (0.0f64).max((2.0 - alpha) / g),
            s_min: 1.0 + 2.0 / g,
            abs_gamma_minus: g,
            degenerate: false,
        }
    }

    /// Critical curve for systems in the `(s, p + q)` plane:
    /// `p + q` must exceed `s_min / s + (pq_crit - 1)`.
    pub fn system_curve(&self, s: f64) -> f64 {
        if self.degenerate {
            return f64::INFINITY;
        }
        self.s_min / s + (self.pq_crit - 1.0)
    }
}

/// Tolerance-banded comparison helpers: a value within relative `CURVE_BAND`
/// of the threshold counts as on it.
fn on_curve(value: f64, threshold: f64) -> bool {
    threshold.is_finite() && (value - threshold).abs() <= CURVE_BAND * threshold.abs().max(1.0)
}

fn above(value: f64, threshold: f64) -> bool {
    value > threshold + CURVE_BAND * threshold.abs().max(1.0)
}

fn below(value: f64, threshold: f64) -> bool {
    !threshold.is_finite() || value < threshold - CURVE_BAND * threshold.abs().max(1.0)
}

/// Classification outcome for one parameter tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Exists,
    NotExists,
    Undetermined,
}

/// A criterion that fired, with a short stable identifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rule {
    pub id: &'static str,
    pub citation: &'static str,
}

impl Rule {
    const fn new(id: &'static str, citation: &'static str) -> Self {
        Rule { id, citation }
    }
}

const SUPERCRITICAL: Rule = Rule::new(
    "thm1a",
    "no positive supersolutions for mu above the Hardy constant",
);
const P_SUBCRITICAL: Rule = Rule::new("thm1b-i", "p at or below (N - alpha) / |gamma-|");
const SUM_SUBCRITICAL: Rule = Rule::new("thm1b-ii", "p + q below 1 + (N - alpha + 2) / |gamma-|");
const SUM_CRITICAL: Rule = Rule::new(
    "thm1b-iii",
    "p + q on the critical curve with q > 1",
);
const SCALAR_EXISTS: Rule = Rule::new(
    "thm2",
    "explicit supersolution in the strictly supercritical regime",
);
const SYS_SUPERCRITICAL: Rule = Rule::new(
    "thm14a",
    "no positive system supersolutions for mu above the Hardy constant",
);
const SYS_NOT_EXISTS: Rule = Rule::new(
    "thm14b-i",
    "p + q >= 2 with p subcritical or p + q below the system curve",
);
const SYS_EXISTS: Rule = Rule::new(
    "thm14b-ii",
    "explicit system supersolution above all critical curves",
);

/// Full verdict: outcome, the rules that decided it, the thresholds the
/// tuple was tested against, and (for systems) the curve value at `s`.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub rules: Vec<Rule>,
    pub thresholds: CriticalThresholds,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system_curve_value: Option<f64>,
}

/// Classifies the scalar inequality on the cone described by `roots`.
///
/// Supercriticality of `μ` is already encoded in `roots` (constructing them
/// fails for `μ > C_{H,Ω}`), so the first rule here only fires when the
/// caller passes a negative discriminant through deliberately.
pub fn classify_scalar(
    domain: &ConeDomain,
    roots: &GammaRoots,
    params: &ScalarParams,
) -> Result<Verdict> {
    params.validate(domain)?;
    let th = CriticalThresholds::new(domain.n, params.alpha, roots);
    let mut rules = Vec::new();

    if roots.discriminant < 0.0 {
        return Ok(Verdict {
            outcome: Outcome::NotExists,
            rules: vec![SUPERCRITICAL],
            thresholds: th,
            system_curve_value: None,
        });
    }

    let sum = params.p + params.q;

    // Nonexistence owns its boundary here, so the band is folded in:
    // p ≤ p_crit + band.
    if !above(params.p, th.p_crit) {
        return Ok(Verdict {
            outcome: Outcome::NotExists,
            rules: vec![P_SUBCRITICAL],
            thresholds: th,
            system_curve_value: None,
        });
    }
    // The sum curve is checked for equality before the strict comparison so
    // that boundary points cite the boundary rule, whose hypothesis (q > 1)
    // differs from the strict one's.
    if on_curve(sum, th.pq_crit) {
        return if params.q > 1.0 {
            Ok(Verdict {
                outcome: Outcome::NotExists,
                rules: vec![SUM_CRITICAL],
                thresholds: th,
                system_curve_value: None,
            })
        } else {
            Ok(Verdict {
                outcome: Outcome::Undetermined,
                rules,
                thresholds: th,
                system_curve_value: None,
            })
        };
    }
    if below(sum, th.pq_crit) {
        return Ok(Verdict {
            outcome: Outcome::NotExists,
            rules: vec![SUM_SUBCRITICAL],
            thresholds: th,
            system_curve_value: None,
        });
    }
    if params.q > th.q_min && above(sum, th.pq_crit) && above(params.p, th.p_crit) {
        rules.push(SCALAR_EXISTS);
        return Ok(Verdict {
            outcome: Outcome::Exists,
            rules,
            thresholds: th,
            system_curve_value: None,
        });
    }
    Ok(Verdict {
        outcome: Outcome::Undetermined,
        rules,
        thresholds: th,
        system_curve_value: None,
    })
}

/// Classifies the coupled system.
pub fn classify_system(
    domain: &ConeDomain,
    roots: &GammaRoots,
    params: &SystemParams,
) -> Result<Verdict> {
    params.validate(domain)?;
    let th = CriticalThresholds::new(domain.n, params.alpha, roots);
    let curve = th.system_curve(params.s);
    let curve_value = if curve.is_finite() { Some(curve) } else { None };

    if roots.discriminant < 0.0 {
        return Ok(Verdict {
            outcome: Outcome::NotExists,
            rules: vec![SYS_SUPERCRITICAL],
            thresholds: th,
            system_curve_value: curve_value,
        });
    }

    let sum = params.p + params.q;
    if sum >= 2.0 && (!above(params.p, th.p_crit) || below(sum, curve)) {
        return Ok(Verdict {
            outcome: Outcome::NotExists,
            rules: vec![SYS_NOT_EXISTS],
            thresholds: th,
            system_curve_value: curve_value,
        });
    }
    if params.s > th.s_min
        && params.q > th.q_min
        && above(params.p, th.p_crit)
        && above(sum, curve)
    {
        return Ok(Verdict {
            outcome: Outcome::Exists,
            rules: vec![SYS_EXISTS],
            thresholds: th,
            system_curve_value: curve_value,
        });
    }
    Ok(Verdict {
        outcome: Outcome::Undetermined,
        rules: Vec::new(),
        thresholds: th,
        system_curve_value: curve_value,
    })
}

/// One cell of a region scan over the `(p, q)` plane.
#[derive(Debug, Clone, Serialize)]
pub struct RegionCell {
    pub p: f64,
    pub q: f64,
    pub outcome: Outcome,
    /// The tuple sits inside the tolerance band of some critical curve.
    pub boundary: bool,
    pub rule_id: Option<&'static str>,
}

/// Result of scanning a rectangle `(0, p_max] × (0, q_max]`.
#[derive(Debug, Clone, Serialize)]
pub struct RegionScan {
    pub thresholds: CriticalThresholds,
    pub n_p: usize,
    pub n_q: usize,
    pub p_max: f64,
    pub q_max: f64,
    pub cells: Vec<RegionCell>,
}

/// Classifies every node of a uniform grid on `(0, p_max] × (0, q_max]`
/// (`p_i = (i + 1) p_max / n_p`, likewise for `q`), in row-major order with
/// `q` varying fastest.
pub fn region_scan(
    domain: &ConeDomain,
    roots: &GammaRoots,
    alpha: f64,
    p_max: f64,
    q_max: f64,
    n_p: usize,
    n_q: usize,
) -> Result<RegionScan> {
    if n_p == 0 || n_q == 0 || !(p_max > 0.0) || !(q_max > 0.0) {
        return Err(Error::InvalidParameter(
            "region scan needs positive grid dimensions and extents".into(),
        ));
    }
    ScalarParams { alpha, p: 1.0, q: 1.0 }.validate(domain)?;
    let th = CriticalThresholds::new(domain.n, alpha, roots);

    let cells: Vec<RegionCell> = (0..n_p * n_q)
        .into_par_iter()
        .map(|idx| {
            let i = idx / n_q;
            let j = idx % n_q;
            let p = (i + 1) as f64 * p_max / n_p as f64;
            let q = (j + 1) as f64 * q_max / n_q as f64;
            let v = classify_scalar(domain, roots, &ScalarParams { alpha, p, q })
                .expect("grid parameters are valid by construction");
            let boundary = on_curve(p, th.p_crit) || on_curve(p + q, th.pq_crit);
            RegionCell {
                p,
                q,
                outcome: v.outcome,
                boundary,
                rule_id: v.rules.first().map(|r| r.id),
            }
        })
        .collect();

    Ok(RegionScan {
        thresholds: th,
        n_p,
        n_q,
        p_max,
        q_max,
        cells,
    })
}

impl RegionScan {
    /// CSV rendering, one row per cell: `p,q,outcome,boundary_flag`.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.cells.len() * 32 + 32);
        out.push_str("p,q,outcome,boundary_flag\n");
        for c in &self.cells {
            let outcome = match c.outcome {
                Outcome::Exists => "exists",
                Outcome::NotExists => "not_exists",
                Outcome::Undetermined => "undetermined",
            };
            out.push_str(&format!(
                "{:.12},{:.12},{},{}\n",
                c.p,
                c.q,
                outcome,
                if c.boundary { 1 } else { 0 }
            ));
        }
        out
    }
}
