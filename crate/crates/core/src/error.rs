//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter fails its domain of validity (dimension, angles, exponents, grids).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An iterative solver exhausted its budget without meeting tolerance.
    #[error("solver failed to converge: {0}")]
    NoConvergence(String),

    /// `μ` exceeds the Hardy constant; the indicial quadratic has no real roots.
    #[error("mu = {mu} exceeds the Hardy constant C_H = {hardy}; indicial roots are complex")]
    SupercriticalMu { mu: f64, hardy: f64 },

    /// The convolution integral diverges at infinity: `N - α + γ_f ≥ 0`.
    #[error("divergent convolution tail: N - alpha + gamma_f = {excess} >= 0")]
    DivergentTail { excess: f64 },

    /// Evaluation point lies below the working region `|x| ≥ 2ρ`.
    #[error("evaluation point |x| = {radius} is inside the vertex buffer (needs |x| >= {min_radius})")]
    VertexTooClose { radius: f64, min_radius: f64 },

    /// No radial exponent in the admissible window satisfies the candidate
    /// feasibility conditions with the required slack.
    #[error(
        "no feasible radial exponent in ({gamma_low}, {gamma_high}) for the requested exponents"
    )]
    NoFeasibleGamma { gamma_low: f64, gamma_high: f64 },

    /// No exponent pair `(a, b)` satisfies the system feasibility chain.
    #[error("no feasible exponent pair (a, b) for the system candidate")]
    NoFeasiblePair,

    /// The closed form for the Hardy operator came out nonpositive at a grid
    /// point, so the candidate cannot dominate a positive right-hand side.
    #[error("Hardy operator is nonpositive at grid point (r = {r}, theta = {theta})")]
    NonpositiveLhs { r: f64, theta: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
