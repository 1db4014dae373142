//! Numerical toolkit for the Hardy operator `L_H u = -Δu - μ|x|⁻²u` on
//! unbounded cone-like domains `C_Ω^ρ = {(r, ω) : r > ρ, ω ∈ Ω}` with
//! `Ω ⊆ S^{N-1}`, and for inequalities of Choquard type
//!
//! ```text
//!     L_H u ≥ (|x|^{-α} * u^p) u^q      on C_Ω^ρ
//! ```
//!
//! together with the associated two-component systems. The crate computes
//! the spectral quantities that govern such inequalities (principal
//! Dirichlet eigenvalue of the spherical cap, Hardy constant, indicial
//! roots), classifies exponent tuples `(μ, α, p, q)` against the critical
//! curves, constructs explicit supersolution candidates, and certifies them
//! by direct quadrature of the convolution term on radial-angular grids.
//!
//! Modules:
//!
//! * [`geometry`] — cone domains, spherical charts, surface measures, and
//!   tensor-product quadrature grids;
//! * [`spectral`] — principal eigenvalue/eigenfunction of the
//!   Laplace–Beltrami Dirichlet problem on a cap, Hardy constant, and the
//!   indicial quadratic;
//! * [`classifier`] — critical thresholds and the existence/nonexistence
//!   rule cascade, plus parameter-plane scans;
//! * [`quadrature`] — Riesz-potential convolutions of separable profiles
//!   over the cone, with truncation tails and singularity handling;
//! * [`verifier`] — explicit candidate construction, closed forms for the
//!   Hardy operator on those candidates, pointwise margin certification,
//!   and the a-priori integral estimate probe.

pub mod classifier;
pub mod error;
pub mod geometry;
pub mod quadrature;
pub mod spectral;
pub mod verifier;

mod util;

pub use classifier::{
    classify_scalar, classify_system, region_scan, CriticalThresholds, Outcome, RegionCell,
    RegionScan, Rule, ScalarParams, SystemParams, Verdict,
};
pub use error::{Error, Result};
pub use geometry::{
    angular_measure, cartesian_to_spherical, contains, sample_grid, spherical_to_cartesian,
    truncated_measure, unit_sphere_area, ConeDomain, ConePoint, GridPoint, OmegaSpec,
};
pub use quadrature::{
    convolve, convolve_oracle_radial, verify_kernel_bounds, ConvolutionResult, ConvolveOptions,
    KernelBoundReport, KernelBranch, Profile,
};
pub use spectral::{gamma_roots, hardy_constant, principal_eigenvalue, GammaRoots, SpectralData};
pub use verifier::{
    apriori_check, construct_scalar_candidate, construct_system_candidate, cutoff_eta,
    cutoff_eta_prime, lhs_hardy, scalar_margin, system_margin, AprioriProbe, AprioriReport,
    CandidateKind, MarginGrid, MarginReport, ScalarCandidate, SystemCandidate, SystemMarginReport,
};
