//! Shared fixtures for the benchmark targets.

use std::f64::consts::FRAC_PI_2;

use conehardy_core::{principal_eigenvalue, ConeDomain, OmegaSpec, SpectralData};

/// Hemisphere cone in dimension 3 with unit vertex radius.
pub fn hemisphere_domain() -> ConeDomain {
    ConeDomain::new(
        3,
        OmegaSpec::Cap {
            half_angle: FRAC_PI_2,
        },
        1.0,
    )
    .unwrap()
}

/// Spectral data for [`hemisphere_domain`].
pub fn hemisphere_spectral() -> SpectralData {
    principal_eigenvalue(
        &OmegaSpec::Cap {
            half_angle: FRAC_PI_2,
        },
        3,
    )
    .unwrap()
}
