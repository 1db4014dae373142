//! End-to-end flow over the public API, the way a front end drives it:
//! spectral data → classification → explicit candidate → certified margins.

use conehardy_core::{
    apriori_check, classify_scalar, classify_system, construct_scalar_candidate,
    construct_system_candidate, gamma_roots, principal_eigenvalue, scalar_margin, system_margin,
    AprioriProbe, ConeDomain, ConvolveOptions, Error, MarginGrid, OmegaSpec, Outcome,
    ScalarParams, SystemParams,
};

fn quick_grid(domain: &ConeDomain) -> MarginGrid {
    MarginGrid {
        shells_per_decade: 12,
        n_angular: 12,
        conv: ConvolveOptions {
            n_r: 64,
            n_theta: 48,
            n_psi: 16,
            r_max: None,
            eps_excl: None,
        },
        ..MarginGrid::for_domain(domain)
    }
}

#[test]
fn exists_verdict_flows_into_a_certified_candidate() {
    // Deliberately not the unit-radius vertex, to exercise the ρ plumbing.
    let domain = ConeDomain::new(3, OmegaSpec::FullSphere, 0.5).unwrap();
    let spectral = principal_eigenvalue(&OmegaSpec::FullSphere, 3).unwrap();
    let roots = gamma_roots(&spectral, 0.0).unwrap();
    let params = ScalarParams { alpha: 1.0, p: 3.0, q: 3.0 };

    let verdict = classify_scalar(&domain, &roots, &params).unwrap();
    assert_eq!(verdict.outcome, Outcome::Exists);
    assert_eq!(verdict.rules[0].id, "thm2");

    let cand = construct_scalar_candidate(&domain, &spectral, &roots, &params).unwrap();
    let report =
        scalar_margin(&domain, &spectral, &roots, &params, &cand, &quick_grid(&domain)).unwrap();
    assert!(report.min_ratio > 0.0);
    assert!(report.trend_free);
    assert!((report.worst_margin_scaled - 1.0).abs() < 1e-12);
    // Grid anchored to the vertex radius.
    assert_eq!(report.grid.r_min, 1.0);
    assert_eq!(report.grid.r_max, 100.0);

    let probe = AprioriProbe { lambda_c: 5.0, m: 0.5, radii: vec![5.0, 20.0, 80.0] };
    let apriori = apriori_check(&domain, &spectral, &params, &cand, &probe).unwrap();
    assert!(apriori.bounded);
}

#[test]
fn nonexistence_verdicts_never_reach_construction() {
    let domain = ConeDomain::new(3, OmegaSpec::FullSphere, 1.0).unwrap();
    let spectral = principal_eigenvalue(&OmegaSpec::FullSphere, 3).unwrap();
    let roots = gamma_roots(&spectral, 0.0).unwrap();

    // Subcritical p: the classifier rules it out, and the candidate scan
    // independently agrees that no exponent is feasible.
    let params = ScalarParams { alpha: 1.0, p: 1.5, q: 6.0 };
    let verdict = classify_scalar(&domain, &roots, &params).unwrap();
    assert_eq!(verdict.outcome, Outcome::NotExists);
    assert_eq!(verdict.rules[0].id, "thm1b-i");
    assert!(matches!(
        construct_scalar_candidate(&domain, &spectral, &roots, &params),
        Err(Error::NoFeasibleGamma { .. })
    ));

    // Supercritical μ never yields indicial roots at all.
    assert!(matches!(
        gamma_roots(&spectral, 0.26),
        Err(Error::SupercriticalMu { .. })
    ));
}

#[test]
fn system_flow_certifies_both_components() {
    let domain = ConeDomain::new(3, OmegaSpec::FullSphere, 2.0).unwrap();
    let spectral = principal_eigenvalue(&OmegaSpec::FullSphere, 3).unwrap();
    let roots = gamma_roots(&spectral, 0.0).unwrap();
    let params = SystemParams { alpha: 1.0, p: 3.0, q: 3.0, s: 4.0 };

    let verdict = classify_system(&domain, &roots, &params).unwrap();
    assert_eq!(verdict.outcome, Outcome::Exists);
    assert!((verdict.system_curve_value.unwrap() - 4.75).abs() < 1e-12);

    let cand = construct_system_candidate(&domain, &spectral, &roots, &params).unwrap();
    // Exponents do not depend on the vertex radius.
    assert!((cand.v.gamma + 0.975).abs() < 1e-12);
    assert!((cand.u.gamma + 0.859375).abs() < 1e-12);

    let report =
        system_margin(&domain, &spectral, &roots, &params, &cand, &quick_grid(&domain)).unwrap();
    assert!(report.first.min_ratio > 0.0);
    assert!(report.second.min_ratio > 0.0);
    assert!(report.c > 0.0 && report.c1 > 0.0 && report.c2 > 0.0);
}
