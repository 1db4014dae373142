//! Acceptance gate: one test per criterion. Each prints a single `PASS`
//! line with its headline numbers (visible under `--nocapture`); tolerances
//! are pinned as constants next to the assertions they guard.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use conehardy_core::{
    apriori_check, classify_scalar, classify_system, construct_scalar_candidate,
    construct_system_candidate, convolve, convolve_oracle_radial, gamma_roots, hardy_constant,
    lhs_hardy, principal_eigenvalue, region_scan, scalar_margin, system_margin,
    verify_kernel_bounds, AprioriProbe, CandidateKind, ConeDomain, ConePoint, ConvolveOptions,
    Error, KernelBranch, MarginGrid, OmegaSpec, Outcome, Profile, ScalarCandidate, ScalarParams,
    SpectralData, SystemParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ARC_TOL: f64 = 1e-10;
const HEMISPHERE_TOL: f64 = 1e-8;
const INDICIAL_TOL: f64 = 1e-12;
const ORACLE_TOL_DEFAULT: f64 = 5e-3;
const ORACLE_TOL_DOUBLE: f64 = 1e-3;
const KERNEL_BAND: f64 = 50.0;
const DECADE_SPREAD_MAX: f64 = 20.0;
const HOMOGENEITY_TOL: f64 = 1e-12;
const CONSTRUCTION_SLACK: f64 = 1e-3;
const COUPLING_TOL: f64 = 1e-12;
const SLOPE_TOL: f64 = 0.1;
const QUOTIENT_SPREAD_MAX: f64 = 1e3;
const FD_TOL: f64 = 1e-5;

fn cap(half_angle: f64) -> OmegaSpec {
    OmegaSpec::Cap { half_angle }
}

fn spectral_for(omega: OmegaSpec, n: usize) -> SpectralData {
    principal_eigenvalue(&omega, n).expect("eigenvalue solver converges")
}

#[test]
fn c1_spectral_anchors() {
    let started = Instant::now();

    // Planar arcs against the sine closed form.
    for k in 1..=10 {
        let theta0 = PI * k as f64 / 11.0;
        let s = spectral_for(cap(theta0), 2);
        let want = (PI / (2.0 * theta0)).powi(2);
        assert!(
            ((s.lambda1 - want) / want).abs() < ARC_TOL,
            "arc theta0 = {theta0}: {} vs {want}",
            s.lambda1
        );
    }

    // Hemispheres: λ₁ = N − 1 with eigenfunction cos ϑ.
    for n in 2..=6 {
        let s = spectral_for(cap(PI / 2.0), n);
        let want = (n - 1) as f64;
        assert!(
            ((s.lambda1 - want) / want).abs() < HEMISPHERE_TOL,
            "hemisphere n = {n}: {} vs {want}",
            s.lambda1
        );
    }

    // Strict monotonicity in the aperture.
    let mut last = f64::INFINITY;
    for k in 1..=10 {
        let theta0 = PI * k as f64 / 11.0;
        let s = spectral_for(cap(theta0), 3);
        assert!(s.lambda1 < last, "lambda1 not strictly decreasing at {theta0}");
        last = s.lambda1;
    }

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:.2?}");
    println!("criterion 1 (spectral anchors): PASS in {elapsed:.2?}");
}

#[test]
fn c2_indicial_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut s = spectral_for(OmegaSpec::FullSphere, 3);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n = rng.gen_range(2..=7usize);
        let lambda1 = rng.gen_range(0.0..25.0);
        s.n = n;
        s.lambda1 = lambda1;
        s.hardy_constant = hardy_constant(lambda1, n);
        let mu = s.hardy_constant - rng.gen_range(0.0..12.0f64);
        let roots = gamma_roots(&s, mu).unwrap();
        let tol = INDICIAL_TOL * (1.0 + (lambda1 - mu).abs());
        for g in [roots.gamma_minus, roots.gamma_plus] {
            let residual = (g * (g + n as f64 - 2.0) - (lambda1 - mu)).abs();
            assert!(residual <= tol, "residual {residual} at n = {n}, mu = {mu}");
            worst = worst.max(residual / (1.0 + (lambda1 - mu).abs()));
        }
    }

    // Double root (2-N)/2 bitwise at μ = C_H, including a cap whose
    // eigenvalue is only known numerically.
    for n in 2..=6 {
        let s = spectral_for(OmegaSpec::FullSphere, n);
        let roots = gamma_roots(&s, s.hardy_constant).unwrap();
        assert_eq!(roots.gamma_minus, (2.0 - n as f64) / 2.0, "n = {n}");
        assert_eq!(roots.gamma_plus, (2.0 - n as f64) / 2.0, "n = {n}");
    }
    let s = spectral_for(cap(1.0), 3);
    let roots = gamma_roots(&s, s.hardy_constant).unwrap();
    assert_eq!(roots.gamma_minus, -0.5);
    assert_eq!(roots.gamma_plus, -0.5);

    println!("criterion 2 (indicial algebra): PASS, worst scaled residual {worst:.2e}");
}

/// Independent re-statement of the scalar rules, mirroring the published
/// tolerance band (1e-12 relative, equality checked before strictness).
fn mirror_scalar(p: f64, q: f64, p_crit: f64, pq_crit: f64, q_min: f64) -> Outcome {
    const BAND: f64 = 1e-12;
    let near = |x: f64, t: f64| (x - t).abs() <= BAND * t.abs().max(1.0);
    let above = |x: f64, t: f64| x - t > BAND * t.abs().max(1.0);
    let sum = p + q;
    if !above(p, p_crit) {
        return Outcome::NotExists;
    }
    if near(sum, pq_crit) {
        return if q > 1.0 { Outcome::NotExists } else { Outcome::Undetermined };
    }
    if !above(sum, pq_crit) {
        return Outcome::NotExists;
    }
    if q > q_min {
        return Outcome::Exists;
    }
    Outcome::Undetermined
}

#[test]
fn c3_classifier_regions() {
    let started = Instant::now();
    let domain = ConeDomain::new(3, OmegaSpec::FullSphere, 1.0).unwrap();
    let spectral = spectral_for(OmegaSpec::FullSphere, 3);
    let roots = gamma_roots(&spectral, 0.0).unwrap();

    for alpha in [0.0, 1.0] {
        let p_crit = 3.0 - alpha;
        let pq_crit = 6.0 - alpha;
        let q_min = 3.0 - alpha;
        let scan = region_scan(&domain, &roots, alpha, 8.0, 8.0, 200, 200).unwrap();
        assert_eq!(scan.cells.len(), 200 * 200);
        assert!((scan.thresholds.p_crit - p_crit).abs() < 1e-14);
        assert!((scan.thresholds.pq_crit - pq_crit).abs() < 1e-14);

        let mut boundary_rule_cells = 0usize;
        for cell in &scan.cells {
            let want = mirror_scalar(cell.p, cell.q, p_crit, pq_crit, q_min);
            assert_eq!(
                cell.outcome, want,
                "alpha = {alpha}, p = {}, q = {}",
                cell.p, cell.q
            );
            // Critical-line rule on sum-boundary cells (with p supercritical).
            let on_sum = (cell.p + cell.q - pq_crit).abs() <= 1e-12 * pq_crit;
            let p_above = cell.p - p_crit > 1e-12 * p_crit;
            if on_sum && p_above && cell.q > 1.0 {
                assert_eq!(cell.rule_id, Some("thm1b-iii"));
                assert!(cell.boundary);
                boundary_rule_cells += 1;
            }
        }
        // Counting cells on the diagonal a + b = 25 (6 - alpha) with
        // p = 0.04a above p_crit and q = 0.04b > 1 gives exactly 49 for
        // both values of alpha.
        assert_eq!(
            boundary_rule_cells, 49,
            "critical-line census changed at alpha = {alpha}"
        );

        // The p-threshold characterization: nonexistence exactly up to and
        // including the vertical line p = (N - alpha) / |gamma-|.
        for cell in &scan.cells {
            if cell.p <= p_crit {
                assert_eq!(cell.outcome, Outcome::NotExists);
            }
        }
    }

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:.2?}");
    println!("criterion 3 (classifier regions): PASS in {elapsed:.2?}");
}

#[test]
fn c4_convolution_oracle() {
    let domain = ConeDomain::new(3, OmegaSpec::FullSphere, 1.0).unwrap();
    let spectral = spectral_for(OmegaSpec::FullSphere, 3);
    let f = Profile::power_law(1.0, 1.0, -2.0).pow(3.0);
    let x = ConePoint::on_meridian(3, 2.0, 0.0);

    let want = convolve_oracle_radial(-6.0, 1.0, 2.0).unwrap();
    assert!((want - 31.0 * PI / 48.0).abs() < 1e-12);

    let base = convolve(&domain, &spectral, &f, 1.0, &x, &ConvolveOptions::default()).unwrap();
    let rel_base = ((base.value - want) / want).abs();
    assert!(rel_base < ORACLE_TOL_DEFAULT, "default grid error {rel_base:.2e}");

    let fine = convolve(
        &domain,
        &spectral,
        &f,
        1.0,
        &x,
        &ConvolveOptions::with_resolution(512),
    )
    .unwrap();
    let rel_fine = ((fine.value - want) / want).abs();
    assert!(rel_fine < ORACLE_TOL_DOUBLE, "double grid error {rel_fine:.2e}");

    // The divergence predicate is a sharp inequality on the exponents.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let opts = ConvolveOptions::with_resolution(8);
    for _ in 0..1000 {
        let alpha = rng.gen_range(0.0..3.0);
        let gamma_f = rng.gen_range(-6.0..1.0);
        let probe = Profile::power_law(1.0, 1.0, gamma_f);
        let divergent = 3.0 - alpha + gamma_f >= 0.0;
        match convolve(&domain, &spectral, &probe, alpha, &x, &opts) {
            Ok(_) => assert!(!divergent, "missed divergence at gamma = {gamma_f}"),
            Err(Error::DivergentTail { excess }) => {
                assert!(divergent, "false divergence at gamma = {gamma_f}");
                assert!((excess - (3.0 - alpha + gamma_f)).abs() < 1e-12);
            }
            Err(other) => panic!("unexpected error: {other}"),
        }
    }

    println!(
        "criterion 4 (convolution oracle): PASS, errors {rel_base:.2e} / {rel_fine:.2e}"
    );
}

#[test]
fn c5_kernel_estimates() {
    let started = Instant::now();
    let domain = ConeDomain::new(3, OmegaSpec::FullSphere, 1.0).unwrap();
    let spectral = spectral_for(OmegaSpec::FullSphere, 3);
    let radii = [4.0, 10.0, 40.0, 100.0, 400.0, 1000.0];
    let opts = ConvolveOptions::default();

    let branches = [
        (-2.5, KernelBranch::BelowDimension),
        (-3.0, KernelBranch::AtDimension),
        (-6.0, KernelBranch::AboveDimension),
    ];
    for (gamma_f, branch) in branches {
        let f = Profile::power_law(1.0, 1.0, gamma_f);
        let report = verify_kernel_bounds(&domain, &spectral, &f, 1.0, &radii, &opts).unwrap();
        assert_eq!(report.branch, branch, "gamma_f = {gamma_f}");
        assert!(
            report.bounded && report.spread < KERNEL_BAND,
            "gamma_f = {gamma_f}: spread {}",
            report.spread
        );
        // Lower companion bound: conv(x) · |x|^alpha stays away from zero.
        assert!(report.lower_bound_min > 0.0, "gamma_f = {gamma_f}");
    }

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:.2?}");
    println!("criterion 5 (kernel estimates): PASS in {elapsed:.2?}");
}

#[test]
fn c6_scalar_existence_certificates() {
    let started = Instant::now();
    let cases: [(usize, OmegaSpec, f64, f64, f64, f64); 5] = [
        (3, OmegaSpec::FullSphere, 0.0, 1.0, 3.0, 3.0),
        (3, OmegaSpec::FullSphere, 0.0, 0.0, 4.0, 4.0),
        (6, OmegaSpec::FullSphere, 4.0, 1.0, 2.8, 2.0), // μ = C_H: log family
        (3, cap(PI / 2.0), 1.0, 1.0, 2.0, 2.0),
        (2, cap(PI / 2.0), 0.0, 1.0, 2.5, 2.5),
    ];

    for (n, omega, mu, alpha, p, q) in cases {
        let domain = ConeDomain::new(n, omega, 1.0).unwrap();
        let spectral = spectral_for(omega, n);
        let roots = gamma_roots(&spectral, mu).unwrap();
        let params = ScalarParams { alpha, p, q };

        let verdict = classify_scalar(&domain, &roots, &params).unwrap();
        assert_eq!(verdict.outcome, Outcome::Exists, "n = {n}, mu = {mu}, alpha = {alpha}");

        let cand = construct_scalar_candidate(&domain, &spectral, &roots, &params).unwrap();
        if roots.discriminant == 0.0 {
            assert_eq!(cand.kind, CandidateKind::LogPower);
        } else {
            assert_eq!(cand.kind, CandidateKind::PowerLaw);
        }

        let grid = MarginGrid::for_domain(&domain);
        let report = scalar_margin(&domain, &spectral, &roots, &params, &cand, &grid).unwrap();
        assert!(report.min_ratio > 0.0, "n = {n}: min ratio {}", report.min_ratio);
        assert!(
            report.decade_spread < DECADE_SPREAD_MAX,
            "n = {n}: decade spread {}",
            report.decade_spread
        );
        assert!(report.trend_free, "n = {n}: {:?}", report.per_decade_min);

        // Homogeneity identity of the fitted amplitude.
        let back = report.fitted_amplitude.powf(p + q - 1.0);
        assert!(
            ((back - report.min_ratio) / report.min_ratio).abs() < HOMOGENEITY_TOL,
            "n = {n}: {back} vs {}",
            report.min_ratio
        );
        assert!((report.worst_margin_scaled - 1.0).abs() < HOMOGENEITY_TOL);
    }

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:.2?}");
    println!("criterion 6 (scalar existence certificates): PASS in {elapsed:.2?}");
}

#[test]
fn c7_system_certificates() {
    let cases: [(usize, OmegaSpec, f64, SystemParams, f64, f64, f64); 3] = [
        // Frozen anchors for (b, a) alongside each tuple; tolerance covers
        // the numerically computed cap eigenvalue in the second case.
        (
            3,
            OmegaSpec::FullSphere,
            0.0,
            SystemParams { alpha: 1.0, p: 3.0, q: 3.0, s: 4.0 },
            -0.975,
            -0.859375,
            1e-12,
        ),
        (
            4,
            cap(PI / 2.0),
            1.0,
            SystemParams { alpha: 0.5, p: 2.0, q: 2.0, s: 5.0 },
            -2.645448267190433,
            -1.7872689603142598,
            1e-6,
        ),
        (
            5,
            OmegaSpec::FullSphere,
            2.0,
            SystemParams { alpha: 2.0, p: 2.0, q: 2.0, s: 3.0 },
            -1.975,
            -1.65,
            1e-12,
        ),
    ];

    let slack = |lhs: f64, rhs: f64| lhs - rhs >= CONSTRUCTION_SLACK * rhs.abs().max(1.0);

    for (n, omega, mu, params, b_want, a_want, tol) in cases {
        let domain = ConeDomain::new(n, omega, 1.0).unwrap();
        let spectral = spectral_for(omega, n);
        let roots = gamma_roots(&spectral, mu).unwrap();

        let verdict = classify_system(&domain, &roots, &params).unwrap();
        assert_eq!(verdict.outcome, Outcome::Exists, "n = {n}");
        assert_eq!(verdict.rules[0].id, "thm14b-ii");

        let cand = construct_system_candidate(&domain, &spectral, &roots, &params).unwrap();
        assert_eq!(cand.kind, CandidateKind::PowerLaw);
        let (a, b) = (cand.u.gamma, cand.v.gamma);
        assert!((b - b_want).abs() < tol, "n = {n}: b = {b} vs {b_want}");
        assert!((a - a_want).abs() < tol, "n = {n}: a = {a} vs {a_want}");

        // The pointwise feasibility conditions hold with the advertised slack.
        let nf = n as f64;
        let ab = -b;
        let (p, q, s, alpha) = (params.p, params.q, params.s, params.alpha);
        assert!(slack(s, 1.0 + 2.0 / ab));
        assert!(slack(q, 1.0 + (2.0 - alpha) / ab));
        assert!(slack(p * ab, nf - alpha));
        assert!(slack((p + q - 1.0 / s) * ab, nf - alpha + 2.0 + 2.0 / s));

        // Ordering chain placing a strictly inside its admissible window.
        let lo = b.max(nf - alpha + 2.0 + (p + q) * b);
        assert!(a - lo >= CONSTRUCTION_SLACK && (b - 2.0) / s - a >= CONSTRUCTION_SLACK);
        assert!(a < 0.0);

        // ℒ_H is strictly positive on both profiles.
        assert!(spectral.lambda1 - mu - a * (a + nf - 2.0) > 0.0);
        assert!(spectral.lambda1 - mu - b * (b + nf - 2.0) > 0.0);

        let grid = MarginGrid::for_domain(&domain);
        let report = system_margin(&domain, &spectral, &roots, &params, &cand, &grid).unwrap();
        assert!(report.first.min_ratio > 0.0 && report.second.min_ratio > 0.0);
        assert!(report.first.trend_free, "{:?}", report.first.per_decade_min);
        assert!(report.second.trend_free, "{:?}", report.second.per_decade_min);

        // Coupling identities and simultaneous scaled margins.
        let c2pq = report.c2.powf(p + q);
        assert!(((c2pq - report.c1 * report.c) / c2pq).abs() < COUPLING_TOL);
        let c1s = report.c1.powf(s);
        assert!(((c1s - report.c2 * report.c) / c1s).abs() < COUPLING_TOL);
        assert!(report.first.worst_margin_scaled >= 1.0 - COUPLING_TOL);
        assert!(report.second.worst_margin_scaled >= 1.0 - COUPLING_TOL);
    }

    // Borderline μ = C_H: the logarithmic pair kicks in strictly above the
    // s-threshold and refuses on it.
    let domain = ConeDomain::new(3, OmegaSpec::FullSphere, 1.0).unwrap();
    let spectral = spectral_for(OmegaSpec::FullSphere, 3);
    let roots = gamma_roots(&spectral, spectral.hardy_constant).unwrap();
    let on_threshold = SystemParams { alpha: 1.0, p: 5.5, q: 4.0, s: 5.0 };
    assert!(matches!(
        construct_system_candidate(&domain, &spectral, &roots, &on_threshold),
        Err(Error::NoFeasiblePair)
    ));
    let above = SystemParams { alpha: 1.0, p: 5.5, q: 4.0, s: 6.0 };
    let verdict = classify_system(&domain, &roots, &above).unwrap();
    assert_eq!(verdict.outcome, Outcome::Exists);
    let log_pair = construct_system_candidate(&domain, &spectral, &roots, &above).unwrap();
    assert_eq!(log_pair.kind, CandidateKind::LogPower);
    assert_eq!(log_pair.u.gamma, -0.5);
    assert_eq!(log_pair.v.tau, 0.5);

    println!("criterion 7 (system certificates): PASS");
}

#[test]
fn c8_apriori_estimate() {
    let domain = ConeDomain::new(3, OmegaSpec::FullSphere, 1.0).unwrap();
    let spectral = spectral_for(OmegaSpec::FullSphere, 3);
    let roots = gamma_roots(&spectral, 0.0).unwrap();
    let params = ScalarParams { alpha: 1.0, p: 3.0, q: 3.0 };
    let solution = construct_scalar_candidate(&domain, &spectral, &roots, &params).unwrap();

    for m in [0.5, 0.0] {
        let probe = AprioriProbe {
            lambda_c: 5.0,
            m,
            radii: vec![10.0, 30.0, 100.0, 300.0],
        };
        let report = apriori_check(&domain, &spectral, &params, &solution, &probe).unwrap();
        assert!(report.bounded, "m = {m}: {report:?}");
        assert!(report.max_over_min < QUOTIENT_SPREAD_MAX, "m = {m}");
        assert!(
            (report.fitted_slope - report.predicted_slope).abs() < SLOPE_TOL,
            "m = {m}: slope {} vs {}",
            report.fitted_slope,
            report.predicted_slope
        );
        assert!(report.q_values.iter().all(|v| v.is_finite() && *v > 0.0));
    }

    println!("criterion 8 (a priori estimate): PASS");
}

#[test]
fn c9_finite_difference_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);

    // Power-law family on the exterior domain.
    let spectral3 = spectral_for(OmegaSpec::FullSphere, 3);
    let domain3 = ConeDomain::new(3, OmegaSpec::FullSphere, 1.0).unwrap();
    let roots3 = gamma_roots(&spectral3, 0.0).unwrap();
    let power = construct_scalar_candidate(
        &domain3,
        &spectral3,
        &roots3,
        &ScalarParams { alpha: 1.0, p: 3.0, q: 3.0 },
    )
    .unwrap();

    // Logarithmic family at the borderline Hardy coupling.
    let spectral6 = spectral_for(OmegaSpec::FullSphere, 6);
    let domain6 = ConeDomain::new(6, OmegaSpec::FullSphere, 1.0).unwrap();
    let roots6 = gamma_roots(&spectral6, spectral6.hardy_constant).unwrap();
    let log = construct_scalar_candidate(
        &domain6,
        &spectral6,
        &roots6,
        &ScalarParams { alpha: 1.0, p: 2.8, q: 2.0 },
    )
    .unwrap();
    assert_eq!(log.kind, CandidateKind::LogPower);

    // Cap candidate with a genuinely angular eigenfunction.
    let omega_cap = cap(PI / 2.0);
    let spectral_cap = spectral_for(omega_cap, 3);
    let domain_cap = ConeDomain::new(3, omega_cap, 1.0).unwrap();
    let roots_cap = gamma_roots(&spectral_cap, 1.0).unwrap();
    let cap_cand = construct_scalar_candidate(
        &domain_cap,
        &spectral_cap,
        &roots_cap,
        &ScalarParams { alpha: 1.0, p: 2.0, q: 2.0 },
    )
    .unwrap();

    let check = |cand: &ScalarCandidate,
                     spectral: &SpectralData,
                     mu: f64,
                     n: usize,
                     polar_range: (f64, f64),
                     rng: &mut ChaCha8Rng| {
        let roots = gamma_roots(spectral, mu).unwrap();
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let r = rng.gen_range(2.0..50.0);
            let polar = rng.gen_range(polar_range.0..polar_range.1);
            let x = ConePoint::on_meridian(n, r, polar);
            let fd = common::discrete_hardy_operator(&cand.profile, spectral, mu, &x.cart);
            let closed = lhs_hardy(cand, spectral, &roots, &x);
            let rel = ((fd - closed) / closed).abs();
            assert!(
                rel < FD_TOL,
                "relative error {rel:.2e} at r = {r}, polar = {polar}"
            );
            worst = worst.max(rel);
        }
        worst
    };

    let w1 = check(&power, &spectral3, 0.0, 3, (0.1, 3.0), &mut rng);
    let w2 = check(&log, &spectral6, 4.0, 6, (0.1, 3.0), &mut rng);
    let w3 = check(
        &cap_cand,
        &spectral_cap,
        1.0,
        3,
        (0.15 * PI / 2.0, 0.85 * PI / 2.0),
        &mut rng,
    );

    println!(
        "criterion 9 (finite-difference oracle): PASS, worst {:.2e} / {:.2e} / {:.2e}",
        w1, w2, w3
    );
}
