//! Acceptance gate: one test per criterion, each printing a single
//! machine-readable PASS/FAIL line (visible under `--nocapture`; a FAIL
//! also fails the test). Tolerances and time limits are pinned here.
//!
//! Swept growth and run-count checks are restricted to configurations
//! whose supports force every wide component to occupy more than twice
//! the margin level of domain length (margin-interior supports, plus the
//! frozen eleven-point instance proven safe by length accounting);
//! boundary-hugging supports can exceed the run cap and are exercised
//! separately as honest failure demonstrations in the unit suites.

use std::time::Instant;

use num_bigint::BigUint;
use rand::Rng;

use widthlab::bits::Bits;
use widthlab::bounds::{
    run_bounded_count, run_bounded_patterns, run_class_dimension, sauer_phi, trace_bound,
    trace_bound_as_f64, trace_bound_estimate, BoundParams,
};
use widthlab::canon::check_chain;
use widthlab::cli::{cmd_growth, cmd_verify, OutputFormat, VerifyConfig};
use widthlab::enumerate::{
    grid_closure_patterns, growth_search, realizable_patterns, GrowthMode, GrowthSearchConfig,
    RealizabilityInstance,
};
use widthlab::hyper::{Mode, Threshold};
use widthlab::model::{Domain, StepFunction};
use widthlab::sampling::{
    random_collection, random_interior_points, random_step_function, rng_for,
};
use widthlab::scalar::{ExtendedScalar, Scalar, Sign};
use widthlab::width::{point_width, width_function, WidthProfile};

fn s(text: &str) -> Scalar {
    text.parse().unwrap()
}

fn dom(text: &str) -> Domain {
    Domain::new(s(text)).unwrap()
}

fn report(criterion: usize, pass: bool, detail: &str) {
    println!(
        "ACCEPTANCE {criterion}: {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

/// The frozen eleven-point instance: every twelfth of the unit domain.
fn twelfths_grid() -> Vec<Scalar> {
    (1..=11).map(|j| Scalar::new(j, 12).unwrap()).collect()
}

struct SweepConfig {
    b: Scalar,
    gamma: Scalar,
    ell: usize,
    m: usize,
    grid: Option<Vec<Scalar>>,
}

/// Evenly spread points at least one margin away from both domain ends, so
/// every wide component must occupy more than twice the margin of domain
/// length and the run-count argument behind the cap applies.
fn margin_interior_grid(b: &Scalar, gamma: &Scalar, m: usize) -> Vec<Scalar> {
    let span = b - &(gamma * &s("2"));
    (0..m)
        .map(|j| gamma + &(&span * &Scalar::new(j as i64, (m - 1) as i64).unwrap()))
        .collect()
}

/// Shared sweep for the growth and estimate criteria, restricted to the
/// regimes where the cap's counting argument is sound: singleton samples on
/// margin-interior grids, and single-set collections (trivial cap of 2).
/// Families of overlapping larger samples can genuinely exceed the cap —
/// see `disjointify_can_lose_vectors_of_overlapping_sets` and
/// `overlapping_two_point_families_exceed_the_cap_on_roomy_grids` — so they
/// are exercised as violation demonstrations, not swept here.
fn sweep_configs() -> Vec<SweepConfig> {
    let mut configs = Vec::new();
    for b_text in ["1", "7/2"] {
        let b = s(b_text);
        for gamma_denom in [3i64, 4, 6, 8, 12] {
            let gamma = &b * &Scalar::new(1, gamma_denom).unwrap();
            for m in [2usize, 4, 6, 8, 10] {
                let grid = Some(margin_interior_grid(&b, &gamma, m));
                configs.push(SweepConfig {
                    b: b.clone(),
                    gamma: gamma.clone(),
                    ell: 1,
                    m,
                    grid,
                });
            }
        }
    }
    for ell in [2usize, 3] {
        for gamma_denom in [3i64, 4, 6] {
            configs.push(SweepConfig {
                b: s("1"),
                gamma: Scalar::new(1, gamma_denom).unwrap(),
                ell,
                m: ell,
                grid: None,
            });
        }
    }
    configs
}

#[test]
fn criterion_1_growth_caps_hold_everywhere_swept() {
    let start = Instant::now();

    // Exhaustive search over every six-point support of the eleven-point
    // grid, with every covering family dominated by the full one.
    let config = GrowthSearchConfig {
        domain: dom("1"),
        threshold: Threshold::strict(s("1/4")).unwrap(),
        ell: 1,
        m: 6,
        mode: GrowthMode::Exhaustive,
        budget: 500,
        seed: 0,
        grid: Some(twelfths_grid()),
    };
    let result = growth_search(&config).unwrap();
    let bound = trace_bound(&config.bound_params().unwrap());
    assert_eq!(result.evaluated, 462, "all 6-of-11 supports visited");
    assert_eq!(bound, BigUint::from(62u32));
    assert_eq!(
        result.best_count,
        BigUint::from(27u32),
        "frozen maximizer value for the eleven-point instance"
    );
    assert!(result.within_bound());

    let mut violations = 0usize;
    let configs = sweep_configs();
    for c in &configs {
        let config = GrowthSearchConfig {
            domain: Domain::new(c.b.clone()).unwrap(),
            threshold: Threshold::strict(c.gamma.clone()).unwrap(),
            ell: c.ell,
            m: c.m,
            mode: GrowthMode::Exhaustive,
            budget: 8,
            seed: 0,
            grid: c.grid.clone(),
        };
        if !growth_search(&config).unwrap().within_bound() {
            violations += 1;
        }
    }
    let elapsed = start.elapsed();
    report(
        1,
        violations == 0 && configs.len() >= 50 && elapsed.as_secs() < 120,
        &format!(
            "frozen instance 27 <= 62; {} sound-regime configs swept (singleton or single-set \
             families; overlapping families can exceed the cap, see the growth violation unit \
             tests), {violations} violations, {:.1}s",
            configs.len(),
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_2_rewrite_chains_hold_on_seeded_instances() {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut first_step_failures = 0usize;
    let mut second_step_failures = 0usize;
    for i in 0..1000u64 {
        let mut rng = rng_for(0xACCE97, i);
        let domain = dom(["1", "2", "7/2", "7"][rng.gen_range(0..4)]);
        let family_size = rng.gen_range(1..=32);
        let family: Vec<StepFunction> = (0..family_size)
            .map(|_| random_step_function(&mut rng, &domain, 6, 24))
            .collect();
        let ell = rng.gen_range(1..=3);
        let m = rng.gen_range(ell..=8);
        let z = random_collection(&mut rng, &domain, ell, m, 24);
        let gamma = domain.upper() * &Scalar::new(rng.gen_range(1..=5), 12).unwrap();
        let t = Threshold::new(
            gamma,
            if rng.gen_bool(0.5) {
                Mode::Strict
            } else {
                Mode::NonStrict
            },
        )
        .unwrap();
        let (first, second) = check_chain(&family, &t, &z).unwrap();
        checked += 1;
        assert_eq!(first.after, second.before, "chain middle must be shared");
        if !first.holds() {
            first_step_failures += 1;
        }
        if !second.holds() {
            second_step_failures += 1;
        }
    }
    let elapsed = start.elapsed();
    // This criterion fails by design of the procedures themselves: the
    // disjointify step is not monotone in the distinct-vector count when
    // sets overlap (the refinement step always is). The minimal instance is
    // pinned in `disjointify_can_lose_vectors_of_overlapping_sets`; the
    // decision record accompanying this repository carries the analysis.
    report(
        2,
        first_step_failures == 0
            && second_step_failures == 0
            && checked == 1000
            && elapsed.as_secs() < 60,
        &format!(
            "{checked} random chain instances: {first_step_failures} lost vectors at the \
             disjointify step, {second_step_failures} at the refinement step, {:.1}s",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_3_width_routes_agree_with_the_inline_oracle() {
    let mut failures = 0usize;
    let mut ownership_failures = 0usize;
    for i in 0..10_000u64 {
        let mut rng = rng_for(0x31D7, i);
        let domain = dom(["1", "2", "7/2", "7"][rng.gen_range(0..4)]);
        let h = random_step_function(&mut rng, &domain, 6, 24);
        let x = domain.upper() * &Scalar::new(rng.gen_range(0..=96), 96).unwrap();

        let roots = h.interior_roots();
        let oracle = roots
            .iter()
            .map(|r| (r - &x).abs())
            .min()
            .map_or(ExtendedScalar::PosInfinity, ExtendedScalar::Finite);
        let direct = point_width(&h, &x).unwrap().abs();
        let compiled = WidthProfile::of(&h).abs_at(&x).unwrap();
        if !(direct == oracle && compiled == oracle) {
            failures += 1;
        }

        if !roots.is_empty() {
            let flags_a: Vec<bool> = (0..roots.len()).map(|_| rng.gen_bool(0.5)).collect();
            let flags_b: Vec<bool> = (0..roots.len()).map(|_| rng.gen_bool(0.5)).collect();
            let fa = width_function(
                &StepFunction::from_roots_with_ownership(
                    domain.clone(),
                    Sign::Plus,
                    &roots,
                    &flags_a,
                )
                .unwrap(),
            )
            .unwrap();
            let fb = width_function(
                &StepFunction::from_roots_with_ownership(
                    domain.clone(),
                    Sign::Plus,
                    &roots,
                    &flags_b,
                )
                .unwrap(),
            )
            .unwrap();
            if fa != fb {
                ownership_failures += 1;
            }
        }
    }
    report(
        3,
        failures == 0 && ownership_failures == 0,
        &format!(
            "10000 (function, point) pairs; {failures} route mismatches, {ownership_failures} ownership mismatches"
        ),
    );
}

#[test]
fn criterion_4_direct_and_closure_enumerations_coincide() {
    // Frozen impossible pattern: alternating demands across a margin too
    // wide to separate on a two-unit domain.
    let inst = RealizabilityInstance::new(dom("2"), vec![s("1/2"), s("1"), s("3/2")]).unwrap();
    let t = Threshold::strict(s("3/5")).unwrap();
    let direct = realizable_patterns(&inst, &t).unwrap();
    let closed = grid_closure_patterns(&inst, &t, &s("1/16")).unwrap();
    let impossible = Bits::parse01("101").unwrap();
    assert_eq!(direct, closed);
    assert!(
        !direct.contains(&impossible),
        "alternating pattern must be impossible here"
    );

    let mut agreements = 0usize;
    let mut mismatches = 0usize;
    for i in 0..200u64 {
        let mut rng = rng_for(0x0D8AC1E, i);
        let domain = dom(["1", "2", "7/2"][rng.gen_range(0..3)]);
        let count = rng.gen_range(2..=8);
        let points = random_interior_points(&mut rng, &domain, count, 48);
        let gamma = domain.upper() * &Scalar::new(rng.gen_range(1..=7), 12).unwrap();
        let t = Threshold::new(
            gamma,
            if rng.gen_bool(0.5) {
                Mode::Strict
            } else {
                Mode::NonStrict
            },
        )
        .unwrap();
        let inst = RealizabilityInstance::new(domain.clone(), points).unwrap();
        let delta = domain.upper() * &Scalar::new(1, 32).unwrap();
        if realizable_patterns(&inst, &t).unwrap()
            == grid_closure_patterns(&inst, &t, &delta).unwrap()
        {
            agreements += 1;
        } else {
            mismatches += 1;
        }
    }
    report(
        4,
        mismatches == 0 && agreements == 200,
        &format!("frozen impossible pattern excluded by both routes; {agreements} seeded instances agree, {mismatches} mismatches"),
    );
}

#[test]
fn criterion_5_run_class_matches_closed_forms() {
    let mut dimension_ok = true;
    for k in 1..=3usize {
        let n = 2 * k + 2;
        dimension_ok &= run_class_dimension(k, n).unwrap() == 2 * k;
    }

    let mut count_ok = true;
    let mut capped_ok = true;
    for k in 0..=3usize {
        for n in 0..=12usize {
            let listed = BigUint::from(run_bounded_patterns(k, n).unwrap().len());
            let closed = run_bounded_count(k, n);
            count_ok &= listed == closed;
            capped_ok &= closed <= sauer_phi(2 * k, n);
        }
    }
    report(
        5,
        dimension_ok && count_ok && capped_ok,
        "dimension 2K for K in 1..=3; 52 class sizes match the closed form and stay under the cap",
    );
}

#[test]
fn criterion_6_realizable_patterns_respect_the_run_cap() {
    // Margin-interior instances: evenly spread points at least one margin
    // away from both ends.
    let mut checked_instances = 0usize;
    let mut violations = 0usize;
    for b_text in ["1", "2"] {
        let domain = dom(b_text);
        for (gamma_frac, counts) in [("1/3", [3usize, 5]), ("1/4", [4, 6]), ("1/8", [5, 7])] {
            let gamma = domain.upper() * &s(gamma_frac);
            let t = Threshold::strict(gamma.clone()).unwrap();
            let k = BoundParams::new(domain.upper().clone(), gamma.clone(), 1, 2)
                .unwrap()
                .k();
            for n in counts {
                let span = domain.upper() - &(&gamma * &s("2"));
                let points: Vec<Scalar> = (0..n)
                    .map(|j| &gamma + &(&span * &Scalar::new(j as i64, (n - 1) as i64).unwrap()))
                    .collect();
                let inst = RealizabilityInstance::new(domain.clone(), points).unwrap();
                checked_instances += 1;
                for pattern in realizable_patterns(&inst, &t).unwrap() {
                    if pattern.max_one_runs() > k {
                        violations += 1;
                    }
                }
            }
        }
    }

    // Every six-point support of the frozen eleven-point instance, where
    // length accounting proves the cap of 2 is safe.
    let grid = twelfths_grid();
    let t = Threshold::strict(s("1/4")).unwrap();
    let domain = dom("1");
    let mut mandated_supports = 0usize;
    for support in widthlab::subsets::combinations(11, 6) {
        let points: Vec<Scalar> = support.iter().map(|&i| grid[i].clone()).collect();
        let inst = RealizabilityInstance::new(domain.clone(), points).unwrap();
        mandated_supports += 1;
        for pattern in realizable_patterns(&inst, &t).unwrap() {
            if pattern.max_one_runs() > 2 {
                violations += 1;
            }
        }
    }
    report(
        6,
        violations == 0 && checked_instances == 12 && mandated_supports == 462,
        &format!(
            "{checked_instances} margin-interior instances and {mandated_supports} frozen supports; {violations} run-cap violations"
        ),
    );
}

#[test]
fn criterion_7_estimate_dominates_the_exact_cap_where_it_applies() {
    let mut applicable = 0usize;
    let mut undercuts = 0usize;
    let mut configs = sweep_configs();
    configs.push(SweepConfig {
        b: s("2"),
        gamma: s("1/2"),
        ell: 2,
        m: 8,
        grid: None,
    });
    configs.push(SweepConfig {
        b: s("1"),
        gamma: s("1/4"),
        ell: 1,
        m: 6,
        grid: None,
    });
    for c in configs {
        let params = BoundParams::new(c.b, c.gamma, c.ell, c.m).unwrap();
        if let Ok(estimate) = trace_bound_estimate(&params) {
            applicable += 1;
            let exact = trace_bound_as_f64(&params);
            if estimate < exact * (1.0 - 1e-9) {
                undercuts += 1;
            }
        }
    }
    report(
        7,
        undercuts == 0 && applicable >= 5,
        &format!("{applicable} applicable configs, {undercuts} undercuts at 1e-9 relative slack"),
    );
}

#[test]
fn criterion_8_reports_replay_byte_identically() {
    // The criterion is identity of bytes, not the verdicts inside the
    // reports: a seed whose chain check finds an honest violation must
    // still reproduce the identical report.
    let verify_config = VerifyConfig {
        seed: 123,
        budget: 2,
        delta: None,
    };
    let (verify_a, _) = cmd_verify(&verify_config, OutputFormat::Csv).unwrap();
    let (verify_b, _) = cmd_verify(&verify_config, OutputFormat::Csv).unwrap();

    let domain = dom("2");
    let t = Threshold::strict(s("1/3")).unwrap();
    let growth = |_: ()| {
        cmd_growth(
            &domain,
            &t,
            2,
            &[5],
            GrowthMode::Random,
            24,
            7,
            OutputFormat::Csv,
        )
        .unwrap()
    };
    let (growth_a, _) = growth(());
    let (growth_b, _) = growth(());

    report(
        8,
        verify_a == verify_b && growth_a == growth_b,
        "verify and growth reports are byte-identical across consecutive runs",
    );
}
