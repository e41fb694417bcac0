//! Randomized invariants of the width, threshold, rewriting, and counting
//! layers, driven by proptest.

use proptest::prelude::*;

use widthlab::bounds::{run_bounded_count, run_bounded_patterns, sauer_phi};
use widthlab::canon::{atomize, check_atomize, disjointify};
use widthlab::hyper::{e_value, hyperconcept, theta, trace_count, Mode, Threshold};
use widthlab::model::{Domain, Sample, SampleCollection, StepFunction};
use widthlab::scalar::{Scalar, Sign};
use widthlab::width::{point_width, sample_width, WidthProfile};

use num_bigint::BigUint;
use std::collections::BTreeSet;

fn s(text: &str) -> Scalar {
    text.parse().unwrap()
}

fn frac(j: i64, d: i64) -> Scalar {
    Scalar::new(j, d).unwrap()
}

fn domain_b() -> impl Strategy<Value = Scalar> {
    prop_oneof![Just(s("1")), Just(s("2")), Just(s("7/2"))]
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Strict), Just(Mode::NonStrict)]
}

/// Interior root positions as 48ths of the domain length.
fn root_slots() -> impl Strategy<Value = BTreeSet<u32>> {
    proptest::collection::btree_set(1u32..=47, 0..=5)
}

fn scaled(slots: &BTreeSet<u32>, b: &Scalar, denom: i64) -> Vec<Scalar> {
    slots.iter().map(|&j| b * &frac(j as i64, denom)).collect()
}

fn function_from(b: &Scalar, sign: Sign, slots: &BTreeSet<u32>) -> StepFunction {
    let domain = Domain::new(b.clone()).unwrap();
    StepFunction::from_roots(domain, sign, &scaled(slots, b, 48)).unwrap()
}

/// A family of up to five step functions over a shared domain.
fn family_slots() -> impl Strategy<Value = Vec<(Sign, BTreeSet<u32>)>> {
    proptest::collection::vec((sign(), root_slots()), 1..=5)
}

/// Sample collections with equal-size sets drawn from twelfths of the domain.
fn collection_slots(ell: usize) -> impl Strategy<Value = Vec<BTreeSet<u32>>> {
    proptest::collection::vec(proptest::collection::btree_set(1u32..=11, ell..=ell), 1..=4)
}

fn collection_from(b: &Scalar, sets: &[BTreeSet<u32>]) -> SampleCollection {
    let samples = sets
        .iter()
        .map(|slots| Sample::new(scaled(slots, b, 12)).unwrap())
        .collect();
    SampleCollection::new(samples).unwrap()
}

proptest! {
    /// The direct distance computation and the piecewise-linear profile give
    /// the same signed width at every domain point.
    #[test]
    fn width_routes_agree_at_every_point(
        b in domain_b(),
        sgn in sign(),
        slots in root_slots(),
        point_slot in 0u32..=96,
    ) {
        let h = function_from(&b, sgn, &slots);
        let x = &b * &frac(point_slot as i64, 96);
        let direct = point_width(&h, &x).unwrap();
        let profile = WidthProfile::of(&h);
        prop_assert_eq!(direct.clone(), profile.signed_at(&x).unwrap());
        prop_assert_eq!(direct.abs(), profile.abs_at(&x).unwrap());
    }

    /// Which interval owns each sign-change location never influences widths.
    #[test]
    fn ownership_flags_never_change_widths(
        b in domain_b(),
        sgn in sign(),
        slots in root_slots(),
        flags in proptest::collection::vec(any::<bool>(), 5),
        point_slot in 0u32..=96,
    ) {
        let domain = Domain::new(b.clone()).unwrap();
        let roots = scaled(&slots, &b, 48);
        let reference = StepFunction::from_roots(domain.clone(), sgn, &roots).unwrap();
        let variant = StepFunction::from_roots_with_ownership(
            domain, sgn, &roots, &flags[..roots.len()],
        ).unwrap();
        let x = &b * &frac(point_slot as i64, 96);
        prop_assert_eq!(
            point_width(&reference, &x).unwrap(),
            point_width(&variant, &x).unwrap()
        );
    }

    /// A sample's width is the smallest absolute point width it contains.
    #[test]
    fn sample_width_is_the_smallest_point_width(
        b in domain_b(),
        sgn in sign(),
        slots in root_slots(),
        point_slots in proptest::collection::btree_set(0u32..=96, 1..=6),
    ) {
        let h = function_from(&b, sgn, &slots);
        let points = scaled(&point_slots, &b, 96);
        let expected = points
            .iter()
            .map(|x| point_width(&h, x).unwrap().abs())
            .min()
            .unwrap();
        prop_assert_eq!(sample_width(&h, &points).unwrap(), expected);
    }

    /// Thresholding the sample width equals requiring every point to pass.
    #[test]
    fn product_and_min_routes_agree(
        b in domain_b(),
        sgn in sign(),
        slots in root_slots(),
        point_slots in proptest::collection::btree_set(0u32..=96, 1..=6),
        gamma_num in 1i64..=6,
        md in mode(),
    ) {
        let h = function_from(&b, sgn, &slots);
        let points = scaled(&point_slots, &b, 96);
        let t = Threshold::new(&b * &frac(gamma_num, 12), md).unwrap();
        let product = e_value(&h, &t, &points).unwrap();
        let sample = Sample::new(points).unwrap();
        prop_assert_eq!(product, hyperconcept(&h, &t, &sample).unwrap());
    }

    /// Raising the margin requirement can only turn passes into failures.
    #[test]
    fn tightening_the_threshold_only_removes_passes(
        b in domain_b(),
        sgn in sign(),
        slots in root_slots(),
        point_slot in 0u32..=96,
        lo_num in 1i64..=5,
        extra in 1i64..=5,
        md in mode(),
    ) {
        let h = function_from(&b, sgn, &slots);
        let x = &b * &frac(point_slot as i64, 96);
        let loose = Threshold::new(&b * &frac(lo_num, 12), md).unwrap();
        let tight = Threshold::new(&b * &frac(lo_num + extra, 12), md).unwrap();
        if theta(&h, &tight, &x).unwrap() {
            prop_assert!(theta(&h, &loose, &x).unwrap());
        }
    }

    /// Overlap removal yields pairwise-disjoint sets over the same support,
    /// each contained in one of the original samples.
    #[test]
    fn disjointify_outputs_disjoint_sets_over_the_same_support(
        b in domain_b(),
        ell in 1usize..=3,
        sets in collection_slots(3),
    ) {
        let trimmed: Vec<BTreeSet<u32>> = sets
            .iter()
            .map(|set| set.iter().copied().take(ell).collect())
            .collect();
        let z = collection_from(&b, &trimmed);
        let g = disjointify(&z);
        prop_assert!(g.is_pairwise_disjoint());
        prop_assert_eq!(g.support(), z.support());
        for out in g.sets() {
            prop_assert!(
                z.samples().iter().any(|orig| out.points().iter().all(|p| orig.contains(p))),
                "every rewritten set stays inside one original sample"
            );
        }
    }

    /// The extremal rewriting keeps the leading set, emits the remaining
    /// support as ascending singletons, and preserves support.
    #[test]
    fn atomize_produces_the_extremal_shape(
        b in domain_b(),
        ell in 1usize..=3,
        sets in collection_slots(3),
    ) {
        let trimmed: Vec<BTreeSet<u32>> = sets
            .iter()
            .map(|set| set.iter().copied().take(ell).collect())
            .collect();
        let z = collection_from(&b, &trimmed);
        let g = disjointify(&z);
        let q = atomize(&g, z.ell(), z.cardinality()).unwrap();
        prop_assert!(q.is_pairwise_disjoint());
        prop_assert_eq!(q.len(), z.cardinality() - z.ell() + 1);
        prop_assert_eq!(&q.sets()[0], &g.sets()[0]);
        prop_assert_eq!(q.support(), z.support());
        let tail: Vec<&Sample> = q.sets()[1..].iter().collect();
        for pair in tail.windows(2) {
            prop_assert!(pair[0].points() < pair[1].points(), "singletons ascend");
        }
        for single in &tail {
            prop_assert_eq!(single.len(), 1);
        }
    }

    /// Splitting disjoint sets into the extremal shape never loses vectors.
    #[test]
    fn atomize_never_loses_vectors(
        b in domain_b(),
        ell in 1usize..=3,
        sets in collection_slots(3),
        family in family_slots(),
        gamma_num in 1i64..=6,
        md in mode(),
    ) {
        let trimmed: Vec<BTreeSet<u32>> = sets
            .iter()
            .map(|set| set.iter().copied().take(ell).collect())
            .collect();
        let z = collection_from(&b, &trimmed);
        let g = disjointify(&z);
        let t = Threshold::new(&b * &frac(gamma_num, 12), md).unwrap();
        let functions: Vec<StepFunction> =
            family.iter().map(|(sgn, slots)| function_from(&b, *sgn, slots)).collect();
        let check = check_atomize(&functions, &t, &g, z.ell(), z.cardinality()).unwrap();
        prop_assert!(
            check.holds(),
            "splitting lost vectors: {} -> {}",
            check.before,
            check.after
        );
    }

    /// The distinct-vector count ignores family order and duplicates.
    #[test]
    fn trace_count_ignores_family_order_and_duplicates(
        b in domain_b(),
        ell in 1usize..=3,
        sets in collection_slots(3),
        family in family_slots(),
        gamma_num in 1i64..=6,
        md in mode(),
    ) {
        let trimmed: Vec<BTreeSet<u32>> = sets
            .iter()
            .map(|set| set.iter().copied().take(ell).collect())
            .collect();
        let z = collection_from(&b, &trimmed);
        let t = Threshold::new(&b * &frac(gamma_num, 12), md).unwrap();
        let functions: Vec<StepFunction> =
            family.iter().map(|(sgn, slots)| function_from(&b, *sgn, slots)).collect();
        let baseline = trace_count(&functions, &t, z.samples()).unwrap();

        let mut reversed = functions.clone();
        reversed.reverse();
        prop_assert_eq!(trace_count(&reversed, &t, z.samples()).unwrap(), baseline);

        let mut doubled = functions.clone();
        doubled.extend(functions.iter().cloned());
        prop_assert_eq!(trace_count(&doubled, &t, z.samples()).unwrap(), baseline);
    }
}

#[test]
fn run_bounded_listings_match_the_closed_form() {
    for k in 0..=3 {
        for n in 0..=8 {
            let listed = run_bounded_patterns(k, n).unwrap();
            for pattern in &listed {
                assert!(
                    pattern.max_one_runs() <= k,
                    "pattern {pattern} exceeds {k} runs"
                );
            }
            assert_eq!(
                BigUint::from(listed.len()),
                run_bounded_count(k, n),
                "count mismatch at K={k}, n={n}"
            );
        }
    }
}

#[test]
fn sauer_phi_is_monotone_and_caps_at_powers_of_two() {
    for d in 0..=8usize {
        for n in 0..=10usize {
            let here = sauer_phi(d, n);
            assert!(here <= sauer_phi(d + 1, n), "monotone in the dimension");
            assert!(here <= sauer_phi(d, n + 1), "monotone in the length");
            if d >= n {
                assert_eq!(here, BigUint::from(2u32).pow(n as u32));
            }
        }
    }
}
