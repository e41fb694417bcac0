//! Deterministic seeded generation of step functions, point sets, and
//! sample collections, used by the randomized self-checks and the random
//! search mode.
//!
//! Every consumer derives an independent stream from a user seed and a task
//! index via [`sub_seed`], so results are reproducible for a given seed
//! regardless of evaluation order or worker count.

use std::collections::BTreeSet;

use rand::seq::index;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::{Domain, Sample, SampleCollection, StepFunction};
use crate::scalar::{Scalar, Sign};

fn splitmix64(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes a user seed with a task index into an independent stream seed.
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// A deterministic generator for task `index` under `seed`.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(sub_seed(seed, index))
}

/// `j/denom` of the way across the domain — always strictly inside for
/// `0 < j < denom`.
fn grid_point(domain: &Domain, j: u32, denom: u32) -> Scalar {
    domain.upper() * &Scalar::new(i64::from(j), i64::from(denom)).expect("denom > 0")
}

/// Up to `count` distinct interior points on the `denom`-grid of the domain.
pub fn random_interior_points(
    rng: &mut impl Rng,
    domain: &Domain,
    count: usize,
    denom: u32,
) -> Vec<Scalar> {
    let available = denom.saturating_sub(1) as usize;
    let take = count.min(available);
    let mut points: Vec<Scalar> = index::sample(rng, available, take)
        .into_iter()
        .map(|i| grid_point(domain, i as u32 + 1, denom))
        .collect();
    points.sort();
    points
}

/// A random step function whose sign changes sit on the interior
/// `denom`-grid: up to `max_changes` distinct locations, occasionally one of
/// them doubled into a single-point piece, random leading sign and random
/// boundary ownership.
pub fn random_step_function(
    rng: &mut impl Rng,
    domain: &Domain,
    max_changes: usize,
    denom: u32,
) -> StepFunction {
    let count = rng.gen_range(0..=max_changes.min(denom.saturating_sub(1) as usize));
    let mut roots = random_interior_points(rng, domain, count, denom);
    if !roots.is_empty() && rng.gen_bool(0.25) {
        let at = rng.gen_range(0..roots.len());
        roots.insert(at, roots[at].clone());
    }
    let flags: Vec<bool> = (0..roots.len()).map(|_| rng.gen_bool(0.5)).collect();
    let leading = if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    };
    StepFunction::from_roots_with_ownership(domain.clone(), leading, &roots, &flags)
        .expect("interior grid locations always build a valid function")
}

/// A random collection of `ell`-point samples whose union is exactly `m`
/// distinct interior grid points (missing points are repaired in by extra
/// samples). Requires `ell <= m <= denom - 1`.
pub fn random_collection(
    rng: &mut impl Rng,
    domain: &Domain,
    ell: usize,
    m: usize,
    denom: u32,
) -> SampleCollection {
    assert!(ell >= 1 && ell <= m, "need 1 <= ell <= m");
    let support = random_interior_points(rng, domain, m, denom);
    assert_eq!(support.len(), m, "need m <= denom - 1 grid slots");
    let n_sets = rng.gen_range(2..=(2 * m).clamp(3, 10));
    let mut sets = Vec::new();
    for _ in 0..n_sets {
        let pts: Vec<Scalar> = index::sample(rng, m, ell)
            .into_iter()
            .map(|i| support[i].clone())
            .collect();
        sets.push(Sample::new(pts).expect("ell >= 1"));
    }
    let covered: BTreeSet<&Scalar> = sets.iter().flat_map(|s| s.points()).collect();
    let missing: Vec<Scalar> = support
        .iter()
        .filter(|p| !covered.contains(p))
        .cloned()
        .collect();
    for p in missing {
        let mut pts = vec![p.clone()];
        let mut others: Vec<Scalar> = index::sample(rng, m, ell)
            .into_iter()
            .map(|i| support[i].clone())
            .filter(|q| *q != p)
            .collect();
        others.truncate(ell - 1);
        let fill: Vec<Scalar> = support
            .iter()
            .filter(|q| **q != p && !others.contains(q))
            .cloned()
            .collect();
        let mut fill = fill.into_iter();
        while others.len() < ell - 1 {
            others.push(fill.next().expect("m >= ell leaves enough points"));
        }
        pts.extend(others);
        sets.push(Sample::new(pts).expect("nonempty"));
    }
    SampleCollection::new(sets).expect("nonempty and uniform by construction")
}
