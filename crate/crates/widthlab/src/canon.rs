//! Canonical rewritings of sample collections that can only grow the number
//! of distinct per-sample bit vectors, and checks for that monotonicity.
//!
//! * [`disjointify`] turns a collection into an ordered family of pairwise
//!   disjoint sets by sequential set difference, dropping emptied sets.
//! * [`atomize`] turns such a disjoint family into its extremal shape: the
//!   leading set kept whole, every remaining support point split into its
//!   own singleton.
//!
//! Both steps preserve the support. [`check_disjointify`] and
//! [`check_atomize`] compare distinct-vector counts across each step for a
//! concrete family of functions.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::hyper::{trace_count, Threshold};
use crate::model::{collection_support, Sample, SampleCollection, StepFunction};
use crate::scalar::Scalar;
use crate::Result;

/// An ordered family of samples without a shared-size requirement, as
/// produced by the rewriting procedures. Duplicate sets are removed (first
/// occurrence kept); order is otherwise preserved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedCollection {
    sets: Vec<Sample>,
}

impl GeneralizedCollection {
    pub fn new(sets: Vec<Sample>) -> Result<GeneralizedCollection> {
        if sets.is_empty() {
            return Err(Error::InvalidCollection("no sets given".into()));
        }
        let mut seen = BTreeSet::new();
        let sets: Vec<Sample> = sets
            .into_iter()
            .filter(|s| seen.insert(s.clone()))
            .collect();
        Ok(GeneralizedCollection { sets })
    }

    pub fn sets(&self) -> &[Sample] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sorted union of all set points.
    pub fn support(&self) -> Vec<Scalar> {
        collection_support(&self.sets)
    }

    pub fn cardinality(&self) -> usize {
        self.support().len()
    }

    pub fn max_set_size(&self) -> usize {
        self.sets.iter().map(Sample::len).max().expect("nonempty")
    }

    pub fn is_pairwise_disjoint(&self) -> bool {
        let total: usize = self.sets.iter().map(Sample::len).sum();
        total == self.cardinality()
    }
}

/// Sequentially replaces each sample by what it adds over its predecessors
/// (in the collection's canonical order) and drops sets that end up empty.
/// The result is pairwise disjoint, starts with the full first sample, and
/// has the same support as the input.
pub fn disjointify(z: &SampleCollection) -> GeneralizedCollection {
    let ordered = z.canonical_order();
    let mut covered: BTreeSet<Scalar> = BTreeSet::new();
    let mut sets = Vec::new();
    for sample in ordered.samples() {
        let fresh: Vec<Scalar> = sample
            .points()
            .iter()
            .filter(|p| !covered.contains(*p))
            .cloned()
            .collect();
        covered.extend(fresh.iter().cloned());
        if !fresh.is_empty() {
            sets.push(Sample::new(fresh).expect("nonempty by the filter above"));
        }
    }
    GeneralizedCollection { sets }
}

/// Rewrites a disjoint family whose leading set has `ell` points and whose
/// support has `m` points into the extremal shape: the leading set followed
/// by the `m - ell` remaining support points as singletons, ascending. The
/// output always has `m - ell + 1` sets.
pub fn atomize(g: &GeneralizedCollection, ell: usize, m: usize) -> Result<GeneralizedCollection> {
    if !g.is_pairwise_disjoint() {
        return Err(Error::BadShape("the sets must be pairwise disjoint".into()));
    }
    let first = &g.sets()[0];
    if first.len() != ell {
        return Err(Error::BadShape(format!(
            "the leading set has {} points, expected {ell}",
            first.len()
        )));
    }
    let support = g.support();
    if support.len() != m {
        return Err(Error::BadShape(format!(
            "the support has {} points, expected {m}",
            support.len()
        )));
    }
    let mut sets = vec![first.clone()];
    for p in support {
        if !first.contains(&p) {
            sets.push(Sample::new(vec![p]).expect("a singleton is nonempty"));
        }
    }
    Ok(GeneralizedCollection { sets })
}

/// Outcome of one monotonicity check: the distinct-vector count before and
/// after a rewriting step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClaimCheck {
    pub before: usize,
    pub after: usize,
}

impl ClaimCheck {
    /// The rewriting never loses vectors on this family.
    pub fn holds(&self) -> bool {
        self.before <= self.after
    }
}

/// Compares distinct-vector counts of `family` on a collection and on its
/// disjointified form.
pub fn check_disjointify(
    family: &[StepFunction],
    t: &Threshold,
    z: &SampleCollection,
) -> Result<ClaimCheck> {
    let g = disjointify(z);
    Ok(ClaimCheck {
        before: trace_count(family, t, z.samples())?,
        after: trace_count(family, t, g.sets())?,
    })
}

/// Compares distinct-vector counts of `family` on a disjoint family and on
/// its atomized form.
pub fn check_atomize(
    family: &[StepFunction],
    t: &Threshold,
    g: &GeneralizedCollection,
    ell: usize,
    m: usize,
) -> Result<ClaimCheck> {
    let q = atomize(g, ell, m)?;
    Ok(ClaimCheck {
        before: trace_count(family, t, g.sets())?,
        after: trace_count(family, t, q.sets())?,
    })
}

/// Runs both rewriting steps from a plain collection, deriving the shape
/// parameters from the collection itself.
pub fn check_chain(
    family: &[StepFunction],
    t: &Threshold,
    z: &SampleCollection,
) -> Result<(ClaimCheck, ClaimCheck)> {
    let first = check_disjointify(family, t, z)?;
    let g = disjointify(z);
    let second = check_atomize(family, t, &g, z.ell(), z.cardinality())?;
    Ok((first, second))
}
