//! Threshold concepts over step functions: a point passes when the absolute
//! width there clears a margin `gamma`, a sample passes when all of its
//! points do, and a collection of samples yields one pass/fail bit per
//! sample — a bit vector characterizing the function on the collection.
//!
//! The sample-level pass has two equivalent readings, kept as separate code
//! paths so they can check each other: the conjunction of the per-point
//! tests ([`e_value`]) and a single margin test on the smallest absolute
//! width of the sample ([`hyperconcept`]).

use std::collections::HashSet;

use crate::bits::{Bits, HyperVector};
use crate::error::Error;
use crate::model::{Sample, StepFunction};
use crate::scalar::{ExtendedScalar, Scalar};
use crate::width::{point_width, sample_width};
use crate::Result;

/// Whether the margin test is a strict or non-strict comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    Strict,
    NonStrict,
}

/// A positive margin plus comparison mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Threshold {
    gamma: Scalar,
    mode: Mode,
}

impl Threshold {
    pub fn new(gamma: Scalar, mode: Mode) -> Result<Threshold> {
        if !gamma.is_positive() {
            return Err(Error::NonPositiveGamma(gamma.into()));
        }
        Ok(Threshold { gamma, mode })
    }

    pub fn strict(gamma: Scalar) -> Result<Threshold> {
        Threshold::new(gamma, Mode::Strict)
    }

    pub fn gamma(&self) -> &Scalar {
        &self.gamma
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// The margin test on an absolute width.
    pub fn passes(&self, abs_width: &ExtendedScalar) -> bool {
        match self.mode {
            Mode::Strict => abs_width.gt(&self.gamma),
            Mode::NonStrict => abs_width.ge(&self.gamma),
        }
    }
}

/// Point-level test: does the absolute width of `h` at `x` clear the margin?
pub fn theta(h: &StepFunction, t: &Threshold, x: &Scalar) -> Result<bool> {
    Ok(t.passes(&point_width(h, x)?.abs()))
}

/// Sample-level test as a conjunction of point-level tests.
pub fn e_value(h: &StepFunction, t: &Threshold, points: &[Scalar]) -> Result<bool> {
    if points.is_empty() {
        return Err(Error::EmptySample);
    }
    for x in points {
        if !theta(h, t, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sample-level test as a single margin test on the smallest absolute width.
/// Agrees with [`e_value`] on every input.
pub fn hyperconcept(h: &StepFunction, t: &Threshold, sample: &Sample) -> Result<bool> {
    Ok(t.passes(&sample_width(h, sample.points())?))
}

/// One pass/fail bit per sample, in the given order.
pub fn v_vector(h: &StepFunction, t: &Threshold, sets: &[Sample]) -> Result<HyperVector> {
    let mut bits = Bits::zeros(sets.len());
    for (i, sample) in sets.iter().enumerate() {
        if hyperconcept(h, t, sample)? {
            bits.set(i, true);
        }
    }
    Ok(bits)
}

/// Number of distinct per-sample bit vectors a family of functions produces
/// on `sets`.
pub fn trace_count(family: &[StepFunction], t: &Threshold, sets: &[Sample]) -> Result<usize> {
    let mut seen: HashSet<HyperVector> = HashSet::new();
    for h in family {
        seen.insert(v_vector(h, t, sets)?);
    }
    Ok(seen.len())
}
