//! Binary step functions on `[0, B]` and the sample containers they act on.
//!
//! A step function is stored as an ordered partition of the domain into
//! generalized intervals (each endpoint individually open or closed,
//! single-point pieces allowed) with alternating sign, starting from
//! `leading_sign` on the first piece. The right endpoints of the pieces are
//! the sign-change locations; a single-point piece repeats its location, so
//! two different ownership layouts can share the same change locations.
//!
//! Wire format for a function document:
//!
//! ```json
//! {
//!   "B": "7/1",
//!   "sign": 1,
//!   "intervals": [
//!     { "lo": "0/1", "hi": "12/5", "lo_closed": true, "hi_closed": false },
//!     { "lo": "12/5", "hi": "7/1", "lo_closed": true, "hi_closed": true }
//!   ]
//! }
//! ```

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::scalar::{Scalar, Sign};
use crate::Result;

/// The working interval `[0, B]`, `B > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Domain {
    b: Scalar,
}

impl Domain {
    pub fn new(b: Scalar) -> Result<Domain> {
        if !b.is_positive() {
            return Err(Error::BadConfig(format!(
                "domain upper end must be positive, got {b}"
            )));
        }
        Ok(Domain { b })
    }

    pub fn upper(&self) -> &Scalar {
        &self.b
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        !x.is_negative() && x <= &self.b
    }
}

/// An interval with individually open or closed endpoints. A single point
/// (`lo == hi`) must be closed on both sides.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GeneralizedInterval {
    lo: Scalar,
    hi: Scalar,
    lo_closed: bool,
    hi_closed: bool,
}

impl GeneralizedInterval {
    pub fn new(lo: Scalar, hi: Scalar, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        if lo > hi {
            return Err(Error::ReversedBounds {
                lo: lo.into(),
                hi: hi.into(),
            });
        }
        if lo == hi && !(lo_closed && hi_closed) {
            return Err(Error::BadSingleton { at: lo.into() });
        }
        Ok(GeneralizedInterval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    pub fn singleton(at: Scalar) -> Self {
        GeneralizedInterval {
            lo: at.clone(),
            hi: at,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn lo(&self) -> &Scalar {
        &self.lo
    }

    pub fn hi(&self) -> &Scalar {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_singleton(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        let above = x > &self.lo || (x == &self.lo && self.lo_closed);
        let below = x < &self.hi || (x == &self.hi && self.hi_closed);
        above && below
    }
}

impl fmt::Display for GeneralizedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' },
        )
    }
}

#[derive(Deserialize)]
struct IntervalRaw {
    lo: Scalar,
    hi: Scalar,
    lo_closed: bool,
    hi_closed: bool,
}

impl<'de> Deserialize<'de> for GeneralizedInterval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = IntervalRaw::deserialize(d)?;
        GeneralizedInterval::new(raw.lo, raw.hi, raw.lo_closed, raw.hi_closed)
            .map_err(|e| serde::de::Error::custom(e.to_string()))
    }
}

/// Construction-time notices about sign changes that sit exactly on a domain
/// endpoint. Such locations are excluded from the width root set, so the
/// function behaves there as if the change did not exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValidationWarning {
    SignChangeAtLowerEnd,
    SignChangeAtUpperEnd,
}

impl fmt::Display for ValidationWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationWarning::SignChangeAtLowerEnd => {
                write!(f, "sign change at 0 is excluded from width computations")
            }
            ValidationWarning::SignChangeAtUpperEnd => {
                write!(
                    f,
                    "sign change at the domain upper end is excluded from width computations"
                )
            }
        }
    }
}

/// A binary step function: an alternating-sign partition of `[0, B]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepFunction {
    domain: Domain,
    leading_sign: Sign,
    intervals: Vec<GeneralizedInterval>,
    warnings: Vec<ValidationWarning>,
}

impl StepFunction {
    /// Validates that `intervals` partition `[0, B]` in order: the first
    /// piece starts closed at 0, the last ends closed at `B`, consecutive
    /// pieces share their boundary point with exactly one side owning it.
    pub fn new(
        domain: Domain,
        leading_sign: Sign,
        intervals: Vec<GeneralizedInterval>,
    ) -> Result<StepFunction> {
        if intervals.is_empty() {
            return Err(Error::NotAPartition("no intervals given".into()));
        }
        let b = domain.upper();
        for iv in &intervals {
            if iv.lo().is_negative() {
                return Err(Error::OutOfDomain {
                    x: iv.lo().clone().into(),
                    b: b.clone().into(),
                });
            }
            if iv.hi() > b {
                return Err(Error::OutOfDomain {
                    x: iv.hi().clone().into(),
                    b: b.clone().into(),
                });
            }
        }
        let first = &intervals[0];
        if !first.lo().is_zero() || !first.lo_closed() {
            return Err(Error::NotAPartition(format!(
                "the partition must start with a closed endpoint at 0, got {first}",
            )));
        }
        let last = intervals.last().expect("nonempty");
        if last.hi() != b || !last.hi_closed() {
            return Err(Error::NotAPartition(format!(
                "the partition must end with a closed endpoint at {b}, got {last}",
            )));
        }
        for pair in intervals.windows(2) {
            let (prev, next) = (&pair[0], &pair[1]);
            if prev.hi() != next.lo() {
                return Err(Error::NotAPartition(format!(
                    "gap or overlap: {prev} is followed by {next}",
                )));
            }
            if prev.hi_closed() == next.lo_closed() {
                let side = if prev.hi_closed() {
                    "both sides"
                } else {
                    "neither side"
                };
                return Err(Error::NotAPartition(format!(
                    "boundary {} is owned by {side}",
                    prev.hi(),
                )));
            }
        }
        let mut warnings = Vec::new();
        if intervals[0].is_singleton() {
            warnings.push(ValidationWarning::SignChangeAtLowerEnd);
        }
        if intervals.len() > 1 && intervals.last().expect("nonempty").is_singleton() {
            warnings.push(ValidationWarning::SignChangeAtUpperEnd);
        }
        Ok(StepFunction {
            domain,
            leading_sign,
            intervals,
            warnings,
        })
    }

    /// Builds the partition whose sign changes sit at `roots` (all strictly
    /// inside the domain, non-decreasing, each value at most twice; a doubled
    /// value becomes a single-point piece). Simple boundaries default to
    /// "right side owns the point".
    pub fn from_roots(
        domain: Domain,
        leading_sign: Sign,
        roots: &[Scalar],
    ) -> Result<StepFunction> {
        let flags = vec![false; roots.len()];
        StepFunction::from_roots_with_ownership(domain, leading_sign, roots, &flags)
    }

    /// Like [`StepFunction::from_roots`], with per-root boundary ownership:
    /// `left_owns[i]` makes the piece below root i keep the point. Flags on
    /// doubled roots are ignored (the single-point piece owns its point).
    pub fn from_roots_with_ownership(
        domain: Domain,
        leading_sign: Sign,
        roots: &[Scalar],
        left_owns: &[bool],
    ) -> Result<StepFunction> {
        if left_owns.len() != roots.len() {
            return Err(Error::BadConfig(format!(
                "expected {} ownership flags, got {}",
                roots.len(),
                left_owns.len()
            )));
        }
        let b = domain.upper().clone();
        for r in roots {
            if !r.is_positive() || r >= &b {
                return Err(Error::BadConfig(format!(
                    "sign-change location {r} must lie strictly inside (0, {b})",
                )));
            }
        }
        for pair in roots.windows(2) {
            if pair[0] > pair[1] {
                return Err(Error::BadConfig(
                    "sign-change locations must be non-decreasing".into(),
                ));
            }
        }
        let mut intervals = Vec::new();
        let mut lo = Scalar::zero();
        let mut lo_closed = true;
        let mut i = 0;
        while i < roots.len() {
            let a = roots[i].clone();
            let doubled = i + 1 < roots.len() && roots[i + 1] == a;
            if i + 2 < roots.len() && roots[i + 2] == a {
                return Err(Error::BadConfig(format!(
                    "sign-change location {a} repeats more than twice",
                )));
            }
            if doubled {
                intervals.push(GeneralizedInterval::new(lo, a.clone(), lo_closed, false)?);
                intervals.push(GeneralizedInterval::singleton(a.clone()));
                lo = a;
                lo_closed = false;
                i += 2;
            } else {
                let left = left_owns[i];
                intervals.push(GeneralizedInterval::new(lo, a.clone(), lo_closed, left)?);
                lo = a;
                lo_closed = !left;
                i += 1;
            }
        }
        intervals.push(GeneralizedInterval::new(lo, b, lo_closed, true)?);
        StepFunction::new(domain, leading_sign, intervals)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn leading_sign(&self) -> Sign {
        self.leading_sign
    }

    pub fn intervals(&self) -> &[GeneralizedInterval] {
        &self.intervals
    }

    pub fn warnings(&self) -> &[ValidationWarning] {
        &self.warnings
    }

    /// The function value at `x`.
    pub fn value_at(&self, x: &Scalar) -> Result<Sign> {
        if !self.domain.contains(x) {
            return Err(Error::OutOfDomain {
                x: x.clone().into(),
                b: self.domain.upper().clone().into(),
            });
        }
        let idx = self
            .intervals
            .iter()
            .position(|iv| iv.contains(x))
            .expect("a validated partition covers every domain point");
        Ok(if idx % 2 == 0 {
            self.leading_sign
        } else {
            self.leading_sign.flip()
        })
    }

    /// Sign-change locations strictly inside `(0, B)`, in non-decreasing
    /// order; a single-point piece contributes its location twice. Changes
    /// sitting exactly at 0 or `B` are excluded (see [`StepFunction::warnings`]).
    pub fn interior_roots(&self) -> Vec<Scalar> {
        let b = self.domain.upper();
        self.intervals[..self.intervals.len() - 1]
            .iter()
            .map(|iv| iv.hi().clone())
            .filter(|r| r.is_positive() && r < b)
            .collect()
    }

    /// True when the function never changes sign strictly inside the domain.
    pub fn is_effectively_constant(&self) -> bool {
        self.interior_roots().is_empty()
    }
}

#[derive(Serialize, Deserialize)]
struct StepFunctionDoc {
    #[serde(rename = "B")]
    b: Scalar,
    sign: Sign,
    intervals: Vec<GeneralizedInterval>,
}

impl Serialize for StepFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StepFunctionDoc {
            b: self.domain.upper().clone(),
            sign: self.leading_sign,
            intervals: self.intervals.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StepFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = StepFunctionDoc::deserialize(d)?;
        let domain = Domain::new(doc.b).map_err(|e| serde::de::Error::custom(e.to_string()))?;
        StepFunction::new(domain, doc.sign, doc.intervals)
            .map_err(|e| serde::de::Error::custom(e.to_string()))
    }
}

/// A finite set of points in the domain, stored sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sample {
    points: Vec<Scalar>,
}

impl Sample {
    pub fn new(mut points: Vec<Scalar>) -> Result<Sample> {
        if points.is_empty() {
            return Err(Error::EmptySample);
        }
        points.sort();
        points.dedup();
        Ok(Sample { points })
    }

    pub fn points(&self) -> &[Scalar] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        self.points.binary_search(x).is_ok()
    }
}

impl fmt::Display for Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Sample {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.points.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Sample {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let points = Vec::<Scalar>::deserialize(d)?;
        Sample::new(points).map_err(|e| serde::de::Error::custom(e.to_string()))
    }
}

/// An ordered collection of equal-size samples. Duplicate samples are
/// removed at construction (first occurrence kept); the common size is the
/// collection's sample size.
///
/// Wire format: `{ "samples": [["1/12", "5/12"], ["7/12", "11/12"]] }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleCollection {
    samples: Vec<Sample>,
    ell: usize,
}

impl SampleCollection {
    pub fn new(samples: Vec<Sample>) -> Result<SampleCollection> {
        if samples.is_empty() {
            return Err(Error::InvalidCollection("no samples given".into()));
        }
        let ell = samples[0].len();
        for s in &samples {
            if s.len() != ell {
                return Err(Error::InvalidCollection(format!(
                    "samples must share one size, found {} and {}",
                    ell,
                    s.len()
                )));
            }
        }
        let mut seen = BTreeSet::new();
        let samples: Vec<Sample> = samples
            .into_iter()
            .filter(|s| seen.insert(s.clone()))
            .collect();
        Ok(SampleCollection { samples, ell })
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    /// Common sample size.
    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Number of (distinct) samples.
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sorted union of all sample points.
    pub fn support(&self) -> Vec<Scalar> {
        collection_support(&self.samples)
    }

    /// Number of distinct points across all samples.
    pub fn cardinality(&self) -> usize {
        self.support().len()
    }

    /// Samples reordered lexicographically (points within each sample are
    /// already sorted). Evaluation order never affects counts; this fixes a
    /// canonical presentation for reports and deterministic processing.
    pub fn canonical_order(&self) -> SampleCollection {
        let mut samples = self.samples.clone();
        samples.sort();
        SampleCollection {
            samples,
            ell: self.ell,
        }
    }
}

/// Sorted union of the points of `sets`.
pub fn collection_support(sets: &[Sample]) -> Vec<Scalar> {
    let mut union: BTreeSet<Scalar> = BTreeSet::new();
    for s in sets {
        union.extend(s.points().iter().cloned());
    }
    union.into_iter().collect()
}

#[derive(Serialize, Deserialize)]
struct CollectionDoc {
    samples: Vec<Sample>,
}

impl Serialize for SampleCollection {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CollectionDoc {
            samples: self.samples.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SampleCollection {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = CollectionDoc::deserialize(d)?;
        SampleCollection::new(doc.samples).map_err(|e| serde::de::Error::custom(e.to_string()))
    }
}
