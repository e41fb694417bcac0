//! Signed width of a step function: at each point, the function value times
//! the distance to the nearest sign change strictly inside the domain.
//!
//! Two routes compute the same quantity and are kept deliberately separate so
//! they can check each other:
//!
//! * [`point_width`] works directly from the step function — look up the
//!   value, scan the sign-change locations for the nearest one.
//! * [`width_function`] compiles the function once into an explicit
//!   piecewise-linear form ([`WidthFunction`]) evaluated by piece lookup.
//!
//! Sign changes sitting exactly on a domain endpoint are excluded from the
//! change set (the construction warns about them), so both routes treat such
//! a function as if the endpoint change did not exist — including at the
//! endpoint itself, where the reported sign is the adjacent piece's sign. A
//! function with no interior change has infinite width of its ambient sign
//! everywhere.

use crate::error::Error;
use crate::model::{Domain, Sample, StepFunction};
use crate::scalar::{ExtendedScalar, Scalar, Sign};
use crate::Result;

/// The function value at `x`, with sign changes at the domain endpoints
/// erased: on a single-point first or last piece the adjacent piece's sign is
/// reported instead. This is the sign the width routes use.
pub fn effective_sign_at(h: &StepFunction, x: &Scalar) -> Result<Sign> {
    if !h.domain().contains(x) {
        return Err(Error::OutOfDomain {
            x: x.clone().into(),
            b: h.domain().upper().clone().into(),
        });
    }
    let ivs = h.intervals();
    let mut idx = ivs
        .iter()
        .position(|iv| iv.contains(x))
        .expect("a validated partition covers every domain point");
    if ivs.len() > 1 {
        if idx == 0 && ivs[0].is_singleton() {
            idx = 1;
        } else if idx == ivs.len() - 1 && ivs[idx].is_singleton() {
            idx -= 1;
        }
    }
    Ok(if idx % 2 == 0 {
        h.leading_sign()
    } else {
        h.leading_sign().flip()
    })
}

/// Signed width at `x`, computed directly from the step function: the
/// effective sign at `x` times the distance from `x` to the nearest interior
/// sign change, or that sign's infinity when there is none.
pub fn point_width(h: &StepFunction, x: &Scalar) -> Result<ExtendedScalar> {
    let sign = effective_sign_at(h, x)?;
    let nearest = h.interior_roots().iter().map(|r| (x - r).abs()).min();
    Ok(match nearest {
        Some(dist) => ExtendedScalar::finite(sign.apply(dist)),
        None => ExtendedScalar::infinity(sign),
    })
}

/// The smallest absolute width attained on `points`.
pub fn sample_width(h: &StepFunction, points: &[Scalar]) -> Result<ExtendedScalar> {
    if points.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut best = ExtendedScalar::infinity(Sign::Plus);
    for x in points {
        let w = point_width(h, x)?.abs();
        if w < best {
            best = w;
        }
    }
    Ok(best)
}

/// The width of a step function as an explicit piecewise-linear function.
///
/// With sign changes `r_0 <= ... <= r_{n-1}` (a single-point piece repeats
/// its location) the domain splits at the boundaries `0`, the midpoints of
/// consecutive changes, and `B`; on the piece containing `r_p` the value is
/// `s * (-1)^p * (r_p - x)`, where `s` is the sign of the function just
/// above 0 with endpoint changes erased. Slopes are alternately -1 and +1,
/// each piece crossing zero at its change location; the boundary-ownership
/// layout of the step function never affects this object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthFunction {
    domain: Domain,
    effective_sign: Sign,
    roots: Vec<Scalar>,
    boundaries: Vec<Scalar>,
}

/// Compiles the width of `h` into its piecewise-linear form. Fails with
/// [`Error::ConstantFunction`] when `h` has no sign change strictly inside
/// the domain (its width is infinite everywhere).
pub fn width_function(h: &StepFunction) -> Result<WidthFunction> {
    let roots = h.interior_roots();
    if roots.is_empty() {
        return Err(Error::ConstantFunction);
    }
    let effective_sign = effective_sign_at(h, &roots[0].half())?;
    let mut boundaries = Vec::with_capacity(roots.len() + 1);
    boundaries.push(Scalar::zero());
    for pair in roots.windows(2) {
        boundaries.push(Scalar::midpoint(&pair[0], &pair[1]));
    }
    boundaries.push(h.domain().upper().clone());
    Ok(WidthFunction {
        domain: h.domain().clone(),
        effective_sign,
        roots,
        boundaries,
    })
}

impl WidthFunction {
    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// Sign of the width just above 0 (endpoint changes erased).
    pub fn effective_sign(&self) -> Sign {
        self.effective_sign
    }

    /// Sign-change locations, non-decreasing, repeats for single-point pieces.
    pub fn roots(&self) -> &[Scalar] {
        &self.roots
    }

    /// Piece boundaries: 0, midpoints of consecutive change locations, `B`.
    /// Piece `p` spans `boundaries[p] ..= boundaries[p + 1]`.
    pub fn boundaries(&self) -> &[Scalar] {
        &self.boundaries
    }

    pub fn eval(&self, x: &Scalar) -> Result<Scalar> {
        if !self.domain.contains(x) {
            return Err(Error::OutOfDomain {
                x: x.clone().into(),
                b: self.domain.upper().clone().into(),
            });
        }
        let below = self.boundaries.partition_point(|m| m < x);
        let p = below.saturating_sub(1);
        let linear = &self.roots[p] - x;
        let parity = if p % 2 == 0 {
            self.effective_sign
        } else {
            self.effective_sign.flip()
        };
        Ok(parity.apply(linear))
    }

    pub fn abs_eval(&self, x: &Scalar) -> Result<Scalar> {
        Ok(self.eval(x)?.abs())
    }
}

/// Total width description of a step function: either the compiled
/// piecewise-linear form, or a constant infinite width with the function's
/// ambient sign (endpoint changes erased).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthProfile {
    domain: Domain,
    kind: ProfileKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum ProfileKind {
    Constant(Sign),
    Varying(WidthFunction),
}

impl WidthProfile {
    pub fn of(h: &StepFunction) -> WidthProfile {
        let domain = h.domain().clone();
        let kind = match width_function(h) {
            Ok(f) => ProfileKind::Varying(f),
            Err(_) => {
                let sign = effective_sign_at(h, &domain.upper().half())
                    .expect("the domain midpoint is in the domain");
                ProfileKind::Constant(sign)
            }
        };
        WidthProfile { domain, kind }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.kind, ProfileKind::Constant(_))
    }

    pub fn as_function(&self) -> Option<&WidthFunction> {
        match &self.kind {
            ProfileKind::Varying(f) => Some(f),
            ProfileKind::Constant(_) => None,
        }
    }

    /// Signed width at `x` via the compiled form.
    pub fn signed_at(&self, x: &Scalar) -> Result<ExtendedScalar> {
        match &self.kind {
            ProfileKind::Varying(f) => Ok(ExtendedScalar::finite(f.eval(x)?)),
            ProfileKind::Constant(sign) => {
                if !self.domain.contains(x) {
                    return Err(Error::OutOfDomain {
                        x: x.clone().into(),
                        b: self.domain.upper().clone().into(),
                    });
                }
                Ok(ExtendedScalar::infinity(*sign))
            }
        }
    }

    /// Absolute width at `x` via the compiled form.
    pub fn abs_at(&self, x: &Scalar) -> Result<ExtendedScalar> {
        Ok(self.signed_at(x)?.abs())
    }
}

/// Convenience: the smallest absolute width a sample attains, via the direct
/// route.
pub fn sample_width_of(h: &StepFunction, sample: &Sample) -> Result<ExtendedScalar> {
    sample_width(h, sample.points())
}
