//! Combinatorial caps on how many distinct per-sample bit vectors a
//! collection can produce, plus the bit-string machinery behind them.
//!
//! Everything here is exact big-integer arithmetic, with one deliberate
//! exception: [`trace_bound_estimate`] is a closed-form floating-point
//! estimate and the only floating-point computation in the crate.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::bits::Bits;
use crate::error::Error;
use crate::scalar::Scalar;
use crate::subsets::combinations;
use crate::Result;

/// Exact binomial coefficient, 0 when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut out = BigUint::one();
    for i in 1..=k {
        out = out * BigUint::from(n - k + i) / BigUint::from(i);
    }
    out
}

/// Number of subsets of an `n`-point set with at most `d` points:
/// the sum of `C(n, i)` for `i = 0..=min(d, n)`.
pub fn sauer_phi(d: usize, n: usize) -> BigUint {
    let mut out = BigUint::zero();
    for i in 0..=d.min(n) {
        out += binomial(n, i);
    }
    out
}

/// Shared parameters of the counting bounds: a domain length `b`, a margin
/// `gamma`, a leading-set size `ell`, and a support size `m` with
/// `1 <= ell <= m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundParams {
    b: Scalar,
    gamma: Scalar,
    ell: usize,
    m: usize,
    k: usize,
}

impl BoundParams {
    pub fn new(b: Scalar, gamma: Scalar, ell: usize, m: usize) -> Result<BoundParams> {
        if !b.is_positive() {
            return Err(Error::BadConfig(format!(
                "domain length must be positive, got {b}"
            )));
        }
        if !gamma.is_positive() {
            return Err(Error::NonPositiveGamma(gamma.into()));
        }
        if ell < 1 || ell > m {
            return Err(Error::BadConfig(format!(
                "need 1 <= ell <= m, got ell={ell}, m={m}"
            )));
        }
        let ratio = &b / &(Scalar::from_int(2) * &gamma);
        let k = ratio
            .floor_usize()
            .ok_or_else(|| Error::BadConfig(format!("b/(2*gamma) = {ratio} is out of range")))?;
        Ok(BoundParams {
            b,
            gamma,
            ell,
            m,
            k,
        })
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn gamma(&self) -> &Scalar {
        &self.gamma
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Exact floor of `b / (2 * gamma)`: how many disjoint length-`2*gamma`
    /// stretches fit in the domain.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of non-leading support points, `m - ell`.
    pub fn n(&self) -> usize {
        self.m - self.ell
    }
}

/// Exact cap on the number of distinct per-sample bit vectors:
/// `2 * sauer_phi(2k, m - ell)` with `k` from [`BoundParams::k`].
pub fn trace_bound(params: &BoundParams) -> BigUint {
    BigUint::from(2u32) * sauer_phi(2 * params.k(), params.n())
}

/// Closed-form estimate `2 * (e * gamma * (m - ell) / b)^(b / gamma)`,
/// meaningful when `m - ell > b / gamma` (checked exactly; otherwise
/// [`Error::ConditionNotMet`]). This is the crate's only floating-point
/// computation; callers compare it against [`trace_bound`] with an explicit
/// tolerance.
pub fn trace_bound_estimate(params: &BoundParams) -> Result<f64> {
    let ratio = params.b() / params.gamma();
    if Scalar::from_int(params.n() as i64) <= ratio {
        return Err(Error::ConditionNotMet(format!(
            "the estimate needs m - ell > b/gamma, got {} <= {ratio}",
            params.n()
        )));
    }
    let n = params.n() as f64;
    let g = params.gamma().to_f64();
    let b = params.b().to_f64();
    let base = std::f64::consts::E * g * n / b;
    Ok(2.0 * base.powf(b / g))
}

/// `trace_bound` as an `f64` for comparisons against the estimate; infinite
/// when the exact value overflows the float range.
pub fn trace_bound_as_f64(params: &BoundParams) -> f64 {
    trace_bound(params).to_f64().unwrap_or(f64::INFINITY)
}

fn one_run_starts(mask: u32) -> u32 {
    (mask & !(mask << 1)).count_ones()
}

fn mask_to_bits(mask: u32, n: usize) -> Bits {
    let bools: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
    Bits::from_bools(&bools)
}

const MAX_ENUM_LEN: usize = 20;

/// All length-`n` bit strings with at most `k` maximal 1-runs, by direct
/// enumeration (`n <= 20`).
pub fn run_bounded_patterns(k: usize, n: usize) -> Result<BTreeSet<Bits>> {
    if n > MAX_ENUM_LEN {
        return Err(Error::BadConfig(format!(
            "pattern enumeration is capped at {MAX_ENUM_LEN} positions, got {n}"
        )));
    }
    let mut out = BTreeSet::new();
    for mask in 0..(1u64 << n) {
        let mask = mask as u32;
        if one_run_starts(mask) as usize <= k {
            out.insert(mask_to_bits(mask, n));
        }
    }
    Ok(out)
}

/// Closed-form size of [`run_bounded_patterns`]:
/// the sum of `C(n + 1, 2j)` for `j = 0..=k`.
pub fn run_bounded_count(k: usize, n: usize) -> BigUint {
    let mut out = BigUint::zero();
    for j in 0..=k {
        out += binomial(n + 1, 2 * j);
    }
    out
}

/// Largest `d` such that some `d` positions out of `n` are shattered by the
/// strings with at most `k` maximal 1-runs: every one of the `2^d` labelings
/// of those positions is the restriction of some string in the class.
/// Computed by exhaustive search over position subsets (`n <= 16`).
pub fn run_class_dimension(k: usize, n: usize) -> Result<usize> {
    if n > 16 {
        return Err(Error::BadConfig(format!(
            "dimension search is capped at 16 positions, got {n}"
        )));
    }
    let class: Vec<u32> = (0..(1u64 << n) as u32)
        .filter(|&mask| one_run_starts(mask) as usize <= k)
        .collect();
    let mut best = 0;
    for d in 1..=n {
        let full = 1usize << d;
        let mut any = false;
        for positions in combinations(n, d) {
            let mut seen: HashSet<usize> = HashSet::with_capacity(full);
            for &mask in &class {
                let mut restricted = 0usize;
                for (j, &p) in positions.iter().enumerate() {
                    if mask >> p & 1 == 1 {
                        restricted |= 1 << j;
                    }
                }
                seen.insert(restricted);
                if seen.len() == full {
                    break;
                }
            }
            if seen.len() == full {
                any = true;
                break;
            }
        }
        if any {
            best = d;
        } else {
            break;
        }
    }
    Ok(best)
}
