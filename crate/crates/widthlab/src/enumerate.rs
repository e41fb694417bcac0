//! Exact enumeration of the pass/fail patterns step functions can produce on
//! a finite point set, and a budgeted search for collections maximizing the
//! number of distinct per-sample bit vectors.
//!
//! Two independent routes compute the pattern set:
//!
//! * [`realizable_patterns`] decides each candidate pattern directly: a
//!   pattern is producible exactly when every failing point retains, inside
//!   its margin window clipped to the open domain, a spot not covered by any
//!   passing point's window — a sign change placed on such a spot serves
//!   that failing point without disturbing any passing one.
//! * [`grid_closure_patterns`] enumerates single-change patterns over a
//!   finite probe set that touches every cell of the window arrangement,
//!   then closes them under bitwise AND (a multi-change pattern is the AND
//!   of its changes' patterns; no change at all gives all-ones).
//!
//! Both routes are exact and must agree; they check each other in the test
//! suites.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;

use crate::bits::{Bits, HyperVector, Pattern};
use crate::bounds::{trace_bound, BoundParams};
use crate::canon::GeneralizedCollection;
use crate::error::Error;
use crate::hyper::{Mode, Threshold};
use crate::model::{collection_support, Domain, Sample};
use crate::sampling::rng_for;
use crate::scalar::Scalar;
use crate::subsets::{combinations, pick};
use crate::Result;

/// An interval with individually open or closed ends used by the feasibility
/// computation; may be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Span {
    lo: Scalar,
    hi: Scalar,
    lo_open: bool,
    hi_open: bool,
}

impl Span {
    fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && (self.lo_open || self.hi_open))
    }

    /// Some point of the span: a closed end if one exists, otherwise the
    /// midpoint.
    fn witness(&self) -> Scalar {
        debug_assert!(!self.is_empty());
        if !self.lo_open {
            self.lo.clone()
        } else if !self.hi_open {
            self.hi.clone()
        } else {
            Scalar::midpoint(&self.lo, &self.hi)
        }
    }

    fn intersect(&self, other: &Span) -> Span {
        use std::cmp::Ordering::*;
        let (lo, lo_open) = match self.lo.cmp(&other.lo) {
            Greater => (self.lo.clone(), self.lo_open),
            Less => (other.lo.clone(), other.lo_open),
            Equal => (self.lo.clone(), self.lo_open || other.lo_open),
        };
        let (hi, hi_open) = match self.hi.cmp(&other.hi) {
            Less => (self.hi.clone(), self.hi_open),
            Greater => (other.hi.clone(), other.hi_open),
            Equal => (self.hi.clone(), self.hi_open || other.hi_open),
        };
        Span {
            lo,
            hi,
            lo_open,
            hi_open,
        }
    }

    /// The parts of `self` not covered by `cut`: zero, one, or two spans.
    fn subtract(&self, cut: &Span) -> Vec<Span> {
        if cut.is_empty() {
            return vec![self.clone()];
        }
        let misses_low = cut.hi < self.lo || (cut.hi == self.lo && (cut.hi_open || self.lo_open));
        let misses_high = cut.lo > self.hi || (cut.lo == self.hi && (cut.lo_open || self.hi_open));
        if misses_low || misses_high {
            return vec![self.clone()];
        }
        let mut out = Vec::with_capacity(2);
        let left = Span {
            lo: self.lo.clone(),
            lo_open: self.lo_open,
            hi: cut.lo.clone(),
            hi_open: !cut.lo_open,
        };
        if !left.is_empty() {
            out.push(left);
        }
        let right = Span {
            lo: cut.hi.clone(),
            lo_open: !cut.hi_open,
            hi: self.hi.clone(),
            hi_open: self.hi_open,
        };
        if !right.is_empty() {
            out.push(right);
        }
        out
    }
}

/// The margin window around `x`: the sign-change locations that make the
/// point fail the margin test. Closed ends under strict comparison
/// (distance exactly `gamma` fails), open ends otherwise.
fn window(x: &Scalar, t: &Threshold) -> Span {
    let open = matches!(t.mode(), Mode::NonStrict);
    Span {
        lo: x - t.gamma(),
        hi: x + t.gamma(),
        lo_open: open,
        hi_open: open,
    }
}

const MAX_POINTS: usize = 20;

/// A finite set of labeled positions inside a domain, the ground set for
/// pattern enumeration. Points are sorted, deduplicated, and capped at 20
/// (enumeration walks all `2^n` candidate patterns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizabilityInstance {
    domain: Domain,
    points: Vec<Scalar>,
}

impl RealizabilityInstance {
    pub fn new(domain: Domain, mut points: Vec<Scalar>) -> Result<RealizabilityInstance> {
        if points.is_empty() {
            return Err(Error::EmptySample);
        }
        points.sort();
        points.dedup();
        if points.len() > MAX_POINTS {
            return Err(Error::BadConfig(format!(
                "pattern enumeration is capped at {MAX_POINTS} points, got {}",
                points.len()
            )));
        }
        for x in &points {
            if !domain.contains(x) {
                return Err(Error::OutOfDomain {
                    x: x.clone().into(),
                    b: domain.upper().clone().into(),
                });
            }
        }
        Ok(RealizabilityInstance { domain, points })
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn points(&self) -> &[Scalar] {
        &self.points
    }

    fn open_interior(&self) -> Span {
        Span {
            lo: Scalar::zero(),
            hi: self.domain.upper().clone(),
            lo_open: true,
            hi_open: true,
        }
    }
}

/// For each failing point of `pattern`, a sign-change location that serves
/// it: inside the point's own window, strictly inside the domain, and
/// outside every passing point's window. `None` when some failing point has
/// no such location (the pattern is not producible); `Some(empty)` for the
/// all-passing pattern (no sign change needed).
pub fn realizing_roots(
    inst: &RealizabilityInstance,
    t: &Threshold,
    pattern: &Pattern,
) -> Result<Option<Vec<Scalar>>> {
    if pattern.len() != inst.points.len() {
        return Err(Error::WrongSampleSize {
            expected: inst.points.len(),
            got: pattern.len(),
        });
    }
    let pass_windows: Vec<Span> = inst
        .points
        .iter()
        .enumerate()
        .filter(|(i, _)| pattern.get(*i))
        .map(|(_, x)| window(x, t))
        .collect();
    let interior = inst.open_interior();
    let mut roots = Vec::new();
    for (i, x) in inst.points.iter().enumerate() {
        if pattern.get(i) {
            continue;
        }
        let mut spans = vec![window(x, t).intersect(&interior)];
        for cut in &pass_windows {
            spans = spans.iter().flat_map(|s| s.subtract(cut)).collect();
            if spans.is_empty() {
                return Ok(None);
            }
        }
        match spans.iter().find(|s| !s.is_empty()) {
            Some(span) => roots.push(span.witness()),
            None => return Ok(None),
        }
    }
    roots.sort();
    roots.dedup();
    Ok(Some(roots))
}

/// All patterns step functions can produce on the instance's points, by
/// direct feasibility: bit `i` of a pattern is the margin test at point `i`.
pub fn realizable_patterns(
    inst: &RealizabilityInstance,
    t: &Threshold,
) -> Result<BTreeSet<Pattern>> {
    let n = inst.points.len();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1u64 << n) {
        let pattern = Bits::from_bools(&(0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>());
        if realizing_roots(inst, t, &pattern)?.is_some() {
            out.insert(pattern);
        }
    }
    Ok(out)
}

const MAX_PROBES: usize = 20_000;

/// The same pattern set via the independent probe-and-close route: collect a
/// probe location in every cell of the window arrangement (window ends,
/// sample points, midpoints of consecutive ends, plus a redundant uniform
/// `delta`-grid), take each probe's single-change pattern, and close under
/// bitwise AND together with the all-ones pattern.
pub fn grid_closure_patterns(
    inst: &RealizabilityInstance,
    t: &Threshold,
    delta: &Scalar,
) -> Result<BTreeSet<Pattern>> {
    if !delta.is_positive() {
        return Err(Error::BadConfig(format!(
            "probe spacing must be positive, got {delta}"
        )));
    }
    let b = inst.domain.upper();
    if (b / delta)
        .floor_usize()
        .is_none_or(|steps| steps > MAX_PROBES)
    {
        return Err(Error::BadConfig(format!(
            "probe spacing {delta} yields more than {MAX_PROBES} grid probes"
        )));
    }
    let interior = |v: &Scalar| v.is_positive() && v < b;

    let mut probes: BTreeSet<Scalar> = BTreeSet::new();
    let mut k = 1i64;
    loop {
        let g = delta * &Scalar::from_int(k);
        if !interior(&g) {
            break;
        }
        probes.insert(g);
        k += 1;
    }
    let mut cuts: BTreeSet<Scalar> = BTreeSet::new();
    cuts.insert(Scalar::zero());
    cuts.insert(b.clone());
    for x in &inst.points {
        for v in [x - t.gamma(), x.clone(), x + t.gamma()] {
            if interior(&v) {
                probes.insert(v.clone());
            }
            if !v.is_negative() && v <= *b {
                cuts.insert(v);
            }
        }
    }
    let cuts: Vec<Scalar> = cuts.into_iter().collect();
    for pair in cuts.windows(2) {
        let mid = Scalar::midpoint(&pair[0], &pair[1]);
        if interior(&mid) {
            probes.insert(mid);
        }
    }

    let n = inst.points.len();
    let single = |r: &Scalar| -> Pattern {
        let bools: Vec<bool> = inst
            .points
            .iter()
            .map(|x| {
                let dist = (x - r).abs();
                match t.mode() {
                    Mode::Strict => dist > *t.gamma(),
                    Mode::NonStrict => dist >= *t.gamma(),
                }
            })
            .collect();
        Bits::from_bools(&bools)
    };
    let singles: BTreeSet<Pattern> = probes.iter().map(single).collect();

    let mut closed: BTreeSet<Pattern> = singles.clone();
    closed.insert(Bits::ones(n));
    let mut frontier: Vec<Pattern> = closed.iter().cloned().collect();
    while let Some(p) = frontier.pop() {
        for s in &singles {
            let q = p.and(s);
            if closed.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    Ok(closed)
}

/// All distinct per-sample bit vectors step functions can produce on `sets`:
/// each producible pattern on the union of the sets' points induces one
/// vector (a sample passes when all its points pass).
pub fn class_trace_vectors(
    sets: &[Sample],
    t: &Threshold,
    domain: &Domain,
) -> Result<BTreeSet<HyperVector>> {
    let support = collection_support(sets);
    let inst = RealizabilityInstance::new(domain.clone(), support.clone())?;
    let patterns = realizable_patterns(&inst, t)?;
    let index: BTreeMap<&Scalar, usize> = support.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut vectors = BTreeSet::new();
    for pattern in &patterns {
        let mut v = Bits::zeros(sets.len());
        for (si, sample) in sets.iter().enumerate() {
            let pass = sample.points().iter().all(|p| pattern.get(index[p]));
            if pass {
                v.set(si, true);
            }
        }
        vectors.insert(v);
    }
    Ok(vectors)
}

/// Size of [`class_trace_vectors`].
pub fn class_trace_count(sets: &[Sample], t: &Threshold, domain: &Domain) -> Result<BigUint> {
    Ok(BigUint::from(class_trace_vectors(sets, t, domain)?.len()))
}

/// How the search picks the collections it evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthMode {
    /// Every `m`-point support from the grid, each carrying the family of
    /// all its `ell`-point samples (the largest family, so per support this
    /// dominates every uniform collection on it).
    Exhaustive,
    /// Every `m`-point support, each with every extremal-shape family: one
    /// `ell`-point leading sample plus the remaining points as singletons.
    Canonical,
    /// Seeded random supports and random covering families.
    Random,
}

impl GrowthMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            GrowthMode::Exhaustive => "exhaustive",
            GrowthMode::Canonical => "canonical",
            GrowthMode::Random => "random",
        }
    }
}

/// Parameters of a growth search.
#[derive(Clone, Debug)]
pub struct GrowthSearchConfig {
    pub domain: Domain,
    pub threshold: Threshold,
    pub ell: usize,
    pub m: usize,
    pub mode: GrowthMode,
    /// Maximum number of families to evaluate.
    pub budget: usize,
    /// Stream seed for [`GrowthMode::Random`]; echoed in reports either way.
    pub seed: u64,
    /// Candidate support points; when absent, `m` evenly spread interior
    /// points (odd multiples of `B / 2m`) are used.
    pub grid: Option<Vec<Scalar>>,
}

impl GrowthSearchConfig {
    /// The candidate support points the search draws from.
    pub fn effective_grid(&self) -> Result<Vec<Scalar>> {
        let grid = match &self.grid {
            Some(g) => {
                let mut g = g.clone();
                g.sort();
                g.dedup();
                for x in &g {
                    if !self.domain.contains(x) {
                        return Err(Error::OutOfDomain {
                            x: x.clone().into(),
                            b: self.domain.upper().clone().into(),
                        });
                    }
                }
                g
            }
            None => (0..self.m)
                .map(|k| {
                    self.domain.upper()
                        * &Scalar::new(2 * k as i64 + 1, 2 * self.m as i64)
                            .expect("m > 0 checked in validate")
                })
                .collect(),
        };
        Ok(grid)
    }

    fn validate(&self) -> Result<Vec<Scalar>> {
        if self.ell < 1 || self.ell > self.m {
            return Err(Error::BadConfig(format!(
                "need 1 <= ell <= m, got ell={}, m={}",
                self.ell, self.m
            )));
        }
        if self.m > MAX_POINTS {
            return Err(Error::BadConfig(format!(
                "support size is capped at {MAX_POINTS}, got {}",
                self.m
            )));
        }
        if self.budget == 0 {
            return Err(Error::BadConfig("budget must be at least 1".into()));
        }
        let grid = self.effective_grid()?;
        if grid.len() < self.m {
            return Err(Error::BadConfig(format!(
                "the grid has {} points, fewer than m={}",
                grid.len(),
                self.m
            )));
        }
        Ok(grid)
    }

    /// The exact cap the search results are compared against.
    pub fn bound_params(&self) -> Result<BoundParams> {
        BoundParams::new(
            self.domain.upper().clone(),
            self.threshold.gamma().clone(),
            self.ell,
            self.m,
        )
    }
}

/// Outcome of a growth search.
#[derive(Clone, Debug)]
pub struct GrowthResult {
    /// Largest distinct-vector count seen.
    pub best_count: BigUint,
    /// A collection attaining it (first one found in plan order).
    pub best: Option<GeneralizedCollection>,
    /// The exact cap for these parameters.
    pub bound: BigUint,
    /// Families evaluated.
    pub evaluated: usize,
    /// True when the budget cut off unevaluated candidates.
    pub budget_exhausted: bool,
}

impl GrowthResult {
    pub fn within_bound(&self) -> bool {
        self.best_count <= self.bound
    }

    /// `bound - best_count`; negative exactly when the cap is violated.
    pub fn gap(&self) -> BigInt {
        BigInt::from(self.bound.clone()) - BigInt::from(self.best_count.clone())
    }
}

struct SupportPlan {
    support: Vec<Scalar>,
    families: Vec<Vec<Sample>>,
}

fn sample_of(points: Vec<Scalar>) -> Sample {
    Sample::new(points).expect("search families never build empty samples")
}

fn all_subsets_family(support: &[Scalar], ell: usize) -> Vec<Sample> {
    combinations(support.len(), ell)
        .map(|idx| sample_of(pick(support, &idx)))
        .collect()
}

fn extremal_family(support: &[Scalar], lead: &[usize]) -> Vec<Sample> {
    let lead_set: BTreeSet<usize> = lead.iter().copied().collect();
    let mut family = vec![sample_of(pick(support, lead))];
    for (i, p) in support.iter().enumerate() {
        if !lead_set.contains(&i) {
            family.push(sample_of(vec![p.clone()]));
        }
    }
    family
}

fn materialize(config: &GrowthSearchConfig, grid: &[Scalar]) -> (Vec<SupportPlan>, bool) {
    let mut plans: Vec<SupportPlan> = Vec::new();
    let mut families = 0usize;
    let mut truncated = false;
    match config.mode {
        GrowthMode::Exhaustive | GrowthMode::Canonical => {
            'outer: for support_idx in combinations(grid.len(), config.m) {
                let support = pick(grid, &support_idx);
                let mut plan = SupportPlan {
                    support: support.clone(),
                    families: Vec::new(),
                };
                match config.mode {
                    GrowthMode::Exhaustive => {
                        if families == config.budget {
                            truncated = true;
                            break 'outer;
                        }
                        plan.families.push(all_subsets_family(&support, config.ell));
                        families += 1;
                    }
                    GrowthMode::Canonical => {
                        for lead in combinations(config.m, config.ell) {
                            if families == config.budget {
                                truncated = true;
                                if !plan.families.is_empty() {
                                    plans.push(plan);
                                }
                                break 'outer;
                            }
                            plan.families.push(extremal_family(&support, &lead));
                            families += 1;
                        }
                    }
                    GrowthMode::Random => unreachable!(),
                }
                plans.push(plan);
            }
        }
        GrowthMode::Random => {
            for i in 0..config.budget {
                let mut rng = rng_for(config.seed, i as u64);
                let support_idx: Vec<usize> = {
                    let mut idx: Vec<usize> =
                        rand::seq::index::sample(&mut rng, grid.len(), config.m).into_vec();
                    idx.sort_unstable();
                    idx
                };
                let support = pick(grid, &support_idx);
                let family = random_covering_family(&mut rng, &support, config.ell);
                plans.push(SupportPlan {
                    support,
                    families: vec![family],
                });
            }
        }
    }
    (plans, truncated)
}

fn random_covering_family(
    rng: &mut rand_chacha::ChaCha8Rng,
    support: &[Scalar],
    ell: usize,
) -> Vec<Sample> {
    use rand::Rng;
    let m = support.len();
    let n_sets = rng.gen_range(1..=(2 * m).clamp(2, 12));
    let mut sets: Vec<Sample> = Vec::new();
    for _ in 0..n_sets {
        let idx = rand::seq::index::sample(rng, m, ell).into_vec();
        sets.push(sample_of(pick(support, &idx)));
    }
    let covered: BTreeSet<&Scalar> = sets.iter().flat_map(|s| s.points()).collect();
    let missing: Vec<Scalar> = support
        .iter()
        .filter(|p| !covered.contains(p))
        .cloned()
        .collect();
    for p in missing {
        let mut pts = vec![p.clone()];
        pts.extend(support.iter().filter(|q| **q != p).take(ell - 1).cloned());
        sets.push(sample_of(pts));
    }
    sets
}

/// Runs the search: materializes the budgeted plan deterministically, scores
/// every family (distinct-vector count of the whole function class on it),
/// and reports the first maximum in plan order. Scoring is parallelized per
/// support; the result never depends on the worker count.
pub fn growth_search(config: &GrowthSearchConfig) -> Result<GrowthResult> {
    let grid = config.validate()?;
    let bound = trace_bound(&config.bound_params()?);
    let (plans, budget_exhausted) = materialize(config, &grid);
    let evaluated: usize = plans.iter().map(|p| p.families.len()).sum();

    // Score each support's families together so the expensive pattern
    // enumeration runs once per support.
    let scored: Vec<(BigUint, usize)> = plans
        .par_iter()
        .map(|plan| -> Result<(BigUint, usize)> {
            let inst = RealizabilityInstance::new(config.domain.clone(), plan.support.clone())?;
            let patterns = realizable_patterns(&inst, &config.threshold)?;
            let index: BTreeMap<&Scalar, usize> = inst
                .points()
                .iter()
                .enumerate()
                .map(|(i, p)| (p, i))
                .collect();
            let mut best: Option<(BigUint, usize)> = None;
            for (fi, family) in plan.families.iter().enumerate() {
                let mut vectors: BTreeSet<Bits> = BTreeSet::new();
                for pattern in &patterns {
                    let mut v = Bits::zeros(family.len());
                    for (si, sample) in family.iter().enumerate() {
                        if sample.points().iter().all(|p| pattern.get(index[p])) {
                            v.set(si, true);
                        }
                    }
                    vectors.insert(v);
                }
                let count = BigUint::from(vectors.len());
                let better = match &best {
                    None => true,
                    Some((c, _)) => count > *c,
                };
                if better {
                    best = Some((count, fi));
                }
            }
            Ok(best.expect("every plan holds at least one family"))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut winner: Option<(BigUint, usize, usize)> = None;
    for (pi, (count, fi)) in scored.into_iter().enumerate() {
        let better = match &winner {
            None => true,
            Some((c, _, _)) => count > *c,
        };
        if better {
            winner = Some((count, pi, fi));
        }
    }
    let (best_count, best) = match winner {
        Some((count, pi, fi)) => {
            let family = plans[pi].families[fi].clone();
            (count, Some(GeneralizedCollection::new(family)?))
        }
        None => (BigUint::from(0u32), None),
    };
    Ok(GrowthResult {
        best_count,
        best,
        bound,
        evaluated,
        budget_exhausted,
    })
}

/// Convenience: the full-family score of the evenly spread `m`-point support
/// for the given parameters — the search's exhaustive default with budget 1.
pub fn default_grid_score(
    domain: &Domain,
    threshold: &Threshold,
    ell: usize,
    m: usize,
) -> Result<GrowthResult> {
    growth_search(&GrowthSearchConfig {
        domain: domain.clone(),
        threshold: threshold.clone(),
        ell,
        m,
        mode: GrowthMode::Exhaustive,
        budget: 1,
        seed: 0,
        grid: None,
    })
}
