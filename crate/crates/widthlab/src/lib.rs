//! Exact machinery for binary step functions on a bounded interval `[0, B]`:
//! signed width profiles (distance to the nearest interior sign change),
//! threshold patterns over point samples, canonical disjointification of
//! sample collections, exact pattern enumeration, and the combinatorial
//! bounds that cap how many distinct threshold vectors a collection admits.
//!
//! All geometry and counting is exact rational / big-integer arithmetic.
//! Floating point appears in exactly one place, the closed-form estimate
//! [`bounds::trace_bound_estimate`], and is quarantined there.

pub mod bits;
pub mod bounds;
pub mod canon;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod hyper;
pub mod model;
pub mod sampling;
pub mod scalar;
pub mod subsets;
pub mod width;

pub use bits::{Bits, HyperVector, Pattern};
pub use error::Error;
pub use scalar::{ExtendedScalar, Scalar, Sign};

pub type Result<T> = std::result::Result<T, Error>;

use std::sync::OnceLock;

static WORKER_INIT: OnceLock<usize> = OnceLock::new();

/// Sizes the global rayon pool from `WIDTHLAB_THREADS` (a positive integer).
/// The first call wins; later calls and an unset or unparsable variable leave
/// the default pool. Results never depend on the worker count, only runtime.
pub fn configure_workers_from_env() -> usize {
    *WORKER_INIT.get_or_init(|| {
        let requested = std::env::var("WIDTHLAB_THREADS")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0);
        if let Some(n) = requested {
            // Ignore the error: some other code may have built the pool first.
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
            n
        } else {
            0
        }
    })
}
