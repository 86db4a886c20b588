//! Enumeration budgets and the `PRESERVERLAB_BUDGET` override.

use crate::error::{Error, Result};

/// Tuple budget for exhaustive zero-set scans: q^{n²k} ≤ 2^24.
pub const TUPLE_BUDGET: u128 = 1 << 24;
/// Vector exhaustion budget for the lemma oracles.
pub const VECTOR_BUDGET: u128 = 1 << 16;
/// Matrix exhaustion budget for the lemma oracles.
pub const MATRIX_BUDGET: u128 = 1 << 20;

const ENV_VAR: &str = "PRESERVERLAB_BUDGET";

/// The effective limit: `default` unless the environment variable holds a
/// positive integer, which then replaces every cap.
pub fn limit(default: u128) -> u128 {
    std::env::var(ENV_VAR)
        .ok()
        .and_then(|s| s.trim().parse::<u128>().ok())
        .filter(|v| *v > 0)
        .unwrap_or(default)
}

pub fn check(needed: u128, default: u128) -> Result<()> {
    let lim = limit(default);
    if needed > lim {
        Err(Error::Budget { needed, limit: lim })
    } else {
        Ok(())
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub fn pow_sat(base: u128, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}
