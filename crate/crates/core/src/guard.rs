//! Size guards that fail fast instead of exhausting memory.

use crate::error::{Error, Result};

/// Maximum number of terms materialized by the naive power expansion.
pub const NAIVE_TERM_LIMIT: u128 = 1_000_000;

/// Largest Pascal row index computed by the row recurrence.
pub const PASCAL_ROW_LIMIT: u128 = 100_000;

pub const OVERRIDE_ENV: &str = "RESPOLY_GUARD_OVERRIDE";

/// True when `RESPOLY_GUARD_OVERRIDE=1` is set. At your own risk.
pub fn overridden() -> bool {
    std::env::var(OVERRIDE_ENV).is_ok_and(|v| v == "1")
}

pub fn check(what: &'static str, size: u128, limit: u128) -> Result<()> {
    if size > limit && !overridden() {
        Err(Error::TooLarge { what, size, limit })
    } else {
        Ok(())
    }
}
