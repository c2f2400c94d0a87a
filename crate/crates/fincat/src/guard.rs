//! Size guards for the exhaustive searches.
//!
//! Natural-transformation enumeration and cocone searches are inherently
//! exponential. Every searching operation takes a [`SearchGuard`] and fails
//! fast with the measured estimate instead of running away.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchGuard {
    /// Maximum admissible search-space estimate.
    pub cap: u64,
}

pub const DEFAULT_GUARD_CAP: u64 = 1_000_000;

impl Default for SearchGuard {
    fn default() -> Self {
        SearchGuard {
            cap: DEFAULT_GUARD_CAP,
        }
    }
}

impl SearchGuard {
    pub fn new(cap: u64) -> Self {
        SearchGuard { cap }
    }

    /// Fails with [`Error::GuardExceeded`] when `estimate` is over the cap.
    ///
    /// Estimates are tracked as `f64` so that doubly-exponential blowups
    /// saturate at infinity instead of wrapping.
    pub fn admit(&self, estimate: f64, context: &str) -> Result<()> {
        if estimate.is_nan() || estimate > self.cap as f64 {
            Err(Error::GuardExceeded {
                estimate,
                cap: self.cap,
                context: context.to_string(),
            })
        } else {
            Ok(())
        }
    }
}
