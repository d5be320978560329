//! Enumeration budgets.
//!
//! Every exhaustive routine estimates its work up front (number of
//! configurations or patterns it will touch) and refuses to start when the
//! estimate is over the cap, so a result is either complete or an explicit
//! error.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Budget {
    /// Cap on the number of enumerated assignments in one operation.
    pub max_patterns: u128,
    /// Cap on the number of cells in a single enumerated window.
    pub max_window: usize,
    /// Cap on witness support sizes.
    pub max_support: usize,
    deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_patterns: 1 << 28,
            max_window: 96,
            max_support: 16,
            deadline: None,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_patterns: u128::MAX,
            max_window: usize::MAX,
            max_support: usize::MAX,
            deadline: None,
        }
    }

    pub fn with_max_patterns(mut self, n: u128) -> Self {
        self.max_patterns = n;
        self
    }

    pub fn with_max_window(mut self, n: usize) -> Self {
        self.max_window = n;
        self
    }

    pub fn with_max_support(mut self, n: usize) -> Self {
        self.max_support = n;
        self
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.deadline = Some(Instant::now() + limit);
        self
    }

    pub fn check_patterns(&self, during: &str, needed: u128) -> Result<()> {
        if needed > self.max_patterns {
            return Err(Error::budget(during, needed, self.max_patterns));
        }
        self.check_time(during)
    }

    pub fn check_window(&self, during: &str, cells: usize) -> Result<()> {
        if cells > self.max_window {
            return Err(Error::budget(
                during,
                format!("{cells} cells"),
                format!("{} cells", self.max_window),
            ));
        }
        Ok(())
    }

    pub fn check_support(&self, during: &str, support: usize) -> Result<()> {
        if support > self.max_support {
            return Err(Error::budget(
                during,
                format!("support {support}"),
                format!("support {}", self.max_support),
            ));
        }
        Ok(())
    }

    pub fn check_time(&self, during: &str) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::TimeLimit {
                during: during.to_string(),
            }),
            _ => Ok(()),
        }
    }
}

/// `base^exp` saturating at `u128::MAX`.
pub fn saturating_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
        if acc == u128::MAX {
            break;
        }
    }
    acc
}
