//! Resource caps for expensive computations.
//!
//! The core crate has no clock, so a budget counts abstract work units
//! (roughly one per term operation) and can additionally poll a caller
//! supplied interrupt, which the std side uses for wall-clock deadlines.

use alloc::sync::Arc;
use core::fmt;
use core::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

type Interrupt = Arc<dyn Fn() -> bool + Send + Sync>;

pub struct Budget {
    used: AtomicU64,
    limit: u64,
    interrupt: Option<Interrupt>,
}

const POLL_MASK: u64 = (1 << 12) - 1;

impl Budget {
    pub fn unlimited() -> Budget {
        Budget { used: AtomicU64::new(0), limit: u64::MAX, interrupt: None }
    }

    pub fn with_steps(limit: u64) -> Budget {
        Budget { used: AtomicU64::new(0), limit, interrupt: None }
    }

    /// Adds an interrupt polled every few thousand work units; returning
    /// `true` aborts the computation with [`Error::BudgetExceeded`].
    pub fn interrupt(mut self, f: impl Fn() -> bool + Send + Sync + 'static) -> Budget {
        self.interrupt = Some(Arc::new(f));
        self
    }

    pub fn tick(&self, n: u64) -> Result<()> {
        let before = self.used.fetch_add(n, Ordering::Relaxed);
        let after = before.saturating_add(n);
        if after > self.limit {
            return Err(Error::BudgetExceeded);
        }
        if let Some(f) = &self.interrupt {
            if (before & !POLL_MASK) != (after & !POLL_MASK) && f() {
                return Err(Error::BudgetExceeded);
            }
        }
        Ok(())
    }

    /// Polls the interrupt regardless of the step counter.
    pub fn check(&self) -> Result<()> {
        match &self.interrupt {
            Some(f) if f() => Err(Error::BudgetExceeded),
            _ => Ok(()),
        }
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}

impl fmt::Debug for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Budget")
            .field("used", &self.used())
            .field("limit", &self.limit)
            .field("interrupt", &self.interrupt.is_some())
            .finish()
    }
}
