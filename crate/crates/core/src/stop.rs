use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

/// Cooperative stop condition: an external cancellation flag, a wall-clock
/// deadline, or both.
#[derive(Clone, Copy, Debug, Default)]
pub struct Stop<'a> {
    flag: Option<&'a AtomicBool>,
    deadline: Option<Instant>,
}

impl<'a> Stop<'a> {
    pub fn never() -> Self {
        Stop::default()
    }

    pub fn new(flag: Option<&'a AtomicBool>, deadline: Option<Instant>) -> Self {
        Stop { flag, deadline }
    }

    pub fn deadline(&self) -> Option<Instant> {
        self.deadline
    }

    pub fn is_set(&self) -> bool {
        if let Some(flag) = self.flag {
            if flag.load(Ordering::Relaxed) {
                return true;
            }
        }
        matches!(self.deadline, Some(d) if Instant::now() >= d)
    }
}
