//! Acceptance criteria, run by `cargo test -p toda-suite --test acceptance`.

use std::time::{Duration, Instant};

/// Outcome of one criterion.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Verdict {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {} {} ({:.1} s): {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

/// Runs `f`, turning errors into failures and checking the time budget.
pub fn judge<F>(id: usize, title: &'static str, budget: Option<Duration>, f: F) -> Verdict
where
    F: FnOnce() -> Result<(bool, String), String>,
{
    let start = Instant::now();
    let (mut passed, mut detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    let elapsed = start.elapsed();
    if let Some(b) = budget {
        if elapsed > b {
            passed = false;
            detail.push_str(&format!("; over the {} s budget", b.as_secs()));
        }
    }
    Verdict { id, title, passed, detail, elapsed }
}
