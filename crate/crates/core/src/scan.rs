//! Range scans of the criterion.
//!
//! The range is split into `jobs` contiguous blocks, one per worker thread.
//! Records are returned in increasing `n` whatever the worker count.

use std::ops::RangeInclusive;
use std::sync::atomic::{AtomicU64, Ordering};
use std::thread;

use crate::error::{Error, Result};
use crate::modarith::check_modulus;
use crate::wilson::{evaluate, ScanRecord};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanSummary {
    /// Rows where the criterion congruence holds.
    pub hits: u64,
    pub misses: u64,
    /// Rows below `(2c+3)^2`.
    pub not_applicable: u64,
    pub violations: u64,
}

impl ScanSummary {
    fn add(&mut self, record: &ScanRecord) {
        if record.criterion_passes {
            self.hits += 1;
        } else {
            self.misses += 1;
        }
        if !record.classification.applicable {
            self.not_applicable += 1;
        }
        if record.is_violation() {
            self.violations += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub records: Vec<ScanRecord>,
    pub summary: ScanSummary,
    /// Set when fail-fast cut the scan short after a violation.
    pub stopped_early: bool,
}

/// Evaluates the criterion for every `n` in `range` at fixed `c`.
///
/// Violations are recorded in the report, not raised. With `fail_fast` the
/// report ends at the first violating row.
pub fn scan_range(
    c: u64,
    range: RangeInclusive<u64>,
    jobs: usize,
    fail_fast: bool,
) -> Result<ScanReport> {
    scan_with(c, range, jobs, fail_fast, evaluate)
}

pub(crate) fn scan_with<F>(
    c: u64,
    range: RangeInclusive<u64>,
    jobs: usize,
    fail_fast: bool,
    eval: F,
) -> Result<ScanReport>
where
    F: Fn(u64, u64) -> Result<ScanRecord> + Sync,
{
    let (lo, hi) = (*range.start(), *range.end());
    if lo > hi {
        return Err(Error::domain(format!("empty scan range [{lo}, {hi}]")));
    }
    check_modulus(hi)?;
    if lo < 2 || c > lo - 2 {
        return Err(Error::domain(format!(
            "scan needs c <= n_lo - 2, got c = {c}, n_lo = {lo}"
        )));
    }
    if jobs == 0 {
        return Err(Error::domain("worker count must be positive"));
    }

    let first_violation = AtomicU64::new(u64::MAX);
    let blocks = partition(lo, hi, jobs);
    let results: Vec<Result<Vec<ScanRecord>>> = thread::scope(|scope| {
        let handles: Vec<_> = blocks
            .into_iter()
            .map(|block| {
                let first_violation = &first_violation;
                let eval = &eval;
                scope.spawn(move || {
                    let mut out = Vec::new();
                    for n in block {
                        if fail_fast && n > first_violation.load(Ordering::Relaxed) {
                            break;
                        }
                        let record = eval(n, c)?;
                        if record.is_violation() {
                            first_violation.fetch_min(n, Ordering::Relaxed);
                        }
                        out.push(record);
                    }
                    Ok(out)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scan worker panicked"))
            .collect()
    });

    let mut summary = ScanSummary::default();
    let mut records = Vec::new();
    let mut stopped_early = false;
    'blocks: for block in results {
        for record in block? {
            summary.add(&record);
            let violation = record.is_violation();
            records.push(record);
            if fail_fast && violation {
                stopped_early = records.last().map(|r| r.n) != Some(hi);
                break 'blocks;
            }
        }
    }
    Ok(ScanReport {
        records,
        summary,
        stopped_early,
    })
}

/// Splits `[lo, hi]` into at most `jobs` contiguous, non-empty blocks.
fn partition(lo: u64, hi: u64, jobs: usize) -> Vec<RangeInclusive<u64>> {
    let len = (hi - lo) as u128 + 1;
    let jobs = (jobs as u128).min(len);
    let base = len / jobs;
    let extra = len % jobs;
    let mut start = lo as u128;
    (0..jobs)
        .map(|i| {
            let size = base + u128::from(i < extra);
            let block = start as u64..=(start + size - 1) as u64;
            start += size;
            block
        })
        .collect()
}
