//! Sweeps that run the checkers over whole domains and collect failures.

use crate::error::Result;
use crate::numtheory::{
    falling_factorial_congruence_check, is_prime, lemma1_holds, lemma2_holds,
    prime_power_decompose, valuation_bound_holds, CheckMethod, LemmaCheck,
};
use crate::oracle::{brute_force_sum, complement_identity_check, eq3_congruence_check};
use crate::wilson::elem_sym_sum_mod;

/// Every integer is sampled up to this bound, geometrically beyond it.
pub const DENSE_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub checker: &'static str,
    pub checked: u64,
    /// Near-ties the exact fallback could not settle.
    pub boundary: u64,
    pub violations: Vec<String>,
}

impl SweepReport {
    fn new(checker: &'static str) -> Self {
        SweepReport {
            checker,
            checked: 0,
            boundary: 0,
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(detail());
        }
    }

    fn record_lemma(&mut self, check: LemmaCheck, what: impl FnOnce() -> String) {
        if check.method == CheckMethod::Boundary {
            self.boundary += 1;
        }
        self.record(check.holds, || {
            format!("{}: lhs = {}, rhs = {}", what(), check.lhs, check.rhs)
        });
    }
}

/// `lo..=hi`, every integer up to [`DENSE_LIMIT`], then steps of 1% above.
pub fn sample_points(lo: u64, hi: u64) -> Vec<u64> {
    let mut points: Vec<u64> = (lo..=hi.min(DENSE_LIMIT)).collect();
    let mut n = lo.max(DENSE_LIMIT + 1);
    while n <= hi {
        points.push(n);
        n = n.saturating_add((n / 100).max(1));
    }
    if hi > DENSE_LIMIT && points.last() != Some(&hi) {
        points.push(hi);
    }
    points
}

pub fn lemma1_sweep(n_max: u64) -> SweepReport {
    let mut report = SweepReport::new("lemma1");
    for n in sample_points(25, n_max) {
        report.record_lemma(lemma1_holds(n), || format!("n = {n}"));
    }
    report
}

pub fn lemma2_sweep(n_max: u64) -> SweepReport {
    let mut report = SweepReport::new("lemma2");
    for n in sample_points(9, n_max) {
        let root = n.isqrt();
        for p in (3..=root).filter(|&p| is_prime(p)) {
            match lemma2_holds(n, p) {
                Ok(check) => report.record_lemma(check, || format!("n = {n}, p = {p}")),
                Err(e) => report.record(false, || format!("n = {n}, p = {p}: {e}")),
            }
        }
    }
    report
}

pub fn falling_factorial_sweep(p_max: u64) -> SweepReport {
    let mut report = SweepReport::new("falling-factorial");
    for p in (2..=p_max).filter(|&p| is_prime(p)) {
        report.record(falling_factorial_congruence_check(p), || format!("p = {p}"));
    }
    report
}

/// `nu_p((n-1)!) - c x >= a` for every prime power of `n` with `a >= 2` or
/// `p = 2`, over `n` in `[(2c+3)^2, n_max]`.
pub fn valuation_sweep(c: u64, n_max: u64) -> Result<SweepReport> {
    let mut report = SweepReport::new("valuation-bound");
    let lo = (2 * c + 3).pow(2);
    for n in lo..=n_max {
        for pp in prime_power_decompose(n)? {
            if pp.a >= 2 || pp.p == 2 {
                report.record(valuation_bound_holds(c, &pp)?, || {
                    format!("n = {n}, c = {c}, p = {}, a = {}, x = {}", pp.p, pp.a, pp.x)
                });
            }
        }
    }
    Ok(report)
}

/// Fast sums against enumeration for every `n <= n_max` and every `k`, plus
/// the complement identity and the restriction congruence.
pub fn oracle_sweep(n_max: u64) -> Result<Vec<SweepReport>> {
    let mut sums = SweepReport::new("oracle-equivalence");
    let mut complement = SweepReport::new("complement-identity");
    let mut restriction = SweepReport::new("restriction-congruence");
    for n in 2..=n_max {
        for k in 0..n {
            let fast = elem_sym_sum_mod(n, k)?;
            let slow = brute_force_sum(n, k)?;
            sums.record(fast == slow, || {
                format!(
                    "n = {n}, k = {k}: fast {} vs enumeration {}",
                    fast.value(),
                    slow.value()
                )
            });
        }
        for c in 0..n {
            complement.record(complement_identity_check(n, c)?, || {
                format!("n = {n}, c = {c}")
            });
            for p in (2..=n).filter(|&p| n % p == 0 && is_prime(p)) {
                restriction.record(eq3_congruence_check(n, c, p)?, || {
                    format!("n = {n}, c = {c}, p = {p}")
                });
            }
        }
    }
    Ok(vec![sums, complement, restriction])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn samples_are_dense_then_geometric() {
        assert_eq!(sample_points(25, 30), vec![25, 26, 27, 28, 29, 30]);
        assert!(sample_points(25, 24).is_empty());
        let points = sample_points(25, 1_000_000_000);
        assert_eq!(points[..3], [25, 26, 27]);
        assert!(points.contains(&DENSE_LIMIT));
        assert!(points.contains(&(DENSE_LIMIT + 1)));
        assert_eq!(*points.last().unwrap(), 1_000_000_000);
        assert!(points.windows(2).all(|w| w[0] < w[1]));
        assert!(points.len() < DENSE_LIMIT as usize + 2000);
    }

    #[test]
    fn small_sweeps_pass() {
        assert!(lemma1_sweep(24).passed());
        assert_eq!(lemma1_sweep(24).checked, 0);
        let eq4 = falling_factorial_sweep(2);
        assert!(eq4.passed());
        assert_eq!(eq4.checked, 1);
        for report in oracle_sweep(2).unwrap() {
            assert!(report.passed());
        }
    }

    #[test]
    fn oracle_sweep_refuses_beyond_bound() {
        assert!(matches!(
            oracle_sweep(17),
            Err(Error::EnumerationBound { .. })
        ));
    }
}
