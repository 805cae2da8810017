//! Primality, prime-power factorization, Legendre valuations, restricted
//! factorials, and numeric checkers for the inequalities and congruences the
//! criterion's proof relies on.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::modarith::{Reducer, Residue};

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Strong-pseudoprime bases that decide primality for every `n < 3.3e24`.
const MILLER_RABIN_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < TRIAL_DIVISION_LIMIT {
        return is_prime_trial(n);
    }
    for p in MILLER_RABIN_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in MILLER_RABIN_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_prime_trial(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Largest `x` with `p^x <= n`.
fn max_exponent(p: u64, n: u64) -> u32 {
    let mut x = 0;
    let mut power = 1u64;
    while let Some(next) = power.checked_mul(p) {
        if next > n {
            break;
        }
        power = next;
        x += 1;
    }
    x
}

/// Exact prime-power factor `p^a || n`, together with the largest `x` such
/// that `p^x <= n < p^{x+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePower {
    pub p: u64,
    pub a: u32,
    pub x: u32,
    pub n: u64,
}

impl PrimePower {
    /// `n / p^a`.
    pub fn cofactor(&self) -> u64 {
        self.n / self.p.pow(self.a)
    }
}

/// Factorizes `n` into its exact prime powers, smallest prime first.
pub fn prime_power_decompose(n: u64) -> Result<Vec<PrimePower>> {
    if n < 2 {
        return Err(Error::domain(format!("cannot factor n = {n}: need n >= 2")));
    }
    let mut out = Vec::new();
    let mut rest = n;
    let mut push = |p: u64, a: u32| {
        out.push(PrimePower {
            p,
            a,
            x: max_exponent(p, n),
            n,
        })
    };
    let mut d = 2u64;
    while d.saturating_mul(d) <= rest {
        if rest.is_multiple_of(d) {
            let mut a = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                a += 1;
            }
            push(d, a);
        }
        if is_prime(rest) {
            break;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        push(rest, 1);
    }
    Ok(out)
}

/// `nu_p(m!)` as a record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorialValuation {
    pub m: u64,
    pub p: u64,
    pub nu: u64,
}

impl FactorialValuation {
    pub fn new(m: u64, p: u64) -> Result<Self> {
        Ok(FactorialValuation {
            m,
            p,
            nu: legendre_valuation(m, p)?,
        })
    }
}

/// Exponent of `p` in `m!`: `sum_{i >= 1} floor(m / p^i)`.
pub fn legendre_valuation(m: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::domain(format!(
            "legendre valuation needs a prime, got {p}"
        )));
    }
    let mut nu = 0;
    let mut q = m / p;
    while q > 0 {
        nu += q;
        q /= p;
    }
    Ok(nu)
}

/// `prod_{1 <= m < n, p does not divide m} m  (mod modulus)`.
pub fn restricted_factorial_mod(n: u64, p: u64, modulus: u64) -> Result<Residue> {
    if !is_prime(p) {
        return Err(Error::domain(format!(
            "restricted factorial needs a prime, got {p}"
        )));
    }
    if p > n {
        return Err(Error::domain(format!(
            "restricted factorial needs p <= n, got p = {p}, n = {n}"
        )));
    }
    let reducer = Reducer::new(modulus)?;
    let mut acc = 1 % modulus;
    for m in (1..n).filter(|m| m % p != 0) {
        acc = reducer.mul_add(acc, m % modulus, 0);
    }
    Residue::new(acc, modulus)
}

/// How a lemma verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMethod {
    /// Double precision, sides separated by more than the guard band.
    Float,
    /// Near-tie resolved by exact integer comparison of a logarithm-free form.
    Exact,
    /// Near-tie with no exact form available; `holds` is the float verdict.
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub method: CheckMethod,
}

const GUARD: f64 = 1e-9;
/// Exact fallbacks give up above this many bits.
const EXACT_BIT_BUDGET: u64 = 1 << 22;

fn near_tie(lhs: f64, rhs: f64) -> bool {
    (lhs - rhs).abs() < GUARD * lhs.abs().max(1.0)
}

fn exact_sqrt(n: u64) -> Option<u64> {
    let s = n.isqrt();
    (s * s == n).then_some(s)
}

fn big_pow(base: u64, exp: u64) -> Option<BigUint> {
    let bits = (64 - base.leading_zeros()) as u64;
    if bits.saturating_mul(exp) > EXACT_BIT_BUDGET {
        return None;
    }
    Some(num_traits::pow(
        BigUint::from(base),
        usize::try_from(exp).ok()?,
    ))
}

/// `15n/16 > (sqrt(n) + 1) ln n / (2 ln 2)`; true for every `n >= 25`.
pub fn lemma1_holds(n: u64) -> LemmaCheck {
    let nf = n as f64;
    let lhs = 15.0 * nf / 16.0;
    let rhs = (nf.sqrt() + 1.0) * nf.ln() / (2.0 * std::f64::consts::LN_2);
    if !near_tie(lhs, rhs) {
        return LemmaCheck {
            lhs,
            rhs,
            holds: lhs > rhs,
            method: CheckMethod::Float,
        };
    }
    // For n = s^2: 2^{15n} > n^{8(s+1)}.
    let exact = exact_sqrt(n).and_then(|s| {
        let left = big_pow(2, n.checked_mul(15)?)?;
        let right = big_pow(n, s.checked_add(1)?.checked_mul(8)?)?;
        Some(left > right)
    });
    match exact {
        Some(holds) => LemmaCheck {
            lhs,
            rhs,
            holds,
            method: CheckMethod::Exact,
        },
        None => LemmaCheck {
            lhs,
            rhs,
            holds: lhs > rhs,
            method: CheckMethod::Boundary,
        },
    }
}

/// `(n/p - 1) ln p / ln n >= (sqrt(n) - 1) / 2` for a prime `3 <= p <= sqrt(n)`.
///
/// Equality holds at `p^2 = n`.
pub fn lemma2_holds(n: u64, p: u64) -> Result<LemmaCheck> {
    if !is_prime(p) || p < 3 || p.checked_mul(p).is_none_or(|sq| sq > n) {
        return Err(Error::domain(format!(
            "lemma 2 needs a prime 3 <= p <= sqrt(n), got n = {n}, p = {p}"
        )));
    }
    let (nf, pf) = (n as f64, p as f64);
    let lhs = (nf / pf - 1.0) * pf.ln() / nf.ln();
    let rhs = (nf.sqrt() - 1.0) / 2.0;
    if !near_tie(lhs, rhs) {
        return Ok(LemmaCheck {
            lhs,
            rhs,
            holds: lhs >= rhs,
            method: CheckMethod::Float,
        });
    }
    // For n = s^2: p^{2(n-p)} >= n^{p(s-1)}.
    let exact = exact_sqrt(n).and_then(|s| {
        let left = big_pow(p, 2 * (n - p))?;
        let right = big_pow(n, p.checked_mul(s - 1)?)?;
        Some(left >= right)
    });
    Ok(match exact {
        Some(holds) => LemmaCheck {
            lhs,
            rhs,
            holds,
            method: CheckMethod::Exact,
        },
        None => LemmaCheck {
            lhs,
            rhs,
            holds: lhs >= rhs,
            method: CheckMethod::Boundary,
        },
    })
}

/// Expands `(x - 1)(x - 2)...(x - (p - 1))` over the integers and checks that
/// it is congruent to `x^{p-1} - 1` coefficient-wise modulo `p`.
///
/// Holds for every prime; returns `false` for `p < 2` and generally for
/// composites (e.g. 4).
pub fn falling_factorial_congruence_check(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    // coeffs[i] is the coefficient of x^i
    let mut coeffs: Vec<BigInt> = vec![BigInt::one()];
    for i in 1..p {
        let shift = BigInt::from(i);
        let mut next = vec![BigInt::zero(); coeffs.len() + 1];
        for (j, a) in coeffs.iter().enumerate() {
            next[j + 1] += a;
            next[j] -= a * &shift;
        }
        coeffs = next;
    }
    let modulus = BigInt::from(p);
    let degree = coeffs.len() - 1;
    coeffs.iter().enumerate().all(|(j, a)| {
        let reduced = ((a % &modulus) + &modulus) % &modulus;
        let target = if j == degree {
            BigInt::one() % &modulus
        } else if j == 0 {
            BigInt::from(p - 1)
        } else {
            BigInt::zero()
        };
        reduced == target
    })
}

/// `floor((n-1)/k) >= n/k - 1`, compared as `k (floor((n-1)/k) + 1) >= n`.
pub fn floor_property3_check(n: u64, k: u64) -> Result<bool> {
    if n < 2 || k < 2 {
        return Err(Error::domain(format!(
            "floor property needs n, k >= 2, got n = {n}, k = {k}"
        )));
    }
    Ok(k as u128 * ((n - 1) / k + 1) as u128 >= n as u128)
}

/// `nu_p((n-1)!) - c x >= a` for the prime power `(p, a, x)` of `n`.
pub fn valuation_bound_holds(c: u64, pp: &PrimePower) -> Result<bool> {
    let nu = legendre_valuation(pp.n - 1, pp.p)?;
    Ok(nu as u128 >= c as u128 * pp.x as u128 + pp.a as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sieve(limit: usize) -> Vec<bool> {
        let mut is = vec![true; limit + 1];
        is[0] = false;
        if limit >= 1 {
            is[1] = false;
        }
        let mut i = 2;
        while i * i <= limit {
            if is[i] {
                for j in (i * i..=limit).step_by(i) {
                    is[j] = false;
                }
            }
            i += 1;
        }
        is
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(2));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(!is_prime(561));
    }

    #[test]
    fn primality_matches_sieve() {
        let table = sieve(20_000);
        for (n, &expected) in table.iter().enumerate() {
            assert_eq!(is_prime(n as u64), expected, "n = {n}");
        }
    }

    #[test]
    fn primality_above_trial_limit() {
        // strong pseudoprimes to several small bases
        for n in [
            3_215_031_751u64,
            2_152_302_898_747,
            3_474_749_660_383,
            341_550_071_728_321,
        ] {
            assert!(!is_prime(n), "{n}");
        }
        for n in [
            1_000_003u64,
            2_147_483_647,
            4_611_686_018_427_387_847,
            18_446_744_073_709_551_557,
        ] {
            assert!(is_prime(n), "{n}");
        }
        assert!(!is_prime(1_000_003 * 1_000_033));
    }

    #[test]
    fn decompose_examples() {
        let pp = |p, a, x, n| PrimePower { p, a, x, n };
        assert_eq!(
            prime_power_decompose(12).unwrap(),
            vec![pp(2, 2, 3, 12), pp(3, 1, 2, 12)]
        );
        assert_eq!(prime_power_decompose(25).unwrap(), vec![pp(5, 2, 2, 25)]);
        assert_eq!(prime_power_decompose(97).unwrap(), vec![pp(97, 1, 1, 97)]);
        assert_eq!(prime_power_decompose(12).unwrap()[0].cofactor(), 3);
        assert!(prime_power_decompose(1).is_err());
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_valuation(10, 2).unwrap(), 8);
        assert_eq!(legendre_valuation(10, 3).unwrap(), 4);
        assert_eq!(legendre_valuation(0, 7).unwrap(), 0);
        assert!(matches!(legendre_valuation(10, 4), Err(Error::Domain(_))));
        assert_eq!(FactorialValuation::new(10, 2).unwrap().nu, 8);
    }

    #[test]
    fn legendre_matches_incremental_factoring() {
        let primes: Vec<u64> = (2..=50).filter(|&p| is_prime(p)).collect();
        for &p in &primes {
            let mut running = 0u64;
            for m in 0..=2000u64 {
                if m > 0 {
                    let mut v = m;
                    while v % p == 0 {
                        v /= p;
                        running += 1;
                    }
                }
                assert_eq!(
                    legendre_valuation(m, p).unwrap(),
                    running,
                    "m = {m}, p = {p}"
                );
            }
        }
    }

    #[test]
    fn restricted_factorial_examples() {
        assert_eq!(restricted_factorial_mod(10, 5, 5).unwrap().value(), 1);
        assert_eq!(restricted_factorial_mod(6, 2, 6).unwrap().value(), 3);
        for p in [2u64, 3, 5, 7, 11, 13, 101] {
            assert_eq!(restricted_factorial_mod(p, p, p).unwrap().value(), p - 1);
        }
        assert!(restricted_factorial_mod(10, 4, 5).is_err());
        assert!(restricted_factorial_mod(3, 5, 5).is_err());
    }

    #[test]
    fn lemma1_examples() {
        let at25 = lemma1_holds(25);
        assert!(at25.holds);
        assert_eq!(at25.lhs, 23.4375);
        assert!((at25.rhs - 13.931568569324174).abs() < 1e-9);
        assert!(lemma1_holds(1_000_000).holds);
        let at2 = lemma1_holds(2);
        assert!((at2.rhs - 1.2071067811865475).abs() < 1e-12);
        assert!(at2.holds);
        assert_eq!(at2.method, CheckMethod::Float);
    }

    #[test]
    fn lemma2_examples() {
        let boundary = lemma2_holds(9, 3).unwrap();
        assert!(boundary.holds);
        assert_eq!(boundary.method, CheckMethod::Exact);
        assert!((boundary.lhs - 1.0).abs() < 1e-12);
        assert_eq!(boundary.rhs, 1.0);
        let at100 = lemma2_holds(100, 3).unwrap();
        assert!(at100.holds);
        assert!((at100.lhs - 7.713460284634542).abs() < 1e-9);
        assert!(lemma2_holds(8, 3).is_err());
        assert!(lemma2_holds(100, 2).is_err());
        assert!(lemma2_holds(100, 9).is_err());
    }

    #[test]
    fn lemma2_square_boundaries_are_exact() {
        for p in [3u64, 5, 7, 11, 97] {
            let check = lemma2_holds(p * p, p).unwrap();
            assert!(check.holds);
            assert_eq!(check.method, CheckMethod::Exact, "p = {p}");
        }
    }

    #[test]
    fn falling_factorial_examples() {
        assert!(falling_factorial_congruence_check(5));
        assert!(falling_factorial_congruence_check(2));
        assert!(!falling_factorial_congruence_check(4));
        assert!(!falling_factorial_congruence_check(1));
        assert!(!falling_factorial_congruence_check(9));
    }

    #[test]
    fn floor_property_examples() {
        assert!(floor_property3_check(10, 5).unwrap());
        assert!(floor_property3_check(10, 3).unwrap());
        assert!(floor_property3_check(2, 2).unwrap());
        assert!(floor_property3_check(1, 2).is_err());
    }

    #[test]
    fn valuation_bound_example() {
        // n = 64 = 2^6, c = 1: nu_2(63!) = 57, 57 - 6 >= 6
        let pp = prime_power_decompose(64).unwrap()[0];
        assert_eq!((pp.a, pp.x), (6, 6));
        assert!(valuation_bound_holds(1, &pp).unwrap());
        // n = 4 = 2^2, c = 1: nu_2(3!) = 1 < 2 + 2
        let pp = prime_power_decompose(4).unwrap()[0];
        assert!(!valuation_bound_holds(1, &pp).unwrap());
    }

    proptest! {
        #[test]
        fn decomposition_reconstructs(n in 2u64..5_000_000) {
            let parts = prime_power_decompose(n).unwrap();
            let product: u64 = parts.iter().map(|pp| pp.p.pow(pp.a)).product();
            prop_assert_eq!(product, n);
            for pp in parts {
                prop_assert!(is_prime(pp.p));
                prop_assert!(pp.a <= pp.x);
                prop_assert!(pp.cofactor() % pp.p != 0);
                prop_assert!(pp.p.pow(pp.x) <= n);
                prop_assert!(pp.p.checked_pow(pp.x + 1).is_none_or(|q| q > n));
            }
        }

        #[test]
        fn floor_property_always_holds(n in 2u64..u64::MAX, k in 2u64..u64::MAX) {
            prop_assert!(floor_property3_check(n, k).unwrap());
        }
    }
}
