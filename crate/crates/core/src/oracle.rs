//! Subset-enumeration oracles for small `n`.
//!
//! Everything here walks the `2^{n-1}` subsets of `{1, ..., n-1}` directly and
//! keeps exact integer products, so it shares no code path with the truncated
//! product in [`crate::modarith`].

use crate::error::{Error, Result};
use crate::modarith::Residue;
use crate::numtheory::is_prime;

/// Largest `n` the oracles accept. Worst case `C(15, 7) = 6435` subsets,
/// products below `15! < 2^41`.
pub const ENUMERATION_BOUND: u64 = 16;

fn check_bound(n: u64) -> Result<()> {
    if n > ENUMERATION_BOUND {
        return Err(Error::EnumerationBound {
            n,
            bound: ENUMERATION_BOUND,
        });
    }
    if n < 2 {
        return Err(Error::domain(format!("oracle needs n >= 2, got {n}")));
    }
    Ok(())
}

fn check_size(n: u64, k: u64) -> Result<()> {
    if k > n - 1 {
        return Err(Error::domain(format!(
            "subset size k = {k} outside [0, {}]",
            n - 1
        )));
    }
    Ok(())
}

/// Exact products of every `k`-subset of `{1, ..., n-1}` (the multiset `N[k]`).
pub fn subset_products(n: u64, k: u64) -> Result<Vec<u64>> {
    check_bound(n)?;
    check_size(n, k)?;
    let universe = (n - 1) as u32;
    Ok((0u32..1 << universe)
        .filter(|mask| mask.count_ones() as u64 == k)
        .map(|mask| {
            (0..universe)
                .filter(|bit| mask & (1 << bit) != 0)
                .map(|bit| bit as u64 + 1)
                .product()
        })
        .collect())
}

fn factorial(m: u64) -> u128 {
    (1..=m as u128).product()
}

fn exact_sum(n: u64, k: u64) -> Result<u128> {
    Ok(subset_products(n, k)?.into_iter().map(u128::from).sum())
}

/// `sum_{M in N[k]} M mod n` by enumeration.
pub fn brute_force_sum(n: u64, k: u64) -> Result<Residue> {
    let total = exact_sum(n, k)?;
    Residue::new((total % n as u128) as u64, n)
}

/// The multiset `N_1[c]`: products `M in N[c]` divisible by the product of all
/// multiples of `p` below `n`.
pub fn build_restricted_products(n: u64, c: u64, p: u64) -> Result<Vec<u64>> {
    check_bound(n)?;
    if !is_prime(p) || p > n {
        return Err(Error::domain(format!(
            "restricted products need a prime p <= n, got p = {p}"
        )));
    }
    let multiples: u64 = (p..n).step_by(p as usize).product();
    Ok(subset_products(n, c)?
        .into_iter()
        .filter(|m| m % multiples == 0)
        .collect())
}

/// `sum_{M in N[n-1-c]} M == sum_{M in N[c]} (n-1)!/M` over the integers.
pub fn complement_identity_check(n: u64, c: u64) -> Result<bool> {
    check_bound(n)?;
    check_size(n, c)?;
    let full = factorial(n - 1);
    let left = exact_sum(n, n - 1 - c)?;
    let right: u128 = subset_products(n, c)?
        .into_iter()
        .map(|m| full / m as u128)
        .sum();
    Ok(left == right)
}

/// `sum_{M in N[n-1-c]} M == sum_{M in N_1[c]} (n-1)!/M (mod p)` for a prime
/// `p` dividing `n`.
pub fn eq3_congruence_check(n: u64, c: u64, p: u64) -> Result<bool> {
    check_bound(n)?;
    check_size(n, c)?;
    if !is_prime(p) || !n.is_multiple_of(p) {
        return Err(Error::domain(format!(
            "restriction needs a prime divisor of n, got p = {p}, n = {n}"
        )));
    }
    let full = factorial(n - 1);
    let left = exact_sum(n, n - 1 - c)?;
    let right: u128 = build_restricted_products(n, c, p)?
        .into_iter()
        .map(|m| full / m as u128)
        .sum();
    Ok(left % p as u128 == right % p as u128)
}
