//! Canonical residues and the truncated shifted product.
//!
//! The degree-`j` coefficient of `prod_{m=1}^{n-1} (x + m)` is the elementary
//! symmetric sum `e_{n-1-j}(1, ..., n-1)`. Multiplying in one linear factor at
//! a time and discarding every term above `x^c` yields all of
//! `e_{n-1}, ..., e_{n-1-c}` modulo `n` in `O(n c)` multiply-adds and `O(c)`
//! memory.

use std::fmt;

use strength_reduce::StrengthReducedU64;

use crate::error::{Error, Result};

/// Moduli must be strictly below this value.
pub const MODULUS_LIMIT: u64 = 1 << 62;

/// Moduli at or below this bound keep `a * b + c` inside a `u64`.
const NARROW_LIMIT: u64 = 1 << 32;

pub(crate) fn check_modulus(modulus: u64) -> Result<()> {
    if (2..MODULUS_LIMIT).contains(&modulus) {
        Ok(())
    } else {
        Err(Error::WidthExceeded(modulus))
    }
}

/// An integer class modulo `modulus`, stored as its representative in
/// `[0, modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: u64, modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(Residue {
            value: value % modulus,
            modulus,
        })
    }

    /// Builds the class of a signed integer, e.g. `from_signed(-1, n)` is `n - 1`.
    pub fn from_signed(value: i128, modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        let value = value.rem_euclid(modulus as i128) as u64;
        Ok(Residue { value, modulus })
    }

    pub fn zero(modulus: u64) -> Result<Self> {
        Residue::new(0, modulus)
    }

    pub fn one(modulus: u64) -> Result<Self> {
        Residue::new(1, modulus)
    }

    /// Caller guarantees `value < modulus` and a valid modulus.
    pub(crate) fn from_parts(value: u64, modulus: u64) -> Self {
        debug_assert!(value < modulus);
        Residue { value, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_modulus(self, other: Residue) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            })
        }
    }

    pub fn add_mod(self, other: Residue) -> Result<Residue> {
        self.same_modulus(other)?;
        let sum = (self.value as u128 + other.value as u128) % self.modulus as u128;
        Ok(Residue::from_parts(sum as u64, self.modulus))
    }

    pub fn mul_mod(self, other: Residue) -> Result<Residue> {
        mulmod(self, other)
    }

    pub fn negate(self) -> Residue {
        let value = if self.value == 0 {
            0
        } else {
            self.modulus - self.value
        };
        Residue::from_parts(value, self.modulus)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// `(a * b) mod m` through a double-width intermediate.
pub fn mulmod(a: Residue, b: Residue) -> Result<Residue> {
    a.same_modulus(b)?;
    let product = (a.value as u128 * b.value as u128) % a.modulus as u128;
    Ok(Residue::from_parts(product as u64, a.modulus))
}

/// Multiply-add reduction for a fixed modulus.
#[derive(Clone, Copy)]
pub(crate) enum Reducer {
    Narrow(StrengthReducedU64),
    Wide(u64),
}

impl Reducer {
    pub(crate) fn new(modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(if modulus <= NARROW_LIMIT {
            Reducer::Narrow(StrengthReducedU64::new(modulus))
        } else {
            Reducer::Wide(modulus)
        })
    }

    /// `(a * b + c) mod m` for `a, b, c < m`.
    #[inline]
    pub(crate) fn mul_add(self, a: u64, b: u64, c: u64) -> u64 {
        match self {
            // (m-1)^2 + (m-1) < m^2 <= 2^64
            Reducer::Narrow(m) => (a * b + c) % m,
            Reducer::Wide(m) => ((a as u128 * b as u128 + c as u128) % m as u128) as u64,
        }
    }
}

/// Coefficients of a polynomial over `Z/nZ`, truncated to degree `<= c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPoly {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl TruncatedPoly {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^j`, or `None` above the degree bound.
    pub fn coeff(&self, j: usize) -> Option<Residue> {
        self.coeffs
            .get(j)
            .map(|&v| Residue::from_parts(v, self.modulus))
    }

    pub fn values(&self) -> &[u64] {
        &self.coeffs
    }
}

/// `prod_{m=1}^{n-1} (x + m)` reduced modulo `n` and `x^{c+1}`.
///
/// Coefficient `j` is `e_{n-1-j}(1, ..., n-1) mod n`.
pub fn truncated_shifted_product(n: u64, c: u64) -> Result<TruncatedPoly> {
    truncated_shifted_product_counted(n, c).map(|(poly, _)| poly)
}

/// Same as [`truncated_shifted_product`], also returning the number of
/// modular multiply-adds performed: exactly `(n - 1) * (c + 1)`.
pub fn truncated_shifted_product_counted(n: u64, c: u64) -> Result<(TruncatedPoly, u64)> {
    let reducer = Reducer::new(n)?;
    if c > n - 1 {
        return Err(Error::domain(format!(
            "degree bound c = {c} exceeds n - 1 = {}: subset size would be negative",
            n - 1
        )));
    }
    let width = usize::try_from(c)
        .ok()
        .and_then(|c| c.checked_add(1))
        .ok_or_else(|| Error::domain(format!("degree bound c = {c} does not fit in memory")))?;

    let mut coeffs = vec![0u64; width];
    coeffs[0] = 1;
    let mut ops = 0u64;
    for m in 1..n {
        // Descending j so coeffs[j - 1] still holds the previous round's value.
        for j in (1..width).rev() {
            coeffs[j] = reducer.mul_add(coeffs[j], m, coeffs[j - 1]);
        }
        coeffs[0] = reducer.mul_add(coeffs[0], m, 0);
        ops += width as u64;
    }
    Ok((TruncatedPoly { modulus: n, coeffs }, ops))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(v: u64, m: u64) -> Residue {
        Residue::new(v, m).unwrap()
    }

    #[test]
    fn mulmod_examples() {
        assert_eq!(mulmod(r(7, 10), r(8, 10)).unwrap(), r(6, 10));
        assert_eq!(mulmod(r(0, 97), r(55, 97)).unwrap(), r(0, 97));
        assert_eq!(mulmod(r(42, 97), r(1, 97)).unwrap(), r(42, 97));
    }

    #[test]
    fn mulmod_rejects_mixed_moduli() {
        assert_eq!(
            mulmod(r(1, 10), r(1, 11)),
            Err(Error::ModulusMismatch {
                left: 10,
                right: 11
            })
        );
    }

    #[test]
    fn mulmod_is_exact_near_width_limit() {
        let m = MODULUS_LIMIT - 1;
        let a = r(m - 1, m);
        // (-1)(-1) = 1
        assert_eq!(mulmod(a, a).unwrap().value(), 1);
    }

    #[test]
    fn residue_normalization() {
        assert_eq!(Residue::from_signed(-1, 7).unwrap().value(), 6);
        assert_eq!(Residue::from_signed(-15, 7).unwrap().value(), 6);
        assert_eq!(Residue::new(23, 7).unwrap().value(), 2);
        assert_eq!(r(3, 7).negate().value(), 4);
        assert_eq!(r(0, 7).negate().value(), 0);
        assert!(matches!(Residue::new(0, 1), Err(Error::WidthExceeded(1))));
        assert!(matches!(
            Residue::new(0, MODULUS_LIMIT),
            Err(Error::WidthExceeded(_))
        ));
    }

    #[test]
    fn truncated_product_small_cases() {
        // e_4(1..4) = 24, e_3(1..4) = 50
        let poly = truncated_shifted_product(5, 1).unwrap();
        assert_eq!(poly.values(), &[4, 0]);
        assert_eq!(truncated_shifted_product(5, 0).unwrap().values(), &[4]);
        // e_8(1..9) = 1026576
        let poly = truncated_shifted_product(10, 1).unwrap();
        assert_eq!(poly.coeff(1).unwrap().value(), 6);
        assert_eq!(poly.degree_bound(), 1);
        assert_eq!(poly.coeff(2), None);
    }

    #[test]
    fn full_product_includes_leading_one() {
        // prod_{m=1}^{4} (x + m) = x^4 + 10x^3 + 35x^2 + 50x + 24
        let poly = truncated_shifted_product(5, 4).unwrap();
        assert_eq!(poly.values(), &[24 % 5, 50 % 5, 35 % 5, 10 % 5, 1]);
    }

    #[test]
    fn truncated_product_rejects_oversized_c() {
        assert!(matches!(
            truncated_shifted_product(5, 5),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            truncated_shifted_product(1, 0),
            Err(Error::WidthExceeded(1))
        ));
    }

    #[test]
    fn op_count_is_exact() {
        let (_, ops) = truncated_shifted_product_counted(10, 0).unwrap();
        assert_eq!(ops, 9);
        let (_, ops) = truncated_shifted_product_counted(1000, 3).unwrap();
        assert_eq!(ops, 999 * 4);
    }

    #[test]
    fn wide_and_narrow_reducers_agree() {
        let wide = Reducer::Wide(1_000_003);
        let narrow = Reducer::new(1_000_003).unwrap();
        for (a, b, c) in [
            (0, 0, 0),
            (1_000_002, 1_000_002, 1_000_002),
            (12345, 67890, 5),
        ] {
            assert_eq!(wide.mul_add(a, b, c), narrow.mul_add(a, b, c));
        }
    }

    proptest! {
        #[test]
        fn mulmod_matches_wide_reference(a in any::<u64>(), b in any::<u64>(), m in 2u64..MODULUS_LIMIT) {
            let got = mulmod(r(a, m), r(b, m)).unwrap().value();
            let want = ((a % m) as u128 * (b % m) as u128 % m as u128) as u64;
            prop_assert_eq!(got, want);
        }

        #[test]
        fn mulmod_commutes_and_associates(a in any::<u64>(), b in any::<u64>(), c in any::<u64>(), m in 2u64..MODULUS_LIMIT) {
            let (a, b, c) = (r(a, m), r(b, m), r(c, m));
            prop_assert_eq!(mulmod(a, b).unwrap(), mulmod(b, a).unwrap());
            let left = mulmod(mulmod(a, b).unwrap(), c).unwrap();
            let right = mulmod(a, mulmod(b, c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn narrow_reducer_matches_u128(a in 0u64..NARROW_LIMIT, b in 0u64..NARROW_LIMIT, c in 0u64..NARROW_LIMIT, m in 2u64..=NARROW_LIMIT) {
            let (a, b, c) = (a % m, b % m, c % m);
            let want = ((a as u128 * b as u128 + c as u128) % m as u128) as u64;
            prop_assert_eq!(Reducer::new(m).unwrap().mul_add(a, b, c), want);
        }

        #[test]
        fn constant_term_is_factorial(n in 2u64..400, c in 0u64..4) {
            let c = c.min(n - 1);
            let poly = truncated_shifted_product(n, c).unwrap();
            let fact = (1..n).fold(1u64, |acc, m| acc * m % n);
            prop_assert_eq!(poly.coeff(0).unwrap().value(), fact);
        }
    }
}
