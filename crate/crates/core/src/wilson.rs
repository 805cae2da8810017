//! Symmetric subset-product sums and the extended Wilson criterion.

use crate::error::{Error, Result};
use crate::modarith::{check_modulus, truncated_shifted_product, Reducer, Residue};
use crate::numtheory::is_prime;

/// The pair `(n, c)`: universe `{1, ..., n-1}`, subsets of size `n - 1 - c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CriterionInput {
    n: u64,
    c: u64,
}

impl CriterionInput {
    /// Requires `n >= 2` within the width limit and `c <= n - 2`.
    pub fn new(n: u64, c: u64) -> Result<Self> {
        check_modulus(n)?;
        if c > n - 2 {
            return Err(Error::domain(format!(
                "criterion needs c <= n - 2, got n = {n}, c = {c}"
            )));
        }
        Ok(CriterionInput { n, c })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    /// Subset size `k = n - 1 - c`, always `>= 1`.
    pub fn subset_size(&self) -> u64 {
        self.n - 1 - self.c
    }

    /// `(2c+3)^2`, saturating.
    pub fn threshold(&self) -> u64 {
        threshold(self.c)
    }
}

fn threshold(c: u64) -> u64 {
    let base = c.saturating_mul(2).saturating_add(3);
    base.saturating_mul(base)
}

/// `S(n, c)`: the sum of all products of `k`-subsets of `{1, ..., n-1}`
/// modulo `n`, with `k = n - 1 - c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetProductSum {
    pub input: CriterionInput,
    pub k: u64,
    pub value: Residue,
}

impl SubsetProductSum {
    pub fn compute(input: CriterionInput) -> Result<Self> {
        let k = input.subset_size();
        Ok(SubsetProductSum {
            input,
            k,
            value: elem_sym_sum_mod(input.n, k)?,
        })
    }
}

/// `e_k(1, ..., n-1) mod n`. `k = 0` gives 1, `k = n - 1` gives `(n-1)! mod n`.
pub fn elem_sym_sum_mod(n: u64, k: u64) -> Result<Residue> {
    check_modulus(n)?;
    if k > n - 1 {
        return Err(Error::domain(format!(
            "subset size k = {k} outside [0, {}]",
            n - 1
        )));
    }
    let c = n - 1 - k;
    let poly = truncated_shifted_product(n, c)?;
    Ok(poly
        .coeff(poly.degree_bound())
        .expect("degree bound coefficient"))
}

/// `((-1)^c + S(n, c)) * (c + 1) mod n`.
pub fn extended_wilson_residue(n: u64, c: u64) -> Result<Residue> {
    let input = CriterionInput::new(n, c)?;
    let sum = SubsetProductSum::compute(input)?;
    Ok(criterion_from_sum(input, sum.value))
}

fn criterion_from_sum(input: CriterionInput, sum: Residue) -> Residue {
    let n = input.n;
    let sign = if input.c.is_multiple_of(2) { 1 } else { n - 1 };
    let reducer = Reducer::new(n).expect("validated modulus");
    let shifted = Residue::new(sign, n)
        .and_then(|s| s.add_mod(sum))
        .expect("shared modulus");
    // c + 1 <= n - 1
    Residue::from_parts(reducer.mul_add(shifted.value(), input.c + 1, 0), n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormKind {
    /// `n = (c + 1) p` with `p` prime.
    CPlusOneTimesPrime {
        p: u64,
    },
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Classification {
    pub kind: FormKind,
    /// `n >= (2c+3)^2`: the iff is guaranteed here.
    pub applicable: bool,
}

impl Classification {
    pub fn is_c_plus_one_times_prime(&self) -> bool {
        matches!(self.kind, FormKind::CPlusOneTimesPrime { .. })
    }
}

pub fn classify_form(n: u64, c: u64) -> Classification {
    let kind = match c.checked_add(1) {
        Some(d) if n.is_multiple_of(d) && is_prime(n / d) => {
            FormKind::CPlusOneTimesPrime { p: n / d }
        }
        _ => FormKind::Other,
    };
    Classification {
        kind,
        applicable: n >= threshold(c),
    }
}

/// One row of a criterion scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanRecord {
    pub n: u64,
    pub c: u64,
    pub s_residue: Residue,
    pub criterion_residue: Residue,
    pub classification: Classification,
    pub criterion_passes: bool,
    /// `None` below the threshold, where no agreement is claimed.
    pub agrees_with_theory: Option<bool>,
}

impl ScanRecord {
    pub fn is_violation(&self) -> bool {
        self.agrees_with_theory == Some(false)
    }
}

/// Builds the record without raising on disagreement.
pub(crate) fn evaluate(n: u64, c: u64) -> Result<ScanRecord> {
    let input = CriterionInput::new(n, c)?;
    let sum = SubsetProductSum::compute(input)?;
    let criterion = criterion_from_sum(input, sum.value);
    let classification = classify_form(n, c);
    let criterion_passes = criterion.is_zero();
    let agrees_with_theory = classification
        .applicable
        .then(|| criterion_passes == classification.is_c_plus_one_times_prime());
    Ok(ScanRecord {
        n,
        c,
        s_residue: sum.value,
        criterion_residue: criterion,
        classification,
        criterion_passes,
        agrees_with_theory,
    })
}

/// Evaluates the criterion at `(n, c)`.
///
/// Returns [`Error::TheoryViolation`] if the input is above threshold and the
/// verdict disagrees with the classification.
pub fn criterion_verdict(n: u64, c: u64) -> Result<ScanRecord> {
    let record = evaluate(n, c)?;
    if record.is_violation() {
        return Err(Error::TheoryViolation(Box::new(record)));
    }
    Ok(record)
}

/// `(n-1)! mod n` by a running product.
pub fn classic_wilson_residue(n: u64) -> Result<Residue> {
    let reducer = Reducer::new(n)?;
    let mut acc = 1;
    for m in 1..n {
        acc = reducer.mul_add(acc, m, 0);
        if acc == 0 {
            break;
        }
    }
    Ok(Residue::from_parts(acc, n))
}
