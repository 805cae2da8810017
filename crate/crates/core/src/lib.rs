//! Generalized Wilson residues.
//!
//! For `n >= 2` and `0 <= c <= n - 2` this crate computes
//! `S(n, c) = e_{n-1-c}(1, ..., n-1) mod n`, the sum of all products of
//! `(n-1-c)`-element subsets of `{1, ..., n-1}`, without enumerating the
//! subsets. It then evaluates the extended Wilson criterion
//!
//! ```text
//! ((-1)^c + S(n, c)) * (c + 1) == 0 (mod n)
//! ```
//!
//! which, for `n >= (2c+3)^2`, holds exactly when `n = (c+1) p` with `p`
//! prime. The `c = 0` case is Wilson's theorem.
//!
//! Modules:
//! - [`modarith`]: canonical residues and the truncated product
//!   `prod_{m=1}^{n-1} (x + m) mod (n, x^{c+1})`.
//! - [`numtheory`]: primality, prime-power factorization, Legendre
//!   valuations and numeric checkers for the supporting inequalities.
//! - [`wilson`]: the criterion itself and its classification.
//! - [`oracle`]: subset-enumeration oracles for small `n`.
//! - [`scan`]: deterministic, optionally parallel range scans.

pub mod error;
pub mod modarith;
pub mod numtheory;
pub mod oracle;
pub mod scan;
pub mod verify;
pub mod wilson;

pub use error::{Error, Result};
pub use modarith::{mulmod, truncated_shifted_product, Residue, TruncatedPoly, MODULUS_LIMIT};
pub use scan::{scan_range, ScanReport, ScanSummary};
pub use wilson::{
    classic_wilson_residue, classify_form, criterion_verdict, elem_sym_sum_mod,
    extended_wilson_residue, Classification, CriterionInput, FormKind, ScanRecord,
    SubsetProductSum,
};
