//! Exact computation and verification of Lucas polynomials, lucanomials and
//! Lucas-Catalan polynomials in `Z[s, t]`.
//!
//! The Lucas polynomials are `{0} = 0`, `{1} = 1`, `{n} = s{n-1} + t{n-2}`.
//! Lucanomials `{m choose k} = {m}! / ({k}! {m-k}!)` and the Lucas-Catalan
//! polynomials `{2n choose n} / {n+1}` are built from them by exact division
//! and checked against the identity
//! `{2n choose n} / {n+1} = {2n-1 choose n-1} + t {2n-1 choose n-2}`.

pub mod catalan;
pub mod config;
pub mod error;
pub mod lucanomial;
pub mod lucas;
pub mod oracles;
pub mod poly;
pub mod selftest;

pub use catalan::{
    catalan_via_division, catalan_via_identity, render_text, sweep, sweep_with, verify_n,
    CatalanPayload, PolyDigest, ReportOptions, VerificationReport,
};
pub use config::{Check, OutputFormat, SweepConfig};
pub use error::{Error, Result};
pub use lucanomial::Lucanomials;
pub use lucas::{lemma21_check, product_identity_check, IdentityVerdict, LucasCache};
pub use poly::{DivisionError, ParseError, Polynomial, PositivityVerdict, Term};
