//! Canonical sparse polynomials in `Z[s, t]`.
//!
//! A [`Polynomial`] is a list of nonzero [`Term`]s kept in strictly
//! descending lexicographic order of `(s_exp, t_exp)`. Every constructor and
//! every operation returns a value in this canonical form, so structural
//! equality is polynomial equality and formatting is deterministic.

mod dense;
mod json;
mod limbs;
mod ops;
mod text;

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

pub use text::ParseError;

/// Largest exponent a term may carry.
pub const MAX_EXPONENT: u64 = u32::MAX as u64;

/// An exponent outside `0..=MAX_EXPONENT` was supplied.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("exponent {0} exceeds the supported maximum {MAX_EXPONENT}")]
pub struct ExponentRangeError(pub u64);

/// Failure modes of [`Polynomial::exact_div`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisionError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("no exact quotient exists in Z[s,t]")]
    NonDivisible,
}

/// One monomial `coeff * s^s_exp * t^t_exp` with `coeff != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    s_exp: u32,
    t_exp: u32,
    coeff: BigInt,
}

impl Term {
    /// Returns `None` for a zero coefficient, which a term may never hold.
    pub fn new(s_exp: u32, t_exp: u32, coeff: BigInt) -> Option<Self> {
        (!coeff.is_zero()).then_some(Term {
            s_exp,
            t_exp,
            coeff,
        })
    }

    pub fn s_exp(&self) -> u32 {
        self.s_exp
    }

    pub fn t_exp(&self) -> u32 {
        self.t_exp
    }

    pub fn coeff(&self) -> &BigInt {
        &self.coeff
    }

    /// Packed exponent pair; numeric order on keys is the canonical order.
    #[inline]
    pub(crate) fn key(&self) -> u64 {
        pack(self.s_exp, self.t_exp)
    }
}

#[inline]
pub(crate) fn pack(s_exp: u32, t_exp: u32) -> u64 {
    (u64::from(s_exp) << 32) | u64::from(t_exp)
}

#[inline]
pub(crate) fn unpack(key: u64) -> (u32, u32) {
    ((key >> 32) as u32, key as u32)
}

/// Outcome of a coefficient-positivity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PositivityVerdict {
    Positive,
    /// The zero polynomial has no coefficients and is not counted as positive.
    ZeroPolynomial,
    /// First term, in canonical order, whose coefficient is not positive.
    NotPositive {
        s_exp: u32,
        t_exp: u32,
        coeff: BigInt,
    },
}

impl PositivityVerdict {
    pub fn is_positive(&self) -> bool {
        matches!(self, PositivityVerdict::Positive)
    }
}

impl fmt::Display for PositivityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PositivityVerdict::Positive => f.write_str("positive"),
            PositivityVerdict::ZeroPolynomial => f.write_str("not positive: zero polynomial"),
            PositivityVerdict::NotPositive {
                s_exp,
                t_exp,
                coeff,
            } => write!(
                f,
                "not positive: coefficient {coeff} at s^{s_exp}*t^{t_exp}"
            ),
        }
    }
}

/// Sparse polynomial in `Z[s, t]` with arbitrary-precision coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, 0, c)
    }

    /// The variable `s`.
    pub fn s() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(0, 1, 1)
    }

    pub fn monomial(s_exp: u32, t_exp: u32, c: impl Into<BigInt>) -> Self {
        Polynomial {
            terms: Term::new(s_exp, t_exp, c.into()).into_iter().collect(),
        }
    }

    /// Builds a polynomial from `(s_exp, t_exp, coeff)` triples in any order.
    /// Repeated exponent pairs are summed and zero coefficients dropped.
    pub fn from_terms<I, C>(terms: I) -> Result<Self, ExponentRangeError>
    where
        I: IntoIterator<Item = (u64, u64, C)>,
        C: Into<BigInt>,
    {
        let mut raw = Vec::new();
        for (s, t, c) in terms {
            let s = u32::try_from(s).map_err(|_| ExponentRangeError(s))?;
            let t = u32::try_from(t).map_err(|_| ExponentRangeError(t))?;
            raw.push((pack(s, t), c.into()));
        }
        Ok(Self::from_keyed(raw))
    }

    pub(crate) fn from_keyed(mut raw: Vec<(u64, BigInt)>) -> Self {
        raw.sort_by_key(|&(key, _)| std::cmp::Reverse(key));
        let mut terms: Vec<Term> = Vec::with_capacity(raw.len());
        for (key, c) in raw {
            match terms.last_mut() {
                Some(last) if last.key() == key => last.coeff += c,
                _ => {
                    let (s_exp, t_exp) = unpack(key);
                    terms.push(Term {
                        s_exp,
                        t_exp,
                        coeff: c,
                    });
                }
            }
        }
        terms.retain(|t| !t.coeff.is_zero());
        Polynomial { terms }
    }

    /// Caller guarantees strictly descending keys and nonzero coefficients.
    pub(crate) fn from_canonical(terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].key() > w[1].key()));
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        Polynomial { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [t] if t.s_exp == 0 && t.t_exp == 0 && t.coeff.is_one())
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Leading term in lexicographic order with `s > t`.
    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Coefficient of `s^s_exp * t^t_exp`, zero when absent.
    pub fn coeff(&self, s_exp: u32, t_exp: u32) -> BigInt {
        let key = pack(s_exp, t_exp);
        self.terms
            .binary_search_by(|t| key.cmp(&t.key()))
            .map(|i| self.terms[i].coeff.clone())
            .unwrap_or_default()
    }

    /// Largest `s_exp + t_exp` over all terms.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms
            .iter()
            .map(|t| u64::from(t.s_exp) + u64::from(t.t_exp))
            .max()
    }

    /// Top exponent of `s`.
    pub fn s_degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.s_exp)
    }

    /// Common value of `s_exp + 2*t_exp` when every term shares it.
    ///
    /// Lucas polynomials and everything built from them by products and
    /// exact quotients are homogeneous under this grading.
    pub fn weighted_degree(&self) -> Option<u64> {
        let first = self.terms.first()?;
        let w = weight(first);
        self.terms.iter().all(|t| weight(t) == w).then_some(w)
    }

    /// Bit length of the largest coefficient magnitude.
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.iter().map(|t| t.coeff.bits()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    ..*t
                })
                .collect(),
        }
    }

    /// Multiplies by `s^s_exp * t^t_exp`.
    ///
    /// # Panics
    /// If a resulting exponent exceeds [`MAX_EXPONENT`].
    pub fn shift(&self, s_exp: u32, t_exp: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    s_exp: add_exp(t.s_exp, s_exp),
                    t_exp: add_exp(t.t_exp, t_exp),
                    coeff: t.coeff.clone(),
                })
                .collect(),
        }
    }

    /// Exact value at the integer point `(s, t)`.
    pub fn eval(&self, s: &BigInt, t: &BigInt) -> BigInt {
        // Horner in s over groups of equal s-exponent, Horner in t inside.
        let mut acc = BigInt::zero();
        let mut prev_s: Option<u32> = None;
        let mut i = 0;
        while i < self.terms.len() {
            let s_exp = self.terms[i].s_exp;
            let mut j = i;
            let mut inner = BigInt::zero();
            let mut prev_t: Option<u32> = None;
            while j < self.terms.len() && self.terms[j].s_exp == s_exp {
                let term = &self.terms[j];
                if let Some(pt) = prev_t {
                    inner *= pow(t, pt - term.t_exp);
                }
                inner += &term.coeff;
                prev_t = Some(term.t_exp);
                j += 1;
            }
            inner *= pow(t, prev_t.unwrap_or(0));
            if let Some(ps) = prev_s {
                acc *= pow(s, ps - s_exp);
            }
            acc += inner;
            prev_s = Some(s_exp);
            i = j;
        }
        acc * pow(s, prev_s.unwrap_or(0))
    }

    pub fn positivity(&self) -> PositivityVerdict {
        if self.is_zero() {
            return PositivityVerdict::ZeroPolynomial;
        }
        match self.terms.iter().find(|t| t.coeff.sign() != Sign::Plus) {
            None => PositivityVerdict::Positive,
            Some(t) => PositivityVerdict::NotPositive {
                s_exp: t.s_exp,
                t_exp: t.t_exp,
                coeff: t.coeff.clone(),
            },
        }
    }

    pub fn is_positive(&self) -> bool {
        self.positivity().is_positive()
    }

    /// Returns `q` with `self == divisor * q`, or reports that none exists.
    ///
    /// Greedy leading-term cancellation in lex order (`s > t`): each step
    /// requires the remainder's leading term to be divisible, exponentwise and
    /// in its integer coefficient, by the divisor's leading term.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial, DivisionError> {
        ops::exact_div(self, divisor)
    }

    /// True when the coefficient magnitudes are all at most `bound`.
    pub fn coeffs_bounded_by(&self, bound: &BigInt) -> bool {
        self.terms.iter().all(|t| t.coeff.abs() <= *bound)
    }
}

/// Heap-based product, bypassing the dense kernel.
pub(crate) fn sparse_product(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() || g.is_zero() {
        return Polynomial::zero();
    }
    ops::sparse_multiply(f, g)
}

/// Heap-based exact quotient, bypassing the dense kernel.
pub(crate) fn sparse_quotient(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, DivisionError> {
    if g.is_zero() {
        return Err(DivisionError::DivisionByZero);
    }
    if f.is_zero() {
        return Ok(Polynomial::zero());
    }
    ops::sparse_exact_div(f, g)
}

#[inline]
fn weight(t: &Term) -> u64 {
    u64::from(t.s_exp) + 2 * u64::from(t.t_exp)
}

#[inline]
pub(crate) fn add_exp(a: u32, b: u32) -> u32 {
    a.checked_add(b)
        .expect("exponent overflow: result exceeds the supported maximum")
}

fn pow(base: &BigInt, e: u32) -> BigInt {
    match e {
        0 => BigInt::one(),
        1 => base.clone(),
        _ => Pow::pow(base, e),
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(c)
    }
}

impl From<BigInt> for Polynomial {
    fn from(c: BigInt) -> Self {
        Polynomial::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Polynomial {
        text.parse().unwrap()
    }

    #[test]
    fn from_terms_merges_and_drops_zeros() {
        let f = Polynomial::from_terms([(1, 0, 2), (0, 1, 3), (1, 0, -2), (0, 0, 0)]).unwrap();
        assert_eq!(f, Polynomial::monomial(0, 1, 3));
        assert_eq!(
            Polynomial::from_terms([(1u64 << 33, 0, 1)]),
            Err(ExponentRangeError(1 << 33))
        );
        assert!(Polynomial::from_terms([(MAX_EXPONENT, 0, 1)]).is_ok());
    }

    #[test]
    fn canonical_order_is_descending_lex() {
        let f = Polynomial::from_terms([(0, 2, 2), (4, 0, 1), (2, 1, 3)]).unwrap();
        let keys: Vec<_> = f.terms().iter().map(|t| (t.s_exp(), t.t_exp())).collect();
        assert_eq!(keys, vec![(4, 0), (2, 1), (0, 2)]);
    }

    #[test]
    fn eval_examples() {
        let two = BigInt::from(2);
        let one = BigInt::from(1);
        let zero = BigInt::from(0);
        assert_eq!(
            p("s^2 + 2*t").eval(&two, &BigInt::from(-1)),
            BigInt::from(2)
        );
        assert_eq!(p("s^3 + 2*s*t").eval(&one, &one), BigInt::from(3));
        assert_eq!(
            p("7*s^5*t + s*t^2 - 11").eval(&zero, &zero),
            BigInt::from(-11)
        );
        assert_eq!(Polynomial::zero().eval(&two, &two), BigInt::zero());
    }

    #[test]
    fn eval_handles_gaps_in_both_variables() {
        let f = p("3*s^7*t^2 - s^7 + 5*s^2*t^9 + t^4 + 2");
        let (s, t) = (BigInt::from(-3), BigInt::from(5));
        let direct: BigInt = f
            .terms()
            .iter()
            .map(|term| term.coeff() * Pow::pow(&s, term.s_exp()) * Pow::pow(&t, term.t_exp()))
            .sum();
        assert_eq!(f.eval(&s, &t), direct);
    }

    #[test]
    fn positivity_examples() {
        assert_eq!(p("s^2 + 2*t").positivity(), PositivityVerdict::Positive);
        assert_eq!(
            p("s^2 - t").positivity(),
            PositivityVerdict::NotPositive {
                s_exp: 0,
                t_exp: 1,
                coeff: BigInt::from(-1)
            }
        );
        assert_eq!(
            Polynomial::zero().positivity(),
            PositivityVerdict::ZeroPolynomial
        );
        // first offender in canonical order, not the most negative one
        assert_eq!(
            p("s^3 - s*t - 9*t").positivity(),
            PositivityVerdict::NotPositive {
                s_exp: 1,
                t_exp: 1,
                coeff: BigInt::from(-1)
            }
        );
    }

    #[test]
    fn weighted_degree_detects_homogeneity() {
        assert_eq!(p("s^4 + 3*s^2*t + 2*t^2").weighted_degree(), Some(4));
        assert_eq!(p("s + 1").weighted_degree(), None);
        assert_eq!(Polynomial::zero().weighted_degree(), None);
        assert_eq!(p("s^4 + t").total_degree(), Some(4));
    }

    #[test]
    fn coeff_lookup() {
        let f = p("s^4 + 3*s^2*t + 2*t^2");
        assert_eq!(f.coeff(2, 1), BigInt::from(3));
        assert_eq!(f.coeff(1, 1), BigInt::zero());
    }
}
