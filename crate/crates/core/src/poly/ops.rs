//! Ring operations on canonical polynomials.
//!
//! Multiplication and exact division take a dense limb-level path when both
//! operands are homogeneous under the `deg s = 1, deg t = 2` grading (every
//! Lucas-derived object is), and a heap-merged sparse path otherwise.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{add_exp, dense, pack, unpack, DivisionError, Polynomial, Term};

fn merge(a: &[Term], b: &[Term], negate_b: bool) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let take_b = |t: &Term| {
        if negate_b {
            Term {
                coeff: -&t.coeff,
                ..*t
            }
        } else {
            t.clone()
        }
    };
    while i < a.len() && j < b.len() {
        match a[i].key().cmp(&b[j].key()) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(take_b(&b[j]));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b {
                    &a[i].coeff - &b[j].coeff
                } else {
                    &a[i].coeff + &b[j].coeff
                };
                if !c.is_zero() {
                    out.push(Term { coeff: c, ..a[i] });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(take_b));
    out
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::from_canonical(merge(&self.terms, &rhs.terms, false))
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::from_canonical(merge(&self.terms, &rhs.terms, true))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::from_canonical(
            self.terms
                .iter()
                .map(|t| Term {
                    coeff: -&t.coeff,
                    ..*t
                })
                .collect(),
        )
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(mut self) -> Polynomial {
        for t in &mut self.terms {
            t.coeff = -std::mem::take(&mut t.coeff);
        }
        self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    /// # Panics
    /// If a product exponent exceeds [`super::MAX_EXPONENT`].
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        multiply(self, rhs)
    }
}

macro_rules! forward_owned {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                $trait::$method(self, &rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::one(), |acc, p| acc * p)
    }
}

pub(super) fn multiply(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() || g.is_zero() {
        return Polynomial::zero();
    }
    if f.is_one() {
        return g.clone();
    }
    if g.is_one() {
        return f.clone();
    }
    if let (Some(_), Some(_)) = (f.weighted_degree(), g.weighted_degree()) {
        return dense::multiply(f, g);
    }
    sparse_multiply(f, g)
}

pub(super) fn exact_div(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, DivisionError> {
    if g.is_zero() {
        return Err(DivisionError::DivisionByZero);
    }
    if f.is_zero() {
        return Ok(Polynomial::zero());
    }
    if g.is_one() {
        return Ok(f.clone());
    }
    if let (Some(_), Some(_)) = (f.weighted_degree(), g.weighted_degree()) {
        return dense::exact_div(f, g);
    }
    sparse_exact_div(f, g)
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct HeapEntry {
    key: u64,
    // Tie-breaks only need to be deterministic.
    j: usize,
    i: usize,
}

fn product_key(a: &Term, b: &Term) -> u64 {
    pack(add_exp(a.s_exp, b.s_exp), add_exp(a.t_exp, b.t_exp))
}

/// Heap-merged multiplication: terms are produced in canonical order, one
/// heap slot per term of the shorter operand.
pub(super) fn sparse_multiply(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (long, short) = if f.terms.len() >= g.terms.len() {
        (&f.terms, &g.terms)
    } else {
        (&g.terms, &f.terms)
    };
    let mut heap: BinaryHeap<HeapEntry> = short
        .iter()
        .enumerate()
        .map(|(j, b)| HeapEntry {
            key: product_key(&long[0], b),
            j,
            i: 0,
        })
        .collect();
    let mut out: Vec<Term> = Vec::new();
    while let Some(top) = heap.peek() {
        let key = top.key;
        let mut c = BigInt::zero();
        while let Some(e) = heap.peek() {
            if e.key != key {
                break;
            }
            let HeapEntry { j, i, .. } = heap.pop().unwrap();
            c += &long[i].coeff * &short[j].coeff;
            if i + 1 < long.len() {
                heap.push(HeapEntry {
                    key: product_key(&long[i + 1], &short[j]),
                    j,
                    i: i + 1,
                });
            }
        }
        if !c.is_zero() {
            let (s_exp, t_exp) = unpack(key);
            out.push(Term {
                s_exp,
                t_exp,
                coeff: c,
            });
        }
    }
    Polynomial::from_canonical(out)
}

/// Greedy exact division with a heap of pending `q_i * g_j` products, so the
/// running remainder is never materialized.
pub(super) fn sparse_exact_div(
    f: &Polynomial,
    g: &Polynomial,
) -> Result<Polynomial, DivisionError> {
    let lead = &g.terms[0];
    let rest = &g.terms[1..];
    let mut quotient: Vec<Term> = Vec::new();
    let mut heap: BinaryHeap<HeapEntry> = BinaryHeap::new();
    // Divisor terms whose next product partner is the next quotient term.
    let mut waiting: Vec<usize> = (0..rest.len()).collect();
    let mut k = 0;
    loop {
        let next_f = f.terms.get(k).map(Term::key);
        let next_h = heap.peek().map(|e| e.key);
        let key = match (next_f, next_h) {
            (None, None) => break,
            (a, b) => a.max(b).unwrap(),
        };
        let mut c = BigInt::zero();
        if next_f == Some(key) {
            c = f.terms[k].coeff.clone();
            k += 1;
        }
        while let Some(e) = heap.peek() {
            if e.key != key {
                break;
            }
            let HeapEntry { j, i, .. } = heap.pop().unwrap();
            c -= &quotient[i].coeff * &rest[j].coeff;
            if i + 1 < quotient.len() {
                heap.push(HeapEntry {
                    key: product_key(&quotient[i + 1], &rest[j]),
                    j,
                    i: i + 1,
                });
            } else {
                waiting.push(j);
            }
        }
        if c.is_zero() {
            continue;
        }
        let (s_exp, t_exp) = unpack(key);
        if s_exp < lead.s_exp || t_exp < lead.t_exp {
            return Err(DivisionError::NonDivisible);
        }
        let (q, r) = c.div_rem(&lead.coeff);
        if !r.is_zero() {
            return Err(DivisionError::NonDivisible);
        }
        let term = Term {
            s_exp: s_exp - lead.s_exp,
            t_exp: t_exp - lead.t_exp,
            coeff: q,
        };
        let qi = quotient.len();
        for j in waiting.drain(..) {
            heap.push(HeapEntry {
                key: product_key(&term, &rest[j]),
                j,
                i: qi,
            });
        }
        quotient.push(term);
    }
    Ok(Polynomial::from_canonical(quotient))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Polynomial {
        text.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(p("s + t") + p("s - t"), p("2*s"));
        assert_eq!(p("s^2 + t") + p("t"), p("s^2 + 2*t"));
        let f = p("3*s^2*t - 7");
        assert_eq!(&f + &Polynomial::zero(), f);
        assert!((&f - &f).is_zero());
        assert!((&f + &-&f).is_zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("s") * p("s^2 + t"), p("s^3 + s*t"));
        let f = p("s^5*t - 2*s + 9");
        assert_eq!(&f * &Polynomial::one(), f);
        assert_eq!(p("s^2 + t") * p("s^2 + 2*t"), p("s^4 + 3*s^2*t + 2*t^2"));
    }

    #[test]
    fn mul_example_checked_by_evaluation() {
        let lhs = p("s^2 + t");
        let rhs = p("s^2 + 2*t");
        let prod = &lhs * &rhs;
        for (a, b) in [(2, 3), (-1, 4), (5, -7)] {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            assert_eq!(prod.eval(&a, &b), lhs.eval(&a, &b) * rhs.eval(&a, &b));
        }
    }

    #[test]
    fn div_examples() {
        assert_eq!(
            p("s^4 + 3*s^2*t + 2*t^2").exact_div(&p("s^2 + t")),
            Ok(p("s^2 + 2*t"))
        );
        let f = p("4*s*t^3 - s + 2");
        assert_eq!(f.exact_div(&Polynomial::one()), Ok(f.clone()));
        assert_eq!(p("s").exact_div(&p("t")), Err(DivisionError::NonDivisible));
        assert_eq!(
            f.exact_div(&Polynomial::zero()),
            Err(DivisionError::DivisionByZero)
        );
        assert_eq!(Polynomial::zero().exact_div(&f), Ok(Polynomial::zero()));
    }

    #[test]
    fn div_rejects_non_integer_quotient() {
        assert_eq!(
            p("3*s").exact_div(&p("2*s")),
            Err(DivisionError::NonDivisible)
        );
        assert_eq!(
            p("s^2 + 1").exact_div(&p("s + 1")),
            Err(DivisionError::NonDivisible)
        );
        assert_eq!(
            p("t").exact_div(&p("s - t")),
            Err(DivisionError::NonDivisible)
        );
    }

    #[test]
    fn sparse_paths_handle_inhomogeneous_inputs() {
        let a = p("s^3 - 2*s*t + t^2 + 5");
        let b = p("s*t - 3*s + 1");
        let prod = sparse_multiply(&a, &b);
        assert_eq!(prod.weighted_degree(), None);
        assert_eq!(sparse_exact_div(&prod, &b), Ok(a.clone()));
        assert_eq!(sparse_exact_div(&prod, &a), Ok(b));
        assert_eq!(
            sparse_exact_div(&(&prod + &Polynomial::one()), &a),
            Err(DivisionError::NonDivisible)
        );
    }
}
