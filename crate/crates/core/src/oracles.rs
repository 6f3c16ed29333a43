//! Brute-force and closed-form integer references.
//!
//! Nothing here multiplies, divides or evaluates a [`Polynomial`]; the tiling
//! oracle only builds one from counted terms. That keeps these functions
//! independent of the arithmetic they are used to check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Longest strip [`strip_tiling_poly`] will enumerate.
pub const MAX_STRIP_LENGTH: usize = 30;

/// Piece counts of one tiling of a strip.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TilingWeight {
    pub monominoes: u32,
    pub dominoes: u32,
}

impl TilingWeight {
    pub fn length(self) -> usize {
        self.monominoes as usize + 2 * self.dominoes as usize
    }
}

/// Every monomino/domino tiling of a `1 x length` strip, depth first.
pub fn strip_tilings(length: usize) -> Result<Vec<TilingWeight>> {
    if length > MAX_STRIP_LENGTH {
        return Err(Error::Range {
            what: "strip length",
            value: length as u64,
            limit: MAX_STRIP_LENGTH as u64,
        });
    }
    let mut out = Vec::new();
    let mut stack = vec![(0usize, TilingWeight::default())];
    while let Some((covered, w)) = stack.pop() {
        if covered == length {
            out.push(w);
            continue;
        }
        if covered + 2 <= length {
            stack.push((
                covered + 2,
                TilingWeight {
                    dominoes: w.dominoes + 1,
                    ..w
                },
            ));
        }
        stack.push((
            covered + 1,
            TilingWeight {
                monominoes: w.monominoes + 1,
                ..w
            },
        ));
    }
    Ok(out)
}

/// Sum of `s^monominoes * t^dominoes` over all tilings of the strip.
pub fn strip_tiling_poly(length: usize) -> Result<Polynomial> {
    let mut counts: BTreeMap<TilingWeight, u64> = BTreeMap::new();
    for w in strip_tilings(length)? {
        *counts.entry(w).or_default() += 1;
    }
    let terms = counts
        .into_iter()
        .map(|(w, c)| (u64::from(w.monominoes), u64::from(w.dominoes), c));
    Ok(Polynomial::from_terms(terms).expect("small exponents"))
}

/// `C(2n, n) / (n + 1)` via the product `prod_{k=2..n} (n + k) / k`.
pub fn catalan_number(n: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in 2..=n {
        num *= n + k;
        den *= k;
    }
    num / den
}

pub fn fibonacci(n: u64) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// Pascal's triangle entry; zero outside `0 <= k <= m`.
pub fn binomial(m: u64, k: i64) -> BigInt {
    gaussian_binomial_at(m, k, &BigInt::one())
}

/// `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn q_integer(n: u64, q: i64) -> BigInt {
    let q = BigInt::from(q);
    let mut acc = BigInt::zero();
    let mut power = BigInt::one();
    for _ in 0..n {
        acc += &power;
        power *= &q;
    }
    acc
}

/// Gaussian binomial at integer `q` by `[m,k] = [m-1,k-1] + q^k [m-1,k]`;
/// zero outside `0 <= k <= m`.
pub fn gaussian_binomial_at(m: u64, k: i64, q: &BigInt) -> BigInt {
    if k < 0 || k as u64 > m {
        return BigInt::zero();
    }
    let k = k as usize;
    // row[j] holds [r, j] for the current row r.
    let mut row = vec![BigInt::one()];
    for r in 1..=m as usize {
        let mut next = vec![BigInt::one(); r + 1];
        let mut q_pow = q.clone();
        for j in 1..r {
            next[j] = &row[j - 1] + &q_pow * &row[j];
            q_pow *= q;
        }
        row = next;
    }
    row.swap_remove(k)
}

/// Lucas sequence values `{0}, ..., {len-1}` at the integer point `(s, t)`.
pub fn lucas_values(len: usize, s: i64, t: i64) -> Vec<BigInt> {
    let (s, t) = (BigInt::from(s), BigInt::from(t));
    let mut out: Vec<BigInt> = Vec::with_capacity(len);
    for n in 0..len {
        let v = match n {
            0 => BigInt::zero(),
            1 => BigInt::one(),
            _ => &s * &out[n - 1] + &t * &out[n - 2],
        };
        out.push(v);
    }
    out
}

/// `{2n}! / ({n}! {n}! {n+1})` computed on integer Lucas values at `(s, t)`.
///
/// `None` when one of the denominators vanishes at this point.
pub fn lucas_catalan_at(n: u64, s: i64, t: i64) -> Option<BigInt> {
    let n = n as usize;
    let l = lucas_values(2 * n + 2, s, t);
    let mut num = BigInt::one();
    let mut den = l[n + 1].clone();
    for k in 1..=n {
        num *= &l[n + k];
        den *= &l[k];
    }
    if den.is_zero() {
        return None;
    }
    let (q, r) = num.div_rem(&den);
    assert!(
        r.is_zero(),
        "non-integer Lucas-Catalan value at ({s},{t}), n={n}"
    );
    Some(q)
}

/// The Catalan analogue built from Fibonacci numbers.
pub fn fibonomial_catalan(n: u64) -> BigInt {
    lucas_catalan_at(n, 1, 1).expect("Fibonacci numbers F(1..) are nonzero")
}
