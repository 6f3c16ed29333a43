//! Limb-level kernels for weighted-homogeneous operands.
//!
//! A polynomial whose terms all satisfy `s_exp + 2*t_exp = D` is determined
//! by its coefficient sequence indexed by `t_exp`, so products and exact
//! quotients become one-dimensional convolutions. Each output coefficient is
//! a sum of coefficient products, formed limb by limb in registers.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::limbs::{Digits, Kernel};
use super::{add_exp, DivisionError, Polynomial, Term};

/// Coefficient sequence of a homogeneous polynomial, indexed from `t_lo`.
struct Dense<'a> {
    weight: u64,
    t_lo: u32,
    coeffs: Vec<Option<&'a BigInt>>,
}

impl<'a> Dense<'a> {
    fn new(p: &'a Polynomial, weight: u64) -> Self {
        // Canonical order with constant weight means t_exp ascends.
        let t_lo = p.terms[0].t_exp;
        let t_hi = p.terms[p.terms.len() - 1].t_exp;
        let mut coeffs = vec![None; (t_hi - t_lo) as usize + 1];
        for term in &p.terms {
            coeffs[(term.t_exp - t_lo) as usize] = Some(&term.coeff);
        }
        Dense {
            weight,
            t_lo,
            coeffs,
        }
    }
}

fn term_at(weight: u64, t_exp: u64, coeff: BigInt) -> Term {
    Term {
        s_exp: (weight - 2 * t_exp) as u32,
        t_exp: t_exp as u32,
        coeff,
    }
}

pub(super) fn multiply(f: &Polynomial, g: &Polynomial) -> Polynomial {
    multiply_with(Kernel::detect(), f, g)
}

pub(super) fn exact_div(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, DivisionError> {
    exact_div_with(Kernel::detect(), f, g)
}

fn multiply_with(k: Kernel, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let fd = Dense::new(f, f.weighted_degree().unwrap());
    let gd = Dense::new(g, g.weighted_degree().unwrap());
    // Overflow checks on the extreme exponents cover every product term.
    add_exp(f.terms[0].s_exp, g.terms[0].s_exp);
    let t_lo = add_exp(fd.t_lo, gd.t_lo);
    add_exp(
        f.terms[f.terms.len() - 1].t_exp,
        g.terms[g.terms.len() - 1].t_exp,
    );

    // The kernels stream the wider coefficients and broadcast the narrower.
    let (xd, yd) = if f.max_coeff_bits() >= g.max_coeff_bits() {
        (&fd, &gd)
    } else {
        (&gd, &fd)
    };
    let xm: Vec<Digits> = xd.coeffs.iter().map(|c| k.digits(*c)).collect();
    let ym: Vec<Digits> = yd.coeffs.iter().map(|c| k.digits(*c)).collect();
    let weight = fd.weight + gd.weight;
    let ranges: Vec<RangeInclusive<usize>> = (0..xm.len() + ym.len() - 1)
        .map(|i| (i + 1).saturating_sub(xm.len())..=i.min(ym.len() - 1))
        .collect();
    let out = k
        .window_sums(&xm, &ym, 0, &ranges)
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| term_at(weight, u64::from(t_lo) + i as u64, c))
        .collect();
    Polynomial::from_canonical(out)
}

/// Quotient coefficients resolved per batch of bulk sums.
const BATCH: usize = 3;

fn exact_div_with(k: Kernel, f: &Polynomial, g: &Polynomial) -> Result<Polynomial, DivisionError> {
    let fd = Dense::new(f, f.weighted_degree().unwrap());
    let gd = Dense::new(g, g.weighted_degree().unwrap());
    // The leading term (largest s) sits at the smallest t index.
    if fd.t_lo < gd.t_lo || fd.weight < gd.weight {
        return Err(DivisionError::NonDivisible);
    }
    let (lf, lg) = (fd.coeffs.len(), gd.coeffs.len());
    if lf < lg {
        return Err(DivisionError::NonDivisible);
    }
    let q_weight = fd.weight - gd.weight;
    let q_t_lo = u64::from(fd.t_lo - gd.t_lo);
    let lq = lf - lg + 1;
    let lead = gd.coeffs[0].expect("dense form starts at a stored term");
    let lead_sign = if lead.is_one() {
        Some(false)
    } else if (-lead).is_one() {
        Some(true)
    } else {
        None
    };
    let gm: Vec<Digits> = gd.coeffs.iter().map(|c| k.digits(*c)).collect();

    // Output b needs q[b-j] g[j] for j >= 1. Within a batch starting at b0,
    // the terms with q index below b0 are summed in bulk; the few involving
    // quotient coefficients of the batch itself are added as they resolve.
    let mut qm: Vec<Digits> = Vec::with_capacity(lq);
    let mut qv: Vec<BigInt> = Vec::with_capacity(lq);
    let mut out: Vec<Term> = Vec::new();
    for b0 in (0..lf).step_by(BATCH) {
        let b1 = (b0 + BATCH).min(lf);
        let ranges: Vec<RangeInclusive<usize>> = (b0..b1)
            .map(|b| (b - b0 + 1).max((b + 1).saturating_sub(lq))..=b.min(lg - 1))
            .collect();
        let bulk = k.window_sums(&qm, &gm, b0, &ranges);
        for (b, sum) in (b0..b1).zip(bulk) {
            let mut v = match fd.coeffs[b] {
                Some(c) => c - sum,
                None => -sum,
            };
            for j in 1..=(b - b0).min(lg - 1) {
                if let (Some(gj), Some(q)) = (gd.coeffs[j], qv.get(b - j)) {
                    if !q.is_zero() {
                        v -= q * gj;
                    }
                }
            }
            if b >= lq {
                if !v.is_zero() {
                    return Err(DivisionError::NonDivisible);
                }
                continue;
            }
            if v.is_zero() {
                qm.push(Digits::default());
                qv.push(v);
                continue;
            }
            let t_exp = q_t_lo + b as u64;
            if 2 * t_exp > q_weight {
                return Err(DivisionError::NonDivisible);
            }
            let q = match lead_sign {
                Some(false) => v,
                Some(true) => -v,
                None => {
                    let (q, r) = v.div_rem(lead);
                    if !r.is_zero() {
                        return Err(DivisionError::NonDivisible);
                    }
                    q
                }
            };
            qm.push(k.digits(Some(&q)));
            out.push(term_at(q_weight, t_exp, q.clone()));
            qv.push(q);
        }
    }
    Ok(Polynomial::from_canonical(out))
}
