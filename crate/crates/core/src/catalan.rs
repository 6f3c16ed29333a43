//! Lucas-Catalan polynomials `{2n choose n} / {n+1}` and their verification.

use std::fmt::Write as _;

use num_bigint::{BigInt, Sign};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::{Check, SweepConfig};
use crate::error::{Error, Result};
use crate::lucanomial::Lucanomials;
use crate::lucas::product_identity_check;
use crate::oracles;
use crate::poly::Polynomial;

/// `{2n choose n}` divided exactly by `{n+1}`.
///
/// # Panics
/// If `n` is zero.
pub fn catalan_via_division(engine: &Lucanomials, n: usize) -> Result<Polynomial> {
    assert!(n >= 1, "catalan index must be at least 1");
    engine.central_quotient(n).map(|q| (*q).clone())
}

/// `{2n-1 choose n-1} + t {2n-1 choose n-2}`.
///
/// # Panics
/// If `n` is zero.
pub fn catalan_via_identity(engine: &Lucanomials, n: usize) -> Result<Polynomial> {
    assert!(n >= 1, "catalan index must be at least 1");
    let m = 2 * n - 1;
    let head = engine.binom(m, n as i64 - 1)?;
    let tail = engine.binom(m, n as i64 - 2)?;
    Ok(&*head + tail.shift(0, 1))
}

/// Size profile and content hash of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDigest {
    pub term_count: usize,
    pub total_degree: Option<u64>,
    pub max_coeff_bits: u64,
    /// `s_exp + 2 t_exp` when shared by every term.
    pub weighted_degree: Option<u64>,
    /// Smallest and largest `t` exponent present.
    pub t_range: Option<(u32, u32)>,
    /// SHA-256 of the terms in canonical order, hex. Each term is hashed as
    /// `s_exp` and `t_exp` (u32 LE), a sign byte (1 for negative), the
    /// number of 64-bit magnitude limbs (u64 LE) and the limbs (LE).
    pub sha256: String,
}

impl PolyDigest {
    pub fn of(p: &Polynomial) -> Self {
        let mut h = Sha256::new();
        for term in p.terms() {
            let c = term.coeff();
            h.update(term.s_exp().to_le_bytes());
            h.update(term.t_exp().to_le_bytes());
            h.update([u8::from(c.sign() == Sign::Minus)]);
            h.update((c.magnitude().iter_u64_digits().len() as u64).to_le_bytes());
            for limb in c.magnitude().iter_u64_digits() {
                h.update(limb.to_le_bytes());
            }
        }
        let t_range = p
            .terms()
            .iter()
            .fold(None, |acc: Option<(u32, u32)>, term| {
                let t = term.t_exp();
                Some(acc.map_or((t, t), |(lo, hi)| (lo.min(t), hi.max(t))))
            });
        PolyDigest {
            term_count: p.term_count(),
            total_degree: p.total_degree(),
            max_coeff_bits: p.max_coeff_bits(),
            weighted_degree: p.weighted_degree(),
            t_range,
            sha256: hex::encode(h.finalize()),
        }
    }
}

/// The polynomial itself, or its digest once it is too large to embed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CatalanPayload {
    Full(Polynomial),
    Digest(PolyDigest),
}

impl CatalanPayload {
    pub fn new(p: &Polynomial, max_terms: usize) -> Self {
        if p.term_count() <= max_terms {
            CatalanPayload::Full(p.clone())
        } else {
            CatalanPayload::Digest(PolyDigest::of(p))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReportOptions {
    pub max_terms: usize,
    /// Also check the product form and `identity * {n+1} = {2n choose n}`.
    pub lemma21: bool,
    /// Also compare evaluations at `(2,-1)` and `(1,1)` with integer oracles.
    pub specializations: bool,
    pub spec_point: Option<(i64, i64)>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            max_terms: 256,
            lemma21: false,
            specializations: false,
            spec_point: None,
        }
    }
}

impl ReportOptions {
    pub fn from_config(config: &SweepConfig) -> Self {
        ReportOptions {
            max_terms: config.max_terms,
            lemma21: config.has(Check::Lemma21),
            specializations: config.has(Check::Specializations),
            spec_point: config.spec_point,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: usize,
    pub division_ok: bool,
    pub identity_ok: bool,
    pub positivity_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lemma21_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub specialization_ok: Option<bool>,
    /// The polynomial evaluated at the requested point, in decimal.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub spec_value: Option<String>,
    /// Absent only when the division route failed.
    pub catalan: Option<CatalanPayload>,
    pub failure: Option<String>,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.division_ok
            && self.identity_ok
            && self.positivity_ok
            && self.lemma21_ok.unwrap_or(true)
            && self.specialization_ok.unwrap_or(true)
    }

    pub fn digest(&self) -> Option<PolyDigest> {
        match self.catalan.as_ref()? {
            CatalanPayload::Full(p) => Some(PolyDigest::of(p)),
            CatalanPayload::Digest(d) => Some(d.clone()),
        }
    }
}

/// Describes the first term, in canonical order, where `a` and `b` differ.
fn first_difference(a: &Polynomial, b: &Polynomial) -> String {
    let (mut i, mut j) = (0, 0);
    let (ta, tb) = (a.terms(), b.terms());
    loop {
        let key = |t: &crate::poly::Term| (t.s_exp(), t.t_exp());
        let (s, t) = match (ta.get(i), tb.get(j)) {
            (None, None) => return "no difference".into(),
            (Some(x), None) => key(x),
            (None, Some(y)) => key(y),
            (Some(x), Some(y)) if key(x) == key(y) => {
                if x.coeff() != y.coeff() {
                    key(x)
                } else {
                    i += 1;
                    j += 1;
                    continue;
                }
            }
            (Some(x), Some(y)) => key(x).max(key(y)),
        };
        return format!(
            "coefficient of s^{s}*t^{t}: {} vs {}",
            a.coeff(s, t),
            b.coeff(s, t)
        );
    }
}

/// Runs both routes for one `n` and records every verdict.
///
/// # Panics
/// If `n` is zero.
pub fn verify_n(engine: &Lucanomials, n: usize, opts: &ReportOptions) -> VerificationReport {
    let mut failures: Vec<String> = Vec::new();
    let division = catalan_via_division(engine, n);
    let identity = catalan_via_identity(engine, n);
    let division_ok = division.is_ok();
    if let Err(e) = &division {
        failures.push(format!("division route: {e}"));
    }
    let identity_ok = match (&division, &identity) {
        (Ok(d), Ok(i)) if d == i => true,
        (Ok(d), Ok(i)) => {
            failures.push(format!("routes disagree: {}", first_difference(d, i)));
            false
        }
        (_, Err(e)) => {
            failures.push(format!("identity route: {e}"));
            false
        }
        (Err(_), Ok(_)) => false,
    };
    // Positivity is judged on the division quotient, falling back to the
    // identity route so a division failure still yields a verdict.
    let subject = division.as_ref().or(identity.as_ref()).ok();
    let positivity_ok = match subject {
        Some(p) => {
            let v = p.positivity();
            if !v.is_positive() {
                failures.push(format!("positivity: {v}"));
            }
            v.is_positive()
        }
        None => false,
    };

    let lemma21_ok = opts.lemma21.then(|| {
        let product = product_identity_check(engine.cache(), n);
        if !product.holds() {
            failures.push(format!("product form: {product}"));
        }
        let chain = match (&identity, engine.binom(2 * n, n as i64)) {
            (Ok(i), Ok(central)) => {
                let back = i * &*engine.lucas(n + 1);
                if back != *central {
                    failures.push(format!(
                        "identity route times {{{}}}: {}",
                        n + 1,
                        first_difference(&back, &central)
                    ));
                }
                back == *central
            }
            _ => false,
        };
        product.holds() && chain
    });

    let specialization_ok = match (opts.specializations, subject) {
        (false, _) => None,
        (true, None) => Some(false),
        (true, Some(p)) => {
            let mut ok = true;
            let points: [(i64, i64, BigInt); 2] = [
                (2, -1, oracles::catalan_number(n as u64)),
                (1, 1, oracles::fibonomial_catalan(n as u64)),
            ];
            for (s, t, expected) in points {
                let got = p.eval(&s.into(), &t.into());
                if got != expected {
                    failures.push(format!("value at ({s},{t}): {got}, oracle {expected}"));
                    ok = false;
                }
            }
            Some(ok)
        }
    };

    let spec_value = match (opts.spec_point, subject) {
        (Some((s, t)), Some(p)) => Some(p.eval(&s.into(), &t.into()).to_string()),
        _ => None,
    };

    VerificationReport {
        n,
        division_ok,
        identity_ok,
        positivity_ok,
        lemma21_ok,
        specialization_ok,
        spec_value,
        catalan: division
            .as_ref()
            .ok()
            .map(|p| CatalanPayload::new(p, opts.max_terms)),
        failure: if failures.is_empty() {
            None
        } else {
            Some(failures.join("; "))
        },
    }
}

/// Verifies `1..=config.max_n`, handing each report to `sink` in order of `n`.
///
/// Indices are processed in ascending blocks of `config.jobs`, one worker per
/// index, so memoized lucanomials from earlier blocks are reused by later
/// ones. Report contents do not depend on `jobs`.
pub fn sweep_with<F>(config: &SweepConfig, mut sink: F) -> Result<()>
where
    F: FnMut(VerificationReport),
{
    let config = config.clone().validate()?;
    let engine = Lucanomials::default().with_large_capacity(8.max(4 * config.jobs));
    let opts = ReportOptions::from_config(&config);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let indices: Vec<usize> = (1..=config.max_n).collect();
    for block in indices.chunks(config.jobs) {
        let reports: Vec<VerificationReport> = pool.install(|| {
            block
                .par_iter()
                .map(|&n| verify_n(&engine, n, &opts))
                .collect()
        });
        reports.into_iter().for_each(&mut sink);
    }
    Ok(())
}

/// Collecting form of [`sweep_with`].
pub fn sweep(config: &SweepConfig) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::with_capacity(config.max_n);
    sweep_with(config, |r| out.push(r))?;
    Ok(out)
}

/// One-line human summary of a report.
pub fn render_text(report: &VerificationReport) -> String {
    let mut line = String::new();
    let status = if report.all_ok() { "PASS" } else { "FAIL" };
    write!(line, "{status} n={}", report.n).unwrap();
    if let Some(d) = report.digest() {
        write!(
            line,
            " terms={} degree={} max_bits={}",
            d.term_count,
            d.total_degree.map_or("-".into(), |v| v.to_string()),
            d.max_coeff_bits
        )
        .unwrap();
    }
    if let Some(v) = &report.spec_value {
        write!(line, " value={v}").unwrap();
    }
    if let Some(f) = &report.failure {
        write!(line, " failure: {f}").unwrap();
    }
    line
}
