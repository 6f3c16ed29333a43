//! Lucas polynomials `{n}` and lucastorials `{n}!`.

use std::fmt;
use std::sync::{Arc, RwLock};

use crate::poly::Polynomial;

/// Memoized `{0..N}` and `{0..M}!`, grown on demand.
///
/// Growth takes the write lock and fills every missing index bottom-up, so a
/// reader either sees a fully built entry or waits for it. The two tables
/// grow independently: lucastorials get large quickly and are only built when
/// asked for.
#[derive(Debug)]
pub struct LucasCache {
    lucas: RwLock<Vec<Arc<Polynomial>>>,
    lucastorial: RwLock<Vec<Arc<Polynomial>>>,
}

impl Default for LucasCache {
    fn default() -> Self {
        Self::new()
    }
}

impl LucasCache {
    pub fn new() -> Self {
        LucasCache {
            lucas: RwLock::new(vec![
                Arc::new(Polynomial::zero()),
                Arc::new(Polynomial::one()),
            ]),
            lucastorial: RwLock::new(vec![Arc::new(Polynomial::one())]),
        }
    }

    /// `{n}`.
    pub fn lucas(&self, n: usize) -> Arc<Polynomial> {
        if let Some(p) = self.lucas.read().unwrap().get(n) {
            return p.clone();
        }
        let mut table = self.lucas.write().unwrap();
        while table.len() <= n {
            let k = table.len();
            let next = table[k - 1].shift(1, 0) + table[k - 2].shift(0, 1);
            table.push(Arc::new(next));
        }
        table[n].clone()
    }

    /// `{n}! = {n}{n-1}...{1}`, with `{0}! = 1`.
    pub fn lucastorial(&self, n: usize) -> Arc<Polynomial> {
        if let Some(p) = self.lucastorial.read().unwrap().get(n) {
            return p.clone();
        }
        let mut table = self.lucastorial.write().unwrap();
        while table.len() <= n {
            let k = table.len();
            let next = &*self.lucas(k) * &*table[k - 1];
            table.push(Arc::new(next));
        }
        table[n].clone()
    }

    /// Number of Lucas polynomials currently cached.
    pub fn lucas_len(&self) -> usize {
        self.lucas.read().unwrap().len()
    }

    pub fn lucastorial_len(&self) -> usize {
        self.lucastorial.read().unwrap().len()
    }
}

/// Result of comparing the two sides of a polynomial identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityVerdict {
    Holds,
    Fails { lhs: String, rhs: String },
}

impl IdentityVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityVerdict::Holds)
    }

    pub(crate) fn compare(lhs: &Polynomial, rhs: &Polynomial) -> Self {
        if lhs == rhs {
            IdentityVerdict::Holds
        } else {
            IdentityVerdict::Fails {
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            }
        }
    }
}

impl fmt::Display for IdentityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityVerdict::Holds => f.write_str("holds"),
            IdentityVerdict::Fails { lhs, rhs } => write!(f, "fails: {lhs} != {rhs}"),
        }
    }
}

/// `{m+n} = {m+1}{n} + t{m}{n-1}` for `m, n >= 1`.
///
/// # Panics
/// If `m` or `n` is zero.
pub fn lemma21_check(cache: &LucasCache, m: usize, n: usize) -> IdentityVerdict {
    assert!(m >= 1 && n >= 1, "lemma21_check needs m, n >= 1");
    let lhs = cache.lucas(m + n);
    let rhs = &*cache.lucas(m + 1) * &*cache.lucas(n)
        + (&*cache.lucas(m) * &*cache.lucas(n - 1)).shift(0, 1);
    IdentityVerdict::compare(&lhs, &rhs)
}

/// `{2n} = {n+1}{n} + t{n-1}{n}`, the diagonal of [`lemma21_check`].
///
/// # Panics
/// If `n` is zero.
pub fn product_identity_check(cache: &LucasCache, n: usize) -> IdentityVerdict {
    assert!(n >= 1, "product_identity_check needs n >= 1");
    let lhs = cache.lucas(2 * n);
    let center = cache.lucas(n);
    let rhs = &*cache.lucas(n + 1) * &*center + (&*cache.lucas(n - 1) * &*center).shift(0, 1);
    IdentityVerdict::compare(&lhs, &rhs)
}
