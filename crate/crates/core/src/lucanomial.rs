//! Lucanomial coefficients `{m choose k} = {m}! / ({k}! {m-k}!)`.
//!
//! Three routes are provided:
//!
//! * [`Lucanomials::binom_factorial`] divides lucastorials outright. This is
//!   the definition, and every call certifies that the quotient has integer
//!   coefficients.
//! * [`Lucanomials::binom_recurrence`] builds Pascal-style rows from
//!   `{m choose k} = {k+1}{m-1 choose k} + t{m-k-1}{m-1 choose k-1}`, using
//!   only multiplication and addition.
//! * [`Lucanomials::binom`] walks from a memoized neighbour by one ratio of
//!   Lucas polynomials at a time. It is the route used at scale: a full
//!   lucastorial at `m = 400` alone would hold hundreds of megabytes.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::lucas::{IdentityVerdict, LucasCache};
use crate::poly::Polynomial;

/// Entries with more terms than this are subject to eviction.
const LARGE_TERMS: usize = 2048;
const DEFAULT_LARGE_CAPACITY: usize = 8;

type Cell = Arc<OnceLock<Result<Arc<Polynomial>>>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Key {
    Binom(usize, usize),
    /// `{2n choose n} / {n+1}`.
    Central(usize),
}

#[derive(Default)]
struct WalkMemo {
    cells: HashMap<Key, Cell>,
    large: VecDeque<Key>,
}

/// Lucanomial engine sharing one [`LucasCache`].
///
/// All methods take `&self`; memo tables are guarded, and a value being
/// computed by one thread is waited for rather than recomputed by another.
pub struct Lucanomials {
    cache: Arc<LucasCache>,
    rows: Mutex<Vec<Vec<Arc<Polynomial>>>>,
    walk: Mutex<WalkMemo>,
    large_capacity: usize,
}

impl Default for Lucanomials {
    fn default() -> Self {
        Self::new(Arc::new(LucasCache::new()))
    }
}

impl Lucanomials {
    pub fn new(cache: Arc<LucasCache>) -> Self {
        Lucanomials {
            cache,
            rows: Mutex::new(Vec::new()),
            walk: Mutex::new(WalkMemo::default()),
            large_capacity: DEFAULT_LARGE_CAPACITY,
        }
    }

    /// Sets how many large walk entries stay memoized. Small entries are
    /// always kept.
    pub fn with_large_capacity(mut self, capacity: usize) -> Self {
        self.large_capacity = capacity.max(2);
        self
    }

    pub fn cache(&self) -> &Arc<LucasCache> {
        &self.cache
    }

    /// `{n}`.
    pub fn lucas(&self, n: usize) -> Arc<Polynomial> {
        self.cache.lucas(n)
    }

    /// `{m}! / ({k}! {m-k}!)` by exact division; zero outside `0 <= k <= m`.
    pub fn binom_factorial(&self, m: usize, k: i64) -> Result<Polynomial> {
        let Some(k) = in_range(m, k) else {
            return Ok(Polynomial::zero());
        };
        let numerator = self.cache.lucastorial(m);
        let denominator = &*self.cache.lucastorial(k) * &*self.cache.lucastorial(m - k);
        numerator
            .exact_div(&denominator)
            .map_err(|_| Error::InternalNonDivisible {
                context: format!("lucastorial quotient for {{{m} choose {k}}}"),
                numerator: numerator.to_string(),
                denominator: denominator.to_string(),
            })
    }

    /// Pascal-style recurrence route; zero outside `0 <= k <= m`.
    ///
    /// Memoizes every row up to `m`, so it is meant for moderate `m`.
    pub fn binom_recurrence(&self, m: usize, k: i64) -> Polynomial {
        let Some(k) = in_range(m, k) else {
            return Polynomial::zero();
        };
        let mut rows = self.rows.lock().unwrap();
        while rows.len() <= m {
            let r = rows.len();
            let row: Vec<Arc<Polynomial>> = (0..=r)
                .map(|j| {
                    if j == 0 || j == r {
                        return Arc::new(Polynomial::one());
                    }
                    let prev = &rows[r - 1];
                    let keep = &*self.cache.lucas(j + 1) * &*prev[j];
                    let step = (&*self.cache.lucas(r - j - 1) * &*prev[j - 1]).shift(0, 1);
                    Arc::new(keep + step)
                })
                .collect();
            rows.push(row);
        }
        (*rows[m][k]).clone()
    }

    /// `{m choose k} = {m choose m-k}` for every `k`.
    pub fn binom_symmetry_check(&self, m: usize) -> Result<IdentityVerdict> {
        for k in 0..=m {
            let a = self.binom(m, k as i64)?;
            let b = self.binom(m, (m - k) as i64)?;
            if a != b {
                return Ok(IdentityVerdict::compare(&a, &b));
            }
        }
        Ok(IdentityVerdict::Holds)
    }

    /// `{m choose k}` through the memoized ratio walk; zero outside
    /// `0 <= k <= m`.
    ///
    /// Each entry derives from one neighbour: a row's central entry
    /// `(m, m/2)` from the previous row's central entry, any other entry
    /// from its neighbour one step closer to the centre of its row. One step
    /// multiplies by `{a}` and divides by `{b}` exactly, after cancelling
    /// `{gcd(a, b)}` from both.
    pub fn binom(&self, m: usize, k: i64) -> Result<Arc<Polynomial>> {
        let Some(k) = in_range(m, k) else {
            return Ok(Arc::new(Polynomial::zero()));
        };
        if k == 0 || k == m {
            return Ok(Arc::new(Polynomial::one()));
        }
        // Walk toward the base until an entry that is memoized or in flight.
        let mut path = vec![(m, k)];
        let mut start: Option<Cell> = None;
        {
            let memo = self.walk.lock().unwrap();
            if let Some(cell) = memo.cells.get(&Key::Binom(m, k)) {
                start = Some(cell.clone());
                path.clear();
            } else {
                let mut at = (m, k);
                loop {
                    let (pm, pk, _, _) = walk_step(at.0, at.1);
                    if pk == 0 || pk == pm {
                        break;
                    }
                    if let Some(cell) = memo.cells.get(&Key::Binom(pm, pk)) {
                        start = Some(cell.clone());
                        break;
                    }
                    path.push((pm, pk));
                    at = (pm, pk);
                }
            }
        }
        let mut current = match start {
            Some(cell) => {
                let target = match path.last() {
                    Some(&(lm, lk)) => {
                        let (pm, pk, _, _) = walk_step(lm, lk);
                        (pm, pk)
                    }
                    None => (m, k),
                };
                cell.get_or_init(|| self.walk_from_scratch(target))
                    .clone()?
            }
            None => Arc::new(Polynomial::one()),
        };
        if path.is_empty() {
            return Ok(current);
        }
        for &(em, ek) in path.iter().rev() {
            let cell = {
                let mut memo = self.walk.lock().unwrap();
                memo.cells.entry(Key::Binom(em, ek)).or_default().clone()
            };
            let mut fresh = false;
            let value = cell
                .get_or_init(|| {
                    fresh = true;
                    self.walk_once(em, ek, &current).map(Arc::new)
                })
                .clone()?;
            if fresh && value.term_count() > LARGE_TERMS {
                self.retain_large(Key::Binom(em, ek));
            }
            current = value;
        }
        Ok(current)
    }

    /// Only reached if a memoized cell was abandoned mid-computation.
    fn walk_from_scratch(&self, target: (usize, usize)) -> Result<Arc<Polynomial>> {
        let mut chain = vec![target];
        while let Some(&(cm, ck)) = chain.last() {
            if ck == 0 || ck == cm {
                break;
            }
            let (nm, nk, _, _) = walk_step(cm, ck);
            chain.push((nm, nk));
        }
        let mut current = Arc::new(Polynomial::one());
        for &(cm, ck) in chain.iter().rev().skip(1) {
            current = Arc::new(self.walk_once(cm, ck, &current)?);
        }
        Ok(current)
    }

    /// `{2n choose n} / {n+1}`, memoized alongside the walk.
    ///
    /// # Panics
    /// If `n` is zero.
    pub fn central_quotient(&self, n: usize) -> Result<Arc<Polynomial>> {
        assert!(n >= 1, "central quotient needs n >= 1");
        let key = Key::Central(n);
        let cell = self
            .walk
            .lock()
            .unwrap()
            .cells
            .entry(key)
            .or_default()
            .clone();
        let mut fresh = false;
        let value = cell
            .get_or_init(|| {
                fresh = true;
                let central = self.binom(2 * n, n as i64)?;
                let divisor = self.lucas(n + 1);
                central
                    .exact_div(&divisor)
                    .map(Arc::new)
                    .map_err(|_| Error::InternalNonDivisible {
                        context: format!("{{{} choose {n}}} / {{{}}}", 2 * n, n + 1),
                        numerator: central.to_string(),
                        denominator: divisor.to_string(),
                    })
            })
            .clone();
        if fresh && value.as_ref().is_ok_and(|v| v.term_count() > LARGE_TERMS) {
            self.retain_large(key);
        }
        value
    }

    fn walk_once(&self, m: usize, k: usize, parent: &Polynomial) -> Result<Polynomial> {
        // The odd centre {2j+1 choose j} = ({2j choose j} / {j+1}) {2j+1}:
        // dividing first shares the quotient with the Catalan division and
        // halves the width of the multiplication's input.
        if m % 2 == 1 && k == m / 2 && k >= 1 {
            if let Ok(q) = self.central_quotient(k) {
                return Ok(&*q * &*self.lucas(m));
            }
        }
        let (_, _, a, b) = walk_step(m, k);
        let g = a.gcd(&b);
        let fail = |numerator: &Polynomial, denominator: &Polynomial| Error::InternalNonDivisible {
            context: format!("ratio step to {{{m} choose {k}}}"),
            numerator: numerator.to_string(),
            denominator: denominator.to_string(),
        };
        let reduce = |x: usize| -> Result<Polynomial> {
            let (lx, lg) = (self.cache.lucas(x), self.cache.lucas(g));
            lx.exact_div(&lg).map_err(|_| fail(&lx, &lg))
        };
        let up = reduce(a)?;
        let down = reduce(b)?;
        let product = parent * &up;
        product.exact_div(&down).map_err(|_| fail(&product, &down))
    }

    fn retain_large(&self, key: Key) {
        let mut memo = self.walk.lock().unwrap();
        memo.large.push_back(key);
        while memo.large.len() > self.large_capacity {
            let old = memo.large.pop_front().unwrap();
            memo.cells.remove(&old);
        }
    }

    /// Number of memoized ratio-walk entries.
    pub fn memo_len(&self) -> usize {
        self.walk.lock().unwrap().cells.len()
    }
}

fn in_range(m: usize, k: i64) -> Option<usize> {
    usize::try_from(k).ok().filter(|&k| k <= m)
}

/// Parent of `(m, k)` and the ratio `{a} / {b}` leading from it to `(m, k)`.
/// Valid for `0 < k < m`.
fn walk_step(m: usize, k: usize) -> (usize, usize, usize, usize) {
    let center = m / 2;
    if k == center {
        if m.is_multiple_of(2) {
            // {m choose k} = {m-1 choose k-1} * {m} / {k}
            (m - 1, k - 1, m, k)
        } else {
            // {m choose k} = {m-1 choose k} * {m} / {m-k}
            (m - 1, k, m, m - k)
        }
    } else if k < center {
        // {m choose k} = {m choose k+1} * {k+1} / {m-k}
        (m, k + 1, k + 1, m - k)
    } else {
        // {m choose k} = {m choose k-1} * {m-k+1} / {k}
        (m, k - 1, m - k + 1, k)
    }
}
