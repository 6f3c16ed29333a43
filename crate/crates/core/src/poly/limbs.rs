//! Windowed sums of coefficient products: the inner loop of the dense
//! kernels.
//!
//! An output coefficient `sum_j x[i - j] * y[j]` is split into rows
//! `x[i - j] * (digit of y[j])` and the rows are added into one accumulator.
//! The portable path runs a carry chain per row. On x86-64 CPUs with AVX-512
//! IFMA, numbers are held in 52-bit digits instead, eight digit products are
//! accumulated per instruction, and neighbouring outputs are formed together
//! so each loaded digit of `x` feeds several of them.

use std::ops::RangeInclusive;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kernel {
    Portable,
    #[cfg(target_arch = "x86_64")]
    Ifma,
}

/// Sign and little-endian digits in the kernel's radix; zero has no digits.
///
/// The IFMA kernel stores [`ifma::PAD`] zero digits on both sides of the
/// number so tiles can be loaded without bounds checks.
#[derive(Clone, Default)]
pub(crate) struct Digits {
    neg: bool,
    limbs: Vec<u64>,
}

impl Digits {
    fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }
}

impl Kernel {
    /// The fastest kernel this CPU supports.
    pub(crate) fn detect() -> Kernel {
        static KERNEL: OnceLock<Kernel> = OnceLock::new();
        *KERNEL.get_or_init(|| {
            #[cfg(target_arch = "x86_64")]
            if std::arch::is_x86_feature_detected!("avx512f")
                && std::arch::is_x86_feature_detected!("avx512ifma")
            {
                return Kernel::Ifma;
            }
            Kernel::Portable
        })
    }

    /// Every kernel usable here, for cross-checking.
    #[cfg(test)]
    pub(crate) fn available() -> Vec<Kernel> {
        let mut out = vec![Kernel::Portable];
        if Kernel::detect() != Kernel::Portable {
            out.push(Kernel::detect());
        }
        out
    }

    pub(crate) fn digits(self, x: Option<&BigInt>) -> Digits {
        let Some(x) = x.filter(|x| !x.is_zero()) else {
            return Digits::default();
        };
        let neg = x.sign() == Sign::Minus;
        let limbs = match self {
            Kernel::Portable => x.magnitude().to_u64_digits(),
            #[cfg(target_arch = "x86_64")]
            Kernel::Ifma => {
                let digits = to_radix52(x.magnitude());
                let mut padded = vec![0u64; digits.len() + 2 * ifma::PAD];
                padded[ifma::PAD..ifma::PAD + digits.len()].copy_from_slice(&digits);
                padded
            }
        };
        Digits { neg, limbs }
    }

    /// For each `r`, `sum x[i0 + r - j] * y[j]` over `j` in `ranges[r]`.
    pub(crate) fn window_sums(
        self,
        x: &[Digits],
        y: &[Digits],
        i0: usize,
        ranges: &[RangeInclusive<usize>],
    ) -> Vec<BigInt> {
        match self {
            Kernel::Portable => ranges
                .iter()
                .enumerate()
                .map(|(r, js)| portable::signed_sum(js.clone().map(|j| (&x[i0 + r - j], &y[j]))))
                .collect(),
            #[cfg(target_arch = "x86_64")]
            Kernel::Ifma => {
                let mut out = Vec::with_capacity(ranges.len());
                for (g, group) in ranges.chunks(ifma::GROUP).enumerate() {
                    out.extend(ifma::window(x, y, i0 + g * ifma::GROUP, group));
                }
                out
            }
        }
    }
}

fn signed(pos: BigUint, neg: BigUint) -> BigInt {
    if neg.is_zero() {
        BigInt::from_biguint(Sign::Plus, pos)
    } else {
        BigInt::from_biguint(Sign::Plus, pos) - BigInt::from_biguint(Sign::Plus, neg)
    }
}

mod portable {
    use num_bigint::{BigInt, BigUint};
    use num_traits::Zero;

    use super::Digits;

    /// `x * y * 2^(64 off)`.
    struct Row<'a> {
        x: &'a [u64],
        off: usize,
        y: u64,
    }

    pub(super) fn signed_sum<'a>(pairs: impl Iterator<Item = (&'a Digits, &'a Digits)>) -> BigInt {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (a, b) in pairs {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let (x, y) = if a.limbs.len() >= b.limbs.len() {
                (a, b)
            } else {
                (b, a)
            };
            let side = if a.neg == b.neg { &mut pos } else { &mut neg };
            for (off, &y) in y.limbs.iter().enumerate() {
                if y != 0 {
                    side.push(Row {
                        x: &x.limbs,
                        off,
                        y,
                    });
                }
            }
        }
        super::signed(sum(&pos), sum(&neg))
    }

    fn sum(rows: &[Row]) -> BigUint {
        let Some(top) = rows.iter().map(|r| r.off + r.x.len()).max() else {
            return BigUint::zero();
        };
        let mut acc = vec![0u64; top + 2];
        for row in rows {
            let y = u128::from(row.y);
            let mut carry = 0u64;
            for (a, &x) in acc[row.off..].iter_mut().zip(row.x) {
                let p = u128::from(x) * y + u128::from(*a) + u128::from(carry);
                *a = p as u64;
                carry = (p >> 64) as u64;
            }
            let mut k = row.off + row.x.len();
            while carry != 0 {
                let (s, overflow) = acc[k].overflowing_add(carry);
                acc[k] = s;
                carry = u64::from(overflow);
                k += 1;
            }
        }
        from_radix64(&acc)
    }

    pub(super) fn from_radix64(limbs: &[u64]) -> BigUint {
        BigUint::new(
            limbs
                .iter()
                .flat_map(|&l| [l as u32, (l >> 32) as u32])
                .collect(),
        )
    }
}

#[cfg(target_arch = "x86_64")]
const MASK52: u64 = (1 << 52) - 1;

#[cfg(target_arch = "x86_64")]
fn to_radix52(x: &BigUint) -> Vec<u64> {
    let mut out = Vec::with_capacity((x.bits() as usize).div_ceil(52));
    let (mut buf, mut bits) = (0u128, 0u32);
    for limb in x.iter_u64_digits() {
        buf |= u128::from(limb) << bits;
        bits += 64;
        while bits >= 52 {
            out.push(buf as u64 & MASK52);
            buf >>= 52;
            bits -= 52;
        }
    }
    if buf != 0 {
        out.push(buf as u64);
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

#[cfg(target_arch = "x86_64")]
mod ifma {
    use std::arch::x86_64::*;
    use std::ops::RangeInclusive;

    use num_bigint::{BigInt, BigUint};
    use num_traits::Zero;

    use super::{Digits, MASK52};

    const LANES: usize = 8;
    const VECS: usize = 4;
    const TILE: usize = LANES * VECS;
    /// Zero digits stored on each side of a number.
    pub(super) const PAD: usize = TILE;
    /// Outputs formed per pass over the rows.
    pub(super) const GROUP: usize = 3;
    /// Each lane adds at most one 52-bit half-product per row, so this many
    /// rows fit in 64 bits.
    const MAX_ROWS: usize = 4096;

    /// `x * y[r] * 2^(52 off)` for output `r` of a group; `x` holds `len`
    /// digits between its padding.
    struct Row<'a> {
        x: &'a [u64],
        len: usize,
        off: usize,
        y: [u64; GROUP],
    }

    /// [`super::Kernel::window_sums`] for up to [`GROUP`] outputs.
    pub(super) fn window(
        x: &[Digits],
        y: &[Digits],
        i0: usize,
        ranges: &[RangeInclusive<usize>],
    ) -> Vec<BigInt> {
        debug_assert!(ranges.len() <= GROUP);
        let live = ranges.iter().enumerate().filter(|(_, js)| !js.is_empty());
        let Some((p_lo, p_hi)) = live.fold(None, |acc: Option<(usize, usize)>, (r, js)| {
            let (lo, hi) = (i0 + r - js.end(), i0 + r - js.start());
            Some(acc.map_or((lo, hi), |(a, b)| (a.min(lo), b.max(hi))))
        }) else {
            return vec![BigInt::zero(); ranges.len()];
        };

        // Rows whose products are positive, then negative.
        let mut sides = [
            Rows::with_capacity(4 * (p_hi - p_lo + 1)),
            Rows::with_capacity(0),
        ];
        for (p, xp) in x.iter().enumerate().take(p_hi + 1).skip(p_lo) {
            if xp.is_zero() {
                continue;
            }
            let mut ys: [[&[u64]; GROUP]; 2] = [[&[]; GROUP]; 2];
            for (r, js) in ranges.iter().enumerate() {
                let Some(j) = (i0 + r).checked_sub(p).filter(|j| js.contains(j)) else {
                    continue;
                };
                let yj = &y[j];
                if !yj.is_zero() {
                    ys[usize::from(xp.neg != yj.neg)][r] = &yj.limbs[PAD..yj.limbs.len() - PAD];
                }
            }
            for (side, ys) in sides.iter_mut().zip(ys) {
                side.add(&xp.limbs, ys);
            }
        }
        let [pos, neg] = sides.map(|side| side.totals(ranges.len()));
        pos.into_iter()
            .zip(neg)
            .map(|(p, n)| super::signed(p, n))
            .collect()
    }

    struct Rows<'a> {
        rows: Vec<Row<'a>>,
        top: usize,
    }

    impl<'a> Rows<'a> {
        fn with_capacity(n: usize) -> Self {
            Rows {
                rows: Vec::with_capacity(n),
                top: 0,
            }
        }

        /// Rows of padded `x` times the digits of each output's `ys`.
        fn add(&mut self, x: &'a [u64], ys: [&[u64]; GROUP]) {
            let width = ys.iter().map(|d| d.len()).max().unwrap_or(0);
            let len = x.len() - 2 * PAD;
            for off in 0..width {
                let y = ys.map(|d| d.get(off).copied().unwrap_or(0));
                if y != [0; GROUP] {
                    self.rows.push(Row { x, len, off, y });
                    self.top = self.top.max(off + len);
                }
            }
        }

        fn totals(&self, outputs: usize) -> Vec<BigUint> {
            let mut out = vec![BigUint::zero(); outputs];
            for batch in self.rows.chunks(MAX_ROWS) {
                // SAFETY: `Kernel::Ifma`, the only way here, is produced by
                // `detect` after the CPU reported both features.
                let sums = unsafe { sum(batch, self.top) };
                for (o, v) in out.iter_mut().zip(sums) {
                    if o.is_zero() {
                        *o = v;
                    } else {
                        *o += v;
                    }
                }
            }
            out
        }
    }

    /// Each output's sum of rows.
    ///
    /// The outputs are built in tiles of 32 digits whose partial sums stay
    /// in registers while every row overlapping the tile is added in.
    #[target_feature(enable = "avx512f,avx512ifma")]
    unsafe fn sum(rows: &[Row], top: usize) -> [BigUint; GROUP] {
        debug_assert!(rows.len() <= MAX_ROWS);
        let tiles = top.div_ceil(TILE);
        let width = tiles * TILE;
        let mut lo = vec![0u64; GROUP * width];
        let mut hi = vec![0u64; GROUP * width];
        for tile in 0..tiles {
            let ts = tile * TILE;
            let te = ts + TILE;
            let mut acc_lo = [[_mm512_setzero_si512(); VECS]; GROUP];
            let mut acc_hi = [[_mm512_setzero_si512(); VECS]; GROUP];
            for row in rows {
                if row.off >= te || row.off + row.len <= ts {
                    continue;
                }
                let y = row.y.map(|y| _mm512_set1_epi64(y as i64));
                // Digit `ts - off` of the row sits at `PAD + ts - off`; the
                // padding covers every lane that falls outside the number.
                let base = row.x.as_ptr().add(PAD + ts - row.off);
                for v in 0..VECS {
                    let x = _mm512_loadu_si512(base.add(v * LANES).cast());
                    for r in 0..GROUP {
                        acc_lo[r][v] = _mm512_madd52lo_epu64(acc_lo[r][v], x, y[r]);
                        acc_hi[r][v] = _mm512_madd52hi_epu64(acc_hi[r][v], x, y[r]);
                    }
                }
            }
            for r in 0..GROUP {
                for v in 0..VECS {
                    let at = r * width + ts + v * LANES;
                    _mm512_storeu_si512(lo.as_mut_ptr().add(at).cast(), acc_lo[r][v]);
                    _mm512_storeu_si512(hi.as_mut_ptr().add(at).cast(), acc_hi[r][v]);
                }
            }
        }
        std::array::from_fn(|r| {
            let range = r * width..(r + 1) * width;
            resolve(&lo[range.clone()], &hi[range])
        })
    }

    /// `sum lo[k] 2^(52k) + hi[k] 2^(52(k+1))`, carries resolved while
    /// repacking into 32-bit words.
    pub(super) fn resolve(lo: &[u64], hi: &[u64]) -> BigUint {
        let mut words = Vec::with_capacity(lo.len() * 52 / 32 + 6);
        let (mut buf, mut bits) = (0u128, 0u32);
        let mut emit = |digit: u64| {
            buf |= u128::from(digit) << bits;
            bits += 52;
            while bits >= 32 {
                words.push(buf as u32);
                buf >>= 32;
                bits -= 32;
            }
        };
        let mut carry = 0u128;
        for k in 0..lo.len() {
            let below = if k > 0 { u128::from(hi[k - 1]) } else { 0 };
            let d = carry + u128::from(lo[k]) + below;
            emit(d as u64 & MASK52);
            carry = d >> 52;
        }
        let mut d = carry + hi.last().map_or(0, |&h| u128::from(h));
        while d > 0 {
            emit(d as u64 & MASK52);
            d >>= 52;
        }
        words.push(buf as u32);
        BigUint::new(words)
    }
}
