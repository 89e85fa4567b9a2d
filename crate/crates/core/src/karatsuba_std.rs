//! Standard subtractive Karatsuba with an explicit scratch arena.
//!
//! With `A = A0 rho^k + A1` and `B = B0 rho^k + B1`,
//! `A B = A0 B0 rho^2k + (A0 B0 + A1 B1 - (A0 - A1)(B0 - B1)) rho^k + A1 B1`.
//! The two outer products are written straight into the output; the middle
//! product needs `2k` limbs of scratch per recursive call. Odd lengths peel
//! one limb, unequal lengths go through the shared general-length driver.

use crate::driver::{general_mul, EqualLengthKernel};
use crate::limb::{abs_diff, mpi_add, mpi_add_c, mpi_addmul_scalar, mpi_neg, Carry, Limb, Radix};
use crate::schoolbook::{kr_mul_b1, sb_mul};

/// Scratch limbs plus usage accounting.
#[derive(Debug, Clone, Default)]
pub struct ScratchArena {
    buf: Vec<Limb>,
    stats: ScratchStats,
}

#[derive(Debug, Clone, Default)]
struct ScratchStats {
    high_water: usize,
    // (length of the recursive call, limbs it claimed)
    log: Option<Vec<(usize, usize)>>,
}

impl ScratchStats {
    #[inline]
    fn claim(&mut self, len: usize, claimed: usize, in_use: usize) {
        self.high_water = self.high_water.max(in_use);
        if let Some(log) = self.log.as_mut() {
            log.push((len, claimed));
        }
    }
}

impl ScratchArena {
    pub fn with_capacity(limbs: usize) -> Self {
        ScratchArena { buf: vec![0; limbs], stats: ScratchStats::default() }
    }

    /// Scratch needed to multiply operands of these lengths.
    pub fn required(n: usize, m: usize) -> usize {
        2 * n.max(m)
    }

    pub fn for_operands(n: usize, m: usize) -> Self {
        Self::with_capacity(Self::required(n, m))
    }

    pub fn capacity(&self) -> usize {
        self.buf.len()
    }

    /// Most limbs simultaneously in use since the last reset.
    pub fn high_water(&self) -> usize {
        self.stats.high_water
    }

    /// Starts recording `(call length, limbs claimed)` for every recursive call.
    pub fn record_calls(&mut self) {
        self.stats.log = Some(Vec::new());
    }

    pub fn call_log(&self) -> &[(usize, usize)] {
        self.stats.log.as_deref().unwrap_or(&[])
    }

    pub fn reset_stats(&mut self) {
        self.stats.high_water = 0;
        if let Some(log) = self.stats.log.as_mut() {
            log.clear();
        }
    }
}

/// `d = a * b` for any lengths, `d.len() == a.len() + b.len()`.
///
/// # Panics
///
/// If the arena holds fewer than [`ScratchArena::required`] limbs.
pub fn ks_mul(rho: Radix, d: &mut [Limb], a: &[Limb], b: &[Limb], threshold: usize, arena: &mut ScratchArena) {
    assert!(threshold >= 1, "karatsuba threshold must be at least 1");
    assert_eq!(d.len(), a.len() + b.len(), "product buffer must hold n + m limbs");
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.is_empty() {
        d.fill(0);
        return;
    }
    let need = ScratchArena::required(a.len(), b.len());
    assert!(arena.capacity() >= need, "scratch arena holds {} limbs, {} needed", arena.capacity(), need);
    let ScratchArena { buf, stats } = arena;
    let mut kernel = KsKernel { rho, threshold, scratch: &mut buf[..], stats };
    general_mul(&mut kernel, d, a, b, 0);
}

struct KsKernel<'s> {
    rho: Radix,
    threshold: usize,
    scratch: &'s mut [Limb],
    stats: &'s mut ScratchStats,
}

impl EqualLengthKernel for KsKernel<'_> {
    fn radix(&self) -> Radix {
        self.rho
    }

    fn threshold(&self) -> usize {
        self.threshold
    }

    fn mul_add(&mut self, d: &mut [Limb], a: &[Limb], b: &[Limb], _level: usize) -> Carry {
        let mut frame = Frame { rho: self.rho, threshold: self.threshold, stats: self.stats };
        frame.mul(d, a, b, self.scratch, 0, true)
    }
}

struct Frame<'s> {
    rho: Radix,
    threshold: usize,
    stats: &'s mut ScratchStats,
}

impl Frame<'_> {
    /// `carry * rho^2n + d = a * b (+ c * rho^n if additive)`, where `c` is
    /// preloaded in `d[..n]`. `used` is the scratch already claimed by callers.
    fn mul(
        &mut self,
        d: &mut [Limb],
        a: &[Limb],
        b: &[Limb],
        scratch: &mut [Limb],
        used: usize,
        additive: bool,
    ) -> Carry {
        let rho = self.rho;
        let n = a.len();
        debug_assert_eq!(b.len(), n);
        debug_assert_eq!(d.len(), 2 * n);
        if n <= self.threshold {
            if additive {
                return kr_mul_b1(rho, d, a, b);
            }
            sb_mul(rho, d, a, b);
            return 0;
        }
        let k = n / 2;
        if n % 2 == 1 {
            // A = Ab rho + a', B = b' rho^2k + Bb:
            // A B = rho (Ab Bb) + rho^2k b' A + a' Bb
            if !additive {
                d[0] = 0;
            }
            d[4 * k + 1] = 0;
            let sub = self.mul(&mut d[1..4 * k + 1], &a[..2 * k], &b[1..], scratch, used, additive);
            let mut carry = mpi_add_c(rho, &mut d[..1], sub);
            let low = mpi_addmul_scalar(rho, &mut d[2 * k + 2..], &b[1..], a[2 * k]);
            let high = &mut d[..2 * k + 2];
            carry += mpi_addmul_scalar(rho, high, a, b[0]);
            carry += mpi_add_c(rho, high, low);
            return carry;
        }

        let (t, rest) = scratch.split_at_mut(2 * k);
        let used = used + 2 * k;
        self.stats.claim(n, 2 * k, used);

        if additive {
            // park C in the lower half, which stays free until A1 B1
            d.copy_within(..2 * k, 2 * k);
        }
        let (a0, a1) = a.split_at(k);
        let (b0, b1) = b.split_at(k);
        let sign = abs_diff(rho, &mut d[..k], a0, a1) * abs_diff(rho, &mut d[k..2 * k], b0, b1);
        {
            let (da, db) = d[..2 * k].split_at(k);
            self.mul(t, da, db, rest, used, false);
        }
        self.mul(&mut d[..2 * k], a0, b0, rest, used, false);

        // t := A0 B0 -+ |A0 - A1| |B0 - B1|, carry in `mid`
        let mut mid = if sign > 0 { -mpi_neg(rho, t) } else { 0 };
        mid += mpi_add(rho, t, &d[..2 * k]);
        let mut top = 0;
        if additive {
            let (hi, lo) = d.split_at_mut(2 * k);
            top = mpi_add(rho, hi, lo);
        }
        self.mul(&mut d[2 * k..], a1, b1, rest, used, false);
        mid += mpi_add(rho, t, &d[2 * k..]);
        debug_assert!((0..=1).contains(&mid));

        mid += mpi_add(rho, &mut d[k..3 * k], t);
        top + mpi_add_c(rho, &mut d[..k], mid)
    }
}
