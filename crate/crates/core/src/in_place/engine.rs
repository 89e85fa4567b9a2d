//! The in-place recursion.
//!
//! One routine serves both forms of the equal-length additive problem,
//! `(A0 - A1) * B + C * rho^n` and `A * B + C * rho^n`; the [`Operand`]
//! implementations supply the difference. For even `n = 2k` the `4k`-limb
//! buffer is handled as quarters `D00 D01 D10 D11`, each with a carry, and
//! all three half-size products are formed inside it:
//!
//! ```text
//! step  D00        D01                    D10                  D11
//!  0    C0         C1
//!  1    C0         C1-C0
//!  2    C0         C1-C0                                       |E|
//!  3    C0         C1-C0+P20              P21
//!  4    C0         C1-C0+P20              P21                  C1-C0+P20-P21
//!  5    C0+P00     P01                    P21                  C1-C0+P20-P21
//!  6    C0+P00     P01                    P01+P21              C1-C0+P20-P21
//!  7    C0+P00     C1+P00-P21+P20         P01+P21
//!  8    C0+P00     C1+P00-P21+P20         P01+P21+P10          P11
//!  9    C0+P00     C1+P01+P10+P00+P20     P01+P21+P10          P11
//! 10    C0+P00     C1+P01+P10+P00+P20     P01+P21+P10+P11      P11
//! ```
//!
//! with `P0 = (A0_0 - A1_0) B0`, `P1 = (A0_1 - A1_1) B1` and
//! `P2 = (B1 - B0) E`. When `|E| >= rho^k` the product `(B1 - B0)(E - rho^k)`
//! (or its mirror for negative `E`) is formed at step 3 instead, and an extra
//! step adds `B1 - B0` into `D01`, shifting the later steps by one.

use crate::limb::{addmul_signed_digits, mpi_add, mpi_add_c, mpi_neg, mpi_sub, Carry, Limb, Radix};
use crate::schoolbook::additive_base;

use super::observe::{classify_e, finalize_carries, ECase, QuarterCarries, Snapshot, StepObserver, Table};

/// Largest carry magnitude any quarter may reach.
const CARRY_BOUND: Carry = 8;

pub(crate) struct Ctx<'o, O> {
    pub rho: Radix,
    pub threshold: usize,
    pub observer: &'o mut O,
    pub depth: usize,
}

/// The left factor of an additive product.
pub(crate) trait Operand<'a>: Copy {
    fn len(self) -> usize;

    /// Leading `at` limbs and the rest.
    fn split(self, at: usize) -> (Self, Self);

    /// Signed digit `i`, most significant first.
    fn digit(self, i: usize) -> i64;

    fn parts(self) -> (&'a [Limb], Option<&'a [Limb]>);

    /// Writes `hi - lo` into `dst` and returns its carry.
    fn cross_difference(rho: Radix, dst: &mut [Limb], hi: Self, lo: Self) -> Carry;
}

/// `A`
#[derive(Clone, Copy)]
pub(crate) struct Single<'a>(pub &'a [Limb]);

/// `A0 - A1`
#[derive(Clone, Copy)]
pub(crate) struct Diff<'a>(pub &'a [Limb], pub &'a [Limb]);

impl<'a> Operand<'a> for Single<'a> {
    #[inline]
    fn len(self) -> usize {
        self.0.len()
    }

    #[inline]
    fn split(self, at: usize) -> (Self, Self) {
        let (h, l) = self.0.split_at(at);
        (Single(h), Single(l))
    }

    #[inline(always)]
    fn digit(self, i: usize) -> i64 {
        self.0[i] as i64
    }

    fn parts(self) -> (&'a [Limb], Option<&'a [Limb]>) {
        (self.0, None)
    }

    fn cross_difference(rho: Radix, dst: &mut [Limb], hi: Self, lo: Self) -> Carry {
        dst.copy_from_slice(hi.0);
        mpi_sub(rho, dst, lo.0)
    }
}

impl<'a> Operand<'a> for Diff<'a> {
    #[inline]
    fn len(self) -> usize {
        self.0.len()
    }

    #[inline]
    fn split(self, at: usize) -> (Self, Self) {
        let (h0, l0) = self.0.split_at(at);
        let (h1, l1) = self.1.split_at(at);
        (Diff(h0, h1), Diff(l0, l1))
    }

    #[inline(always)]
    fn digit(self, i: usize) -> i64 {
        self.0[i] as i64 - self.1[i] as i64
    }

    fn parts(self) -> (&'a [Limb], Option<&'a [Limb]>) {
        (self.0, Some(self.1))
    }

    fn cross_difference(rho: Radix, dst: &mut [Limb], hi: Self, lo: Self) -> Carry {
        dst.copy_from_slice(hi.0);
        mpi_sub(rho, dst, hi.1) + mpi_sub(rho, dst, lo.0) + mpi_add(rho, dst, lo.1)
    }
}

/// `carry * rho^2n + d = X * b + c * rho^n` for `X = a` or `a0 - a1`, with
/// `c` preloaded in `d[..n]`. Opens one recursion level.
pub(crate) fn additive_mul<'a, M: Operand<'a>, O: StepObserver>(
    ctx: &mut Ctx<'_, O>,
    d: &mut [Limb],
    a: M,
    b: &'a [Limb],
) -> Carry {
    let n = b.len();
    debug_assert!(n >= 1);
    debug_assert_eq!(a.len(), n);
    debug_assert_eq!(d.len(), 2 * n);

    ctx.depth += 1;
    ctx.observer.enter(ctx.depth, n);
    let carry = dispatch(ctx, d, a, b);
    ctx.depth -= 1;
    debug_assert!(carry.abs() <= CARRY_BOUND);
    carry
}

// An odd length and the even problem it reduces to share a level, so the
// level count is one per halving.
fn dispatch<'a, M: Operand<'a>, O: StepObserver>(ctx: &mut Ctx<'_, O>, d: &mut [Limb], a: M, b: &'a [Limb]) -> Carry {
    let n = b.len();
    if n <= ctx.threshold {
        additive_base(ctx.rho, d, b, |i| a.digit(i))
    } else if n.is_multiple_of(2) {
        even(ctx, d, a, b)
    } else {
        odd(ctx, d, a, b)
    }
}

fn even<'a, M: Operand<'a>, O: StepObserver>(ctx: &mut Ctx<'_, O>, d: &mut [Limb], a: M, b: &'a [Limb]) -> Carry {
    let rho = ctx.rho;
    let k = b.len() / 2;
    let (a_hi, a_lo) = a.split(k);
    let (b0, b1) = b.split_at(k);
    let mut kc = QuarterCarries::default();

    // D11 is free on entry, so E is formed and classified up front; every
    // snapshot then carries its schedule.
    let kappa_e = M::cross_difference(rho, &mut d[3 * k..], a_hi, a_lo);
    let case = classify_e(kappa_e, &d[3 * k..]).expect("cross difference carry corrupted");
    ctx.observer.classified(ctx.depth, case, case == ECase::Case3 && kappa_e == -1);
    let table = case.table();
    let mut step = 0u8;
    let mut snap = |ctx: &mut Ctx<'_, O>, d: &[Limb], kc: QuarterCarries| {
        debug_assert!(kc.max_abs() <= CARRY_BOUND);
        if O::ACTIVE {
            let (a0, a1) = a.parts();
            let snapshot = Snapshot {
                table,
                step,
                depth: ctx.depth,
                radix: rho,
                quarters: [&d[..k], &d[k..2 * k], &d[2 * k..3 * k], &d[3 * k..]],
                carries: kc,
                a0,
                a1,
                b,
            };
            ctx.observer.step(&snapshot);
        }
        step += 1;
    };
    snap(ctx, d, kc);

    // D01 -= D00
    {
        let (d00, rest) = d.split_at_mut(k);
        kc.k01 = mpi_sub(rho, &mut rest[..k], d00);
    }
    snap(ctx, d, kc);

    // D11 := |E|, or |E| - rho^k outside case 1. For E = kappa*rho^k + L with
    // kappa in {-1, -2}, both are the in-place negation of L.
    if matches!(case, ECase::Case1Negative | ECase::Case3) {
        mpi_neg(rho, &mut d[3 * k..]);
    }
    snap(ctx, d, kc);

    // P2 = (x0 - x1) * D11 with x0 - x1 = +-(B1 - B0) matching the sign of E
    let (x0, x1) = match case {
        ECase::Case1NonNegative | ECase::Case2 => (b1, b0),
        ECase::Case1Negative | ECase::Case3 => (b0, b1),
    };
    {
        let (left, e) = d.split_at_mut(3 * k);
        kc.k01 += additive_mul(ctx, &mut left[k..], Diff(x0, x1), e);
    }
    snap(ctx, d, kc);

    if table != Table::Case1 {
        // P20 = Q20 + (x0 - x1)
        let d01 = &mut d[k..2 * k];
        kc.k01 += mpi_add(rho, d01, x0) + mpi_sub(rho, d01, x1);
        snap(ctx, d, kc);
    }

    // D11 := D01 - D10
    {
        let (left, d11) = d.split_at_mut(3 * k);
        d11.copy_from_slice(&left[k..2 * k]);
        kc.k11 = kc.k01 - kc.k10 + mpi_sub(rho, d11, &left[2 * k..]);
    }
    snap(ctx, d, kc);

    // D00:D01 := P0 + D00 * rho^k, D01 content is saved in D11
    kc.k01 = 0;
    kc.k00 += additive_mul(ctx, &mut d[..2 * k], a_hi, b0);
    snap(ctx, d, kc);

    // D10 += D01
    {
        let (left, right) = d.split_at_mut(2 * k);
        kc.k10 += kc.k01 + mpi_add(rho, &mut right[..k], &left[k..]);
    }
    snap(ctx, d, kc);

    // D01 := D11 + D00
    {
        let (left, d11) = d.split_at_mut(3 * k);
        let (d00, rest) = left.split_at_mut(k);
        let d01 = &mut rest[..k];
        d01.copy_from_slice(d11);
        kc.k01 = kc.k11 + kc.k00 + mpi_add(rho, d01, d00);
        kc.k11 = 0;
    }
    snap(ctx, d, kc);

    // D10:D11 := P1 + D10 * rho^k
    kc.k10 += additive_mul(ctx, &mut d[2 * k..], a_lo, b1);
    snap(ctx, d, kc);

    // D01 += D10
    {
        let (left, right) = d.split_at_mut(2 * k);
        kc.k01 += kc.k10 + mpi_add(rho, &mut left[k..], &right[..k]);
    }
    snap(ctx, d, kc);

    // D10 += D11
    {
        let (left, d11) = d.split_at_mut(3 * k);
        kc.k10 += kc.k11 + mpi_add(rho, &mut left[2 * k..], d11);
    }
    snap(ctx, d, kc);

    let before = kc;
    let carry = finalize_carries(rho, &mut kc, d);
    ctx.observer.finalized(ctx.depth, before, kc);
    carry
}

/// `n = 2k + 1`: with `A0 - A1 = rho * (Ab0 - Ab1) + (a0 - a1)`,
/// `B = rho^2k * b + Bb` and `C = rho^2k * c + Cb`,
///
/// ```text
/// (A0 - A1) B + C rho^n = rho [(Ab0 - Ab1) Bb + rho^2k Cb] + rho^(4k+1) c
///                       + rho^2k (A0 - A1) b + (a0 - a1) Bb
/// ```
///
/// The bracket is the even problem on `d[1..4k+1]`, whose upper half already
/// holds `Cb`; `c` sits in `d[0]`. The last two terms are accumulated into
/// `d[..2k+2]` and `d[2k+2..]` respectively.
fn odd<'a, M: Operand<'a>, O: StepObserver>(ctx: &mut Ctx<'_, O>, d: &mut [Limb], a: M, b: &'a [Limb]) -> Carry {
    let rho = ctx.rho;
    let n = b.len();
    let k = n / 2;
    let (a_bar, a_last) = a.split(2 * k);
    let (b_top, b_bar) = (b[0], &b[1..]);

    d[4 * k + 1] = 0;
    let sub = dispatch(ctx, &mut d[1..4 * k + 1], a_bar, b_bar);
    let mut carry = mpi_add_c(rho, &mut d[..1], sub);

    let low = addmul_signed_digits(rho, &mut d[2 * k + 2..], 2 * k, |i| b_bar[i] as i64, a_last.digit(0));
    let high = &mut d[..2 * k + 2];
    carry += addmul_signed_digits(rho, high, n, |i| a.digit(i), b_top as i64);
    carry += mpi_add_c(rho, high, low);
    carry
}
