//! Quadratic multiplication: the plain product and the two in-place
//! "additive" base cases used below the Karatsuba threshold.

use crate::limb::{mpi_addmul_scalar, Carry, Limb, Radix};

/// `d = a * b` with `d.len() == a.len() + b.len()`.
pub fn sb_mul(rho: Radix, d: &mut [Limb], a: &[Limb], b: &[Limb]) {
    let (n, m) = (a.len(), b.len());
    assert_eq!(d.len(), n + m, "product buffer must hold n + m limbs");
    d.fill(0);
    // a[i] * b[j] lands at d[i + j + 1]; row j spans d[j + 1..j + 1 + n] and
    // its carry-out is the still-untouched d[j].
    for j in (0..m).rev() {
        let c = mpi_addmul_scalar(rho, &mut d[j + 1..j + 1 + n], a, b[j]);
        d[j] = c as Limb;
    }
}

/// `carry * rho^2n + d = a * b + c * rho^n`, where `c` is preloaded in the
/// first `n` limbs of `d`. The carry is 0 or 1.
pub fn kr_mul_b1(rho: Radix, d: &mut [Limb], a: &[Limb], b: &[Limb]) -> Carry {
    debug_assert_eq!(a.len(), b.len());
    additive_base(rho, d, b, |i| a[i] as i64)
}

/// `carry * rho^2n + d = (a0 - a1) * b + c * rho^n`, where `c` is preloaded
/// in the first `n` limbs of `d`. The difference is never materialized: each
/// row multiplies by the signed digit `a0[i] - a1[i]`.
pub fn kr_mul_b2(rho: Radix, d: &mut [Limb], a0: &[Limb], a1: &[Limb], b: &[Limb]) -> Carry {
    debug_assert_eq!(a0.len(), b.len());
    debug_assert_eq!(a1.len(), b.len());
    additive_base(rho, d, b, |i| a0[i] as i64 - a1[i] as i64)
}

/// Shared row loop: `d += X * b` on top of the preloaded upper half, where
/// `X` is given by signed digits, using O(1) extra state.
#[inline]
pub(crate) fn additive_base(rho: Radix, d: &mut [Limb], b: &[Limb], digit: impl Fn(usize) -> i64) -> Carry {
    let n = b.len();
    assert_eq!(d.len(), 2 * n, "additive buffer must hold 2n limbs");
    d[n..].fill(0);
    // Row i adds digit(i) * b into d[i + 1..i + 1 + n]. Its carry-out belongs
    // at d[i], which already holds preloaded or earlier data, so it is folded
    // in immediately and whatever spills over moves on to position i - 1.
    let mut spill = 0i64;
    for i in (0..n).rev() {
        let x = digit(i);
        let mut carry = 0i64;
        if x != 0 {
            for (x_j, &b_j) in d[i + 1..i + 1 + n].iter_mut().rev().zip(b.iter().rev()) {
                let (c, l) = rho.split_signed(*x_j as i64 + x * b_j as i64 + carry);
                *x_j = l;
                carry = c;
            }
        }
        let (c, l) = rho.split_signed(d[i] as i64 + carry + spill);
        d[i] = l;
        spill = c;
    }
    spill as Carry
}
