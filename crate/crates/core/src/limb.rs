//! Limb-level representation and the carry-returning primitives.
//!
//! A long integer of `n` limbs is stored most-significant limb first:
//! `value(A) = sum a[i] * rho^(n-1-i)`. Every primitive works on caller-owned
//! slices and returns the carry that the in-place update could not absorb,
//! so that `carry * rho^n + value(new A)` equals the exact result.

use crate::error::{Error, Result};

/// One digit of a long integer. Radices go up to 2^16, so 16 bits suffice.
pub type Limb = u16;

/// Signed carry attached to a limb region.
pub type Carry = i32;

/// The base of the positional system, `2 <= rho <= 2^16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Radix {
    rho: u32,
    // log2(rho) when rho is a power of two, 0 otherwise
    bits: u32,
}

impl Radix {
    pub const MAX: u32 = 1 << 16;

    pub fn new(rho: u32) -> Result<Self> {
        if !(2..=Self::MAX).contains(&rho) {
            return Err(Error::InvalidRadix(rho));
        }
        let bits = if rho.is_power_of_two() { rho.trailing_zeros() } else { 0 };
        Ok(Radix { rho, bits })
    }

    pub fn from_bits(bits: u32) -> Result<Self> {
        if !(1..=16).contains(&bits) {
            return Err(Error::InvalidRadixBits(bits));
        }
        Ok(Radix { rho: 1 << bits, bits })
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.rho
    }

    /// `Some(log2(rho))` for power-of-two radices.
    #[inline]
    pub fn bits(self) -> Option<u32> {
        (self.bits != 0).then_some(self.bits)
    }

    #[inline]
    pub fn max_limb(self) -> Limb {
        (self.rho - 1) as Limb
    }

    /// Splits a non-negative accumulator into `(carry, limb)`.
    #[inline(always)]
    pub(crate) fn split(self, x: u32) -> (u32, Limb) {
        if self.bits != 0 {
            (x >> self.bits, (x & (self.rho - 1)) as Limb)
        } else {
            (x / self.rho, (x % self.rho) as Limb)
        }
    }

    /// Euclidean split of a signed accumulator: `x = carry * rho + limb`.
    #[inline(always)]
    pub(crate) fn split_signed(self, x: i64) -> (i64, Limb) {
        if self.bits != 0 {
            (x >> self.bits, (x & (self.rho as i64 - 1)) as Limb)
        } else {
            let rho = self.rho as i64;
            (x.div_euclid(rho), x.rem_euclid(rho) as Limb)
        }
    }

    /// Checks that every limb is a valid digit.
    pub fn check_limbs(self, limbs: &[Limb]) -> Result<()> {
        match limbs.iter().find(|&&l| l as u32 >= self.rho) {
            Some(&l) => Err(Error::LimbOutOfRange { limb: l as u32, rho: self.rho }),
            None => Ok(()),
        }
    }
}

/// `a += b` over equal-length regions. Returns the carry, 0 or 1.
pub fn mpi_add(rho: Radix, a: &mut [Limb], b: &[Limb]) -> Carry {
    debug_assert_eq!(a.len(), b.len());
    let r = rho.get();
    let mut carry = 0u32;
    for (x, &y) in a.iter_mut().rev().zip(b.iter().rev()) {
        let t = *x as u32 + y as u32 + carry;
        if t >= r {
            *x = (t - r) as Limb;
            carry = 1;
        } else {
            *x = t as Limb;
            carry = 0;
        }
    }
    carry as Carry
}

/// `a -= b` over equal-length regions. Returns the carry, 0 or -1.
pub fn mpi_sub(rho: Radix, a: &mut [Limb], b: &[Limb]) -> Carry {
    debug_assert_eq!(a.len(), b.len());
    let r = rho.get() as i32;
    let mut borrow = 0i32;
    for (x, &y) in a.iter_mut().rev().zip(b.iter().rev()) {
        let t = *x as i32 - y as i32 - borrow;
        if t < 0 {
            *x = (t + r) as Limb;
            borrow = 1;
        } else {
            *x = t as Limb;
            borrow = 0;
        }
    }
    -borrow
}

/// Replaces a nonzero `a` with `rho^n - a` and returns 1; leaves zero alone
/// and returns 0. In both cases `-old = -flag * rho^n + new`.
pub fn mpi_neg(rho: Radix, a: &mut [Limb]) -> Carry {
    let Some(pos) = a.iter().rposition(|&l| l != 0) else {
        return 0;
    };
    let r = rho.get();
    a[pos] = (r - a[pos] as u32) as Limb;
    for x in &mut a[..pos] {
        *x = (r - 1 - *x as u32) as Limb;
    }
    1
}

/// Adds the signed carry `kappa` into `a` and returns the outgoing carry,
/// stopping as soon as the carry is absorbed.
pub fn mpi_add_c(rho: Radix, a: &mut [Limb], kappa: Carry) -> Carry {
    if kappa == 0 {
        return 0;
    }
    let mut carry = kappa as i64;
    for x in a.iter_mut().rev() {
        let (c, l) = rho.split_signed(*x as i64 + carry);
        *x = l;
        carry = c;
        if carry == 0 {
            return 0;
        }
    }
    carry as Carry
}

/// `a += s * b` where `b` is aligned with the least significant end of `a`
/// (`a.len() >= b.len()`). The carry ripples through the rest of `a` and the
/// final overflow is returned; it is below `rho` when `a.len() == b.len()`.
pub fn mpi_addmul_scalar(rho: Radix, a: &mut [Limb], b: &[Limb], s: Limb) -> Carry {
    debug_assert!(a.len() >= b.len());
    debug_assert!((s as u32) < rho.get());
    if s == 0 {
        return 0;
    }
    let split = a.len() - b.len();
    let (hi, lo) = a.split_at_mut(split);
    let s = s as u32;
    let mut carry = 0u32;
    for (x, &y) in lo.iter_mut().rev().zip(b.iter().rev()) {
        let (c, l) = rho.split(*x as u32 + y as u32 * s + carry);
        *x = l;
        carry = c;
    }
    mpi_add_c(rho, hi, carry as Carry)
}

/// Signed multiply-accumulate: `dst += s * X` where `X = sum digit(i) * rho^(len-1-i)`
/// is given as signed digits aligned with the least significant end of `dst`.
/// Returns the signed overflow out of `dst`.
#[inline]
pub(crate) fn addmul_signed_digits(
    rho: Radix,
    dst: &mut [Limb],
    len: usize,
    digit: impl Fn(usize) -> i64,
    s: i64,
) -> Carry {
    debug_assert!(dst.len() >= len);
    if s == 0 {
        return 0;
    }
    let split = dst.len() - len;
    let (hi, lo) = dst.split_at_mut(split);
    let mut carry = 0i64;
    for (i, x) in lo.iter_mut().enumerate().rev() {
        let (c, l) = rho.split_signed(*x as i64 + digit(i) * s + carry);
        *x = l;
        carry = c;
    }
    mpi_add_c(rho, hi, carry as Carry)
}

/// Writes `|x - y|` into `dst` and returns the sign of `x - y`.
pub(crate) fn abs_diff(rho: Radix, dst: &mut [Limb], x: &[Limb], y: &[Limb]) -> i32 {
    debug_assert_eq!(x.len(), y.len());
    let (big, small, sign) = match x.cmp(y) {
        std::cmp::Ordering::Less => (y, x, -1),
        std::cmp::Ordering::Equal => {
            dst.fill(0);
            return 0;
        }
        std::cmp::Ordering::Greater => (x, y, 1),
    };
    dst.copy_from_slice(big);
    let borrow = mpi_sub(rho, dst, small);
    debug_assert_eq!(borrow, 0);
    sign
}
