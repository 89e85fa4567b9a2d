//! General-length multiplication on top of an equal-length additive kernel.
//!
//! With `n >= m` and `n = q*m + r`, `A` splits into a short leading piece
//! `A_0` of `r` limbs followed by `q` pieces of `m` limbs. `A_0 * B` is formed
//! first in the leading `m + r` limbs of the product (by recursing with the
//! roles swapped), then each `m`-limb piece is folded in with one call of
//! `A_i * B + C * rho^m`, where `C` is the low half already in the buffer.

use crate::limb::{mpi_add_c, Carry, Limb, Radix};
use crate::schoolbook::sb_mul;

pub(crate) trait EqualLengthKernel {
    fn radix(&self) -> Radix;

    fn threshold(&self) -> usize;

    /// `carry * rho^2m + d = a * b + c * rho^m` with `c` preloaded in the
    /// first `m` limbs of `d`. `level` is the driver recursion depth.
    fn mul_add(&mut self, d: &mut [Limb], a: &[Limb], b: &[Limb], level: usize) -> Carry;
}

/// `d = a * b` for `a.len() >= b.len() >= 1`.
pub(crate) fn general_mul<K: EqualLengthKernel>(kernel: &mut K, d: &mut [Limb], a: &[Limb], b: &[Limb], level: usize) {
    let (n, m) = (a.len(), b.len());
    debug_assert!(n >= m && m >= 1);
    debug_assert_eq!(d.len(), n + m);
    if m <= kernel.threshold() {
        sb_mul(kernel.radix(), d, a, b);
        return;
    }
    let (q, r) = (n / m, n % m);
    if r == 0 {
        d[..m].fill(0);
    } else {
        general_mul(kernel, &mut d[..m + r], b, &a[..r], level + 1);
    }
    // Piece i of A starts at limb p = r + i*m, and its partial product
    // occupies d[p..p + 2m], so input and output offsets coincide.
    for i in 0..q {
        let p = r + i * m;
        let c = kernel.mul_add(&mut d[p..p + 2 * m], &a[p..p + m], b, level);
        if c != 0 {
            let out = mpi_add_c(kernel.radix(), &mut d[..p], c);
            debug_assert_eq!(out, 0, "partial product overflowed the buffer");
        }
    }
}
