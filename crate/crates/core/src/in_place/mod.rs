//! Space-efficient Karatsuba for long integers.
//!
//! All intermediate products live inside the output buffer; the only extra
//! state is a handful of carry variables per recursion frame, so a full
//! multiplication needs O(log n) auxiliary space and no heap allocation.

mod engine;
mod observe;

pub use observe::{
    classify_e, finalize_carries, CaseCounter, ECase, NoObserver, QuarterCarries, Snapshot, StepObserver, Table,
};

use crate::driver::{general_mul, EqualLengthKernel};
use crate::limb::{Carry, Limb, Radix};
use engine::{additive_mul, Ctx, Diff, Single};

/// Karatsuba threshold used unless configured otherwise.
pub const DEFAULT_THRESHOLD: usize = 128;

fn check_additive(d: &[Limb], n: usize, threshold: usize) {
    assert!(threshold >= 1, "karatsuba threshold must be at least 1");
    assert!(n >= 1, "additive multiplication needs n >= 1");
    assert_eq!(d.len(), 2 * n, "additive buffer must hold 2n limbs");
}

/// `carry * rho^2n + d = (a0 - a1) * b + c * rho^n`, where `c` is preloaded
/// in the first `n` limbs of `d`.
pub fn kr_mul(rho: Radix, d: &mut [Limb], a0: &[Limb], a1: &[Limb], b: &[Limb], threshold: usize) -> Carry {
    kr_mul_observed(rho, d, a0, a1, b, threshold, &mut NoObserver)
}

pub fn kr_mul_observed<O: StepObserver>(
    rho: Radix,
    d: &mut [Limb],
    a0: &[Limb],
    a1: &[Limb],
    b: &[Limb],
    threshold: usize,
    observer: &mut O,
) -> Carry {
    check_additive(d, b.len(), threshold);
    assert!(a0.len() == b.len() && a1.len() == b.len(), "operands must have equal length");
    let mut ctx = Ctx { rho, threshold, observer, depth: 0 };
    additive_mul(&mut ctx, d, Diff(a0, a1), b)
}

/// `carry * rho^2n + d = a * b + c * rho^n`, where `c` is preloaded in the
/// first `n` limbs of `d`. The carry is 0 or 1.
///
/// With a single operand the cross difference is `A_0 - A_1`, which always
/// falls in case 1; only the middle product needs the two-operand form.
pub fn kr_mul_top(rho: Radix, d: &mut [Limb], a: &[Limb], b: &[Limb], threshold: usize) -> Carry {
    kr_mul_top_observed(rho, d, a, b, threshold, &mut NoObserver)
}

pub fn kr_mul_top_observed<O: StepObserver>(
    rho: Radix,
    d: &mut [Limb],
    a: &[Limb],
    b: &[Limb],
    threshold: usize,
    observer: &mut O,
) -> Carry {
    check_additive(d, b.len(), threshold);
    assert_eq!(a.len(), b.len(), "operands must have equal length");
    let mut ctx = Ctx { rho, threshold, observer, depth: 0 };
    additive_mul(&mut ctx, d, Single(a), b)
}

struct KrKernel<'o, O> {
    rho: Radix,
    threshold: usize,
    observer: &'o mut O,
}

impl<O: StepObserver> EqualLengthKernel for KrKernel<'_, O> {
    fn radix(&self) -> Radix {
        self.rho
    }

    fn threshold(&self) -> usize {
        self.threshold
    }

    fn mul_add(&mut self, d: &mut [Limb], a: &[Limb], b: &[Limb], level: usize) -> Carry {
        let mut ctx = Ctx { rho: self.rho, threshold: self.threshold, observer: &mut *self.observer, depth: level };
        additive_mul(&mut ctx, d, Single(a), b)
    }
}

/// `d = a * b` for `a.len() >= b.len() >= 1`, `d.len() == a.len() + b.len()`.
pub fn kr_mpi_mul(rho: Radix, d: &mut [Limb], a: &[Limb], b: &[Limb], threshold: usize) {
    assert!(a.len() >= b.len() && !b.is_empty(), "kr_mpi_mul needs n >= m >= 1");
    kr_mpi_mul_observed(rho, d, a, b, threshold, &mut NoObserver)
}

fn kr_mpi_mul_observed<O: StepObserver>(
    rho: Radix,
    d: &mut [Limb],
    a: &[Limb],
    b: &[Limb],
    threshold: usize,
    observer: &mut O,
) {
    assert!(threshold >= 1, "karatsuba threshold must be at least 1");
    assert_eq!(d.len(), a.len() + b.len(), "product buffer must hold n + m limbs");
    let mut kernel = KrKernel { rho, threshold, observer };
    general_mul(&mut kernel, d, a, b, 0);
}

/// `d = a * b` for any lengths, with `d.len() == a.len() + b.len()`.
/// Performs no heap allocation.
pub fn mpi_mul_kr(rho: Radix, d: &mut [Limb], a: &[Limb], b: &[Limb], threshold: usize) {
    mpi_mul_kr_observed(rho, d, a, b, threshold, &mut NoObserver)
}

pub fn mpi_mul_kr_observed<O: StepObserver>(
    rho: Radix,
    d: &mut [Limb],
    a: &[Limb],
    b: &[Limb],
    threshold: usize,
    observer: &mut O,
) {
    assert_eq!(d.len(), a.len() + b.len(), "product buffer must hold n + m limbs");
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.is_empty() {
        d.fill(0);
        return;
    }
    kr_mpi_mul_observed(rho, d, a, b, threshold, observer)
}
