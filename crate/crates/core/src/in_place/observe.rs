//! Case classification, carry bookkeeping and the step-observer hook.

use crate::error::{Error, Result};
use crate::limb::{mpi_add_c, Carry, Limb, Radix};

/// Range class of the cross difference `E = A0_0 - A1_0 - A0_1 + A1_1`,
/// which always lies in `[-2(rho^k - 1), 2(rho^k - 1)]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ECase {
    /// `0 <= E <= rho^k - 1`
    Case1NonNegative,
    /// `-(rho^k - 1) <= E < 0`
    Case1Negative,
    /// `rho^k <= E <= 2(rho^k - 1)`
    Case2,
    /// `-2(rho^k - 1) <= E <= -rho^k`
    Case3,
}

impl ECase {
    pub const ALL: [ECase; 4] = [ECase::Case1NonNegative, ECase::Case1Negative, ECase::Case2, ECase::Case3];

    /// The step schedule this case runs.
    pub fn table(self) -> Table {
        match self {
            ECase::Case1NonNegative | ECase::Case1Negative => Table::Case1,
            ECase::Case2 => Table::Case2,
            ECase::Case3 => Table::Case3,
        }
    }
}

/// Classifies `E = kappa_e * rho^k + value(e_limbs)` from its carry and limbs.
///
/// Carry 0 is case 1 (non-negative), carry 1 is case 2, carry -2 is case 3.
/// Carry -1 is case 1 (negative) unless every limb is zero, which is exactly
/// `E = -rho^k` and belongs to case 3.
pub fn classify_e(kappa_e: Carry, e_limbs: &[Limb]) -> Result<ECase> {
    match kappa_e {
        0 => Ok(ECase::Case1NonNegative),
        1 => Ok(ECase::Case2),
        -1 if e_limbs.iter().all(|&l| l == 0) => Ok(ECase::Case3),
        -1 => Ok(ECase::Case1Negative),
        -2 => Ok(ECase::Case3),
        other => Err(Error::CarryOutOfRange(other)),
    }
}

/// Step schedules. `Case3` runs the `Case2` schedule with the signs of `E`
/// and `B1 - B0` flipped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Table {
    Case1,
    Case2,
    Case3,
}

impl Table {
    /// Index of the last step (10 for case 1, 11 for the others).
    pub fn last_step(self) -> u8 {
        match self {
            Table::Case1 => 10,
            Table::Case2 | Table::Case3 => 11,
        }
    }
}

/// Carries attached to the four `k`-limb quarters `D00 D01 D10 D11` of a
/// `4k`-limb working region, most significant first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct QuarterCarries {
    pub k00: Carry,
    pub k01: Carry,
    pub k10: Carry,
    pub k11: Carry,
}

impl QuarterCarries {
    pub fn as_array(self) -> [Carry; 4] {
        [self.k00, self.k01, self.k10, self.k11]
    }

    pub(crate) fn max_abs(self) -> Carry {
        self.as_array().iter().map(|c| c.abs()).max().unwrap_or(0)
    }
}

/// Drives `k10` and then `k01` into the quarters above them, so that the
/// buffer plus `k00` alone represents the value. Returns `k00`.
///
/// # Panics
///
/// If `k11` is nonzero on entry; the step schedules always clear it.
pub fn finalize_carries(rho: Radix, carries: &mut QuarterCarries, d: &mut [Limb]) -> Carry {
    assert_eq!(carries.k11, 0, "k11 must be cleared by the step schedule");
    assert_eq!(d.len() % 4, 0);
    let k = d.len() / 4;
    carries.k01 += mpi_add_c(rho, &mut d[k..2 * k], carries.k10);
    carries.k10 = 0;
    carries.k00 += mpi_add_c(rho, &mut d[..k], carries.k01);
    carries.k01 = 0;
    carries.k00
}

/// State of one even-length frame after a numbered step.
#[derive(Clone, Copy, Debug)]
pub struct Snapshot<'a> {
    pub table: Table,
    pub step: u8,
    pub depth: usize,
    pub radix: Radix,
    /// `D00, D01, D10, D11`.
    pub quarters: [&'a [Limb]; 4],
    pub carries: QuarterCarries,
    /// Operands of the frame: `(A0 - A1) * B`, with `a1 == None` for the
    /// single-operand form `A * B`.
    pub a0: &'a [Limb],
    pub a1: Option<&'a [Limb]>,
    pub b: &'a [Limb],
}

/// Debug hook into the in-place recursion. All methods default to no-ops.
pub trait StepObserver {
    /// `false` skips snapshot construction entirely.
    const ACTIVE: bool = true;

    /// A recursion level of length `len` was entered (base cases included).
    /// An odd length and the even problem it reduces to count as one level.
    fn enter(&mut self, _depth: usize, _len: usize) {}

    /// An even frame classified its cross difference.
    fn classified(&mut self, _depth: usize, _case: ECase, _minus_rho_k: bool) {}

    fn step(&mut self, _snapshot: &Snapshot<'_>) {}

    /// Carries just before and after the final carry pass of an even frame.
    fn finalized(&mut self, _depth: usize, _before: QuarterCarries, _after: QuarterCarries) {}
}

#[derive(Clone, Copy, Debug, Default)]
pub struct NoObserver;

impl StepObserver for NoObserver {
    const ACTIVE: bool = false;
}

/// Counts case hits and tracks the deepest frame.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CaseCounter {
    pub case1_non_negative: u64,
    pub case1_negative: u64,
    pub case2: u64,
    pub case3: u64,
    /// Case 3 hits with `E = -rho^k` exactly.
    pub minus_rho_k: u64,
    pub frames: u64,
    pub max_depth: usize,
}

impl CaseCounter {
    pub fn count(&self, case: ECase) -> u64 {
        match case {
            ECase::Case1NonNegative => self.case1_non_negative,
            ECase::Case1Negative => self.case1_negative,
            ECase::Case2 => self.case2,
            ECase::Case3 => self.case3,
        }
    }

    /// Every case, and the `E = -rho^k` point, was hit at least once.
    pub fn all_hit(&self) -> bool {
        ECase::ALL.iter().all(|&c| self.count(c) > 0) && self.minus_rho_k > 0
    }

    pub fn merge(&mut self, other: &CaseCounter) {
        self.case1_non_negative += other.case1_non_negative;
        self.case1_negative += other.case1_negative;
        self.case2 += other.case2;
        self.case3 += other.case3;
        self.minus_rho_k += other.minus_rho_k;
        self.frames += other.frames;
        self.max_depth = self.max_depth.max(other.max_depth);
    }
}

impl StepObserver for CaseCounter {
    const ACTIVE: bool = false;

    fn enter(&mut self, depth: usize, _len: usize) {
        self.frames += 1;
        self.max_depth = self.max_depth.max(depth);
    }

    fn classified(&mut self, _depth: usize, case: ECase, minus_rho_k: bool) {
        match case {
            ECase::Case1NonNegative => self.case1_non_negative += 1,
            ECase::Case1Negative => self.case1_negative += 1,
            ECase::Case2 => self.case2 += 1,
            ECase::Case3 => self.case3 += 1,
        }
        if minus_rho_k {
            self.minus_rho_k += 1;
        }
    }
}
