// Checks every snapshot of an even frame against the symbolic step tables,
// evaluated independently with big integers.

use kmul::in_place::{QuarterCarries, Snapshot, StepObserver, Table};
use kmul::Limb;
use num_bigint::BigInt;
use num_integer::Integer;

fn big(rho: u32, limbs: &[Limb]) -> BigInt {
    limbs.iter().fold(BigInt::from(0), |acc, &l| acc * rho + l)
}

struct Frame {
    table: Table,
    next_step: u8,
    rk: BigInt,
    c0: BigInt,
    c1: BigInt,
    p0: BigInt,
    p1: BigInt,
    p2: BigInt,
    // what step 2 leaves in D11, and the product formed from it at step 3
    d11: BigInt,
    q2: BigInt,
}

impl Frame {
    fn new(s: &Snapshot<'_>) -> Frame {
        let rho = s.radix.get();
        let k = s.b.len() / 2;
        let rk = BigInt::from(rho).pow(k as u32);
        let a1_part = |r: std::ops::Range<usize>| s.a1.map_or(BigInt::from(0), |a1| big(rho, &a1[r]));
        let x_hi = big(rho, &s.a0[..k]) - a1_part(0..k);
        let x_lo = big(rho, &s.a0[k..]) - a1_part(k..2 * k);
        let (b0, b1) = (big(rho, &s.b[..k]), big(rho, &s.b[k..]));
        let e = &x_hi - &x_lo;
        let p2 = (&b1 - &b0) * &e;
        let (d11, q2) = match s.table {
            Table::Case1 => (e.magnitude().clone().into(), p2.clone()),
            Table::Case2 => (&e - &rk, (&b1 - &b0) * (&e - &rk)),
            Table::Case3 => (-&e - &rk, (&b0 - &b1) * (-&e - &rk)),
        };
        Frame {
            table: s.table,
            next_step: 0,
            c0: big(rho, s.quarters[0]),
            c1: big(rho, s.quarters[1]),
            p0: x_hi * b0,
            p1: x_lo * b1,
            p2,
            d11,
            q2,
            rk,
        }
    }

    fn hi(&self, x: &BigInt) -> BigInt {
        x.div_floor(&self.rk)
    }

    fn lo(&self, x: &BigInt) -> BigInt {
        x.mod_floor(&self.rk)
    }

    /// Non-blank entries of the row after `step`, as `D00 D01 D10 D11`.
    fn row(&self, step: u8) -> [Option<BigInt>; 4] {
        let (c0, c1) = (&self.c0, &self.c1);
        let (p00, p01) = (self.hi(&self.p0), self.lo(&self.p0));
        let (p10, p11) = (self.hi(&self.p1), self.lo(&self.p1));
        let (p20, p21) = (self.hi(&self.p2), self.lo(&self.p2));
        let extra = self.table != Table::Case1;
        // later steps of the longer tables are shifted by one
        let s = if extra && step >= 4 { step - 1 } else { step };
        match (step, s) {
            (0, _) => [Some(c0.clone()), Some(c1.clone()), None, None],
            (1, _) => [Some(c0.clone()), Some(c1 - c0), None, None],
            (2, _) => [Some(c0.clone()), Some(c1 - c0), None, Some(self.d11.clone())],
            (3, _) => {
                let (q20, q21) = (self.hi(&self.q2), self.lo(&self.q2));
                [Some(c0.clone()), Some(c1 - c0 + q20), Some(q21), Some(self.d11.clone())]
            }
            (4, _) if extra => [Some(c0.clone()), Some(c1 - c0 + &p20), Some(p21), Some(self.d11.clone())],
            (_, 4) => [Some(c0.clone()), Some(c1 - c0 + &p20), Some(p21.clone()), Some(c1 - c0 + &p20 - &p21)],
            (_, 5) => [Some(c0 + &p00), Some(p01), Some(p21.clone()), Some(c1 - c0 + &p20 - &p21)],
            (_, 6) => [Some(c0 + &p00), Some(p01.clone()), Some(&p01 + &p21), Some(c1 - c0 + &p20 - &p21)],
            (_, 7) => [Some(c0 + &p00), Some(c1 + &p00 - &p21 + &p20), Some(&p01 + &p21), None],
            (_, 8) => [Some(c0 + &p00), Some(c1 + &p00 - &p21 + &p20), Some(&p01 + &p21 + &p10), Some(p11)],
            (_, 9) => [Some(c0 + &p00), Some(c1 + &p01 + &p10 + &p00 + &p20), Some(&p01 + &p21 + &p10), Some(p11)],
            (_, 10) => {
                [Some(c0 + &p00), Some(c1 + &p01 + &p10 + &p00 + &p20), Some(&p01 + &p21 + &p10 + &p11), Some(p11)]
            }
            _ => unreachable!("step {step} past the end of {:?}", self.table),
        }
    }
}

/// Observer that recomputes every table row and the carry postconditions.
#[derive(Default)]
pub struct TableChecker {
    frames: Vec<Option<Frame>>,
    pub snapshots: u64,
    pub entries: u64,
    pub even_frames: u64,
    pub finalized: u64,
    pub failures: Vec<String>,
}

impl TableChecker {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.frames.iter().all(Option::is_none)
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 20 {
            self.failures.push(msg);
        }
    }
}

impl StepObserver for TableChecker {
    fn step(&mut self, s: &Snapshot<'_>) {
        self.snapshots += 1;
        if self.frames.len() <= s.depth {
            self.frames.resize_with(s.depth + 1, || None);
        }
        if s.step == 0 {
            if self.frames[s.depth].is_some() {
                self.fail(format!("depth {}: frame restarted before finalizing", s.depth));
            }
            self.frames[s.depth] = Some(Frame::new(s));
            self.even_frames += 1;
        }
        let Some(frame) = self.frames[s.depth].as_mut() else {
            return self.fail(format!("depth {}: step {} without step 0", s.depth, s.step));
        };
        let mut errors = Vec::new();
        if frame.next_step != s.step || frame.table != s.table {
            errors
                .push(format!("depth {}: got step {} of {:?}, expected {}", s.depth, s.step, s.table, frame.next_step));
        }
        frame.next_step = s.step + 1;
        let rho = s.radix.get();
        let kappas = s.carries.as_array();
        let row = frame.row(s.step);
        let mut checked = 0;
        for (q, expect) in row.iter().enumerate() {
            let Some(expect) = expect else { continue };
            checked += 1;
            let got = BigInt::from(kappas[q]) * &frame.rk + big(rho, s.quarters[q]);
            if &got != expect {
                errors.push(format!(
                    "{:?} step {} quarter {q}: buffer holds {got}, table says {expect} (a0={:?} a1={:?} b={:?})",
                    s.table, s.step, s.a0, s.a1, s.b
                ));
            }
        }
        self.entries += checked;
        for e in errors {
            self.fail(e);
        }
    }

    fn finalized(&mut self, depth: usize, before: QuarterCarries, after: QuarterCarries) {
        self.finalized += 1;
        match self.frames.get_mut(depth).and_then(Option::take) {
            Some(frame) if frame.next_step != frame.table.last_step() + 1 => {
                self.fail(format!("depth {depth}: finalized after step {}", frame.next_step as i32 - 1))
            }
            Some(_) => {}
            None => self.fail(format!("depth {depth}: finalized without a frame")),
        }
        if before.k11 != 0 {
            self.fail(format!("depth {depth}: k11 = {} before the final pass", before.k11));
        }
        if after.k01 != 0 || after.k10 != 0 {
            self.fail(format!("depth {depth}: k01 = {}, k10 = {} after the final pass", after.k01, after.k10));
        }
    }
}
