//! Differential testing of SB, KS and KR on random and adversarial operands.

use std::fmt;

use kmul::in_place::{mpi_mul_kr_observed, CaseCounter};
use kmul::{ks_mul, sb_mul, Limb, Radix, ScratchArena};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub trials: u64,
    pub max_len: usize,
    pub radices: Vec<Radix>,
    pub threshold: usize,
    pub seed: u64,
}

/// A failing input after shrinking, with the three outputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub radix: Radix,
    pub threshold: usize,
    pub a: Vec<Limb>,
    pub b: Vec<Limb>,
    pub sb: Vec<Limb>,
    pub ks: Vec<Limb>,
    pub kr: Vec<Limb>,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub trials: u64,
    pub products: u64,
    pub cases: CaseCounter,
    pub mismatch: Option<Mismatch>,
}

impl VerifyReport {
    pub fn all_match(&self) -> bool {
        self.mismatch.is_none()
    }

    /// Everything matched and, unless nothing ran, every case tag was hit.
    pub fn passed(&self) -> bool {
        self.all_match() && (self.trials == 0 || self.cases.all_hit())
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.cases;
        let status = match (&self.mismatch, self.passed()) {
            (Some(_), _) => "MISMATCH",
            (None, true) => "OK",
            (None, false) => "INCOMPLETE",
        };
        write!(
            f,
            "{status}, cases hit: C1+={} C1-={} C2={} C3={} E=-rho^k={} ({} products, {} trials)",
            c.case1_non_negative, c.case1_negative, c.case2, c.case3, c.minus_rho_k, self.products, self.trials
        )?;
        if let Some(m) = &self.mismatch {
            write!(f, "\n{m}")?;
        }
        Ok(())
    }
}

fn limbs_text(radix: Radix, limbs: &[Limb]) -> String {
    match kmul::Natural::from_limbs(radix, limbs.to_vec()).and_then(|x| x.to_hex()) {
        Ok(hex) => format!("0x{hex} {limbs:?}"),
        Err(_) => format!("{limbs:?}"),
    }
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "smallest failing input (radix {}, threshold {}):", self.radix.get(), self.threshold)?;
        writeln!(f, "  a  = {}", limbs_text(self.radix, &self.a))?;
        writeln!(f, "  b  = {}", limbs_text(self.radix, &self.b))?;
        writeln!(f, "  sb = {:?}", self.sb)?;
        writeln!(f, "  ks = {:?}", self.ks)?;
        write!(f, "  kr = {:?}", self.kr)
    }
}

/// Operand pairs that steer an inner frame of the in-place recursion into a
/// chosen range of its cross difference.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Steer {
    Case1Negative,
    Case2,
    Case3,
    MinusRhoK,
}

impl Steer {
    pub const ALL: [Steer; 4] = [Steer::Case1Negative, Steer::Case2, Steer::Case3, Steer::MinusRhoK];
}

/// `(a, b)` of length `4h`, where `2h` is the smallest even length above the
/// threshold. `a` is all `rho - 1`, so the top frame is case 1 with `E = 0`
/// and its middle product runs on the halves `B1, B0` of `b`; those halves
/// are chosen so that frame's cross difference lands in the requested case.
pub fn steered_pair(radix: Radix, threshold: usize, steer: Steer) -> (Vec<Limb>, Vec<Limb>) {
    let k = (threshold + 1).next_multiple_of(2);
    let h = k / 2;
    let max = radix.max_limb();
    let block = |x: Limb| vec![x; h];
    let one = {
        let mut v = vec![0; h];
        v[h - 1] = 1;
        v
    };
    // (B0, B1), each as (high, low) halves
    let (b0, b1) = match steer {
        Steer::Case1Negative => ([block(0), block(0)], [block(0), one]),
        Steer::Case2 => ([block(0), block(max)], [block(max), block(0)]),
        Steer::Case3 => ([block(max), block(0)], [block(0), block(max)]),
        Steer::MinusRhoK => ([block(max), block(0)], [block(0), one]),
    };
    let b = [b0, b1].concat().concat();
    (vec![max; 2 * k], b)
}

fn products(radix: Radix, a: &[Limb], b: &[Limb], threshold: usize, cases: &mut CaseCounter) -> [Vec<Limb>; 3] {
    let len = a.len() + b.len();
    let mut sb = vec![0; len];
    sb_mul(radix, &mut sb, a, b);
    let mut ks = vec![0; len];
    let mut arena = ScratchArena::for_operands(a.len(), b.len());
    ks_mul(radix, &mut ks, a, b, threshold, &mut arena);
    let mut kr = vec![0; len];
    mpi_mul_kr_observed(radix, &mut kr, a, b, threshold, cases);
    [sb, ks, kr]
}

fn disagree(radix: Radix, a: &[Limb], b: &[Limb], threshold: usize) -> Option<[Vec<Limb>; 3]> {
    let out = products(radix, a, b, threshold, &mut CaseCounter::default());
    (out[0] != out[1] || out[0] != out[2]).then_some(out)
}

/// Greedily drops and zeroes limbs while `fails` still holds.
fn minimize(mut a: Vec<Limb>, mut b: Vec<Limb>, fails: impl Fn(&[Limb], &[Limb]) -> bool) -> (Vec<Limb>, Vec<Limb>) {
    loop {
        let mut candidates: Vec<(Vec<Limb>, Vec<Limb>)> = Vec::new();
        for (x, y, swap) in [(&a, &b, false), (&b, &a, true)] {
            let mut push = |nx: Vec<Limb>| candidates.push(if swap { (y.clone(), nx) } else { (nx, y.clone()) });
            if x.len() > 1 {
                push(x[x.len() / 2..].to_vec());
                push(x[..x.len() / 2].to_vec());
                push(x[1..].to_vec());
                push(x[..x.len() - 1].to_vec());
            }
            for i in 0..x.len() {
                if x[i] != 0 {
                    let mut nx = x.clone();
                    nx[i] = 0;
                    push(nx);
                }
            }
        }
        match candidates.into_iter().find(|(na, nb)| fails(na, nb)) {
            Some((na, nb)) => (a, b) = (na, nb),
            None => return (a, b),
        }
    }
}

pub fn shrink(radix: Radix, threshold: usize, a: Vec<Limb>, b: Vec<Limb>) -> Mismatch {
    let (a, b) = minimize(a, b, |a, b| disagree(radix, a, b, threshold).is_some());
    let [sb, ks, kr] = disagree(radix, &a, &b, threshold).expect("shrink needs a failing input");
    Mismatch { radix, threshold, a, b, sb, ks, kr }
}

#[derive(Clone, Copy)]
enum Kind {
    Random,
    AllMax,
    Zeros,
    Sparse,
}

fn operand(rng: &mut ChaCha8Rng, radix: Radix, len: usize, kind: Kind) -> Vec<Limb> {
    let max = radix.max_limb();
    match kind {
        Kind::Random => (0..len).map(|_| rng.gen_range(0..=max)).collect(),
        Kind::AllMax => vec![max; len],
        Kind::Zeros => vec![0; len],
        Kind::Sparse => (0..len).map(|_| if rng.gen_ratio(1, 8) { max } else { 0 }).collect(),
    }
}

/// Runs the steered pairs for every radix, then `trials` random pairs.
/// Stops at the first disagreement, which is shrunk before reporting.
pub fn run(config: &VerifyConfig) -> VerifyReport {
    let mut report = VerifyReport { trials: config.trials, ..Default::default() };
    if config.trials == 0 || config.radices.is_empty() {
        return report;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let check = |report: &mut VerifyReport, radix: Radix, a: &[Limb], b: &[Limb]| {
        let [sb, ks, kr] = products(radix, a, b, config.threshold, &mut report.cases);
        report.products += 1;
        if sb != ks || sb != kr {
            report.mismatch = Some(shrink(radix, config.threshold, a.to_vec(), b.to_vec()));
        }
        report.mismatch.is_none()
    };

    for &radix in &config.radices {
        for steer in Steer::ALL {
            let (a, b) = steered_pair(radix, config.threshold, steer);
            if !check(&mut report, radix, &a, &b) {
                return report;
            }
        }
    }
    let kinds = [Kind::Random, Kind::Random, Kind::Random, Kind::Random, Kind::AllMax, Kind::Zeros, Kind::Sparse];
    for t in 0..config.trials {
        let radix = config.radices[t as usize % config.radices.len()];
        let n = rng.gen_range(1..=config.max_len.max(1));
        let m = rng.gen_range(1..=config.max_len.max(1));
        let ka = *kinds.choose(&mut rng).unwrap();
        let kb = *kinds.choose(&mut rng).unwrap();
        let a = operand(&mut rng, radix, n, ka);
        let b = operand(&mut rng, radix, m, kb);
        if !check(&mut report, radix, &a, &b) {
            return report;
        }
    }
    report
}
