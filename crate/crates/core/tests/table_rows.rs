mod common;

use common::table::TableChecker;
use common::{nth_operand, radix, random_limbs};
use kmul::in_place::{kr_mul_observed, kr_mul_top_observed, CaseCounter, ECase, StepObserver};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Forwards to both observers so table checks and case counts come from the same runs.
struct Both<'a>(&'a mut TableChecker, &'a mut CaseCounter);

impl StepObserver for Both<'_> {
    fn enter(&mut self, depth: usize, len: usize) {
        self.1.enter(depth, len);
    }
    fn classified(&mut self, depth: usize, case: ECase, minus_rho_k: bool) {
        self.1.classified(depth, case, minus_rho_k);
    }
    fn step(&mut self, s: &kmul::in_place::Snapshot<'_>) {
        self.0.step(s);
    }
    fn finalized(
        &mut self,
        depth: usize,
        before: kmul::in_place::QuarterCarries,
        after: kmul::in_place::QuarterCarries,
    ) {
        self.0.finalized(depth, before, after);
    }
}

fn report(checker: &TableChecker) {
    assert!(checker.ok(), "{:#?}", checker.failures);
}

#[test]
fn random_even_frames_follow_the_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ab1e);
    let mut checker = TableChecker::default();
    let mut cases = CaseCounter::default();
    let mut runs = 0;
    for rho in [4u32, 10] {
        for n in [4usize, 6, 8] {
            for threshold in [1, 2, 3] {
                for _ in 0..40 {
                    let a0 = random_limbs(&mut rng, rho, n);
                    let a1 = random_limbs(&mut rng, rho, n);
                    let b = random_limbs(&mut rng, rho, n);
                    let mut d = random_limbs(&mut rng, rho, 2 * n);
                    let mut both = Both(&mut checker, &mut cases);
                    if rng.gen_bool(0.25) {
                        kr_mul_top_observed(radix(rho), &mut d, &a0, &b, threshold, &mut both);
                    } else {
                        kr_mul_observed(radix(rho), &mut d, &a0, &a1, &b, threshold, &mut both);
                    }
                    runs += 1;
                }
            }
        }
    }
    report(&checker);
    assert!(runs >= 100);
    assert!(checker.even_frames >= runs);
    assert_eq!(checker.finalized, checker.even_frames);
    assert!(checker.entries >= 3 * checker.snapshots);
    for case in ECase::ALL {
        assert!(cases.count(case) > 0, "{case:?} never hit: {cases:?}");
    }
}

// Every length-4 binary operand triple, with zero and all-ones preloads.
#[test]
fn exhaustive_len4_rho2() {
    let mut checker = TableChecker::default();
    let mut cases = CaseCounter::default();
    for ia0 in 0..16 {
        for ia1 in 0..16 {
            for ib in 0..16 {
                let (a0, a1, b) = (nth_operand(2, 4, ia0), nth_operand(2, 4, ia1), nth_operand(2, 4, ib));
                for c in [0, 15] {
                    let mut d = nth_operand(2, 4, c);
                    d.extend_from_slice(&[1; 4]);
                    kr_mul_observed(radix(2), &mut d, &a0, &a1, &b, 1, &mut Both(&mut checker, &mut cases));
                }
            }
        }
    }
    report(&checker);
    assert!(cases.all_hit(), "{cases:?}");
}

#[test]
fn minus_rho_k_point() {
    // E = (0 - 1) - (9 - 0) = -10
    let mut checker = TableChecker::default();
    let mut cases = CaseCounter::default();
    let mut d = vec![3, 7, 0, 0];
    kr_mul_observed(radix(10), &mut d, &[0, 9], &[1, 0], &[4, 2], 1, &mut Both(&mut checker, &mut cases));
    report(&checker);
    assert_eq!((cases.case3, cases.minus_rho_k), (1, 1));
}
