mod common;

use common::{radix, random_limbs};
use kmul::in_place::{mpi_mul_kr_observed, CaseCounter};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ceil_log2(x: f64) -> usize {
    x.log2().ceil().max(0.0) as usize
}

#[test]
fn recursion_depth_is_logarithmic() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    // all-odd halving chains, Fibonacci ratios (longest remainder chains),
    // powers of two and ragged shapes
    let shapes = [
        (4095, 4095),
        (16383, 16383),
        (4181, 2584),
        (10946, 6765),
        (4096, 4096),
        (8192, 129),
        (20000, 7777),
        (1000, 999),
        (129, 129),
        (300, 200),
    ];
    for threshold in [128usize, 32] {
        for &(n, m) in &shapes {
            let a = random_limbs(&mut rng, 1 << 16, n);
            let b = random_limbs(&mut rng, 1 << 16, m);
            let mut d = vec![0; n + m];
            let mut c = CaseCounter::default();
            mpi_mul_kr_observed(radix(1 << 16), &mut d, &a, &b, threshold, &mut c);
            let t = threshold as f64;
            let bound = ceil_log2(n.max(m) as f64 / t) + ceil_log2(t) + 4;
            assert!(c.max_depth <= bound, "n={n} m={m} threshold={threshold}: depth {} > {bound}", c.max_depth);
        }
    }
}
