mod common;

use common::{nth_operand, radix, random_limbs, to_limbs, value};
use kmul::{ks_mul, mpi_mul_kr, sb_mul, Limb, Natural, Radix, Registry, ScratchArena};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_three(rho: Radix, a: &[Limb], b: &[Limb], threshold: usize) -> [Vec<Limb>; 3] {
    let len = a.len() + b.len();
    let mut sb = vec![1; len];
    let mut ks = vec![2; len];
    let mut kr = vec![3; len];
    sb_mul(rho, &mut sb, a, b);
    let mut arena = ScratchArena::for_operands(a.len(), b.len());
    ks_mul(rho, &mut ks, a, b, threshold, &mut arena);
    mpi_mul_kr(rho, &mut kr, a, b, threshold);
    [sb, ks, kr]
}

fn check(rho: u32, a: &[Limb], b: &[Limb], threshold: usize) {
    let [sb, ks, kr] = all_three(radix(rho), a, b, threshold);
    let expect = to_limbs(rho, &(value(rho, a) * value(rho, b)), a.len() + b.len());
    assert_eq!(sb, expect, "sb rho={rho} a={a:?} b={b:?}");
    assert_eq!(ks, expect, "ks rho={rho} a={a:?} b={b:?} threshold={threshold}");
    assert_eq!(kr, expect, "kr rho={rho} a={a:?} b={b:?} threshold={threshold}");
}

#[test]
fn exhaustive_small() {
    for (rho, max_len) in [(2u32, 4usize), (4, 3)] {
        for n in 0..=max_len {
            for m in 0..=max_len {
                let (cn, cm) = ((rho as u64).pow(n as u32), (rho as u64).pow(m as u32));
                for ia in 0..cn {
                    for ib in 0..cm {
                        let (a, b) = (nth_operand(rho, n, ia), nth_operand(rho, m, ib));
                        for threshold in [1, 2, 128] {
                            check(rho, &a, &b, threshold);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn random_straddling_threshold() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for rho in [10u32, 1 << 8, 1 << 16] {
        for _ in 0..60 {
            let n = rng.gen_range(100..=300);
            let m = rng.gen_range(1..=300);
            let a = random_limbs(&mut rng, rho, n);
            let b = random_limbs(&mut rng, rho, m);
            check(rho, &a, &b, 128);
        }
    }
}

#[test]
fn long_operands() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let rho = 1 << 16;
    for (n, m) in [(1000, 1000), (300, 200), (2047, 1500), (4000, 999)] {
        let a = random_limbs(&mut rng, rho, n);
        let b = random_limbs(&mut rng, rho, m);
        check(rho, &a, &b, 128);
        check(rho, &a, &b, 7);
    }
}

#[test]
fn all_max_limbs() {
    for rho in [2u32, 10, 1 << 16] {
        for n in [1usize, 5, 64, 129, 257, 600] {
            let a = vec![(rho - 1) as Limb; n];
            check(rho, &a, &a, 128);
            check(rho, &a, &a[..n / 2 + 1], 16);
        }
    }
}

#[test]
fn registry_products_agree_on_naturals() {
    let rho = radix(1 << 16);
    let reg = Registry::with_builtins(32).unwrap();
    let a = Natural::from_hex(rho, &"f1e2d3c4b5a69788".repeat(70)).unwrap();
    let b = Natural::from_hex(rho, &"0123456789abcdef".repeat(45)).unwrap();
    let products: Vec<Natural> =
        ["sb", "ks", "kr"].iter().map(|n| reg.get(n).unwrap().product(&a, &b).unwrap()).collect();
    assert_eq!(products[0], products[1]);
    assert_eq!(products[0], products[2]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn random_pairs((rho, a, b) in (prop::sample::select(vec![3u32, 10, 256, 65536]), 0usize..80, 0usize..80)
        .prop_flat_map(|(rho, n, m)| {
            let limb = 0..rho;
            (Just(rho), prop::collection::vec(limb.clone(), n), prop::collection::vec(limb, m))
        }),
        threshold in 1usize..12)
    {
        let a: Vec<Limb> = a.into_iter().map(|x| x as Limb).collect();
        let b: Vec<Limb> = b.into_iter().map(|x| x as Limb).collect();
        check(rho, &a, &b, threshold);
    }
}
