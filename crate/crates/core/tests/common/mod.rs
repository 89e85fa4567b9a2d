#![allow(dead_code)]

pub mod table;

use kmul::{Limb, Radix};
use num_bigint::BigUint;
use num_integer::Integer;
use rand::Rng;

pub fn radix(rho: u32) -> Radix {
    Radix::new(rho).unwrap()
}

pub fn value(rho: u32, limbs: &[Limb]) -> BigUint {
    limbs.iter().fold(BigUint::default(), |acc, &l| acc * rho + l)
}

/// Most-significant-first limbs of `x`, zero-padded to `len`.
pub fn to_limbs(rho: u32, x: &BigUint, len: usize) -> Vec<Limb> {
    let mut out = vec![0; len];
    let mut x = x.clone();
    for l in out.iter_mut().rev() {
        let (q, r) = x.div_rem(&BigUint::from(rho));
        *l = r.try_into().unwrap();
        x = q;
    }
    assert!(x == BigUint::default(), "value does not fit in {len} limbs");
    out
}

/// Digits of `idx` in base `rho`, for enumerating all operands of a length.
pub fn nth_operand(rho: u32, len: usize, mut idx: u64) -> Vec<Limb> {
    let mut v = vec![0; len];
    for l in v.iter_mut().rev() {
        *l = (idx % rho as u64) as Limb;
        idx /= rho as u64;
    }
    v
}

pub fn random_limbs(rng: &mut impl Rng, rho: u32, len: usize) -> Vec<Limb> {
    (0..len).map(|_| rng.gen_range(0..rho) as Limb).collect()
}
