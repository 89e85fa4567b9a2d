//! Owned fixed-length naturals and their text forms.

use std::fmt;

use crate::error::{Error, Result};
use crate::limb::{Limb, Radix};

/// A natural number as a fixed-length, most-significant-first limb vector.
///
/// Leading zero limbs are kept: the length is part of the value's shape, as
/// the multiplication routines work on exact buffer lengths.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Natural {
    radix: Radix,
    limbs: Vec<Limb>,
}

impl Natural {
    pub fn from_limbs(radix: Radix, limbs: Vec<Limb>) -> Result<Self> {
        radix.check_limbs(&limbs)?;
        Ok(Natural { radix, limbs })
    }

    pub fn zero(radix: Radix, len: usize) -> Self {
        Natural { radix, limbs: vec![0; len] }
    }

    pub fn radix(&self) -> Radix {
        self.radix
    }

    pub fn limbs(&self) -> &[Limb] {
        &self.limbs
    }

    pub fn into_limbs(self) -> Vec<Limb> {
        self.limbs
    }

    pub fn len(&self) -> usize {
        self.limbs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    /// Drops leading zero limbs, keeping at least one limb.
    pub fn trimmed(&self) -> &[Limb] {
        let first = self.limbs.iter().position(|&l| l != 0).unwrap_or(self.limbs.len().saturating_sub(1));
        &self.limbs[first..]
    }

    /// Parses lowercase or uppercase hex. The radix must be a power of two.
    pub fn from_hex(radix: Radix, text: &str) -> Result<Self> {
        let bits = radix.bits().ok_or(Error::HexNeedsPowerOfTwo(radix.get()))?;
        if text.is_empty() {
            return Err(Error::EmptyNumeral);
        }
        let nibbles = text
            .chars()
            .enumerate()
            .map(|(pos, ch)| ch.to_digit(16).ok_or(Error::InvalidDigit { ch, pos }))
            .collect::<Result<Vec<u32>>>()?;

        let len = (nibbles.len() * 4).div_ceil(bits as usize);
        let mut limbs = vec![0; len];
        let mut acc = 0u32;
        let mut have = 0u32;
        let mut out = limbs.iter_mut().rev();
        for &nib in nibbles.iter().rev() {
            acc |= nib << have;
            have += 4;
            while have >= bits {
                *out.next().expect("limb count covers all bits") = (acc & ((1 << bits) - 1)) as Limb;
                acc >>= bits;
                have -= bits;
            }
        }
        if have > 0 {
            if let Some(l) = out.next() {
                *l = acc as Limb;
            }
        }
        Ok(Natural { radix, limbs })
    }

    /// Lowercase hex without leading zeros; `"0"` for zero.
    pub fn to_hex(&self) -> Result<String> {
        let bits = self.radix.bits().ok_or(Error::HexNeedsPowerOfTwo(self.radix.get()))?;
        let mut digits = Vec::with_capacity(self.limbs.len() * bits as usize / 4 + 1);
        let mut acc = 0u32;
        let mut have = 0u32;
        for &l in self.limbs.iter().rev() {
            acc |= (l as u32) << have;
            have += bits;
            while have >= 4 {
                digits.push(acc & 0xf);
                acc >>= 4;
                have -= 4;
            }
        }
        if have > 0 {
            digits.push(acc);
        }
        Ok(render(digits, 16))
    }

    /// Parses a decimal numeral into any radix by Horner evaluation.
    pub fn from_decimal(radix: Radix, text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyNumeral);
        }
        let rho = radix.get() as u64;
        // least significant first while growing
        let mut rev: Vec<u64> = vec![0];
        for (pos, ch) in text.chars().enumerate() {
            let mut carry = ch.to_digit(10).ok_or(Error::InvalidDigit { ch, pos })? as u64;
            for l in rev.iter_mut() {
                let t = *l * 10 + carry;
                *l = t % rho;
                carry = t / rho;
            }
            while carry > 0 {
                rev.push(carry % rho);
                carry /= rho;
            }
        }
        let limbs = rev.into_iter().rev().map(|l| l as Limb).collect();
        Ok(Natural { radix, limbs })
    }

    /// Decimal text by repeated short division; `"0"` for zero.
    pub fn to_decimal(&self) -> String {
        let rho = self.radix.get() as u64;
        let mut work: Vec<u64> = self.trimmed().iter().map(|&l| l as u64).collect();
        let mut digits = Vec::new();
        while work.iter().any(|&l| l != 0) {
            let mut rem = 0u64;
            for l in work.iter_mut() {
                let cur = rem * rho + *l;
                *l = cur / 10;
                rem = cur % 10;
            }
            digits.push(rem as u32);
            let lead = work.iter().position(|&l| l != 0).unwrap_or(work.len());
            work.drain(..lead);
        }
        render(digits, 10)
    }
}

// Least-significant-first digits to text without leading zeros.
fn render(mut digits: Vec<u32>, base: u32) -> String {
    while digits.len() > 1 && *digits.last().unwrap() == 0 {
        digits.pop();
    }
    if digits.is_empty() {
        return "0".to_string();
    }
    digits.iter().rev().map(|&d| char::from_digit(d, base).unwrap()).collect()
}

impl fmt::Debug for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Natural(rho={}, {:?})", self.radix.get(), self.limbs)
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_hex() {
            Ok(s) => write!(f, "0x{s}"),
            Err(_) => f.write_str(&self.to_decimal()),
        }
    }
}
