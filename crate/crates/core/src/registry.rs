//! Multiplication strategies behind one trait, looked up by name.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::in_place::{mpi_mul_kr, DEFAULT_THRESHOLD};
use crate::karatsuba_std::{ks_mul, ScratchArena};
use crate::limb::{Limb, Radix};
use crate::natural::Natural;
use crate::schoolbook::sb_mul;

/// Per-call accounting reported by a strategy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MulStats {
    /// Scratch limbs simultaneously in use at the peak (0 for in-place code).
    pub peak_scratch_limbs: usize,
}

pub trait Multiplier: Send + Sync {
    /// Lower-case lookup key.
    fn name(&self) -> &'static str;

    /// Short display label.
    fn label(&self) -> &'static str;

    /// `d = a * b`, `d.len() == a.len() + b.len()`.
    fn multiply(&self, rho: Radix, d: &mut [Limb], a: &[Limb], b: &[Limb]) -> MulStats;

    fn product(&self, a: &Natural, b: &Natural) -> Result<Natural> {
        if a.radix() != b.radix() {
            return Err(Error::RadixMismatch(a.radix().get(), b.radix().get()));
        }
        let mut d = vec![0; a.len() + b.len()];
        self.multiply(a.radix(), &mut d, a.limbs(), b.limbs());
        Natural::from_limbs(a.radix(), d)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Schoolbook;

impl Multiplier for Schoolbook {
    fn name(&self) -> &'static str {
        "sb"
    }

    fn label(&self) -> &'static str {
        "SB"
    }

    fn multiply(&self, rho: Radix, d: &mut [Limb], a: &[Limb], b: &[Limb]) -> MulStats {
        sb_mul(rho, d, a, b);
        MulStats::default()
    }
}

/// Karatsuba with a scratch arena allocated per multiplication.
#[derive(Clone, Copy, Debug)]
pub struct StandardKaratsuba {
    pub threshold: usize,
}

impl Multiplier for StandardKaratsuba {
    fn name(&self) -> &'static str {
        "ks"
    }

    fn label(&self) -> &'static str {
        "KS"
    }

    fn multiply(&self, rho: Radix, d: &mut [Limb], a: &[Limb], b: &[Limb]) -> MulStats {
        let mut arena = ScratchArena::for_operands(a.len(), b.len());
        ks_mul(rho, d, a, b, self.threshold, &mut arena);
        MulStats { peak_scratch_limbs: arena.high_water() }
    }
}

/// The in-place Karatsuba; allocates nothing.
#[derive(Clone, Copy, Debug)]
pub struct SpaceEfficientKaratsuba {
    pub threshold: usize,
}

impl Multiplier for SpaceEfficientKaratsuba {
    fn name(&self) -> &'static str {
        "kr"
    }

    fn label(&self) -> &'static str {
        "KR"
    }

    fn multiply(&self, rho: Radix, d: &mut [Limb], a: &[Limb], b: &[Limb]) -> MulStats {
        mpi_mul_kr(rho, d, a, b, self.threshold);
        MulStats::default()
    }
}

/// ```
/// use kmul::{Natural, Radix, Registry};
///
/// let rho = Radix::from_bits(16).unwrap();
/// let reg = Registry::with_builtins(128).unwrap();
/// let a = Natural::from_hex(rho, "ffffffffffffffff").unwrap();
/// let p = reg.get("kr").unwrap().product(&a, &a).unwrap();
/// assert_eq!(p.to_hex().unwrap(), "fffffffffffffffe0000000000000001");
/// ```
#[derive(Clone, Default)]
pub struct Registry {
    entries: BTreeMap<&'static str, Arc<dyn Multiplier>>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// `sb`, `ks` and `kr`, the Karatsuba variants at `threshold`.
    pub fn with_builtins(threshold: usize) -> Result<Self> {
        if threshold == 0 {
            return Err(Error::InvalidThreshold);
        }
        let mut r = Self::new();
        r.register(Schoolbook);
        r.register(StandardKaratsuba { threshold });
        r.register(SpaceEfficientKaratsuba { threshold });
        Ok(r)
    }

    /// Adds a strategy, replacing any previous one with the same name.
    pub fn register<M: Multiplier + 'static>(&mut self, m: M) {
        self.entries.insert(m.name(), Arc::new(m));
    }

    /// Case-insensitive lookup.
    pub fn get(&self, name: &str) -> Result<Arc<dyn Multiplier>> {
        let key = name.to_ascii_lowercase();
        self.entries.get(key.as_str()).cloned().ok_or_else(|| Error::UnknownAlgorithm(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }
}

impl Default for StandardKaratsuba {
    fn default() -> Self {
        StandardKaratsuba { threshold: DEFAULT_THRESHOLD }
    }
}

impl Default for SpaceEfficientKaratsuba {
    fn default() -> Self {
        SpaceEfficientKaratsuba { threshold: DEFAULT_THRESHOLD }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_is_case_insensitive() {
        let r = Registry::with_builtins(4).unwrap();
        assert_eq!(r.names().collect::<Vec<_>>(), ["kr", "ks", "sb"]);
        assert_eq!(r.get("KR").unwrap().label(), "KR");
        assert_eq!(r.get("toom").err(), Some(Error::UnknownAlgorithm("toom".into())));
        assert_eq!(Registry::with_builtins(0).err(), Some(Error::InvalidThreshold));
    }

    #[test]
    fn all_builtins_agree() {
        let rho = Radix::from_bits(4).unwrap();
        let a = Natural::from_hex(rho, "ff").unwrap();
        let r = Registry::with_builtins(1).unwrap();
        for name in ["sb", "ks", "kr"] {
            let p = r.get(name).unwrap().product(&a, &a).unwrap();
            assert_eq!(p.to_hex().unwrap(), "fe01", "{name}");
        }
    }

    #[test]
    fn radix_mismatch() {
        let a = Natural::zero(Radix::new(10).unwrap(), 1);
        let b = Natural::zero(Radix::new(16).unwrap(), 1);
        assert_eq!(Schoolbook.product(&a, &b).err(), Some(Error::RadixMismatch(10, 16)));
    }
}
