use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("radix {0} out of range (expected 2..=65536)")]
    InvalidRadix(u32),
    #[error("radix bit width {0} out of range (expected 1..=16)")]
    InvalidRadixBits(u32),
    #[error("empty numeral")]
    EmptyNumeral,
    #[error("invalid digit {ch:?} at position {pos}")]
    InvalidDigit { ch: char, pos: usize },
    #[error("hex text needs a power-of-two radix, got {0}")]
    HexNeedsPowerOfTwo(u32),
    #[error("limb {limb} is not below the radix {rho}")]
    LimbOutOfRange { limb: u32, rho: u32 },
    #[error("operands use different radices ({0} and {1})")]
    RadixMismatch(u32, u32),
    #[error("unknown multiplication algorithm {0:?}")]
    UnknownAlgorithm(String),
    #[error("cross-difference carry {0} outside -2..=1")]
    CarryOutOfRange(i32),
    #[error("karatsuba threshold must be at least 1")]
    InvalidThreshold,
}

pub type Result<T> = std::result::Result<T, Error>;
