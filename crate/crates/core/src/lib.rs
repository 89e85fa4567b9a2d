//! Multi-precision natural multiplication over limbs in a configurable radix.
//!
//! Three algorithms share one limb layout (most significant limb first,
//! `2 <= rho <= 2^16`):
//!
//! * [`sb_mul`], the quadratic schoolbook product;
//! * [`ks_mul`], a subtractive Karatsuba using `2 * floor(n/2)` scratch limbs
//!   per recursive call;
//! * [`mpi_mul_kr`], an in-place Karatsuba that forms every intermediate
//!   product inside the output buffer and allocates nothing.
//!
//! ```
//! use kmul::{mpi_mul_kr, Radix};
//!
//! let rho = Radix::new(10).unwrap();
//! let mut d = [0; 5];
//! mpi_mul_kr(rho, &mut d, &[1, 2, 3], &[4, 5], 128);
//! assert_eq!(d, [0, 5, 5, 3, 5]);
//! ```

mod driver;
mod error;
pub mod in_place;
pub mod karatsuba_std;
pub mod limb;
mod natural;
pub mod registry;
pub mod schoolbook;

pub use error::{Error, Result};
pub use in_place::{kr_mpi_mul, kr_mul, kr_mul_top, mpi_mul_kr, DEFAULT_THRESHOLD};
pub use karatsuba_std::{ks_mul, ScratchArena};
pub use limb::{mpi_add, mpi_add_c, mpi_addmul_scalar, mpi_neg, mpi_sub, Carry, Limb, Radix};
pub use natural::Natural;
pub use registry::{MulStats, Multiplier, Registry, Schoolbook, SpaceEfficientKaratsuba, StandardKaratsuba};
pub use schoolbook::{kr_mul_b1, kr_mul_b2, sb_mul};
