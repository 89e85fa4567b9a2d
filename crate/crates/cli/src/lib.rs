//! Plumbing behind the `kmul` command: allocation counting, timing runs and
//! differential verification.

pub mod alloc;
pub mod bench;
pub mod verify;
