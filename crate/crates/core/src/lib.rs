//! Exact arithmetic for Grothendieck-Witt rings of concrete fields.
//!
//! The crate computes with formal sums of square classes over Q, F_p
//! (p an odd prime), R and C, equips the Grothendieck-Witt ring with
//! the power structure whose n-th function on a generator is
//! `<a^n> + floor(n/2) * t_a`, and checks that the trace homomorphism
//! from dimension-0 motivic classes respects it. Symmetric powers of
//! Galois sets are enumerated directly; the Burnside ring of small
//! finite groups serves as an independent oracle.
//!
//! The crate is `no_std` (with `alloc`); all IO lives in the companion
//! CLI crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod burnside;
pub mod field;
pub mod galois;
pub mod gw;
pub mod gw_power;
pub mod power;
pub mod ring;
pub mod series;
pub mod verify;

mod error;
mod multiset;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
