//! Exact arithmetic around the sequence `a(1) = 1`, `a(2n) = a(n) + 1`,
//! `a(2n+1) = 1 / a(2n)`, which visits every positive rational exactly once.
//!
//! The crate is organised bottom-up:
//!
//! * [`rational`]: reduced fractions over arbitrary-precision naturals.
//! * [`sequence`]: evaluation of `a(n)`, its inverse, and the signed enumeration.
//! * [`cf`]: the codec between binary indices, gap sequences and canonical
//!   finite continued fractions, plus convergents.
//! * [`kepler`]: Kepler's tree of the rationals in `(0, 1)`.
//! * [`adic`]: 2-adic indices, whose images are positive reals returned as
//!   exact rational brackets.

pub mod adic;
pub mod cf;
mod error;
pub mod kepler;
pub mod rational;
pub mod sequence;

pub use error::{Error, ErrorKind};
pub use rational::{gcd, Natural, PositiveRational, Sign, SignedRational};

pub type Result<T, E = Error> = std::result::Result<T, E>;
