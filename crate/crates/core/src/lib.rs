//! Integral points, canonical heights, 2- and 3-descent and Picard torsion
//! for elliptic curves `y^2 = x^3 + f(t)` over `GF(p^m)(t)`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod algebra;
pub mod auxcurves;
pub mod descent;
pub mod error;
pub mod lattice;
pub mod model;
pub mod mordell;
pub mod picard;
pub mod rat;

pub use error::{Error, Result};
