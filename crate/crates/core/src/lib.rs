//! Exact invariants and certificates for closed braids.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure
//! computation; file formats, caching and the command line live in the
//! `knotcert-cli` companion crate.
//!
//! * [`braid`]: braid words, closures, and the `K_n` braid families.
//! * [`poly`]: exact sparse Laurent polynomials in one or two variables.
//! * [`homfly`]: HOMFLY polynomial (Hecke trace and skein oracle), the
//!   zeroth coefficient polynomial, Alexander polynomial and determinant.
//! * [`positivity`]: sharpness of positive braids and the HOMFLY
//!   braid-positivity obstruction.
//! * [`montesinos`]: Seifert invariants and the L-space criterion for
//!   `M(-1; r1, r2, r3)`.
//! * [`traintrack`]: graph maps, transition matrices, efficiency and
//!   Perron–Frobenius certificates.
//! * [`dehornoy`]: handle reduction and the Dehornoy order.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod braid;
pub mod dehornoy;
pub mod homfly;
pub mod montesinos;
pub mod poly;
pub mod positivity;
pub mod traintrack;

pub use braid::{BraidError, BraidWord, ClosureStats, Family};
pub use poly::{LaurentPoly1, LaurentPoly2, PolyError, Var};
