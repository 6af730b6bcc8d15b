//! Permutation-polynomial machinery over binary fields `F_{2^{2k}}`.
//!
//! The crate is built around the correspondence between polynomials of the
//! shape `X^r A(X^{q-1})` on `F_{q^2}` and maps on the unit-circle subgroup
//! `mu_{q+1}` of `(q+1)`-th roots of unity. It provides:
//!
//! * [`gf`] — arithmetic in `F_{2^{2k}}` with its subfield `F_q`,
//! * [`poly`] — sparse polynomials, rational functions and Möbius maps,
//! * [`circle`] — `mu_{q+1}`, the projective line `P^1(F_q)` and bijection tests,
//! * [`framework`] — the wrapped-form criterion, quotient rewrite, the
//!   trinomial family `X^{d1}+X^{d2}+X^{d3}` and related generators,
//! * [`equiv`] — multiplicative equivalence of polynomials and the explicit
//!   correspondences between the trinomial family and earlier constructions.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion `muperm-cli` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod circle;
pub mod equiv;
pub mod error;
pub mod framework;
pub mod gf;
pub mod poly;

pub(crate) mod ints;

pub use error::{Error, Result};
