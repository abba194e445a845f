//! Exact computations for 2-class groups of real biquadratic fields and their
//! cyclotomic Z₂-extensions: residue symbols, quadratic units, form class
//! groups, ambiguous-class ranks, Kuroda–Wada class numbers and the case
//! classification of the 2-Iwasawa module rank.

#![no_std]

extern crate alloc;
pub mod arith;
pub mod classify;
pub mod formclass;
pub mod genus2rank;
pub mod gf2;
pub mod multiquad;
pub mod oracle;
pub mod quadunits;
pub mod radical;
pub mod residue;
