//! Homological invariants of free differential graded tensor algebras over
//! the integers: finitely generated abelian groups and their functors, free
//! chain complexes, free tensor-algebra DGAs, the Whitehead exact sequence
//! with its obstruction classes, and enumeration of quasi-isomorphism types.
//!
//! The crate is `no_std` (with `alloc`); all arithmetic is exact.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod abgroup;
pub mod chaincx;
pub mod classify;
pub mod dga;
pub mod matrix;
pub mod whitehead;
