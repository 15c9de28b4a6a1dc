//! Dev-only helpers for the oracle test suites: independent lattice
//! arithmetic (Euclidean column elimination, no Smith normal form),
//! resolution-based functor computations, and seeded random generators
//! for matrices and chain complexes.

pub mod complexes;
pub mod functors;
pub mod lattice;
