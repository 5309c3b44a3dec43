//! Combinatorial, homological, and quantum invariants of smooth compact
//! toric symplectic manifolds and their real Lagrangians.

pub mod curves;
pub mod fan;
pub mod gf2;
pub mod homology;
pub mod cli;
pub mod lattice;
pub mod linalg;
pub mod morse;
pub mod io;
pub mod polytope;
pub mod quantum;
