//! Exact-arithmetic calculus for q-intersection numbers of equivariant
//! Lagrangian objects: the supertrace formula, the q-Picard-Lefschetz twist
//! action on configurations of Lagrangian spheres, and a chain-level verifier
//! for the open-closed TQFT identities and dilation axioms.

pub mod chainmodel;
pub mod cli;
pub mod exactalg;
pub mod lefschetz;
pub mod qnumbers;
