//! Exact arithmetic foundation: rationals, the group ring of rational
//! q-exponents, dense matrices over the rationals, and generalized
//! eigenspace decomposition of rationally split endomorphisms.

mod eigen;
mod matrix;
mod qlaurent;
mod rational;

pub use eigen::{generalized_eigenspaces, EigenBlock, EigenDecomposition, EigenError};
pub use matrix::RationalMatrix;
pub use qlaurent::QLaurent;
pub use rational::Rational;
