//! Implicitization of surfaces in P^3 given by bi-homogeneous parametrizations
//! of P^1 x P^1, through linear syzygies over the Segre quadric.
//!
//! The pipeline: map the four bi-forms into `A = K[X1..X4]/(X1*X4 - X2*X3)`
//! ([`segre::omega`]), compute the linear syzygies of the resulting ideal in a
//! degree `nu` ([`zcomplex`]), and assemble the matrix `M` whose maximal minors
//! have the implicit equation (to the power `deg(psi)`) as their gcd
//! ([`matrixrep`]). All arithmetic is exact.

pub mod biparam;
pub mod cli;
pub mod error;
pub mod exactla;
pub mod field;
pub mod matrixrep;
mod modp;
mod parse;
pub mod segre;
pub mod zcomplex;
pub mod tpoly;

pub use error::{Error, Result};
pub use field::{Field, FieldElem};
