//! Exact construction, verification and classification of polynomial
//! solutions of `f_mn(q) = f_m(q) alpha_u(m)(f_n(q))` over `Z[q]`.
//!
//! The building blocks, bottom up:
//!
//! * [`poly`]: sparse integer polynomials, quantum integers, cyclotomics.
//! * [`arith`]: completely multiplicative functions and factoring.
//! * [`endo`]: the family `alpha_n(f)(q) = f(q^u(n))^v(n)`.
//! * [`semidirect`]: the semigroup `Z[q] x_alpha N`.
//! * [`solution`]: solution sequences, seeds, products, untwisting.
//! * [`analyzer`]: decomposition into products of quantum integers.
//! * [`cli`]: the `qmul` command-line front end.

pub mod analyzer;
pub mod arith;
pub mod cli;
pub mod endo;
pub mod error;
pub mod poly;
pub mod semidirect;
pub mod solution;

pub use arith::MultFn;
pub use endo::EndoFamily;
pub use error::{Error, Result};
pub use poly::Poly;
pub use semidirect::SdElem;
pub use solution::Solution;
