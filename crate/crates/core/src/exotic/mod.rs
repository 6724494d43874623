//! Hyperfields of monomials and tropical addition of p-adic numbers.

pub mod monomial;
pub mod padic;

pub use monomial::{to_tropical_complex, tropical_preimage, Exponent, MSet, Monomial, MonomialElem};
pub use padic::{padic_add, padic_norm, PPiece, PSet, Padic, PadicElem};
