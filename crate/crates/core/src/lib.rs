//! Exact computations with Rees algebras and affine modifications.
//!
//! Given a polynomial ring `A`, an ideal `I` and a nonzero `f ∈ I`, the crate
//! presents the modification ring `A[I/f] ≅ A[It]/(1 - ft)`, the Rees algebra
//! `A[It]`, the proper and strict transforms of `div(f)` in `Proj A[It]`, and
//! the chart-wise global version over an atlas with a Cartier divisor.
//!
//! Everything is exact: coefficients live in `QQ` (arbitrary precision) or a
//! prime field `GF(p)`, and every ideal-theoretic decision goes through reduced
//! Gröbner bases.

pub mod charts;
pub mod coeff;
pub mod error;
mod fraction;
pub mod groebner;
pub mod ideal;
pub mod modification;
pub mod monomial;
pub mod par;
pub mod poly;
pub mod ring;

pub use coeff::{Coeff, Field};
pub use error::{AlgebraError, Result};
pub use groebner::{buchberger, CancelToken, GroebnerBasis};
pub use ideal::{Fraction, FractionalIdeal, Ideal, RingMap};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Polynomial;
pub use ring::{PolyRing, Position};
