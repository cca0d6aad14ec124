//! Exact commutative-algebra kernel over small prime fields: sparse
//! polynomial arithmetic, Groebner bases, ideal operations and linkage,
//! graded free resolutions with Betti tables and Hilbert data, and
//! rank/height certification of free complexes.

pub mod error;
pub mod field;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod ring;

pub mod groebner;
pub mod hilbert;
pub mod idealops;
pub mod resolve;

mod matrix;
pub mod certify;
pub mod fixtures;
pub mod sampling;

pub use error::{Error, Result};
pub use field::{PrimeField, DEFAULT_MODULUS};
pub use groebner::{GroebnerBasis, Ideal};
pub use hilbert::HilbertData;
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use poly::Polynomial;
pub use ring::Ring;
