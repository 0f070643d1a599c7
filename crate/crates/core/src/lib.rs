//! Exact computations with degree-four space curves: polynomial arithmetic
//! over prime fields, Gröbner bases and resolutions, sheaf cohomology of
//! curves, explicit curve families and their degenerations, and the
//! component table of the Hilbert schemes `H(4, g)`.

pub mod atlas;
pub mod cohomology;
pub mod components;
pub mod config;
pub mod corpus;
pub mod deform;
pub mod error;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod linalg;
pub mod matrix;
pub mod parse;
pub mod resolution;
pub mod ring;

pub use error::{Error, Result};
pub use ideal::{GroebnerBasis, Ideal};
pub use matrix::PolyMatrix;
pub use ring::{Monomial, MonomialOrder, Polynomial, PrimeField, Ring, RingRef, DEFAULT_CHARACTERISTIC};
