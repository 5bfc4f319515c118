//! Torsion classes of the path quiver `A_n` and the Tamari lattice.
//!
//! The indecomposable representations of `1 -> 2 -> ... -> n` are the
//! intervals `E^{ij}`. This crate computes with them in two independent
//! ways:
//!
//! * combinatorially, through closed-form Hom/Ext/quotient rules
//!   ([`interval`]), quotient-closed subcategories ([`subcat`]), bracket
//!   vectors ([`tamari`]) and tilting objects ([`tilting`]);
//! * explicitly, as matrices over a prime field ([`matrix_rep`]), generic
//!   over the scalar type through [`field::Field`].
//!
//! [`verify`] compares the two, and compares the bracket-vector order against
//! the rotation order on binary trees ([`rotation`]).

pub mod error;
pub mod field;
pub mod interval;
pub mod linalg;
pub mod matrix_rep;
pub mod parallel;
pub mod poset;
pub mod rotation;
pub mod subcat;
pub mod tamari;
pub mod tilting;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, Gf};
pub use interval::{Interval, Rep};
pub use linalg::Matrix;
pub use matrix_rep::{Extension, MatrixRep, MatrixRepData, Morphism, Pullback};
pub use poset::Poset;
pub use subcat::{AVector, IntervalSet};
pub use tamari::{BracketString, BracketVector};
pub use tilting::TiltingObject;

pub type Gf2 = Gf<2>;
pub type Gf3 = Gf<3>;
pub type Gf5 = Gf<5>;
pub type Gf7 = Gf<7>;

/// The default field for explicit computations.
pub type DefaultField = Gf2;

pub type MatrixGf2 = Matrix<Gf2>;
pub type MatrixGf5 = Matrix<Gf5>;

pub type MatrixRepGf2 = MatrixRep<Gf2>;
pub type MatrixRepGf3 = MatrixRep<Gf3>;
pub type MatrixRepGf5 = MatrixRep<Gf5>;
pub type MatrixRepGf7 = MatrixRep<Gf7>;

pub type MorphismGf2 = Morphism<Gf2>;
pub type MorphismGf5 = Morphism<Gf5>;

/// Primes accepted wherever the field is chosen at run time.
pub const SUPPORTED_PRIMES: [u32; 4] = [2, 3, 5, 7];
