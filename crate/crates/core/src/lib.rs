//! Exact computations for sl2 parafermion vertex algebras realized inside
//! lattice vertex algebras: truncated q-series, lattice Fock spaces,
//! characters and string functions, fusion and simple-current data, and
//! the symbol algebra of `W_{1+inf}`.

pub mod characters;
pub mod checks;
pub mod fock;
pub mod fusion;
pub mod linalg;
pub mod qseries;
pub mod report;
pub mod scalar;
pub mod w1inf;

pub use scalar::{Exp, Scalar};

/// Default exact scalar.
pub type Rational = num_rational::BigRational;
/// Fast exact scalar for small computations.
pub type SmallRational = num_rational::Ratio<i128>;
pub type Series = qseries::QSeries<Rational>;
pub type ChargedSeries = qseries::ZQSeries<Rational>;
pub type Vector = fock::StateVector<Rational>;
pub type Space = fock::FockSpace<Rational>;
pub type Sl2 = fock::Sl2Lattice<Rational>;
