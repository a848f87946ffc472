//! Exact regularity and Koszul certificates for polytopal semigroup rings.
//!
//! The crate follows a lattice polytope `P` through five stages:
//!
//! 1. [`ehrhart`]: the Ehrhart polynomial and the invariant `r`, computed
//!    both as the number of integer roots and as the interior gap.
//! 2. [`cohomology`]: sheaf cohomology of torus-invariant divisors and
//!    multigraded regularity checks.
//! 3. [`semigroup`]: the height-one point configuration, normal generation
//!    and Veronese configurations.
//! 4. [`groebner`]: toric ideals and the search for a quadratic Gröbner basis.
//! 5. [`resolution`]: Betti tables over `S` and the truncated resolution of
//!    the residue field over `R`.
//!
//! [`pipeline`] ties the stages together and produces JSON reports.
//!
//! Linear algebra is generic over [`Field`]; the aliases below fix the
//! fields used by the pipeline.

pub mod cohomology;
pub mod ehrhart;
pub mod error;
pub mod groebner;
pub mod io;
pub mod lattice;
pub mod matrix;
pub mod pipeline;
pub mod resolution;
pub mod scalar;
pub mod semigroup;

pub use error::{Error, Result};
pub use scalar::{Field, Fp, Rational};

/// Default certificate field.
pub type Fp32003 = Fp<32003>;
/// Prime field used to certify rational ranks from below.
pub type FpCert = Fp<{ scalar::CERT_PRIME as u32 }>;
/// Rationals.
pub type QQ = Rational;

pub type PolynomialFp = groebner::Polynomial<Fp32003>;
pub type PolynomialQ = groebner::Polynomial<Rational>;
pub type MatrixFp = matrix::Matrix<Fp32003>;
pub type MatrixQ = matrix::Matrix<Rational>;
