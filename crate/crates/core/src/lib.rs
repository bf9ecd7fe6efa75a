//! Exact algebra for polynomials vanishing to high order on the Boolean
//! hypercube `{0,1}^n` except at the origin.
//!
//! Polynomials are sparse over `Q` or `GF(p)` ([`field`], [`poly`]).
//! Multiplicities and the Taylor-data map live in [`vanishing`], the
//! reduction to `k`-reduced form and the spaces `U_k`, `V_k` in
//! [`reduction`], symmetric-function tools in [`symfun`], explicit
//! constructions in [`witness`] and binomial/Catalan identities in
//! [`identities`].

pub mod error;
pub mod field;
pub mod hypercube;
pub mod identities;
pub mod io;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod reduction;
pub mod symfun;
pub mod vanishing;
pub mod witness;

pub use error::{Error, Result};
pub use field::{Field, FieldDescriptor, PrimeField, Rationals};
pub use hypercube::HypercubePoint;
pub use monomial::ExponentVector;
pub use poly::{AffineForm, SparsePolynomial};
pub use vanishing::{Multiplicity, MultiplicityProfile, OriginCondition};
