//! Exact computations with graded Hopf algebras over prime fields: graded
//! one-parameter subgroups, their bigraded coordinate rings, and low-degree
//! bigraded cohomology of small examples.

pub mod cohom;
pub mod embed;
pub mod error;
pub mod fixtures;
pub mod grpoly;
pub mod hopf;
pub mod linalg;
pub mod onepar;
pub mod psi;

pub use error::{Error, Result};
pub use grpoly::{
    EvalWeights, Fp, GradedPoly, GroebnerBasis, GroebnerConfig, InternalDegree, Monomial, Ring,
    TermOrder, Variable,
};
