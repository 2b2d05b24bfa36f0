//! Graded-commutative polynomial rings over `F_p`.

pub mod degree;
pub mod expr;
pub mod field;
pub mod groebner;
pub mod poly;
pub mod ring;

pub use degree::{EvalWeights, InternalDegree};
pub use expr::Expr;
pub use field::Fp;
pub use groebner::{eliminate, Elimination, GroebnerBasis, GroebnerConfig, Strategy};
pub use poly::GradedPoly;
pub use ring::{Monomial, Ring, RingBuilder, TermOrder, Variable};
