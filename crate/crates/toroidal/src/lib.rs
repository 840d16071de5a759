//! Exact computations in twisted full toroidal Lie algebras.
//!
//! The crate constructs the algebra τ = L(g,σ) ⊕ Z(m₀,m) ⊕ D(m₀,m) over a
//! cyclotomic ground field, machine-checks its structural identities
//! (bracket tables, cocycles, quotient well-definedness, the standing
//! assumptions on the fixed-point algebra), and builds the bounded modules
//! T′ and S′ together with the windowed induction/quotient machinery used to
//! compare their characters.

pub mod liealg;
pub mod module;
pub mod linalg;
pub mod report;
pub mod roots;
pub mod scalar;
pub mod tau;

pub use liealg::{build_chevalley, CartanType, SimpleLieAlgebraData};
pub use scalar::{CycScalar, Rat};
pub use tau::{BasisSymbol, TauContext, TauElement};
