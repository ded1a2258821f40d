//! The graded algebra of closed Jacobi diagrams modulo AS and IHX.

mod algebra;
mod diagram;
mod quotient;
mod weight;

pub use algebra::{
    coproduct, counit, diagram_mul, DiagramAlgebra, DiagramCombination, Product, TensorCombination,
};
pub use diagram::{CanonicalForm, JacobiDiagram};
pub use quotient::{
    enumerate_diagrams, relations_at, QuotientBasis, Relation, RelationKind, DEFAULT_MAX_DEGREE,
};
pub use weight::{weight_series, weight_system, HSeries, WeightData};
