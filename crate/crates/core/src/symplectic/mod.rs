pub mod lattice;
pub mod moyal;
pub mod tree;

pub use lattice::{basis_label, parse_basis_label, SymplecticLattice};
pub use moyal::{moyal_product, poisson_bracket, Monomial, PolynomialObservable, DEFAULT_T_ORDER};
pub use tree::{
    raw_bracket, tree_relations, BasisTree, BlockKey, CanonicalTree, Code, LabeledTree, Shape,
    TreeCanonicalForm, TreeCombination, TreeReducer, DEFAULT_TREE_DEGREE,
};
