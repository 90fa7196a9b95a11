//! Exact-arithmetic toolkit for hyperbolic reflection lattices: Vinberg's
//! algorithm, Coxeter diagram classification, and chirality verdicts via
//! discriminant-group actions.

pub mod chirality;
pub mod coxeter;
pub mod discriminant;
pub mod enumerate;
pub mod lattice;
pub mod linalg;
pub mod presets;
pub mod roots;
pub mod vinberg;

pub use lattice::{build_lattice, parse_lattice_name, parse_lattice_spec, Lattice, LatticeSpec};
