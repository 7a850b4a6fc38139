//! Symmetry analysis for multivariate Lagrange interpolation under the
//! coordinate-permutation action of `S_n`.
//!
//! Given a symmetric set of basis functions and a symmetric node set in
//! `R^n`, this crate decides which node symmetries are compatible with
//! unisolvence (through the exact system `V X = r`), whether two symmetric
//! node sets are equivalent, and whether a concrete pair is unisolvent.
//!
//! - [`symcore`]: permutations, orbit/cycle types and their order.
//! - [`charmat`]: fixed-point matrix `K` and Gram matrix `V` of permutation
//!   characters, plus a Burnside oracle.
//! - [`nodeset`]: exact points, orbit decomposition, orbit vectors.
//! - [`interp`]: polynomial bases, `r`, `V X = r`, Vandermonde determinant.
//! - [`io`]: JSON formats for node and basis files.

pub mod charmat;
pub mod error;
pub mod interp;
pub mod io;
pub mod linalg;
pub mod nodeset;
pub mod rational;
pub mod symcore;
pub mod unionfind;

pub use charmat::{class_size, fixed_point_count, k_matrix, v_entry_burnside, v_matrix, KMatrix, VMatrix};
pub use error::{Error, Result};
pub use nodeset::{
    classify_point, equivalent, expand_orbit, orbit_vector, subgroup_orbit_count, validate_symmetric, Bijection,
    Equivalence, NodeSet, Orbit, OrbitVector, Point,
};
pub use symcore::{
    apply_to_point, compare_types, enumerate_types, stabilizer_elements, EnumLimit, OrbitType, Permutation, TypeTable,
    DEFAULT_ENUM_LIMIT,
};
