//! Polynomial bases, the generalized Vandermonde test and the `V X = r`
//! constraint system.

pub mod basis;
pub mod constraints;
pub mod poly;
pub mod unisolvence;

pub use basis::{
    basis_orbit_count_under_stabilizer, check_independence, monomials_of_degree_at_most, r_vector,
    validate_symmetric_basis, BasisSet, FunctionOrbit, Independence, OrbitClass,
};
pub use constraints::{solve_constraints, Admissibility, ConstraintSystem};
pub use poly::{act_on_function, BasisFunction, Monomial};
pub use unisolvence::{
    analyze, check_necessary_conditions, vandermonde, vandermonde_float, Analysis, Condition, ConditionCheck,
    Determinant, DeterminantMode, EvalMatrix, NecessaryReport, Status, UnisolvenceReport, Verdict, DEFAULT_DET_TOL,
};
