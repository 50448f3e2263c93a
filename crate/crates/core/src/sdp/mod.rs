//! Numerical search for Gram matrices: the linear constraints matching a
//! quadratic form to the shifted operator, a PSD feasibility solver, and the
//! closed-form solution sets at θ = π/4 and π/8.

mod chsh;
mod constraints;
mod interior;
mod pi8;
mod region;
mod solve;

pub use chsh::{
    chsh_constraints, chsh_grid, chsh_matrix, chsh_params_of, enumerate_chsh_vertices,
    solve_chsh_point, ChshConditions, ChshParams, ChshVertex, GridPoint,
};
pub use constraints::{build_constraints, canonical_basis, BasisKind, ConstraintSystem};
pub use interior::{maximize_min_eigenvalue, InteriorResult};
pub use pi8::{
    pi8_conditions, pi8_cusps, pi8_matrix, pi8_params_of, solve_pi8, CuspReport, Pi8Params,
};
pub use region::{region_axes, region_points, RegionPoint};
pub use solve::{
    lift_to_canonical, solve_feasible, solve_feasible_with, svec, symmetrize, unsvec,
    FeasibilityResult, SolverOptions, BOUNDARY_TOL,
};
