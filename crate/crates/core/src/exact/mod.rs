//! Exact scalars, vectors, elimination and LP feasibility.

mod hull;
pub mod linalg;
mod lp;
mod vector;

pub(crate) use hull::solve_hulls;
pub use hull::{check_intersection, conv_intersection_point, relint_intersection_point, HullIntersection};
pub use linalg::{affine_rank, nullspace, rank, rref};
pub use lp::{lp_feasible, Feasibility, LinearSystem, StandardForm, StandardOutcome};
pub use vector::{scalar, scalar_list, scalar_lists, Vector};
