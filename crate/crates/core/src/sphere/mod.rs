//! Frames on the Stiefel manifold whose rotation orbits have equal images.

mod frame;
mod map;
mod solve;

pub use frame::{geodesic, orbit_points, rotate_frame, StiefelFrame};
pub use map::{random_smooth_map, Expr, SmoothMap};
pub use solve::{
    center_blocks, gradient_check, residual, solve_bu, BuSolution, GradientCheck, OrbitResult, Residual, SolveParams,
};
