//! Marked Cayley balls, their label-preserving isomorphism, and the local
//! convergence of marked groups measured through balls.

mod converge;
mod marked;

pub use converge::{
    approximation_experiment, convergence_radius, convergence_radius_of, grigorchuk_approximants,
    ApproximationRow, ApproximationTable,
};
pub use marked::{balls_isomorphic, extract_marked_ball, label_map, marked_from_ball, MarkedBall};
