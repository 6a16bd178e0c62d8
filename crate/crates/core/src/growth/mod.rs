//! Cayley-ball enumeration, growth tables and bounds on `ω(G, X)`.

mod ball;
mod table;

pub use ball::{enumerate_ball, enumerate_ball_with, Ball, EnumConfig, Member, DEFAULT_CAP};
pub use table::{
    check_submultiplicative, compare_quotient, growth_table, omega_bounds, omega_bounds_with_digits,
    ComparisonReport, ComparisonRow, GrowthEstimate, GrowthTable, SubmultViolation,
};
