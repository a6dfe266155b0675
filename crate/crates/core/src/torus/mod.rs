//! Functions on the unit circle: exact Laurent polynomials, sampled dyadic
//! grids, the functional equations `f(z^n) = f(z)^n` and the cascade
//! `h(z^2) = h(z) psi(z)` with its continuity obstruction.

mod cascade;
mod grid;
mod laurent;

pub use cascade::{
    approach_sequence, cascade_solve, flipflop_commute_obstruction, gauge_equiv_obstruction,
    OscillationReport, MAX_APPROACH_NUMERATOR,
};
pub use grid::{parse_angle, DyadicGridFunction, Preset, MAX_GRID_LEVEL};
pub use laurent::{check_power_equation, solve_square_equation, LaurentCircleFunction};
