//! Catching-up discretization of sweeping processes and the play, stop and
//! `Q` operators built on it.

mod geodesic;
mod grid;
mod play;
mod sweep;

pub use geodesic::{geodesic_solution, switching_time, INITIAL_TOL};
pub use grid::{Grid, GridSpec};
pub use play::{play, play_via_reparam, rate_transform, reparam_solution, stop_and_q, ReparamSolution};
pub use sweep::{catching_up, Method, Residuals, SweepOutput};
