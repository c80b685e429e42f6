//! Complex special functions.

pub mod argtrack;
pub mod chi;
pub mod expint;
pub mod gamma;

pub use argtrack::{principal_arg, track_arg, BranchTrackedArg, TrackOptions};
pub use chi::{arg_psi_line, arg_psi_line_prime, chi, psi_factor, theta, theta_prime};
pub use expint::{e1, e2, f2, f2_from_above, EULER_GAMMA};
pub use gamma::{digamma, log_gamma};
