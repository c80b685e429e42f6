//! The model functions ζ_X and ζ_X*, their zeros on the critical line, the
//! zero-side factor Z_X and the modulus diagnostics between ζ zeros.

pub mod interval;
pub mod model;
pub mod scan;
pub mod zfactor;

pub use interval::{modulus_ratio, ratio_deviation, zero_free_interval_check, IntervalReport, IntervalRow};
pub use model::{
    big_f_x, big_f_x_and_prime, big_f_x_prime, count_formula, f_x_star_and_prime, f_x_star_phase, phase_point, zeta_x,
    zeta_x_star, PhasePoint, C0,
};
pub use scan::{
    n_x, scan_phase, scan_star_zeros, scan_zeros, scan_zeros_from, FxPhase, FxStarPhase, LinePhase, PhaseSample,
    ScanReport, ScanZero, ZeroKind, MULTIPLICITY_THRESHOLD,
};
pub use zfactor::{congruence_residual, z_x_factor, zero_sum_im, ZFactor};
