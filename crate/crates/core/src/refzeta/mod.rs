//! Reference evaluation of ζ(s) and L(s,χ), S(t), N(t) and critical-line zeros.

pub mod hardy;
pub mod zeros;
pub mod zeta;

pub use hardy::{
    arg_diagnostic, arg_zeta_line, hardy_z, hardy_z_complex, n_of_t, s_of_t, ArgDiagnostic, ORDINATE_NUDGE,
};
pub use zeros::{find_l_zeros, find_zeros, hardy_l, l_zero_count_rect, sign_change_zeros, ZeroCache, MAX_HEIGHT};
pub use zeta::{afe_error_scale, dirichlet_partial_sum, hurwitz, l_reference, zeta_afe, zeta_em};
