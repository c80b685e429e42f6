//! Hardy's Z function, S(t) and the zero counting function N(t).

use num_complex::Complex64;

use super::zeta::{zeta_em, zeta_em_pole_free};
use crate::error::{Error, Result};
use crate::specfun::{principal_arg, theta, track_arg, BranchTrackedArg, TrackOptions};

/// Shift applied when t sits on an ordinate, per the limit-from-above rule.
pub const ORDINATE_NUDGE: f64 = 1e-9;

/// Z(t) = e^{iθ(t)} ζ(1/2+it), real for real t.
pub fn hardy_z(t: f64) -> f64 {
    hardy_z_complex(t).re
}

/// e^{iθ(t)} ζ(1/2+it) before the imaginary residue is discarded.
pub fn hardy_z_complex(t: f64) -> Complex64 {
    let z = zeta_em(Complex64::new(0.5, t)).expect("the critical line avoids the pole disk");
    Complex64::from_polar(1.0, theta(t)) * z
}

fn track_options() -> TrackOptions {
    TrackOptions { initial_step: 0.1, min_step: 1e-13, max_step: 0.1, max_increment: std::f64::consts::FRAC_PI_4 }
}

/// arg ζ(1/2+it) continued along 2 → 2+it → 1/2+it.
///
/// The argument of the entire function (s−1)ζ(s) is tracked along the
/// horizontal leg and the explicit arg(s−1) removed, so the path may pass
/// close to the pole when t is small. At t = 0 the value is the limit from
/// above.
pub fn arg_zeta_line(t: f64) -> Result<BranchTrackedArg> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("arg of zeta needs t >= 0, got {t}")));
    }
    let mut t = t;
    if t > 0.0 && zeta_em(Complex64::new(0.5, t))?.norm() < 1e-10 {
        t += ORDINATE_NUDGE;
    }
    let f = |sigma: f64| Ok(zeta_em_pole_free(Complex64::new(sigma, t)));
    let start_zeta = if t == 0.0 { 0.0 } else { principal_arg(zeta_em(Complex64::new(2.0, t))?) };
    let start = start_zeta + t.atan2(1.0);
    let end = track_arg(f, 2.0, 0.5, start, track_options())?;
    let value = end - t.atan2(-0.5);
    Ok(BranchTrackedArg { value, path: format!("2 -> 2+{t}i -> 1/2+{t}i") })
}

/// S(t) = (1/π) arg ζ(1/2+it).
pub fn s_of_t(t: f64) -> Result<f64> {
    Ok(arg_zeta_line(t)?.value / std::f64::consts::PI)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArgDiagnostic {
    pub t: f64,
    pub s_of_t: f64,
    pub n_of_t: i64,
    /// θ(t)/π + 1 + S(t) before rounding
    pub raw: f64,
}

pub fn arg_diagnostic(t: f64) -> Result<ArgDiagnostic> {
    let s = s_of_t(t)?;
    let raw = theta(t) / std::f64::consts::PI + 1.0 + s;
    let n = raw.round();
    if (raw - n).abs() > 1e-6 {
        return Err(Error::Integrality { t, value: raw });
    }
    Ok(ArgDiagnostic { t, s_of_t: s, n_of_t: n as i64, raw })
}

/// N(t) = θ(t)/π + 1 + S(t), checked to be an integer within 1e−6.
pub fn n_of_t(t: f64) -> Result<i64> {
    Ok(arg_diagnostic(t)?.n_of_t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_at_zero_and_first_bracket() {
        assert!((hardy_z(0.0) + 1.460_354_508_809_586_8).abs() < 1e-10);
        assert!(hardy_z(14.0) * hardy_z(14.3) < 0.0);
    }

    #[test]
    fn z_is_real_and_has_zeta_modulus() {
        let mut t = 0.5;
        while t < 2000.0 {
            let w = hardy_z_complex(t);
            assert!(w.im.abs() < 1e-9, "t={t}: {}", w.im);
            let z = zeta_em(Complex64::new(0.5, t)).unwrap().norm();
            assert!((w.re.abs() - z).abs() < 1e-12 * (1.0 + z));
            t += 37.77;
        }
    }

    #[test]
    fn s_at_zero_is_the_limit_from_above() {
        let s0 = s_of_t(0.0).unwrap();
        assert!((s0 + 1.0).abs() < 1e-12);
        assert_eq!(n_of_t(0.0).unwrap(), 0);
        let s_small = s_of_t(1e-6).unwrap();
        assert!((s_small - s0).abs() < 1e-5);
    }

    #[test]
    fn counts_at_small_heights() {
        assert_eq!(n_of_t(10.0).unwrap(), 0);
        assert_eq!(n_of_t(20.0).unwrap(), 1);
        assert_eq!(n_of_t(100.0).unwrap(), 29);
    }

    #[test]
    fn jump_at_first_zero() {
        let g = 14.134_725_141_734_693;
        let below = s_of_t(g - 1e-4).unwrap();
        let above = s_of_t(g + 1e-4).unwrap();
        assert!((above - below - 1.0).abs() < 1e-2);
        // exact ordinate is read from above
        let at = s_of_t(g).unwrap();
        assert!((at - above).abs() < 1e-2);
    }

    #[test]
    fn slope_between_zeros() {
        // between γ₁ ≈ 14.13 and γ₂ ≈ 21.02
        let (a, b) = (16.0, 19.0);
        let slope = (s_of_t(b).unwrap() - s_of_t(a).unwrap()) / (b - a);
        let t = 0.5 * (a + b);
        let want = -(t / (2.0 * std::f64::consts::PI)).ln() / (2.0 * std::f64::consts::PI);
        assert!((slope - want).abs() < 0.2 * want.abs(), "{slope} vs {want}");
    }
}
