//! ζ_X, ζ_X* and their phases F_X, F_X* on the critical line.

use num_complex::Complex64;

use crate::arith::WeightTable;
use crate::error::{Error, Result};
use crate::eulerprod::{f_x, f_x_and_prime, p_x, p_x_star};
use crate::specfun::{chi, f2, theta, theta_prime};

/// Smallest height used for counting; above it |χ(s)| = 1 only on σ = 1/2.
pub const C0: f64 = 6.3;

/// ζ_X(s) = P_X(s) + χ(s)·conj(P_X(s)).
pub fn zeta_x(s: Complex64, table: &WeightTable) -> Result<Complex64> {
    let p = p_x(s, table).value;
    Ok(p + chi(s)? * p.conj())
}

/// ζ_X*(s) = P_X*(s) + χ(s)·conj(P_X*(s)).
pub fn zeta_x_star(s: Complex64, table: &WeightTable) -> Result<Complex64> {
    let p = p_x_star(s, table)?.value;
    Ok(p + chi(s)? * p.conj())
}

/// F_X(t) = 2θ(t) − 2f_X(t).
pub fn big_f_x(t: f64, table: &WeightTable) -> f64 {
    2.0 * theta(t) - 2.0 * f_x(t, table)
}

/// (F_X(t), F_X′(t)).
pub fn big_f_x_and_prime(t: f64, table: &WeightTable) -> (f64, f64) {
    let (f, fp) = f_x_and_prime(t, table);
    (2.0 * theta(t) - 2.0 * f, 2.0 * theta_prime(t) - 2.0 * fp)
}

pub fn big_f_x_prime(t: f64, table: &WeightTable) -> f64 {
    big_f_x_and_prime(t, table).1
}

/// F₂((−1/2+it) log X), the pole correction entering F_X*.
fn pole_kernel(t: f64, log_x: f64) -> Result<Complex64> {
    f2(Complex64::new(-0.5, t) * log_x)
}

/// F_X*(t) = F_X(t) − 2 Im F₂((−1/2+it) log X), t > 0.
pub fn f_x_star_phase(t: f64, table: &WeightTable) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("F_X* needs t > 0, got {t}")));
    }
    Ok(big_f_x(t, table) - 2.0 * pole_kernel(t, table.log_x())?.im)
}

/// (F_X*(t), F_X*′(t)), using F₂′(z) = (e^{−z} − e^{−2z})/z².
pub fn f_x_star_and_prime(t: f64, table: &WeightTable) -> Result<(f64, f64)> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("F_X* needs t > 0, got {t}")));
    }
    let l = table.log_x();
    let (f, fp) = big_f_x_and_prime(t, table);
    let z = Complex64::new(-0.5, t) * l;
    let k = pole_kernel(t, l)?;
    let dk = ((-z).exp() - (-2.0 * z).exp()) / (z * z);
    Ok((f - 2.0 * k.im, fp - 2.0 * l * dk.re))
}

/// t/2π·log(t/2π) − t/2π − f_X(t)/π.
pub fn count_formula(t: f64, table: &WeightTable) -> f64 {
    let u = t / (2.0 * std::f64::consts::PI);
    u * u.ln() - u - f_x(t, table) / std::f64::consts::PI
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub t: f64,
    pub f: f64,
    pub fstar: f64,
}

pub fn phase_point(t: f64, table: &WeightTable) -> Result<PhasePoint> {
    Ok(PhasePoint { t, f: big_f_x(t, table), fstar: f_x_star_phase(t, table)? })
}
