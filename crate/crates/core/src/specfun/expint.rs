//! Exponential integrals E₁, E₂ and the zero-sum kernel F₂.
//!
//! `e2` is the integral ∫_z^∞ e^{−w}/w² dw, i.e. the classical E₂(z)/z, so
//! that E₂(z) = e^{−z}/z − E₁(z) and E₂(z) ~ e^{−z}/z² for large |z|.
//!
//! Two regimes: the convergent power series for E₁ when |z| ≤ 4 and a
//! Lentz-evaluated continued fraction beyond. Points close to the negative
//! real axis keep using the series further out, where it has no cancellation
//! and the fraction converges slowly.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SERIES_RADIUS: f64 = 4.0;
const CF_MAX_ITER: usize = 20_000;
const TINY: f64 = 1e-300;

fn check(z: Complex64, name: &str) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite(format!("{name}({z})")));
    }
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Domain(format!("{name} at z = 0")));
    }
    Ok(())
}

fn on_cut(z: Complex64) -> bool {
    z.im == 0.0 && z.re < 0.0
}

/// Places the point on the upper lip of the cut so the principal log picks +iπ.
fn upper_lip(z: Complex64) -> Complex64 {
    if on_cut(z) {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

fn use_series(z: Complex64) -> bool {
    let r = z.norm();
    r <= SERIES_RADIUS || (z.re < 0.0 && z.im.abs() <= 1.0 && r <= 40.0)
}

/// Σ_{k≥1} (−z)^k / (k·k!)
fn e1_tail_series(z: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..400 {
        let kf = k as f64;
        term *= -z / kf;
        let add = term / kf;
        sum += add;
        if add.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

fn e1_series(z: Complex64) -> Complex64 {
    -EULER_GAMMA - z.ln() - e1_tail_series(z)
}

/// Continued fraction for ∫_1^∞ e^{−zu} u^{−n} du (n = 1, 2), modified Lentz.
fn en_continued_fraction(z: Complex64, n: u32) -> Result<Complex64> {
    let nf = n as f64;
    let mut b = z + nf;
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..CF_MAX_ITER {
        let fi = i as f64;
        let an = -fi * (nf - 1.0 + fi);
        b += 2.0;
        d = an * d + b;
        if d.norm() < TINY {
            d = Complex64::new(TINY, 0.0);
        }
        d = 1.0 / d;
        c = b + an / c;
        if c.norm() < TINY {
            c = Complex64::new(TINY, 0.0);
        }
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            return Ok(h * (-z).exp());
        }
    }
    Err(Error::NonFinite(format!("continued fraction for E_{n}({z}) did not converge")))
}

fn e1_unchecked(z: Complex64) -> Result<Complex64> {
    if use_series(z) {
        Ok(e1_series(z))
    } else {
        en_continued_fraction(z, 1)
    }
}

fn e2_unchecked(z: Complex64) -> Result<Complex64> {
    if use_series(z) {
        Ok((-z).exp() / z - e1_series(z))
    } else {
        Ok(en_continued_fraction(z, 2)? / z)
    }
}

/// E₁(z) = ∫_z^∞ e^{−w}/w dw on the principal branch.
pub fn e1(z: Complex64) -> Result<Complex64> {
    check(z, "e1")?;
    if on_cut(z) {
        return Err(Error::Domain(format!("e1 on the branch cut at {z}")));
    }
    e1_unchecked(z)
}

/// E₂(z) = ∫_z^∞ e^{−w}/w² dw on the principal branch.
pub fn e2(z: Complex64) -> Result<Complex64> {
    check(z, "e2")?;
    if on_cut(z) {
        return Err(Error::Domain(format!("e2 on the branch cut at {z}")));
    }
    e2_unchecked(z)
}

/// F₂(z) = 2E₂(2z) − E₂(z).
///
/// For |z| ≤ 2 the 1/z poles of the two terms are cancelled analytically:
/// F₂(z) = −e^{−z}(1−e^{−z})/z + γ + log 4z + 2Σ(−2z)^k/(k·k!) − Σ(−z)^k/(k·k!).
pub fn f2(z: Complex64) -> Result<Complex64> {
    check(z, "f2")?;
    if on_cut(z) {
        return Err(Error::Domain(format!("f2 on the branch cut at {z}")));
    }
    f2_unchecked(z)
}

/// F₂ with points of the negative real axis read as limits from above.
pub fn f2_from_above(z: Complex64) -> Result<Complex64> {
    check(z, "f2")?;
    f2_unchecked(upper_lip(z))
}

fn f2_unchecked(z: Complex64) -> Result<Complex64> {
    if z.norm() <= 0.5 * SERIES_RADIUS {
        let ez = (-z).exp();
        let one_minus = -exp_m1(-z);
        let pole_part = -ez * one_minus / z;
        let four_z = 4.0 * z;
        let log4z = Complex64::new(four_z.norm().ln(), four_z.im.atan2(four_z.re));
        Ok(pole_part + EULER_GAMMA + log4z + 2.0 * e1_tail_series(2.0 * z) - e1_tail_series(z))
    } else {
        Ok(2.0 * e2_unchecked(2.0 * z)? - e2_unchecked(z)?)
    }
}

/// e^z − 1 without cancellation for small |z|.
pub(crate) fn exp_m1(z: Complex64) -> Complex64 {
    if z.norm() < 0.5 {
        let mut term = z;
        let mut sum = z;
        for k in 2..40 {
            term *= z / k as f64;
            sum += term;
            if term.norm() < 1e-18 * sum.norm() {
                break;
            }
        }
        sum
    } else {
        z.exp() - 1.0
    }
}
