//! Complex log-gamma and digamma.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;

// g = 7, n = 9 (Godfrey).
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Largest distance to the left of the Lanczos region that the upward
/// recurrence is allowed to cover.
const MAX_RECURRENCE: f64 = 1.0e5;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn lanczos_ln_gamma(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut series = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (k, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_TWO_PI + (z + 0.5) * t.ln() - t + series.ln()
}

/// Principal branch of log Γ(z).
///
/// Uses the Lanczos sum for Re z ≥ 1/2. To the left the value is pulled back
/// with log Γ(z) = log Γ(z+m) − Σ log(z+k), which keeps the branch continuous
/// on the cut plane without any 2πi bookkeeping. On the negative real axis
/// the result is the limit from above when `z.im` is `+0.0` and from below
/// when it is `-0.0`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite(format!("log_gamma({z})")));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("log_gamma at {}", z.re)));
    }
    if z.re >= 0.5 {
        return Ok(lanczos_ln_gamma(z));
    }
    if z.re < -MAX_RECURRENCE {
        return Err(Error::Domain(format!("log_gamma: Re z = {} too negative", z.re)));
    }
    let m = (0.5 - z.re).ceil() as usize;
    let mut correction = Complex64::new(0.0, 0.0);
    for k in 0..m {
        correction += (z + k as f64).ln();
    }
    Ok(lanczos_ln_gamma(z + m as f64) - correction)
}

/// cot(w), evaluated through exponentials that stay bounded in both half-planes.
pub(crate) fn cot(w: Complex64) -> Complex64 {
    let i = Complex64::i();
    if w.im >= 0.0 {
        let e = (2.0 * i * w).exp();
        i * (e + 1.0) / (e - 1.0)
    } else {
        let e = (-2.0 * i * w).exp();
        -i * (e + 1.0) / (e - 1.0)
    }
}

// B_{2k} for k = 1..=7
const BERNOULLI_EVEN: [f64; 7] =
    [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0];

/// Digamma ψ(z) = Γ'(z)/Γ(z).
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("digamma at {}", z.re)));
    }
    if z.re < 0.5 {
        // ψ(z) = ψ(1−z) − π cot(πz)
        return Ok(digamma(1.0 - z)? - PI * cot(PI * z));
    }
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.norm() < 12.0 {
        acc -= 1.0 / z;
        z += 1.0;
    }
    let inv2 = 1.0 / (z * z);
    let mut pow = inv2;
    let mut series = Complex64::new(0.0, 0.0);
    for (k, &b) in BERNOULLI_EVEN.iter().enumerate() {
        series += b / (2.0 * (k + 1) as f64) * pow;
        pow *= inv2;
    }
    Ok(acc + z.ln() - 0.5 / z - series)
}
