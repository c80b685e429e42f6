//! The functional-equation factors χ(s) and Ψ(s), and their phases on the line.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::{digamma, log_gamma};
use crate::error::{Error, Result};

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// (π/q)^{s−1/2} Γ((1+a−s)/2)/Γ((a+s)/2), assembled in log space.
fn gamma_ratio_factor(s: Complex64, q: u64, parity: u8, name: &str) -> Result<Complex64> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::NonFinite(format!("{name}({s})")));
    }
    let a = parity as f64;
    let num = (1.0 + a - s) * 0.5;
    let den = (a + s) * 0.5;
    if is_nonpositive_integer(num) {
        return Err(Error::Pole(format!("{name} at s = {s}")));
    }
    if is_nonpositive_integer(den) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let log_val = (s - 0.5) * (PI / q as f64).ln() + log_gamma(num)? - log_gamma(den)?;
    Ok(log_val.exp())
}

/// χ(s) = π^{s−1/2} Γ((1−s)/2)/Γ(s/2), so that ζ(s) = χ(s)ζ(1−s).
pub fn chi(s: Complex64) -> Result<Complex64> {
    gamma_ratio_factor(s, 1, 0, "chi")
}

/// Ψ(s) = (π/q)^{s−1/2} Γ((1+𝔞−s)/2)/Γ((𝔞+s)/2).
pub fn psi_factor(s: Complex64, q: u64, parity: u8) -> Result<Complex64> {
    if q == 0 || parity > 1 {
        return Err(Error::Domain(format!(
            "psi_factor needs q >= 1 and parity in {{0,1}}, got q={q}, parity={parity}"
        )));
    }
    gamma_ratio_factor(s, q, parity, "psi_factor")
}

/// Riemann–Siegel theta, θ(t) = Im log Γ(1/4 + it/2) − (t/2) log π.
///
/// Continuous in t with θ(0) = 0 and −arg χ(1/2+it) = 2θ(t).
pub fn theta(t: f64) -> f64 {
    let lg = log_gamma(Complex64::new(0.25, 0.5 * t)).expect("1/4 + it/2 is never a pole");
    lg.im - 0.5 * t * PI.ln()
}

/// θ′(t) = ½ Re ψ(1/4 + it/2) − ½ log π.
pub fn theta_prime(t: f64) -> f64 {
    let d = digamma(Complex64::new(0.25, 0.5 * t)).expect("1/4 + it/2 is never a pole");
    0.5 * d.re - 0.5 * PI.ln()
}

/// Continuous arg Ψ(1/2+it) = t log(π/q) − 2 Im log Γ((𝔞+1/2)/2 + it/2), zero at t = 0.
pub fn arg_psi_line(t: f64, q: u64, parity: u8) -> f64 {
    let z = Complex64::new((parity as f64 + 0.5) * 0.5, 0.5 * t);
    let lg = log_gamma(z).expect("Re > 0, never a pole");
    t * (PI / q as f64).ln() - 2.0 * lg.im
}

/// d/dt arg Ψ(1/2+it).
pub fn arg_psi_line_prime(t: f64, q: u64, parity: u8) -> f64 {
    let z = Complex64::new((parity as f64 + 0.5) * 0.5, 0.5 * t);
    let d = digamma(z).expect("Re > 0, never a pole");
    (PI / q as f64).ln() - d.re
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_at_half_is_one() {
        let v = chi(Complex64::new(0.5, 0.0)).unwrap();
        assert!((v - 1.0).norm() < 1e-15);
    }

    #[test]
    fn reflection_product_is_one() {
        for &s in &[Complex64::new(0.3, 2.0), Complex64::new(-0.8, 40.0), Complex64::new(1.7, -9.0)] {
            let p = chi(s).unwrap() * chi(1.0 - s).unwrap();
            assert!((p - 1.0).norm() < 1e-12, "s={s}: {p}");
        }
    }

    #[test]
    fn chi_at_two_is_closed_form() {
        // χ(2) = π^{3/2} Γ(−1/2) = −2π²
        let v = chi(Complex64::new(2.0, 0.0)).unwrap();
        assert!((v.re + 2.0 * PI * PI).abs() < 1e-12);
        assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn poles_and_trivial_zeros() {
        for p in [1.0, 3.0, 5.0] {
            assert!(matches!(chi(Complex64::new(p, 0.0)), Err(Error::Pole(_))));
        }
        assert_eq!(chi(Complex64::new(0.0, 0.0)).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(chi(Complex64::new(-2.0, 0.0)).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn unit_modulus_on_the_line() {
        let mut t = 0.0;
        while t < 3000.0 {
            let m = chi(Complex64::new(0.5, t)).unwrap().norm();
            assert!((m - 1.0).abs() < 1e-12, "t={t}: {m}");
            t += 7.3;
        }
    }

    #[test]
    fn theta_phase_identity() {
        for t in [5.0, 14.1, 100.0, 1000.0, 5000.0] {
            let r = chi(Complex64::new(0.5, t)).unwrap() * Complex64::from_polar(1.0, 2.0 * theta(t));
            assert!((r - 1.0).norm() < 1e-10, "t={t}");
        }
    }

    #[test]
    fn theta_asymptotics_and_continuity() {
        let t: f64 = 100.0;
        let asym = 0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0;
        assert!((theta(t) - asym).abs() < 2e-3);
        assert_eq!(theta(0.0), 0.0);
        assert!((theta(1e-9) - theta(0.0)).abs() < 1e-8);
    }

    #[test]
    fn theta_prime_matches_finite_difference() {
        for t in [3.0, 17.5, 200.0, 1500.0] {
            let h = 1e-4;
            let fd = (theta(t + h) - theta(t - h)) / (2.0 * h);
            assert!((fd - theta_prime(t)).abs() < 1e-7, "t={t}");
        }
    }

    #[test]
    fn psi_reduces_to_chi() {
        let s = Complex64::new(0.7, 8.0);
        assert!((psi_factor(s, 1, 0).unwrap() - chi(s).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn psi_has_unit_modulus_on_the_line() {
        for q in [3, 5, 7] {
            for a in [0, 1] {
                for t in [3.0, 30.0] {
                    let m = psi_factor(Complex64::new(0.5, t), q, a).unwrap().norm();
                    assert!((m - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn psi_q5_odd_matches_stirling_oracle() {
        // Independent route: Stirling series for both Γ's with an upward shift.
        fn stirling(z: Complex64) -> Complex64 {
            let mut z = z;
            let mut shift = Complex64::new(0.0, 0.0);
            while z.norm() < 25.0 {
                shift += z.ln();
                z += 1.0;
            }
            let inv = 1.0 / z;
            let inv3 = inv * inv * inv;
            (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + inv / 12.0 - inv3 / 360.0 + inv3 * inv * inv / 1260.0
                - shift
        }
        let s = Complex64::new(0.5, 10.0);
        let lv = (s - 0.5) * (PI / 5.0).ln() + stirling((2.0 - s) * 0.5) - stirling((1.0 + s) * 0.5);
        let want = lv.exp();
        let got = psi_factor(s, 5, 1).unwrap();
        assert!((got - want).norm() < 1e-10, "{got} vs {want}");
    }

    #[test]
    fn arg_psi_line_matches_factor_and_is_continuous() {
        let t = 37.0;
        let w = psi_factor(Complex64::new(0.5, t), 5, 1).unwrap();
        let a = arg_psi_line(t, 5, 1);
        assert!((Complex64::from_polar(1.0, a) - w).norm() < 1e-11);
        let h = 1e-4;
        let fd = (arg_psi_line(t + h, 5, 1) - arg_psi_line(t - h, 5, 1)) / (2.0 * h);
        assert!((fd - arg_psi_line_prime(t, 5, 1)).abs() < 1e-7);
        // asymptotic shape −t log(tq/2π) + t − c₀
        let c = |t: f64| -arg_psi_line(t, 5, 1) - t * (t * 5.0 / (2.0 * PI)).ln() + t;
        assert!((c(1000.0) - c(2000.0)).abs() < 1e-3);
    }

    #[test]
    fn modulus_off_the_line_above_c0() {
        let mut t = 6.3;
        while t <= 100.0 {
            for s in [0.6, 0.75, 0.9] {
                assert!(chi(Complex64::new(s, t)).unwrap().norm() < 1.0);
            }
            for s in [0.1, 0.25, 0.4] {
                assert!(chi(Complex64::new(s, t)).unwrap().norm() > 1.0);
            }
            t += 0.1;
        }
    }

    #[test]
    fn theta_increases_beyond_ten() {
        let mut t = 10.0;
        while t < 3000.0 {
            assert!(theta(t + 0.01) > theta(t));
            t += 3.7;
        }
    }
}
