//! The zero-side factor Z_X(s) = exp(Σ_ρ F₂((s−ρ) log X) − F₂((s−1) log X)),
//! truncated to the first M cached ordinates, and the congruence diagnostic
//! linking F_X* to N(t).

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::arith::WeightTable;
use crate::error::{Error, Result};
use crate::refzeta::{n_of_t, ZeroCache};
use crate::specfun::{f2, f2_from_above};
use crate::sum::pairwise_sum;

use super::model::f_x_star_phase;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZFactor {
    pub value: Complex64,
    pub log_value: Complex64,
    /// Bound on |log_value − log Z_X(s)| from the zeros beyond the M-th.
    pub tail_bound: f64,
    pub terms: usize,
}

fn kernel(z: Complex64, t: f64) -> Result<Complex64> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Convention(t));
    }
    if z.im == 0.0 && z.re < 0.0 {
        f2_from_above(z)
    } else {
        f2(z)
    }
}

/// Σ over ρ = 1/2 ± iγ of F₂((s−ρ)L) for the first m ordinates.
fn zero_sum(s: Complex64, ordinates: &[f64], l: f64) -> Result<Complex64> {
    let terms = ordinates
        .iter()
        .flat_map(|&g| [Complex64::new(0.5, g), Complex64::new(0.5, -g)])
        .map(|rho| kernel((s - rho) * l, s.im))
        .collect::<Result<Vec<_>>>()?;
    Ok(pairwise_sum(terms.len(), |i| terms[i]))
}

fn take(zeros: &ZeroCache, m: usize) -> Result<&[f64]> {
    if m == 0 || m > zeros.len() {
        return Err(Error::Domain(format!("M must lie in 1..={}, got {m}", zeros.len())));
    }
    Ok(&zeros.ordinates[..m])
}

/// Tail of the zero sum past γ_M, from |F₂(z)| ≤ (e^{−Re z} + e^{−2Re z}/2)/|z|²
/// for Re z ≥ 0 and the zero density (1/2π) log(u/2π).
fn tail_bound(s: Complex64, l: f64, gamma_m: f64) -> f64 {
    let t = s.im.abs();
    if gamma_m <= t {
        return f64::INFINITY;
    }
    let a = s.re - 0.5;
    let weight = (-a * l).exp() + 0.5 * (-2.0 * a * l).exp();
    let density = ((gamma_m / (2.0 * PI)).ln() + 1.0) / (2.0 * PI * (gamma_m - t));
    2.0 * weight / (l * l) * density
}

/// Z_X(s) truncated to the first `m` zeros of `zeros`, both ±γ.
pub fn z_x_factor(s: Complex64, zeros: &ZeroCache, x: f64, m: usize) -> Result<ZFactor> {
    if !(x >= 2.0 && x.is_finite()) {
        return Err(Error::Domain(format!("X must be >= 2, got {x}")));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Domain("Z_X is undefined at s = 1".into()));
    }
    let ords = take(zeros, m)?;
    let l = x.ln();
    let log_value = zero_sum(s, ords, l)? - kernel((s - 1.0) * l, s.im)?;
    Ok(ZFactor { value: log_value.exp(), log_value, tail_bound: tail_bound(s, l, ords[m - 1]), terms: 2 * m })
}

/// Im Σ over ±γ (first m) of F₂(i(t−γ) log X).
pub fn zero_sum_im(t: f64, zeros: &ZeroCache, log_x: f64, m: usize) -> Result<f64> {
    Ok(zero_sum(Complex64::new(0.5, t), take(zeros, m)?, log_x)?.im)
}

/// F_X*(t)/2π − (N(t) − 1 − (1/π) Im Σ_γ F₂(i(t−γ) log X)).
pub fn congruence_residual(t: f64, table: &WeightTable, zeros: &ZeroCache, m: usize) -> Result<f64> {
    let lhs = f_x_star_phase(t, table)? / (2.0 * PI);
    let n = n_of_t(t)? as f64;
    let sum = zero_sum_im(t, zeros, table.log_x(), m)?;
    Ok(lhs - (n - 1.0 - sum / PI))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::build_weight_table;
    use crate::eulerprod::p_x;
    use crate::refzeta::{find_zeros, zeta_em};
    use std::sync::OnceLock;

    fn cache() -> &'static ZeroCache {
        static C: OnceLock<ZeroCache> = OnceLock::new();
        C.get_or_init(|| find_zeros(0.0, 240.0, 1e-10).unwrap())
    }

    #[test]
    fn close_to_one_far_right() {
        let z = z_x_factor(Complex64::new(2.0, 30.0), cache(), 10.0, 100).unwrap();
        assert!((z.value - 1.0).norm() < 0.05, "{}", z.value);
        assert!(z.tail_bound.is_finite() && z.tail_bound > 0.0);
        assert_eq!(z.terms, 200);
    }

    #[test]
    fn conjugate_symmetry() {
        let s = Complex64::new(0.7, 33.3);
        let a = z_x_factor(s.conj(), cache(), 10.0, 60).unwrap().value;
        let b = z_x_factor(s, cache(), 10.0, 60).unwrap().value.conj();
        assert!((a - b).norm() < 1e-13 * b.norm());
    }

    #[test]
    fn factorization_at_moderate_height() {
        let table = build_weight_table(10.0).unwrap();
        let s = Complex64::new(0.75, 50.0);
        let zeta = zeta_em(s).unwrap();
        let res = |m| {
            let z = z_x_factor(s, cache(), 10.0, m).unwrap();
            ((zeta / (p_x(s, &table).value * z.value)) - 1.0).norm()
        };
        let (coarse, fine) = (res(20), res(cache().len()));
        assert!(fine < coarse && fine < 0.05, "{coarse} {fine}");
    }

    #[test]
    fn exact_ordinate_needs_a_nudge() {
        let g = cache().ordinates[0];
        let err = z_x_factor(Complex64::new(0.5, g), cache(), 10.0, 5).unwrap_err();
        assert!(matches!(err, Error::Convention(_)));
        assert!(z_x_factor(Complex64::new(0.5, g + 1e-9), cache(), 10.0, 5).is_ok());
        assert!(z_x_factor(Complex64::new(2.0, 0.0), cache(), 10.0, cache().len() + 1).is_err());
    }

    #[test]
    fn congruence_between_first_two_zeros() {
        let table = build_weight_table(10.0).unwrap();
        let o = &cache().ordinates;
        let t = 0.5 * (o[0] + o[1]);
        let r = congruence_residual(t, &table, cache(), cache().len()).unwrap();
        assert!(r.abs() < 1e-3, "residual {r}");
    }
}
