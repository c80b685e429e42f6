//! The weighted finite Euler product P_X(s) = exp(Σ Λ_X(n) n^{−s}/log n),
//! its phase on the critical line, the pole-corrected P_X* and the twist by a
//! Dirichlet character.

use num_complex::Complex64;

use crate::arith::{Character, WeightTable};
use crate::error::{Error, Result};
use crate::specfun::{f2, f2_from_above};
use crate::sum::par_pairwise_sum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductEvaluation {
    pub value: Complex64,
    /// Computed directly from the defining sum, so its imaginary part is the
    /// canonical argument.
    pub log_value: Complex64,
    pub x: f64,
}

impl ProductEvaluation {
    fn from_log(log_value: Complex64, x: f64) -> Self {
        ProductEvaluation { value: log_value.exp(), log_value, x }
    }
}

#[inline]
fn term(table: &WeightTable, i: usize, s: Complex64) -> Complex64 {
    let ln = table.ln_n[i];
    let mag = table.w[i] * (-s.re * ln).exp() / ln;
    Complex64::from_polar(mag, -s.im * ln)
}

/// Σ Λ_X(n) n^{−s} / log n.
pub fn log_p_x(s: Complex64, table: &WeightTable) -> Complex64 {
    par_pairwise_sum(table.len(), |i| term(table, i, s))
}

pub fn p_x(s: Complex64, table: &WeightTable) -> ProductEvaluation {
    ProductEvaluation::from_log(log_p_x(s, table), table.x())
}

/// f_X(t) = Σ Λ_X(n) sin(t log n)/(√n log n) = −arg P_X(1/2+it).
pub fn f_x(t: f64, table: &WeightTable) -> f64 {
    par_pairwise_sum(table.len(), |i| {
        let ln = table.ln_n[i];
        table.w[i] * table.inv_sqrt_n[i] * (t * ln).sin() / ln
    })
}

/// f_X′(t) = Σ Λ_X(n) cos(t log n)/√n.
pub fn f_x_prime(t: f64, table: &WeightTable) -> f64 {
    par_pairwise_sum(table.len(), |i| table.w[i] * table.inv_sqrt_n[i] * (t * table.ln_n[i]).cos())
}

#[derive(Clone, Copy, Default)]
struct Pair(f64, f64);

impl std::ops::Add for Pair {
    type Output = Pair;
    fn add(self, o: Pair) -> Pair {
        Pair(self.0 + o.0, self.1 + o.1)
    }
}

/// (f_X(t), f_X′(t)) in one pass.
pub fn f_x_and_prime(t: f64, table: &WeightTable) -> (f64, f64) {
    let Pair(a, b) = par_pairwise_sum(table.len(), |i| {
        let ln = table.ln_n[i];
        let (sn, cs) = (t * ln).sin_cos();
        let c = table.w[i] * table.inv_sqrt_n[i];
        Pair(c * sn / ln, c * cs)
    });
    (a, b)
}

/// P_X*(s) = P_X(s) exp(−F₂((s−1) log X)).
///
/// For real s < 1 the argument of F₂ lies on its cut and the limit from above
/// is used.
pub fn p_x_star(s: Complex64, table: &WeightTable) -> Result<ProductEvaluation> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Domain("P_X* is undefined at s = 1".into()));
    }
    let z = (s - 1.0) * table.log_x();
    let corr = if z.im == 0.0 && z.re < 0.0 { f2_from_above(z)? } else { f2(z)? };
    Ok(ProductEvaluation::from_log(log_p_x(s, table) - corr, table.x()))
}

/// P_X(s,χ) = exp(Σ Λ_X(n) χ(n) n^{−s}/log n). With q = 1 this is P_X itself.
pub fn p_x_chi(s: Complex64, chi: &Character, table: &WeightTable) -> ProductEvaluation {
    if chi.q == 1 {
        return p_x(s, table);
    }
    let log = par_pairwise_sum(table.len(), |i| chi.at(table.n[i]) * term(table, i, s));
    ProductEvaluation::from_log(log, table.x())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{build_weight_table, characters_mod};
    use crate::refzeta::{l_reference, zeta_em};
    use proptest::prelude::*;

    #[test]
    fn two_term_product_at_x2() {
        let t = build_weight_table(2.0).unwrap();
        let l2 = 2f64.ln();
        let l3 = 3f64.ln();
        let w3 = l3 * (2.0 - l3 / l2);
        let want = (l2 / (4.0 * l2) + w3 / (9.0 * l3)).exp();
        let got = p_x(Complex64::new(2.0, 0.0), &t).value;
        assert!((got.re - want).abs() < 1e-15 && got.im == 0.0);
    }

    #[test]
    fn close_to_zeta_for_sigma_three() {
        let t = build_weight_table(50.0).unwrap();
        for im in [0.0, 5.0, 40.0] {
            let s = Complex64::new(3.0, im);
            let z = zeta_em(s).unwrap();
            assert!(((p_x(s, &t).value - z) / z).norm() < 0.02);
        }
    }

    #[test]
    fn phase_identity_on_the_line() {
        let table = build_weight_table(10.0).unwrap();
        for t in [0.0, 3.3, 114.0, 999.0] {
            let pe = p_x(Complex64::new(0.5, t), &table);
            assert!((pe.log_value.im + f_x(t, &table)).abs() < 1e-12);
            assert!((pe.value - pe.log_value.exp()).norm() == 0.0);
            let (a, b) = f_x_and_prime(t, &table);
            assert!((a - f_x(t, &table)).abs() < 1e-13 && (b - f_x_prime(t, &table)).abs() < 1e-13);
        }
        assert_eq!(f_x(0.0, &table), 0.0);
        let at0: f64 = table.entries().map(|(n, w)| w / (n as f64).sqrt()).sum();
        assert!((f_x_prime(0.0, &table) - at0).abs() < 1e-12 && at0 > 0.0);
    }

    #[test]
    fn derivative_converges_at_second_order() {
        let table = build_weight_table(10.0).unwrap();
        let t = 50.0;
        let d = f_x_prime(t, &table);
        let err = |h: f64| ((f_x(t + h, &table) - f_x(t - h, &table)) / (2.0 * h) - d).abs();
        let (e1, e2, e3) = (err(1e-2), err(5e-3), err(2.5e-3));
        assert!(e1 / e2 > 3.5 && e2 / e3 > 3.5, "{e1} {e2} {e3}");
    }

    #[test]
    fn modulus_bound_on_the_line() {
        let table = build_weight_table(10.0).unwrap();
        let bound: f64 = table.entries().map(|(n, w)| w / ((n as f64).sqrt() * (n as f64).ln())).sum();
        let mut t = 0.0;
        while t < 500.0 {
            assert!(p_x(Complex64::new(0.5, t), &table).value.norm() <= bound.exp() * (1.0 + 1e-12));
            t += 1.37;
        }
    }

    #[test]
    fn product_gets_large_left_of_the_line() {
        let table = build_weight_table(20.0).unwrap();
        let mut max: f64 = 0.0;
        let mut t = 0.0;
        while t <= 500.0 {
            max = max.max(p_x(Complex64::new(0.25, t), &table).value.norm());
            t += 0.05;
        }
        assert!(max > 10.0, "max |P_X| = {max}");
    }

    #[test]
    fn star_correction_is_small_high_up() {
        let table = build_weight_table(10.0).unwrap();
        let s = Complex64::new(0.5, 2000.0);
        let r = p_x_star(s, &table).unwrap().value / p_x(s, &table).value;
        assert!((r - 1.0).norm() < 1e-4);
        assert!(p_x_star(Complex64::new(1.0, 0.0), &table).is_err());
        let at_half = p_x_star(Complex64::new(0.5, 0.0), &table).unwrap();
        assert!(at_half.value.re.is_finite() && at_half.value.im.is_finite());
    }

    #[test]
    fn twisted_product() {
        let table = build_weight_table(10.0).unwrap();
        let one = &characters_mod(1).unwrap()[0];
        let s = Complex64::new(0.6, 12.0);
        assert_eq!(p_x_chi(s, one, &table), p_x(s, &table));
        let c5 = characters_mod(5).unwrap();
        let s = Complex64::new(0.5, 7.0);
        let lhs = p_x_chi(s.conj(), &c5[1].conj(), &table).value;
        let rhs = p_x_chi(s, &c5[1], &table).value.conj();
        assert!((lhs - rhs).norm() < 1e-14 * (1.0 + rhs.norm()));
        let t50 = build_weight_table(50.0).unwrap();
        let chi3 = &characters_mod(3).unwrap()[1];
        for im in [0.0, 10.0, 30.0] {
            let s = Complex64::new(3.0, im);
            let l = l_reference(s, chi3).unwrap();
            assert!(((p_x_chi(s, chi3, &t50).value - l) / l).norm() < 0.02);
        }
    }

    proptest! {
        #[test]
        fn conjugate_symmetry(sigma in -1.0f64..3.0, t in 0.01f64..500.0) {
            let table = build_weight_table(10.0).unwrap();
            let s = Complex64::new(sigma, t);
            let a = p_x(s.conj(), &table).value;
            let b = p_x(s, &table).value.conj();
            prop_assert!((a - b).norm() <= 1e-14 * b.norm());
            let a = p_x_star(s.conj(), &table).unwrap().value;
            let b = p_x_star(s, &table).unwrap().value.conj();
            prop_assert!((a - b).norm() <= 1e-12 * b.norm());
        }

        #[test]
        fn f_x_is_odd(t in 0.0f64..2000.0) {
            let table = build_weight_table(10.0).unwrap();
            prop_assert_eq!(f_x(-t, &table), -f_x(t, &table));
        }
    }
}
