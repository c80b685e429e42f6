//! Reference evaluators for ζ(s), Hurwitz ζ(s,a) and L(s,χ).

use num_complex::Complex64;

use crate::arith::Character;
use crate::error::{Error, Result};
use crate::specfun::chi;
use crate::specfun::expint::exp_m1;
use crate::sum::pairwise_sum;

/// B_{2k}/(2k)! for k = 1..=15.
const BERNOULLI_OVER_FACTORIAL: [f64; 15] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43_867.0 / 798.0 / 6_402_373_705_728_000.0,
    -174_611.0 / 330.0 / 2_432_902_008_176_640_000.0,
    854_513.0 / 138.0 / 1.124_000_727_777_607_7e21,
    -236_364_091.0 / 2730.0 / 6.204_484_017_332_394e23,
    8_553_103.0 / 6.0 / 4.032_914_611_266_056_3e26,
    -23_749_461_029.0 / 870.0 / 3.048_883_446_117_138_4e29,
    8_615_841_276_005.0 / 14_322.0 / 2.652_528_598_121_910_6e32,
];

const POLE_RADIUS: f64 = 0.1;

/// Number of summed terms for height t.
pub fn em_terms(t: f64) -> usize {
    50usize.max((3.0 * t.abs()).ceil() as usize)
}

/// Σ_k B_{2k}/(2k)! · s(s+1)…(s+2k−2) · v^{−s−2k+1}, with v^{−s} supplied.
fn bernoulli_tail(s: Complex64, v: f64, v_pow_minus_s: Complex64) -> Complex64 {
    let inv_v = 1.0 / v;
    let mut rising = s; // s(s+1)…(s+2k−2)
    let mut pw = v_pow_minus_s * inv_v;
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, &b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        acc += b * rising * pw;
        let j = 2.0 * k as f64;
        rising *= (s + j + 1.0) * (s + j + 2.0);
        pw *= inv_v * inv_v;
    }
    acc
}

fn pow_minus(n: f64, ln_n: f64, s: Complex64) -> Complex64 {
    Complex64::from_polar(n.powf(-s.re), -s.im * ln_n)
}

/// (s−1)ζ(s) by Euler–Maclaurin; entire, so usable through the pole disk.
pub(crate) fn zeta_em_pole_free(s: Complex64) -> Complex64 {
    let n = em_terms(s.im);
    let head: Complex64 = pairwise_sum(n - 1, |i| {
        let k = (i + 1) as f64;
        pow_minus(k, k.ln(), s)
    });
    let nf = n as f64;
    let n_s = pow_minus(nf, nf.ln(), s);
    let tail = n_s * 0.5 + bernoulli_tail(s, nf, n_s);
    (s - 1.0) * (head + tail) + n_s * nf
}

/// ζ(s) by Euler–Maclaurin summation with N = max(50, ⌈3|t|⌉) terms and
/// corrections through B₃₀.
pub fn zeta_em(s: Complex64) -> Result<Complex64> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::NonFinite(format!("zeta_em({s})")));
    }
    if (s - 1.0).norm() <= POLE_RADIUS {
        return Err(Error::NearPole(format!("{s}")));
    }
    if s.re < -2.0 {
        // ζ(s) = χ(s)ζ(1−s)
        return Ok(chi(s)? * zeta_em(1.0 - s)?);
    }
    let n = em_terms(s.im);
    let head: Complex64 = pairwise_sum(n - 1, |i| {
        let k = (i + 1) as f64;
        pow_minus(k, k.ln(), s)
    });
    let nf = n as f64;
    let n_s = pow_minus(nf, nf.ln(), s);
    Ok(head + n_s * nf / (s - 1.0) + n_s * 0.5 + bernoulli_tail(s, nf, n_s))
}

/// Σ_{n≤X} n^{−s}.
pub fn dirichlet_partial_sum(s: Complex64, x: u64) -> Complex64 {
    pairwise_sum(x as usize, |i| {
        let k = (i + 1) as f64;
        pow_minus(k, k.ln(), s)
    })
}

/// Σ_{n≤X₀} n^{−s} + χ(s) Σ_{n≤t/2πX₀} n^{s−1} with X₀ = √(t/2π).
pub fn zeta_afe(s: Complex64) -> Result<Complex64> {
    if !(0.0..=1.0).contains(&s.re) || s.im < 10.0 {
        return Err(Error::Domain(format!("zeta_afe needs 0 <= sigma <= 1 and t >= 10, got {s}")));
    }
    let t = s.im;
    let x0 = (t / (2.0 * std::f64::consts::PI)).sqrt();
    let y0 = t / (2.0 * std::f64::consts::PI * x0);
    let first = dirichlet_partial_sum(s, x0.floor() as u64);
    let second = dirichlet_partial_sum(1.0 - s, y0.floor() as u64);
    Ok(first + chi(s)? * second)
}

/// Scale of the approximate-functional-equation error, X₀^{−σ} + t^{−1/2} X₀^{1−σ}.
pub fn afe_error_scale(s: Complex64) -> f64 {
    let x0 = (s.im / (2.0 * std::f64::consts::PI)).sqrt();
    x0.powf(-s.re) + s.im.powf(-0.5) * x0.powf(1.0 - s.re)
}

/// Hurwitz ζ(s,a) for 0 < a ≤ 1 with N terms, returning the regular part
/// and the pole term (N+a)^{1−s}/(s−1) separately.
fn hurwitz_parts(s: Complex64, a: f64, n: usize) -> (Complex64, f64) {
    let head: Complex64 = pairwise_sum(n, |i| {
        let v = i as f64 + a;
        pow_minus(v, v.ln(), s)
    });
    let v = n as f64 + a;
    let v_s = pow_minus(v, v.ln(), s);
    (head + v_s * 0.5 + bernoulli_tail(s, v, v_s), v)
}

/// ζ(s,a) = Σ_{n≥0} (n+a)^{−s}, 0 < a ≤ 1.
pub fn hurwitz(s: Complex64, a: f64) -> Result<Complex64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::Domain(format!("hurwitz needs 0 < a <= 1, got {a}")));
    }
    if (s - 1.0).norm() <= POLE_RADIUS {
        return Err(Error::NearPole(format!("{s}")));
    }
    let (reg, v) = hurwitz_parts(s, a, em_terms(s.im));
    Ok(reg + pow_minus(v, v.ln(), s) * v / (s - 1.0))
}

/// (e^w − 1)/w, regular at w = 0.
fn exprel(w: Complex64) -> Complex64 {
    if w.norm() < 1e-300 {
        return Complex64::new(1.0, 0.0);
    }
    exp_m1(w) / w
}

/// L(s,χ) = q^{−s} Σ_a χ(a) ζ(s, a/q).
///
/// For non-principal χ the Hurwitz pole terms cancel; they are combined as
/// −Σ χ(a) log v_a · (e^{(1−s)log v_a} − 1)/((1−s) log v_a), which stays
/// accurate through s = 1.
pub fn l_reference(s: Complex64, chi_: &Character) -> Result<Complex64> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::NonFinite(format!("l_reference({s})")));
    }
    let q = chi_.q;
    let principal = chi_.values.iter().all(|v| v.norm() == 0.0 || (*v - 1.0).norm() < 1e-12);
    if principal && (s - 1.0).norm() <= POLE_RADIUS {
        return Err(Error::NearPole(format!("{s}")));
    }
    let n = 50usize.max((3.0 * s.im.abs() / q as f64).ceil() as usize);
    let qf = q as f64;
    let mut regular = Complex64::new(0.0, 0.0);
    let mut pole = Complex64::new(0.0, 0.0);
    let w = 1.0 - s;
    for a in 1..=q {
        let c = chi_.at(a);
        if c.norm() == 0.0 {
            continue;
        }
        let (reg, v) = hurwitz_parts(s, a as f64 / qf, n);
        regular += c * reg;
        let lv = v.ln();
        if principal {
            pole += c * (w * lv).exp() / (s - 1.0);
        } else {
            pole -= c * lv * exprel(w * lv);
        }
    }
    let q_s = pow_minus(qf, qf.ln(), s);
    Ok(q_s * (regular + pole))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::characters_mod;
    use crate::specfun::psi_factor;
    use std::f64::consts::PI;

    /// Borwein's alternating-series algorithm; independent of Euler–Maclaurin.
    fn zeta_borwein(s: Complex64, n: usize) -> Complex64 {
        let mut d = vec![0.0f64; n + 1];
        let mut term = 1.0 / n as f64; // i = 0: (n−1)!/(n! 0!) = 1/n
        let mut acc = term;
        d[0] = n as f64 * acc;
        for i in 1..=n {
            let fi = i as f64;
            let nf = n as f64;
            term *= 4.0 * (nf + fi - 1.0) * (nf - fi + 1.0) / ((2.0 * fi - 1.0) * (2.0 * fi));
            acc += term;
            d[i] = nf * acc;
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 0..n {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let kk = (k + 1) as f64;
            sum += sign * (d[k] - d[n]) * pow_minus(kk, kk.ln(), s);
        }
        let two = Complex64::new(2.0, 0.0);
        -sum / (d[n] * (1.0 - two.powc(1.0 - s)))
    }

    #[test]
    fn zeta_two_and_half() {
        let z2 = zeta_em(Complex64::new(2.0, 0.0)).unwrap();
        assert!((z2.re - PI * PI / 6.0).abs() < 1e-10);
        let zh = zeta_em(Complex64::new(0.5, 0.0)).unwrap();
        let oracle = zeta_borwein(Complex64::new(0.5, 0.0), 60);
        assert!((zh - oracle).norm() < 1e-12);
        assert!((zh.re + 1.460_354_5).abs() < 1e-7);
    }

    #[test]
    fn agrees_with_alternating_series_oracle() {
        for &s in &[
            Complex64::new(0.3, 2.0),
            Complex64::new(0.5, 8.0),
            Complex64::new(-1.5, 3.0),
            Complex64::new(1.2, 0.05),
            Complex64::new(3.0, -7.0),
        ] {
            let a = zeta_em(s).unwrap();
            let b = zeta_borwein(s, 80);
            assert!((a - b).norm() < 1e-10 * (1.0 + b.norm()), "s={s}: {a} vs {b}");
        }
    }

    #[test]
    fn first_zero_is_small() {
        let v = zeta_em(Complex64::new(0.5, 14.134_725_141_734_693)).unwrap();
        assert!(v.norm() < 1e-5);
    }

    #[test]
    fn pole_disk_is_rejected() {
        assert!(matches!(zeta_em(Complex64::new(1.05, 0.0)), Err(Error::NearPole(_))));
        assert!(zeta_em(Complex64::new(1.0, 0.11)).is_ok());
    }

    #[test]
    fn pole_free_form_matches() {
        let s = Complex64::new(0.7, 3.0);
        let a = zeta_em_pole_free(s);
        let b = (s - 1.0) * zeta_em(s).unwrap();
        assert!((a - b).norm() < 1e-12);
        // near s=1, (s−1)ζ(s) → 1
        let c = zeta_em_pole_free(Complex64::new(1.0, 1e-8));
        assert!((c - 1.0).norm() < 1e-7);
    }

    #[test]
    fn functional_equation_far_left_uses_reflection() {
        let s = Complex64::new(-3.0, 5.0);
        let direct = zeta_borwein(s, 120);
        let v = zeta_em(s).unwrap();
        assert!((v - direct).norm() < 1e-8 * (1.0 + direct.norm()));
    }

    #[test]
    fn afe_errors_stay_within_the_error_scale() {
        for &s in &[Complex64::new(0.5, 100.0), Complex64::new(0.5, 2000.0), Complex64::new(0.75, 50.0)] {
            let diff = (zeta_afe(s).unwrap() - zeta_em(s).unwrap()).norm();
            assert!(diff < afe_error_scale(s), "s={s}: {diff} vs {}", afe_error_scale(s));
        }
        assert!(zeta_afe(Complex64::new(1.5, 50.0)).is_err());
        assert!(zeta_afe(Complex64::new(0.5, 5.0)).is_err());
    }

    #[test]
    fn hurwitz_at_one_is_zeta() {
        let s = Complex64::new(0.7, 9.0);
        assert!((hurwitz(s, 1.0).unwrap() - zeta_em(s).unwrap()).norm() < 1e-10);
        // ζ(s,1/2) = (2^s − 1)ζ(s)
        let two_s = Complex64::new(2.0, 0.0).powc(s);
        let want = (two_s - 1.0) * zeta_em(s).unwrap();
        assert!((hurwitz(s, 0.5).unwrap() - want).norm() < 1e-10);
    }

    #[test]
    fn l_reference_reductions() {
        let one = &characters_mod(1).unwrap()[0];
        let s = Complex64::new(0.7, 9.0);
        assert!((l_reference(s, one).unwrap() - zeta_em(s).unwrap()).norm() < 1e-10);
        let chi3 = &characters_mod(3).unwrap()[1];
        let v = l_reference(Complex64::new(1.0, 0.0), chi3).unwrap();
        assert!((v.re - PI / (3.0 * 3f64.sqrt())).abs() < 1e-12);
        assert!((v.re - 0.604_599_8).abs() < 1e-7);
        let prin3 = &characters_mod(3).unwrap()[0];
        assert!(l_reference(Complex64::new(1.0, 0.0), prin3).is_err());
    }

    #[test]
    fn l_functional_equation_mod_5() {
        let s = Complex64::new(0.5, 10.0);
        for c in characters_mod(5).unwrap().iter().skip(1) {
            let alpha = c.alpha.unwrap();
            let lhs = Complex64::from_polar(1.0, alpha) * l_reference(s, c).unwrap();
            let l_conj = l_reference(1.0 - s.conj(), c).unwrap().conj(); // L(1−s, χ̄)
            let rhs = Complex64::from_polar(1.0, -alpha) * psi_factor(s, 5, c.parity).unwrap() * l_conj;
            assert!((lhs - rhs).norm() < 1e-8, "k={}", c.index);
        }
    }

    #[test]
    fn l_functional_equation_off_the_line() {
        for q in [3u64, 4, 7, 8] {
            for c in characters_mod(q).unwrap().iter().filter(|c| c.primitive) {
                let s = Complex64::new(0.2, 6.5);
                let lhs = l_reference(s, c).unwrap();
                let eps = Complex64::from_polar(1.0, -2.0 * c.alpha.unwrap());
                let rhs = eps * psi_factor(s, q, c.parity).unwrap() * l_reference(1.0 - s.conj(), c).unwrap().conj();
                assert!((lhs - rhs).norm() < 1e-9 * (1.0 + lhs.norm()), "q={q} k={}", c.index);
            }
        }
    }
}
