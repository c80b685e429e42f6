//! Dirichlet analogues L_X(s,χ), linear combinations
//! 𝓛_X(s) = Σ b_j e^{iα_j} L_X(s,χ_j) = 𝓟_X(s) + Ψ(s)·conj(𝓟_X(s)), and the
//! zeros of 𝓛_X on the critical line.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Deserialize;
use std::f64::consts::PI;
use std::ops::Add;

use crate::arith::{characters_mod, Character, WeightTable};
use crate::error::{Error, Result};
use crate::eulerprod::p_x_chi;
use crate::specfun::{arg_psi_line, arg_psi_line_prime, principal_arg, psi_factor, track_arg, TrackOptions};
use crate::sum::par_pairwise_sum;
use crate::zetax::{scan_phase, LinePhase, PhaseSample, ScanZero, C0};

pub const MAX_COMBO_MODULUS: u64 = 100;
/// |𝓟_X(1/2+it)| below this stops the phase.
pub const PRODUCT_ZERO_THRESHOLD: f64 = 1e-12;
/// Refined minima of |𝓟_X(1/2+it)| below this are reported as case-(1) zeros.
pub const CASE1_THRESHOLD: f64 = 1e-6;
const MINIMA_STEP: f64 = 0.01;

fn alpha(chi: &Character) -> Result<f64> {
    chi.alpha.ok_or_else(|| Error::Domain(format!("character q={} index={} is not primitive", chi.q, chi.index)))
}

/// e^{iα}, exactly 1 when α = 0.
fn rotation(alpha: f64) -> Option<Complex64> {
    (alpha != 0.0).then(|| Complex64::from_polar(1.0, alpha))
}

/// L_X(s,χ) = P_X(s,χ) + e^{−2iα}Ψ(s)·conj(P_X(s,χ)).
pub fn l_x(s: Complex64, chi: &Character, table: &WeightTable) -> Result<Complex64> {
    let a = alpha(chi)?;
    let p = p_x_chi(s, chi, table).value;
    let mut psi = psi_factor(s, chi.q, chi.parity)?;
    if let Some(r) = rotation(a) {
        psi *= r.conj() * r.conj();
    }
    Ok(p + psi * p.conj())
}

#[derive(Debug, Clone)]
pub struct ComboTerm {
    pub b: f64,
    pub chi: Character,
}

/// Σ b_j e^{iα_j} L(s,χ_j) over primitive characters sharing q and parity.
#[derive(Debug, Clone)]
pub struct ComboSpec {
    pub q: u64,
    pub parity: u8,
    pub terms: Vec<ComboTerm>,
    /// B = Σ|b_j|
    pub b_total: f64,
    /// B(1) = Σ b_j e^{iα_j}
    pub b1: Complex64,
    /// c₁ = |B(1)|/B
    pub c1: f64,
    /// ω = arg B(1)
    pub omega: f64,
}

#[derive(Deserialize)]
struct TermDoc {
    b: f64,
    char_index: usize,
}

#[derive(Deserialize)]
struct ComboDoc {
    q: u64,
    terms: Vec<TermDoc>,
}

impl ComboSpec {
    pub fn new(terms: Vec<ComboTerm>) -> Result<Self> {
        let first = terms.first().ok_or_else(|| Error::Domain("a combination needs at least one term".into()))?;
        let (q, parity) = (first.chi.q, first.chi.parity);
        if q > MAX_COMBO_MODULUS {
            return Err(Error::Domain(format!("modulus {q} exceeds {MAX_COMBO_MODULUS}")));
        }
        let mut b1 = Complex64::new(0.0, 0.0);
        let mut b_total = 0.0;
        for t in &terms {
            if t.chi.q != q || t.chi.parity != parity {
                return Err(Error::Domain("all characters must share modulus and parity".into()));
            }
            if !(t.b != 0.0 && t.b.is_finite()) {
                return Err(Error::Domain(format!("coefficients must be finite and non-zero, got {}", t.b)));
            }
            b1 += t.b * Complex64::from_polar(1.0, alpha(&t.chi)?);
            b_total += t.b.abs();
        }
        if b1.norm() <= 1e-12 * b_total {
            return Err(Error::Domain("B(1) = 0 is not supported".into()));
        }
        Ok(ComboSpec { q, parity, terms, b_total, b1, c1: b1.norm() / b_total, omega: principal_arg(b1) })
    }

    /// Parses `{"q": 5, "terms": [{"b": 1.0, "char_index": 1}, ...]}`, with
    /// `char_index` in the enumeration order of [`characters_mod`].
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ComboDoc = serde_json::from_str(text).map_err(|e| Error::Parse(format!("combo spec: {e}")))?;
        if doc.q == 0 || doc.q > MAX_COMBO_MODULUS {
            return Err(Error::Domain(format!("modulus must lie in 1..={MAX_COMBO_MODULUS}, got {}", doc.q)));
        }
        let chars = characters_mod(doc.q)?;
        let terms = doc
            .terms
            .into_iter()
            .map(|t| {
                let chi = chars
                    .get(t.char_index)
                    .ok_or_else(|| Error::Domain(format!("no character {} mod {}", t.char_index, doc.q)))?;
                Ok(ComboTerm { b: t.b, chi: chi.clone() })
            })
            .collect::<Result<Vec<_>>>()?;
        ComboSpec::new(terms)
    }

    /// σ₀ = 2 + 1/c₁, one unit right of the positivity threshold 1 + 1/c₁.
    pub fn sigma0(&self) -> f64 {
        2.0 + 1.0 / self.c1
    }

    /// B(n) = Σ b_j e^{iα_j} χ_j(n).
    pub fn coefficient(&self, n: u64) -> Complex64 {
        self.terms.iter().map(|t| t.b * Complex64::from_polar(1.0, t.chi.alpha.unwrap_or(0.0)) * t.chi.at(n)).sum()
    }

    fn weight(&self, j: usize) -> Complex64 {
        let t = &self.terms[j];
        match rotation(t.chi.alpha.unwrap_or(0.0)) {
            Some(r) => t.b * r,
            None => Complex64::new(t.b, 0.0),
        }
    }
}

/// 𝓛_X(s) = Σ b_j e^{iα_j} L_X(s,χ_j).
pub fn combo(s: Complex64, spec: &ComboSpec, table: &WeightTable) -> Result<Complex64> {
    let mut acc: Option<Complex64> = None;
    for (j, t) in spec.terms.iter().enumerate() {
        let l = l_x(s, &t.chi, table)?;
        let v = match rotation(t.chi.alpha.unwrap_or(0.0)) {
            Some(_) => spec.weight(j) * l,
            None => l * t.b,
        };
        acc = Some(acc.map_or(v, |a| a + v));
    }
    Ok(acc.expect("spec has at least one term"))
}

/// 𝓟_X(s) = Σ b_j e^{iα_j} P_X(s,χ_j).
pub fn combined_product(s: Complex64, spec: &ComboSpec, table: &WeightTable) -> Complex64 {
    (0..spec.terms.len()).map(|j| spec.weight(j) * p_x_chi(s, &spec.terms[j].chi, table).value).sum()
}

#[derive(Clone, Copy, Default)]
struct CPair(Complex64, Complex64);

impl Add for CPair {
    type Output = CPair;
    fn add(self, o: CPair) -> CPair {
        CPair(self.0 + o.0, self.1 + o.1)
    }
}

/// (𝓟_X(s), 𝓟_X′(s)).
fn product_and_derivative(s: Complex64, spec: &ComboSpec, table: &WeightTable) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for (j, t) in spec.terms.iter().enumerate() {
        // log P_j(s) and its s-derivative −Σ Λ_X(n)χ(n)n^{−s}
        let CPair(log, dlog) = par_pairwise_sum(table.len(), |i| {
            let ln = table.ln_n[i];
            let v = t.chi.at(table.n[i]) * Complex64::from_polar(table.w[i] * (-s.re * ln).exp(), -s.im * ln);
            CPair(v / ln, -v)
        });
        let pj = spec.weight(j) * log.exp();
        p += pj;
        dp += pj * dlog;
    }
    (p, dp)
}

fn product_zero(t: f64, p: Complex64) -> Result<()> {
    if p.norm() < PRODUCT_ZERO_THRESHOLD {
        return Err(Error::ProductZero { t, modulus: p.norm() });
    }
    Ok(())
}

/// arg 𝓟_X(1/2+it) continued along σ₀ → σ₀+it → 1/2+it.
///
/// Re(e^{−iω}𝓟_X) > 0 on the vertical leg, so the argument there is ω plus a
/// principal value; the horizontal leg is tracked.
pub fn combined_product_arg(t: f64, spec: &ComboSpec, table: &WeightTable) -> Result<f64> {
    let s0 = spec.sigma0();
    let rot = Complex64::from_polar(1.0, -spec.omega);
    let w = rot * combined_product(Complex64::new(s0, t), spec, table);
    if !(w.re > 0.0) {
        return Err(Error::ArgTracking(format!("Re(e^(-i omega) P) <= 0 at {s0}+{t}i")));
    }
    let start = spec.omega + principal_arg(w);
    let f = |sigma: f64| {
        let p = combined_product(Complex64::new(sigma, t), spec, table);
        product_zero(t, p).map(|_| p)
    };
    track_arg(f, s0, 0.5, start, TrackOptions::default())
}

/// 𝓕_X(t) = arg Ψ(1/2+it) − 2 arg 𝓟_X(1/2+it).
pub fn combo_phase(t: f64, spec: &ComboSpec, table: &WeightTable) -> Result<f64> {
    Ok(arg_psi_line(t, spec.q, spec.parity) - 2.0 * combined_product_arg(t, spec, table)?)
}

/// −𝓕_X(t) as a scannable phase; for q = 1 and a single unit term it is F_X.
pub struct ComboPhase<'a> {
    pub spec: &'a ComboSpec,
    pub table: &'a WeightTable,
}

impl ComboPhase<'_> {
    fn sample(&self, t: f64, arg_p: f64, p: Complex64, dp: Complex64) -> PhaseSample {
        let (q, a) = (self.spec.q, self.spec.parity);
        let value = 2.0 * arg_p - arg_psi_line(t, q, a);
        let deriv = 2.0 * (dp / p).re - arg_psi_line_prime(t, q, a);
        PhaseSample { t, value, deriv, aux: p }
    }
}

impl LinePhase for ComboPhase<'_> {
    fn start(&self, t: f64) -> Result<PhaseSample> {
        let arg_p = combined_product_arg(t, self.spec, self.table)?;
        let (p, dp) = product_and_derivative(Complex64::new(0.5, t), self.spec, self.table);
        product_zero(t, p)?;
        Ok(self.sample(t, arg_p, p, dp))
    }

    fn next(&self, t: f64, from: &PhaseSample) -> Result<PhaseSample> {
        let (p, dp) = product_and_derivative(Complex64::new(0.5, t), self.spec, self.table);
        product_zero(t, p)?;
        let arg_from = 0.5 * (from.value + arg_psi_line(from.t, self.spec.q, self.spec.parity));
        Ok(self.sample(t, arg_from + principal_arg(p / from.aux), p, dp))
    }

    fn step(&self, t: f64) -> f64 {
        0.5 / (t * self.spec.q as f64 / (2.0 * PI) + 2.0).ln()
    }
}

/// Zeros of 𝓟_X in (1/2, σ₀) × (t_a, t_b) by the argument principle.
///
/// Each one makes the path-defined arg 𝓟_X(1/2+it) jump by 2π as t passes
/// its ordinate, so it costs two crossings relative to the path-defined phase.
pub fn product_zeros_right(t_a: f64, t_b: f64, spec: &ComboSpec, table: &WeightTable) -> Result<i64> {
    if !(t_a < t_b) {
        return Err(Error::Domain(format!("need t_a < t_b, got [{t_a}, {t_b}]")));
    }
    let s0 = spec.sigma0();
    let p = |sigma: f64, t: f64| {
        let v = combined_product(Complex64::new(sigma, t), spec, table);
        product_zero(t, v).map(|_| v)
    };
    let o = TrackOptions::default();
    let mut g = 0.0;
    g = track_arg(|u| p(u, t_a), 0.5, s0, g, o)?;
    g = track_arg(|u| p(s0, u), t_a, t_b, g, o)?;
    g = track_arg(|u| p(u, t_b), s0, 0.5, g, o)?;
    g = track_arg(|u| p(0.5, u), t_b, t_a, g, o)?;
    let w = g / (2.0 * PI);
    let n = w.round();
    if (w - n).abs() > 1e-6 {
        return Err(Error::Integrality { t: t_b, value: w });
    }
    Ok(n as i64)
}

/// t/2π·log(tq/2π) − t/2π.
pub fn combo_lower_bound(t: f64, q: u64) -> f64 {
    let u = t / (2.0 * PI);
    u * (u * q as f64).ln() - u
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComboCount {
    /// case-(2) zeros: crossings of odd multiples of π by the phase
    pub zeros: Vec<ScanZero>,
    /// case-(1) zeros: (t, |𝓟_X(1/2+it)|) at refined minima below [`CASE1_THRESHOLD`]
    pub case1: Vec<(f64, f64)>,
    /// smallest refined minimum of |𝓟_X(1/2+it)| on the range
    pub min_modulus: f64,
    pub count: usize,
    pub lower_bound: f64,
}

fn golden_min<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..80 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    0.5 * (a + b)
}

/// Refined local minima (t, |𝓟_X(1/2+it)|) on [a, b].
fn product_minima(a: f64, b: f64, spec: &ComboSpec, table: &WeightTable) -> Vec<(f64, f64)> {
    let f = |t: f64| combined_product(Complex64::new(0.5, t), spec, table).norm();
    let n = ((b - a) / MINIMA_STEP).ceil() as usize;
    let h = (b - a) / n as f64;
    (1..n)
        .into_par_iter()
        .filter_map(|i| {
            let t = a + i as f64 * h;
            let v = f(t);
            (v < f(t - h) && v <= f(t + h)).then(|| {
                let m = golden_min(&f, t - h, t + h);
                (m, f(m))
            })
        })
        .collect()
}

/// Zeros of 𝓛_X on the critical line in [C₀, t_max], with the leading-order
/// lower bound.
pub fn combo_zero_count(t_max: f64, spec: &ComboSpec, table: &WeightTable) -> Result<ComboCount> {
    if !(t_max >= C0) {
        return Err(Error::Domain(format!("combo count needs t_max >= C0 = {C0}, got {t_max}")));
    }
    let lower_bound = combo_lower_bound(t_max, spec.q);
    if t_max == C0 {
        return Ok(ComboCount {
            zeros: Vec::new(),
            case1: Vec::new(),
            min_modulus: f64::INFINITY,
            count: 0,
            lower_bound,
        });
    }
    let (zeros, _) = scan_phase(&ComboPhase { spec, table }, C0, t_max, 1e-10)?;
    let minima = product_minima(C0, t_max, spec, table);
    let min_modulus = minima.iter().map(|m| m.1).fold(f64::INFINITY, f64::min);
    let case1: Vec<(f64, f64)> = minima.into_iter().filter(|m| m.1 < CASE1_THRESHOLD).collect();
    let count = zeros.len() + case1.len();
    Ok(ComboCount { zeros, case1, min_modulus, count, lower_bound })
}
