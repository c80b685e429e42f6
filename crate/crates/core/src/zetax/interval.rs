//! Behaviour of ζ_X* on an interval 𝓘 = [γ+εΔ, γ′−εΔ] strictly between two
//! consecutive ζ zeros: absence of zeros and |ζ_X*| ≈ 2|ζ|.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::arith::{build_weight_table, WeightTable};
use crate::error::{Error, Result};
use crate::refzeta::{n_of_t, zeta_em, ZeroCache};

use super::model::{f_x_star_phase, zeta_x_star};
use super::scan::scan_star_zeros;

/// Sample points per interval used by [`zero_free_interval_check`].
pub const INTERVAL_GRID: usize = 201;

/// |ζ_X*(1/2+it)| / (2|ζ(1/2+it)|).
pub fn modulus_ratio(t: f64, table: &WeightTable) -> Result<f64> {
    let s = Complex64::new(0.5, t);
    let z = zeta_em(s)?.norm();
    if z == 0.0 {
        return Err(Error::Convention(t));
    }
    Ok(zeta_x_star(s, table)?.norm() / (2.0 * z))
}

fn grid(a: f64, b: f64, n: usize) -> impl IndexedParallelIterator<Item = f64> {
    let h = if n > 1 { (b - a) / (n - 1) as f64 } else { 0.0 };
    (0..n).into_par_iter().map(move |i| if i + 1 == n { b } else { a + i as f64 * h })
}

/// max over n equally spaced points of [a, b] of |modulus_ratio − 1|.
pub fn ratio_deviation(a: f64, b: f64, table: &WeightTable, n: usize) -> Result<f64> {
    if !(a < b) || n < 2 {
        return Err(Error::Domain(format!("ratio grid needs a < b and n >= 2, got [{a}, {b}], n={n}")));
    }
    let devs = grid(a, b, n).map(|t| modulus_ratio(t, table).map(|r| (r - 1.0).abs())).collect::<Result<Vec<_>>>()?;
    Ok(devs.into_iter().fold(0.0, f64::max))
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalRow {
    pub x: f64,
    /// X ≥ exp(1/(εΔ)).
    pub applicable: bool,
    /// min over 𝓘 of the distance from F_X*/2π to the nearest half-integer.
    pub margin: f64,
    /// max over 𝓘 of the distance from F_X*/2π to the integer N(t) − 1.
    pub deviation: f64,
    /// ζ_X* zeros found in 𝓘 by the phase scan.
    pub zeros_inside: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct IntervalReport {
    pub interval: (f64, f64),
    pub rows: Vec<IntervalRow>,
}

impl IntervalReport {
    pub fn margins_increase(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].margin > w[0].margin)
    }
}

fn consecutive(pair: (f64, f64), zeros: &ZeroCache) -> Result<()> {
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-6 * (1.0 + a.abs());
    let i = zeros.ordinates.iter().position(|&g| close(g, pair.0));
    match i {
        Some(i) if i + 1 < zeros.len() && close(zeros.ordinates[i + 1], pair.1) => Ok(()),
        _ => Err(Error::Domain(format!("({}, {}) are not consecutive cached ordinates", pair.0, pair.1))),
    }
}

fn half_integer_distance(v: f64) -> f64 {
    let f = (v - 0.5) - (v - 0.5).round();
    f.abs()
}

fn row(x: f64, table: &WeightTable, a: f64, b: f64, n_minus_one: f64, threshold: f64) -> Result<IntervalRow> {
    let phases = grid(a, b, INTERVAL_GRID).map(|t| f_x_star_phase(t, table)).collect::<Result<Vec<_>>>()?;
    let mut margin = f64::INFINITY;
    let mut deviation: f64 = 0.0;
    for p in phases {
        let v = p / (2.0 * PI);
        margin = margin.min(half_integer_distance(v));
        deviation = deviation.max((v - n_minus_one).abs());
    }
    let zeros_inside = scan_star_zeros(a, b, table, 1e-9)?.count();
    Ok(IntervalRow { x, applicable: x >= threshold, margin, deviation, zeros_inside })
}

/// For each X, the zero-free margin of ζ_X* on 𝓘 = [γ+εΔ, γ′−εΔ].
pub fn zero_free_interval_check(
    gamma_pair: (f64, f64),
    eps: f64,
    x_list: &[f64],
    zeros: &ZeroCache,
) -> Result<IntervalReport> {
    if !(eps > 0.0 && eps < 0.25) {
        return Err(Error::Domain(format!("eps must lie in (0, 1/4), got {eps}")));
    }
    consecutive(gamma_pair, zeros)?;
    let (g, g2) = gamma_pair;
    let delta = g2 - g;
    let (a, b) = (g + eps * delta, g2 - eps * delta);
    if x_list.is_empty() {
        return Ok(IntervalReport { interval: (a, b), rows: Vec::new() });
    }
    let n_minus_one = (n_of_t(0.5 * (a + b))? - 1) as f64;
    let threshold = (1.0 / (eps * delta)).exp();
    let rows = x_list
        .iter()
        .map(|&x| row(x, &build_weight_table(x)?, a, b, n_minus_one, threshold))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntervalReport { interval: (a, b), rows })
}
