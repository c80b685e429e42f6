//! Crossings of odd multiples of π by a continuous phase on the critical line.
//!
//! The range is cut into fixed chunks processed in parallel. Inside a chunk
//! the phase is sampled on a grid of natural step 0.5/log(tq/2π + 2), halved
//! while consecutive samples jump by π or more or disagree with the
//! trapezoidal prediction from the derivative. Each grid cell is split at the
//! sign changes of the derivative, so every piece is monotone, and each odd
//! multiple of π inside a piece is located by bisection.

use rayon::prelude::*;
use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;

use super::model::{big_f_x_and_prime, count_formula, f_x_star_and_prime, C0};
use crate::arith::WeightTable;
use crate::error::{Error, Result};

const CHUNK: f64 = 8.0;
const MIN_STEP: f64 = 1e-7;
pub const MULTIPLICITY_THRESHOLD: f64 = 1e-6;

/// A phase value with its t-derivative; `aux` carries whatever a phase needs
/// to continue itself locally (for instance the raw complex value whose
/// argument is being unwound).
#[derive(Debug, Clone, Copy)]
pub struct PhaseSample {
    pub t: f64,
    pub value: f64,
    pub deriv: f64,
    pub aux: Complex64,
}

/// A real phase on the line, continuous in t.
pub trait LinePhase: Sync {
    /// Value at `t` on the phase's own global normalisation.
    fn start(&self, t: f64) -> Result<PhaseSample>;
    /// Value at `t`, continued from the nearby sample `from`.
    fn next(&self, t: f64, from: &PhaseSample) -> Result<PhaseSample>;
    /// Natural sampling step near `t`.
    fn step(&self, t: f64) -> f64 {
        0.5 / (t / (2.0 * PI) + 2.0).ln()
    }
}

/// F_X(t) = 2θ(t) − 2f_X(t).
pub struct FxPhase<'a>(pub &'a WeightTable);

impl LinePhase for FxPhase<'_> {
    fn start(&self, t: f64) -> Result<PhaseSample> {
        let (value, deriv) = big_f_x_and_prime(t, self.0);
        Ok(PhaseSample { t, value, deriv, aux: Complex64::new(0.0, 0.0) })
    }
    fn next(&self, t: f64, _from: &PhaseSample) -> Result<PhaseSample> {
        self.start(t)
    }
}

/// F_X*(t).
pub struct FxStarPhase<'a>(pub &'a WeightTable);

impl LinePhase for FxStarPhase<'_> {
    fn start(&self, t: f64) -> Result<PhaseSample> {
        let (value, deriv) = f_x_star_and_prime(t, self.0)?;
        Ok(PhaseSample { t, value, deriv, aux: Complex64::new(0.0, 0.0) })
    }
    fn next(&self, t: f64, _from: &PhaseSample) -> Result<PhaseSample> {
        self.start(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroKind {
    /// reached from a neighbouring odd multiple of π
    First,
    /// the phase returned to the odd multiple of its previous crossing
    Second,
}

impl ZeroKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ZeroKind::First => "first",
            ZeroKind::Second => "second",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanZero {
    pub gamma: f64,
    pub kind: ZeroKind,
    /// phase derivative at gamma
    pub fprime: f64,
    pub bracket: (f64, f64),
    /// the crossing is of (2·level+1)π
    pub level: i64,
    /// |fprime| below the multiplicity threshold
    pub multiple: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub x: f64,
    pub range: (f64, f64),
    pub zeros: Vec<ScanZero>,
    pub count_formula: f64,
    /// sign changes of the phase derivative seen on the range
    pub turning_points: usize,
}

impl ScanReport {
    pub fn count(&self) -> usize {
        self.zeros.len()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::with_capacity(64 * self.zeros.len() + 64);
        s.push_str("gamma_x,kind,fprime,bracket_lo,bracket_hi\n");
        for z in &self.zeros {
            let _ = writeln!(
                s,
                "{:.12},{},{:.9e},{:.12},{:.12}",
                z.gamma,
                z.kind.as_str(),
                z.fprime,
                z.bracket.0,
                z.bracket.1
            );
        }
        s
    }
}

#[derive(Debug, Clone)]
struct Crossing {
    gamma: f64,
    fprime: f64,
    bracket: (f64, f64),
    level: i64,
}

struct ChunkResult {
    start: f64,
    end: f64,
    crossings: Vec<Crossing>,
    turning: usize,
}

fn bisect_deriv<P: LinePhase + ?Sized>(
    p: &P,
    anchor: &PhaseSample,
    mut lo: PhaseSample,
    mut hi: PhaseSample,
    tol: f64,
) -> Result<PhaseSample> {
    while hi.t - lo.t > tol {
        let m = p.next(0.5 * (lo.t + hi.t), anchor)?;
        if (m.deriv >= 0.0) == (lo.deriv >= 0.0) {
            lo = m;
        } else {
            hi = m;
        }
    }
    p.next(0.5 * (lo.t + hi.t), anchor)
}

fn bisect_level<P: LinePhase + ?Sized>(
    p: &P,
    anchor: &PhaseSample,
    lo: &PhaseSample,
    hi: &PhaseSample,
    target: f64,
    tol: f64,
) -> Result<Crossing> {
    let rising = hi.value > lo.value;
    let (mut a, mut b) = (lo.t, hi.t);
    while b - a > tol {
        let m = 0.5 * (a + b);
        let v = p.next(m, anchor)?.value;
        let below = if rising { v < target } else { v > target };
        if below {
            a = m;
        } else {
            b = m;
        }
    }
    let g = 0.5 * (a + b);
    let s = p.next(g, anchor)?;
    Ok(Crossing { gamma: g, fprime: s.deriv, bracket: (a, b), level: 0 })
}

/// Levels k with (2k+1)π crossed on a monotone piece, in t-order.
fn levels_between(v0: f64, v1: f64) -> Vec<i64> {
    let two_pi = 2.0 * PI;
    if v1 > v0 {
        let lo = ((v0 - PI) / two_pi).floor() as i64 + 1;
        let hi = ((v1 - PI) / two_pi).floor() as i64;
        (lo..=hi).collect()
    } else if v1 < v0 {
        let lo = ((v1 - PI) / two_pi).ceil() as i64;
        let hi = ((v0 - PI) / two_pi).ceil() as i64 - 1;
        (lo..=hi).rev().collect()
    } else {
        Vec::new()
    }
}

fn process_cell<P: LinePhase + ?Sized>(
    p: &P,
    a: &PhaseSample,
    b: &PhaseSample,
    tol: f64,
    out: &mut Vec<Crossing>,
) -> Result<usize> {
    let m = p.next(0.5 * (a.t + b.t), a)?;
    // the midpoint only probes for derivative sign changes; pieces run between
    // the cell ends and the turning points
    let mut knots = vec![*a];
    let mut turning = 0;
    for (lo, hi) in [(*a, m), (m, *b)] {
        if (lo.deriv >= 0.0) != (hi.deriv >= 0.0) {
            knots.push(bisect_deriv(p, a, lo, hi, tol)?);
            turning += 1;
        }
    }
    knots.push(*b);
    for w in knots.windows(2) {
        for k in levels_between(w[0].value, w[1].value) {
            let target = (2 * k + 1) as f64 * PI;
            let mut c = bisect_level(p, a, &w[0], &w[1], target, tol)?;
            c.level = k;
            out.push(c);
        }
    }
    Ok(turning)
}

fn scan_chunk<P: LinePhase + ?Sized>(p: &P, a: f64, b: f64, tol: f64) -> Result<ChunkResult> {
    let first = p.start(a)?;
    let mut cur = first;
    let mut crossings = Vec::new();
    let mut turning = 0;
    let mut h = p.step(a);
    while cur.t < b {
        let t1 = if cur.t + h >= b { b } else { cur.t + h };
        let nxt = p.next(t1, &cur)?;
        let d = nxt.value - cur.value;
        let pred = 0.5 * (cur.deriv + nxt.deriv) * (t1 - cur.t);
        let suspicious = d.abs() >= PI || (d - pred).abs() > PI / 4.0;
        if suspicious && t1 - cur.t > MIN_STEP {
            h = 0.5 * (t1 - cur.t);
            continue;
        }
        if d.abs() >= PI {
            return Err(Error::GridTooCoarse { t: cur.t, jump: d });
        }
        turning += process_cell(p, &cur, &nxt, tol, &mut crossings)?;
        cur = nxt;
        h = p.step(cur.t);
    }
    Ok(ChunkResult { start: first.value, end: cur.value, crossings, turning })
}

/// Crossings of odd multiples of π by `phase` on [t_min, t_max], with
/// kinds assigned from consecutive levels.
pub fn scan_phase<P: LinePhase + ?Sized>(
    phase: &P,
    t_min: f64,
    t_max: f64,
    tol: f64,
) -> Result<(Vec<ScanZero>, usize)> {
    if !(t_min < t_max) {
        return Err(Error::Domain(format!("empty scan range [{t_min}, {t_max}]")));
    }
    if !(tol > 0.0 && tol < 1e-2) {
        return Err(Error::Domain(format!("tol must lie in (0, 1e-2), got {tol}")));
    }
    let n = ((t_max - t_min) / CHUNK).ceil().max(1.0) as usize;
    let chunks: Vec<ChunkResult> = (0..n)
        .into_par_iter()
        .map(|c| {
            let a = t_min + c as f64 * CHUNK;
            let b = if c + 1 == n { t_max } else { t_min + (c + 1) as f64 * CHUNK };
            scan_chunk(phase, a, b, tol)
        })
        .collect::<Result<_>>()?;
    // align chunk normalisations so levels are comparable across chunks
    let mut offset = 0i64;
    let mut prev_end: Option<f64> = None;
    let mut crossings = Vec::new();
    let mut turning = 0;
    for ch in chunks {
        if let Some(e) = prev_end {
            offset = ((e - ch.start) / (2.0 * PI)).round() as i64;
        }
        for mut c in ch.crossings {
            c.level += offset;
            crossings.push(c);
        }
        prev_end = Some(ch.end + 2.0 * PI * offset as f64);
        turning += ch.turning;
    }
    let mut zeros = Vec::with_capacity(crossings.len());
    for (i, c) in crossings.iter().enumerate() {
        let kind = if i > 0 && crossings[i - 1].level == c.level { ZeroKind::Second } else { ZeroKind::First };
        zeros.push(ScanZero {
            gamma: c.gamma,
            kind,
            fprime: c.fprime,
            bracket: c.bracket,
            level: c.level,
            multiple: c.fprime.abs() < MULTIPLICITY_THRESHOLD,
        });
    }
    Ok((zeros, turning))
}

/// Zeros of ζ_X on the critical line in [t_min, t_max], t_min ≥ C₀.
pub fn scan_zeros(t_min: f64, t_max: f64, table: &WeightTable, tol: f64) -> Result<ScanReport> {
    scan_zeros_from(t_min, t_max, table, tol, C0)
}

/// As [`scan_zeros`] with an explicit lower height limit in place of C₀.
pub fn scan_zeros_from(t_min: f64, t_max: f64, table: &WeightTable, tol: f64, c0: f64) -> Result<ScanReport> {
    if t_min < c0 {
        return Err(Error::Domain(format!("scan must start at or above C0 = {c0}, got {t_min}")));
    }
    let (zeros, turning_points) = scan_phase(&FxPhase(table), t_min, t_max, tol)?;
    Ok(ScanReport {
        x: table.x(),
        range: (t_min, t_max),
        zeros,
        count_formula: count_formula(t_max, table),
        turning_points,
    })
}

/// Zeros of ζ_X* on the critical line in [t_min, t_max].
pub fn scan_star_zeros(t_min: f64, t_max: f64, table: &WeightTable, tol: f64) -> Result<ScanReport> {
    if t_min < C0 {
        return Err(Error::Domain(format!("scan must start at or above C0 = {C0}, got {t_min}")));
    }
    let (zeros, turning_points) = scan_phase(&FxStarPhase(table), t_min, t_max, tol)?;
    Ok(ScanReport {
        x: table.x(),
        range: (t_min, t_max),
        zeros,
        count_formula: count_formula(t_max, table),
        turning_points,
    })
}

/// (number of ζ_X zeros on [C₀, t], t/2π·log(t/2π) − t/2π − f_X(t)/π).
pub fn n_x(t: f64, table: &WeightTable) -> Result<(usize, f64)> {
    if t < C0 {
        return Err(Error::Domain(format!("n_x needs t >= C0 = {C0}, got {t}")));
    }
    if t == C0 {
        return Ok((0, count_formula(t, table)));
    }
    let r = scan_zeros(C0, t, table, 1e-9)?;
    Ok((r.count(), r.count_formula))
}
