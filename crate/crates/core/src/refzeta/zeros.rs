//! Critical-line zero finding for ζ and L(s,χ), and the on-disk zero cache.

use num_complex::Complex64;
use rayon::prelude::*;
use std::fmt::Write as _;
use std::path::Path;

use super::hardy::{hardy_z, n_of_t};
use super::zeta::l_reference;
use crate::arith::Character;
use crate::error::{Error, Result};
use crate::specfun::{arg_psi_line, track_arg, TrackOptions};

pub const MAX_HEIGHT: f64 = 1e6;
const CHUNK: f64 = 16.0;
const MAX_REFINEMENTS: u32 = 5;

/// Ascending ordinates of critical-line zeros of one function.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCache {
    pub label: String,
    pub ordinates: Vec<f64>,
    pub tol: f64,
}

impl ZeroCache {
    pub fn new(label: impl Into<String>, ordinates: Vec<f64>, tol: f64) -> Result<Self> {
        let label = label.into();
        if label.is_empty() || label.contains(char::is_whitespace) {
            return Err(Error::Parse(format!("cache label must be a non-empty word, got {label:?}")));
        }
        if ordinates.windows(2).any(|w| !(w[0] < w[1])) || ordinates.iter().any(|g| !(*g > 0.0)) {
            return Err(Error::Parse("ordinates must be positive and strictly increasing".into()));
        }
        Ok(ZeroCache { label, ordinates, tol })
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Zeros with ordinate in [a, b].
    pub fn in_range(&self, a: f64, b: f64) -> &[f64] {
        let lo = self.ordinates.partition_point(|&g| g < a);
        let hi = self.ordinates.partition_point(|&g| g <= b);
        &self.ordinates[lo..hi]
    }

    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.len() * 20 + 32);
        let _ = writeln!(s, "# {} {:e}", self.label, self.tol);
        for g in &self.ordinates {
            let _ = writeln!(s, "{g:.12}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty zero cache".into()))?;
        let mut parts = header
            .strip_prefix('#')
            .ok_or_else(|| Error::Parse("zero cache header must start with '#'".into()))?
            .split_whitespace();
        let label = parts.next().ok_or_else(|| Error::Parse("missing label".into()))?.to_string();
        let tol = parts
            .next()
            .ok_or_else(|| Error::Parse("missing tol".into()))?
            .parse::<f64>()
            .map_err(|e| Error::Parse(format!("tol: {e}")))?;
        let mut ordinates = Vec::new();
        for (i, l) in lines.enumerate() {
            let l = l.trim();
            if l.is_empty() {
                continue;
            }
            ordinates.push(l.parse::<f64>().map_err(|e| Error::Parse(format!("line {}: {e}", i + 2)))?);
        }
        ZeroCache::new(label, ordinates, tol)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }
}

fn base_step(t: f64) -> f64 {
    0.2 / (t / (2.0 * std::f64::consts::PI) + 2.0).ln()
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, mut fa: f64, tol: f64) -> f64 {
    while b - a > tol {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if (fm >= 0.0) == (fa >= 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Sign changes of `f` on (t_min, t_max], bisected to `tol`. The range is cut
/// into fixed chunks so the sampling grid does not depend on thread count.
pub fn sign_change_zeros<F>(f: &F, t_min: f64, t_max: f64, tol: f64, refine: u32) -> Vec<f64>
where
    F: Fn(f64) -> f64 + Sync,
{
    let n_chunks = ((t_max - t_min) / CHUNK).ceil().max(1.0) as usize;
    let scale = 0.5f64.powi(refine as i32);
    let per_chunk: Vec<Vec<f64>> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let a = t_min + c as f64 * CHUNK;
            let b = if c + 1 == n_chunks { t_max } else { t_min + (c + 1) as f64 * CHUNK };
            let mut out = Vec::new();
            let mut t = a;
            let mut ft = f(t);
            while t < b {
                let t_next = (t + base_step(t) * scale).min(b);
                let f_next = f(t_next);
                if (ft >= 0.0) != (f_next >= 0.0) {
                    out.push(bisect(f, t, t_next, ft, tol));
                }
                t = t_next;
                ft = f_next;
            }
            out
        })
        .collect();
    per_chunk.into_iter().flatten().collect()
}

fn validate_range(t_min: f64, t_max: f64, tol: f64) -> Result<()> {
    if !(t_min >= 0.0 && t_min < t_max && t_max <= MAX_HEIGHT) {
        return Err(Error::Domain(format!("zero search needs 0 <= t_min < t_max <= 1e6, got [{t_min}, {t_max}]")));
    }
    if !(tol > 0.0 && tol < 1e-2) {
        return Err(Error::Domain(format!("tol must lie in (0, 1e-2), got {tol}")));
    }
    Ok(())
}

/// Zeros of ζ on the critical line with ordinates in (t_min, t_max], refined
/// until their number equals N(t_max) − N(t_min).
pub fn find_zeros(t_min: f64, t_max: f64, tol: f64) -> Result<ZeroCache> {
    validate_range(t_min, t_max, tol)?;
    let expected = n_of_t(t_max)? - n_of_t(t_min)?;
    let mut found = Vec::new();
    for r in 0..=MAX_REFINEMENTS {
        found = sign_change_zeros(&hardy_z, t_min, t_max, tol, r);
        if found.len() as i64 == expected {
            return ZeroCache::new("zeta", found, tol);
        }
    }
    Err(Error::MissedZero { t_min, t_max, found: found.len(), expected })
}

/// Rotated real signal Re(e^{iα − iφ(t)/2} L(1/2+it, χ)), φ = arg Ψ(1/2+it).
pub fn hardy_l(t: f64, chi: &Character) -> Result<f64> {
    let alpha = chi
        .alpha
        .ok_or_else(|| Error::Domain(format!("character q={} index={} is not primitive", chi.q, chi.index)))?;
    let phi = arg_psi_line(t, chi.q, chi.parity);
    let l = l_reference(Complex64::new(0.5, t), chi)?;
    Ok((Complex64::from_polar(1.0, alpha - 0.5 * phi) * l).re)
}

/// Number of zeros of L(s,χ) in [−1/2, 2] × [t_a, t_b] by the argument principle.
pub fn l_zero_count_rect(chi: &Character, t_a: f64, t_b: f64) -> Result<i64> {
    let opts = TrackOptions {
        initial_step: 0.05,
        min_step: 1e-12,
        max_step: 0.05,
        max_increment: std::f64::consts::FRAC_PI_4,
    };
    let l = |s: Complex64| l_reference(s, chi);
    let (s_lo, s_hi) = (-0.5, 2.0);
    let mut arg = 0.0;
    arg = track_arg(|u| l(Complex64::new(u, t_a)), s_lo, s_hi, arg, opts)?;
    arg = track_arg(|u| l(Complex64::new(s_hi, u)), t_a, t_b, arg, opts)?;
    arg = track_arg(|u| l(Complex64::new(u, t_b)), s_hi, s_lo, arg, opts)?;
    arg = track_arg(|u| l(Complex64::new(s_lo, u)), t_b, t_a, arg, opts)?;
    let winding = arg / (2.0 * std::f64::consts::PI);
    let n = winding.round();
    if (winding - n).abs() > 1e-6 {
        return Err(Error::Integrality { t: t_b, value: winding });
    }
    Ok(n as i64)
}

/// Critical-line zeros of L(s,χ) for primitive χ, validated against the
/// argument-principle count of the enclosing rectangle.
pub fn find_l_zeros(chi: &Character, t_min: f64, t_max: f64, tol: f64) -> Result<ZeroCache> {
    validate_range(t_min, t_max, tol)?;
    let t_lo = t_min.max(1e-6);
    let f = |t: f64| hardy_l(t, chi).unwrap_or(f64::NAN);
    let expected = l_zero_count_rect(chi, t_lo, t_max)?;
    let mut found = Vec::new();
    for r in 0..=MAX_REFINEMENTS {
        found = sign_change_zeros(&f, t_lo, t_max, tol, r);
        if found.len() as i64 == expected {
            return ZeroCache::new(format!("L:q={}:k={}", chi.q, chi.index), found, tol);
        }
    }
    Err(Error::MissedZero { t_min, t_max, found: found.len(), expected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::characters_mod;

    #[test]
    fn first_two_zeros() {
        let c = find_zeros(10.0, 30.0, 1e-10).unwrap();
        // γ₃ ≈ 25.0109 also lies below 30
        assert_eq!(c.len(), 3);
        assert!((c.ordinates[0] - 14.134_725).abs() < 1e-6);
        assert!((c.ordinates[1] - 21.022_040).abs() < 1e-6);
        assert!((c.ordinates[2] - 25.010_858).abs() < 1e-6);
        for &g in &c.ordinates {
            assert!(hardy_z(g - 1e-9) * hardy_z(g + 1e-9) <= 0.0 || hardy_z(g).abs() < 1e-8);
        }
    }

    #[test]
    fn cache_text_round_trip() {
        let c = ZeroCache::new("zeta", vec![14.134_725_141_734, 21.022_039_638_771], 1e-10).unwrap();
        let text = c.to_text();
        assert!(text.starts_with("# zeta 1e-10\n"));
        let back = ZeroCache::from_text(&text).unwrap();
        assert_eq!(back, c);
        assert!(ZeroCache::from_text("zeta 1e-9\n1.0\n").is_err());
        assert!(ZeroCache::new("zeta", vec![2.0, 1.0], 1e-9).is_err());
    }

    #[test]
    fn range_validation() {
        assert!(find_zeros(10.0, 5.0, 1e-9).is_err());
        assert!(find_zeros(0.0, 2e6, 1e-9).is_err());
        assert!(find_zeros(0.0, 10.0, 0.5).is_err());
    }

    #[test]
    fn hardy_l_is_real_rotation() {
        let chi = &characters_mod(5).unwrap()[1];
        for t in [3.0, 11.0, 27.5] {
            let alpha = chi.alpha.unwrap();
            let phi = arg_psi_line(t, 5, chi.parity);
            let w = Complex64::from_polar(1.0, alpha - 0.5 * phi) * l_reference(Complex64::new(0.5, t), chi).unwrap();
            assert!(w.im.abs() < 1e-9, "t={t}: {w}");
        }
    }

    #[test]
    fn l_zeros_mod_3_match_rectangle_count() {
        let chi = &characters_mod(3).unwrap()[1];
        let c = find_l_zeros(chi, 0.0, 25.0, 1e-9).unwrap();
        assert!(!c.is_empty());
        for g in &c.ordinates {
            assert!(l_reference(Complex64::new(0.5, *g), chi).unwrap().norm() < 1e-7);
        }
        // first zero of L(s, χ₋₃) is near 8.0397
        assert!((c.ordinates[0] - 8.039_737).abs() < 1e-5);
    }
}
