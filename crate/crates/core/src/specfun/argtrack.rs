//! Continuous argument of a non-vanishing complex function along a path.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// An unwound argument together with a description of the path it was
/// continued along.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchTrackedArg {
    pub value: f64,
    pub path: String,
}

#[derive(Debug, Clone, Copy)]
pub struct TrackOptions {
    pub initial_step: f64,
    pub min_step: f64,
    /// Cap on step growth. A step spanning a full turn can pass the
    /// half-step test by aliasing, so this must resolve the fastest rotation.
    pub max_step: f64,
    /// Largest accepted phase increment per step.
    pub max_increment: f64,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions { initial_step: 0.05, min_step: 1e-12, max_step: 0.05, max_increment: PI / 4.0 }
    }
}

pub fn principal_arg(z: Complex64) -> f64 {
    z.im.atan2(z.re)
}

/// Continues the argument of `f(u)` from `u0` to `u1`, starting from the
/// already-unwound value `start` at `u0`.
///
/// A step is accepted when its phase increment is below `max_increment` and
/// the two half-steps add up to the full step. Otherwise it is halved.
pub fn track_arg<F>(f: F, u0: f64, u1: f64, start: f64, opts: TrackOptions) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let span = u1 - u0;
    if span == 0.0 {
        return Ok(start);
    }
    let dir = span.signum();
    let mut u = u0;
    let mut w = f(u0)?;
    if w.norm() == 0.0 {
        return Err(Error::ArgTracking(format!("function vanishes at path start {u0}")));
    }
    let mut arg = start;
    let mut h = opts.initial_step.min(opts.max_step).min(span.abs());
    while (u1 - u) * dir > 0.0 {
        let h_eff = h.min((u1 - u).abs());
        let u_next = if h_eff >= (u1 - u).abs() { u1 } else { u + dir * h_eff };
        let u_mid = 0.5 * (u + u_next);
        let w_next = f(u_next)?;
        let w_mid = f(u_mid)?;
        let d_full = principal_arg(w_next / w);
        let d1 = principal_arg(w_mid / w);
        let d2 = principal_arg(w_next / w_mid);
        let consistent = (d1 + d2 - d_full).abs() < 1e-8;
        if d_full.abs() < opts.max_increment && consistent && w_next.norm() > 0.0 {
            arg += d_full;
            u = u_next;
            w = w_next;
            h = (h_eff * 1.5).max(h).min(opts.max_step);
        } else {
            h = 0.5 * h_eff;
            if h < opts.min_step {
                return Err(Error::ArgTracking(format!("step underflow at u = {u}")));
            }
        }
    }
    Ok(arg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn winds_around_the_unit_circle() {
        let f = |u: f64| Ok(Complex64::from_polar(2.0, u));
        let v = track_arg(f, 0.0, 20.0, 0.0, TrackOptions::default()).unwrap();
        assert!((v - 20.0).abs() < 1e-12);
        let back = track_arg(f, 20.0, 0.0, 20.0, TrackOptions::default()).unwrap();
        assert!(back.abs() < 1e-12);
    }

    #[test]
    fn fast_rotation_is_not_aliased() {
        // 50 rad per unit; uncapped step growth would skip whole turns
        let f = |u: f64| Ok(Complex64::from_polar(1.0 + 0.5 * (3.0 * u).sin(), 50.0 * u));
        let v = track_arg(f, 0.0, 10.0, 0.0, TrackOptions::default()).unwrap();
        assert!((v - 500.0).abs() < 1e-9, "{v}");
    }

    #[test]
    fn passes_close_to_a_zero() {
        // z(u) = u + 1e-6 i crosses near the origin; arg goes from π to 0.
        let f = |u: f64| Ok(Complex64::new(u, 1e-6));
        let v = track_arg(f, -1.0, 1.0, principal_arg(Complex64::new(-1.0, 1e-6)), TrackOptions::default()).unwrap();
        assert!(v.abs() < 1e-5);
    }

    #[test]
    fn exact_zero_at_the_start_is_an_error() {
        let f = |u: f64| Ok(Complex64::new(u, 0.0));
        assert!(track_arg(f, 0.0, 1.0, 0.0, TrackOptions::default()).is_err());
    }
}
