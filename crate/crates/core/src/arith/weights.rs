//! The tent-weighted von Mangoldt table Λ_X(n), n ≤ X².

use std::fmt::Write as _;
use std::path::Path;

use super::sieve::{sieve_primes_with_bound, DEFAULT_SIEVE_BOUND};
use crate::error::{Error, Result};

/// Λ_X(n) for n ≤ X² at prime powers, stored column-wise with the derived
/// quantities the product sums need.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    x: f64,
    pub n: Vec<u64>,
    pub w: Vec<f64>,
    pub ln_n: Vec<f64>,
    pub inv_sqrt_n: Vec<f64>,
}

/// Λ_X(n) given Λ(n).
pub fn lambda_x(n: u64, lambda: f64, x: f64) -> f64 {
    if lambda == 0.0 {
        return 0.0;
    }
    let nf = n as f64;
    if nf <= x {
        lambda
    } else {
        let w = lambda * (2.0 - nf.ln() / x.ln());
        if w > 0.0 {
            w
        } else {
            0.0
        }
    }
}

pub fn build_weight_table(x: f64) -> Result<WeightTable> {
    build_weight_table_with_bound(x, DEFAULT_SIEVE_BOUND)
}

pub fn build_weight_table_with_bound(x: f64, bound: u64) -> Result<WeightTable> {
    if !(x.is_finite() && x >= 2.0) {
        return Err(Error::Domain(format!("weight table needs X >= 2, got {x}")));
    }
    let top = (x * x).floor();
    if top > bound as f64 {
        return Err(Error::Capacity { requested: top as u64, limit: bound });
    }
    let top = top as u64;
    let primes = sieve_primes_with_bound(top, bound)?;
    let mut entries: Vec<(u64, f64)> = Vec::with_capacity(primes.len() + primes.len() / 8);
    for &p in &primes {
        let lp = (p as f64).ln();
        let mut pk = p;
        loop {
            let w = lambda_x(pk, lp, x);
            if w > 0.0 {
                entries.push((pk, w));
            }
            match pk.checked_mul(p) {
                Some(next) if next <= top => pk = next,
                _ => break,
            }
        }
    }
    entries.sort_unstable_by_key(|e| e.0);
    Ok(WeightTable::from_entries(x, entries))
}

impl WeightTable {
    fn from_entries(x: f64, entries: Vec<(u64, f64)>) -> Self {
        let n: Vec<u64> = entries.iter().map(|e| e.0).collect();
        let w = entries.iter().map(|e| e.1).collect();
        let ln_n = n.iter().map(|&k| (k as f64).ln()).collect();
        let inv_sqrt_n = n.iter().map(|&k| 1.0 / (k as f64).sqrt()).collect();
        WeightTable { x, n, w, ln_n, inv_sqrt_n }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn log_x(&self) -> f64 {
        self.x.ln()
    }

    pub fn len(&self) -> usize {
        self.n.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.n.iter().copied().zip(self.w.iter().copied())
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::with_capacity(24 * self.len() + 64);
        let _ = writeln!(s, "# weight table X={}", self.x);
        s.push_str("n,lambda_x\n");
        for (n, w) in self.entries() {
            let _ = writeln!(s, "{n},{w}");
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut x = None;
        let mut entries = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(v) = rest.trim().strip_prefix("weight table X=") {
                    x = Some(v.trim().parse::<f64>().map_err(|e| Error::Parse(format!("X: {e}")))?);
                }
                continue;
            }
            if line == "n,lambda_x" {
                continue;
            }
            let (a, b) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("line {}: expected n,lambda_x", lineno + 1)))?;
            let n = a.trim().parse::<u64>().map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            let w = b.trim().parse::<f64>().map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            entries.push((n, w));
        }
        let x = x.ok_or_else(|| Error::Parse("missing '# weight table X=' line".into()))?;
        if !(x >= 2.0) {
            return Err(Error::Parse(format!("X must be >= 2, got {x}")));
        }
        if entries.windows(2).any(|e| e[0].0 >= e[1].0) {
            return Err(Error::Parse("entries must be strictly increasing in n".into()));
        }
        Ok(WeightTable::from_entries(x, entries))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_csv(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sieve::von_mangoldt;
    use proptest::prelude::*;

    #[test]
    fn x4_entries() {
        let t = build_weight_table(4.0).unwrap();
        let got: Vec<u64> = t.n.clone();
        assert_eq!(got, vec![2, 3, 4, 5, 7, 8, 9, 11, 13]);
        let w9 = t.entries().find(|e| e.0 == 9).unwrap().1;
        let direct = 3f64.ln() * (2.0 - 9f64.ln() / 4f64.ln());
        assert!((w9 - direct).abs() < 1e-15);
        assert!((w9 - 0.455_965_297).abs() < 1e-9);
        assert!(!t.n.contains(&16));
        assert_eq!(t.entries().find(|e| e.0 == 3).unwrap().1, 3f64.ln());
    }

    #[test]
    fn x2_has_two_entries() {
        let t = build_weight_table(2.0).unwrap();
        assert_eq!(t.n, vec![2, 3]);
    }

    #[test]
    fn rejects_small_x_and_capacity() {
        assert!(build_weight_table(1.5).is_err());
        assert!(matches!(build_weight_table_with_bound(100.0, 1000), Err(Error::Capacity { .. })));
    }

    #[test]
    fn csv_round_trip() {
        let t = build_weight_table(7.5).unwrap();
        let back = WeightTable::from_csv(&t.to_csv()).unwrap();
        assert_eq!(t, back);
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("w.csv");
        t.save(&p).unwrap();
        assert_eq!(WeightTable::load(&p).unwrap(), t);
        assert!(WeightTable::from_csv("n,lambda_x\n2,0.5\n").is_err());
    }

    #[test]
    fn continuity_at_x_equal_n() {
        for n in [5u64, 8, 9, 49] {
            let l = von_mangoldt(n);
            let below = lambda_x(n, l, n as f64 - 1e-9);
            assert!((below - l).abs() < 1e-8);
            assert_eq!(lambda_x(n, l, n as f64), l);
        }
    }

    proptest! {
        #[test]
        fn weights_bounded_by_lambda(x in 2.0f64..60.0) {
            let t = build_weight_table(x).unwrap();
            for (n, w) in t.entries() {
                let l = von_mangoldt(n);
                prop_assert!(w > 0.0 && w <= l + 1e-15);
                prop_assert!((n as f64) <= x * x);
                let want = if (n as f64) <= x { l } else { l * (2.0 - (n as f64).ln() / x.ln()) };
                prop_assert!((w - want).abs() < 1e-14);
            }
            // every prime power with positive weight is present
            let top = (x * x).floor() as u64;
            let count = (2..=top).filter(|&n| lambda_x(n, von_mangoldt(n), x) > 0.0).count();
            prop_assert_eq!(count, t.len());
        }
    }
}
