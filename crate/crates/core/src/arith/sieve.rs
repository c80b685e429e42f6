use crate::error::{Error, Result};

pub const DEFAULT_SIEVE_BOUND: u64 = 1_000_000_000;

const SEGMENT: usize = 1 << 18;

/// Primes up to `limit`, ascending, using the default capacity bound.
pub fn sieve_primes(limit: u64) -> Result<Vec<u64>> {
    sieve_primes_with_bound(limit, DEFAULT_SIEVE_BOUND)
}

/// Segmented sieve of Eratosthenes over odd numbers.
pub fn sieve_primes_with_bound(limit: u64, bound: u64) -> Result<Vec<u64>> {
    if limit > bound {
        return Err(Error::Capacity { requested: limit, limit: bound });
    }
    if limit < 2 {
        return Ok(Vec::new());
    }
    let root = (limit as f64).sqrt() as u64 + 1;
    let base = small_primes(root);
    let mut out = vec![2u64];
    // segment covers odd numbers lo, lo+2, ..., index i <-> lo + 2i
    let mut lo = 3u64;
    let mut mark = vec![false; SEGMENT];
    while lo <= limit {
        let count = (((limit - lo) / 2 + 1) as usize).min(SEGMENT);
        let hi = lo + 2 * (count as u64 - 1);
        mark[..count].iter_mut().for_each(|m| *m = false);
        for &p in base.iter().skip(1) {
            if p * p > hi {
                break;
            }
            let mut start = (p * p).max(lo.div_ceil(p) * p);
            if start % 2 == 0 {
                start += p;
            }
            let mut j = ((start - lo) / 2) as usize;
            while j < count {
                mark[j] = true;
                j += p as usize;
            }
        }
        for (i, &m) in mark[..count].iter().enumerate() {
            if !m {
                out.push(lo + 2 * i as u64);
            }
        }
        lo = hi + 2;
    }
    Ok(out)
}

fn small_primes(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Λ(n): log p when n is a power of the prime p, else 0.
pub fn von_mangoldt(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let p = smallest_prime_factor(n);
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    if m == 1 {
        (p as f64).ln()
    } else {
        0.0
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_count(limit: u64) -> usize {
        (2..=limit).filter(|&n| smallest_prime_factor(n) == n).count()
    }

    #[test]
    fn small_limits() {
        assert_eq!(sieve_primes(10).unwrap(), vec![2, 3, 5, 7]);
        assert_eq!(sieve_primes(2).unwrap(), vec![2]);
        assert_eq!(sieve_primes(3).unwrap(), vec![2, 3]);
        assert!(sieve_primes(1).unwrap().is_empty());
    }

    #[test]
    fn one_million() {
        let p = sieve_primes(1_000_000).unwrap();
        assert_eq!(p.len(), 78_498);
        assert_eq!(p.len(), small_primes(1_000_000).len());
        assert!(p.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn crosses_segment_boundaries() {
        let limit = 3 * SEGMENT as u64 + 12_345;
        assert_eq!(sieve_primes(limit).unwrap().len(), trial_division_count(limit));
    }

    #[test]
    fn capacity_is_enforced() {
        assert!(matches!(sieve_primes_with_bound(101, 100), Err(Error::Capacity { .. })));
        assert!(matches!(sieve_primes(2_000_000_000), Err(Error::Capacity { .. })));
    }

    #[test]
    fn von_mangoldt_values() {
        assert!((von_mangoldt(8) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(von_mangoldt(6), 0.0);
        assert!((von_mangoldt(7) - 7f64.ln()).abs() < 1e-15);
        assert_eq!(von_mangoldt(1), 0.0);
    }

    #[test]
    fn chebyshev_sanity() {
        let y = 1_000_000u64;
        let psi: f64 = sieve_primes(y)
            .unwrap()
            .iter()
            .map(|&p| {
                let mut k = 0.0;
                let mut pk = p;
                while pk <= y {
                    k += 1.0;
                    pk = pk.saturating_mul(p);
                }
                k * (p as f64).ln()
            })
            .sum();
        assert!((psi / y as f64 - 1.0).abs() < 0.1);
    }
}
