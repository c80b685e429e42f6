//! Dirichlet characters via a generator-exponent decomposition of (ℤ/q)^×.
//!
//! The group is split by the Chinese remainder theorem into cyclic
//! components, listed by ascending prime. For 2^e with e ≥ 3 there are two
//! components, generated by −1 and 5. Character number k has exponent
//! digits k = k₀ + k₁·m₀ + k₂·m₀m₁ + …, where m_c is the order of
//! component c, and χ_k(g_c) = e^{2πi k_c/m_c}. Index 0 is the principal
//! character.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const MAX_MODULUS: u64 = 1_000_000;

#[derive(Debug, Clone)]
struct Component {
    /// modulus of the prime-power factor
    pp: u64,
    generator: u64,
    order: u64,
}

/// Structure of (ℤ/q)^× with a discrete-log table.
#[derive(Debug, Clone)]
pub struct CharacterGroup {
    q: u64,
    components: Vec<Component>,
    /// `dlog[a * c + j]` = exponent of component j for residue a, or `u64::MAX` if gcd(a,q) > 1
    dlog: Vec<u64>,
    /// lcm of component orders
    exponent: u64,
}

#[derive(Debug, Clone)]
pub struct Character {
    pub q: u64,
    pub index: usize,
    pub values: Vec<Complex64>,
    pub parity: u8,
    pub gauss: Complex64,
    pub primitive: bool,
    /// α(χ) for primitive χ; `None` otherwise.
    pub alpha: Option<f64>,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn primitive_root_prime_power(p: u64, e: u32) -> u64 {
    let phi_p = p - 1;
    let fs = factor(phi_p);
    let g = (2..p).find(|&g| fs.iter().all(|&(r, _)| pow_mod(g, phi_p / r, p) != 1)).unwrap_or(1);
    if e == 1 {
        return g;
    }
    let p2 = p * p;
    if pow_mod(g, p - 1, p2) != 1 {
        g
    } else {
        g + p
    }
}

/// e^{2πi num/den}, exact at multiples of a quarter turn.
fn root_of_unity(num: u64, den: u64) -> Complex64 {
    let num = num % den;
    if (4 * num).is_multiple_of(den) {
        return match 4 * num / den {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * PI * num as f64 / den as f64)
}

impl CharacterGroup {
    pub fn new(q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Domain("modulus must be >= 1".into()));
        }
        if q > MAX_MODULUS {
            return Err(Error::Capacity { requested: q, limit: MAX_MODULUS });
        }
        let mut components = Vec::new();
        for (p, e) in factor(q) {
            let pp = p.pow(e);
            if p == 2 {
                match e {
                    1 => {}
                    2 => components.push(Component { pp, generator: 3, order: 2 }),
                    _ => {
                        components.push(Component { pp, generator: pp - 1, order: 2 });
                        components.push(Component { pp, generator: 5, order: pp / 4 });
                    }
                }
            } else {
                let g = primitive_root_prime_power(p, e);
                components.push(Component { pp, generator: g, order: pp / p * (p - 1) });
            }
        }
        let c = components.len();
        let mut dlog = vec![u64::MAX; q as usize * c.max(1)];
        // per-component log tables indexed by residue mod pp
        let mut tables: Vec<Vec<u64>> = Vec::with_capacity(c);
        let mut j = 0;
        while j < c {
            let comp = &components[j];
            let pp = comp.pp;
            if pp.is_power_of_two() && pp >= 8 && comp.generator == pp - 1 {
                // a ≡ (−1)^i 5^k mod 2^e
                let mut t_sign = vec![u64::MAX; pp as usize];
                let mut t_five = vec![u64::MAX; pp as usize];
                let mut x = 1u64;
                for k in 0..pp / 4 {
                    t_sign[x as usize] = 0;
                    t_five[x as usize] = k;
                    let neg = (pp - x) % pp;
                    t_sign[neg as usize] = 1;
                    t_five[neg as usize] = k;
                    x = x * 5 % pp;
                }
                tables.push(t_sign);
                tables.push(t_five);
                j += 2;
            } else {
                let mut t = vec![u64::MAX; pp as usize];
                let mut x = 1u64;
                for k in 0..comp.order {
                    t[x as usize] = k;
                    x = x * comp.generator % pp;
                }
                tables.push(t);
                j += 1;
            }
        }
        for a in 0..q {
            if gcd(a, q) != 1 {
                continue;
            }
            for (jj, comp) in components.iter().enumerate() {
                dlog[a as usize * c + jj] = tables[jj][(a % comp.pp) as usize];
            }
        }
        let exponent = components.iter().fold(1u64, |l, comp| l / gcd(l, comp.order) * comp.order);
        Ok(CharacterGroup { q, components, dlog, exponent })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// φ(q), the number of characters.
    pub fn size(&self) -> usize {
        self.components.iter().map(|c| c.order as usize).product()
    }

    fn digits(&self, index: usize) -> Vec<u64> {
        let mut k = index as u64;
        self.components
            .iter()
            .map(|c| {
                let d = k % c.order;
                k /= c.order;
                d
            })
            .collect()
    }

    pub fn character(&self, index: usize) -> Result<Character> {
        if index >= self.size() {
            return Err(Error::Domain(format!("character index {index} out of range for q={}", self.q)));
        }
        let q = self.q;
        let c = self.components.len();
        let digits = self.digits(index);
        let big = self.exponent;
        let mut values = vec![Complex64::new(0.0, 0.0); q as usize];
        for a in 0..q {
            if gcd(a, q) != 1 {
                continue;
            }
            let mut num = 0u64;
            for (j, comp) in self.components.iter().enumerate() {
                let e = self.dlog[a as usize * c + j];
                num = (num + digits[j] * e % comp.order * (big / comp.order)) % big;
            }
            values[a as usize] = root_of_unity(num, big);
        }
        let minus_one = values[((q + q - 1) % q) as usize];
        let parity = if q > 2 && minus_one.re < 0.0 { 1 } else { 0 };
        let mut gauss = Complex64::new(0.0, 0.0);
        for a in 0..q {
            gauss += values[a as usize] * root_of_unity(a, q);
        }
        let primitive = is_primitive(q, &values);
        let mut chi = Character { q, index, values, parity, gauss, primitive, alpha: None };
        if primitive {
            chi.alpha = Some(alpha_from_gauss(&chi));
        }
        Ok(chi)
    }
}

fn is_primitive(q: u64, values: &[Complex64]) -> bool {
    if q == 1 {
        return true;
    }
    // for each p | q, some a ≡ 1 (mod q/p) coprime to q must have χ(a) ≠ 1
    factor(q).iter().all(|&(p, _)| {
        let d = q / p;
        (0..p).map(|k| (1 + k * d) % q).any(|a| gcd(a, q) == 1 && (values[a as usize] - 1.0).norm() > 1e-9)
    })
}

fn alpha_from_gauss(chi: &Character) -> f64 {
    let i_a = if chi.parity == 1 { Complex64::new(0.0, 1.0) } else { Complex64::new(1.0, 0.0) };
    let u = chi.gauss / (i_a * (chi.q as f64).sqrt());
    let mut alpha = -0.5 * u.im.atan2(u.re);
    if alpha <= -0.5 * PI + 1e-15 {
        alpha += PI;
    }
    alpha
}

/// All φ(q) characters in enumeration order.
pub fn characters_mod(q: u64) -> Result<Vec<Character>> {
    let g = CharacterGroup::new(q)?;
    (0..g.size()).map(|k| g.character(k)).collect()
}

/// α(χ) ∈ (−π/2, π/2] with e^{−2iα} = τ(χ)/(i^𝔞 √q).
pub fn alpha_of(chi: &Character) -> Result<f64> {
    if !chi.primitive {
        return Err(Error::Domain(format!("alpha needs a primitive character (q={}, index={})", chi.q, chi.index)));
    }
    Ok(alpha_from_gauss(chi))
}

impl Character {
    /// χ(n) for any non-negative n.
    pub fn at(&self, n: u64) -> Complex64 {
        self.values[(n % self.q) as usize]
    }

    pub fn conj(&self) -> Character {
        let values: Vec<Complex64> = self.values.iter().map(|v| v.conj()).collect();
        // τ(χ̄) = χ(−1) conj(τ(χ))
        let sign = if self.parity == 1 { -1.0 } else { 1.0 };
        let gauss = sign * self.gauss.conj();
        let mut c = Character {
            q: self.q,
            index: usize::MAX,
            values,
            parity: self.parity,
            gauss,
            primitive: self.primitive,
            alpha: None,
        };
        if c.primitive {
            c.alpha = Some(alpha_from_gauss(&c));
        }
        c
    }

    pub fn is_principal(&self) -> bool {
        self.index == 0
    }
}
