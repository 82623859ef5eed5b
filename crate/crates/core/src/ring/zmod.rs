use num_integer::Integer;

use super::integers::is_prime_u64;
use super::{PrincipalIdealRing, Ring, RingDescriptor};
use crate::error::{Error, Result};

/// Residues modulo `n`, stored as least non-negative representatives.
///
/// `GF(p)` is the same ring with a prime modulus; the flag only changes how
/// the ring describes itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Zmod {
    n: u64,
    field: bool,
}

impl Zmod {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        Ok(Zmod { n, field: false })
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidModulus(p));
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(Zmod { n: p, field: true })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn is_field(&self) -> bool {
        self.field || is_prime_u64(self.n)
    }

    pub fn inverse(&self, a: u64) -> Option<u64> {
        let e = (a as i128).extended_gcd(&(self.n as i128));
        if e.gcd != 1 {
            return None;
        }
        Some(e.x.rem_euclid(self.n as i128) as u64)
    }

    /// Representative in `(-n/2, n/2]` as an absolute value.
    fn symmetric_abs(&self, a: u64) -> u64 {
        a.min(self.n - a)
    }
}

impl Ring for Zmod {
    type Elem = u64;

    fn descriptor(&self) -> RingDescriptor {
        if self.field {
            RingDescriptor::GF(self.n)
        } else {
            RingDescriptor::Zmod(self.n)
        }
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.n as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.n - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.n as u128) as u64
    }

    fn encode(&self, a: &u64) -> String {
        a.to_string()
    }

    /// Accepts any integer and reduces it.
    fn decode(&self, s: &str) -> Result<u64> {
        let t = s.trim();
        let t = t.strip_prefix('+').unwrap_or(t);
        let v: i128 = t.parse().map_err(|_| self.parse_error(s))?;
        Ok(v.rem_euclid(self.n as i128) as u64)
    }

    fn default_weight(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.symmetric_abs(*a) + 1
        }
    }

    fn default_atoms_of_weight(&self, w: u64) -> Vec<u64> {
        match w {
            0 => vec![0],
            1 => vec![],
            _ => {
                let r = w - 1;
                if r > self.n / 2 {
                    return vec![];
                }
                if self.n - r == r {
                    vec![r]
                } else {
                    vec![r, self.n - r]
                }
            }
        }
    }

    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.n).collect())
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

impl PrincipalIdealRing for Zmod {
    /// Ideals of ℤ/n are `(d)` for `d | n`; `(n) = (0)` is stored as 0.
    fn normalize(&self, a: &u64) -> u64 {
        gcd_u64(*a, self.n) % self.n
    }

    fn divides(&self, a: &u64, b: &u64) -> bool {
        let d = gcd_u64(*a, self.n);
        b.is_multiple_of(&d)
    }

    fn gcd(&self, a: &u64, b: &u64) -> u64 {
        gcd_u64(gcd_u64(*a, *b), self.n) % self.n
    }

    fn lcm(&self, a: &u64, b: &u64) -> u64 {
        let da = gcd_u64(*a, self.n);
        let db = gcd_u64(*b, self.n);
        da.lcm(&db) % self.n
    }

    fn colon(&self, g: &u64, a: &u64) -> u64 {
        let d = gcd_u64(*g, self.n);
        (d / gcd_u64(d, *a)) % self.n
    }

    fn residue(&self, a: &u64, g: &u64) -> u64 {
        a % gcd_u64(*g, self.n)
    }
}
