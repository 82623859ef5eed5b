use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{EuclideanDomain, PrimalityCertificate, PrincipalIdealRing, Ring, RingDescriptor, Zmod};
use crate::error::{Error, Result};

/// The integers, with default weight `w(n) = |n| + 1` for `n ≠ 0`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Z
    }

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn encode(&self, a: &BigInt) -> String {
        a.to_string()
    }

    fn decode(&self, s: &str) -> Result<BigInt> {
        let t = s.trim();
        let t = t.strip_prefix('+').unwrap_or(t);
        t.parse::<BigInt>().map_err(|_| self.parse_error(s))
    }

    fn default_weight(&self, a: &BigInt) -> u64 {
        if a.is_zero() {
            0
        } else {
            a.abs().to_u64().map_or(u64::MAX, |m| m.saturating_add(1))
        }
    }

    fn default_atoms_of_weight(&self, w: u64) -> Vec<BigInt> {
        match w {
            0 => vec![BigInt::zero()],
            1 => vec![],
            _ => {
                let m = BigInt::from(w - 1);
                vec![m.clone(), -m]
            }
        }
    }

    /// By absolute value, positive before negative.
    fn elem_cmp(&self, a: &BigInt, b: &BigInt) -> Ordering {
        a.abs()
            .cmp(&b.abs())
            .then_with(|| a.is_negative().cmp(&b.is_negative()))
    }
}

impl PrincipalIdealRing for Integers {
    fn normalize(&self, a: &BigInt) -> BigInt {
        a.abs()
    }

    fn divides(&self, a: &BigInt, b: &BigInt) -> bool {
        if a.is_zero() {
            b.is_zero()
        } else {
            (b % a).is_zero()
        }
    }

    fn gcd(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a.gcd(b)
    }

    fn lcm(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a.lcm(b)
    }

    fn colon(&self, g: &BigInt, a: &BigInt) -> BigInt {
        if a.is_zero() {
            return BigInt::one();
        }
        if g.is_zero() {
            return BigInt::zero();
        }
        (g / g.gcd(a)).abs()
    }

    fn residue(&self, a: &BigInt, g: &BigInt) -> BigInt {
        if g.is_zero() {
            a.clone()
        } else {
            a.mod_floor(&g.abs())
        }
    }
}

impl EuclideanDomain for Integers {
    type Quotient = Zmod;

    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        let m = b.abs();
        let r = a.mod_floor(&m);
        let q = (a - &r) / b;
        (q, r)
    }

    fn quotient_by(&self, g: &BigInt) -> Result<Zmod> {
        let n = g.abs();
        if n.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if n.is_one() {
            return Err(Error::UnitIdeal);
        }
        let n = n
            .to_u64()
            .ok_or_else(|| Error::Unsupported(format!("modulus {n} does not fit in 64 bits")))?;
        Zmod::new(n)
    }

    fn reduce_into(&self, q: &Zmod, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(q.modulus()))
            .to_u64()
            .expect("residue below a 64-bit modulus")
    }

    fn lift_from(&self, _q: &Zmod, a: &u64) -> BigInt {
        BigInt::from(*a)
    }

    fn modulus_of(&self, q: &Zmod) -> BigInt {
        BigInt::from(q.modulus())
    }

    fn least_prime_divisor(&self, g: &BigInt) -> Result<(BigInt, PrimalityCertificate)> {
        let n = g.abs();
        if n.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if n.is_one() {
            return Err(Error::UnitIdeal);
        }
        let n = n
            .to_u64()
            .ok_or_else(|| Error::Unsupported(format!("factoring {n} is beyond desk scale")))?;
        let p = least_prime_factor_u64(n);
        Ok((BigInt::from(p), trial_division_certificate(p)))
    }
}

pub(crate) fn least_prime_factor_u64(n: u64) -> u64 {
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    n >= 2 && least_prime_factor_u64(n) == n
}

/// Evidence that `p` is prime: trial division up to `⌊√p⌋`.
pub(crate) fn trial_division_certificate(p: u64) -> PrimalityCertificate {
    let bound = p.sqrt();
    PrimalityCertificate::TrialDivision {
        n: p.to_string(),
        bound,
        divisors_tested: bound.saturating_sub(1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::laws::assert_ring_axioms;

    #[test]
    fn default_weights() {
        let z = Integers;
        assert_eq!(z.default_weight(&BigInt::zero()), 0);
        assert_eq!(z.default_weight(&BigInt::from(1)), 2);
        assert_eq!(z.default_weight(&BigInt::from(-1)), 2);
        assert_eq!(z.default_atoms_of_weight(1), Vec::<BigInt>::new());
        assert_eq!(
            z.default_atoms_of_weight(4),
            vec![BigInt::from(3), BigInt::from(-3)]
        );
    }

    #[test]
    fn axioms_on_small_sample() {
        let sample: Vec<BigInt> = (-6..=6).map(BigInt::from).collect();
        assert_ring_axioms(&Integers, &sample);
    }

    #[test]
    fn codec() {
        let z = Integers;
        assert_eq!(z.decode(" +17 ").unwrap(), BigInt::from(17));
        assert_eq!(z.decode("-3").unwrap(), BigInt::from(-3));
        assert!(z.decode("3/2").is_err());
    }

    #[test]
    fn order_puts_positive_first() {
        let z = Integers;
        let mut v: Vec<BigInt> = [-2, 2, 0, -1, 1].iter().map(|&i| BigInt::from(i)).collect();
        v.sort_by(|a, b| z.elem_cmp(a, b));
        assert_eq!(v, [0, 1, -1, 2, -2].map(BigInt::from));
    }

    #[test]
    fn ideal_arithmetic() {
        let z = Integers;
        let b = BigInt::from;
        assert_eq!(z.colon(&b(12), &b(8)), b(3));
        assert_eq!(z.colon(&b(0), &b(5)), b(0));
        assert_eq!(z.colon(&b(4), &b(0)), b(1));
        assert_eq!(z.residue(&b(-7), &b(5)), b(3));
        assert_eq!(z.lcm(&b(4), &b(6)), b(12));
        assert!(z.divides(&b(-3), &b(9)));
        assert!(!z.divides(&b(0), &b(9)));
        assert_eq!(z.div_rem(&b(-7), &b(3)), (b(-3), b(2)));
    }

    #[test]
    fn least_prime_divisor() {
        let z = Integers;
        assert_eq!(z.least_prime_divisor(&BigInt::from(12)).unwrap().0, BigInt::from(2));
        assert_eq!(z.least_prime_divisor(&BigInt::from(-91)).unwrap().0, BigInt::from(7));
        assert!(z.is_prime(&BigInt::from(97)));
        assert!(!z.is_prime(&BigInt::from(1)));
        assert_eq!(z.least_prime_divisor(&BigInt::from(1)), Err(Error::UnitIdeal));
    }
}
