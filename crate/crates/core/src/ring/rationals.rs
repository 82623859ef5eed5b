use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{PrincipalIdealRing, Ring, RingDescriptor};
use crate::error::Result;

/// The rationals in lowest terms with positive denominator.
/// Default weight `w(a/b) = |a| + b + 1`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    match t.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                None
            } else {
                Some(BigRational::new(a, b))
            }
        }
        None => t.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

impl Ring for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Q
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn encode(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn decode(&self, s: &str) -> Result<BigRational> {
        parse_rational(s).ok_or_else(|| self.parse_error(s))
    }

    fn default_weight(&self, a: &BigRational) -> u64 {
        if a.is_zero() {
            return 0;
        }
        let num = a.numer().abs().to_u64();
        let den = a.denom().to_u64();
        match (num, den) {
            (Some(n), Some(d)) => n.saturating_add(d).saturating_add(1),
            _ => u64::MAX,
        }
    }

    fn default_atoms_of_weight(&self, w: u64) -> Vec<BigRational> {
        if w == 0 {
            return vec![BigRational::zero()];
        }
        if w < 3 {
            return vec![];
        }
        let s = w - 1;
        let mut out = Vec::new();
        for b in 1..s {
            let a = s - b;
            if a.gcd(&b) == 1 {
                let q = BigRational::new(BigInt::from(a), BigInt::from(b));
                out.push(-q.clone());
                out.push(q);
            }
        }
        out.sort_by(|x, y| self.elem_cmp(x, y));
        out
    }

    /// By absolute value, positive before negative.
    fn elem_cmp(&self, a: &BigRational, b: &BigRational) -> Ordering {
        a.abs()
            .cmp(&b.abs())
            .then_with(|| a.is_negative().cmp(&b.is_negative()))
    }
}

/// A field: the only ideals are `(0)` and `(1)`.
impl PrincipalIdealRing for Rationals {
    fn normalize(&self, a: &BigRational) -> BigRational {
        if a.is_zero() {
            BigRational::zero()
        } else {
            BigRational::one()
        }
    }

    fn divides(&self, a: &BigRational, b: &BigRational) -> bool {
        !a.is_zero() || b.is_zero()
    }

    fn gcd(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_zero() && b.is_zero() {
            BigRational::zero()
        } else {
            BigRational::one()
        }
    }

    fn lcm(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_zero() || b.is_zero() {
            BigRational::zero()
        } else {
            BigRational::one()
        }
    }

    fn colon(&self, g: &BigRational, a: &BigRational) -> BigRational {
        if a.is_zero() || !g.is_zero() {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    }

    fn residue(&self, a: &BigRational, g: &BigRational) -> BigRational {
        if g.is_zero() {
            a.clone()
        } else {
            BigRational::zero()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::laws::assert_ring_axioms;

    fn q(s: &str) -> BigRational {
        Rationals.decode(s).unwrap()
    }

    #[test]
    fn lowest_terms() {
        assert_eq!(q("2/4"), q("1/2"));
        assert_eq!(q("3/-6"), q("-1/2"));
        assert_eq!(Rationals.encode(&q("4/2")), "2");
        assert!(Rationals.decode("1/0").is_err());
    }

    #[test]
    fn weights() {
        assert_eq!(Rationals.default_weight(&q("0")), 0);
        assert_eq!(Rationals.default_weight(&q("1")), 3);
        assert_eq!(Rationals.default_weight(&q("-1/2")), 4);
        // |a| + b = 3 with gcd 1: 2/1, 1/2
        assert_eq!(
            Rationals.default_atoms_of_weight(4),
            vec![q("1/2"), q("-1/2"), q("2"), q("-2")]
        );
        for w in 0..12 {
            for a in Rationals.default_atoms_of_weight(w) {
                assert_eq!(Rationals.default_weight(&a), w);
            }
        }
    }

    #[test]
    fn axioms() {
        let sample: Vec<BigRational> = ["0", "1", "-1", "1/2", "-2/3", "5/7"]
            .iter()
            .map(|s| q(s))
            .collect();
        assert_ring_axioms(&Rationals, &sample);
    }
}
