//! Computable presentations of countable commutative rings.
//!
//! Every ring here has canonical element forms, so `Eq`/`Hash` on elements
//! agree with ring equality. Arithmetic lives on the ring value (moduli and
//! characteristics are runtime data), elements are plain values.

mod descriptor;
mod integers;
pub mod poly;
mod presentation;
mod rationals;
mod zmod;

use std::cmp::Ordering;
use std::fmt::Debug;
use std::hash::Hash;

pub use descriptor::{RingConfig, RingDescriptor, WeightConfig};
pub use integers::Integers;
pub use poly::{Poly, PolyGf, PolyQuotient};
pub use presentation::Presentation;
pub use rationals::Rationals;
pub(crate) use rationals::parse_rational;
pub use zmod::Zmod;

use crate::error::{Error, Result};
use crate::pid::PidIdeal;

pub trait Ring: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync + 'static;

    fn descriptor(&self) -> RingDescriptor;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// Canonical text form; `decode(encode(r)) == r`.
    fn encode(&self, a: &Self::Elem) -> String;
    fn decode(&self, s: &str) -> Result<Self::Elem>;

    /// Default atom weight: 0 at zero, at least 2 elsewhere, symmetric under negation.
    fn default_weight(&self, a: &Self::Elem) -> u64;

    /// All elements whose default weight is exactly `w`.
    fn default_atoms_of_weight(&self, w: u64) -> Vec<Self::Elem>;

    /// Enumeration order used for output and first-fit scans.
    fn elem_cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering {
        a.cmp(b)
    }

    /// Every element, for finite rings.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    fn is_finite(&self) -> bool {
        self.elements().is_some()
    }

    fn parse_error(&self, input: &str) -> Error {
        Error::Parse {
            ring: self.descriptor().to_string(),
            input: input.to_string(),
        }
    }
}

/// Ideal arithmetic for rings in which every ideal is principal.
///
/// Generators are handled through their canonical representative
/// (`normalize`), so two ideals are equal iff their normalized generators are.
pub trait PrincipalIdealRing: Ring {
    /// Canonical generator of `(a)`.
    fn normalize(&self, a: &Self::Elem) -> Self::Elem;
    /// `b ∈ (a)`.
    fn divides(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    /// Generator of `(a) + (b)`.
    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Generator of `(a) ∩ (b)`.
    fn lcm(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Generator of `{r : r·a ∈ (g)}`.
    fn colon(&self, g: &Self::Elem, a: &Self::Elem) -> Self::Elem;
    /// Canonical representative of `a + (g)`.
    fn residue(&self, a: &Self::Elem, g: &Self::Elem) -> Self::Elem;

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.divides(a, &self.one())
    }
}

/// Primality evidence retained by factorization.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimalityCertificate {
    /// No integer in `2..=bound` divides `n`, and `(bound+1)² > n`.
    TrialDivision { n: String, bound: u64, divisors_tested: u64 },
    /// No monic polynomial of degree `1..=degree_bound` divides `poly`.
    Irreducibility { poly: String, degree_bound: usize, divisors_tested: u64 },
}

/// Euclidean domains (ℤ and F_p[x]) whose quotients by nonzero proper
/// ideals are again presentable rings.
pub trait EuclideanDomain: PrincipalIdealRing {
    type Quotient: PrincipalIdealRing;

    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// `R/(g)`; `g` must be nonzero and a non-unit.
    fn quotient_by(&self, g: &Self::Elem) -> Result<Self::Quotient>;
    fn reduce_into(&self, q: &Self::Quotient, a: &Self::Elem) -> <Self::Quotient as Ring>::Elem;
    /// Canonical lift of a residue back to `R`.
    fn lift_from(&self, q: &Self::Quotient, a: &<Self::Quotient as Ring>::Elem) -> Self::Elem;
    /// Normalized `g` with `q = R/(g)`.
    fn modulus_of(&self, q: &Self::Quotient) -> Self::Elem;

    /// Least prime divisor of a nonzero non-unit, with primality evidence.
    fn least_prime_divisor(&self, g: &Self::Elem) -> Result<(Self::Elem, PrimalityCertificate)>;

    fn is_prime(&self, g: &Self::Elem) -> bool {
        if self.is_zero(g) || self.is_unit(g) {
            return false;
        }
        match self.least_prime_divisor(g) {
            Ok((p, _)) => p == self.normalize(g),
            Err(_) => false,
        }
    }
}

/// `R/I` for a nonzero proper ideal `I`. The quotient's weight function is
/// only a descriptor; the true quotient norm comes from
/// [`crate::norm::quotient_norm`].
pub fn quotient_ring<R: EuclideanDomain>(ring: &R, ideal: &PidIdeal<R>) -> Result<R::Quotient> {
    if ring != ideal.ring() {
        return Err(Error::RingMismatch(
            ring.descriptor().to_string(),
            ideal.ring().descriptor().to_string(),
        ));
    }
    let g = ideal.generator();
    if ring.is_zero(g) {
        return Err(Error::ZeroIdeal);
    }
    if ring.is_unit(g) {
        return Err(Error::UnitIdeal);
    }
    ring.quotient_by(g)
}

#[cfg(test)]
pub(crate) mod laws {
    use super::*;

    /// Ring axioms on every triple drawn from `sample`.
    pub fn assert_ring_axioms<R: Ring>(ring: &R, sample: &[R::Elem]) {
        let one = ring.one();
        let zero = ring.zero();
        for a in sample {
            assert_eq!(ring.mul(&one, a), *a);
            assert_eq!(ring.mul(a, &one), *a);
            assert_eq!(ring.add(a, &ring.neg(a)), zero);
            assert_eq!(ring.decode(&ring.encode(a)).unwrap(), *a);
            for b in sample {
                for c in sample {
                    assert_eq!(
                        ring.add(&ring.add(a, b), c),
                        ring.add(a, &ring.add(b, c))
                    );
                    assert_eq!(
                        ring.mul(a, &ring.add(b, c)),
                        ring.add(&ring.mul(a, b), &ring.mul(a, c))
                    );
                    assert_eq!(
                        ring.mul(&ring.add(a, b), c),
                        ring.add(&ring.mul(a, c), &ring.mul(b, c))
                    );
                }
            }
        }
    }
}
