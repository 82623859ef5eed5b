//! Principal ideals of ℤ and F_p[x]: factorization `I = 𝔭·s`, the induced
//! map ℓ¹(R/𝔭) → ℓ¹(R/I), and annihilators.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::l1::{L1Vector, VectorJson};
use crate::ring::{EuclideanDomain, PrimalityCertificate, PrincipalIdealRing};

/// An ideal stored by its canonical generator, so equality is syntactic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PidIdeal<R: PrincipalIdealRing> {
    ring: R,
    generator: R::Elem,
}

impl<R: PrincipalIdealRing> PidIdeal<R> {
    pub fn new(ring: R, generator: R::Elem) -> Self {
        let generator = ring.normalize(&generator);
        PidIdeal { ring, generator }
    }

    pub fn zero(ring: R) -> Self {
        let g = ring.zero();
        PidIdeal { ring, generator: g }
    }

    pub fn unit(ring: R) -> Self {
        let g = ring.normalize(&ring.one());
        PidIdeal { ring, generator: g }
    }

    pub fn parse(ring: R, s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let g = ring.decode(inner)?;
        Ok(Self::new(ring, g))
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn generator(&self) -> &R::Elem {
        &self.generator
    }

    pub fn contains(&self, r: &R::Elem) -> bool {
        self.ring.divides(&self.generator, r)
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.generator)
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(&self.generator)
    }

    /// `I ⊆ J`.
    pub fn is_contained_in(&self, other: &Self) -> bool {
        other.contains(&self.generator)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        Self::new(self.ring.clone(), self.ring.lcm(&self.generator, &other.generator))
    }
}

impl<R: PrincipalIdealRing> fmt::Display for PidIdeal<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.ring.encode(&self.generator))
    }
}

/// `I = 𝔭·s` with `𝔭` prime.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimeFactor<R: EuclideanDomain> {
    ideal: PidIdeal<R>,
    prime: PidIdeal<R>,
    cofactor: R::Elem,
    certificate: PrimalityCertificate,
}

impl<R: EuclideanDomain> PrimeFactor<R> {
    /// Checks that `𝔭` is prime and that `generator(𝔭) · s` generates `I`.
    pub fn new(
        ideal: PidIdeal<R>,
        prime: PidIdeal<R>,
        cofactor: R::Elem,
        certificate: PrimalityCertificate,
    ) -> Result<Self> {
        let ring = ideal.ring().clone();
        if !ring.is_prime(prime.generator()) {
            return Err(Error::InconsistentFactor(format!("{prime} is not prime")));
        }
        let product = ring.normalize(&ring.mul(prime.generator(), &cofactor));
        if &product != ideal.generator() {
            return Err(Error::InconsistentFactor(format!(
                "{prime} times {} is not {ideal}",
                ring.encode(&cofactor)
            )));
        }
        Ok(PrimeFactor { ideal, prime, cofactor, certificate })
    }

    pub fn ideal(&self) -> &PidIdeal<R> {
        &self.ideal
    }

    pub fn prime(&self) -> &PidIdeal<R> {
        &self.prime
    }

    pub fn cofactor(&self) -> &R::Elem {
        &self.cofactor
    }

    pub fn certificate(&self) -> &PrimalityCertificate {
        &self.certificate
    }

    pub fn to_json(&self) -> FactorJson {
        FactorJson {
            ideal: self.ideal.to_string(),
            prime: self.prime.to_string(),
            cofactor: self.ideal.ring().encode(&self.cofactor),
            certificate: self.certificate.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorJson {
    pub ideal: String,
    pub prime: String,
    pub cofactor: String,
    pub certificate: PrimalityCertificate,
}

/// Splits off the least prime divisor of a proper nonzero ideal.
pub fn factor_ideal<R: EuclideanDomain>(ideal: &PidIdeal<R>) -> Result<PrimeFactor<R>> {
    let ring = ideal.ring();
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let (p, certificate) = ring.least_prime_divisor(ideal.generator())?;
    let (s, rem) = ring.div_rem(ideal.generator(), &p);
    debug_assert!(ring.is_zero(&rem));
    PrimeFactor::new(ideal.clone(), PidIdeal::new(ring.clone(), p), s, certificate)
}

/// `(r_k) ↦ (r_k · s)` from ℓ¹(R/𝔭) into ℓ¹(R/I). Each nonzero coordinate
/// must stay nonzero; this is checked on the given vector.
pub fn prime_embedding<R: EuclideanDomain>(
    factor: &PrimeFactor<R>,
    v: &L1Vector<R::Quotient>,
) -> Result<L1Vector<R::Quotient>> {
    let ring = factor.ideal.ring();
    let source = ring.quotient_by(factor.prime.generator())?;
    if v.ring() != &source {
        return Err(Error::InconsistentFactor(format!(
            "vector lives over {}, expected {}",
            crate::ring::Ring::descriptor(v.ring()),
            crate::ring::Ring::descriptor(&source)
        )));
    }
    let target = ring.quotient_by(factor.ideal.generator())?;
    let mut entries = Vec::with_capacity(v.len());
    for (k, r) in v.entries() {
        let lifted = ring.lift_from(&source, r);
        let image = ring.reduce_into(&target, &ring.mul(&lifted, &factor.cofactor));
        if crate::ring::Ring::is_zero(&target, &image) {
            return Err(Error::InconsistentFactor(format!("coordinate {k} is sent to 0")));
        }
        entries.push((k, image));
    }
    L1Vector::from_entries(target, entries)
}

/// `{r ∈ R : r·v = 0}` for `v` over a quotient `R/(g)`: the intersection of
/// the coordinate annihilators `((g) : a_k)`.
pub fn annihilator<R: EuclideanDomain>(ring: &R, v: &L1Vector<R::Quotient>) -> PidIdeal<R> {
    let g = ring.modulus_of(v.ring());
    let mut acc = ring.one();
    for (_, a) in v.entries() {
        let coordinate = ring.colon(&g, &ring.lift_from(v.ring(), a));
        acc = ring.lcm(&acc, &coordinate);
    }
    PidIdeal::new(ring.clone(), acc)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Distinction<R: EuclideanDomain> {
    Equal,
    /// A nonzero vector over R/𝔭 whose annihilator is 𝔭. Every nonzero
    /// vector over R/𝔮 has annihilator 𝔮, and linear injections preserve
    /// annihilators, so the vector has no image in ℓ¹(R/𝔮).
    Obstruction { vector: L1Vector<R::Quotient>, annihilator: PidIdeal<R> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinctionJson {
    pub first: String,
    pub second: String,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vector: Option<VectorJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annihilator: Option<String>,
}

pub fn distinguish_primes<R: EuclideanDomain>(
    first: &PidIdeal<R>,
    second: &PidIdeal<R>,
) -> Result<Distinction<R>> {
    let ring = first.ring();
    for ideal in [first, second] {
        if !ring.is_prime(ideal.generator()) {
            return Err(Error::Precondition(format!("{ideal} is not a prime ideal")));
        }
    }
    if first == second {
        return Ok(Distinction::Equal);
    }
    let quotient = ring.quotient_by(first.generator())?;
    let one = crate::ring::Ring::one(&quotient);
    let vector = L1Vector::unit(quotient, 0, one);
    let ann = annihilator(ring, &vector);
    if &ann != first || &ann == second {
        return Err(Error::InconsistentFactor(format!(
            "annihilator {ann} does not separate {first} from {second}"
        )));
    }
    Ok(Distinction::Obstruction { vector, annihilator: ann })
}

impl<R: EuclideanDomain> Distinction<R> {
    pub fn to_json(&self, first: &PidIdeal<R>, second: &PidIdeal<R>) -> DistinctionJson {
        let (equal, vector, annihilator) = match self {
            Distinction::Equal => (true, None, None),
            Distinction::Obstruction { vector, annihilator } => {
                (false, Some(vector.to_json()), Some(annihilator.to_string()))
            }
        };
        DistinctionJson {
            first: first.to_string(),
            second: second.to_string(),
            equal,
            vector,
            annihilator,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, PolyGf, Ring, Zmod};
    use num_bigint::BigInt;

    fn zi(n: i64) -> PidIdeal<Integers> {
        PidIdeal::new(Integers, BigInt::from(n))
    }

    fn f2() -> PolyGf {
        PolyGf::new(2).unwrap()
    }

    fn pi(s: &str) -> PidIdeal<PolyGf> {
        PidIdeal::parse(f2(), s).unwrap()
    }

    #[test]
    fn canonical_generators() {
        assert_eq!(zi(-12), zi(12));
        assert_eq!(zi(-12).to_string(), "(12)");
        let r3 = PolyGf::new(3).unwrap();
        let i = PidIdeal::parse(r3, "(2x+1)").unwrap();
        assert_eq!(i.to_string(), "(x+2)");
        assert!(zi(4).is_contained_in(&zi(2)));
        assert_eq!(zi(4).intersect(&zi(6)), zi(12));
    }

    #[test]
    fn factoring() {
        let f = factor_ideal(&zi(12)).unwrap();
        assert_eq!(f.prime(), &zi(2));
        assert_eq!(f.cofactor(), &BigInt::from(6));
        let f = factor_ideal(&zi(7)).unwrap();
        assert_eq!((f.prime(), f.cofactor()), (&zi(7), &BigInt::from(1)));
        let f = factor_ideal(&pi("x^2+x")).unwrap();
        assert_eq!(f.prime(), &pi("x"));
        assert_eq!(f2().encode(f.cofactor()), "x+1");
        assert_eq!(factor_ideal(&zi(0)), Err(Error::ZeroIdeal));
        assert_eq!(factor_ideal(&zi(1)), Err(Error::UnitIdeal));
    }

    #[test]
    fn rejects_inconsistent_factor() {
        let cert = factor_ideal(&zi(12)).unwrap().certificate().clone();
        assert!(PrimeFactor::new(zi(12), zi(2), BigInt::from(5), cert.clone()).is_err());
        assert!(PrimeFactor::new(zi(12), zi(4), BigInt::from(3), cert).is_err());
    }

    #[test]
    fn embedding() {
        let f = factor_ideal(&zi(12)).unwrap();
        let z2 = Zmod::new(2).unwrap();
        let v = L1Vector::from_entries(z2, [(0, 1), (3, 1)]).unwrap();
        let image = prime_embedding(&f, &v).unwrap();
        assert_eq!(image, L1Vector::from_entries(Zmod::new(12).unwrap(), [(0, 6), (3, 6)]).unwrap());
        assert!(prime_embedding(&f, &L1Vector::zero(z2)).unwrap().is_zero());
        let wrong = L1Vector::from_entries(Zmod::new(3).unwrap(), [(0, 1)]).unwrap();
        assert!(prime_embedding(&f, &wrong).is_err());
    }

    #[test]
    fn annihilators() {
        let z5 = Zmod::new(5).unwrap();
        let v = L1Vector::from_entries(z5, [(1, 3)]).unwrap();
        assert_eq!(annihilator(&Integers, &v), zi(5));
        assert_eq!(annihilator(&Integers, &L1Vector::zero(z5)), zi(1));
        let q = f2().quotient_by(&f2().decode("x").unwrap()).unwrap();
        let v = L1Vector::unit(q.clone(), 0, q.one());
        assert_eq!(annihilator(&f2(), &v), pi("x"));
        // over ℤ/12 the coordinate annihilators (6) and (4) meet in (12)
        let z12 = Zmod::new(12).unwrap();
        let v = L1Vector::from_entries(z12, [(0, 2), (1, 3)]).unwrap();
        assert_eq!(annihilator(&Integers, &v), zi(12));
    }

    #[test]
    fn distinguishing() {
        match distinguish_primes(&zi(2), &zi(3)).unwrap() {
            Distinction::Obstruction { vector, annihilator } => {
                assert_eq!(vector.get(0), Some(&1));
                assert_eq!(annihilator, zi(2));
            }
            Distinction::Equal => panic!("expected an obstruction"),
        }
        assert_eq!(distinguish_primes(&zi(5), &zi(5)).unwrap(), Distinction::Equal);
        match distinguish_primes(&pi("x"), &pi("x+1")).unwrap() {
            Distinction::Obstruction { annihilator, .. } => assert_eq!(annihilator, pi("x")),
            Distinction::Equal => panic!("expected an obstruction"),
        }
        assert!(matches!(distinguish_primes(&zi(4), &zi(3)), Err(Error::Precondition(_))));
    }
}
