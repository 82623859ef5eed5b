//! Finitely supported vectors in ℓ¹(R) with the norm `Σ_k |r_k| · c_k`,
//! where `c_k = 1/k!` by default.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norm::RingNorm;
use crate::pid::PidIdeal;
use crate::ring::{quotient_ring, EuclideanDomain, Ring, RingDescriptor};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct L1Vector<R: Ring> {
    ring: R,
    entries: BTreeMap<usize, R::Elem>,
}

impl<R: Ring> L1Vector<R> {
    pub fn zero(ring: R) -> Self {
        L1Vector { ring, entries: BTreeMap::new() }
    }

    /// Builds a vector from `(index, value)` pairs; zero values are dropped
    /// and repeated indices are rejected.
    pub fn from_entries(ring: R, entries: impl IntoIterator<Item = (usize, R::Elem)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, r) in entries {
            if map.contains_key(&k) {
                return Err(Error::Config(format!("index {k} appears twice")));
            }
            if !ring.is_zero(&r) {
                map.insert(k, r);
            }
        }
        Ok(L1Vector { ring, entries: map })
    }

    /// `r · e_k`.
    pub fn unit(ring: R, k: usize, r: R::Elem) -> Self {
        let mut entries = BTreeMap::new();
        if !ring.is_zero(&r) {
            entries.insert(k, r);
        }
        L1Vector { ring, entries }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, k: usize) -> Option<&R::Elem> {
        self.entries.get(&k)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &R::Elem)> {
        self.entries.iter().map(|(k, r)| (*k, r))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                self.ring.descriptor().to_string(),
                other.ring.descriptor().to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut entries = self.entries.clone();
        for (k, r) in &other.entries {
            let sum = match entries.get(k) {
                Some(a) => self.ring.add(a, r),
                None => r.clone(),
            };
            if self.ring.is_zero(&sum) {
                entries.remove(k);
            } else {
                entries.insert(*k, sum);
            }
        }
        Ok(L1Vector { ring: self.ring.clone(), entries })
    }

    pub fn neg(&self) -> Self {
        self.map(|r| self.ring.neg(r))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &R::Elem) -> Self {
        self.map(|r| self.ring.mul(s, r))
    }

    fn map(&self, f: impl Fn(&R::Elem) -> R::Elem) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|(k, r)| (*k, f(r)))
            .filter(|(_, r)| !self.ring.is_zero(r))
            .collect();
        L1Vector { ring: self.ring.clone(), entries }
    }

    pub fn to_json(&self) -> VectorJson {
        VectorJson {
            ring: self.ring.descriptor(),
            entries: self
                .entries
                .iter()
                .map(|(k, r)| (*k, self.ring.encode(r)))
                .collect(),
        }
    }

    pub fn from_json(ring: R, json: &VectorJson) -> Result<Self> {
        if json.ring != ring.descriptor() {
            return Err(Error::RingMismatch(json.ring.to_string(), ring.descriptor().to_string()));
        }
        let entries = json
            .entries
            .iter()
            .map(|(k, s)| Ok((*k, ring.decode(s)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(ring, entries)
    }
}

/// Wire form: `{"ring": …, "entries": [[k, "element"], …]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorJson {
    pub ring: RingDescriptor,
    pub entries: Vec<(usize, String)>,
}

/// Coefficients `c_k > 0` of the sequence norm.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceWeights {
    /// `c_k = 1/k!`.
    #[default]
    Factorial,
    /// Finitely many listed coefficients; `tail_bound` bounds the sum of the
    /// unlisted ones and is carried for callers that need it.
    Explicit {
        #[serde(with = "rational_list")]
        weights: Vec<BigRational>,
        #[serde(with = "rational_str")]
        tail_bound: BigRational,
    },
}

impl SequenceWeights {
    pub fn validate(&self) -> Result<()> {
        if let SequenceWeights::Explicit { weights, tail_bound } = self {
            if weights.iter().any(|c| !c.is_positive()) || tail_bound.is_negative() {
                return Err(Error::Config("sequence weights must be positive".into()));
            }
        }
        Ok(())
    }

    pub fn coefficient(&self, k: usize) -> Result<BigRational> {
        match self {
            SequenceWeights::Factorial => Ok(BigRational::new(BigInt::one(), factorial(k))),
            SequenceWeights::Explicit { weights, .. } => weights
                .get(k)
                .cloned()
                .ok_or_else(|| Error::Config(format!("no sequence weight given for index {k}"))),
        }
    }
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `Σ_k |r_k| · c_k` as an exact rational.
pub fn l1_norm<R: Ring>(
    v: &L1Vector<R>,
    norm: &dyn RingNorm<R>,
    weights: &SequenceWeights,
) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for (k, r) in v.entries() {
        let value = norm
            .norm(r)
            .map_err(|e| Error::CoordinateExceedsCap { index: k, cap: e.cap })?;
        total += weights.coefficient(k)? * BigInt::from(value);
    }
    Ok(total)
}

/// Coordinatewise reduction ℓ¹(R) → ℓ¹(R/I).
pub fn quotient_map<R: EuclideanDomain>(
    v: &L1Vector<R>,
    ideal: &PidIdeal<R>,
) -> Result<L1Vector<R::Quotient>> {
    let q = quotient_ring(v.ring(), ideal)?;
    let entries: Vec<_> = v
        .entries()
        .map(|(k, r)| (k, v.ring().reduce_into(&q, r)))
        .collect();
    L1Vector::from_entries(q, entries)
}

/// Whether every coordinate lies in `I`, i.e. `v ∈ ℓ¹(I)`.
pub fn kernel_membership<R: crate::ring::PrincipalIdealRing>(v: &L1Vector<R>, ideal: &PidIdeal<R>) -> bool {
    v.entries().all(|(_, r)| ideal.contains(r))
}

/// Exact fraction text: `p/q`, or `p` when the denominator is 1.
pub fn format_rational(q: &BigRational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    crate::ring::parse_rational(s).ok_or_else(|| Error::Config(format!("not a rational number: {s:?}")))
}

pub(crate) mod rational_str {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod rational_list {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(qs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = qs.iter().map(super::format_rational).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| super::parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
