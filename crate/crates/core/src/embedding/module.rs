use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::l1::{factorial, l1_norm, L1Vector, SequenceWeights};
use crate::norm::{coset_norm, DiscreteNorm, NormConvention, RingNorm, TermNorm};
use crate::pid::PidIdeal;
use crate::ring::{Presentation, PrincipalIdealRing, RingDescriptor, WeightConfig};

pub const DEFAULT_NORM_CAP: u64 = 512;

/// The ambient module ℓ¹(R) for a ring, weight table and norm convention.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDescriptor {
    pub ring: RingDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<WeightConfig>,
    #[serde(default = "default_convention")]
    pub norm: NormConvention,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm_cap: Option<u64>,
}

fn default_convention() -> NormConvention {
    NormConvention::Term
}

/// The closed submodule `N`: either `{0}` or ℓ¹(J) for an ideal `J`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubmoduleDescriptor {
    Zero,
    L1Ideal(String),
}

/// ℓ¹(R) with a submodule N = ℓ¹(J), presented through finitely supported
/// vectors.
///
/// * `F_k = {u ∈ N : ‖u‖ ≤ k}`, so `N = ⋃ F_k`.
/// * The distance from `v` to `N` is `Σ_i |v_i + J| / i!`, which bounds the
///   distance to every `F_k` from below.
/// * `U_k = {u : ‖u‖ < 2^{-k}}`.
#[derive(Clone)]
pub struct SequenceModule<R: PrincipalIdealRing> {
    descriptor: ModuleDescriptor,
    submodule: SubmoduleDescriptor,
    norm: Arc<dyn RingNorm<R>>,
    ideal: PidIdeal<R>,
}

impl<R: PrincipalIdealRing> std::fmt::Debug for SequenceModule<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SequenceModule")
            .field("descriptor", &self.descriptor)
            .field("submodule", &self.submodule)
            .finish()
    }
}

impl<R: PrincipalIdealRing> SequenceModule<R> {
    pub fn new(ring: R, descriptor: ModuleDescriptor, submodule: SubmoduleDescriptor) -> Result<Self> {
        if ring.descriptor() != descriptor.ring {
            return Err(Error::RingMismatch(descriptor.ring.to_string(), ring.descriptor().to_string()));
        }
        let norm: Arc<dyn RingNorm<R>> = match descriptor.norm {
            NormConvention::Term => {
                let presentation = Presentation::with_weights(ring.clone(), descriptor.weights.as_ref())?;
                Arc::new(TermNorm::new(presentation, descriptor.norm_cap.unwrap_or(DEFAULT_NORM_CAP)))
            }
            NormConvention::Discrete => {
                if descriptor.weights.is_some() {
                    return Err(Error::Config("the discrete norm takes no weight table".into()));
                }
                Arc::new(DiscreteNorm::new(ring.clone())?)
            }
        };
        let ideal = match &submodule {
            SubmoduleDescriptor::Zero => PidIdeal::zero(ring),
            SubmoduleDescriptor::L1Ideal(g) => PidIdeal::parse(ring, g)?,
        };
        Ok(SequenceModule { descriptor, submodule, norm, ideal })
    }

    pub fn descriptor(&self) -> &ModuleDescriptor {
        &self.descriptor
    }

    pub fn submodule(&self) -> &SubmoduleDescriptor {
        &self.submodule
    }

    pub fn ring(&self) -> &R {
        self.norm.ring()
    }

    pub fn ring_norm(&self) -> &dyn RingNorm<R> {
        self.norm.as_ref()
    }

    /// The ideal `J` with `N = ℓ¹(J)`.
    pub fn submodule_ideal(&self) -> &PidIdeal<R> {
        &self.ideal
    }

    pub fn norm(&self, u: &L1Vector<R>) -> Result<BigRational> {
        l1_norm(u, self.norm.as_ref(), &SequenceWeights::Factorial)
    }

    pub fn in_submodule(&self, u: &L1Vector<R>) -> bool {
        u.entries().all(|(_, r)| self.ideal.contains(r))
    }

    pub fn in_level(&self, u: &L1Vector<R>, k: u64) -> Result<bool> {
        Ok(self.in_submodule(u) && self.norm(u)? <= BigRational::from_integer(BigInt::from(k)))
    }

    /// Exact distance from `u` to `N`.
    pub fn distance_to_submodule(&self, u: &L1Vector<R>) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (k, r) in u.entries() {
            let v = coset_norm(self.norm.as_ref(), &self.ideal, r)
                .map_err(|e| Error::CoordinateExceedsCap { index: k, cap: e.cap })?;
            total += BigRational::new(BigInt::from(v), factorial(k));
        }
        Ok(total)
    }

    pub fn in_neighborhood(&self, u: &L1Vector<R>, k: u32) -> Result<bool> {
        Ok(self.norm(u)? < BigRational::new(BigInt::one(), BigInt::from(2u8).pow(k)))
    }

    /// Canonical representative of `u + N`, coordinatewise modulo `J`.
    pub fn coset_key(&self, u: &L1Vector<R>) -> Vec<(usize, R::Elem)> {
        let ring = self.ring();
        u.entries()
            .map(|(k, r)| (k, ring.residue(r, self.ideal.generator())))
            .filter(|(_, r)| !ring.is_zero(r))
            .collect()
    }
}
