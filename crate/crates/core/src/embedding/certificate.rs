use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::module::{ModuleDescriptor, SubmoduleDescriptor};
use crate::error::{Error, Result};
use crate::l1::{format_rational, rational_list, rational_str, L1Vector};
use crate::pid::PidIdeal;
use crate::ring::PrincipalIdealRing;

pub const CERTIFICATE_FORMAT: &str = "polmod-embedding/1";

/// A minimum over the tuple range together with a tuple attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Extremum {
    #[serde(with = "rational_str")]
    pub value: BigRational,
    pub tuple: Vec<String>,
}

/// What step `k` looked at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepEvidence {
    pub step: usize,
    /// Number of coefficient tuples enumerated for `ε_k`.
    pub tuples: usize,
    pub min_norm: Option<Extremum>,
    pub min_distance: Option<Extremum>,
    #[serde(with = "rational_str")]
    pub generator_norm: BigRational,
    /// Candidates meeting the norm bound that were skipped before `m_k`.
    pub rejected_candidates: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingCertificate<R: PrincipalIdealRing> {
    pub module: ModuleDescriptor,
    pub submodule: SubmoduleDescriptor,
    pub ideal: PidIdeal<R>,
    pub stabilized_at: usize,
    pub depth: usize,
    pub scan_bound: u64,
    pub max_index: usize,
    pub verify_bound: u64,
    pub epsilons: Vec<BigRational>,
    pub generators: Vec<L1Vector<R>>,
    pub evidence: Vec<StepEvidence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateHeader {
    pub format: String,
    pub module: ModuleDescriptor,
    pub submodule: SubmoduleDescriptor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealJson {
    pub generator: String,
    pub stabilized_at: usize,
    pub depth: usize,
}

/// Wire form of a certificate; every ring element and rational is a string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateJson {
    pub header: CertificateHeader,
    pub ideal: IdealJson,
    pub steps: usize,
    pub scan_bound: u64,
    pub max_index: usize,
    pub verify_bound: u64,
    #[serde(with = "rational_list")]
    pub epsilons: Vec<BigRational>,
    pub generators: Vec<Vec<(usize, String)>>,
    pub evidence: Vec<StepEvidence>,
}

impl<R: PrincipalIdealRing> EmbeddingCertificate<R> {
    pub fn steps(&self) -> usize {
        self.generators.len()
    }

    pub fn to_json(&self) -> CertificateJson {
        let ring = self.ideal.ring();
        CertificateJson {
            header: CertificateHeader {
                format: CERTIFICATE_FORMAT.into(),
                module: self.module.clone(),
                submodule: self.submodule.clone(),
            },
            ideal: IdealJson {
                generator: ring.encode(self.ideal.generator()),
                stabilized_at: self.stabilized_at,
                depth: self.depth,
            },
            steps: self.steps(),
            scan_bound: self.scan_bound,
            max_index: self.max_index,
            verify_bound: self.verify_bound,
            epsilons: self.epsilons.clone(),
            generators: self.generators.iter().map(|g| g.to_json().entries).collect(),
            evidence: self.evidence.clone(),
        }
    }

    pub fn from_json(ring: R, json: &CertificateJson) -> Result<Self> {
        if json.header.format != CERTIFICATE_FORMAT {
            return Err(Error::Config(format!("unknown certificate format {:?}", json.header.format)));
        }
        if json.header.module.ring != ring.descriptor() {
            return Err(Error::RingMismatch(json.header.module.ring.to_string(), ring.descriptor().to_string()));
        }
        if json.epsilons.len() != json.steps || json.generators.len() != json.steps || json.evidence.len() != json.steps {
            return Err(Error::Config(format!(
                "certificate lists {} epsilons, {} generators and {} evidence entries for {} steps",
                json.epsilons.len(),
                json.generators.len(),
                json.evidence.len(),
                json.steps
            )));
        }
        let generators = json
            .generators
            .iter()
            .map(|entries| {
                let decoded = entries
                    .iter()
                    .map(|(k, s)| Ok((*k, ring.decode(s)?)))
                    .collect::<Result<Vec<_>>>()?;
                L1Vector::from_entries(ring.clone(), decoded)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EmbeddingCertificate {
            module: json.header.module.clone(),
            submodule: json.header.submodule.clone(),
            ideal: PidIdeal::new(ring.clone(), ring.decode(&json.ideal.generator)?),
            stabilized_at: json.ideal.stabilized_at,
            depth: json.ideal.depth,
            scan_bound: json.scan_bound,
            max_index: json.max_index,
            verify_bound: json.verify_bound,
            epsilons: json.epsilons.clone(),
            generators,
            evidence: json.evidence.clone(),
        })
    }
}

impl CertificateJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("certificate: {e}")))
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn epsilon_strings(&self) -> Vec<String> {
        self.epsilons.iter().map(format_rational).collect()
    }
}
