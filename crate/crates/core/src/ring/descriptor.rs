use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which ring a configuration or artifact refers to.
///
/// JSON form is externally tagged: `"Z"`, `{"Zmod": 6}`, `"Q"`, `{"GF": 5}`,
/// `{"PolyGF": 2}`, `{"PolyGFQuotient": {"p": 2, "modulus": "x^2+x+1"}}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingDescriptor {
    Z,
    Zmod(u64),
    Q,
    GF(u64),
    PolyGF(u64),
    PolyGFQuotient { p: u64, modulus: String },
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Z => write!(f, "Z"),
            RingDescriptor::Zmod(n) => write!(f, "Zmod{n}"),
            RingDescriptor::Q => write!(f, "Q"),
            RingDescriptor::GF(p) => write!(f, "GF{p}"),
            RingDescriptor::PolyGF(p) => write!(f, "PolyGF{p}"),
            RingDescriptor::PolyGFQuotient { p, modulus } => write!(f, "PolyGF{p}/({modulus})"),
        }
    }
}

fn parse_param(rest: &str) -> Option<u64> {
    let rest = rest.trim();
    let inner = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(rest);
    inner.trim().parse().ok()
}

/// Accepts the short forms printed by `Display` (`Zmod6`, `Zmod(6)`, `GF2`,
/// `PolyGF(2)`, `PolyGF2/(x^2+x+1)`) as well as the JSON form.
impl FromStr for RingDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Config(format!("unknown ring descriptor {s:?}"));
        if t.starts_with('{') || t.starts_with('"') {
            return serde_json::from_str(t).map_err(|e| Error::Config(format!("ring descriptor {s:?}: {e}")));
        }
        match t {
            "Z" => return Ok(RingDescriptor::Z),
            "Q" => return Ok(RingDescriptor::Q),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("PolyGF") {
            if let Some((head, modulus)) = rest.split_once('/') {
                let p = parse_param(head).ok_or_else(bad)?;
                let m = modulus.trim();
                let m = m
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .unwrap_or(m);
                return Ok(RingDescriptor::PolyGFQuotient { p, modulus: m.to_string() });
            }
            return parse_param(rest).map(RingDescriptor::PolyGF).ok_or_else(bad);
        }
        if let Some(rest) = t.strip_prefix("Zmod") {
            return parse_param(rest).map(RingDescriptor::Zmod).ok_or_else(bad);
        }
        if let Some(rest) = t.strip_prefix("GF") {
            return parse_param(rest).map(RingDescriptor::GF).ok_or_else(bad);
        }
        Err(bad())
    }
}

/// Optional weight customization: a uniform multiplier on the default
/// weight and per-element overrides keyed by canonical encoding.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub overrides: BTreeMap<String, u64>,
}

impl WeightConfig {
    pub fn is_default(&self) -> bool {
        self.scale.unwrap_or(1) == 1 && self.overrides.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingConfig {
    pub ring: RingDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<WeightConfig>,
}

impl RingConfig {
    pub fn plain(ring: RingDescriptor) -> Self {
        RingConfig { ring, weights: None }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))
    }
}
