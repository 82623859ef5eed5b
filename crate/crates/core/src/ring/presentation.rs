use std::collections::BTreeMap;

use super::{Ring, WeightConfig};
use crate::error::{Error, Result};

/// A ring together with its atom weight function.
///
/// The weight is `scale · default_weight(r)` unless `r` has an explicit
/// override.
#[derive(Debug, Clone, PartialEq)]
pub struct Presentation<R: Ring> {
    ring: R,
    scale: u64,
    overrides: BTreeMap<R::Elem, u64>,
}

impl<R: Ring> Presentation<R> {
    pub fn new(ring: R) -> Self {
        Presentation { ring, scale: 1, overrides: BTreeMap::new() }
    }

    pub fn with_weights(ring: R, config: Option<&WeightConfig>) -> Result<Self> {
        let Some(config) = config else {
            return Ok(Self::new(ring));
        };
        let scale = config.scale.unwrap_or(1);
        if scale == 0 {
            return Err(Error::InvalidWeights("scale must be positive".into()));
        }
        let mut overrides = BTreeMap::new();
        for (key, &w) in &config.overrides {
            let r = ring.decode(key)?;
            if overrides.insert(r.clone(), w).is_some() {
                return Err(Error::InvalidWeights(format!("{key} given twice")));
            }
        }
        for (r, &w) in &overrides {
            let name = ring.encode(r);
            if ring.is_zero(r) {
                if w != 0 {
                    return Err(Error::InvalidWeights("weight of 0 must be 0".into()));
                }
                continue;
            }
            if w < 2 {
                return Err(Error::InvalidWeights(format!("weight of {name} must be at least 2")));
            }
            let neg = ring.neg(r);
            let neg_w = overrides.get(&neg).copied().unwrap_or(scale * ring.default_weight(&neg));
            if neg_w != w {
                return Err(Error::InvalidWeights(format!(
                    "weight of {name} is {w} but weight of {} is {neg_w}",
                    ring.encode(&neg)
                )));
            }
        }
        Ok(Presentation { ring, scale, overrides })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn weight_config(&self) -> Option<WeightConfig> {
        let config = WeightConfig {
            scale: (self.scale != 1).then_some(self.scale),
            overrides: self
                .overrides
                .iter()
                .map(|(r, w)| (self.ring.encode(r), *w))
                .collect(),
        };
        (!config.is_default()).then_some(config)
    }

    pub fn weight(&self, r: &R::Elem) -> u64 {
        match self.overrides.get(r) {
            Some(&w) => w,
            None => self.ring.default_weight(r).saturating_mul(self.scale),
        }
    }

    /// All elements of weight exactly `w`, in the ring's enumeration order.
    pub fn atoms_of_weight(&self, w: u64) -> Vec<R::Elem> {
        let mut out: Vec<R::Elem> = if w.is_multiple_of(self.scale) {
            self.ring
                .default_atoms_of_weight(w / self.scale)
                .into_iter()
                .filter(|r| !self.overrides.contains_key(r))
                .collect()
        } else {
            Vec::new()
        };
        out.extend(
            self.overrides
                .iter()
                .filter(|(_, &ow)| ow == w)
                .map(|(r, _)| r.clone()),
        );
        out.sort_by(|a, b| self.ring.elem_cmp(a, b));
        out
    }

    /// `{r : weight(r) ≤ n}`, ordered by weight then enumeration order.
    pub fn atoms_up_to(&self, n: u64) -> Vec<R::Elem> {
        (0..=n).flat_map(|w| self.atoms_of_weight(w)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, Zmod};
    use num_bigint::BigInt;

    #[test]
    fn zmod6_atoms() {
        let p = Presentation::new(Zmod::new(6).unwrap());
        assert_eq!(p.atoms_up_to(3), vec![0, 1, 5, 2, 4]);
        for n in 0..8 {
            let small = p.atoms_up_to(n);
            let big = p.atoms_up_to(n + 1);
            assert!(small.iter().all(|r| big.contains(r)));
            for r in 0..6 {
                assert_eq!(small.contains(&r), p.weight(&r) <= n);
            }
        }
    }

    #[test]
    fn overrides_and_scale() {
        let mut config = WeightConfig { scale: Some(2), ..Default::default() };
        config.overrides.insert("3".into(), 5);
        config.overrides.insert("-3".into(), 5);
        let p = Presentation::with_weights(Integers, Some(&config)).unwrap();
        assert_eq!(p.weight(&BigInt::from(1)), 4);
        assert_eq!(p.weight(&BigInt::from(-3)), 5);
        assert_eq!(p.atoms_of_weight(5), vec![BigInt::from(3), BigInt::from(-3)]);
        assert_eq!(p.atoms_of_weight(8), Vec::<BigInt>::new());
        assert_eq!(p.atoms_of_weight(6), vec![BigInt::from(2), BigInt::from(-2)]);
        assert_eq!(p.weight_config(), Some(config));
    }

    #[test]
    fn rejects_bad_overrides() {
        let mut asym = WeightConfig::default();
        asym.overrides.insert("3".into(), 7);
        assert!(matches!(
            Presentation::with_weights(Integers, Some(&asym)),
            Err(Error::InvalidWeights(_))
        ));
        let mut low = WeightConfig::default();
        low.overrides.insert("1".into(), 1);
        low.overrides.insert("-1".into(), 1);
        assert!(Presentation::with_weights(Integers, Some(&low)).is_err());
        let zero_scale = WeightConfig { scale: Some(0), ..Default::default() };
        assert!(Presentation::with_weights(Integers, Some(&zero_scale)).is_err());
    }
}
