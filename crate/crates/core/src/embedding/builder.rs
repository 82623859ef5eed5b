use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::certificate::{EmbeddingCertificate, Extremum, StepEvidence};
use super::module::{ModuleDescriptor, SequenceModule, SubmoduleDescriptor};
use super::tuples::{bounded_tuples, coefficients_up_to, factorial_u64};
use crate::error::{Error, ExceedsCap, Result};
use crate::l1::{factorial, L1Vector};
use crate::pid::PidIdeal;
use crate::ring::PrincipalIdealRing;

pub const DEFAULT_MAX_INDEX: usize = 64;

/// A builder run as read from JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildConfig {
    pub module: ModuleDescriptor,
    pub submodule: SubmoduleDescriptor,
    pub steps: usize,
    pub scan_bound: u64,
    pub verify_bound: u64,
    /// How many neighborhoods `U_0 ⊇ … ⊇ U_depth` ideal detection probes;
    /// defaults to `steps + 2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    /// Largest basis index the generator scan visits.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_index: Option<usize>,
}

impl BuildConfig {
    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::Config("steps must be at least 1".into()));
        }
        if self.scan_bound == 0 || self.verify_bound == 0 {
            return Err(Error::Config("scan_bound and verify_bound must be positive".into()));
        }
        if self.max_index == Some(0) {
            return Err(Error::Config("max_index must be positive".into()));
        }
        Ok(())
    }

    pub fn depth(&self) -> usize {
        self.depth.unwrap_or(self.steps + 2)
    }

    pub fn max_index(&self) -> usize {
        self.max_index.unwrap_or(DEFAULT_MAX_INDEX)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdealDetection<R: PrincipalIdealRing> {
    pub ideal: PidIdeal<R>,
    pub stabilized_at: usize,
    /// `I_0 ⊆ I_1 ⊆ … ⊆ I_depth`.
    pub chain: Vec<PidIdeal<R>>,
}

fn cap_error(e: ExceedsCap) -> Error {
    Error::Construction(format!("ring norm oracle: {e}"))
}

/// `I_k = {r : r·u ∈ N for all sampled u ∈ U_k}` for `k ≤ depth`.
///
/// Samples are the monomials `c·e_j` lying in `U_k`, with `c` from the two
/// lowest nonempty norm levels and `1` always included. For N = ℓ¹(J) the
/// sample `1·e_j` alone already forces `I_k ⊆ J`, and `J·u ⊆ N` for every
/// `u`, so the result is exact.
pub fn detect_ideal<R: PrincipalIdealRing>(module: &SequenceModule<R>, depth: usize) -> Result<IdealDetection<R>> {
    let ring = module.ring();
    let norm = module.ring_norm();
    let j_ideal = module.submodule_ideal();

    let mut coefficients = vec![ring.one()];
    let mut levels_taken = 0;
    let mut j = 1;
    while levels_taken < 2 && j <= norm.cap() {
        let level = norm.level(j).map_err(cap_error)?;
        if !level.is_empty() {
            coefficients.extend(level);
            levels_taken += 1;
        }
        j += 1;
        if let Some(size) = ring.elements().map(|e| e.len()) {
            if coefficients.len() >= size {
                break;
            }
        }
    }
    coefficients.sort_by(|a, b| ring.elem_cmp(a, b));
    coefficients.dedup();

    // smallest index where 1·e_j lies in U_depth
    let one_norm = BigInt::from(norm.norm(&ring.one()).map_err(cap_error)?);
    let threshold = BigInt::from(2u8).pow(depth as u32);
    let mut last_index = 0usize;
    while &one_norm * &threshold >= factorial(last_index) {
        last_index += 1;
    }

    let mut samples: Vec<(usize, R::Elem, BigRational)> = Vec::new();
    for idx in 0..=last_index {
        for c in &coefficients {
            let u = L1Vector::unit(ring.clone(), idx, c.clone());
            samples.push((idx, c.clone(), module.norm(&u)?));
        }
    }

    let mut chain = Vec::with_capacity(depth + 1);
    for k in 0..=depth {
        let radius = BigRational::new(BigInt::one(), BigInt::from(2u8).pow(k as u32));
        let mut generator = ring.one();
        for (_, c, n) in &samples {
            if n < &radius {
                generator = ring.lcm(&generator, &ring.colon(j_ideal.generator(), c));
            }
        }
        chain.push(PidIdeal::new(ring.clone(), generator));
    }
    for w in chain.windows(2) {
        if !w[0].is_contained_in(&w[1]) {
            return Err(Error::Construction(format!("ideal chain decreases: {} then {}", w[0], w[1])));
        }
    }
    let last = chain[depth].clone();
    let stabilized_at = chain.iter().position(|i| *i == last).unwrap_or(depth);
    if depth > 0 && stabilized_at == depth {
        return Err(Error::Construction(format!("ideal chain has not stabilized by depth {depth}")));
    }
    if last.is_unit() {
        return Err(Error::Construction(
            "the detected ideal is the whole ring: the submodule is open, so the quotient is countable".into(),
        ));
    }
    Ok(IdealDetection { ideal: last, stabilized_at, chain })
}

/// `Σ_i r_i m_i`.
pub fn combine<R: PrincipalIdealRing>(ring: &R, coefficients: &[R::Elem], generators: &[L1Vector<R>]) -> L1Vector<R> {
    let mut acc = L1Vector::zero(ring.clone());
    for (r, m) in coefficients.iter().zip(generators) {
        if !ring.is_zero(r) {
            acc = acc.add(&m.scale(r)).expect("generators share the module ring");
        }
    }
    acc
}

pub(crate) fn encode_tuple<R: PrincipalIdealRing>(ring: &R, t: &[R::Elem]) -> Vec<String> {
    t.iter().map(|r| ring.encode(r)).collect()
}

/// Minimal norm of nonzero combinations and minimal distance to N of
/// combinations outside N, over tuples with `Σ_{i<k} |r_i|/i! ≤ k`.
pub(crate) fn combination_minima<R: PrincipalIdealRing>(
    module: &SequenceModule<R>,
    generators: &[L1Vector<R>],
    k: usize,
) -> Result<(usize, Option<Extremum>, Option<Extremum>)> {
    let ring = module.ring();
    let tuples = bounded_tuples(module.ring_norm(), k, k as u64).map_err(cap_error)?;
    type Best = Option<(BigRational, usize)>;
    let keep = |a: Best, b: Best| -> Best {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(x), Some(y)) => Some(if (&y.0, y.1) < (&x.0, x.1) { y } else { x }),
        }
    };
    let (norm_min, dist_min) = tuples
        .par_iter()
        .enumerate()
        .map(|(i, t)| -> Result<(Best, Best)> {
            let u = combine(ring, t, generators);
            if u.is_zero() {
                return Ok((None, None));
            }
            let n = module.norm(&u)?;
            let d = if module.in_submodule(&u) {
                None
            } else {
                Some((module.distance_to_submodule(&u)?, i))
            };
            Ok((Some((n, i)), d))
        })
        .try_reduce(
            || (None, None),
            |a, b| Ok((keep(a.0, b.0), keep(a.1, b.1))),
        )?;
    let wrap = |b: Best| {
        b.map(|(value, i)| Extremum { value, tuple: encode_tuple(ring, &tuples[i]) })
    };
    Ok((tuples.len(), wrap(norm_min), wrap(dist_min)))
}

/// `ε_k = ½ · min(ε_{k-1}/2, smallest nonzero combination norm, smallest
/// distance from a combination outside N to N)`, with `ε_0 = 1`.
pub fn pinned_epsilon(
    previous: Option<&BigRational>,
    min_norm: Option<&Extremum>,
    min_distance: Option<&Extremum>,
) -> Result<BigRational> {
    let Some(previous) = previous else {
        return Ok(BigRational::one());
    };
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut m = previous * &half;
    for e in [min_norm, min_distance].into_iter().flatten() {
        if e.value.is_zero() {
            return Err(Error::Construction("a required distance bound is 0".into()));
        }
        if e.value < m {
            m = e.value.clone();
        }
    }
    Ok(m * half)
}

pub fn choose_epsilon<R: PrincipalIdealRing>(
    module: &SequenceModule<R>,
    epsilons: &[BigRational],
    generators: &[L1Vector<R>],
) -> Result<(BigRational, usize, Option<Extremum>, Option<Extremum>)> {
    let k = epsilons.len();
    if k == 0 {
        return Ok((BigRational::one(), 1, None, None));
    }
    let (count, min_norm, min_distance) = combination_minima(module, generators, k)?;
    let eps = pinned_epsilon(epsilons.last(), min_norm.as_ref(), min_distance.as_ref())?;
    Ok((eps, count, min_norm, min_distance))
}

/// Largest admissible `‖m_k‖` is anything strictly below
/// `ε_k / (2·k·k!)`: then `‖r·m_k‖ ≤ |r|·‖m_k‖ < ε_k/2` whenever
/// `|r| ≤ k·k!`. No bound at `k = 0`.
pub fn generator_norm_limit(k: usize, epsilon: &BigRational) -> Option<BigRational> {
    if k == 0 {
        return None;
    }
    let denom = BigInt::from(2 * k as u64) * factorial(k);
    Some(epsilon / BigRational::from_integer(denom))
}

/// The bounded form of `r·m ∉ N + R m_0 + … + R m_{k-1}` for all `r ∉ I`:
/// checked for `|r| ≤ scan_bound · k!` against combinations with
/// `Σ |s_i|/i! ≤ scan_bound`.
pub struct AvoidanceCheck<R: PrincipalIdealRing> {
    combinations: HashSet<Vec<(usize, R::Elem)>>,
    multipliers: Vec<R::Elem>,
}

impl<R: PrincipalIdealRing> AvoidanceCheck<R> {
    pub fn new(
        module: &SequenceModule<R>,
        ideal: &PidIdeal<R>,
        generators: &[L1Vector<R>],
        scan_bound: u64,
    ) -> Result<Self> {
        let ring = module.ring();
        let k = generators.len();
        let tuples = bounded_tuples(module.ring_norm(), k, scan_bound).map_err(cap_error)?;
        let combinations = tuples
            .iter()
            .map(|t| module.coset_key(&combine(ring, t, generators)))
            .collect();
        let max_norm = scan_bound.saturating_mul(factorial_u64(k));
        let multipliers = coefficients_up_to(module.ring_norm(), max_norm)
            .map_err(cap_error)?
            .into_iter()
            .map(|(_, r)| r)
            .filter(|r| !ideal.contains(r))
            .collect();
        Ok(AvoidanceCheck { combinations, multipliers })
    }

    /// The first multiplier `r` with `r·m` inside the bounded span, if any.
    pub fn first_failure(&self, module: &SequenceModule<R>, m: &L1Vector<R>) -> Option<R::Elem> {
        self.multipliers
            .iter()
            .find(|r| self.combinations.contains(&module.coset_key(&m.scale(r))))
            .cloned()
    }

    pub fn multipliers(&self) -> usize {
        self.multipliers.len()
    }
}

/// Candidates `c·e_j` in scan order: `j` ascending, then `c` by norm and
/// ring order, restricted to `‖c·e_j‖ < limit`.
pub(crate) fn scan_candidates<R: PrincipalIdealRing>(
    module: &SequenceModule<R>,
    limit: Option<&BigRational>,
    max_index: usize,
    mut visit: impl FnMut(usize, &R::Elem) -> Result<bool>,
) -> Result<bool> {
    let norm = module.ring_norm();
    let ring = module.ring();
    let size = ring.elements().map(|e| e.len());
    for j in 0..=max_index {
        let max_level = match limit {
            None => norm.cap(),
            Some(l) => {
                let scaled = l * BigRational::from_integer(factorial(j));
                let c = scaled.ceil().to_integer() - BigInt::one();
                if c < BigInt::one() {
                    continue;
                }
                c.try_into().unwrap_or(u64::MAX).min(norm.cap())
            }
        };
        let mut seen = 1;
        for level in 1..=max_level {
            let elements = norm.level(level).map_err(cap_error)?;
            seen += elements.len();
            for c in &elements {
                if visit(j, c)? {
                    return Ok(true);
                }
            }
            if size.is_some_and(|s| seen >= s) {
                break;
            }
        }
    }
    Ok(false)
}

pub fn choose_generator<R: PrincipalIdealRing>(
    module: &SequenceModule<R>,
    ideal: &PidIdeal<R>,
    generators: &[L1Vector<R>],
    epsilon: &BigRational,
    scan_bound: u64,
    max_index: usize,
) -> Result<(L1Vector<R>, u64)> {
    let k = generators.len();
    let ring = module.ring();
    let check = AvoidanceCheck::new(module, ideal, generators, scan_bound)?;
    let limit = generator_norm_limit(k, epsilon);
    let mut rejected = 0u64;
    let mut chosen = None;
    let found = scan_candidates(module, limit.as_ref(), max_index, |j, c| {
        let m = L1Vector::unit(ring.clone(), j, c.clone());
        if check.first_failure(module, &m).is_none() {
            chosen = Some(m);
            Ok(true)
        } else {
            rejected += 1;
            Ok(false)
        }
    })?;
    match (found, chosen) {
        (true, Some(m)) => Ok((m, rejected)),
        _ => Err(Error::Construction(format!(
            "no generator for step {k} among c·e_j with j ≤ {max_index}: \
             {rejected} candidates met the norm bound but fell into N + span(m_0..m_{k})"
        ))),
    }
}

/// Detects the ideal, then alternates ε and generator choices.
pub fn build_embedding<R: PrincipalIdealRing>(
    module: &SequenceModule<R>,
    config: &BuildConfig,
) -> Result<EmbeddingCertificate<R>> {
    config.validate()?;
    if config.module != *module.descriptor() || config.submodule != *module.submodule() {
        return Err(Error::Config("configuration does not describe this module".into()));
    }
    let detection = detect_ideal(module, config.depth())?;
    let mut epsilons: Vec<BigRational> = Vec::new();
    let mut generators: Vec<L1Vector<R>> = Vec::new();
    let mut evidence = Vec::new();
    for k in 0..config.steps {
        let (eps, tuples, min_norm, min_distance) = choose_epsilon(module, &epsilons, &generators)?;
        let (m, rejected) = choose_generator(
            module,
            &detection.ideal,
            &generators,
            &eps,
            config.scan_bound,
            config.max_index(),
        )?;
        evidence.push(StepEvidence {
            step: k,
            tuples,
            min_norm,
            min_distance,
            generator_norm: module.norm(&m)?,
            rejected_candidates: rejected,
        });
        epsilons.push(eps);
        generators.push(m);
    }
    Ok(EmbeddingCertificate {
        module: config.module.clone(),
        submodule: config.submodule.clone(),
        ideal: detection.ideal,
        stabilized_at: detection.stabilized_at,
        depth: config.depth(),
        scan_bound: config.scan_bound,
        max_index: config.max_index(),
        verify_bound: config.verify_bound,
        epsilons,
        generators,
        evidence,
    })
}

/// `Σ_k r_k m_k` for coefficients inside the certificate's verified range.
pub fn evaluate_map<R: PrincipalIdealRing>(
    module: &SequenceModule<R>,
    cert: &EmbeddingCertificate<R>,
    coefficients: &[R::Elem],
) -> Result<L1Vector<R>> {
    if coefficients.len() > cert.generators.len() {
        return Err(Error::Precondition(format!(
            "{} coefficients for {} generators",
            coefficients.len(),
            cert.generators.len()
        )));
    }
    let coeff_vec = L1Vector::from_entries(module.ring().clone(), coefficients.iter().cloned().enumerate())?;
    let size = module.norm(&coeff_vec)?;
    if size > BigRational::from_integer(BigInt::from(cert.verify_bound)) {
        return Err(Error::Precondition(format!(
            "coefficient norm {size} exceeds the verified bound {}",
            cert.verify_bound
        )));
    }
    Ok(combine(module.ring(), coefficients, &cert.generators))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norm::NormConvention;
    use crate::ring::{Integers, RingDescriptor, Zmod};

    fn z_config(submodule: SubmoduleDescriptor, steps: usize) -> BuildConfig {
        BuildConfig {
            module: ModuleDescriptor { ring: RingDescriptor::Z, weights: None, norm: NormConvention::Term, norm_cap: None },
            submodule,
            steps,
            scan_bound: 2,
            verify_bound: 3,
            depth: None,
            max_index: None,
        }
    }

    fn q(s: &str) -> BigRational {
        crate::l1::parse_rational(s).unwrap()
    }

    #[test]
    fn detects_ideals() {
        let c = z_config(SubmoduleDescriptor::L1Ideal("2".into()), 3);
        let m = SequenceModule::new(Integers, c.module.clone(), c.submodule.clone()).unwrap();
        let d = detect_ideal(&m, 5).unwrap();
        assert_eq!(d.ideal.to_string(), "(2)");
        assert_eq!(d.stabilized_at, 0);
        let c = z_config(SubmoduleDescriptor::Zero, 3);
        let m = SequenceModule::new(Integers, c.module.clone(), c.submodule.clone()).unwrap();
        assert!(detect_ideal(&m, 5).unwrap().ideal.is_zero());
        let c = z_config(SubmoduleDescriptor::L1Ideal("1".into()), 3);
        let m = SequenceModule::new(Integers, c.module.clone(), c.submodule.clone()).unwrap();
        assert!(matches!(detect_ideal(&m, 5), Err(Error::Construction(_))));
    }

    #[test]
    fn discrete_f2_first_epsilon() {
        let d = ModuleDescriptor { ring: RingDescriptor::GF(2), weights: None, norm: NormConvention::Discrete, norm_cap: None };
        let f2 = Zmod::prime_field(2).unwrap();
        let m = SequenceModule::new(f2, d, SubmoduleDescriptor::Zero).unwrap();
        let e0 = L1Vector::unit(f2, 0, 1);
        let (eps, tuples, min_norm, _) = choose_epsilon(&m, &[BigRational::one()], &[e0]).unwrap();
        assert_eq!(eps, q("1/4"));
        assert_eq!(tuples, 2);
        assert_eq!(min_norm.unwrap().value, q("1"));
    }

    #[test]
    fn integers_mod_two_sequence() {
        let c = z_config(SubmoduleDescriptor::L1Ideal("2".into()), 5);
        let m = SequenceModule::new(Integers, c.module.clone(), c.submodule.clone()).unwrap();
        let cert = build_embedding(&m, &c).unwrap();
        let eps: Vec<String> = cert.epsilons.iter().map(|e| e.to_string()).collect();
        assert_eq!(eps, ["1", "1/4", "1/24", "1/720", "1/362880"]);
        let support: Vec<usize> = cert.generators.iter().map(|g| g.support().next().unwrap()).collect();
        assert_eq!(support, [0, 4, 6, 9, 12]);
        assert!(cert.generators.iter().all(|g| g.entries().all(|(_, c)| *c == BigInt::from(1))));
    }

    #[test]
    fn steps_zero_is_a_config_error() {
        let c = z_config(SubmoduleDescriptor::Zero, 0);
        let m = SequenceModule::new(Integers, c.module.clone(), c.submodule.clone()).unwrap();
        assert!(matches!(build_embedding(&m, &c), Err(Error::Config(_))));
    }

    #[test]
    fn evaluate_respects_bound() {
        let c = z_config(SubmoduleDescriptor::L1Ideal("2".into()), 3);
        let m = SequenceModule::new(Integers, c.module.clone(), c.submodule.clone()).unwrap();
        let cert = build_embedding(&m, &c).unwrap();
        let zero = evaluate_map(&m, &cert, &[]).unwrap();
        assert!(zero.is_zero());
        let one = evaluate_map(&m, &cert, &[BigInt::from(0), BigInt::from(1)]).unwrap();
        assert_eq!(one, cert.generators[1]);
        assert!(evaluate_map(&m, &cert, &[BigInt::from(5)]).is_err());
    }
}
