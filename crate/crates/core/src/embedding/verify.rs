use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::builder::{
    combination_minima, combine, detect_ideal, generator_norm_limit, pinned_epsilon, scan_candidates,
    AvoidanceCheck,
};
use super::certificate::{EmbeddingCertificate, Extremum};
use super::module::SequenceModule;
use super::tuples::bounded_tuples;
use crate::error::{Error, Result};
use crate::l1::{factorial, L1Vector};
use crate::ring::PrincipalIdealRing;

/// Failures recorded per replay check before the rest are only counted.
const MAX_EXAMPLES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
    /// Coefficient tuples replayed through the map.
    pub tuples: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn record(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckOutcome { name: name.into(), passed, detail: detail.into() });
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{mark} {}", c.name)?;
            } else {
                writeln!(f, "{mark} {}: {}", c.name, c.detail)?;
            }
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed, {} tuples replayed", self.checks.len(), failed, self.tuples)
    }
}

fn describe<R: PrincipalIdealRing>(ring: &R, t: &[R::Elem]) -> String {
    let parts: Vec<String> = t.iter().map(|r| ring.encode(r)).collect();
    format!("({})", parts.join(", "))
}

fn decode_tuple<R: PrincipalIdealRing>(ring: &R, t: &[String]) -> Result<Vec<R::Elem>> {
    t.iter().map(|s| ring.decode(s)).collect()
}

/// Recomputes every claim in a certificate.
///
/// Returns `Err` only when the module itself cannot be evaluated; a wrong
/// certificate yields a report with failed checks.
pub fn verify_certificate<R: PrincipalIdealRing>(
    module: &SequenceModule<R>,
    cert: &EmbeddingCertificate<R>,
) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let steps = cert.generators.len();
    if cert.epsilons.len() != steps || cert.evidence.len() != steps {
        report.record("shape", false, "epsilons, generators and evidence differ in length");
        return Ok(report);
    }
    report.record(
        "header",
        cert.module == *module.descriptor() && cert.submodule == *module.submodule(),
        "module and submodule match the certificate header",
    );
    check_ideal(module, cert, &mut report);
    check_epsilons(module, cert, &mut report)?;
    check_generators(module, cert, &mut report)?;
    replay_tuples(module, cert, &mut report)?;
    Ok(report)
}

fn check_ideal<R: PrincipalIdealRing>(
    module: &SequenceModule<R>,
    cert: &EmbeddingCertificate<R>,
    report: &mut VerifyReport,
) {
    match detect_ideal(module, cert.depth) {
        Ok(d) => {
            let ok = d.ideal == cert.ideal && d.stabilized_at == cert.stabilized_at;
            report.record(
                "ideal",
                ok,
                format!(
                    "recomputed I = {} stabilizing at {}, certificate claims {} at {}",
                    d.ideal, d.stabilized_at, cert.ideal, cert.stabilized_at
                ),
            );
        }
        Err(e) => report.record("ideal", false, format!("recomputation failed: {e}")),
    }
}

fn check_extremum<R: PrincipalIdealRing>(
    module: &SequenceModule<R>,
    generators: &[L1Vector<R>],
    claimed: Option<&Extremum>,
    recomputed: Option<&Extremum>,
    distance: bool,
) -> Result<std::result::Result<(), String>> {
    match (claimed, recomputed) {
        (None, None) => Ok(Ok(())),
        (Some(c), Some(r)) => {
            if c.value != r.value {
                return Ok(Err(format!("claimed minimum {} but recomputed {}", c.value, r.value)));
            }
            let t = match decode_tuple(module.ring(), &c.tuple) {
                Ok(t) if t.len() == generators.len() => t,
                _ => return Ok(Err(format!("witness tuple {:?} is malformed", c.tuple))),
            };
            let u = combine(module.ring(), &t, generators);
            let attained = if distance { module.distance_to_submodule(&u)? } else { module.norm(&u)? };
            if attained != c.value {
                return Ok(Err(format!("witness tuple gives {attained}, not {}", c.value)));
            }
            Ok(Ok(()))
        }
        (c, r) => Ok(Err(format!(
            "claimed {} but recomputed {}",
            c.map_or("none".into(), |e| e.value.to_string()),
            r.map_or("none".into(), |e| e.value.to_string())
        ))),
    }
}

fn check_epsilons<R: PrincipalIdealRing>(
    module: &SequenceModule<R>,
    cert: &EmbeddingCertificate<R>,
    report: &mut VerifyReport,
) -> Result<()> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for (k, eps) in cert.epsilons.iter().enumerate() {
        let name = format!("epsilon[{k}]");
        if !eps.is_positive() {
            report.record(format!("{name}.positive"), false, format!("ε_{k} = {eps} ≤ 0"));
            continue;
        }
        if k == 0 {
            report.record(format!("{name}.rule"), eps.is_one(), format!("ε_0 = {eps}, expected 1"));
            continue;
        }
        let cascade = cert.epsilons[..k]
            .iter()
            .enumerate()
            .find(|(_, e)| eps >= &(*e * &half));
        report.record(
            format!("{name}.cascade"),
            cascade.is_none(),
            match cascade {
                None => format!("ε_{k} < ε_i/2 for all i < {k}"),
                Some((i, e)) => format!("ε_{k} = {eps} ≥ ε_{i}/2 = {}", e * &half),
            },
        );
        let (tuples, min_norm, min_distance) = combination_minima(module, &cert.generators[..k], k)?;
        let ev = &cert.evidence[k];
        for (label, claimed, fresh, distance) in [
            ("min_norm", ev.min_norm.as_ref(), min_norm.as_ref(), false),
            ("min_distance", ev.min_distance.as_ref(), min_distance.as_ref(), true),
        ] {
            if let Some(m) = fresh {
                let ok = eps <= &m.value;
                report.record(
                    format!("{name}.{label}"),
                    ok,
                    if ok {
                        format!("ε_{k} = {eps} ≤ {}", m.value)
                    } else {
                        format!("ε_{k} = {eps} > {} attained at {:?}", m.value, m.tuple)
                    },
                );
            }
            match check_extremum(module, &cert.generators[..k], claimed, fresh, distance)? {
                Ok(()) => report.record(format!("{name}.evidence.{label}"), true, ""),
                Err(d) => report.record(format!("{name}.evidence.{label}"), false, d),
            }
        }
        report.record(
            format!("{name}.evidence.tuples"),
            ev.tuples == tuples,
            format!("{} tuples enumerated, certificate records {}", tuples, ev.tuples),
        );
        match pinned_epsilon(Some(&cert.epsilons[k - 1]), min_norm.as_ref(), min_distance.as_ref()) {
            Ok(expected) => report.record(
                format!("{name}.rule"),
                &expected == eps,
                format!("ε_{k} = {eps}, rule gives {expected}"),
            ),
            Err(e) => report.record(format!("{name}.rule"), false, e.to_string()),
        }
    }
    Ok(())
}

fn check_generators<R: PrincipalIdealRing>(
    module: &SequenceModule<R>,
    cert: &EmbeddingCertificate<R>,
    report: &mut VerifyReport,
) -> Result<()> {
    let ring = module.ring();
    for (k, m) in cert.generators.iter().enumerate() {
        let name = format!("generator[{k}]");
        let eps = &cert.epsilons[k];
        let norm = module.norm(m)?;
        report.record(
            format!("{name}.evidence.norm"),
            norm == cert.evidence[k].generator_norm,
            format!("‖m_{k}‖ = {norm}, certificate records {}", cert.evidence[k].generator_norm),
        );
        let limit = generator_norm_limit(k, eps);
        if let Some(l) = &limit {
            let ok = &norm < l;
            report.record(
                format!("{name}.small"),
                ok,
                if ok {
                    format!("‖m_{k}‖ = {norm} < ε_{k}/(2·{k}·{k}!) = {l}")
                } else {
                    format!("‖m_{k}‖ = {norm} ≥ ε_{k}/(2·{k}·{k}!) = {l}")
                },
            );
        }
        let check = AvoidanceCheck::new(module, &cert.ideal, &cert.generators[..k], cert.scan_bound)?;
        match check.first_failure(module, m) {
            None => report.record(
                format!("{name}.avoids_span"),
                true,
                format!("r·m_{k} ∉ N + span(m_0..m_{k}) for {} multipliers r ∉ I", check.multipliers()),
            ),
            Some(r) => report.record(
                format!("{name}.avoids_span"),
                false,
                format!("r·m_{k} ∈ N + span(m_0..m_{k}) for r = {}", ring.encode(&r)),
            ),
        }
        // first fit: m_k is the first admissible monomial passing the span test
        let target = match m.entries().collect::<Vec<_>>().as_slice() {
            [(j, c)] => Some((*j, (*c).clone())),
            _ => None,
        };
        let Some((tj, tc)) = target else {
            report.record(format!("{name}.first_fit"), false, format!("m_{k} is not a monomial c·e_j"));
            continue;
        };
        let mut earlier_pass = None;
        let mut rejected = 0u64;
        let reached = scan_candidates(module, limit.as_ref(), cert.max_index, |j, c| {
            if j == tj && *c == tc {
                return Ok(true);
            }
            let cand = L1Vector::unit(ring.clone(), j, c.clone());
            if check.first_failure(module, &cand).is_none() {
                earlier_pass = Some((j, ring.encode(c)));
                return Ok(true);
            }
            rejected += 1;
            Ok(false)
        })?;
        let detail = match (&earlier_pass, reached) {
            (Some((j, c)), _) => format!("earlier candidate {c}·e_{j} already passes"),
            (None, false) => format!("{}·e_{tj} is not reached by the scan up to index {}", ring.encode(&tc), cert.max_index),
            (None, true) if rejected != cert.evidence[k].rejected_candidates => format!(
                "{rejected} earlier candidates rejected, certificate records {}",
                cert.evidence[k].rejected_candidates
            ),
            (None, true) => format!("{rejected} earlier candidates rejected"),
        };
        let ok = earlier_pass.is_none() && reached && rejected == cert.evidence[k].rejected_candidates;
        report.record(format!("{name}.first_fit"), ok, detail);
    }
    Ok(())
}

type CosetKey<E> = Vec<(usize, E)>;

/// Per-tuple replay outcome.
struct Replay<E> {
    key: CosetKey<E>,
    class: Vec<E>,
    escape: Option<String>,
    kernel: Option<String>,
}

fn replay_tuples<R: PrincipalIdealRing>(
    module: &SequenceModule<R>,
    cert: &EmbeddingCertificate<R>,
    report: &mut VerifyReport,
) -> Result<()> {
    let ring = module.ring();
    let steps = cert.generators.len();
    let tuples = bounded_tuples(module.ring_norm(), steps, cert.verify_bound)
        .map_err(|e| Error::Construction(format!("replay range: {e}")))?;
    report.tuples = tuples.len();

    let replays = tuples
        .par_iter()
        .map(|t| -> Result<Replay<R::Elem>> {
            let image = combine(ring, t, &cert.generators);
            let outside_ideal = t.iter().any(|r| !cert.ideal.contains(r));
            let in_n = module.in_submodule(&image);
            let mut escape = None;
            if outside_ideal {
                let d = module.distance_to_submodule(&image)?;
                if d.is_zero() {
                    escape = Some(format!("{} has a coefficient outside I but maps into N", describe(ring, t)));
                } else {
                    escape = prefix_bounds(module, cert, t)?;
                }
            }
            let kernel = (outside_ideal == in_n).then(|| {
                format!(
                    "{}: coefficients in I is {}, image in N is {}",
                    describe(ring, t),
                    !outside_ideal,
                    in_n
                )
            });
            let class = t.iter().map(|r| ring.residue(r, cert.ideal.generator())).collect();
            Ok(Replay { key: module.coset_key(&image), class, escape, kernel })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut escape_failures = Vec::new();
    let mut kernel_failures = Vec::new();
    let mut injectivity_failures = Vec::new();
    let mut seen: HashMap<&CosetKey<R::Elem>, &Vec<R::Elem>> = HashMap::with_capacity(replays.len());
    for r in &replays {
        escape_failures.extend(r.escape.clone());
        kernel_failures.extend(r.kernel.clone());
        if let Some(prev) = seen.insert(&r.key, &r.class) {
            if prev != &r.class {
                injectivity_failures.push(format!(
                    "classes {} and {} have the same image modulo N",
                    describe(ring, prev),
                    describe(ring, &r.class)
                ));
            }
        }
    }
    let bound = cert.verify_bound;
    for (name, failures, ok_text) in [
        ("replay.escape", escape_failures, format!("images of tuples with a coefficient outside I stay ε-far from N (Σ|r_k|/k! ≤ {bound})")),
        ("replay.kernel", kernel_failures, format!("image in N exactly when every coefficient lies in I (Σ|r_k|/k! ≤ {bound})")),
        ("replay.injective", injectivity_failures, format!("distinct classes modulo I have distinct images modulo N (Σ|r_k|/k! ≤ {bound})")),
    ] {
        if failures.is_empty() {
            report.record(name, true, ok_text);
        } else {
            let shown: Vec<&str> = failures.iter().take(MAX_EXAMPLES).map(String::as_str).collect();
            report.record(name, false, format!("{} violations; {}", failures.len(), shown.join("; ")));
        }
    }
    Ok(())
}

/// For `n ≥ Σ|r_k|/k!` with the prefix `Σ_{k<n} r_k m_k` outside `N`:
/// `dist(prefix, N) ≥ ε_n` and `‖r_{n+i} m_{n+i}‖ < ε_n / 2^{i+1}`.
fn prefix_bounds<R: PrincipalIdealRing>(
    module: &SequenceModule<R>,
    cert: &EmbeddingCertificate<R>,
    t: &[R::Elem],
) -> Result<Option<String>> {
    let ring = module.ring();
    let steps = t.len();
    let mut total = BigRational::zero();
    for (k, r) in t.iter().enumerate() {
        let v = module.ring_norm().norm(r).map_err(|e| Error::CoordinateExceedsCap { index: k, cap: e.cap })?;
        total += BigRational::new(BigInt::from(v), factorial(k));
    }
    let start = total.ceil().to_integer().max(BigInt::one());
    let start: usize = match start.try_into() {
        Ok(s) => s,
        Err(_) => return Ok(None),
    };
    for n in start..steps {
        let prefix = combine(ring, &t[..n], &cert.generators[..n]);
        if module.in_submodule(&prefix) {
            continue;
        }
        let eps = &cert.epsilons[n];
        let d = module.distance_to_submodule(&prefix)?;
        if &d < eps {
            return Ok(Some(format!("{}: dist(prefix_{n}, N) = {d} < ε_{n} = {eps}", describe(ring, t))));
        }
        let mut bound = eps / BigRational::from_integer(BigInt::from(2));
        for i in 0..steps - n {
            let term = cert.generators[n + i].scale(&t[n + i]);
            let size = module.norm(&term)?;
            if size >= bound {
                return Ok(Some(format!(
                    "{}: ‖r_{} m_{}‖ = {size} ≥ ε_{n}/2^{} = {bound}",
                    describe(ring, t),
                    n + i,
                    n + i,
                    i + 1
                )));
            }
            bound /= BigRational::from_integer(BigInt::from(2));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::builder::{build_embedding, BuildConfig};
    use crate::embedding::module::{ModuleDescriptor, SubmoduleDescriptor};
    use crate::norm::NormConvention;
    use crate::ring::{Integers, RingDescriptor};

    fn built() -> (SequenceModule<Integers>, EmbeddingCertificate<Integers>) {
        let c = BuildConfig {
            module: ModuleDescriptor { ring: RingDescriptor::Z, weights: None, norm: NormConvention::Term, norm_cap: None },
            submodule: SubmoduleDescriptor::L1Ideal("2".into()),
            steps: 4,
            scan_bound: 2,
            verify_bound: 3,
            depth: None,
            max_index: None,
        };
        let m = SequenceModule::new(Integers, c.module.clone(), c.submodule.clone()).unwrap();
        let cert = build_embedding(&m, &c).unwrap();
        (m, cert)
    }

    #[test]
    fn honest_certificate_verifies() {
        let (m, cert) = built();
        let report = verify_certificate(&m, &cert).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.tuples > 0);
    }

    #[test]
    fn tampered_epsilon_is_named() {
        let (m, mut cert) = built();
        cert.epsilons[2] = BigRational::new(BigInt::from(1), BigInt::from(3));
        let report = verify_certificate(&m, &cert).unwrap();
        let names: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        assert!(names.contains(&"epsilon[2].cascade"), "{names:?}");
        assert!(names.contains(&"epsilon[2].rule"), "{names:?}");
    }

    #[test]
    fn tampered_generator_is_named() {
        let (m, mut cert) = built();
        cert.generators[2] = L1Vector::unit(Integers, 2, BigInt::from(1));
        let report = verify_certificate(&m, &cert).unwrap();
        assert!(report.failures().any(|c| c.name == "generator[2].small"), "{report}");
    }
}
