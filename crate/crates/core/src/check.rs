//! Property suites run by `polmod check`: norm axioms, ℓ¹ laws and PID
//! ideal arithmetic on a ball of a given radius.

use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::ExceedsCap;
use crate::l1::L1Vector;
use crate::norm::{check_norm_axioms, AxiomReport, RingNorm};
use crate::ring::PrincipalIdealRing;

/// Violations listed per suite before the rest are only counted.
const MAX_LISTED: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckConfig {
    pub radius: u64,
    /// Random vector pairs for the ℓ¹ suite.
    pub samples: usize,
    pub seed: u64,
    /// Largest support index of sampled vectors.
    pub max_index: usize,
    /// Ball elements used as PID operands (pairs are quadratic in this).
    pub pid_operands: usize,
}

impl CheckConfig {
    pub fn new(radius: u64) -> Self {
        CheckConfig { radius, samples: 2000, seed: 0, max_index: 5, pid_operands: 64 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub cases: u64,
    pub violation_count: u64,
    pub violations: Vec<String>,
}

impl SuiteReport {
    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < MAX_LISTED {
                self.violations.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub config: CheckConfig,
    pub norm_axioms: AxiomReport,
    pub l1: SuiteReport,
    pub pid: SuiteReport,
    pub passed: bool,
}

pub fn run_checks<R: PrincipalIdealRing>(norm: &dyn RingNorm<R>, config: &CheckConfig) -> Result<CheckReport, ExceedsCap> {
    let norm_axioms = check_norm_axioms(norm, config.radius)?;
    let ball = norm.ball(config.radius)?;
    let l1 = l1_suite(norm, &ball, config)?;
    let pid = pid_suite(norm.ring(), &ball[..ball.len().min(config.pid_operands)]);
    let passed = norm_axioms.passed() && l1.passed() && pid.passed();
    Ok(CheckReport { config: config.clone(), norm_axioms, l1, pid, passed })
}

fn random_vector<R: PrincipalIdealRing>(ring: &R, ball: &[R::Elem], max_index: usize, rng: &mut ChaCha8Rng) -> L1Vector<R> {
    let mut entries = Vec::new();
    for k in 0..=max_index {
        if rng.gen_bool(0.6) {
            entries.push((k, ball.choose(rng).expect("balls contain 0").clone()));
        }
    }
    L1Vector::from_entries(ring.clone(), entries).expect("indices are distinct")
}

/// Checks `‖u+v‖ ≤ ‖u‖+‖v‖`, `‖s·v‖ ≤ |s|·‖v‖` and `‖-v‖ = ‖v‖` coordinate
/// by coordinate; with positive sequence weights the coordinate bounds sum
/// to the ℓ¹ bounds.
fn l1_suite<R: PrincipalIdealRing>(
    norm: &dyn RingNorm<R>,
    ball: &[R::Elem],
    config: &CheckConfig,
) -> Result<SuiteReport, ExceedsCap> {
    let ring = norm.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = SuiteReport::default();
    for _ in 0..config.samples {
        let u = random_vector(ring, ball, config.max_index, &mut rng);
        let v = random_vector(ring, ball, config.max_index, &mut rng);
        let s = ball.choose(&mut rng).expect("balls contain 0").clone();
        let sum = u.add(&v).expect("same ring");
        let scaled = v.scale(&s);
        let ns = norm.norm(&s)?;
        let mut triangle = true;
        let mut homogeneous = true;
        for k in 0..=config.max_index {
            let zero = ring.zero();
            let uk = u.get(k).unwrap_or(&zero);
            let vk = v.get(k).unwrap_or(&zero);
            let (nu, nv) = (norm.norm(uk)?, norm.norm(vk)?);
            triangle &= norm.within(sum.get(k).unwrap_or(&zero), nu + nv)?;
            homogeneous &= norm.within(scaled.get(k).unwrap_or(&zero), ns * nv)?;
        }
        report.case(triangle, || format!("triangle fails for u = {:?}, v = {:?}", u.to_json().entries, v.to_json().entries));
        report.case(homogeneous, || {
            format!("‖s·v‖ > |s|·‖v‖ for s = {}, v = {:?}", ring.encode(&s), v.to_json().entries)
        });
        let neg_ok = u.neg().entries().zip(u.entries()).all(|((_, a), (_, b))| norm.norm(a) == norm.norm(b))
            && u.add(&u.neg()).expect("same ring").is_zero();
        report.case(neg_ok, || format!("negation fails for u = {:?}", u.to_json().entries));
    }
    Ok(report)
}

/// gcd/lcm divisibility, colon ideals and residues on all operand pairs.
fn pid_suite<R: PrincipalIdealRing>(ring: &R, operands: &[R::Elem]) -> SuiteReport {
    let mut report = SuiteReport::default();
    for a in operands {
        let n = ring.normalize(a);
        report.case(ring.normalize(&n) == n && ring.divides(&n, a) && ring.divides(a, &n), || {
            format!("normalize({}) = {} is not an associate", ring.encode(a), ring.encode(&n))
        });
        for b in operands {
            let g = ring.gcd(a, b);
            let l = ring.lcm(a, b);
            let show = || format!("a = {}, b = {}", ring.encode(a), ring.encode(b));
            report.case(ring.divides(&g, a) && ring.divides(&g, b), || format!("gcd does not divide: {}", show()));
            report.case(ring.divides(a, &l) && ring.divides(b, &l), || format!("lcm not a multiple: {}", show()));
            let c = ring.colon(b, a);
            report.case(ring.divides(b, &ring.mul(&c, a)), || format!("colon(b, a)·a ∉ (b): {}", show()));
            let r = ring.residue(a, b);
            report.case(ring.divides(b, &ring.sub(a, &r)) && ring.residue(&r, b) == r, || {
                format!("residue not canonical: {}", show())
            });
        }
    }
    report
}
