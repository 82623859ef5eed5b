use rayon::prelude::*;
use serde::Serialize;

use super::oracle::RingNorm;
use crate::error::ExceedsCap;
use crate::ring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Triangle,
    Submultiplicative,
    Symmetry,
    Definiteness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub left: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub ring: String,
    pub radius: u64,
    pub elements: usize,
    pub pairs: u64,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the norm axioms on every element and every ordered pair of the
/// radius-`n` ball. Sums and products may leave the ball; their norms are
/// bounded through [`RingNorm::within`], which needs a cap of at least `n²`
/// only when no cheaper bound settles the inequality.
pub fn check_norm_axioms<R: Ring>(norm: &dyn RingNorm<R>, n: u64) -> Result<AxiomReport, ExceedsCap> {
    let ring = norm.ring();
    let ball: Vec<(R::Elem, u64)> = norm
        .ball(n)?
        .into_iter()
        .map(|r| {
            let v = norm.norm(&r)?;
            Ok((r, v))
        })
        .collect::<Result<_, ExceedsCap>>()?;

    let mut violations = Vec::new();
    for (r, v) in &ball {
        let neg = norm.norm(&ring.neg(r))?;
        if neg != *v {
            violations.push(AxiomViolation {
                axiom: Axiom::Symmetry,
                left: ring.encode(r),
                right: None,
                detail: format!("|r| = {v} but |-r| = {neg}"),
            });
        }
        if (*v == 0) != ring.is_zero(r) {
            violations.push(AxiomViolation {
                axiom: Axiom::Definiteness,
                left: ring.encode(r),
                right: None,
                detail: format!("|r| = {v}"),
            });
        }
    }

    let pair_violations: Vec<Vec<AxiomViolation>> = ball
        .par_iter()
        .map(|(r, vr)| {
            let mut out = Vec::new();
            for (s, vs) in &ball {
                let sum_bound = vr + vs;
                if !norm.within(&ring.add(r, s), sum_bound)? {
                    out.push(AxiomViolation {
                        axiom: Axiom::Triangle,
                        left: ring.encode(r),
                        right: Some(ring.encode(s)),
                        detail: format!("|r+s| > {sum_bound}"),
                    });
                }
                let prod_bound = vr * vs;
                if !norm.within(&ring.mul(r, s), prod_bound)? {
                    out.push(AxiomViolation {
                        axiom: Axiom::Submultiplicative,
                        left: ring.encode(r),
                        right: Some(ring.encode(s)),
                        detail: format!("|rs| > {prod_bound}"),
                    });
                }
            }
            Ok(out)
        })
        .collect::<Result<_, ExceedsCap>>()?;
    violations.extend(pair_violations.into_iter().flatten());

    Ok(AxiomReport {
        ring: ring.descriptor().to_string(),
        radius: n,
        elements: ball.len(),
        pairs: (ball.len() as u64).pow(2),
        violations,
    })
}
