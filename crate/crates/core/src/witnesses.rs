//! Explicit witnesses: indicator vectors `χ_x` of `{m : q_m < x}` for an
//! enumeration `(q_m)` of ℚ, and elements escaping a scaled norm ball.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::l1::{factorial, l1_norm, L1Vector, SequenceWeights};
use crate::norm::RingNorm;
use crate::ring::Ring;

/// Bijective enumerations of ℚ.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RationalEnumeration {
    /// `0`, then for `h = 1, 2, …` every reduced `a/b > 0` with
    /// `max(a, b) = h` in increasing order, each followed by its negative.
    #[default]
    Height,
    /// `0, c_1, -c_1, c_2, -c_2, …` along the Calkin–Wilf sequence
    /// `1, 1/2, 2, 1/3, 3/2, …`.
    CalkinWilf,
}

impl RationalEnumeration {
    /// The first `n` terms.
    pub fn prefix(self, n: usize) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(n);
        if n == 0 {
            return out;
        }
        out.push(BigRational::zero());
        match self {
            RationalEnumeration::Height => {
                let mut h: u64 = 1;
                while out.len() < n {
                    let mut level: Vec<BigRational> = Vec::new();
                    for k in 1..=h {
                        if k.gcd(&h) == 1 {
                            level.push(BigRational::new(BigInt::from(k), BigInt::from(h)));
                            if k != h {
                                level.push(BigRational::new(BigInt::from(h), BigInt::from(k)));
                            }
                        }
                    }
                    level.sort();
                    for q in level {
                        out.push(q.clone());
                        out.push(-q);
                    }
                    h += 1;
                }
            }
            RationalEnumeration::CalkinWilf => {
                let mut c = BigRational::one();
                while out.len() < n {
                    out.push(c.clone());
                    out.push(-c.clone());
                    let floor = c.floor();
                    c = (floor * BigInt::from(2) - &c + BigInt::one()).recip();
                }
            }
        }
        out.truncate(n);
        out
    }
}

/// `Σ_{k ≥ n} 1/k!`, bounded by 3 at `n = 0` and by `2/n!` otherwise.
pub fn factorial_tail_bound(n: usize) -> BigRational {
    if n == 0 {
        BigRational::from_integer(BigInt::from(3))
    } else {
        BigRational::new(BigInt::from(2), factorial(n))
    }
}

/// The first `bits.len()` coordinates of `χ_x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiVector {
    #[serde(with = "crate::l1::rational_str")]
    pub x: BigRational,
    pub enumeration: RationalEnumeration,
    pub bits: Vec<bool>,
    /// Bound on the norm of the unrealized tail: `|1| · Σ_{k ≥ n} 1/k!`.
    #[serde(with = "crate::l1::rational_str")]
    pub tail_bound: BigRational,
}

impl ChiVector {
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, b)| **b).map(|(m, _)| m)
    }

    pub fn to_l1<R: Ring>(&self, ring: R) -> L1Vector<R> {
        let one = ring.one();
        L1Vector::from_entries(ring, self.support().map(|m| (m, one.clone())))
            .expect("support indices are distinct")
    }

    pub fn bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

/// `unit_norm` is `|1|` in the ring the vector is read in.
pub fn chi_prefix(x: &BigRational, n: usize, enumeration: RationalEnumeration, unit_norm: u64) -> ChiVector {
    let bits = enumeration.prefix(n).iter().map(|q| q < x).collect();
    ChiVector {
        x: x.clone(),
        enumeration,
        bits,
        tail_bound: factorial_tail_bound(n) * BigInt::from(unit_norm),
    }
}

/// Which field the rank is computed over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankField {
    Rationals,
    Prime(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependenceCertificate {
    pub window: usize,
    pub field: RankField,
    pub rank: usize,
    /// Parameters in increasing order.
    pub params: Vec<String>,
    /// Column `c_0` has `q < p_0`; column `c_i` has `p_{i-1} ≤ q < p_i`.
    /// On these columns the prefix matrix is lower triangular with unit
    /// diagonal.
    pub separating_columns: Vec<usize>,
}

/// Rank of the prefix matrix of `χ_x` over the given parameters, with
/// separating columns as a certificate of full rank.
pub fn independence_check(
    params: &[BigRational],
    window: usize,
    enumeration: RationalEnumeration,
    field: RankField,
) -> Result<IndependenceCertificate> {
    let distinct: BTreeSet<&BigRational> = params.iter().collect();
    if distinct.len() != params.len() {
        return Err(Error::Precondition("parameters must be distinct".into()));
    }
    if let RankField::Prime(p) = field {
        if !crate::ring::Zmod::prime_field(p).is_ok() {
            return Err(Error::NotPrime(p.to_string()));
        }
    }
    let sorted: Vec<BigRational> = distinct.into_iter().cloned().collect();
    let qs = enumeration.prefix(window);
    let columns = separating_columns(&sorted, &qs);

    let rows: Vec<Vec<bool>> = sorted
        .iter()
        .map(|x| qs.iter().map(|q| q < x).collect())
        .collect();
    let rank = match field {
        RankField::Rationals => rank_over_rationals(&rows),
        RankField::Prime(p) => rank_mod_p(&rows, p),
    };

    match columns {
        Some(cols) if rank == sorted.len() => Ok(IndependenceCertificate {
            window,
            field,
            rank,
            params: sorted.iter().map(|q| q.to_string()).collect(),
            separating_columns: cols,
        }),
        _ => {
            let minimal = minimal_separating_window(&sorted, enumeration, 1 << 20)
                .map_or_else(|| "none below 1048576".to_string(), |w| w.to_string());
            Err(Error::WindowTooSmall { window, minimal })
        }
    }
}

fn separating_columns(sorted: &[BigRational], qs: &[BigRational]) -> Option<Vec<usize>> {
    let mut cols = Vec::with_capacity(sorted.len());
    for (i, x) in sorted.iter().enumerate() {
        let lower = if i == 0 { None } else { Some(&sorted[i - 1]) };
        let col = qs
            .iter()
            .position(|q| q < x && lower.is_none_or(|l| q >= l))?;
        cols.push(col);
    }
    Some(cols)
}

fn minimal_separating_window(sorted: &[BigRational], enumeration: RationalEnumeration, limit: usize) -> Option<usize> {
    let mut n = 64;
    while n <= limit {
        let qs = enumeration.prefix(n);
        if let Some(cols) = separating_columns(sorted, &qs) {
            return cols.iter().max().map(|m| m + 1);
        }
        n *= 2;
    }
    None
}

fn rank_over_rationals(rows: &[Vec<bool>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&b| if b { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let pivot_row = m[rank].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = &m[r][col] / &pivot_row[col];
                for (c, value) in pivot_row.iter().enumerate().skip(col) {
                    let delta = &f * value;
                    m[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn rank_mod_p(rows: &[Vec<bool>], p: u64) -> usize {
    let field = crate::ring::Zmod::prime_field(p).expect("checked prime");
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&b| u64::from(b)).collect()).collect();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inverse(m[rank][col]).expect("nonzero in a field");
        let pivot_row = m[rank].clone();
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let f = field.mul(&m[r][col], &inv);
                for (c, value) in pivot_row.iter().enumerate().skip(col) {
                    m[r][c] = field.sub(&m[r][c], &field.mul(&f, value));
                }
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EscapeWitness {
    pub element: String,
    pub norm: u64,
    /// `n! · ε`.
    #[serde(with = "crate::l1::rational_str")]
    pub threshold: BigRational,
    /// ℓ¹ norm of `(r_0, …, r_{n-1}, r, 0, …)`.
    #[serde(with = "crate::l1::rational_str")]
    pub extended_norm: BigRational,
}

/// The first element, in norm order, with `|r| > n! · ε` where `n` is the
/// prefix length. Appending it at index `n` yields a vector of norm `> ε`.
pub fn erdos_escape_witness<R: Ring>(
    norm: &dyn RingNorm<R>,
    prefix: &[R::Elem],
    epsilon: &BigRational,
) -> Result<(R::Elem, EscapeWitness)> {
    let ring = norm.ring();
    if ring.is_finite() {
        return Err(Error::Precondition(format!("{} is finite", ring.descriptor())));
    }
    if epsilon < &BigRational::zero() {
        return Err(Error::Precondition("epsilon must be non-negative".into()));
    }
    let n = prefix.len();
    let threshold = epsilon * factorial(n);
    let start = threshold
        .floor()
        .to_integer()
        .to_u64()
        .and_then(|f| f.checked_add(1))
        .ok_or_else(|| Error::Precondition("threshold too large".into()))?;
    let mut j = start;
    let found = loop {
        let level = norm.level(j).map_err(|e| Error::ExceedsCap {
            element: format!("level {j}"),
            cap: e.cap,
        })?;
        if let Some(r) = level.into_iter().next() {
            break r;
        }
        j += 1;
    };
    let mut entries: Vec<(usize, R::Elem)> = prefix.iter().cloned().enumerate().collect();
    entries.push((n, found.clone()));
    let extended = L1Vector::from_entries(ring.clone(), entries)?;
    let extended_norm = l1_norm(&extended, norm, &SequenceWeights::Factorial)?;
    let witness = EscapeWitness {
        element: ring.encode(&found),
        norm: j,
        threshold,
        extended_norm,
    };
    Ok((found, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::l1::parse_rational;
    use crate::norm::TermNorm;
    use crate::ring::{Integers, Presentation, Rationals};

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn enumerations_start_as_expected() {
        let h: Vec<String> = RationalEnumeration::Height.prefix(8).iter().map(|x| x.to_string()).collect();
        assert_eq!(h, ["0", "1", "-1", "1/2", "-1/2", "2", "-2", "1/3"]);
        let cw: Vec<String> = RationalEnumeration::CalkinWilf.prefix(9).iter().map(|x| x.to_string()).collect();
        assert_eq!(cw, ["0", "1", "-1", "1/2", "-1/2", "2", "-2", "1/3", "-1/3"]);
        for e in [RationalEnumeration::Height, RationalEnumeration::CalkinWilf] {
            let p = e.prefix(2000);
            let set: BTreeSet<_> = p.iter().collect();
            assert_eq!(set.len(), p.len(), "{e:?} repeats a value");
        }
    }

    #[test]
    fn chi_prefixes() {
        assert!(chi_prefix(&q("1/3"), 0, RationalEnumeration::Height, 2).bits.is_empty());
        let c = chi_prefix(&q("1/2"), 1, RationalEnumeration::Height, 2);
        assert_eq!(c.bits, vec![true]);
        let c = chi_prefix(&q("1/3"), 8, RationalEnumeration::Height, 2);
        assert_eq!(c.bit_string(), "10101010");
        assert_eq!(c.tail_bound, q("2") * q("2/40320"));
    }

    #[test]
    fn independence() {
        let cert = independence_check(
            &[q("1/4"), q("1/2"), q("3/4")],
            64,
            RationalEnumeration::Height,
            RankField::Rationals,
        )
        .unwrap();
        assert_eq!(cert.rank, 3);
        assert_eq!(cert.separating_columns.len(), 3);
        assert!(matches!(
            independence_check(&[q("1/4"), q("1/4")], 64, RationalEnumeration::Height, RankField::Rationals),
            Err(Error::Precondition(_))
        ));
        let err = independence_check(&[q("1/4"), q("1/3")], 8, RationalEnumeration::Height, RankField::Prime(2))
            .unwrap_err();
        assert!(matches!(err, Error::WindowTooSmall { window: 8, .. }));
    }

    #[test]
    fn escape_witnesses() {
        let z = TermNorm::new(Presentation::new(Integers), 64);
        let prefix = [BigInt::from(1), BigInt::from(0)];
        let (r, w) = erdos_escape_witness(&z, &prefix, &q("1")).unwrap();
        assert_eq!(r, BigInt::from(2));
        assert_eq!(w.norm, 3);
        assert!(w.extended_norm > q("1"));
        let (r, _) = erdos_escape_witness(&z, &[], &q("0")).unwrap();
        assert_eq!(r, BigInt::from(1));
        let qn = TermNorm::new(Presentation::new(Rationals), 64);
        let (r, w) = erdos_escape_witness(&qn, &[BigRational::zero()], &q("3")).unwrap();
        assert!(w.norm > 3);
        assert_eq!(qn.norm(&r).unwrap(), w.norm);
    }
}
