use crate::error::ExceedsCap;
use crate::norm::RingNorm;
use crate::ring::Ring;

/// All `(r_0, …, r_{len-1})` with `Σ_i |r_i|/i! ≤ budget`, in lexicographic
/// order of the per-coordinate enumeration (norm, then ring order).
///
/// Costs are scaled by `(len-1)!` so the budget check is integral.
pub fn bounded_tuples<R: Ring>(
    norm: &dyn RingNorm<R>,
    len: usize,
    budget: u64,
) -> Result<Vec<Vec<R::Elem>>, ExceedsCap> {
    if len == 0 {
        return Ok(vec![Vec::new()]);
    }
    let scale = factorial_u64(len - 1);
    let total = budget.saturating_mul(scale);
    let mut options: Vec<Vec<(u64, R::Elem)>> = Vec::with_capacity(len);
    for k in 0..len {
        let per_unit = scale / factorial_u64(k);
        let max_norm = budget.saturating_mul(factorial_u64(k));
        options.push(
            coefficients_up_to(norm, max_norm)?
                .into_iter()
                .map(|(v, r)| (v * per_unit, r))
                .collect(),
        );
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    extend(&options, total, &mut current, &mut out);
    Ok(out)
}

fn extend<E: Clone>(options: &[Vec<(u64, E)>], remaining: u64, current: &mut Vec<E>, out: &mut Vec<Vec<E>>) {
    let k = current.len();
    if k == options.len() {
        out.push(current.clone());
        return;
    }
    for (cost, r) in &options[k] {
        if *cost > remaining {
            break;
        }
        current.push(r.clone());
        extend(options, remaining - cost, current, out);
        current.pop();
    }
}

/// Elements with `|r| ≤ max_norm` paired with their norms, in norm order.
/// Stops early once a finite ring is exhausted.
pub fn coefficients_up_to<R: Ring>(
    norm: &dyn RingNorm<R>,
    max_norm: u64,
) -> Result<Vec<(u64, R::Elem)>, ExceedsCap> {
    let size = norm.ring().elements().map(|e| e.len());
    let mut out = Vec::new();
    for j in 0..=max_norm {
        out.extend(norm.level(j)?.into_iter().map(|r| (j, r)));
        if size == Some(out.len()) {
            break;
        }
    }
    Ok(out)
}

pub fn factorial_u64(k: usize) -> u64 {
    (1..=k as u64).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norm::{DiscreteNorm, TermNorm};
    use crate::ring::{Integers, Presentation, Zmod};
    use num_bigint::BigInt;
    use num_traits::Signed;

    #[test]
    fn integer_tuples_match_direct_count() {
        let n = TermNorm::new(Presentation::new(Integers), 64);
        let tuples = bounded_tuples(&n, 3, 3).unwrap();
        // |r| = |v| + 1 off zero: count (a, b, c) with w(a) + w(b) + w(c)/2 ≤ 3.
        let w = |v: i64| if v == 0 { 0 } else { v.abs() + 1 };
        let mut expected = 0;
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                for c in -12i64..=12 {
                    if 2 * w(a) + 2 * w(b) + w(c) <= 6 {
                        expected += 1;
                    }
                }
            }
        }
        assert_eq!(tuples.len(), expected);
        assert!(tuples.iter().all(|t| t[0].abs() <= BigInt::from(2)));
    }

    #[test]
    fn discrete_f2_tuples() {
        let d = DiscreteNorm::new(Zmod::prime_field(2).unwrap()).unwrap();
        assert_eq!(bounded_tuples(&d, 5, 3).unwrap().len(), 32);
        assert_eq!(bounded_tuples(&d, 2, 1).unwrap().len(), 3);
        assert_eq!(bounded_tuples(&d, 0, 1).unwrap(), vec![Vec::<u64>::new()]);
    }
}
