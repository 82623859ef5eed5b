//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::hash::Hash;

/// Minimal weight of every value reachable by an explicit `(+, ·)` term of
/// weight at most `n`.
///
/// Trees are enumerated one by one (no sharing of values between trees):
/// `trees[w]` holds the value of every distinct tree of weight exactly `w`.
/// Leaves are the given nonzero atoms; the bare atom `0` has weight 0 and is
/// added separately, since a `0` leaf inside a larger tree never lowers a
/// weight and would make the tree set infinite.
pub fn brute_force_norms<E: Clone + Eq + Hash>(
    atoms: &[(E, u64)],
    zero: E,
    add: impl Fn(&E, &E) -> E,
    mul: impl Fn(&E, &E) -> E,
    n: u64,
) -> HashMap<E, u64> {
    let n = n as usize;
    let mut trees: Vec<Vec<E>> = vec![Vec::new(); n + 1];
    for w in 1..=n {
        let mut level: Vec<E> = atoms.iter().filter(|(_, aw)| *aw as usize == w).map(|(a, _)| a.clone()).collect();
        for i in 1..w {
            for a in &trees[i] {
                for b in &trees[w - i] {
                    level.push(add(a, b));
                }
            }
        }
        for i in 1..w {
            if w % i == 0 {
                for a in &trees[i] {
                    for b in &trees[w / i] {
                        level.push(mul(a, b));
                    }
                }
            }
        }
        trees[w] = level;
    }
    let mut best = HashMap::new();
    best.insert(zero, 0);
    for (w, level) in trees.iter().enumerate() {
        for v in level {
            best.entry(v.clone()).or_insert(w as u64);
        }
    }
    best
}

/// Nonzero integer atoms `±m` with weight `m + 1 ≤ n`.
pub fn integer_atoms(n: u64) -> Vec<(i64, u64)> {
    (1..n as i64).flat_map(|m| [(m, m as u64 + 1), (-m, m as u64 + 1)]).collect()
}

/// Nonzero residues of `ℤ/m` with weight `min(r, m - r) + 1 ≤ n`.
pub fn zmod_atoms(m: u64, n: u64) -> Vec<(u64, u64)> {
    (1..m).map(|r| (r, r.min(m - r) + 1)).filter(|(_, w)| *w <= n).collect()
}

pub fn smallest_prime_factor(n: u64) -> u64 {
    (2..).take_while(|d| d * d <= n).find(|d| n.is_multiple_of(*d)).unwrap_or(n)
}

/// F_2[x] polynomials as bit masks, bit `i` holding the coefficient of `x^i`.
pub mod f2 {
    pub fn degree(a: u64) -> i32 {
        63 - a.leading_zeros() as i32
    }

    pub fn mul(a: u64, b: u64) -> u64 {
        let mut out = 0;
        for i in 0..64 {
            if b >> i & 1 == 1 {
                out ^= a << i;
            }
        }
        out
    }

    pub fn rem(mut a: u64, b: u64) -> u64 {
        let db = degree(b);
        while a != 0 && degree(a) >= db {
            a ^= b << (degree(a) - db);
        }
        a
    }

    pub fn is_irreducible(f: u64) -> bool {
        let d = degree(f);
        d >= 1 && (2u64..1 << (d / 2 + 1)).filter(|g| degree(*g) <= d / 2).all(|g| rem(f, g) != 0)
    }

    pub fn from_coeffs(coeffs: &[u64]) -> u64 {
        coeffs.iter().enumerate().fold(0, |acc, (i, c)| acc | (c & 1) << i)
    }

    pub fn coeffs(a: u64) -> Vec<u64> {
        (0..=degree(a).max(0)).map(|i| a >> i & 1).collect()
    }
}
