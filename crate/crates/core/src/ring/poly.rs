//! Dense univariate polynomials over a prime field F_p, and their quotients.

use std::cmp::Ordering;
use std::fmt::Write as _;

use super::integers::is_prime_u64;
use super::{EuclideanDomain, PrimalityCertificate, PrincipalIdealRing, Ring, RingDescriptor};
use crate::error::{Error, Result};

/// Coefficients low degree first, no trailing zeros; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: u64) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `x^k`
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arithmetic in F_p[x] for a fixed prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Fp(u64);

impl Fp {
    fn add(self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.0 as u128) as u64
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    fn inv(self, a: u64) -> u64 {
        // p is prime: a^(p-2)
        let mut result = 1u64;
        let mut base = a % self.0;
        let mut e = self.0 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    fn sym(self, c: u64) -> u64 {
        c.min(self.0 - c)
    }

    fn poly_add(self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let c = (0..n)
            .map(|i| {
                self.add(
                    a.coeffs.get(i).copied().unwrap_or(0),
                    b.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Poly::from_coeffs(c)
    }

    fn poly_neg(self, a: &Poly) -> Poly {
        Poly::from_coeffs(a.coeffs.iter().map(|&c| self.neg(c)).collect())
    }

    fn poly_mul(self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![0u64; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                c[i + j] = self.add(c[i + j], self.mul(x, y));
            }
        }
        Poly::from_coeffs(c)
    }

    fn scale(self, a: &Poly, s: u64) -> Poly {
        Poly::from_coeffs(a.coeffs.iter().map(|&c| self.mul(c, s)).collect())
    }

    fn div_rem(self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        assert!(!b.is_zero(), "polynomial division by zero");
        let db = b.coeffs.len() - 1;
        let inv = self.inv(b.leading());
        let mut r = a.coeffs.clone();
        if r.len() <= db {
            return (Poly::zero(), a.clone());
        }
        let mut q = vec![0u64; r.len() - db];
        for i in (db..r.len()).rev() {
            let c = self.mul(r[i], inv);
            if c == 0 {
                continue;
            }
            q[i - db] = c;
            for (j, &bc) in b.coeffs.iter().enumerate() {
                let k = i - db + j;
                r[k] = self.add(r[k], self.neg(self.mul(c, bc)));
            }
        }
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    fn rem(self, a: &Poly, b: &Poly) -> Poly {
        self.div_rem(a, b).1
    }

    fn monic(self, a: &Poly) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        self.scale(a, self.inv(a.leading()))
    }

    fn gcd(self, a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    fn weight(self, a: &Poly) -> u64 {
        match a.degree() {
            None => 0,
            Some(d) => d as u64 + 1 + a.coeffs.iter().map(|&c| self.sym(c)).sum::<u64>(),
        }
    }

    /// Polynomials of weight exactly `w` with degree below `max_len`.
    fn atoms_of_weight(self, w: u64, max_len: Option<usize>) -> Vec<Poly> {
        if w == 0 {
            return vec![Poly::zero()];
        }
        let mut out = Vec::new();
        // w = d + 1 + Σ sym(c), and the leading coefficient contributes ≥ 1
        let mut d = 0usize;
        while (d as u64) + 2 <= w {
            if max_len.is_some_and(|m| d >= m) {
                break;
            }
            let budget = w - 1 - d as u64;
            let mut coeffs = vec![0u64; d + 1];
            self.fill(&mut coeffs, d, budget, &mut out);
            d += 1;
        }
        out.sort();
        out
    }

    /// Assign positions `pos, pos-1, …, 0` spending exactly `budget` symmetric lift.
    fn fill(self, coeffs: &mut Vec<u64>, pos: usize, budget: u64, out: &mut Vec<Poly>) {
        let top = pos + 1 == coeffs.len();
        let max_sym = (self.0 / 2).min(budget);
        let min_sym = if top { 1 } else { 0 };
        for s in min_sym..=max_sym {
            let rest = budget - s;
            if pos == 0 {
                if rest != 0 {
                    continue;
                }
            } else if rest > pos as u64 * (self.0 / 2) {
                continue;
            }
            let choices: Vec<u64> = if s == 0 {
                vec![0]
            } else if 2 * s == self.0 {
                vec![s]
            } else {
                vec![s, self.0 - s]
            };
            for c in choices {
                coeffs[pos] = c;
                if pos == 0 {
                    out.push(Poly::from_coeffs(coeffs.clone()));
                } else {
                    self.fill(coeffs, pos - 1, rest, out);
                }
            }
            coeffs[pos] = 0;
        }
    }

    fn format(self, a: &Poly) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, &c) in a.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('+');
            }
            match (k, c) {
                (0, c) => write!(s, "{c}").unwrap(),
                (1, 1) => s.push('x'),
                (1, c) => write!(s, "{c}x").unwrap(),
                (k, 1) => write!(s, "x^{k}").unwrap(),
                (k, c) => write!(s, "{c}x^{k}").unwrap(),
            }
        }
        s
    }

    /// Sums of monomials such as `x^3+2x-1` or `3*x^2`; coefficients reduced mod p.
    fn parse(self, input: &str) -> Option<Poly> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return None;
        }
        let mut acc = Poly::zero();
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut negative = false;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                negative = bytes[i] == b'-';
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
                i += 1;
            }
            let term = &s[start..i];
            let mono = self.parse_monomial(term)?;
            acc = self.poly_add(&acc, &if negative { self.poly_neg(&mono) } else { mono });
        }
        Some(acc)
    }

    fn parse_monomial(self, term: &str) -> Option<Poly> {
        if term.is_empty() {
            return None;
        }
        let (coef, var) = match term.find('x') {
            Some(pos) => (&term[..pos], Some(&term[pos + 1..])),
            None => (term, None),
        };
        let coef = coef.strip_suffix('*').unwrap_or(coef);
        let c: u64 = if coef.is_empty() {
            var?;
            1
        } else {
            (coef.parse::<u128>().ok()? % self.0 as u128) as u64
        };
        let k: usize = match var {
            None => 0,
            Some("") => 1,
            Some(rest) => rest.strip_prefix('^')?.parse().ok()?,
        };
        Some(self.scale(&Poly::monomial(k), c))
    }
}

fn check_prime(p: u64) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidModulus(p));
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(())
}

/// F_p[x] with default weight `w(f) = deg f + 1 + Σ min(c, p−c)` over the
/// coefficients `c` of `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyGf {
    p: u64,
}

impl PolyGf {
    pub fn new(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(PolyGf { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    fn fp(&self) -> Fp {
        Fp(self.p)
    }

    /// Monic polynomials of degree `d`, in increasing order.
    pub fn monic_of_degree(&self, d: usize) -> impl Iterator<Item = Poly> + '_ {
        let count = (self.p as u128).pow(d as u32);
        (0..count).map(move |mut n| {
            let mut coeffs = vec![0u64; d + 1];
            coeffs[d] = 1;
            for slot in coeffs.iter_mut().take(d) {
                *slot = (n % self.p as u128) as u64;
                n /= self.p as u128;
            }
            Poly::from_coeffs(coeffs)
        })
    }
}

impl Ring for PolyGf {
    type Elem = Poly;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::PolyGF(self.p)
    }

    fn zero(&self) -> Poly {
        Poly::zero()
    }

    fn one(&self) -> Poly {
        Poly::constant(1)
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.fp().poly_add(a, b)
    }

    fn neg(&self, a: &Poly) -> Poly {
        self.fp().poly_neg(a)
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.fp().poly_mul(a, b)
    }

    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }

    fn encode(&self, a: &Poly) -> String {
        self.fp().format(a)
    }

    fn decode(&self, s: &str) -> Result<Poly> {
        self.fp().parse(s).ok_or_else(|| self.parse_error(s))
    }

    fn default_weight(&self, a: &Poly) -> u64 {
        self.fp().weight(a)
    }

    fn default_atoms_of_weight(&self, w: u64) -> Vec<Poly> {
        self.fp().atoms_of_weight(w, None)
    }
}

impl PrincipalIdealRing for PolyGf {
    fn normalize(&self, a: &Poly) -> Poly {
        self.fp().monic(a)
    }

    fn divides(&self, a: &Poly, b: &Poly) -> bool {
        if a.is_zero() {
            b.is_zero()
        } else {
            self.fp().rem(b, a).is_zero()
        }
    }

    fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        self.fp().gcd(a, b)
    }

    fn lcm(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let g = self.fp().gcd(a, b);
        let (q, _) = self.fp().div_rem(&self.mul(a, b), &g);
        self.fp().monic(&q)
    }

    fn colon(&self, g: &Poly, a: &Poly) -> Poly {
        if a.is_zero() {
            return self.one();
        }
        if g.is_zero() {
            return Poly::zero();
        }
        let d = self.fp().gcd(g, a);
        let (q, _) = self.fp().div_rem(g, &d);
        self.fp().monic(&q)
    }

    fn residue(&self, a: &Poly, g: &Poly) -> Poly {
        if g.is_zero() {
            a.clone()
        } else {
            self.fp().rem(a, g)
        }
    }
}

impl EuclideanDomain for PolyGf {
    type Quotient = PolyQuotient;

    fn div_rem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        self.fp().div_rem(a, b)
    }

    fn quotient_by(&self, g: &Poly) -> Result<PolyQuotient> {
        PolyQuotient::new(self.p, &self.normalize(g))
    }

    fn reduce_into(&self, q: &PolyQuotient, a: &Poly) -> Poly {
        self.fp().rem(a, &q.modulus)
    }

    fn lift_from(&self, _q: &PolyQuotient, a: &Poly) -> Poly {
        a.clone()
    }

    fn modulus_of(&self, q: &PolyQuotient) -> Poly {
        q.modulus.clone()
    }

    /// Least monic irreducible divisor in (degree, coefficient) order. The
    /// first monic divisor of positive degree found this way is irreducible,
    /// since any proper factor of it would have appeared earlier.
    fn least_prime_divisor(&self, g: &Poly) -> Result<(Poly, PrimalityCertificate)> {
        let deg = match g.degree() {
            None => return Err(Error::ZeroIdeal),
            Some(0) => return Err(Error::UnitIdeal),
            Some(d) => d,
        };
        for d in 1..=deg {
            if 2 * d > deg {
                break;
            }
            if let Some(f) = self.monic_of_degree(d).find(|f| self.divides(f, g)) {
                return Ok((f.clone(), self.irreducibility_certificate(&f)));
            }
        }
        let f = self.normalize(g);
        Ok((f.clone(), self.irreducibility_certificate(&f)))
    }
}

impl PolyGf {
    fn irreducibility_certificate(&self, f: &Poly) -> PrimalityCertificate {
        let deg = f.degree().unwrap_or(0);
        let bound = deg / 2;
        let tested: u64 = (1..=bound).map(|d| self.p.saturating_pow(d as u32)).sum();
        PrimalityCertificate::Irreducibility {
            poly: self.encode(f),
            degree_bound: bound,
            divisors_tested: tested,
        }
    }
}

/// F_p[x]/(f) for monic `f` of positive degree, elements reduced below `deg f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyQuotient {
    p: u64,
    modulus: Poly,
}

impl PolyQuotient {
    pub fn new(p: u64, modulus: &Poly) -> Result<Self> {
        check_prime(p)?;
        let fp = Fp(p);
        let m = fp.monic(&Poly::from_coeffs(modulus.coeffs.iter().map(|c| c % p).collect()));
        match m.degree() {
            None => Err(Error::ZeroIdeal),
            Some(0) => Err(Error::UnitIdeal),
            Some(_) => Ok(PolyQuotient { p, modulus: m }),
        }
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    fn fp(&self) -> Fp {
        Fp(self.p)
    }

    fn base(&self) -> PolyGf {
        PolyGf { p: self.p }
    }

    fn deg(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    /// `p^deg(f)` residues; used to cap exhaustive enumeration.
    pub fn cardinality(&self) -> u128 {
        (self.p as u128).saturating_pow(self.deg() as u32)
    }
}

impl Ring for PolyQuotient {
    type Elem = Poly;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::PolyGFQuotient {
            p: self.p,
            modulus: self.fp().format(&self.modulus),
        }
    }

    fn zero(&self) -> Poly {
        Poly::zero()
    }

    fn one(&self) -> Poly {
        Poly::constant(1)
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.fp().poly_add(a, b)
    }

    fn neg(&self, a: &Poly) -> Poly {
        self.fp().poly_neg(a)
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.fp().rem(&self.fp().poly_mul(a, b), &self.modulus)
    }

    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }

    fn encode(&self, a: &Poly) -> String {
        self.fp().format(a)
    }

    /// Accepts any polynomial and reduces it.
    fn decode(&self, s: &str) -> Result<Poly> {
        let a = self.fp().parse(s).ok_or_else(|| self.parse_error(s))?;
        Ok(self.fp().rem(&a, &self.modulus))
    }

    fn default_weight(&self, a: &Poly) -> u64 {
        self.fp().weight(a)
    }

    fn default_atoms_of_weight(&self, w: u64) -> Vec<Poly> {
        self.fp().atoms_of_weight(w, Some(self.deg()))
    }

    fn elements(&self) -> Option<Vec<Poly>> {
        if self.cardinality() > 1 << 20 {
            return None;
        }
        let base = self.base();
        let mut out = vec![Poly::zero()];
        for d in 0..self.deg() {
            for m in base.monic_of_degree(d) {
                for c in 1..self.p {
                    out.push(self.fp().scale(&m, c));
                }
            }
        }
        out.sort();
        Some(out)
    }

    fn is_finite(&self) -> bool {
        true
    }
}

impl PrincipalIdealRing for PolyQuotient {
    /// Ideals of F_p[x]/(f) are `(d)` for monic `d | f`; `(f) = (0)` is stored as 0.
    fn normalize(&self, a: &Poly) -> Poly {
        let g = self.fp().gcd(a, &self.modulus);
        if g == self.modulus {
            Poly::zero()
        } else {
            g
        }
    }

    fn divides(&self, a: &Poly, b: &Poly) -> bool {
        let d = self.fp().gcd(a, &self.modulus);
        self.fp().rem(b, &d).is_zero()
    }

    fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let g = self.fp().gcd(&self.fp().gcd(a, b), &self.modulus);
        self.normalize(&g)
    }

    fn lcm(&self, a: &Poly, b: &Poly) -> Poly {
        let da = self.fp().gcd(a, &self.modulus);
        let db = self.fp().gcd(b, &self.modulus);
        let l = self.base().lcm(&da, &db);
        self.normalize(&l)
    }

    fn colon(&self, g: &Poly, a: &Poly) -> Poly {
        let d = self.fp().gcd(g, &self.modulus);
        let e = self.fp().gcd(&d, a);
        let (q, _) = self.fp().div_rem(&d, &e);
        self.normalize(&q)
    }

    fn residue(&self, a: &Poly, g: &Poly) -> Poly {
        let d = self.fp().gcd(g, &self.modulus);
        self.fp().rem(a, &d)
    }
}
