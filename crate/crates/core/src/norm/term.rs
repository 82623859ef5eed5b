use std::sync::Arc;

use crate::error::Result;
use crate::ring::{Presentation, Ring};

/// A `(+, ·)` term over ring elements, shared structurally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term<E> {
    Atom(E),
    Add(Arc<Term<E>>, Arc<Term<E>>),
    Mul(Arc<Term<E>>, Arc<Term<E>>),
}

impl<E: Clone> Term<E> {
    pub fn nodes(&self) -> usize {
        match self {
            Term::Atom(_) => 1,
            Term::Add(a, b) | Term::Mul(a, b) => 1 + a.nodes() + b.nodes(),
        }
    }

    pub fn evaluate<R: Ring<Elem = E>>(&self, ring: &R) -> E {
        match self {
            Term::Atom(r) => r.clone(),
            Term::Add(a, b) => ring.add(&a.evaluate(ring), &b.evaluate(ring)),
            Term::Mul(a, b) => ring.mul(&a.evaluate(ring), &b.evaluate(ring)),
        }
    }

    /// Leaf weights added across `+` and multiplied across `·`.
    pub fn weight<R: Ring<Elem = E>>(&self, presentation: &Presentation<R>) -> u64 {
        match self {
            Term::Atom(r) => presentation.weight(r),
            Term::Add(a, b) => a.weight(presentation).saturating_add(b.weight(presentation)),
            Term::Mul(a, b) => a.weight(presentation).saturating_mul(b.weight(presentation)),
        }
    }

    /// Space-separated prefix form, e.g. `* + 1 1 2`.
    pub fn to_prefix<R: Ring<Elem = E>>(&self, ring: &R) -> String {
        let mut out = String::new();
        self.write_prefix(ring, &mut out);
        out
    }

    fn write_prefix<R: Ring<Elem = E>>(&self, ring: &R, out: &mut String) {
        if !out.is_empty() {
            out.push(' ');
        }
        match self {
            Term::Atom(r) => out.push_str(&ring.encode(r)),
            Term::Add(a, b) => {
                out.push('+');
                a.write_prefix(ring, out);
                b.write_prefix(ring, out);
            }
            Term::Mul(a, b) => {
                out.push('*');
                a.write_prefix(ring, out);
                b.write_prefix(ring, out);
            }
        }
    }

    pub fn parse_prefix<R: Ring<Elem = E>>(ring: &R, s: &str) -> Result<Term<E>> {
        let mut tokens = s.split_whitespace();
        let term = Self::parse_tokens(ring, &mut tokens)
            .ok_or_else(|| ring.parse_error(s))??;
        if tokens.next().is_some() {
            return Err(ring.parse_error(s));
        }
        Ok(term)
    }

    fn parse_tokens<'a, R: Ring<Elem = E>>(
        ring: &R,
        tokens: &mut impl Iterator<Item = &'a str>,
    ) -> Option<Result<Term<E>>> {
        let tok = tokens.next()?;
        Some(match tok {
            "+" | "*" => {
                let a = match Self::parse_tokens(ring, tokens)? {
                    Ok(a) => a,
                    Err(e) => return Some(Err(e)),
                };
                let b = match Self::parse_tokens(ring, tokens)? {
                    Ok(b) => b,
                    Err(e) => return Some(Err(e)),
                };
                if tok == "+" {
                    Ok(Term::Add(Arc::new(a), Arc::new(b)))
                } else {
                    Ok(Term::Mul(Arc::new(a), Arc::new(b)))
                }
            }
            atom => ring.decode(atom).map(Term::Atom),
        })
    }
}
