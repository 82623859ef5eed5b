use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::term::Term;
use crate::error::ExceedsCap;
use crate::pid::PidIdeal;
use crate::ring::{Presentation, PrincipalIdealRing, Ring};

#[derive(Debug, Clone)]
pub struct BallEntry<E> {
    pub norm: u64,
    pub nodes: usize,
    pub witness: Arc<Term<E>>,
}

/// `{r : |r| ≤ radius}` with exact norms and one minimal witness term each.
#[derive(Debug, Clone)]
pub struct NormBall<R: Ring> {
    presentation: Presentation<R>,
    radius: u64,
    entries: HashMap<R::Elem, BallEntry<R::Elem>>,
    levels: Vec<Vec<R::Elem>>,
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Mul,
}

struct Candidate<E> {
    nodes: usize,
    term: Arc<Term<E>>,
}

impl<R: Ring> NormBall<R> {
    /// The radius-0 ball `{0}`.
    pub fn new(presentation: Presentation<R>) -> Self {
        let mut entries = HashMap::new();
        let level0 = presentation.atoms_of_weight(0);
        for r in &level0 {
            entries.insert(
                r.clone(),
                BallEntry { norm: 0, nodes: 1, witness: Arc::new(Term::Atom(r.clone())) },
            );
        }
        NormBall { presentation, radius: 0, entries, levels: vec![level0] }
    }

    pub fn presentation(&self) -> &Presentation<R> {
        &self.presentation
    }

    pub fn ring(&self) -> &R {
        self.presentation.ring()
    }

    pub fn radius(&self) -> u64 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, r: &R::Elem) -> bool {
        self.entries.contains_key(r)
    }

    pub fn norm_of(&self, r: &R::Elem) -> Option<u64> {
        self.entries.get(r).map(|e| e.norm)
    }

    pub fn entry(&self, r: &R::Elem) -> Option<&BallEntry<R::Elem>> {
        self.entries.get(r)
    }

    /// Elements of norm exactly `j`, in enumeration order.
    pub fn level(&self, j: u64) -> &[R::Elem] {
        self.levels.get(j as usize).map_or(&[], |v| v.as_slice())
    }

    /// All entries ordered by norm, then enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = (&R::Elem, &BallEntry<R::Elem>)> {
        self.levels
            .iter()
            .flatten()
            .map(move |r| (r, &self.entries[r]))
    }

    pub fn grow_to(&mut self, n: u64) {
        while self.radius < n {
            self.grow_one();
        }
    }

    /// Adds level `radius + 1`. All compositions landing on that level are
    /// independent, so they are scanned in parallel and merged by the
    /// witness order (fewest nodes, then smallest prefix form).
    pub fn grow_one(&mut self) {
        let j = self.radius + 1;
        let ring = self.presentation.ring().clone();
        let mut jobs: Vec<(Op, usize, usize, usize)> = Vec::new();
        for a in 1..j {
            let b = j - a;
            let (la, lb) = (self.level(a), self.level(b));
            if !la.is_empty() && !lb.is_empty() {
                jobs.extend((0..la.len()).map(|x| (Op::Add, a as usize, b as usize, x)));
            }
        }
        for a in 2..j {
            if !j.is_multiple_of(a) || j / a < 2 {
                continue;
            }
            let b = j / a;
            let (la, lb) = (self.level(a), self.level(b));
            if !la.is_empty() && !lb.is_empty() {
                jobs.extend((0..la.len()).map(|x| (Op::Mul, a as usize, b as usize, x)));
            }
        }

        let this = &*self;
        let mut found: HashMap<R::Elem, Candidate<R::Elem>> = jobs
            .par_iter()
            .fold(HashMap::new, |mut acc, &(op, a, b, xi)| {
                let x = &this.levels[a][xi];
                let ex = &this.entries[x];
                for y in &this.levels[b] {
                    let value = match op {
                        Op::Add => ring.add(x, y),
                        Op::Mul => ring.mul(x, y),
                    };
                    if this.entries.contains_key(&value) {
                        continue;
                    }
                    let ey = &this.entries[y];
                    let nodes = ex.nodes + ey.nodes + 1;
                    let make = || {
                        let (tx, ty) = (ex.witness.clone(), ey.witness.clone());
                        Arc::new(match op {
                            Op::Add => Term::Add(tx, ty),
                            Op::Mul => Term::Mul(tx, ty),
                        })
                    };
                    offer(&ring, &mut acc, value, nodes, make);
                }
                acc
            })
            .reduce(HashMap::new, |mut left, right| {
                for (value, c) in right {
                    offer(&ring, &mut left, value, c.nodes, || c.term.clone());
                }
                left
            });

        for atom in self.presentation.atoms_of_weight(j) {
            if !self.entries.contains_key(&atom) {
                let term = Arc::new(Term::Atom(atom.clone()));
                offer(&ring, &mut found, atom, 1, || term.clone());
            }
        }

        let mut level: Vec<R::Elem> = found.keys().cloned().collect();
        level.sort_by(|a, b| ring.elem_cmp(a, b));
        for (value, c) in found {
            self.entries
                .insert(value, BallEntry { norm: j, nodes: c.nodes, witness: c.term });
        }
        self.levels.push(level);
        self.radius = j;
    }
}

fn offer<R: Ring>(
    ring: &R,
    acc: &mut HashMap<R::Elem, Candidate<R::Elem>>,
    value: R::Elem,
    nodes: usize,
    make: impl FnOnce() -> Arc<Term<R::Elem>>,
) {
    match acc.get_mut(&value) {
        None => {
            acc.insert(value, Candidate { nodes, term: make() });
        }
        Some(cur) => {
            if nodes > cur.nodes {
                return;
            }
            let term = make();
            if nodes < cur.nodes || term.to_prefix(ring) < cur.term.to_prefix(ring) {
                *cur = Candidate { nodes, term };
            }
        }
    }
}

pub fn build_ball<R: Ring>(presentation: &Presentation<R>, n: u64) -> NormBall<R> {
    let mut ball = NormBall::new(presentation.clone());
    ball.grow_to(n);
    ball
}

/// `|r|` if it is at most `cap`; grows the ball only as far as needed.
pub fn norm<R: Ring>(presentation: &Presentation<R>, r: &R::Elem, cap: u64) -> Result<u64, ExceedsCap> {
    let mut ball = NormBall::new(presentation.clone());
    loop {
        if let Some(v) = ball.norm_of(r) {
            return Ok(v);
        }
        if ball.radius() >= cap {
            return Err(ExceedsCap { cap });
        }
        ball.grow_one();
    }
}

/// `min {|s| : s ∈ r + I}` if it is at most `cap`.
pub fn quotient_norm<R: PrincipalIdealRing>(
    presentation: &Presentation<R>,
    ideal: &PidIdeal<R>,
    r: &R::Elem,
    cap: u64,
) -> Result<u64, ExceedsCap> {
    let ring = presentation.ring();
    let mut ball = NormBall::new(presentation.clone());
    loop {
        let j = ball.radius();
        if ball.level(j).iter().any(|s| ideal.contains(&ring.sub(s, r))) {
            return Ok(j);
        }
        if j >= cap {
            return Err(ExceedsCap { cap });
        }
        ball.grow_one();
    }
}
