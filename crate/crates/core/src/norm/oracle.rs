use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use super::ball::NormBall;
use crate::error::{Error, ExceedsCap, Result};
use crate::pid::PidIdeal;
use crate::ring::{Presentation, PrincipalIdealRing, Ring};

/// Which ring norm a computation used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormConvention {
    /// Minimal term weight over the presentation's atoms.
    Term,
    /// `|r| = 1` for every nonzero `r`; finite rings only.
    Discrete,
}

/// A proper integer-valued norm on a ring, queried lazily.
pub trait RingNorm<R: Ring>: Send + Sync {
    fn ring(&self) -> &R;
    fn convention(&self) -> NormConvention;
    /// Largest norm value this oracle will resolve.
    fn cap(&self) -> u64;
    fn norm(&self, r: &R::Elem) -> Result<u64, ExceedsCap>;
    /// Elements of norm exactly `j`, in enumeration order.
    fn level(&self, j: u64) -> Result<Vec<R::Elem>, ExceedsCap>;
    /// Whether `|r| ≤ bound`.
    fn within(&self, r: &R::Elem, bound: u64) -> Result<bool, ExceedsCap>;

    /// Elements of norm at most `n`, ordered by norm.
    fn ball(&self, n: u64) -> Result<Vec<R::Elem>, ExceedsCap> {
        let mut out = Vec::new();
        for j in 0..=n {
            out.extend(self.level(j)?);
        }
        Ok(out)
    }
}

/// Minimal-term norm backed by a shared ball that grows on demand.
#[derive(Debug)]
pub struct TermNorm<R: Ring> {
    presentation: Presentation<R>,
    cap: u64,
    ball: RwLock<NormBall<R>>,
}

impl<R: Ring> TermNorm<R> {
    pub fn new(presentation: Presentation<R>, cap: u64) -> Self {
        let ball = RwLock::new(NormBall::new(presentation.clone()));
        TermNorm { presentation, cap, ball }
    }

    pub fn presentation(&self) -> &Presentation<R> {
        &self.presentation
    }

    fn ensure_radius(&self, n: u64) -> Result<(), ExceedsCap> {
        if n > self.cap {
            return Err(ExceedsCap { cap: self.cap });
        }
        if self.ball.read().radius() >= n {
            return Ok(());
        }
        self.ball.write().grow_to(n);
        Ok(())
    }
}

impl<R: Ring> RingNorm<R> for TermNorm<R> {
    fn ring(&self) -> &R {
        self.presentation.ring()
    }

    fn convention(&self) -> NormConvention {
        NormConvention::Term
    }

    fn cap(&self) -> u64 {
        self.cap
    }

    fn norm(&self, r: &R::Elem) -> Result<u64, ExceedsCap> {
        {
            let ball = self.ball.read();
            if let Some(v) = ball.norm_of(r) {
                return Ok(v);
            }
            if ball.radius() >= self.cap {
                return Err(ExceedsCap { cap: self.cap });
            }
        }
        let mut ball = self.ball.write();
        loop {
            if let Some(v) = ball.norm_of(r) {
                return Ok(v);
            }
            if ball.radius() >= self.cap {
                return Err(ExceedsCap { cap: self.cap });
            }
            ball.grow_one();
        }
    }

    fn level(&self, j: u64) -> Result<Vec<R::Elem>, ExceedsCap> {
        self.ensure_radius(j)?;
        Ok(self.ball.read().level(j).to_vec())
    }

    fn within(&self, r: &R::Elem, bound: u64) -> Result<bool, ExceedsCap> {
        {
            let ball = self.ball.read();
            if let Some(v) = ball.norm_of(r) {
                return Ok(v <= bound);
            }
            if ball.radius() >= bound {
                return Ok(false);
            }
        }
        if self.presentation.weight(r) <= bound {
            return Ok(true);
        }
        self.ensure_radius(bound)?;
        Ok(self.ball.read().contains(r))
    }
}

/// `|0| = 0` and `|r| = 1` otherwise, on a finite ring.
#[derive(Debug, Clone)]
pub struct DiscreteNorm<R: Ring> {
    ring: R,
    nonzero: Vec<R::Elem>,
}

impl<R: Ring> DiscreteNorm<R> {
    pub fn new(ring: R) -> Result<Self> {
        let Some(mut all) = ring.elements() else {
            return Err(Error::Unsupported(format!(
                "the discrete norm needs a finite ring, got {}",
                ring.descriptor()
            )));
        };
        all.retain(|r| !ring.is_zero(r));
        all.sort_by(|a, b| ring.elem_cmp(a, b));
        Ok(DiscreteNorm { ring, nonzero: all })
    }
}

impl<R: Ring> RingNorm<R> for DiscreteNorm<R> {
    fn ring(&self) -> &R {
        &self.ring
    }

    fn convention(&self) -> NormConvention {
        NormConvention::Discrete
    }

    fn cap(&self) -> u64 {
        u64::MAX
    }

    fn norm(&self, r: &R::Elem) -> Result<u64, ExceedsCap> {
        Ok(u64::from(!self.ring.is_zero(r)))
    }

    fn level(&self, j: u64) -> Result<Vec<R::Elem>, ExceedsCap> {
        Ok(match j {
            0 => vec![self.ring.zero()],
            1 => self.nonzero.clone(),
            _ => Vec::new(),
        })
    }

    fn within(&self, r: &R::Elem, bound: u64) -> Result<bool, ExceedsCap> {
        Ok(self.norm(r)? <= bound)
    }
}

/// Quotient norm `min {|s| : s ∈ r + I}` through any ring norm.
pub fn coset_norm<R: PrincipalIdealRing>(
    norm: &dyn RingNorm<R>,
    ideal: &PidIdeal<R>,
    r: &R::Elem,
) -> Result<u64, ExceedsCap> {
    let ring = norm.ring();
    if ideal.contains(r) {
        return Ok(0);
    }
    if ideal.is_zero() {
        return norm.norm(r);
    }
    let mut j = 1;
    loop {
        if norm.level(j)?.iter().any(|s| ideal.contains(&ring.sub(s, r))) {
            return Ok(j);
        }
        j += 1;
        if j > norm.cap() {
            return Err(ExceedsCap { cap: norm.cap() });
        }
    }
}
