//! Minimal-term norms: `|r|` is the least weight of a `(+, ·)` term that
//! evaluates to `r`, computed by closing norm balls level by level.

mod axioms;
mod ball;
mod oracle;
mod term;

pub use axioms::{check_norm_axioms, Axiom, AxiomReport, AxiomViolation};
pub use ball::{build_ball, norm, quotient_norm, BallEntry, NormBall};
pub use oracle::{coset_norm, DiscreteNorm, NormConvention, RingNorm, TermNorm};
pub use term::Term;
