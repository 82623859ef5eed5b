//! Proper norms on countable rings, exact ℓ¹(R) arithmetic, ideal
//! factorization in PIDs and certified embeddings `Π_k R/I → M/N`.

pub mod check;
pub mod cli;
pub mod embedding;
pub mod error;
pub mod l1;
pub mod norm;
pub mod pid;
pub mod ring;
pub mod witnesses;

pub use error::{Error, ExceedsCap, Result};

pub type Rational = num_rational::BigRational;
pub type IntegerBall = norm::NormBall<ring::Integers>;
pub type IntegerVector = l1::L1Vector<ring::Integers>;
