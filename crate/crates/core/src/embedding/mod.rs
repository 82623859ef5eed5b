//! Topological embeddings `Π_k R/I → M/N` for sequence modules over a
//! countable PID, built step by step and checked by replay.

mod builder;
mod certificate;
mod module;
mod tuples;
mod verify;

pub use builder::{
    build_embedding, choose_epsilon, choose_generator, combine, detect_ideal, evaluate_map, generator_norm_limit,
    pinned_epsilon, AvoidanceCheck, BuildConfig, IdealDetection, DEFAULT_MAX_INDEX,
};
pub use certificate::{
    CertificateHeader, CertificateJson, EmbeddingCertificate, Extremum, IdealJson, StepEvidence, CERTIFICATE_FORMAT,
};
pub use module::{ModuleDescriptor, SequenceModule, SubmoduleDescriptor, DEFAULT_NORM_CAP};
pub use tuples::{bounded_tuples, coefficients_up_to};
pub use verify::{verify_certificate, CheckOutcome, VerifyReport};
