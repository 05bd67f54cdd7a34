//! Golod certificates for powers of ideals.

pub mod certificate;
pub mod jacobian;
pub mod series;
pub mod verify;

pub use certificate::{
    golod_certificate, trivial_multiplication_check, CertificateOptions, GolodCertificate,
    TrivialMultiplication, Verdict, DEFAULT_TRUNCATION,
};
pub use jacobian::{
    chain_element, chain_entries, chains, jacobian_chain_cycle, jacobian_cycles,
    jacobian_determinant, jacobian_product_rule_expand, product_rule_sum, CycleSource,
    JacobianCycle, ProductRuleTerm,
};
pub use series::{
    golod_by_series, poincare_truncation, serre_bound_series, SeriesComparison, SeriesKind,
    SeriesTruncation,
};
pub use verify::{verify_certificate, VerificationReport};
