//! Exact boundary-divisor data for Bott-Samelson resolutions of Schubert
//! varieties in Kac-Moody flag varieties.
//!
//! Given a generalized Cartan matrix and a word in the simple reflections,
//! the crate computes the root sequence `gamma_i`, the `rho`-section
//! coefficients `b_i = <rho, gamma_i^vee>` on the Bott-Samelson boundary, the
//! Schubert boundary divisors with their coefficients `a_j`, both canonical
//! divisors, the boundary `Delta` with `c_j = 1 - a_j/M`, and a certificate
//! bundling every coefficient identity of the log Fano statement. All
//! arithmetic is over the integers or exact rationals.

pub mod cartan;
pub mod divisor;
pub mod error;
pub mod oracle;
pub mod report;
pub mod weyl;

pub use cartan::{CartanClass, GeneralizedCartanMatrix};
pub use divisor::{
    anticanonical_divisor_bs, boundary_delta, bs_boundary, bs_incidence_model,
    canonical_divisor_bs, canonical_divisor_schubert, curve_degree, curve_intersection,
    floor_condition, log_fano_certificate, pullback_identity_check, pushforward, schubert_boundary,
    BsBoundary, LogFanoCertificate, Rational, RationalDivisor, RealRoot, SchubertBoundary,
    SchubertDivisor,
};
pub use error::{Error, Result};
pub use oracle::{
    all_reduced_words, bruhat_covers, bruhat_leq, enumerate_group, sweep_certificates, GroupTable,
    MPolicy, SweepOptions, SweepReport,
};
pub use weyl::{
    canonical_reduced_word, element_of, gamma_coroot_sequence, gamma_sequence, inversions,
    is_reduced, length, reflect_coroot, reflect_root, CorootVector, RootVector, Weight,
    WeylElement, Word,
};
