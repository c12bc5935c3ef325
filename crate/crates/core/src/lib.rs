//! Delsarte linear-programming bounds for spherical two-distance sets.
//!
//! The crate is organized bottom-up:
//!
//! * [`gegenbauer`]: normalized Gegenbauer polynomials and basis changes.
//! * [`bound_polys`]: the five candidate polynomials, their LP domains and bounds.
//! * [`lrs`]: the ratio-constrained slices `Q_k^{(n)}`, their suprema and the bound table.
//! * [`constructions`]: the simplex edge-midpoint configuration and numerical checks.

pub mod bound_polys;
pub mod constructions;
pub mod error;
pub mod gegenbauer;
pub mod lrs;
pub mod poly;

pub use bound_polys::{
    best_bound, build_candidate, delsarte_check, floor_bound, BestBound, CandidateBound,
    CandidateBuilder, DelsarteRejection, DomainFailure, InnerProductPair, CANDIDATES, DOMAIN_TOL,
};
pub use constructions::{
    gram_check, independence_rank, lambda_params, lambda_set, verify_two_distance,
    DistanceDiagnostic, GramReport, TwoDistanceCertificate, UnitPointSet, DEFAULT_SEED,
};
pub use error::{Error, Result};
pub use gegenbauer::{
    from_gegenbauer, gegenbauer_eval, gegenbauer_poly, to_gegenbauer, GegenbauerBasis,
    GegenbauerExpansion,
};
pub use lrs::{
    b_k, g_upper, interval, k_max, omega_hat, omega_hat_nk, omega_hat_with, phi, profile, q, rho,
    slice, table, KSlice, OmegaHat, ProfileSample, SearchConfig, SliceFunction, Supremum, TableRow,
};
pub use poly::MonomialPoly;
