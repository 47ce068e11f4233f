//! Exact-arithmetic q-series engine for the sixth order mock theta functions.
//!
//! Everything is computed over the rationals with explicit precision
//! tracking: a [`QSeries`] knows the order up to which its coefficients
//! are guaranteed, and every operation propagates that guarantee.  On
//! top of the series kernel sit builders for q-Pochhammer products,
//! theta functions, Lambert series and eta quotients, generators for the
//! eight sixth order mock theta functions, and a catalog of named
//! identities that can be verified to any truncation order.

pub mod catalog;
pub mod error;
pub mod identities;
pub mod mock;
pub mod products;
pub mod rational;
pub mod series;
pub mod sums;

pub use catalog::{
    find_identity, list_identities, verify, verify_all, IdentitySpec, Status, VerificationReport,
};
pub use error::QError;
pub use identities::{ParamPoint, ParamValue};
pub use mock::{mock_series, MockTheta};
pub use products::{
    eta_quotient, lambert_pair, poch_finite, poch_inf, quadform_theta, theta_sum, triple_product,
    EtaQuotientSpec, PochSpec,
};
pub use rational::Rat;
pub use series::{compare, Comparison, Mismatch, QSeries};
pub use sums::{cesaro_sum, sum_stream, QSum, SumKind, TermStream};

/// Default truncation order used when none is requested.
pub const DEFAULT_ORDER: i64 = 200;
