//! Exact computational workbench for Ringel–Hall algebras of acyclic quivers
//! over small finite fields, the Hall algebra of two-periodic complexes of
//! projectives, and the Drinfeld double of the extended twisted Hall algebra.
//!
//! Every coefficient lives in the quadratic extension Q(v) with v^2 = q and is
//! computed exactly; every structural identity the crate exposes is checked by
//! brute-force counting at small dimension vectors rather than assumed.

pub mod cyclic;
pub mod double;
pub mod hall;
pub mod harness;
pub mod linalg;
pub mod quiver;
pub mod rep;
pub mod scalar;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed quiver description (bad JSON shape, duplicate labels, unknown
    /// vertex names, empty vertex list).
    #[error("quiver format error: {0}")]
    QuiverFormat(String),
    /// The quiver has an oriented cycle, so its path algebra is outside the
    /// hereditary-with-enough-projectives scope of this crate.
    #[error("not hereditary-with-enough-projectives in scope: {0}")]
    OutOfScope(String),
    /// Attempt to invert zero in Q(v).
    #[error("zero divisor")]
    ZeroDivisor,
    /// An enumeration would exceed the configured budget.
    #[error("enumeration budget exceeded: {0}")]
    Resource(String),
    /// An internal consistency check failed; this indicates a bug or a broken
    /// structural assumption and is never silently ignored.
    #[error("internal inconsistency: {0}")]
    Internal(String),
    /// Invalid CLI or configuration input.
    #[error("usage error: {0}")]
    Usage(String),
    /// A precondition of an operation was violated by the caller.
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// FNV-1a 64-bit hash; used for stable content checksums in the on-disk cache
/// (std's `DefaultHasher` is not stable across releases, so it cannot be
/// persisted).
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}
