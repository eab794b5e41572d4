//! Error type shared by the whole crate.

use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A polynomial was constructed from an empty coefficient list or with a
    /// vanishing leading coefficient.
    #[error("zero polynomial")]
    ZeroPolynomial,

    /// The operation needs degree >= 1 (e.g. differentiating or solving a
    /// constant).
    #[error("constant polynomial")]
    ConstantPolynomial,

    /// A classical (non-renormalized) Graeffe step produced a coefficient
    /// outside binary64 range.  This is expected behaviour for moderate
    /// degrees and levels; use the renormalized path instead.
    #[error("classical overflow")]
    ClassicalOverflow,

    /// The Möbius substitution for the drawn angle left a leading or
    /// trailing coefficient too close to zero (a root was mapped near 0 or
    /// infinity).  Callers redraw the angle and retry.
    #[error("degenerate theta, retry")]
    DegenerateTheta,

    /// A root estimate was mapped onto the pole of the Möbius change of
    /// variables, so it cannot be pulled back.
    #[error("root at pole")]
    RootAtPole,

    /// The Newton diagram scan needs finite radial coordinates at both ends
    /// (equivalently `f(0) != 0` and exact degree).
    #[error("endpoint coefficient vanished")]
    EndpointVanished,

    /// Real-mode output must consist of real roots and exact conjugate
    /// pairs; the given vector cannot be arranged that way.
    #[error("conjugate pairing violated")]
    PairingViolation,

    /// Root-set comparison needs equally sized sets.
    #[error("root set size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    /// A solver option is outside its documented range.
    #[error("invalid options: {0}")]
    InvalidOptions(String),

    /// A polynomial file failed to parse.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
