//! Renormalized (log-scale) coefficient arithmetic.
//!
//! A complex value `c` at squaring level `N` is stored as a pair
//! `(r, alpha)` with
//!
//! ```text
//! c = alpha * exp(-p * r),    p = 2^N,   |alpha| = 1
//! ```
//!
//! so `r = -log|c| / p` is a *radial* coordinate that stays bounded while
//! the underlying value squares away, and `alpha` carries the phase.  Zero
//! has no logarithm; it is encoded as `(+inf, 1)` by convention.
//!
//! Sums of two such values are computed entirely in log scale
//! ([`ren_sum`]): the larger term is factored out so the exponential that
//! remains is always `<= 1`, which is what makes the representation immune
//! to overflow and underflow.

use crate::Complex;

/// A renormalized coefficient: radial part plus unit phase.
///
/// The level `p = 2^N` is *not* stored here; it is carried by the
/// surrounding jet and passed explicitly to the operations that need it.
/// This keeps the struct `Copy` and lets one coefficient be reinterpreted
/// at a different level, which the tangent Graeffe step does all the time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenCoeff {
    /// Radial coordinate `-log|c| / p`; `+inf` encodes the value zero.
    pub r: f64,
    /// Unit phase `c / |c|`; exactly `1` for the zero encoding.
    pub alpha: Complex,
}

impl RenCoeff {
    /// The canonical encoding of zero.
    pub fn zero() -> Self {
        RenCoeff {
            r: f64::INFINITY,
            alpha: Complex::new(1.0, 0.0),
        }
    }

    /// True if this is the zero encoding.
    pub fn is_zero(&self) -> bool {
        self.r == f64::INFINITY
    }

    /// Renormalize an ordinary complex value at level `p = 2^N`.
    ///
    /// `r` absorbs the whole magnitude: `to_renorm(c, p)` has
    /// `r = -log|c|/p` so the same value keeps the same radial coordinate
    /// only when `p` matches the level it came from.
    pub fn from_complex(c: Complex, p: f64) -> Self {
        let mag = c.norm();
        if mag == 0.0 {
            return RenCoeff::zero();
        }
        RenCoeff {
            r: -mag.ln() / p,
            alpha: c / mag,
        }
    }

    /// Map back to an ordinary complex value, `alpha * exp(-p*r)`.
    ///
    /// The exponent is clamped to `[-700, 700]` (just inside binary64
    /// range); the boolean is true when clamping fired, meaning the
    /// returned value saturated and should be treated as low-confidence.
    /// The zero encoding maps to exactly `0` without saturating.
    pub fn value_flagged(&self, p: f64) -> (Complex, bool) {
        if self.is_zero() {
            return (Complex::new(0.0, 0.0), false);
        }
        let e = -p * self.r;
        let clamped = e.clamp(-700.0, 700.0);
        (self.alpha * clamped.exp(), clamped != e)
    }

    /// [`Self::value_flagged`] without the saturation flag.
    pub fn value(&self, p: f64) -> Complex {
        self.value_flagged(p).0
    }
}

/// Renormalized sum of `a1*exp(-p*r1)` and `a2*exp(-p*r2)`.
///
/// The term with the smaller radial coordinate (the larger magnitude) is
/// factored out, so the remaining exponential has a nonpositive exponent
/// and can never overflow.  Exact cancellation returns the zero encoding.
///
/// Swapping the arguments takes the mirror branch with the identical
/// floating-point expressions, so the operation is exactly commutative.
pub fn ren_sum(x1: RenCoeff, x2: RenCoeff, p: f64) -> RenCoeff {
    if x1.is_zero() && x2.is_zero() {
        return RenCoeff::zero();
    }
    let delta = x2.r - x1.r;
    let (base, t) = if delta >= 0.0 {
        // |x1| dominates (or ties): t = alpha1 + alpha2 * exp(-p*delta).
        (x1.r, x1.alpha + x2.alpha * (-p * delta).exp())
    } else {
        (x2.r, x2.alpha + x1.alpha * (p * delta).exp())
    };
    let mag = t.norm();
    if mag == 0.0 {
        return RenCoeff::zero();
    }
    RenCoeff {
        r: base - mag.ln() / p,
        alpha: t / mag,
    }
}

/// Renormalized product: radial parts add, phases multiply.
///
/// Zero absorbs: if either factor is the zero encoding the result is the
/// canonical zero `(+inf, 1)`, not `(+inf, alpha1*alpha2)`.
pub fn ren_prod(x1: RenCoeff, x2: RenCoeff) -> RenCoeff {
    if x1.is_zero() || x2.is_zero() {
        return RenCoeff::zero();
    }
    RenCoeff {
        r: x1.r + x2.r,
        alpha: x1.alpha * x2.alpha,
    }
}
