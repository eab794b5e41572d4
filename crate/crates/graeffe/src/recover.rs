//! Root recovery from a renormalized tangent jet and a Newton diagram.
//!
//! The diagram's segment slopes give each root group's modulus.  The
//! missing directional information comes from the tangent: the difference
//! of logarithmic derivatives `ġ/g` at a segment's two corners converges
//! to `2^N · Σ 1/ζ` over the group's roots.  Scaling that difference by
//! `2^{-N} m / d'` (with `m = |ζ|²` from the slope and `d'` the corner
//! gap) yields `Re ζ` for real inputs and — after conjugation — `ζ`
//! itself for complex ones.  Everything is evaluated through
//! renormalized coordinates; the only place a raw exponential appears is
//! the final estimate, where the exponent is clamped and flagged rather
//! than allowed to overflow.

use crate::diagram::NewtonDiagram;
use crate::graeffe::RenJet;
use crate::renorm::{ren_sum, RenCoeff};
use crate::Complex;

/// Largest magnitude allowed into `exp` before the estimate is clamped.
const EXP_CLAMP: f64 = 700.0;

/// Threshold below which a real estimate's sign is considered unknown.
const SIGN_AMBIGUOUS: f64 = 1e-300;

/// What a recovered estimate represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootKind {
    /// Lone real root of its modulus (corner gap 1, real mode).
    IsolatedReal,
    /// One complex-conjugate pair (corner gap 2, real mode).
    ConjugatePair,
    /// Two distinct real roots sharing one gap-2 segment, split from
    /// their mean and geometric mean (real mode).
    RealPair,
    /// Corner gap larger than the kind can attribute to a single root.
    Multiple,
    /// Lone root of its modulus, complex mode.
    ComplexIsolated,
}

/// One recovered root (repeated entries share a diagram segment).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootEstimate {
    pub value: Complex,
    /// Diagram-derived modulus `sqrt(m)` for the segment.
    pub modulus: f64,
    /// Segment corners this estimate came from.
    pub group_start: usize,
    pub group_end: usize,
    pub kind: RootKind,
    /// Set when an exponent was clamped or a sign left unresolved; the
    /// solver treats such estimates as low-confidence.
    pub saturated: bool,
}

/// Per-segment quantities shared by both recovery modes.
struct SegmentCore {
    /// Phase of the logarithmic-derivative difference.
    beta: Complex,
    /// `x` before any mode-specific handling: `β · e^t / (2^N d')`,
    /// where `t = 2Δr/d' − 2^N b` combines the modulus and the
    /// renormalized difference in one exponent.
    scaled: Complex,
    /// Segment slope = log of the modulus estimate.
    slope: f64,
    modulus: f64,
    saturated: bool,
}

fn segment_core(jet: &RenJet, i1: usize, i2: usize) -> SegmentCore {
    let p = jet.p();
    let gap = (i2 - i1) as f64;
    let base = &jet.base;
    let tangent = &jet.tangent;

    let ratio = |i: usize| RenCoeff {
        r: tangent[i].r - base[i].r,
        alpha: tangent[i].alpha / base[i].alpha,
    };
    let mut lo = ratio(i1);
    lo.alpha = -lo.alpha;
    let diff = ren_sum(ratio(i2), lo, p);

    let slope = (base[i2].r - base[i1].r) / gap;
    let mut saturated = false;
    let mut clamp = |e: f64| {
        if e.abs() > EXP_CLAMP {
            saturated = true;
            e.clamp(-EXP_CLAMP, EXP_CLAMP)
        } else {
            e
        }
    };
    let modulus = clamp(slope).exp();
    let scaled = if diff.is_zero() {
        // The tangent difference vanished identically (e.g. a perfectly
        // centered conjugate pair): the directional part is exactly 0.
        Complex::new(0.0, 0.0)
    } else {
        let t = clamp(2.0 * slope - p * diff.r);
        diff.alpha * (t.exp() / (p * gap))
    };
    SegmentCore {
        beta: diff.alpha,
        scaled,
        slope,
        modulus,
        saturated,
    }
}

/// Recover roots of a *real* polynomial from its jet and diagram.
///
/// Per segment `(I1, I2)` with gap `d'`: the scaled difference gives
/// `x ≈ Re ζ`.  When `d'` is even and the segment modulus exceeds `|x|`,
/// the group is read as conjugate pairs `x ± iy` with `y = sqrt(m − x²)`
/// (so the emitted modulus matches the diagram exactly up to rounding).
/// A gap-2 segment whose mean lies *on or outside* its modulus circle
/// holds two distinct real roots instead (their arithmetic mean always
/// weakly exceeds their geometric mean): `x` is the mean and `m²` the
/// product, so the quadratic with that sum and product splits them as
/// `x ± sqrt(x² − m²)`.  This resolves a near-tied real pair from its
/// two *bracketing* corners alone — the interior hull point between
/// such roots is numerically unreliable, but the corners and the
/// tangent are not.  Otherwise the group is real and `x` is
/// re-normalized to the diagram modulus, keeping only its sign; a sign
/// too small to trust is emitted as `+sqrt(m)` and flagged for the
/// caller to resolve later.
pub fn real_recover(jet: &RenJet, diagram: &NewtonDiagram) -> Vec<RootEstimate> {
    let mut out = Vec::with_capacity(jet.degree());
    for (i1, i2) in diagram.segments() {
        let core = segment_core(jet, i1, i2);
        debug_assert!(
            core.beta.im == 0.0,
            "real pipeline produced a non-real phase"
        );
        let gap = i2 - i1;
        let x = core.scaled.re;
        let mut push = |value: Complex, kind: RootKind, saturated: bool| {
            out.push(RootEstimate {
                value,
                modulus: core.modulus,
                group_start: i1,
                group_end: i2,
                kind,
                saturated,
            })
        };
        // `m > x²` compared in the log domain so huge moduli don't
        // overflow before the comparison is even made.
        let pair_branch = gap % 2 == 0 && core.slope > x.abs().ln();
        if pair_branch {
            let y = if 2.0 * core.slope <= EXP_CLAMP {
                ((2.0 * core.slope).exp() - x * x).sqrt()
            } else {
                // Near the representable edge: factor e^s out first.
                let u = x.abs() * (-core.slope).exp();
                core.modulus * ((1.0 - u) * (1.0 + u)).sqrt()
            };
            let kind = if gap == 2 {
                RootKind::ConjugatePair
            } else {
                RootKind::Multiple
            };
            for _ in 0..gap / 2 {
                push(Complex::new(x, y), kind, core.saturated);
                push(Complex::new(x, -y), kind, core.saturated);
            }
        } else if gap == 2 && x.abs() >= SIGN_AMBIGUOUS {
            let split = if 2.0 * x.abs().ln() <= EXP_CLAMP {
                ((x.abs() - core.modulus) * (x.abs() + core.modulus))
                    .max(0.0)
                    .sqrt()
            } else {
                // Near the representable edge: factor |x| out first.
                let u = (core.slope - x.abs().ln()).exp();
                x.abs() * ((1.0 - u) * (1.0 + u)).max(0.0).sqrt()
            };
            push(Complex::new(x - split, 0.0), RootKind::RealPair, core.saturated);
            push(Complex::new(x + split, 0.0), RootKind::RealPair, core.saturated);
        } else {
            let (value, saturated) = if x.abs() < SIGN_AMBIGUOUS {
                (core.modulus, true)
            } else {
                (x.signum() * core.modulus, core.saturated)
            };
            let kind = if gap == 1 {
                RootKind::IsolatedReal
            } else {
                RootKind::Multiple
            };
            for _ in 0..gap {
                push(Complex::new(value, 0.0), kind, saturated);
            }
        }
    }
    out
}

/// Recover roots of a complex polynomial from its jet and diagram.
///
/// Same per-segment difference as [`real_recover`], conjugated: the
/// logarithmic-derivative difference converges to `2^N Σ 1/ζ`, i.e. to
/// `2^N d' conj(ζ)/|ζ|²` for a single group value, so conjugating and
/// scaling by `m/d'` recovers `ζ` directly.  No modulus re-normalization
/// is applied; the diagram value is reported alongside.
pub fn complex_recover(jet: &RenJet, diagram: &NewtonDiagram) -> Vec<RootEstimate> {
    let mut out = Vec::with_capacity(jet.degree());
    for (i1, i2) in diagram.segments() {
        let core = segment_core(jet, i1, i2);
        let gap = i2 - i1;
        let value = core.scaled.conj();
        let kind = if gap == 1 {
            RootKind::ComplexIsolated
        } else {
            RootKind::Multiple
        };
        for _ in 0..gap {
            out.push(RootEstimate {
                value,
                modulus: core.modulus,
                group_start: i1,
                group_end: i2,
                kind,
                saturated: core.saturated,
            });
        }
    }
    out
}
