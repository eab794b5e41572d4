//! Renormalized Newton diagram: corner detection on the radial profile.
//!
//! After `N` squaring levels the points `(i, r_i)` hug the lower convex
//! hull whose segment slopes are the log-moduli of root groups.  A *sharp
//! corner* is an index where the slope genuinely increases — i.e. where
//! the root modulus changes.  Finite-`N` wobble (the radial value of an
//! index interior to an equal-modulus group can float arbitrarily far
//! *up*) is absorbed by a tolerance `E` derived from the level, the
//! degree and the assumed separation `rho` between distinct moduli: a
//! candidate corner survives only when the slope increase across it
//! exceeds what wobble alone could fake.

use crate::error::{Error, Result};

/// Sharp corners of the diagram plus the tolerance used to find them.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonDiagram {
    /// Strictly increasing, starts at 0, ends at `d`.
    pub corners: Vec<usize>,
    /// The slope margin `E` used by the scan.
    pub tolerance_e: f64,
}

impl NewtonDiagram {
    /// Consecutive corner pairs `(start, end)` — one per root-modulus
    /// group, left to right.
    pub fn segments(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.corners.windows(2).map(|w| (w[0], w[1]))
    }
}

/// The slope tolerance for level `N`, degree `d` and separation `rho`:
///
/// ```text
/// E = 1/2 * ( 2^(-N+1) log(2^d + 2^d/R) - 2^(-N+2) log(1 - 2^d/R) + log(rho)/2 ),
/// R = rho^(2^N).
/// ```
///
/// `R` itself overflows binary64 almost immediately, so everything is
/// evaluated through `log R = 2^N log rho`; once `2^d/R` drops below
/// ~1e-300 its contribution is below one ulp and is taken as exactly 0.
/// At small `N` where `2^d/R >= 1` the log term is undefined — the bound
/// is vacuous there and `E = +inf` is returned, which collapses the
/// diagram to its endpoints (no interior corner can be certified yet).
pub fn hull_tolerance(level: u32, d: usize, rho: f64) -> f64 {
    debug_assert!(rho > 1.0, "separation parameter must exceed 1");
    let log_r = (level as f64).exp2() * rho.ln();
    let d_log2 = d as f64 * std::f64::consts::LN_2;
    let log_x = d_log2 - log_r; // x = 2^d / R
    if log_x >= 0.0 {
        return f64::INFINITY;
    }
    let x = log_x.exp(); // underflows to exactly 0 when < ~1e-308
    let pow = (-(level as f64) + 1.0).exp2();
    let term1 = pow * (d_log2 + (-log_r).exp().ln_1p());
    let term2 = -2.0 * pow * (-x).ln_1p();
    0.5 * (term1 + term2 + 0.5 * rho.ln())
}

/// Corner detection (the "strict convex hull" scan) on radial values `r`
/// at squaring level `level`.
///
/// A monotone stack sweep: each index is pushed once; the previous stack
/// top is discarded while its incoming slope exceeds the outgoing slope
/// minus `E` (strict comparison, so exact ties keep the candidate).
/// Interior `+inf` entries (vanished coefficients) are never keepable and
/// are skipped outright rather than routed through IEEE infinity
/// arithmetic, which would manufacture NaNs from `inf - inf`.
pub fn strict_convex_hull(level: u32, r: &[f64], rho: f64) -> Result<NewtonDiagram> {
    let d = r.len().checked_sub(1).filter(|&d| d >= 1).ok_or_else(|| {
        Error::InvalidOptions("radial profile needs at least two entries".into())
    })?;
    if !r[0].is_finite() || !r[d].is_finite() {
        return Err(Error::EndpointVanished);
    }
    let e = hull_tolerance(level, d, rho);
    let (corners, _) = hull_scan(r, e);
    Ok(NewtonDiagram {
        corners,
        tolerance_e: e,
    })
}

/// The stack sweep itself, parameterized directly by the slope margin.
/// Also reports the total number of stack pushes and pops so tests can
/// pin the amortized-linear bound.  Endpoints must already be finite.
fn hull_scan(r: &[f64], e: f64) -> (Vec<usize>, usize) {
    let slope = |a: usize, b: usize| (r[b] - r[a]) / (b - a) as f64;
    let mut stack: Vec<usize> = vec![0];
    let mut ops = 1usize;
    for (i, &ri) in r.iter().enumerate().skip(1) {
        if !ri.is_finite() {
            continue;
        }
        while stack.len() >= 2 {
            let b = stack[stack.len() - 1];
            let a = stack[stack.len() - 2];
            if slope(a, b) > slope(b, i) - e {
                stack.pop();
                ops += 1;
            } else {
                break;
            }
        }
        stack.push(i);
        ops += 1;
    }
    (stack, ops)
}

/// Per-root modulus estimates from the diagram's segment slopes.
///
/// Root index `i` (1-based, `1..=d`) falls in the segment
/// `(corner_j, corner_{j+1}]` and gets `exp(segment slope)`.  The output
/// is sorted nondecreasing; hull slopes are already nondecreasing up to
/// the tolerance, so this only irons out sub-`E` inversions.
pub fn segment_moduli(diagram: &NewtonDiagram, r: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(r.len() - 1);
    for (a, b) in diagram.segments() {
        let modulus = ((r[b] - r[a]) / (b - a) as f64).exp();
        for _ in a..b {
            out.push(modulus);
        }
    }
    out.sort_by(|x, y| x.partial_cmp(y).expect("moduli are never NaN"));
    out
}
