//! Classical and renormalized (tangent) Graeffe steps.
//!
//! One Graeffe step maps `f` to a polynomial whose roots are the squares
//! of the roots of `f`.  In coefficients, with indices outside `[0, d]`
//! reading as zero:
//!
//! ```text
//! g_i = (-1)^i f_i^2  +  2 * sum_{j>=1} (-1)^(i+j) f_{i+j} f_{i-j}
//! ```
//!
//! (Root squaring only determines the iterate up to a constant factor; we
//! normalize without the global `(-1)^d` prefactor so the classical and
//! renormalized paths agree coefficient for coefficient.)
//!
//! The *tangent* step propagates a first-order jet `f + eps*fdot`
//! alongside:
//!
//! ```text
//! gdot_i = 2 * sum_j (-1)^(i+j) f_{i-j} fdot_{i+j}
//! ```
//!
//! where `j` runs over all integers (negative, zero and positive) keeping
//! both indices in range.  The step is quadratic in its input, so this is
//! its exact differential: seeding `fdot = f'` lets the final sweep read
//! off root *arguments*, not just moduli.
//!
//! The renormalized versions do the identical arithmetic on `(r, alpha)`
//! pairs at level `p = 2^(N+1)`; every product of two level-`N` values
//! averages the radial parts, and the factor 2 on the cross terms becomes
//! a radial shift of `-log(2)/p`.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::renorm::{ren_sum, RenCoeff};
use crate::Complex;

#[inline]
fn sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// One classical Graeffe step in plain binary64 coefficients.
///
/// Errors with [`Error::ClassicalOverflow`] as soon as any output
/// coefficient leaves binary64 range — which for well-scaled inputs
/// happens after only a handful of steps.  That is the problem the
/// renormalized path exists to solve.
pub fn graeffe_classical(p: &Polynomial) -> Result<Polynomial> {
    let d = p.degree();
    let f = p.coefficients();
    let mut g = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let mut acc = f[i] * f[i] * sign(i);
        for j in 1..=i.min(d - i) {
            acc += f[i + j] * f[i - j] * (2.0 * sign(i + j));
        }
        g.push(acc);
    }
    if g.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::ClassicalOverflow);
    }
    Polynomial::new(g)
}

/// One classical tangent Graeffe step on the jet `(f, fdot)`.
///
/// `fdot` is a plain coefficient vector of the same length as `f`'s
/// (its leading entries may be zero — a jet direction need not have exact
/// degree `d`).  Returns the new `(g, gdot)`.
pub fn tangent_graeffe_classical(
    p: &Polynomial,
    pdot: &[Complex],
) -> Result<(Polynomial, Vec<Complex>)> {
    let d = p.degree();
    assert_eq!(pdot.len(), d + 1, "jet direction must have d + 1 entries");
    let f = p.coefficients();
    let g = graeffe_classical(p)?;
    let mut gdot = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let m = i.min(d - i) as isize;
        let mut acc = Complex::new(0.0, 0.0);
        for j in -m..=m {
            let a = (i as isize - j) as usize;
            let b = (i as isize + j) as usize;
            acc += f[a] * pdot[b] * (2.0 * sign((i as isize + j).unsigned_abs()));
        }
        gdot.push(acc);
    }
    if gdot.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::ClassicalOverflow);
    }
    Ok((g, gdot))
}

/// A renormalized first-order jet at squaring level `N`.
///
/// `base[i]` and `tangent[i]` represent the coefficients of `g` and
/// `gdot` as `alpha * exp(-2^level * r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RenJet {
    pub level: u32,
    pub base: Vec<RenCoeff>,
    pub tangent: Vec<RenCoeff>,
}

impl RenJet {
    /// Degree of the underlying polynomial.
    pub fn degree(&self) -> usize {
        self.base.len() - 1
    }

    /// `p = 2^level` as a float.
    pub fn p(&self) -> f64 {
        (self.level as f64).exp2()
    }

    /// Radial coordinates of the base polynomial.
    pub fn radials(&self) -> Vec<f64> {
        self.base.iter().map(|c| c.r).collect()
    }
}

/// Level-0 jet for `p` with the tangent seeded to `p'` (stored in `d + 1`
/// slots, the top one zero).
///
/// Callers must have deflated roots at the origin first (`p(0) != 0`):
/// a vanishing constant term would put an infinite radial coordinate at
/// the left end of the Newton diagram, where the scan requires a finite
/// anchor.
pub fn init_jet(p: &Polynomial) -> RenJet {
    let d = p.degree();
    let f = p.coefficients();
    let base = f.iter().map(|&c| RenCoeff::from_complex(c, 1.0)).collect();
    let mut tangent: Vec<RenCoeff> = (0..d)
        .map(|i| RenCoeff::from_complex(f[i + 1] * (i + 1) as f64, 1.0))
        .collect();
    tangent.push(RenCoeff::zero());
    RenJet {
        level: 0,
        base,
        tangent,
    }
}

/// One renormalized tangent Graeffe step: level `N` jet in, level `N + 1`
/// jet out.  No overflow is possible at any degree or level.
pub fn tangent_graeffe_renorm(jet: &RenJet) -> RenJet {
    let d = jet.degree();
    let p = ((jet.level + 1) as f64).exp2();
    let shift = std::f64::consts::LN_2 / p; // encodes the factor 2 cross terms
    let base = &jet.base;
    let tan = &jet.tangent;

    let mut new_base = Vec::with_capacity(d + 1);
    let mut new_tan = Vec::with_capacity(d + 1);
    for i in 0..=d {
        // Square term f_i^2 (no factor 2) and jet term 2 f_i fdot_i.
        let mut b_acc = if base[i].is_zero() {
            RenCoeff::zero()
        } else {
            RenCoeff {
                r: base[i].r,
                alpha: base[i].alpha * base[i].alpha * sign(i),
            }
        };
        let mut t_acc = if base[i].is_zero() || tan[i].is_zero() {
            RenCoeff::zero()
        } else {
            RenCoeff {
                r: 0.5 * (base[i].r + tan[i].r) - shift,
                alpha: base[i].alpha * tan[i].alpha * sign(i),
            }
        };
        // Paired cross terms; note (-1)^(i-j) = (-1)^(i+j).  The explicit
        // zero tests keep infinities out of the radial averaging.
        for j in 1..=i.min(d - i) {
            let s = sign(i + j);
            if !base[i + j].is_zero() && !base[i - j].is_zero() {
                let term = RenCoeff {
                    r: 0.5 * (base[i + j].r + base[i - j].r) - shift,
                    alpha: base[i + j].alpha * base[i - j].alpha * s,
                };
                b_acc = ren_sum(b_acc, term, p);
            }
            if !base[i + j].is_zero() && !tan[i - j].is_zero() {
                let term = RenCoeff {
                    r: 0.5 * (base[i + j].r + tan[i - j].r) - shift,
                    alpha: base[i + j].alpha * tan[i - j].alpha * s,
                };
                t_acc = ren_sum(t_acc, term, p);
            }
            if !base[i - j].is_zero() && !tan[i + j].is_zero() {
                let term = RenCoeff {
                    r: 0.5 * (base[i - j].r + tan[i + j].r) - shift,
                    alpha: base[i - j].alpha * tan[i + j].alpha * s,
                };
                t_acc = ren_sum(t_acc, term, p);
            }
        }
        new_base.push(b_acc);
        new_tan.push(t_acc);
    }
    RenJet {
        level: jet.level + 1,
        base: new_base,
        tangent: new_tan,
    }
}
