//! Independent cross-check root finder: Aberth–Ehrlich simultaneous
//! iteration.  Used by tests and benchmarks only — it shares nothing
//! with the Graeffe pipeline beyond [`Polynomial`] evaluation, so
//! agreement between the two is meaningful evidence.

use crate::error::{Error, Result};
use crate::poly::{backward_error, safe_div, Polynomial};
use crate::Complex;

/// Output of [`aberth_roots`].
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// All roots, zero roots included; length equals the input degree.
    pub roots: Vec<Complex>,
    pub converged: bool,
    pub iterations: usize,
    /// Largest relative correction of the final sweep.
    pub max_correction: f64,
}

/// Simultaneous Newton-like iteration with pairwise repulsion:
///
/// ```text
/// z_i ← z_i − w_i / (1 − w_i Σ_{j≠i} 1/(z_i − z_j)),   w_i = p(z_i)/p'(z_i)
/// ```
///
/// Zero roots are deflated up front and re-attached to the output.
/// Initial guesses are read off the upper convex hull of the points
/// `(k, ln|f_k|)`: each hull edge from `k1` to `k2` contributes
/// `k2 − k1` guesses on the circle of radius `exp((y1 − y2)/(k2 − k1))`
/// (the classic coefficient-based estimate of that group's common
/// modulus), all sharing one global golden-angle sequence so no input
/// symmetry can trap the whole configuration.  Iteration stops when
/// every iterate either has a relative correction below `tol` or sits
/// at the coefficient rounding floor while standing clear of all other
/// iterates; non-convergence is reported through the flag, never
/// thrown.
pub fn aberth_roots(p: &Polynomial, tol: f64, max_iter: usize) -> Result<OracleResult> {
    if p.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let (q, zero_multiplicity) = p.deflate_zero_roots();
    let d = q.degree();
    let mut roots = vec![Complex::new(0.0, 0.0); zero_multiplicity];
    if d == 0 {
        return Ok(OracleResult {
            roots,
            converged: true,
            iterations: 0,
            max_correction: 0.0,
        });
    }

    let golden = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
    let start = initial_guesses(&q);
    let mut z = start.clone();

    let mut converged = false;
    let mut iterations = 0;
    let mut max_correction = f64::INFINITY;
    let mut pinned = vec![false; d];
    for it in 1..=max_iter {
        max_correction = 0.0;
        let mut runaways: Vec<usize> = Vec::new();
        for i in 0..d {
            if pinned[i] {
                continue;
            }
            let (value, derivative) = q.eval_with_derivative(z[i]);
            if value.norm() == 0.0 {
                pinned[i] = true;
                continue;
            }
            // Once |q(z)| sits below the rounding-error majorant the
            // Newton correction is indistinguishable from noise: the
            // estimate is a root of a coefficient-wise eps-perturbed
            // polynomial and cannot improve in this precision.  Pin it
            // instead of letting it rattle around the noise floor — but
            // only while it stands clear of every other iterate.  Two
            // iterates riding one root both show floor-level residuals,
            // and only continued repulsion can pull them apart, so a
            // crowded iterate must never be pinned.
            if backward_error(&q, z[i]) <= 4.0 * f64::EPSILON {
                let nearest = (0..d)
                    .filter(|&j| j != i)
                    .map(|j| (z[i] - z[j]).norm())
                    .fold(f64::INFINITY, f64::min);
                if nearest > 1e-6 * z[i].norm().max(1.0) {
                    pinned[i] = true;
                    continue;
                }
            }
            if derivative.norm() == 0.0 {
                // Critical point: nudge off it; the next sweep resumes.
                let nudge = Complex::new(1e-8, 1e-8) * (1.0 + z[i].norm());
                z[i] += nudge;
                max_correction = f64::INFINITY;
                continue;
            }
            let w = safe_div(value, derivative);
            let mut repulsion = Complex::new(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        repulsion += diff.inv();
                    }
                }
            }
            let denominator = Complex::new(1.0, 0.0) - w * repulsion;
            let correction = if denominator.norm() == 0.0 {
                w
            } else {
                safe_div(w, denominator)
            };
            if !correction.re.is_finite() || !correction.im.is_finite() {
                // A diverged iterate is anything but converged.
                max_correction = f64::INFINITY;
                runaways.push(i);
                continue;
            }
            z[i] -= correction;
            let scale = z[i].norm().max(1e-300);
            max_correction = max_correction.max(correction.norm() / scale);
        }
        iterations = it;
        if max_correction < tol {
            converged = true;
            break;
        }
        if !runaways.is_empty() {
            // A runaway almost always means some root carries two
            // iterates (both at the rounding floor, far enough apart to
            // pass the isolation test inside one wide noise basin)
            // while the runaway's root goes uncovered.  Restart the
            // runaway from a rotated copy of its starting point and
            // release any suspiciously close pinned look-alikes so
            // repulsion can redistribute them.
            for &i in &runaways {
                let angle = 0.4 + golden * (31 * it + i) as f64;
                z[i] = Complex::from_polar(start[i].norm(), angle);
            }
            for a in 0..d {
                for b in a + 1..d {
                    if pinned[a]
                        && pinned[b]
                        && (z[a] - z[b]).norm() <= 1e-4 * z[a].norm().max(1.0)
                    {
                        pinned[a] = false;
                        pinned[b] = false;
                    }
                }
            }
        }
    }

    roots.extend(z);
    roots.sort_by(|a, b| {
        (a.norm(), a.re, a.im)
            .partial_cmp(&(b.norm(), b.re, b.im))
            .expect("finite roots")
    });
    Ok(OracleResult {
        roots,
        converged,
        iterations,
        max_correction,
    })
}

/// Starting points from the upper convex hull of `(k, ln|f_k|)` over
/// the nonzero coefficients.  Each edge's slope estimates the common
/// log-modulus of as many roots as the edge spans, so every modulus
/// scale present in the coefficients gets its own share of starting
/// points instead of all `d` crowding one circle.  A single-edge hull
/// reduces to the classic all-on-one-circle start of radius
/// `(|f_0/f_d|)^{1/d}`.
fn initial_guesses(q: &Polynomial) -> Vec<Complex> {
    let d = q.degree();
    let support: Vec<(f64, f64)> = q
        .coefficients()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(k, c)| (k as f64, c.norm().ln()))
        .collect();
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &point in &support {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // Pop while the middle point lies on or below the chord.
            if (b.1 - a.1) * (point.0 - a.0) <= (point.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(point);
    }
    let golden = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
    let mut z = Vec::with_capacity(d);
    for edge in hull.windows(2) {
        let (k1, y1) = edge[0];
        let (k2, y2) = edge[1];
        let radius = ((y1 - y2) / (k2 - k1)).clamp(-700.0, 700.0).exp();
        for _ in 0..(k2 - k1).round() as usize {
            let angle = 0.4 + golden * z.len() as f64;
            z.push(Complex::from_polar(radius, angle));
        }
    }
    debug_assert_eq!(z.len(), d);
    z
}

fn relative_distance(a: Complex, b: Complex) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).norm() / a.norm().max(b.norm())
    }
}

/// Bottleneck matching distance between two root multisets: the minimum
/// over pairings of the largest relative per-root distance.  Greedy
/// nearest-neighbor assignment followed by pairwise (2-opt) improvement;
/// exact whenever separations dwarf the per-root errors, which is the
/// regime the test suites use it in.
pub fn match_rootsets(a: &[Complex], b: &[Complex]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch(a.len(), b.len()));
    }
    let n = a.len();
    if n == 0 {
        return Ok(0.0);
    }
    let mut assignment: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for &x in a {
        let mut best = usize::MAX;
        let mut best_distance = f64::INFINITY;
        for (j, &y) in b.iter().enumerate() {
            if !used[j] {
                let distance = relative_distance(x, y);
                if distance < best_distance {
                    best_distance = distance;
                    best = j;
                }
            }
        }
        used[best] = true;
        assignment.push(best);
    }
    // Swap any pair whose exchange strictly lowers its local bottleneck.
    let mut improved = true;
    let mut passes = 0;
    while improved && passes < 2 * n + 4 {
        improved = false;
        passes += 1;
        for i in 0..n {
            for j in i + 1..n {
                let current = relative_distance(a[i], b[assignment[i]])
                    .max(relative_distance(a[j], b[assignment[j]]));
                let swapped = relative_distance(a[i], b[assignment[j]])
                    .max(relative_distance(a[j], b[assignment[i]]));
                if swapped < current {
                    assignment.swap(i, j);
                    improved = true;
                }
            }
        }
    }
    Ok((0..n)
        .map(|i| relative_distance(a[i], b[assignment[i]]))
        .fold(0.0, f64::max))
}
