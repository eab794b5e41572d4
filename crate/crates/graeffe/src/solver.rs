//! The top-level solve loop: deflation, a random rotation of the
//! Riemann sphere to break equal-modulus coincidences, renormalized
//! tangent Graeffe iteration with a shrinking separation parameter,
//! per-level recovery and pullback, a Cauchy stopping rule, Newton
//! polishing, and canonical ordering of the result.

use crate::diagram::strict_convex_hull;
use crate::error::{Error, Result};
use crate::graeffe::{init_jet, tangent_graeffe_renorm};
use crate::poly::{
    backward_error, mobius_pullback, mobius_transform, safe_div, MobiusParams, Polynomial,
};
use crate::recover::{complex_recover, real_recover, RootEstimate, RootKind};
use crate::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Whether the input is treated as real (conjugate-symmetric output,
/// pair-aware recovery) or complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Real,
    Complex,
}

/// Options for [`solve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Hard cap on squaring levels; in `[1, 40]`.
    pub max_level: u32,
    /// Relative Cauchy tolerance on the root vector between levels.
    pub root_rtol: f64,
    /// Newton-polish the final roots against the original polynomial.
    pub polish: bool,
    /// Seed for the rotation angle θ.
    pub seed: u64,
    pub mode: Mode,
    /// Initial separation parameter ρ for corner detection.
    pub rho_initial: f64,
}

impl SolveOptions {
    pub fn new(mode: Mode) -> Self {
        SolveOptions {
            max_level: 10,
            root_rtol: 1e-12,
            polish: true,
            seed: 0,
            mode,
            rho_initial: 2.0,
        }
    }
}

/// Why the iteration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// Root vector changed less than `root_rtol` between levels.
    Converged,
    /// `max_level` squarings were used.
    MaxLevel,
    /// Every recovered estimate was clamped; more levels cannot help.
    Saturated,
}

/// Diagnostics for one squaring level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationStat {
    pub level: u32,
    pub corner_count: usize,
    /// Max relative change vs the previous level's root vector
    /// (infinite on the first level, where there is no previous).
    pub max_root_delta: f64,
}

/// Result of [`solve`].
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    /// Nonzero roots in canonical order.
    pub roots: Vec<Complex>,
    pub zero_root_multiplicity: usize,
    pub iterations_used: u32,
    /// Backward error of each root against the original polynomial,
    /// aligned with `roots`.
    pub backward_errors: Vec<f64>,
    pub theta_used: f64,
    pub stop_reason: StopReason,
    pub per_iteration: Vec<IterationStat>,
}

/// Smallest separation parameter the schedule will shrink to.
const RHO_FLOOR: f64 = 1.0 + 1e-8;
/// Substitute for a root that pulled back through the rotation's pole.
const POLE_SUBSTITUTE: f64 = 1e300;
/// Largest backward error a recovered 2-group pair (conjugate or real)
/// may show before the Cauchy stop will trust it (see
/// [`structure_is_final`]).
const PAIR_RESIDUAL_GATE: f64 = 1e-9;
/// Largest hull tolerance at which a 2-group pair is trusted (see
/// [`structure_is_final`]).
const PAIR_TRUST_E: f64 = 1e-6;
/// Rotation angles tried before settling for the best unresolved run.
/// An attempt costs milliseconds, and for polynomials with wide real
/// root spans a sizeable fraction of angles is intrinsically bad (the
/// rotation's pole lands inside the span and compresses many roots into
/// a cluster too ill-conditioned to represent), so the window is wide.
const THETA_ATTEMPTS: u64 = 8;

fn relative_distance(a: Complex, b: Complex) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).norm() / a.norm().max(b.norm())
    }
}

/// Find all roots of `p`.
///
/// An attempt whose final grouping never resolves — almost always a
/// rotation angle that left two distinct roots with transformed moduli
/// tied below the hull tolerance — is retried with a fresh angle, up to
/// [`THETA_ATTEMPTS`] in total; if none resolves, the attempt with the
/// smallest worst-case backward error is returned.
pub fn solve(p: &Polynomial, opts: &SolveOptions) -> Result<SolveReport> {
    let mut best: Option<(f64, SolveReport)> = None;
    for attempt in 0..THETA_ATTEMPTS {
        let attempt_opts = SolveOptions {
            seed: opts.seed.wrapping_add(attempt),
            ..*opts
        };
        let (report, settled) = solve_attempt(p, &attempt_opts)?;
        if settled {
            return Ok(report);
        }
        let worst = report.backward_errors.iter().copied().fold(0.0, f64::max);
        if best.as_ref().is_none_or(|(b, _)| worst < *b) {
            best = Some((worst, report));
        }
    }
    Ok(best.expect("at least one attempt ran").1)
}

fn validate(p: &Polynomial, opts: &SolveOptions) -> Result<()> {
    if p.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if !(1..=40).contains(&opts.max_level) {
        return Err(Error::InvalidOptions(format!(
            "max_level {} outside [1, 40]",
            opts.max_level
        )));
    }
    if !opts.root_rtol.is_finite() || opts.root_rtol <= 0.0 {
        return Err(Error::InvalidOptions("root_rtol must be positive".into()));
    }
    if !opts.rho_initial.is_finite() || opts.rho_initial <= 1.0 {
        return Err(Error::InvalidOptions("rho_initial must exceed 1".into()));
    }
    if opts.mode == Mode::Real && !p.is_real() {
        return Err(Error::InvalidOptions(
            "real mode requires a real polynomial".into(),
        ));
    }
    Ok(())
}

/// One full run with one rotation angle.  The flag reports whether the
/// run is *settled*: it reached the Cauchy stop — level-to-level
/// stability *and* a trusted grouping — and no value was duplicated
/// across diagram segments.  A run that exhausts its levels
/// or saturates is not settled even if its last grouping looks clean:
/// an angle that left two distinct roots' transformed moduli tied below
/// the hull tolerance produces exactly that signature, with estimates
/// that drift between levels instead of converging.  An unsettled run's
/// roots may still be the best available, but the caller should prefer
/// a fresh angle.
fn solve_attempt(p: &Polynomial, opts: &SolveOptions) -> Result<(SolveReport, bool)> {
    validate(p, opts)?;
    let (deflated, zero_root_multiplicity) = p.deflate_zero_roots();
    if deflated.degree() == 0 {
        return Ok((
            SolveReport {
                roots: Vec::new(),
                zero_root_multiplicity,
                iterations_used: 0,
                backward_errors: Vec::new(),
                theta_used: 0.0,
                stop_reason: StopReason::Converged,
                per_iteration: Vec::new(),
            },
            true,
        ));
    }
    let d = deflated.degree();

    // Rotation angle, redrawn on degeneracy (a root of the transformed
    // polynomial landing at 0 or infinity).
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut accepted = None;
    for _ in 0..=32 {
        let theta = std::f64::consts::PI * (1.0 - 2.0 * rng.random::<f64>());
        match mobius_transform(&deflated, theta) {
            Ok((tp, params)) => {
                accepted = Some((tp, params, theta));
                break;
            }
            Err(Error::DegenerateTheta) => continue,
            Err(e) => return Err(e),
        }
    }
    let (transformed, params, theta_used) = accepted.ok_or(Error::DegenerateTheta)?;

    let mut jet = init_jet(&transformed);
    let mut rho = opts.rho_initial;
    let mut previous: Option<Vec<Complex>> = None;
    let mut per_iteration = Vec::new();
    let mut stop_reason = StopReason::MaxLevel;
    let mut iterations_used = 0;
    let mut last: Option<(Vec<Complex>, Vec<RootEstimate>)> = None;

    for n in 1..=opts.max_level {
        jet = tangent_graeffe_renorm(&jet);
        let diagram = strict_convex_hull(n, &jet.radials(), rho)?;
        let estimates = match opts.mode {
            Mode::Real => real_recover(&jet, &diagram),
            Mode::Complex => complex_recover(&jet, &diagram),
        };
        let pulled: Vec<Complex> = estimates
            .iter()
            .map(|e| pullback_or_huge(e.value, &params))
            .collect();
        let ordered = canonical_order(&pulled, opts.mode)?;
        let delta = previous
            .as_ref()
            .map(|prev| {
                ordered
                    .iter()
                    .zip(prev)
                    .map(|(a, b)| relative_distance(*a, *b))
                    .fold(0.0, f64::max)
            })
            .unwrap_or(f64::INFINITY);
        per_iteration.push(IterationStat {
            level: n,
            corner_count: diagram.corners.len(),
            max_root_delta: delta,
        });
        iterations_used = n;
        let all_saturated = estimates.iter().all(|e| e.saturated);
        let resolved =
            structure_is_final(p, &estimates, &pulled, opts.mode, diagram.tolerance_e);
        last = Some((ordered.clone(), estimates));
        if delta < opts.root_rtol && resolved {
            stop_reason = StopReason::Converged;
            break;
        }
        if all_saturated {
            stop_reason = StopReason::Saturated;
            break;
        }
        previous = Some(ordered);
        // Shrink the separation parameter once the level has outrun the
        // resolution it can certify.
        while rho > RHO_FLOOR
            && (n as f64) > 3.0 + (d as f64 * std::f64::consts::LN_2 / rho.ln()).log2()
        {
            rho = rho.sqrt().max(RHO_FLOOR);
        }
    }

    let (mut roots, estimates) = last.expect("max_level >= 1 guarantees an iteration");

    // A repeated value across distinct diagram segments with matching
    // segment moduli means the rotation failed to separate two roots
    // lying on a common circle; a fresh angle fixes the generic case.
    let settled =
        stop_reason == StopReason::Converged && !has_cross_segment_duplicates(&estimates);

    if opts.polish {
        roots = match opts.mode {
            Mode::Complex => polish_newton(p, &roots),
            // Polish one representative per conjugate pair and mirror it
            // so the output stays exactly closed under conjugation.
            Mode::Real => polish_real_paired(p, &roots),
        };
        roots = canonical_order(&roots, opts.mode)?;
    }

    let backward_errors = roots.iter().map(|z| backward_error(p, *z)).collect();
    Ok((
        SolveReport {
            roots,
            zero_root_multiplicity,
            iterations_used,
            backward_errors,
            theta_used,
            stop_reason,
            per_iteration,
        },
        settled,
    ))
}

/// Whether the diagram's grouping can be trusted not to change at a
/// deeper level.  An unresolved multi-root group produces estimates
/// that are *stable but wrong* (they converge to symmetric functions of
/// the group, not to roots), so value stability alone must never stop
/// the iteration.  A group is final when it is a singleton, or — in
/// real mode — a 2-group recovered as a pair (one conjugate pair, or
/// two real roots split from the group's mean and product), provided
/// the hull tolerance is already tight enough that the pair's modulus
/// and mean are trustworthy, and the recovered value is a near-root of
/// the original polynomial (a "pair" whose two read-offs disagree with
/// the polynomial is far from every root and fails that residual
/// gate).
fn structure_is_final(
    p: &Polynomial,
    estimates: &[RootEstimate],
    pulled: &[Complex],
    mode: Mode,
    tolerance_e: f64,
) -> bool {
    let mut i = 0;
    while i < estimates.len() {
        let e = &estimates[i];
        let size = (e.group_end - e.group_start).max(1);
        match (mode, size, e.kind) {
            (_, 1, _) => {}
            (Mode::Real, 2, RootKind::ConjugatePair | RootKind::RealPair) => {
                if tolerance_e > PAIR_TRUST_E || backward_error(p, pulled[i]) > PAIR_RESIDUAL_GATE
                {
                    return false;
                }
            }
            _ => return false,
        }
        i += size;
    }
    true
}

fn pullback_or_huge(z: Complex, params: &MobiusParams) -> Complex {
    match mobius_pullback(z, params) {
        Ok(w) if w.re.is_finite() && w.im.is_finite() => w,
        _ => Complex::new(POLE_SUBSTITUTE, 0.0),
    }
}

fn has_cross_segment_duplicates(estimates: &[RootEstimate]) -> bool {
    for (i, a) in estimates.iter().enumerate() {
        for b in &estimates[i + 1..] {
            if a.group_start != b.group_start
                && relative_distance(a.value, b.value) <= 1e-6
                && (a.modulus - b.modulus).abs() <= 1e-6 * a.modulus.max(b.modulus)
            {
                return true;
            }
        }
    }
    false
}

/// Argument normalized so a negative-zero imaginary part sorts like a
/// positive-zero one (`atan2` would otherwise send `-3 - 0i` to −π and
/// `-3 + 0i` to +π).
fn sort_arg(z: Complex) -> f64 {
    (z.im + 0.0).atan2(z.re)
}

/// Order roots canonically: nondecreasing modulus, then (complex mode)
/// ascending argument.  In real mode a run of exactly equal moduli is
/// decomposed into positive reals, conjugate pairs (ascending argument
/// of the upper member, upper first), and negative reals — i.e. by
/// ascending argument of each entry's upper-half-plane representative.
/// Real-mode input whose non-real entries don't pair up exactly is
/// rejected.
pub fn canonical_order(roots: &[Complex], mode: Mode) -> Result<Vec<Complex>> {
    let mut v = roots.to_vec();
    match mode {
        Mode::Complex => {
            v.sort_by(|a, b| {
                (a.norm(), sort_arg(*a))
                    .partial_cmp(&(b.norm(), sort_arg(*b)))
                    .expect("finite roots have ordered keys")
            });
            Ok(v)
        }
        Mode::Real => {
            v.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap());
            let norms: Vec<f64> = v.iter().map(|z| z.norm()).collect();
            let mut out = Vec::with_capacity(v.len());
            let mut i = 0;
            while i < v.len() {
                let mut j = i;
                while j < v.len() && norms[j].to_bits() == norms[i].to_bits() {
                    j += 1;
                }
                order_real_run(&v[i..j], &mut out)?;
                i = j;
            }
            Ok(out)
        }
    }
}

fn order_real_run(run: &[Complex], out: &mut Vec<Complex>) -> Result<()> {
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    let mut upper: Vec<Complex> = Vec::new();
    let mut lower: Vec<Complex> = Vec::new();
    for &z in run {
        if z.im == 0.0 {
            if z.re >= 0.0 {
                positive.push(z);
            } else {
                negative.push(z);
            }
        } else if z.im > 0.0 {
            upper.push(z);
        } else {
            lower.push(z);
        }
    }
    if upper.len() != lower.len() {
        return Err(Error::PairingViolation);
    }
    upper.sort_by(|a, b| sort_arg(*a).partial_cmp(&sort_arg(*b)).unwrap());
    out.extend_from_slice(&positive);
    for u in upper {
        let mirror = Complex::new(u.re, -u.im);
        let found = lower
            .iter()
            .position(|w| w.re.to_bits() == mirror.re.to_bits() && w.im.to_bits() == mirror.im.to_bits())
            .ok_or(Error::PairingViolation)?;
        lower.swap_remove(found);
        out.push(u);
        out.push(mirror);
    }
    out.extend_from_slice(&negative);
    Ok(())
}

/// Newton-polish each root against `p` (at most 20 steps per root; a
/// step that fails to decrease `|p|` is rejected and ends that root's
/// polishing, and a root whose residual already sits at the coefficient
/// rounding floor is left untouched — below that floor `|p|` is pure
/// evaluation noise, and "improving" it would random-walk a root that
/// may be far more accurate than direct evaluation can certify).  A
/// value repeated k times in the input is treated as a k-fold root and
/// polished with the modified step `z − k·p/p'`, which restores
/// quadratic convergence at multiple roots.
pub fn polish_newton(p: &Polynomial, roots: &[Complex]) -> Vec<Complex> {
    let mut counts: HashMap<(u64, u64), usize> = HashMap::new();
    for z in roots {
        *counts.entry((z.re.to_bits(), z.im.to_bits())).or_insert(0) += 1;
    }
    roots
        .iter()
        .map(|&z| {
            let m = counts[&(z.re.to_bits(), z.im.to_bits())] as f64;
            polish_one(p, z, m)
        })
        .collect()
}

fn polish_one(p: &Polynomial, start: Complex, multiplicity: f64) -> Complex {
    let mut z = start;
    let (mut value, mut derivative) = p.eval_with_derivative_compensated(z);
    let mut best = value.norm();
    for _ in 0..20 {
        if best == 0.0 || derivative.norm() == 0.0 {
            break;
        }
        let candidate = z - safe_div(value, derivative) * multiplicity;
        if !candidate.re.is_finite() || !candidate.im.is_finite() || candidate == z {
            break;
        }
        let (candidate_value, candidate_derivative) =
            p.eval_with_derivative_compensated(candidate);
        // The compensated residual stays meaningful all the way down to
        // the representation limit, so requiring strict decrease settles
        // on the representable point closest to the root instead of
        // random-walking on evaluation noise.
        if candidate_value.norm() >= best {
            break;
        }
        z = candidate;
        value = candidate_value;
        derivative = candidate_derivative;
        best = value.norm();
    }
    z
}

/// Real-mode polishing: the input is canonically ordered, so conjugate
/// pairs sit adjacent (upper first).  Polish the upper member and
/// mirror it; polish real entries on the real axis.  Multiplicities are
/// still derived from exact copy counts in the full vector.
fn polish_real_paired(p: &Polynomial, roots: &[Complex]) -> Vec<Complex> {
    let mut counts: HashMap<(u64, u64), usize> = HashMap::new();
    for z in roots {
        *counts.entry((z.re.to_bits(), z.im.to_bits())).or_insert(0) += 1;
    }
    let mut out = Vec::with_capacity(roots.len());
    let mut i = 0;
    while i < roots.len() {
        let z = roots[i];
        let m = counts[&(z.re.to_bits(), z.im.to_bits())] as f64;
        if z.im != 0.0 {
            debug_assert!(z.im > 0.0 && i + 1 < roots.len());
            let polished = polish_one(p, z, m);
            out.push(polished);
            out.push(Complex::new(polished.re, -polished.im));
            i += 2;
        } else {
            let polished = polish_one(p, z, m);
            out.push(Complex::new(polished.re, 0.0));
            i += 1;
        }
    }
    out
}
