//! End-to-end acceptance checks of the library's headline behaviors:
//! overflow-free root squaring, diagram corner detection, recovery
//! accuracy laws, classic ill-conditioned benchmarks, oracle agreement
//! on random inputs, and cost scaling.  Each check prints one PASS/FAIL
//! line; the test fails if any check does.

use std::time::{Duration, Instant};

use graeffe::diagram::strict_convex_hull;
use graeffe::graeffe::{
    graeffe_classical, init_jet, tangent_graeffe_classical, tangent_graeffe_renorm,
};
use graeffe::oracle::{aberth_roots, match_rootsets};
use graeffe::poly::{
    backward_error, gen_chebyshev, gen_kostlan, gen_perfidious, Polynomial,
};
use graeffe::recover::real_recover;
use graeffe::{solve, Complex, Error, Mode, SolveOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn real_poly(roots: &[f64]) -> Polynomial {
    let v: Vec<Complex> = roots.iter().map(|&x| c(x, 0.0)).collect();
    Polynomial::from_roots(&v).unwrap()
}

fn fail(why: String) -> Result<(), String> {
    Err(why)
}

/// Criterion 1: Classical squaring overflows binary64 quickly on roots {1,2,3,4};
/// the renormalized pipeline runs the same eight levels, pins the
/// radial coordinate of the constant term at −log 24, and recovers all
/// four roots to 1e-6.
fn overflow_free_renormalization() -> Result<(), String> {
    let p = real_poly(&[1.0, 2.0, 3.0, 4.0]);
    let mut classical = p.clone();
    let mut overflow_level = None;
    for level in 1..=12 {
        match graeffe_classical(&classical) {
            Ok(next) => classical = next,
            Err(Error::ClassicalOverflow) => {
                overflow_level = Some(level);
                break;
            }
            Err(e) => return fail(format!("unexpected error {e:?}")),
        }
    }
    if overflow_level != Some(8) {
        return fail(format!(
            "classical overflow at level {overflow_level:?}, expected 8"
        ));
    }

    let mut jet = init_jet(&p);
    for _ in 0..8 {
        jet = tangent_graeffe_renorm(&jet);
    }
    let s0 = jet.radials()[0];
    let want = -(24.0f64).ln();
    if (s0 - want).abs() > 1e-6 {
        return fail(format!("s_0 = {s0}, want {want}"));
    }

    let diagram = strict_convex_hull(8, &jet.radials(), 4.0 / 3.0).map_err(|e| format!("{e:?}"))?;
    let mut estimates: Vec<Complex> = real_recover(&jet, &diagram)
        .iter()
        .map(|e| e.value)
        .collect();
    estimates.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap());
    for (z, want) in estimates.iter().zip([1.0, 2.0, 3.0, 4.0]) {
        let rel = (z - c(want, 0.0)).norm() / want;
        if rel > 1e-6 {
            return fail(format!("root {z} vs {want}: relative error {rel:.2e}"));
        }
    }
    Ok(())
}

/// Criterion 2: At level 8 the modulus-only slope estimate of the smallest root of
/// (x−1)(x−1.01)(x−2)(x−3)(x−4) lands at 1 − 2.9e-4: the unresolved
/// {1, 1.01} cluster floors the accuracy of low iteration counts.
fn low_level_accuracy_floor() -> Result<(), String> {
    let p = real_poly(&[1.0, 1.01, 2.0, 3.0, 4.0]);
    let mut jet = init_jet(&p);
    for _ in 0..8 {
        jet = tangent_graeffe_renorm(&jet);
    }
    let r = jet.radials();
    let estimate = (r[1] - r[0]).exp();
    let want = 1.0 - 2.9e-4;
    if (estimate - want).abs() > 2e-5 {
        return fail(format!("estimate {estimate}, want {want} within 2e-5"));
    }
    Ok(())
}

/// Criterion 3: Two classical squaring steps send x²−2x+1, x²−1, and x²+1 to the
/// same polynomial x²−2x+1, bit-exactly (small integer coefficients).
fn quadratic_triple_collapse() -> Result<(), String> {
    let target = [c(1.0, 0.0), c(-2.0, 0.0), c(1.0, 0.0)];
    for coeffs in [
        vec![1.0, -2.0, 1.0],
        vec![-1.0, 0.0, 1.0],
        vec![1.0, 0.0, 1.0],
    ] {
        let mut p = Polynomial::from_real(coeffs.clone()).unwrap();
        for _ in 0..2 {
            p = graeffe_classical(&p).map_err(|e| format!("{e:?}"))?;
        }
        if p.coefficients() != target {
            return fail(format!("from {coeffs:?}: got {:?}", p.coefficients()));
        }
    }
    Ok(())
}

/// Criterion 4: Integer-root ladders (x−1)⋯(x−d), the classic ill-conditioned
/// benchmark: recovered roots stay near the integers at d = 10, 15, 20.
fn integer_root_ladder() -> Result<(), String> {
    let started = Instant::now();
    for (degree, tol) in [(10usize, 1e-6), (15, 1e-4), (20, 5e-2)] {
        let p = gen_perfidious(degree).unwrap();
        let mut opts = SolveOptions::new(Mode::Real);
        opts.max_level = 32;
        let report = solve(&p, &opts).map_err(|e| format!("d={degree}: {e:?}"))?;
        if report.roots.len() != degree {
            return fail(format!("d={degree}: {} roots", report.roots.len()));
        }
        for (k, z) in report.roots.iter().enumerate() {
            let want = (k + 1) as f64;
            let err = (z - c(want, 0.0)).norm();
            if err > tol {
                return fail(format!("d={degree}: root {z} vs {want}, error {err:.2e} > {tol:.0e}"));
            }
        }
    }
    let elapsed = started.elapsed();
    if elapsed > Duration::from_secs(5) {
        return fail(format!("took {elapsed:.2?}, budget 5 s"));
    }
    Ok(())
}

/// Criterion 5: Cosine-node grids cos(π(m+½)/d): solved roots, mapped to index
/// space m = (d·arccos ζ − π/2)/π, sit on the integers.
fn cosine_node_grid() -> Result<(), String> {
    let started = Instant::now();
    for (degree, tol) in [(10usize, 1e-10), (20, 1e-8), (30, 1e-6)] {
        let p = gen_chebyshev(degree).unwrap();
        let mut opts = SolveOptions::new(Mode::Real);
        opts.max_level = 34;
        let report = solve(&p, &opts).map_err(|e| format!("d={degree}: {e:?}"))?;
        let mut seen = vec![false; degree];
        let mut worst = 0.0f64;
        for z in &report.roots {
            let m = (degree as f64 * z.re.clamp(-1.0, 1.0).acos() - std::f64::consts::FRAC_PI_2)
                / std::f64::consts::PI;
            let index = m.round();
            worst = worst.max((m - index).abs());
            let k = index as isize;
            if k < 0 || k >= degree as isize || seen[k as usize] {
                return fail(format!("d={degree}: root {z} maps to index {index}"));
            }
            seen[k as usize] = true;
        }
        if worst > tol {
            return fail(format!("d={degree}: index error {worst:.2e} > {tol:.0e}"));
        }
    }
    let elapsed = started.elapsed();
    if elapsed > Duration::from_secs(5) {
        return fail(format!("took {elapsed:.2?}, budget 5 s"));
    }
    Ok(())
}

/// Criterion 6: Random binomially-scaled polynomials, real and complex, degrees 50
/// and 100, ten seeds each: solver output matches the independent
/// Aberth iteration to 1e-6 in ≥ 18/20 cells per mode, and any miss
/// shows the oracle carrying the larger residual.
fn random_polynomial_agreement() -> Result<(), String> {
    let started = Instant::now();
    for mode in [Mode::Real, Mode::Complex] {
        let mut matched = 0;
        let mut detail = String::new();
        for degree in [50usize, 100] {
            for seed in 0..10u64 {
                let p = gen_kostlan(degree, seed, mode == Mode::Real).unwrap();
                let mut opts = SolveOptions::new(mode);
                opts.seed = seed;
                opts.max_level = 28;
                let report = solve(&p, &opts).map_err(|e| format!("{e:?}"))?;
                let oracle = aberth_roots(&p, 1e-13, 1000).unwrap();
                let err = match_rootsets(&report.roots, &oracle.roots)
                    .map_err(|e| format!("{e:?}"))?;
                if err <= 1e-6 {
                    matched += 1;
                } else {
                    let ours = report
                        .roots
                        .iter()
                        .map(|&z| backward_error(&p, z))
                        .fold(0.0, f64::max);
                    let theirs = oracle
                        .roots
                        .iter()
                        .map(|&z| backward_error(&p, z))
                        .fold(0.0, f64::max);
                    if ours > theirs {
                        return fail(format!(
                            "{mode:?} d={degree} seed={seed}: mismatch {err:.2e} is our fault \
                             (residual {ours:.2e} vs oracle {theirs:.2e})"
                        ));
                    }
                    detail.push_str(&format!(
                        " [d={degree} seed={seed}: {err:.1e}, oracle-blamed]"
                    ));
                }
            }
        }
        if matched < 18 {
            return fail(format!("{mode:?}: only {matched}/20 cells matched{detail}"));
        }
    }
    let elapsed = started.elapsed();
    if elapsed > Duration::from_secs(60) {
        return fail(format!("took {elapsed:.2?}, budget 60 s"));
    }
    Ok(())
}

/// Criterion 7: One squaring level costs O(d²): doubling the degree from 500 to
/// 1000 multiplies the per-level wall time by ≈ 4.
fn quadratic_cost_scaling() -> Result<(), String> {
    let started = Instant::now();
    let times = |degree: usize| -> Vec<f64> {
        let p = gen_kostlan(degree, 0, false).unwrap();
        let mut jet = init_jet(&p);
        // Warm-up level, then timed levels.
        jet = tangent_graeffe_renorm(&jet);
        (0..7)
            .map(|_| {
                let t = Instant::now();
                jet = tangent_graeffe_renorm(&jet);
                t.elapsed().as_secs_f64()
            })
            .collect()
    };
    let median = |mut v: Vec<f64>| -> f64 {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v[v.len() / 2]
    };
    let small = median(times(500));
    let large = median(times(1000));
    let ratio = large / small;
    if !(3.0..=6.0).contains(&ratio) {
        return fail(format!(
            "t(1000)/t(500) = {ratio:.2} (medians {large:.4}s / {small:.4}s), want [3, 6]"
        ));
    }
    let elapsed = started.elapsed();
    if elapsed > Duration::from_secs(120) {
        return fail(format!("took {elapsed:.2?}, budget 120 s"));
    }
    Ok(())
}

/// Criterion 8: Recovery error on roots {1, 2, 4} (separation 2, degree 3) obeys
/// the truncation law err(N) ≤ 2^{d+3}·d·(|ζ_max|/|ζ_min|)·2^{−2^N} and
/// shrinks doubly exponentially until it hits rounding.
fn truncation_error_law() -> Result<(), String> {
    let p = real_poly(&[1.0, 2.0, 4.0]);
    let truth = [1.0, 2.0, 4.0];
    let mut jet = init_jet(&p);
    let mut errors = Vec::new();
    for level in 1..=9u32 {
        jet = tangent_graeffe_renorm(&jet);
        if level < 4 {
            continue;
        }
        let diagram =
            strict_convex_hull(level, &jet.radials(), 2.0).map_err(|e| format!("{e:?}"))?;
        let mut values: Vec<Complex> = real_recover(&jet, &diagram)
            .iter()
            .map(|e| e.value)
            .collect();
        if values.len() != 3 {
            return fail(format!("level {level}: {} estimates", values.len()));
        }
        values.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap());
        let err = values
            .iter()
            .zip(truth)
            .map(|(z, t)| (z - c(t, 0.0)).norm() / t)
            .fold(0.0, f64::max);
        let bound = 768.0 * (-(2.0f64.powi(level as i32)) * std::f64::consts::LN_2).exp() + 1e-10;
        if err > bound {
            return fail(format!("level {level}: error {err:.3e} > bound {bound:.3e}"));
        }
        errors.push(err);
    }
    for pair in errors.windows(2) {
        if pair[0] > 1e-12 && pair[1] > 1e-12 && pair[1] > pair[0].powf(1.5) {
            return fail(format!(
                "convergence slower than doubly exponential: {:.3e} then {:.3e}",
                pair[0], pair[1]
            ));
        }
    }
    Ok(())
}

/// Criterion 9: For 100 random root configurations with pairwise modulus ratios
/// ≥ 2 and degree ≤ 6, the diagram at the first level past
/// 3 + log₂(d·log 2 / log ρ) shows every root as its own corner.
fn corner_detection_certified() -> Result<(), String> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for case in 0..100 {
        let d = 2 + case % 5; // degrees 2..=6
        let mut modulus = rng.random_range(0.5..1.5);
        let mut roots = Vec::with_capacity(d);
        for _ in 0..d {
            let phase = rng.random_range(0.0..std::f64::consts::TAU);
            roots.push(Complex::from_polar(modulus, phase));
            modulus *= rng.random_range(2.0..2.5);
        }
        let p = Polynomial::from_roots(&roots).unwrap();
        let threshold = 3.0 + (d as f64 * std::f64::consts::LN_2 / 2.0f64.ln()).log2();
        let mut level = 1u32;
        while (level as f64) <= threshold {
            level += 1;
        }
        let mut jet = init_jet(&p);
        for _ in 0..level {
            jet = tangent_graeffe_renorm(&jet);
        }
        let diagram =
            strict_convex_hull(level, &jet.radials(), 2.0).map_err(|e| format!("{e:?}"))?;
        let want: Vec<usize> = (0..=d).collect();
        if diagram.corners != want {
            return fail(format!(
                "case {case} (d={d}, N={level}): corners {:?}",
                diagram.corners
            ));
        }
    }
    let elapsed = started.elapsed();
    if elapsed > Duration::from_secs(5) {
        return fail(format!("took {elapsed:.2?}, budget 5 s"));
    }
    Ok(())
}

/// Criterion 10: Spot-checks of the supporting property suites: renormalized vs
/// classical agreement at low levels, tangent vs finite differences,
/// the root-squaring law, scale invariance, exact conjugate closure,
/// and the modulus convergence bound 2^{−N}·log(2d).
fn property_suite_spotchecks() -> Result<(), String> {
    // Renormalized and classical paths agree through level 3 (both the
    // squared polynomial and its tangent).
    let p = Polynomial::from_real(vec![3.0, -1.0, 2.0, 1.0]).unwrap();
    let mut classical = p.clone();
    let mut classical_dot: Vec<Complex> = p.derivative().unwrap().coefficients().to_vec();
    classical_dot.resize(p.degree() + 1, c(0.0, 0.0));
    let mut jet = init_jet(&p);
    for level in 1..=3u32 {
        let (g, gdot) = tangent_graeffe_classical(&classical, &classical_dot)
            .map_err(|e| format!("{e:?}"))?;
        classical = g;
        classical_dot = gdot;
        jet = tangent_graeffe_renorm(&jet);
        let pw = jet.p();
        let scale: f64 = classical
            .coefficients()
            .iter()
            .map(|x| x.norm())
            .fold(0.0, f64::max);
        let scale_t: f64 = classical_dot.iter().map(|x| x.norm()).fold(0.0, f64::max);
        for (i, &direct) in classical.coefficients().iter().enumerate() {
            let ren = jet.base[i].value(pw);
            if (ren - direct).norm() > 1e-9 * direct.norm() + 1e-12 * scale {
                return fail(format!("level {level} coefficient {i}: {ren} vs {direct}"));
            }
            let rdot = jet.tangent[i].value(pw);
            if (rdot - classical_dot[i]).norm() > 1e-9 * classical_dot[i].norm() + 1e-12 * scale_t
            {
                return fail(format!("level {level} tangent {i}: {rdot} vs {:?}", classical_dot[i]));
            }
        }
    }

    // Tangent output against a central finite difference of the plain
    // squaring step.
    let q = Polynomial::from_real(vec![2.0, -3.0, 1.0, 1.0]).unwrap();
    let qdot: Vec<Complex> = {
        let mut v = q.derivative().unwrap().coefficients().to_vec();
        v.resize(q.degree() + 1, c(0.0, 0.0));
        v
    };
    let (_, gdot) = tangent_graeffe_classical(&q, &qdot).map_err(|e| format!("{e:?}"))?;
    let h = 1e-6;
    let shift = |sign: f64| -> Polynomial {
        let coeffs: Vec<Complex> = q
            .coefficients()
            .iter()
            .zip(&qdot)
            .map(|(a, b)| a + b * c(sign * h, 0.0))
            .collect();
        Polynomial::new(coeffs).unwrap()
    };
    let plus = graeffe_classical(&shift(1.0)).map_err(|e| format!("{e:?}"))?;
    let minus = graeffe_classical(&shift(-1.0)).map_err(|e| format!("{e:?}"))?;
    for (i, &want) in gdot.iter().enumerate() {
        let fd = (plus.coefficients()[i] - minus.coefficients()[i]) / c(2.0 * h, 0.0);
        if (fd - want).norm() > 1e-7 {
            return fail(format!("tangent {i}: {want:?} vs finite difference {fd}"));
        }
    }

    // Root-squaring law on a random polynomial.
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let coeffs: Vec<Complex> = (0..=6)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let r = Polynomial::new(coeffs).unwrap();
    let before = aberth_roots(&r, 1e-13, 1000).unwrap();
    let squares: Vec<Complex> = before.roots.iter().map(|z| z * z).collect();
    let after = aberth_roots(&graeffe_classical(&r).map_err(|e| format!("{e:?}"))?, 1e-13, 1000)
        .unwrap();
    let err = match_rootsets(&after.roots, &squares).map_err(|e| format!("{e:?}"))?;
    if err > 1e-7 {
        return fail(format!("root-squaring law violated by {err:.2e}"));
    }

    // Scale invariance of the full solve.
    let base = vec![6.0, -5.0, -2.0, 1.0];
    let reference = solve(
        &Polynomial::from_real(base.clone()).unwrap(),
        &SolveOptions::new(Mode::Real),
    )
    .map_err(|e| format!("{e:?}"))?;
    for scale in [1e-5, 1e5] {
        let scaled: Vec<f64> = base.iter().map(|x| x * scale).collect();
        let report = solve(
            &Polynomial::from_real(scaled).unwrap(),
            &SolveOptions::new(Mode::Real),
        )
        .map_err(|e| format!("{e:?}"))?;
        for (a, b) in report.roots.iter().zip(&reference.roots) {
            let rel = (a - b).norm() / b.norm().max(1e-300);
            if rel > 1e-12 {
                return fail(format!("scale {scale}: {a} vs {b}"));
            }
        }
    }

    // Exact conjugate closure on a sextic with two conjugate pairs.
    let s = Polynomial::from_real(vec![3.9, -1.7, 2.2, 0.4, -1.1, 0.25, 1.0]).unwrap();
    let report = solve(&s, &SolveOptions::new(Mode::Real)).map_err(|e| format!("{e:?}"))?;
    for z in &report.roots {
        if z.im != 0.0
            && !report.roots.iter().any(|w| {
                w.re.to_bits() == z.re.to_bits() && w.im.to_bits() == (-z.im).to_bits()
            })
        {
            return fail(format!("no exact conjugate for {z}"));
        }
    }

    // Segment-modulus convergence at rate 2^{−N} log(2d) on {1, 2, 4}.
    let t = real_poly(&[1.0, 2.0, 4.0]);
    let mut jet = init_jet(&t);
    for level in 1..=10u32 {
        jet = tangent_graeffe_renorm(&jet);
        if level < 4 {
            continue;
        }
        let diagram =
            strict_convex_hull(level, &jet.radials(), 2.0).map_err(|e| format!("{e:?}"))?;
        let moduli = graeffe::diagram::segment_moduli(&diagram, &jet.radials());
        let bound = 2.0f64.powi(-(level as i32)) * (6.0f64).ln();
        for (m, t) in moduli.iter().zip([1.0f64, 2.0, 4.0]) {
            if (m.ln() - t.ln()).abs() > bound {
                return fail(format!(
                    "level {level}: modulus {m} vs {t} beyond 2^-N log(2d) = {bound:.3e}"
                ));
            }
        }
    }
    Ok(())
}

type Check = fn() -> Result<(), String>;

#[test]
fn acceptance_criteria() {
    let checks: &[(&str, Check)] = &[
        ("overflow-free renormalization", overflow_free_renormalization),
        ("low-level accuracy floor", low_level_accuracy_floor),
        ("quadratic triple collapse", quadratic_triple_collapse),
        ("integer root ladder", integer_root_ladder),
        ("cosine node grid", cosine_node_grid),
        ("random polynomial agreement", random_polynomial_agreement),
        ("quadratic cost scaling", quadratic_cost_scaling),
        ("truncation error law", truncation_error_law),
        ("corner detection certified", corner_detection_certified),
        ("property suite spot-checks", property_suite_spotchecks),
    ];
    let mut failed = 0;
    for (index, (name, check)) in checks.iter().enumerate() {
        let started = Instant::now();
        match check() {
            Ok(()) => println!(
                "ACCEPTANCE {:2} {name}: PASS ({:.2?})",
                index + 1,
                started.elapsed()
            ),
            Err(why) => {
                println!("ACCEPTANCE {:2} {name}: FAIL — {why}", index + 1);
                failed += 1;
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance check(s) failed");
}
