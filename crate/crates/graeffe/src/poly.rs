//! Dense univariate polynomials over the complex numbers.
//!
//! Coefficients are stored low-to-high: `p(x) = c[0] + c[1] x + ... +
//! c[d] x^d` with `c[d] != 0`, so the degree is always exact.  Real
//! polynomials are ordinary complex ones whose imaginary parts are all
//! exactly zero; that flag is tracked at construction and preserved by
//! every operation here (the arithmetic never manufactures spurious
//! imaginary dust out of real inputs).
//!
//! Besides the basics (evaluation, derivative, zero-root deflation), this
//! module provides the circle-breaking Möbius substitution used by the
//! solver, the benchmark families (Kostlan-random, "perfidious"
//! factorials, Chebyshev), the coefficient-wise relative backward error,
//! and a small line-oriented text format for polynomial files.

use crate::error::{Error, Result};
use crate::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// A univariate polynomial with exact degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coefficients: Vec<Complex>,
    real: bool,
}

impl Polynomial {
    /// Build from low-to-high coefficients.
    ///
    /// The list must be nonempty with a nonzero last entry (exact degree)
    /// and all entries finite.
    pub fn new(coefficients: Vec<Complex>) -> Result<Self> {
        let Some(last) = coefficients.last() else {
            return Err(Error::ZeroPolynomial);
        };
        if last.re == 0.0 && last.im == 0.0 {
            return Err(Error::ZeroPolynomial);
        }
        if coefficients.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidOptions("non-finite coefficient".into()));
        }
        let real = coefficients.iter().all(|c| c.im == 0.0);
        Ok(Polynomial { coefficients, real })
    }

    /// Build from real coefficients.
    pub fn from_real(coefficients: Vec<f64>) -> Result<Self> {
        Self::new(coefficients.into_iter().map(|x| Complex::new(x, 0.0)).collect())
    }

    /// Monic polynomial with the given roots, built by repeated
    /// multiplication with linear factors.
    pub fn from_roots(roots: &[Complex]) -> Result<Self> {
        let mut c = vec![Complex::new(0.0, 0.0); roots.len() + 1];
        c[0] = Complex::new(1.0, 0.0);
        for (k, &root) in roots.iter().enumerate() {
            // Multiply by (x - root): degree grows from k to k+1.
            c[k + 1] = c[k];
            for j in (1..=k).rev() {
                c[j] = c[j - 1] - root * c[j];
            }
            c[0] = -root * c[0];
        }
        Self::new(c)
    }

    /// Low-to-high coefficient slice.
    pub fn coefficients(&self) -> &[Complex] {
        &self.coefficients
    }

    /// Exact degree (`coefficients.len() - 1`).
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// True if every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex) -> Complex {
        let mut acc = Complex::new(0.0, 0.0);
        for &c in self.coefficients.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Simultaneous Horner evaluation of `p(z)` and `p'(z)`.
    pub fn eval_with_derivative(&self, z: Complex) -> (Complex, Complex) {
        let mut p = Complex::new(0.0, 0.0);
        let mut dp = Complex::new(0.0, 0.0);
        for &c in self.coefficients.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// Like [`eval_with_derivative`](Self::eval_with_derivative), but the
    /// value is accumulated in doubled working precision.  Near a root
    /// the plain Horner value is cancellation noise on the order of
    /// `ε·Σ|c_k||z|^k`, which caps Newton refinement at the backward-error
    /// floor — for an ill-conditioned root that floor can sit many digits
    /// above what an `f64` can express.  The compensated value stays
    /// faithful roughly `ε` deeper, so refinement driven by it converges
    /// to the representation limit instead.  The derivative is a plain
    /// Horner pass: it only steers the step, never limits the target.
    pub fn eval_with_derivative_compensated(&self, z: Complex) -> (Complex, Complex) {
        let zd = DdComplex::from(z);
        let mut p = DdComplex::from(Complex::new(0.0, 0.0));
        let mut dp = Complex::new(0.0, 0.0);
        for &c in self.coefficients.iter().rev() {
            dp = dp * z + p.value();
            p = p.mul(zd).add(DdComplex::from(c));
        }
        (p.value(), dp)
    }

    /// Formal derivative; errors on constants (degree 0).
    pub fn derivative(&self) -> Result<Polynomial> {
        if self.degree() == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let c: Vec<Complex> = self
            .coefficients
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &ci)| ci * i as f64)
            .collect();
        Polynomial::new(c)
    }

    /// Split off the root at the origin: returns `(q, k)` with
    /// `p = q * x^k` and `q(0) != 0`.
    ///
    /// Only *exact* zeros are deflated; a coefficient of `1e-300` still
    /// counts as a genuine (tiny) constant term.
    pub fn deflate_zero_roots(&self) -> (Polynomial, usize) {
        let k = self
            .coefficients
            .iter()
            .position(|c| c.re != 0.0 || c.im != 0.0)
            .expect("leading coefficient is nonzero");
        let q = Polynomial {
            coefficients: self.coefficients[k..].to_vec(),
            real: self.real,
        };
        (q, k)
    }
}

/// Precomputed data for the Möbius change of variables
/// `phi(x) = (x cos t - sin t) / (x sin t + cos t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusParams {
    pub theta: f64,
    pub cos_theta: f64,
    pub sin_theta: f64,
}

impl MobiusParams {
    pub fn new(theta: f64) -> Self {
        MobiusParams {
            theta,
            cos_theta: theta.cos(),
            sin_theta: theta.sin(),
        }
    }
}

/// Unevaluated sum of two doubles (~32 significant digits), used only
/// inside the Möbius basis change.  The substitution combines
/// coefficients of wildly different magnitude with mixed signs, and
/// plain f64 accumulation can lose enough digits that *clustered* roots
/// of the transformed polynomial move further than their mutual
/// separation — two close real roots then round into a spurious
/// conjugate pair no later stage can split correctly.  Carrying the
/// accumulation at doubled precision keeps the output coefficients
/// correctly rounded, so the represented roots move only by the final
/// f64 rounding.
#[derive(Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }

    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    /// Error-free sum of two doubles.
    fn two_sum(a: f64, b: f64) -> Dd {
        let hi = a + b;
        let v = hi - a;
        let lo = (a - (hi - v)) + (b - v);
        Dd { hi, lo }
    }

    /// Error-free product of two doubles.
    fn two_prod(a: f64, b: f64) -> Dd {
        let hi = a * b;
        let lo = a.mul_add(b, -hi);
        Dd { hi, lo }
    }

    fn renorm(hi: f64, lo: f64) -> Dd {
        let s = hi + lo;
        Dd {
            hi: s,
            lo: lo - (s - hi),
        }
    }

    fn add(self, other: Dd) -> Dd {
        let s = Dd::two_sum(self.hi, other.hi);
        Dd::renorm(s.hi, s.lo + self.lo + other.lo)
    }

    fn mul(self, other: Dd) -> Dd {
        let p = Dd::two_prod(self.hi, other.hi);
        Dd::renorm(p.hi, p.lo + self.hi * other.lo + self.lo * other.hi)
    }
}

#[derive(Clone, Copy)]
struct DdComplex {
    re: Dd,
    im: Dd,
}

impl DdComplex {
    fn from(z: Complex) -> DdComplex {
        DdComplex {
            re: Dd::from(z.re),
            im: Dd::from(z.im),
        }
    }

    fn value(self) -> Complex {
        Complex::new(self.re.value(), self.im.value())
    }

    fn add(self, other: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.add(other.re),
            im: self.im.add(other.im),
        }
    }

    fn neg(self) -> DdComplex {
        DdComplex {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    fn mul(self, other: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.mul(other.re).add(self.im.mul(other.im).neg()),
            im: self.re.mul(other.im).add(self.im.mul(other.re)),
        }
    }
}

/// Substitute the Möbius map into `p`:
///
/// ```text
/// p~(x) = (x sin t + cos t)^d * p(phi(x)),
/// phi(x) = (x cos t - sin t) / (x sin t + cos t).
/// ```
///
/// The roots of `p~` are the preimages `phi^{-1}(root)`; a generic angle
/// breaks any coincidences of root moduli.  For real `p` the result is
/// real.  If the angle maps a root (numerically) to 0 or to infinity, the
/// trailing or leading coefficient collapses and [`Error::DegenerateTheta`]
/// asks the caller to redraw.
///
/// Cost is O(d^2): one linear-factor convolution per coefficient, Horner
/// style in the transformed basis, accumulated in doubled precision (see
/// [`Dd`]) so the output is correctly rounded.
pub fn mobius_transform(p: &Polynomial, theta: f64) -> Result<(Polynomial, MobiusParams)> {
    let m = MobiusParams::new(theta);
    let d = p.degree();
    let c = DdComplex::from(Complex::new(m.cos_theta, 0.0));
    let s = DdComplex::from(Complex::new(m.sin_theta, 0.0));
    let f = p.coefficients();

    // Horner in the transformed basis:
    //   B_d = f_d;   B_k = B_{k+1} * (c x - s) + f_k * (s x + c)^{d-k}.
    // `pow` tracks (s x + c)^{d-k}, grown one factor per step.
    let mut b: Vec<DdComplex> = vec![DdComplex::from(f[d])];
    let mut pow: Vec<DdComplex> = vec![DdComplex::from(Complex::new(1.0, 0.0))];
    for k in (0..d).rev() {
        // b *= (c x - s)
        b.push(DdComplex::from(Complex::new(0.0, 0.0)));
        for j in (1..b.len()).rev() {
            b[j] = b[j - 1].mul(c).add(b[j].mul(s).neg());
        }
        b[0] = b[0].mul(s).neg();
        // pow *= (s x + c)
        pow.push(DdComplex::from(Complex::new(0.0, 0.0)));
        for j in (1..pow.len()).rev() {
            pow[j] = pow[j - 1].mul(s).add(pow[j].mul(c));
        }
        pow[0] = pow[0].mul(c);
        // b += f_k * pow
        let fk = DdComplex::from(f[k]);
        for j in 0..pow.len() {
            b[j] = b[j].add(fk.mul(pow[j]));
        }
    }
    let b: Vec<Complex> = b.into_iter().map(DdComplex::value).collect();

    if d == 0 {
        return Ok((Polynomial::new(b)?, m));
    }
    // A θ that maps a root (numerically) to 0 or to ∞ collapses an
    // endpoint coefficient.  Compare each endpoint against its inner
    // neighbor: natural coefficient spread (binomially scaled random
    // polynomials reach ~1e15 between middle and ends) keeps that ratio
    // modest, while a root driven to the pole pushes the endpoint below
    // the rounding scale of its neighbor.
    let collapsed =
        |end: Complex, inner: Complex| end.norm() <= 1e3 * f64::EPSILON * inner.norm();
    if collapsed(b[d], b[d - 1]) || collapsed(b[0], b[1]) {
        return Err(Error::DegenerateTheta);
    }
    Ok((Polynomial::new(b)?, m))
}

/// Map a root of the transformed polynomial back to a root of the
/// original: `phi(root)`.  Fails only if the root sits on the pole of the
/// map, which the degeneracy check in [`mobius_transform`] rules out for
/// true roots.
pub fn mobius_pullback(root: Complex, m: &MobiusParams) -> Result<Complex> {
    let den = root * m.sin_theta + m.cos_theta;
    if den.norm() < 1e-300 {
        return Err(Error::RootAtPole);
    }
    Ok((root * m.cos_theta - m.sin_theta) / den)
}

/// Coefficient-wise relative backward error of `z` as a root of `p`:
/// `|p(z)| / sum_i |c_i| |z|^i`, with `0/0` defined as `0`.
pub fn backward_error(p: &Polynomial, z: Complex) -> f64 {
    let num = p.eval(z).norm();
    let zm = z.norm();
    let mut den = 0.0;
    let mut pw = 1.0;
    for c in p.coefficients() {
        den += c.norm() * pw;
        pw *= zm;
    }
    if num == 0.0 {
        return 0.0;
    }
    num / den
}

/// Complex division with a power-of-two pre-scale on both operands.
/// The naive formula squares the divisor's magnitude internally and so
/// overflows once `|b|` passes about `1e154` — easily reached by a
/// polynomial value or derivative at a root of modulus in the hundreds —
/// turning a perfectly representable quotient into NaN.
pub(crate) fn safe_div(a: Complex, b: Complex) -> Complex {
    let m = b.re.abs().max(b.im.abs());
    if !(m.is_finite() && m > 0.0) {
        return a / b;
    }
    let s = 2.0f64.powi((-m.log2().round() as i32).clamp(-1000, 1000));
    (a * s) / (b * s)
}

/// Random polynomial from the Kostlan ensemble: `c_i = a_i *
/// sqrt(binom(d, i))` with `a_i` standard Gaussians (for `real = false`
/// the real and imaginary parts each have variance 1/2).  Deterministic in
/// `seed`.
pub fn gen_kostlan(d: usize, seed: u64, real: bool) -> Result<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sqrt_binom = 1.0f64;
    let mut coeffs = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let a = if real {
            let x: f64 = rng.sample(StandardNormal);
            Complex::new(x, 0.0)
        } else {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
        };
        coeffs.push(a * sqrt_binom);
        // binom(d, i+1) = binom(d, i) * (d - i) / (i + 1)
        if i < d {
            sqrt_binom *= ((d - i) as f64 / (i + 1) as f64).sqrt();
        }
    }
    Polynomial::new(coeffs)
}

/// The "perfidious" polynomial `(x - 1)(x - 2)...(x - d)`: harmless-looking
/// integer roots with catastrophically ill-conditioned coefficients.
/// Restricted to `d <= 25` so the expansion stays within binary64 range
/// with meaningful digits.
pub fn gen_perfidious(d: usize) -> Result<Polynomial> {
    if d == 0 || d > 25 {
        return Err(Error::InvalidOptions(
            "perfidious degree must be in 1..=25".into(),
        ));
    }
    let roots: Vec<Complex> = (1..=d).map(|k| Complex::new(k as f64, 0.0)).collect();
    Polynomial::from_roots(&roots)
}

/// Monic polynomial with the Chebyshev nodes `cos(pi/(2d) + pi*m/d)`,
/// `m = 0..d-1`, as roots.  Well conditioned in the index metric; the
/// roots come in near-symmetric pairs around 0, which exercises the
/// circle-breaking transform.
pub fn gen_chebyshev(d: usize) -> Result<Polynomial> {
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    // Build T_d with the integer three-term recurrence
    // T_{n+1} = 2x T_n - T_{n-1}, then divide by the exact power of two.
    // Every intermediate is an integer below 2^53 (through degree ~40),
    // so the dyadic coefficients are exact and the polynomial's roots
    // are the cosine nodes to working precision.  Expanding the rounded
    // nodes as linear factors instead would displace the represented
    // roots by far more than the nodes' own rounding.
    let mut prev = vec![1.0f64];
    let mut cur = vec![0.0f64, 1.0];
    for _ in 1..d {
        let mut next = vec![0.0f64; cur.len() + 1];
        for (k, &c) in cur.iter().enumerate() {
            next[k + 1] += 2.0 * c;
        }
        for (k, &c) in prev.iter().enumerate() {
            next[k] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    let scale = (2.0f64).powi(-(d as i32 - 1));
    Polynomial::from_real(cur.iter().map(|&c| c * scale).collect())
}

/// Render a polynomial in the line-oriented text format:
///
/// ```text
/// d <degree> <real|complex>
/// <re> [<im>]     (one coefficient per line, low to high)
/// ```
///
/// Numbers use shortest round-trip scientific notation, so
/// [`read_polynomial`] recovers the exact binary64 values.
pub fn write_polynomial(p: &Polynomial) -> String {
    let mut out = String::new();
    if p.is_real() {
        out.push_str(&format!("d {} real\n", p.degree()));
        for c in p.coefficients() {
            out.push_str(&format!("{:e}\n", c.re));
        }
    } else {
        out.push_str(&format!("d {} complex\n", p.degree()));
        for c in p.coefficients() {
            out.push_str(&format!("{:e} {:e}\n", c.re, c.im));
        }
    }
    out
}

/// Parse the text format produced by [`write_polynomial`].  Returns the
/// polynomial and whether the file declared itself `real`.  Blank lines
/// are ignored; anything else malformed reports its 1-based line number.
pub fn read_polynomial(input: &str) -> Result<(Polynomial, bool)> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let mut parts = header.split_whitespace();
    let parse_err = |line: usize, message: &str| Error::Parse {
        line,
        message: message.into(),
    };
    if parts.next() != Some("d") {
        return Err(parse_err(header_line, "header must start with 'd'"));
    }
    let degree: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(header_line, "bad degree"))?;
    let real = match parts.next() {
        Some("real") => true,
        Some("complex") => false,
        _ => return Err(parse_err(header_line, "expected 'real' or 'complex'")),
    };
    if parts.next().is_some() {
        return Err(parse_err(header_line, "trailing tokens in header"));
    }

    let mut coeffs = Vec::with_capacity(degree + 1);
    let mut last_line = header_line;
    for (line, text) in lines {
        if coeffs.len() > degree {
            return Err(parse_err(line, "more coefficients than degree + 1"));
        }
        last_line = line;
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let want = if real { 1 } else { 2 };
        if tokens.len() != want {
            return Err(parse_err(
                line,
                if real {
                    "expected one number (re)"
                } else {
                    "expected two numbers (re im)"
                },
            ));
        }
        let mut nums = [0.0f64; 2];
        for (k, t) in tokens.iter().enumerate() {
            nums[k] = t
                .parse()
                .map_err(|_| parse_err(line, "bad floating-point number"))?;
        }
        coeffs.push(Complex::new(nums[0], if real { 0.0 } else { nums[1] }));
    }
    if coeffs.len() != degree + 1 {
        return Err(parse_err(
            last_line,
            "coefficient count does not match degree",
        ));
    }
    Ok((Polynomial::new(coeffs)?, real))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn poly(re: &[f64]) -> Polynomial {
        Polynomial::from_real(re.to_vec()).unwrap()
    }

    #[test]
    fn construction_guards() {
        assert_eq!(Polynomial::new(vec![]).unwrap_err(), Error::ZeroPolynomial);
        assert_eq!(
            Polynomial::from_real(vec![1.0, 0.0]).unwrap_err(),
            Error::ZeroPolynomial
        );
        assert!(poly(&[0.0, 1.0]).degree() == 1);
    }

    #[test]
    fn eval_and_derivative() {
        // (x-1)(x-2)(x-3)(x-4) = 24 - 50x + 35x^2 - 10x^3 + x^4
        let p = poly(&[24.0, -50.0, 35.0, -10.0, 1.0]);
        assert_eq!(p.eval(c(0.0, 0.0)), c(24.0, 0.0));
        assert_eq!(p.eval(c(1.0, 0.0)), c(0.0, 0.0));
        assert_eq!(p.eval(c(3.0, 0.0)), c(0.0, 0.0));
        let dp = p.derivative().unwrap();
        assert_eq!(
            dp.coefficients(),
            &[c(-50.0, 0.0), c(70.0, 0.0), c(-30.0, 0.0), c(4.0, 0.0)]
        );
        let (v, dv) = p.eval_with_derivative(c(2.5, 0.0));
        assert!((v - p.eval(c(2.5, 0.0))).norm() < 1e-14);
        assert!((dv - dp.eval(c(2.5, 0.0))).norm() < 1e-14);
        assert_eq!(
            poly(&[5.0]).derivative().unwrap_err(),
            Error::ConstantPolynomial
        );
    }

    #[test]
    fn from_roots_expands_exactly() {
        // (x-1)(x-2)(x-3) = -6 + 11x - 6x^2 + x^3, exact in binary64.
        let p = Polynomial::from_roots(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
        assert_eq!(
            p.coefficients(),
            &[c(-6.0, 0.0), c(11.0, 0.0), c(-6.0, 0.0), c(1.0, 0.0)]
        );
        assert!(p.is_real());
    }

    #[test]
    fn deflation() {
        // x^3 + x^2 = x^2 (x + 1)
        let p = poly(&[0.0, 0.0, 1.0, 1.0]);
        let (q, k) = p.deflate_zero_roots();
        assert_eq!(k, 2);
        assert_eq!(q.coefficients(), &[c(1.0, 0.0), c(1.0, 0.0)]);
        // No zero roots: unchanged.
        let p = poly(&[2.0, 1.0]);
        let (q, k) = p.deflate_zero_roots();
        assert_eq!(k, 0);
        assert_eq!(q, p);
        // A tiny but nonzero constant term is not deflated.
        let p = poly(&[1e-300, 1.0]);
        assert_eq!(p.deflate_zero_roots().1, 0);
    }

    #[test]
    fn mobius_identity_at_theta_zero() {
        let p = poly(&[24.0, -50.0, 35.0, -10.0, 1.0]);
        let (q, m) = mobius_transform(&p, 0.0).unwrap();
        // cos 0 = 1, sin 0 = 0: the substitution is the identity, and the
        // Horner scheme reproduces the coefficients bit for bit.
        assert_eq!(q.coefficients(), p.coefficients());
        assert_eq!(mobius_pullback(c(2.0, 0.0), &m).unwrap(), c(2.0, 0.0));
    }

    #[test]
    fn mobius_preserves_realness_and_inverts() {
        let p = poly(&[-6.0, 11.0, -6.0, 1.0]);
        let theta = 0.7;
        let (q, _) = mobius_transform(&p, theta).unwrap();
        assert!(q.is_real());
        // Transforming back with -theta restores the original coefficients
        // up to rounding (the composite map is exactly the identity).
        let (back, _) = mobius_transform(&q, -theta).unwrap();
        for (a, b) in back.coefficients().iter().zip(p.coefficients()) {
            assert!((a - b).norm() < 1e-12 * p.coefficients()[3].norm().max(11.0));
        }
    }

    #[test]
    fn mobius_degenerate_theta_detected() {
        // theta with cot(theta) = 2 maps the root 2 of (x-2) to infinity:
        // the leading coefficient of the transform vanishes.
        let p = poly(&[-2.0, 1.0]);
        let theta = (0.5f64).atan(); // cot = 2
        assert_eq!(
            mobius_transform(&p, theta).unwrap_err(),
            Error::DegenerateTheta
        );
    }

    #[test]
    fn mobius_pullback_pole() {
        let m = MobiusParams::new(std::f64::consts::FRAC_PI_2);
        // phi has its pole where x sin + cos = 0; at theta = pi/2 that is
        // x = -cot(pi/2) ~ 0.
        let pole = -m.cos_theta / m.sin_theta;
        assert_eq!(
            mobius_pullback(c(pole, 0.0), &m).unwrap_err(),
            Error::RootAtPole
        );
        assert!(mobius_pullback(c(1.0, 0.0), &m).is_ok());
    }

    #[test]
    fn mobius_roots_map_through_phi() {
        // Roots of the transformed polynomial are phi^{-1}(roots): check by
        // evaluating p~ at phi^{-1}(r) for each original root r.
        let roots = [c(1.0, 0.0), c(-0.5, 0.5), c(2.0, -1.0)];
        let p = Polynomial::from_roots(&roots).unwrap();
        let theta = 1.1;
        let (q, m) = mobius_transform(&p, theta).unwrap();
        for &r in &roots {
            // phi^{-1} is the map with angle -theta.
            let minv = MobiusParams::new(-theta);
            let pre = mobius_pullback(r, &minv).unwrap();
            assert!((mobius_pullback(pre, &m).unwrap() - r).norm() < 1e-12);
            assert!(q.eval(pre).norm() < 1e-12 * q.coefficients()[3].norm() * 100.0);
        }
    }

    #[test]
    fn backward_error_basics() {
        let p = poly(&[-2.0, 0.0, 1.0]); // x^2 - 2
        assert!(backward_error(&p, c(2.0f64.sqrt(), 0.0)) < 3e-16);
        let be = backward_error(&p, c(1.5, 0.0));
        // |p(1.5)| = 0.25, denominator = 2 + 2.25 = 4.25.
        assert!((be - 0.25 / 4.25).abs() < 1e-15);
        // Exact zero root of x^2 + x: 0/0 -> 0.
        let q = poly(&[0.0, 1.0, 1.0]);
        assert_eq!(backward_error(&q, c(0.0, 0.0)), 0.0);
    }

    #[test]
    fn backward_error_scale_invariant() {
        let p = poly(&[3.0, -1.0, 2.0, 1.0]);
        let scaled = Polynomial::new(
            p.coefficients().iter().map(|&x| x * 1024.0).collect(),
        )
        .unwrap();
        for z in [c(0.3, -0.2), c(-1.5, 0.0), c(0.0, 2.0)] {
            let a = backward_error(&p, z);
            let b = backward_error(&scaled, z);
            // Power-of-two scaling is exact in binary64.
            assert_eq!(a, b);
        }
    }

    #[test]
    fn kostlan_is_deterministic_and_scaled() {
        let a = gen_kostlan(6, 42, true).unwrap();
        let b = gen_kostlan(6, 42, true).unwrap();
        assert_eq!(a, b);
        assert!(a.is_real());
        let other = gen_kostlan(6, 43, true).unwrap();
        assert_ne!(a, other);
        let z = gen_kostlan(6, 42, false).unwrap();
        assert!(!z.is_real());
        assert_ne!(z.coefficients()[0].im, 0.0);
    }

    #[test]
    fn kostlan_variances_match_binomials() {
        // Sample variance over 10^4 seeds: Var(c_i) should be binom(d, i)
        // (real case), within 10%.  Deterministic given the fixed seeds.
        let d = 4;
        let n = 10_000u64;
        let mut sums = vec![0.0f64; d + 1];
        let mut sq = vec![0.0f64; d + 1];
        for seed in 0..n {
            let p = gen_kostlan(d, seed, true).unwrap();
            for (i, c) in p.coefficients().iter().enumerate() {
                sums[i] += c.re;
                sq[i] += c.re * c.re;
            }
        }
        let expected = [1.0, 4.0, 6.0, 4.0, 1.0];
        for i in 0..=d {
            let mean = sums[i] / n as f64;
            let var = sq[i] / n as f64 - mean * mean;
            assert!(
                (var / expected[i] - 1.0).abs() < 0.10,
                "variance of c_{i} = {var}, expected ~{}",
                expected[i]
            );
        }
        // Complex case: total variance (re + im) is also binom(d, i).
        let mut sq_c = vec![0.0f64; d + 1];
        for seed in 0..n {
            let p = gen_kostlan(d, seed, false).unwrap();
            for (i, c) in p.coefficients().iter().enumerate() {
                sq_c[i] += c.norm_sqr();
            }
        }
        for i in 0..=d {
            let var = sq_c[i] / n as f64;
            assert!(
                (var / expected[i] - 1.0).abs() < 0.10,
                "complex variance of c_{i} = {var}"
            );
        }
    }

    #[test]
    fn perfidious_small_cases() {
        let p = gen_perfidious(3).unwrap();
        assert_eq!(
            p.coefficients(),
            &[c(-6.0, 0.0), c(11.0, 0.0), c(-6.0, 0.0), c(1.0, 0.0)]
        );
        // Constant term of degree 10 is 10! exactly.
        let p10 = gen_perfidious(10).unwrap();
        assert_eq!(p10.coefficients()[0].re, 3628800.0);
        assert!(gen_perfidious(26).is_err());
        assert!(gen_perfidious(0).is_err());
    }

    #[test]
    fn chebyshev_nodes() {
        // The recurrence gives exact dyadic coefficients: d = 1 is x,
        // d = 2 is x^2 - 1/2, with the odd/even gaps exactly zero.
        let p1 = gen_chebyshev(1).unwrap();
        assert_eq!(p1.coefficients(), &[c(0.0, 0.0), c(1.0, 0.0)]);
        let p2 = gen_chebyshev(2).unwrap();
        assert_eq!(
            p2.coefficients(),
            &[c(-0.5, 0.0), c(0.0, 0.0), c(1.0, 0.0)]
        );
        // Every node evaluates to ~0.
        let p10 = gen_chebyshev(10).unwrap();
        assert_eq!(p10.coefficients()[10], c(1.0, 0.0));
        for m in 0..10 {
            let root = (std::f64::consts::PI * (0.5 + m as f64) / 10.0).cos();
            assert!(p10.eval(c(root, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn text_format_round_trip() {
        let p = poly(&[-24.24, 74.5, -85.35, 45.1, -11.01, 1.0]);
        let s = write_polynomial(&p);
        assert!(s.starts_with("d 5 real\n"));
        let (back, real) = read_polynomial(&s).unwrap();
        assert!(real);
        assert_eq!(back, p);

        let q = Polynomial::new(vec![c(0.5, -1.5e-300), c(1.0, 2.0)]).unwrap();
        let s = write_polynomial(&q);
        assert!(s.starts_with("d 1 complex\n"));
        let (back, real) = read_polynomial(&s).unwrap();
        assert!(!real);
        assert_eq!(back, q);
    }

    #[test]
    fn text_format_errors_carry_line_numbers() {
        let err = read_polynomial("").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));

        let err = read_polynomial("e 2 real\n1\n2\n3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));

        let err = read_polynomial("d 2 real\n1\nnope\n3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));

        let err = read_polynomial("d 2 real\n1\n2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));

        let err = read_polynomial("d 1 complex\n1 2\n3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));

        // Degree marker inconsistent with a vanishing leading coefficient.
        let err = read_polynomial("d 1 real\n1\n0\n").unwrap_err();
        assert_eq!(err, Error::ZeroPolynomial);
    }
}
