//! Legendre transforms: the closed form for even monomials, the
//! tangent-intercept construction, and a discrete transform on samples.
//!
//! For `f(x) = x^n` with even `n` the conjugate `f*(p) = sup_x (p x - x^n)`
//! is exactly the envelope `e(p)` of the lines `Q_x`.

use crate::envelope::{check_degree, EnvelopeSpec};
use crate::numeric::ABS_FLOOR;
use crate::{Error, Result};

/// Relative slack allowed in the discrete convexity test.
const CONVEXITY_TOL: f64 = 1e-12;

/// A function sampled on strictly increasing abscissae.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    xs: Vec<f64>,
    ys: Vec<f64>,
    convex: bool,
}

impl SampledFunction {
    /// Validates the sampling and computes the convexity flag.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::MalformedSampling(format!(
                "{} abscissae but {} values",
                xs.len(),
                ys.len()
            )));
        }
        if xs.len() < 3 {
            return Err(Error::MalformedSampling(format!(
                "need at least 3 samples, got {}",
                xs.len()
            )));
        }
        if let Some(i) = xs.iter().chain(&ys).position(|v| !v.is_finite()) {
            return Err(Error::MalformedSampling(format!(
                "non-finite entry at position {i}"
            )));
        }
        if let Some(i) = xs.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::MalformedSampling(format!(
                "abscissae not strictly increasing at index {}",
                i + 1
            )));
        }
        let convex = is_convex(&xs, &ys);
        Ok(SampledFunction { xs, ys, convex })
    }

    /// Samples `f` at `count` uniform points on `[lo, hi]`.
    pub fn from_fn(f: impl Fn(f64) -> f64, lo: f64, hi: f64, count: usize) -> Result<Self> {
        if count < 3 || !(lo < hi) {
            return Err(Error::MalformedSampling(format!(
                "bad uniform sampling [{lo}, {hi}] with {count} points"
            )));
        }
        let xs: Vec<f64> = uniform(lo, hi, count);
        let ys = xs.iter().map(|&x| f(x)).collect();
        Self::new(xs, ys)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Secant slopes are nondecreasing (within a relative round-off band).
    pub fn is_convex(&self) -> bool {
        self.convex
    }

    pub fn secant_slopes(&self) -> Vec<f64> {
        secants(&self.xs, &self.ys).collect()
    }

    /// Range of the secant slopes.
    pub fn slope_domain(&self) -> SlopeDomain {
        let (lo, hi) = secants(&self.xs, &self.ys)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
                (lo.min(s), hi.max(s))
            });
        SlopeDomain { lo, hi }
    }
}

fn secants<'a>(xs: &'a [f64], ys: &'a [f64]) -> impl Iterator<Item = f64> + 'a {
    xs.windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0]))
}

fn is_convex(xs: &[f64], ys: &[f64]) -> bool {
    (1..xs.len() - 1).all(|i| {
        let (dl, dr) = (xs[i] - xs[i - 1], xs[i + 1] - xs[i]);
        // (s_right - s_left) * dl * dr >= 0, cross-multiplied
        let turn = (ys[i + 1] - ys[i]) * dl - (ys[i] - ys[i - 1]) * dr;
        let scale = (ys[i - 1].abs() + 2.0 * ys[i].abs() + ys[i + 1].abs()) * (dl + dr);
        turn >= -CONVEXITY_TOL * scale.max(ABS_FLOOR)
    })
}

// Chord slopes over [x_2j, x_2j+2], plus the last secant for an odd cell
// count, thinned to a strictly increasing sequence.
fn pair_chord_slopes(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let last = xs.len() - 1;
    let mut raw: Vec<f64> = (0..last / 2)
        .map(|j| (ys[2 * j + 2] - ys[2 * j]) / (xs[2 * j + 2] - xs[2 * j]))
        .collect();
    if last % 2 == 1 {
        raw.push((ys[last] - ys[last - 1]) / (xs[last] - xs[last - 1]));
    }
    let mut slopes: Vec<f64> = Vec::with_capacity(raw.len());
    for s in raw {
        if slopes.last().is_none_or(|&prev| s > prev) {
            slopes.push(s);
        }
    }
    slopes
}

fn uniform(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let step = (hi - lo) / (count - 1) as f64;
    (0..count)
        .map(|i| {
            if i == count - 1 {
                hi
            } else {
                lo + step * i as f64
            }
        })
        .collect()
}

/// The set of attainable slopes `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeDomain {
    pub lo: f64,
    pub hi: f64,
}

impl SlopeDomain {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo <= hi) {
            return Err(Error::InvalidArgument(format!(
                "empty slope domain [{lo}, {hi}]"
            )));
        }
        Ok(SlopeDomain { lo, hi })
    }

    pub fn contains(&self, p: f64) -> bool {
        self.lo <= p && p <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Conjugate of `x^n` for even `n`: `(n-1) (p/n)^(n/(n-1))`.
///
/// Evaluated through the envelope's plus branch, so the two agree bit for bit.
pub fn legendre_monomial(n: u32, p: f64) -> Result<f64> {
    check_degree(n)?;
    if n % 2 != 0 {
        return Err(Error::OddMonomial(n));
    }
    EnvelopeSpec::plus(n)?.value(p)
}

/// Slope `p = f'(x0)` of the tangent at `x0` and the negated axis intercept
/// `p x0 - f(x0)` of that tangent.
pub fn tangent_intercept_transform(
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    x0: f64,
) -> (f64, f64) {
    let p = df(x0);
    (p, p * x0 - f(x0))
}

/// Result of a discrete transform.
#[derive(Debug, Clone, PartialEq)]
pub struct Conjugate {
    pub slopes: Vec<f64>,
    pub values: Vec<f64>,
    /// Sample index attaining the maximum for each slope.
    pub argmax: Vec<usize>,
}

impl Conjugate {
    pub fn to_sampled(&self) -> Result<SampledFunction> {
        SampledFunction::new(self.slopes.clone(), self.values.clone())
    }
}

/// `f*(p) = max_i (p x_i - y_i)` for each slope in `slopes`.
///
/// Runs a monotone sweep over the lower convex hull of the samples, which
/// is the whole sample set when the input is convex. Slopes outside the
/// secant range take their maximum at an end sample.
pub fn discrete_legendre(f: &SampledFunction, slopes: &[f64]) -> Result<Conjugate> {
    if let Some(i) = slopes.iter().position(|p| !p.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "non-finite slope at position {i}"
        )));
    }
    if let Some(i) = slopes.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(format!(
            "slopes not strictly increasing at index {}",
            i + 1
        )));
    }
    Ok(sweep(&f.xs, &f.ys, slopes))
}

fn sweep(xs: &[f64], ys: &[f64], slopes: &[f64]) -> Conjugate {
    let hull = lower_hull(xs, ys);
    let value = |i: usize, p: f64| p * xs[i] - ys[i];

    let mut k = 0;
    let mut values = Vec::with_capacity(slopes.len());
    let mut argmax = Vec::with_capacity(slopes.len());
    for &p in slopes {
        while k + 1 < hull.len() && value(hull[k + 1], p) >= value(hull[k], p) {
            k += 1;
        }
        values.push(value(hull[k], p));
        argmax.push(hull[k]);
    }
    Conjugate {
        slopes: slopes.to_vec(),
        values,
        argmax,
    }
}

// Indices of the lower convex hull, ascending in x (monotone chain).
fn lower_hull(xs: &[f64], ys: &[f64]) -> Vec<usize> {
    let mut hull: Vec<usize> = Vec::with_capacity(xs.len());
    for i in 0..xs.len() {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a]);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    hull
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvolutionReport {
    pub max_deviation: f64,
    pub passed: bool,
}

/// Transforms `f` twice and measures how far the biconjugate is from `f`
/// on the interior samples.
///
/// The first pass uses the chord slopes over pairs of cells,
/// `(y[2j+2] - y[2j]) / (x[2j+2] - x[2j])`, which lie in the secant-slope
/// range and each support the sample between their chord ends. The second
/// pass evaluates back at the original abscissae; samples at chord ends
/// are recovered only up to `O(dx^2)`.
pub fn involution_check(f: &SampledFunction, tol: f64) -> Result<InvolutionReport> {
    if !f.is_convex() {
        return Err(Error::NotConvex);
    }
    let slopes = pair_chord_slopes(&f.xs, &f.ys);
    let conj = sweep(&f.xs, &f.ys, &slopes);
    let biconj = sweep(&conj.slopes, &conj.values, &f.xs);
    let max_deviation = (1..f.len() - 1)
        .map(|i| (biconj.values[i] - f.ys[i]).abs())
        .fold(0.0, f64::max);

    Ok(InvolutionReport {
        max_deviation,
        passed: max_deviation <= tol,
    })
}
