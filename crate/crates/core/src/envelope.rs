//! The line family `Q_x(p) = x p - x^n`, its envelope, and numeric envelope
//! extraction for arbitrary one-parameter line families.

use serde::{Deserialize, Serialize};

use crate::numeric::{ensure_finite, signed_root};
use crate::{Error, Result};

/// A non-vertical line `q = slope * p + intercept` in the pq-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub slope: f64,
    pub intercept: f64,
}

impl Line {
    pub fn new(slope: f64, intercept: f64) -> Result<Self> {
        ensure_finite(slope, "line slope")?;
        ensure_finite(intercept, "line intercept")?;
        Ok(Line { slope, intercept })
    }

    pub fn eval(&self, p: f64) -> f64 {
        self.slope * p + self.intercept
    }
}

/// A point `(p, q)` of the parameter plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanePoint {
    pub p: f64,
    pub q: f64,
}

impl PlanePoint {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        ensure_finite(p, "point p")?;
        ensure_finite(q, "point q")?;
        Ok(PlanePoint { p, q })
    }
}

/// Envelope branch: `+e(p)` or, for odd degree only, `-e(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// One branch of the envelope of `{Q_x}` for a fixed degree.
///
/// Even degree has a single branch defined on all of ℝ. Odd degree has
/// two branches `±e`, both defined for `p >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnvelopeSpec {
    n: u32,
    branch: Branch,
}

impl EnvelopeSpec {
    pub fn new(n: u32, branch: Branch) -> Result<Self> {
        check_degree(n)?;
        if branch == Branch::Minus && n % 2 == 0 {
            return Err(Error::NoMinusBranch(n));
        }
        Ok(EnvelopeSpec { n, branch })
    }

    pub fn plus(n: u32) -> Result<Self> {
        Self::new(n, Branch::Plus)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// All branches of the envelope for degree `n`.
    pub fn branches(n: u32) -> Result<Vec<Self>> {
        check_degree(n)?;
        if n % 2 == 0 {
            Ok(vec![EnvelopeSpec {
                n,
                branch: Branch::Plus,
            }])
        } else {
            Ok(vec![
                EnvelopeSpec {
                    n,
                    branch: Branch::Plus,
                },
                EnvelopeSpec {
                    n,
                    branch: Branch::Minus,
                },
            ])
        }
    }

    pub fn contains(&self, p: f64) -> bool {
        p.is_finite() && (self.n % 2 == 0 || p >= 0.0)
    }

    fn check_domain(&self, p: f64) -> Result<()> {
        ensure_finite(p, "p")?;
        if !self.contains(p) {
            return Err(Error::OutsideDomain { n: self.n, p });
        }
        Ok(())
    }

    pub fn value(&self, p: f64) -> Result<f64> {
        self.check_domain(p)?;
        Ok(self.branch.sign() * plus_branch_value(self.n, p))
    }

    pub fn slope(&self, p: f64) -> Result<f64> {
        self.check_domain(p)?;
        Ok(self.branch.sign() * signed_root(p / self.n as f64, self.n - 1))
    }
}

pub(crate) fn check_degree(n: u32) -> Result<()> {
    if n < 2 {
        Err(Error::InvalidDegree(n))
    } else {
        Ok(())
    }
}

/// `(n-1) |p/n|^(n/(n-1))`. For even `n` this is the signed-root power
/// `((p/n)^(1/(n-1)))^n`, which is nonnegative because `n` is even.
pub(crate) fn plus_branch_value(n: u32, p: f64) -> f64 {
    let nf = n as f64;
    let base = (p / nf).abs();
    let pow = if n == 2 {
        base * base
    } else {
        base.powf(nf / (nf - 1.0))
    };
    (nf - 1.0) * pow
}

/// `Q_x` as a [`Line`]: slope `x`, intercept `-x^n`.
pub fn family_line(n: u32, x: f64) -> Result<Line> {
    check_degree(n)?;
    Line::new(x, -x.powi(n as i32))
}

/// Intersection point of `Q_x` and `Q_y` for `x != y`.
///
/// Uses the factored forms `p = sum_k x^k y^(n-1-k)` and
/// `q = x y sum_k x^k y^(n-2-k)`, evaluated on the ordered pair so the
/// result is bitwise symmetric in `(x, y)`.
pub fn intersect_family_lines(n: u32, x: f64, y: f64) -> Result<PlanePoint> {
    check_degree(n)?;
    ensure_finite(x, "x")?;
    ensure_finite(y, "y")?;
    if x == y {
        return Err(Error::CoincidentParameters(x));
    }
    let (a, b) = if x < y { (x, y) } else { (y, x) };
    let p = complete_homogeneous(a, b, n - 1);
    let q = a * b * complete_homogeneous(a, b, n - 2);
    PlanePoint::new(p, q)
}

// sum_{k=0}^{d} a^k b^(d-k)
fn complete_homogeneous(a: f64, b: f64, d: u32) -> f64 {
    let mut sum = 0.0;
    let mut a_pow = 1.0;
    for k in 0..=d {
        sum += a_pow * b.powi((d - k) as i32);
        a_pow *= a;
    }
    sum
}

/// Point where `Q_x` touches the envelope: `(n x^(n-1), (n-1) x^n)`.
pub fn envelope_touch_point(n: u32, x: f64) -> Result<PlanePoint> {
    check_degree(n)?;
    ensure_finite(x, "x")?;
    let nf = n as f64;
    PlanePoint::new(nf * x.powi(n as i32 - 1), (nf - 1.0) * x.powi(n as i32))
}

pub fn envelope_value(spec: EnvelopeSpec, p: f64) -> Result<f64> {
    spec.value(p)
}

pub fn envelope_slope(spec: EnvelopeSpec, p: f64) -> Result<f64> {
    spec.slope(p)
}

/// A one-parameter family `x ↦ Line(slope(x), intercept(x))`.
pub trait LineFamily {
    fn slope(&self, x: f64) -> f64;
    fn intercept(&self, x: f64) -> f64;

    fn line(&self, x: f64) -> Line {
        Line {
            slope: self.slope(x),
            intercept: self.intercept(x),
        }
    }

    /// p-coordinate where the members at `x` and `y` intersect.
    fn intersection_p(&self, x: f64, y: f64) -> Result<f64> {
        let ds = self.slope(y) - self.slope(x);
        if ds == 0.0 {
            return Err(Error::DegenerateFamily { x, eps: y - x });
        }
        let p = -(self.intercept(y) - self.intercept(x)) / ds;
        ensure_finite(p, "intersection p")?;
        Ok(p)
    }
}

/// The family `Q_x` of lines with slope `x` and intercept `-x^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonomialFamily {
    n: u32,
}

impl MonomialFamily {
    pub fn new(n: u32) -> Result<Self> {
        check_degree(n)?;
        Ok(MonomialFamily { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

impl LineFamily for MonomialFamily {
    fn slope(&self, x: f64) -> f64 {
        x
    }

    fn intercept(&self, x: f64) -> f64 {
        -x.powi(self.n as i32)
    }
}

/// A line family built from two closures.
pub struct FnFamily<S, I> {
    slope: S,
    intercept: I,
}

impl<S, I> FnFamily<S, I>
where
    S: Fn(f64) -> f64,
    I: Fn(f64) -> f64,
{
    pub fn new(slope: S, intercept: I) -> Self {
        FnFamily { slope, intercept }
    }
}

impl<S, I> LineFamily for FnFamily<S, I>
where
    S: Fn(f64) -> f64,
    I: Fn(f64) -> f64,
{
    fn slope(&self, x: f64) -> f64 {
        (self.slope)(x)
    }

    fn intercept(&self, x: f64) -> f64 {
        (self.intercept)(x)
    }
}

/// p-coordinate of the intersection of `Q_x` and `Q_{x+eps}`.
pub fn numeric_intersection(n: u32, x: f64, eps: f64) -> Result<f64> {
    ensure_finite(x, "x")?;
    ensure_finite(eps, "eps")?;
    if eps == 0.0 {
        return Err(Error::InvalidArgument("eps must be nonzero".into()));
    }
    MonomialFamily::new(n)?.intersection_p(x, x + eps)
}

/// Extrapolated envelope abscissa with its error estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericEnvelope {
    pub p: f64,
    pub error_estimate: f64,
    /// Error estimate after each extrapolation level (length `levels - 1`).
    pub estimates: Vec<f64>,
}

/// Upper bound on extrapolation levels.
pub const MAX_LEVELS: usize = 24;

/// Limit of the intersection of neighbouring family members at `x`.
///
/// Level `k` intersects the members at `x - h_k` and `x + h_k` with
/// `h_k = eps0 / 2^k`. The symmetric secant has an error expansion in even
/// powers of `h`, so the Richardson table eliminates `h^2, h^4, ...` in turn.
/// The error estimate is the distance between the last two diagonal entries.
pub fn numeric_envelope<F: LineFamily + ?Sized>(
    family: &F,
    x: f64,
    eps0: f64,
    levels: usize,
) -> Result<NumericEnvelope> {
    ensure_finite(x, "x")?;
    if !(eps0 > 0.0 && eps0.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "eps0 must be positive, got {eps0}"
        )));
    }
    if !(2..=MAX_LEVELS).contains(&levels) {
        return Err(Error::InvalidArgument(format!(
            "levels must be in 2..={MAX_LEVELS}, got {levels}"
        )));
    }

    let mut row = Vec::with_capacity(levels);
    for k in 0..levels {
        let h = eps0 / (1u64 << k) as f64;
        row.push(family.intersection_p(x - h, x + h)?);
    }

    let mut estimates = Vec::with_capacity(levels - 1);
    // row[i] after pass j combines samples i..=i+j; row[0] is the best
    // estimate from the first j+1 levels
    let mut diag_prev = row[0];
    let mut factor = 1.0;
    for j in 1..levels {
        factor *= 4.0;
        for i in 0..levels - j {
            row[i] = (factor * row[i + 1] - row[i]) / (factor - 1.0);
        }
        let diag = row[0];
        if !diag.is_finite() {
            return Err(Error::NonConvergence {
                x,
                estimate: f64::INFINITY,
            });
        }
        estimates.push((diag - diag_prev).abs());
        diag_prev = diag;
    }

    let p = diag_prev;
    let error_estimate = estimates[levels - 2];
    if levels >= 3 {
        let before = estimates[levels - 3];
        let floor = f64::EPSILON.sqrt() * p.abs().max(1.0);
        if error_estimate > before && error_estimate > floor {
            return Err(Error::NonConvergence {
                x,
                estimate: error_estimate,
            });
        }
    }

    Ok(NumericEnvelope {
        p,
        error_estimate,
        estimates,
    })
}
