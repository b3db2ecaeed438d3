//! Geometric root-count classification and bracketed solving of
//! `x^n - p x + q = 0`.
//!
//! The point `(p, q)` is located relative to the envelope `e` of the line
//! family `Q_x`; the number of tangents through it equals the number of
//! distinct real roots. The classification then drives a Newton/bisection
//! solve on the monotone pieces of `g(x) = x^n - p x + q`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::envelope::{check_degree, family_line, plus_branch_value, Line};
use crate::numeric::{ensure_finite, signed_root, ABS_FLOOR};
use crate::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-9;
pub const MAX_ITERATIONS: usize = 200;

/// Relative band on `|g'(r)|` under which a root counts as double.
const DOUBLE_ROOT_SLOPE_TOL: f64 = 1e-7;

/// Parameters of `x^n - p x + q = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquationParams {
    pub n: u32,
    pub p: f64,
    pub q: f64,
}

impl EquationParams {
    pub fn new(n: u32, p: f64, q: f64) -> Result<Self> {
        check_degree(n)?;
        ensure_finite(p, "p")?;
        ensure_finite(q, "q")?;
        Ok(EquationParams { n, p, q })
    }

    /// `g(x) = x^n - p x + q`
    pub fn eval(&self, x: f64) -> f64 {
        x.powi(self.n as i32) - self.p * x + self.q
    }

    /// `g'(x) = n x^(n-1) - p`
    pub fn derivative(&self, x: f64) -> f64 {
        self.n as f64 * x.powi(self.n as i32 - 1) - self.p
    }

    /// Cauchy bound: every real root satisfies `|x| < 1 + max(|p|, |q|)`.
    pub fn root_bound(&self) -> f64 {
        1.0 + self.p.abs().max(self.q.abs())
    }

    /// Magnitude of the terms of `g` at `x`, used to scale residuals.
    pub fn term_scale(&self, x: f64) -> f64 {
        1f64.max((self.p * x).abs())
            .max(x.abs().powi(self.n as i32))
    }

    /// Critical points of `g`, ascending: one for even `n`, two for odd
    /// `n` with `p > 0`, none otherwise.
    pub fn critical_points(&self) -> Vec<f64> {
        let r = signed_root(self.p / self.n as f64, self.n - 1);
        if self.n % 2 == 0 {
            vec![r]
        } else if self.p > 0.0 {
            vec![-r, r]
        } else {
            Vec::new()
        }
    }

    fn is_even(&self) -> bool {
        self.n % 2 == 0
    }
}

/// Position of `(p, q)` relative to the envelope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    Above,
    OnEnvelope,
    Below,
    BetweenBranches,
    OnBranch,
    OutsideBranches,
    OnAxisOdd,
    Origin,
}

/// Which sign of the discriminant a regime corresponds to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootCountGroup {
    /// `D > 0`: two roots (even n) or three (odd n).
    Maximal,
    /// `D = 0`
    Boundary,
    /// `D < 0`: no roots (even n) or one (odd n).
    Minimal,
}

impl Regime {
    pub fn group(self) -> RootCountGroup {
        match self {
            Regime::Below | Regime::BetweenBranches | Regime::OnAxisOdd => RootCountGroup::Maximal,
            Regime::OnEnvelope | Regime::OnBranch | Regime::Origin => RootCountGroup::Boundary,
            Regime::Above | Regime::OutsideBranches => RootCountGroup::Minimal,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Above => "Above",
            Regime::OnEnvelope => "OnEnvelope",
            Regime::Below => "Below",
            Regime::BetweenBranches => "BetweenBranches",
            Regime::OnBranch => "OnBranch",
            Regime::OutsideBranches => "OutsideBranches",
            Regime::OnAxisOdd => "OnAxisOdd",
            Regime::Origin => "Origin",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub distinct_count: u32,
    pub regime: Regime,
    pub discriminant: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub value: f64,
    pub multiplicity: u32,
}

/// Classification plus the solved distinct roots, ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootReport {
    pub params: EquationParams,
    pub classification: Classification,
    pub roots: Vec<Root>,
    /// `g(r)` for each root, in the same order.
    pub residuals: Vec<f64>,
}

impl RootReport {
    pub fn values(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.value).collect()
    }
}

/// `(p/n)^n - (q/(n-1))^(n-1)`. Positive means the maximal number of real
/// roots, zero the boundary, negative the minimal number.
pub fn discriminant(params: EquationParams) -> f64 {
    let (a, b) = discriminant_terms(params);
    a - b
}

/// `max(|(p/n)^n|, |(q/(n-1))^(n-1)|)` with an absolute floor; the natural
/// scale for deciding whether a discriminant is zero.
pub fn discriminant_scale(params: EquationParams) -> f64 {
    let (a, b) = discriminant_terms(params);
    a.abs().max(b.abs()).max(ABS_FLOOR)
}

fn discriminant_terms(params: EquationParams) -> (f64, f64) {
    let n = params.n as i32;
    let a = (params.p / params.n as f64).powi(n);
    let b = (params.q / (params.n - 1) as f64).powi(n - 1);
    (a, b)
}

/// Locates `(p, q)` relative to the envelope. Points within
/// `boundary_tol * max(1, e(p))` of a branch count as on it.
pub fn classify(params: EquationParams, boundary_tol: f64) -> Classification {
    let EquationParams { n, p, q } = params;
    let discriminant = discriminant(params);
    let make = |distinct_count, regime| Classification {
        distinct_count,
        regime,
        discriminant,
    };

    if params.is_even() {
        let e = plus_branch_value(n, p);
        let tau = boundary_tol * e.abs().max(1.0);
        return if q < e - tau {
            make(2, Regime::Below)
        } else if q > e + tau {
            make(0, Regime::Above)
        } else {
            make(1, Regime::OnEnvelope)
        };
    }

    if p == 0.0 && q == 0.0 {
        return make(1, Regime::Origin);
    }
    if p <= 0.0 {
        // g is strictly increasing
        return make(1, Regime::OutsideBranches);
    }
    if q == 0.0 {
        return make(3, Regime::OnAxisOdd);
    }
    let e = plus_branch_value(n, p);
    let tau = boundary_tol * e.abs().max(1.0);
    if q.abs() < e - tau {
        make(3, Regime::BetweenBranches)
    } else if q.abs() > e + tau {
        make(1, Regime::OutsideBranches)
    } else {
        make(2, Regime::OnBranch)
    }
}

/// Solves with the default boundary band.
pub fn solve(params: EquationParams, tol: f64) -> Result<RootReport> {
    solve_with(params, tol, DEFAULT_BOUNDARY_TOL)
}

/// All distinct real roots, consistent with [`classify`] at `boundary_tol`.
pub fn solve_with(params: EquationParams, tol: f64, boundary_tol: f64) -> Result<RootReport> {
    let params = EquationParams::new(params.n, params.p, params.q)?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "tol must be positive, got {tol}"
        )));
    }
    if !(boundary_tol >= 0.0 && boundary_tol.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "boundary_tol must be nonnegative, got {boundary_tol}"
        )));
    }

    let classification = classify(params, boundary_tol);
    let n = params.n;
    let bound = params.root_bound();
    let simple = |lo: f64, hi: f64| -> Result<Root> {
        Ok(Root {
            value: bracketed_root(&params, lo, hi, tol)?,
            multiplicity: 1,
        })
    };
    let double = |value: f64| Root {
        value,
        multiplicity: 2,
    };
    // tangency parameter of the touched branch
    let r = signed_root(params.p / n as f64, n - 1);

    let mut roots = match classification.regime {
        Regime::Origin => vec![Root {
            value: 0.0,
            multiplicity: n,
        }],
        Regime::Above => Vec::new(),
        Regime::OnEnvelope if params.p == 0.0 && params.q == 0.0 => vec![Root {
            value: 0.0,
            multiplicity: n,
        }],
        Regime::OnEnvelope => vec![double(r)],
        Regime::Below => vec![simple(-bound, r)?, simple(r, bound)?],
        Regime::OnAxisOdd => {
            let s = signed_root(params.p, n - 1);
            [-s, 0.0, s]
                .into_iter()
                .map(|value| Root {
                    value,
                    multiplicity: 1,
                })
                .collect()
        }
        Regime::BetweenBranches => {
            vec![simple(-bound, -r)?, simple(-r, r)?, simple(r, bound)?]
        }
        Regime::OnBranch if params.q > 0.0 => vec![simple(-bound, -r)?, double(r)],
        Regime::OnBranch => vec![double(-r), simple(r, bound)?],
        Regime::OutsideBranches if params.p <= 0.0 => vec![simple(-bound, bound)?],
        Regime::OutsideBranches if params.q > 0.0 => vec![simple(-bound, -r)?],
        Regime::OutsideBranches => vec![simple(r, bound)?],
    };
    roots.sort_by(|a, b| a.value.partial_cmp(&b.value).unwrap_or(Ordering::Equal));
    let residuals = roots.iter().map(|root| params.eval(root.value)).collect();

    Ok(RootReport {
        params,
        classification,
        roots,
        residuals,
    })
}

/// Multiplicity suggested by the slope of `g` at a root: 2 when
/// `|g'(r)| <= 1e-7 * max(1, n |r|^(n-1))`, else 1.
pub fn multiplicity_hint(params: EquationParams, r: f64) -> u32 {
    let scale = 1f64.max(params.n as f64 * r.abs().powi(params.n as i32 - 1));
    if params.derivative(r).abs() <= DOUBLE_ROOT_SLOPE_TOL * scale {
        2
    } else {
        1
    }
}

/// Safeguarded Newton on a sign-changing bracket of `g`.
fn bracketed_root(params: &EquationParams, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let f_lo = params.eval(lo);
    let f_hi = params.eval(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    // g(neg) < 0 < g(pos)
    let (mut neg, mut pos) = if f_lo < 0.0 { (lo, hi) } else { (hi, lo) };
    let mut x = 0.5 * (lo + hi);

    for _ in 0..MAX_ITERATIONS {
        let fx = params.eval(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx < 0.0 {
            neg = x;
        } else {
            pos = x;
        }
        let (a, b) = if neg < pos { (neg, pos) } else { (pos, neg) };
        let d = params.derivative(x);
        let newton = x - fx / d;
        let next = if d != 0.0 && newton > a && newton < b {
            newton
        } else {
            0.5 * (a + b)
        };
        let step = (next - x).abs();
        if step <= tol * x.abs().max(1.0) || next == x {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::ToleranceNotAchieved {
        tol,
        iterations: MAX_ITERATIONS,
    })
}

/// Tangent lines to the envelope through `(p, q)`: one `Q_r` per distinct
/// real root `r`.
pub fn tangent_lines_through(params: EquationParams, tol: f64) -> Result<Vec<Line>> {
    let report = solve(params, tol)?;
    report
        .roots
        .iter()
        .map(|r| family_line(params.n, r.value))
        .collect()
}

/// `x^3 + b x^2 + c x + d`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicGeneral {
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// A depressed cubic `t^3 - p t + q` with `t = x + shift`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepressedCubic {
    pub params: EquationParams,
    pub shift: f64,
}

impl CubicGeneral {
    pub fn eval(&self, x: f64) -> f64 {
        ((x + self.b) * x + self.c) * x + self.d
    }

    /// Distinct real roots via the depressed form, with multiplicities.
    pub fn roots(&self, tol: f64) -> Result<Vec<Root>> {
        let depressed = depress_cubic(*self)?;
        let report = solve(depressed.params, tol)?;
        Ok(report
            .roots
            .into_iter()
            .map(|r| Root {
                value: r.value - depressed.shift,
                multiplicity: r.multiplicity,
            })
            .collect())
    }
}

/// Substitutes `x = t - b/3`, removing the quadratic term.
pub fn depress_cubic(c: CubicGeneral) -> Result<DepressedCubic> {
    let CubicGeneral { b, c, d } = c;
    ensure_finite(b, "b")?;
    ensure_finite(c, "c")?;
    ensure_finite(d, "d")?;
    let p = b * b / 3.0 - c;
    let q = d - b * c / 3.0 + 2.0 * b * b * b / 27.0;
    Ok(DepressedCubic {
        params: EquationParams::new(3, p, q)?,
        shift: b / 3.0,
    })
}
