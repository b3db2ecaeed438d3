//! JSON payloads shared by the command line and the HTTP API.
//!
//! Each operation takes a request struct and returns a serializable
//! payload; both front ends call these functions, so their output agrees
//! field for field.

use envelope_core::duality::{dual_of_line, dual_of_point};
use envelope_core::{
    classify, envelope_touch_point, family_line, solve_with, Branch, EnvelopeSpec, EquationParams,
    Regime,
};
use serde::{Deserialize, Serialize};

use crate::config::Settings;
use crate::error::{CliError, CliResult};

/// Upper bound on sampled points per request.
pub const MAX_SAMPLES: usize = 1_000_000;

/// `x^n - p x + q = 0` with optional tolerance overrides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationRequest {
    pub n: u32,
    pub p: f64,
    pub q: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_tol: Option<f64>,
}

impl EquationRequest {
    pub fn new(n: u32, p: f64, q: f64) -> Self {
        EquationRequest {
            n,
            p,
            q,
            tol: None,
            boundary_tol: None,
        }
    }

    fn params(&self) -> CliResult<EquationParams> {
        Ok(EquationParams::new(self.n, self.p, self.q)?)
    }

    fn tolerances(&self, settings: &Settings) -> CliResult<(f64, f64)> {
        let tol = self.tol.unwrap_or(settings.tol);
        let boundary_tol = self.boundary_tol.unwrap_or(settings.boundary_tol);
        for (name, v) in [("tol", tol), ("boundary_tol", boundary_tol)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::InvalidArgument(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok((tol, boundary_tol))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifyPayload {
    pub count: u32,
    pub regime: Regime,
    pub discriminant: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootEntry {
    pub value: f64,
    pub multiplicity: u32,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolvePayload {
    pub n: u32,
    pub p: f64,
    pub q: f64,
    pub count: u32,
    pub discriminant: f64,
    pub classification: ClassifyPayload,
    pub roots: Vec<RootEntry>,
}

pub fn classify_op(req: &EquationRequest, settings: &Settings) -> CliResult<ClassifyPayload> {
    let params = req.params()?;
    let (_, boundary_tol) = req.tolerances(settings)?;
    let c = classify(params, boundary_tol);
    Ok(ClassifyPayload {
        count: c.distinct_count,
        regime: c.regime,
        discriminant: c.discriminant,
    })
}

pub fn solve_op(req: &EquationRequest, settings: &Settings) -> CliResult<SolvePayload> {
    let params = req.params()?;
    let (tol, boundary_tol) = req.tolerances(settings)?;
    let report = solve_with(params, tol, boundary_tol)?;
    let c = report.classification;
    Ok(SolvePayload {
        n: params.n,
        p: params.p,
        q: params.q,
        count: c.distinct_count,
        discriminant: c.discriminant,
        classification: ClassifyPayload {
            count: c.distinct_count,
            regime: c.regime,
            discriminant: c.discriminant,
        },
        roots: report
            .roots
            .iter()
            .zip(&report.residuals)
            .map(|(r, &residual)| RootEntry {
                value: r.value,
                multiplicity: r.multiplicity,
                residual,
            })
            .collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub p: f64,
    pub q: f64,
}

/// The tangent `Q_x` through the query point and where it touches the
/// envelope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tangent {
    /// The root `x`, which is also the slope.
    pub x: f64,
    pub multiplicity: u32,
    pub slope: f64,
    pub intercept: f64,
    pub touch: Point,
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentsPayload {
    pub n: u32,
    pub p: f64,
    pub q: f64,
    pub count: u32,
    pub regime: Regime,
    pub tangents: Vec<Tangent>,
}

pub fn tangents_op(req: &EquationRequest, settings: &Settings) -> CliResult<TangentsPayload> {
    let solved = solve_op(req, settings)?;
    let tangents = solved
        .roots
        .iter()
        .map(|r| {
            let line = family_line(solved.n, r.value)?;
            let touch = envelope_touch_point(solved.n, r.value)?;
            Ok(Tangent {
                x: r.value,
                multiplicity: r.multiplicity,
                slope: line.slope,
                intercept: line.intercept,
                touch: Point {
                    p: touch.p,
                    q: touch.q,
                },
                branch: touch_branch(touch.q),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(TangentsPayload {
        n: solved.n,
        p: solved.p,
        q: solved.q,
        count: solved.count,
        regime: solved.classification.regime,
        tangents,
    })
}

/// Branch of the envelope a touch point with ordinate `q` lies on.
pub fn touch_branch(q: f64) -> Branch {
    if q < 0.0 {
        Branch::Minus
    } else {
        Branch::Plus
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualLine {
    pub slope: f64,
    pub intercept: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualPoint {
    pub m: f64,
    pub n: f64,
}

/// The query point's dual line in the mn-plane and the dual points of its
/// tangents, which all lie on that line and on the curve `n = -m^deg`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualPayload {
    pub n: u32,
    pub point: Point,
    pub dual_line: DualLine,
    pub dual_points: Vec<DualPoint>,
}

pub fn dual_op(req: &EquationRequest, settings: &Settings) -> CliResult<DualPayload> {
    let tangents = tangents_op(req, settings)?;
    let line = dual_of_point(envelope_core::PlanePoint { p: req.p, q: req.q });
    let dual_points = tangents
        .tangents
        .iter()
        .map(|t| {
            let d = dual_of_line(envelope_core::Line {
                slope: t.slope,
                intercept: t.intercept,
            });
            DualPoint { m: d.p, n: d.q }
        })
        .collect();
    Ok(DualPayload {
        n: req.n,
        point: Point { p: req.p, q: req.q },
        dual_line: DualLine {
            slope: line.slope,
            intercept: line.intercept,
        },
        dual_points,
    })
}

/// Sampled envelope branches over a p-range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvelopeRequest {
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_range: Option<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchSamples {
    pub branch: Branch,
    /// `[p, e(p)]` pairs in increasing `p`.
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopePayload {
    pub n: u32,
    pub p_range: (f64, f64),
    pub branches: Vec<BranchSamples>,
}

/// Default p-range: symmetric for even `n`, the right half-line for odd.
pub fn default_p_range(n: u32) -> (f64, f64) {
    if n % 2 == 0 {
        (-5.0, 5.0)
    } else {
        (0.0, 5.0)
    }
}

pub fn envelope_op(req: &EnvelopeRequest, settings: &Settings) -> CliResult<EnvelopePayload> {
    let p_range = req.p_range.unwrap_or_else(|| default_p_range(req.n));
    let samples = req.samples.unwrap_or(settings.samples);
    let ps = sample_range(p_range, samples)?;
    let branches = EnvelopeSpec::branches(req.n)?
        .into_iter()
        .map(|spec| {
            let points = ps
                .iter()
                .map(|&p| Ok((p, spec.value(p)?)))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(BranchSamples {
                branch: spec.branch(),
                points,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(EnvelopePayload {
        n: req.n,
        p_range,
        branches,
    })
}

/// `count` points from `lo` to `hi` inclusive; a single point is `lo`.
pub fn sample_range((lo, hi): (f64, f64), count: usize) -> CliResult<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(CliError::InvalidRange(format!("[{lo}, {hi}]")));
    }
    if count == 0 || count > MAX_SAMPLES {
        return Err(CliError::InvalidArgument(format!(
            "samples must be between 1 and {MAX_SAMPLES}, got {count}"
        )));
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    let last = (count - 1) as f64;
    Ok((0..count)
        .map(|i| {
            if i == count - 1 {
                hi
            } else {
                lo + (hi - lo) * (i as f64 / last)
            }
        })
        .collect())
}
