//! Point–line duality between the pq-plane and the mn-plane.
//!
//! A line `q = m p + b` corresponds to the point `(m, b)`; a point `(p, q)`
//! corresponds to the line `n = -p m + q`, which contains exactly the duals
//! of the lines through `(p, q)`.

use crate::envelope::{Line, PlanePoint};

/// The mn-plane point `(slope, intercept)` of a pq-plane line.
pub fn dual_of_line(l: Line) -> PlanePoint {
    PlanePoint {
        p: l.slope,
        q: l.intercept,
    }
}

/// The mn-plane line `n = -p m + q` of a pq-plane point.
pub fn dual_of_point(pt: PlanePoint) -> Line {
    Line {
        slope: -pt.p,
        intercept: pt.q,
    }
}

/// Inverse of [`dual_of_point`]: recovers `(p, q)` from its dual line.
pub fn point_of_dual_line(l: Line) -> PlanePoint {
    PlanePoint {
        p: -l.slope,
        q: l.intercept,
    }
}

/// Inverse of [`dual_of_line`].
pub fn line_of_dual_point(pt: PlanePoint) -> Line {
    Line {
        slope: pt.p,
        intercept: pt.q,
    }
}

/// Exact incidence test `q == slope * p + intercept`.
pub fn incident(pt: PlanePoint, l: Line) -> bool {
    pt.q == l.slope * pt.p + l.intercept
}

/// Incidence within `tol`, scaled by the magnitude of the terms.
pub fn incident_within(pt: PlanePoint, l: Line, tol: f64) -> bool {
    let scale =
        pt.q.abs()
            .max((l.slope * pt.p).abs())
            .max(l.intercept.abs())
            .max(1.0);
    (pt.q - l.eval(pt.p)).abs() <= tol * scale
}

/// Vieta via duality: the roots `u, v` of `x^2 - p x + q` give `(u + v, u v)`.
pub fn vieta_from_roots(u: f64, v: f64) -> PlanePoint {
    PlanePoint { p: u + v, q: u * v }
}
