//! Grid-based root counting, independent of the envelope classification.

use crate::solver::EquationParams;

/// Smallest grid accepted by [`brute_force_count`].
pub const MIN_GRID: usize = 1000;

/// Relative threshold on `|g(x_c)|` for a tangential touch at a critical point.
const TOUCH_TOL: f64 = 1e-9;

/// Counts distinct real roots of `x^n - p x + q` on `[-B, B]`,
/// `B = 1 + max(|p|, |q|)`, from sign changes on a uniform grid of `grid`
/// cells (at least [`MIN_GRID`]).
///
/// The critical points of `g` are added as grid nodes, so each cell lies in
/// one monotone piece. A critical point where `|g|` is below a term-scaled
/// threshold counts as a single touching root and absorbs the sign changes
/// on either side of it.
pub fn brute_force_count(params: EquationParams, grid: usize) -> usize {
    let grid = grid.max(MIN_GRID);
    let EquationParams { n, p, q } = params;
    let g = |x: f64| x.powi(n as i32) - p * x + q;
    let bound = 1.0 + p.abs().max(q.abs());

    // g'(x) = 0  <=>  x^(n-1) = p/n
    let ratio = p / n as f64;
    let mut critical = Vec::new();
    if n % 2 == 0 {
        critical.push(ratio.abs().powf(1.0 / (n - 1) as f64).copysign(ratio));
    } else if ratio > 0.0 {
        let r = ratio.powf(1.0 / (n - 1) as f64);
        critical.push(-r);
        critical.push(r);
    }

    let mut nodes: Vec<(f64, bool)> = (0..=grid)
        .map(|i| (-bound + 2.0 * bound * i as f64 / grid as f64, false))
        .collect();
    nodes.extend(critical.iter().map(|&c| (c, true)));
    nodes.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut count = 0;
    let mut last_sign = 0.0;
    let mut in_zero = false;
    for (x, is_critical) in nodes {
        let gx = g(x);
        let scale = 1f64.max((p * x).abs()).max(x.abs().powi(n as i32));
        let zero_like = gx == 0.0 || (is_critical && gx.abs() <= TOUCH_TOL * scale);
        if zero_like {
            if !in_zero {
                count += 1;
                in_zero = true;
            }
            continue;
        }
        let sign = gx.signum();
        if in_zero {
            in_zero = false;
        } else if last_sign != 0.0 && sign != last_sign {
            count += 1;
        }
        last_sign = sign;
    }
    count
}
