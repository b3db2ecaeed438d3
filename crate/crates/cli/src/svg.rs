//! Deterministic SVG figures: the line family, the envelope, the tangent
//! construction for a point, and the pq/mn duality panes.
//!
//! Output depends only on the [`PlotSpec`]: coordinates are printed with six
//! decimals, elements are emitted in a fixed order, and family lines and
//! tangents are sorted by their parameter.

use std::fmt::Write;

use clap::ValueEnum;
use envelope_core::{envelope_touch_point, family_line, EnvelopeSpec, Line};
use serde::{Deserialize, Serialize};

use crate::config::Settings;
use crate::error::{CliError, CliResult};
use crate::format::coord;
use crate::payload::{tangents_op, EquationRequest, Tangent};

const MARGIN: f64 = 32.0;
const MIN_SAMPLES: usize = 16;
const MAX_FAMILY_LINES: usize = 10_000;
const RESCALE_STEP: f64 = 0.5;
const RESCALE_LIMIT: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum PlotKind {
    LineFamily,
    Envelope,
    TangentConstruction,
    Duality,
}

/// Family parameters `x = lo, lo + step, ..., hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyRange {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Default for FamilyRange {
    fn default() -> Self {
        FamilyRange {
            lo: -2.0,
            hi: 2.0,
            step: 0.25,
        }
    }
}

impl FamilyRange {
    pub fn values(&self) -> CliResult<Vec<f64>> {
        if !(self.lo <= self.hi && self.step > 0.0 && self.step.is_finite()) {
            return Err(CliError::InvalidRange(format!(
                "family [{}, {}] step {}",
                self.lo, self.hi, self.step
            )));
        }
        // tolerate round-off in (hi - lo) / step
        let count = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize + 1;
        if count > MAX_FAMILY_LINES {
            return Err(CliError::InvalidRange(format!(
                "{count} family lines requested"
            )));
        }
        Ok((0..count).map(|i| self.lo + self.step * i as f64).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotSpec {
    pub kind: PlotKind,
    pub n: u32,
    pub params: Option<(f64, f64)>,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub samples: usize,
    pub width: u32,
    pub height: u32,
    pub family: FamilyRange,
}

impl PlotSpec {
    pub fn new(kind: PlotKind, n: u32) -> Self {
        let width = if kind == PlotKind::Duality { 960 } else { 640 };
        PlotSpec {
            kind,
            n,
            params: None,
            x_range: (-5.0, 5.0),
            y_range: (-5.0, 5.0),
            samples: Settings::default().samples,
            width,
            height: 480,
            family: FamilyRange::default(),
        }
    }

    pub fn with_params(mut self, p: f64, q: f64) -> Self {
        self.params = Some((p, q));
        self
    }

    fn validate(&self) -> CliResult<()> {
        for (name, (lo, hi)) in [("x", self.x_range), ("y", self.y_range)] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(CliError::InvalidRange(format!(
                    "{name} range [{lo}, {hi}] is empty"
                )));
            }
        }
        if self.samples < MIN_SAMPLES {
            return Err(CliError::InvalidArgument(format!(
                "samples must be at least {MIN_SAMPLES}, got {}",
                self.samples
            )));
        }
        if self.width as f64 <= 4.0 * MARGIN || self.height as f64 <= 2.0 * MARGIN {
            return Err(CliError::InvalidArgument(format!(
                "canvas {}x{} is too small",
                self.width, self.height
            )));
        }
        let needs_point = matches!(self.kind, PlotKind::TangentConstruction | PlotKind::Duality);
        if needs_point && self.params.is_none() {
            return Err(CliError::InvalidArgument(
                "this plot kind needs a point (--p and --q)".into(),
            ));
        }
        Ok(())
    }
}

/// Maps plane coordinates into one rectangular pane of the canvas.
#[derive(Debug, Clone, Copy)]
struct Pane {
    id: &'static str,
    left: f64,
    top: f64,
    width: f64,
    height: f64,
    x_range: (f64, f64),
    y_range: (f64, f64),
}

impl Pane {
    fn px(&self, x: f64) -> f64 {
        self.left + (x - self.x_range.0) / (self.x_range.1 - self.x_range.0) * self.width
    }

    fn py(&self, y: f64) -> f64 {
        self.top + (self.y_range.1 - y) / (self.y_range.1 - self.y_range.0) * self.height
    }

    fn contains(&self, x: f64, y: f64) -> bool {
        let (x0, x1) = self.x_range;
        let (y0, y1) = self.y_range;
        x0 <= x && x <= x1 && y0 <= y && y <= y1
    }

    /// Endpoints of the visible part of `y = slope x + intercept`, falling
    /// back to the full x-range when the line misses the pane.
    fn segment(&self, l: Line) -> ((f64, f64), (f64, f64)) {
        let (mut a, mut b) = self.x_range;
        if l.slope != 0.0 {
            let u = (self.y_range.0 - l.intercept) / l.slope;
            let v = (self.y_range.1 - l.intercept) / l.slope;
            a = a.max(u.min(v));
            b = b.min(u.max(v));
        }
        if !(a < b) {
            (a, b) = self.x_range;
        }
        ((a, l.eval(a)), (b, l.eval(b)))
    }
}

struct Canvas {
    out: String,
}

impl Canvas {
    fn new(spec: &PlotSpec, title: &str) -> Self {
        let (w, h) = (spec.width, spec.height);
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
        );
        let _ = writeln!(out, "<title>{title}</title>");
        out.push_str(
            "<style>.axis{stroke:#444;stroke-width:1}.frame{fill:none;stroke:#bbb}\
             .family{stroke:#7a9cc6;stroke-width:1}.envelope-branch{fill:none;stroke:#c0392b;stroke-width:2}\
             .tangent{stroke:#27ae60;stroke-width:1.5}.dual-line{stroke:#8e44ad;stroke-width:1.5}\
             .dual-curve{fill:none;stroke:#c0392b;stroke-width:2}\
             text{font-family:sans-serif;font-size:12px}</style>\n",
        );
        let _ = writeln!(out, "<rect class=\"background\" x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"white\"/>");
        Canvas { out }
    }

    fn open_pane(&mut self, pane: &Pane, x_label: &str, y_label: &str) {
        let (l, t, w, h) = (
            coord(pane.left),
            coord(pane.top),
            coord(pane.width),
            coord(pane.height),
        );
        let id = pane.id;
        let _ = writeln!(
            self.out,
            "<defs><clipPath id=\"clip-{id}\"><rect x=\"{l}\" y=\"{t}\" width=\"{w}\" height=\"{h}\"/></clipPath></defs>"
        );
        let _ = writeln!(
            self.out,
            "<rect class=\"frame\" x=\"{l}\" y=\"{t}\" width=\"{w}\" height=\"{h}\"/>"
        );
        let _ = writeln!(
            self.out,
            "<g class=\"pane\" data-plane=\"{id}\" clip-path=\"url(#clip-{id})\">"
        );
        let (x0, x1) = pane.x_range;
        let (y0, y1) = pane.y_range;
        if y0 <= 0.0 && 0.0 <= y1 {
            self.line("axis", "", pane, (x0, 0.0), (x1, 0.0));
        }
        if x0 <= 0.0 && 0.0 <= x1 {
            self.line("axis", "", pane, (0.0, y0), (0.0, y1));
        }
        self.pending_labels(pane, x_label, y_label);
    }

    fn pending_labels(&mut self, pane: &Pane, x_label: &str, y_label: &str) {
        // axis names sit at the positive ends, inside the pane
        let x = pane.left + pane.width - 12.0;
        let y = pane
            .py(0.0)
            .clamp(pane.top + 14.0, pane.top + pane.height - 4.0)
            - 4.0;
        self.text("axis-label", x, y, x_label);
        let x = pane
            .px(0.0)
            .clamp(pane.left + 4.0, pane.left + pane.width - 14.0)
            + 4.0;
        self.text("axis-label", x, pane.top + 14.0, y_label);
    }

    fn close_pane(&mut self) {
        self.out.push_str("</g>\n");
    }

    fn line(&mut self, class: &str, data: &str, pane: &Pane, a: (f64, f64), b: (f64, f64)) {
        let _ = writeln!(
            self.out,
            "<line class=\"{class}\"{data} x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            coord(pane.px(a.0)),
            coord(pane.py(a.1)),
            coord(pane.px(b.0)),
            coord(pane.py(b.1)),
        );
    }

    fn plane_line(&mut self, class: &str, param: f64, pane: &Pane, l: Line) {
        let (a, b) = pane.segment(l);
        let data = format!(" data-x=\"{}\"", coord(param));
        self.line(class, &data, pane, a, b);
    }

    fn path(&mut self, class: &str, data: &str, pane: &Pane, points: &[(f64, f64)]) {
        let mut d = String::new();
        for (i, &(x, y)) in points.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            let _ = write!(
                d,
                "{}{cmd}{} {}",
                if i == 0 { "" } else { " " },
                coord(pane.px(x)),
                coord(pane.py(y))
            );
        }
        let _ = writeln!(self.out, "<path class=\"{class}\"{data} d=\"{d}\"/>");
    }

    fn circle(&mut self, class: &str, pane: &Pane, (x, y): (f64, f64), r: f64) {
        let _ = writeln!(
            self.out,
            "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            coord(pane.px(x)),
            coord(pane.py(y)),
            coord(r)
        );
    }

    fn text(&mut self, class: &str, x: f64, y: f64, body: &str) {
        let _ = writeln!(
            self.out,
            "<text class=\"{class}\" x=\"{}\" y=\"{}\">{body}</text>",
            coord(x),
            coord(y)
        );
    }

    fn finish(mut self) -> String {
        self.out.push_str("</svg>\n");
        self.out
    }
}

/// Short label form: at most three decimals, trailing zeros trimmed.
fn label(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    match s {
        "-0" | "" => "0".to_string(),
        _ => s.to_string(),
    }
}

fn uniform(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let last = (count - 1) as f64;
    (0..count)
        .map(|i| {
            if i + 1 == count {
                hi
            } else {
                lo + (hi - lo) * (i as f64 / last)
            }
        })
        .collect()
}

fn single_pane(spec: &PlotSpec, id: &'static str) -> Pane {
    Pane {
        id,
        left: MARGIN,
        top: MARGIN,
        width: spec.width as f64 - 2.0 * MARGIN,
        height: spec.height as f64 - 2.0 * MARGIN,
        x_range: spec.x_range,
        y_range: spec.y_range,
    }
}

fn draw_family(c: &mut Canvas, pane: &Pane, spec: &PlotSpec) -> CliResult<()> {
    let mut xs = spec.family.values()?;
    xs.sort_by(f64::total_cmp);
    for x in xs {
        c.plane_line("family", x, pane, family_line(spec.n, x)?);
    }
    Ok(())
}

fn draw_envelope(c: &mut Canvas, pane: &Pane, spec: &PlotSpec) -> CliResult<()> {
    for branch in EnvelopeSpec::branches(spec.n)? {
        let lo = if spec.n % 2 == 1 {
            pane.x_range.0.max(0.0)
        } else {
            pane.x_range.0
        };
        let hi = pane.x_range.1;
        if !(lo < hi) {
            continue;
        }
        let points = uniform(lo, hi, spec.samples)
            .into_iter()
            .map(|p| Ok((p, branch.value(p)?)))
            .collect::<CliResult<Vec<_>>>()?;
        let name = match branch.branch() {
            envelope_core::Branch::Plus => "plus",
            envelope_core::Branch::Minus => "minus",
        };
        c.path(
            "envelope-branch",
            &format!(" data-branch=\"{name}\""),
            pane,
            &points,
        );
    }
    Ok(())
}

/// Marks the rescaling `x = (p/n)^(1/(n-1))` at the touch points of a few
/// family members.
fn draw_rescale_labels(c: &mut Canvas, pane: &Pane, n: u32) -> CliResult<()> {
    let steps = (RESCALE_LIMIT / RESCALE_STEP) as i32;
    for k in -steps..=steps {
        let x = k as f64 * RESCALE_STEP;
        let t = envelope_touch_point(n, x)?;
        if !pane.contains(t.p, t.q) {
            continue;
        }
        c.circle("rescale-tick", pane, (t.p, t.q), 2.0);
        c.text(
            "rescale-label",
            pane.px(t.p) + 4.0,
            pane.py(t.q) + 14.0,
            &format!("x={}", label(x)),
        );
    }
    Ok(())
}

fn draw_tangents(c: &mut Canvas, pane: &Pane, tangents: &[Tangent], point: (f64, f64)) {
    for t in tangents {
        c.plane_line(
            "tangent",
            t.x,
            pane,
            Line {
                slope: t.slope,
                intercept: t.intercept,
            },
        );
    }
    for t in tangents {
        c.circle("touch-point", pane, (t.touch.p, t.touch.q), 4.0);
        c.text(
            "root-label",
            pane.px(t.touch.p) + 6.0,
            pane.py(t.touch.q) - 6.0,
            &format!("x = {}", label(t.x)),
        );
    }
    c.circle("query-point", pane, point, 5.0);
    c.text(
        "point-label",
        pane.px(point.0) + 8.0,
        pane.py(point.1) + 16.0,
        &format!("({}, {})", label(point.0), label(point.1)),
    );
}

fn solve_tangents(spec: &PlotSpec, settings: &Settings) -> CliResult<((f64, f64), Vec<Tangent>)> {
    let (p, q) = spec.params.expect("validated");
    let mut tangents = tangents_op(&EquationRequest::new(spec.n, p, q), settings)?.tangents;
    tangents.sort_by(|a, b| a.x.total_cmp(&b.x));
    Ok(((p, q), tangents))
}

/// Renders the figure described by `spec`.
pub fn render(spec: &PlotSpec, settings: &Settings) -> CliResult<String> {
    spec.validate()?;
    EnvelopeSpec::plus(spec.n)?;
    let n = spec.n;
    match spec.kind {
        PlotKind::LineFamily => {
            let mut c = Canvas::new(spec, &format!("Lines Q_x for n = {n}"));
            let pane = single_pane(spec, "pq");
            c.open_pane(&pane, "p", "q");
            draw_family(&mut c, &pane, spec)?;
            c.close_pane();
            Ok(c.finish())
        }
        PlotKind::Envelope => {
            let mut c = Canvas::new(spec, &format!("Envelope for n = {n}"));
            let pane = single_pane(spec, "pq");
            c.open_pane(&pane, "p", "q");
            draw_envelope(&mut c, &pane, spec)?;
            draw_rescale_labels(&mut c, &pane, n)?;
            c.close_pane();
            Ok(c.finish())
        }
        PlotKind::TangentConstruction => {
            let (point, tangents) = solve_tangents(spec, settings)?;
            let title = format!(
                "Tangents for n = {n} through ({}, {})",
                label(point.0),
                label(point.1)
            );
            let mut c = Canvas::new(spec, &title);
            let pane = single_pane(spec, "pq");
            c.open_pane(&pane, "p", "q");
            draw_envelope(&mut c, &pane, spec)?;
            draw_rescale_labels(&mut c, &pane, n)?;
            draw_tangents(&mut c, &pane, &tangents, point);
            c.close_pane();
            Ok(c.finish())
        }
        PlotKind::Duality => {
            let (point, tangents) = solve_tangents(spec, settings)?;
            let title = format!(
                "Duality for n = {n} at ({}, {})",
                label(point.0),
                label(point.1)
            );
            let mut c = Canvas::new(spec, &title);
            let half = spec.width as f64 / 2.0;
            let left = Pane {
                width: half - 2.0 * MARGIN,
                ..single_pane(spec, "pq")
            };
            c.open_pane(&left, "p", "q");
            draw_envelope(&mut c, &left, spec)?;
            draw_tangents(&mut c, &left, &tangents, point);
            c.close_pane();

            let right = Pane {
                id: "mn",
                left: half + MARGIN,
                x_range: dual_m_range(&tangents),
                y_range: dual_n_range(&tangents, point, n),
                ..left
            };
            c.open_pane(&right, "m", "n");
            let ms = uniform(right.x_range.0, right.x_range.1, spec.samples);
            let curve: Vec<(f64, f64)> = ms.iter().map(|&m| (m, -m.powi(n as i32))).collect();
            c.path("dual-curve", "", &right, &curve);
            let dual = Line {
                slope: -point.0,
                intercept: point.1,
            };
            let (a, b) = right.segment(dual);
            c.line("dual-line", "", &right, a, b);
            for t in &tangents {
                c.circle("dual-point", &right, (t.slope, t.intercept), 4.0);
                c.text(
                    "dual-label",
                    right.px(t.slope) + 6.0,
                    right.py(t.intercept) - 6.0,
                    &format!("({}, {})", label(t.slope), label(t.intercept)),
                );
            }
            c.close_pane();
            Ok(c.finish())
        }
    }
}

fn dual_m_range(tangents: &[Tangent]) -> (f64, f64) {
    let m = tangents.iter().map(|t| t.slope.abs()).fold(0.0, f64::max);
    let half = (1.25 * m).max(2.0);
    (-half, half)
}

fn dual_n_range(tangents: &[Tangent], point: (f64, f64), n: u32) -> (f64, f64) {
    let extent = tangents
        .iter()
        .map(|t| t.intercept.abs())
        .fold(point.1.abs(), f64::max)
        .max(dual_m_range(tangents).1.powi(n as i32).min(8.0));
    let half = (1.25 * extent).max(2.0);
    (-half, half)
}
