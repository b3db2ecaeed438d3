//! Acceptance suite: one check per primary criterion, each printing a
//! single PASS/FAIL line. Exits non-zero if any check fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::{call, cli_json, number, CORPUS};
use envelope_cli::svg::{render, PlotKind, PlotSpec};
use envelope_cli::Settings;
use envelope_core::duality::{incident, line_of_dual_point, point_of_dual_line};
use envelope_core::solver::{
    discriminant_scale, RootCountGroup, DEFAULT_BOUNDARY_TOL, DEFAULT_TOL,
};
use envelope_core::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;

type Outcome<T> = std::result::Result<T, String>;
type Check = fn() -> Outcome<String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

fn params(n: u32, p: f64, q: f64) -> EquationParams {
    EquationParams::new(n, p, q).unwrap()
}

fn roots_within(n: u32, p: f64, q: f64, want: &[f64], tol: f64) -> Outcome<Vec<f64>> {
    let report = solve(params(n, p, q), DEFAULT_TOL).map_err(|e| e.to_string())?;
    let got = report.values();
    ensure!(got.len() == want.len(), "expected {want:?}, got {got:?}");
    for (g, w) in got.iter().zip(want) {
        ensure!((g - w).abs() <= tol, "expected {want:?}, got {got:?}");
    }
    Ok(got)
}

fn solve_example_one() -> Outcome<String> {
    let got = roots_within(2, 3.0, 2.0, &[1.0, 2.0], 1e-10)?;
    let prm = params(2, 3.0, 2.0);
    for _ in 0..100 {
        solve(prm, DEFAULT_TOL).unwrap();
    }
    let mut times: Vec<Duration> = (0..1001)
        .map(|_| {
            let t = Instant::now();
            std::hint::black_box(solve(std::hint::black_box(prm), DEFAULT_TOL).unwrap());
            t.elapsed()
        })
        .collect();
    times.sort();
    let median = times[times.len() / 2];
    ensure!(
        median < Duration::from_millis(1),
        "median runtime {median:?}"
    );
    Ok(format!("roots {got:?}, median runtime {median:?}"))
}

fn solve_example_two() -> Outcome<String> {
    let got = roots_within(2, 1.0, -2.0, &[-1.0, 2.0], 1e-10)?;
    Ok(format!("roots {got:?}"))
}

fn envelope_closed_forms() -> Outcome<String> {
    let mut worst: f64 = 0.0;
    let n2 = EnvelopeSpec::plus(2).unwrap();
    for i in 0..100 {
        let p = -10.0 + 20.0 * i as f64 / 99.0;
        let want = p * p / 4.0;
        let got = envelope_value(n2, p).unwrap();
        let err = if want == 0.0 {
            got.abs()
        } else {
            ((got - want) / want).abs()
        };
        worst = worst.max(err);
    }
    let plus = EnvelopeSpec::new(3, Branch::Plus).unwrap();
    let minus = EnvelopeSpec::new(3, Branch::Minus).unwrap();
    for i in 0..100 {
        let p = 10.0 * i as f64 / 99.0;
        let t = p / 3.0;
        let want = 2.0 * t * t.sqrt();
        for (spec, sign) in [(plus, 1.0), (minus, -1.0)] {
            let got = envelope_value(spec, p).unwrap();
            let err = if want == 0.0 {
                got.abs()
            } else {
                ((got - sign * want) / want).abs()
            };
            worst = worst.max(err);
        }
    }
    ensure!(worst <= 1e-14, "max relative error {worst:e}");
    Ok(format!("max relative error {worst:e} over 300 values"))
}

fn numeric_envelope_matches() -> Outcome<String> {
    let mut worst: f64 = 0.0;
    let mut worst_rel: f64 = 0.0;
    let mut cases = 0;
    for n in 2..=8u32 {
        let family = MonomialFamily::new(n).unwrap();
        for i in -12..=12 {
            let x = i as f64 * 0.25;
            let got = numeric_envelope(&family, x, 0.5, 6).map_err(|e| e.to_string())?;
            let want = n as f64 * x.powi(n as i32 - 1);
            let err = (got.p - want).abs();
            ensure!(
                err <= 1e-8,
                "n={n} x={x}: {} vs {want} (error {err:e})",
                got.p
            );
            worst = worst.max(err);
            worst_rel = worst_rel.max(err / want.abs().max(1.0));
            cases += 1;
        }
    }
    Ok(format!(
        "{cases} cases, max abs error {worst:e}, max rel error {worst_rel:e}"
    ))
}

struct Sweep {
    points: usize,
    boundary: usize,
    oracle_mismatch: Vec<String>,
    boundary_mismatch: Vec<String>,
    sign_mismatch: Vec<String>,
    elapsed: Duration,
}

fn sweep() -> &'static Sweep {
    static SWEEP: std::sync::OnceLock<Sweep> = std::sync::OnceLock::new();
    SWEEP.get_or_init(|| {
        let start = Instant::now();
        let mut s = Sweep {
            points: 0,
            boundary: 0,
            oracle_mismatch: Vec::new(),
            boundary_mismatch: Vec::new(),
            sign_mismatch: Vec::new(),
            elapsed: Duration::ZERO,
        };
        for n in 2..=7u32 {
            for i in 0..41 {
                for j in 0..41 {
                    let prm = params(n, -5.0 + 0.25 * i as f64, -5.0 + 0.25 * j as f64);
                    let class = classify(prm, DEFAULT_BOUNDARY_TOL);
                    let d = discriminant(prm);
                    s.points += 1;
                    if d.abs() <= 1e-6 * discriminant_scale(prm) {
                        s.boundary += 1;
                        if class.regime.group() != RootCountGroup::Boundary {
                            s.boundary_mismatch
                                .push(format!("{prm:?} -> {:?}", class.regime));
                        }
                        continue;
                    }
                    let oracle = brute_force_count(prm, 20_000) as u32;
                    if oracle != class.distinct_count {
                        s.oracle_mismatch.push(format!(
                            "{prm:?}: oracle {oracle}, classify {}",
                            class.distinct_count
                        ));
                    }
                    let group = if d > 0.0 {
                        RootCountGroup::Maximal
                    } else {
                        RootCountGroup::Minimal
                    };
                    if class.regime.group() != group {
                        s.sign_mismatch
                            .push(format!("{prm:?}: D={d:e} but {:?}", class.regime));
                    }
                }
            }
        }
        s.elapsed = start.elapsed();
        s
    })
}

fn classification_sweep() -> Outcome<String> {
    let s = sweep();
    ensure!(
        s.oracle_mismatch.is_empty(),
        "oracle disagrees: {:?}",
        &s.oracle_mismatch[..s.oracle_mismatch.len().min(5)]
    );
    ensure!(
        s.boundary_mismatch.is_empty(),
        "boundary not flagged: {:?}",
        &s.boundary_mismatch[..s.boundary_mismatch.len().min(5)]
    );
    ensure!(
        s.elapsed < Duration::from_secs(30),
        "sweep took {:?}",
        s.elapsed
    );
    Ok(format!(
        "{} points ({} boundary) agree with the grid oracle in {:.2?}",
        s.points, s.boundary, s.elapsed
    ))
}

fn discriminant_equivalence() -> Outcome<String> {
    let s = sweep();
    ensure!(
        s.sign_mismatch.is_empty(),
        "sign disagrees: {:?}",
        &s.sign_mismatch[..s.sign_mismatch.len().min(5)]
    );
    ensure!(
        s.boundary_mismatch.is_empty(),
        "boundary not flagged: {:?}",
        &s.boundary_mismatch[..s.boundary_mismatch.len().min(5)]
    );
    Ok(format!(
        "sign of D matches the regime group on all {} points",
        s.points
    ))
}

fn vieta_property() -> Outcome<String> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (u, v): (f64, f64) = (rng.gen_range(-10.0..=10.0), rng.gen_range(-10.0..=10.0));
        let pq = vieta_from_roots(u, v);
        ensure!(pq.p == u + v && pq.q == u * v, "vieta map for ({u}, {v})");
        let meet = intersect_family_lines(2, u, v).map_err(|e| e.to_string())?;
        ensure!(meet == pq, "Q_{u} and Q_{v} meet at {meet:?}, not {pq:?}");
        let want = if u <= v { [u, v] } else { [v, u] };
        let got = solve(params(2, pq.p, pq.q), DEFAULT_TOL)
            .map_err(|e| e.to_string())?
            .values();
        ensure!(got.len() == 2, "({u}, {v}): got {got:?}");
        for (g, w) in got.iter().zip(want) {
            worst = worst.max((g - w).abs());
        }
        ensure!(worst <= 1e-9, "({u}, {v}): got {got:?}");
    }
    Ok(format!("1000 cases, max root error {worst:e}"))
}

fn duality_incidence() -> Outcome<String> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    // dyadic values keep every product and sum exact
    let mut dyadic = || rng.gen_range(-10_000i32..=10_000) as f64 / 1024.0;
    for _ in 0..1000 {
        let line = Line {
            slope: dyadic(),
            intercept: dyadic(),
        };
        let p = dyadic();
        let on = PlanePoint {
            p,
            q: line.slope * p + line.intercept,
        };
        let off = PlanePoint {
            p,
            q: on.q + dyadic().abs() + 1.0 / 1024.0,
        };
        ensure!(incident(on, line), "constructed point not on line");
        ensure!(
            incident(dual_of_line(line), dual_of_point(on)),
            "incidence lost for {on:?} {line:?}"
        );
        ensure!(
            !incident(dual_of_line(line), dual_of_point(off)),
            "incidence created for {off:?} {line:?}"
        );
        ensure!(
            point_of_dual_line(dual_of_point(on)) == on,
            "double dual of {on:?}"
        );
        ensure!(
            line_of_dual_point(dual_of_line(line)) == line,
            "double dual of {line:?}"
        );
    }
    Ok("1000 incident and 1000 non-incident pairs preserved exactly; double duals exact".into())
}

fn legendre_checks() -> Outcome<String> {
    for n in [2u32, 4, 6] {
        let spec = EnvelopeSpec::plus(n).unwrap();
        for i in -200..=200 {
            let p = i as f64 * 0.05;
            let a = legendre_monomial(n, p).map_err(|e| e.to_string())?;
            let b = envelope_value(spec, p).unwrap();
            ensure!(a.to_bits() == b.to_bits(), "n={n} p={p}: {a} vs {b}");
        }
    }

    let f = SampledFunction::from_fn(|x| x * x, -3.0, 3.0, 201).unwrap();
    let slopes: Vec<f64> = (0..=80).map(|i| -4.0 + 0.1 * i as f64).collect();
    let c = discrete_legendre(&f, &slopes).map_err(|e| e.to_string())?;
    let worst = c
        .slopes
        .iter()
        .zip(&c.values)
        .map(|(p, v)| (v - p * p / 4.0).abs())
        .fold(0.0, f64::max);
    ensure!(worst <= 5e-3, "discrete transform error {worst:e}");

    let mut ratios = Vec::new();
    for (f, lo, hi) in [
        (
            Box::new(|x: f64| x * x) as Box<dyn Fn(f64) -> f64>,
            -3.0,
            3.0,
        ),
        (Box::new(|x: f64| x.powi(4)), -2.0, 2.0),
    ] {
        let devs: Vec<f64> = [101, 201, 401, 801]
            .iter()
            .map(|&count| {
                let s = SampledFunction::from_fn(&f, lo, hi, count).unwrap();
                involution_check(&s, 1.0).unwrap().max_deviation
            })
            .collect();
        for w in devs.windows(2) {
            let r = w[0] / w[1];
            ensure!(r >= 3.0, "halving reduced deviation only {r:.2}x: {devs:?}");
            ratios.push(r);
        }
    }
    let min_ratio = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(format!(
        "bit-identical for n=2,4,6; x^2 transform error {worst:e}; min halving ratio {min_ratio:.2}"
    ))
}

fn depressed_cubic() -> Outcome<String> {
    let cubic = CubicGeneral {
        b: -6.0,
        c: 11.0,
        d: -6.0,
    };
    let d = depress_cubic(cubic).map_err(|e| e.to_string())?;
    ensure!(
        (d.params.p, d.params.q, d.shift) == (1.0, 0.0, -2.0),
        "got (p, q, shift) = ({}, {}, {})",
        d.params.p,
        d.params.q,
        d.shift
    );
    let roots = cubic.roots(DEFAULT_TOL).map_err(|e| e.to_string())?;
    let values: Vec<f64> = roots.iter().map(|r| r.value).collect();
    ensure!(values.len() == 3, "roots {values:?}");
    for (g, w) in values.iter().zip([1.0, 2.0, 3.0]) {
        ensure!((g - w).abs() <= 1e-8, "roots {values:?}");
    }
    Ok(format!("(1, 0, -2) exactly, roots {values:?}"))
}

fn golden_svg() -> Outcome<String> {
    let s = Settings::default();
    let spec = PlotSpec::new(PlotKind::TangentConstruction, 2).with_params(1.0, -2.0);
    let a = render(&spec, &s).map_err(|e| e.to_string())?;
    let b = render(&spec, &s).map_err(|e| e.to_string())?;
    ensure!(a == b, "two renders differ");
    let golden =
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/tangents_n2_p1_qm2.svg");
    let want = std::fs::read_to_string(&golden).map_err(|e| e.to_string())?;
    ensure!(a == want, "render differs from {}", golden.display());
    let tangents = a.matches("class=\"tangent\"").count();
    ensure!(tangents == 2, "{tangents} tangent elements");
    let env = render(&PlotSpec::new(PlotKind::Envelope, 3), &s).map_err(|e| e.to_string())?;
    let branches = env.matches("<path class=\"envelope-branch\"").count();
    ensure!(branches == 2, "{branches} branch paths for n=3");
    Ok(format!(
        "byte-identical to golden ({} bytes), 2 tangents, 2 branch paths",
        a.len()
    ))
}

fn api_parity() -> Outcome<String> {
    let runtime = tokio::runtime::Runtime::new().map_err(|e| e.to_string())?;
    runtime.block_on(async {
        let (status, health) = call("GET", "/api/health", "").await;
        ensure!(
            status.is_success() && health["ok"] == json!(true),
            "health: {status} {health}"
        );
        for (n, p, q) in CORPUS {
            let args = [
                "solve",
                "--n",
                &n.to_string(),
                "--p",
                &number(p),
                "--q",
                &number(q),
            ];
            let from_cli = cli_json(&args);
            let body = json!({"n": n, "p": p, "q": q}).to_string();
            let (status, resp) = call("POST", "/api/solve", &body).await;
            ensure!(status.is_success(), "n={n} p={p} q={q}: {status}");
            ensure!(
                from_cli == resp["payload"],
                "n={n} p={p} q={q}:\n{from_cli}\n{}",
                resp["payload"]
            );
        }
        Ok(format!("{} cases identical; health ok", CORPUS.len()))
    })
}

fn main() {
    let checks: [(&str, Check); 12] = [
        ("solve(2, 3, 2) = {1, 2} in under 1 ms", solve_example_one),
        ("solve(2, 1, -2) = {-1, 2}", solve_example_two),
        ("envelope closed forms", envelope_closed_forms),
        ("numeric envelope vs n x^(n-1)", numeric_envelope_matches),
        ("classification oracle sweep", classification_sweep),
        ("discriminant sign equivalence", discriminant_equivalence),
        ("Vieta property", vieta_property),
        ("duality incidence", duality_incidence),
        ("Legendre transform", legendre_checks),
        ("depressed cubic", depressed_cubic),
        ("golden SVG", golden_svg),
        ("API parity and health", api_parity),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in checks {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("{} passed, {failed} failed", checks.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
