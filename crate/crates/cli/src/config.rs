use clap::Args;
use serde::Serialize;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-9;
pub const DEFAULT_SAMPLES: usize = 512;

/// Settings resolved as flags, then `ENVELOPE_*` variables, then defaults.
#[derive(Debug, Clone, Copy, PartialEq, Args, Serialize)]
pub struct Settings {
    /// Root refinement tolerance.
    #[arg(long, global = true, env = "ENVELOPE_TOL", default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    /// Relative band around the envelope treated as the boundary.
    #[arg(
        long,
        global = true,
        env = "ENVELOPE_BOUNDARY_TOL",
        default_value_t = DEFAULT_BOUNDARY_TOL
    )]
    pub boundary_tol: f64,

    /// Number of samples along curves.
    #[arg(long, global = true, env = "ENVELOPE_SAMPLES", default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            tol: DEFAULT_TOL,
            boundary_tol: DEFAULT_BOUNDARY_TOL,
            samples: DEFAULT_SAMPLES,
        }
    }
}
