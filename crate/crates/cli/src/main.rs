//! `rfl` — command-line front end of the radial fractional-calculus
//! laboratory. Subcommands expose the exponent arithmetic, the transform
//! self-tests, the decay and inequality probes, and the constrained
//! best-constant maximizer, with CSV/JSON outputs carrying the full
//! resolved configuration.
//!
//! Exit codes: 0 success, 1 check or probe failure, 2 parameter rejection.

mod commands;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "rfl", version, about = "radial fractional-calculus laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Exponent report: p0, p_rad, admissible p-interval, theta, sigma window
    Exponents {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: f64,
        #[arg(long = "S")]
        s_total: f64,
        /// delta for the sigma window; defaults to 1e-6 (d - alpha)
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
    /// The p0(S) curve for d = 5, r = 2 as CSV
    Figure1 {
        #[arg(long, default_value_t = 2.6)]
        s_min: f64,
        #[arg(long, default_value_t = 12.0)]
        s_max: f64,
        /// number of intervals; the output has steps + 1 rows
        #[arg(long, default_value_t = 200)]
        steps: usize,
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
    /// Transform fidelity checks: self-duality, Parseval, multiplier
    /// identity, Riesz oracle cross-check
    Selftest {
        /// grid size; defaults to RFL_GRID_N or 2048
        #[arg(long = "N")]
        n: Option<usize>,
        /// dimensions to check
        #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3, 5])]
        dims: Vec<u32>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Normalize a profile and fit its tail decay exponent
    Decay {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        s: f64,
        /// profile name: gaussian | ball | ring | power-tail | smoothed-annulus
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 8.0)]
        window_lo: f64,
        #[arg(long, default_value_t = 200.0)]
        window_hi: f64,
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
    /// Inequality probes over parameter ladders
    Probes {
        /// scaling | ball | weighted-w | decay-integral | kernel-decay | commutator | highfreq
        #[arg(long)]
        name: String,
        #[arg(long, default_value = "gaussian")]
        input: String,
        #[arg(long, default_value_t = 5)]
        d: u32,
        #[arg(long, default_value_t = 3.0)]
        alpha: f64,
        #[arg(long, default_value_t = 2.0)]
        q: f64,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        /// ball radius for the weighted-w probe
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// side for the weighted-w probe: exterior | interior
        #[arg(long, default_value = "exterior")]
        side: String,
        /// kernel decay exponent for the kernel-decay probe
        #[arg(long, default_value_t = 6.0)]
        gamma: f64,
        /// weight power for the kernel-decay probe
        #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
        b: f64,
        /// derivative order for the commutator probe
        #[arg(long, default_value_t = 1.2)]
        r_ord: f64,
        /// regularity for the high-frequency probe
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
    /// Constrained best-constant maximizer
    Maximize {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: f64,
        #[arg(long = "S")]
        s_total: f64,
        #[arg(long, default_value_t = 2)]
        restarts: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 5000)]
        iters: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// run the random-search oracle with this many samples (0 = skip)
        #[arg(long, default_value_t = 0)]
        oracle_samples: usize,
        /// write the final profile as CSV here
        #[arg(long)]
        profile_out: Option<std::path::PathBuf>,
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_parameter_rejection() {
                2
            } else {
                1
            }
        }
    };
    std::process::exit(code);
}
