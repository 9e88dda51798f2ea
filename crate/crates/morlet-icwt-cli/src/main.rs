//! `micwt`: continuous Morlet wavelet analysis from the command line.
//!
//! Subcommands: `synth` (reference signal generators), `transform` (signal
//! CSV -> scalogram files), `invert` (scalogram -> signal, optionally
//! restricted to a scale-shift rectangle and/or a modulus threshold), and
//! `ridge` (per-shift modulus maxima).
//!
//! Exit codes: 0 success, 2 invalid input or configuration, 3 numerical
//! failure (the pipeline produced NaN or infinity). Every error prints
//! `error[CODE]: message` on stderr with a stable CODE.

mod commands;
mod config;
mod error;
mod io;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use config::{region_from_flags, BoundaryMode, RunConfig};

#[derive(Parser)]
#[command(name = "micwt", version, about = "Morlet wavelet transform, exact inverse, and component extraction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated reference signal as a `t,value` CSV
    Synth {
        #[command(subcommand)]
        generator: Generator,
    },
    /// Transform a signal CSV into scalogram files
    /// (`<prefix>.meta.json`, `<prefix>.w.csv`, `<prefix>.abs.csv`)
    Transform {
        /// Input signal CSV with header `t,value`
        input: PathBuf,
        /// Output path prefix for the three scalogram files
        #[arg(long)]
        out_prefix: PathBuf,
        /// Central frequency of the wavelet
        #[arg(long, default_value_t = std::f64::consts::TAU)]
        omega0: f64,
        /// Smallest scale of the grid
        #[arg(long, default_value_t = 0.0)]
        a_min: f64,
        /// Largest scale of the grid
        #[arg(long, default_value_t = 0.2)]
        a_max: f64,
        /// Number of scales (uniformly spaced)
        #[arg(long, default_value_t = 51)]
        a_count: usize,
        /// Boundary handling: reflect (extend + crop) or periodic
        #[arg(long, value_enum, default_value_t = BoundaryMode::Reflect)]
        boundary: BoundaryMode,
        /// Compatibility frequency normalization 2*pi/((N-1)*dt) instead of
        /// the exact DFT spacing 2*pi/(N*dt)
        #[arg(long)]
        compat_freq_norm: bool,
    },
    /// Reconstruct a signal from scalogram files
    Invert {
        /// Path prefix of the scalogram files written by `transform`
        prefix: PathBuf,
        /// Output signal CSV
        #[arg(long)]
        out: PathBuf,
        /// Keep only scalogram entries with modulus above this fraction of
        /// the global maximum (in [0, 1])
        #[arg(long)]
        threshold: Option<f64>,
        /// Lower shift bound of the reconstruction region
        #[arg(long)]
        b_lo: Option<f64>,
        /// Upper shift bound of the reconstruction region
        #[arg(long)]
        b_hi: Option<f64>,
        /// Lower scale bound of the reconstruction region
        #[arg(long)]
        a_lo: Option<f64>,
        /// Upper scale bound of the reconstruction region
        #[arg(long)]
        a_hi: Option<f64>,
    },
    /// Extract the per-shift modulus maximum as a `b,a_max,freq` CSV
    Ridge {
        /// Path prefix of the scalogram files written by `transform`
        prefix: PathBuf,
        /// Output CSV
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum Generator {
    /// Two-component reference signal on [0, 1]: a decaying 10 Hz
    /// oscillation plus a gated 20 Hz burst on [1/3, 2/3]
    Test7 {
        /// Number of samples
        #[arg(long, default_value_t = 512)]
        n: usize,
        /// Replace the sharp burst gate by a linear ramp this many samples
        /// wide (0 = sharp indicator)
        #[arg(long, default_value_t = 0.0)]
        taper_samples: f64,
        /// Output signal CSV
        #[arg(long)]
        out: PathBuf,
    },
    /// Pure cosine cos(2*pi*freq*t)
    Harmonic {
        /// Frequency in cycles per unit time
        #[arg(long)]
        freq: f64,
        /// Time span of the grid
        #[arg(long, default_value_t = 1.0)]
        duration: f64,
        /// Number of samples
        #[arg(long, default_value_t = 512)]
        n: usize,
        /// Output signal CSV
        #[arg(long)]
        out: PathBuf,
    },
    /// Fourier series described by a JSON file:
    /// {"period": 1.0, "terms": [{"harmonic": 3, "cos": 0.5, "sin": -0.2}]}
    /// (an empty file means the zero signal)
    Fourier {
        /// Series description (JSON)
        #[arg(long)]
        spec: PathBuf,
        /// Time span of the grid
        #[arg(long, default_value_t = 1.0)]
        duration: f64,
        /// Number of samples
        #[arg(long, default_value_t = 512)]
        n: usize,
        /// Output signal CSV
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> error::Result<()> {
    match cli.command {
        Command::Synth { generator } => match generator {
            Generator::Test7 {
                n,
                taper_samples,
                out,
            } => commands::cmd_synth_test7(n, taper_samples, &out),
            Generator::Harmonic {
                freq,
                duration,
                n,
                out,
            } => commands::cmd_synth_harmonic(freq, duration, n, &out),
            Generator::Fourier {
                spec,
                duration,
                n,
                out,
            } => commands::cmd_synth_fourier(&spec, duration, n, &out),
        },
        Command::Transform {
            input,
            out_prefix,
            omega0,
            a_min,
            a_max,
            a_count,
            boundary,
            compat_freq_norm,
        } => {
            let cfg = RunConfig {
                omega0,
                scale_min: a_min,
                scale_max: a_max,
                scale_count: a_count,
                boundary,
                compat_freq_norm,
                ..RunConfig::default()
            };
            commands::cmd_transform(&input, &out_prefix, &cfg)
        }
        Command::Invert {
            prefix,
            out,
            threshold,
            b_lo,
            b_hi,
            a_lo,
            a_hi,
        } => {
            let cfg = RunConfig {
                threshold,
                region: region_from_flags(b_lo, b_hi, a_lo, a_hi)?,
                ..RunConfig::default()
            };
            commands::cmd_invert(&prefix, &out, &cfg)
        }
        Command::Ridge { prefix, out } => commands::cmd_ridge(&prefix, &out),
    }
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("{e}");
        std::process::exit(e.exit_code);
    }
}
