//! The four operations behind the subcommands: synthesize, transform,
//! invert, ridge. Each reads/writes files via [`crate::io`] and maps every
//! failure to a stable error code.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use morlet_icwt::{
    analytic_signal, cwt_forward_with, icwt_full, icwt_masked, icwt_region, reflect_extend,
    remove_mean, resample_pow2, ridge_extract, synth_fourier, synth_test_signal,
    synth_test_signal_tapered, threshold_mask, FourierSeriesSpec, FourierTerm, FrequencyNorm,
    MorletParams, RealSignal, RidgePoint, ScalogramMask, TimeGrid,
};

use crate::config::{BoundaryMode, RunConfig};
use crate::error::{CliError, Result};
use crate::io;

/// A uniform grid of `n` samples spanning `[0, duration]`.
fn span_grid(duration: f64, n: usize) -> Result<TimeGrid> {
    if n < 4 {
        return Err(CliError::validation(
            "E_SAMPLES",
            format!("--n must be at least 4, got {n}"),
        ));
    }
    if !(duration.is_finite() && duration > 0.0) {
        return Err(CliError::validation(
            "E_DURATION",
            format!("--duration must be finite and positive, got {duration}"),
        ));
    }
    Ok(TimeGrid::new(0.0, duration / (n - 1) as f64, n)?)
}

pub fn cmd_synth_test7(n: usize, taper_samples: f64, out: &Path) -> Result<()> {
    if !(taper_samples.is_finite() && taper_samples >= 0.0) {
        return Err(CliError::validation(
            "E_TAPER",
            format!("--taper-samples must be finite and non-negative, got {taper_samples}"),
        ));
    }
    let grid = span_grid(1.0, n)?;
    let signal = if taper_samples == 0.0 {
        synth_test_signal(&grid)
    } else {
        synth_test_signal_tapered(&grid, taper_samples * grid.dt())
    };
    io::write_signal_csv(out, &signal)
}

pub fn cmd_synth_harmonic(freq: f64, duration: f64, n: usize, out: &Path) -> Result<()> {
    if !freq.is_finite() {
        return Err(CliError::validation(
            "E_FREQ",
            format!("--freq must be finite, got {freq}"),
        ));
    }
    let grid = span_grid(duration, n)?;
    let omega = std::f64::consts::TAU * freq;
    let values = grid.times().map(|t| (omega * t).cos()).collect();
    io::write_signal_csv(out, &RealSignal::new(grid, values)?)
}

/// On-disk Fourier series description.
#[derive(Deserialize)]
struct SpecFile {
    period: f64,
    #[serde(default)]
    terms: Vec<TermFile>,
}

#[derive(Deserialize)]
struct TermFile {
    harmonic: u32,
    #[serde(default)]
    cos: f64,
    #[serde(default)]
    sin: f64,
}

pub fn cmd_synth_fourier(spec_path: &Path, duration: f64, n: usize, out: &Path) -> Result<()> {
    let text = std::fs::read_to_string(spec_path)?;
    // An empty spec file means the empty series: all-zero output.
    let spec = if text.trim().is_empty() {
        FourierSeriesSpec::new(1.0, Vec::new()).expect("empty series is valid")
    } else {
        let file: SpecFile = serde_json::from_str(&text).map_err(|e| {
            CliError::validation("E_SPEC", format!("{}: {}", spec_path.display(), e))
        })?;
        let terms = file
            .terms
            .iter()
            .map(|t| FourierTerm {
                harmonic: t.harmonic,
                cos_coeff: t.cos,
                sin_coeff: t.sin,
            })
            .collect();
        FourierSeriesSpec::new(file.period, terms)
            .map_err(|e| CliError::validation("E_SPEC", e.to_string()))?
    };
    let grid = span_grid(duration, n)?;
    io::write_signal_csv(out, &synth_fourier(&spec, &grid))
}

pub fn cmd_transform(input: &Path, out_prefix: &Path, cfg: &RunConfig) -> Result<()> {
    cfg.validate()?;
    let params = MorletParams::new(cfg.omega0)?;
    let scales = cfg.scale_grid()?;
    let norm = if cfg.compat_freq_norm {
        FrequencyNorm::SampleSpan
    } else {
        FrequencyNorm::DftBin
    };

    let signal = io::read_signal_csv(input)?;
    let resampled = resample_pow2(&remove_mean(&signal));
    let sg = match cfg.boundary {
        BoundaryMode::Reflect => {
            let fa = analytic_signal(&reflect_extend(&resampled)?)?;
            cwt_forward_with(&fa, &scales, &params, norm)?.crop_center()?
        }
        BoundaryMode::Periodic => {
            let fa = analytic_signal(&resampled)?;
            cwt_forward_with(&fa, &scales, &params, norm)?
        }
    };
    io::write_scalogram(out_prefix, &sg, cfg.boundary.as_str())
}

pub fn cmd_invert(prefix: &Path, out: &Path, cfg: &RunConfig) -> Result<()> {
    cfg.validate()?;
    let sg = io::read_scalogram(prefix)?;
    let reconstructed = match (&cfg.region, cfg.threshold) {
        (None, None) => icwt_full(&sg)?,
        (Some(region), None) => icwt_region(&sg, region)?,
        (None, Some(level)) => icwt_masked(&sg, &threshold_mask(&sg, level)?)?,
        (Some(region), Some(level)) => {
            let mask = threshold_mask(&sg, level)?
                .intersect(&ScalogramMask::from_region(&sg, region)?)?;
            icwt_masked(&sg, &mask)?
        }
    };
    io::write_signal_csv(out, &reconstructed)
}

pub fn cmd_ridge(prefix: &Path, out: &Path) -> Result<()> {
    let sg = io::read_scalogram(prefix)?;
    let points = ridge_extract(&sg);
    let mut csv = String::with_capacity(points.len() * 64 + 16);
    csv.push_str("b,a_max,freq\n");
    for (b, point) in sg.grid().times().zip(&points) {
        match point {
            RidgePoint::NoRidge => {
                let _ = writeln!(csv, "{b:.16e},no-ridge,no-ridge");
            }
            RidgePoint::Ridge {
                scale,
                frequency: None,
            } => {
                let _ = writeln!(csv, "{b:.16e},{scale:.16e},undefined");
            }
            RidgePoint::Ridge {
                scale,
                frequency: Some(freq),
            } => {
                let _ = writeln!(csv, "{b:.16e},{scale:.16e},{freq:.16e}");
            }
        }
    }
    std::fs::write(out, csv)?;
    Ok(())
}
