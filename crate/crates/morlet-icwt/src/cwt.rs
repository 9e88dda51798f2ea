//! Forward continuous Morlet wavelet transform in the amplitude norm,
//! computed per scale as a Gaussian window on the signal spectrum, plus
//! ridge extraction.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Result, WaveletError};
use crate::signal::{fft_forward, fft_inverse, AnalyticSignal, TimeGrid};

/// Morlet wavelet parameter: the central frequency `omega0 > 0` of
/// `psi(x) = exp(i*omega0*x - x^2/2)` in radians per unit time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorletParams {
    omega0: f64,
}

impl MorletParams {
    /// Creates parameters with the given central frequency.
    pub fn new(omega0: f64) -> Result<Self> {
        if !(omega0.is_finite() && omega0 > 0.0) {
            return Err(WaveletError::InvalidParameter {
                name: "omega0",
                reason: format!("central frequency must be finite and positive, got {omega0}"),
            });
        }
        Ok(Self { omega0 })
    }

    /// The central frequency.
    pub fn omega0(&self) -> f64 {
        self.omega0
    }
}

impl Default for MorletParams {
    /// `omega0 = 2*pi`, which makes the ridge scale of a harmonic equal the
    /// inverse of its frequency in cycles per unit time.
    fn default() -> Self {
        Self {
            omega0: std::f64::consts::TAU,
        }
    }
}

/// Strictly increasing, non-negative scale values: the integration
/// abscissae of the inverse transform.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleGrid {
    scales: Vec<f64>,
}

impl ScaleGrid {
    /// Creates a grid from explicit scale values (at least two, finite,
    /// non-negative, strictly increasing). Spacing may be non-uniform.
    pub fn new(scales: Vec<f64>) -> Result<Self> {
        if scales.len() < 2 {
            return Err(WaveletError::InvalidScales {
                reason: format!("need at least 2 scales, got {}", scales.len()),
            });
        }
        if let Some(i) = scales.iter().position(|a| !a.is_finite()) {
            return Err(WaveletError::InvalidScales {
                reason: format!("non-finite scale {} at index {i}", scales[i]),
            });
        }
        if scales[0] < 0.0 {
            return Err(WaveletError::InvalidScales {
                reason: format!("scales must be non-negative, got {}", scales[0]),
            });
        }
        if let Some(i) = scales.windows(2).position(|w| w[0] >= w[1]) {
            return Err(WaveletError::InvalidScales {
                reason: format!(
                    "scales must be strictly increasing, but scale[{}] = {} >= scale[{}] = {}",
                    i,
                    scales[i],
                    i + 1,
                    scales[i + 1]
                ),
            });
        }
        Ok(Self { scales })
    }

    /// Creates `count` uniformly spaced scales from `lo` to `hi` inclusive,
    /// with the last value landing on `hi` exactly.
    pub fn linspace(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(WaveletError::InvalidScales {
                reason: format!("need at least 2 scales, got {count}"),
            });
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(WaveletError::InvalidScales {
                reason: format!("invalid range [{lo}, {hi}]"),
            });
        }
        let step = (hi - lo) / (count - 1) as f64;
        let mut scales: Vec<f64> = (0..count).map(|i| lo + i as f64 * step).collect();
        scales[count - 1] = hi;
        Self::new(scales)
    }

    /// The scale values.
    pub fn values(&self) -> &[f64] {
        &self.scales
    }

    /// Number of scales.
    pub fn len(&self) -> usize {
        self.scales.len()
    }

    /// Always false: grids hold at least two scales.
    pub fn is_empty(&self) -> bool {
        self.scales.is_empty()
    }
}

/// Complex transform matrix `w[scale][shift]` over a scale and time grid,
/// together with the central frequency it was computed with.
#[derive(Debug, Clone, PartialEq)]
pub struct Scalogram {
    scales: ScaleGrid,
    grid: TimeGrid,
    omega0: f64,
    w: Vec<Vec<Complex64>>,
}

impl Scalogram {
    /// Creates a scalogram, checking dimensions and finiteness.
    pub fn new(
        scales: ScaleGrid,
        grid: TimeGrid,
        omega0: f64,
        w: Vec<Vec<Complex64>>,
    ) -> Result<Self> {
        if w.len() != scales.len() {
            return Err(WaveletError::DimensionMismatch {
                reason: format!("{} matrix rows for {} scales", w.len(), scales.len()),
            });
        }
        if let Some(i) = w.iter().position(|row| row.len() != grid.n()) {
            return Err(WaveletError::DimensionMismatch {
                reason: format!(
                    "row {i} has {} columns for a grid of {} samples",
                    w[i].len(),
                    grid.n()
                ),
            });
        }
        for (i, row) in w.iter().enumerate() {
            if let Some(j) = row.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
                return Err(WaveletError::NonFinite {
                    reason: format!("scalogram entry at scale row {i}, column {j}"),
                });
            }
        }
        Ok(Self {
            scales,
            grid,
            omega0,
            w,
        })
    }

    /// The scale grid.
    pub fn scales(&self) -> &ScaleGrid {
        &self.scales
    }

    /// The shift (time) grid.
    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    /// The central frequency used by the forward transform.
    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    /// The matrix rows, one per scale.
    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.w
    }

    /// Largest modulus over all entries.
    pub fn max_modulus(&self) -> f64 {
        self.w
            .iter()
            .flat_map(|row| row.iter())
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Keeps the middle half of the columns (for even column counts),
    /// shifting the time grid accordingly; the scale axis is untouched.
    /// Undoes the column range added by extending the input signal.
    pub fn crop_center(&self) -> Result<Self> {
        let len = self.grid.n();
        if !len.is_multiple_of(2) {
            return Err(WaveletError::InvalidSignal {
                reason: format!("center crop requires an even column count, got {len}"),
            });
        }
        let keep = len / 2;
        let start = len / 4;
        let w = self
            .w
            .iter()
            .map(|row| row[start..start + keep].to_vec())
            .collect();
        let grid = TimeGrid::new(self.grid.time_at(start), self.grid.dt(), keep)?;
        Ok(Self {
            scales: self.scales.clone(),
            grid,
            omega0: self.omega0,
            w,
        })
    }
}

/// How the discrete angular-frequency axis is normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FrequencyNorm {
    /// Exact DFT bin spacing `2*pi / (n*dt)`; harmonics that lie on DFT
    /// bins match the closed-form transform to near machine precision.
    #[default]
    DftBin,
    /// Spacing `2*pi / ((n-1)*dt)` derived from the sampled span
    /// `t_end - t_start`, off by a factor `n/(n-1)` from the DFT bins.
    /// Provided for compatibility with tools normalizing by the span.
    SampleSpan,
}

/// Angular frequencies of the DFT bins in FFT order
/// `[0, 1, .., n/2, -n/2+1, .., -1] * spacing` for an even sample count.
pub fn frequency_grid(grid: &TimeGrid) -> Result<Vec<f64>> {
    frequency_grid_with(grid, FrequencyNorm::DftBin)
}

/// [`frequency_grid`] with an explicit normalization choice.
pub fn frequency_grid_with(grid: &TimeGrid, norm: FrequencyNorm) -> Result<Vec<f64>> {
    let n = grid.n();
    if !n.is_multiple_of(2) {
        return Err(WaveletError::InvalidGrid {
            reason: format!("frequency grid requires an even sample count, got {n}"),
        });
    }
    let spacing = match norm {
        FrequencyNorm::DftBin => std::f64::consts::TAU / (n as f64 * grid.dt()),
        FrequencyNorm::SampleSpan => std::f64::consts::TAU / ((n - 1) as f64 * grid.dt()),
    };
    let half = n as i64 / 2;
    Ok((0..n as i64)
        .map(|k| if k <= half { k } else { k - n as i64 })
        .map(|k| k as f64 * spacing)
        .collect())
}

/// Closed-form modulus of the transform of a unit harmonic of angular
/// frequency `omega` at scale `a`: `exp(-(a*omega - omega0)^2 / 2)`.
/// Equals 1 exactly on the ridge `a = omega0/omega`.
pub fn harmonic_response(a: f64, omega: f64, omega0: f64) -> f64 {
    let arg = a * omega - omega0;
    (-arg * arg / 2.0).exp()
}

/// Forward transform: one row per scale, computed by windowing the signal
/// spectrum with `exp(-(a*omega - omega0)^2/2)` on the DFT frequency grid
/// and transforming back. The `a = 0` row is the exact limit
/// `fa * exp(-omega0^2/2)`.
pub fn cwt_forward(
    fa: &AnalyticSignal,
    scales: &ScaleGrid,
    params: &MorletParams,
) -> Result<Scalogram> {
    cwt_forward_with(fa, scales, params, FrequencyNorm::DftBin)
}

/// [`cwt_forward`] with an explicit frequency normalization choice.
pub fn cwt_forward_with(
    fa: &AnalyticSignal,
    scales: &ScaleGrid,
    params: &MorletParams,
    norm: FrequencyNorm,
) -> Result<Scalogram> {
    let grid = fa.grid();
    let omegas = frequency_grid_with(&grid, norm)?;
    let spectrum = fft_forward(fa.values());
    let omega0 = params.omega0();
    // Rows are independent; computing them in parallel and collecting in
    // scale order keeps the output identical to a sequential run.
    let w: Vec<Vec<Complex64>> = scales
        .values()
        .par_iter()
        .map(|&a| {
            if a == 0.0 {
                let factor = (-omega0 * omega0 / 2.0).exp();
                fa.values().iter().map(|v| v * factor).collect()
            } else {
                let windowed: Vec<Complex64> = spectrum
                    .iter()
                    .zip(&omegas)
                    .map(|(f, &om)| f * harmonic_response(a, om, omega0))
                    .collect();
                fft_inverse(&windowed)
            }
        })
        .collect();
    Scalogram::new(scales.clone(), grid, omega0, w)
}

/// Ridge information for one shift position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RidgePoint {
    /// The column was identically zero; no maximum exists.
    NoRidge,
    /// The modulus maximum over scales sits at `scale`; `frequency` is the
    /// estimate `omega0 / scale`, or `None` when `scale == 0` (the estimate
    /// diverges).
    Ridge { scale: f64, frequency: Option<f64> },
}

/// For every column, the scale maximizing the modulus and the frequency
/// estimate `omega0 / scale`. Ties break toward the smaller scale.
pub fn ridge_extract(sg: &Scalogram) -> Vec<RidgePoint> {
    let n = sg.grid().n();
    (0..n)
        .map(|j| {
            let mut best = 0usize;
            let mut best_mod = sg.rows()[0][j].norm();
            for (k, row) in sg.rows().iter().enumerate().skip(1) {
                let m = row[j].norm();
                if m > best_mod {
                    best_mod = m;
                    best = k;
                }
            }
            if best_mod == 0.0 {
                return RidgePoint::NoRidge;
            }
            let scale = sg.scales().values()[best];
            let frequency = (scale != 0.0).then(|| sg.omega0() / scale);
            RidgePoint::Ridge { scale, frequency }
        })
        .collect()
}
