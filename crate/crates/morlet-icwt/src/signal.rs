//! Sampled-signal data model and the preprocessing steps of the transform
//! pipeline: mean removal, power-of-two resampling, reflection-based
//! boundary extension, center cropping, and analytic-signal construction
//! via a spectral cut-off.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Result, WaveletError};

/// Relative tolerance for the vanishing negative-frequency spectrum of an
/// [`AnalyticSignal`].
pub const ANALYTIC_SPECTRUM_TOL: f64 = 1e-10;

/// Uniform sampling description. Sample `i` lives at `t_start + i * dt`,
/// computed on demand so the grid never drifts from its definition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_start: f64,
    dt: f64,
    n: usize,
}

impl TimeGrid {
    /// Creates a grid of `n >= 2` samples spaced `dt > 0` apart starting at
    /// `t_start`.
    pub fn new(t_start: f64, dt: f64, n: usize) -> Result<Self> {
        if !t_start.is_finite() {
            return Err(WaveletError::InvalidGrid {
                reason: format!("t_start must be finite, got {t_start}"),
            });
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(WaveletError::InvalidGrid {
                reason: format!("dt must be finite and positive, got {dt}"),
            });
        }
        if n < 2 {
            return Err(WaveletError::InvalidGrid {
                reason: format!("need at least 2 samples, got {n}"),
            });
        }
        Ok(Self { t_start, dt, n })
    }

    /// Time of the first sample.
    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    /// Sample spacing.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Number of samples.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Time of sample `i` (callable for any `i`, also outside the grid).
    pub fn time_at(&self, i: usize) -> f64 {
        self.t_start + i as f64 * self.dt
    }

    /// Time of the last sample.
    pub fn t_end(&self) -> f64 {
        self.time_at(self.n - 1)
    }

    /// Iterator over all sample times.
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.time_at(i))
    }
}

/// Uniformly sampled real-valued signal.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSignal {
    grid: TimeGrid,
    values: Vec<f64>,
}

impl RealSignal {
    /// Creates a signal, checking that `values` matches the grid length and
    /// contains only finite numbers.
    pub fn new(grid: TimeGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(WaveletError::InvalidSignal {
                reason: format!(
                    "value count {} does not match grid length {}",
                    values.len(),
                    grid.n()
                ),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(WaveletError::InvalidSignal {
                reason: format!("non-finite value {} at index {i}", values[i]),
            });
        }
        Ok(Self { grid, values })
    }

    /// The sampling grid.
    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    /// The sample values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Consumes the signal and returns its sample values.
    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// Complex signal whose discrete spectrum vanishes at strictly negative
/// frequencies (checked on construction within [`ANALYTIC_SPECTRUM_TOL`]).
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticSignal {
    grid: TimeGrid,
    values: Vec<Complex64>,
}

impl AnalyticSignal {
    /// Creates an analytic signal, checking finiteness and that every
    /// spectral bin at a strictly negative frequency (index `> n/2`) has
    /// modulus at most `1e-10` times the largest spectral modulus.
    pub fn new(grid: TimeGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(WaveletError::InvalidSignal {
                reason: format!(
                    "value count {} does not match grid length {}",
                    values.len(),
                    grid.n()
                ),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(WaveletError::InvalidSignal {
                reason: format!("non-finite value at index {i}"),
            });
        }
        let spectrum = fft_forward(&values);
        let max_mod = spectrum.iter().map(|c| c.norm()).fold(0.0_f64, f64::max);
        let first_negative = grid.n() / 2 + 1;
        if let Some(k) = (first_negative..grid.n())
            .find(|&k| spectrum[k].norm() > ANALYTIC_SPECTRUM_TOL * max_mod)
        {
            return Err(WaveletError::InvalidSignal {
                reason: format!(
                    "spectrum at negative-frequency bin {k} has modulus {:.3e} \
                     exceeding {ANALYTIC_SPECTRUM_TOL:.0e} of the maximum {max_mod:.3e}",
                    spectrum[k].norm()
                ),
            });
        }
        Ok(Self { grid, values })
    }

    /// Constructor for values produced by this crate with the cut-off
    /// already applied exactly in the frequency domain.
    pub(crate) fn from_spectral_cutoff(grid: TimeGrid, values: Vec<Complex64>) -> Self {
        Self { grid, values }
    }

    /// The sampling grid.
    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    /// The sample values.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// Forward DFT (unnormalized), on a copy of `values`.
pub(crate) fn fft_forward(values: &[Complex64]) -> Vec<Complex64> {
    let mut buf = values.to_vec();
    FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    buf
}

/// Inverse DFT including the 1/n normalization rustfft leaves out.
pub(crate) fn fft_inverse(values: &[Complex64]) -> Vec<Complex64> {
    let mut buf = values.to_vec();
    FftPlanner::new().plan_fft_inverse(buf.len()).process(&mut buf);
    let scale = 1.0 / buf.len() as f64;
    for v in &mut buf {
        *v *= scale;
    }
    buf
}

/// Subtracts the arithmetic mean from every sample.
pub fn remove_mean(s: &RealSignal) -> RealSignal {
    let mean = s.values().iter().sum::<f64>() / s.grid().n() as f64;
    RealSignal {
        grid: s.grid(),
        values: s.values().iter().map(|v| v - mean).collect(),
    }
}

/// Resamples onto the smallest power-of-two sample count `>=` the current
/// one, spanning the same interval, by piecewise-linear interpolation.
/// Signals whose length is already a power of two are returned unchanged.
pub fn resample_pow2(s: &RealSignal) -> RealSignal {
    let n = s.grid().n();
    if n.is_power_of_two() {
        return s.clone();
    }
    let m = n.next_power_of_two();
    let grid = s.grid();
    let span = grid.t_end() - grid.t_start();
    let new_dt = span / (m - 1) as f64;
    let values: Vec<f64> = (0..m)
        .map(|i| {
            // Clamp the bracketing index so the final point reuses the last
            // input interval; exactness at both endpoints is preserved.
            let tau = i as f64 * new_dt;
            let j = ((tau / grid.dt()) as usize).min(n - 2);
            let frac = (tau - j as f64 * grid.dt()) / grid.dt();
            (1.0 - frac) * s.values()[j] + frac * s.values()[j + 1]
        })
        .collect();
    RealSignal {
        grid: TimeGrid {
            t_start: grid.t_start(),
            dt: new_dt,
            n: m,
        },
        values,
    }
}

/// Extends a power-of-two-length signal to twice its length by reflecting
/// interior samples across each boundary: for length `N`, the left pad is
/// samples `1..=N/2` reversed and the right pad is samples `N/2-1..=N-2`
/// reversed, so the result spans an interval enlarged by `N/2` steps on
/// each side and its central `N` samples equal the input exactly.
pub fn reflect_extend(s: &RealSignal) -> Result<RealSignal> {
    let n = s.grid().n();
    if !n.is_power_of_two() {
        return Err(WaveletError::InvalidSignal {
            reason: format!("reflection extension requires a power-of-two length, got {n}"),
        });
    }
    if n < 4 {
        return Err(WaveletError::InvalidSignal {
            reason: format!("reflection extension requires at least 4 samples, got {n}"),
        });
    }
    let v = s.values();
    let half = n / 2;
    let mut values = Vec::with_capacity(2 * n);
    values.extend(v[1..=half].iter().rev());
    values.extend_from_slice(v);
    values.extend(v[half - 1..=n - 2].iter().rev());
    let grid = TimeGrid {
        t_start: s.grid().t_start() - half as f64 * s.grid().dt(),
        dt: s.grid().dt(),
        n: 2 * n,
    };
    Ok(RealSignal { grid, values })
}

/// Returns the middle half of an even-length signal: for length `2N`,
/// samples `N/2..3N/2` with the correspondingly shifted grid. Inverse of
/// [`reflect_extend`] on the extension's center.
pub fn crop_center(s: &RealSignal) -> Result<RealSignal> {
    let len = s.grid().n();
    if !len.is_multiple_of(2) {
        return Err(WaveletError::InvalidSignal {
            reason: format!("center crop requires an even length, got {len}"),
        });
    }
    let keep = len / 2;
    let start = len / 4;
    let values = s.values()[start..start + keep].to_vec();
    let grid = TimeGrid {
        t_start: s.grid().time_at(start),
        dt: s.grid().dt(),
        n: keep,
    };
    Ok(RealSignal { grid, values })
}

/// Builds the analytic counterpart of a real signal by removing its mean
/// and cutting off non-positive-frequency spectral content: bin 0 and the
/// Nyquist bin are zeroed and bins `1..n/2` are doubled, so the real part
/// of the result reproduces the mean-removed input (for inputs without
/// Nyquist energy) and the imaginary part is its Hilbert transform.
///
/// Requires an even sample count.
pub fn analytic_signal(s: &RealSignal) -> Result<AnalyticSignal> {
    let n = s.grid().n();
    if !n.is_multiple_of(2) {
        return Err(WaveletError::InvalidSignal {
            reason: format!("analytic signal requires an even length, got {n}"),
        });
    }
    let zero_mean = remove_mean(s);
    let complex_input: Vec<Complex64> = zero_mean
        .values()
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    let spectrum = fft_forward(&complex_input);
    let mut cut = vec![Complex64::ZERO; n];
    for k in 1..n / 2 {
        cut[k] = 2.0 * spectrum[k];
    }
    let values = fft_inverse(&cut);
    Ok(AnalyticSignal::from_spectral_cutoff(s.grid(), values))
}
