//! Synthetic signal generators and independent brute-force oracles used by
//! the test suite and the CLI's `synth` command.
//!
//! The oracles evaluate the transform and its inverse termwise from the
//! closed-form response of a single harmonic, with no FFT and no finite
//! differences, so they share no code path with the production transform.

use num_complex::Complex64;

use crate::cwt::{harmonic_response, MorletParams, ScaleGrid, Scalogram};
use crate::error::{Result, WaveletError};
use crate::signal::{RealSignal, TimeGrid};

/// One term of a real Fourier series: harmonic index `n >= 1` with
/// coefficients of `cos(2*pi*n*t/T)` and `sin(2*pi*n*t/T)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierTerm {
    /// Harmonic index (multiple of the fundamental frequency), at least 1.
    pub harmonic: u32,
    /// Coefficient of the cosine part.
    pub cos_coeff: f64,
    /// Coefficient of the sine part.
    pub sin_coeff: f64,
}

impl FourierTerm {
    /// The complex coefficient of `e^{i*omega*t}` in the analytic
    /// counterpart of the series: `cos_coeff - i*sin_coeff`.
    pub fn analytic_coeff(&self) -> Complex64 {
        Complex64::new(self.cos_coeff, -self.sin_coeff)
    }
}

/// A zero-mean real Fourier series over period `T`: the sum of
/// `A_n cos(omega_n t) + B_n sin(omega_n t)` with `omega_n = 2*pi*n/T`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSeriesSpec {
    period: f64,
    terms: Vec<FourierTerm>,
}

impl FourierSeriesSpec {
    /// Creates a series description. Harmonic indices must be unique and
    /// at least 1 (no constant term: the series is zero-mean by
    /// construction); coefficients must be finite; `period > 0`.
    pub fn new(period: f64, terms: Vec<FourierTerm>) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(WaveletError::InvalidParameter {
                name: "period",
                reason: format!("must be finite and positive, got {period}"),
            });
        }
        for (i, t) in terms.iter().enumerate() {
            if t.harmonic < 1 {
                return Err(WaveletError::InvalidParameter {
                    name: "terms",
                    reason: format!("term {i} has harmonic index 0; indices start at 1"),
                });
            }
            if !(t.cos_coeff.is_finite() && t.sin_coeff.is_finite()) {
                return Err(WaveletError::InvalidParameter {
                    name: "terms",
                    reason: format!("term {i} has non-finite coefficients"),
                });
            }
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(t) = terms.iter().find(|t| !seen.insert(t.harmonic)) {
            return Err(WaveletError::InvalidParameter {
                name: "terms",
                reason: format!("duplicate harmonic index {}", t.harmonic),
            });
        }
        Ok(Self { period, terms })
    }

    /// The fundamental period.
    pub fn period(&self) -> f64 {
        self.period
    }

    /// The series terms.
    pub fn terms(&self) -> &[FourierTerm] {
        &self.terms
    }

    /// Angular frequency of a term: `2*pi*harmonic/period`.
    pub fn omega(&self, term: &FourierTerm) -> f64 {
        std::f64::consts::TAU * f64::from(term.harmonic) / self.period
    }
}

/// Samples the Fourier series on a time grid.
pub fn synth_fourier(spec: &FourierSeriesSpec, grid: &TimeGrid) -> RealSignal {
    let values = grid
        .times()
        .map(|t| {
            spec.terms()
                .iter()
                .map(|term| {
                    let omega = spec.omega(term);
                    term.cos_coeff * (omega * t).cos() + term.sin_coeff * (omega * t).sin()
                })
                .sum()
        })
        .collect();
    RealSignal::new(*grid, values).expect("finite coefficients yield finite samples")
}

/// The standard two-component test signal on [0, 1]: a decaying 10 Hz
/// oscillation plus a 20 Hz burst gated by the sharp indicator of
/// [1/3, 2/3]:
///
/// `f(t) = e^{-4t} cos(20*pi*t) + 1_{[1/3,2/3]}(t) * sin(40*pi*t)`
pub fn synth_test_signal(grid: &TimeGrid) -> RealSignal {
    synth_test_signal_tapered(grid, 0.0)
}

/// [`synth_test_signal`] with the sharp indicator replaced by a trapezoid
/// window ramping linearly from 0 to 1 over `ramp_width` time units inside
/// each edge of [1/3, 2/3]. `ramp_width = 0` reproduces the sharp
/// indicator. The tapered variant damps the spectral splatter of the
/// burst's jump discontinuities; it is an extension, not part of the
/// reference definition.
pub fn synth_test_signal_tapered(grid: &TimeGrid, ramp_width: f64) -> RealSignal {
    let (t1, t2) = (1.0 / 3.0, 2.0 / 3.0);
    let gate = |t: f64| -> f64 {
        if ramp_width == 0.0 {
            f64::from(u8::from(t >= t1 && t <= t2))
        } else {
            ((t - t1) / ramp_width)
                .min((t2 - t) / ramp_width)
                .clamp(0.0, 1.0)
        }
    };
    let values = grid
        .times()
        .map(|t| {
            let decaying = (-4.0 * t).exp() * (20.0 * std::f64::consts::PI * t).cos();
            let g = gate(t);
            if g == 0.0 {
                decaying
            } else {
                decaying + g * (40.0 * std::f64::consts::PI * t).sin()
            }
        })
        .collect();
    RealSignal::new(*grid, values).expect("test signal samples are finite")
}

/// Independent forward-transform oracle: evaluates the scalogram of the
/// series termwise from the closed form
/// `sum_n C_n e^{-(omega_n a - omega0)^2/2} e^{i omega_n b}` at every
/// scale-shift pair. Quadratic cost, no FFT.
pub fn oracle_cwt_series(
    spec: &FourierSeriesSpec,
    scales: &ScaleGrid,
    grid: &TimeGrid,
    params: &MorletParams,
) -> Scalogram {
    let w = scales
        .values()
        .iter()
        .map(|&a| {
            grid.times()
                .map(|b| {
                    spec.terms()
                        .iter()
                        .map(|term| {
                            let omega = spec.omega(term);
                            term.analytic_coeff()
                                * harmonic_response(a, omega, params.omega0())
                                * Complex64::new(0.0, omega * b).exp()
                        })
                        .sum()
                })
                .collect()
        })
        .collect();
    Scalogram::new(scales.clone(), *grid, params.omega0(), w)
        .expect("oracle entries are finite for finite specs")
}

/// Independent inverse-transform oracle: evaluates the reconstruction
/// formula semi-analytically, integrating the closed-form integrand
/// `i omega_n C_n e^{-(omega_n a - omega0)^2/2} e^{i omega_n b}` over
/// scales with a trapezoid rule refined 10x beyond the given grid. No
/// finite differences are involved, so the result isolates pure
/// scale-coverage (truncation) error.
pub fn oracle_icwt_series(
    spec: &FourierSeriesSpec,
    scales: &ScaleGrid,
    grid: &TimeGrid,
    params: &MorletParams,
) -> RealSignal {
    const REFINE: usize = 10;
    // Per-term scale integral of the Gaussian response on the refined grid.
    let gauss_integral: Vec<f64> = spec
        .terms()
        .iter()
        .map(|term| {
            let omega = spec.omega(term);
            let mut total = 0.0;
            for pair in scales.values().windows(2) {
                let h = (pair[1] - pair[0]) / REFINE as f64;
                for i in 0..REFINE {
                    let lo = pair[0] + i as f64 * h;
                    let f_lo = harmonic_response(lo, omega, params.omega0());
                    let f_hi = harmonic_response(lo + h, omega, params.omega0());
                    total += 0.5 * h * (f_lo + f_hi);
                }
            }
            total
        })
        .collect();
    let norm = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    let values = grid
        .times()
        .map(|b| {
            let integral: Complex64 = spec
                .terms()
                .iter()
                .zip(&gauss_integral)
                .map(|(term, &gi)| {
                    let omega = spec.omega(term);
                    Complex64::new(0.0, omega)
                        * term.analytic_coeff()
                        * gi
                        * Complex64::new(0.0, omega * b).exp()
                })
                .sum();
            integral.im * norm
        })
        .collect();
    RealSignal::new(*grid, values).expect("oracle samples are finite")
}
