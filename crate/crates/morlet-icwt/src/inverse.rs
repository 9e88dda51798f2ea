//! Inversion of the Morlet scalogram without an admissibility condition:
//! finite-difference differentiation along the shift axis, trapezoidal
//! integration along the scale axis, imaginary-part extraction and a
//! `1/sqrt(2*pi)` scaling — plus region- and mask-restricted variants that
//! reconstruct individual signal components.

use num_complex::Complex64;

use crate::cwt::{ScaleGrid, Scalogram};
use crate::error::{Result, WaveletError};
use crate::signal::{RealSignal, TimeGrid};

/// Tolerance, in grid-index units, used when snapping region bounds onto
/// sample positions: bounds that name a grid point up to rounding select
/// exactly that point instead of the neighbor outside it.
const SNAP_INDEX_TOL: f64 = 1e-9;

/// Binary matrix selecting scalogram entries; the reconstruction mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalogramMask {
    mask: Vec<Vec<bool>>,
    cols: usize,
}

impl ScalogramMask {
    /// Creates a mask from a rectangular boolean matrix.
    pub fn new(mask: Vec<Vec<bool>>) -> Result<Self> {
        if mask.is_empty() || mask[0].is_empty() {
            return Err(WaveletError::DimensionMismatch {
                reason: "mask must have at least one row and one column".into(),
            });
        }
        let cols = mask[0].len();
        if let Some(i) = mask.iter().position(|row| row.len() != cols) {
            return Err(WaveletError::DimensionMismatch {
                reason: format!(
                    "mask row {i} has {} columns, expected {cols}",
                    mask[i].len()
                ),
            });
        }
        Ok(Self { mask, cols })
    }

    /// All-ones mask of the given dimensions.
    pub fn all_ones(rows: usize, cols: usize) -> Result<Self> {
        Self::new(vec![vec![true; cols]; rows])
    }

    /// Rectangle mask selecting the scalogram entries whose scale and shift
    /// fall inside `region` (bounds snapped outward, see [`Region`]).
    pub fn from_region(sg: &Scalogram, region: &Region) -> Result<Self> {
        let (rows, cols) = region.snap_to(sg)?;
        let mask = (0..sg.scales().len())
            .map(|k| {
                (0..sg.grid().n())
                    .map(|j| rows.contains(&k) && cols.contains(&j))
                    .collect()
            })
            .collect();
        Self::new(mask)
    }

    /// Number of rows (scales).
    pub fn rows(&self) -> usize {
        self.mask.len()
    }

    /// Number of columns (shifts).
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at scale row `k`, shift column `j`.
    pub fn entry(&self, k: usize, j: usize) -> bool {
        self.mask[k][j]
    }

    /// The complementary mask (every entry flipped).
    pub fn complement(&self) -> Self {
        Self {
            mask: self
                .mask
                .iter()
                .map(|row| row.iter().map(|&b| !b).collect())
                .collect(),
            cols: self.cols,
        }
    }

    /// Entrywise AND with another mask of the same dimensions.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return Err(WaveletError::DimensionMismatch {
                reason: format!(
                    "cannot intersect {}x{} mask with {}x{} mask",
                    self.rows(),
                    self.cols(),
                    other.rows(),
                    other.cols()
                ),
            });
        }
        let mask = self
            .mask
            .iter()
            .zip(&other.mask)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| x && y).collect())
            .collect();
        Ok(Self {
            mask,
            cols: self.cols,
        })
    }

    fn check_matches(&self, sg: &Scalogram) -> Result<()> {
        if self.rows() != sg.scales().len() || self.cols() != sg.grid().n() {
            return Err(WaveletError::DimensionMismatch {
                reason: format!(
                    "{}x{} mask for a {}x{} scalogram",
                    self.rows(),
                    self.cols(),
                    sg.scales().len(),
                    sg.grid().n()
                ),
            });
        }
        Ok(())
    }
}

/// Rectangular scale-shift window for restricted reconstruction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    b_lo: f64,
    b_hi: f64,
    a_lo: f64,
    a_hi: f64,
}

impl Region {
    /// Creates a region with shift bounds `b_lo < b_hi` and scale bounds
    /// `0 <= a_lo < a_hi`.
    pub fn new(b_lo: f64, b_hi: f64, a_lo: f64, a_hi: f64) -> Result<Self> {
        for (name, v) in [
            ("b_lo", b_lo),
            ("b_hi", b_hi),
            ("a_lo", a_lo),
            ("a_hi", a_hi),
        ] {
            if !v.is_finite() {
                return Err(WaveletError::InvalidParameter {
                    name: "region",
                    reason: format!("{name} must be finite, got {v}"),
                });
            }
        }
        if b_lo >= b_hi {
            return Err(WaveletError::InvalidParameter {
                name: "region",
                reason: format!("shift bounds must satisfy b_lo < b_hi, got [{b_lo}, {b_hi}]"),
            });
        }
        if !(0.0 <= a_lo && a_lo < a_hi) {
            return Err(WaveletError::InvalidParameter {
                name: "region",
                reason: format!("scale bounds must satisfy 0 <= a_lo < a_hi, got [{a_lo}, {a_hi}]"),
            });
        }
        Ok(Self {
            b_lo,
            b_hi,
            a_lo,
            a_hi,
        })
    }

    /// Lower shift bound.
    pub fn b_lo(&self) -> f64 {
        self.b_lo
    }

    /// Upper shift bound.
    pub fn b_hi(&self) -> f64 {
        self.b_hi
    }

    /// Lower scale bound.
    pub fn a_lo(&self) -> f64 {
        self.a_lo
    }

    /// Upper scale bound.
    pub fn a_hi(&self) -> f64 {
        self.a_hi
    }

    /// Maps the region onto a scalogram's grids, snapping each bound
    /// outward to the nearest sample so the requested window never
    /// shrinks. Errors when the region misses the data extent entirely or
    /// selects fewer than 2 scales / 3 shifts (too few for integration and
    /// differentiation).
    pub(crate) fn snap_to(
        &self,
        sg: &Scalogram,
    ) -> Result<(std::ops::RangeInclusive<usize>, std::ops::RangeInclusive<usize>)> {
        let grid = sg.grid();
        let idx_lo = (self.b_lo - grid.t_start()) / grid.dt();
        let idx_hi = (self.b_hi - grid.t_start()) / grid.dt();
        if idx_hi < -SNAP_INDEX_TOL || idx_lo > (grid.n() - 1) as f64 + SNAP_INDEX_TOL {
            return Err(WaveletError::EmptySelection {
                reason: format!(
                    "shift window [{}, {}] lies outside the data extent [{}, {}]",
                    self.b_lo,
                    self.b_hi,
                    grid.t_start(),
                    grid.t_end()
                ),
            });
        }
        let j_lo = (idx_lo + SNAP_INDEX_TOL).floor().max(0.0) as usize;
        let j_hi = ((idx_hi - SNAP_INDEX_TOL).ceil().max(0.0) as usize).min(grid.n() - 1);

        let scales = sg.scales().values();
        let span = scales[scales.len() - 1] - scales[0];
        let tol = SNAP_INDEX_TOL * span.max(1.0);
        if self.a_hi < scales[0] - tol || self.a_lo > scales[scales.len() - 1] + tol {
            return Err(WaveletError::EmptySelection {
                reason: format!(
                    "scale window [{}, {}] lies outside the scale extent [{}, {}]",
                    self.a_lo,
                    self.a_hi,
                    scales[0],
                    scales[scales.len() - 1]
                ),
            });
        }
        let k_lo = scales
            .iter()
            .rposition(|&a| a <= self.a_lo + tol)
            .unwrap_or(0);
        let k_hi = scales
            .iter()
            .position(|&a| a >= self.a_hi - tol)
            .unwrap_or(scales.len() - 1);

        if k_hi < k_lo + 1 {
            return Err(WaveletError::EmptySelection {
                reason: format!(
                    "scale window [{}, {}] selects fewer than 2 scales",
                    self.a_lo, self.a_hi
                ),
            });
        }
        if j_hi < j_lo + 2 {
            return Err(WaveletError::EmptySelection {
                reason: format!(
                    "shift window [{}, {}] selects fewer than 3 samples",
                    self.b_lo, self.b_hi
                ),
            });
        }
        Ok((k_lo..=k_hi, j_lo..=j_hi))
    }
}

/// Differentiates every row along the shift axis: three-point central
/// differences at interior columns, two-point forward/backward differences
/// at the first/last column. Exact on rows affine in the shift.
pub fn shift_derivative(sg: &Scalogram) -> Result<Vec<Vec<Complex64>>> {
    let n = sg.grid().n();
    if n < 3 {
        return Err(WaveletError::InvalidSignal {
            reason: format!("shift differentiation requires at least 3 columns, got {n}"),
        });
    }
    let dt = sg.grid().dt();
    let two_dt = 2.0 * dt;
    Ok(sg
        .rows()
        .iter()
        .map(|row| {
            let mut d = Vec::with_capacity(n);
            d.push((row[1] - row[0]) / dt);
            for j in 1..n - 1 {
                d.push((row[j + 1] - row[j - 1]) / two_dt);
            }
            d.push((row[n - 1] - row[n - 2]) / dt);
            d
        })
        .collect())
}

/// Shared integration core: trapezoid over scales of the (optionally
/// masked) shift derivative, imaginary part, `1/sqrt(2*pi)` scaling.
///
/// The unmasked and the masked paths perform the identical arithmetic when
/// every mask entry is set, so an all-ones mask reproduces the full
/// inversion bit for bit.
fn integrate(sg: &Scalogram, mask: Option<&ScalogramMask>) -> Result<RealSignal> {
    let dw = shift_derivative(sg)?;
    let keep = |k: usize, j: usize| mask.is_none_or(|m| m.entry(k, j));
    let scales = sg.scales().values();
    let n = sg.grid().n();
    let mut acc = vec![Complex64::ZERO; n];
    for k in 0..scales.len() - 1 {
        let half_step = 0.5 * (scales[k + 1] - scales[k]);
        for j in 0..n {
            let lo = if keep(k, j) { dw[k][j] } else { Complex64::ZERO };
            let hi = if keep(k + 1, j) {
                dw[k + 1][j]
            } else {
                Complex64::ZERO
            };
            acc[j] += half_step * (lo + hi);
        }
    }
    let norm = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    let values: Vec<f64> = acc.iter().map(|c| c.im * norm).collect();
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(WaveletError::NonFinite {
            reason: format!("reconstruction sample {i}"),
        });
    }
    RealSignal::new(sg.grid(), values)
}

/// Full inversion of a scalogram: `(1/sqrt(2*pi)) * Im[ integral over
/// scales of the shift derivative ]`, with the trapezoid rule on the
/// (possibly non-uniform) scale grid.
pub fn icwt_full(sg: &Scalogram) -> Result<RealSignal> {
    integrate(sg, None)
}

/// Masked inversion: the shift derivative is computed on the full
/// scalogram and multiplied by the mask before scale integration, so mask
/// edges never feed the difference stencils.
pub fn icwt_masked(sg: &Scalogram, mask: &ScalogramMask) -> Result<RealSignal> {
    mask.check_matches(sg)?;
    integrate(sg, Some(mask))
}

/// Inversion restricted to a rectangular scale-shift window: applies the
/// full inversion to the sub-matrix selected by `region` (bounds snapped
/// outward onto the grids). The result carries the restricted time grid;
/// in terms of content it recovers components with frequencies inside
/// `[omega0/a_hi, omega0/a_lo]`.
pub fn icwt_region(sg: &Scalogram, region: &Region) -> Result<RealSignal> {
    let (rows, cols) = region.snap_to(sg)?;
    let scales = ScaleGrid::new(sg.scales().values()[rows.clone()].to_vec())?;
    let grid = TimeGrid::new(
        sg.grid().time_at(*cols.start()),
        sg.grid().dt(),
        cols.end() - cols.start() + 1,
    )?;
    let w = sg.rows()[rows]
        .iter()
        .map(|row| row[cols.clone()].to_vec())
        .collect();
    let sub = Scalogram::new(scales, grid, sg.omega0(), w)?;
    icwt_full(&sub)
}

/// Heaviside threshold mask: selects entries whose modulus strictly
/// exceeds `level` times the global modulus maximum. `level = 0` keeps
/// every nonzero entry; `level = 1` keeps nothing.
pub fn threshold_mask(sg: &Scalogram, level: f64) -> Result<ScalogramMask> {
    if !(level.is_finite() && (0.0..=1.0).contains(&level)) {
        return Err(WaveletError::InvalidParameter {
            name: "level",
            reason: format!("threshold must lie in [0, 1], got {level}"),
        });
    }
    let cutoff = level * sg.max_modulus();
    ScalogramMask::new(
        sg.rows()
            .iter()
            .map(|row| row.iter().map(|c| c.norm() > cutoff).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cwt::{cwt_forward, harmonic_response, MorletParams};
    use crate::signal::{analytic_signal, RealSignal};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::PI;

    fn unit_period_grid(n: usize) -> TimeGrid {
        TimeGrid::new(0.0, 1.0 / n as f64, n).unwrap()
    }

    /// Scalogram of a unit analytic harmonic built directly from the
    /// closed form, bypassing the FFT path.
    fn synthetic_harmonic_scalogram(
        grid: TimeGrid,
        scales: &ScaleGrid,
        omega: f64,
        omega0: f64,
    ) -> Scalogram {
        let w = scales
            .values()
            .iter()
            .map(|&a| {
                let g = harmonic_response(a, omega, omega0);
                grid.times()
                    .map(|t| Complex64::new(0.0, omega * t).exp() * g)
                    .collect()
            })
            .collect();
        Scalogram::new(scales.clone(), grid, omega0, w).unwrap()
    }

    #[test]
    fn shift_derivative_of_constant_rows_is_zero() {
        let grid = unit_period_grid(8);
        let scales = ScaleGrid::new(vec![0.1, 0.2]).unwrap();
        let w = vec![vec![Complex64::new(3.0, -1.0); 8]; 2];
        let sg = Scalogram::new(scales, grid, 2.0 * PI, w).unwrap();
        let d = shift_derivative(&sg).unwrap();
        assert!(d.iter().flatten().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn shift_derivative_on_exponential_rows_matches_difference_symbol() {
        let n = 64;
        let grid = unit_period_grid(n);
        let dt = grid.dt();
        let omega = 2.0 * PI * 5.0;
        let scales = ScaleGrid::new(vec![0.1, 0.2]).unwrap();
        let row: Vec<Complex64> = grid
            .times()
            .map(|t| Complex64::new(0.0, omega * t).exp())
            .collect();
        let sg = Scalogram::new(scales, grid, 2.0 * PI, vec![row.clone(), row.clone()]).unwrap();
        let d = shift_derivative(&sg).unwrap();
        // Central differences of e^{i omega b}: i*sin(omega dt)/dt * e^{i omega b},
        // the exact derivative attenuated by sin(x)/x at x = omega*dt.
        let symbol = Complex64::new(0.0, (omega * dt).sin() / dt);
        for j in 1..n - 1 {
            let want = symbol * row[j];
            assert_abs_diff_eq!(d[0][j].re, want.re, epsilon = 1e-9);
            assert_abs_diff_eq!(d[0][j].im, want.im, epsilon = 1e-9);
        }
    }

    #[test]
    fn shift_derivative_is_exact_on_affine_rows_at_every_column() {
        let grid = TimeGrid::new(-1.0, 0.125, 16).unwrap();
        let scales = ScaleGrid::new(vec![0.1, 0.2]).unwrap();
        let alpha = Complex64::new(2.5, -0.75);
        let beta = Complex64::new(-1.0, 4.0);
        let row: Vec<Complex64> = grid.times().map(|b| alpha * b + beta).collect();
        let sg = Scalogram::new(scales, grid, 2.0 * PI, vec![row.clone(), row]).unwrap();
        for d_row in shift_derivative(&sg).unwrap() {
            for d in d_row {
                assert_abs_diff_eq!(d.re, alpha.re, epsilon = 1e-12);
                assert_abs_diff_eq!(d.im, alpha.im, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn shift_derivative_rejects_too_few_columns() {
        let grid = TimeGrid::new(0.0, 1.0, 2).unwrap();
        let scales = ScaleGrid::new(vec![0.1, 0.2]).unwrap();
        let sg = Scalogram::new(scales, grid, 2.0 * PI, vec![vec![Complex64::ZERO; 2]; 2]).unwrap();
        assert!(shift_derivative(&sg).is_err());
    }

    #[test]
    fn icwt_of_zero_scalogram_is_zero() {
        let grid = unit_period_grid(16);
        let scales = ScaleGrid::linspace(0.0, 0.2, 6).unwrap();
        let sg = Scalogram::new(scales, grid, 2.0 * PI, vec![vec![Complex64::ZERO; 16]; 6])
            .unwrap();
        let rec = icwt_full(&sg).unwrap();
        assert!(rec.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn icwt_recovers_cosine_from_synthetic_harmonic_scalogram() {
        // Frequency low enough that the central-difference attenuation
        // sin(x)/x stays within the tolerance, scale range wide enough
        // (ridge +- 4 sigma) that Gaussian truncation is negligible.
        let n = 1024;
        let grid = unit_period_grid(n);
        let omega = 2.0 * PI * 4.0;
        let omega0 = 2.0 * PI;
        let ridge = omega0 / omega;
        let sigma = 1.0 / omega;
        let scales =
            ScaleGrid::linspace((ridge - 4.0 * sigma).max(0.0), ridge + 4.0 * sigma, 161).unwrap();
        let sg = synthetic_harmonic_scalogram(grid, &scales, omega, omega0);
        let rec = icwt_full(&sg).unwrap();
        let want: Vec<f64> = grid.times().map(|t| (omega * t).cos()).collect();
        let err_num: f64 = rec
            .values()
            .iter()
            .zip(&want)
            .map(|(r, w)| (r - w) * (r - w))
            .sum::<f64>()
            .sqrt();
        let err_den: f64 = want.iter().map(|w| w * w).sum::<f64>().sqrt();
        assert!(
            err_num / err_den <= 1e-3,
            "relative L2 error {} exceeds 1e-3",
            err_num / err_den
        );
    }

    #[test]
    fn icwt_masked_with_all_ones_is_bit_exact_to_full() {
        let n = 128;
        let grid = unit_period_grid(n);
        let s = RealSignal::new(
            grid,
            grid.times()
                .map(|t| (2.0 * PI * 9.0 * t).sin() + 0.3 * (2.0 * PI * 17.0 * t).cos())
                .collect(),
        )
        .unwrap();
        let sg = cwt_forward(
            &analytic_signal(&s).unwrap(),
            &ScaleGrid::linspace(0.0, 0.3, 31).unwrap(),
            &MorletParams::default(),
        )
        .unwrap();
        let ones = ScalogramMask::all_ones(31, n).unwrap();
        let full = icwt_full(&sg).unwrap();
        let masked = icwt_masked(&sg, &ones).unwrap();
        assert_eq!(full.values(), masked.values());
    }

    #[test]
    fn icwt_masked_with_all_zeros_is_zero() {
        let grid = unit_period_grid(8);
        let scales = ScaleGrid::new(vec![0.1, 0.2]).unwrap();
        let row: Vec<Complex64> = grid
            .times()
            .map(|t| Complex64::new(t.cos(), t.sin()))
            .collect();
        let sg = Scalogram::new(scales, grid, 2.0 * PI, vec![row.clone(), row]).unwrap();
        let zeros = ScalogramMask::all_ones(2, 8).unwrap().complement();
        let rec = icwt_masked(&sg, &zeros).unwrap();
        assert!(rec.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn mask_and_complement_partition_the_full_reconstruction() {
        let n = 128;
        let grid = unit_period_grid(n);
        let s = RealSignal::new(
            grid,
            grid.times()
                .map(|t| (2.0 * PI * 6.0 * t).cos() - 0.5 * (2.0 * PI * 13.0 * t).sin())
                .collect(),
        )
        .unwrap();
        let sg = cwt_forward(
            &analytic_signal(&s).unwrap(),
            &ScaleGrid::linspace(0.0, 0.3, 25).unwrap(),
            &MorletParams::default(),
        )
        .unwrap();
        // Deterministic pseudo-random pattern.
        let mask = ScalogramMask::new(
            (0..25)
                .map(|k| (0..n).map(|j| (k * 31 + j * 17) % 7 < 3).collect())
                .collect(),
        )
        .unwrap();
        let full = icwt_full(&sg).unwrap();
        let a = icwt_masked(&sg, &mask).unwrap();
        let b = icwt_masked(&sg, &mask.complement()).unwrap();
        let norm = full.values().iter().map(|v| v * v).sum::<f64>().sqrt();
        let diff = full
            .values()
            .iter()
            .zip(a.values().iter().zip(b.values()))
            .map(|(f, (x, y))| (f - (x + y)).powi(2))
            .sum::<f64>()
            .sqrt();
        assert!(diff <= 1e-12 * norm, "partition defect {diff} vs norm {norm}");
    }

    #[test]
    fn threshold_mask_extremes() {
        let n = 64;
        let grid = unit_period_grid(n);
        let s = RealSignal::new(
            grid,
            grid.times().map(|t| (2.0 * PI * 5.0 * t).cos()).collect(),
        )
        .unwrap();
        let sg = cwt_forward(
            &analytic_signal(&s).unwrap(),
            &ScaleGrid::linspace(0.05, 0.4, 15).unwrap(),
            &MorletParams::default(),
        )
        .unwrap();
        let all = threshold_mask(&sg, 0.0).unwrap();
        // No exact zeros in a harmonic scalogram: every entry selected.
        assert!((0..15).all(|k| (0..n).all(|j| all.entry(k, j))));
        let none = threshold_mask(&sg, 1.0).unwrap();
        assert!((0..15).all(|k| (0..n).all(|j| !none.entry(k, j))));
        assert!(threshold_mask(&sg, -0.1).is_err());
        assert!(threshold_mask(&sg, 1.1).is_err());
    }

    #[test]
    fn threshold_mask_selects_scales_within_the_gaussian_band() {
        let n = 32;
        let grid = unit_period_grid(n);
        let omega = 2.0 * PI * 8.0;
        let omega0 = 2.0 * PI;
        let scales = ScaleGrid::linspace(0.01, 0.4, 79).unwrap();
        let sg = synthetic_harmonic_scalogram(grid, &scales, omega, omega0);
        let level = (-0.5_f64).exp() * 1.01; // just above exp(-1/2)
        let mask = threshold_mask(&sg, level).unwrap();
        let max_resp = scales
            .values()
            .iter()
            .map(|&a| harmonic_response(a, omega, omega0))
            .fold(0.0_f64, f64::max);
        for (k, &a) in scales.values().iter().enumerate() {
            let expect = harmonic_response(a, omega, omega0) > level * max_resp;
            assert_eq!(
                mask.entry(k, 0),
                expect,
                "scale {a}: |a*omega - omega0| = {}",
                (a * omega - omega0).abs()
            );
        }
        // The selected band is |a*omega - omega0| < ~1 around the ridge.
        let selected: Vec<f64> = scales
            .values()
            .iter()
            .enumerate()
            .filter(|&(k, _)| mask.entry(k, 0))
            .map(|(_, &a)| (a * omega - omega0).abs())
            .collect();
        assert!(!selected.is_empty());
        assert!(selected.iter().all(|&d| d < 1.0));
    }

    #[test]
    fn region_validation() {
        assert!(Region::new(0.5, 0.4, 0.0, 0.1).is_err());
        assert!(Region::new(0.0, 1.0, -0.1, 0.1).is_err());
        assert!(Region::new(0.0, 1.0, 0.2, 0.1).is_err());
        assert!(Region::new(0.0, f64::NAN, 0.0, 0.1).is_err());
        assert!(Region::new(0.3209, 0.6829, 0.0240, 0.052).is_ok());
    }

    #[test]
    fn region_snaps_outward_onto_both_grids() {
        let grid = TimeGrid::new(0.0, 0.1, 11).unwrap();
        let scales = ScaleGrid::linspace(0.0, 0.2, 51).unwrap(); // step 0.004
        let w = vec![vec![Complex64::ZERO; 11]; 51];
        let sg = Scalogram::new(scales, grid, 2.0 * PI, w).unwrap();

        // Bounds strictly between samples extend to the enclosing ones.
        let (rows, cols) = Region::new(0.25, 0.65, 0.0239, 0.0521)
            .unwrap()
            .snap_to(&sg)
            .unwrap();
        assert_eq!(cols, 2..=7); // t = 0.2 .. 0.7
        assert_eq!(rows, 5..=14); // a = 0.020 .. 0.056

        // Bounds naming grid points (up to rounding) select exactly them.
        let (rows, cols) = Region::new(0.2, 0.7, 0.024, 0.052)
            .unwrap()
            .snap_to(&sg)
            .unwrap();
        assert_eq!(cols, 2..=7);
        assert_eq!(rows, 6..=13);
    }

    #[test]
    fn region_outside_extent_is_rejected() {
        let grid = TimeGrid::new(0.0, 0.1, 11).unwrap();
        let scales = ScaleGrid::linspace(0.0, 0.2, 11).unwrap();
        let w = vec![vec![Complex64::ZERO; 11]; 11];
        let sg = Scalogram::new(scales, grid, 2.0 * PI, w).unwrap();
        assert!(matches!(
            icwt_region(&sg, &Region::new(2.0, 3.0, 0.0, 0.1).unwrap()),
            Err(WaveletError::EmptySelection { .. })
        ));
        assert!(matches!(
            icwt_region(&sg, &Region::new(0.0, 1.0, 0.5, 0.9).unwrap()),
            Err(WaveletError::EmptySelection { .. })
        ));
    }

    #[test]
    fn icwt_region_interior_matches_full_and_boundary_gap_is_bounded() {
        let n = 256;
        let grid = unit_period_grid(n);
        let s = RealSignal::new(
            grid,
            grid.times()
                .map(|t| (2.0 * PI * 11.0 * t).cos() + 0.4 * (2.0 * PI * 23.0 * t).sin())
                .collect(),
        )
        .unwrap();
        let scales = ScaleGrid::linspace(0.0, 0.3, 31).unwrap();
        let sg = cwt_forward(
            &analytic_signal(&s).unwrap(),
            &scales,
            &MorletParams::default(),
        )
        .unwrap();
        let full = icwt_full(&sg).unwrap();

        // Interior window on the full scale extent.
        let j_lo = 40;
        let j_hi = 199;
        let region = Region::new(
            grid.time_at(j_lo),
            grid.time_at(j_hi),
            scales.values()[0],
            scales.values()[30],
        )
        .unwrap();
        let rec = icwt_region(&sg, &region).unwrap();
        assert_eq!(rec.grid().n(), j_hi - j_lo + 1);
        assert_relative_eq!(rec.grid().t_start(), grid.time_at(j_lo), epsilon = 1e-12);

        // The difference stencil only changes at the two new boundary
        // columns; interior columns reproduce the full inversion exactly.
        for j in 1..rec.grid().n() - 1 {
            assert_eq!(rec.values()[j], full.values()[j_lo + j]);
        }

        // At a new boundary the forward/backward stencil differs from the
        // central one by half the second difference over dt, integrated.
        let dt = grid.dt();
        let norm = 1.0 / (2.0 * PI).sqrt();
        for (col_in_rec, col_in_full) in [(0usize, j_lo), (j_hi - j_lo, j_hi)] {
            let second_diff: Vec<f64> = sg
                .rows()
                .iter()
                .map(|row| {
                    (row[col_in_full + 1] - 2.0 * row[col_in_full] + row[col_in_full - 1]).norm()
                })
                .collect();
            let mut bound = 0.0;
            for k in 0..scales.len() - 1 {
                bound += 0.5
                    * (scales.values()[k + 1] - scales.values()[k])
                    * (second_diff[k] + second_diff[k + 1]);
            }
            bound = bound / (2.0 * dt) * norm;
            let gap = (rec.values()[col_in_rec] - full.values()[col_in_full]).abs();
            assert!(
                gap <= bound * (1.0 + 1e-9) + 1e-15,
                "boundary gap {gap} exceeds second-difference bound {bound}"
            );
        }
    }

    #[test]
    fn mask_from_region_matches_snapped_rectangle() {
        let grid = TimeGrid::new(0.0, 0.1, 11).unwrap();
        let scales = ScaleGrid::linspace(0.0, 0.2, 11).unwrap(); // step 0.02
        let w = vec![vec![Complex64::ZERO; 11]; 11];
        let sg = Scalogram::new(scales, grid, 2.0 * PI, w).unwrap();
        let region = Region::new(0.25, 0.65, 0.03, 0.11).unwrap();
        let mask = ScalogramMask::from_region(&sg, &region).unwrap();
        for k in 0..11 {
            for j in 0..11 {
                let inside = (1..=6).contains(&k) && (2..=7).contains(&j);
                assert_eq!(mask.entry(k, j), inside, "entry ({k}, {j})");
            }
        }
    }

    #[test]
    fn mask_intersection_and_dimension_checks() {
        let a = ScalogramMask::all_ones(2, 3).unwrap();
        let b = a.complement();
        let c = a.intersect(&b).unwrap();
        assert!((0..2).all(|k| (0..3).all(|j| !c.entry(k, j))));
        let d = ScalogramMask::all_ones(3, 3).unwrap();
        assert!(a.intersect(&d).is_err());

        let grid = TimeGrid::new(0.0, 1.0, 3).unwrap();
        let scales = ScaleGrid::new(vec![0.1, 0.2]).unwrap();
        let sg = Scalogram::new(scales, grid, 2.0 * PI, vec![vec![Complex64::ZERO; 3]; 2])
            .unwrap();
        assert!(icwt_masked(&sg, &d).is_err());
    }

    #[test]
    fn half_gaussian_coverage_halves_the_recovered_amplitude() {
        // Truncating the scale integral exactly at the ridge keeps half the
        // Gaussian mass, so the recovered amplitude halves.
        let n = 1024;
        let grid = unit_period_grid(n);
        let omega = 2.0 * PI * 4.0;
        let omega0 = 2.0 * PI;
        let ridge = omega0 / omega;
        let sigma = 1.0 / omega;
        let full_scales =
            ScaleGrid::linspace((ridge - 5.0 * sigma).max(0.0), ridge + 5.0 * sigma, 201).unwrap();
        let half_scales =
            ScaleGrid::linspace((ridge - 5.0 * sigma).max(0.0), ridge, 101).unwrap();
        let full = icwt_full(&synthetic_harmonic_scalogram(
            grid,
            &full_scales,
            omega,
            omega0,
        ))
        .unwrap();
        let half = icwt_full(&synthetic_harmonic_scalogram(
            grid,
            &half_scales,
            omega,
            omega0,
        ))
        .unwrap();
        let amp = |v: &[f64]| v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        assert_relative_eq!(amp(half.values()) / amp(full.values()), 0.5, epsilon = 1e-3);
    }
}
