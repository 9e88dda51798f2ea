//! Run configuration shared by the transform and inversion commands, with
//! upfront validation. Every rejected invariant gets its own stable error
//! code so scripts can branch on failures without parsing prose.

use clap::ValueEnum;
use morlet_icwt::{Region, ScaleGrid};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundaryMode {
    /// Reflect the signal at both ends before transforming, crop after.
    Reflect,
    /// Treat the input as one period; no extension, no cropping.
    Periodic,
}

impl BoundaryMode {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundaryMode::Reflect => "reflect",
            BoundaryMode::Periodic => "periodic",
        }
    }
}

/// Fully validated parameters of a run. Defaults follow the reference
/// experiment: central frequency 2*pi, 51 scales spanning [0, 0.2],
/// reflective boundary.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub omega0: f64,
    pub scale_min: f64,
    pub scale_max: f64,
    pub scale_count: usize,
    pub threshold: Option<f64>,
    pub region: Option<Region>,
    pub boundary: BoundaryMode,
    pub compat_freq_norm: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            omega0: std::f64::consts::TAU,
            scale_min: 0.0,
            scale_max: 0.2,
            scale_count: 51,
            threshold: None,
            region: None,
            boundary: BoundaryMode::Reflect,
            compat_freq_norm: false,
        }
    }
}

impl RunConfig {
    /// Checks every config invariant, returning the first violation with
    /// its stable code.
    pub fn validate(&self) -> Result<()> {
        if !(self.omega0.is_finite() && self.omega0 > 0.0) {
            return Err(CliError::validation(
                "E_OMEGA0",
                format!("--omega0 must be finite and positive, got {}", self.omega0),
            ));
        }
        if !(self.scale_min.is_finite()
            && self.scale_max.is_finite()
            && self.scale_min >= 0.0
            && self.scale_min < self.scale_max)
        {
            return Err(CliError::validation(
                "E_SCALE_RANGE",
                format!(
                    "scale range must satisfy 0 <= --a-min < --a-max, got [{}, {}]",
                    self.scale_min, self.scale_max
                ),
            ));
        }
        if self.scale_count < 2 {
            return Err(CliError::validation(
                "E_SCALE_COUNT",
                format!("--a-count must be at least 2, got {}", self.scale_count),
            ));
        }
        if let Some(l) = self.threshold {
            if !(l.is_finite() && (0.0..=1.0).contains(&l)) {
                return Err(CliError::validation(
                    "E_THRESHOLD",
                    format!("--threshold must lie in [0, 1], got {l}"),
                ));
            }
        }
        Ok(())
    }

    pub fn scale_grid(&self) -> Result<ScaleGrid> {
        Ok(ScaleGrid::linspace(
            self.scale_min,
            self.scale_max,
            self.scale_count,
        )?)
    }
}

/// Assembles the optional region from its four flags: either all four are
/// given or none.
pub fn region_from_flags(
    b_lo: Option<f64>,
    b_hi: Option<f64>,
    a_lo: Option<f64>,
    a_hi: Option<f64>,
) -> Result<Option<Region>> {
    match (b_lo, b_hi, a_lo, a_hi) {
        (None, None, None, None) => Ok(None),
        (Some(b_lo), Some(b_hi), Some(a_lo), Some(a_hi)) => {
            let region = Region::new(b_lo, b_hi, a_lo, a_hi).map_err(|e| {
                CliError::validation("E_REGION", e.to_string())
            })?;
            Ok(Some(region))
        }
        _ => Err(CliError::validation(
            "E_REGION_PARTIAL",
            "a region needs all four of --b-lo, --b-hi, --a-lo, --a-hi",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        assert!(RunConfig::default().validate().is_ok());
    }

    #[test]
    fn each_violation_has_its_own_code() {
        let check = |mutate: fn(&mut RunConfig), code: &str| {
            let mut cfg = RunConfig::default();
            mutate(&mut cfg);
            assert_eq!(cfg.validate().unwrap_err().code, code);
        };
        check(|c| c.omega0 = 0.0, "E_OMEGA0");
        check(|c| c.omega0 = f64::NAN, "E_OMEGA0");
        check(|c| c.scale_min = 0.3, "E_SCALE_RANGE");
        check(|c| c.scale_min = -0.1, "E_SCALE_RANGE");
        check(|c| c.scale_count = 1, "E_SCALE_COUNT");
        check(|c| c.threshold = Some(1.5), "E_THRESHOLD");
        check(|c| c.threshold = Some(-0.1), "E_THRESHOLD");
    }

    #[test]
    fn region_flags_must_come_as_a_full_set() {
        assert!(region_from_flags(None, None, None, None).unwrap().is_none());
        assert!(region_from_flags(Some(0.1), Some(0.2), Some(0.0), Some(0.1))
            .unwrap()
            .is_some());
        let err = region_from_flags(Some(0.1), None, None, None).unwrap_err();
        assert_eq!(err.code, "E_REGION_PARTIAL");
        let err = region_from_flags(Some(0.5), Some(0.2), Some(0.0), Some(0.1)).unwrap_err();
        assert_eq!(err.code, "E_REGION");
    }
}
