//! Rice-Holmberg cumulative rain-rate distribution.
//!
//! The model gives the number of hours per average year during which the
//! 1-minute rain rate `R` (mm/h) is exceeded:
//!
//! ```text
//! T(R) = M · [0.03·β·e^(−0.03R) + 0.2·(1−β)·(e^(−0.258R) + 1.86·e^(−1.63R))]
//! ```
//!
//! where `M` is the annual rainfall depth (mm) and `β` the thunderstorm
//! ratio (convective fraction of total rainfall). Dividing by 87.66
//! (an average year has 8766 hours) converts hours to percent of a year.
//!
//! `T` is strictly decreasing in `R` for `M > 0`, so the inverse — the rain
//! rate exceeded for a given percentage — is obtained by bisection.

use thiserror::Error;

/// Hours in an average year divided by 100; converts exceedance hours to
/// percent of a year.
const HOURS_PER_YEAR_OVER_100: f64 = 87.66;

/// Bisection search interval upper bound, mm/h.
const MAX_RATE_MM_H: f64 = 1000.0;

/// Absolute tolerance of the rate inversion, mm/h. Tight enough that the
/// round trip through [`exceedance_percent`] holds to 1e-4 percentage
/// points even where the distribution is steepest (near the zero-rate
/// exceedance).
const RATE_TOLERANCE_MM_H: f64 = 1e-9;

/// Rain climate parameters of the Rice-Holmberg model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RainClimate {
    /// Average annual rainfall depth `M`, mm/year.
    pub annual_depth_mm: f64,
    /// Thunderstorm ratio `β`: convective fraction of total rainfall, in [0, 1].
    pub thunderstorm_ratio: f64,
}

/// Errors from the Rice-Holmberg model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RhError {
    /// Climate parameters outside their valid ranges.
    #[error("invalid climate: annual depth {annual_depth_mm} mm, thunderstorm ratio {thunderstorm_ratio} (need depth >= 0 and ratio in [0, 1])")]
    InvalidClimate {
        annual_depth_mm: f64,
        thunderstorm_ratio: f64,
    },
    /// The requested exceedance percentage is never attained: it exceeds
    /// the percentage of time it rains at all, or the climate has no rain.
    #[error("no rain rate is exceeded {requested_percent}% of the year (zero-rate exceedance is {max_percent}%)")]
    NoSolution {
        requested_percent: f64,
        max_percent: f64,
    },
    /// Exceedance percentage outside (0, 100].
    #[error("exceedance percentage {0} outside (0, 100]")]
    InvalidPercent(f64),
}

impl RainClimate {
    /// Validated constructor.
    pub fn new(annual_depth_mm: f64, thunderstorm_ratio: f64) -> Result<Self, RhError> {
        if annual_depth_mm < 0.0
            || !annual_depth_mm.is_finite()
            || !(0.0..=1.0).contains(&thunderstorm_ratio)
        {
            return Err(RhError::InvalidClimate {
                annual_depth_mm,
                thunderstorm_ratio,
            });
        }
        Ok(Self {
            annual_depth_mm,
            thunderstorm_ratio,
        })
    }
}

/// Percentage of an average year during which the 1-minute rain rate
/// exceeds `rate_mm_h`.
///
/// Strictly decreasing in the rate for `M > 0`; identically 0 for `M = 0`.
/// Negative rates are treated as 0 mm/h.
pub fn exceedance_percent(climate: RainClimate, rate_mm_h: f64) -> f64 {
    let r = rate_mm_h.max(0.0);
    let m = climate.annual_depth_mm;
    let beta = climate.thunderstorm_ratio;
    let hours = m
        * (0.03 * beta * (-0.03 * r).exp()
            + 0.2 * (1.0 - beta) * ((-0.258 * r).exp() + 1.86 * (-1.63 * r).exp()));
    hours / HOURS_PER_YEAR_OVER_100
}

/// Rain rate (mm/h) exceeded for `percent` of an average year.
///
/// Inverts [`exceedance_percent`] by bisection on [0, 1000] mm/h to an
/// absolute tolerance of 1e-4 mm/h. Fails with [`RhError::NoSolution`]
/// when `percent` exceeds the zero-rate exceedance (it rains less often
/// than that) or the climate is dry.
pub fn rate_at_exceedance(climate: RainClimate, percent: f64) -> Result<f64, RhError> {
    if !(percent > 0.0 && percent <= 100.0) {
        return Err(RhError::InvalidPercent(percent));
    }
    let max_percent = exceedance_percent(climate, 0.0);
    if percent > max_percent || climate.annual_depth_mm <= 0.0 {
        return Err(RhError::NoSolution {
            requested_percent: percent,
            max_percent,
        });
    }

    let mut lo = 0.0_f64;
    let mut hi = MAX_RATE_MM_H;
    // exceedance_percent(lo) >= percent >= exceedance_percent(hi)
    while hi - lo > RATE_TOLERANCE_MM_H {
        let mid = 0.5 * (lo + hi);
        if exceedance_percent(climate, mid) >= percent {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Rain-rate CDF sampled at a grid of exceedance percentages.
///
/// Returns `(percent, rate)` pairs in the order given. Any grid point
/// outside the attainable range fails the whole call, reporting the
/// offending percentage through [`RhError::NoSolution`].
pub fn cdf_curve(climate: RainClimate, p_grid: &[f64]) -> Result<Vec<(f64, f64)>, RhError> {
    p_grid
        .iter()
        .map(|&p| rate_at_exceedance(climate, p).map(|r| (p, r)))
        .collect()
}
