//! The ten-step earth-space rain attenuation procedure.
//!
//! Given the station geometry, the rain rate exceeded 0.01% of an average
//! year, and the power-law coefficients, the procedure runs:
//!
//! 1. rain height h_R (Step 1)
//! 2. slant path L_s and horizontal projection L_G (Steps 2-3)
//! 3. R₀.₀₁ from the rain statistics (Step 4)
//! 4. specific attenuation γ_R = k·Rᵅ (Step 5)
//! 5. horizontal reduction factor r₀.₀₁ (Step 6)
//! 6. vertical adjustment factor v₀.₀₁ and L_R (Step 7)
//! 7. effective path length L_E = L_R·v₀.₀₁ (Step 8)
//! 8. A₀.₀₁ = γ_R·L_E (Step 9)
//! 9. scaling to any exceedance percentage p in [0.001, 5] (Step 10)
//!
//! Two early exits return zero attenuation for every percentage: a
//! station at or above the rain height, and a zero 0.01% rain rate.
//!
//! Every intermediate is retained in [`AttenuationBreakdown`] so each
//! step can be inspected and tested on its own.

use serde::Serialize;
use thiserror::Error;

use crate::climatology::{self, ClimatologyError, RainfallDataset, RegionProfile};
use crate::link_geometry::{self, GeometryError, SlantPath, StationSite};
use crate::rain_coeffs::{specific_attenuation, CoeffError, CoefficientTable, Polarization};
use crate::rh_model::{self, RainClimate, RhError};

/// Latitude below which the Step 7/10 latitude corrections apply, degrees.
const LATITUDE_BREAK_DEG: f64 = 36.0;

/// Valid exceedance-percentage range of the Step 10 scaling.
pub const MIN_PERCENT: f64 = 0.001;
pub const MAX_PERCENT: f64 = 5.0;

/// Link parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkConfig {
    pub frequency_ghz: f64,
    pub polarization: Polarization,
    /// East-positive longitude of the geostationary satellite, degrees.
    pub satellite_longitude_deg: f64,
}

/// Every intermediate of the prediction pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AttenuationBreakdown {
    /// Elevation angle toward the satellite, degrees.
    pub elevation_deg: f64,
    /// Rain rate exceeded 0.01% of the year, mm/h.
    pub rate_mm_h: f64,
    /// Rain height, km.
    pub h_r_km: f64,
    /// Slant-path length below the rain height, km.
    pub l_s_km: f64,
    /// Horizontal projection of the slant path, km.
    pub l_g_km: f64,
    /// Specific attenuation, dB/km.
    pub gamma_r_db_km: f64,
    /// Horizontal reduction factor.
    pub r001: f64,
    /// Step 7 intermediate angle ξ, degrees.
    pub zeta_deg: f64,
    /// Reduced path length, km.
    pub l_r_km: f64,
    /// Step 7 latitude correction χ, degrees.
    pub chi_deg: f64,
    /// Vertical adjustment factor.
    pub v001: f64,
    /// Effective path length, km.
    pub l_e_km: f64,
    /// Attenuation exceeded 0.01% of the year, dB.
    pub a001_db: f64,
    /// Exceedance percentage the prediction is scaled to.
    pub p_percent: f64,
    /// Step 10 season/latitude adjustment term.
    pub beta_adj: f64,
    /// Attenuation exceeded `p_percent` of the year, dB.
    pub a_p_db: f64,
}

impl AttenuationBreakdown {
    /// All-steps-skipped breakdown: zero attenuation for every percentage.
    fn zero(elevation_deg: f64, rate_mm_h: f64, h_r_km: f64, p_percent: f64) -> Self {
        Self {
            elevation_deg,
            rate_mm_h,
            h_r_km,
            l_s_km: 0.0,
            l_g_km: 0.0,
            gamma_r_db_km: 0.0,
            r001: 0.0,
            zeta_deg: 0.0,
            l_r_km: 0.0,
            chi_deg: 0.0,
            v001: 0.0,
            l_e_km: 0.0,
            a001_db: 0.0,
            p_percent,
            beta_adj: 0.0,
            a_p_db: 0.0,
        }
    }
}

/// Step 7 outputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerticalAdjustment {
    pub zeta_deg: f64,
    pub l_r_km: f64,
    pub chi_deg: f64,
    pub v001: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Itu618Error {
    #[error("exceedance percentage {0}% outside [{MIN_PERCENT}, {MAX_PERCENT}]")]
    PercentOutOfRange(f64),
    #[error("availability {0}% outside [95, 99.999] (exceedance must stay in [{MIN_PERCENT}, {MAX_PERCENT}])")]
    AvailabilityOutOfRange(f64),
    #[error(transparent)]
    Coefficients(#[from] CoeffError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    RainModel(#[from] RhError),
    #[error(transparent)]
    Climatology(#[from] ClimatologyError),
}

/// Step 6: horizontal reduction factor r₀.₀₁.
pub fn horizontal_reduction_factor(l_g_km: f64, gamma_r_db_km: f64, frequency_ghz: f64) -> f64 {
    1.0 / (1.0 + 0.78 * (l_g_km * gamma_r_db_km / frequency_ghz).sqrt()
        - 0.38 * (1.0 - (-2.0 * l_g_km).exp()))
}

/// Step 7: vertical adjustment factor v₀.₀₁ and the reduced path L_R.
#[allow(clippy::too_many_arguments)]
pub fn vertical_adjustment_factor(
    elevation_deg: f64,
    latitude_deg: f64,
    h_r_km: f64,
    h_s_km: f64,
    l_g_km: f64,
    r001: f64,
    gamma_r_db_km: f64,
    frequency_ghz: f64,
) -> VerticalAdjustment {
    let dh = h_r_km - h_s_km;
    let theta = elevation_deg.to_radians();
    let zeta_deg = (dh / (l_g_km * r001)).atan().to_degrees();
    let l_r_km = if zeta_deg > elevation_deg {
        l_g_km * r001 / theta.cos()
    } else {
        dh / theta.sin()
    };
    let chi_deg = if latitude_deg.abs() < LATITUDE_BREAK_DEG {
        LATITUDE_BREAK_DEG - latitude_deg.abs()
    } else {
        0.0
    };
    let v001 = 1.0
        / (1.0
            + theta.sin().sqrt()
                * (31.0 * (1.0 - (-elevation_deg / (1.0 + chi_deg)).exp())
                    * (l_r_km * gamma_r_db_km).sqrt()
                    / (frequency_ghz * frequency_ghz)
                    - 0.45));
    VerticalAdjustment {
        zeta_deg,
        l_r_km,
        chi_deg,
        v001,
    }
}

/// Steps 1-9: attenuation exceeded 0.01% of an average year, with every
/// intermediate.
///
/// The returned breakdown has `p_percent = 0.01` and `a_p_db = a001_db`.
pub fn attenuation_001(
    table: &CoefficientTable,
    site: StationSite,
    elevation_deg: f64,
    freezing_height_km: f64,
    rate_mm_h: f64,
    frequency_ghz: f64,
    polarization: Polarization,
) -> Result<AttenuationBreakdown, Itu618Error> {
    let h_r_km = link_geometry::rain_height(freezing_height_km);

    let l_s_km = match link_geometry::slant_path_length(h_r_km, site.altitude_km, elevation_deg) {
        SlantPath::ZeroPath => {
            return Ok(AttenuationBreakdown::zero(elevation_deg, rate_mm_h, h_r_km, 0.01))
        }
        SlantPath::Length(l) => l,
    };
    if rate_mm_h <= 0.0 {
        return Ok(AttenuationBreakdown::zero(elevation_deg, rate_mm_h, h_r_km, 0.01));
    }

    let l_g_km = link_geometry::horizontal_projection(l_s_km, elevation_deg);
    let (k, alpha) = table.coefficients_at(frequency_ghz, polarization, elevation_deg)?;
    let gamma_r_db_km = specific_attenuation(k, alpha, rate_mm_h);
    let r001 = horizontal_reduction_factor(l_g_km, gamma_r_db_km, frequency_ghz);
    let va = vertical_adjustment_factor(
        elevation_deg,
        site.latitude_deg,
        h_r_km,
        site.altitude_km,
        l_g_km,
        r001,
        gamma_r_db_km,
        frequency_ghz,
    );
    let l_e_km = va.l_r_km * va.v001;
    let a001_db = gamma_r_db_km * l_e_km;

    Ok(AttenuationBreakdown {
        elevation_deg,
        rate_mm_h,
        h_r_km,
        l_s_km,
        l_g_km,
        gamma_r_db_km,
        r001,
        zeta_deg: va.zeta_deg,
        l_r_km: va.l_r_km,
        chi_deg: va.chi_deg,
        v001: va.v001,
        l_e_km,
        a001_db,
        p_percent: 0.01,
        beta_adj: 0.0,
        a_p_db: a001_db,
    })
}

/// Step 10: scale A₀.₀₁ to the attenuation exceeded `p_percent` of an
/// average year. Returns `(a_p_db, beta_adj)`.
pub fn scale_to_percentage(
    a001_db: f64,
    p_percent: f64,
    latitude_deg: f64,
    elevation_deg: f64,
) -> Result<(f64, f64), Itu618Error> {
    if !(MIN_PERCENT..=MAX_PERCENT).contains(&p_percent) {
        return Err(Itu618Error::PercentOutOfRange(p_percent));
    }
    if a001_db <= 0.0 {
        return Ok((0.0, 0.0));
    }
    let abs_lat = latitude_deg.abs();
    let beta_adj = if p_percent >= 1.0 || abs_lat >= LATITUDE_BREAK_DEG {
        0.0
    } else if elevation_deg >= 25.0 {
        -0.005 * (abs_lat - LATITUDE_BREAK_DEG)
    } else {
        -0.005 * (abs_lat - LATITUDE_BREAK_DEG) + 1.8
            - 4.25 * elevation_deg.to_radians().sin()
    };
    let exponent = -(0.655 + 0.033 * p_percent.ln() - 0.045 * a001_db.ln()
        - beta_adj * (1.0 - p_percent) * elevation_deg.to_radians().sin());
    let a_p_db = a001_db * (p_percent / 0.01).powf(exponent);
    Ok((a_p_db, beta_adj))
}

/// End-to-end prediction for a region profile, with the 0.01% rain rate
/// taken from the profile's rain climate.
pub fn predict(
    table: &CoefficientTable,
    profile: &RegionProfile,
    link: LinkConfig,
    freezing_height_km: f64,
    p_percent: f64,
) -> Result<AttenuationBreakdown, Itu618Error> {
    predict_with_rate(table, profile, link, freezing_height_km, p_percent, None)
}

/// End-to-end prediction with an optional override of the 0.01% rain
/// rate (e.g. the rain-map value instead of local statistics).
pub fn predict_with_rate(
    table: &CoefficientTable,
    profile: &RegionProfile,
    link: LinkConfig,
    freezing_height_km: f64,
    p_percent: f64,
    rate_override_mm_h: Option<f64>,
) -> Result<AttenuationBreakdown, Itu618Error> {
    if !(MIN_PERCENT..=MAX_PERCENT).contains(&p_percent) {
        return Err(Itu618Error::PercentOutOfRange(p_percent));
    }
    let elevation_deg = link_geometry::elevation_angle(profile.site(), link.satellite_longitude_deg)?;
    let rate_mm_h = match rate_override_mm_h {
        Some(rate) => rate,
        // Step 4: the statistic feeding the pipeline is always the 0.01% rate.
        None => rate001(profile.climate),
    };
    let mut breakdown = attenuation_001(
        table,
        profile.site(),
        elevation_deg,
        freezing_height_km,
        rate_mm_h,
        link.frequency_ghz,
        link.polarization,
    )?;
    let (a_p_db, beta_adj) =
        scale_to_percentage(breakdown.a001_db, p_percent, profile.latitude_deg, elevation_deg)?;
    breakdown.p_percent = p_percent;
    breakdown.beta_adj = beta_adj;
    breakdown.a_p_db = a_p_db;
    Ok(breakdown)
}

/// The 0.01% rain rate of a climate, taking "it rains less than 0.01% of
/// the time" as a zero rate.
fn rate001(climate: RainClimate) -> f64 {
    match rh_model::rate_at_exceedance(climate, 0.01) {
        Ok(rate) => rate,
        Err(RhError::NoSolution { .. }) => 0.0,
        // 0.01 is always a valid percentage.
        Err(_) => unreachable!("0.01% is in (0, 100]"),
    }
}

/// Attenuation exceedance curve: `(p, A_p)` sampled at the given grid.
pub fn exceedance_curve(
    table: &CoefficientTable,
    profile: &RegionProfile,
    link: LinkConfig,
    freezing_height_km: f64,
    p_grid: &[f64],
) -> Result<Vec<(f64, f64)>, Itu618Error> {
    p_grid
        .iter()
        .map(|&p| {
            predict(table, profile, link, freezing_height_km, p).map(|b| (p, b.a_p_db))
        })
        .collect()
}

/// Fade margin (dB) needed for the given availability percentage: the
/// attenuation exceeded (100 − availability)% of the year.
pub fn fade_margin(
    table: &CoefficientTable,
    profile: &RegionProfile,
    link: LinkConfig,
    freezing_height_km: f64,
    availability_percent: f64,
) -> Result<f64, Itu618Error> {
    let p = outage_percent(availability_percent)?;
    Ok(predict(table, profile, link, freezing_height_km, p)?.a_p_db)
}

/// Convert availability to outage percentage, rejecting values whose
/// outage falls outside the Step 10 range.
pub fn outage_percent(availability_percent: f64) -> Result<f64, Itu618Error> {
    // The subtraction leaves float noise (100 − 99.99 ≠ 0.01 exactly);
    // snap to 12 decimals so round numbers map to round percentages.
    let p = ((100.0 - availability_percent) * 1e12).round() / 1e12;
    if !(MIN_PERCENT..=MAX_PERCENT).contains(&p) {
        return Err(Itu618Error::AvailabilityOutOfRange(availability_percent));
    }
    Ok(p)
}

/// Per-month fade margins from monthly rainfall climatology.
///
/// Each month's mean depth is annualized (M_eq = 12 × monthly mean) and
/// run through the full pipeline with the region's thunderstorm ratio.
/// Returns the 12 margins in calendar order.
#[allow(clippy::too_many_arguments)]
pub fn monthly_margins(
    table: &CoefficientTable,
    ds: &RainfallDataset,
    region: &str,
    profile: &RegionProfile,
    link: LinkConfig,
    freezing_height_km: f64,
    availability_percent: f64,
) -> Result<[f64; 12], Itu618Error> {
    let mut margins = [0.0; 12];
    for month in 1..=12u8 {
        let monthly = climatology::monthly_mean_depth(ds, region, month)?;
        let month_profile = RegionProfile {
            climate: RainClimate {
                annual_depth_mm: 12.0 * monthly,
                thunderstorm_ratio: profile.climate.thunderstorm_ratio,
            },
            ..profile.clone()
        };
        margins[month as usize - 1] = fade_margin(
            table,
            &month_profile,
            link,
            freezing_height_km,
            availability_percent,
        )?;
    }
    Ok(margins)
}
