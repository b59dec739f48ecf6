//! Geometric preliminaries of the attenuation pipeline: rain height,
//! slant-path length below the rain height, its horizontal projection,
//! and the look-angle elevation toward a geostationary satellite.
//!
//! All angles cross this interface in degrees; conversion to radians is
//! internal.

use thiserror::Error;

/// WGS-84 equatorial radius, km. Used for look-angle geometry.
pub const EARTH_EQUATORIAL_RADIUS_KM: f64 = 6378.137;

/// Geostationary orbit radius from the earth's centre, km.
pub const GEOSTATIONARY_RADIUS_KM: f64 = 42164.17;

/// Effective earth radius of the low-elevation slant-path formula, km.
/// Distinct from the physical radius above.
pub const EFFECTIVE_EARTH_RADIUS_KM: f64 = 8500.0;

/// Rain-column top sits this far above the freezing height, km.
pub const RAIN_HEIGHT_OFFSET_KM: f64 = 0.36;

/// Elevation below which the spherical-earth slant-path formula applies,
/// degrees.
const LOW_ELEVATION_DEG: f64 = 5.0;

/// Earth-station location.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationSite {
    pub latitude_deg: f64,
    /// East-positive longitude.
    pub longitude_deg: f64,
    /// Height above mean sea level, km.
    pub altitude_km: f64,
}

/// Slant-path length below the rain height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SlantPath {
    /// Path length in km.
    Length(f64),
    /// Station at or above the rain height: the rain attenuation is zero
    /// for every time percentage.
    ZeroPath,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("satellite at {satellite_longitude_deg}°E is below the horizon from ({latitude_deg}, {longitude_deg}) (elevation {elevation_deg:.2}°)")]
    NotVisible {
        latitude_deg: f64,
        longitude_deg: f64,
        satellite_longitude_deg: f64,
        elevation_deg: f64,
    },
}

/// Elevation angle in degrees from a site to a geostationary satellite at
/// the given east-positive longitude.
pub fn elevation_angle(
    site: StationSite,
    satellite_longitude_deg: f64,
) -> Result<f64, GeometryError> {
    let lat = site.latitude_deg.to_radians();
    let delta_lon = (site.longitude_deg - satellite_longitude_deg).to_radians();
    // Central angle between the sub-satellite point and the site.
    let cos_psi = lat.cos() * delta_lon.cos();
    let sin_psi = (1.0 - cos_psi * cos_psi).sqrt();
    let rho = EARTH_EQUATORIAL_RADIUS_KM / GEOSTATIONARY_RADIUS_KM;
    let elevation_deg = ((cos_psi - rho) / sin_psi).atan().to_degrees();
    if elevation_deg <= 0.0 || !elevation_deg.is_finite() {
        return Err(GeometryError::NotVisible {
            latitude_deg: site.latitude_deg,
            longitude_deg: site.longitude_deg,
            satellite_longitude_deg,
            elevation_deg,
        });
    }
    Ok(elevation_deg)
}

/// Rain height: freezing height plus a fixed 0.36 km offset.
pub fn rain_height(freezing_height_km: f64) -> f64 {
    freezing_height_km + RAIN_HEIGHT_OFFSET_KM
}

/// Slant-path length below the rain height.
///
/// Uses the plane-earth formula for elevations of 5° and above, and the
/// spherical-earth correction with the 8500 km effective radius below 5°.
pub fn slant_path_length(rain_height_km: f64, station_height_km: f64, elevation_deg: f64) -> SlantPath {
    let dh = rain_height_km - station_height_km;
    if dh <= 0.0 {
        return SlantPath::ZeroPath;
    }
    let sin_theta = elevation_deg.to_radians().sin();
    let length = if elevation_deg >= LOW_ELEVATION_DEG {
        dh / sin_theta
    } else {
        2.0 * dh / ((sin_theta * sin_theta + 2.0 * dh / EFFECTIVE_EARTH_RADIUS_KM).sqrt() + sin_theta)
    };
    SlantPath::Length(length)
}

/// Horizontal projection of the slant path.
pub fn horizontal_projection(slant_length_km: f64, elevation_deg: f64) -> f64 {
    slant_length_km * elevation_deg.to_radians().cos()
}
