//! Rain attenuation prediction for earth-to-satellite links.
//!
//! The library chains three pieces:
//!
//! 1. **Rain statistics** ([`rh_model`]) — the Rice-Holmberg cumulative
//!    rain-rate distribution, parameterised by annual rainfall depth `M`
//!    and thunderstorm ratio `β`, inverted numerically to obtain the rain
//!    rate exceeded for a given percentage of an average year (notably
//!    R₀.₀₁).
//! 2. **Link geometry** ([`link_geometry`]) — rain height, slant-path
//!    length below the rain height, its horizontal projection, and the
//!    look-angle elevation toward a geostationary satellite.
//! 3. **Attenuation** ([`rain_coeffs`] + [`itu618`]) — the power-law
//!    specific attenuation γ = k·Rᵅ with ITU-R P.838-3 regression
//!    coefficients, followed by the ITU-R P.618 ten-step procedure
//!    (horizontal reduction factor, vertical adjustment factor, effective
//!    path length, A₀.₀₁, and scaling to other exceedance percentages).
//!
//! [`climatology`] ingests long-term monthly rainfall records from CSV and
//! carries a built-in registry of four Bangladeshi region profiles used as
//! worked references throughout the test suite.
//!
//! All computations are pure functions over immutable inputs and safe for
//! unsynchronized concurrent use.

pub mod climatology;
pub mod itu618;
pub mod link_geometry;
pub mod rain_coeffs;
pub mod rh_model;

pub use climatology::{RainfallDataset, RainfallRecord, RegionProfile};
pub use itu618::{AttenuationBreakdown, LinkConfig};
pub use link_geometry::StationSite;
pub use rain_coeffs::{CoefficientTable, Polarization};
pub use rh_model::RainClimate;
