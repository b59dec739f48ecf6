//! Long-term rainfall climatology: CSV ingestion, annual/monthly mean
//! depths, and the built-in registry of reference region profiles.
//!
//! Input format is a tidy CSV with the exact header
//! `region,year,month,depth_mm`, one row per station-month. Annual means
//! are taken over *complete* years only (all 12 months present), so that
//! partially recorded years do not bias the annual depth in strongly
//! seasonal climates.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Read};

use thiserror::Error;

use crate::link_geometry::StationSite;
use crate::rh_model::RainClimate;

/// Expected CSV header line.
pub const CSV_HEADER: &str = "region,year,month,depth_mm";

/// One station-month of rainfall.
#[derive(Debug, Clone, PartialEq)]
pub struct RainfallRecord {
    pub region: String,
    pub year: i32,
    /// Calendar month, 1-12.
    pub month: u8,
    /// Rainfall depth for that month, mm.
    pub depth_mm: f64,
}

/// Immutable collection of rainfall records indexed by region.
#[derive(Debug, Clone, Default)]
pub struct RainfallDataset {
    // region -> year -> month -> depth; BTreeMap keeps iteration deterministic.
    index: BTreeMap<String, BTreeMap<i32, BTreeMap<u8, f64>>>,
    len: usize,
}

/// An earth-station region with its rain climate.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionProfile {
    pub name: String,
    pub latitude_deg: f64,
    pub longitude_deg: f64,
    pub altitude_km: f64,
    pub climate: RainClimate,
}

impl RegionProfile {
    /// The station site portion of the profile.
    pub fn site(&self) -> StationSite {
        StationSite {
            latitude_deg: self.latitude_deg,
            longitude_deg: self.longitude_deg,
            altitude_km: self.altitude_km,
        }
    }
}

/// Errors from climatology ingestion and queries.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClimatologyError {
    #[error("line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("line {line}: duplicate record for ({region}, {year}, {month})")]
    DuplicateKey {
        line: usize,
        region: String,
        year: i32,
        month: u8,
    },
    #[error("unknown region {0:?}")]
    UnknownRegion(String),
    #[error("region {0:?} has no complete year (12 recorded months)")]
    NoCompleteYears(String),
    #[error("region {region:?} has no data for month {month}")]
    NoData { region: String, month: u8 },
    #[error("month {0} outside 1-12")]
    InvalidMonth(u8),
    #[error("i/o error: {0}")]
    Io(String),
}

impl RainfallDataset {
    /// Number of records.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Region identifiers, sorted.
    pub fn regions(&self) -> Vec<&str> {
        self.index.keys().map(String::as_str).collect()
    }

    fn region(&self, region: &str) -> Result<&BTreeMap<i32, BTreeMap<u8, f64>>, ClimatologyError> {
        self.index
            .get(region)
            .ok_or_else(|| ClimatologyError::UnknownRegion(region.to_string()))
    }
}

/// Parse a rainfall dataset from CSV.
///
/// The first line must be exactly [`CSV_HEADER`]. Malformed rows fail with
/// the 1-based line number; repeated `(region, year, month)` keys are
/// rejected.
pub fn load_rainfall_csv<R: Read>(source: R) -> Result<RainfallDataset, ClimatologyError> {
    let reader = BufReader::new(source);
    let mut dataset = RainfallDataset::default();
    let mut lines = reader.lines().enumerate();

    match lines.next() {
        Some((_, Ok(header))) if header.trim_end() == CSV_HEADER => {}
        Some((_, Ok(header))) => {
            return Err(ClimatologyError::ParseError {
                line: 1,
                message: format!("expected header {CSV_HEADER:?}, found {header:?}"),
            })
        }
        Some((_, Err(e))) => return Err(ClimatologyError::Io(e.to_string())),
        None => {
            return Err(ClimatologyError::ParseError {
                line: 1,
                message: "empty input, expected header".into(),
            })
        }
    }

    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line.map_err(|e| ClimatologyError::Io(e.to_string()))?;
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let record = parse_row(line, line_no)?;

        let months = dataset
            .index
            .entry(record.region.clone())
            .or_default()
            .entry(record.year)
            .or_default();
        if months.contains_key(&record.month) {
            return Err(ClimatologyError::DuplicateKey {
                line: line_no,
                region: record.region,
                year: record.year,
                month: record.month,
            });
        }
        months.insert(record.month, record.depth_mm);
        dataset.len += 1;
    }
    Ok(dataset)
}

fn parse_row(line: &str, line_no: usize) -> Result<RainfallRecord, ClimatologyError> {
    let err = |message: String| ClimatologyError::ParseError {
        line: line_no,
        message,
    };
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != 4 {
        return Err(err(format!("expected 4 fields, found {}", fields.len())));
    }
    let region = fields[0].trim();
    if region.is_empty() {
        return Err(err("empty region name".into()));
    }
    let year: i32 = fields[1]
        .trim()
        .parse()
        .map_err(|_| err(format!("bad year {:?}", fields[1])))?;
    let month: u8 = fields[2]
        .trim()
        .parse()
        .map_err(|_| err(format!("bad month {:?}", fields[2])))?;
    if !(1..=12).contains(&month) {
        return Err(err(format!("month {month} outside 1-12")));
    }
    let depth_mm: f64 = fields[3]
        .trim()
        .parse()
        .map_err(|_| err(format!("bad depth {:?}", fields[3])))?;
    if depth_mm < 0.0 || !depth_mm.is_finite() {
        return Err(err(format!("depth {depth_mm} must be finite and >= 0")));
    }
    Ok(RainfallRecord {
        region: region.to_string(),
        year,
        month,
        depth_mm,
    })
}

/// Mean annual rainfall depth (mm/year) over the region's complete years.
///
/// A year counts only when all 12 months are recorded; incomplete years
/// are excluded rather than pro-rated.
pub fn annual_mean_depth(ds: &RainfallDataset, region: &str) -> Result<f64, ClimatologyError> {
    let years = ds.region(region)?;
    let totals: Vec<f64> = years
        .values()
        .filter(|months| months.len() == 12)
        .map(|months| months.values().sum())
        .collect();
    if totals.is_empty() {
        return Err(ClimatologyError::NoCompleteYears(region.to_string()));
    }
    Ok(totals.iter().sum::<f64>() / totals.len() as f64)
}

/// Mean rainfall depth (mm) for one calendar month over all years that
/// record it.
pub fn monthly_mean_depth(
    ds: &RainfallDataset,
    region: &str,
    month: u8,
) -> Result<f64, ClimatologyError> {
    if !(1..=12).contains(&month) {
        return Err(ClimatologyError::InvalidMonth(month));
    }
    let years = ds.region(region)?;
    let depths: Vec<f64> = years
        .values()
        .filter_map(|months| months.get(&month).copied())
        .collect();
    if depths.is_empty() {
        return Err(ClimatologyError::NoData {
            region: region.to_string(),
            month,
        });
    }
    Ok(depths.iter().sum::<f64>() / depths.len() as f64)
}

/// The four built-in reference regions with their station coordinates and
/// Rice-Holmberg parameters.
pub fn builtin_regions() -> Vec<RegionProfile> {
    let profile = |name: &str, lon: f64, lat: f64, alt_km: f64, m: f64| RegionProfile {
        name: name.to_string(),
        latitude_deg: lat,
        longitude_deg: lon,
        altitude_km: alt_km,
        climate: RainClimate {
            annual_depth_mm: m,
            thunderstorm_ratio: 0.5,
        },
    };
    vec![
        profile("Dhaka", 90.24, 23.42, 4e-3, 2124.0),
        profile("Chittagong", 91.5, 22.19, 7e-3, 2887.0),
        profile("Rajshahi", 88.36, 24.22, 31e-3, 1545.0),
        profile("Sylhet", 91.52, 24.53, 9e-3, 4101.0),
    ]
}

/// Look up a built-in region by exact (case-sensitive) name.
pub fn builtin_region(name: &str) -> Option<RegionProfile> {
    builtin_regions().into_iter().find(|r| r.name == name)
}
