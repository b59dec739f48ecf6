//! Power-law rain attenuation coefficients and the specific-attenuation
//! law γ = k·Rᵅ.
//!
//! The per-polarization regression coefficients (k, α) come from the
//! ITU-R P.838-3 tables, bundled as `data/p838_coefficients.csv`. Between
//! table frequencies, log k is interpolated linearly in log f and α
//! linearly in log f. Circular and tilted linear polarizations combine the
//! horizontal and vertical coefficients through the path elevation θ and
//! polarization tilt τ:
//!
//! ```text
//! k = [k_H + k_V + (k_H − k_V)·cos²θ·cos 2τ] / 2
//! α = [k_H·α_H + k_V·α_V + (k_H·α_H − k_V·α_V)·cos²θ·cos 2τ] / (2k)
//! ```
//!
//! For circular polarization τ = 45°, cos 2τ = 0, and the elevation
//! dependence vanishes.

use thiserror::Error;

/// Bundled P.838-3 coefficient table, 1-55 GHz.
const BUNDLED_TABLE_CSV: &str = include_str!("../data/p838_coefficients.csv");

/// Expected header of a coefficient CSV.
pub const COEFFICIENT_CSV_HEADER: &str = "frequency_ghz,k_h,alpha_h,k_v,alpha_v";

/// One table row of per-polarization regression coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientRow {
    pub frequency_ghz: f64,
    pub k_h: f64,
    pub alpha_h: f64,
    pub k_v: f64,
    pub alpha_v: f64,
}

/// Wave polarization of the link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Polarization {
    Horizontal,
    Vertical,
    Circular,
    /// Linear polarization at an explicit tilt angle τ (degrees, 0-90)
    /// relative to horizontal.
    Tilted { tau_deg: f64 },
}

impl Polarization {
    /// Polarization tilt angle τ in degrees.
    fn tau_deg(self) -> f64 {
        match self {
            Polarization::Horizontal => 0.0,
            Polarization::Vertical => 90.0,
            Polarization::Circular => 45.0,
            Polarization::Tilted { tau_deg } => tau_deg,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoeffError {
    #[error("frequency {frequency_ghz} GHz outside the coefficient table span [{min_ghz}, {max_ghz}] GHz")]
    OutOfRange {
        frequency_ghz: f64,
        min_ghz: f64,
        max_ghz: f64,
    },
    #[error("coefficient table line {line}: {message}")]
    BadTable { line: usize, message: String },
    #[error("polarization tilt {0}° outside [0, 90]")]
    BadTilt(f64),
}

/// Immutable, frequency-sorted coefficient table.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    rows: Vec<CoefficientRow>,
}

impl CoefficientTable {
    /// The bundled ITU-R P.838-3 table (1-55 GHz).
    pub fn bundled() -> Self {
        Self::parse_csv(BUNDLED_TABLE_CSV).expect("bundled coefficient table is well-formed")
    }

    /// Parse a table from CSV text with header [`COEFFICIENT_CSV_HEADER`].
    pub fn parse_csv(text: &str) -> Result<Self, CoeffError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, header)) if header.trim_end() == COEFFICIENT_CSV_HEADER => {}
            _ => {
                return Err(CoeffError::BadTable {
                    line: 1,
                    message: format!("expected header {COEFFICIENT_CSV_HEADER:?}"),
                })
            }
        }
        let mut rows = Vec::new();
        for (idx, line) in lines {
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<f64> = line
                .split(',')
                .map(|f| f.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| CoeffError::BadTable {
                    line: idx + 1,
                    message: e.to_string(),
                })?;
            if fields.len() != 5 {
                return Err(CoeffError::BadTable {
                    line: idx + 1,
                    message: format!("expected 5 fields, found {}", fields.len()),
                });
            }
            rows.push(CoefficientRow {
                frequency_ghz: fields[0],
                k_h: fields[1],
                alpha_h: fields[2],
                k_v: fields[3],
                alpha_v: fields[4],
            });
        }
        Self::from_rows(rows)
    }

    /// Build a table from rows, validating positivity and strict frequency
    /// ordering.
    pub fn from_rows(rows: Vec<CoefficientRow>) -> Result<Self, CoeffError> {
        for (i, row) in rows.iter().enumerate() {
            let bad = |message: String| CoeffError::BadTable {
                line: i + 2,
                message,
            };
            if !(row.k_h > 0.0 && row.k_v > 0.0 && row.alpha_h > 0.0 && row.alpha_v > 0.0) {
                return Err(bad("coefficients must be positive".into()));
            }
            if i > 0 && row.frequency_ghz <= rows[i - 1].frequency_ghz {
                return Err(bad("frequencies must be strictly ascending".into()));
            }
        }
        if rows.is_empty() {
            return Err(CoeffError::BadTable {
                line: 1,
                message: "empty table".into(),
            });
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[CoefficientRow] {
        &self.rows
    }

    /// Frequency span covered by the table, GHz.
    pub fn span_ghz(&self) -> (f64, f64) {
        (
            self.rows.first().unwrap().frequency_ghz,
            self.rows.last().unwrap().frequency_ghz,
        )
    }

    /// Per-polarization (k_H, α_H, k_V, α_V) at `frequency_ghz`, exact at
    /// table nodes and log-frequency interpolated between them.
    fn row_at(&self, frequency_ghz: f64) -> Result<CoefficientRow, CoeffError> {
        let (min_ghz, max_ghz) = self.span_ghz();
        if !(frequency_ghz >= min_ghz && frequency_ghz <= max_ghz) {
            return Err(CoeffError::OutOfRange {
                frequency_ghz,
                min_ghz,
                max_ghz,
            });
        }
        let hi = self
            .rows
            .partition_point(|row| row.frequency_ghz < frequency_ghz);
        if hi < self.rows.len() && self.rows[hi].frequency_ghz == frequency_ghz {
            return Ok(self.rows[hi]);
        }
        let (a, b) = (&self.rows[hi - 1], &self.rows[hi]);
        let t = (frequency_ghz.ln() - a.frequency_ghz.ln())
            / (b.frequency_ghz.ln() - a.frequency_ghz.ln());
        let log_lerp = |x: f64, y: f64| (x.ln() + t * (y.ln() - x.ln())).exp();
        let lerp = |x: f64, y: f64| x + t * (y - x);
        Ok(CoefficientRow {
            frequency_ghz,
            k_h: log_lerp(a.k_h, b.k_h),
            alpha_h: lerp(a.alpha_h, b.alpha_h),
            k_v: log_lerp(a.k_v, b.k_v),
            alpha_v: lerp(a.alpha_v, b.alpha_v),
        })
    }

    /// Combined (k, α) at `frequency_ghz` for the given polarization and
    /// path elevation.
    pub fn coefficients_at(
        &self,
        frequency_ghz: f64,
        polarization: Polarization,
        elevation_deg: f64,
    ) -> Result<(f64, f64), CoeffError> {
        let row = self.row_at(frequency_ghz)?;
        // Pure linear polarizations read their column directly; only
        // circular/tilted mix H and V through the path elevation.
        match polarization {
            Polarization::Horizontal => return Ok((row.k_h, row.alpha_h)),
            Polarization::Vertical => return Ok((row.k_v, row.alpha_v)),
            Polarization::Circular | Polarization::Tilted { .. } => {}
        }
        let tau_deg = polarization.tau_deg();
        if !(0.0..=90.0).contains(&tau_deg) {
            return Err(CoeffError::BadTilt(tau_deg));
        }
        let cos_theta = elevation_deg.to_radians().cos();
        let mix = cos_theta * cos_theta * (2.0 * tau_deg).to_radians().cos();
        let k = 0.5 * (row.k_h + row.k_v + (row.k_h - row.k_v) * mix);
        let ka_h = row.k_h * row.alpha_h;
        let ka_v = row.k_v * row.alpha_v;
        let alpha = (ka_h + ka_v + (ka_h - ka_v) * mix) / (2.0 * k);
        Ok((k, alpha))
    }
}

/// Specific attenuation γ = k·Rᵅ in dB/km for a rain rate in mm/h.
pub fn specific_attenuation(k: f64, alpha: f64, rate_mm_h: f64) -> f64 {
    if rate_mm_h <= 0.0 {
        return 0.0;
    }
    k * rate_mm_h.powf(alpha)
}
