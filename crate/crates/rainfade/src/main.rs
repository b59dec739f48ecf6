//! Command-line front end: region registry, rain-rate inversion,
//! attenuation prediction, exceedance curves, fade margins, and monthly
//! margins from rainfall CSVs. Emits plot-ready CSV/JSON or a
//! human-readable table.
//!
//! Exit codes: 0 success, 1 domain/data error, 2 usage error.

use std::fs::File;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rainfade::climatology::{self, RegionProfile};
use rainfade::itu618::{self, AttenuationBreakdown, LinkConfig};
use rainfade::link_geometry;
use rainfade::rain_coeffs::{CoefficientTable, Polarization};
use rainfade::rh_model::{self, RainClimate};

/// Satellite longitude the reference elevation angles were computed for.
const DEFAULT_SATELLITE_LONGITUDE_DEG: f64 = 78.5;
/// Mean 0°C isotherm height for the reference climate, km.
const DEFAULT_FREEZING_HEIGHT_KM: f64 = 4.5;

#[derive(Parser)]
#[command(
    name = "rainfade",
    about = "Rain attenuation and fade margins for earth-space links",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolarizationArg {
    Circular,
    Horizontal,
    Vertical,
}

impl From<PolarizationArg> for Polarization {
    fn from(p: PolarizationArg) -> Self {
        match p {
            PolarizationArg::Circular => Polarization::Circular,
            PolarizationArg::Horizontal => Polarization::Horizontal,
            PolarizationArg::Vertical => Polarization::Vertical,
        }
    }
}

#[derive(Args)]
struct CommonLink {
    /// Carrier frequency, GHz.
    #[arg(long = "f")]
    frequency_ghz: f64,
    /// Geostationary satellite longitude, degrees east.
    #[arg(long = "sat-lon", default_value_t = DEFAULT_SATELLITE_LONGITUDE_DEG)]
    satellite_longitude_deg: f64,
    /// 0°C isotherm (freezing) height, km.
    #[arg(long = "h0", default_value_t = DEFAULT_FREEZING_HEIGHT_KM)]
    freezing_height_km: f64,
    /// Wave polarization.
    #[arg(long = "pol", value_enum, default_value = "circular")]
    polarization: PolarizationArg,
}

impl CommonLink {
    fn link(&self) -> LinkConfig {
        LinkConfig {
            frequency_ghz: self.frequency_ghz,
            polarization: self.polarization.into(),
            satellite_longitude_deg: self.satellite_longitude_deg,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in region profiles.
    Regions {
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Satellite longitude used for the listed elevation angles.
        #[arg(long = "sat-lon", default_value_t = DEFAULT_SATELLITE_LONGITUDE_DEG)]
        satellite_longitude_deg: f64,
    },
    /// Rain rate exceeded for a given percentage of an average year.
    Rate {
        /// Built-in region supplying M and beta.
        #[arg(long, conflicts_with_all = ["annual_depth_mm", "thunderstorm_ratio"])]
        region: Option<String>,
        /// Annual rainfall depth M, mm/year.
        #[arg(long = "m", requires = "thunderstorm_ratio")]
        annual_depth_mm: Option<f64>,
        /// Thunderstorm ratio beta, 0-1.
        #[arg(long = "beta", requires = "annual_depth_mm")]
        thunderstorm_ratio: Option<f64>,
        /// Exceedance percentage of an average year.
        #[arg(long = "p")]
        percent: f64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Full attenuation breakdown at one exceedance percentage.
    Predict {
        #[arg(long)]
        region: String,
        #[command(flatten)]
        common: CommonLink,
        /// Exceedance percentage, 0.001-5.
        #[arg(long = "p")]
        percent: f64,
        /// Override the 0.01% rain rate (mm/h), e.g. with a rain-map value.
        #[arg(long = "r001")]
        rate_override_mm_h: Option<f64>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Attenuation exceedance curve over a log-spaced percentage grid.
    Curve {
        #[arg(long)]
        region: String,
        #[command(flatten)]
        common: CommonLink,
        #[arg(long, default_value_t = 0.001)]
        pmin: f64,
        #[arg(long, default_value_t = 5.0)]
        pmax: f64,
        #[arg(long, default_value_t = 25)]
        points: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Fade margin needed for a target availability.
    Margin {
        /// One built-in region.
        #[arg(long, conflicts_with = "all")]
        region: Option<String>,
        /// All built-in regions.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        common: CommonLink,
        /// Availability percentage, 95-99.999.
        #[arg(long, default_value_t = 99.99)]
        availability: f64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Per-month fade margins from a rainfall CSV.
    Monthly {
        /// Rainfall CSV (header `region,year,month,depth_mm`).
        #[arg(long = "csv")]
        csv_path: String,
        #[arg(long)]
        region: String,
        #[command(flatten)]
        common: CommonLink,
        #[arg(long, default_value_t = 99.99)]
        availability: f64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<(), String> {
    let table = CoefficientTable::bundled();
    match command {
        Command::Regions {
            format,
            satellite_longitude_deg,
        } => cmd_regions(format, satellite_longitude_deg),
        Command::Rate {
            region,
            annual_depth_mm,
            thunderstorm_ratio,
            percent,
            format,
        } => cmd_rate(region, annual_depth_mm, thunderstorm_ratio, percent, format),
        Command::Predict {
            region,
            common,
            percent,
            rate_override_mm_h,
            format,
        } => cmd_predict(&table, &region, &common, percent, rate_override_mm_h, format),
        Command::Curve {
            region,
            common,
            pmin,
            pmax,
            points,
            format,
        } => cmd_curve(&table, &region, &common, pmin, pmax, points, format),
        Command::Margin {
            region,
            all,
            common,
            availability,
            format,
        } => cmd_margin(&table, region, all, &common, availability, format),
        Command::Monthly {
            csv_path,
            region,
            common,
            availability,
            format,
        } => cmd_monthly(&table, &csv_path, &region, &common, availability, format),
    }
}

fn lookup_region(name: &str) -> Result<RegionProfile, String> {
    climatology::builtin_region(name).ok_or_else(|| {
        let known: Vec<String> = climatology::builtin_regions()
            .iter()
            .map(|r| r.name.clone())
            .collect();
        format!("unknown region {name:?}; built-in regions: {}", known.join(", "))
    })
}

/// Fixed 4-decimal formatting keeps output byte-stable across runs.
fn num(x: f64) -> String {
    format!("{x:.4}")
}

fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

fn emit_rows(format: Format, header: &str, rows: &[Vec<(&str, Value)>]) {
    match format {
        Format::Csv => {
            println!("{header}");
            for row in rows {
                let line: Vec<String> = row.iter().map(|(_, v)| value_text(v)).collect();
                println!("{}", line.join(","));
            }
        }
        Format::Json => {
            let objects: Vec<Value> = rows
                .iter()
                .map(|row| {
                    Value::Object(
                        row.iter()
                            .map(|(k, v)| ((*k).to_string(), v.clone()))
                            .collect(),
                    )
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&objects).unwrap());
        }
        Format::Table => {
            let names: Vec<&str> = header.split(',').collect();
            let mut widths: Vec<usize> = names.iter().map(|n| n.len()).collect();
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|row| row.iter().map(|(_, v)| value_text(v)).collect())
                .collect();
            for row in &cells {
                for (i, cell) in row.iter().enumerate() {
                    widths[i] = widths[i].max(cell.len());
                }
            }
            let line_of = |cells: &[String]| {
                cells
                    .iter()
                    .enumerate()
                    .map(|(i, c)| format!("{:>width$}", c, width = widths[i]))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            println!(
                "{}",
                line_of(&names.iter().map(|n| n.to_string()).collect::<Vec<_>>())
            );
            for row in &cells {
                println!("{}", line_of(row));
            }
        }
    }
}

fn value_text(v: &Value) -> String {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => num(x),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn cmd_regions(format: Format, satellite_longitude_deg: f64) -> Result<(), String> {
    let rows: Vec<Vec<(&str, Value)>> = climatology::builtin_regions()
        .iter()
        .map(|r| {
            let elevation = link_geometry::elevation_angle(r.site(), satellite_longitude_deg)
                .map(round4)
                .unwrap_or(f64::NAN);
            vec![
                ("region", json!(r.name)),
                ("longitude_deg", json!(r.longitude_deg)),
                ("latitude_deg", json!(r.latitude_deg)),
                ("altitude_km", json!(r.altitude_km)),
                ("annual_depth_mm", json!(r.climate.annual_depth_mm)),
                ("thunderstorm_ratio", json!(r.climate.thunderstorm_ratio)),
                ("elevation_deg", json!(elevation)),
            ]
        })
        .collect();
    emit_rows(
        format,
        "region,longitude_deg,latitude_deg,altitude_km,annual_depth_mm,thunderstorm_ratio,elevation_deg",
        &rows,
    );
    Ok(())
}

fn cmd_rate(
    region: Option<String>,
    annual_depth_mm: Option<f64>,
    thunderstorm_ratio: Option<f64>,
    percent: f64,
    format: Format,
) -> Result<(), String> {
    let (label, climate) = match (region, annual_depth_mm, thunderstorm_ratio) {
        (Some(name), None, None) => {
            let profile = lookup_region(&name)?;
            (name, profile.climate)
        }
        (None, Some(m), Some(beta)) => (
            "custom".to_string(),
            RainClimate::new(m, beta).map_err(|e| e.to_string())?,
        ),
        _ => return Err("supply either --region or both --m and --beta".into()),
    };
    let rate = rh_model::rate_at_exceedance(climate, percent).map_err(|e| e.to_string())?;
    emit_rows(
        format,
        "region,p_percent,rate_mm_h",
        &[vec![
            ("region", json!(label)),
            ("p_percent", json!(round4(percent))),
            ("rate_mm_h", json!(round4(rate))),
        ]],
    );
    Ok(())
}

fn breakdown_fields(region: &str, frequency_ghz: f64, b: &AttenuationBreakdown) -> Vec<(&'static str, Value)> {
    vec![
        ("region", json!(region)),
        ("frequency_ghz", json!(round4(frequency_ghz))),
        ("p_percent", json!(round4(b.p_percent))),
        ("elevation_deg", json!(round4(b.elevation_deg))),
        ("rate_mm_h", json!(round4(b.rate_mm_h))),
        ("h_r_km", json!(round4(b.h_r_km))),
        ("l_s_km", json!(round4(b.l_s_km))),
        ("l_g_km", json!(round4(b.l_g_km))),
        ("gamma_r_db_km", json!(round4(b.gamma_r_db_km))),
        ("r001", json!(round4(b.r001))),
        ("zeta_deg", json!(round4(b.zeta_deg))),
        ("l_r_km", json!(round4(b.l_r_km))),
        ("chi_deg", json!(round4(b.chi_deg))),
        ("v001", json!(round4(b.v001))),
        ("l_e_km", json!(round4(b.l_e_km))),
        ("a001_db", json!(round4(b.a001_db))),
        ("beta_adj", json!(round4(b.beta_adj))),
        ("a_p_db", json!(round4(b.a_p_db))),
    ]
}

fn cmd_predict(
    table: &CoefficientTable,
    region: &str,
    common: &CommonLink,
    percent: f64,
    rate_override_mm_h: Option<f64>,
    format: Format,
) -> Result<(), String> {
    let profile = lookup_region(region)?;
    let breakdown = itu618::predict_with_rate(
        table,
        &profile,
        common.link(),
        common.freezing_height_km,
        percent,
        rate_override_mm_h,
    )
    .map_err(|e| e.to_string())?;
    let fields = breakdown_fields(region, common.frequency_ghz, &breakdown);
    match format {
        Format::Table => {
            for (name, value) in &fields {
                println!("{name:>14}  {}", value_text(value));
            }
        }
        other => {
            let header: Vec<&str> = fields.iter().map(|(n, _)| *n).collect();
            emit_rows(other, &header.join(","), &[fields]);
        }
    }
    Ok(())
}

/// Log-spaced grid over [pmin, pmax], endpoints included.
fn log_grid(pmin: f64, pmax: f64, points: usize) -> Result<Vec<f64>, String> {
    if points == 0 {
        return Ok(Vec::new());
    }
    if pmin <= 0.0 || pmin.is_nan() || pmax < pmin {
        return Err(format!("bad percentage range [{pmin}, {pmax}]"));
    }
    if points == 1 {
        return Ok(vec![pmin]);
    }
    let ratio = pmax / pmin;
    Ok((0..points)
        .map(|i| pmin * ratio.powf(i as f64 / (points - 1) as f64))
        .collect())
}

fn cmd_curve(
    table: &CoefficientTable,
    region: &str,
    common: &CommonLink,
    pmin: f64,
    pmax: f64,
    points: usize,
    format: Format,
) -> Result<(), String> {
    let profile = lookup_region(region)?;
    let grid = log_grid(pmin, pmax, points)?;
    let curve = itu618::exceedance_curve(
        table,
        &profile,
        common.link(),
        common.freezing_height_km,
        &grid,
    )
    .map_err(|e| e.to_string())?;
    let rows: Vec<Vec<(&str, Value)>> = curve
        .iter()
        .map(|&(p, a)| {
            vec![
                ("p_percent", json!(round4(p))),
                ("attenuation_db", json!(round4(a))),
            ]
        })
        .collect();
    emit_rows(format, "p_percent,attenuation_db", &rows);
    Ok(())
}

fn cmd_margin(
    table: &CoefficientTable,
    region: Option<String>,
    all: bool,
    common: &CommonLink,
    availability: f64,
    format: Format,
) -> Result<(), String> {
    let profiles = match (region, all) {
        (Some(name), false) => vec![lookup_region(&name)?],
        (None, true) => climatology::builtin_regions(),
        _ => return Err("supply either --region or --all".into()),
    };
    let mut rows = Vec::new();
    for profile in &profiles {
        let margin = itu618::fade_margin(
            table,
            profile,
            common.link(),
            common.freezing_height_km,
            availability,
        )
        .map_err(|e| e.to_string())?;
        rows.push(vec![
            ("region", json!(profile.name)),
            ("margin_db", json!(round4(margin))),
        ]);
    }
    emit_rows(format, "region,margin_db", &rows);
    Ok(())
}

fn cmd_monthly(
    table: &CoefficientTable,
    csv_path: &str,
    region: &str,
    common: &CommonLink,
    availability: f64,
    format: Format,
) -> Result<(), String> {
    let profile = lookup_region(region)?;
    let file = File::open(csv_path).map_err(|e| format!("cannot open {csv_path}: {e}"))?;
    let ds = climatology::load_rainfall_csv(file).map_err(|e| e.to_string())?;
    let margins = itu618::monthly_margins(
        table,
        &ds,
        region,
        &profile,
        common.link(),
        common.freezing_height_km,
        availability,
    )
    .map_err(|e| e.to_string())?;
    const MONTHS: [&str; 12] = [
        "January", "February", "March", "April", "May", "June", "July", "August", "September",
        "October", "November", "December",
    ];
    let rows: Vec<Vec<(&str, Value)>> = margins
        .iter()
        .zip(MONTHS)
        .map(|(&m, name)| {
            vec![("month", json!(name)), ("margin_db", json!(round4(m)))]
        })
        .collect();
    emit_rows(format, "month,margin_db", &rows);
    Ok(())
}
