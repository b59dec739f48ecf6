//! End-to-end acceptance suite. Each test covers one numbered criterion
//! and prints a single PASS/FAIL line (visible with `--nocapture`, and in
//! the failure output otherwise).
//!
//! Run with `cargo test --test acceptance -- --nocapture`.

use rainfade::climatology::{builtin_region, load_rainfall_csv};
use rainfade::itu618::{
    self, exceedance_curve, fade_margin, monthly_margins, predict, predict_with_rate,
};
use rainfade::link_geometry::{
    elevation_angle, slant_path_length, SlantPath, EFFECTIVE_EARTH_RADIUS_KM,
};
use rainfade::rain_coeffs::{CoefficientTable, Polarization};
use rainfade::rh_model::{exceedance_percent, rate_at_exceedance, RainClimate};
use rainfade::LinkConfig;

const SATELLITE_LONGITUDE_DEG: f64 = 78.5;
const FREEZING_HEIGHT_KM: f64 = 4.5;

fn link(frequency_ghz: f64) -> LinkConfig {
    LinkConfig {
        frequency_ghz,
        polarization: Polarization::Circular,
        satellite_longitude_deg: SATELLITE_LONGITUDE_DEG,
    }
}

fn report(criterion: &str, ok: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {detail}");
}

#[test]
fn c1_r001_reproduction() {
    let expected = [
        ("Dhaka", 119.7673),
        ("Chittagong", 129.9933),
        ("Rajshahi", 109.1496),
        ("Sylhet", 141.6991),
    ];
    let mut detail = String::new();
    let mut ok = true;
    for (region, r_expected) in expected {
        let profile = builtin_region(region).unwrap();
        let r = rate_at_exceedance(profile.climate, 0.01).unwrap();
        ok &= (r - r_expected).abs() <= 0.05;
        detail += &format!("{region} {r:.4}/{r_expected} ");
    }
    report("1 (R0.01 rain rates, ±0.05 mm/h)", ok, detail.trim());
}

#[test]
fn c2_elevation_angles() {
    let expected = [
        ("Dhaka", 59.58),
        ("Chittagong", 60.15),
        ("Rajshahi", 59.59),
        ("Sylhet", 57.82),
    ];
    let mut detail = String::new();
    let mut ok = true;
    for (region, theta_expected) in expected {
        let profile = builtin_region(region).unwrap();
        let theta = elevation_angle(profile.site(), SATELLITE_LONGITUDE_DEG).unwrap();
        ok &= (theta - theta_expected).abs() <= 0.3;
        detail += &format!("{region} {theta:.2}/{theta_expected} ");
    }
    report("2 (elevation angles at 78.5°E, ±0.3°)", ok, detail.trim());
}

#[test]
fn c3_a001_anchors() {
    let table = CoefficientTable::bundled();
    let anchors = [
        ("Sylhet", 30.0, 85.0),
        ("Rajshahi", 30.0, 74.0),
        ("Sylhet", 40.0, 124.0),
        ("Rajshahi", 40.0, 109.0),
        ("Sylhet", 50.0, 156.0),
        ("Rajshahi", 50.0, 138.0),
    ];
    let mut detail = String::new();
    let mut ok = true;
    for (region, f, a_expected) in anchors {
        let profile = builtin_region(region).unwrap();
        let b = predict(&table, &profile, link(f), FREEZING_HEIGHT_KM, 0.01).unwrap();
        ok &= (b.a001_db - a_expected).abs() <= 3.0;
        detail += &format!("{region}@{f} {:.1}/{a_expected} ", b.a001_db);
    }
    // Rain-map 0.01% rate (95 mm/h) with the reference geometry.
    let profile = builtin_region("Sylhet").unwrap();
    for (f, a_expected) in [(30.0, 69.0), (40.0, 102.0), (50.0, 129.0)] {
        let b = predict_with_rate(&table, &profile, link(f), FREEZING_HEIGHT_KM, 0.01, Some(95.0))
            .unwrap();
        ok &= (b.a001_db - a_expected).abs() <= 3.0;
        detail += &format!("map@{f} {:.1}/{a_expected} ", b.a001_db);
    }
    report("3 (A0.01 anchors, ±3 dB)", ok, detail.trim());
}

#[test]
fn c4_fade_margins_equal_a001() {
    let table = CoefficientTable::bundled();
    let mut ok = true;
    let mut detail = String::new();
    for region in ["Dhaka", "Chittagong", "Rajshahi", "Sylhet"] {
        let profile = builtin_region(region).unwrap();
        for f in [30.0, 40.0, 50.0] {
            let margin = fade_margin(&table, &profile, link(f), FREEZING_HEIGHT_KM, 99.99).unwrap();
            let a001 = predict(&table, &profile, link(f), FREEZING_HEIGHT_KM, 0.01)
                .unwrap()
                .a001_db;
            ok &= margin == a001;
        }
        let m50 = fade_margin(&table, &profile, link(50.0), FREEZING_HEIGHT_KM, 99.99).unwrap();
        detail += &format!("{region}@50 {m50:.1} ");
    }
    // The 99.99% margins are the criterion-3 anchors.
    let sylhet = builtin_region("Sylhet").unwrap();
    let rajshahi = builtin_region("Rajshahi").unwrap();
    ok &= (fade_margin(&table, &sylhet, link(50.0), FREEZING_HEIGHT_KM, 99.99).unwrap() - 156.0)
        .abs()
        <= 3.0;
    ok &= (fade_margin(&table, &rajshahi, link(40.0), FREEZING_HEIGHT_KM, 99.99).unwrap() - 109.0)
        .abs()
        <= 3.0;
    report("4 (99.99% fade margin ≡ A0.01)", ok, detail.trim());
}

#[test]
fn c5_cross_band_percentage_claim() {
    // The attenuation exceeded 0.01% of the year in one band matches the
    // other band's curve at 0.03%: under the monotone Step 10 scaling the
    // only realizable pairing of {0.01%, 0.03%} across Q and V is
    // A_Q(0.01%) ≈ A_V(0.03%) (the higher band reaches the same level
    // more often). Asserted within 15% relative for every region.
    let table = CoefficientTable::bundled();
    let mut ok = true;
    let mut detail = String::new();
    for region in ["Dhaka", "Chittagong", "Rajshahi", "Sylhet"] {
        let profile = builtin_region(region).unwrap();
        let a_q_001 = predict(&table, &profile, link(40.0), FREEZING_HEIGHT_KM, 0.01)
            .unwrap()
            .a_p_db;
        let a_v_003 = predict(&table, &profile, link(50.0), FREEZING_HEIGHT_KM, 0.03)
            .unwrap()
            .a_p_db;
        let rel = (a_q_001 - a_v_003).abs() / a_q_001;
        ok &= rel <= 0.15;
        detail += &format!("{region} Q(0.01)={a_q_001:.1} V(0.03)={a_v_003:.1} ({:.1}%) ", 100.0 * rel);
    }
    report("5 (cross-band 0.01%/0.03% match, ≤15%)", ok, detail.trim());
}

#[test]
fn c6a_rh_round_trip() {
    let mut ok = true;
    for m in [500.0, 1545.0, 2124.0, 4101.0] {
        for beta in [0.2, 0.5, 0.8] {
            let climate = RainClimate::new(m, beta).unwrap();
            // Stay below the zero-rate exceedance (dry climates rain less
            // than 5% of the year, so larger p has no solution).
            let p_top = 5.0_f64.min(0.999 * exceedance_percent(climate, 0.0));
            for i in 0..40 {
                let p = 0.001 * (p_top / 0.001).powf(i as f64 / 39.0);
                let r = rate_at_exceedance(climate, p).unwrap();
                ok &= (exceedance_percent(climate, r) - p).abs() <= 1e-4;
            }
        }
    }
    report("6a (R-H round-trip to 1e-4 percentage points)", ok, "");
}

#[test]
fn c6b_a_p_monotone_and_exact_at_001() {
    let table = CoefficientTable::bundled();
    let mut ok = true;
    for region in ["Dhaka", "Chittagong", "Rajshahi", "Sylhet"] {
        let profile = builtin_region(region).unwrap();
        for f in [30.0, 40.0, 50.0] {
            let mut last = f64::INFINITY;
            for i in 0..20 {
                let p = 0.001 * (5.0_f64 / 0.001).powf(i as f64 / 19.0);
                let b = predict(&table, &profile, link(f), FREEZING_HEIGHT_KM, p).unwrap();
                ok &= b.a_p_db < last;
                last = b.a_p_db;
            }
            let b = predict(&table, &profile, link(f), FREEZING_HEIGHT_KM, 0.01).unwrap();
            ok &= b.a_p_db == b.a001_db;
        }
    }
    report("6b (A_p strictly decreasing in p; A_p(0.01) = A0.01 exactly)", ok, "");
}

#[test]
fn c6c_early_exits() {
    let table = CoefficientTable::bundled();
    let mut dry = builtin_region("Sylhet").unwrap();
    dry.climate.annual_depth_mm = 0.0;
    let mut ok = true;
    for p in [0.001, 0.01, 1.0, 5.0] {
        ok &= predict(&table, &dry, link(40.0), FREEZING_HEIGHT_KM, p)
            .unwrap()
            .a_p_db
            == 0.0;
    }
    let mut high = builtin_region("Sylhet").unwrap();
    high.altitude_km = 6.0;
    for p in [0.001, 0.01, 5.0] {
        ok &= predict(&table, &high, link(40.0), FREEZING_HEIGHT_KM, p)
            .unwrap()
            .a_p_db
            == 0.0;
    }
    ok &= slant_path_length(4.86, 6.0, 57.82) == SlantPath::ZeroPath;
    report("6c (zero-rain and station-above-rain-height exits)", ok, "");
}

#[test]
fn c6d_breakdown_self_consistency() {
    let table = CoefficientTable::bundled();
    let mut ok = true;
    for region in ["Dhaka", "Chittagong", "Rajshahi", "Sylhet"] {
        let profile = builtin_region(region).unwrap();
        for f in [30.0, 40.0, 50.0] {
            let b = predict(&table, &profile, link(f), FREEZING_HEIGHT_KM, 0.01).unwrap();
            ok &= (b.a001_db - b.gamma_r_db_km * b.l_e_km).abs() <= 1e-9 * b.a001_db;
            ok &= (b.l_e_km - b.l_r_km * b.v001).abs() <= 1e-9 * b.l_e_km;
        }
    }
    report("6d (a001 = γ_R·L_E and L_E = L_R·v001 to 1e-9 relative)", ok, "");
}

#[test]
fn c6e_slant_path_branch_continuity() {
    // Target: the plane (θ ≥ 5°) and spherical (θ < 5°) slant-path
    // formulas agree within 1% at θ = 5° for every rain-column depth in
    // [0.5, 5] km. The formulas themselves cap the agreement: the gap is
    // (√(sin²θ + 2·dh/R_e) − sin θ)/(√(sin²θ + 2·dh/R_e) + sin θ), which
    // stays below 1% only for dh ≲ 1.32 km and reaches ≈3.6% at dh = 5 km,
    // so this criterion cannot pass over the full stated sweep.
    let sin_theta = 5.0_f64.to_radians().sin();
    let mut worst = 0.0_f64;
    let mut ok = true;
    for i in 0..=45 {
        let dh = 0.5 + 0.1 * i as f64;
        let plane = dh / sin_theta;
        let spherical = 2.0 * dh
            / ((sin_theta * sin_theta + 2.0 * dh / EFFECTIVE_EARTH_RADIUS_KM).sqrt() + sin_theta);
        let gap = (plane - spherical).abs() / plane;
        worst = worst.max(gap);
        ok &= gap <= 0.01;
    }
    report(
        "6e (Eq.(2)/(3) continuity at θ=5° within 1% over dh ∈ [0.5, 5])",
        ok,
        &format!("worst relative gap {:.2}%", 100.0 * worst),
    );
}

#[test]
fn c7_monthly_ordering() {
    let table = CoefficientTable::bundled();
    let profile = builtin_region("Sylhet").unwrap();
    // Monsoon-profile synthetic climatology: July peak, January minimum
    // at exactly 1/8 of July.
    let depths = [
        10.0, 18.0, 45.0, 70.0, 72.0, 75.0, 80.0, 75.0, 70.0, 40.0, 20.0, 12.0,
    ];
    let mut text = String::from("region,year,month,depth_mm\n");
    for year in 1990..1995 {
        for (i, d) in depths.iter().enumerate() {
            text += &format!("Sylhet,{year},{},{d}\n", i + 1);
        }
    }
    let ds = load_rainfall_csv(text.as_bytes()).unwrap();
    let margins = monthly_margins(
        &table,
        &ds,
        "Sylhet",
        &profile,
        link(40.0),
        FREEZING_HEIGHT_KM,
        99.99,
    )
    .unwrap();
    let july = margins[6];
    let january = margins[0];
    let max = margins.iter().cloned().fold(f64::MIN, f64::max);
    let min = margins.iter().cloned().fold(f64::MAX, f64::min);
    let ratio = july / january;
    let ok = july == max && january == min && ratio > 2.0;
    report(
        "7 (monthly ordering: July max, January min, ratio > 2 at 8× rainfall)",
        ok,
        &format!("July {july:.1} dB, January {january:.1} dB, ratio {ratio:.2}"),
    );
}

#[test]
fn curve_is_usable_for_plotting() {
    // Companion check for the exceedance-curve surface used by the CLI.
    let table = CoefficientTable::bundled();
    let profile = builtin_region("Sylhet").unwrap();
    let grid: Vec<f64> = (0..25)
        .map(|i| 0.001 * (5.0_f64 / 0.001).powf(i as f64 / 24.0))
        .collect();
    let curve = exceedance_curve(&table, &profile, link(50.0), FREEZING_HEIGHT_KM, &grid).unwrap();
    assert_eq!(curve.len(), 25);
    assert!(curve.windows(2).all(|w| w[1].1 < w[0].1));
    let at_001 = itu618::predict(&table, &profile, link(50.0), FREEZING_HEIGHT_KM, 0.01)
        .unwrap()
        .a_p_db;
    assert!((at_001 - 156.0).abs() <= 3.0);
}
