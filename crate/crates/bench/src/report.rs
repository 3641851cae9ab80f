//! Report files: `report.csv`, `report.json` and `gains.svg`.
//!
//! Wall-clock times are left out so that identical configurations give
//! byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::error::BenchError;
use crate::experiment::{Experiment, GainRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReportFormat {
    Csv,
    Json,
    Svg,
}

impl ReportFormat {
    pub const ALL: [ReportFormat; 3] = [ReportFormat::Csv, ReportFormat::Json, ReportFormat::Svg];

    pub fn file_name(self) -> &'static str {
        match self {
            ReportFormat::Csv => "report.csv",
            ReportFormat::Json => "report.json",
            ReportFormat::Svg => "gains.svg",
        }
    }
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            "svg" => Ok(ReportFormat::Svg),
            _ => Err(format!(
                "unknown report format `{s}` (expected csv, json or svg)"
            )),
        }
    }
}

fn num(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.4}")).unwrap_or_default()
}

#[derive(Serialize)]
struct Row {
    sample: String,
    seed: String,
    source_a: String,
    source_b: String,
    demands: usize,
    wavelength_capacity: String,
    bypass_status: String,
    bypass_cost: Option<usize>,
    bypass_wavelengths: Option<usize>,
    bypass_lower_bound: Option<usize>,
    rwca_status: String,
    rwca_cost: Option<usize>,
    rwca_wavelengths: Option<usize>,
    rwca_lower_bound: Option<usize>,
    aggregated_pairs: Option<usize>,
    gain_pct: String,
    gain_upper_pct: String,
    mean_gain_pct: String,
    max_gain_pct: String,
    pooled_gain_pct: String,
}

impl From<&GainRecord> for Row {
    fn from(r: &GainRecord) -> Self {
        let source = |i: usize| r.sources.get(i).cloned().unwrap_or_default();
        Row {
            sample: r.sample.to_string(),
            seed: r.seed.to_string(),
            source_a: source(0),
            source_b: source(1),
            demands: r.demands,
            wavelength_capacity: r.wavelength_capacity.to_string(),
            bypass_status: r.bypass.status.as_str().into(),
            bypass_cost: r.bypass.cost,
            bypass_wavelengths: r.bypass.wavelengths,
            bypass_lower_bound: Some(r.bypass.lower_bound),
            rwca_status: r.rwca.status.as_str().into(),
            rwca_cost: r.rwca.cost,
            rwca_wavelengths: r.rwca.wavelengths,
            rwca_lower_bound: Some(r.rwca.lower_bound),
            aggregated_pairs: Some(r.rwca.aggregated_pairs),
            gain_pct: num(r.gain_pct),
            gain_upper_pct: num(r.gain_upper_pct),
            mean_gain_pct: String::new(),
            max_gain_pct: String::new(),
            pooled_gain_pct: String::new(),
        }
    }
}

/// One row per sample, then a `summary` row with totals and aggregate gains.
pub fn render_csv(e: &Experiment) -> Result<String, BenchError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |err: csv::Error| BenchError::Report(err.to_string());
    for r in &e.records {
        w.serialize(Row::from(r)).map_err(csv_err)?;
    }
    let s = &e.summary;
    w.serialize(Row {
        sample: "summary".into(),
        seed: e.config.seed.to_string(),
        source_a: String::new(),
        source_b: String::new(),
        demands: e.records.iter().map(|r| r.demands).sum(),
        wavelength_capacity: e.config.capacity.to_string(),
        bypass_status: String::new(),
        bypass_cost: Some(s.total_bypass),
        bypass_wavelengths: None,
        bypass_lower_bound: None,
        rwca_status: String::new(),
        rwca_cost: Some(s.total_rwca),
        rwca_wavelengths: None,
        rwca_lower_bound: None,
        aggregated_pairs: None,
        gain_pct: String::new(),
        gain_upper_pct: String::new(),
        mean_gain_pct: num(s.mean_gain_pct),
        max_gain_pct: num(s.max_gain_pct),
        pooled_gain_pct: num(s.pooled_gain_pct),
    })
    .map_err(csv_err)?;
    let bytes = w
        .into_inner()
        .map_err(|e| BenchError::Report(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn render_json(e: &Experiment) -> String {
    let mut s = serde_json::to_string_pretty(e).expect("experiment serialises");
    s.push('\n');
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Bar chart of per-sample gains with the mean as a dashed line.
pub fn render_svg(e: &Experiment) -> String {
    const BAR: f64 = 28.0;
    const GAP: f64 = 12.0;
    const LEFT: f64 = 56.0;
    const TOP: f64 = 40.0;
    const PLOT_H: f64 = 220.0;

    let n = e.records.len().max(1) as f64;
    let width = LEFT + n * (BAR + GAP) + GAP + 20.0;
    let height = TOP + PLOT_H + 48.0;
    let gains: Vec<f64> = e
        .records
        .iter()
        .map(|r| r.gain_pct.unwrap_or(0.0))
        .collect();
    let hi = gains.iter().copied().fold(10.0_f64, f64::max);
    let lo = gains.iter().copied().fold(0.0_f64, f64::min);
    let top = (hi / 10.0).ceil() * 10.0;
    let bottom = (lo / 10.0).floor() * 10.0;
    let y = |v: f64| TOP + (top - v) / (top - bottom) * PLOT_H;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{LEFT}" y="20" font-size="13">{}: wavelength-link saving per sample (%)</text>"#,
        escape(&e.topology)
    );
    let mut tick = bottom;
    while tick <= top + 1e-9 {
        let ty = y(tick);
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{ty:.1}" x2="{:.1}" y2="{ty:.1}" stroke="#ddd"/><text x="{:.1}" y="{:.1}" text-anchor="end">{tick:.0}</text>"##,
            width - 20.0,
            LEFT - 6.0,
            ty + 4.0
        );
        tick += 10.0;
    }
    for (i, (r, g)) in e.records.iter().zip(&gains).enumerate() {
        let x = LEFT + GAP + i as f64 * (BAR + GAP);
        let (y0, y1) = (y(g.max(0.0)), y(g.min(0.0)));
        let fill = if r.gain_pct.is_none() {
            "#bbb"
        } else {
            "#3b6ea5"
        };
        let _ = writeln!(
            s,
            r#"<rect x="{x:.1}" y="{y0:.1}" width="{BAR}" height="{:.1}" fill="{fill}"><title>sample {}: {}</title></rect>"#,
            (y1 - y0).max(0.5),
            r.sample,
            num(r.gain_pct)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            x + BAR / 2.0,
            TOP + PLOT_H + 16.0,
            r.sample
        );
    }
    if let Some(m) = e.summary.mean_gain_pct {
        let my = y(m);
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{my:.1}" x2="{:.1}" y2="{my:.1}" stroke="#c0392b" stroke-dasharray="5,3"/><text x="{:.1}" y="{:.1}" text-anchor="end" fill="#c0392b">mean {m:.1}</text>"##,
            width - 20.0,
            width - 20.0,
            my - 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">sample</text>"#,
        LEFT + (width - LEFT) / 2.0,
        TOP + PLOT_H + 36.0
    );
    s.push_str("</svg>\n");
    s
}

/// Writes the requested files into `dir`, creating it if needed.
pub fn emit_report(
    e: &Experiment,
    dir: &Path,
    formats: &[ReportFormat],
) -> Result<Vec<PathBuf>, BenchError> {
    fs::create_dir_all(dir).map_err(|err| BenchError::io(dir, err))?;
    let mut written = Vec::new();
    for &f in formats {
        let body = match f {
            ReportFormat::Csv => render_csv(e)?,
            ReportFormat::Json => render_json(e),
            ReportFormat::Svg => render_svg(e),
        };
        let path = dir.join(f.file_name());
        fs::write(&path, body).map_err(|err| BenchError::io(&path, err))?;
        written.push(path);
    }
    Ok(written)
}
