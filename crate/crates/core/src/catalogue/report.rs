use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CatalogueEntry, ComparisonRow};
use crate::error::{Error, Result};
use crate::probe::ProbeReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Json,
    Csv,
    Svg,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "svg" => Ok(ReportFormat::Svg),
            other => Err(format!("unknown report format '{other}'")),
        }
    }
}

/// Anything the `report` command can render.
#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    /// One or more probe runs, each drawn as its own series.
    Probe(Vec<ProbeReport>),
    Catalogue(Vec<CatalogueEntry>),
    Comparison(Vec<ComparisonRow>),
}

/// A labelled polyline.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

fn probe_label(r: &ProbeReport) -> String {
    if r.config.mean_gate_error == 0.0 {
        format!("{} noiseless", r.generator)
    } else {
        format!("{} eps={}", r.generator, r.config.mean_gate_error)
    }
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> Result<()>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w)?;
    let bytes = w
        .into_inner()
        .map_err(|e| Error::io("csv output", e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(String::new, ToString::to_string)
}

fn catalogue_csv(entries: &[CatalogueEntry]) -> Result<String> {
    csv_string(|w| {
        w.write_record([
            "name",
            "qubits",
            "two_q_gates",
            "depth_estimate",
            "modes",
            "grid_points",
            "beta_star",
            "gamma_star",
            "energy_exact",
            "method",
            "wall_time",
            "gate_mode",
            "error",
        ])?;
        for e in entries {
            w.write_record([
                e.name.clone(),
                opt(&e.qubits),
                opt(&e.two_q_gates),
                opt(&e.depth_estimate),
                opt(&e.modes),
                opt(&e.grid_points),
                opt(&e.beta_star),
                opt(&e.gamma_star),
                opt(&e.energy_exact),
                e.method
                    .map(|m| serde_json::to_value(m).expect("enum serializes"))
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default(),
                opt(&e.wall_time),
                e.gate_mode.as_str().to_string(),
                e.error.clone().unwrap_or_default(),
            ])?;
        }
        Ok(())
    })
}

fn comparison_csv(rows: &[ComparisonRow]) -> Result<String> {
    csv_string(|w| {
        w.write_record([
            "n",
            "edges",
            "degree",
            "grid_points",
            "grid_seconds",
            "grid_beta",
            "grid_gamma",
            "grid_value",
            "shgo_nfev",
            "shgo_seconds",
            "shgo_beta",
            "shgo_gamma",
            "shgo_value",
        ])?;
        for r in rows.iter().map(ComparisonRow::rounded) {
            w.write_record([
                r.n.to_string(),
                r.edges.to_string(),
                r.degree.to_string(),
                r.grid_points.to_string(),
                r.grid_seconds.to_string(),
                r.grid_beta.to_string(),
                r.grid_gamma.to_string(),
                r.grid_value.to_string(),
                r.shgo_nfev.to_string(),
                r.shgo_seconds.to_string(),
                r.shgo_beta.to_string(),
                r.shgo_gamma.to_string(),
                r.shgo_value.to_string(),
            ])?;
        }
        Ok(())
    })
}

fn probe_csv(reports: &[ProbeReport]) -> Result<String> {
    if let [single] = reports {
        let mut buf = Vec::new();
        single.write_csv(&mut buf)?;
        return Ok(String::from_utf8(buf).expect("csv output is utf-8"));
    }
    // several series: same columns behind a series label
    let mut out = String::new();
    for (k, r) in reports.iter().enumerate() {
        let mut buf = Vec::new();
        r.write_csv(&mut buf)?;
        let text = String::from_utf8(buf).expect("csv output is utf-8");
        for (i, line) in text.lines().enumerate() {
            if i == 0 {
                if k == 0 {
                    writeln!(out, "series,{line}").expect("string write");
                }
            } else {
                writeln!(out, "\"{}\",{line}", probe_label(r).replace('"', "\"\""))
                    .expect("string write");
            }
        }
    }
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
];

/// Self-contained 800x500 line chart with linear axes, a 10-tick grid and a
/// legend.
pub fn render_svg(series: &[Series], title: &str, x_label: &str, y_label: &str) -> String {
    let (w, h) = (800.0, 500.0);
    let (left, right, top, bottom) = (70.0, 180.0, 40.0, 60.0);
    let pw = w - left - right;
    let ph = h - top - bottom;
    let all: Vec<(f64, f64)> = series
        .iter()
        .flat_map(|s| s.points.iter().copied())
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .collect();
    let span = |vals: &mut dyn Iterator<Item = f64>| {
        let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
            (a.min(v), b.max(v))
        });
        if !lo.is_finite() {
            (0.0, 1.0)
        } else if hi - lo < 1e-12 {
            (lo - 0.5, hi + 0.5)
        } else {
            (lo, hi)
        }
    };
    let (x0, x1) = span(&mut all.iter().map(|p| p.0));
    let (y0, y1) = span(&mut all.iter().map(|p| p.1));
    let sx = |x: f64| left + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| top + ph - (y - y0) / (y1 - y0) * ph;

    let mut s = String::new();
    let mut line = |text: String| {
        s.push_str(&text);
        s.push('\n');
    };
    line(format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    ));
    line(format!(
        r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#
    ));
    line(format!(
        r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        left + pw / 2.0,
        escape(title)
    ));
    for k in 0..=10 {
        let f = k as f64 / 10.0;
        let gx = left + f * pw;
        let gy = top + ph - f * ph;
        line(format!(
            "<line x1=\"{gx:.2}\" y1=\"{top}\" x2=\"{gx:.2}\" y2=\"{}\" stroke=\"#e0e0e0\"/>",
            top + ph
        ));
        line(format!(
            "<line x1=\"{left}\" y1=\"{gy:.2}\" x2=\"{}\" y2=\"{gy:.2}\" stroke=\"#e0e0e0\"/>",
            left + pw
        ));
        line(format!(
            r#"<text x="{gx:.2}" y="{}" text-anchor="middle">{}</text>"#,
            top + ph + 16.0,
            tick(x0 + f * (x1 - x0))
        ));
        line(format!(
            r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
            left - 6.0,
            gy + 4.0,
            tick(y0 + f * (y1 - y0))
        ));
    }
    line(format!(
        r#"<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    ));
    line(format!(
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        left + pw / 2.0,
        h - 18.0,
        escape(x_label)
    ));
    line(format!(
        r#"<text x="18" y="{}" text-anchor="middle" transform="rotate(-90 18 {})">{}</text>"#,
        top + ph / 2.0,
        top + ph / 2.0,
        escape(y_label)
    ));
    for (k, ser) in series.iter().enumerate() {
        let colour = PALETTE[k % PALETTE.len()];
        let pts: Vec<String> = ser
            .points
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        line(format!(
            r#"<polyline fill="none" stroke="{colour}" stroke-width="2" points="{}"/>"#,
            pts.join(" ")
        ));
        let ly = top + 10.0 + 20.0 * k as f64;
        let lx = left + pw + 14.0;
        line(format!(
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{colour}" stroke-width="2"/>"#,
            lx + 24.0
        ));
        line(format!(
            r#"<text x="{}" y="{}">{}</text>"#,
            lx + 30.0,
            ly + 4.0,
            escape(&ser.label)
        ));
    }
    line("</svg>".to_string());
    s
}

fn tick(v: f64) -> String {
    let r = super::round6(v);
    if r.abs() >= 1e4 || (r != 0.0 && r.abs() < 1e-3) {
        format!("{r:.2e}")
    } else {
        let text = format!("{r:.3}");
        text.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

impl Report {
    pub fn render(&self, format: ReportFormat) -> Result<String> {
        match (self, format) {
            (Report::Probe(rs), ReportFormat::Json) => Ok(match rs.as_slice() {
                [single] => serde_json::to_string_pretty(single)?,
                many => serde_json::to_string_pretty(many)?,
            }),
            (Report::Catalogue(es), ReportFormat::Json) => {
                for e in es {
                    e.validate()?;
                }
                Ok(serde_json::to_string_pretty(es)?)
            }
            (Report::Comparison(rows), ReportFormat::Json) => {
                Ok(serde_json::to_string_pretty(rows)?)
            }
            (Report::Probe(rs), ReportFormat::Csv) => probe_csv(rs),
            (Report::Catalogue(es), ReportFormat::Csv) => {
                for e in es {
                    e.validate()?;
                }
                catalogue_csv(es)
            }
            (Report::Comparison(rows), ReportFormat::Csv) => comparison_csv(rows),
            (Report::Probe(rs), ReportFormat::Svg) => {
                let series: Vec<Series> = rs
                    .iter()
                    .map(|r| Series {
                        label: probe_label(r),
                        points: r
                            .steps
                            .iter()
                            .filter_map(|s| s.rel_gap.map(|g| (s.qubits as f64, 100.0 * g)))
                            .collect(),
                    })
                    .collect();
                Ok(render_svg(
                    &series,
                    "Energy gap versus size",
                    "qubits",
                    "relative gap (%)",
                ))
            }
            (Report::Comparison(rows), ReportFormat::Svg) => {
                let pick = |f: fn(&ComparisonRow) -> f64| {
                    rows.iter().map(|r| (r.n as f64, f(r))).collect()
                };
                let series = [
                    Series {
                        label: "grid".into(),
                        points: pick(|r| r.grid_value),
                    },
                    Series {
                        label: "shgo".into(),
                        points: pick(|r| r.shgo_value),
                    },
                ];
                Ok(render_svg(&series, "Grid versus SHGO", "n", "best energy"))
            }
            (Report::Catalogue(_), ReportFormat::Svg) => Err(Error::InvalidConfig(
                "catalogues have no chart; use json or csv".into(),
            )),
        }
    }

    /// Parses JSON written by [`Report::render`]: a probe report, an array of
    /// them, a catalogue or a comparison table.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        if value.is_object() {
            return Ok(Report::Probe(vec![serde_json::from_value(value)?]));
        }
        let first = value.as_array().and_then(|a| a.first()).cloned();
        let kind = first.as_ref().and_then(|f| f.as_object());
        match kind {
            Some(o) if o.contains_key("steps") => Ok(Report::Probe(serde_json::from_value(value)?)),
            Some(o) if o.contains_key("shgo_nfev") => {
                Ok(Report::Comparison(serde_json::from_value(value)?))
            }
            Some(o) if o.contains_key("grid_points") && o.contains_key("name") => {
                Ok(Report::Catalogue(serde_json::from_value(value)?))
            }
            // an empty array is an empty catalogue
            None if value.as_array().is_some_and(|a| a.is_empty()) => {
                Ok(Report::Catalogue(Vec::new()))
            }
            _ => Err(Error::InvalidInstance("unrecognised report JSON".into())),
        }
    }
}

/// Renders `report` and writes it to `path`.
pub fn emit_report(report: &Report, format: ReportFormat, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut text = report.render(format)?;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probe::{run_probe, MaxCutRandom, ProbeConfig, ReferenceMode};

    fn probe(eps: f64) -> ProbeReport {
        let cfg = ProbeConfig {
            n_min: 3,
            n_step: 1,
            n_max: 5,
            shots: 200,
            runs: 2,
            mean_gate_error: eps,
            gap_threshold: 10.0,
            reference: ReferenceMode::Oracle,
            ..ProbeConfig::default()
        };
        run_probe(
            &MaxCutRandom {
                edge_probability: 0.9,
            },
            &cfg,
        )
        .unwrap()
    }

    #[test]
    fn probe_csv_has_a_row_per_step() {
        let r = probe(0.0);
        assert_eq!(r.steps.len(), 3);
        let csv = Report::Probe(vec![r]).render(ReportFormat::Csv).unwrap();
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn svg_has_two_polylines_and_a_legend() {
        let svg = Report::Probe(vec![probe(0.0), probe(0.005)])
            .render(ReportFormat::Svg)
            .unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("noiseless"));
        assert!(svg.contains("eps=0.005"));
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains(r#"width="800" height="500""#));
    }

    #[test]
    fn json_round_trips() {
        let one = Report::Probe(vec![probe(0.002)]);
        assert_eq!(
            Report::from_json_str(&one.render(ReportFormat::Json).unwrap()).unwrap(),
            one
        );
        let two = Report::Probe(vec![probe(0.0), probe(0.002)]);
        assert_eq!(
            Report::from_json_str(&two.render(ReportFormat::Json).unwrap()).unwrap(),
            two
        );
        let rows = crate::catalogue::compare_grid_shgo(
            &[crate::catalogue::CompareCase { n: 6, edges: None }],
            &Default::default(),
        )
        .unwrap();
        let cmp = Report::Comparison(rows);
        assert_eq!(
            Report::from_json_str(&cmp.render(ReportFormat::Json).unwrap()).unwrap(),
            cmp
        );
    }

    #[test]
    fn labels_are_escaped() {
        let svg = render_svg(
            &[Series {
                label: "a<b & c".into(),
                points: vec![(0.0, 1.0), (1.0, 2.0)],
            }],
            "t",
            "x",
            "y",
        );
        assert!(svg.contains("a&lt;b &amp; c"));
    }

    #[test]
    fn unwritable_path_reports_it() {
        let err = emit_report(
            &Report::Catalogue(vec![]),
            ReportFormat::Json,
            "/nonexistent/dir/out.json",
        )
        .unwrap_err();
        assert!(err.to_string().contains("/nonexistent/dir/out.json"));
    }
}
