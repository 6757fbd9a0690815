//! Minimal SVG line charts.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::records::{ExperimentOutput, Series, TrialTag};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 190.0;
const MARGIN_Y: f64 = 50.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Clone, Debug, Default)]
pub struct ChartSeries {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, Default)]
pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
    pub log_y: bool,
    pub series: Vec<ChartSeries>,
}

impl Chart {
    pub fn to_svg(&self) -> String {
        let tx = |v: f64| if self.log_x { v.log10() } else { v };
        let ty = |v: f64| if self.log_y { v.log10() } else { v };
        let usable = |x: f64, y: f64| {
            x.is_finite() && y.is_finite() && (!self.log_x || x > 0.0) && (!self.log_y || y > 0.0)
        };
        let pts: Vec<(f64, f64)> = self
            .series
            .iter()
            .flat_map(|s| s.points.iter().copied())
            .filter(|&(x, y)| usable(x, y))
            .map(|(x, y)| (tx(x), ty(y)))
            .collect();
        let (mut x0, mut x1, mut y0, mut y1) = pts.iter().fold(
            (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY),
            |(a, b, c, d), &(x, y)| (a.min(x), b.max(x), c.min(y), d.max(y)),
        );
        if pts.is_empty() {
            (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
        }
        if x1 - x0 < 1e-300 {
            x0 -= 0.5;
            x1 += 0.5;
        }
        if y1 - y0 < 1e-300 {
            y0 -= 0.5;
            y1 += 0.5;
        }
        let pw = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        let ph = HEIGHT - 2.0 * MARGIN_Y;
        let px = |x: f64| MARGIN_LEFT + (x - x0) / (x1 - x0) * pw;
        let py = |y: f64| HEIGHT - MARGIN_Y - (y - y0) / (y1 - y0) * ph;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="25" text-anchor="middle" font-size="14">{}</text>"#,
            MARGIN_LEFT + pw / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            s,
            r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_Y}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
        );
        for i in 0..=5 {
            let f = i as f64 / 5.0;
            let xv = x0 + f * (x1 - x0);
            let yv = y0 + f * (y1 - y0);
            let (gx, gy) = (px(xv), py(yv));
            let _ = writeln!(
                s,
                r#"<line x1="{gx:.1}" y1="{}" x2="{gx:.1}" y2="{}" stroke="black"/><text x="{gx:.1}" y="{}" text-anchor="middle">{}</text>"#,
                HEIGHT - MARGIN_Y,
                HEIGHT - MARGIN_Y + 5.0,
                HEIGHT - MARGIN_Y + 18.0,
                tick(xv, self.log_x)
            );
            let _ = writeln!(
                s,
                r#"<line x1="{}" y1="{gy:.1}" x2="{MARGIN_LEFT}" y2="{gy:.1}" stroke="black"/><text x="{}" y="{:.1}" text-anchor="end">{}</text>"#,
                MARGIN_LEFT - 5.0,
                MARGIN_LEFT - 8.0,
                gy + 4.0,
                tick(yv, self.log_y)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            MARGIN_LEFT + pw / 2.0,
            HEIGHT - 12.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="15" y="{}" text-anchor="middle" transform="rotate(-90 15 {})">{}</text>"#,
            MARGIN_Y + ph / 2.0,
            MARGIN_Y + ph / 2.0,
            escape(&self.y_label)
        );
        for (i, series) in self.series.iter().enumerate() {
            let colour = PALETTE[i % PALETTE.len()];
            let path: Vec<String> = series
                .points
                .iter()
                .filter(|&&(x, y)| usable(x, y))
                .map(|&(x, y)| format!("{:.2},{:.2}", px(tx(x)), py(ty(y))))
                .collect();
            if !path.is_empty() {
                let _ = writeln!(
                    s,
                    r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
                    path.join(" ")
                );
            }
            let ly = MARGIN_Y + 10.0 + 16.0 * i as f64;
            let lx = WIDTH - MARGIN_RIGHT + 10.0;
            let _ = writeln!(
                s,
                r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{colour}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
                lx + 20.0,
                lx + 25.0,
                ly + 4.0,
                escape(&series.label)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn tick(v: f64, log: bool) -> String {
    let v = if log { 10f64.powf(v) } else { v };
    if v != 0.0 && (v.abs() < 1e-2 || v.abs() >= 1e4) {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// A chart summarising an experiment output.
pub fn chart(output: &ExperimentOutput) -> Chart {
    let mut groups: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    let (title, x_label, y_label, log_x, log_y) = match output {
        ExperimentOutput::Angles(recs) => {
            for r in recs.iter().filter(|r| r.trial == TrialTag::Aggregate) {
                let key = format!("{} n={} γ={}", r.family, r.n, r.gamma);
                groups.entry(key).or_default().push((r.k as f64, r.angle_deg));
            }
            ("Angle vs K", "K", "angle (deg)", false, false)
        }
        ExperimentOutput::Theory(recs) => {
            for r in recs {
                let tag = match r.series {
                    Series::Theoretical => "bound",
                    Series::Empirical => "empirical",
                };
                let key = format!("{tag} n={} c={}", r.n, r.c);
                groups.entry(key).or_default().push((r.k, r.angle_deg));
            }
            ("Angle vs K: bound and experiment", "K", "angle (deg)", true, false)
        }
        ExperimentOutput::MaxNu(recs) => {
            let vs_n = recs.first().is_none_or(|r| r.experiment.name().ends_with("_n"));
            for r in recs {
                let (key, x) = if vs_n {
                    (format!("θ={}° kmax={}", r.theta_bound_deg, r.kmax), r.n as f64)
                } else {
                    (format!("θ={}° n={}", r.theta_bound_deg, r.n), r.kmax)
                };
                groups.entry(key).or_default().push((x, r.max_nu));
            }
            ("Largest admissible width", if vs_n { "n" } else { "kmax" }, "nu", true, true)
        }
        ExperimentOutput::MinK(recs) => {
            let vs_n = recs.first().is_none_or(|r| r.experiment.name().ends_with("_n"));
            for r in recs.iter().filter(|r| !r.censored) {
                let (key, x) = if vs_n {
                    (format!("m={} kmax={}", r.m, r.kmax), r.n as f64)
                } else {
                    (format!("m={} n={}", r.m, r.n), r.kmax)
                };
                groups.entry(key).or_default().push((x, r.min_k.unwrap_or(0) as f64));
            }
            ("Smallest sufficient K", if vs_n { "n" } else { "kmax" }, "K", false, false)
        }
        ExperimentOutput::Validation(recs) => {
            for r in recs {
                groups
                    .entry(format!("{} bound", r.kind.name()))
                    .or_default()
                    .push((r.threshold, r.theoretical));
                groups
                    .entry(format!("{} observed", r.kind.name()))
                    .or_default()
                    .push((r.threshold, r.empirical));
            }
            ("Tail bounds vs observed frequency", "threshold", "probability", false, false)
        }
    };
    Chart {
        title: title.into(),
        x_label: x_label.into(),
        y_label: y_label.into(),
        log_x,
        log_y,
        series: groups
            .into_iter()
            .map(|(label, mut points)| {
                points.sort_by(|a, b| a.0.total_cmp(&b.0));
                ChartSeries { label, points }
            })
            .collect(),
    }
}
