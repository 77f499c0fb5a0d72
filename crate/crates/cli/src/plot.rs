//! Static SVG line plots of `r,u` or `t,beta` CSVs. Output depends only on inputs and flags.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use lichnerowicz::asymptotic::BetaKind;

use crate::output::number;
use crate::Failure;

const W: f64 = 720.0;
const H: f64 = 450.0;
const PAD_L: f64 = 80.0;
const PAD_R: f64 = 170.0;
const PAD_T: f64 = 30.0;
const PAD_B: f64 = 50.0;
const COLORS: [&str; 6] = ["#1f5fa8", "#c0392b", "#27864a", "#8e44ad", "#d68910", "#5d6d7e"];

pub struct PlotOptions {
    pub logx: bool,
    pub logy: bool,
    pub envelope: bool,
}

struct Series {
    label: String,
    points: Vec<(f64, f64)>,
}

fn read_series(path: &Path) -> Result<(Vec<String>, Series), Failure> {
    let err = |e: String| Failure::Config(format!("{}: {e}", path.display()));
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path).map_err(|e| err(e.to_string()))?;
    let header: Vec<String> = rdr.headers().map_err(|e| err(e.to_string()))?.iter().map(str::to_string).collect();
    let mut points = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| err(e.to_string()))?;
        let x: f64 = rec.get(0).unwrap_or("").parse().map_err(|_| err(format!("bad number in {rec:?}")))?;
        let y: f64 = rec.get(1).unwrap_or("").parse().map_err(|_| err(format!("bad number in {rec:?}")))?;
        points.push((x, y));
    }
    if points.is_empty() {
        return Err(err("no data rows".into()));
    }
    let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok((header, Series { label, points }))
}

/// Least-squares scale C of the envelope over the last decade of `s`.
fn envelope_series(s: &Series) -> Option<Series> {
    let kind = BetaKind::KappaThreshold;
    let t_max = s.points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let tail: Vec<(f64, f64)> = s.points.iter().cloned().filter(|p| p.0 >= t_max / 10.0 && p.0 > std::f64::consts::E).collect();
    let (num, den) = tail.iter().fold((0.0, 0.0), |(n, d), &(t, b)| {
        let e = kind.envelope(t);
        (n + b * e, d + e * e)
    });
    if !(den > 0.0) {
        return None;
    }
    let c = num / den;
    let points = s.points.iter().filter(|p| p.0 > std::f64::consts::E).map(|&(t, _)| (t, c * kind.envelope(t))).collect();
    Some(Series { label: format!("envelope C={}", number((c * 1e4).round() / 1e4)), points })
}

fn transform(v: f64, log: bool) -> Option<f64> {
    if log {
        (v > 0.0).then(|| v.log10())
    } else {
        v.is_finite().then_some(v)
    }
}

fn ticks(lo: f64, hi: f64, log: bool) -> Vec<(f64, String)> {
    if log {
        let (a, b) = (lo.floor() as i32, hi.ceil() as i32);
        let step = ((b - a) / 6).max(1);
        (a..=b).step_by(step as usize).map(|k| (k as f64, format!("1e{k}"))).filter(|t| t.0 >= lo && t.0 <= hi).collect()
    } else {
        (0..=5).map(|j| lo + (hi - lo) * j as f64 / 5.0).map(|v| (v, number(fmt_sig(v)))).collect()
    }
}

fn fmt_sig(v: f64) -> f64 {
    if v == 0.0 {
        return 0.0;
    }
    let p = 10f64.powi(3 - v.abs().log10().ceil() as i32);
    (v * p).round() / p
}

pub fn plot(files: &[PathBuf], out: &Path, opts: &PlotOptions) -> Result<(), Failure> {
    if files.is_empty() {
        return Err(Failure::Config("plot needs at least one CSV".into()));
    }
    let mut series = Vec::new();
    let mut schema: Option<Vec<String>> = None;
    for f in files {
        let (header, s) = read_series(f)?;
        let cols: Vec<String> = header.iter().take(2).cloned().collect();
        if cols != ["r", "u"] && cols != ["t", "beta"] {
            return Err(Failure::Config(format!("{}: expected r,u or t,beta columns, got {header:?}", f.display())));
        }
        if let Some(prev) = &schema {
            if prev != &cols {
                return Err(Failure::Config(format!("{}: schema {cols:?} differs from {prev:?}", f.display())));
            }
        }
        schema = Some(cols);
        series.push(s);
    }
    let schema = schema.unwrap();
    if opts.envelope {
        if schema[0] != "t" {
            return Err(Failure::Config("the envelope overlay needs t,beta data".into()));
        }
        if let Some(e) = envelope_series(&series[0]) {
            series.push(e);
        }
    }
    let mapped: Vec<Vec<(f64, f64)>> = series
        .iter()
        .map(|s| s.points.iter().filter_map(|&(x, y)| Some((transform(x, opts.logx)?, transform(y, opts.logy)?))).collect())
        .collect();
    let all = mapped.iter().flatten();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        return Err(Failure::Config("no plottable points (log scale needs positive values)".into()));
    }
    if x1 == x0 {
        x1 = x0 + 1.0;
    }
    if y1 - y0 < 1e-12 * y0.abs().max(1.0) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let (pw, ph) = (W - PAD_L - PAD_R, H - PAD_T - PAD_B);
    let sx = |x: f64| PAD_L + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| PAD_T + (1.0 - (y - y0) / (y1 - y0)) * ph;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(svg, r##"<rect x="{PAD_L}" y="{PAD_T}" width="{pw}" height="{ph}" fill="none" stroke="#333"/>"##);
    for (v, label) in ticks(x0, x1, opts.logx) {
        let x = sx(v);
        let _ = writeln!(svg, r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#333"/>"##, PAD_T + ph, PAD_T + ph + 5.0);
        let _ = writeln!(svg, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{label}</text>"#, PAD_T + ph + 18.0);
    }
    for (v, label) in ticks(y0, y1, opts.logy) {
        let y = sy(v);
        let _ = writeln!(svg, r##"<line x1="{:.2}" y1="{y:.2}" x2="{PAD_L}" y2="{y:.2}" stroke="#333"/>"##, PAD_L - 5.0);
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{label}</text>"#, PAD_L - 8.0, y + 4.0);
    }
    let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, PAD_L + pw / 2.0, H - 10.0, schema[0]);
    let _ = writeln!(svg, r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#, PAD_T + ph / 2.0, PAD_T + ph / 2.0, schema[1]);
    for (k, (s, pts)) in series.iter().zip(&mapped).enumerate() {
        let color = COLORS[k % COLORS.len()];
        let coords: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let dash = if s.label.starts_with("envelope") { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(svg, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{}"/>"#, coords.join(" "));
        let ly = PAD_T + 16.0 + 18.0 * k as f64;
        let lx = PAD_L + pw + 12.0;
        let _ = writeln!(svg, r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#, lx + 20.0);
        let _ = writeln!(svg, r#"<text x="{}" y="{}">{}</text>"#, lx + 26.0, ly + 4.0, escape(&s.label));
    }
    svg.push_str("</svg>\n");
    std::fs::write(out, svg).map_err(|e| Failure::Config(format!("{}: {e}", out.display())))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
