//! Report, sample table and plot writers.

use std::fmt::Write as _;
use std::path::Path;

use crate::pipeline::{Arrow, JobReport, Sample};

pub const CANVAS_WIDTH: f64 = 800.0;
pub const CANVAS_HEIGHT: f64 = 600.0;
const MARGIN: f64 = 40.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

pub fn report_json(report: &JobReport) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize")
}

pub fn write_report(path: &Path, report: &JobReport) -> std::io::Result<()> {
    std::fs::write(path, report_json(report) + "\n")
}

pub fn write_samples(path: &Path, samples: &[Sample]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_path(path)?;
    for s in samples {
        w.serialize(s)?;
    }
    w.flush()?;
    Ok(())
}

/// One curve of a plot with its end tangent arrows.
pub struct PlotLayer<'a> {
    pub label: &'a str,
    pub samples: &'a [Sample],
    pub arrows: &'a [Arrow],
}

/// Isometric view: x to the lower left, y to the lower right, z up.
fn project(p: [f64; 3]) -> (f64, f64) {
    let (c, s) = (30f64.to_radians().cos(), 30f64.to_radians().sin());
    ((p[1] - p[0]) * c, p[2] - (p[0] + p[1]) * s)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// SVG document with every layer projected into a common frame.
pub fn plot_svg(layers: &[PlotLayer<'_>]) -> String {
    let mut pts = Vec::new();
    for l in layers {
        pts.extend(l.samples.iter().map(|s| project([s.x, s.y, s.z])));
        for a in l.arrows {
            pts.push(project(a.base));
            pts.push(project([0, 1, 2].map(|i| a.base[i] + a.direction[i])));
        }
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if pts.is_empty() {
        (x0, x1, y0, y1) = (0.0, 0.0, 0.0, 0.0);
    }
    let (w, h) = (x1 - x0, y1 - y0);
    let fit = |extent: f64, room: f64| if extent > 1e-12 { room / extent } else { f64::INFINITY };
    let scale = fit(w, CANVAS_WIDTH - 2.0 * MARGIN).min(fit(h, CANVAS_HEIGHT - 2.0 * MARGIN));
    let scale = if scale.is_finite() { scale } else { 1.0 };
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    let map = |(x, y): (f64, f64)| (CANVAS_WIDTH / 2.0 + (x - cx) * scale, CANVAS_HEIGHT / 2.0 - (y - cy) * scale);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS_WIDTH}" height="{CANVAS_HEIGHT}" viewBox="0 0 {CANVAS_WIDTH} {CANVAS_HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, l) in layers.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let _ = writeln!(svg, r#"<g id="layer{i}"><title>{}</title>"#, escape(l.label));
        let proj: Vec<(f64, f64)> = l.samples.iter().map(|s| map(project([s.x, s.y, s.z]))).collect();
        let constant = proj.windows(2).all(|w| (w[0].0 - w[1].0).hypot(w[0].1 - w[1].1) < 1e-9);
        if let (true, Some(&(x, y))) = (constant, proj.first()) {
            let _ = writeln!(svg, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="{color}"/>"#);
        } else {
            let path: Vec<String> = proj.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
            let _ = writeln!(svg, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, path.join(" "));
        }
        for a in l.arrows {
            let (bx, by) = map(project(a.base));
            let (tx, ty) = map(project([0, 1, 2].map(|k| a.base[k] + a.direction[k])));
            let len = (tx - bx).hypot(ty - by);
            if len < 1e-9 {
                continue;
            }
            let (ux, uy) = ((tx - bx) / len, (ty - by) / len);
            let head = 8f64.min(len / 2.0);
            let (lx, ly) = (tx - head * ux + 0.5 * head * uy, ty - head * uy - 0.5 * head * ux);
            let (rx, ry) = (tx - head * ux - 0.5 * head * uy, ty - head * uy + 0.5 * head * ux);
            let _ = writeln!(svg, r#"<line x1="{bx:.3}" y1="{by:.3}" x2="{tx:.3}" y2="{ty:.3}" stroke="black" stroke-width="1"/>"#);
            let _ = writeln!(svg, r#"<polygon points="{tx:.3},{ty:.3} {lx:.3},{ly:.3} {rx:.3},{ry:.3}" fill="black"/>"#);
        }
        let _ = writeln!(svg, r#"<text x="10" y="{}" font-family="sans-serif" font-size="12" fill="{color}">{}</text>"#, 20 + 16 * i, escape(l.label));
        let _ = writeln!(svg, "</g>");
    }
    svg.push_str("</svg>\n");
    svg
}

pub fn emit_plot(path: &Path, layers: &[PlotLayer<'_>]) -> std::io::Result<()> {
    std::fs::write(path, plot_svg(layers))
}
