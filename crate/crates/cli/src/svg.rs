//! Minimal SVG renderings: axes, polylines and label rasters. The CSV
//! files next to them hold the actual data.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 56.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf", "#000000"];

pub struct Series<'a> {
    pub name: &'a str,
    pub x: &'a [f64],
    pub y: &'a [f64],
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn bounds<'a>(values: impl Iterator<Item = &'a f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#, WIDTH / 2.0, escape(title));
}

fn axes(out: &mut String, f: &Frame, x_label: &str, y_label: &str) {
    let (l, r, t, b) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(out, r#"<path d="M{l} {t} L{l} {b} L{r} {b}" fill="none" stroke="black"/>"#);
    for (v, anchor_x) in [(f.x0, l), (f.x1, r)] {
        let _ = writeln!(out, r#"<text x="{anchor_x:.1}" y="{:.1}" text-anchor="middle">{}</text>"#, b + 16.0, tick(v));
    }
    for (v, anchor_y) in [(f.y0, b), (f.y1, t)] {
        let _ = writeln!(out, r#"<text x="{:.1}" y="{anchor_y:.1}" text-anchor="end">{}</text>"#, l - 6.0, tick(v));
    }
    if f.y0 < 0.0 && f.y1 > 0.0 {
        let y = f.py(0.0);
        let _ = writeln!(out, r##"<path d="M{l} {y:.2} L{r} {y:.2}" stroke="#999" stroke-dasharray="4 3"/>"##);
    }
    let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, WIDTH / 2.0, HEIGHT - 12.0, escape(x_label));
    let _ = writeln!(
        out,
        r#"<text x="16" y="{0}" text-anchor="middle" transform="rotate(-90 16 {0})">{1}</text>"#,
        HEIGHT / 2.0,
        escape(y_label)
    );
}

fn tick(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-2 || v.abs() >= 1e4) {
        format!("{v:.1e}")
    } else {
        format!("{v:.2}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let (x0, x1) = bounds(series.iter().flat_map(|s| s.x.iter()));
    let (y0, y1) = bounds(series.iter().flat_map(|s| s.y.iter()));
    let frame = Frame { x0, x1, y0, y1 };
    let mut out = String::new();
    header(&mut out, title);
    axes(&mut out, &frame, x_label, y_label);
    for (k, s) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let mut d = String::new();
        let mut pen_down = false;
        for (&x, &y) in s.x.iter().zip(s.y) {
            if !(x.is_finite() && y.is_finite()) {
                pen_down = false;
                continue;
            }
            let _ = write!(d, "{}{:.2} {:.2} ", if pen_down { "L" } else { "M" }, frame.px(x), frame.py(y));
            pen_down = true;
        }
        let _ = writeln!(out, r#"<path d="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#, d.trim_end());
        let ly = MARGIN + 14.0 * k as f64;
        let lx = WIDTH - MARGIN - 150.0;
        let _ = writeln!(out, r#"<path d="M{lx} {ly} L{} {ly}" stroke="{color}" stroke-width="2"/>"#, lx + 18.0);
        let _ = writeln!(out, r#"<text x="{}" y="{}">{}</text>"#, lx + 24.0, ly + 4.0, escape(s.name));
    }
    out.push_str("</svg>\n");
    out
}

/// Cells of a regular grid coloured by label; `labels` is row-major with
/// `xs.len()` entries per row and rows ordered by `ys`.
pub fn label_raster(title: &str, xs: &[f64], ys: &[f64], labels: &[i8]) -> String {
    let step_x = if xs.len() > 1 { xs[1] - xs[0] } else { 1.0 };
    let step_y = if ys.len() > 1 { ys[1] - ys[0] } else { 1.0 };
    let frame = Frame {
        x0: xs.first().copied().unwrap_or(0.0) - step_x / 2.0,
        x1: xs.last().copied().unwrap_or(1.0) + step_x / 2.0,
        y0: ys.first().copied().unwrap_or(0.0) - step_y / 2.0,
        y1: ys.last().copied().unwrap_or(1.0) + step_y / 2.0,
    };
    let mut out = String::new();
    header(&mut out, title);
    let w = frame.px(frame.x0 + step_x) - frame.px(frame.x0);
    let h = frame.py(frame.y0) - frame.py(frame.y0 + step_y);
    for (iy, &y) in ys.iter().enumerate() {
        for (ix, &x) in xs.iter().enumerate() {
            let fill = if labels[iy * xs.len() + ix] > 0 { "#f4a582" } else { "#92c5de" };
            let _ = writeln!(
                out,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{fill}"/>"#,
                frame.px(x - step_x / 2.0),
                frame.py(y + step_y / 2.0),
                w + 0.05,
                h + 0.05
            );
        }
    }
    axes(&mut out, &frame, "x1", "x2");
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_skips_non_finite_points() {
        let svg = line_chart("t", "x", "y", &[Series { name: "a<b", x: &[0.0, 1.0, 2.0], y: &[1.0, f64::NAN, 3.0] }]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("a&lt;b"));
        let data = svg.lines().find(|l| l.contains(r#"stroke-width="1.5""#)).unwrap();
        assert_eq!(data.matches('M').count(), 2);
        assert_eq!(data.matches('L').count(), 0);
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn raster_has_one_cell_per_label() {
        let svg = label_raster("r", &[0.0, 1.0], &[0.0, 1.0, 2.0], &[1, -1, 1, 1, -1, -1]);
        assert_eq!(svg.matches("<rect").count(), 1 + 6);
    }
}
