//! Minimal static SVG charts.

use std::fmt::Write;

const W: f64 = 720.0;
const H: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const COLORS: &[&str] = &["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#000000", "#17becf"];

pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
    /// Draw as a closed polygon.
    pub closed: bool,
    pub dashed: bool,
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    log_y: bool,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x0) / (self.x1 - self.x0) * (W - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        let (y, y0, y1) = if self.log_y { (y.log10(), self.y0.log10(), self.y1.log10()) } else { (y, self.y0, self.y1) };
        H - BOTTOM - (y - y0) / (y1 - y0) * (H - TOP - BOTTOM)
    }
}

fn nice_range(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    } else {
        (lo - 1.0, hi + 1.0)
    }
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() >= 1e4 || v.abs() < 1e-2 {
        format!("{v:.1e}")
    } else {
        format!("{v:.3}").trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

/// Line chart; with `log_y` non-positive values are dropped.
pub fn chart(title: &str, x_label: &str, y_label: &str, series: &[Series], log_y: bool, equal_aspect: bool) -> String {
    let keep = |&(x, y): &(f64, f64)| x.is_finite() && y.is_finite() && (!log_y || y > 0.0);
    let all: Vec<(f64, f64)> = series.iter().flat_map(|s| s.points.iter().copied().filter(keep)).collect();
    let (mut x0, mut x1) = all.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.0), b.max(p.0)));
    let (mut y0, mut y1) = all.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.1), b.max(p.1)));
    if all.is_empty() {
        (x0, x1, y0, y1) = (0.0, 1.0, if log_y { 0.1 } else { 0.0 }, 1.0);
    }
    if log_y {
        let (a, b) = (y0.log10().floor(), y1.log10().ceil());
        y0 = 10f64.powf(a);
        y1 = 10f64.powf(if b > a { b } else { a + 1.0 });
    } else {
        (y0, y1) = nice_range(y0, y1);
    }
    (x0, x1) = nice_range(x0, x1);
    if equal_aspect && !log_y {
        // same data units per pixel on both axes
        let sx = (x1 - x0) / (W - LEFT - RIGHT);
        let sy = (y1 - y0) / (H - TOP - BOTTOM);
        if sx > sy {
            let c = 0.5 * (y0 + y1);
            let half = 0.5 * sx * (H - TOP - BOTTOM);
            (y0, y1) = (c - half, c + half);
        } else {
            let c = 0.5 * (x0 + x1);
            let half = 0.5 * sy * (W - LEFT - RIGHT);
            (x0, x1) = (c - half, c + half);
        }
    }
    let f = Frame { x0, x1, y0, y1, log_y };
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#, (LEFT + W - RIGHT) / 2.0, escape(title));
    let (l, r, t, b) = (LEFT, W - RIGHT, TOP, H - BOTTOM);
    let _ = writeln!(s, r#"<rect x="{l}" y="{t}" width="{}" height="{}" fill="none" stroke="black"/>"#, r - l, b - t);
    for i in 0..=5 {
        let xv = x0 + (x1 - x0) * i as f64 / 5.0;
        let px = f.px(xv);
        let _ = writeln!(s, r##"<line x1="{px:.2}" y1="{b}" x2="{px:.2}" y2="{}" stroke="#999"/><text x="{px:.2}" y="{}" text-anchor="middle">{}</text>"##, b + 5.0, b + 20.0, fmt_tick(xv));
    }
    let y_ticks: Vec<f64> = if log_y {
        let (a, bb) = (y0.log10().round() as i32, y1.log10().round() as i32);
        let step = ((bb - a) as f64 / 8.0).ceil().max(1.0) as i32;
        (a..=bb).step_by(step as usize).map(|e| 10f64.powi(e)).collect()
    } else {
        (0..=5).map(|i| y0 + (y1 - y0) * i as f64 / 5.0).collect()
    };
    for yv in y_ticks {
        let py = f.py(yv);
        let label = if log_y { format!("1e{}", yv.log10().round()) } else { fmt_tick(yv) };
        let _ = writeln!(s, r##"<line x1="{}" y1="{py:.2}" x2="{l}" y2="{py:.2}" stroke="#999"/><text x="{}" y="{:.2}" text-anchor="end">{label}</text>"##, l - 5.0, l - 8.0, py + 4.0);
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, (l + r) / 2.0, H - 15.0, escape(x_label));
    let _ = writeln!(s, r#"<text x="18" y="{}" text-anchor="middle" transform="rotate(-90 18 {})">{}</text>"#, (t + b) / 2.0, (t + b) / 2.0, escape(y_label));
    let _ = writeln!(s, r#"<clipPath id="plot"><rect x="{l}" y="{t}" width="{}" height="{}"/></clipPath>"#, r - l, b - t);
    for (i, ser) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let pts: Vec<String> = ser.points.iter().filter(|p| keep(p)).map(|&(x, y)| format!("{:.2},{:.2}", f.px(x), f.py(y))).collect();
        if !pts.is_empty() {
            let tag = if ser.closed { "polygon" } else { "polyline" };
            let dash = if ser.dashed { r#" stroke-dasharray="6 4""# } else { "" };
            let _ = writeln!(s, r#"<{tag} clip-path="url(#plot)" points="{}" fill="none" stroke="{color}" stroke-width="1.6"{dash}/>"#, pts.join(" "));
        }
        let ly = t + 16.0 + 18.0 * i as f64;
        let _ = writeln!(s, r#"<line x1="{}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#, r + 10.0, r + 34.0, r + 40.0, ly + 4.0, escape(&ser.name));
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
