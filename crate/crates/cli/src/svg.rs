// Copyright 2026 the Arcopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Self-contained SVG line plots.

use std::fmt::Write;

pub const MAX_CURVES: usize = 4;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const COLORS: [&str; MAX_CURVES] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
const DASHES: [&str; MAX_CURVES] = ["none", "8 4", "2 3", "10 3 2 3"];

pub struct Curve {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub curves: Vec<Curve>,
}

fn nice_ticks(lo: f64, hi: f64, target: usize) -> Vec<f64> {
    let span = hi - lo;
    if !(span > 0.0) {
        return vec![lo];
    }
    let raw = span / target as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|m| m * mag)
        .find(|s| span / s <= target as f64)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() >= 1e-2 && v.abs() < 1e3 {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.1e}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl Plot {
    pub fn render(&self) -> String {
        let pts = self.curves.iter().flat_map(|c| c.points.iter());
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in pts.filter(|p| p.1.is_finite()) {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if x0 > x1 {
            (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
        }
        if y1 - y0 <= f64::EPSILON * y1.abs().max(1e-300) {
            let pad = y0.abs().max(1e-12);
            y0 -= pad;
            y1 += pad;
        }
        let margin = 0.05 * (y1 - y0);
        y0 -= margin;
        y1 += margin;
        let pw = WIDTH - LEFT - RIGHT;
        let ph = HEIGHT - TOP - BOTTOM;
        let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
        let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * ph;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
        );
        let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" style="fill:#ffffff"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="24" style="font:16px sans-serif;text-anchor:middle">{}</text>"#,
            WIDTH / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            s,
            r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" style="fill:none;stroke:#444444;stroke-width:1"/>"#
        );
        for t in nice_ticks(x0, x1, 8) {
            let x = sx(t);
            let _ = writeln!(
                s,
                r#"<line x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{:.2}" style="stroke:#dddddd;stroke-width:1"/>"#,
                TOP + ph
            );
            let _ = writeln!(
                s,
                r#"<text x="{x:.2}" y="{:.2}" style="font:12px sans-serif;text-anchor:middle">{}</text>"#,
                TOP + ph + 18.0,
                fmt_tick(t)
            );
        }
        for t in nice_ticks(y0, y1, 6) {
            let y = sy(t);
            let style = if t == 0.0 { "stroke:#888888;stroke-width:1" } else { "stroke:#dddddd;stroke-width:1" };
            let _ = writeln!(
                s,
                r#"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" style="{style}"/>"#,
                LEFT + pw
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" style="font:12px sans-serif;text-anchor:end">{}</text>"#,
                LEFT - 6.0,
                y + 4.0,
                fmt_tick(t)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" style="font:14px sans-serif;text-anchor:middle">{}</text>"#,
            LEFT + pw / 2.0,
            HEIGHT - 14.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="18" y="{:.2}" transform="rotate(-90 18 {:.2})" style="font:14px sans-serif;text-anchor:middle">{}</text>"#,
            TOP + ph / 2.0,
            TOP + ph / 2.0,
            escape(&self.y_label)
        );
        for (i, c) in self.curves.iter().enumerate() {
            let coords: Vec<String> = c
                .points
                .iter()
                .filter(|p| p.1.is_finite())
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline points="{}" style="fill:none;stroke:{};stroke-width:2;stroke-dasharray:{}"/>"#,
                coords.join(" "),
                COLORS[i % MAX_CURVES],
                DASHES[i % MAX_CURVES]
            );
        }
        let lx = LEFT + 14.0;
        for (i, c) in self.curves.iter().enumerate() {
            let ly = TOP + 18.0 + 20.0 * i as f64;
            let _ = writeln!(
                s,
                r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" style="stroke:{};stroke-width:2;stroke-dasharray:{}"/>"#,
                lx + 30.0,
                COLORS[i % MAX_CURVES],
                DASHES[i % MAX_CURVES]
            );
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" style="font:12px sans-serif">{}</text>"#,
                lx + 38.0,
                ly + 4.0,
                escape(&c.label)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}
