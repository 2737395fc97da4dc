//! Persistence diagrams as standalone SVG.
//!
//! Bars are drawn as points `(birth, death)` above the diagonal. Infinite
//! deaths are placed in a dashed band along the top edge labelled `∞`.

use std::fmt::Write as _;

use crate::persistence::Barcode;

const SIZE: f64 = 320.0;
const MARGIN: f64 = 40.0;
const BAND: f64 = 24.0;

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Renders the `dim`-dimensional bars of `barcode`. The axes span
/// `[0, max_filtration_value]` (at least `[0, 1]`).
pub fn render_svg(barcode: &Barcode, dim: usize, title: &str) -> String {
    let hi = barcode.max_filtration_value.max(1) as f64;
    let plot = SIZE - 2.0 * MARGIN;
    // finite part of the y axis sits below the infinity band
    let finite_h = plot - BAND;
    let px = |v: f64| MARGIN + v / hi * plot;
    let py = |v: f64| SIZE - MARGIN - v / hi * finite_h;
    let inf_y = MARGIN + BAND / 2.0;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
        SIZE / 2.0,
        MARGIN / 2.0,
        esc(title)
    );
    // axes
    let (x0, y0) = (px(0.0), py(0.0));
    let _ =
        writeln!(s, r#"<line class="axis" x1="{x0:.2}" y1="{y0:.2}" x2="{:.2}" y2="{y0:.2}" stroke="black"/>"#, px(hi));
    let _ =
        writeln!(s, r#"<line class="axis" x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{:.2}" stroke="black"/>"#, MARGIN);
    let _ = writeln!(
        s,
        r#"<line class="diagonal" x1="{x0:.2}" y1="{y0:.2}" x2="{:.2}" y2="{:.2}" stroke="gray"/>"#,
        px(hi),
        py(hi)
    );
    let _ = writeln!(
        s,
        r#"<line class="infinity" x1="{x0:.2}" y1="{inf_y:.2}" x2="{:.2}" y2="{inf_y:.2}" stroke="gray" stroke-dasharray="4 3"/>"#,
        px(hi)
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">∞</text>"#,
        x0 - 4.0,
        inf_y + 4.0
    );
    for (v, anchor) in [(0.0, "start"), (hi, "end")] {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10" text-anchor="{anchor}">{v}</text>"#,
            px(v),
            y0 + 14.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10" text-anchor="end">{hi}</text>"#,
        x0 - 4.0,
        py(hi) + 4.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">birth (H{dim})</text>"#,
        SIZE / 2.0,
        SIZE - 8.0
    );
    for p in barcode.dim(dim) {
        let cx = px(p.birth as f64);
        let (cy, class) = match p.death {
            Some(d) => (py(d as f64), "bar"),
            None => (inf_y, "bar infinite"),
        };
        let _ = writeln!(
            s,
            r#"<circle class="{class}" cx="{cx:.2}" cy="{cy:.2}" r="3" fill="{}" fill-opacity="0.7"/>"#,
            if dim == 0 { "#1f77b4" } else { "#d62728" }
        );
    }
    s.push_str("</svg>\n");
    s
}
