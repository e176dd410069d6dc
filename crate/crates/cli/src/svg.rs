//! Dependency-free SVG 1.1 line charts for eigenvalue decay plots.
//!
//! Data polylines live in data coordinates inside a single transformed
//! group, so the plotted points are textually the same numbers the CSV
//! carries; strokes use `vector-effect="non-scaling-stroke"` to stay thin.

use std::fmt::Write as _;

use crate::csvio::fmt;

const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 520.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 42.0;
const MARGIN_BOTTOM: f64 = 58.0;
const Y_MIN: f64 = -0.04;
const Y_MAX: f64 = 1.04;

/// Render an eigenvalue plot: the spectrum polyline, the erfc profile
/// polyline, and a shaded vertical band over the plunge indices. `values`
/// and `profile` are indexed 1-based on the x axis.
pub fn eigenvalue_plot(
    title: &str,
    values: &[f64],
    profile: &[f64],
    plunge_band: Option<(usize, usize)>,
) -> String {
    assert_eq!(values.len(), profile.len());
    let n = values.len().max(2);
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = plot_w / (n as f64 - 1.0);
    let sy = plot_h / (Y_MAX - Y_MIN);
    let tx = MARGIN_LEFT - sx;
    let ty = MARGIN_TOP + plot_h + sy * Y_MIN;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        xml_escape(title)
    );

    // Axes and ticks in screen coordinates.
    let x_axis_y = MARGIN_TOP + plot_h;
    let _ = writeln!(
        svg,
        r#"<g stroke="black" stroke-width="1" fill="none">
<path d="M {l} {t} L {l} {b} L {r} {b}"/>
</g>"#,
        l = MARGIN_LEFT,
        t = MARGIN_TOP,
        b = x_axis_y,
        r = MARGIN_LEFT + plot_w
    );
    for i in 0..=4 {
        let frac = i as f64 / 4.0;
        let k = 1.0 + frac * (n as f64 - 1.0);
        let x = MARGIN_LEFT + frac * plot_w;
        let _ = writeln!(
            svg,
            r#"<line x1="{x}" y1="{y0}" x2="{x}" y2="{y1}" stroke="black"/>
<text x="{x}" y="{label_y}" font-family="sans-serif" font-size="12" text-anchor="middle">{label}</text>"#,
            y0 = x_axis_y,
            y1 = x_axis_y + 6.0,
            label_y = x_axis_y + 22.0,
            label = k.round() as usize
        );
        let y_value = frac;
        let y = x_axis_y - (y_value - Y_MIN) / (Y_MAX - Y_MIN) * plot_h;
        let _ = writeln!(
            svg,
            r#"<line x1="{x0}" y1="{y}" x2="{x1}" y2="{y}" stroke="black"/>
<text x="{label_x}" y="{ty}" font-family="sans-serif" font-size="12" text-anchor="end">{label}</text>"#,
            x0 = MARGIN_LEFT - 6.0,
            x1 = MARGIN_LEFT,
            label_x = MARGIN_LEFT - 10.0,
            ty = y + 4.0,
            label = fmt(y_value)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{x}" y="{y}" font-family="sans-serif" font-size="13" text-anchor="middle">eigenvalue index k</text>"#,
        x = MARGIN_LEFT + plot_w / 2.0,
        y = HEIGHT - 14.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{y}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 18 {y})">eigenvalue</text>"#,
        y = MARGIN_TOP + plot_h / 2.0
    );

    // Data group: polylines carry raw data coordinates.
    let _ = writeln!(
        svg,
        r#"<g transform="translate({tx} {ty}) scale({sx} -{sy})">"#
    );
    if let Some((first, last)) = plunge_band {
        let _ = writeln!(
            svg,
            r##"<rect x="{x}" y="{y}" width="{w}" height="{h}" fill="#cccccc" fill-opacity="0.5"/>"##,
            x = first,
            y = fmt(Y_MIN),
            w = (last - first).max(1),
            h = fmt(Y_MAX - Y_MIN)
        );
    }
    let _ = writeln!(
        svg,
        r##"<polyline id="profile" points="{}" fill="none" stroke="#d62728" stroke-width="1.2" stroke-dasharray="6 3" vector-effect="non-scaling-stroke"/>"##,
        points(profile)
    );
    let _ = writeln!(
        svg,
        r##"<polyline id="eigenvalues" points="{}" fill="none" stroke="#1f77b4" stroke-width="1.4" vector-effect="non-scaling-stroke"/>"##,
        points(values)
    );
    let _ = writeln!(svg, "</g>");

    // Legend.
    let lx = MARGIN_LEFT + plot_w - 190.0;
    let _ = writeln!(
        svg,
        r##"<g font-family="sans-serif" font-size="12">
<line x1="{lx}" y1="{y1}" x2="{lx2}" y2="{y1}" stroke="#1f77b4" stroke-width="2"/>
<text x="{tx1}" y="{ty1}">eigenvalues</text>
<line x1="{lx}" y1="{y2}" x2="{lx2}" y2="{y2}" stroke="#d62728" stroke-width="2" stroke-dasharray="6 3"/>
<text x="{tx1}" y="{ty2}">erfc profile</text>
</g>"##,
        y1 = MARGIN_TOP + 12.0,
        y2 = MARGIN_TOP + 30.0,
        lx2 = lx + 26.0,
        tx1 = lx + 32.0,
        ty1 = MARGIN_TOP + 16.0,
        ty2 = MARGIN_TOP + 34.0
    );
    let _ = writeln!(svg, "</svg>");
    svg
}

fn points(values: &[f64]) -> String {
    values
        .iter()
        .enumerate()
        .map(|(i, &v)| format!("{},{}", i + 1, fmt(v)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Extract the y tokens of a named polyline; the SVG/CSV agreement test
/// compares these against the CSV column verbatim.
pub fn polyline_values(svg: &str, id: &str) -> Vec<String> {
    let marker = format!(r#"id="{id}" points=""#);
    let Some(start) = svg.find(&marker) else {
        return Vec::new();
    };
    let rest = &svg[start + marker.len()..];
    let Some(end) = rest.find('"') else {
        return Vec::new();
    };
    rest[..end]
        .split(' ')
        .filter_map(|p| p.split(',').nth(1))
        .map(str::to_string)
        .collect()
}
