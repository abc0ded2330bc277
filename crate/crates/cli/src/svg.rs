//! Self-contained SVG plot of a sampled screening curve.

use std::fmt::Write;

use screening_curves::CurveSamples;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;

fn x(phi: f64) -> f64 {
    LEFT + phi * (WIDTH - LEFT - RIGHT)
}

fn y(rho: f64) -> f64 {
    HEIGHT - BOTTOM - rho * (HEIGHT - TOP - BOTTOM)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders the curve as one path, a dashed vertical line at the prevalence
/// threshold (omitted when it is undefined), axes with a 0.2 grid, and a
/// legend giving ε. Output depends only on the samples and title.
pub fn render_svg(samples: &CurveSamples, title: Option<&str>) -> String {
    let mut s = String::new();
    let (x0, x1, y0, y1) = (x(0.0), x(1.0), y(0.0), y(1.0));
    // write! into a String cannot fail
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="14">"#
    );
    if let Some(title) = title {
        let _ = writeln!(s, "<title>{}</title>", escape(title));
    }
    let _ = writeln!(
        s,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    for i in 0..=5 {
        let v = f64::from(i) / 5.0;
        let _ = writeln!(
            s,
            r##"<line class="grid" x1="{:.3}" y1="{y0:.3}" x2="{:.3}" y2="{y1:.3}" stroke="#dddddd" stroke-dasharray="2 3"/>"##,
            x(v),
            x(v)
        );
        let _ = writeln!(
            s,
            r##"<line class="grid" x1="{x0:.3}" y1="{:.3}" x2="{x1:.3}" y2="{:.3}" stroke="#dddddd" stroke-dasharray="2 3"/>"##,
            y(v),
            y(v)
        );
        let _ = writeln!(
            s,
            r#"<text class="tick" x="{:.3}" y="{:.3}" text-anchor="middle">{v:.1}</text>"#,
            x(v),
            y0 + 20.0
        );
        let _ = writeln!(
            s,
            r#"<text class="tick" x="{:.3}" y="{:.3}" text-anchor="end">{v:.1}</text>"#,
            x0 - 8.0,
            y(v) + 5.0
        );
    }
    let _ = writeln!(
        s,
        r#"<line class="axis" x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y0:.3}" stroke="black"/>"#
    );
    let _ = writeln!(
        s,
        r#"<line class="axis" x1="{x0:.3}" y1="{y0:.3}" x2="{x0:.3}" y2="{y1:.3}" stroke="black"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text class="axis-label" x="{:.3}" y="{:.3}" text-anchor="middle">φ</text>"#,
        0.5 * (x0 + x1),
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text class="axis-label" x="20" y="{:.3}" text-anchor="middle" transform="rotate(-90 20 {:.3})">ρ(φ)</text>"#,
        0.5 * (y0 + y1),
        0.5 * (y0 + y1)
    );

    let mut d = String::new();
    for (i, row) in samples.rows.iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        let _ = write!(
            d,
            "{}{cmd}{:.3} {:.3}",
            if i == 0 { "" } else { " " },
            x(row.prevalence),
            y(row.ppv)
        );
    }
    let _ = writeln!(
        s,
        r#"<path class="curve" d="{d}" fill="none" stroke="blue" stroke-width="2"/>"#
    );

    if let Some(phi_e) = samples.threshold {
        let _ = writeln!(
            s,
            r#"<line class="threshold" x1="{:.3}" y1="{y0:.3}" x2="{:.3}" y2="{y1:.3}" stroke="red" stroke-width="1.5" stroke-dasharray="6 4"/>"#,
            x(phi_e),
            x(phi_e)
        );
        let _ = writeln!(
            s,
            r#"<text class="threshold-label" x="{:.3}" y="{:.3}" fill="red">φe = {phi_e:.3}</text>"#,
            x(phi_e) + 6.0,
            y1 + 16.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text class="legend" x="{:.3}" y="{:.3}" text-anchor="end">ε = {:.2}</text>"#,
        x1 - 10.0,
        y0 - 12.0,
        samples.screening_coefficient()
    );
    s.push_str("</svg>\n");
    s
}
