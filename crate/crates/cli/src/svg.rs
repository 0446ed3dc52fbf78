//! Standalone SVG bar charts of return distributions.

use std::fmt::Write as _;

use crate::format::num;

const WIDTH: f64 = 480.0;
const HEIGHT: f64 = 320.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

/// Renders bars at the given return fractions. The y axis spans `[0, y_max]`.
pub fn bar_chart(title: &str, y_label: &str, bars: &[(f64, f64)], y_max: f64) -> String {
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let x_min = bars.first().map_or(-1.0, |b| b.0);
    let x_max = bars.last().map_or(1.0, |b| b.0);
    let span = (x_max - x_min).max(f64::MIN_POSITIVE);
    let slot = plot_w / bars.len().max(1) as f64;
    let x_of = |x: f64| LEFT + slot / 2.0 + (x - x_min) / span * (plot_w - slot);
    let y_of = |y: f64| TOP + plot_h * (1.0 - y / y_max);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#,
        w = WIDTH,
        h = HEIGHT
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );

    for &(x, y) in bars {
        let top = y_of(y.clamp(0.0, y_max));
        let _ = writeln!(
            s,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="steelblue"><title>{}: {}</title></rect>"#,
            x_of(x) - slot * 0.35,
            top,
            slot * 0.7,
            TOP + plot_h - top,
            num(x),
            num(y)
        );
    }

    // axes
    let base = TOP + plot_h;
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT}" y1="{base}" x2="{}" y2="{base}" stroke="black"/>"#,
        LEFT + plot_w
    );
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{base}" stroke="black"/>"#
    );
    for (x, _) in [(x_min, ()), (0.0, ()), (x_max, ())] {
        let px = x_of(x);
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{base}" x2="{px:.2}" y2="{}" stroke="black"/>"#,
            base + 5.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{px:.2}" y="{}" text-anchor="middle">{}</text>"#,
            base + 18.0,
            num(x)
        );
    }
    for k in 0..=4 {
        let y = y_max * k as f64 / 4.0;
        let py = y_of(y);
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="black"/>"#,
            LEFT - 5.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 8.0,
            py + 4.0,
            num((y * 1e6).round() / 1e6)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">return</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 10.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{y}" text-anchor="middle" transform="rotate(-90 16 {y})">{}</text>"#,
        escape(y_label),
        y = TOP + plot_h / 2.0
    );
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
