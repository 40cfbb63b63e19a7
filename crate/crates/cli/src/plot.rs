//! Minimal static SVG line plot.

use koopman_forge::decimal::format_decimal;

const WIDTH: f64 = 480.0;
const HEIGHT: f64 = 320.0;
const MARGIN: f64 = 48.0;

pub fn metric_svg(title: &str, points: &[(u32, f64)]) -> String {
    let n_lo = points.iter().map(|p| p.0).min().unwrap_or(0) as f64;
    let n_hi = points.iter().map(|p| p.0).max().unwrap_or(1) as f64;
    let d_hi = points.iter().map(|p| p.1).fold(0.0, f64::max);
    let d_hi = if d_hi > 0.0 { d_hi } else { 1.0 };
    let x = |n: f64| {
        let span = (n_hi - n_lo).max(1.0);
        MARGIN + (n - n_lo) / span * (WIDTH - 2.0 * MARGIN)
    };
    let y = |d: f64| HEIGHT - MARGIN - d / d_hi * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">{title}</text>\n",
        WIDTH / 2.0
    ));
    let (x0, y0) = (MARGIN, HEIGHT - MARGIN);
    svg.push_str(&format!(
        "<polyline fill=\"none\" stroke=\"black\" points=\"{x0},{MARGIN} {x0},{y0} {},{y0}\"/>\n",
        WIDTH - MARGIN
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
        4.0,
        MARGIN - 6.0,
        format_decimal(d_hi)
    ));
    let line: Vec<String> = points
        .iter()
        .map(|&(n, d)| format!("{:.2},{:.2}", x(n as f64), y(d)))
        .collect();
    svg.push_str(&format!(
        "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"{}\"/>\n",
        line.join(" ")
    ));
    for &(n, d) in points {
        let (px, py) = (x(n as f64), y(d));
        svg.push_str(&format!("<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"3\" fill=\"steelblue\"/>\n"));
        svg.push_str(&format!(
            "<text x=\"{px:.2}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">{n}</text>\n",
            y0 + 16.0
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
