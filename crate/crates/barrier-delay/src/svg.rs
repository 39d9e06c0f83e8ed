//! Minimal single-series SVG line charts for scan outputs.

/// Renders one series as an SVG line chart with labeled axes. Non-finite
/// samples break the polyline, so flagged scan rows leave visible gaps.
pub fn line_chart(x: &[f64], y: &[f64], x_label: &str, y_label: &str, title: &str) -> String {
    const W: f64 = 800.0;
    const H: f64 = 500.0;
    const ML: f64 = 70.0;
    const MR: f64 = 20.0;
    const MT: f64 = 40.0;
    const MB: f64 = 50.0;

    let finite: Vec<(f64, f64)> = x
        .iter()
        .zip(y)
        .filter(|(a, b)| a.is_finite() && b.is_finite())
        .map(|(a, b)| (*a, *b))
        .collect();
    let (x_min, x_max) = bounds(finite.iter().map(|p| p.0));
    let (mut y_min, mut y_max) = bounds(finite.iter().map(|p| p.1));
    if y_max - y_min < 1e-300 {
        y_min -= 0.5;
        y_max += 0.5;
    }
    let sx = |v: f64| ML + (v - x_min) / (x_max - x_min) * (W - ML - MR);
    let sy = |v: f64| H - MB - (v - y_min) / (y_max - y_min) * (H - MT - MB);

    let mut paths = String::new();
    let mut current = String::new();
    let flush = |seg: &mut String, acc: &mut String| {
        if seg.matches(' ').count() >= 1 {
            acc.push_str(&format!(
                "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                seg.trim()
            ));
        }
        seg.clear();
    };
    for (&xi, &yi) in x.iter().zip(y) {
        if xi.is_finite() && yi.is_finite() {
            current.push_str(&format!("{:.2},{:.2} ", sx(xi), sy(yi)));
        } else {
            flush(&mut current, &mut paths);
        }
    }
    flush(&mut current, &mut paths);

    let zero_line = if y_min < 0.0 && y_max > 0.0 {
        format!(
            "<line x1=\"{ML}\" y1=\"{0:.2}\" x2=\"{1:.2}\" y2=\"{0:.2}\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n",
            sy(0.0),
            W - MR
        )
    } else {
        String::new()
    };

    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
            "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            "<text x=\"{tx}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">{title}</text>\n",
            "<line x1=\"{ml}\" y1=\"{yb}\" x2=\"{xr}\" y2=\"{yb}\" stroke=\"black\"/>\n",
            "<line x1=\"{ml}\" y1=\"{mt}\" x2=\"{ml}\" y2=\"{yb}\" stroke=\"black\"/>\n",
            "{zero}",
            "<text x=\"{ml}\" y=\"{ybl}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">{xmin:.4}</text>\n",
            "<text x=\"{xr}\" y=\"{ybl}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">{xmax:.4}</text>\n",
            "<text x=\"{ymlx}\" y=\"{yb}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">{ymin:.4}</text>\n",
            "<text x=\"{ymlx}\" y=\"{mtl}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">{ymax:.4}</text>\n",
            "<text x=\"{tx}\" y=\"{xlab_y}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">{xlabel}</text>\n",
            "<text x=\"18\" y=\"{ty}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" transform=\"rotate(-90 18 {ty})\">{ylabel}</text>\n",
            "{paths}",
            "</svg>\n"
        ),
        w = W,
        h = H,
        tx = (ML + W - MR) / 2.0,
        title = escape(title),
        ml = ML,
        mt = MT,
        mtl = MT + 4.0,
        yb = H - MB,
        ybl = H - MB + 18.0,
        xr = W - MR,
        zero = zero_line,
        xmin = x_min,
        xmax = x_max,
        ymin = y_min,
        ymax = y_max,
        ymlx = ML - 6.0,
        xlab_y = H - 12.0,
        xlabel = escape(x_label),
        ty = (MT + H - MB) / 2.0,
        ylabel = escape(y_label),
        paths = paths,
    )
}

fn bounds(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in vals {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        (0.0, 1.0)
    } else {
        (lo, hi)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_contains_polyline_and_labels() {
        let x = [0.0, 1.0, 2.0, f64::NAN, 3.0, 4.0];
        let y = [0.5, -0.5, 1.0, f64::NAN, 0.0, 2.0];
        let svg = line_chart(&x, &y, "k0a", "tau_r/tau_c", "reflection delay");
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polyline").count(), 2); // gap splits the series
        assert!(svg.contains("tau_r/tau_c"));
        assert!(svg.contains("stroke-dasharray")); // zero line present
    }
}
