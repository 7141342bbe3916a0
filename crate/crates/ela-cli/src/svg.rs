//! Self-contained SVG box-and-whisker plots.
//!
//! Each group becomes one box: the box spans the first to third quartile
//! with a bar at the median, whiskers reach the furthest observation within
//! 1.5 interquartile ranges of the box, and anything beyond the whiskers is
//! drawn as an individual outlier circle. Quartiles use linear interpolation
//! between order statistics (the common "type 7" rule), so a four-point
//! group has its box at interpolated positions rather than data points.

use std::fmt::Write;

/// One labeled group of observations.
pub struct Group {
    pub label: String,
    pub values: Vec<f64>,
}

/// Five-number summary plus outliers, in data units.
#[derive(Debug, PartialEq)]
pub struct BoxStats {
    pub low: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub high: f64,
    pub outliers: Vec<f64>,
}

/// Linear-interpolation quantile of already-sorted data.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = (n - 1) as f64 * p;
    let lo = h.floor() as usize;
    let frac = h - lo as f64;
    if frac == 0.0 {
        sorted[lo]
    } else {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    }
}

pub fn box_stats(values: &[f64]) -> BoxStats {
    assert!(!values.is_empty(), "box plot of an empty group");
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let q1 = quantile(&sorted, 0.25);
    let median = quantile(&sorted, 0.5);
    let q3 = quantile(&sorted, 0.75);
    let reach = 1.5 * (q3 - q1);
    let low = sorted
        .iter()
        .copied()
        .find(|v| *v >= q1 - reach)
        .unwrap_or(q1);
    let high = sorted
        .iter()
        .rev()
        .copied()
        .find(|v| *v <= q3 + reach)
        .unwrap_or(q3);
    let outliers = sorted
        .iter()
        .copied()
        .filter(|v| *v < low || *v > high)
        .collect();
    BoxStats {
        low,
        q1,
        median,
        q3,
        high,
        outliers,
    }
}

const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 16.0;
const MARGIN_TOP: f64 = 36.0;
const MARGIN_BOTTOM: f64 = 46.0;
const SLOT_WIDTH: f64 = 34.0;
const PLOT_HEIGHT: f64 = 320.0;

/// Renders one SVG document. `comment` is embedded verbatim as an XML
/// comment right after the opening tag (used for the configuration hash).
pub fn boxplot_svg(title: &str, y_label: &str, groups: &[Group], comment: &str) -> String {
    assert!(!groups.is_empty(), "box plot with no groups");
    let stats: Vec<BoxStats> = groups.iter().map(|g| box_stats(&g.values)).collect();

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (s, g) in stats.iter().zip(groups) {
        lo = lo.min(s.low).min(g.values.iter().copied().fold(f64::INFINITY, f64::min));
        hi = hi.max(s.high).max(g.values.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    }
    if lo == hi {
        lo -= 0.5;
        hi += 0.5;
    }
    let pad = 0.05 * (hi - lo);
    let (lo, hi) = (lo - pad, hi + pad);

    let width = MARGIN_LEFT + MARGIN_RIGHT + SLOT_WIDTH * groups.len() as f64;
    let height = MARGIN_TOP + PLOT_HEIGHT + MARGIN_BOTTOM;
    let y = |v: f64| MARGIN_TOP + PLOT_HEIGHT * (hi - v) / (hi - lo);
    let xc = |i: usize| MARGIN_LEFT + SLOT_WIDTH * (i as f64 + 0.5);

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\" font-family=\"sans-serif\" font-size=\"11\">"
    );
    let _ = writeln!(s, "<!-- {comment} -->");
    let _ = writeln!(
        s,
        "<rect width=\"{width:.0}\" height=\"{height:.0}\" fill=\"white\"/>"
    );
    let _ = writeln!(
        s,
        "<text x=\"{:.1}\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">{}</text>",
        width / 2.0,
        escape(title)
    );

    // Axis with five ticks.
    let axis_x = MARGIN_LEFT - 8.0;
    let _ = writeln!(
        s,
        "<line x1=\"{axis_x:.1}\" y1=\"{:.1}\" x2=\"{axis_x:.1}\" y2=\"{:.1}\" stroke=\"black\"/>",
        y(hi),
        y(lo)
    );
    for t in 0..=4 {
        let v = lo + (hi - lo) * t as f64 / 4.0;
        let _ = writeln!(
            s,
            "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{axis_x:.1}\" y2=\"{:.1}\" stroke=\"black\"/>",
            axis_x - 4.0,
            y(v),
            y(v)
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">{}</text>",
            axis_x - 7.0,
            y(v) + 4.0,
            fmt_tick(v)
        );
    }
    let _ = writeln!(
        s,
        "<text x=\"14\" y=\"{:.1}\" text-anchor=\"middle\" \
         transform=\"rotate(-90 14 {:.1})\">{}</text>",
        MARGIN_TOP + PLOT_HEIGHT / 2.0,
        MARGIN_TOP + PLOT_HEIGHT / 2.0,
        escape(y_label)
    );

    for (i, (st, g)) in stats.iter().zip(groups).enumerate() {
        let cx = xc(i);
        let half = SLOT_WIDTH * 0.32;
        let cap = SLOT_WIDTH * 0.18;
        // Whiskers and caps.
        for (a, b) in [(st.q3, st.high), (st.low, st.q1)] {
            let _ = writeln!(
                s,
                "<line x1=\"{cx:.1}\" y1=\"{:.1}\" x2=\"{cx:.1}\" y2=\"{:.1}\" stroke=\"black\"/>",
                y(a),
                y(b)
            );
        }
        for v in [st.low, st.high] {
            let _ = writeln!(
                s,
                "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\"/>",
                cx - cap,
                y(v),
                cx + cap,
                y(v)
            );
        }
        // Box and median bar.
        let _ = writeln!(
            s,
            "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"{:.1}\" height=\"{:.1}\" \
             fill=\"#9ecae1\" stroke=\"black\"/>",
            cx - half,
            y(st.q3),
            2.0 * half,
            (y(st.q1) - y(st.q3)).max(0.5)
        );
        let _ = writeln!(
            s,
            "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" \
             stroke=\"black\" stroke-width=\"1.6\"/>",
            cx - half,
            y(st.median),
            cx + half,
            y(st.median)
        );
        for v in &st.outliers {
            let _ = writeln!(
                s,
                "<circle cx=\"{cx:.1}\" cy=\"{:.1}\" r=\"2\" fill=\"none\" stroke=\"black\"/>",
                y(*v)
            );
        }
        let ly = MARGIN_TOP + PLOT_HEIGHT + 14.0;
        let _ = writeln!(
            s,
            "<text x=\"{cx:.1}\" y=\"{ly:.1}\" text-anchor=\"end\" \
             transform=\"rotate(-45 {cx:.1} {ly:.1})\">{}</text>",
            escape(&g.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if a >= 1e4 || a < 1e-3 {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartiles_interpolate_between_order_statistics() {
        // Classic hand example: 1..=4 with p in {.25,.5,.75}.
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile(&v, 0.25), 1.75);
        assert_eq!(quantile(&v, 0.5), 2.5);
        assert_eq!(quantile(&v, 0.75), 3.25);
        let odd = [3.0, 1.0, 2.0];
        let st = box_stats(&odd);
        assert_eq!(st.median, 2.0);
        assert_eq!(st.q1, 1.5);
        assert_eq!(st.q3, 2.5);
    }

    #[test]
    fn whiskers_stop_at_the_reach_and_outliers_fall_outside() {
        // q1=2, q3=4, reach=3: whiskers may extend to [-1, 7].
        let mut v = vec![1.0, 2.0, 2.5, 3.0, 3.5, 4.0, 5.0];
        v.push(40.0); // far outlier
        let st = box_stats(&v);
        assert!(st.outliers.contains(&40.0));
        assert!(st.high < 40.0);
        assert_eq!(st.low, 1.0); // within reach, so the whisker takes it
    }

    #[test]
    fn constant_group_renders_without_degenerate_scale() {
        let g = [Group {
            label: "c".into(),
            values: vec![2.0; 8],
        }];
        let svg = boxplot_svg("t", "y", &g, "config-hash: deadbeef");
        assert!(svg.starts_with("<svg "));
        assert!(svg.contains("<!-- config-hash: deadbeef -->"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn one_box_per_group_with_escaped_labels() {
        let groups: Vec<Group> = (0..3)
            .map(|i| Group {
                label: format!("f<{i}>"),
                values: (0..9).map(|j| (i * 9 + j) as f64 * 0.1).collect(),
            })
            .collect();
        let svg = boxplot_svg("title", "acc", &groups, "h");
        assert_eq!(svg.matches("<rect x=").count(), 3);
        assert!(svg.contains("f&lt;0&gt;"));
        assert!(!svg.contains("f<0>"));
    }
}
