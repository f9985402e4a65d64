//! Hand-emitted SVG maps. No plotting library: every byte of the output is
//! a pure function of the inputs, so reruns are diffable and goldens stay
//! stable.

use std::collections::BTreeSet;
use std::fmt::Write;

const PLOT_W: f64 = 800.0;
const PLOT_H: f64 = 600.0;
const PAD: f64 = 40.0;
const LEGEND_W: f64 = 190.0;

/// Fixed family palette. Unlisted families fall back to dark gray so a new
/// generator never reshuffles existing colors.
const FAMILY_COLORS: &[(&str, &str)] = &[
    ("ord", "#d62728"),
    ("rps", "#1f77b4"),
    ("ord_rps", "#ff9896"),
    ("rps_ord", "#aec7e8"),
    ("noniso", "#7f7f7f"),
    ("uniform", "#2ca02c"),
    ("condorcet", "#ff7f0e"),
    ("strength_exp_e", "#9467bd"),
    ("strength_exp_2", "#8c564b"),
    ("strength_lin", "#e377c2"),
    ("strength_log", "#bcbd22"),
    ("strength_root", "#17becf"),
    ("strength_exp_rand", "#c49c94"),
    ("strength_exp", "#c5b0d5"),
    ("impartial", "#9edae5"),
    ("nba", "#98df8a"),
    ("bridge", "#f7b6d2"),
    ("election", "#dbdb8d"),
];

pub fn family_color(family: &str) -> &'static str {
    FAMILY_COLORS
        .iter()
        .find(|(f, _)| *f == family)
        .map(|(_, c)| *c)
        .unwrap_or("#444444")
}

/// Sequential ramp through standard viridis anchor colors.
fn viridis(t: f64) -> String {
    const STOPS: [(f64, [f64; 3]); 5] = [
        (0.00, [68.0, 1.0, 84.0]),
        (0.25, [59.0, 82.0, 139.0]),
        (0.50, [33.0, 145.0, 140.0]),
        (0.75, [94.0, 201.0, 98.0]),
        (1.00, [253.0, 231.0, 37.0]),
    ];
    let t = t.clamp(0.0, 1.0);
    let mut rgb = STOPS[STOPS.len() - 1].1;
    for w in STOPS.windows(2) {
        let ((a, ca), (b, cb)) = (w[0], w[1]);
        if t <= b {
            let u = if b > a { (t - a) / (b - a) } else { 0.0 };
            rgb = [0, 1, 2].map(|i| ca[i] + u * (cb[i] - ca[i]));
            break;
        }
    }
    format!(
        "#{:02x}{:02x}{:02x}",
        rgb[0].round() as u8,
        rgb[1].round() as u8,
        rgb[2].round() as u8
    )
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// How markers are colored.
pub enum Coloring {
    /// Categorical: one fixed color per family label.
    Families(Vec<String>),
    /// Sequential: viridis over the min..max span of a numeric attribute.
    Values { name: String, values: Vec<f64> },
}

/// Lays `points` out on a fixed canvas, uniformly scaled and centered, and
/// returns the complete SVG document. `ids` feed hover titles only.
pub fn render_map(
    ids: &[String],
    points: &[[f64; 2]],
    coloring: &Coloring,
    marker: f64,
    legend: bool,
) -> String {
    let width = PLOT_W + if legend { LEGEND_W } else { 0.0 };
    let (min, max) = bounds(points);
    let span_x = (max[0] - min[0]).max(f64::MIN_POSITIVE);
    let span_y = (max[1] - min[1]).max(f64::MIN_POSITIVE);
    let scale = ((PLOT_W - 2.0 * PAD) / span_x).min((PLOT_H - 2.0 * PAD) / span_y);
    let cx = (min[0] + max[0]) / 2.0;
    let cy = (min[1] + max[1]) / 2.0;
    // SVG y grows downward; data y grows upward.
    let tx = |x: f64| PLOT_W / 2.0 + (x - cx) * scale;
    let ty = |y: f64| PLOT_H / 2.0 - (y - cy) * scale;

    let colors: Vec<String> = match coloring {
        Coloring::Families(fams) => fams.iter().map(|f| family_color(f).to_string()).collect(),
        Coloring::Values { values, .. } => {
            let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            values
                .iter()
                .map(|&v| {
                    let t = if hi > lo { (v - lo) / (hi - lo) } else { 0.5 };
                    viridis(t)
                })
                .collect()
        }
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.3}\" height=\"{PLOT_H:.3}\" \
         viewBox=\"0 0 {width:.3} {PLOT_H:.3}\">"
    );
    let _ = writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{width:.3}\" height=\"{PLOT_H:.3}\" fill=\"#ffffff\"/>"
    );
    for (i, p) in points.iter().enumerate() {
        let title = match coloring {
            Coloring::Families(f) => format!("{} ({})", ids[i], f[i]),
            Coloring::Values { name, values } => format!("{} ({}={})", ids[i], name, values[i]),
        };
        let _ = writeln!(
            out,
            "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{:.3}\" fill=\"{}\" fill-opacity=\"0.85\">\
             <title>{}</title></circle>",
            tx(p[0]),
            ty(p[1]),
            marker,
            colors[i],
            esc(&title)
        );
    }
    if legend {
        draw_legend(&mut out, coloring);
    }
    out.push_str("</svg>\n");
    out
}

fn bounds(points: &[[f64; 2]]) -> ([f64; 2], [f64; 2]) {
    let mut min = [f64::INFINITY; 2];
    let mut max = [f64::NEG_INFINITY; 2];
    for p in points {
        for a in 0..2 {
            min[a] = min[a].min(p[a]);
            max[a] = max[a].max(p[a]);
        }
    }
    if points.is_empty() {
        return ([0.0; 2], [1.0; 2]);
    }
    (min, max)
}

fn draw_legend(out: &mut String, coloring: &Coloring) {
    let x = PLOT_W + 10.0;
    match coloring {
        Coloring::Families(fams) => {
            let distinct: BTreeSet<&String> = fams.iter().collect();
            for (row, fam) in distinct.into_iter().enumerate() {
                let y = PAD + row as f64 * 18.0;
                let _ = writeln!(
                    out,
                    "<rect x=\"{x:.3}\" y=\"{y:.3}\" width=\"12\" height=\"12\" fill=\"{}\"/>",
                    family_color(fam)
                );
                let _ = writeln!(
                    out,
                    "<text x=\"{:.3}\" y=\"{:.3}\" font-family=\"sans-serif\" \
                     font-size=\"12\">{}</text>",
                    x + 18.0,
                    y + 10.0,
                    esc(fam)
                );
            }
        }
        Coloring::Values { name, values } => {
            let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let bar_h = PLOT_H - 2.0 * PAD - 20.0;
            let steps = 32;
            let _ = writeln!(
                out,
                "<text x=\"{x:.3}\" y=\"{:.3}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>",
                PAD - 8.0,
                esc(name)
            );
            for s in 0..steps {
                // Top of the bar shows the maximum.
                let t = 1.0 - (s as f64 + 0.5) / steps as f64;
                let y = PAD + 10.0 + s as f64 * bar_h / steps as f64;
                let _ = writeln!(
                    out,
                    "<rect x=\"{x:.3}\" y=\"{y:.3}\" width=\"16\" height=\"{:.3}\" fill=\"{}\"/>",
                    bar_h / steps as f64 + 0.5,
                    viridis(t)
                );
            }
            for (t, v) in [(1.0, hi), (0.0, lo)] {
                let y = PAD + 10.0 + (1.0 - t) * bar_h;
                let _ = writeln!(
                    out,
                    "<text x=\"{:.3}\" y=\"{:.3}\" font-family=\"sans-serif\" \
                     font-size=\"11\">{v:.3}</text>",
                    x + 22.0,
                    y + 4.0
                );
            }
        }
    }
}
