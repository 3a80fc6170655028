//! Minimal static SVG charts: multi-curve line plots and bar histograms.
//! Single self-contained files, no external assets; the CSVs are the
//! contract, these are for eyeballing.

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 42.0;
const MARGIN_BOTTOM: f64 = 54.0;

const PALETTE: [&str; 6] = [
    "#000000", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
];

pub struct Curve<'a> {
    pub label: String,
    pub xs: &'a [f64],
    pub ys: &'a [f64],
}

struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        MARGIN_LEFT + (v - self.x_min) / (self.x_max - self.x_min) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn y(&self, v: f64) -> f64 {
        HEIGHT - MARGIN_BOTTOM
            - (v - self.y_min) / (self.y_max - self.y_min) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

fn fmt_coord(v: f64) -> String {
    format!("{v:.2}")
}

fn fmt_tick(v: f64) -> String {
    let rounded = (v * 1e4).round() / 1e4;
    format!("{rounded}")
}

fn open_svg(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"13\">\n\
         <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">{title}</text>\n",
        WIDTH / 2.0
    )
}

fn axes(frame: &Frame, x_label: &str, y_label: &str) -> String {
    let mut s = String::new();
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    s.push_str(&format!(
        "<rect x=\"{x0}\" y=\"{y1}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#444\"/>\n",
        x1 - x0,
        y0 - y1
    ));
    for k in 0..=4 {
        let fx = frame.x_min + (frame.x_max - frame.x_min) * k as f64 / 4.0;
        let px = frame.x(fx);
        s.push_str(&format!(
            "<line x1=\"{}\" y1=\"{y0}\" x2=\"{}\" y2=\"{}\" stroke=\"#444\"/>\n",
            fmt_coord(px),
            fmt_coord(px),
            y0 + 5.0
        ));
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
            fmt_coord(px),
            y0 + 20.0,
            fmt_tick(fx)
        ));
        let fy = frame.y_min + (frame.y_max - frame.y_min) * k as f64 / 4.0;
        let py = frame.y(fy);
        s.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{x0}\" y2=\"{}\" stroke=\"#444\"/>\n",
            x0 - 5.0,
            fmt_coord(py),
            fmt_coord(py)
        ));
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n",
            x0 - 9.0,
            fmt_coord(py + 4.0),
            fmt_tick(fy)
        ));
    }
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{x_label}</text>\n",
        (x0 + x1) / 2.0,
        HEIGHT - 14.0
    ));
    s.push_str(&format!(
        "<text x=\"18\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">{y_label}</text>\n",
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    ));
    s
}

/// Multi-curve line chart over shared axes.
pub fn line_chart(title: &str, x_label: &str, y_label: &str, curves: &[Curve]) -> String {
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min: f64 = 0.0;
    let mut y_max = f64::NEG_INFINITY;
    for c in curves {
        for &x in c.xs {
            x_min = x_min.min(x);
            x_max = x_max.max(x);
        }
        for &y in c.ys {
            y_min = y_min.min(y);
            y_max = y_max.max(y);
        }
    }
    if !(x_max > x_min) {
        x_max = x_min + 1.0;
    }
    if !(y_max > y_min) {
        y_max = y_min + 1.0;
    }
    y_max *= 1.05;
    let frame = Frame {
        x_min,
        x_max,
        y_min,
        y_max,
    };

    let mut s = open_svg(title);
    s.push_str(&axes(&frame, x_label, y_label));
    for (idx, c) in curves.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let mut points = String::new();
        for (x, y) in c.xs.iter().zip(c.ys) {
            points.push_str(&fmt_coord(frame.x(*x)));
            points.push(',');
            points.push_str(&fmt_coord(frame.y(*y)));
            points.push(' ');
        }
        s.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.4\"/>\n",
            points.trim_end()
        ));
        let ly = MARGIN_TOP + 16.0 + 18.0 * idx as f64;
        let lx = WIDTH - MARGIN_RIGHT - 150.0;
        s.push_str(&format!(
            "<line x1=\"{lx}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            lx + 26.0
        ));
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\">{}</text>\n",
            lx + 32.0,
            ly + 4.0,
            c.label
        ));
    }
    s.push_str("</svg>\n");
    s
}

/// Bar chart of a binned distribution.
pub fn histogram_chart(title: &str, x_label: &str, y_label: &str, edges: &[f64], mass: &[f64]) -> String {
    let y_peak = mass.iter().fold(0.0f64, |a, &b| a.max(b)).max(1e-12);
    let frame = Frame {
        x_min: edges[0],
        x_max: edges[edges.len() - 1],
        y_min: 0.0,
        y_max: y_peak * 1.05,
    };
    let mut s = open_svg(title);
    s.push_str(&axes(&frame, x_label, y_label));
    let floor = frame.y(0.0);
    for (k, &m) in mass.iter().enumerate() {
        if m <= 0.0 {
            continue;
        }
        let x = frame.x(edges[k]);
        let w = frame.x(edges[k + 1]) - x;
        let y = frame.y(m);
        s.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#1f77b4\"/>\n",
            fmt_coord(x),
            fmt_coord(y),
            fmt_coord(w.max(0.4)),
            fmt_coord(floor - y)
        ));
    }
    s.push_str("</svg>\n");
    s
}
