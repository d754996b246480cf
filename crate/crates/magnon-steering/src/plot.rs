//! Minimal SVG rendering for sweep results: multi-series line charts for 1D
//! sweeps and a heatmap for 2D maps. CSV stays the source of truth; these
//! files exist so a run can be eyeballed without external tooling.

/// One labelled curve.
#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn new(label: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Self {
            label: label.into(),
            points,
        }
    }
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 560.0;
const MARGIN_LEFT: f64 = 78.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 46.0;
const MARGIN_BOTTOM: f64 = 64.0;

const LINE_COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

fn px(v: f64) -> String {
    format!("{v:.2}")
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Tick positions with a 1/2/5 step covering [min, max].
fn nice_ticks(min: f64, max: f64, target: usize) -> Vec<f64> {
    if !(max > min) {
        return vec![min];
    }
    let raw_step = (max - min) / target.max(1) as f64;
    let magnitude = 10f64.powf(raw_step.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * magnitude)
        .find(|s| *s >= raw_step)
        .unwrap_or(10.0 * magnitude);
    let first = (min / step).ceil() * step;
    let mut ticks = Vec::new();
    let mut t = first;
    while t <= max + 0.5 * step * 1e-9 + f64::EPSILON * max.abs() {
        // Snap values that are numerically zero so labels read "0".
        ticks.push(if t.abs() < step * 1e-9 { 0.0 } else { t });
        t += step;
    }
    ticks
}

fn tick_label(t: f64) -> String {
    if t == 0.0 {
        return "0".to_string();
    }
    let abs = t.abs();
    if (1e-3..1e4).contains(&abs) {
        let text = format!("{t:.4}");
        let trimmed = text.trim_end_matches('0').trim_end_matches('.');
        trimmed.to_string()
    } else {
        format!("{t:.2e}")
    }
}

struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn map_x(&self, x: f64) -> f64 {
        let span = (self.x_max - self.x_min).max(f64::MIN_POSITIVE);
        MARGIN_LEFT + (x - self.x_min) / span * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn map_y(&self, y: f64) -> f64 {
        let span = (self.y_max - self.y_min).max(f64::MIN_POSITIVE);
        HEIGHT - MARGIN_BOTTOM - (y - self.y_min) / span * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

fn svg_open(out: &mut String) {
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\">\n"
    ));
    out.push_str(&format!(
        "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));
}

fn draw_axes(out: &mut String, frame: &Frame, title: &str, x_label: &str, y_label: &str) {
    let left = MARGIN_LEFT;
    let right = WIDTH - MARGIN_RIGHT;
    let top = MARGIN_TOP;
    let bottom = HEIGHT - MARGIN_BOTTOM;
    out.push_str(&format!(
        "<text x=\"{}\" y=\"26\" text-anchor=\"middle\" font-size=\"17\">{}</text>\n",
        px((left + right) / 2.0),
        escape(title)
    ));
    for t in nice_ticks(frame.x_min, frame.x_max, 7) {
        let x = frame.map_x(t);
        out.push_str(&format!(
            "<line x1=\"{x}\" y1=\"{top}\" x2=\"{x}\" y2=\"{bottom}\" stroke=\"#e5e5e5\"/>\n",
            x = px(x),
            top = px(top),
            bottom = px(bottom)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"12\">{}</text>\n",
            px(x),
            px(bottom + 20.0),
            tick_label(t)
        ));
    }
    for t in nice_ticks(frame.y_min, frame.y_max, 6) {
        let y = frame.map_y(t);
        out.push_str(&format!(
            "<line x1=\"{left}\" y1=\"{y}\" x2=\"{right}\" y2=\"{y}\" stroke=\"#e5e5e5\"/>\n",
            left = px(left),
            right = px(right),
            y = px(y)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"12\">{}</text>\n",
            px(left - 8.0),
            px(y + 4.0),
            tick_label(t)
        ));
    }
    out.push_str(&format!(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#333\"/>\n",
        px(left),
        px(top),
        px(right - left),
        px(bottom - top)
    ));
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
        px((left + right) / 2.0),
        px(HEIGHT - 14.0),
        escape(x_label)
    ));
    out.push_str(&format!(
        "<text x=\"20\" y=\"{}\" text-anchor=\"middle\" font-size=\"14\" \
         transform=\"rotate(-90 20 {})\">{}</text>\n",
        px((top + bottom) / 2.0),
        px((top + bottom) / 2.0),
        escape(y_label)
    ));
}

/// Multi-series line chart. Gaps (non-finite y values) split a curve into
/// separate segments rather than drawing through them.
pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let finite = series
        .iter()
        .flat_map(|s| s.points.iter())
        .filter(|(x, y)| x.is_finite() && y.is_finite());
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for (x, y) in finite {
        x_min = x_min.min(*x);
        x_max = x_max.max(*x);
        y_min = y_min.min(*y);
        y_max = y_max.max(*y);
    }
    if !x_min.is_finite() {
        (x_min, x_max, y_min, y_max) = (0.0, 1.0, 0.0, 1.0);
    }
    if y_max == y_min {
        y_max = y_min + 1.0;
    }
    let pad = 0.05 * (y_max - y_min);
    let frame = Frame {
        x_min,
        x_max,
        y_min: y_min - pad,
        y_max: y_max + pad,
    };

    let mut out = String::new();
    svg_open(&mut out);
    draw_axes(&mut out, &frame, title, x_label, y_label);
    for (i, s) in series.iter().enumerate() {
        let color = LINE_COLORS[i % LINE_COLORS.len()];
        let mut segment: Vec<String> = Vec::new();
        let flush = |seg: &mut Vec<String>, out: &mut String| {
            if seg.len() >= 2 {
                out.push_str(&format!(
                    "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
                    seg.join(" ")
                ));
            }
            seg.clear();
        };
        for (x, y) in &s.points {
            if x.is_finite() && y.is_finite() {
                segment.push(format!("{},{}", px(frame.map_x(*x)), px(frame.map_y(*y))));
            } else {
                flush(&mut segment, &mut out);
            }
        }
        flush(&mut segment, &mut out);
        let legend_y = MARGIN_TOP + 18.0 + 20.0 * i as f64;
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            px(MARGIN_LEFT + 12.0),
            px(legend_y - 4.0),
            px(MARGIN_LEFT + 40.0),
            px(legend_y - 4.0)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"13\">{}</text>\n",
            px(MARGIN_LEFT + 46.0),
            px(legend_y),
            escape(&s.label)
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Perceptually ordered color ramp (dark violet → teal → yellow).
fn ramp(t: f64) -> String {
    const ANCHORS: [(f64, [u8; 3]); 5] = [
        (0.0, [0x44, 0x01, 0x54]),
        (0.25, [0x3b, 0x52, 0x8b]),
        (0.5, [0x21, 0x91, 0x8c]),
        (0.75, [0x5e, 0xc9, 0x62]),
        (1.0, [0xfd, 0xe7, 0x25]),
    ];
    let t = t.clamp(0.0, 1.0);
    let (mut lo, mut hi) = (ANCHORS[0], ANCHORS[4]);
    for pair in ANCHORS.windows(2) {
        if t >= pair[0].0 && t <= pair[1].0 {
            lo = pair[0];
            hi = pair[1];
            break;
        }
    }
    let f = if hi.0 > lo.0 { (t - lo.0) / (hi.0 - lo.0) } else { 0.0 };
    let mix = |a: u8, b: u8| (a as f64 + f * (b as f64 - a as f64)).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        mix(lo.1[0], hi.1[0]),
        mix(lo.1[1], hi.1[1]),
        mix(lo.1[2], hi.1[2])
    )
}

/// Heatmap over a dense 2D grid: `values` is row-major with the `x` axis
/// outermost (values[i * y.len() + j] belongs to (x[i], y[j])); `None` cells
/// (masked points) are hatched gray. The x axis runs horizontally.
pub fn heatmap(
    title: &str,
    x_label: &str,
    y_label: &str,
    x: &[f64],
    y: &[f64],
    values: &[Option<f64>],
) -> String {
    assert_eq!(values.len(), x.len() * y.len(), "grid shape mismatch");
    let frame = Frame {
        x_min: x.first().copied().unwrap_or(0.0),
        x_max: x.last().copied().unwrap_or(1.0),
        y_min: y.first().copied().unwrap_or(0.0),
        y_max: y.last().copied().unwrap_or(1.0),
    };
    let mut v_min = f64::INFINITY;
    let mut v_max = f64::NEG_INFINITY;
    for v in values.iter().flatten() {
        v_min = v_min.min(*v);
        v_max = v_max.max(*v);
    }
    if !v_min.is_finite() {
        (v_min, v_max) = (0.0, 1.0);
    }
    if v_max == v_min {
        v_max = v_min + 1.0;
    }

    let mut out = String::new();
    svg_open(&mut out);
    // Cells first, axes on top so the frame stays visible.
    let half_w = if x.len() > 1 {
        (frame.map_x(x[1]) - frame.map_x(x[0])).abs() / 2.0
    } else {
        (WIDTH - MARGIN_LEFT - MARGIN_RIGHT) / 2.0
    };
    let half_h = if y.len() > 1 {
        (frame.map_y(y[0]) - frame.map_y(y[1])).abs() / 2.0
    } else {
        (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM) / 2.0
    };
    for (i, xv) in x.iter().enumerate() {
        for (j, yv) in y.iter().enumerate() {
            let cx = frame.map_x(*xv);
            let cy = frame.map_y(*yv);
            let fill = match values[i * y.len() + j] {
                Some(v) => ramp((v - v_min) / (v_max - v_min)),
                None => "#c9c9c9".to_string(),
            };
            out.push_str(&format!(
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{fill}\"/>\n",
                px(cx - half_w),
                px(cy - half_h),
                px(2.0 * half_w + 0.3),
                px(2.0 * half_h + 0.3)
            ));
        }
    }
    draw_axes(&mut out, &frame, title, x_label, y_label);
    // Color scale legend: min/max labels in the top-right corner.
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"12\">[{} … {}]</text>\n",
        px(WIDTH - MARGIN_RIGHT - 4.0),
        px(MARGIN_TOP - 8.0),
        tick_label(v_min),
        tick_label(v_max)
    ));
    out.push_str("</svg>\n");
    out
}
