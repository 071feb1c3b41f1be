//! A small SVG line-plot writer with byte-stable output.

use std::fmt::Write as _;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 6] = ["#1f4e9c", "#2e8b3d", "#c0392b", "#138d90", "#8e44ad", "#d35400"];

/// One legend entry, drawn as one or more disconnected polylines.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Series {
    pub label: String,
    pub segments: Vec<Vec<(f64, f64)>>,
}

impl Series {
    pub fn new(label: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Self {
            label: label.into(),
            segments: vec![points],
        }
    }

    fn points(&self) -> impl Iterator<Item = &(f64, f64)> {
        self.segments.iter().flatten()
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Fixed ranges; computed from the data when `None`.
    pub x_range: Option<(f64, f64)>,
    pub y_range: Option<(f64, f64)>,
    pub series: Vec<Series>,
}

fn data_range<'a>(values: impl Iterator<Item = &'a f64>) -> Option<(f64, f64)> {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    if lo.is_finite() {
        Some(if hi > lo { (lo, hi) } else { (lo - 0.5, lo + 0.5) })
    } else {
        None
    }
}

/// Round tick spacing covering `[lo, hi]` with about five intervals.
fn ticks(lo: f64, hi: f64) -> (Vec<f64>, usize) {
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let m = [1.0, 2.0, 2.5, 5.0, 10.0]
        .into_iter()
        .min_by(|p, q| (p * mag / raw).ln().abs().total_cmp(&(q * mag / raw).ln().abs()))
        .unwrap_or(1.0);
    let step = m * mag;
    let mag_digits = -(mag.log10().round() as i64);
    let digits = match m {
        m if m == 10.0 => mag_digits - 1,
        m if m == 2.5 => mag_digits + 1,
        _ => mag_digits,
    };
    let decimals = digits.max(0) as usize;
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    ((first..=last).map(|k| k as f64 * step).collect(), decimals)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl Plot {
    /// Renders a standalone SVG 1.1 document.
    pub fn render(&self) -> String {
        let (x0, x1) = self
            .x_range
            .or_else(|| data_range(self.series.iter().flat_map(|s| s.points().map(|p| &p.0))))
            .unwrap_or((0.0, 1.0));
        let (y0, y1) = self
            .y_range
            .or_else(|| {
                data_range(self.series.iter().flat_map(|s| s.points().map(|p| &p.1)))
                    .map(|(_, h)| (0.0f64.min(h), h * 1.05))
            })
            .unwrap_or((0.0, 1.0));
        let pw = WIDTH - LEFT - RIGHT;
        let ph = HEIGHT - TOP - BOTTOM;
        let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
        let sy = |y: f64| TOP + ph - (y - y0) / (y1 - y0) * ph;

        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="800" height="500" viewBox="0 0 800 500">"#
        );
        let _ = writeln!(out, r#"<rect width="800" height="500" fill="white"/>"#);
        let _ = writeln!(
            out,
            r#"<defs><clipPath id="plot"><rect x="{LEFT:.2}" y="{TOP:.2}" width="{pw:.2}" height="{ph:.2}"/></clipPath></defs>"#
        );
        if !self.title.is_empty() {
            let _ = writeln!(
                out,
                r#"<text x="400.00" y="24.00" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
                escape(&self.title)
            );
        }
        // axes
        let _ = writeln!(
            out,
            r#"<path d="M{:.2} {:.2} L{:.2} {:.2} L{:.2} {:.2}" fill="none" stroke="black" stroke-width="1"/>"#,
            LEFT,
            TOP,
            LEFT,
            TOP + ph,
            LEFT + pw,
            TOP + ph
        );
        let (xt, xd) = ticks(x0, x1);
        for t in xt {
            let px = sx(t);
            let _ = writeln!(
                out,
                r#"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="12">{t:.xd$}</text>"#,
                TOP + ph,
                TOP + ph + 5.0,
                TOP + ph + 20.0
            );
        }
        let (yt, yd) = ticks(y0, y1);
        for t in yt {
            let py = sy(t);
            let _ = writeln!(
                out,
                r#"<line x1="{:.2}" y1="{py:.2}" x2="{LEFT:.2}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="12">{t:.yd$}</text>"#,
                LEFT - 5.0,
                LEFT - 8.0,
                py + 4.0
            );
        }
        if !self.x_label.is_empty() {
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="13">{}</text>"#,
                LEFT + pw / 2.0,
                HEIGHT - 15.0,
                escape(&self.x_label)
            );
        }
        if !self.y_label.is_empty() {
            let _ = writeln!(
                out,
                r#"<text x="18.00" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="13" transform="rotate(-90 18.00 {:.2})">{}</text>"#,
                TOP + ph / 2.0,
                TOP + ph / 2.0,
                escape(&self.y_label)
            );
        }
        for (i, s) in self.series.iter().enumerate() {
            let colour = PALETTE[i % PALETTE.len()];
            for seg in &s.segments {
                let pts: Vec<String> = seg
                    .iter()
                    .filter(|(x, y)| x.is_finite() && y.is_finite())
                    .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                    .collect();
                if pts.is_empty() {
                    continue;
                }
                let _ = writeln!(
                    out,
                    r#"<polyline clip-path="url(#plot)" fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
                    pts.join(" ")
                );
            }
            let ly = TOP + 14.0 + 18.0 * i as f64;
            let lx = LEFT + pw - 190.0;
            let _ = writeln!(
                out,
                r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{colour}" stroke-width="2"/><text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12">{}</text>"#,
                lx + 24.0,
                lx + 30.0,
                ly + 4.0,
                escape(&s.label)
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_plot_has_axes() {
        let svg = Plot::default().render();
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("<path d=\"M70.00 40.00"));
        assert!(!svg.contains("<polyline"));
    }

    #[test]
    fn byte_stable() {
        let p = Plot {
            series: vec![Series::new("s", vec![(0.0, 0.0), (1.0, 2.0)])],
            ..Plot::default()
        };
        assert_eq!(p.render(), p.render());
        assert_eq!(p.render().matches("<polyline").count(), 1);
    }

    #[test]
    fn tick_spacing() {
        let (t, d) = ticks(0.0, 2.6);
        assert_eq!(t, vec![0.0, 0.5, 1.0, 1.5, 2.0, 2.5]);
        assert_eq!(d, 1);
        let (t, d) = ticks(0.0, 0.45);
        assert_eq!(t.len(), 5);
        assert_eq!(d, 1);
    }
}
