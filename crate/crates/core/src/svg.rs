//! Static SVG pictures of planar orchards.

use std::fmt::Write;

use itertools::Itertools;
use num_traits::ToPrimitive;

use crate::config::{det_sign_idx, Configuration};
use crate::error::{OrchardError, Result};
use crate::relation::{Class, OrchardPartition};

pub const CHERRY: &str = "#b5123e";
pub const PLUM: &str = "#5b2a6e";
const CANVAS: f64 = 400.0;
const RADIUS: f64 = 6.0;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SvgOptions {
    /// Draw the segment between these two points and every line spanned by
    /// two other points that separates them.
    pub pair: Option<(usize, usize)>,
    pub labels: bool,
}

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
    width: f64,
    height: f64,
}

impl Frame {
    /// Square canvas; the shorter extent is centered.
    fn fit(xs: &[f64], ys: &[f64]) -> Frame {
        let (min_x, max_x) = bounds(xs);
        let (min_y, max_y) = bounds(ys);
        let span = (max_x - min_x).max(max_y - min_y);
        let span = if span > 0.0 { span } else { 1.0 };
        let scale = CANVAS / (1.2 * span);
        let half = 0.6 * span;
        Frame {
            min_x: 0.5 * (min_x + max_x) - half,
            max_y: 0.5 * (min_y + max_y) + half,
            scale,
            width: CANVAS,
            height: CANVAS,
        }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.min_x) * self.scale, (self.max_y - y) * self.scale)
    }
}

fn bounds(v: &[f64]) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}

fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Clips the line through `a` and `b` to the box `[0,w] x [0,h]`.
fn clip_line(a: (f64, f64), b: (f64, f64), w: f64, h: f64) -> Option<((f64, f64), (f64, f64))> {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for (p, q) in [(-dx, a.0), (dx, w - a.0), (-dy, a.1), (dy, h - a.1)] {
        if p == 0.0 {
            if q < 0.0 {
                return None;
            }
        } else {
            let t = q / p;
            if p < 0.0 {
                lo = lo.max(t);
            } else {
                hi = hi.min(t);
            }
        }
    }
    (lo < hi).then(|| {
        (
            (a.0 + lo * dx, a.1 + lo * dy),
            (a.0 + hi * dx, a.1 + hi * dy),
        )
    })
}

/// Renders a planar configuration with one marker per point, colored by
/// class. Output depends only on the inputs.
pub fn render_svg(
    cfg: &Configuration,
    partition: &OrchardPartition,
    options: &SvgOptions,
) -> Result<String> {
    if cfg.dim() != 2 {
        return Err(OrchardError::DimensionMismatch {
            expected: 2,
            found: cfg.dim(),
        });
    }
    if partition.len() != cfg.len() {
        return Err(OrchardError::InvalidInput(format!(
            "partition has {} labels for {} points",
            partition.len(),
            cfg.len()
        )));
    }
    let xs: Vec<f64> = cfg
        .points()
        .iter()
        .map(|p| p[0].to_f64().unwrap_or(0.0))
        .collect();
    let ys: Vec<f64> = cfg
        .points()
        .iter()
        .map(|p| p[1].to_f64().unwrap_or(0.0))
        .collect();
    let frame = Frame::fit(&xs, &ys);
    let pos: Vec<(f64, f64)> = xs.iter().zip(&ys).map(|(&x, &y)| frame.map(x, y)).collect();

    let mut out = String::new();
    let (w, h) = (num(frame.width), num(frame.height));
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    writeln!(
        out,
        r##"<rect width="100%" height="100%" fill="#fbf8f1"/>"##
    )
    .unwrap();

    if let Some((i, j)) = options.pair {
        cfg.check_label(i)?;
        cfg.check_label(j)?;
        if i == j {
            return Err(OrchardError::RepeatedLabel(i));
        }
        writeln!(out, r##"<g stroke="#8a8a8a" stroke-width="1">"##).unwrap();
        for (s, t) in (0..cfg.len())
            .filter(|&k| k != i - 1 && k != j - 1)
            .tuple_combinations()
        {
            if det_sign_idx(cfg, &[s, t], i - 1) == det_sign_idx(cfg, &[s, t], j - 1) {
                continue;
            }
            if let Some((a, b)) = clip_line(pos[s], pos[t], frame.width, frame.height) {
                writeln!(
                    out,
                    r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                    num(a.0),
                    num(a.1),
                    num(b.0),
                    num(b.1)
                )
                .unwrap();
            }
        }
        let (a, b) = (pos[i - 1], pos[j - 1]);
        writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke-dasharray="4 3" stroke-width="2"/>"#,
            num(a.0),
            num(a.1),
            num(b.0),
            num(b.1)
        )
        .unwrap();
        writeln!(out, "</g>").unwrap();
    }

    for (k, &(x, y)) in pos.iter().enumerate() {
        let color = match partition.class_of(k + 1) {
            Some(Class::B) => PLUM,
            _ => CHERRY,
        };
        writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="{color}"/>"#,
            num(x),
            num(y),
            num(RADIUS)
        )
        .unwrap();
        if options.labels {
            writeln!(
                out,
                r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">{}</text>"#,
                num(x + RADIUS + 2.0),
                num(y - RADIUS - 2.0),
                k + 1
            )
            .unwrap();
        }
    }
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::{orchard_partition, Method};

    fn square() -> Configuration {
        Configuration::from_ints(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]).unwrap()
    }

    #[test]
    fn deterministic() {
        let cfg = square();
        let p = orchard_partition(&cfg, Method::AllPairs).unwrap();
        let opts = SvgOptions {
            pair: Some((1, 3)),
            labels: true,
        };
        assert_eq!(
            render_svg(&cfg, &p, &opts).unwrap(),
            render_svg(&cfg, &p, &opts).unwrap()
        );
    }

    #[test]
    fn square_alternates_colors() {
        let cfg = square();
        let p = orchard_partition(&cfg, Method::AllPairs).unwrap();
        let svg = render_svg(&cfg, &p, &SvgOptions::default()).unwrap();
        let colors: Vec<&str> = svg
            .lines()
            .filter(|l| l.starts_with("<circle"))
            .map(|l| if l.contains(CHERRY) { "A" } else { "B" })
            .collect();
        assert_eq!(colors, ["A", "B", "A", "B"]);
        assert!(svg.contains(r#"width="400" height="400""#));
    }

    #[test]
    fn single_point() {
        let cfg = Configuration::from_ints(2, &[&[3, 4]]).unwrap();
        let p = orchard_partition(&cfg, Method::AllPairs).unwrap();
        let svg = render_svg(&cfg, &p, &SvgOptions::default()).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.contains(CHERRY));
        assert!(svg.contains(r#"cx="200" cy="200""#));
    }

    #[test]
    fn separating_lines_for_a_pair() {
        // 1 and 2 are separated only by the line through 3 and 4
        let cfg = Configuration::from_ints(2, &[&[0, 1], &[0, -1], &[-2, 0], &[2, 1]]).unwrap();
        let p = orchard_partition(&cfg, Method::AllPairs).unwrap();
        let svg = render_svg(
            &cfg,
            &p,
            &SvgOptions {
                pair: Some((1, 2)),
                labels: false,
            },
        )
        .unwrap();
        assert_eq!(svg.matches("<line").count(), 2);
    }

    #[test]
    fn rejects_other_dimensions() {
        let cfg = Configuration::on_line(&[1, 2]);
        let p = orchard_partition(&cfg, Method::AllPairs).unwrap();
        assert!(render_svg(&cfg, &p, &SvgOptions::default()).is_err());
    }

    #[test]
    fn clipping() {
        let seg = clip_line((1.0, 1.0), (2.0, 2.0), 10.0, 10.0).unwrap();
        assert_eq!(seg, ((0.0, 0.0), (10.0, 10.0)));
        assert!(clip_line((0.0, 20.0), (1.0, 20.0), 10.0, 10.0).is_none());
    }
}
