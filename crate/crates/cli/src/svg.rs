//! SVG 1.1 drawings of the ping-pong semicircles and limit-set cells.
//!
//! The boundary line is horizontal. One user unit is 1/100 of the hull span,
//! semicircles bulge upward, and every coordinate is printed with four
//! decimals so the output is byte-stable.

use std::fmt::Write;

use funnelgroup::limitset::{RefinementLayer, SamplePoint};
use funnelgroup::schottky::PingPong;

const MARGIN: f64 = 10.0;
const AXIS_Y: f64 = 60.0;
const WIDTH: f64 = 120.0;
const HEIGHT: f64 = 70.0;
const TICK: f64 = 1.0;
// Geodesics narrower than this (in user units) print as zero-size arcs.
const MIN_RADIUS: f64 = 5e-4;

fn num(x: f64) -> String {
    let r = (x * 1e4).round() / 1e4;
    // Keep "-0.0000" out of the output.
    format!("{:.4}", if r == 0.0 { 0.0 } else { r })
}

struct Frame {
    lo: f64,
    unit: f64,
}

impl Frame {
    fn new(group: &dyn PingPong) -> Self {
        let order = group.circle_order();
        let lo = order
            .iter()
            .map(|(_, i)| i.lo())
            .fold(f64::INFINITY, f64::min);
        let hi = order
            .iter()
            .map(|(_, i)| i.hi())
            .fold(f64::NEG_INFINITY, f64::max);
        Self {
            lo,
            unit: (hi - lo) / 100.0,
        }
    }

    fn x(&self, x: f64) -> f64 {
        MARGIN + (x - self.lo) / self.unit
    }
}

fn arc(out: &mut String, frame: &Frame, lo: f64, hi: f64) {
    let (x1, x2) = (frame.x(lo), frame.x(hi));
    let r = 0.5 * (x2 - x1);
    if r < MIN_RADIUS {
        return;
    }
    let y = num(AXIS_Y);
    let _ = writeln!(
        out,
        "    <path d=\"M {} {y} A {} {} 0 0 1 {} {y}\"/>",
        num(x1),
        num(r),
        num(r),
        num(x2)
    );
}

/// What goes into one drawing.
pub struct Scene<'a> {
    pub title: String,
    pub group: &'a dyn PingPong,
    /// Layers whose cells get geodesics drawn (depth 2 and deeper).
    pub nested: &'a [RefinementLayer],
    /// Layer drawn as tick marks on the axis.
    pub ticks: Option<&'a RefinementLayer>,
    pub points: &'a [SamplePoint],
}

pub fn render(scene: &Scene<'_>) -> String {
    let frame = Frame::new(scene.group);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}0\" height=\"{h}0\" viewBox=\"0 0 {w} {h}\">",
        w = WIDTH,
        h = HEIGHT
    );
    let _ = writeln!(out, "  <title>{}</title>", scene.title);
    let _ = writeln!(
        out,
        "  <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
    );
    let _ = writeln!(
        out,
        "  <line id=\"axis\" x1=\"0.0000\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"black\" stroke-width=\"0.1\"/>",
        num(WIDTH),
        y = num(AXIS_Y)
    );

    out.push_str(
        "  <g id=\"semicircles\" fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"0.25\">\n",
    );
    for (_, interval) in scene.group.circle_order() {
        arc(&mut out, &frame, interval.lo(), interval.hi());
    }
    out.push_str("  </g>\n");

    out.push_str(
        "  <g id=\"labels\" font-family=\"sans-serif\" font-size=\"2\" text-anchor=\"middle\">\n",
    );
    for (letter, interval) in scene.group.circle_order() {
        let r = 0.5 * (frame.x(interval.hi()) - frame.x(interval.lo()));
        let _ = writeln!(
            out,
            "    <text x=\"{}\" y=\"{}\">{letter}</text>",
            num(frame.x(interval.center())),
            num(AXIS_Y - r - 1.0)
        );
    }
    out.push_str("  </g>\n");

    if !scene.nested.is_empty() {
        out.push_str("  <g id=\"geodesics\" fill=\"none\" stroke=\"#5b7f3a\">\n");
        for layer in scene.nested {
            let width = 0.2 / layer.depth as f64;
            let _ = writeln!(
                out,
                "   <g data-depth=\"{}\" stroke-width=\"{}\">",
                layer.depth,
                num(width)
            );
            for cell in &layer.cells {
                arc(&mut out, &frame, cell.interval.lo(), cell.interval.hi());
            }
            out.push_str("   </g>\n");
        }
        out.push_str("  </g>\n");
    }

    if let Some(layer) = scene.ticks {
        let _ = writeln!(
            out,
            "  <g id=\"cells\" data-depth=\"{}\" stroke=\"#b03a2e\" stroke-width=\"0.05\">",
            layer.depth
        );
        let (top, bottom) = (num(AXIS_Y - TICK), num(AXIS_Y + TICK));
        for cell in &layer.cells {
            for x in [cell.interval.lo(), cell.interval.hi()] {
                let x = num(frame.x(x));
                let _ = writeln!(
                    out,
                    "    <line x1=\"{x}\" y1=\"{top}\" x2=\"{x}\" y2=\"{bottom}\"/>"
                );
            }
        }
        out.push_str("  </g>\n");
    }

    if !scene.points.is_empty() {
        out.push_str("  <g id=\"limit-points\" fill=\"black\">\n");
        for p in scene.points {
            let _ = writeln!(
                out,
                "    <circle cx=\"{}\" cy=\"{}\" r=\"0.2500\"/>",
                num(frame.x(p.point)),
                num(AXIS_Y)
            );
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_formatting() {
        assert_eq!(num(-0.00001), "0.0000");
        assert_eq!(num(1.0 / 3.0), "0.3333");
        assert_eq!(num(-2.5), "-2.5000");
    }
}
