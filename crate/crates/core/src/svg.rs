//! SVG drawings of representations: one horizontal track per member graph on
//! a shared axis, shared vertices drawn bold.

use std::fmt::Write;

use num_traits::{ToPrimitive, Zero};

use crate::graph::SunflowerInstance;
use crate::rational::{Interval, Rational, Representation};

/// Pixels per unit of interval length.
pub const SCALE: f64 = 100.0;

const MARGIN: f64 = 40.0;
const ROW: f64 = 26.0;
const TRACK_GAP: f64 = 24.0;
const BAR: f64 = 10.0;
const COLORS: [&str; 6] = ["#1f4e79", "#8c2d19", "#2e6b30", "#6a3d9a", "#8a6d00", "#005f73"];
const DASHES: [&str; 3] = ["none", "6 3", "2 2"];

fn px(x: &Rational, origin: &Rational) -> f64 {
    MARGIN + (x - origin).to_f64().unwrap_or(0.0) * SCALE
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Greedy rows: each interval goes to the first row whose last interval ends
/// strictly before it starts.
fn rows<'a>(ivs: &[(&'a str, &'a Interval)]) -> Vec<(usize, &'a str, &'a Interval)> {
    let mut sorted = ivs.to_vec();
    sorted.sort_by(|a, b| (&a.1.l, &a.1.r, a.0).cmp(&(&b.1.l, &b.1.r, b.0)));
    let mut ends: Vec<&Rational> = Vec::new();
    let mut out = Vec::with_capacity(sorted.len());
    for (name, iv) in sorted {
        let row = match ends.iter().position(|e| *e < &iv.l) {
            Some(r) => r,
            None => {
                ends.push(&iv.r);
                ends.len() - 1
            }
        };
        ends[row] = &iv.r;
        out.push((row, name, iv));
    }
    out
}

/// Deterministic SVG 1.1 drawing of `rep` over the graphs of `inst`.
/// Vertices without an interval are left out.
pub fn render_svg(rep: &Representation, inst: &SunflowerInstance) -> String {
    let origin = rep.min_left().cloned().unwrap_or_else(Rational::zero);
    let end = rep.max_right().cloned().unwrap_or_else(Rational::zero);
    let span = (&end - &origin).to_f64().unwrap_or(0.0).ceil().max(1.0);
    let width = 2.0 * MARGIN + span * SCALE;

    let mut body = String::new();
    let mut y = MARGIN;
    for (i, g) in inst.graphs().iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let dash = DASHES[i / COLORS.len() % DASHES.len()];
        let ivs: Vec<(&str, &Interval)> =
            g.names().iter().filter_map(|n| rep.get(n).map(|iv| (n.as_str(), iv))).collect();
        let placed = rows(&ivs);
        let height = (placed.iter().map(|p| p.0 + 1).max().unwrap_or(1)) as f64 * ROW;
        writeln!(body, r#"  <g id="graph-{i}">"#).unwrap();
        writeln!(
            body,
            r#"    <text x="4" y="{:.2}" font-size="11" fill="{color}">G{i}</text>"#,
            y + ROW / 2.0
        )
        .unwrap();
        for (row, name, iv) in placed {
            let (x0, x1) = (px(&iv.l, &origin), px(&iv.r, &origin));
            let top = y + row as f64 * ROW + ROW - BAR - 4.0;
            let shared = inst.global_index(name).is_some_and(|v| inst.is_shared(v));
            let stroke = if shared { 3 } else { 1 };
            writeln!(
                body,
                r#"    <rect x="{x0:.2}" y="{top:.2}" width="{:.2}" height="{BAR:.2}" fill="{color}" fill-opacity="0.15" stroke="{color}" stroke-width="{stroke}" stroke-dasharray="{dash}"/>"#,
                x1 - x0
            )
            .unwrap();
            let weight = if shared { "bold" } else { "normal" };
            writeln!(
                body,
                r#"    <text x="{x0:.2}" y="{:.2}" font-size="10" font-weight="{weight}">{}</text>"#,
                top - 2.0,
                escape(name)
            )
            .unwrap();
        }
        body.push_str("  </g>\n");
        y += height + TRACK_GAP;
    }

    let axis = y;
    let mut out = String::new();
    let height = axis + MARGIN;
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    )
    .unwrap();
    out.push_str(&body);
    writeln!(out, r#"  <g id="axis">"#).unwrap();
    writeln!(
        out,
        r#"    <line x1="{MARGIN:.2}" y1="{axis:.2}" x2="{:.2}" y2="{axis:.2}" stroke="black" stroke-width="1"/>"#,
        MARGIN + span * SCALE
    )
    .unwrap();
    for t in 0..=span as i64 {
        let x = MARGIN + t as f64 * SCALE;
        writeln!(
            out,
            r#"    <line x1="{x:.2}" y1="{axis:.2}" x2="{x:.2}" y2="{:.2}" stroke="black" stroke-width="1"/>"#,
            axis + 5.0
        )
        .unwrap();
        let label = &origin + Rational::from_integer(t.into());
        writeln!(out, r#"    <text x="{x:.2}" y="{:.2}" font-size="10" text-anchor="middle">{label}</text>"#, axis + 18.0)
            .unwrap();
    }
    out.push_str("  </g>\n</svg>\n");
    out
}
