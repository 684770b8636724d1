//! Text and SVG drawings of a representation.
//!
//! Closed endpoints are drawn as brackets and open ones as parentheses;
//! a closed center is filled and an open one hollow.

use std::fmt::Write;

use num_traits::ToPrimitive;

use super::{PlacedInterval, Representation};
use crate::dyadic::Dyadic;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

impl std::str::FromStr for RenderFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ascii" | "text" => Ok(RenderFormat::Ascii),
            "svg" => Ok(RenderFormat::Svg),
            other => Err(format!("unknown render format `{other}`")),
        }
    }
}

const SVG_UNIT: f64 = 100.0;
const SVG_ROW: f64 = 30.0;
const SVG_LABEL: f64 = 80.0;

pub fn render(r: &Representation, format: RenderFormat) -> String {
    match format {
        RenderFormat::Ascii => render_ascii(r),
        RenderFormat::Svg => render_svg(r),
    }
}

fn rows(r: &Representation) -> Vec<(&str, &PlacedInterval)> {
    let mut rows: Vec<(&str, &PlacedInterval)> = r.intervals.iter().map(|(k, v)| (k.as_str(), v)).collect();
    rows.sort_by(|a, b| a.1.center.cmp(&b.1.center).then_with(|| a.0.cmp(b.0)));
    rows
}

fn glyphs(iv: &PlacedInterval) -> (char, char, char) {
    let (l, r) = if iv.ty.endpoint_open() { ('(', ')') } else { ('[', ']') };
    let c = if iv.ty.center_open() { 'o' } else { '*' };
    (l, c, r)
}

fn render_ascii(r: &Representation) -> String {
    let rows = rows(r);
    if rows.is_empty() {
        return String::new();
    }
    let max_exp = rows.iter().map(|(_, iv)| iv.center.exponent()).max().unwrap_or(0);
    let shift = max_exp.clamp(3, 6);
    let origin = rows.iter().map(|(_, iv)| iv.left()).min().expect("non-empty");
    let column = |x: &Dyadic| -> usize {
        (x - &origin)
            .mul_pow2(shift)
            .floor()
            .to_usize()
            .expect("drawing width fits in memory")
    };
    let width = rows.iter().map(|(_, iv)| column(&iv.right())).max().unwrap_or(0) + 1;
    let name_width = rows.iter().map(|(n, _)| n.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (name, iv) in rows {
        let mut line = vec![' '; width];
        let (l, c, rr) = (column(&iv.left()), column(&iv.center), column(&iv.right()));
        for cell in &mut line[l..=rr] {
            *cell = '-';
        }
        let (gl, gc, gr) = glyphs(iv);
        line[l] = gl;
        line[rr] = gr;
        line[c] = gc;
        let line: String = line.into_iter().collect();
        writeln!(out, "{name:<name_width$}  {line}  {} {}", iv.ty, iv.center).expect("write to string");
    }
    out
}

fn render_svg(r: &Representation) -> String {
    let rows = rows(r);
    let origin = rows.iter().map(|(_, iv)| iv.left()).min().unwrap_or_default();
    let end = rows.iter().map(|(_, iv)| iv.right()).max().unwrap_or_default();
    let span = (&end - &origin).to_f64();
    let width = SVG_LABEL + span * SVG_UNIT + 20.0;
    let height = rows.len() as f64 * SVG_ROW + 20.0;
    let x_of = |d: &Dyadic| SVG_LABEL + (d - &origin).to_f64() * SVG_UNIT;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(width),
        num(height),
        num(width),
        num(height)
    )
    .expect("write to string");
    for (k, (name, iv)) in rows.iter().enumerate() {
        let y = 20.0 + k as f64 * SVG_ROW;
        let (xl, xc, xr) = (x_of(&iv.left()), x_of(&iv.center), x_of(&iv.right()));
        let _ = writeln!(
            out,
            r#"  <text x="10" y="{}" font-family="monospace" font-size="12">{}</text>"#,
            num(y + 4.0),
            escape(name)
        );
        let _ = writeln!(
            out,
            r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
            num(xl),
            num(y),
            num(xr),
            num(y)
        );
        let (left, right) = if iv.ty.endpoint_open() {
            (
                format!("M {} {} Q {} {} {} {}", num(xl + 6.0), num(y - 8.0), num(xl - 2.0), num(y), num(xl + 6.0), num(y + 8.0)),
                format!("M {} {} Q {} {} {} {}", num(xr - 6.0), num(y - 8.0), num(xr + 2.0), num(y), num(xr - 6.0), num(y + 8.0)),
            )
        } else {
            (
                format!("M {} {} L {} {} L {} {} L {} {}", num(xl + 6.0), num(y - 8.0), num(xl), num(y - 8.0), num(xl), num(y + 8.0), num(xl + 6.0), num(y + 8.0)),
                format!("M {} {} L {} {} L {} {} L {} {}", num(xr - 6.0), num(y - 8.0), num(xr), num(y - 8.0), num(xr), num(y + 8.0), num(xr - 6.0), num(y + 8.0)),
            )
        };
        for d in [left, right] {
            let _ = writeln!(out, r#"  <path d="{d}" fill="none" stroke="black"/>"#);
        }
        let fill = if iv.ty.center_open() { "white" } else { "black" };
        let _ = writeln!(
            out,
            r#"  <circle cx="{}" cy="{}" r="4" fill="{fill}" stroke="black"/>"#,
            num(xc),
            num(y)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
