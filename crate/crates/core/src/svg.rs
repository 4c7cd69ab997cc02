//! SVG rendering of a two-point wall arrangement in the unit square.
//!
//! Coordinates are exact upstream and only turned into 6-decimal strings
//! here, so the output is byte-stable.

use std::fmt::Write as _;

use crate::arith::{fmt_decimal, Rational};
use crate::chambers::ChamberDecomposition;
use crate::error::{Error, Result};

const DIGITS: u32 = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    /// Stroke widths in square units.
    pub simple_stroke: f64,
    pub multiple_stroke: f64,
    pub labels: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self { width: 512, height: 512, simple_stroke: 0.004, multiple_stroke: 0.012, labels: false }
    }
}

impl RenderSpec {
    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::Precondition("canvas size must be positive".into()));
        }
        if !(self.simple_stroke > 0.0 && self.multiple_stroke > self.simple_stroke) {
            return Err(Error::Precondition("multiple walls need a wider stroke than simple ones".into()));
        }
        Ok(())
    }
}

fn num(q: &Rational) -> String {
    fmt_decimal(q, DIGITS)
}

fn stroke(w: f64) -> String {
    format!("{w:.6}")
}

/// One `<line>` per wall in canonical order; multiple walls get the wide
/// stroke. The square is drawn with `a_y` pointing up.
pub fn render_svg(decomposition: &ChamberDecomposition, spec: &RenderSpec) -> Result<String> {
    if decomposition.setup.k() != 2 {
        return Err(Error::Precondition("diagrams need the two-point setup".into()));
    }
    spec.validate()?;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="-0.05 -0.05 1.1 1.1">"#,
        spec.width, spec.height
    );
    let _ = writeln!(out, r#"  <g transform="matrix(1 0 0 -1 0 1)" fill="none" stroke="black" stroke-linecap="round">"#);
    let _ = writeln!(
        out,
        r#"    <rect class="border" x="0.000000" y="0.000000" width="1.000000" height="1.000000" stroke-width="{}"/>"#,
        stroke(spec.simple_stroke)
    );
    let mut labels = Vec::new();
    for wall in &decomposition.walls {
        let Some([(x1, y1), (x2, y2)]) = wall.hyperplane().clip_to_square() else { continue };
        let (class, width) = if wall.is_multiple() {
            ("wall multiple", spec.multiple_stroke)
        } else {
            ("wall simple", spec.simple_stroke)
        };
        let _ = writeln!(
            out,
            r#"    <line class="{class}" data-triple="{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke-width="{}"/>"#,
            wall.canonical().label(),
            num(&x1),
            num(&y1),
            num(&x2),
            num(&y2),
            stroke(width)
        );
        let two = Rational::from_integer(2.into());
        let mx = (&x1 + &x2) / &two;
        let my = (&y1 + &y2) / &two;
        labels.push((wall.canonical().label(), mx, my));
    }
    let _ = writeln!(out, "  </g>");
    if spec.labels {
        let one = Rational::from_integer(1.into());
        for (text, x, y) in labels {
            let _ = writeln!(
                out,
                r#"  <text x="{}" y="{}" font-size="0.025" font-family="serif">{text}</text>"#,
                num(&x),
                num(&(&one - &y))
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ModuliSetup;
    use crate::chambers::decompose;

    fn lines(svg: &str) -> Vec<&str> {
        svg.lines().filter(|l| l.trim_start().starts_with("<line")).collect()
    }

    #[test]
    fn five_two_has_seven_lines_one_bold() {
        let dec = decompose(&ModuliSetup::two_point(5, 2, 2).unwrap());
        let svg = render_svg(&dec, &RenderSpec::default()).unwrap();
        let ls = lines(&svg);
        assert_eq!(ls.len(), 7);
        let bold: Vec<&&str> = ls.iter().filter(|l| l.contains("wall multiple")).collect();
        assert_eq!(bold.len(), 1);
        assert!(bold[0].contains(r#"x1="0.000000" y1="0.500000" x2="0.500000" y2="1.000000""#));
        assert!(bold[0].contains("Δ(2, 1, (2, 0))"));
    }

    #[test]
    fn rank_two_single_line() {
        let dec = decompose(&ModuliSetup::two_point(2, 1, 2).unwrap());
        let svg = render_svg(&dec, &RenderSpec::default()).unwrap();
        let ls = lines(&svg);
        assert_eq!(ls.len(), 1);
        assert!(ls[0].contains(r#"x1="0.000000" y1="1.000000" x2="1.000000" y2="0.000000""#));
    }

    #[test]
    fn labels_and_rejections() {
        let dec = decompose(&ModuliSetup::two_point(3, 1, 2).unwrap());
        let spec = RenderSpec { labels: true, ..RenderSpec::default() };
        let svg = render_svg(&dec, &spec).unwrap();
        assert_eq!(svg.matches("<text").count(), dec.walls.len());
        assert_eq!(svg, render_svg(&dec, &spec).unwrap());

        let one = decompose(&ModuliSetup::one_point(5, 2, 2).unwrap());
        assert!(matches!(render_svg(&one, &RenderSpec::default()), Err(Error::Precondition(_))));
        let flat = RenderSpec { multiple_stroke: 0.004, ..RenderSpec::default() };
        assert!(render_svg(&dec, &flat).is_err());
    }
}
