//! SVG 1.1 rendering of lattice points near the origin.
//!
//! The lattices are dense in the plane, so "all points of length ≤ r" is
//! infinite. The plot keeps the points whose length and conjugate length
//! (the image under `√D ↦ −√D`) are both at most `r`, a finite set that
//! contains every unit vector.

use std::fmt::Write as _;

use thiserror::Error;

use crate::arith::Rational;
use crate::lattice::LatticeSpec;
use crate::shell::enumerate_disc;

/// Largest accepted plot radius.
pub const RADIUS_CAP: i64 = 4;
/// Largest number of points written to one SVG.
pub const POINT_CAP: usize = 250_000;

const HALF_WIDTH_PX: f64 = 240.0;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlotError {
    #[error("radius {0} must be positive")]
    NonPositive(String),
    #[error("radius {0} exceeds the cap of {RADIUS_CAP}")]
    RadiusCap(String),
    #[error("{0} points within the radius exceed the cap of {POINT_CAP}")]
    TooManyPoints(usize),
}

#[derive(Clone, Debug)]
pub struct Plot {
    pub svg: String,
    pub points: usize,
    pub units: usize,
}

pub fn render_svg(spec: &LatticeSpec, radius: &Rational) -> Result<Plot, PlotError> {
    if radius.signum() <= 0 {
        return Err(PlotError::NonPositive(radius.to_string()));
    }
    if *radius > Rational::from(RADIUS_CAP) {
        return Err(PlotError::RadiusCap(radius.to_string()));
    }
    let radius_sq = radius * radius;
    let points = enumerate_disc(spec, &radius_sq);
    if points.len() > POINT_CAP {
        return Err(PlotError::TooManyPoints(points.len()));
    }
    let r = radius.to_f64();
    let px = HALF_WIDTH_PX / (1.1 * r);
    let size = 2.0 * HALF_WIDTH_PX;
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="{} {} {size} {size}">"#,
        -HALF_WIDTH_PX, -HALF_WIDTH_PX
    );
    let _ = writeln!(svg, "<title>{}: {} points, radius {}</title>", spec.family(), points.len(), radius);
    let _ = writeln!(
        svg,
        "<style>.point{{fill:#444}}.unit{{fill:#d62728}}.circle{{fill:none;stroke:#1f77b4;stroke-width:1}}</style>"
    );
    // unit circle
    let u = px;
    let _ = writeln!(
        svg,
        r#"<path class="circle" d="M {u:.3} 0 A {u:.3} {u:.3} 0 1 0 {:.3} 0 A {u:.3} {u:.3} 0 1 0 {u:.3} 0 Z"/>"#,
        -u
    );
    let mut units = 0;
    for v in &points {
        let (x, y) = spec.point(v);
        let is_unit = spec.is_unit(v);
        units += is_unit as usize;
        let (class, dot) = if is_unit { ("unit", 4.0) } else { ("point", 2.0) };
        let _ = writeln!(
            svg,
            r#"<circle class="{class}" cx="{:.3}" cy="{:.3}" r="{dot}"/>"#,
            x * px,
            -y * px
        );
    }
    svg.push_str("</svg>\n");
    Ok(Plot { svg, points: points.len(), units })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_lattice, FamilyTag};

    fn plot(f: FamilyTag, r: &str) -> Result<Plot, PlotError> {
        render_svg(&make_lattice(f).unwrap(), &Rational::parse(r).unwrap())
    }

    #[test]
    fn unit_points_highlighted() {
        let p = plot(FamilyTag::L(3), "1.5").unwrap();
        assert_eq!(p.units, 18);
        assert_eq!(p.svg.matches(r#"class="unit""#).count(), 18);
        assert_eq!(p.svg.matches("<circle").count(), p.points);
        let p = plot(FamilyTag::M(1), "1").unwrap();
        assert_eq!(p.units, 12);
    }

    #[test]
    fn radius_limits() {
        assert_eq!(plot(FamilyTag::L(3), "1000000").unwrap_err(), PlotError::RadiusCap("1000000".into()));
        assert!(matches!(plot(FamilyTag::L(3), "0"), Err(PlotError::NonPositive(_))));
    }

    #[test]
    fn well_formed_header() {
        let p = plot(FamilyTag::M(2), "1").unwrap();
        assert!(p.svg.starts_with("<?xml"));
        assert!(p.svg.contains(r#"version="1.1""#));
        assert!(p.svg.trim_end().ends_with("</svg>"));
    }
}
