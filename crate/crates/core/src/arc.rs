// Copyright 2026 the Arcopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Circular arcs and their symmetric Bézier approximants.
//!
//! All curves are parametrized over `t ∈ [-1, 1]` with the reparametrized
//! Bernstein basis `B_j^n(t) = C(n, j) ((1 + t)/2)^j ((1 - t)/2)^(n - j)`.
//! Because the parameter interval has length 2, each differentiation of the
//! Bézier form scales the forward differences of the control points by
//! `n / 2` rather than `n`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::poly::Poly;
use crate::{Error, Result};

/// Below this value of `c` the quartic scheme switches to the half-circle
/// construction.
pub const HALF_CIRCLE_C: f64 = 1e-13;

/// A point or vector in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// The z-component of the planar cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn hypot(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Reflection over the first coordinate axis.
    pub fn reflect_x(self) -> Point {
        Point::new(self.x, -self.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<Point> for f64 {
    type Output = Point;
    fn mul(self, rhs: Point) -> Point {
        Point::new(self * rhs.x, self * rhs.y)
    }
}

/// The unit arc spanning the angles `[-phi, phi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcSpec {
    phi: f64,
    c: f64,
}

impl ArcSpec {
    /// Arc with half-angle `phi ∈ (0, π/2]`.
    pub fn from_phi(phi: f64) -> Result<Self> {
        if !(phi > 0.0 && phi <= FRAC_PI_2 + 1e-15) {
            return Err(Error::Input(format!(
                "half-angle {phi} is outside (0, pi/2]"
            )));
        }
        let phi = phi.min(FRAC_PI_2);
        let mut c = phi.cos();
        // cos(FRAC_PI_2) is 6.1e-17, not 0.
        if c.abs() < 1e-15 {
            c = 0.0;
        }
        Ok(ArcSpec { phi, c })
    }

    /// Arc with `cos(phi) = c ∈ [0, 1)`.
    pub fn from_cos(c: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&c) {
            return Err(Error::Input(format!("c = {c} is outside [0, 1)")));
        }
        Ok(ArcSpec { phi: c.acos(), c })
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `sin(phi) = sqrt(1 - c^2)`.
    pub fn s(&self) -> f64 {
        (1.0 - self.c * self.c).sqrt()
    }

    /// The end points `(c, -s)` and `(c, s)`.
    pub fn endpoints(&self) -> (Point, Point) {
        let s = self.s();
        (Point::new(self.c, -s), Point::new(self.c, s))
    }
}

/// Approximation scheme: degree and order of geometric contact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scheme {
    #[serde(rename = "g0")]
    G0Quadratic,
    #[serde(rename = "g1")]
    G1Cubic,
    #[serde(rename = "g2")]
    G2Quartic,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::G0Quadratic, Scheme::G1Cubic, Scheme::G2Quartic];

    pub fn degree(self) -> usize {
        match self {
            Scheme::G0Quadratic => 2,
            Scheme::G1Cubic => 3,
            Scheme::G2Quartic => 4,
        }
    }

    /// Short tag used on the command line and in reports.
    pub fn tag(self) -> &'static str {
        match self {
            Scheme::G0Quadratic => "g0",
            Scheme::G1Cubic => "g1",
            Scheme::G2Quartic => "g2",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "g0" | "quadratic" => Ok(Scheme::G0Quadratic),
            "g1" | "cubic" => Ok(Scheme::G1Cubic),
            "g2" | "quartic" => Ok(Scheme::G2Quartic),
            _ => Err(Error::Input(format!("unknown scheme {s:?}"))),
        }
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Reparametrized Bernstein polynomial `B_j^n(t)` over `[-1, 1]`, `n ≤ 4`.
pub fn bernstein(n: usize, j: usize, t: f64) -> Result<f64> {
    if n > 4 || j > n {
        return Err(Error::Input(format!(
            "Bernstein index out of range: n = {n}, j = {j}"
        )));
    }
    let u = 0.5 * (1.0 + t);
    let v = 0.5 * (1.0 - t);
    Ok(binomial(n, j) * u.powi(j as i32) * v.powi((n - j) as i32))
}

/// Control polygon of a symmetric approximant of an arc.
#[derive(Clone, Debug, PartialEq)]
pub struct ControlPolygon {
    scheme: Scheme,
    c: f64,
    d: f64,
    points: Vec<Point>,
}

impl ControlPolygon {
    /// Builds the control polygon of `scheme` for the free parameter `d > 0`.
    ///
    /// The quadratic places the middle point at `(d, 0)`. The cubic and
    /// quartic move along the end tangents by `d (1 - c^2, ±c s)`; the
    /// quartic middle point is fixed by the end curvature condition. For the
    /// half circle (`c = 0`) the quartic end tangents are forced instead and
    /// `d` becomes the abscissa of the middle point.
    pub fn build(arc: &ArcSpec, scheme: Scheme, d: f64) -> Result<Self> {
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::Input(format!("parameter d = {d} must be positive")));
        }
        let c = arc.c();
        let s = arc.s();
        let (b0, bn) = arc.endpoints();
        let points = match scheme {
            Scheme::G0Quadratic => vec![b0, Point::new(d, 0.0), bn],
            Scheme::G1Cubic => {
                let b1 = b0 + d * Point::new(1.0 - c * c, c * s);
                vec![b0, b1, b1.reflect_x(), bn]
            }
            Scheme::G2Quartic if c < HALF_CIRCLE_C => {
                let b1 = Point::new(3f64.sqrt() / 2.0, -1.0);
                vec![
                    Point::new(0.0, -1.0),
                    b1,
                    Point::new(d, 0.0),
                    b1.reflect_x(),
                    Point::new(0.0, 1.0),
                ]
            }
            Scheme::G2Quartic => {
                if c == 0.0 {
                    return Err(Error::Internal(
                        "general quartic construction reached with c = 0".into(),
                    ));
                }
                let b1 = b0 + d * Point::new(1.0 - c * c, c * s);
                let mid = (3.0 - 4.0 * d * d * (1.0 - c * c)) / (3.0 * c);
                vec![b0, b1, Point::new(mid, 0.0), b1.reflect_x(), bn]
            }
        };
        Ok(ControlPolygon {
            scheme,
            c,
            d,
            points,
        })
    }

    /// Polygon from raw points, used for plumbing tests and degenerate cases.
    pub fn from_points(scheme: Scheme, c: f64, d: f64, points: Vec<Point>) -> Result<Self> {
        if points.len() != scheme.degree() + 1 {
            return Err(Error::Input(format!(
                "{} needs {} control points, got {}",
                scheme,
                scheme.degree() + 1,
                points.len()
            )));
        }
        Ok(ControlPolygon {
            scheme,
            c,
            d,
            points,
        })
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn degree(&self) -> usize {
        self.points.len() - 1
    }

    /// Position (`order = 0`) or derivative of order 1 or 2 with respect to `t`.
    pub fn eval(&self, t: f64, order: usize) -> Result<Point> {
        if order > 2 {
            return Err(Error::Input(format!("derivative order {order} > 2")));
        }
        if !(t.abs() <= 1.0 + 1e-12) {
            return Err(Error::Input(format!("parameter t = {t} is outside [-1, 1]")));
        }
        let mut pts = self.points.clone();
        for _ in 0..order {
            let n = pts.len() - 1;
            if n == 0 {
                return Ok(Point::ORIGIN);
            }
            let k = n as f64 / 2.0;
            pts = pts.windows(2).map(|w| k * (w[1] - w[0])).collect();
        }
        Ok(de_casteljau(&mut pts, 0.5 * (1.0 + t)))
    }

    /// Signed curvature `p' × p'' / |p'|^3`.
    pub fn signed_curvature(&self, t: f64) -> Result<f64> {
        let d1 = self.eval(t, 1)?;
        let d2 = self.eval(t, 2)?;
        let speed = d1.hypot();
        let scale = self
            .points
            .iter()
            .map(|p| p.hypot())
            .fold(0.0, f64::max)
            .max(1.0);
        if speed <= 1e-12 * scale {
            return Err(Error::Singularity { t });
        }
        Ok(d1.cross(d2) / (speed * speed * speed))
    }

    /// Coordinate polynomials `(x(t), y(t))` in the monomial basis of `t`.
    pub fn power_basis(&self) -> (Poly, Poly) {
        let n = self.degree();
        let u = Poly::new(vec![0.5, 0.5]);
        let v = Poly::new(vec![0.5, -0.5]);
        let mut x = Poly::default();
        let mut y = Poly::default();
        for (j, p) in self.points.iter().enumerate() {
            let b = (u.powi(j as u32) * v.powi((n - j) as u32)).scale(binomial(n, j));
            x = x + b.scale(p.x);
            y = y + b.scale(p.y);
        }
        (x, y)
    }
}

fn de_casteljau(pts: &mut [Point], u: f64) -> Point {
    let n = pts.len();
    for k in 1..n {
        for i in 0..n - k {
            pts[i] = (1.0 - u) * pts[i] + u * pts[i + 1];
        }
    }
    pts[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn bernstein_values() {
        assert_eq!(bernstein(2, 0, -1.0).unwrap(), 1.0);
        assert_eq!(bernstein(2, 1, 0.0).unwrap(), 0.5);
        let sum: f64 = (0..=3).map(|j| bernstein(3, j, 0.3).unwrap()).sum();
        assert!(close(sum, 1.0, 1e-15));
        assert!(bernstein(2, 3, 0.0).is_err());
        assert!(bernstein(5, 0, 0.0).is_err());
    }

    #[test]
    fn arc_spec_domain() {
        assert!(ArcSpec::from_phi(0.0).is_err());
        assert!(ArcSpec::from_phi(2.0).is_err());
        assert!(ArcSpec::from_phi(f64::NAN).is_err());
        let half = ArcSpec::from_phi(FRAC_PI_2).unwrap();
        assert_eq!(half.c(), 0.0);
        let a = ArcSpec::from_phi(1.0).unwrap();
        assert!(close(a.c(), 1f64.cos(), 1e-15));
        assert!(ArcSpec::from_cos(1.0).is_err());
        assert!(ArcSpec::from_cos(-0.1).is_err());
    }

    #[test]
    fn quadratic_polygon_example() {
        let arc = ArcSpec::from_cos(FRAC_1_SQRT_2).unwrap();
        let d = (1.0 + SQRT_2) / 2.0;
        let p = ControlPolygon::build(&arc, Scheme::G0Quadratic, d).unwrap();
        assert_eq!(p.points()[1], Point::new(d, 0.0));
        let mid = p.eval(0.0, 0).unwrap();
        assert_eq!(mid.y, 0.0);
    }

    #[test]
    fn half_circle_quartic_polygon() {
        let arc = ArcSpec::from_phi(FRAC_PI_2).unwrap();
        let p = ControlPolygon::build(&arc, Scheme::G2Quartic, 1.5).unwrap();
        let h = 3f64.sqrt() / 2.0;
        let expected = [
            Point::new(0.0, -1.0),
            Point::new(h, -1.0),
            Point::new(1.5, 0.0),
            Point::new(h, 1.0),
            Point::new(0.0, 1.0),
        ];
        assert_eq!(p.points(), &expected);
    }

    #[test]
    fn cubic_polygon_substitution() {
        let arc = ArcSpec::from_cos(0.5).unwrap();
        let p = ControlPolygon::build(&arc, Scheme::G1Cubic, 0.88).unwrap();
        let s = 3f64.sqrt() / 2.0;
        let b1 = p.points()[1];
        assert!(close(b1.x, 0.5 + 0.88 * 0.75, 1e-15));
        assert!(close(b1.y, -s + 0.88 * 3f64.sqrt() / 4.0, 1e-15));
        // End tangent is parallel to the arc tangent (s, c) at (c, -s).
        let tan = p.eval(-1.0, 1).unwrap();
        assert!(close(tan.cross(Point::new(s, 0.5)), 0.0, 1e-14));
        assert!(tan.dot(Point::new(s, 0.5)) > 0.0);
    }

    #[test]
    fn rejects_bad_parameter() {
        let arc = ArcSpec::from_cos(0.5).unwrap();
        assert!(ControlPolygon::build(&arc, Scheme::G1Cubic, 0.0).is_err());
        assert!(ControlPolygon::build(&arc, Scheme::G1Cubic, -1.0).is_err());
        let p = ControlPolygon::build(&arc, Scheme::G1Cubic, 0.8).unwrap();
        assert!(p.eval(0.0, 3).is_err());
        assert!(p.eval(1.5, 0).is_err());
    }

    #[test]
    fn endpoint_interpolation() {
        for scheme in Scheme::ALL {
            let arc = ArcSpec::from_cos(0.3).unwrap();
            let p = ControlPolygon::build(&arc, scheme, 0.8).unwrap();
            let (b0, bn) = arc.endpoints();
            assert_eq!(p.eval(-1.0, 0).unwrap(), b0);
            let end = p.eval(1.0, 0).unwrap();
            assert!(close(end.x, bn.x, 1e-15) && close(end.y, bn.y, 1e-15));
        }
    }

    #[test]
    fn curvature_of_straight_parabola_is_zero() {
        let arc = ArcSpec::from_cos(0.4).unwrap();
        let p = ControlPolygon::build(&arc, Scheme::G0Quadratic, 0.4).unwrap();
        for t in [-1.0, -0.3, 0.0, 0.7, 1.0] {
            assert!(close(p.signed_curvature(t).unwrap(), 0.0, 1e-15));
        }
    }

    #[test]
    fn quartic_end_curvature_is_one() {
        for (c, d) in [(0.0, 1.5), (0.3, 0.7), (0.5, 0.63), (0.9, 0.52)] {
            let arc = ArcSpec::from_cos(c).unwrap();
            let p = ControlPolygon::build(&arc, Scheme::G2Quartic, d).unwrap();
            for t in [-1.0, 1.0] {
                assert!(close(p.signed_curvature(t).unwrap(), 1.0, 1e-10), "c={c}");
            }
        }
        let half = ArcSpec::from_cos(0.0).unwrap();
        let p = ControlPolygon::build(&half, Scheme::G1Cubic, 2.0 / 3f64.sqrt()).unwrap();
        assert!(close(p.signed_curvature(1.0).unwrap(), 1.0, 1e-14));
    }

    #[test]
    fn singular_curve_is_reported() {
        let p = ControlPolygon::from_points(Scheme::G0Quadratic, 0.0, 1.0, vec![Point::ORIGIN; 3])
            .unwrap();
        assert_eq!(p.signed_curvature(0.2), Err(Error::Singularity { t: 0.2 }));
    }

    #[test]
    fn power_basis_matches_de_casteljau() {
        let arc = ArcSpec::from_cos(0.2).unwrap();
        let p = ControlPolygon::build(&arc, Scheme::G2Quartic, 0.75).unwrap();
        let (x, y) = p.power_basis();
        for t in [-1.0, -0.4, 0.1, 0.9] {
            let q = p.eval(t, 0).unwrap();
            assert!(close(x.eval(t), q.x, 1e-14) && close(y.eval(t), q.y, 1e-14));
        }
    }
}
