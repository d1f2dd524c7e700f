// Copyright 2026 the Arcopt Authors
// SPDX-License-Identifier: Apache-2.0

use arcopt::arc::bernstein;
use arcopt::optimizer::{bounds_g1, bounds_g2};
use arcopt::{eval_error, ArcSpec, ControlPolygon, Point, Scheme};
use proptest::prelude::*;

/// Parameter inside the region the schemes are analysed on.
fn valid_d(scheme: Scheme, c: f64, u: f64) -> f64 {
    match scheme {
        Scheme::G0Quadratic => c + 0.05 + 1.5 * u,
        Scheme::G1Cubic if c > 0.0 => {
            let (lo, hi) = bounds_g1(c);
            lo - 0.1 + (hi - lo + 0.2) * u
        }
        Scheme::G1Cubic => 1.1 + 0.5 * u,
        Scheme::G2Quartic if c < 1e-13 => 1.45 + 0.1 * u,
        Scheme::G2Quartic => {
            let b = bounds_g2(c);
            let lo = b.d0.max(0.05);
            lo + (b.d3 - lo) * u
        }
    }
}

fn scheme() -> impl Strategy<Value = Scheme> {
    prop_oneof![Just(Scheme::G0Quadratic), Just(Scheme::G1Cubic), Just(Scheme::G2Quartic)]
}

/// Position from the explicit Bernstein sum, independent of de Casteljau.
fn bernstein_sum(p: &ControlPolygon, t: f64) -> Point {
    let n = p.degree();
    p.points().iter().enumerate().fold(Point::ORIGIN, |acc, (j, b)| {
        acc + bernstein(n, j, t).unwrap() * *b
    })
}

/// Curvature from central differences of the position, step `h`.
fn fd_curvature(p: &ControlPolygon, t: f64, h: f64) -> f64 {
    let at = |s: f64| bernstein_sum(p, s);
    let (a, b, c) = (at(t - h), at(t), at(t + h));
    let d1 = (1.0 / (2.0 * h)) * (c - a);
    let d2 = (1.0 / (h * h)) * (c - 2.0 * b + a);
    d1.cross(d2) / d1.hypot().powi(3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn construction_is_mirror_symmetric(s in scheme(), c in 0.0..0.99f64, u in 0.0..1.0f64, t in -1.0..1.0f64) {
        let p = ControlPolygon::build(&ArcSpec::from_cos(c).unwrap(), s, valid_d(s, c, u)).unwrap();
        let a = p.eval(t, 0).unwrap();
        let b = p.eval(-t, 0).unwrap().reflect_x();
        let scale = p.points().iter().map(|b| b.hypot()).fold(1.0, f64::max);
        prop_assert!((a - b).hypot() <= 1e-14 * scale);
    }

    #[test]
    fn de_casteljau_matches_bernstein_sum(s in scheme(), c in 0.0..0.99f64, u in 0.0..1.0f64, t in -1.0..1.0f64) {
        let p = ControlPolygon::build(&ArcSpec::from_cos(c).unwrap(), s, valid_d(s, c, u)).unwrap();
        let scale = p.points().iter().map(|b| b.hypot()).fold(1.0, f64::max);
        prop_assert!((p.eval(t, 0).unwrap() - bernstein_sum(&p, t)).hypot() <= 1e-14 * scale);
    }

    #[test]
    fn endpoint_contact(s in scheme(), c in 0.0..0.99f64, u in 0.0..1.0f64) {
        let arc = ArcSpec::from_cos(c).unwrap();
        let p = ControlPolygon::build(&arc, s, valid_d(s, c, u)).unwrap();
        for t in [-1.0, 1.0] {
            let q = p.eval(t, 0).unwrap();
            prop_assert!((q.hypot() - 1.0).abs() <= 1e-15);
            if s != Scheme::G0Quadratic {
                // The circle's tangent at q is perpendicular to q.
                let v = p.eval(t, 1).unwrap();
                prop_assert!(q.dot(v).abs() <= 1e-14 * v.hypot());
            }
            if s == Scheme::G2Quartic {
                prop_assert!((p.signed_curvature(t).unwrap() - 1.0).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn closed_form_matches_curvature(s in scheme(), c in 0.0..0.99f64, u in 0.0..1.0f64) {
        let d = valid_d(s, c, u);
        let p = ControlPolygon::build(&ArcSpec::from_cos(c).unwrap(), s, d).unwrap();
        for i in 0..1000 {
            let t = -1.0 + 2.0 * i as f64 / 999.0;
            let e = eval_error(s, c, d, t).unwrap();
            prop_assert!((e - (1.0 - p.signed_curvature(t).unwrap())).abs() <= 1e-10, "t = {}", t);
        }
    }

    #[test]
    fn curvature_matches_finite_differences(s in scheme(), c in 0.0..0.95f64, u in 0.0..1.0f64, t in -0.9..0.9f64) {
        let d = valid_d(s, c, u);
        let p = ControlPolygon::build(&ArcSpec::from_cos(c).unwrap(), s, d).unwrap();
        let fd = fd_curvature(&p, t, 1e-4);
        prop_assert!((fd - p.signed_curvature(t).unwrap()).abs() <= 1e-5 * fd.abs().max(1.0));
    }
}

#[test]
fn half_circle_endpoints() {
    let arc = ArcSpec::from_phi(std::f64::consts::FRAC_PI_2).unwrap();
    assert_eq!(arc.c(), 0.0);
    let p = ControlPolygon::build(&arc, Scheme::G2Quartic, 1.5).unwrap();
    assert_eq!(p.points()[0], Point::new(0.0, -1.0));
    assert_eq!(p.points()[4], Point::new(0.0, 1.0));
}
