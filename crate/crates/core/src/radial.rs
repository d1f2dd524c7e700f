// Copyright 2026 the Arcopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Radial error `max_t |‖p(t)‖ − 1|` and the parameter minimizing it.

use crate::arc::{ArcSpec, ControlPolygon, Scheme};
use crate::optimizer::optimal;
use crate::poly::Poly;
use crate::rootfind::{golden_section, solve_bracketed, Bracket};
use crate::{Error, Result};

/// Grid intervals used to separate the stationary points of `‖p‖`.
pub const RADIAL_GRID: usize = 2048;
const REFINE_TOL: f64 = 1e-12;
const PRESCAN: usize = 101;
const MAX_SHIFTS: usize = 20;
const D_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct RadialProfile {
    pub max_abs: f64,
    pub argmax_t: f64,
    /// Signed deviations `(t, ‖p(t)‖ − 1)` at the endpoints and at every
    /// stationary point of `‖p‖`.
    pub samples: Vec<(f64, f64)>,
}

fn deviation(x: &Poly, y: &Poly, t: f64) -> f64 {
    let (px, py) = (x.eval(t), y.eval(t));
    let r2 = px * px + py * py;
    (r2 - 1.0) / (r2.sqrt() + 1.0)
}

/// Radial error over `t ∈ [−1, 1]`.
pub fn radial_error(p: &ControlPolygon) -> RadialProfile {
    let (x, y) = p.power_basis();
    let q = &(&x * &x.derivative()) + &(&y * &y.derivative());
    let mut ts = Vec::new();
    let node = |i: usize| -1.0 + 2.0 * i as f64 / RADIAL_GRID as f64;
    let mut prev = q.eval(-1.0);
    for i in 1..=RADIAL_GRID {
        let t = node(i);
        let cur = q.eval(t);
        if cur == 0.0 {
            ts.push(t);
        } else if prev != 0.0 && prev.signum() != cur.signum() {
            let root = Bracket::new(node(i - 1), t, prev, cur)
                .and_then(|br| solve_bracketed(|s| Ok(q.eval(s)), br, REFINE_TOL));
            ts.push(root.unwrap_or(0.5 * (node(i - 1) + t)));
        }
        prev = cur;
    }
    // Rounding noise in `q` can flip sign next to the endpoints, which are
    // sampled anyway.
    ts.retain(|t| t.abs() < 1.0 - 1e-6);
    ts.insert(0, -1.0);
    ts.push(1.0);
    let samples: Vec<(f64, f64)> = ts.into_iter().map(|t| (t, deviation(&x, &y, t))).collect();
    let (argmax_t, max_abs) = samples
        .iter()
        .map(|&(t, v)| (t, v.abs()))
        .fold((0.0, -1.0), |acc, s| if s.1 > acc.1 { s } else { acc });
    RadialProfile {
        max_abs,
        argmax_t,
        samples,
    }
}

/// Radial error of the approximant with parameter `d`.
pub fn radial_error_at(c: f64, scheme: Scheme, d: f64) -> Result<RadialProfile> {
    let arc = ArcSpec::from_cos(c)?;
    Ok(radial_error(&ControlPolygon::build(&arc, scheme, d)?))
}

/// Minimizes the radial error in `d` around the curvature optimum `d*`.
///
/// A 101-point scan of `[d*/2, 3d*/2]` selects the basin, moving the window
/// while the best node sits on its edge; golden-section search between the
/// neighbours of the best node refines it.
pub fn optimal_radial_d(c: f64, scheme: Scheme) -> Result<(f64, RadialProfile)> {
    let d_star = optimal(scheme, c)?.d_star;
    optimal_radial_d_near(c, scheme, d_star)
}

/// As [`optimal_radial_d`], scanning around a given centre.
pub fn optimal_radial_d_near(c: f64, scheme: Scheme, centre: f64) -> Result<(f64, RadialProfile)> {
    let arc = ArcSpec::from_cos(c)?;
    let objective = |d: f64| -> f64 {
        // Outside the quartic domain the middle control point degenerates;
        // such d are simply infeasible for the search.
        ControlPolygon::build(&arc, scheme, d)
            .map(|p| radial_error(&p).max_abs)
            .unwrap_or(f64::INFINITY)
    };
    let (mut lo, mut hi) = (0.5 * centre, 1.5 * centre);
    for _ in 0..MAX_SHIFTS {
        let step = (hi - lo) / (PRESCAN - 1) as f64;
        let values: Vec<f64> = (0..PRESCAN).map(|i| objective(lo + step * i as f64)).collect();
        let best = values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        if !values[best].is_finite() {
            break;
        }
        let width = hi - lo;
        if best == PRESCAN - 1 {
            (lo, hi) = (hi - step, hi - step + width);
            continue;
        }
        if best == 0 && lo > step {
            (lo, hi) = ((lo + step - width).max(0.5 * step), lo + step);
            continue;
        }
        let a = lo + step * best.saturating_sub(1) as f64;
        let b = lo + step * (best + 1) as f64;
        let (d, _) = golden_section(|d| Ok(objective(d)), a, b, D_TOL)?;
        return Ok((d, radial_error(&ControlPolygon::build(&arc, scheme, d)?)));
    }
    Err(Error::Convergence {
        iterations: MAX_SHIFTS,
        width: hi - lo,
    })
}
