// Copyright 2026 the Arcopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Minimax-optimal shape parameters.
//!
//! For every scheme the optimal `d*` is characterized by which extrema of
//! the error function have equal magnitude:
//!
//! * quadratic: `e(0) = e(1)` in magnitude, either through the equal-value
//!   point `d_e` or by a balance on `[c, d_e]` above a threshold in `c`;
//! * cubic: `e(0) = e(1)` at `d_e` unless the interior minimum dominates
//!   there, in which case `e(1) = |e(t1)|` on `[d_e, d2]`;
//! * quartic: `e(0) = e(t_m)` at `d_e` unless the interior maximum dominates,
//!   in which case `e(t_M) = |e(t_m)|` on `[d_e, d2]`. The half circle is
//!   solved separately as a balance of `e(0)` against the interior minimum.

use std::f64::consts::SQRT_2;

use crate::arc::{Scheme, HALF_CIRCLE_C};
use crate::curvature_error::{boundary_values, ErrorFunction, ExtremaProfile};
use crate::rootfind::{solve_balance, solve_bracketed, Bracket, Tolerances};
use crate::{Error, Result};

/// Largest accepted `c`; beyond it every bound collapses onto the flat limit.
pub const MAX_C: f64 = 1.0 - 1e-9;

/// Which characterization produced `d*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `d* = d_e`, the parameter of equal extremal values.
    Equioscillating,
    /// Quadratic above the threshold: `e(1) = -e(0)` on `[c, d_e]`.
    BoundaryBalanced,
    /// Balance against an interior extremum beyond `d_e`.
    InteriorBalanced,
    /// Quartic half circle, `e(0) = e(t_m)`.
    HalfCircleSystem,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Equioscillating => "equioscillating",
            Branch::BoundaryBalanced => "boundary_balanced",
            Branch::InteriorBalanced => "interior_balanced",
            Branch::HalfCircleSystem => "half_circle_system",
        }
    }

    pub fn parse(s: &str) -> Option<Branch> {
        [
            Branch::Equioscillating,
            Branch::BoundaryBalanced,
            Branch::InteriorBalanced,
            Branch::HalfCircleSystem,
        ]
        .into_iter()
        .find(|b| b.as_str() == s)
    }
}

/// The optimum for one arc and scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct OptimalResult {
    pub scheme: Scheme,
    pub c: f64,
    pub d_star: f64,
    pub branch: Branch,
    pub profile: ExtremaProfile,
    pub max_error: f64,
    /// The equal-value candidate examined first.
    pub d_e: f64,
    /// The bracketing interval used by the solves.
    pub bounds: (f64, f64),
}

/// Options shared by the optimal-parameter solvers.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SolveOptions {
    pub tol: Tolerances,
    /// Replaces the bracketing interval for `d`.
    pub bracket: Option<(f64, f64)>,
}

fn check_c(c: f64) -> Result<()> {
    if !(0.0..=MAX_C).contains(&c) {
        return Err(Error::Input(format!("c = {c} is outside [0, {MAX_C}]")));
    }
    Ok(())
}

fn check_bracket(b: (f64, f64)) -> Result<(f64, f64)> {
    if !(b.0 > 0.0 && b.0 < b.1 && b.1.is_finite()) {
        return Err(Error::Input(format!("invalid bracket [{}, {}]", b.0, b.1)));
    }
    Ok(b)
}

fn finish(
    scheme: Scheme,
    c: f64,
    d_star: f64,
    branch: Branch,
    d_e: f64,
    bounds: (f64, f64),
    tol: &Tolerances,
) -> Result<OptimalResult> {
    let profile = ErrorFunction::new(scheme, c, d_star)?.extrema(tol.inner)?;
    Ok(OptimalResult {
        scheme,
        c,
        d_star,
        branch,
        max_error: profile.max_abs,
        profile,
        d_e,
        bounds,
    })
}

fn extrema(scheme: Scheme, c: f64, d: f64, tol: &Tolerances) -> Result<ExtremaProfile> {
    ErrorFunction::new(scheme, c, d)?.extrema(tol.inner)
}

fn missing(what: &str, c: f64, d: f64) -> Error {
    Error::Structure(format!("no {what} at c = {c}, d = {d}"))
}

/// `max_t |e(t, d)|`.
pub fn max_abs_error(scheme: Scheme, c: f64, d: f64) -> Result<f64> {
    Ok(extrema(scheme, c, d, &Tolerances::default())?.max_abs)
}

/// Optimum for any scheme.
pub fn optimal(scheme: Scheme, c: f64) -> Result<OptimalResult> {
    optimal_with(scheme, c, &SolveOptions::default())
}

pub fn optimal_with(scheme: Scheme, c: f64, opts: &SolveOptions) -> Result<OptimalResult> {
    match scheme {
        Scheme::G0Quadratic => optimal_g0_with(c, opts),
        Scheme::G1Cubic => optimal_g1_with(c, opts),
        Scheme::G2Quartic => optimal_g2_with(c, opts),
    }
}

// ---------------------------------------------------------------------------
// Quadratic

/// The point where `∂e(1, d)/∂d = 0`.
pub fn d_e_g0(c: f64) -> f64 {
    c + SQRT_2 / 2.0 * (1.0 - c * c).sqrt()
}

/// Above this `c` the quadratic optimum is below `d_e`.
pub fn g0_threshold() -> f64 {
    6f64.sqrt() / 36.0 * (181.0 - 12.0 * 6f64.sqrt()).sqrt()
}

/// Solves `e(1, d) + e(0, d) = 0` on `[lo, hi]`.
pub fn g0_balanced(c: f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let sum = |d: f64| -> Result<f64> {
        let (e0, e1) = boundary_values(Scheme::G0Quadratic, c, d)?;
        Ok(e0 + e1)
    };
    let br = Bracket::evaluate(sum, lo, hi)?;
    solve_bracketed(sum, br, tol)
}

pub fn optimal_g0(c: f64) -> Result<OptimalResult> {
    optimal_g0_with(c, &SolveOptions::default())
}

pub fn optimal_g0_with(c: f64, opts: &SolveOptions) -> Result<OptimalResult> {
    check_c(c)?;
    opts.tol.check()?;
    let d_e = d_e_g0(c);
    let scheme = Scheme::G0Quadratic;
    match opts.bracket {
        None if c <= g0_threshold() => {
            finish(scheme, c, d_e, Branch::Equioscillating, d_e, (c, d_e), &opts.tol)
        }
        bracket => {
            let bounds = check_bracket(bracket.unwrap_or((c, d_e)))?;
            let d = g0_balanced(c, bounds.0, bounds.1, opts.tol.outer)?;
            finish(scheme, c, d, Branch::BoundaryBalanced, d_e, bounds, &opts.tol)
        }
    }
}

// ---------------------------------------------------------------------------
// Cubic

/// Solution of `e(0, d) = e(1, d)` from the cube-root closed form.
pub fn d_e_g1_closed_form(c: f64) -> f64 {
    let r3 = 3f64.sqrt();
    let w = (27.0 + c * c * c).sqrt();
    let num = 5.0 * c * c + (5.0 * r3 - w) * (w + 3.0 * r3).cbrt()
        - (5.0 * r3 + w) * (w - 3.0 * r3).cbrt();
    num / (3.0 * (2.0 + c * c * c))
}

/// `d_e` for the cubic. The closed form subtracts nearly equal cube roots
/// as `c → 1`; when its residual exceeds `1e-12` the equation is solved on
/// `[d1(c), d2(c)]` instead.
pub fn d_e_g1(c: f64) -> Result<f64> {
    check_c(c)?;
    let d = d_e_g1_closed_form(c);
    let residual = |d: f64| -> Result<f64> {
        let (e0, e1) = boundary_values(Scheme::G1Cubic, c, d)?;
        Ok(e0 - e1)
    };
    if residual(d)?.abs() <= 1e-12 {
        return Ok(d);
    }
    let (lo, hi) = if c > 0.0 {
        bounds_g1(c)
    } else {
        g1_half_circle_bounds()
    };
    let br = Bracket::evaluate(residual, lo, hi)?;
    solve_bracketed(residual, br, 1e-15)
}

/// Lower and upper bound `(d1, d2)` enclosing the cubic `d_e` and `d*`.
pub fn bounds_g1(c: f64) -> (f64, f64) {
    let u = 1.0 - c;
    let d1 = 2.0 / 3.0 + u / 3.0 + u * u / 24.0;
    let d2 = 2.0 / 3.0
        + u / 3.0
        + u * u / 6.0
        + 101.0 / 1152.0 * u * u * u
        + 25.0 / 512.0 * u * u * u * u;
    (d1, d2)
}

/// Bracket for the cubic half circle: `e(1, 2/√3) = 0` and `e(0, 3/2) = 0`.
pub fn g1_half_circle_bounds() -> (f64, f64) {
    (2.0 / 3f64.sqrt(), 1.5)
}

pub fn optimal_g1(c: f64) -> Result<OptimalResult> {
    optimal_g1_with(c, &SolveOptions::default())
}

pub fn optimal_g1_with(c: f64, opts: &SolveOptions) -> Result<OptimalResult> {
    check_c(c)?;
    opts.tol.check()?;
    let scheme = Scheme::G1Cubic;
    let default = if c > 0.0 {
        bounds_g1(c)
    } else {
        g1_half_circle_bounds()
    };
    let bounds = check_bracket(opts.bracket.unwrap_or(default))?;
    let d_e = d_e_g1(c)?;
    if !(d_e >= bounds.0 && d_e <= bounds.1) {
        let (a0, a1) = boundary_values(scheme, c, bounds.0)?;
        let (b0, b1) = boundary_values(scheme, c, bounds.1)?;
        return Err(Error::Bracket {
            lo: bounds.0,
            hi: bounds.1,
            f_lo: a0 - a1,
            f_hi: b0 - b1,
        });
    }
    let tol = opts.tol;
    let interior_min = |d: f64| -> Result<f64> {
        let p = extrema(scheme, c, d, &tol)?;
        Ok(p.interior_min().ok_or_else(|| missing("interior minimum", c, d))?.value)
    };
    let e1 = |d: f64| -> Result<f64> { Ok(boundary_values(scheme, c, d)?.1) };
    if e1(d_e)? >= interior_min(d_e)?.abs() {
        return finish(scheme, c, d_e, Branch::Equioscillating, d_e, bounds, &tol);
    }
    debug_assert!(tol.inner * 10.0 <= tol.outer);
    let d = solve_balance(e1, interior_min, d_e, bounds.1, tol.outer)?;
    finish(scheme, c, d, Branch::InteriorBalanced, d_e, bounds, &tol)
}

// ---------------------------------------------------------------------------
// Quartic

/// The bounds `d0 < c/2 < d1 < d2 < d3 < 3/(2c)` for the quartic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundsG2 {
    pub d0: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl BoundsG2 {
    /// Checks the ordering chain, including the root of `e(0, d) = 0`
    /// between `d2` and `d3`.
    pub fn check_ordering(&self, c: f64) -> Result<()> {
        let chain = [
            self.d0,
            c / 2.0,
            self.d1,
            self.d2,
            g2_zero_of_midpoint_error(c),
            self.d3,
            1.5 / c,
        ];
        if chain.windows(2).all(|w| w[0] < w[1]) {
            Ok(())
        } else {
            Err(Error::Internal(format!(
                "quartic bounds out of order at c = {c}: {chain:?}"
            )))
        }
    }
}

pub fn bounds_g2(c: f64) -> BoundsG2 {
    let (r2, r3) = (SQRT_2, 3f64.sqrt());
    let (c2, c3, c4, c5) = (c * c, c * c * c, c.powi(4), c.powi(5));
    let d1 = (192.0 * r3 - 8.0 * (16.0 + 9.0 * r3) * c
        + (144.0 + 37.0 * r3) * c2
        + 3.0 * (592.0 + 232.0 * r2 - 533.0 * r3) * c3
        - (2608.0 + 1104.0 * r2 - 2415.0 * r3) * c4
        + (1104.0 + 408.0 * r2 - 973.0 * r3) * c5)
        / (192.0 * (c3 + 2.0));
    let d2 = (120.0 * r3 - 8.0 * (4.0 + 9.0 * r3) * c
        + (144.0 - 11.0 * r3) * c2
        + (444.0 + 588.0 * r2 - 735.0 * r3) * c3
        - (652.0 + 996.0 * r2 - 1191.0 * r3) * c4
        + (276.0 + 408.0 * r2 - 493.0 * r3) * c5)
        / (120.0 * (c3 + 2.0));
    BoundsG2 {
        d0: (1.0 + r2) / 2.0 * c - r2 / 2.0,
        d1,
        d2,
        d3: (1.0 - r3) / 2.0 * (c - 1.0) + 0.5,
    }
}

/// Solution of `e(0, d) = 0` for the quartic, close to the optimum.
pub fn g2_zero_of_midpoint_error(c: f64) -> f64 {
    (3.0 * c * c + 6f64.sqrt() * (2.0 + c).sqrt() * (1.0 - c)) / (4.0 + 2.0 * c * c * c)
}

/// Bracket for the quartic half circle: `e(0, 3/2) = 0` and
/// `∂e/∂t (1, 8√3/9) = 0`.
pub fn g2_half_circle_bounds() -> (f64, f64) {
    (1.5, 8.0 * 3f64.sqrt() / 9.0)
}

/// `e(0, d) - min_{t ∈ (0, 1]} e(t, d)` for the quartic.
fn g2_min_gap(c: f64, d: f64, tol: &Tolerances) -> Result<f64> {
    let p = extrema(Scheme::G2Quartic, c, d, tol)?;
    let e0 = p.at_zero().ok_or_else(|| missing("value at t = 0", c, d))?.value;
    // The interior minimum can merge into t = 1 at the end of the
    // half-circle bracket, so the boundary value takes part.
    let other = p
        .entries
        .iter()
        .filter(|e| e.t > 0.0 && e.kind != crate::curvature_error::ExtremumKind::Max)
        .map(|e| e.value)
        .fold(f64::INFINITY, f64::min);
    Ok(e0 - other)
}

/// `d_e` for the quartic with `c > 0`: `e(0, d) = e(t_m(d), d)` on `[lo, hi]`.
pub fn d_e_g2(c: f64, lo: f64, hi: f64, tol: &Tolerances) -> Result<f64> {
    let gap = |d: f64| g2_min_gap(c, d, tol);
    let br = Bracket::evaluate(gap, lo, hi)?;
    solve_bracketed(gap, br, tol.outer)
}

pub fn optimal_g2(c: f64) -> Result<OptimalResult> {
    optimal_g2_with(c, &SolveOptions::default())
}

pub fn optimal_g2_with(c: f64, opts: &SolveOptions) -> Result<OptimalResult> {
    check_c(c)?;
    opts.tol.check()?;
    let tol = opts.tol;
    let scheme = Scheme::G2Quartic;
    if c < HALF_CIRCLE_C {
        let bounds = check_bracket(opts.bracket.unwrap_or(g2_half_circle_bounds()))?;
        let d = d_e_g2(0.0, bounds.0, bounds.1, &tol)?;
        return finish(scheme, 0.0, d, Branch::HalfCircleSystem, d, bounds, &tol);
    }
    let b = bounds_g2(c);
    b.check_ordering(c)?;
    let bounds = check_bracket(opts.bracket.unwrap_or((b.d1, b.d2)))?;
    let d_e = d_e_g2(c, bounds.0, bounds.1, &tol)?;
    let at_de = extrema(scheme, c, d_e, &tol)?;
    let e_max = at_de
        .interior_max()
        .ok_or_else(|| missing("interior maximum", c, d_e))?
        .value;
    let e0 = at_de.at_zero().ok_or_else(|| missing("value at t = 0", c, d_e))?.value;
    if e_max <= e0.abs() {
        return finish(scheme, c, d_e, Branch::Equioscillating, d_e, bounds, &tol);
    }
    let interior = |d: f64, want_max: bool| -> Result<f64> {
        let p = extrema(scheme, c, d, &tol)?;
        let e = if want_max {
            p.interior_max()
        } else {
            p.interior_min()
        };
        Ok(e.ok_or_else(|| missing("interior extremum", c, d))?.value)
    };
    let d = solve_balance(
        |d| interior(d, true),
        |d| interior(d, false),
        d_e,
        bounds.1,
        tol.outer,
    )?;
    finish(scheme, c, d, Branch::InteriorBalanced, d_e, bounds, &tol)
}

// ---------------------------------------------------------------------------
// Transitions

/// Values of `c` at which the optimal characterization switches.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransitionConstants {
    /// Quadratic: closed form.
    pub g0_threshold: f64,
    /// Cubic: `e(1, d_e) = |e(t1, d_e)|`.
    pub g1_transition: f64,
    /// Quartic: `e(0, d_e) = e(t_m, d_e) = -e(t_M, d_e)`.
    pub g2_transition: f64,
}

const TRANSITION_TOL: f64 = 1e-10;

pub fn g1_transition(tol: &Tolerances) -> Result<f64> {
    let gap = |c: f64| -> Result<f64> {
        let d_e = d_e_g1(c)?;
        let p = extrema(Scheme::G1Cubic, c, d_e, tol)?;
        let min = p.interior_min().ok_or_else(|| missing("interior minimum", c, d_e))?;
        Ok(boundary_values(Scheme::G1Cubic, c, d_e)?.1 - min.value.abs())
    };
    let br = Bracket::evaluate(gap, 0.2, 0.5)?;
    solve_bracketed(gap, br, TRANSITION_TOL)
}

pub fn g2_transition(tol: &Tolerances) -> Result<f64> {
    let gap = |c: f64| -> Result<f64> {
        let b = bounds_g2(c);
        let d_e = d_e_g2(c, b.d1, b.d2, tol)?;
        let p = extrema(Scheme::G2Quartic, c, d_e, tol)?;
        let e_max = p.interior_max().ok_or_else(|| missing("interior maximum", c, d_e))?;
        let e0 = p.at_zero().ok_or_else(|| missing("value at t = 0", c, d_e))?;
        Ok(e_max.value - e0.value.abs())
    };
    let br = Bracket::evaluate(gap, 0.1, 0.3)?;
    solve_bracketed(gap, br, TRANSITION_TOL)
}

pub fn transition_constants() -> Result<TransitionConstants> {
    let tol = Tolerances::default();
    Ok(TransitionConstants {
        g0_threshold: g0_threshold(),
        g1_transition: g1_transition(&tol)?,
        g2_transition: g2_transition(&tol)?,
    })
}
