// Copyright 2026 the Arcopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Closed forms of the signed curvature error `e(t, d) = 1 - κ(t)` and the
//! location of its extrema.
//!
//! Every scheme writes the error as `e = 1 + sign · f / g^(3/2)` with even
//! polynomials `f` and `g` in `t`. The derivative is
//! `∂e/∂t = sign · h / g^(5/2)` with `h = f' g - (3/2) f g'`; `h` is formed
//! as a polynomial so that sign tests near extrema do not suffer from
//! cancellation.

use serde::{Deserialize, Serialize};

use crate::arc::{Scheme, HALF_CIRCLE_C};
use crate::optimizer::{bounds_g1, bounds_g2, g1_half_circle_bounds};
use crate::poly::Poly;
use crate::rootfind::{solve_bracketed, solve_with_guess, Bracket, INNER_TOL};
use crate::{Error, Result};

/// Number of grid intervals used by the fallback extrema scan.
pub const GRID_INTERVALS: usize = 2048;

/// The error function of one approximant, as `1 + sign · f / g^(3/2)`.
#[derive(Clone, Debug)]
pub struct ErrorFunction {
    scheme: Scheme,
    c: f64,
    d: f64,
    sign: f64,
    f: Poly,
    g: Poly,
    h: Poly,
}

fn check_domain(scheme: Scheme, c: f64, d: f64) -> Result<()> {
    if !(0.0..1.0).contains(&c) {
        return Err(Error::Input(format!("c = {c} is outside [0, 1)")));
    }
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::Input(format!("parameter d = {d} must be positive")));
    }
    let limit = match scheme {
        Scheme::G0Quadratic => None,
        Scheme::G1Cubic if c > 0.0 => Some(2.0 / c),
        Scheme::G2Quartic if c >= HALF_CIRCLE_C => Some(1.5 / c),
        _ => None,
    };
    match limit {
        Some(lim) if d >= lim => Err(Error::Input(format!(
            "d = {d} is outside the valid range (0, {lim}) for {scheme} at c = {c}"
        ))),
        _ => Ok(()),
    }
}

impl ErrorFunction {
    pub fn new(scheme: Scheme, c: f64, d: f64) -> Result<Self> {
        check_domain(scheme, c, d)?;
        let t = Poly::x();
        let t2 = &t * &t;
        let one = Poly::constant(1.0);
        let k = Poly::constant;
        let (sign, f, g) = match scheme {
            Scheme::G0Quadratic => {
                let s = (1.0 - c * c).sqrt();
                let f = k(s * (c - d));
                let g = k(1.0 - c * c) + t2.scale((c - d) * (c - d));
                (1.0, f, g)
            }
            Scheme::G1Cubic => {
                let cd = c * d;
                let f = (k(cd - 2.0) + t2.scale(3.0 * cd - 2.0)).scale(8.0 * d / 3.0);
                let g = k((2.0 - cd).powi(2))
                    + t2.scale(2.0 * (d * (2.0 * d + c * (8.0 - 5.0 * cd)) - 4.0))
                    + t2.powi(2).scale((2.0 - 3.0 * cd).powi(2));
                (1.0, f, g)
            }
            Scheme::G2Quartic if c < HALF_CIRCLE_C => {
                let r3 = 3f64.sqrt();
                let u = &one - &t2;
                let f = ((&t2 * &(k(3.0) - t2.clone())).scale(2.0) + u.powi(2).scale(r3 * d))
                    .scale(2.0);
                let g = k(3.0)
                    + t2.scale(-3.0 * (2.0 - d * d))
                    + t2.powi(2).scale(3.0 + 4.0 * r3 * d - 6.0 * d * d)
                    + t2.powi(3).scale(4.0 - 4.0 * r3 * d + 3.0 * d * d);
                (-1.0, f, g)
            }
            Scheme::G2Quartic => {
                let cd = c * d;
                let u = &one - &t2;
                let f = (u.powi(2).scale(3.0 * (3.0 - 4.0 * d * d))
                    + (&one + &t2.powi(2).scale(3.0)).scale(8.0 * cd * d * d)
                    - (&u * &(&one - &t2.scale(5.0 - 4.0 * cd))).scale(6.0 * cd))
                .scale(2.0 * c * c);
                let inner = t2.scale(4.0 * cd) + u.scale(3.0 - 4.0 * d * d);
                let mid = k(2.0) + (&one - &t2.scale(3.0)).scale(1.0 - 2.0 * cd);
                let g = (&t2 * &inner.powi(2)).scale(1.0 - c * c) + mid.powi(2).scale(c * c);
                (-1.0, f, g)
            }
        };
        let h = &(&f.derivative() * &g) - &(&f * &g.derivative()).scale(1.5);
        Ok(ErrorFunction {
            scheme,
            c,
            d,
            sign,
            f,
            g,
            h,
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

    /// `+1` when `e = 1 + f / g^(3/2)`, `-1` when `e = 1 - f / g^(3/2)`.
    pub fn sign(&self) -> f64 {
        self.sign
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    /// `f' g - (3/2) f g'`; `∂e/∂t` has the sign of `sign · h`.
    pub fn h(&self) -> &Poly {
        &self.h
    }

    fn regular_g(&self, t: f64) -> Result<f64> {
        let g = self.g.eval(t);
        if g > 0.0 {
            Ok(g)
        } else {
            Err(Error::Regularity { t, g })
        }
    }

    /// `e(t, d)`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        let g = self.regular_g(t)?;
        Ok(1.0 + self.sign * self.f.eval(t) / (g * g.sqrt()))
    }

    /// `∂e/∂t (t, d)`.
    pub fn deriv(&self, t: f64) -> Result<f64> {
        let g = self.regular_g(t)?;
        Ok(self.sign * self.h.eval(t) / (g * g * g.sqrt()))
    }

    /// Extrema on `t ∈ [0, 1]`, using the structure results where they apply.
    pub fn extrema(&self, tol_t: f64) -> Result<ExtremaProfile> {
        if self.in_structured_region() {
            self.structured_extrema(tol_t)
        } else {
            self.grid_extrema(tol_t)
        }
    }

    /// Whether `d` lies in the interval on which the extrema structure of
    /// this scheme is known in closed form.
    pub fn in_structured_region(&self) -> bool {
        let (c, d) = (self.c, self.d);
        let inside = |(lo, hi): (f64, f64)| d >= lo && d <= hi;
        match self.scheme {
            Scheme::G0Quadratic => true,
            Scheme::G1Cubic if c == 0.0 => inside(g1_half_circle_bounds()),
            Scheme::G1Cubic => inside(bounds_g1(c)),
            // The half-circle quartic has no closed structure statement; it
            // always goes through the scan.
            Scheme::G2Quartic if c < HALF_CIRCLE_C => false,
            Scheme::G2Quartic => {
                let b = bounds_g2(c);
                inside((b.d1, b.d2))
            }
        }
    }

    fn structured_extrema(&self, tol_t: f64) -> Result<ExtremaProfile> {
        let e0 = self.eval(0.0)?;
        let e1 = self.eval(1.0)?;
        let boundary = Extremum::new(1.0, e1, ExtremumKind::Boundary);
        let entries = match self.scheme {
            Scheme::G0Quadratic => {
                // e' = -3 s (c - d)^3 t (...)^(-5/2): only t = 0 and t = 1.
                let kind = if self.d > self.c {
                    ExtremumKind::Min
                } else {
                    ExtremumKind::Max
                };
                vec![Extremum::new(0.0, e0, kind), boundary]
            }
            Scheme::G1Cubic => {
                let t1 = self.g1_interior_min(tol_t)?;
                vec![
                    Extremum::new(0.0, e0, ExtremumKind::Max),
                    Extremum::new(t1, self.eval(t1)?, ExtremumKind::Min),
                    boundary,
                ]
            }
            Scheme::G2Quartic => {
                let (t_max, t_min) = self.g2_interior_extrema(tol_t)?;
                vec![
                    Extremum::new(0.0, e0, ExtremumKind::Min),
                    Extremum::new(t_max, self.eval(t_max)?, ExtremumKind::Max),
                    Extremum::new(t_min, self.eval(t_min)?, ExtremumKind::Min),
                    boundary,
                ]
            }
        };
        Ok(ExtremaProfile::new(entries, ExtremaMethod::Structured))
    }

    /// Interior minimum of the cubic error, between `3/5` (or `0.3` for the
    /// half circle) and 1.
    fn g1_interior_min(&self, tol_t: f64) -> Result<f64> {
        let t_lo = if self.c > 0.0 { 0.6 } else { 0.3 };
        let h = |t: f64| Ok(self.h.eval(t));
        let (h_lo, h_hi) = (self.h.eval(t_lo), self.h.eval(1.0));
        if !(h_lo < 0.0 && h_hi > 0.0) {
            return Err(Error::Structure(format!(
                "cubic error at c = {}, d = {}: expected de/dt < 0 at t = {t_lo} and > 0 at t = 1",
                self.c, self.d
            )));
        }
        let br = Bracket::new(t_lo, 1.0, h_lo, h_hi)?;
        let guess = g1_t1_radical(self.c, self.d).unwrap_or(f64::NAN);
        solve_with_guess(h, br, guess, tol_t)
    }

    /// Interior maximum `t_M` and minimum `t_m` of the quartic error.
    fn g2_interior_extrema(&self, tol_t: f64) -> Result<(f64, f64)> {
        let structure = |what: &str| {
            Error::Structure(format!(
                "quartic error at c = {}, d = {}: {what}",
                self.c, self.d
            ))
        };
        let e_lo = self.eval(0.45)?;
        let e_hi = self.eval(0.9)?;
        if !(e_lo > 0.0 && e_hi < 0.0) {
            return Err(structure("expected e(0.45) > 0 > e(0.9)"));
        }
        // The zero crossing of e separates the interior maximum from the
        // interior minimum.
        let zero = solve_bracketed(
            |t| self.eval(t),
            Bracket::new(0.45, 0.9, e_lo, e_hi)?,
            tol_t,
        )?;
        let h = |t: f64| Ok(self.h.eval(t));
        let br_max = Bracket::evaluate(h, 0.45, zero)
            .map_err(|_| structure("no maximum between 0.45 and the zero of e"))?;
        let br_min = Bracket::evaluate(h, zero, 1.0)
            .map_err(|_| structure("no minimum between the zero of e and 1"))?;
        Ok((
            solve_bracketed(h, br_max, tol_t)?,
            solve_bracketed(h, br_min, tol_t)?,
        ))
    }

    /// Scan of `∂e/∂t` on a uniform grid with every sign change refined.
    fn grid_extrema(&self, tol_t: f64) -> Result<ExtremaProfile> {
        let n = GRID_INTERVALS;
        let node = |i: usize| i as f64 / n as f64;
        // The sign of e' is the sign of `sign · h`.
        let slope: Vec<f64> = (0..=n).map(|i| self.sign * self.h.eval(node(i))).collect();
        // h is odd, so h(0) = 0; classify t = 0 from the first nonzero slope.
        let first = slope.iter().skip(1).copied().find(|s| *s != 0.0).unwrap_or(0.0);
        let kind0 = if first > 0.0 {
            ExtremumKind::Min
        } else {
            ExtremumKind::Max
        };
        let mut entries = vec![Extremum::new(0.0, self.eval(0.0)?, kind0)];
        let h = |t: f64| Ok(self.h.eval(t));
        let Some(start) = (1..=n).find(|&i| slope[i] != 0.0) else {
            // Constant error function.
            entries.push(Extremum::new(1.0, self.eval(1.0)?, ExtremumKind::Boundary));
            return Ok(ExtremaProfile::new(entries, ExtremaMethod::GridScan));
        };
        let (mut prev_t, mut prev_s) = (node(start), slope[start]);
        for (i, &s) in slope.iter().enumerate().skip(start + 1) {
            if s == 0.0 {
                continue;
            }
            if (s > 0.0) != (prev_s > 0.0) {
                let t_hi = node(i);
                let br = Bracket::new(prev_t, t_hi, self.h.eval(prev_t), self.h.eval(t_hi))?;
                let t = solve_bracketed(h, br, tol_t)?;
                let kind = if prev_s > 0.0 {
                    ExtremumKind::Max
                } else {
                    ExtremumKind::Min
                };
                entries.push(Extremum::new(t, self.eval(t)?, kind));
            }
            prev_t = node(i);
            prev_s = s;
        }
        entries.push(Extremum::new(1.0, self.eval(1.0)?, ExtremumKind::Boundary));
        Ok(ExtremaProfile::new(entries, ExtremaMethod::GridScan))
    }
}

/// Closed-form candidate for the interior minimum of the cubic error.
pub fn g1_t1_radical(c: f64, d: f64) -> Option<f64> {
    let (c2, c3, c4) = (c * c, c * c * c, c * c * c * c);
    let (d2, d3, d4) = (d * d, d * d * d, d * d * d * d);
    let h = 4.0 - 8.0 * c * d + d2 + 2.0 * c2 * d2;
    let disc = 112.0 * c4 * d4 - 512.0 * c3 * d3 - 32.0 * c2 * d4 + 832.0 * c2 * d2
        + 80.0 * c * d3
        - 576.0 * c * d
        + d4
        - 40.0 * d2
        + 144.0;
    if disc < 0.0 {
        return None;
    }
    let num = -h + disc.sqrt();
    let den = 2f64.sqrt() * (2.0 - 3.0 * c * d);
    (num >= 0.0 && den > 0.0).then(|| num.sqrt() / den)
}

/// `e(t, d)` from the closed form.
pub fn eval_error(scheme: Scheme, c: f64, d: f64, t: f64) -> Result<f64> {
    ErrorFunction::new(scheme, c, d)?.eval(t)
}

/// `(e(0, d), e(1, d))` from the rational boundary forms.
pub fn boundary_values(scheme: Scheme, c: f64, d: f64) -> Result<(f64, f64)> {
    check_domain(scheme, c, d)?;
    Ok(match scheme {
        Scheme::G0Quadratic => {
            let s2 = 1.0 - c * c;
            let e0 = 1.0 - (d - c) / s2;
            let q = 1.0 - 2.0 * c * d + d * d;
            let e1 = 1.0 + s2.sqrt() * (c - d) / (q * q.sqrt());
            (e0, e1)
        }
        Scheme::G1Cubic => {
            let w = 2.0 - c * d;
            let e0 = 1.0 - 8.0 * d * w / (3.0 * w.abs().powi(3));
            let e1 = 1.0 - 4.0 * (1.0 - c * d) / (3.0 * d * d);
            (e0, e1)
        }
        Scheme::G2Quartic if c < HALF_CIRCLE_C => (1.0 - 2.0 * d / 3.0, 0.0),
        Scheme::G2Quartic => {
            let w = 3.0 - 2.0 * c * d;
            (1.0 - (6.0 - 8.0 * d * d) / (c * w * w), 0.0)
        }
    })
}

/// Extrema of `e(·, d)` on `[0, 1]` with the default tolerance.
pub fn locate_extrema(scheme: Scheme, c: f64, d: f64) -> Result<ExtremaProfile> {
    ErrorFunction::new(scheme, c, d)?.extrema(INNER_TOL)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremumKind {
    Min,
    Max,
    Boundary,
}

impl ExtremumKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExtremumKind::Min => "min",
            ExtremumKind::Max => "max",
            ExtremumKind::Boundary => "boundary",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub t: f64,
    pub value: f64,
    pub kind: ExtremumKind,
}

impl Extremum {
    pub fn new(t: f64, value: f64, kind: ExtremumKind) -> Self {
        Extremum { t, value, kind }
    }
}

/// How an [`ExtremaProfile`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremaMethod {
    /// Brackets derived from the known shape of the error function.
    Structured,
    /// Grid scan with local refinement.
    GridScan,
}

/// Extrema of an even error function on `t ∈ [0, 1]`; each interior entry
/// stands for a mirrored pair.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtremaProfile {
    pub entries: Vec<Extremum>,
    pub max_abs: f64,
    pub method: ExtremaMethod,
}

impl ExtremaProfile {
    pub fn new(mut entries: Vec<Extremum>, method: ExtremaMethod) -> Self {
        entries.sort_by(|a, b| a.t.total_cmp(&b.t));
        let max_abs = entries.iter().map(|e| e.value.abs()).fold(0.0, f64::max);
        ExtremaProfile {
            entries,
            max_abs,
            method,
        }
    }

    pub fn at_zero(&self) -> Option<&Extremum> {
        self.entries.first().filter(|e| e.t == 0.0)
    }

    pub fn boundary(&self) -> Option<&Extremum> {
        self.entries
            .iter()
            .find(|e| e.kind == ExtremumKind::Boundary)
    }

    /// Largest interior local maximum (`t ∈ (0, 1)`).
    pub fn interior_max(&self) -> Option<&Extremum> {
        self.interior()
            .filter(|e| e.kind == ExtremumKind::Max)
            .max_by(|a, b| a.value.total_cmp(&b.value))
    }

    /// Smallest interior local minimum (`t ∈ (0, 1)`).
    pub fn interior_min(&self) -> Option<&Extremum> {
        self.interior()
            .filter(|e| e.kind == ExtremumKind::Min)
            .min_by(|a, b| a.value.total_cmp(&b.value))
    }

    fn interior(&self) -> impl Iterator<Item = &Extremum> {
        self.entries.iter().filter(|e| e.t > 0.0 && e.t < 1.0)
    }
}
