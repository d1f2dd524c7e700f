// Copyright 2026 the Arcopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Bracketed scalar root finding.
//!
//! The solver keeps a sign-changing bracket at all times and mixes inverse
//! quadratic interpolation and secant steps with bisection. If the bracket
//! fails to halve within three consecutive steps, the next step is a forced
//! bisection, so the iteration count is bounded by roughly three times the
//! bisection count.

use crate::{Error, Result};

/// Default `t` tolerance for solves on the curve parameter.
pub const INNER_TOL: f64 = 1e-13;
/// Default tolerance for solves on the shape parameter `d`.
pub const OUTER_TOL: f64 = 1e-12;
/// Hard cap on iterations.
pub const MAX_ITER: usize = 200;

/// An interval with a sign change of the target function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::Input(format!("empty bracket [{lo}, {hi}]")));
        }
        if !(f_lo.is_finite() && f_hi.is_finite()) || f_lo * f_hi > 0.0 {
            return Err(Error::Bracket { lo, hi, f_lo, f_hi });
        }
        Ok(Bracket { lo, hi, f_lo, f_hi })
    }

    /// Evaluates `f` at both ends and checks for a sign change.
    pub fn evaluate<F>(mut f: F, lo: f64, hi: f64) -> Result<Self>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let f_lo = f(lo)?;
        let f_hi = f(hi)?;
        Bracket::new(lo, hi, f_lo, f_hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Solver tolerances for nested solves.
///
/// `inner` applies to solves on `t` that run inside every evaluation of an
/// outer objective in `d`; it must be at least ten times tighter than
/// `outer`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub inner: f64,
    pub outer: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            inner: INNER_TOL,
            outer: OUTER_TOL,
        }
    }
}

impl Tolerances {
    pub fn new(inner: f64, outer: f64) -> Result<Self> {
        let tol = Tolerances { inner, outer };
        tol.check()?;
        Ok(tol)
    }

    /// Overrides the outer tolerance, tightening the inner one if needed.
    pub fn with_outer(outer: f64) -> Result<Self> {
        Tolerances::new(INNER_TOL.min(outer / 10.0), outer)
    }

    pub fn check(&self) -> Result<()> {
        let ok = |x: f64| x > 0.0 && x.is_finite();
        if !ok(self.inner) || !ok(self.outer) {
            return Err(Error::Input("tolerances must be positive".into()));
        }
        if self.inner * 10.0 > self.outer {
            return Err(Error::Input(format!(
                "inner tolerance {} must be at least 10x tighter than outer {}",
                self.inner, self.outer
            )));
        }
        Ok(())
    }
}

/// Finds a root of `f` inside `bracket` to an enclosing width of `tol_x`.
pub fn solve_bracketed<F>(mut f: F, bracket: Bracket, tol_x: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(tol_x > 0.0) {
        return Err(Error::Input(format!("tolerance {tol_x} must be positive")));
    }
    let Bracket { lo, hi, f_lo, f_hi } = bracket;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }

    // `b` is the best estimate, `c` the contrapoint (f(b) f(c) < 0), `a` the
    // previous value of `b`.
    let (mut b, mut fb) = (hi, f_hi);
    let (mut c, mut fc) = (lo, f_lo);
    let (mut a, mut fa) = (c, fc);
    let mut widths = [f64::INFINITY; 3];

    for _ in 0..MAX_ITER {
        if fc.abs() < fb.abs() {
            a = b;
            fa = fb;
            std::mem::swap(&mut b, &mut c);
            std::mem::swap(&mut fb, &mut fc);
        }
        let width = (c - b).abs();
        if width <= tol_x {
            return Ok(b);
        }
        widths.rotate_left(1);
        widths[2] = width;

        let half = 0.5 * (c - b);
        let mut step = half;
        // Interpolate unless the bracket failed to halve over the last steps.
        let stalled = widths[0].is_finite() && width > 0.5 * widths[0];
        if !stalled {
            let interp = if a != b && a != c && fa != fb && fa != fc && fb != fc {
                // Inverse quadratic interpolation through (a, b, c).
                let r = fb / fc;
                let s = fb / fa;
                let q = fa / fc;
                let p = s * (r * (r - q) * (c - b) - (1.0 - r) * (b - a));
                let den = (q - 1.0) * (r - 1.0) * (s - 1.0);
                p / den
            } else {
                // Secant through b and c.
                -fb * (c - b) / (fc - fb)
            };
            // Accept only steps that land strictly between b and c, not too
            // close to c.
            if interp.is_finite() && interp * half > 0.0 && interp.abs() < 0.75 * half.abs() {
                step = interp;
            }
        } else {
            widths = [f64::INFINITY; 3];
        }
        let min_step = 0.5 * tol_x;
        if step.abs() < min_step {
            step = min_step.copysign(half);
        }

        a = b;
        fa = fb;
        b += step;
        fb = f(b)?;
        if !fb.is_finite() {
            return Err(Error::Internal(format!("non-finite value at x = {b}")));
        }
        if fb == 0.0 {
            return Ok(b);
        }
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
        }
    }
    Err(Error::Convergence {
        iterations: MAX_ITER,
        width: (c - b).abs(),
    })
}

/// Like [`solve_bracketed`], but first splits the bracket at `guess`.
pub fn solve_with_guess<F>(mut f: F, bracket: Bracket, guess: f64, tol_x: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut br = bracket;
    if guess.is_finite() && guess > br.lo && guess < br.hi {
        let fg = f(guess)?;
        if fg == 0.0 {
            return Ok(guess);
        }
        // Probe a tiny interval around the guess; a good guess closes the
        // bracket immediately.
        if (fg > 0.0) == (br.f_lo > 0.0) {
            br.lo = guess;
            br.f_lo = fg;
        } else {
            br.hi = guess;
            br.f_hi = fg;
        }
        let eps = (1e3 * tol_x).min(0.25 * br.width());
        let probe = if br.lo == guess { guess + eps } else { guess - eps };
        if probe > br.lo && probe < br.hi {
            let fp = f(probe)?;
            if (fp > 0.0) == (fg > 0.0) {
                if br.lo == guess {
                    br.lo = probe;
                    br.f_lo = fp;
                } else {
                    br.hi = probe;
                    br.f_hi = fp;
                }
            } else if br.lo == guess {
                br.hi = probe;
                br.f_hi = fp;
            } else {
                br.lo = probe;
                br.f_lo = fp;
            }
        }
    }
    solve_bracketed(f, br, tol_x)
}

/// Solves `pos(d) = |neg(d)|` on `[lo, hi]`.
pub fn solve_balance<P, N>(mut pos: P, mut neg: N, lo: f64, hi: f64, tol_x: f64) -> Result<f64>
where
    P: FnMut(f64) -> Result<f64>,
    N: FnMut(f64) -> Result<f64>,
{
    let mut diff = |d: f64| -> Result<f64> { Ok(pos(d)? - neg(d)?.abs()) };
    let bracket = Bracket::evaluate(&mut diff, lo, hi)?;
    solve_bracketed(diff, bracket, tol_x)
}

/// Golden-section minimization of a unimodal `f` on `[lo, hi]`.
pub fn golden_section<F>(mut f: F, mut lo: f64, mut hi: f64, tol_x: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) || !(tol_x > 0.0) {
        return Err(Error::Input(format!("bad golden-section interval [{lo}, {hi}]")));
    }
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut iter = 0;
    while hi - lo > tol_x {
        iter += 1;
        if iter > MAX_ITER {
            return Err(Error::Convergence {
                iterations: MAX_ITER,
                width: hi - lo,
            });
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}
