// Copyright 2026 the Arcopt Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors produced by the arc approximation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument was outside its documented domain.
    #[error("invalid input: {0}")]
    Input(String),
    /// The curvature denominator `g(t, d)` was not positive.
    #[error("curvature error function is not regular at t = {t} (g = {g})")]
    Regularity { t: f64, g: f64 },
    /// The curve has a vanishing first derivative.
    #[error("curve is singular at t = {t}")]
    Singularity { t: f64 },
    /// The function values at the bracket ends have the same sign.
    #[error("no sign change on [{lo}, {hi}] (f = {f_lo}, {f_hi})")]
    Bracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    /// The iteration cap was reached.
    #[error("no convergence after {iterations} iterations (last interval width {width})")]
    Convergence { iterations: usize, width: f64 },
    /// The expected extrema structure of an error function was not found.
    #[error("unexpected extrema structure: {0}")]
    Structure(String),
    /// Broken internal invariant.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures of a numeric solve (as opposed to bad input).
    pub fn is_solver_failure(&self) -> bool {
        matches!(
            self,
            Error::Bracket { .. } | Error::Convergence { .. } | Error::Structure(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
