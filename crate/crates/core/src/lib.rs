// Copyright 2026 the Arcopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Polynomial approximation of circular arcs with minimal curvature error.
//!
//! An arc of the unit circle with inner angle `2φ` is approximated by a
//! symmetric Bézier curve of degree 2, 3 or 4 with contact of order 0, 1 or
//! 2 at the endpoints. Each scheme leaves one free parameter `d`, and
//! [`optimizer::optimal`] finds the `d` minimizing
//! `max_t |1 − κ(t)|`, where `κ` is the signed curvature of the approximant.
//!
//! ```
//! use arcopt::{optimal, ArcSpec, Scheme};
//!
//! let arc = ArcSpec::from_phi(std::f64::consts::FRAC_PI_3).unwrap();
//! let r = optimal(Scheme::G1Cubic, arc.c()).unwrap();
//! assert!((r.d_star - 0.879981).abs() < 1e-6);
//! ```

// `!(x < y)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arc;
pub mod curvature_error;
mod error;
pub mod optimizer;
pub mod poly;
pub mod positivity;
pub mod radial;
pub mod report;
pub mod rootfind;

pub use arc::{ArcSpec, ControlPolygon, Point, Scheme};
pub use curvature_error::{
    boundary_values, eval_error, locate_extrema, ErrorFunction, ExtremaMethod, ExtremaProfile,
    Extremum, ExtremumKind,
};
pub use error::{Error, Result};
pub use optimizer::{optimal, optimal_with, Branch, OptimalResult, SolveOptions};
pub use radial::{optimal_radial_d, radial_error, RadialProfile};
pub use report::{SolveReport, TableRow};
pub use rootfind::Tolerances;
