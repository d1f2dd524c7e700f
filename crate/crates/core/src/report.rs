// Copyright 2026 the Arcopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Serializable summaries of solves and table rows.

use serde::{Deserialize, Serialize};

use crate::arc::{ArcSpec, Scheme};
use crate::curvature_error::Extremum;
use crate::optimizer::{max_abs_error, optimal_with, OptimalResult, SolveOptions};
use crate::radial::{optimal_radial_d_near, radial_error_at};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialSummary {
    pub d_r: f64,
    pub radial_error: f64,
}

/// Result of one solve together with its inputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub phi: f64,
    pub c: f64,
    pub scheme: Scheme,
    pub d_star: f64,
    pub branch: String,
    pub max_error: f64,
    pub extrema: Vec<Extremum>,
    pub d_e: f64,
    pub bounds: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radial: Option<RadialSummary>,
}

impl SolveReport {
    pub fn new(arc: &ArcSpec, r: &OptimalResult) -> Self {
        SolveReport {
            phi: arc.phi(),
            c: arc.c(),
            scheme: r.scheme,
            d_star: r.d_star,
            branch: r.branch.as_str().to_string(),
            max_error: r.max_error,
            extrema: r.profile.entries.clone(),
            d_e: r.d_e,
            bounds: [r.bounds.0, r.bounds.1],
            radial: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Solves one arc and, when asked, adds the radial comparison.
pub fn solve_report(
    arc: &ArcSpec,
    scheme: Scheme,
    opts: &SolveOptions,
    with_radial: bool,
) -> Result<SolveReport> {
    let r = optimal_with(scheme, arc.c(), opts)?;
    let mut report = SolveReport::new(arc, &r);
    if with_radial {
        let (d_r, profile) = optimal_radial_d_near(arc.c(), scheme, r.d_star)?;
        report.radial = Some(RadialSummary {
            d_r,
            radial_error: profile.max_abs,
        });
    }
    Ok(report)
}

/// One row of the curvature/radial comparison table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub phi: f64,
    pub c: f64,
    pub d_star: f64,
    pub curvature_error: f64,
    pub radial_error: f64,
    pub d_r: f64,
    pub curvature_error_at_dr: f64,
    pub radial_error_at_dr: f64,
}

impl TableRow {
    pub const HEADER: [&'static str; 8] = [
        "phi",
        "c",
        "d_star",
        "curvature_error",
        "radial_error",
        "d_r",
        "curvature_error_at_dr",
        "radial_error_at_dr",
    ];

    pub fn compute(arc: &ArcSpec, scheme: Scheme, opts: &SolveOptions) -> Result<Self> {
        let c = arc.c();
        let r = optimal_with(scheme, c, opts)?;
        let radial_at_star = radial_error_at(c, scheme, r.d_star)?.max_abs;
        let (d_r, at_dr) = optimal_radial_d_near(c, scheme, r.d_star)?;
        Ok(TableRow {
            phi: arc.phi(),
            c,
            d_star: r.d_star,
            curvature_error: r.max_error,
            radial_error: radial_at_star,
            d_r,
            curvature_error_at_dr: max_abs_error(scheme, c, d_r)?,
            radial_error_at_dr: at_dr.max_abs,
        })
    }

    /// Cells as printed: 15 significant digits for the angle, 6 decimals
    /// for parameters, 5 significant digits for errors.
    pub fn cells(&self) -> [String; 8] {
        let g15 = |x: f64| format!("{:.14e}", x).parse::<f64>().map(|v| v.to_string()).unwrap_or_default();
        let e5 = |x: f64| format!("{:.4e}", x);
        let f6 = |x: f64| format!("{:.6}", x);
        [
            g15(self.phi),
            g15(self.c),
            f6(self.d_star),
            e5(self.curvature_error),
            e5(self.radial_error),
            f6(self.d_r),
            e5(self.curvature_error_at_dr),
            e5(self.radial_error_at_dr),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trip() {
        let arc = ArcSpec::from_phi(std::f64::consts::FRAC_PI_3).unwrap();
        let rep = solve_report(&arc, Scheme::G1Cubic, &SolveOptions::default(), true).unwrap();
        let back = SolveReport::from_json(&rep.to_json()).unwrap();
        assert_eq!(rep, back);
        let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(v["scheme"], "g1");
        assert!(v["radial"]["d_r"].is_f64());
    }

    #[test]
    fn cell_formats() {
        let row = TableRow {
            phi: std::f64::consts::FRAC_PI_2,
            c: 0.0,
            d_star: 1.27205631,
            curvature_error: 0.17602,
            radial_error: 1.234567e-5,
            d_r: 1.3157,
            curvature_error_at_dr: 2e-3,
            radial_error_at_dr: 1e-10,
        };
        assert_eq!(
            row.cells(),
            [
                "1.5707963267949", "0", "1.272056", "1.7602e-1", "1.2346e-5", "1.315700",
                "2.0000e-3", "1.0000e-10"
            ]
            .map(String::from)
        );
    }
}
