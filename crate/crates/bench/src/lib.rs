// Copyright 2026 the Arcopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Shared inputs for the solver benchmarks.

use std::f64::consts::PI;

use arcopt::{ArcSpec, Scheme};

/// Divisors `k` of the table angles `π/k`.
pub const TABLE_DIVISORS: [f64; 6] = [2.0, 3.0, 4.0, 6.0, 8.0, 12.0];

/// The arcs of one table, widest first.
pub fn table_arcs() -> Vec<ArcSpec> {
    TABLE_DIVISORS
        .iter()
        .map(|k| ArcSpec::from_phi(PI / k).expect("table angles are valid"))
        .collect()
}

/// A representative arc per optimum branch of `scheme`.
pub fn branch_samples(scheme: Scheme) -> [(&'static str, f64); 2] {
    match scheme {
        Scheme::G0Quadratic => [("equioscillating", 0.5), ("boundary_balanced", 0.95)],
        Scheme::G1Cubic => [("interior_balanced", 0.2), ("equioscillating", 0.5)],
        Scheme::G2Quartic => [("equioscillating", 0.1), ("interior_balanced", 0.5)],
    }
}
