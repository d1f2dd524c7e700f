// Copyright 2026 the Arcopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Half-angle literals: radians (`0.5`), degrees (`30deg`, `30°`) or
//! multiples of π (`pi`, `pi/6`, `2pi/5`).

use std::f64::consts::PI;

pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    let bad = || format!("cannot parse angle {s:?}; use radians, <x>deg or pi/<k>");
    let value = if let Some(deg) = t.strip_suffix("deg").or_else(|| t.strip_suffix('°')) {
        deg.trim().parse::<f64>().map_err(|_| bad())?.to_radians()
    } else if let Some(k) = t.find("pi") {
        let head = t[..k].trim().trim_end_matches('*');
        let factor = if head.is_empty() {
            1.0
        } else {
            head.parse::<f64>().map_err(|_| bad())?
        };
        let tail = t[k + 2..].trim();
        let divisor = match tail.strip_prefix('/') {
            Some(q) => q.trim().parse::<f64>().map_err(|_| bad())?,
            None if tail.is_empty() => 1.0,
            None => return Err(bad()),
        };
        if divisor == 0.0 {
            return Err(bad());
        }
        factor * PI / divisor
    } else {
        t.parse::<f64>().map_err(|_| bad())?
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}
