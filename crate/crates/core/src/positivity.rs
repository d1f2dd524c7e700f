// Copyright 2026 the Arcopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Conversion to the basis `{xⁱ(1−x)ⁿ⁻ⁱ}` and nonnegativity certificates.
//!
//! A polynomial `Σ aᵢ xⁱ` of degree `n` has coefficients
//! `bⱼ = Σ_{i≤j} C(n−i, j−i) aᵢ` in that basis. Multivariate polynomials are
//! converted one axis at a time. When every `bⱼ` is nonnegative the
//! polynomial is nonnegative on the unit box; the converse does not hold.
//!
//! Everything is generic over [`Scalar`], so the same code runs in `f64` and
//! in exact [`BigRational`] arithmetic.

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Coefficient field for the basis machinery.
pub trait Scalar: Num + Clone + PartialOrd + Debug {}
impl<T: Num + Clone + PartialOrd + Debug> Scalar for T {}

fn check_shape(len: usize, degrees: &[usize]) -> Result<()> {
    let want: usize = degrees.iter().map(|n| n + 1).product();
    if degrees.is_empty() || len != want {
        return Err(Error::Input(format!(
            "{len} coefficients do not match degrees {degrees:?} ({want} expected)"
        )));
    }
    Ok(())
}

fn strides(degrees: &[usize]) -> Vec<usize> {
    let mut s = vec![1; degrees.len()];
    for v in (0..degrees.len().saturating_sub(1)).rev() {
        s[v] = s[v + 1] * (degrees[v + 1] + 1);
    }
    s
}

fn unravel(mut flat: usize, degrees: &[usize]) -> Vec<usize> {
    let mut idx = vec![0; degrees.len()];
    for v in (0..degrees.len()).rev() {
        idx[v] = flat % (degrees[v] + 1);
        flat /= degrees[v] + 1;
    }
    idx
}

/// Rows `0..=n` of Pascal's triangle.
fn pascal<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    let mut rows: Vec<Vec<T>> = vec![vec![T::one()]];
    for m in 1..=n {
        let prev = &rows[m - 1];
        let mut row = vec![T::one(); m + 1];
        for k in 1..m {
            row[k] = prev[k - 1].clone() + prev[k].clone();
        }
        rows.push(row);
    }
    rows
}

fn transform_axis<T: Scalar>(coeffs: &mut [T], degrees: &[usize], axis: usize) {
    let n = degrees[axis];
    let binom = pascal::<T>(n);
    let stride = strides(degrees)[axis];
    for flat in 0..coeffs.len() {
        if (flat / stride) % (n + 1) != 0 {
            continue;
        }
        let a: Vec<T> = (0..=n).map(|i| coeffs[flat + i * stride].clone()).collect();
        for j in 0..=n {
            let mut b = T::zero();
            for (i, ai) in a.iter().enumerate().take(j + 1) {
                b = b + binom[n - i][j - i].clone() * ai.clone();
            }
            coeffs[flat + j * stride] = b;
        }
    }
}

/// Dense polynomial in the standard monomial basis, row-major over the
/// exponent multi-index with the last variable varying fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<T> {
    pub degrees: Vec<usize>,
    pub coeffs: Vec<T>,
}

impl<T: Scalar> MultiPoly<T> {
    pub fn new(degrees: Vec<usize>, coeffs: Vec<T>) -> Result<Self> {
        check_shape(coeffs.len(), &degrees)?;
        Ok(MultiPoly { degrees, coeffs })
    }

    pub fn zero(vars: usize) -> Self {
        MultiPoly {
            degrees: vec![0; vars],
            coeffs: vec![T::zero()],
        }
    }

    pub fn constant(vars: usize, value: T) -> Self {
        MultiPoly {
            degrees: vec![0; vars],
            coeffs: vec![value],
        }
    }

    /// The polynomial `x_var`.
    pub fn var(vars: usize, var: usize) -> Self {
        let mut degrees = vec![0; vars];
        degrees[var] = 1;
        MultiPoly {
            degrees,
            coeffs: vec![T::zero(), T::one()],
        }
    }

    /// Univariate polynomial in `x_var` from ascending coefficients.
    pub fn univariate(vars: usize, var: usize, coeffs: Vec<T>) -> Self {
        let mut degrees = vec![0; vars];
        degrees[var] = coeffs.len() - 1;
        MultiPoly { degrees, coeffs }
    }

    pub fn get(&self, idx: &[usize]) -> T {
        if idx.iter().zip(&self.degrees).any(|(i, n)| i > n) {
            return T::zero();
        }
        let s = strides(&self.degrees);
        self.coeffs[idx.iter().zip(&s).map(|(i, s)| i * s).sum::<usize>()].clone()
    }

    /// Same polynomial with larger declared degrees.
    pub fn pad(&self, degrees: &[usize]) -> Result<Self> {
        if degrees.len() != self.degrees.len() || degrees.iter().zip(&self.degrees).any(|(a, b)| a < b) {
            return Err(Error::Input(format!(
                "cannot pad degrees {:?} to {degrees:?}",
                self.degrees
            )));
        }
        let len: usize = degrees.iter().map(|n| n + 1).product();
        let coeffs = (0..len).map(|f| self.get(&unravel(f, degrees))).collect();
        Ok(MultiPoly {
            degrees: degrees.to_vec(),
            coeffs,
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let degrees: Vec<usize> = self.degrees.iter().zip(&other.degrees).map(|(a, b)| *a.max(b)).collect();
        let len: usize = degrees.iter().map(|n| n + 1).product();
        let coeffs = (0..len)
            .map(|f| {
                let idx = unravel(f, &degrees);
                self.get(&idx) + other.get(&idx)
            })
            .collect();
        MultiPoly { degrees, coeffs }
    }

    pub fn scale(&self, k: &T) -> Self {
        MultiPoly {
            degrees: self.degrees.clone(),
            coeffs: self.coeffs.iter().map(|a| a.clone() * k.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let degrees: Vec<usize> = self.degrees.iter().zip(&other.degrees).map(|(a, b)| a + b).collect();
        let len: usize = degrees.iter().map(|n| n + 1).product();
        let s = strides(&degrees);
        let mut coeffs = vec![T::zero(); len];
        for (fa, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ia = unravel(fa, &self.degrees);
            for (fb, b) in other.coeffs.iter().enumerate() {
                let ib = unravel(fb, &other.degrees);
                let flat: usize = ia.iter().zip(&ib).zip(&s).map(|((x, y), s)| (x + y) * s).sum();
                coeffs[flat] = coeffs[flat].clone() + a.clone() * b.clone();
            }
        }
        MultiPoly { degrees, coeffs }
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut out = MultiPoly::constant(self.degrees.len(), T::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: &[T]) -> T {
        let mut total = T::zero();
        for (f, a) in self.coeffs.iter().enumerate() {
            let mut term = a.clone();
            for (v, e) in unravel(f, &self.degrees).into_iter().enumerate() {
                for _ in 0..e {
                    term = term * x[v].clone();
                }
            }
            total = total + term;
        }
        total
    }

    pub fn to_bform(&self) -> BForm<T> {
        let mut coeffs = self.coeffs.clone();
        for axis in 0..self.degrees.len() {
            transform_axis(&mut coeffs, &self.degrees, axis);
        }
        BForm {
            degrees: self.degrees.clone(),
            coeffs,
        }
    }
}

/// Coefficients in the tensor basis `∏ x_v^{i_v} (1 − x_v)^{n_v − i_v}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BForm<T> {
    pub degrees: Vec<usize>,
    pub coeffs: Vec<T>,
}

impl<T: Scalar> BForm<T> {
    pub fn new(degrees: Vec<usize>, coeffs: Vec<T>) -> Result<Self> {
        check_shape(coeffs.len(), &degrees)?;
        Ok(BForm { degrees, coeffs })
    }

    pub fn eval(&self, x: &[T]) -> T {
        let mut total = T::zero();
        for (f, b) in self.coeffs.iter().enumerate() {
            let mut term = b.clone();
            for (v, i) in unravel(f, &self.degrees).into_iter().enumerate() {
                let y = T::one() - x[v].clone();
                for _ in 0..i {
                    term = term * x[v].clone();
                }
                for _ in i..self.degrees[v] {
                    term = term * y.clone();
                }
            }
            total = total + term;
        }
        total
    }
}

/// Univariate conversion of `a₀ + a₁x + … + aₙxⁿ`.
pub fn std_to_bform<T: Scalar>(coeffs: &[T], n: usize) -> Result<BForm<T>> {
    std_to_bform_multi(coeffs, &[n])
}

/// Tensor-product conversion of a row-major coefficient tensor.
pub fn std_to_bform_multi<T: Scalar>(coeffs: &[T], degrees: &[usize]) -> Result<BForm<T>> {
    Ok(MultiPoly::new(degrees.to_vec(), coeffs.to_vec())?.to_bform())
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate<T> {
    /// Every coefficient is nonnegative.
    Certified,
    /// The most negative coefficient and its multi-index.
    Inconclusive { min_coeff: T, index: Vec<usize> },
}

impl<T> Certificate<T> {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::Certified)
    }
}

pub fn certify_nonneg<T: Scalar>(b: &BForm<T>) -> Certificate<T> {
    let zero = T::zero();
    let worst = b
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, v)| **v < zero)
        .fold(None::<(usize, &T)>, |acc, (i, v)| match acc {
            Some((_, w)) if w <= v => acc,
            _ => Some((i, v)),
        });
    match worst {
        None => Certificate::Certified,
        Some((i, v)) => Certificate::Inconclusive {
            min_coeff: v.clone(),
            index: unravel(i, &b.degrees),
        },
    }
}

// ---------------------------------------------------------------------------
// Exact arithmetic helpers

/// Exact rational value of a finite double.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::Input(format!("{x} is not finite")))
}

/// Parses `"p"`, `"p/q"` or a decimal literal such as `"-1.25e-3"` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Input(format!("cannot parse {s:?} as a rational number"));
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], s[k + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if frac.starts_with(['+', '-']) {
        return Err(bad());
    }
    let digits = BigInt::from_str(&format!("{int}{frac}")).map_err(|_| bad())?;
    let ten = BigRational::from_integer(BigInt::from(10));
    let scale = exp - frac.len() as i32;
    let mut r = BigRational::from_integer(digits);
    for _ in 0..scale.unsigned_abs() {
        r = if scale > 0 { r * ten.clone() } else { r / ten.clone() };
    }
    Ok(r)
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

// ---------------------------------------------------------------------------
// JSON documents

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Standard,
    Bform,
}

/// A coefficient given either as a JSON number or as an exact string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Number(f64),
    Text(String),
}

impl Coeff {
    pub fn to_rational(&self) -> Result<BigRational> {
        match self {
            Coeff::Number(x) => rational_from_f64(*x),
            Coeff::Text(s) => parse_rational(s),
        }
    }

    pub fn to_f64(&self) -> Result<f64> {
        match self {
            Coeff::Number(x) => Ok(*x),
            Coeff::Text(s) => parse_rational(s)?
                .to_f64()
                .ok_or_else(|| Error::Input(format!("{s} does not fit a double"))),
        }
    }
}

/// `{"degrees": [...], "basis": "standard" | "bform", "coeffs": [...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyDocument {
    pub degrees: Vec<usize>,
    pub basis: Basis,
    pub coeffs: Vec<Coeff>,
}

impl PolyDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PolyDocument =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed polynomial: {e}")))?;
        check_shape(doc.coeffs.len(), &doc.degrees)?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("polynomial documents always serialize")
    }

    pub fn exact(poly: &MultiPoly<BigRational>) -> Self {
        PolyDocument {
            degrees: poly.degrees.clone(),
            basis: Basis::Standard,
            coeffs: poly.coeffs.iter().map(|r| Coeff::Text(format_rational(r))).collect(),
        }
    }

    pub fn bform_exact(&self) -> Result<BForm<BigRational>> {
        let coeffs = self.coeffs.iter().map(Coeff::to_rational).collect::<Result<Vec<_>>>()?;
        match self.basis {
            Basis::Standard => std_to_bform_multi(&coeffs, &self.degrees),
            Basis::Bform => BForm::new(self.degrees.clone(), coeffs),
        }
    }

    pub fn bform_f64(&self) -> Result<BForm<f64>> {
        let coeffs = self.coeffs.iter().map(Coeff::to_f64).collect::<Result<Vec<_>>>()?;
        match self.basis {
            Basis::Standard => std_to_bform_multi(&coeffs, &self.degrees),
            Basis::Bform => BForm::new(self.degrees.clone(), coeffs),
        }
    }
}

// ---------------------------------------------------------------------------
// Instances

/// `∂e₃/∂t (1, d)` numerator `h₂(c, d) = 8d − 24c + 48c²d − 6cd² − 24c³d²`
/// with `d = (1 − δ) d₁(c) + δ d₂(c)`, as a polynomial in `(c, δ)` of
/// degrees `(11, 2)`. Its nonnegativity on the unit square shows that the
/// cubic error increases towards `t = 1` for every `d` in the bracket.
pub fn h2_instance() -> MultiPoly<BigRational> {
    // d1 and d2 expanded in c from their form in 1 − c.
    let u = MultiPoly::univariate(2, 0, vec![rat(1, 1), rat(-1, 1)]);
    let k = |p, q| MultiPoly::constant(2, rat(p, q));
    let d1 = k(2, 3).add(&u.scale(&rat(1, 3))).add(&u.powi(2).scale(&rat(1, 24)));
    let d2 = k(2, 3)
        .add(&u.scale(&rat(1, 3)))
        .add(&u.powi(2).scale(&rat(1, 6)))
        .add(&u.powi(3).scale(&rat(101, 1152)))
        .add(&u.powi(4).scale(&rat(25, 512)));
    let delta = MultiPoly::var(2, 1);
    let one_minus_delta = k(1, 1).add(&delta.scale(&rat(-1, 1)));
    let d = one_minus_delta.mul(&d1).add(&delta.mul(&d2));
    let c = MultiPoly::var(2, 0);
    let d2p = d.powi(2);
    d.scale(&rat(8, 1))
        .add(&c.scale(&rat(-24, 1)))
        .add(&c.powi(2).mul(&d).scale(&rat(48, 1)))
        .add(&c.mul(&d2p).scale(&rat(-6, 1)))
        .add(&c.powi(3).mul(&d2p).scale(&rat(-24, 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64) -> BigRational {
        rat(p, 1)
    }

    #[test]
    fn univariate_examples() {
        let b = std_to_bform(&[r(1), r(0), r(0)], 2).unwrap();
        assert_eq!(b.coeffs, vec![r(1), r(2), r(1)]);
        let b = std_to_bform(&[r(0), r(1), r(0)], 2).unwrap();
        assert_eq!(b.coeffs, vec![r(0), r(1), r(1)]);
        let b = std_to_bform(&[r(1), r(-4), r(4)], 2).unwrap();
        assert_eq!(b.coeffs, vec![r(1), r(-2), r(1)]);
        assert_eq!(
            certify_nonneg(&b),
            Certificate::Inconclusive {
                min_coeff: r(-2),
                index: vec![1]
            }
        );
        assert!(std_to_bform(&[r(1), r(2)], 2).is_err());
    }

    #[test]
    fn bivariate_examples() {
        let b = std_to_bform_multi(&[r(1), r(0), r(0), r(0)], &[1, 1]).unwrap();
        assert_eq!(b.coeffs, vec![r(1); 4]);
        let b = std_to_bform_multi(&[r(0), r(0), r(0), r(1)], &[1, 1]).unwrap();
        assert_eq!(b.coeffs, vec![r(0), r(0), r(0), r(1)]);
        let b = std_to_bform_multi(&[0.0, 1.0, 1.0, 0.0], &[1, 1]).unwrap();
        assert_eq!(b.coeffs, vec![0.0, 1.0, 1.0, 2.0]);
        assert!(std_to_bform_multi(&[0.0; 3], &[1, 1]).is_err());
    }

    #[test]
    fn parse_exact() {
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("1.25e-1").unwrap(), rat(1, 8));
        assert_eq!(parse_rational("12").unwrap(), r(12));
        assert_eq!(parse_rational("2.5").unwrap(), rat(5, 2));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
    }

    #[test]
    fn h2_certifies() {
        let h = h2_instance();
        assert_eq!(h.degrees, vec![11, 2]);
        // At δ = 0 and δ = 1 the substitution reduces to h₂(c, d₁(c)) and h₂(c, d₂(c)).
        for (delta, pick) in [(0, 0), (1, 1)] {
            let c = 0.375;
            let (d1, d2) = crate::optimizer::bounds_g1(c);
            let d = [d1, d2][pick];
            let want = 8.0 * d - 24.0 * c + 48.0 * c * c * d - 6.0 * c * d * d - 24.0 * c.powi(3) * d * d;
            let got = h.eval(&[rational_from_f64(c).unwrap(), r(delta)]).to_f64().unwrap();
            assert!((got - want).abs() < 1e-13, "{got} {want}");
        }
        let b = h.to_bform();
        assert!(certify_nonneg(&b).is_certified());
        let doc = PolyDocument::exact(&h);
        let back = PolyDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back.bform_exact().unwrap(), b);
    }

    #[test]
    fn document_errors() {
        assert!(PolyDocument::from_json("{").is_err());
        assert!(PolyDocument::from_json(r#"{"degrees":[2],"basis":"standard","coeffs":[1]}"#).is_err());
        let d = PolyDocument::from_json(r#"{"degrees":[2],"basis":"bform","coeffs":[1,"-2",1]}"#).unwrap();
        assert!(!certify_nonneg(&d.bform_exact().unwrap()).is_certified());
    }
}
