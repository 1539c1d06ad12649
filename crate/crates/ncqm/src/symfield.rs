//! Exact symbolic ring of fields `c * x^a * (r^2)^(s/2) * exp(-beta r^2) * exp(-gamma r)`.
//!
//! The ring is closed under addition, multiplication and partial
//! derivatives; integration over R^3 has a closed form whenever each term
//! carries at most one envelope.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::complex::Complex64;
use num::traits::Pow;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat_to_f64, CRat, ExactValue, Rat};

/// Canonical key of a term: monomial exponents, radial half-power s for
/// `(r^2)^(s/2)`, Gaussian rate beta and exponential rate gamma.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TermKey {
    pub mono: Vec<u32>,
    pub rad: i64,
    pub gauss: Rat,
    pub expo: Rat,
}

impl TermKey {
    pub fn constant(dim: usize) -> Self {
        TermKey { mono: vec![0; dim], rad: 0, gauss: Rat::zero(), expo: Rat::zero() }
    }
}

/// Element of the exact field ring: a canonical sum of keyed terms with
/// complex rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarField {
    dim: usize,
    terms: BTreeMap<TermKey, CRat>,
}

fn double_factorial(n: i64) -> BigInt {
    // (-1)!! = 1 by convention
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    acc
}

fn factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

impl ScalarField {
    pub fn zero(dim: usize) -> Self {
        ScalarField { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: CRat) -> Self {
        let mut f = ScalarField::zero(dim);
        f.add_term(TermKey::constant(dim), c);
        f
    }

    pub fn one(dim: usize) -> Self {
        ScalarField::constant(dim, CRat::one())
    }

    /// The coordinate x_i (zero-based axis).
    pub fn coord(dim: usize, axis: usize) -> Self {
        assert!(axis < dim);
        let mut key = TermKey::constant(dim);
        key.mono[axis] = 1;
        let mut f = ScalarField::zero(dim);
        f.add_term(key, CRat::one());
        f
    }

    /// `(r^2)^(s/2)`, i.e. r^s.
    pub fn radial_power(dim: usize, s: i64) -> Self {
        let mut key = TermKey::constant(dim);
        key.rad = s;
        let mut f = ScalarField::zero(dim);
        f.add_term(key, CRat::one());
        f
    }

    /// `exp(-beta r^2)` with beta >= 0.
    pub fn gaussian(dim: usize, beta: Rat) -> Self {
        assert!(!beta.is_negative());
        let mut key = TermKey::constant(dim);
        key.gauss = beta;
        let mut f = ScalarField::zero(dim);
        f.add_term(key, CRat::one());
        f
    }

    /// `exp(-gamma r)` with gamma >= 0.
    pub fn exponential(dim: usize, gamma: Rat) -> Self {
        assert!(!gamma.is_negative());
        let mut key = TermKey::constant(dim);
        key.expo = gamma;
        let mut f = ScalarField::zero(dim);
        f.add_term(key, CRat::one());
        f
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (TermKey, CRat)>) -> Self {
        let mut f = ScalarField::zero(dim);
        for (k, c) in terms {
            f.add_term(k, c);
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &CRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: TermKey, c: CRat) {
        debug_assert_eq!(key.mono.len(), self.dim);
        debug_assert!(!key.gauss.is_negative() && !key.expo.is_negative());
        if c.is_zero() {
            return;
        }
        // canonical form: the last coordinate appears at most linearly,
        // via x_d^2 = r^2 - sum_{i<d} x_i^2; this makes the representation
        // unique so mathematically zero fields are termwise zero
        let last = self.dim - 1;
        if key.mono[last] >= 2 {
            let mut base = key;
            base.mono[last] -= 2;
            let mut kr = base.clone();
            kr.rad += 2;
            self.add_term(kr, c.clone());
            for i in 0..last {
                let mut ki = base.clone();
                ki.mono[i] += 2;
                self.add_term(ki, c.neg());
            }
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(CRat::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ScalarField {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &CRat) -> Self {
        if c.is_zero() {
            return ScalarField::zero(self.dim);
        }
        ScalarField {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.mul(c))).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        ScalarField {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.conj())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        let mut out = ScalarField::zero(self.dim);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let key = TermKey {
                    mono: k1.mono.iter().zip(&k2.mono).map(|(a, b)| a + b).collect(),
                    rad: k1.rad + k2.rad,
                    gauss: &k1.gauss + &k2.gauss,
                    expo: &k1.expo + &k2.expo,
                };
                out.add_term(key, c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = ScalarField::one(self.dim);
        for _ in 0..n {
            acc = acc.mul(self).unwrap();
        }
        acc
    }

    /// Exact partial derivative along a zero-based axis.
    pub fn partial(&self, axis: usize) -> Self {
        assert!(axis < self.dim, "axis out of range");
        let mut out = ScalarField::zero(self.dim);
        for (k, c) in &self.terms {
            // monomial factor
            let a = k.mono[axis];
            if a > 0 {
                let mut key = k.clone();
                key.mono[axis] = a - 1;
                out.add_term(key, c.mul_rat(&Rat::from_integer(BigInt::from(a))));
            }
            // (r^2)^(s/2) factor: s * x_i * (r^2)^((s-2)/2)
            if k.rad != 0 {
                let mut key = k.clone();
                key.mono[axis] += 1;
                key.rad = k.rad - 2;
                out.add_term(key, c.mul_rat(&Rat::from_integer(BigInt::from(k.rad))));
            }
            // exp(-beta r^2) factor: -2 beta x_i
            if !k.gauss.is_zero() {
                let mut key = k.clone();
                key.mono[axis] += 1;
                let factor = -(&k.gauss + &k.gauss);
                out.add_term(key, c.mul_rat(&factor));
            }
            // exp(-gamma r) factor: -gamma x_i (r^2)^(-1/2)
            if !k.expo.is_zero() {
                let mut key = k.clone();
                key.mono[axis] += 1;
                key.rad = k.rad - 1;
                out.add_term(key, c.mul_rat(&(-k.expo.clone())));
            }
        }
        out
    }

    /// Applies a sequence of partial derivatives.
    pub fn partial_multi(&self, axes: &[usize]) -> Self {
        let mut f = self.clone();
        for &a in axes {
            f = f.partial(a);
        }
        f
    }

    pub fn laplacian(&self) -> Self {
        let mut out = ScalarField::zero(self.dim);
        for i in 0..self.dim {
            out = out.add(&self.partial(i).partial(i)).unwrap();
        }
        out
    }

    /// Derivative with respect to r^2, defined for purely radial fields
    /// (no monomial factors).
    pub fn radial_derivative(&self) -> Result<Self> {
        let mut out = ScalarField::zero(self.dim);
        for (k, c) in &self.terms {
            if k.mono.iter().any(|&a| a != 0) {
                return Err(Error::UnsupportedMeasure);
            }
            if k.rad != 0 {
                let mut key = k.clone();
                key.rad = k.rad - 2;
                out.add_term(key, c.mul_rat(&Rat::new(BigInt::from(k.rad), BigInt::from(2))));
            }
            if !k.gauss.is_zero() {
                out.add_term(k.clone(), c.mul_rat(&(-k.gauss.clone())));
            }
            if !k.expo.is_zero() {
                let mut key = k.clone();
                key.rad = k.rad - 1;
                out.add_term(key, c.mul_rat(&(-&k.expo / &Rat::from_integer(BigInt::from(2)))));
            }
        }
        Ok(out)
    }

    /// Floating-point evaluation at a point.
    pub fn evaluate(&self, point: &[f64]) -> Result<Complex64> {
        if point.len() != self.dim {
            return Err(Error::DimMismatch(self.dim, point.len()));
        }
        let r2: f64 = point.iter().map(|x| x * x).sum();
        let r = r2.sqrt();
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &self.terms {
            if r2 == 0.0 && (k.rad < 0 || k.expo.is_positive()) {
                return Err(Error::SingularEvaluation);
            }
            let mut v = 1.0_f64;
            for (x, &a) in point.iter().zip(&k.mono) {
                v *= x.powi(a as i32);
            }
            v *= r.powi(k.rad as i32);
            if !k.gauss.is_zero() {
                v *= (-rat_to_f64(&k.gauss) * r2).exp();
            }
            if !k.expo.is_zero() {
                v *= (-rat_to_f64(&k.expo) * r).exp();
            }
            acc += c.to_c64() * v;
        }
        Ok(acc)
    }

    /// Exact integral over R^3 by factorization into an angular moment and
    /// a radial Gamma-function integral. Each term must carry exactly one
    /// envelope (Gaussian or exponential).
    pub fn integrate_r3(&self) -> Result<ExactValue> {
        if self.dim != 3 {
            return Err(Error::NotThreeDimensional(self.dim));
        }
        let mut out = ExactValue::zero();
        for (k, c) in &self.terms {
            let (a, b, cc) = (k.mono[0] as i64, k.mono[1] as i64, k.mono[2] as i64);
            if a % 2 == 1 || b % 2 == 1 || cc % 2 == 1 {
                continue; // odd angular moment vanishes
            }
            let has_gauss = k.gauss.is_positive();
            let has_expo = k.expo.is_positive();
            if has_gauss && has_expo {
                return Err(Error::MixedEnvelope);
            }
            if !has_gauss && !has_expo {
                return Err(Error::Divergent("term has no decaying envelope".into()));
            }
            // angular moment: 4 pi (a-1)!!(b-1)!!(c-1)!!/(a+b+c+1)!!
            let angular = Rat::new(
                BigInt::from(4) * double_factorial(a - 1) * double_factorial(b - 1) * double_factorial(cc - 1),
                double_factorial(a + b + cc + 1),
            );
            let kk = a + b + cc + k.rad + 2;
            if kk < 0 {
                return Err(Error::Divergent(format!(
                    "radial power {} too negative at the origin",
                    kk - 2
                )));
            }
            if has_gauss {
                let beta = &k.gauss;
                if kk % 2 == 1 {
                    // 1/2 * ((k-1)/2)! * beta^(-(k+1)/2)
                    let half = (kk + 1) / 2;
                    let val = Rat::new(factorial((kk - 1) / 2), BigInt::from(2))
                        * beta.clone().pow(-(half as i32));
                    out.push(2, &Rat::one(), c.mul_rat(&(angular * val)));
                } else {
                    // (k-1)!! sqrt(pi) / (2^(k/2+1) beta^(k/2) sqrt(beta))
                    let m = kk / 2;
                    let val = Rat::new(double_factorial(kk - 1), BigInt::from(2).pow((m + 1) as u32))
                        * beta.clone().pow(-(m as i32));
                    let radicand = beta.clone().pow(-1i32);
                    out.push(3, &radicand, c.mul_rat(&(angular * val)));
                }
            } else {
                // k! / gamma^(k+1)
                let gamma = &k.expo;
                let val = Rat::from_integer(factorial(kk)) * gamma.clone().pow(-((kk + 1) as i32));
                out.push(2, &Rat::one(), c.mul_rat(&(angular * val)));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (i, &a) in k.mono.iter().enumerate() {
                if a == 1 {
                    write!(f, "*x{}", i + 1)?;
                } else if a > 1 {
                    write!(f, "*x{}^{}", i + 1, a)?;
                }
            }
            if k.rad != 0 {
                write!(f, "*r^{}", k.rad)?;
            }
            if !k.gauss.is_zero() {
                write!(f, "*exp(-{}*r^2)", k.gauss)?;
            }
            if !k.expo.is_zero() {
                write!(f, "*exp(-{}*r)", k.expo)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn x(i: usize) -> ScalarField {
        ScalarField::coord(3, i)
    }

    #[test]
    fn additive_inverse_cancels() {
        let f = x(0).add(&x(0).neg()).unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn like_terms_merge() {
        let r = ScalarField::radial_power(3, 1);
        let sum = r.add(&r).unwrap();
        assert_eq!(sum, r.scale(&CRat::from_int(2)));
        assert_eq!(sum.num_terms(), 1);
    }

    #[test]
    fn distinct_envelopes_stay_separate() {
        let g = x(0).mul(&ScalarField::gaussian(3, Rat::one())).unwrap();
        let e = x(0).mul(&ScalarField::exponential(3, Rat::one())).unwrap();
        let f = g.add(&e).unwrap();
        assert_eq!(f.num_terms(), 2);
    }

    #[test]
    fn mul_monomials_and_radial_cancellation() {
        let xx = x(0).mul(&x(0)).unwrap();
        let key = xx.terms().next().unwrap().0.clone();
        assert_eq!(key.mono, vec![2, 0, 0]);
        let r = ScalarField::radial_power(3, 1);
        let rinv = ScalarField::radial_power(3, -1);
        assert_eq!(r.mul(&rinv).unwrap(), ScalarField::one(3));
        let g = ScalarField::gaussian(3, Rat::one());
        let gg = g.mul(&g).unwrap();
        assert_eq!(gg, ScalarField::gaussian(3, rat_int(2)));
    }

    #[test]
    fn partial_of_monomial_and_radial() {
        let f = x(0).mul(&x(0)).unwrap();
        assert_eq!(f.partial(0), x(0).scale(&CRat::from_int(2)));
        let r = ScalarField::radial_power(3, 1);
        let dr = r.partial(0);
        let expect = x(0).mul(&ScalarField::radial_power(3, -1)).unwrap();
        assert_eq!(dr, expect);
    }

    #[test]
    fn partial_of_exponential_matches_finite_difference() {
        let f = ScalarField::exponential(3, Rat::one());
        let df = f.partial(0);
        let p = [0.3, 0.5, 0.7];
        let h = 1e-6;
        let fp = f.evaluate(&[p[0] + h, p[1], p[2]]).unwrap();
        let fm = f.evaluate(&[p[0] - h, p[1], p[2]]).unwrap();
        let fd = (fp - fm) / (2.0 * h);
        let exact = df.evaluate(&p).unwrap();
        assert!((fd - exact).norm() / exact.norm() < 1e-6);
    }

    #[test]
    fn evaluate_basic() {
        let f = x(0).mul(&x(0)).unwrap().add(&x(1).mul(&x(1)).unwrap()).unwrap();
        assert!((f.evaluate(&[1.0, 2.0, 0.0]).unwrap().re - 5.0).abs() < 1e-14);
        let r = ScalarField::radial_power(3, 1);
        assert!((r.evaluate(&[3.0, 4.0, 0.0]).unwrap().re - 5.0).abs() < 1e-14);
        let g = ScalarField::gaussian(3, Rat::one());
        assert!((g.evaluate(&[1.0, 1.0, 1.0]).unwrap().re - (-3.0f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn evaluate_singular_origin_rejected() {
        let f = ScalarField::radial_power(3, -1);
        assert_eq!(f.evaluate(&[0.0, 0.0, 0.0]), Err(Error::SingularEvaluation));
    }

    #[test]
    fn integrate_gaussian() {
        // int exp(-r^2) = pi^(3/2)
        let g = ScalarField::gaussian(3, Rat::one());
        let v = g.integrate_r3().unwrap();
        let mut expect = ExactValue::zero();
        expect.push(3, &Rat::one(), CRat::one());
        assert_eq!(v, expect);
    }

    #[test]
    fn integrate_odd_parity_is_zero() {
        let f = x(0).mul(&ScalarField::gaussian(3, Rat::one())).unwrap();
        assert!(f.integrate_r3().unwrap().is_zero());
    }

    #[test]
    fn integrate_radial_times_gaussian() {
        // int r exp(-r^2) d^3x = 4 pi int r^3 exp(-r^2) dr = 2 pi
        let f = ScalarField::radial_power(3, 1)
            .mul(&ScalarField::gaussian(3, Rat::one()))
            .unwrap();
        let v = f.integrate_r3().unwrap();
        let mut expect = ExactValue::zero();
        expect.push(2, &Rat::one(), CRat::from_int(2));
        assert_eq!(v, expect);
        assert!((v.to_f64() - 2.0 * std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn integrate_exponential() {
        // int exp(-2r) d^3x = 4 pi * 2!/2^3 = pi
        let f = ScalarField::exponential(3, rat_int(2));
        let v = f.integrate_r3().unwrap();
        let mut expect = ExactValue::zero();
        expect.push(2, &Rat::one(), CRat::one());
        assert_eq!(v, expect);
    }

    #[test]
    fn integrate_rejects_mixed_envelope() {
        let f = ScalarField::gaussian(3, Rat::one())
            .mul(&ScalarField::exponential(3, Rat::one()))
            .unwrap();
        assert_eq!(f.integrate_r3(), Err(Error::MixedEnvelope));
    }

    #[test]
    fn integrate_rejects_divergent() {
        let f = ScalarField::radial_power(3, -3)
            .mul(&ScalarField::gaussian(3, Rat::one()))
            .unwrap();
        assert!(matches!(f.integrate_r3(), Err(Error::Divergent(_))));
        assert!(matches!(x(0).pow(2).integrate_r3(), Err(Error::Divergent(_))));
    }

    #[test]
    fn display_is_canonical() {
        let f = x(2)
            .mul(&ScalarField::radial_power(3, -1))
            .unwrap()
            .scale(&CRat::from_ratio(1, 2))
            .add(&ScalarField::gaussian(3, rat(3, 2)))
            .unwrap();
        let s = format!("{}", f);
        assert_eq!(s, "(1)*exp(-3/2*r^2) + (1/2)*x3*r^-1");
    }

    #[test]
    fn mixed_partials_commute() {
        let f = x(0)
            .pow(2)
            .mul(&ScalarField::radial_power(3, -1))
            .unwrap()
            .mul(&ScalarField::exponential(3, Rat::one()))
            .unwrap();
        assert_eq!(f.partial(0).partial(1), f.partial(1).partial(0));
    }

    #[test]
    fn leibniz_rule_exact() {
        let f = x(0).mul(&ScalarField::radial_power(3, 1)).unwrap();
        let g = x(1).mul(&ScalarField::gaussian(3, Rat::one())).unwrap();
        let lhs = f.mul(&g).unwrap().partial(2);
        let rhs = f.partial(2).mul(&g).unwrap().add(&f.mul(&g.partial(2)).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
