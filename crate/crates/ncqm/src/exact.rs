//! Exact scalars: complex rationals and closed-form integral values of the
//! shape `q * pi^(p/2) * sqrt(d)` with `q` rational and `d` squarefree.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64()
        .unwrap_or_else(|| r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap())
}

/// Complex number with exact rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CRat {
    pub re: Rat,
    pub im: Rat,
}

impl CRat {
    pub fn zero() -> Self {
        CRat { re: Rat::zero(), im: Rat::zero() }
    }

    pub fn one() -> Self {
        CRat { re: Rat::one(), im: Rat::zero() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        CRat { re: Rat::zero(), im: Rat::one() }
    }

    pub fn from_int(n: i64) -> Self {
        CRat { re: rat_int(n), im: Rat::zero() }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        CRat { re: rat(n, d), im: Rat::zero() }
    }

    pub fn from_rat(r: Rat) -> Self {
        CRat { re: r, im: Rat::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        CRat { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        CRat { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    pub fn sub(&self, other: &Self) -> Self {
        CRat { re: &self.re - &other.re, im: &self.im - &other.im }
    }

    pub fn neg(&self) -> Self {
        CRat { re: -self.re.clone(), im: -self.im.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        CRat {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        CRat { re: &self.re * r, im: &self.im * r }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        let n = &self.re * &self.re + &self.im * &self.im;
        assert!(!n.is_zero(), "division by zero CRat");
        CRat { re: &self.re / &n, im: -(&self.im / &n) }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    /// The real part, if exactly real.
    pub fn as_real(&self) -> Option<Rat> {
        if self.im.is_zero() {
            Some(self.re.clone())
        } else {
            None
        }
    }
}

impl fmt::Display for CRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Splits sqrt(r) for positive rational r into `mult * sqrt(d)` with d a
/// squarefree positive integer.
fn sqrt_split(r: &Rat) -> (Rat, BigInt) {
    assert!(r.is_positive(), "sqrt of non-positive rational");
    // sqrt(p/q) = sqrt(p*q)/q
    let q = r.denom().clone();
    let mut n: BigInt = r.numer() * &q;
    let mut square_part = BigInt::one();
    let mut f = BigInt::from(2);
    let cap = BigInt::from(1_000_000u64);
    while &f * &f <= n && f <= cap {
        let f2 = &f * &f;
        while (&n % &f2).is_zero() {
            n /= &f2;
            square_part *= &f;
        }
        f += 1;
    }
    (Rat::new(square_part, q), n)
}

/// Exact value of a closed-form integral: a finite sum of terms
/// `c * pi^(p/2) * sqrt(d)` keyed by `(p, d)` with d squarefree.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ExactValue {
    terms: BTreeMap<(i64, BigInt), CRat>,
}

impl ExactValue {
    pub fn zero() -> Self {
        ExactValue { terms: BTreeMap::new() }
    }

    pub fn from_crat(c: CRat) -> Self {
        let mut v = ExactValue::zero();
        v.push(0, &Rat::one(), c);
        v
    }

    pub fn from_rat(r: Rat) -> Self {
        ExactValue::from_crat(CRat::from_rat(r))
    }

    /// Adds `c * pi^(pi_half/2) * sqrt(radicand)`; the radicand is
    /// normalized to squarefree form.
    pub fn push(&mut self, pi_half: i64, radicand: &Rat, c: CRat) {
        if c.is_zero() {
            return;
        }
        let (mult, d) = sqrt_split(radicand);
        let coeff = c.mul_rat(&mult);
        let key = (pi_half, d);
        let entry = self.terms.entry(key.clone()).or_insert_with(CRat::zero);
        *entry = entry.add(&coeff);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((p, d), c) in &other.terms {
            let entry = out.terms.entry((*p, d.clone())).or_insert_with(CRat::zero);
            *entry = entry.add(c);
            if entry.is_zero() {
                out.terms.remove(&(*p, d.clone()));
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ExactValue {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &CRat) -> Self {
        if c.is_zero() {
            return ExactValue::zero();
        }
        ExactValue {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.mul(c))).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        ExactValue {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.conj())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = ExactValue::zero();
        for ((p1, d1), c1) in &self.terms {
            for ((p2, d2), c2) in &other.terms {
                let rad = Rat::from_integer(d1 * d2);
                out.push(p1 + p2, &rad, c1.mul(c2));
            }
        }
        out
    }

    /// Divides by a single-term exact value; returns None when the divisor
    /// is zero or has more than one term.
    pub fn try_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.terms.len() != 1 {
            return None;
        }
        let ((pd, dd), cd) = divisor.terms.iter().next().unwrap();
        let cd_inv = cd.inv();
        let mut out = ExactValue::zero();
        for ((p, d), c) in &self.terms {
            // sqrt(d)/sqrt(dd) = sqrt(d*dd)/dd
            let rad = Rat::new(d * dd, dd * dd);
            out.push(p - pd, &rad, c.mul(&cd_inv));
        }
        Some(out)
    }

    /// The rational value, if the exact value is purely rational.
    pub fn as_rational(&self) -> Option<CRat> {
        if self.terms.is_empty() {
            return Some(CRat::zero());
        }
        if self.terms.len() == 1 {
            let ((p, d), c) = self.terms.iter().next().unwrap();
            if *p == 0 && d.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    /// The rational r with value = r * pi, if of exactly that shape.
    pub fn as_rational_pi(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let ((p, d), c) = self.terms.iter().next().unwrap();
            if *p == 2 && d.is_one() && c.im.is_zero() {
                return Some(c.re.clone());
            }
        }
        None
    }

    pub fn to_c64(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((p, d), c) in &self.terms {
            let pi_pow = std::f64::consts::PI.powf(*p as f64 / 2.0);
            let sq = d.to_f64().unwrap().sqrt();
            acc += c.to_c64() * pi_pow * sq;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.to_c64().re
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((p, d), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            if *p != 0 {
                if p % 2 == 0 {
                    write!(f, "*pi^{}", p / 2)?;
                } else {
                    write!(f, "*pi^({}/2)", p)?;
                }
            }
            if !d.is_one() {
                write!(f, "*sqrt({})", d)?;
            }
        }
        Ok(())
    }
}
