//! Exact arithmetic in the dyadic cyclotomic fields `Q(zeta_{2^N})`.
//!
//! A value at level `N >= 1` is stored by its coordinates over the power basis
//! `1, zeta, ..., zeta^{d-1}` with `d = 2^{N-1}` and `zeta^d = -1`; level 0 is
//! plain `Q`. Values are kept at their minimal level, so structural equality is
//! field equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Highest level accepted from user input (parser and JSON).
pub const MAX_LEVEL: u32 = 16;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyadicCyclotomic {
    level: u32,
    coords: Vec<Rational>,
}

/// The coefficient type of the algebra.
pub type Scalar = DyadicCyclotomic;

fn dim(level: u32) -> usize {
    if level == 0 {
        1
    } else {
        1usize << (level - 1)
    }
}

impl DyadicCyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        DyadicCyclotomic { level: 0, coords: vec![r] }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `p/q`; panics when `q == 0`.
    pub fn rational(p: i64, q: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `2^{-k}`.
    pub fn dyadic(k: u32) -> Self {
        Self::from_rational(Rational::new(BigInt::one(), BigInt::one() << k))
    }

    /// `zeta_{2^level}^exponent`, level-minimized.
    pub fn cyclo(level: u32, exponent: i64) -> Self {
        if level == 0 {
            return Self::one();
        }
        let order = 1i64 << level;
        let d = dim(level);
        let e = exponent.rem_euclid(order) as usize;
        let mut coords = vec![Rational::zero(); d];
        if e < d {
            coords[e] = Rational::one();
        } else {
            coords[e - d] = -Rational::one();
        }
        Self::from_coords(level, coords)
    }

    /// Builds a value from raw coordinates at `level` and minimizes it.
    pub fn from_coords(level: u32, coords: Vec<Rational>) -> Self {
        assert_eq!(coords.len(), dim(level), "coordinate count does not match level");
        let mut x = DyadicCyclotomic { level, coords };
        x.minimize();
        x
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    fn minimize(&mut self) {
        while self.level > 0 {
            if self.coords.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
                break;
            }
            let coarse: Vec<Rational> = self.coords.iter().step_by(2).cloned().collect();
            self.level -= 1;
            self.coords = coarse;
        }
    }

    fn promoted(&self, level: u32) -> Vec<Rational> {
        debug_assert!(level >= self.level);
        if level == self.level {
            return self.coords.clone();
        }
        let mut out = vec![Rational::zero(); dim(level)];
        if self.level == 0 {
            out[0] = self.coords[0].clone();
        } else {
            let stride = 1usize << (level - self.level);
            for (k, c) in self.coords.iter().enumerate() {
                out[k * stride] = c.clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.level == 0 && self.coords[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.level == 0 && self.coords[0].is_one()
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.level == 0).then(|| &self.coords[0])
    }

    /// Complex conjugation, `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        if self.level <= 1 {
            return self.clone();
        }
        let d = self.coords.len();
        let mut out = vec![Rational::zero(); d];
        out[0] = self.coords[0].clone();
        for k in 1..d {
            out[d - k] = -self.coords[k].clone();
        }
        DyadicCyclotomic { level: self.level, coords: out }
    }

    /// The Galois conjugate `zeta -> -zeta`; fixes the subfield one level down.
    fn sign_twist(&self) -> Self {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        DyadicCyclotomic { level: self.level, coords }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.level == 0 {
            return Ok(Self::from_rational(self.coords[0].recip()));
        }
        let twist = self.sign_twist();
        // x * twist(x) lies one level down, so the recursion terminates.
        let norm = self * &twist;
        debug_assert!(norm.level < self.level);
        Ok(&twist * &norm.inv()?)
    }

    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// `|x| = 1`, checked exactly as `x * conj(x) = 1`.
    pub fn is_unimodular(&self) -> bool {
        (self * &self.conj()).is_one()
    }

    /// If the value is `zeta_{2^N}^k` for some `N, k`, returns `(N, k)` at the minimal level.
    pub fn as_root_of_unity(&self) -> Option<(u32, i64)> {
        if self.level == 0 {
            let r = &self.coords[0];
            if r.is_one() {
                return Some((0, 0));
            }
            if (-r).is_one() {
                return Some((1, 1));
            }
            return None;
        }
        let nonzero: Vec<usize> =
            (0..self.coords.len()).filter(|&k| !self.coords[k].is_zero()).collect();
        if nonzero.len() != 1 {
            return None;
        }
        let k = nonzero[0];
        let c = &self.coords[k];
        if c.is_one() {
            Some((self.level, k as i64))
        } else if (-c).is_one() {
            Some((self.level, (k + self.coords.len()) as i64))
        } else {
            None
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        if self.level == 0 {
            return Complex64::new(rat_to_f64(&self.coords[0]), 0.0);
        }
        let order = (1u64 << self.level) as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / order;
            acc += Complex64::from_polar(1.0, theta) * rat_to_f64(c);
        }
        acc
    }

    /// Nonzero `(exponent, coefficient)` pairs over powers of `zeta_{2^level}`.
    fn nonzero_terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// True when the text form is a single signed monomial, i.e. needs no parentheses
    /// when used as a coefficient.
    pub fn is_simple(&self) -> bool {
        self.nonzero_terms().count() <= 1
    }

    /// Whether the text form begins with a minus sign.
    pub fn is_negative_leading(&self) -> bool {
        self.is_simple() && self.nonzero_terms().next().is_some_and(|(_, c)| c.is_negative())
    }
}

fn rat_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
    })
}

pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for DyadicCyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let order = 1u64 << self.level;
        let mut first = true;
        for (k, c) in self.nonzero_terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let root = match k {
                0 => None,
                1 => Some(format!("zeta({order})")),
                _ => Some(format!("zeta({order})^{k}")),
            };
            match root {
                None => write!(f, "{}", fmt_rational(&abs))?,
                Some(root) if abs.is_one() => write!(f, "{root}")?,
                Some(root) => write!(f, "{} {root}", fmt_rational(&abs))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DyadicCyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Default for DyadicCyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for DyadicCyclotomic {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for DyadicCyclotomic {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl Add for &DyadicCyclotomic {
    type Output = DyadicCyclotomic;
    fn add(self, rhs: &DyadicCyclotomic) -> DyadicCyclotomic {
        let level = self.level.max(rhs.level);
        let mut a = self.promoted(level);
        for (x, y) in a.iter_mut().zip(rhs.promoted(level)) {
            *x += y;
        }
        DyadicCyclotomic::from_coords(level, a)
    }
}

impl Mul for &DyadicCyclotomic {
    type Output = DyadicCyclotomic;
    fn mul(self, rhs: &DyadicCyclotomic) -> DyadicCyclotomic {
        if self.level == 0 {
            let s = &self.coords[0];
            let coords = rhs.coords.iter().map(|c| c * s).collect();
            return DyadicCyclotomic::from_coords(rhs.level, coords);
        }
        if rhs.level == 0 {
            return rhs * self;
        }
        let level = self.level.max(rhs.level);
        let a = self.promoted(level);
        let b = rhs.promoted(level);
        let d = a.len();
        let mut out = vec![Rational::zero(); d];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let p = x * y;
                // zeta^d = -1
                if i + j < d {
                    out[i + j] += p;
                } else {
                    out[i + j - d] -= p;
                }
            }
        }
        DyadicCyclotomic::from_coords(level, out)
    }
}

impl Neg for &DyadicCyclotomic {
    type Output = DyadicCyclotomic;
    fn neg(self) -> DyadicCyclotomic {
        DyadicCyclotomic {
            level: self.level,
            coords: self.coords.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl Sub for &DyadicCyclotomic {
    type Output = DyadicCyclotomic;
    fn sub(self, rhs: &DyadicCyclotomic) -> DyadicCyclotomic {
        self + &(-rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for DyadicCyclotomic {
            type Output = DyadicCyclotomic;
            fn $m(self, rhs: DyadicCyclotomic) -> DyadicCyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&DyadicCyclotomic> for DyadicCyclotomic {
            type Output = DyadicCyclotomic;
            fn $m(self, rhs: &DyadicCyclotomic) -> DyadicCyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for DyadicCyclotomic {
    type Output = DyadicCyclotomic;
    fn neg(self) -> DyadicCyclotomic {
        -&self
    }
}

impl AddAssign<&DyadicCyclotomic> for DyadicCyclotomic {
    fn add_assign(&mut self, rhs: &DyadicCyclotomic) {
        *self = &*self + rhs;
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    level: u32,
    coords: Vec<[String; 2]>,
}

impl Serialize for DyadicCyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarRepr {
            level: self.level,
            coords: self
                .coords
                .iter()
                .map(|c| [c.numer().to_string(), c.denom().to_string()])
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DyadicCyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ScalarRepr::deserialize(deserializer)?;
        if repr.level > MAX_LEVEL {
            return Err(D::Error::custom(format!("level {} exceeds {MAX_LEVEL}", repr.level)));
        }
        if repr.coords.len() != dim(repr.level) {
            return Err(D::Error::custom("coordinate count does not match level"));
        }
        let mut coords = Vec::with_capacity(repr.coords.len());
        for [p, q] in repr.coords {
            let p: BigInt = p.parse().map_err(D::Error::custom)?;
            let q: BigInt = q.parse().map_err(D::Error::custom)?;
            if q.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            coords.push(Rational::new(p, q));
        }
        Ok(DyadicCyclotomic::from_coords(repr.level, coords))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn cyclo_examples() {
        assert!(DyadicCyclotomic::cyclo(0, 0).is_one());
        assert_eq!(DyadicCyclotomic::cyclo(1, 1), DyadicCyclotomic::from_integer(-1));
        let i = DyadicCyclotomic::cyclo(3, 2);
        assert_eq!(i.level(), 2);
        assert_eq!(i, DyadicCyclotomic::cyclo(2, 1));
        assert!(close(i.to_complex(), Complex64::new(0.0, 1.0), 1e-15));
        assert_eq!(DyadicCyclotomic::cyclo(3, 19), DyadicCyclotomic::cyclo(3, 3));
        assert_eq!(DyadicCyclotomic::cyclo(4, -1), DyadicCyclotomic::cyclo(4, 15));
    }

    #[test]
    fn field_op_examples() {
        let i = DyadicCyclotomic::cyclo(2, 1);
        assert_eq!(&i * &i, DyadicCyclotomic::from_integer(-1));
        assert_eq!(DyadicCyclotomic::cyclo(3, 1).conj(), DyadicCyclotomic::cyclo(3, 7));
        let inv = i.inv().unwrap();
        assert_eq!(inv, DyadicCyclotomic::cyclo(2, 3));
        assert!((&inv * &i).is_one());
        assert_eq!(DyadicCyclotomic::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverse_of_general_element() {
        // 1 + zeta_8 + 1/3 zeta_8^3
        let x = DyadicCyclotomic::one()
            + DyadicCyclotomic::cyclo(3, 1)
            + DyadicCyclotomic::rational(1, 3) * DyadicCyclotomic::cyclo(3, 3);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        let z = x.to_complex() * y.to_complex();
        assert!(close(z, Complex64::new(1.0, 0.0), 1e-12));
    }

    #[test]
    fn to_complex_examples() {
        assert_eq!(DyadicCyclotomic::one().to_complex(), Complex64::new(1.0, 0.0));
        assert!(close(DyadicCyclotomic::cyclo(2, 1).to_complex(), Complex64::new(0.0, 1.0), 1e-15));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(DyadicCyclotomic::cyclo(3, 1).to_complex(), Complex64::new(h, h), 1e-12));
    }

    #[test]
    fn mixed_level_addition_promotes() {
        let s = DyadicCyclotomic::cyclo(2, 1) + DyadicCyclotomic::cyclo(3, 1);
        assert_eq!(s.level(), 3);
        let back = s - DyadicCyclotomic::cyclo(3, 1);
        assert_eq!(back.level(), 2);
    }

    #[test]
    fn display_forms() {
        assert_eq!(DyadicCyclotomic::rational(-3, 6).to_string(), "-1/2");
        assert_eq!(DyadicCyclotomic::cyclo(2, 1).to_string(), "zeta(4)");
        assert_eq!(DyadicCyclotomic::cyclo(3, 3).to_string(), "zeta(8)^3");
        assert_eq!(DyadicCyclotomic::cyclo(3, 5).to_string(), "-zeta(8)");
        let s = DyadicCyclotomic::rational(1, 2) + DyadicCyclotomic::cyclo(3, 2);
        assert_eq!(s.to_string(), "1/2 + zeta(4)");
    }

    #[test]
    fn json_roundtrip() {
        let x = DyadicCyclotomic::rational(1, 2) + DyadicCyclotomic::cyclo(3, 3);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"level":3,"coords":[["1","2"],["0","1"],["0","1"],["1","1"]]}"#);
        let y: DyadicCyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        assert!(serde_json::from_str::<DyadicCyclotomic>(r#"{"level":2,"coords":[["1","0"],["0","1"]]}"#).is_err());
    }

    #[test]
    fn root_of_unity_detection() {
        assert_eq!(DyadicCyclotomic::cyclo(3, 5).as_root_of_unity(), Some((3, 5)));
        assert_eq!(DyadicCyclotomic::from_integer(-1).as_root_of_unity(), Some((1, 1)));
        assert_eq!(DyadicCyclotomic::from_integer(2).as_root_of_unity(), None);
    }
}
