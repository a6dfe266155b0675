use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::algebra::{membership, Element, Monomial, Subalgebra};
use crate::error::{Error, Result};
use crate::expectations::e_cu;
use crate::scalar::{Scalar, MAX_LEVEL};

use super::DyadicGridFunction;

/// A Laurent polynomial `sum c_k z^k` on the unit circle with exact coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentCircleFunction {
    coeffs: BTreeMap<i64, Scalar>,
}

impl LaurentCircleFunction {
    pub fn new(coeffs: BTreeMap<i64, Scalar>) -> Self {
        let mut f = LaurentCircleFunction { coeffs };
        f.coeffs.retain(|_, c| !c.is_zero());
        f
    }

    pub fn constant(c: Scalar) -> Self {
        LaurentCircleFunction::monomial(c, 0)
    }

    /// `w z^n`.
    pub fn monomial(w: Scalar, n: i64) -> Self {
        LaurentCircleFunction::new(BTreeMap::from([(n, w)]))
    }

    pub fn character(n: i64) -> Self {
        LaurentCircleFunction::monomial(Scalar::one(), n)
    }

    /// Reads `x` as `f(U)`, when `x` lies in the span of the powers of `U`.
    pub fn from_element(x: &Element) -> Option<Self> {
        if !membership(x, Subalgebra::CU) {
            return None;
        }
        let mut coeffs = BTreeMap::new();
        for (m, c) in e_cu(x).terms() {
            coeffs.insert(m.c, c.clone());
        }
        Some(LaurentCircleFunction::new(coeffs))
    }

    /// `f(U)`.
    pub fn to_element(&self) -> Element {
        Element::from_terms(self.coeffs.iter().map(|(&k, c)| (Monomial::power_of_u(k), c.clone())))
    }

    pub fn coefficients(&self) -> &BTreeMap<i64, Scalar> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul(&self, rhs: &LaurentCircleFunction) -> LaurentCircleFunction {
        let mut out: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &rhs.coeffs {
                *out.entry(i + j).or_default() += &(a * b);
            }
        }
        LaurentCircleFunction::new(out)
    }

    pub fn pow(&self, n: u32) -> LaurentCircleFunction {
        let mut out = LaurentCircleFunction::constant(Scalar::one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// `z -> conj(f(z))` on the circle, i.e. `sum conj(c_k) z^-k`.
    pub fn conj(&self) -> LaurentCircleFunction {
        LaurentCircleFunction::new(self.coeffs.iter().map(|(&k, c)| (-k, c.conj())).collect())
    }

    /// `z -> f(z^n)`.
    pub fn compose_power(&self, n: i64) -> LaurentCircleFunction {
        let mut out: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (&k, c) in &self.coeffs {
            *out.entry(k * n).or_default() += c;
        }
        LaurentCircleFunction::new(out)
    }

    /// `f conj(f) = 1` as polynomials.
    pub fn is_t_valued(&self) -> bool {
        self.mul(&self.conj()) == LaurentCircleFunction::constant(Scalar::one())
    }

    /// `Some((w, n))` when `f = w z^n`.
    pub fn as_monomial(&self) -> Option<(Scalar, i64)> {
        match self.coeffs.iter().collect::<Vec<_>>().as_slice() {
            [(k, c)] => Some(((*c).clone(), **k)),
            _ => None,
        }
    }

    /// Exact value at `zeta_{2^level}^exponent`.
    pub fn eval_root(&self, level: u32, exponent: i64) -> Scalar {
        let mut out = Scalar::zero();
        for (&k, c) in &self.coeffs {
            out += &(c * &Scalar::cyclo(level, k.wrapping_mul(exponent)));
        }
        out
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().map(|(&k, c)| c.to_complex() * z.powi(k as i32)).sum()
    }

    pub fn sample(&self, level: u32) -> Result<DyadicGridFunction> {
        let n = 1i64 << level;
        let values = (0..n)
            .map(|j| {
                if level <= MAX_LEVEL {
                    self.eval_root(level, j).to_complex()
                } else {
                    self.eval(Complex64::from_polar(1.0, TAU * j as f64 / n as f64))
                }
            })
            .collect();
        DyadicGridFunction::new(level, values)
    }
}

impl fmt::Display for LaurentCircleFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&k, c)) in self.coeffs.iter().enumerate() {
            let (neg, c) = if c.is_negative_leading() { (true, -c.clone()) } else { (false, c.clone()) };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let z = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if z.is_empty() {
                write!(f, "{}", paren(&c))?;
            } else if c.is_one() {
                write!(f, "{z}")?;
            } else {
                write!(f, "{} {z}", paren(&c))?;
            }
        }
        Ok(())
    }
}

fn paren(c: &Scalar) -> String {
    if c.is_simple() {
        c.to_string()
    } else {
        format!("({c})")
    }
}

/// The unique `n` with `f = z^n`, for a circle-valued `f` with `f(z^2) = f(z)^2`.
pub fn solve_square_equation(f: &LaurentCircleFunction) -> Result<i64> {
    check_power_equation(f, 2)
}

/// Checks `f(z^n) = f(z)^n` for `1 <= n <= n_max` and returns `k` with `f = z^k`.
pub fn check_power_equation(f: &LaurentCircleFunction, n_max: u32) -> Result<i64> {
    if !f.is_t_valued() {
        return Err(Error::NotUnimodular);
    }
    for n in 2..=n_max {
        if f.compose_power(n as i64) != f.pow(n) {
            return Err(Error::NotASolution(format!("f(z^{n}) != f(z)^{n}")));
        }
    }
    match f.as_monomial() {
        Some((w, k)) if w.is_one() => Ok(k),
        _ => Err(Error::NotASolution(format!("{f} is not a character"))),
    }
}
