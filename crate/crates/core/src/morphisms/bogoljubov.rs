use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::Endomorphism;

const TOL: f64 = 1e-12;

/// A matrix entry, either exact or floating.
#[derive(Clone, Debug, PartialEq)]
pub enum Entry {
    Exact(Scalar),
    Float(Complex64),
}

impl Entry {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Entry::Exact(s) => s.to_complex(),
            Entry::Float(z) => *z,
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Exact(s) => write!(f, "{s}"),
            Entry::Float(z) => write!(f, "{}{:+}i", z.re, z.im),
        }
    }
}

/// `A = (a b; c d)` acting by `S1 -> a S1 + c S2`, `S2 -> b S1 + d S2`.
#[derive(Clone, Debug, PartialEq)]
pub enum BogoljubovMatrix {
    Exact([Scalar; 4]),
    Float([Complex64; 4]),
}

impl BogoljubovMatrix {
    pub fn exact(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Self {
        BogoljubovMatrix::Exact([a, b, c, d])
    }

    pub fn float(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        BogoljubovMatrix::Float([a, b, c, d])
    }

    fn is_unitary(&self) -> bool {
        match self {
            BogoljubovMatrix::Exact([a, b, c, d]) => {
                let n = |x: &Scalar, y: &Scalar| &x.conj() * x + &y.conj() * y;
                n(a, c).is_one() && n(b, d).is_one() && (&a.conj() * b + &c.conj() * d).is_zero()
            }
            BogoljubovMatrix::Float([a, b, c, d]) => {
                let n = |x: Complex64, y: Complex64| x.norm_sqr() + y.norm_sqr();
                (n(*a, *c) - 1.0).abs() <= TOL
                    && (n(*b, *d) - 1.0).abs() <= TOL
                    && (a.conj() * b + c.conj() * d).norm() <= TOL
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BogoljubovClass {
    Gauge(Entry),
    FlipFlopGauge(Entry),
    NotExtensible,
}

impl BogoljubovClass {
    /// The extension to `Q2`, when the class has one and the parameter is exact.
    pub fn extension(&self) -> Option<Endomorphism> {
        match self {
            BogoljubovClass::Gauge(Entry::Exact(z)) => Endomorphism::gauge(z.clone()).ok(),
            BogoljubovClass::FlipFlopGauge(Entry::Exact(z)) => {
                let g = Endomorphism::gauge(z.clone()).ok()?;
                Some(g.compose(&Endomorphism::flipflop()))
            }
            _ => None,
        }
    }
}

impl fmt::Display for BogoljubovClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BogoljubovClass::Gauge(z) => write!(f, "Gauge({z})"),
            BogoljubovClass::FlipFlopGauge(z) => write!(f, "FlipFlopGauge({z})"),
            BogoljubovClass::NotExtensible => write!(f, "NotExtensible"),
        }
    }
}

/// Decides whether the Bogoljubov automorphism of `O2` given by `A` extends to `Q2`.
pub fn bogoljubov_classify(m: &BogoljubovMatrix) -> Result<BogoljubovClass> {
    if !m.is_unitary() {
        return Err(Error::NotUnitary("Bogoljubov matrix".into()));
    }
    Ok(match m {
        BogoljubovMatrix::Exact([a, b, c, d]) => {
            if b.is_zero() && c.is_zero() && a == d {
                BogoljubovClass::Gauge(Entry::Exact(a.clone()))
            } else if a.is_zero() && d.is_zero() && b == c {
                BogoljubovClass::FlipFlopGauge(Entry::Exact(b.clone()))
            } else {
                BogoljubovClass::NotExtensible
            }
        }
        BogoljubovMatrix::Float([a, b, c, d]) => {
            let small = |z: &Complex64| z.norm() <= TOL;
            if small(b) && small(c) && small(&(a - d)) {
                BogoljubovClass::Gauge(Entry::Float(*a))
            } else if small(a) && small(d) && small(&(b - c)) {
                BogoljubovClass::FlipFlopGauge(Entry::Float(*b))
            } else {
                BogoljubovClass::NotExtensible
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Element, Generator};

    #[test]
    fn classify_examples() {
        let z = Scalar::cyclo(3, 3);
        let zero = Scalar::zero();
        let diag = BogoljubovMatrix::exact(z.clone(), zero.clone(), zero.clone(), z.clone());
        assert_eq!(bogoljubov_classify(&diag).unwrap(), BogoljubovClass::Gauge(Entry::Exact(z.clone())));
        let anti = BogoljubovMatrix::exact(zero.clone(), z.clone(), z.clone(), zero.clone());
        assert_eq!(
            bogoljubov_classify(&anti).unwrap(),
            BogoljubovClass::FlipFlopGauge(Entry::Exact(z.clone()))
        );
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let h = BogoljubovMatrix::float(r.into(), r.into(), r.into(), (-r).into());
        assert_eq!(bogoljubov_classify(&h).unwrap(), BogoljubovClass::NotExtensible);
        let two = BogoljubovMatrix::float(2.0.into(), 0.0.into(), 0.0.into(), 1.0.into());
        assert!(matches!(bogoljubov_classify(&two), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn exact_hadamard_over_zeta8() {
        // 1/sqrt(2) = (zeta + zeta^-1) / 2 with zeta = zeta(8)
        let r = (Scalar::cyclo(3, 1) + Scalar::cyclo(3, -1)) * Scalar::rational(1, 2);
        let h = BogoljubovMatrix::exact(r.clone(), r.clone(), r.clone(), -r);
        assert_eq!(bogoljubov_classify(&h).unwrap(), BogoljubovClass::NotExtensible);
        let diag = BogoljubovMatrix::exact(Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::cyclo(2, 1));
        assert_eq!(bogoljubov_classify(&diag).unwrap(), BogoljubovClass::NotExtensible);
    }

    #[test]
    fn extensions_act_as_the_matrix() {
        let w = Scalar::cyclo(2, 1);
        let zero = Scalar::zero();
        let s1 = Element::generator(Generator::S1);
        let s2 = Element::generator(Generator::S2);
        let anti = BogoljubovMatrix::exact(zero.clone(), w.clone(), w.clone(), zero);
        let e = bogoljubov_classify(&anti).unwrap().extension().unwrap();
        assert!(e.apply(&s1).equals(&s2.scale(&w)));
        assert!(e.apply(&s2).equals(&s1.scale(&w)));
    }
}
