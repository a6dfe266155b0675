//! The diagonal unitaries `U_z e_k = z^k e_k` and isometries `S'_z e_k = z^k e_{2k}`
//! for dyadic roots of unity, and a finite-depth test of 2-adic continuity.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use crate::algebra::{membership, pow2, Element, Generator, Monomial, MultiIndex, Subalgebra};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, MAX_LEVEL};

/// `e^{2 pi i exponent / order}`, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    order: u64,
    exponent: u64,
}

impl RootOfUnity {
    pub fn new(order: u64, exponent: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidInput("root of unity of order 0".into()));
        }
        let e = exponent.rem_euclid(order as i64) as u64;
        let g = e.gcd(&order);
        Ok(RootOfUnity { order: order / g, exponent: e / g })
    }

    pub fn one() -> Self {
        RootOfUnity { order: 1, exponent: 0 }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_dyadic(&self) -> bool {
        self.order.is_power_of_two()
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::TAU * self.exponent as f64 / self.order as f64)
    }

    /// The exact scalar, for dyadic orders up to `2^MAX_LEVEL`.
    pub fn to_scalar(&self) -> Option<Scalar> {
        let n = self.dyadic_level()?;
        Some(Scalar::cyclo(n, self.exponent as i64))
    }

    fn dyadic_level(&self) -> Option<u32> {
        let n = self.order.trailing_zeros();
        (self.is_dyadic() && n <= MAX_LEVEL).then_some(n)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp(2 pi i {}/{})", self.exponent, self.order)
    }
}

fn check_level(n: u32) -> Result<()> {
    if n > MAX_LEVEL {
        return Err(Error::InvalidInput(format!("level {n} exceeds {MAX_LEVEL}")));
    }
    Ok(())
}

/// `U_z = sum_l z^l P_l` for `z = zeta_{2^n}`, with `P_l` the projection onto `l + 2^n Z`.
pub fn build_uz(n: u32) -> Result<Element> {
    build_uz_power(n, 1)
}

/// `U_{z^e}` for `z = zeta_{2^n}`.
pub fn build_uz_power(n: u32, e: i64) -> Result<Element> {
    check_level(n)?;
    Ok(Element::from_terms(
        (0..pow2(n)).map(|l| (Monomial::new(l, n, n, -l), Scalar::cyclo(n, l * e))),
    ))
}

/// `U_z` for a dyadic root; `None` otherwise, as non-dyadic `U_z` lie outside `Q2`.
pub fn build_uz_root(z: &RootOfUnity) -> Option<Element> {
    let n = z.dyadic_level()?;
    build_uz_power(n, z.exponent as i64).ok()
}

/// `S'_z = S2 U_z`.
pub fn build_sz(n: u32) -> Result<Element> {
    Ok(&Element::generator(Generator::S2) * &build_uz(n)?)
}

/// Verifies `U_z U = z U U_z`, `U_z S2 = S'_z U_z` and `S2* S'_z = U_z`.
pub fn check_uz_relations(n: u32) -> Result<bool> {
    let uz = build_uz(n)?;
    let sz = build_sz(n)?;
    let u = Element::generator(Generator::U);
    let s2 = Element::generator(Generator::S2);
    let z = Scalar::cyclo(n, 1);
    if !(&uz * &u).equals(&(&u * &uz).scale(&z)) {
        return Err(Error::RelationViolated("U_z U != z U U_z".into()));
    }
    if !(&uz * &s2).equals(&(&sz * &uz)) {
        return Err(Error::RelationViolated("U_z S2 != S'_z U_z".into()));
    }
    if !(&s2.adjoint() * &sz).equals(&uz) {
        return Err(Error::RelationViolated("S2* S'_z != U_z".into()));
    }
    Ok(true)
}

/// `U_z` lies in `D2` iff the order of `z` is a power of 2.
pub fn membership_uz(z: &RootOfUnity) -> bool {
    if !z.is_dyadic() {
        return false;
    }
    match build_uz_root(z) {
        Some(uz) => {
            let inside = membership(&uz, Subalgebra::D2);
            debug_assert!(inside);
            inside
        }
        // dyadic but beyond the exact scalar range
        None => true,
    }
}

/// The length-`k` multi-index `alpha` with `S_alpha S_alpha* = P_j`.
pub fn lex_multiindex(j: i64, k: u32) -> Result<MultiIndex> {
    MultiIndex::from_label(j, k)
}

/// Two points in the same class mod `2^level` whose values differ by `distance`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ContinuityWitness {
    pub level: u32,
    pub j: i64,
    pub k: i64,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Continuity {
    Continuous { depth: u32, oscillations: Vec<f64> },
    Obstructed { depth: u32, oscillations: Vec<f64>, witness: ContinuityWitness },
}

impl Continuity {
    pub fn is_continuous(&self) -> bool {
        matches!(self, Continuity::Continuous { .. })
    }

    /// `osc_m` for `m = 1..=depth`.
    pub fn oscillations(&self) -> &[f64] {
        match self {
            Continuity::Continuous { oscillations, .. } | Continuity::Obstructed { oscillations, .. } => {
                oscillations
            }
        }
    }
}

/// Finite-depth test that `k -> f(k)` extends continuously to the 2-adic integers.
///
/// Computes `osc_m`, the largest `|f(j) - f(k)|` with `j = k mod 2^m` and
/// `|j|, |k| <= 2^{depth+2}`. Continuous when `osc_depth < tol` and the
/// sequence does not increase (beyond `tol`).
pub fn two_adic_continuity(f: impl Fn(i64) -> Complex64, depth: u32, tol: f64) -> Result<Continuity> {
    if !(2..=20).contains(&depth) {
        return Err(Error::InvalidInput(format!("depth must lie in 2..=20, got {depth}")));
    }
    let bound = 1i64 << (depth + 2);
    let samples: Vec<(i64, Complex64)> = (-bound..=bound).map(|k| (k, f(k))).collect();
    let mut oscillations = Vec::with_capacity(depth as usize);
    let mut witnesses = Vec::with_capacity(depth as usize);
    for m in 1..=depth {
        let w = class_oscillation(&samples, m);
        oscillations.push(w.distance);
        witnesses.push(w);
    }
    let last = witnesses[depth as usize - 1];
    if last.distance >= tol {
        return Ok(Continuity::Obstructed { depth, oscillations, witness: last });
    }
    for m in 1..depth as usize {
        if oscillations[m] > oscillations[m - 1] + tol {
            return Ok(Continuity::Obstructed { depth, oscillations, witness: witnesses[m] });
        }
    }
    Ok(Continuity::Continuous { depth, oscillations })
}

fn class_oscillation(samples: &[(i64, Complex64)], m: u32) -> ContinuityWitness {
    let modulus = 1i64 << m;
    let mut classes: Vec<Vec<(i64, Complex64)>> = vec![Vec::new(); modulus as usize];
    for &(k, v) in samples {
        let class = &mut classes[k.rem_euclid(modulus) as usize];
        if !class.iter().any(|&(_, w)| w == v) {
            class.push((k, v));
        }
    }
    let mut best = ContinuityWitness { level: m, j: 0, k: 0, distance: 0.0 };
    for class in &classes {
        for (i, &(j, a)) in class.iter().enumerate() {
            for &(k, b) in &class[i + 1..] {
                let d = (a - b).norm();
                if d > best.distance {
                    best = ContinuityWitness { level: m, j, k, distance: d };
                }
            }
        }
    }
    best
}
