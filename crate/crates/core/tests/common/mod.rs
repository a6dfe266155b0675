#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;

use q2::{Element, Monomial, Scalar};

/// A scalar of level <= 3 with small integer or half-integer coordinates.
pub fn random_scalar<R: Rng>(rng: &mut R) -> Scalar {
    let level = rng.gen_range(0..=3u32);
    let dim = if level == 0 { 1 } else { 1usize << (level - 1) };
    let coords = (0..dim)
        .map(|_| BigRational::new(BigInt::from(rng.gen_range(-3..=3)), BigInt::from(rng.gen_range(1..=2))))
        .collect();
    let s = Scalar::from_coords(level, coords);
    if s.is_zero() {
        Scalar::one()
    } else {
        s
    }
}

pub fn random_unit_root<R: Rng>(rng: &mut R) -> Scalar {
    Scalar::cyclo(rng.gen_range(0..=3), rng.gen_range(0..8))
}

/// A canonical tuple with `a, b <= depth` and `|c| <= max_c`.
pub fn random_monomial<R: Rng>(rng: &mut R, depth: u32, max_c: i64) -> Monomial {
    let a = rng.gen_range(0..=depth);
    let b = rng.gen_range(0..=depth);
    let l = rng.gen_range(0..1i64 << a);
    Monomial::new(l, a, b, rng.gen_range(-max_c..=max_c))
}

/// Up to four terms, depth <= 3, |c| <= 4, level <= 3 coefficients.
pub fn random_element<R: Rng>(rng: &mut R) -> Element {
    let n = rng.gen_range(1..=4);
    Element::from_terms((0..n).map(|_| (random_monomial(rng, 3, 4), random_scalar(rng))))
}

/// Independent evaluation of `x e_i`: each tuple is applied as the word
/// `U^l S2^a (S2*)^b U^c`, generator by generator.
pub fn oracle_apply(x: &Element, i: i64) -> BTreeMap<i64, Complex64> {
    let mut out: BTreeMap<i64, Complex64> = BTreeMap::new();
    for (m, c) in x.terms() {
        let mut k = i + m.c;
        let d = 1i64 << m.b;
        if k.rem_euclid(d) != 0 {
            continue;
        }
        k /= d;
        k *= 1i64 << m.a;
        k += m.l;
        *out.entry(k).or_default() += c.to_complex();
    }
    out.retain(|_, z| z.norm() > 1e-12);
    out
}

/// Compares `x e_i` and `y e_i` for all `i` in `[lo, hi]`.
pub fn oracle_equal(x: &Element, y: &Element, lo: i64, hi: i64, tol: f64) -> bool {
    (lo..=hi).all(|i| {
        let a = oracle_apply(x, i);
        let b = oracle_apply(y, i);
        let keys: std::collections::BTreeSet<i64> = a.keys().chain(b.keys()).copied().collect();
        keys.into_iter().all(|k| {
            let za = a.get(&k).copied().unwrap_or_default();
            let zb = b.get(&k).copied().unwrap_or_default();
            (za - zb).norm() <= tol
        })
    })
}

/// A gauge-invariant element: only tuples with `a = b`.
pub fn random_gauge_invariant<R: Rng>(rng: &mut R) -> Element {
    let n = rng.gen_range(1..=3);
    Element::from_terms((0..n).map(|_| {
        let a = rng.gen_range(0..=2u32);
        let l = rng.gen_range(0..1i64 << a);
        (Monomial::new(l, a, a, rng.gen_range(-3..=3)), random_scalar(rng))
    }))
}

/// A Laurent polynomial in `U`.
pub fn random_cu<R: Rng>(rng: &mut R) -> Element {
    let n = rng.gen_range(1..=3);
    Element::from_terms((0..n).map(|_| (Monomial::power_of_u(rng.gen_range(-4..=4)), random_scalar(rng))))
}

/// A combination of diagonal projections `U^r S2^a (S2*)^a U^-r`.
pub fn random_d2<R: Rng>(rng: &mut R) -> Element {
    let n = rng.gen_range(1..=3);
    Element::from_terms((0..n).map(|_| {
        let a = rng.gen_range(0..=3u32);
        let r = rng.gen_range(0..1i64 << a);
        (Monomial::new(r, a, a, -r), random_scalar(rng))
    }))
}
