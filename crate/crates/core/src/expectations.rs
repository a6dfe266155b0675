//! Conditional expectations onto `Q2^T`, `C*(U)` and `D2`, the diagonal of the
//! canonical representation, the gauge-Fourier maps `F_i` and the limit of
//! `S1^{*m} x S1^m`.

use std::collections::BTreeMap;

use crate::algebra::{Element, Generator, Monomial};
use crate::canonical::map_of;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Gauge averaging: keeps the terms with `a = b`.
pub fn e_gauge(x: &Element) -> Element {
    x.gauge_component(0)
}

/// Expectation onto `C*(U)`: `(l,a,b,c) -> delta_{a,b} 2^{-a} U^{l+c}`.
pub fn e_cu(x: &Element) -> Element {
    Element::from_terms(
        x.terms()
            .filter(|(m, _)| m.a == m.b)
            .map(|(m, c)| (Monomial::power_of_u(m.l + m.c), c * &Scalar::dyadic(m.a))),
    )
}

/// Expectation onto `D2`: keeps exactly the diagonal projections `a = b`, `c = -l`.
pub fn e_d2(x: &Element) -> Element {
    Element::from_terms(
        x.terms().filter(|(m, _)| m.is_diagonal_projection()).map(|(m, c)| (*m, c.clone())),
    )
}

/// Diagonal entries `<e_i, x e_i>` for `i` in `[lo, hi]`.
///
/// The diagonal of a `Q2` element need not lie in `Q2`, hence windowed output.
pub fn e_diag_window(x: &Element, lo: i64, hi: i64) -> Result<BTreeMap<i64, Scalar>> {
    if lo > hi {
        return Err(Error::InvalidInput(format!("empty window {lo}:{hi}")));
    }
    let mut out: BTreeMap<i64, Scalar> = BTreeMap::new();
    for (m, c) in x.terms() {
        for i in map_of(m).fixed_points(lo, hi) {
            *out.entry(i).or_default() += c;
        }
    }
    out.retain(|_, s| !s.is_zero());
    Ok(out)
}

/// `F_i(x) = E(x S1^{*i})` for `i >= 0` and `F_{-i}(x) = E(S1^i x)`.
pub fn f_map(x: &Element, i: i64) -> Element {
    if i >= 0 {
        e_gauge(&(x * &Element::generator(Generator::S1Star).pow(i as u64)))
    } else {
        e_gauge(&(&Element::generator(Generator::S1).pow(i.unsigned_abs()) * x))
    }
}

/// The scalar that `S1^{*m} x S1^m` stabilizes to, for gauge-invariant `x`.
pub fn s1_limit(x: &Element) -> Result<Scalar> {
    let core = e_gauge(x);
    if !(x - &core).is_zero_operator() {
        return Err(Error::NotGaugeInvariant);
    }
    let bound = core.max_b() as usize + core.max_abs_c() as usize + 2;
    let s1 = Element::generator(Generator::S1);
    let s1_star = Element::generator(Generator::S1Star);
    let mut y = core;
    for _ in 0..=bound {
        if let Some(s) = scalar_value(&y) {
            return Ok(s);
        }
        y = (&(&s1_star * &y) * &s1).coarsen();
    }
    Err(Error::NotStabilized { bound })
}

/// `Some(s)` when `x` is the operator `s * 1`.
fn scalar_value(x: &Element) -> Option<Scalar> {
    let e = e_cu(x);
    let s = e.as_scalar()?;
    x.equals(&Element::scalar(s.clone())).then_some(s)
}
