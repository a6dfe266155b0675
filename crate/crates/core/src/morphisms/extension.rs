use crate::algebra::{membership, Element, Generator, Subalgebra};
use crate::error::{Error, Result};

use super::Endomorphism;

fn g(x: Generator) -> Element {
    Element::generator(x)
}

/// A pair `(V, W)`: `V` a unitary of `O2`, `W` a unitary of `Q2` with
/// `W S2 = S2` and `S2 V U W V* = U W U S2`.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    pub v: Element,
    pub w: Element,
}

impl ExtensionData {
    pub fn new(v: Element, w: Element) -> Self {
        ExtensionData { v, w }
    }

    pub fn trivial() -> Self {
        ExtensionData::new(Element::one(), Element::one())
    }

    fn validate(&self) -> Result<()> {
        let fail = |s: &str| Err(Error::ExtensionConditionFailed(s.into()));
        if !self.v.is_unitary() {
            return fail("V is not unitary");
        }
        if !membership(&self.v, Subalgebra::O2) {
            return fail("V is not in O2");
        }
        if !self.w.is_unitary() {
            return fail("W is not unitary");
        }
        let s2 = g(Generator::S2);
        let u = g(Generator::U);
        if !(&self.w * &s2).equals(&s2) {
            return fail("W S2 != S2");
        }
        let lhs = &(&(&(&s2 * &self.v) * &u) * &self.w) * &self.v.adjoint();
        let rhs = &(&(&u * &self.w) * &u) * &s2;
        if !lhs.equals(&rhs) {
            return fail("S2 V U W V* != U W U S2");
        }
        Ok(())
    }
}

/// The extension of `lambda_V`: `U -> V U W V*`, `S2 -> V S2`.
pub fn check_extension(data: &ExtensionData) -> Result<Endomorphism> {
    data.validate()?;
    let img_u = &(&(&data.v * &g(Generator::U)) * &data.w) * &data.v.adjoint();
    let img_s2 = &data.v * &g(Generator::S2);
    Endomorphism::new(img_u, img_s2).map_err(|e| Error::ExtensionConditionFailed(e.to_string()))
}

/// Data of the composite: `(lambda_V(V') V, W V* ext(W') V)`.
pub fn compose_extension_data(d1: &ExtensionData, d2: &ExtensionData) -> Result<ExtensionData> {
    let e1 = check_extension(d1)?;
    d2.validate()?;
    let v = (&e1.apply(&d2.v) * &d1.v).coarsen();
    let w = (&(&(&d1.w * &d1.v.adjoint()) * &e1.apply(&d2.w)) * &d1.v).coarsen();
    let out = ExtensionData::new(v, w);
    out.validate()?;
    Ok(out)
}

/// `theta = sum S_i S_j S_i* S_j*` and `W = U* theta U^2 theta`, the data of the shift.
pub fn shift_extension_data() -> ExtensionData {
    let s = [g(Generator::S1), g(Generator::S2)];
    let mut theta = Element::zero();
    for si in &s {
        for sj in &s {
            theta = &theta + &(&(&(si * sj) * &si.adjoint()) * &sj.adjoint());
        }
    }
    let theta = theta.coarsen();
    let w = &(&(&g(Generator::UStar) * &theta) * &g(Generator::U).pow(2)) * &theta;
    ExtensionData::new(theta, w.coarsen())
}
