//! Endomorphisms of `Q2` given by generator images, the named automorphisms,
//! `(V, W)` extension data for endomorphisms of `O2`, and the Bogoljubov
//! extensibility classifier.

mod bogoljubov;
mod extension;

use std::collections::HashMap;
use std::fmt;

pub use bogoljubov::{bogoljubov_classify, BogoljubovClass, BogoljubovMatrix};
pub use extension::{check_extension, compose_extension_data, shift_extension_data, ExtensionData};

use crate::algebra::{Element, Generator, Monomial};
use crate::error::{Error, Result};
use crate::parse::{parse_element, parse_scalar};
use crate::scalar::Scalar;
use crate::torus::LaurentCircleFunction;

fn g(x: Generator) -> Element {
    Element::generator(x)
}

/// An endomorphism, fixed by the images of `U` and `S2`.
///
/// Construction through [`Endomorphism::new`] checks every defining relation
/// with the exact equality oracle.
#[derive(Clone, Debug)]
pub struct Endomorphism {
    img_u: Element,
    img_s2: Element,
    label: Option<String>,
}

impl Endomorphism {
    pub fn new(img_u: Element, img_s2: Element) -> Result<Self> {
        let one = Element::one();
        let u_star = img_u.adjoint();
        if !(&u_star * &img_u).equals(&one) || !(&img_u * &u_star).equals(&one) {
            return Err(Error::RelationViolated("U' is not unitary".into()));
        }
        let s_star = img_s2.adjoint();
        if !(&s_star * &img_s2).equals(&one) {
            return Err(Error::RelationViolated("S2'* S2' != 1".into()));
        }
        if !(&img_s2 * &img_u).equals(&(&(&img_u * &img_u) * &img_s2)) {
            return Err(Error::RelationViolated("S2' U' != U'^2 S2'".into()));
        }
        let range = &img_s2 * &s_star;
        if !(&range + &(&(&img_u * &range) * &u_star)).equals(&one) {
            return Err(Error::RelationViolated("S2' S2'* + U' S2' S2'* U'* != 1".into()));
        }
        Ok(Endomorphism { img_u: img_u.coarsen(), img_s2: img_s2.coarsen(), label: None })
    }

    /// Images already known to satisfy the relations (compositions of valid maps).
    fn trusted(img_u: Element, img_s2: Element) -> Self {
        Endomorphism { img_u: img_u.coarsen(), img_s2: img_s2.coarsen(), label: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn img_u(&self) -> &Element {
        &self.img_u
    }

    pub fn img_s2(&self) -> &Element {
        &self.img_s2
    }

    pub fn identity() -> Self {
        Endomorphism::trusted(g(Generator::U), g(Generator::S2)).with_label("id")
    }

    /// `U -> U`, `S2 -> z S2` for unimodular `z`.
    pub fn gauge(z: Scalar) -> Result<Self> {
        if !z.is_unimodular() {
            return Err(Error::NotUnitary(format!("gauge parameter {z}")));
        }
        let label = format!("gauge:{z}");
        Ok(Endomorphism::new(g(Generator::U), g(Generator::S2).scale(&z))?.with_label(label))
    }

    /// `U -> U*`, `S2 -> U S2`; swaps `S1` and `S2`.
    pub fn flipflop() -> Self {
        Endomorphism::new(g(Generator::UStar), g(Generator::S1))
            .expect("flip-flop relations")
            .with_label("flipflop")
    }

    /// The canonical shift `x -> U S2 x S2* U* + S2 x S2*`.
    pub fn shift() -> Self {
        let f = |x: &Element| shift_formula(x);
        Endomorphism::new(f(&g(Generator::U)), f(&g(Generator::S2)))
            .expect("shift relations")
            .with_label("shift")
    }

    /// `S2 -> S2`, `U -> U^{2k+1}`.
    pub fn chi(odd: i64) -> Result<Self> {
        if odd.rem_euclid(2) != 1 {
            return Err(Error::NotOdd(odd));
        }
        Ok(Endomorphism::new(Element::u_power(odd), g(Generator::S2))?.with_label(format!("chi:{odd}")))
    }

    /// `U -> U`, `S2 -> w U^n S2` with `|w| = 1`.
    pub fn beta_monomial(w: Scalar, n: i64) -> Result<Self> {
        let f = LaurentCircleFunction::monomial(w.clone(), n);
        Endomorphism::beta(&f).map(|e| e.with_label(format!("beta:{w},{n}")))
    }

    /// `beta^f`: `U -> U`, `S2 -> f(U) S2`.
    pub fn beta(f: &LaurentCircleFunction) -> Result<Self> {
        if !f.is_t_valued() {
            return Err(Error::NotUnitary(format!("{f} is not circle valued")));
        }
        Endomorphism::new(g(Generator::U), &f.to_element() * &g(Generator::S2))
    }

    /// `x -> u x u*`.
    pub fn ad_unitary(u: &Element) -> Result<Self> {
        if !u.is_unitary() {
            return Err(Error::NotUnitary(u.to_string()));
        }
        let us = u.adjoint();
        let conj = |x: &Element| &(u * x) * &us;
        Endomorphism::new(conj(&g(Generator::U)), conj(&g(Generator::S2)))
    }

    /// Parses a label such as `gauge:zeta(8)^3`, `flipflop`, `shift`, `chi:5`,
    /// `beta:w,n`, `adU`, `ad:<expr>` or `id`.
    pub fn from_label(label: &str) -> Result<Self> {
        let label = label.trim();
        let (head, arg) = match label.split_once(':') {
            Some((h, a)) => (h.trim(), Some(a.trim())),
            None => (label, None),
        };
        let need = || arg.ok_or_else(|| Error::InvalidInput(format!("{head} needs an argument")));
        let e = match head {
            "id" | "identity" => Endomorphism::identity(),
            "flipflop" => Endomorphism::flipflop(),
            "shift" => Endomorphism::shift(),
            "adU" => Endomorphism::ad_unitary(&g(Generator::U))?.with_label("adU"),
            "gauge" => Endomorphism::gauge(parse_scalar(need()?)?)?,
            "chi" => {
                let n: i64 = need()?
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("chi needs an odd integer: {label}")))?;
                Endomorphism::chi(n)?
            }
            "beta" => {
                let arg = need()?;
                let (w, n) = arg
                    .rsplit_once(',')
                    .ok_or_else(|| Error::InvalidInput(format!("beta needs w,n: {label}")))?;
                let n: i64 = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("beta exponent: {label}")))?;
                Endomorphism::beta_monomial(parse_scalar(w)?, n)?
            }
            "ad" => Endomorphism::ad_unitary(&parse_element(need()?)?)?,
            _ => return Err(Error::InvalidInput(format!("unknown endomorphism {label:?}"))),
        };
        Ok(if e.label.is_none() { e.with_label(label) } else { e })
    }

    /// Homomorphic extension: each `U^l S2^a (S2*)^b U^c` goes to
    /// `U'^l S2'^a (S2'*)^b U'^c`.
    pub fn apply(&self, x: &Element) -> Element {
        let mut cache = PowerCache::new(self);
        let mut out = Element::zero();
        for (m, coef) in x.terms() {
            let word = cache.word(m);
            out = &out + &word.scale(coef);
        }
        out.coarsen()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endomorphism) -> Endomorphism {
        let e = Endomorphism::trusted(self.apply(&other.img_u), self.apply(&other.img_s2));
        match (&self.label, &other.label) {
            (Some(a), Some(b)) => e.with_label(format!("{a}∘{b}")),
            _ => e,
        }
    }

    pub fn equals_on_generators(&self, other: &Endomorphism) -> bool {
        self.img_u.equals(&other.img_u) && self.img_s2.equals(&other.img_s2)
    }

    /// `u = L(S1) S1* + L(S2) S2*`, with `L(S_i) = u S_i`.
    pub fn u_of(&self) -> Element {
        let s1 = g(Generator::S1);
        let s2 = g(Generator::S2);
        (&self.apply(&s1) * &s1.adjoint() + &self.img_s2 * &s2.adjoint()).coarsen()
    }

    /// `W = U* u* L(U) u`.
    pub fn w_of(&self) -> Element {
        let u = self.u_of();
        (&(&(&g(Generator::UStar) * &u.adjoint()) * &self.img_u) * &u).coarsen()
    }

    /// Whether this is some `beta^f`, i.e. `W = 1`.
    pub fn is_beta(&self) -> bool {
        self.w_of().equals(&Element::one())
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = &self.label {
            write!(f, "{l}: ")?;
        }
        write!(f, "U -> {}, S2 -> {}", self.img_u, self.img_s2)
    }
}

pub(crate) fn shift_formula(x: &Element) -> Element {
    let s2 = g(Generator::S2);
    let s1 = g(Generator::S1);
    (&(&s1 * x) * &s1.adjoint() + &(&s2 * x) * &s2.adjoint()).coarsen()
}

struct PowerCache<'a> {
    e: &'a Endomorphism,
    u_pos: HashMap<u64, Element>,
    u_neg: HashMap<u64, Element>,
    s: HashMap<u32, Element>,
    s_star: HashMap<u32, Element>,
}

impl<'a> PowerCache<'a> {
    fn new(e: &'a Endomorphism) -> Self {
        PowerCache { e, u_pos: HashMap::new(), u_neg: HashMap::new(), s: HashMap::new(), s_star: HashMap::new() }
    }

    fn u(&mut self, k: i64) -> Element {
        let (map, base) = if k >= 0 {
            (&mut self.u_pos, &self.e.img_u)
        } else {
            (&mut self.u_neg, &self.e.img_u)
        };
        let n = k.unsigned_abs();
        map.entry(n)
            .or_insert_with(|| {
                let b = if k >= 0 { base.clone() } else { base.adjoint() };
                b.pow(n).coarsen()
            })
            .clone()
    }

    fn word(&mut self, m: &Monomial) -> Element {
        let img_s2 = self.e.img_s2.clone();
        let sa = self.s.entry(m.a).or_insert_with(|| img_s2.pow(m.a as u64).coarsen()).clone();
        let sb = self
            .s_star
            .entry(m.b)
            .or_insert_with(|| img_s2.adjoint().pow(m.b as u64).coarsen())
            .clone();
        let left = self.u(m.l);
        let right = self.u(m.c);
        &(&(&left * &sa) * &sb) * &right
    }
}

/// Reconstructs `f` with `s = f(U) S2` from an isometry `s` satisfying the `S2`
/// relations, via `f(U) = s S2* + U s S2* U*`.
pub fn decompose_s2_image(s: &Element) -> Result<LaurentCircleFunction> {
    let one = Element::one();
    let u = g(Generator::U);
    let us = g(Generator::UStar);
    let s_star = s.adjoint();
    if !(&s_star * s).equals(&one) {
        return Err(Error::NotInS2("s* s != 1".into()));
    }
    if !(s * &u).equals(&(&(&u * &u) * s)) {
        return Err(Error::NotInS2("s U != U^2 s".into()));
    }
    let range = s * &s_star;
    if !(&range + &(&(&u * &range) * &us)).equals(&one) {
        return Err(Error::NotInS2("s s* + U s s* U* != 1".into()));
    }
    let s2s = g(Generator::S2Star);
    let f_u = s * &s2s + &(&(&u * s) * &s2s) * &us;
    let f = LaurentCircleFunction::from_element(&f_u).ok_or(Error::NotUnitaryFunction)?;
    if !f.is_t_valued() || !(&f.to_element() * &g(Generator::S2)).equals(s) {
        return Err(Error::NotUnitaryFunction);
    }
    Ok(f)
}
