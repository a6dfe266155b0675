use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::monomial::{pow2, Monomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The six named generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    U,
    UStar,
    S1,
    S2,
    S1Star,
    S2Star,
}

impl Generator {
    pub fn monomial(self) -> Monomial {
        match self {
            Generator::U => Monomial::new(0, 0, 0, 1),
            Generator::UStar => Monomial::new(0, 0, 0, -1),
            Generator::S2 => Monomial::new(0, 1, 0, 0),
            Generator::S1 => Monomial::new(1, 1, 0, 0),
            Generator::S2Star => Monomial::new(0, 0, 1, 0),
            Generator::S1Star => Monomial::new(0, 0, 1, -1),
        }
    }
}

/// A finite linear combination of canonical monomials.
///
/// Stored term maps are not unique (monomials obey refinement relations);
/// [`Element::equals`] decides operator equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::monomial(Monomial::IDENTITY)
    }

    pub fn scalar(s: Scalar) -> Self {
        Element::term(s, Monomial::IDENTITY)
    }

    pub fn monomial(m: Monomial) -> Self {
        Element::term(Scalar::one(), m)
    }

    pub fn term(s: Scalar, m: Monomial) -> Self {
        let mut e = Element::zero();
        e.add_term(m, s);
        e
    }

    pub fn generator(g: Generator) -> Self {
        Element::monomial(g.monomial())
    }

    pub fn u_power(k: i64) -> Self {
        Element::monomial(Monomial::power_of_u(k))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(terms: I) -> Self {
        let mut e = Element::zero();
        for (m, s) in terms {
            e.add_term(m, s);
        }
        e
    }

    pub fn add_term(&mut self, m: Monomial, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(s);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &s;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// No stored terms. This is the zero operator, but the converse needs [`Element::equals`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn max_a(&self) -> u32 {
        self.terms.keys().map(|m| m.a).max().unwrap_or(0)
    }

    pub fn max_b(&self) -> u32 {
        self.terms.keys().map(|m| m.b).max().unwrap_or(0)
    }

    /// Largest of all `a` and `b`.
    pub fn depth(&self) -> u32 {
        self.max_a().max(self.max_b())
    }

    pub fn max_abs_c(&self) -> i64 {
        self.terms.keys().map(|m| m.c.abs()).max().unwrap_or(0)
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }

    pub fn adjoint(&self) -> Element {
        Element::from_terms(self.terms.iter().map(|(m, c)| (m.adjoint(), c.conj())))
    }

    pub fn pow(&self, n: u64) -> Element {
        let mut acc = Element::one();
        let mut sq = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// Rewrites every term at right depth `b = depth` by multiplying with the
    /// residue-class projections `U^r S2^B (S2*)^B U^{-r}`. At fixed depth the
    /// tuples are linearly independent, so this form is unique.
    pub fn normalize_depth(&self, depth: u32) -> Result<Element> {
        let required = self.max_b();
        if depth < required {
            return Err(Error::DepthTooSmall { requested: depth, required });
        }
        let modulus = pow2(depth);
        let mut out = Element::zero();
        for (m, coef) in &self.terms {
            if m.b == depth {
                out.add_term(*m, coef.clone());
                continue;
            }
            let step = pow2(m.b);
            let start = (-m.c).rem_euclid(step);
            let mut r = start;
            while r < modulus {
                let proj = Monomial::new(r, depth, depth, -r);
                let piece = m.mul(&proj).expect("projection lies in the domain class");
                debug_assert_eq!(piece.b, depth);
                out.add_term(piece, coef.clone());
                r += step;
            }
        }
        Ok(out)
    }

    /// Operator equality in the canonical representation.
    pub fn equals(&self, other: &Element) -> bool {
        (self - other).is_zero_operator()
    }

    pub fn is_zero_operator(&self) -> bool {
        self.adaptive_form().is_empty()
    }

    /// Splits residue classes only where a deeper term lives, and sums the
    /// restricted terms class by class. On each class the tuples are linearly
    /// independent, so `x = 0` iff this is empty. The size stays linear in
    /// terms times depth, unlike `normalize_depth(max_b)`.
    pub fn adaptive_form(&self) -> Element {
        let active: Vec<(&Monomial, &Scalar)> = self.terms.iter().collect();
        let mut out = Element::zero();
        refine_class(&active, 0, 0, &mut out);
        out
    }

    /// Terms of gauge degree `a - b = d`.
    pub fn gauge_component(&self, d: i64) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Gauge degrees present in the stored terms.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.terms.keys().map(|m| m.degree()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Greedily merges sibling pairs with equal coefficients into their common
    /// parent monomial. Only shrinks the term map; never needed for equality.
    pub fn coarsen(&self) -> Element {
        let mut cur = self.clone();
        loop {
            let mut merged = false;
            let keys: Vec<Monomial> = cur.terms.keys().rev().copied().collect();
            for m in keys {
                if m.a == 0 || m.b == 0 {
                    continue;
                }
                let Some(coef) = cur.terms.get(&m).cloned() else { continue };
                let (sibling, parent) = split_pair(&m);
                if cur.terms.get(&sibling) == Some(&coef) {
                    cur.terms.remove(&m);
                    cur.terms.remove(&sibling);
                    cur.add_term(parent, coef);
                    merged = true;
                }
            }
            if !merged {
                return cur;
            }
        }
    }

    /// `P_n = S1^n S2 S2* (S1*)^n`, the projection onto `{i = 2^n - 1 mod 2^{n+1}}`.
    pub fn proj_p(n: u32) -> Element {
        let r = pow2(n) - 1;
        Element::monomial(Monomial::new(r, n + 1, n + 1, -r))
    }

    /// `Q_n = P_0 + ... + P_n`.
    pub fn proj_q(n: u32) -> Element {
        (0..=n).fold(Element::zero(), |acc, k| &acc + &Element::proj_p(k))
    }

    pub fn is_projection(&self) -> bool {
        self.equals(&self.adjoint()) && self.equals(&(self * self))
    }

    pub fn is_unitary(&self) -> bool {
        let one = Element::one();
        (&self.adjoint() * self).equals(&one) && (self * &self.adjoint()).equals(&one)
    }

    pub fn is_isometry(&self) -> bool {
        (&self.adjoint() * self).equals(&Element::one())
    }

    /// The scalar `s` if the stored form is `s * 1` (or empty).
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::IDENTITY).cloned(),
            _ => None,
        }
    }
}

/// Collects the restricted terms on the class `residue mod 2^depth`, splitting
/// it while some active term has a finer domain.
fn refine_class(active: &[(&Monomial, &Scalar)], depth: u32, residue: i64, out: &mut Element) {
    if active.iter().any(|(m, _)| m.b > depth) {
        let modulus = pow2(depth);
        for child in [residue, residue + modulus] {
            let inside: Vec<(&Monomial, &Scalar)> = active
                .iter()
                .filter(|(m, _)| {
                    let class = pow2(m.b.min(depth + 1));
                    (-m.c).rem_euclid(class) == child.rem_euclid(class)
                })
                .copied()
                .collect();
            if !inside.is_empty() {
                refine_class(&inside, depth + 1, child, out);
            }
        }
        return;
    }
    let proj = Monomial::new(residue, depth, depth, -residue);
    let mut local = Element::zero();
    for (m, c) in active {
        let piece = m.mul(&proj).expect("class lies in the term domain");
        local.add_term(piece, (*c).clone());
    }
    for (m, c) in local.terms {
        out.add_term(m, c);
    }
}

/// The sibling of `m` under one refinement step and their merged parent.
fn split_pair(m: &Monomial) -> (Monomial, Monomial) {
    let half = pow2(m.b - 1);
    let residue = (-m.c).rem_euclid(pow2(m.b));
    let value_at = |i: i64| (pow2(m.a) * (i + m.c)).div_euclid(pow2(m.b)) + m.l;
    let sib_residue = residue ^ half;
    let sibling = from_affine(m.b, sib_residue, m.a, value_at(sib_residue));
    let parent_residue = residue % half;
    // on the parent class (i + c) is a multiple of 2^{b-1}
    let parent_value =
        pow2(m.a - 1) * (parent_residue + m.c).div_euclid(half) + m.l;
    let parent = from_affine(m.b - 1, parent_residue, m.a - 1, parent_value);
    (sibling, parent)
}

/// The monomial with domain `{i = residue mod 2^b}`, slope `2^{a-b}`, that sends
/// `residue` to `value`.
pub(crate) fn from_affine(b: u32, residue: i64, a: u32, value: i64) -> Monomial {
    let q = value.div_euclid(pow2(a));
    Monomial::new(value.rem_euclid(pow2(a)), a, b, -residue + pow2(b) * q)
}

impl From<Monomial> for Element {
    fn from(m: Monomial) -> Self {
        Element::monomial(m)
    }
}

impl From<Scalar> for Element {
    fn from(s: Scalar) -> Self {
        Element::scalar(s)
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        let mut out = Element::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                if let Some(m) = m1.mul(m2) {
                    out.add_term(m, c1 * c2);
                }
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Element {
            type Output = Element;
            fn $m(self, rhs: Element) -> Element {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Element> for Element {
            type Output = Element;
            fn $m(self, rhs: &Element) -> Element {
                (&self).$m(rhs)
            }
        }
        impl $tr<Element> for &Element {
            type Output = Element;
            fn $m(self, rhs: Element) -> Element {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, coef) = if c.is_negative_leading() { (true, -c) } else { (false, c.clone()) };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let coef_text = if coef.is_simple() { coef.to_string() } else { format!("({coef})") };
            if *m == Monomial::IDENTITY {
                write!(f, "{coef_text}")?;
            } else if coef.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{coef_text} {m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    l: i64,
    a: u32,
    b: u32,
    c: i64,
    coef: Scalar,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRepr { l: m.l, a: m.a, b: m.b, c: m.c, coef: c.clone() })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ElementRepr::deserialize(deserializer)?;
        let mut e = Element::zero();
        for t in repr.terms {
            if t.a > super::monomial::MAX_DEPTH
                || t.b > super::monomial::MAX_DEPTH
                || !(0..pow2(t.a)).contains(&t.l)
            {
                return Err(D::Error::custom("term violates 0 <= l < 2^a"));
            }
            e.add_term(Monomial::new(t.l, t.a, t.b, t.c), t.coef);
        }
        Ok(e)
    }
}
