use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::multi_index::MultiIndex;

/// Depth beyond which `2^depth` no longer fits comfortably in `i64` arithmetic.
pub const MAX_DEPTH: u32 = 60;

pub(crate) fn pow2(k: u32) -> i64 {
    assert!(k <= MAX_DEPTH, "monomial depth {k} exceeds {MAX_DEPTH}");
    1i64 << k
}

/// The canonical word `U^l S2^a (S2*)^b U^c` with `0 <= l < 2^a`.
///
/// Every `S_alpha S_beta^* U^h` has exactly one such form, and the product of
/// two monomials is again a monomial or zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub l: i64,
    pub a: u32,
    pub b: u32,
    pub c: i64,
}

impl Monomial {
    pub const IDENTITY: Monomial = Monomial { l: 0, a: 0, b: 0, c: 0 };

    /// Panics unless `0 <= l < 2^a`.
    pub fn new(l: i64, a: u32, b: u32, c: i64) -> Self {
        assert!(
            (0..pow2(a)).contains(&l),
            "monomial left offset {l} outside [0, 2^{a})"
        );
        Monomial { l, a, b, c }
    }

    /// Brings `U^l S2^a (S2*)^b U^c` with arbitrary integer `l` into canonical form,
    /// using `U^{2^a q} S2^a = S2^a U^q` and `U^q (S2*)^b = (S2*)^b U^{2^b q}`.
    pub fn normalized(l: i64, a: u32, b: u32, c: i64) -> Self {
        let m = pow2(a);
        let q = l.div_euclid(m);
        Monomial { l: l.rem_euclid(m), a, b, c: c + pow2(b) * q }
    }

    pub fn power_of_u(k: i64) -> Self {
        Monomial { l: 0, a: 0, b: 0, c: k }
    }

    /// `S_alpha S_beta^* U^h`.
    pub fn from_multi_indices(alpha: &MultiIndex, beta: &MultiIndex, h: i64) -> Self {
        Monomial::new(alpha.label(), alpha.len(), beta.len(), h - beta.label())
    }

    /// The unique `(alpha, beta, h)` with `S_alpha S_beta^* U^h` equal to this monomial.
    pub fn to_multi_indices(&self) -> (MultiIndex, MultiIndex, i64) {
        let beta_label = (-self.c).rem_euclid(pow2(self.b));
        let alpha = MultiIndex::from_label(self.l, self.a).expect("l < 2^a by construction");
        let beta = MultiIndex::from_label(beta_label, self.b).expect("residue < 2^b");
        (alpha, beta, self.c + beta_label)
    }

    /// Product of two monomials: a single monomial or zero.
    pub fn mul(&self, rhs: &Monomial) -> Option<Monomial> {
        // middle factor (S2*)^{b1} U^k S2^{a2}: peel S2* S2 pairs, each needs k even
        let mut k = self.c + rhs.l;
        let t = self.b.min(rhs.a);
        if k.rem_euclid(pow2(t)) != 0 {
            return None;
        }
        k = k.div_euclid(pow2(t));
        let b_rest = self.b - t;
        let a_rest = rhs.a - t;
        if a_rest == 0 {
            // U^{l1} S2^{a1} (S2*)^{b_rest} U^k (S2*)^{b2} U^{c2}
            Some(Monomial::normalized(
                self.l,
                self.a,
                b_rest + rhs.b,
                pow2(rhs.b) * k + rhs.c,
            ))
        } else {
            // b_rest == 0: U^{l1} S2^{a1} U^k S2^{a_rest} (S2*)^{b2} U^{c2}
            Some(Monomial::normalized(
                self.l + pow2(self.a) * k,
                self.a + a_rest,
                rhs.b,
                rhs.c,
            ))
        }
    }

    /// The adjoint `U^{-c} S2^b (S2*)^a U^{-l}`, renormalized.
    pub fn adjoint(&self) -> Monomial {
        Monomial::normalized(-self.c, self.b, self.a, -self.l)
    }

    /// Gauge degree `a - b`.
    pub fn degree(&self) -> i64 {
        self.a as i64 - self.b as i64
    }

    /// Diagonal projection `S_alpha S_alpha^*`.
    pub fn is_diagonal_projection(&self) -> bool {
        self.a == self.b && self.c == -self.l
    }

    /// Literal `S_alpha S_beta^*` form: `0 <= -c < 2^b`.
    pub fn is_cuntz_word(&self) -> bool {
        (0..pow2(self.b)).contains(&(-self.c))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.b, self.a, self.l, self.c).cmp(&(other.b, other.a, other.l, other.c))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    /// Word form, e.g. `U^3 S2^2 S2* U^-1`; the identity prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let pw = |base: &str, e: i64| if e == 1 { base.to_string() } else { format!("{base}^{e}") };
        if self.l != 0 {
            parts.push(pw("U", self.l));
        }
        if self.a != 0 {
            parts.push(pw("S2", self.a as i64));
        }
        if self.b != 0 {
            parts.push(pw("S2*", self.b as i64));
        }
        if self.c != 0 {
            parts.push(pw("U", self.c));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.l, self.a, self.b, self.c)
    }
}
