//! The canonical representation on `l^2(Z)`: `S2 e_k = e_{2k}`, `U e_k = e_{k+1}`.
//!
//! Each monomial acts as a partial affine map on basis indices, which gives an
//! exact oracle. Finite windows of the matrix give a floating-point laboratory,
//! and also host the operators `P`, `V` and the non-dyadic `U_z` that have no
//! exact counterpart in the algebra.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{pow2, Element, Monomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `i -> 2^a (i + c) / 2^b + l` on the class `{i = residue mod 2^b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AffineDyadicMap {
    pub modulus_exp: u32,
    pub residue: i64,
    pub slope_num_exp: u32,
    pub shift: i64,
    pub offset: i64,
}

impl AffineDyadicMap {
    pub fn in_domain(&self, i: i64) -> bool {
        i.rem_euclid(pow2(self.modulus_exp)) == self.residue
    }

    pub fn apply(&self, i: i64) -> Option<i64> {
        if !self.in_domain(i) {
            return None;
        }
        let num = pow2(self.slope_num_exp) * (i + self.shift);
        Some(num.div_euclid(pow2(self.modulus_exp)) + self.offset)
    }

    /// The map extended to a real affine function (used for displacement bounds).
    fn apply_real(&self, i: f64) -> f64 {
        (self.slope_num_exp as f64 - self.modulus_exp as f64).exp2() * (i + self.shift as f64)
            + self.offset as f64
    }

    /// Fixed points inside `[lo, hi]`.
    pub fn fixed_points(&self, lo: i64, hi: i64) -> Vec<i64> {
        if self.slope_num_exp == self.modulus_exp {
            // translation by shift + offset on the class
            if self.shift + self.offset != 0 {
                return Vec::new();
            }
            return class_members(self.modulus_exp, self.residue, lo, hi);
        }
        // unique real solution of 2^{a-b}(i + c) + l = i
        let num = pow2(self.slope_num_exp) * self.shift + pow2(self.modulus_exp) * self.offset;
        let den = pow2(self.modulus_exp) - pow2(self.slope_num_exp);
        if num % den != 0 {
            return Vec::new();
        }
        let i = num / den;
        if (lo..=hi).contains(&i) && self.apply(i) == Some(i) {
            vec![i]
        } else {
            Vec::new()
        }
    }
}

fn class_members(modulus_exp: u32, residue: i64, lo: i64, hi: i64) -> Vec<i64> {
    let m = pow2(modulus_exp);
    let first = lo + (residue - lo).rem_euclid(m);
    (0..).map(|k| first + k * m).take_while(|&i| i <= hi).collect()
}

pub fn map_of(m: &Monomial) -> AffineDyadicMap {
    AffineDyadicMap {
        modulus_exp: m.b,
        residue: (-m.c).rem_euclid(pow2(m.b)),
        slope_num_exp: m.a,
        shift: m.c,
        offset: m.l,
    }
}

/// `x e_i` as index -> coefficient.
pub fn apply_basis(x: &Element, i: i64) -> BTreeMap<i64, Scalar> {
    let mut out: BTreeMap<i64, Scalar> = BTreeMap::new();
    for (m, c) in x.terms() {
        if let Some(j) = map_of(m).apply(i) {
            let entry = out.entry(j).or_default();
            *entry += c;
        }
    }
    out.retain(|_, s| !s.is_zero());
    out
}

/// Maximal `|f(i) - i|` over terms for `i` in `[lo, hi]`; columns at least this
/// far from the window edge have their full image inside the window.
pub fn max_displacement(x: &Element, lo: i64, hi: i64) -> i64 {
    x.terms()
        .map(|(m, _)| {
            let f = map_of(m);
            let d = |i: i64| (f.apply_real(i as f64) - i as f64).abs();
            d(lo).max(d(hi)).ceil() as i64
        })
        .max()
        .unwrap_or(0)
}

/// Operators that can be written into a window.
#[derive(Clone, Debug)]
pub enum WindowOperator {
    Element(Element),
    /// `P e_k = e_{-k}`.
    Parity,
    /// `V e_k = e_{-k-1}`.
    Flip,
    /// `U_z e_k = z^k e_k` with `z = e^{i phi}`.
    Diagonal(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowMatrix {
    pub lo: i64,
    pub hi: i64,
    /// `(row, col) -> <e_row, x e_col>`.
    #[serde(with = "entry_list")]
    pub entries: BTreeMap<(i64, i64), Complex64>,
}

mod entry_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<(i64, i64), Complex64>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(i64, i64, f64, f64)> =
            map.iter().map(|(&(r, c), z)| (r, c, z.re, z.im)).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BTreeMap<(i64, i64), Complex64>, D::Error> {
        let v: Vec<(i64, i64, f64, f64)> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|(r, c, re, im)| ((r, c), Complex64::new(re, im))).collect())
    }
}

impl WindowMatrix {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInput(format!("empty window {lo}:{hi}")));
        }
        Ok(WindowMatrix { lo, hi, entries: BTreeMap::new() })
    }

    pub fn contains(&self, i: i64) -> bool {
        (self.lo..=self.hi).contains(&i)
    }

    pub fn get(&self, row: i64, col: i64) -> Complex64 {
        self.entries.get(&(row, col)).copied().unwrap_or_default()
    }

    fn insert(&mut self, row: i64, col: i64, z: Complex64) {
        if self.contains(row) && self.contains(col) && z != Complex64::default() {
            *self.entries.entry((row, col)).or_default() += z;
        }
    }

    /// Product of two windows over the same index range.
    pub fn mul(&self, rhs: &WindowMatrix) -> WindowMatrix {
        assert_eq!((self.lo, self.hi), (rhs.lo, rhs.hi), "window mismatch");
        let mut by_row: BTreeMap<i64, Vec<(i64, Complex64)>> = BTreeMap::new();
        for (&(r, c), &z) in &self.entries {
            by_row.entry(c).or_default().push((r, z));
        }
        let mut out = WindowMatrix { lo: self.lo, hi: self.hi, entries: BTreeMap::new() };
        for (&(k, col), &y) in &rhs.entries {
            if let Some(col_entries) = by_row.get(&k) {
                for &(row, x) in col_entries {
                    out.insert(row, col, x * y);
                }
            }
        }
        out
    }

    /// Max entry distance over the columns in `[col_lo, col_hi]`.
    pub fn max_diff_on_columns(&self, other: &WindowMatrix, col_lo: i64, col_hi: i64) -> f64 {
        let in_cols = |c: i64| (col_lo..=col_hi).contains(&c);
        self.entries
            .keys()
            .chain(other.entries.keys())
            .filter(|(_, c)| in_cols(*c))
            .map(|&(r, c)| (self.get(r, c) - other.get(r, c)).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_diff(&self, other: &WindowMatrix) -> f64 {
        self.max_diff_on_columns(other, self.lo.min(other.lo), self.hi.max(other.hi))
    }

    pub fn diagonal(&self) -> BTreeMap<i64, Complex64> {
        self.entries.iter().filter(|((r, c), _)| r == c).map(|(&(r, _), &z)| (r, z)).collect()
    }

    /// `x = M x` applied to a dense window vector indexed from `lo`.
    pub fn apply_dense(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::default(); v.len()];
        for (&(r, c), &z) in &self.entries {
            out[(r - self.lo) as usize] += z * v[(c - self.lo) as usize];
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("row,col,re,im\n");
        for (&(r, c), z) in &self.entries {
            let _ = writeln!(s, "{r},{c},{},{}", z.re, z.im);
        }
        s
    }
}

pub fn window_matrix(op: &WindowOperator, lo: i64, hi: i64) -> Result<WindowMatrix> {
    let mut w = WindowMatrix::new(lo, hi)?;
    match op {
        WindowOperator::Element(x) => {
            let terms: Vec<(AffineDyadicMap, Complex64)> =
                x.terms().map(|(m, c)| (map_of(m), c.to_complex())).collect();
            for i in lo..=hi {
                for (f, z) in &terms {
                    if let Some(j) = f.apply(i) {
                        w.insert(j, i, *z);
                    }
                }
            }
            w.entries.retain(|_, z| z.norm() > 0.0);
        }
        WindowOperator::Parity => {
            for i in lo..=hi {
                w.insert(-i, i, Complex64::new(1.0, 0.0));
            }
        }
        WindowOperator::Flip => {
            for i in lo..=hi {
                w.insert(-i - 1, i, Complex64::new(1.0, 0.0));
            }
        }
        WindowOperator::Diagonal(phi) => {
            for i in lo..=hi {
                w.insert(i, i, Complex64::from_polar(1.0, phi * i as f64));
            }
        }
    }
    Ok(w)
}

/// The window of `V x V*`, computed column by column from the exact action
/// `V x V* e_i = V x e_{-i-1}`.
pub fn conjugate_by_v(x: &Element, lo: i64, hi: i64) -> Result<WindowMatrix> {
    let mut w = WindowMatrix::new(lo, hi)?;
    for i in lo..=hi {
        for (j, s) in apply_basis(x, -i - 1) {
            w.insert(-j - 1, i, s.to_complex());
        }
    }
    Ok(w)
}
