use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite word over `{1, 2}` naming `S_alpha = S_{alpha_1} ... S_{alpha_n}`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct MultiIndex(Vec<u8>);

impl MultiIndex {
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        if let Some(d) = digits.iter().find(|&&d| d != 1 && d != 2) {
            return Err(Error::InvalidInput(format!("multi-index digit {d} not in {{1,2}}")));
        }
        Ok(MultiIndex(digits))
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `l(alpha) = sum_j d_j 2^{j-1}` with `d(1) = 1`, `d(2) = 0`, so that
    /// `S_alpha = U^{l(alpha)} S2^{|alpha|}`.
    pub fn label(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(j, &d)| if d == 1 { 1i64 << j } else { 0 })
            .sum()
    }

    /// Inverse of [`label`](Self::label) at fixed length.
    pub fn from_label(label: i64, len: u32) -> Result<Self> {
        if len > 62 || !(0..(1i64 << len)).contains(&label) {
            return Err(Error::IndexOutOfRange { index: label, len });
        }
        Ok(MultiIndex((0..len).map(|j| if label >> j & 1 == 1 { 1 } else { 2 }).collect()))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, d) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
