//! The *-algebra spanned by the canonical monomials `U^l S2^a (S2*)^b U^c`.

mod element;
mod monomial;
mod multi_index;

use std::fmt;
use std::str::FromStr;

pub use element::{Element, Generator};
pub use monomial::{Monomial, MAX_DEPTH};
pub(crate) use monomial::pow2;
pub use multi_index::MultiIndex;

use crate::error::Error;
use crate::expectations;

/// Subalgebras whose algebraic span membership is decidable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subalgebra {
    /// `C*(U)`: Laurent polynomials in `U`.
    CU,
    /// The diagonal `D2`, spanned by the projections `S_alpha S_alpha^*`.
    D2,
    /// The gauge-invariant core `F2` of `O2`.
    F2,
    /// The Cuntz algebra `O2`.
    O2,
    /// The gauge-invariant subalgebra of `Q2`.
    QT,
}

impl FromStr for Subalgebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "CU" => Ok(Subalgebra::CU),
            "D2" => Ok(Subalgebra::D2),
            "F2" => Ok(Subalgebra::F2),
            "O2" => Ok(Subalgebra::O2),
            "QT" => Ok(Subalgebra::QT),
            _ => Err(Error::InvalidInput(format!("unknown subalgebra {s:?}"))),
        }
    }
}

impl fmt::Display for Subalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Subalgebra::CU => "CU",
            Subalgebra::D2 => "D2",
            Subalgebra::F2 => "F2",
            Subalgebra::O2 => "O2",
            Subalgebra::QT => "QT",
        };
        write!(f, "{s}")
    }
}

/// Exact membership in the algebraic span of `sub`.
///
/// `CU`, `D2` and `QT` are the fixed points of their conditional expectations.
/// For `O2` and `F2` the class-wise refined form is inspected: a tuple is a word
/// `S_alpha S_beta^*` iff `0 <= -c < 2^b`, and lies in `F2` when also `a = b`.
pub fn membership(x: &Element, sub: Subalgebra) -> bool {
    match sub {
        Subalgebra::CU => x.equals(&expectations::e_cu(x)),
        Subalgebra::D2 => x.equals(&expectations::e_d2(x)),
        Subalgebra::QT => x.equals(&expectations::e_gauge(x)),
        Subalgebra::O2 | Subalgebra::F2 => {
            // refinement keeps words as words and leaves a non-word below
            // every non-word, so the class-wise form decides membership
            let ok = x
                .adaptive_form()
                .terms()
                .all(|(m, _)| m.is_cuntz_word() && (sub == Subalgebra::O2 || m.a == m.b));
            ok
        }
    }
}
