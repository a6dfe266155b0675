//! Recursive-descent parser for element expressions.
//!
//! ```text
//! element := ('+'|'-')? term (('+'|'-') term)*
//! term    := factor+
//! factor  := atom ('*' | '^' '-'? integer)*
//! atom    := 'U' | 'S1' | 'S2' | integer ('/' integer)? | 'i'
//!          | 'zeta' '(' integer ('^' integer)? ')' | '(' element ')'
//! ```
//!
//! Juxtaposition is multiplication, a postfix `*` is the adjoint and `^` binds
//! tighter than juxtaposition. Positions in errors are 1-based character
//! offsets; the end of input is `len + 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{Element, Generator};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar, MAX_LEVEL};

/// Depth bound for parsed expressions.
pub const MAX_PARSE_DEPTH: u32 = 24;
const MAX_ABS_SHIFT: i64 = 1 << 30;
const MAX_U_EXPONENT: i64 = 1 << 20;
const MAX_SCALAR_EXPONENT: i64 = 64;
const MAX_PRODUCT_TERMS: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub position: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at position {}: found {}, expected one of {}",
            self.position,
            self.found,
            self.expected.join(", ")
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    U,
    S1,
    S2,
    I,
    Z,
    Zeta,
    Int(BigInt),
    Plus,
    Minus,
    Slash,
    Caret,
    Star,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::U => "'U'".into(),
            Tok::S1 => "'S1'".into(),
            Tok::S2 => "'S2'".into(),
            Tok::I => "'i'".into(),
            Tok::Z => "'z'".into(),
            Tok::Zeta => "'zeta'".into(),
            Tok::Int(n) => format!("integer {n}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Star => "'*'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(input: &str) -> std::result::Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let ch = chars[k];
        let pos = k + 1;
        if ch.is_whitespace() {
            k += 1;
            continue;
        }
        let single = match ch {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '*' => Some(Tok::Star),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            'U' => Some(Tok::U),
            'i' => Some(Tok::I),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            k += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            out.push((Tok::Int(digits.parse().expect("ascii digits")), pos));
            continue;
        }
        if ch == 'S' && k + 1 < chars.len() && (chars[k + 1] == '1' || chars[k + 1] == '2') {
            out.push((if chars[k + 1] == '1' { Tok::S1 } else { Tok::S2 }, pos));
            k += 2;
            continue;
        }
        if chars[k..].starts_with(&['z', 'e', 't', 'a']) {
            out.push((Tok::Zeta, pos));
            k += 4;
            continue;
        }
        if ch == 'z' {
            out.push((Tok::Z, pos));
            k += 1;
            continue;
        }
        return Err(ParseError {
            position: pos,
            expected: vec!["a token".into()],
            found: format!("character {ch:?}"),
        });
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

/// Options for [`parse_element_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Accept `z` as a name for `U` (circle functions written as `f(z)`).
    pub z_is_u: bool,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    opts: ParseOptions,
}

fn limit(msg: &str) -> Error {
    Error::InvalidInput(format!("expression exceeds engine limits: {msg}"))
}

fn check_element(x: &Element) -> Result<()> {
    if x.depth() > MAX_PARSE_DEPTH {
        return Err(limit("depth"));
    }
    if x.max_abs_c() > MAX_ABS_SHIFT {
        return Err(limit("U exponent"));
    }
    Ok(())
}

fn checked_mul(x: &Element, y: &Element) -> Result<Element> {
    if x.depth() + y.depth() > MAX_PARSE_DEPTH {
        return Err(limit("depth"));
    }
    if x.len().saturating_mul(y.len()) > MAX_PRODUCT_TERMS {
        return Err(limit("term count"));
    }
    let reach = (x.max_abs_c() + (1i64 << y.depth())) << y.depth();
    if reach + y.max_abs_c() > MAX_ABS_SHIFT {
        return Err(limit("U exponent"));
    }
    let p = x * y;
    check_element(&p)?;
    Ok(p)
}

fn checked_pow(x: &Element, n: u64) -> Result<Element> {
    let mut acc = Element::one();
    let mut sq = x.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = checked_mul(&acc, &sq)?;
        }
        e >>= 1;
        if e > 0 {
            sq = checked_mul(&sq, &sq)?;
        }
    }
    Ok(acc)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> Error {
        Error::Parse(ParseError {
            position: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        })
    }

    fn atom_starts(&self) -> Vec<&'static str> {
        let mut v = vec!["'U'", "'S1'", "'S2'", "'i'", "'zeta'", "integer", "'('"];
        if self.opts.z_is_u {
            v.push("'z'");
        }
        v
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::U | Tok::S1 | Tok::S2 | Tok::I | Tok::Zeta | Tok::Int(_) | Tok::LParen => true,
            Tok::Z => self.opts.z_is_u,
            _ => false,
        }
    }

    fn element(&mut self) -> Result<Element> {
        let mut negate = false;
        match self.peek() {
            Tok::Plus => {
                self.bump();
            }
            Tok::Minus => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Element> {
        if !self.starts_atom() {
            return Err(self.error(&self.atom_starts()));
        }
        let mut acc = self.factor()?;
        while self.starts_atom() {
            let f = self.factor()?;
            acc = checked_mul(&acc, &f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Element> {
        let mut x = self.atom()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    x = x.adjoint();
                }
                Tok::Caret => {
                    self.bump();
                    let n = self.signed_int()?;
                    x = self.power(x, n)?;
                }
                _ => return Ok(x),
            }
        }
    }

    fn power(&self, x: Element, n: i64) -> Result<Element> {
        if let Some(s) = x.as_scalar() {
            if n.abs() > MAX_SCALAR_EXPONENT {
                return Err(limit("scalar exponent"));
            }
            return Ok(Element::scalar(s.pow(n)?));
        }
        if n.abs() > MAX_U_EXPONENT {
            return Err(limit("exponent"));
        }
        if n >= 0 {
            return checked_pow(&x, n as u64);
        }
        if !x.is_unitary() {
            return Err(Error::InvalidInput(format!("{x} has no inverse")));
        }
        let inv = x.adjoint();
        checked_pow(&inv, n.unsigned_abs())
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let n = self.int()?;
        let v = n.to_i64().ok_or_else(|| limit("exponent"))?;
        Ok(if neg { -v } else { v })
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.error(&["integer"])),
        }
    }

    fn expect(&mut self, t: Tok, name: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn atom(&mut self) -> Result<Element> {
        let here = self.pos();
        match self.peek().clone() {
            Tok::U => {
                self.bump();
                Ok(Element::generator(Generator::U))
            }
            Tok::Z if self.opts.z_is_u => {
                self.bump();
                Ok(Element::generator(Generator::U))
            }
            Tok::S1 => {
                self.bump();
                Ok(Element::generator(Generator::S1))
            }
            Tok::S2 => {
                self.bump();
                Ok(Element::generator(Generator::S2))
            }
            Tok::I => {
                self.bump();
                Ok(Element::scalar(Scalar::cyclo(2, 1)))
            }
            Tok::Int(n) => {
                self.bump();
                let mut r = Rational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let pos = self.pos();
                    let d = self.int()?;
                    if d.is_zero() {
                        return Err(Error::Parse(ParseError {
                            position: pos,
                            expected: vec!["nonzero denominator".into()],
                            found: "0".into(),
                        }));
                    }
                    r /= Rational::from_integer(d);
                }
                Ok(Element::scalar(Scalar::from_rational(r)))
            }
            Tok::Zeta => {
                self.bump();
                self.expect(Tok::LParen, "'('")?;
                let order_pos = self.pos();
                let base = self.int()?;
                let order = if *self.peek() == Tok::Caret {
                    self.bump();
                    let e = self.int()?;
                    let e = e.to_u32().filter(|&e| e <= MAX_LEVEL).ok_or_else(|| limit("root order"))?;
                    base.pow(e)
                } else {
                    base
                };
                self.expect(Tok::RParen, "')'")?;
                let level = dyadic_level(&order).ok_or_else(|| {
                    Error::Parse(ParseError {
                        position: order_pos,
                        expected: vec![format!("a power of two up to 2^{MAX_LEVEL}")],
                        found: order.to_string(),
                    })
                })?;
                Ok(Element::scalar(Scalar::cyclo(level, 1)))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.element()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => {
                debug_assert_eq!(here, self.pos());
                Err(self.error(&self.atom_starts()))
            }
        }
    }
}

fn dyadic_level(order: &BigInt) -> Option<u32> {
    let n = order.to_u64()?;
    if n == 0 || !n.is_power_of_two() {
        return None;
    }
    let level = n.trailing_zeros();
    (level <= MAX_LEVEL).then_some(level)
}

pub fn parse_element(input: &str) -> Result<Element> {
    parse_element_with(input, ParseOptions::default())
}

pub fn parse_element_with(input: &str, opts: ParseOptions) -> Result<Element> {
    let toks = lex(input)?;
    let mut p = Parser { toks, at: 0, opts };
    let x = p.element()?;
    if *p.peek() != Tok::End {
        let mut expected = vec!["'+'", "'-'", "end of input"];
        expected.extend(p.atom_starts());
        return Err(p.error(&expected));
    }
    Ok(x)
}

/// Parses a scalar expression such as `1/2`, `-zeta(8)^3` or `(1 + i)/1`.
pub fn parse_scalar(input: &str) -> Result<Scalar> {
    let x = parse_element(input)?;
    x.as_scalar().ok_or_else(|| Error::InvalidInput(format!("{input:?} is not a scalar")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    fn g(x: Generator) -> Element {
        Element::generator(x)
    }

    fn p(s: &str) -> Element {
        parse_element(s).unwrap()
    }

    #[test]
    fn examples() {
        assert!(p("S2 U").equals(&(g(U).pow(2) * g(S2))));
        assert!(p("U^-1 S1").equals(&g(S2)));
        match parse_element("S2 +") {
            Err(Error::Parse(e)) => assert_eq!(e.position, 5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn postfix_and_scalars() {
        assert_eq!(p("S2*^3"), g(S2Star).pow(3));
        assert_eq!(p("(S1 S2*)*"), (g(S1) * g(S2Star)).adjoint());
        assert_eq!(p("1/2 U"), g(U).scale(&Scalar::rational(1, 2)));
        assert_eq!(p("-zeta(8)^3 S2"), g(S2).scale(&-Scalar::cyclo(3, 3)));
        assert_eq!(p("zeta(2^3)"), Element::scalar(Scalar::cyclo(3, 1)));
        assert_eq!(p("i i"), Element::scalar(Scalar::from_integer(-1)));
        assert_eq!(p("  U  *  "), g(UStar));
        assert_eq!(p("S1*"), g(S1Star));
        assert_eq!(p("0"), Element::zero());
        assert_eq!(p("2^-2"), Element::scalar(Scalar::rational(1, 4)));
    }

    #[test]
    fn z_alias() {
        let opts = ParseOptions { z_is_u: true };
        assert_eq!(parse_element_with("z^3 - z", opts).unwrap(), g(U).pow(3) - g(U));
        assert!(parse_element("z").is_err());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_element(""), Err(Error::Parse(_))));
        assert!(matches!(parse_element("S3"), Err(Error::Parse(_))));
        assert!(matches!(parse_element("zeta(3)"), Err(Error::Parse(_))));
        assert!(matches!(parse_element("1/0"), Err(Error::Parse(_))));
        assert!(matches!(parse_element("(U"), Err(Error::Parse(_))));
        assert!(matches!(parse_element("S2^-1"), Err(Error::InvalidInput(_))));
        assert!(matches!(parse_element("S2^99"), Err(Error::InvalidInput(_))));
        assert!(matches!(parse_element("U^99999999999999999999"), Err(Error::InvalidInput(_))));
        match parse_element("U )") {
            Err(Error::Parse(e)) => {
                assert_eq!(e.position, 3);
                assert!(e.expected.contains(&"end of input".to_string()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn display_roundtrip_samples() {
        for s in ["S2", "1/2 U^3 S2^2 S2* U^-1", "(1 + zeta(8)) - 1/2 U + U S2 S2*", "-S1", "0", "-zeta(4) S2*"] {
            let x = p(s);
            assert_eq!(p(&x.to_string()), x, "{s}");
        }
    }
}
