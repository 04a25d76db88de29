//! Text parsers: words over the digit alphabet, integer polynomials and
//! Laurent-polynomial identities in β.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::numfield::BetaContext;
use crate::poly::{render_terms, IntPoly};

const MAX_EXPONENT: i64 = 100_000;
const MAX_TERMS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unknown letter {0:?}")]
    UnknownLetter(String),
    #[error("unexpected {found} at offset {pos}")]
    Unexpected { found: String, pos: usize },
    #[error("unexpected end of input")]
    Eof,
    #[error("exponent out of range at offset {0}")]
    Exponent(usize),
    #[error("negative power of a non-monomial at offset {0}")]
    NotInvertible(usize),
    #[error("expression too large")]
    TooLarge,
    #[error("expected a polynomial without negative powers")]
    NegativePower,
    #[error("expected exactly one '='")]
    NotAnIdentity,
}

/// Parse a word. Names are matched character by character when every name
/// is a single character and the text has no separators; otherwise the text
/// is split on whitespace and commas.
pub fn parse_word(names: &[String], text: &str) -> Result<Vec<usize>, ParseError> {
    let text = text.trim();
    let lookup =
        |tok: &str| names.iter().position(|n| n == tok).ok_or_else(|| ParseError::UnknownLetter(tok.to_string()));
    let separated = text.contains(|c: char| c.is_whitespace() || c == ',');
    let single = names.iter().all(|n| n.chars().count() == 1);
    if !separated && single {
        return text.chars().map(|c| lookup(&c.to_string())).collect();
    }
    text.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(lookup).collect()
}

/// Render a word with the context's names, separated when names are long.
pub fn render_word(names: &[String], word: &[usize]) -> String {
    let single = names.iter().all(|n| n.chars().count() == 1);
    let parts: Vec<&str> = word.iter().map(|&i| names[i].as_str()).collect();
    if single {
        parts.concat()
    } else {
        parts.join(" ")
    }
}

/// Finite sum `Σ c_e x^e` with integer exponents of either sign.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent(BTreeMap<i64, BigInt>);

impl Laurent {
    pub fn constant(c: BigInt) -> Self {
        Laurent::monomial(c, 0)
    }

    pub fn monomial(c: BigInt, e: i64) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(e, c);
        }
        Laurent(m)
    }

    /// Nonzero terms, increasing exponent.
    pub fn terms(&self) -> Vec<(i64, BigInt)> {
        self.0.iter().map(|(e, c)| (*e, c.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        let entry = self.0.entry(e).or_default();
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &o.0 {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Laurent {
        Laurent(self.0.iter().map(|(e, c)| (*e, -c)).collect())
    }

    pub fn sub(&self, o: &Laurent) -> Laurent {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Laurent) -> Result<Laurent, ParseError> {
        if self.0.len().saturating_mul(o.0.len()) > MAX_TERMS {
            return Err(ParseError::TooLarge);
        }
        let mut out = Laurent::default();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &o.0 {
                let e = e1.checked_add(*e2).filter(|e| e.abs() <= MAX_EXPONENT).ok_or(ParseError::TooLarge)?;
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn to_poly(&self) -> Result<IntPoly, ParseError> {
        if self.0.keys().any(|&e| e < 0) {
            return Err(ParseError::NegativePower);
        }
        let deg = self.0.keys().max().copied().unwrap_or(0) as usize;
        let mut v = vec![BigInt::zero(); deg + 1];
        for (e, c) in &self.0 {
            v[*e as usize] = c.clone();
        }
        Ok(IntPoly::new(v))
    }

    pub fn render(&self, var: &str) -> String {
        render_terms(self.0.iter().rev().map(|(e, c)| (*e, c.clone())), var)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var,
    Op(char),
}

fn is_var(name: &str) -> bool {
    matches!(name, "x" | "X" | "b" | "β" | "beta")
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            if i - start > 1000 {
                return Err(ParseError::TooLarge);
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((Tok::Num(s.parse().expect("digits")), pos));
        } else if c.is_alphabetic() || c == '\\' {
            if c == '\\' {
                i += 1;
            }
            let start = i;
            while i < chars.len() && chars[i].1.is_alphabetic() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            if !is_var(&s) {
                return Err(ParseError::Unexpected { found: s, pos });
            }
            out.push((Tok::Var, pos));
        } else if c == '*' && chars.get(i + 1).is_some_and(|&(_, d)| d == '*') {
            out.push((Tok::Op('^'), pos));
            i += 2;
        } else if "+-*^()={}".contains(c) {
            let c = match c {
                '{' => '(',
                '}' => ')',
                c => c,
            };
            out.push((Tok::Op(c), pos));
            i += 1;
        } else {
            return Err(ParseError::Unexpected { found: c.to_string(), pos });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |&(_, p)| p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.toks.get(self.at) {
            None => ParseError::Eof,
            Some((t, p)) => ParseError::Unexpected { found: format!("{t:?}"), pos: *p },
        }
    }

    fn expr(&mut self, depth: usize) -> Result<Laurent, ParseError> {
        if depth > 64 {
            return Err(ParseError::TooLarge);
        }
        let mut acc = Laurent::default();
        let mut first = true;
        loop {
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                return Ok(acc);
            };
            first = false;
            let t = self.term(depth)?;
            acc = if negative { acc.sub(&t) } else { acc.add(&t) };
        }
    }

    fn term(&mut self, depth: usize) -> Result<Laurent, ParseError> {
        let mut acc = self.power(depth)?;
        loop {
            let explicit = self.eat('*');
            match self.peek() {
                Some(Tok::Num(_)) | Some(Tok::Var) | Some(Tok::Op('(')) => {
                    let f = self.power(depth)?;
                    acc = acc.mul(&f)?;
                }
                _ if explicit => return Err(self.unexpected()),
                _ => return Ok(acc),
            }
        }
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let pos = self.pos();
        let paren = self.eat('(');
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return Err(self.unexpected());
        };
        self.at += 1;
        if paren && !self.eat(')') {
            return Err(self.unexpected());
        }
        let n: i64 = i64::try_from(&n).ok().filter(|n| *n <= MAX_EXPONENT).ok_or(ParseError::Exponent(pos))?;
        Ok(if negative { -n } else { n })
    }

    fn power(&mut self, depth: usize) -> Result<Laurent, ParseError> {
        let pos = self.pos();
        let base = self.primary(depth)?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = self.exponent()?;
        if e < 0 {
            let single = base.0.len() == 1 && base.0.values().all(|c| c.abs().is_one());
            if !single {
                return Err(ParseError::NotInvertible(pos));
            }
            let (&k, c) = base.0.iter().next().unwrap();
            let c = if e % 2 != 0 { c.clone() } else { BigInt::one() };
            let exp = k.checked_mul(e).filter(|x| x.abs() <= MAX_EXPONENT).ok_or(ParseError::Exponent(pos))?;
            return Ok(Laurent::monomial(c, exp));
        }
        let mut out = Laurent::constant(BigInt::one());
        for _ in 0..e {
            out = out.mul(&base)?;
            if out.0.len() > MAX_TERMS {
                return Err(ParseError::TooLarge);
            }
        }
        Ok(out)
    }

    fn primary(&mut self, depth: usize) -> Result<Laurent, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(Laurent::constant(n))
            }
            Some(Tok::Var) => {
                self.at += 1;
                Ok(Laurent::monomial(BigInt::one(), 1))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let inner = self.expr(depth + 1)?;
                if !self.eat(')') {
                    return Err(self.unexpected());
                }
                Ok(inner)
            }
            Some(Tok::Op('-')) => {
                self.at += 1;
                Ok(self.power(depth + 1)?.neg())
            }
            _ => Err(self.unexpected()),
        }
    }
}

fn parse_side(toks: Vec<(Tok, usize)>, end: usize) -> Result<Laurent, ParseError> {
    let mut p = Parser { toks, at: 0, end };
    let v = p.expr(0)?;
    if p.at != p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(v)
}

/// Parse a Laurent polynomial in β (also written `x`, `X`, `b` or `beta`).
pub fn parse_laurent(text: &str) -> Result<Laurent, ParseError> {
    let toks = tokenize(text)?;
    if toks.iter().any(|(t, _)| *t == Tok::Op('=')) {
        return Err(ParseError::Unexpected { found: "=".into(), pos: 0 });
    }
    parse_side(toks, text.len())
}

/// Parse an integer polynomial such as `x^3-3x^2+1`.
pub fn parse_int_poly(text: &str) -> Result<IntPoly, ParseError> {
    parse_laurent(text)?.to_poly()
}

/// Parse `lhs = rhs` and return `lhs - rhs`.
pub fn parse_identity(text: &str) -> Result<Laurent, ParseError> {
    let toks = tokenize(text)?;
    let eqs: Vec<usize> = toks.iter().enumerate().filter(|(_, (t, _))| *t == Tok::Op('=')).map(|(i, _)| i).collect();
    if eqs.len() != 1 {
        return Err(ParseError::NotAnIdentity);
    }
    let (lhs, rhs) = toks.split_at(eqs[0]);
    let split = rhs[0].1;
    let l = parse_side(lhs.to_vec(), split)?;
    let r = parse_side(rhs[1..].to_vec(), text.len())?;
    Ok(l.sub(&r))
}

/// Exact check of an identity between Laurent polynomials in β.
pub fn verify_identity(ctx: &BetaContext, text: &str) -> Result<bool, ParseError> {
    let diff = parse_identity(text)?;
    Ok(ctx.laurent_is_zero(&diff.terms()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn words() {
        let n = names(&["0", "1", "3"]);
        assert_eq!(parse_word(&n, "103").unwrap(), vec![1, 0, 2]);
        assert_eq!(parse_word(&n, "1 0, 3").unwrap(), vec![1, 0, 2]);
        assert_eq!(parse_word(&n, "").unwrap(), Vec::<usize>::new());
        assert_eq!(parse_word(&n, "2"), Err(ParseError::UnknownLetter("2".into())));
        let long = names(&["0", "P", "Q1"]);
        assert_eq!(parse_word(&long, "P Q1 0").unwrap(), vec![1, 2, 0]);
        assert_eq!(render_word(&long, &[1, 2]), "P Q1");
        assert_eq!(render_word(&n, &[0, 2, 2]), "033");
    }

    #[test]
    fn polynomials() {
        assert_eq!(parse_int_poly("x^2-3x+1").unwrap(), IntPoly::from_i64(&[1, -3, 1]));
        assert_eq!(parse_int_poly("X**3 - 3*X^2 + 1").unwrap(), IntPoly::from_i64(&[1, 0, -3, 1]));
        assert_eq!(parse_int_poly("(x+1)^2").unwrap(), IntPoly::from_i64(&[1, 2, 1]));
        assert_eq!(parse_int_poly("-x").unwrap(), IntPoly::from_i64(&[0, -1]));
        assert_eq!(parse_int_poly("x^-1"), Err(ParseError::NegativePower));
        assert!(parse_int_poly("x^").is_err());
        assert!(parse_int_poly("y").is_err());
        assert!(parse_int_poly("(x+1)^-1").is_err());
    }

    #[test]
    fn laurent_and_identities() {
        let l = parse_laurent("β^{-2} + 2\\beta^-1 - 3").unwrap();
        assert_eq!(l.terms(), vec![(-2, BigInt::from(1)), (-1, BigInt::from(2)), (0, BigInt::from(-3))]);
        let d = parse_identity("x^2 = x + 1").unwrap();
        assert_eq!(d.terms(), vec![(0, BigInt::from(-1)), (1, BigInt::from(-1)), (2, BigInt::from(1))]);
        assert_eq!(parse_identity("x = 1 = 2"), Err(ParseError::NotAnIdentity));
    }
}
