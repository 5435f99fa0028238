//! Text syntax for elements.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' digits)?
//! atom    := digits ('/' digits)? | 'l' digits | 'r' digits | '(' sum ')'
//! ```
//!
//! Multiplication is always explicit. Whitespace is ignored.

use lsea_core::scalar::parse_scalar;
use lsea_core::Element;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at column {}: {message}", .position + 1)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

/// Failure while evaluating an expression under a term limit.
#[derive(Debug, Error)]
pub enum ExprError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error(transparent)]
    Algebra(#[from] lsea_core::Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(String),
    Gen(char, usize),
    Op(char),
}

fn err(position: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        position,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            c if c.is_ascii_whitespace() => i += 1,
            '0'..='9' => {
                let end = digits(i);
                let mut lit = text[i..end].to_string();
                // a literal may carry its own denominator: 3/4
                let mut k = end;
                while k < bytes.len() && bytes[k].is_ascii_whitespace() {
                    k += 1;
                }
                let mut next = end;
                if k < bytes.len() && bytes[k] == b'/' {
                    let mut m = k + 1;
                    while m < bytes.len() && bytes[m].is_ascii_whitespace() {
                        m += 1;
                    }
                    let dend = digits(m);
                    if dend == m {
                        return Err(err(m, "expected a denominator after '/'"));
                    }
                    lit = format!("{lit}/{}", &text[m..dend]);
                    next = dend;
                }
                out.push((i, Tok::Num(lit)));
                i = next;
            }
            'l' | 'r' => {
                let end = digits(i + 1);
                if end == i + 1 {
                    return Err(err(i + 1, format!("expected an index after '{c}'")));
                }
                let idx: usize = text[i + 1..end]
                    .parse()
                    .map_err(|_| err(i + 1, "generator index too large"))?;
                out.push((i, Tok::Gen(c, idx)));
                i = end;
            }
            '+' | '-' | '*' | '^' | '(' | ')' => {
                out.push((i, Tok::Op(c)));
                i += 1;
            }
            '/' => return Err(err(i, "division is only allowed inside a rational literal")),
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(err(i, format!("unexpected character {ch:?}")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    n: usize,
    end: usize,
    limit: Option<usize>,
    // first term-limit failure; parsing unwinds as soon as it is set
    overflow: Option<lsea_core::Error>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn mul(&mut self, a: &Element, b: &Element, at: usize) -> Result<Element, ParseError> {
        a.mul_limited(b, self.limit).map_err(|e| {
            self.overflow = Some(e);
            err(at, "term limit exceeded")
        })
    }

    fn sum(&mut self) -> Result<Element, ParseError> {
        let mut acc = self.product()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.product()?;
            } else if self.eat('-') {
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Element, ParseError> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            let at = self.offset();
            let rhs = self.unary()?;
            acc = self.mul(&acc, &rhs, at)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Element, ParseError> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Element, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(s)) if !s.contains('/') => {
                self.pos += 1;
                let k: u32 = s.parse().map_err(|_| err(at, "exponent too large"))?;
                let mut acc = Element::one(self.n);
                for _ in 0..k {
                    acc = self.mul(&acc, &base, at)?;
                }
                Ok(acc)
            }
            _ => Err(err(at, "expected a non-negative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Element, ParseError> {
        let at = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(err(at, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Num(s) => {
                let c = parse_scalar(&s).map_err(|e| err(at, e.to_string()))?;
                Ok(Element::constant(self.n, c))
            }
            Tok::Gen(kind, idx) => {
                let g = if kind == 'l' {
                    Element::l(self.n, idx)
                } else {
                    Element::r(self.n, idx)
                };
                g.map_err(|e| err(at, e.to_string()))
            }
            Tok::Op('(') => {
                let inner = self.sum()?;
                if !self.eat(')') {
                    return Err(err(self.offset(), "expected ')'"));
                }
                Ok(inner)
            }
            Tok::Op(c) => Err(err(at, format!("unexpected '{c}'"))),
        }
    }
}

/// Parses an element of `U_n`.
pub fn parse(text: &str, n: usize) -> Result<Element, ParseError> {
    match parse_limited(text, n, None) {
        Ok(e) => Ok(e),
        Err(ExprError::Syntax(e)) => Err(e),
        Err(ExprError::Algebra(e)) => unreachable!("no term limit was set: {e}"),
    }
}

/// Like [`parse`], failing with [`ExprError::Algebra`] once an
/// intermediate product has more than `limit` terms.
pub fn parse_limited(text: &str, n: usize, limit: Option<usize>) -> Result<Element, ExprError> {
    if n == 0 {
        return Err(err(0, "ambient dimension must be positive").into());
    }
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        n,
        end: text.len(),
        limit,
        overflow: None,
    };
    let e = p.sum();
    if let Some(over) = p.overflow {
        return Err(over.into());
    }
    let e = e?;
    if p.pos < p.toks.len() {
        return Err(err(p.offset(), "unexpected trailing input").into());
    }
    e.check_terms(limit)?;
    Ok(e)
}

/// Parses a `;`-separated list of elements.
pub fn parse_list(text: &str, n: usize, limit: Option<usize>) -> Result<Vec<Element>, ExprError> {
    let mut out = Vec::new();
    let mut start = 0;
    for part in text.split(';') {
        let e = parse_limited(part, n, limit).map_err(|e| match e {
            ExprError::Syntax(e) => ExprError::Syntax(err(e.position + start, e.message)),
            other => other,
        })?;
        out.push(e);
        start += part.len() + 1;
    }
    Ok(out)
}

/// Canonical text: terms in descending order, e.g. `l1^2*r1 + 2*l1*r1*r1`.
pub fn format(g: &Element) -> String {
    g.to_string()
}

pub fn format_list(items: &[Element]) -> String {
    items.iter().map(format).collect::<Vec<_>>().join("; ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(format(&parse("r1*l2", 2).unwrap()), "l2*r1 + r1*r2");
        assert_eq!(format(&parse("l1 - l1", 1).unwrap()), "0");
        assert_eq!(format(&parse("(l1-r1)^2", 1).unwrap()), "l1^2 - 2*l1*r1");
        assert_eq!(format(&parse("r1*l1^2", 1).unwrap()), "l1^2*r1 + 2*l1*r1*r1 + 2*r1*r1*r1");
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("-l1^2", 1).unwrap(), -parse("l1*l1", 1).unwrap());
        assert_eq!(parse("2*l1 + 3/4", 1).unwrap().to_string(), "2*l1 + 3/4");
        assert_eq!(parse("3 / 4 * r1", 1).unwrap().to_string(), "3/4*r1");
        assert_eq!(parse("--l1", 1).unwrap().to_string(), "l1");
        assert_eq!(parse("(l1)^0", 1).unwrap().to_string(), "1");
        assert_eq!(parse("  l1\t*\nr1 ", 1).unwrap().to_string(), "l1*r1");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("l1 + ", 1).unwrap_err().position, 5);
        assert_eq!(parse("l1 r1", 1).unwrap_err().position, 3);
        assert_eq!(parse("l3", 2).unwrap_err().position, 0);
        assert_eq!(parse("l1^-1", 1).unwrap_err().position, 3);
        assert_eq!(parse("1/0", 1).unwrap_err().position, 0);
        assert_eq!(parse("l1/2", 1).unwrap_err().position, 2);
        assert_eq!(parse("0.5", 1).unwrap_err().position, 1);
        assert_eq!(parse("(l1", 1).unwrap_err().position, 3);
        assert_eq!(parse("x", 1).unwrap_err().position, 0);
        assert_eq!(parse("l", 1).unwrap_err().position, 1);
        match parse_list("l1;r3", 2, None) {
            Err(ExprError::Syntax(e)) => assert_eq!(e.position, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn term_limit() {
        assert!(matches!(
            parse_limited("(l1+r1+l2+r2)^4", 2, Some(10)),
            Err(ExprError::Algebra(lsea_core::Error::TermLimit { .. }))
        ));
        assert!(parse_limited("(l1+r1)^2", 1, Some(10)).is_ok());
    }

    #[test]
    fn lists() {
        let v = parse_list("l1+l2^2;l2", 2, None).unwrap();
        assert_eq!(format_list(&v), "l2^2 + l1; l2");
    }
}
