//! Text form of chains: `2·[0,1] - [1,2] + 3*[2,3]`, and tensors
//! `[0,1]⊗[2] - [1](x)[0,2]`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::{Chain, TensorChain};
use crate::complex::Simplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiteralError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for LiteralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for LiteralError {}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, _src: src }
    }

    fn err(&self, message: impl Into<String>) -> LiteralError {
        let before = &self.chars[..self.pos.min(self.chars.len())];
        let line = before.iter().filter(|&&c| c == '\n').count() + 1;
        let column = before.iter().rev().take_while(|&&c| c != '\n').count() + 1;
        LiteralError { line, column, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        let want: Vec<char> = s.chars().collect();
        if self.chars[self.pos..].starts_with(&want) {
            self.pos += want.len();
            true
        } else {
            false
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn number(&mut self) -> Result<BigInt, LiteralError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn simplex(&mut self) -> Result<Simplex, LiteralError> {
        let at = {
            self.skip_ws();
            self.pos
        };
        if !self.eat('[') {
            return Err(self.err("expected '['"));
        }
        let mut v = Vec::new();
        loop {
            let n = self.number()?;
            v.push(usize::try_from(n).map_err(|_| self.err("vertex index out of range"))?);
            if self.eat(']') {
                break;
            }
            if !self.eat(',') {
                return Err(self.err("expected ',' or ']'"));
            }
        }
        Simplex::new(v).map_err(|e| {
            self.pos = at;
            self.err(e.to_string())
        })
    }

    /// `[sign] [coef ('·'|'*')] simplex (⊗ simplex)*`
    fn term(&mut self, first: bool) -> Result<Option<(BigInt, Vec<Simplex>)>, LiteralError> {
        let mut coef = BigInt::one();
        if self.eat('-') {
            coef = -coef;
        } else if !self.eat('+') && !first {
            return Err(self.err("expected '+' or '-'"));
        }
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let save = self.pos;
            let n = self.number()?;
            if self.eat('·') || self.eat('*') {
                coef *= n;
            } else if n == BigInt::from(0) && first && self.at_end() {
                return Ok(None);
            } else {
                self.pos = save;
                return Err(self.err("expected '·' or '*' after coefficient"));
            }
        }
        let mut slots = vec![self.simplex()?];
        while self.eat('⊗') || self.eat_str("(x)") {
            slots.push(self.simplex()?);
        }
        Ok(Some((coef, slots)))
    }

    fn terms(&mut self) -> Result<Vec<(BigInt, Vec<Simplex>)>, LiteralError> {
        let mut out = Vec::new();
        if self.at_end() {
            return Err(self.err("empty chain literal (write 0 for the zero chain)"));
        }
        let mut first = true;
        while !self.at_end() {
            match self.term(first)? {
                Some(t) => out.push(t),
                None => break,
            }
            first = false;
        }
        Ok(out)
    }
}

/// Parses a chain literal. The zero chain is written `0` and has degree 0.
pub fn parse_chain(text: &str) -> Result<Chain, LiteralError> {
    let mut cur = Cursor::new(text);
    let terms = cur.terms()?;
    let mut degree = None;
    let mut c = Chain::zero(0);
    for (coef, mut slots) in terms {
        if slots.len() != 1 {
            return Err(cur.err("tensor term in a chain literal"));
        }
        let s = slots.pop().expect("one slot");
        let d = s.dim() as i64;
        if *degree.get_or_insert(d) != d {
            return Err(cur.err(format!("mixed degrees {} and {d}", degree.unwrap_or(d))));
        }
        if c.is_zero() {
            c = Chain::zero(d);
        }
        c.add_term(s, coef);
    }
    if c.is_zero() {
        c = Chain::zero(degree.unwrap_or(0));
    }
    Ok(c)
}

/// Parses a tensor literal with the given slot shifts.
pub fn parse_tensor(text: &str, shifts: &[i64]) -> Result<TensorChain, LiteralError> {
    let mut cur = Cursor::new(text);
    let terms = cur.terms()?;
    for (_, slots) in &terms {
        if slots.len() != shifts.len() {
            return Err(cur.err(format!("term has {} slots, expected {}", slots.len(), shifts.len())));
        }
    }
    TensorChain::from_terms(shifts.to_vec(), terms.into_iter().map(|(c, s)| (s, c))).map_err(|e| cur.err(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_round_trip() {
        let c = parse_chain("2·[0,1] - [1,2] + 3*[0,2]").unwrap();
        assert_eq!(c.to_string(), "2·[0,1] + 3·[0,2] - [1,2]");
        assert_eq!(parse_chain(&c.to_string()).unwrap(), c);
        assert!(parse_chain("0").unwrap().is_zero());
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_chain("[0,1] +\n  [1,,2]").unwrap_err();
        assert_eq!((e.line, e.column), (2, 6));
        let e = parse_chain("[0,1] [1,2]").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(parse_chain("[0,1] - [2]").is_err());
        assert!(parse_chain("[1,1]").is_err());
    }

    #[test]
    fn tensors() {
        let t = parse_tensor("[0,1]⊗[2] - 2*[1](x)[0,2]", &[0, 0]).unwrap();
        assert_eq!(t.len(), 2);
        assert!(parse_tensor("[0,1]", &[0, 0]).is_err());
    }
}
