//! Canonical text form of elements.
//!
//! ```text
//! term     := [coefficient "*"] [exterior] ["*"] [polynomial]
//! exterior := "a{i}a{j}.."      ascending indices
//! poly     := "x{i}^{e}.."      ascending indices, "^1" omitted
//! ```
//!
//! Terms are joined by `" + "` in canonical order, coefficients lie in
//! `1..p` with `1` omitted, and the zero element prints as `"0"`. The parser
//! also accepts non-canonical input: `-` between terms, coefficients outside
//! `0..p`, factors in any order (exterior factors are sorted with the Koszul
//! sign), and optional `*` between factors.

use std::fmt::{self, Write};

use super::{Element, Monomial, Ring};
use crate::error::{Error, Result};

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write_term(f, m, c)?;
        }
        Ok(())
    }
}

fn write_term(f: &mut impl Write, m: &Monomial, c: u32) -> fmt::Result {
    let mut parts: Vec<String> = Vec::with_capacity(3);
    if c != 1 {
        parts.push(c.to_string());
    }
    let ext: String = m.exterior_indices().map(|i| format!("a{i}")).collect();
    if !ext.is_empty() {
        parts.push(ext);
    }
    let mut poly = String::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => write!(poly, "x{}", i + 1)?,
            _ => write!(poly, "x{}^{}", i + 1, e)?,
        }
    }
    if !poly.is_empty() {
        parts.push(poly);
    }
    if parts.is_empty() {
        f.write_str("1")
    } else {
        f.write_str(&parts.join("*"))
    }
}

impl Element {
    /// Parse an element of `ring` from text.
    pub fn parse(ring: Ring, input: &str) -> Result<Element> {
        Parser { ring, input: input.as_bytes(), pos: 0 }.expression()
    }
}

/// Largest generator index mentioned in `input` (`a7` or `x7` gives 7), or 0.
/// Used to infer the rank when none is given.
pub fn max_generator_index(input: &str) -> usize {
    let bytes = input.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'a' || bytes[i] == b'x' {
            let start = i + 1;
            let mut j = start;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(k) = input[start..j].parse::<usize>() {
                best = best.max(k);
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    best
}

struct Parser<'a> {
    ring: Ring,
    input: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn expression(&mut self) -> Result<Element> {
        let mut total = Element::zero(self.ring);
        self.skip_ws();
        if self.peek().is_none() {
            return self.error("empty input");
        }
        let mut negative = false;
        if self.peek() == Some(b'-') {
            negative = true;
            self.pos += 1;
            self.skip_ws();
        }
        loop {
            let term = self.term()?;
            if negative {
                total -= &term;
            } else {
                total += &term;
            }
            self.skip_ws();
            match self.peek() {
                None => return Ok(total),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(c) => return self.error(format!("expected `+` or `-`, found `{}`", c as char)),
            }
            self.pos += 1;
            self.skip_ws();
        }
    }

    fn term(&mut self) -> Result<Element> {
        let mut acc = Element::one(self.ring);
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'0'..=b'9') => {
                    let n = self.number()?;
                    acc = acc.scale((n % self.ring.p() as u64) as u32);
                }
                Some(b'a') => {
                    if !self.ring.has_exterior() {
                        return self.error("exterior generators do not exist at p = 2");
                    }
                    self.pos += 1;
                    let i = self.index()?;
                    acc = &acc * &Element::a(self.ring, i);
                }
                Some(b'x') => {
                    self.pos += 1;
                    let i = self.index()?;
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let at = self.pos;
                        let n = self.number()?;
                        e = u32::try_from(n).map_err(|_| Error::Parse {
                            offset: at,
                            message: "exponent too large".into(),
                        })?;
                    }
                    acc = &acc * &Element::x_pow(self.ring, i, e);
                }
                Some(c) => return self.error(format!("expected a factor, found `{}`", c as char)),
                None => return self.error("expected a factor, found end of input"),
            }
            self.skip_ws();
            match self.peek() {
                Some(b'*') => self.pos += 1,
                Some(b'a' | b'x') => {}
                _ => return Ok(acc),
            }
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a number");
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::Parse {
                offset: start,
                message: "number too large".into(),
            })
    }

    fn index(&mut self) -> Result<usize> {
        let at = self.pos;
        let i = self.number()?;
        if i == 0 || i as usize > self.ring.rank() {
            return Err(Error::Parse {
                offset: at,
                message: format!("generator index {i} out of range 1..={}", self.ring.rank()),
            });
        }
        Ok(i as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::new(3, 2).unwrap()
    }

    #[test]
    fn canonical_printing() {
        let r = ring();
        let e = Element::parse(r, "x2^4 + 2*a1a2*x1^3x2").unwrap();
        assert_eq!(e.to_string(), "2*a1a2*x1^3x2 + x2^4");
        let m2 = Element::parse(r, "a1 x2 - a2 x1").unwrap();
        assert_eq!(m2.to_string(), "a1*x2 + 2*a2*x1");
        assert_eq!(Element::zero(r).to_string(), "0");
        assert_eq!(Element::one(r).to_string(), "1");
        assert_eq!(Element::scalar(r, -1).to_string(), "2");
    }

    #[test]
    fn lenient_input() {
        let r = ring();
        let e = Element::parse(r, "a2a1").unwrap();
        assert_eq!(e.to_string(), "2*a1a2");
        assert!(Element::parse(r, "a1a1").unwrap().is_zero());
        assert_eq!(Element::parse(r, "4*x1").unwrap().to_string(), "x1");
        assert_eq!(Element::parse(r, "-x1 + x1").unwrap().to_string(), "0");
        assert_eq!(Element::parse(r, "x1 x1").unwrap().to_string(), "x1^2");
    }

    #[test]
    fn error_positions() {
        let r = ring();
        match Element::parse(r, "a1 + a3") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("{other:?}"),
        }
        match Element::parse(r, "x1 ? x2") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("{other:?}"),
        }
        assert!(Element::parse(r, "").is_err());
        assert!(Element::parse(r, "x1 +").is_err());
        assert!(Element::parse(r, "x1*").is_err());
        assert!(Element::parse(Ring::new(2, 2).unwrap(), "a1").is_err());
    }

    #[test]
    fn infers_rank() {
        assert_eq!(max_generator_index("a1a2"), 2);
        assert_eq!(max_generator_index("2*x13^4"), 13);
        assert_eq!(max_generator_index("1"), 0);
    }
}
