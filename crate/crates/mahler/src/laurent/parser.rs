//! Recursive-descent parser for the polynomial grammar:
//!
//! ```text
//! poly    := term (('+'|'-') term)*
//! term    := [coef '*'] factor ('*' factor)* | coef
//! factor  := 'Z' index ['^' int]
//! coef    := rational | '(' rational [('+'|'-') rational 'i'] ')' | rational 'i'
//! rational:= int ['/' posint] | decimal
//! ```
//!
//! Whitespace is ignored between tokens. Variables are `Z1..Zn`; decimals
//! are converted exactly to rationals. Errors report the byte offset.

use super::{GaussianRational, LaurentPoly};
use crate::{Error, Result};
use num::{BigInt, BigRational, Zero};
use std::collections::BTreeMap;

pub(super) fn parse(text: &str, expected_nvars: Option<usize>) -> Result<LaurentPoly> {
    if let Some(n) = expected_nvars {
        assert!(n >= 1, "expected_nvars must be positive");
    }
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        expected_nvars,
        max_index: 0,
    };
    let terms = p.poly()?;
    let nvars = expected_nvars.unwrap_or_else(|| p.max_index.max(1));
    let dense = terms.into_iter().map(|(vars, coeff)| {
        let mut exps = vec![0i64; nvars];
        for (idx, e) in vars {
            exps[idx] = e;
        }
        (exps, coeff)
    });
    LaurentPoly::from_terms(nvars, dense.collect::<Vec<_>>())
}

type TermExps = BTreeMap<usize, i64>;

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    expected_nvars: Option<usize>,
    max_index: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, pos: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        match self.peek() {
            Some(b) if b == byte => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(self.pos, format!("expected '{}'", byte as char)),
        }
    }

    fn poly(&mut self) -> Result<Vec<(TermExps, GaussianRational)>> {
        if self.peek().is_none() {
            return self.err(self.pos, "empty polynomial");
        }
        let mut terms = vec![self.term()?];
        while let Some(b) = self.peek() {
            let negate = match b {
                b'+' => false,
                b'-' => true,
                _ => return self.err(self.pos, "expected '+', '-', or end of input"),
            };
            self.pos += 1;
            let (exps, coeff) = self.term()?;
            terms.push((exps, if negate { -coeff } else { coeff }));
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<(TermExps, GaussianRational)> {
        let mut exps = TermExps::new();
        let coeff = match self.peek() {
            Some(b'Z') => {
                self.factor(&mut exps)?;
                GaussianRational::one()
            }
            Some(_) => {
                let c = self.coef()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.factor(&mut exps)?;
                }
                c
            }
            None => return self.err(self.pos, "expected a term"),
        };
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut exps)?;
        }
        Ok((exps, coeff))
    }

    fn factor(&mut self, exps: &mut TermExps) -> Result<()> {
        match self.peek() {
            Some(b'Z') => {}
            _ => return self.err(self.pos, "expected a variable 'Z<index>'"),
        }
        let start = self.pos;
        self.pos += 1;
        let idx_pos = self.pos;
        let index = self.digits()?.parse::<usize>().ok().filter(|i| *i >= 1);
        let index = match index {
            Some(i) => i,
            None => return self.err(idx_pos, "variable index must be a positive integer"),
        };
        if let Some(n) = self.expected_nvars {
            if index > n {
                return self.err(
                    start,
                    format!("variable Z{index} exceeds the expected variable count {n}"),
                );
            }
        }
        self.max_index = self.max_index.max(index);
        let exp = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.int()?
        } else {
            1
        };
        *exps.entry(index - 1).or_insert(0) += exp;
        Ok(())
    }

    fn coef(&mut self) -> Result<GaussianRational> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let re = self.rational()?;
            let coeff = match self.peek() {
                Some(b @ (b'+' | b'-')) => {
                    self.pos += 1;
                    let im = self.rational()?;
                    self.expect(b'i')?;
                    let im = if b == b'-' { -im } else { im };
                    GaussianRational::new(re, im)
                }
                _ => GaussianRational::new(re, BigRational::zero()),
            };
            self.expect(b')')?;
            Ok(coeff)
        } else {
            let r = self.rational()?;
            if self.peek() == Some(b'i') {
                self.pos += 1;
                Ok(GaussianRational::new(BigRational::zero(), r))
            } else {
                Ok(GaussianRational::new(r, BigRational::zero()))
            }
        }
    }

    fn rational(&mut self) -> Result<BigRational> {
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let int_part = self.digits()?;
        let value = match self.bytes.get(self.pos) {
            Some(b'.') => {
                self.pos += 1;
                let frac_pos = self.pos;
                let frac = self.digits_at(frac_pos)?;
                let numer: BigInt = format!("{int_part}{frac}").parse().unwrap();
                let denom = BigInt::from(10).pow(frac.len() as u32);
                BigRational::new(numer, denom)
            }
            Some(b'/') => {
                self.pos += 1;
                let denom_pos = self.pos;
                let denom: BigInt = self.digits_at(denom_pos)?.parse().unwrap();
                if denom.is_zero() {
                    return self.err(denom_pos, "denominator must be a positive integer");
                }
                BigRational::new(int_part.parse().unwrap(), denom)
            }
            _ => BigRational::from_integer(int_part.parse().unwrap()),
        };
        Ok(if negative { -value } else { value })
    }

    fn int(&mut self) -> Result<i64> {
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let pos = self.pos;
        let digits = self.digits_at(pos)?;
        match digits.parse::<i64>() {
            Ok(v) => Ok(if negative { -v } else { v }),
            Err(_) => self.err(pos, "integer out of range"),
        }
    }

    /// Reads a run of digits, skipping leading whitespace first.
    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let pos = self.pos;
        self.digits_at(pos)
    }

    /// Reads a run of digits starting exactly at the current position.
    fn digits_at(&mut self, pos: usize) -> Result<String> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err(pos, "expected digits");
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .to_owned())
    }
}
