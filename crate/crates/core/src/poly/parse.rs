//! Text input for polynomials.
//!
//! ```text
//! poly     := ['+'|'-'] term (('+'|'-') term)*
//! term     := coef '*' monomial | coef | monomial
//! coef     := rational | '(' ['-'] rational ('+'|'-') rational 'i' ')'
//! rational := integer ['/' positive-integer]
//! monomial := var ['^' ['-'] integer] ('*' var ['^' ['-'] integer])*
//! var      := 'z' index          (1-based)
//! ```
//!
//! Whitespace is ignored everywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Exponent, GaussianRational, LaurentPoly, PolyError};

pub fn parse(text: &str, nvars: usize) -> Result<LaurentPoly, PolyError> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut p = Parser {
        chars,
        idx: 0,
        nvars,
        end: text.len(),
    };
    let poly = p.poly()?;
    if let Some(pos) = p.pos_if_remaining() {
        return Err(p.error_at(pos, "unexpected trailing input"));
    }
    Ok(poly)
}

/// Largest variable index mentioned in `text`; useful for inferring `nvars`.
pub fn max_variable_index(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'z' {
            let start = i + 1;
            let mut j = start;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(v) = text[start..j].parse::<usize>() {
                best = best.max(v);
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    best
}

struct Parser {
    chars: Vec<(usize, char)>,
    idx: usize,
    nvars: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars
            .get(self.idx)
            .map(|&(p, _)| p)
            .unwrap_or(self.end)
    }

    fn pos_if_remaining(&self) -> Option<usize> {
        self.chars.get(self.idx).map(|&(p, _)| p)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.idx += 1;
        c
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), PolyError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn error(&self, msg: &str) -> PolyError {
        self.error_at(self.pos(), msg)
    }

    fn error_at(&self, pos: usize, msg: &str) -> PolyError {
        PolyError::Syntax {
            pos,
            msg: msg.to_string(),
        }
    }

    fn poly(&mut self) -> Result<LaurentPoly, PolyError> {
        if self.peek().is_none() {
            return Err(self.error("empty polynomial"));
        }
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some('+') => {
                    self.bump();
                    false
                }
                Some('-') => {
                    self.bump();
                    true
                }
                None => break,
                _ if first => false,
                _ => return Err(self.error("expected '+' or '-'")),
            };
            first = false;
            let (e, c) = self.term()?;
            terms.push((e, if negative { -c } else { c }));
        }
        Ok(LaurentPoly::from_terms(self.nvars, terms))
    }

    fn term(&mut self) -> Result<(Exponent, GaussianRational), PolyError> {
        match self.peek() {
            Some('z') => Ok((self.monomial()?, GaussianRational::from_integer(1))),
            Some('(') | Some('0'..='9') => {
                let c = self.coef()?;
                if self.eat('*') {
                    Ok((self.monomial()?, c))
                } else {
                    Ok((Exponent::zero(self.nvars), c))
                }
            }
            _ => Err(self.error("expected coefficient or variable")),
        }
    }

    fn coef(&mut self) -> Result<GaussianRational, PolyError> {
        if self.eat('(') {
            let re_neg = self.eat('-');
            let mut re = self.rational()?;
            if re_neg {
                re = -re;
            }
            let im_neg = match self.bump() {
                Some('+') => false,
                Some('-') => true,
                _ => {
                    self.idx -= 1;
                    return Err(self.error("expected '+' or '-' in complex coefficient"));
                }
            };
            let mut im = self.rational()?;
            if im_neg {
                im = -im;
            }
            self.expect('i')?;
            self.expect(')')?;
            Ok(GaussianRational::new(re, im))
        } else {
            Ok(GaussianRational::from_parts(self.rational()?))
        }
    }

    fn digits(&mut self) -> Result<BigInt, PolyError> {
        let start = self.idx;
        while matches!(self.peek(), Some('0'..='9')) {
            self.idx += 1;
        }
        if start == self.idx {
            return Err(self.error("expected digits"));
        }
        let s: String = self.chars[start..self.idx]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn rational(&mut self) -> Result<BigRational, PolyError> {
        let num = self.digits()?;
        if self.eat('/') {
            let pos = self.pos();
            let den = self.digits()?;
            if den.is_zero() {
                return Err(self.error_at(pos, "zero denominator"));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn small_int(&mut self) -> Result<i64, PolyError> {
        let pos = self.pos();
        let neg = self.eat('-');
        let v = self.digits()?;
        let v: i64 = v
            .try_into()
            .map_err(|_| self.error_at(pos, "exponent too large"))?;
        Ok(if neg { -v } else { v })
    }

    fn monomial(&mut self) -> Result<Exponent, PolyError> {
        let mut exp = Exponent::zero(self.nvars);
        loop {
            let pos = self.pos();
            self.expect('z')?;
            let index = self.digits()?;
            let index: usize = index.try_into().unwrap_or(usize::MAX);
            if index == 0 || index > self.nvars {
                return Err(PolyError::VariableOutOfRange {
                    index,
                    nvars: self.nvars,
                });
            }
            let power = if self.eat('^') { self.small_int()? } else { 1 };
            exp.0[index - 1] = exp.0[index - 1]
                .checked_add(power)
                .ok_or_else(|| self.error_at(pos, "exponent overflow"))?;
            if self.peek() == Some('*')
                && self.chars.get(self.idx + 1).map(|&(_, c)| c) == Some('z')
            {
                self.bump();
            } else {
                break;
            }
        }
        Ok(exp)
    }
}
