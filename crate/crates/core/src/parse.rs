//! Text syntax for fields, elements and skew polynomials.
//!
//! Fields: `gf(q)`, `gf(p^m)` or `gf(p^m;mod=c0,c1,...,cm)` with ascending
//! modulus coefficients. Polynomials use `x` for the indeterminate and `a`
//! for the field generator, e.g. `x^3+a^4*x^2+1`; `*` may be omitted and
//! integers denote elements of the prime field. Products are evaluated in
//! the skew ring, so `x*a` means `θ(a)x`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{make_field, prime_power, FieldCtx, Gf};
use crate::skewpoly::{RingExt, SkewPoly, SkewRing};

/// Largest exponent accepted on `x` or a non-constant parenthesized factor.
const MAX_X_POWER: i64 = 1 << 12;

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

struct Cursor<'s> {
    src: &'s [u8],
    pos: usize,
}

impl<'s> Cursor<'s> {
    fn new(s: &'s str) -> Self {
        Cursor { src: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            err(self.pos, format!("expected '{}'", c as char))
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        self.skip_ws();
        let end = self.pos + w.len();
        if self.src.len() >= end && self.src[self.pos..end].eq_ignore_ascii_case(w.as_bytes()) {
            self.pos = end;
            true
        } else {
            false
        }
    }

    fn unsigned(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return err(start, "expected a number");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| err(start, "number too large"))
    }

    fn signed(&mut self) -> Result<i64> {
        let start = self.pos;
        let neg = self.eat(b'-');
        let v = self.unsigned()?;
        let v = i64::try_from(v).or_else(|_| err(start, "number too large"))?;
        Ok(if neg { -v } else { v })
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => err(self.pos, format!("unexpected '{}'", c as char)),
        }
    }
}

/// Parses a field spec such as `gf(8)`, `gf(3^2)` or `gf(2^3;mod=1,1,0,1)`.
pub fn parse_field(spec: &str) -> Result<Arc<FieldCtx>> {
    let mut c = Cursor::new(spec);
    if !c.eat_word("gf") {
        return err(c.pos, "expected 'gf('");
    }
    c.expect(b'(')?;
    let at = c.pos;
    let base = c.unsigned()?;
    let base = u32::try_from(base).or_else(|_| err(at, "field too large"))?;
    let (p, m) = if c.eat(b'^') {
        let at = c.pos;
        let m = c.unsigned()?;
        (base, u32::try_from(m).or_else(|_| err(at, "degree too large"))?)
    } else {
        match prime_power(base) {
            Some(pm) => pm,
            None => return err(at, format!("{base} is not a prime power")),
        }
    };
    let mut modulus = None;
    if c.eat(b';') {
        if !c.eat_word("mod") {
            return err(c.pos, "expected 'mod='");
        }
        c.expect(b'=')?;
        let mut coeffs = Vec::new();
        loop {
            let at = c.pos;
            let v = c.unsigned()?;
            coeffs.push(u32::try_from(v).or_else(|_| err(at, "coefficient too large"))?);
            if !c.eat(b',') {
                break;
            }
        }
        modulus = Some(coeffs);
    }
    c.expect(b')')?;
    c.finish()?;
    make_field(p, m, modulus.as_deref())
}

struct PolyParser<'s, 'r> {
    cur: Cursor<'s>,
    ring: &'r Arc<SkewRing>,
}

impl PolyParser<'_, '_> {
    fn expr(&mut self) -> Result<SkewPoly> {
        let mut acc = if self.cur.peek() == Some(b'-') || self.cur.peek() == Some(b'+') {
            self.ring.zero()
        } else {
            self.term()?
        };
        loop {
            if self.cur.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.cur.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SkewPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.cur.peek() {
                Some(b'*') => {
                    self.cur.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c.is_ascii_digit() || c == b'a' || c == b'x' || c == b'(' => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<SkewPoly> {
        if self.cur.eat(b'-') {
            return Ok(-&self.factor()?);
        }
        let start = self.cur.pos;
        let field = self.ring.field().clone();
        match self.cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let v = self.cur.unsigned()?;
                let base = field.from_int((v % field.characteristic() as u64) as i64);
                self.constant_power(base, start)
            }
            Some(b'a') => {
                self.cur.pos += 1;
                self.constant_power(field.generator(), start)
            }
            Some(b'x') => {
                self.cur.pos += 1;
                let k = self.exponent()?.unwrap_or(1);
                if !(0..=MAX_X_POWER).contains(&k) {
                    return err(start, format!("exponent of x must lie in 0..={MAX_X_POWER}"));
                }
                Ok(self.ring.x_pow(k as usize))
            }
            Some(b'(') => {
                self.cur.pos += 1;
                let inner = self.expr()?;
                self.cur.expect(b')')?;
                match self.exponent()? {
                    None => Ok(inner),
                    Some(k) if inner.degree().unwrap_or(0) == 0 => {
                        let c = field
                            .pow(inner.constant_term(), k)
                            .or_else(|_| err(start, "zero raised to a negative power"))?;
                        Ok(self.ring.constant(c))
                    }
                    Some(k) if (0..=MAX_X_POWER).contains(&k) => {
                        let mut acc = self.ring.one();
                        for _ in 0..k {
                            acc = &acc * &inner;
                        }
                        Ok(acc)
                    }
                    Some(_) => err(start, "bad exponent on a non-constant factor"),
                }
            }
            Some(c) => err(self.cur.pos, format!("unexpected '{}'", c as char)),
            None => err(self.cur.pos, "unexpected end of input"),
        }
    }

    fn exponent(&mut self) -> Result<Option<i64>> {
        if self.cur.eat(b'^') {
            self.cur.signed().map(Some)
        } else {
            Ok(None)
        }
    }

    fn constant_power(&mut self, base: Gf, start: usize) -> Result<SkewPoly> {
        let k = self.exponent()?.unwrap_or(1);
        let field = self.ring.field();
        match field.pow(base, k) {
            Ok(c) => Ok(self.ring.constant(c)),
            Err(_) => err(start, "zero raised to a negative power"),
        }
    }
}

/// Parses a skew polynomial over `ring`.
pub fn parse_poly(ring: &Arc<SkewRing>, s: &str) -> Result<SkewPoly> {
    let mut p = PolyParser { cur: Cursor::new(s), ring };
    if p.cur.peek().is_none() {
        return err(0, "empty polynomial");
    }
    let f = p.expr()?;
    p.cur.finish()?;
    Ok(f)
}

/// Parses a field element: `a^k`, additive form such as `1+a^2`, or an integer.
pub fn parse_element(field: &Arc<FieldCtx>, s: &str) -> Result<Gf> {
    let ring = SkewRing::new(field.clone(), 0);
    let f = parse_poly(&ring, s)?;
    if f.degree().unwrap_or(0) > 0 {
        return err(0, "expected a field element, found a polynomial in x");
    }
    Ok(f.constant_term())
}
