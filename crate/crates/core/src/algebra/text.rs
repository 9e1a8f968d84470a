//! Text format `c_k*t^k + ... + c_0`.
//!
//! Over `GF(p)` coefficients are integers mod p.  Over `GF(p^m)` a
//! coefficient may also be written as a digit list `[d0,d1,...]` in the
//! power basis of the defining modulus.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::field::{FieldCtx, Fq};
use super::poly::Poly;
use crate::error::{Error, Result};

pub fn format_elem(k: &FieldCtx, a: Fq) -> String {
    if k.m() == 1 || k.is_prime_field_elem(a) {
        return a.0.to_string();
    }
    let d: Vec<String> = k.digits(a).iter().map(|x| x.to_string()).collect();
    format!("[{}]", d.join(","))
}

pub fn format_poly(k: &FieldCtx, f: &Poly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (i, &c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{i}"),
        };
        let term = if i == 0 {
            format_elem(k, c)
        } else if c == Fq::ONE {
            mono
        } else {
            format!("{}*{}", format_elem(k, c), mono)
        };
        terms.push(term);
    }
    terms.join(" + ")
}

struct Lexer<'a> {
    s: &'a [u8],
    i: usize,
}

impl Lexer<'_> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.ws();
        let st = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if st == self.i {
            return Err(Error::Parse(format!("expected integer at offset {st}")));
        }
        core::str::from_utf8(&self.s[st..self.i])
            .unwrap()
            .parse::<i64>()
            .map_err(|e| Error::Parse(e.to_string()))
    }
}

fn parse_coeff(k: &FieldCtx, lx: &mut Lexer) -> Result<Fq> {
    if lx.eat(b'[') {
        let mut d = Vec::new();
        loop {
            let neg = lx.eat(b'-');
            let v = lx.int()?;
            d.push(if neg { -v } else { v });
            if lx.eat(b']') {
                break;
            }
            if !lx.eat(b',') {
                return Err(Error::Parse("expected ',' or ']' in digit list".into()));
            }
        }
        if d.len() > k.m() as usize {
            return Err(Error::Parse("digit list longer than the extension degree".into()));
        }
        Ok(k.from_digits(&d))
    } else {
        Ok(k.from_int(lx.int()? % k.p() as i64))
    }
}

pub fn parse_poly(k: &FieldCtx, s: &str) -> Result<Poly> {
    let mut lx = Lexer { s: s.as_bytes(), i: 0 };
    let mut acc = Poly::zero();
    let mut first = true;
    loop {
        lx.ws();
        if lx.i >= lx.s.len() {
            if first {
                return Err(Error::Parse("empty polynomial".into()));
            }
            break;
        }
        let mut neg = false;
        if lx.eat(b'+') {
        } else if lx.eat(b'-') {
            neg = true;
        } else if !first {
            return Err(Error::Parse(format!("expected '+' or '-' at offset {}", lx.i)));
        }
        first = false;
        let mut coeff = Fq::ONE;
        let mut has_coeff = false;
        if matches!(lx.peek(), Some(c) if c.is_ascii_digit() || c == b'[') {
            coeff = parse_coeff(k, &mut lx)?;
            has_coeff = true;
            lx.eat(b'*');
        }
        let mut e = 0usize;
        if lx.eat(b't') {
            e = 1;
            if lx.eat(b'^') {
                e = lx.int()? as usize;
            }
        } else if !has_coeff {
            return Err(Error::Parse(format!("expected term at offset {}", lx.i)));
        }
        if neg {
            coeff = k.neg(coeff);
        }
        acc = acc.add(k, &Poly::monomial(coeff, e));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let k = FieldCtx::prime(7).unwrap();
        let f = parse_poly(&k, "t^3 + 2*t - 1").unwrap();
        assert_eq!(f, Poly::from_ints(&k, &[6, 2, 0, 1]));
        assert_eq!(format_poly(&k, &f), "t^3 + 2*t + 6");
        assert_eq!(parse_poly(&k, &format_poly(&k, &f)).unwrap(), f);
        assert_eq!(parse_poly(&k, "0").unwrap(), Poly::zero());
        assert!(parse_poly(&k, "t^").is_err());
        let k2 = FieldCtx::new(5, 2).unwrap();
        let g = parse_poly(&k2, "[1,2]*t^2 + 3").unwrap();
        assert_eq!(parse_poly(&k2, &format_poly(&k2, &g)).unwrap(), g);
    }
}
