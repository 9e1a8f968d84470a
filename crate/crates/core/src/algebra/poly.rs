//! Dense univariate polynomials over a finite field.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::field::{FieldCtx, Fq};
use crate::error::{Error, Result};

/// Polynomial with coefficients listed from the constant term upwards.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<Fq>,
}

impl Ord for Poly {
    /// Degree first, then coefficients from the top down.
    fn cmp(&self, o: &Self) -> Ordering {
        self.c.len().cmp(&o.c.len()).then_with(|| self.c.iter().rev().cmp(o.c.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { c: vec![Fq::ONE] }
    }

    pub fn constant(a: Fq) -> Poly {
        Poly::from_coeffs(vec![a])
    }

    /// The variable `t`.
    pub fn t() -> Poly {
        Poly { c: vec![Fq::ZERO, Fq::ONE] }
    }

    pub fn monomial(a: Fq, e: usize) -> Poly {
        let mut c = vec![Fq::ZERO; e + 1];
        c[e] = a;
        Poly::from_coeffs(c)
    }

    /// `t - a`.
    pub fn linear(k: &FieldCtx, a: Fq) -> Poly {
        Poly::from_coeffs(vec![k.neg(a), Fq::ONE])
    }

    pub fn from_coeffs(mut c: Vec<Fq>) -> Poly {
        while c.last() == Some(&Fq::ZERO) {
            c.pop();
        }
        Poly { c }
    }

    /// From integer coefficients (low to high) in the prime field.
    pub fn from_ints(k: &FieldCtx, c: &[i64]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&x| k.from_int(x)).collect())
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.c
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Fq {
        self.c.get(i).copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == Fq::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with `-1` standing for the zero polynomial.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> Fq {
        self.c.last().copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == Fq::ONE
    }

    pub fn monic(&self, k: &FieldCtx) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(k, k.inv(self.lc()))
    }

    pub fn eval(&self, k: &FieldCtx, x: Fq) -> Fq {
        let mut r = Fq::ZERO;
        for &a in self.c.iter().rev() {
            r = k.add(k.mul(r, x), a);
        }
        r
    }

    pub fn add(&self, k: &FieldCtx, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(k.add(self.coeff(i), o.coeff(i)));
        }
        Poly::from_coeffs(c)
    }

    pub fn sub(&self, k: &FieldCtx, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(k.sub(self.coeff(i), o.coeff(i)));
        }
        Poly::from_coeffs(c)
    }

    pub fn neg(&self, k: &FieldCtx) -> Poly {
        Poly { c: self.c.iter().map(|&a| k.neg(a)).collect() }
    }

    pub fn scale(&self, k: &FieldCtx, a: Fq) -> Poly {
        if a == Fq::ZERO {
            return Poly::zero();
        }
        Poly { c: self.c.iter().map(|&x| k.mul(x, a)).collect() }
    }

    /// Multiply by `t^n`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Fq::ZERO; n];
        c.extend_from_slice(&self.c);
        Poly { c }
    }

    pub fn mul(&self, k: &FieldCtx, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Fq::ZERO; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == Fq::ZERO {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = k.add(c[i + j], k.mul(a, b));
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn square(&self, k: &FieldCtx) -> Poly {
        self.mul(k, self)
    }

    pub fn pow(&self, k: &FieldCtx, mut e: u64) -> Poly {
        let mut r = Poly::one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(k, &b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(k, &b);
            }
        }
        r
    }

    /// Euclidean division `self = q*b + r` with `deg r < deg b`.
    pub fn divrem(&self, k: &FieldCtx, b: &Poly) -> Result<(Poly, Poly)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.c.len() < b.c.len() {
            return Ok((Poly::zero(), self.clone()));
        }
        let db = b.c.len() - 1;
        let inv = k.inv(b.lc());
        let mut r = self.c.clone();
        let mut qc = vec![Fq::ZERO; self.c.len() - db];
        for i in (db..r.len()).rev() {
            let coef = r[i];
            if coef == Fq::ZERO {
                continue;
            }
            let f = k.mul(coef, inv);
            qc[i - db] = f;
            for (j, &bj) in b.c.iter().enumerate() {
                let idx = i - db + j;
                r[idx] = k.sub(r[idx], k.mul(f, bj));
            }
        }
        r.truncate(db);
        Ok((Poly::from_coeffs(qc), Poly::from_coeffs(r)))
    }

    /// Remainder; panics when `b` is zero.
    pub fn rem(&self, k: &FieldCtx, b: &Poly) -> Poly {
        self.divrem(k, b).expect("division by zero polynomial").1
    }

    /// Quotient; panics when `b` is zero.
    pub fn quo(&self, k: &FieldCtx, b: &Poly) -> Poly {
        self.divrem(k, b).expect("division by zero polynomial").0
    }

    /// Exact quotient when `b | self`.
    pub fn div_exact(&self, k: &FieldCtx, b: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(k, b).ok()?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn divides(&self, k: &FieldCtx, o: &Poly) -> bool {
        if self.is_zero() {
            return o.is_zero();
        }
        o.rem(k, self).is_zero()
    }

    /// Monic gcd (zero when both are zero).
    pub fn gcd(&self, k: &FieldCtx, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(k, &b);
            a = b;
            b = r;
        }
        a.monic(k)
    }

    /// `(g, s, t)` with `g = s*self + t*o` monic.
    pub fn ext_gcd(&self, k: &FieldCtx, o: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(k, &r1).unwrap();
            r0 = r1;
            r1 = r;
            let s = s0.sub(k, &q.mul(k, &s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(k, &q.mul(k, &t1));
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = k.inv(r0.lc());
        (r0.scale(k, inv), s0.scale(k, inv), t0.scale(k, inv))
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inv_mod(&self, k: &FieldCtx, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(k, m).ext_gcd(k, m);
        if g.is_one() {
            Some(s.rem(k, m))
        } else {
            None
        }
    }

    pub fn mulmod(&self, k: &FieldCtx, o: &Poly, m: &Poly) -> Poly {
        self.mul(k, o).rem(k, m)
    }

    pub fn powmod(&self, k: &FieldCtx, mut e: u128, m: &Poly) -> Poly {
        let mut r = Poly::one().rem(k, m);
        let mut b = self.rem(k, m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mulmod(k, &b, m);
            }
            e >>= 1;
            if e > 0 {
                b = b.mulmod(k, &b, m);
            }
        }
        r
    }

    pub fn derivative(&self, k: &FieldCtx) -> Poly {
        if self.c.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.c.iter().enumerate().skip(1).map(|(i, &a)| k.mul(a, k.from_int(i as i64))).collect(),
        )
    }

    /// `self(g(t))`.
    pub fn compose(&self, k: &FieldCtx, g: &Poly) -> Poly {
        let mut r = Poly::zero();
        for &a in self.c.iter().rev() {
            r = r.mul(k, g).add(k, &Poly::constant(a));
        }
        r
    }

    /// `t^n * self(1/t)` for `n >= deg`.
    pub fn reverse(&self, n: usize) -> Poly {
        assert!(self.c.len() <= n + 1, "reverse length below degree");
        let mut c = vec![Fq::ZERO; n + 1];
        for (i, &a) in self.c.iter().enumerate() {
            c[n - i] = a;
        }
        Poly::from_coeffs(c)
    }

    /// Largest `e` with `pi^e | self` (`self` nonzero).
    pub fn valuation(&self, k: &FieldCtx, pi: &Poly) -> u32 {
        assert!(!self.is_zero());
        let mut v = 0;
        let mut a = self.clone();
        while let Some(q) = a.div_exact(k, pi) {
            a = q;
            v += 1;
        }
        v
    }

    /// Lowest power of `t` present (`self` nonzero).
    pub fn low_order(&self) -> usize {
        self.c.iter().position(|a| *a != Fq::ZERO).expect("nonzero")
    }

    /// Apply a coefficient map.
    pub fn map(&self, f: impl Fn(Fq) -> Fq) -> Poly {
        Poly::from_coeffs(self.c.iter().map(|&a| f(a)).collect())
    }

    /// Polynomial mod `t^n`.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly::from_coeffs(self.c.iter().take(n).copied().collect())
    }
}

/// Product of a list of polynomials.
pub fn product(k: &FieldCtx, ps: &[Poly]) -> Poly {
    ps.iter().fold(Poly::one(), |acc, p| acc.mul(k, p))
}
