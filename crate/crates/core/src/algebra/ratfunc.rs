//! Rational functions `num/den` with `den` monic and coprime to `num`.

use super::field::{FieldCtx, Fq};
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Poly,
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn from_poly(p: &Poly) -> RatFunc {
        RatFunc { num: p.clone(), den: Poly::one() }
    }

    pub fn constant(a: Fq) -> RatFunc {
        RatFunc::from_poly(&Poly::constant(a))
    }

    pub fn new(k: &FieldCtx, num: &Poly, den: &Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = num.gcd(k, den);
        let n = num.quo(k, &g);
        let d = den.quo(k, &g);
        let c = k.inv(d.lc());
        Ok(RatFunc { num: n.scale(k, c), den: d.scale(k, c) })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        if self.is_poly() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// `max(deg num, deg den)`.
    pub fn degree(&self) -> i64 {
        self.num.deg().max(self.den.deg())
    }

    pub fn add(&self, k: &FieldCtx, o: &RatFunc) -> RatFunc {
        let n = self.num.mul(k, &o.den).add(k, &o.num.mul(k, &self.den));
        RatFunc::new(k, &n, &self.den.mul(k, &o.den)).unwrap()
    }

    pub fn sub(&self, k: &FieldCtx, o: &RatFunc) -> RatFunc {
        self.add(k, &o.neg(k))
    }

    pub fn neg(&self, k: &FieldCtx) -> RatFunc {
        RatFunc { num: self.num.neg(k), den: self.den.clone() }
    }

    pub fn mul(&self, k: &FieldCtx, o: &RatFunc) -> RatFunc {
        RatFunc::new(k, &self.num.mul(k, &o.num), &self.den.mul(k, &o.den)).unwrap()
    }

    pub fn scale(&self, k: &FieldCtx, a: Fq) -> RatFunc {
        RatFunc { num: self.num.scale(k, a), den: if a.is_zero() { Poly::one() } else { self.den.clone() } }
    }

    pub fn inv(&self, k: &FieldCtx) -> Result<RatFunc> {
        RatFunc::new(k, &self.den, &self.num)
    }

    pub fn div(&self, k: &FieldCtx, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(k, &o.inv(k)?))
    }

    pub fn square(&self, k: &FieldCtx) -> RatFunc {
        self.mul(k, self)
    }

    pub fn pow(&self, k: &FieldCtx, e: u64) -> RatFunc {
        RatFunc { num: self.num.pow(k, e), den: self.den.pow(k, e) }
    }

    pub fn map(&self, f: impl Fn(Fq) -> Fq) -> RatFunc {
        RatFunc { num: self.num.map(&f), den: self.den.map(&f) }
    }
}
