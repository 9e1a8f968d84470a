//! The auxiliary curves `C_2 : x^3 = -f`, `C_3 : y^2 = f` and
//! `C_3' : y^2 = -27 f`: places, divisors, Riemann–Roch spaces and
//! canonical divisors.

pub mod divisor;
pub mod kummer;
mod rr;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::algebra::{Embedding, FieldCtx, Fq, Poly};
use crate::error::{Error, Result};
use crate::model::CurveConfig;

pub use crate::picard::theta_characteristics;
pub use divisor::{Divisor, Place, QDivisor};
pub use kummer::{KummerModel, LocalPlace, Ram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AuxKind {
    C2,
    C3,
    C3p,
}

impl AuxKind {
    pub fn name(self) -> &'static str {
        match self {
            AuxKind::C2 => "c2",
            AuxKind::C3 => "c3",
            AuxKind::C3p => "c3p",
        }
    }

    /// Covering degree over the line.
    pub fn n(self) -> usize {
        match self {
            AuxKind::C2 => 3,
            _ => 2,
        }
    }
}

/// A rational function `(sum co_j w_j) / den` in the basis `1, X, X^2/B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionRep {
    pub co: Vec<Poly>,
    pub den: Poly,
}

impl FunctionRep {
    pub fn new(k: &FieldCtx, co: Vec<Poly>, den: Poly) -> FunctionRep {
        let mut g = den.clone();
        for c in &co {
            g = g.gcd(k, c);
        }
        let lc = k.inv(den.lc());
        let co = co.iter().map(|c| c.quo(k, &g).scale(k, lc)).collect();
        let den = den.quo(k, &g).scale(k, lc);
        FunctionRep { co, den }
    }

    pub fn integral(co: Vec<Poly>) -> FunctionRep {
        FunctionRep { co, den: Poly::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.co.iter().all(|c| c.is_zero())
    }
}

/// An auxiliary curve in the normalized form `X^n = c A B^2`, where the
/// original coordinate equals `scale * X`.
#[derive(Debug)]
pub struct AuxCurve {
    pub kind: AuxKind,
    pub n: usize,
    pub model: KummerModel,
    /// The model in `s = 1/t` with `X' = X s^w`.
    pub inf_model: KummerModel,
    pub scale: Poly,
    pub genus: usize,
    dtot: i64,
    w: i64,
    e_inf: i64,
    lc_rev_b: Fq,
    cache: RefCell<BTreeMap<(bool, Poly), Vec<LocalPlace>>>,
}

impl Clone for AuxCurve {
    fn clone(&self) -> AuxCurve {
        AuxCurve {
            kind: self.kind,
            n: self.n,
            model: self.model.clone(),
            inf_model: self.inf_model.clone(),
            scale: self.scale.clone(),
            genus: self.genus,
            dtot: self.dtot,
            w: self.w,
            e_inf: self.e_inf,
            lc_rev_b: self.lc_rev_b,
            cache: RefCell::new(BTreeMap::new()),
        }
    }
}

/// Genus by Riemann–Hurwitz for `X^n = c A B^2`.
pub fn riemann_hurwitz_genus(n: usize, deg_a: usize, deg_b: usize) -> usize {
    let dtot = deg_a + 2 * deg_b;
    let ram_inf = usize::from(dtot % n != 0);
    ((n - 1) * (deg_a + deg_b + ram_inf) + 2 - 2 * n) / 2
}

impl AuxCurve {
    pub fn new(k: &FieldCtx, cfg: &CurveConfig, kind: AuxKind) -> Result<AuxCurve> {
        let dc = &cfg.decomp;
        let f = |i: usize| dc.f(i).clone();
        let u = dc.unit;
        match kind {
            AuxKind::C2 => {
                let a = f(1).mul(k, &f(4));
                let b = f(2).mul(k, &f(5));
                let scale = f(3).mul(k, &f(4)).mul(k, &f(5));
                AuxCurve::from_model(k, kind, k.neg(u), &a, &b, &scale)
            }
            AuxKind::C3 | AuxKind::C3p => {
                let a = f(1).mul(k, &f(3)).mul(k, &f(5));
                let scale = f(2).mul(k, &f(3)).mul(k, &f(4).square(k)).mul(k, &f(5).square(k));
                let c = if kind == AuxKind::C3 { u } else { k.mul(k.from_int(-27), u) };
                AuxCurve::from_model(k, kind, c, &a, &Poly::one(), &scale)
            }
        }
    }

    pub fn from_model(k: &FieldCtx, kind: AuxKind, c: Fq, a: &Poly, b: &Poly, scale: &Poly) -> Result<AuxCurve> {
        let n = kind.n();
        if a.deg() + b.deg() < 1 {
            return Err(Error::DegenerateCurve(match kind {
                AuxKind::C2 => "f is a cube in the geometric polynomial ring".into(),
                _ => "f is a square in the geometric polynomial ring".into(),
            }));
        }
        if n == 2 && !b.is_one() {
            return Err(Error::PreconditionUnmet("double covers take B = 1".into()));
        }
        let (da, db) = (a.deg(), b.deg());
        let dtot = da + 2 * db;
        let w = (dtot + n as i64 - 1) / n as i64;
        let e_inf = n as i64 * w - dtot;
        let ra = a.reverse(da as usize);
        let rb = b.reverse(db as usize);
        let (lca, lcb) = (ra.lc(), rb.lc());
        let mut am = ra.monic(k);
        let mut bm = rb.monic(k);
        if e_inf == 1 {
            am = am.shift(1);
        }
        if e_inf == 2 {
            bm = bm.shift(1);
        }
        let c2 = k.mul(k.mul(c, lca), k.mul(lcb, lcb));
        let model = KummerModel::new(k, n, c, a, b);
        let inf_model = KummerModel::new(k, n, c2, &am, &bm);
        Ok(AuxCurve {
            kind,
            n,
            model,
            inf_model,
            scale: scale.clone(),
            genus: riemann_hurwitz_genus(n, da as usize, db as usize),
            dtot,
            w,
            e_inf,
            lc_rev_b: lcb,
            cache: RefCell::new(BTreeMap::new()),
        })
    }

    /// The same curve over a larger field.
    pub fn base_change(&self, small: &FieldCtx, big: &FieldCtx, emb: &Embedding) -> AuxCurve {
        let m = &self.model;
        let a = emb.apply_poly(small, big, &m.a);
        let b = emb.apply_poly(small, big, &m.b);
        let c = emb.apply(small, big, m.c);
        let scale = emb.apply_poly(small, big, &self.scale);
        AuxCurve::from_model(big, self.kind, c, &a, &b, &scale).expect("base change keeps the curve nondegenerate")
    }

    /// `deg A + 2 deg B`.
    pub fn total_degree(&self) -> i64 {
        self.dtot
    }

    pub fn ramified_at_infinity(&self) -> bool {
        self.e_inf != 0
    }

    fn local_list(&self, k: &FieldCtx, inf: bool, pi: &Poly) -> Vec<LocalPlace> {
        let key = (inf, pi.clone());
        if let Some(v) = self.cache.borrow().get(&key) {
            return v.clone();
        }
        let m = if inf { &self.inf_model } else { &self.model };
        let v = m.places_above(k, pi);
        self.cache.borrow_mut().insert(key, v.clone());
        v
    }

    fn to_place(inf: bool, lp: &LocalPlace) -> Place {
        Place { inf, pi: lp.pi.clone(), idx: lp.idx, e: lp.e, deg: lp.degree() }
    }

    /// Places above the monic irreducible `pi`.
    pub fn places_above(&self, k: &FieldCtx, pi: &Poly) -> Vec<Place> {
        self.local_list(k, false, pi).iter().map(|lp| Self::to_place(false, lp)).collect()
    }

    pub fn infinite_places(&self, k: &FieldCtx) -> Vec<Place> {
        self.local_list(k, true, &Poly::t()).iter().map(|lp| Self::to_place(true, lp)).collect()
    }

    pub(crate) fn local(&self, k: &FieldCtx, p: &Place) -> LocalPlace {
        let pi = if p.inf { Poly::t() } else { p.pi.clone() };
        self.local_list(k, p.inf, &pi)[p.idx].clone()
    }

    /// `t^(-1)(infinity)` as a divisor.
    pub fn infinity_divisor(&self, k: &FieldCtx) -> Divisor {
        let mut d = Divisor::zero();
        for p in self.infinite_places(k) {
            d.add_at(&p, p.e as i64);
        }
        d
    }

    /// `t^(-1)(pi)` as a divisor.
    pub fn fiber_divisor(&self, k: &FieldCtx, pi: &Poly) -> Divisor {
        let mut d = Divisor::zero();
        for p in self.places_above(k, pi) {
            d.add_at(&p, p.e as i64);
        }
        d
    }

    /// The function `g0 - scale * X`, i.e. `x0 - x` on `C_2` and `y0 - y`
    /// on `C_3`.
    pub fn coordinate_difference(&self, k: &FieldCtx, g0: &Poly) -> FunctionRep {
        let mut co = self.model.zero();
        co[0] = g0.clone();
        co[1] = self.scale.neg(k);
        FunctionRep::integral(co)
    }

    pub fn constant(&self, a: Fq) -> FunctionRep {
        let mut co = self.model.zero();
        co[0] = Poly::constant(a);
        FunctionRep::integral(co)
    }

    pub fn mul(&self, k: &FieldCtx, a: &FunctionRep, b: &FunctionRep) -> FunctionRep {
        FunctionRep::new(k, self.model.mul(k, &a.co, &b.co), a.den.mul(k, &b.den))
    }

    /// The representation in the model at infinity.
    pub fn to_infinity(&self, k: &FieldCtx, h: &FunctionRep) -> FunctionRep {
        let db = self.model.b.deg();
        let sigma = [0, -self.w, db - 2 * self.w + i64::from(self.e_inf == 2)];
        let kappa2 = k.inv(self.lc_rev_b);
        let dd = h.den.deg();
        let mut exps = Vec::new();
        for (j, c) in h.co.iter().enumerate() {
            if !c.is_zero() {
                exps.push((j, dd - c.deg() + sigma[j]));
            }
        }
        let mmin = exps.iter().map(|x| x.1).min().unwrap_or(0).min(0);
        let mut co = vec![Poly::zero(); self.n];
        for (j, e) in exps {
            let c = &h.co[j];
            let mut r = c.reverse(c.deg() as usize).shift((e - mmin) as usize);
            if j == 2 {
                r = r.scale(k, kappa2);
            }
            co[j] = r;
        }
        let den = h.den.reverse(dd as usize).shift((-mmin) as usize);
        FunctionRep::new(k, co, den)
    }

    /// Valuation of a nonzero function at a place.
    pub fn valuation(&self, k: &FieldCtx, h: &FunctionRep, p: &Place) -> i64 {
        let lp = self.local(k, p);
        if p.inf {
            let hi = self.to_infinity(k, h);
            self.inf_model.val(k, &lp, &hi.co) - lp.e as i64 * hi.den.valuation(k, &lp.pi) as i64
        } else {
            self.model.val(k, &lp, &h.co) - lp.e as i64 * h.den.valuation(k, &lp.pi) as i64
        }
    }

    pub fn divisor_of_function(&self, k: &FieldCtx, h: &FunctionRep) -> Result<Divisor> {
        if h.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let mut primes = self.model.norm_primes(k, &h.co);
        if h.den.deg() > 0 {
            primes.extend(crate::algebra::factor::irreducible_factors(k, &h.den));
        }
        primes.sort();
        primes.dedup();
        let mut d = Divisor::zero();
        for pi in primes {
            for lp in self.local_list(k, false, &pi) {
                let v = self.model.val(k, &lp, &h.co) - lp.e as i64 * h.den.valuation(k, &pi) as i64;
                d.add_at(&Self::to_place(false, &lp), v);
            }
        }
        let hi = self.to_infinity(k, h);
        let s = Poly::t();
        for lp in self.local_list(k, true, &s) {
            let v = self.inf_model.val(k, &lp, &hi.co) - lp.e as i64 * hi.den.valuation(k, &s) as i64;
            d.add_at(&Self::to_place(true, &lp), v);
        }
        Ok(d)
    }

    /// Basis of `L(floor(D))`.
    pub fn riemann_roch_space(&self, k: &FieldCtx, d: &QDivisor) -> Vec<FunctionRep> {
        rr::riemann_roch(self, k, &d.floor())
    }

    /// Basis of `L(D)`.
    pub fn riemann_roch(&self, k: &FieldCtx, d: &Divisor) -> Vec<FunctionRep> {
        rr::riemann_roch(self, k, d)
    }

    pub fn l(&self, k: &FieldCtx, d: &Divisor) -> usize {
        rr::riemann_roch(self, k, d).len()
    }

    /// A function with divisor `D`, if `D` is principal.
    pub fn is_principal(&self, k: &FieldCtx, d: &Divisor) -> Option<FunctionRep> {
        if d.deg() != 0 {
            return None;
        }
        rr::riemann_roch(self, k, &d.neg()).into_iter().next()
    }

    /// `div(dt)`.
    pub fn differential_divisor(&self, k: &FieldCtx) -> Divisor {
        let mut d = Divisor::zero();
        let ab = self.model.a.mul(k, &self.model.b);
        if ab.deg() > 0 {
            for pi in crate::algebra::factor::irreducible_factors(k, &ab) {
                for p in self.places_above(k, &pi) {
                    d.add_at(&p, self.n as i64 - 1);
                }
            }
        }
        for p in self.infinite_places(k) {
            d.add_at(&p, -(p.e as i64) - 1);
        }
        d
    }

    /// A canonical divisor: a multiple of `t^(-1)(infinity)` when `B = 1`,
    /// otherwise `div(dt)`.
    pub fn canonical_divisor(&self, k: &FieldCtx) -> Divisor {
        if !self.model.b.is_one() {
            return self.differential_divisor(k);
        }
        let two_g = 2 * self.genus as i64 - 2;
        let mut d = Divisor::zero();
        for p in self.infinite_places(k) {
            if self.ramified_at_infinity() {
                d.add_at(&p, two_g);
            } else {
                d.add_at(&p, two_g / self.n as i64);
            }
        }
        d
    }

    /// Number of `k`-rational points of the smooth projective model.
    pub fn count_points(&self, k: &FieldCtx) -> u64 {
        let m = &self.model;
        let mut total = 0u64;
        for t0 in k.elements() {
            let a = m.a.eval(k, t0);
            let b = m.b.eval(k, t0);
            if a.is_zero() || b.is_zero() {
                total += 1;
            } else {
                let v = k.mul(k.mul(m.c, a), k.mul(b, b));
                total += self.roots_of_unit(k, v);
            }
        }
        if self.ramified_at_infinity() {
            total += 1;
        } else {
            let im = &self.inf_model;
            let a = im.a.eval(k, Fq::ZERO);
            let b = im.b.eval(k, Fq::ZERO);
            let v = k.mul(k.mul(im.c, a), k.mul(b, b));
            total += self.roots_of_unit(k, v);
        }
        total
    }

    /// Number of solutions of `X^n = v` for nonzero `v`.
    fn roots_of_unit(&self, k: &FieldCtx, v: Fq) -> u64 {
        if k.is_nth_power(v, self.n as u64) {
            crate::algebra::field::gcd_u64(self.n as u64, k.q() - 1)
        } else {
            0
        }
    }

    /// Base place for reduced divisor classes: the ramified infinite place,
    /// else the least rational finite place, else a rational infinite place.
    pub fn base_place(&self, k: &FieldCtx) -> Result<Place> {
        let inf = self.infinite_places(k);
        if self.ramified_at_infinity() {
            return Ok(inf[0].clone());
        }
        let mut elems: Vec<Fq> = k.elements().collect();
        elems.sort_by_key(|&a| Poly::linear(k, a));
        for a in elems {
            let pi = Poly::linear(k, a);
            if let Some(p) = self.places_above(k, &pi).into_iter().find(|p| p.deg == 1) {
                return Ok(p);
            }
        }
        inf.into_iter().find(|p| p.deg == 1).ok_or(Error::NoRationalPlace)
    }
}

#[cfg(test)]
mod tests;
