//! Torsion in `Pic(C)` and `Pic(C, Q.D)`, the sets `W_n`, theta
//! characteristics, the `epsilon_v` data and the rank bounds.

mod jacobian;

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{FieldCtx, Poly};
use crate::auxcurves::{AuxCurve, AuxKind, Divisor, FunctionRep, Place, QDivisor};
use crate::error::{Error, Result};
use crate::model::CurveConfig;
use crate::rat::{int, rat, Rat};

pub use jacobian::{l_polynomial, Jacobian, RedClass, Sylow, COUNT_LIMIT, SYLOW_LIMIT};

const SEED: u64 = 0x9e37_79b9;

/// An element of `Pic(C, Q.D)`: `sum (frac_i / n) S_i + Y` where `Y` has
/// degree `-sum frac_i deg S_i / n` and `Y - deg(Y) P0` has class `class`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PicClass {
    pub frac: Vec<u8>,
    pub class: RedClass,
}

/// Arithmetic in `Pic(C, Q.D)` for a fixed support `D` and `n`.
pub struct QPic<'a> {
    pub jac: Jacobian<'a>,
    pub n: u64,
    pub support: Vec<Place>,
}

impl<'a> QPic<'a> {
    pub fn new(k: &'a FieldCtx, c: &'a AuxCurve, n: u64, support: &[Place]) -> Result<QPic<'a>> {
        Ok(QPic { jac: Jacobian::new(k, c)?, n, support: support.to_vec() })
    }

    pub fn zero(&self) -> PicClass {
        PicClass { frac: vec![0; self.support.len()], class: RedClass::default() }
    }

    fn frac_degree(&self, frac: &[u8]) -> i64 {
        frac.iter().zip(&self.support).map(|(&a, p)| a as i64 * p.deg as i64).sum()
    }

    pub fn add(&self, a: &PicClass, b: &PicClass) -> PicClass {
        let n = self.n as u8;
        let mut frac = Vec::with_capacity(a.frac.len());
        let mut carry = Divisor::zero();
        for (i, (&x, &y)) in a.frac.iter().zip(&b.frac).enumerate() {
            let s = x + y;
            frac.push(s % n);
            if s >= n {
                carry.add_at(&self.support[i], 1);
            }
        }
        let mut class = self.jac.add(&a.class, &b.class);
        if !carry.is_zero() {
            class = self.jac.add(&class, &self.jac.reduce(&carry));
        }
        PicClass { frac, class }
    }

    pub fn neg(&self, a: &PicClass) -> PicClass {
        let n = self.n as u8;
        let mut frac = Vec::with_capacity(a.frac.len());
        let mut carry = Divisor::zero();
        for (i, &x) in a.frac.iter().enumerate() {
            if x == 0 {
                frac.push(0);
            } else {
                frac.push(n - x);
                carry.add_at(&self.support[i], -1);
            }
        }
        let mut class = self.jac.neg(&a.class);
        if !carry.is_zero() {
            class = self.jac.add(&class, &self.jac.reduce(&carry));
        }
        PicClass { frac, class }
    }

    pub fn mul(&self, m: u64, a: &PicClass) -> PicClass {
        let mut acc = self.zero();
        for _ in 0..m {
            acc = self.add(&acc, a);
        }
        acc
    }

    /// A representative rational divisor of degree zero.
    pub fn rep(&self, a: &PicClass) -> QDivisor {
        let n = self.n as i64;
        let mut q = QDivisor::zero();
        for (p, &x) in self.support.iter().zip(&a.frac) {
            q.add_at(p, rat(x as i64, n));
        }
        let e = -self.frac_degree(&a.frac) / n;
        let y = self.jac.rep(&a.class).add(&Divisor::single(&self.jac.base, e));
        q.add(&y.to_q())
    }

    /// The class of a rational divisor whose denominators divide `n` and
    /// are confined to the support.
    pub fn class_of(&self, q: &QDivisor) -> Result<PicClass> {
        let n = self.n as i64;
        let mut frac = vec![0u8; self.support.len()];
        let mut integral = Divisor::zero();
        for (p, &c) in &q.coeffs {
            let scaled = c * int(n);
            if !scaled.is_integer() {
                return Err(Error::PreconditionUnmet("denominator does not divide n".into()));
            }
            let a = scaled.to_integer();
            let pos = self.support.iter().position(|s| s == p);
            match pos {
                Some(i) => {
                    let f = a.rem_euclid(n);
                    frac[i] = f as u8;
                    integral.add_at(p, (a - f) / n);
                }
                None => {
                    if a % n != 0 {
                        return Err(Error::PreconditionUnmet("fractional coefficient outside the support".into()));
                    }
                    integral.add_at(p, a / n);
                }
            }
        }
        Ok(PicClass { frac, class: self.jac.reduce(&integral) })
    }

    /// Class of `(1/n) div(h)`.
    pub fn class_of_function(&self, h: &FunctionRep) -> Result<PicClass> {
        let d = self.jac.curve.divisor_of_function(self.jac.k, h)?;
        self.class_of(&d.to_q().scale(rat(1, self.n as i64)))
    }

    /// `rep + (bound / deg D_inf) D_inf` has an effective member.
    pub fn in_w(&self, a: &PicClass, bound: Rat) -> bool {
        let (k, c) = (self.jac.k, self.jac.curve);
        let dinf = c.infinity_divisor(k).to_q().scale(bound / int(c.n as i64));
        let d = self.rep(a).add(&dinf);
        !c.riemann_roch_space(k, &d).is_empty()
    }
}

/// A finite subgroup of `Pic(C, Q.D)` killed by `n`.
#[derive(Clone, Debug)]
pub struct TorsionSet {
    pub n: u64,
    pub support: Vec<Place>,
    pub classes: Vec<PicClass>,
}

impl TorsionSet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// `log_n` of the size.
    pub fn dim(&self) -> u32 {
        let mut s = self.classes.len();
        let mut d = 0;
        while s > 1 {
            s /= self.n as usize;
            d += 1;
        }
        d
    }

    pub fn contains(&self, a: &PicClass) -> bool {
        self.classes.binary_search(a).is_ok()
    }
}

impl<'a> QPic<'a> {
    pub fn sylow(&self) -> Result<Sylow> {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        Sylow::compute(&self.jac, self.n, &mut rng)
    }

    /// All of `Pic(C, Q.D)[n]`.
    pub fn torsion(&self, syl: &Sylow) -> TorsionSet {
        let n = self.n as usize;
        let r = self.support.len();
        let mut out = Vec::new();
        let total = n.pow(r as u32);
        for idx in 0..total {
            let mut frac = vec![0u8; r];
            let mut v = idx;
            for f in frac.iter_mut() {
                *f = (v % n) as u8;
                v /= n;
            }
            if self.frac_degree(&frac) % n as i64 != 0 {
                continue;
            }
            // n (Y) ~ -sum frac_i S_i with Y = X + e P0
            let mut b = Divisor::zero();
            for (p, &a) in self.support.iter().zip(&frac) {
                b.add_at(p, -(a as i64));
            }
            let bclass = self.jac.reduce(&b);
            let Some(x0) = syl.divide(&self.jac, &bclass) else { continue };
            for t in &syl.torsion {
                out.push(PicClass { frac: frac.clone(), class: self.jac.add(&x0, t) });
            }
        }
        out.sort();
        out.dedup();
        TorsionSet { n: self.n, support: self.support.clone(), classes: out }
    }

    pub fn w_set(&self, set: &TorsionSet, bound: Rat) -> Vec<PicClass> {
        set.classes.iter().filter(|a| self.in_w(a, bound)).cloned().collect()
    }
}

/// `Pic(C)[n]`.
pub fn pic_torsion(k: &FieldCtx, c: &AuxCurve, n: u64) -> Result<TorsionSet> {
    pic_qd_torsion(k, c, &[], n)
}

/// `Pic(C, Q.D)[n]` for the support `D`.
pub fn pic_qd_torsion(k: &FieldCtx, c: &AuxCurve, support: &[Place], n: u64) -> Result<TorsionSet> {
    let qp = QPic::new(k, c, n, support)?;
    let syl = qp.sylow()?;
    Ok(qp.torsion(&syl))
}

/// `W_bound(C)[n]` inside `Pic(C, Q.D)[n]`.
pub fn w_set(k: &FieldCtx, c: &AuxCurve, support: &[Place], bound: Rat, n: u64) -> Result<Vec<PicClass>> {
    let qp = QPic::new(k, c, n, support)?;
    let syl = qp.sylow()?;
    let set = qp.torsion(&syl);
    Ok(qp.w_set(&set, bound))
}

/// A theta characteristic `T = X + (g - 1) P0` with `2 T ~ K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaChar {
    pub class: RedClass,
    pub h0: usize,
    pub odd: bool,
}

impl ThetaChar {
    /// A divisor in the class of `T`.
    pub fn divisor(&self, jac: &Jacobian) -> Divisor {
        let g = jac.genus() as i64;
        jac.rep(&self.class).add(&Divisor::single(&jac.base, g - 1))
    }
}

/// All theta characteristics defined over the base field.
pub fn theta_characteristics(k: &FieldCtx, c: &AuxCurve) -> Result<Vec<ThetaChar>> {
    if c.genus > 4 {
        return Err(Error::GenusTooLarge(c.genus as u32));
    }
    let jac = Jacobian::new(k, c)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let syl = Sylow::compute(&jac, 2, &mut rng)?;
    let g = c.genus as i64;
    let kd = c.canonical_divisor(k);
    let b = jac.reduce(&kd);
    debug_assert_eq!(kd.deg(), 2 * g - 2);
    let Some(x0) = syl.divide(&jac, &b) else { return Ok(Vec::new()) };
    let mut out = Vec::new();
    for t in &syl.torsion {
        let x = jac.add(&x0, t);
        let d = jac.rep(&x).add(&Divisor::single(&jac.base, g - 1));
        let h0 = c.l(k, &d);
        out.push(ThetaChar { class: x, h0, odd: h0 % 2 == 1 });
    }
    out.sort_by(|a, b| a.class.cmp(&b.class));
    Ok(out)
}

/// Places of `D_2`: above the roots of `f_3`, and above infinity when
/// `d = 3 mod 6`.
pub fn support_d2(k: &FieldCtx, cfg: &CurveConfig, c2: &AuxCurve) -> Vec<Place> {
    let mut out = Vec::new();
    for pi in &cfg.decomp.factors[2] {
        out.extend(c2.places_above(k, pi));
    }
    if cfg.d % 6 == 3 {
        out.extend(c2.infinite_places(k));
    }
    out.sort();
    out
}

/// Places of `D_3`: above the roots of `f_2 f_4`, and above infinity when
/// `d = 2, 4 mod 6`.
pub fn support_d3(k: &FieldCtx, cfg: &CurveConfig, c3: &AuxCurve) -> Vec<Place> {
    let mut out = Vec::new();
    for i in [1, 3] {
        for pi in &cfg.decomp.factors[i] {
            out.extend(c3.places_above(k, pi));
        }
    }
    if cfg.d % 6 == 2 || cfg.d % 6 == 4 {
        out.extend(c3.infinite_places(k));
    }
    out.sort();
    out
}

/// Base places carrying `D`, grouped as (image, places above).
fn fibers_of(support: &[Place]) -> Vec<Vec<Place>> {
    let mut keys: BTreeSet<(bool, Poly)> = BTreeSet::new();
    for p in support {
        keys.insert((p.inf, p.pi.clone()));
    }
    keys.into_iter()
        .map(|(inf, pi)| support.iter().filter(|p| p.inf == inf && p.pi == pi).cloned().collect())
        .collect()
}

/// `epsilon_v` for each fiber of `D_2`, and the fully split counts
/// `epsilon`, `epsilon'` for `D_3`, `D_3'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonData {
    pub eps2: Vec<(bool, Poly, u32)>,
    pub eps3: u32,
    pub eps3p: u32,
}

pub fn epsilon_data(k: &FieldCtx, cfg: &CurveConfig) -> Result<EpsilonData> {
    let mut eps2 = Vec::new();
    if let Ok(c2) = AuxCurve::new(k, cfg, AuxKind::C2) {
        for fib in fibers_of(&support_d2(k, cfg, &c2)) {
            let base_deg = fib[0].pi.deg() as usize;
            let rational = fib.iter().filter(|p| p.deg == base_deg && p.e == 1).count();
            let e = match (fib.len(), rational) {
                (3, 3) => 2,
                (_, 1) => 1,
                _ => 0,
            };
            eps2.push((fib[0].inf, fib[0].pi.clone(), e));
        }
    }
    let split = |c: &AuxCurve| -> u32 {
        fibers_of(&support_d3(k, cfg, c))
            .iter()
            .filter(|fib| fib.len() == 2 && fib.iter().all(|p| p.deg == p.pi.deg() as usize))
            .count() as u32
    };
    let (mut eps3, mut eps3p) = (0, 0);
    if let Ok(c3) = AuxCurve::new(k, cfg, AuxKind::C3) {
        eps3 = split(&c3);
    }
    if let Ok(c3p) = AuxCurve::new(k, cfg, AuxKind::C3p) {
        eps3p = split(&c3p);
    }
    Ok(EpsilonData { eps2, eps3, eps3p })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankBound {
    pub arithmetic: u32,
    pub geometric: u32,
}

fn geometric_bound(k: &FieldCtx, cfg: &CurveConfig) -> u32 {
    let s: usize = cfg.decomp.degrees.iter().sum();
    let b = if cfg.d % 6 == 0 { 2 * (s as i64 - 2) } else { 2 * (s as i64 - 1) };
    let b = b.max(0) as u32;
    if k.zeta3_opt().is_none() {
        b / 2
    } else {
        b
    }
}

/// `dim Pic(C_2)[2] + sum epsilon_v` and the geometric bound.
pub fn rank_bound_2(k: &FieldCtx, cfg: &CurveConfig) -> Result<RankBound> {
    let c2 = AuxCurve::new(k, cfg, AuxKind::C2)?;
    let t = pic_torsion(k, &c2, 2)?;
    let eps = epsilon_data(k, cfg)?;
    let s: u32 = eps.eps2.iter().map(|e| e.2).sum();
    Ok(RankBound { arithmetic: t.dim() + s, geometric: geometric_bound(k, cfg) })
}

/// `dim Pic(C_3)[3] + dim Pic(C_3')[3] + epsilon + epsilon'` and the
/// geometric bound.
pub fn rank_bound_3(k: &FieldCtx, cfg: &CurveConfig) -> Result<RankBound> {
    let c3 = AuxCurve::new(k, cfg, AuxKind::C3)?;
    let c3p = AuxCurve::new(k, cfg, AuxKind::C3p)?;
    let t = pic_torsion(k, &c3, 3)?;
    let tp = pic_torsion(k, &c3p, 3)?;
    let eps = epsilon_data(k, cfg)?;
    Ok(RankBound { arithmetic: t.dim() + tp.dim() + eps.eps3 + eps.eps3p, geometric: geometric_bound(k, cfg) })
}

#[cfg(test)]
mod tests;
