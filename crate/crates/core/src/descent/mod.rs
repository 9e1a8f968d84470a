//! The descent maps `phi_2`, `phi_3`, `phi_3'`, fiber censuses, collision
//! witnesses and the verifiers for the counting theorems.

mod report;
mod strata;
mod verify;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{FieldCtx, Fq, Poly, RatFunc};
use crate::auxcurves::{AuxCurve, AuxKind, FunctionRep, Place};
use crate::error::{Error, Result};
use crate::model::CurveConfig;
use crate::mordell::{IntegralPoint, PointE};
use crate::picard::{support_d2, support_d3, PicClass, QPic};

pub use report::{Clause, Relation, Report};
pub use strata::{count_at, integral_stratum, naive_cap, points_with_height, weighted_count, StratumPoint};
pub use verify::{
    allowed_small_heights, extend_config, geometric_torsion_size, homomorphism_trials, rational_cyclic_subgroups_c3,
    table1_rows, torsion_stabilized, verify_corsh2, verify_fiber_caps, verify_intbound, verify_table1, verify_wbij, w_data,
    HomomorphismTally, Table1Row, WData,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MapKind {
    Phi2,
    Phi3,
    Phi3p,
}

impl MapKind {
    pub fn name(self) -> &'static str {
        match self {
            MapKind::Phi2 => "phi2",
            MapKind::Phi3 => "phi3",
            MapKind::Phi3p => "phi3p",
        }
    }

    pub fn aux(self) -> AuxKind {
        match self {
            MapKind::Phi2 => AuxKind::C2,
            MapKind::Phi3 => AuxKind::C3,
            MapKind::Phi3p => AuxKind::C3p,
        }
    }

    /// The torsion order of the target group.
    pub fn n(self) -> u64 {
        match self {
            MapKind::Phi2 => 2,
            _ => 3,
        }
    }
}

/// The target curve and support of a descent map.
#[derive(Clone, Debug)]
pub struct DescentSetup {
    pub kind: MapKind,
    pub curve: AuxCurve,
    pub support: Vec<Place>,
}

impl DescentSetup {
    pub fn new(k: &FieldCtx, cfg: &CurveConfig, kind: MapKind) -> Result<DescentSetup> {
        let curve = AuxCurve::new(k, cfg, kind.aux())?;
        let support = match kind {
            MapKind::Phi2 => support_d2(k, cfg, &curve),
            _ => support_d3(k, cfg, &curve),
        };
        Ok(DescentSetup { kind, curve, support })
    }

    pub fn qpic<'a>(&'a self, k: &'a FieldCtx) -> Result<QPic<'a>> {
        QPic::new(k, &self.curve, self.kind.n(), &self.support)
    }

    /// `g0 - x` on `C_2` or `g0 - y` on `C_3`, `C_3'`.
    pub fn coordinate_function(&self, k: &FieldCtx, g0: &RatFunc) -> FunctionRep {
        let mut co = vec![Poly::zero(); self.curve.n];
        co[0] = g0.num.clone();
        co[1] = g0.den.mul(k, &self.curve.scale).neg(k);
        FunctionRep::new(k, co, g0.den.clone())
    }

    /// The image of a point; `phi_3'` takes points of `E'`.
    pub fn image(&self, qp: &QPic, p: &PointE) -> Result<PicClass> {
        let coord = match (self.kind, p) {
            (_, PointE::Infinity) => return Ok(qp.zero()),
            (MapKind::Phi2, PointE::Finite { x, .. }) => x,
            (_, PointE::Finite { y, .. }) => y,
        };
        qp.class_of_function(&self.coordinate_function(qp.jac.k, coord))
    }

    /// Image of the coordinate alone: `x0` for `phi_2`, `y0` otherwise.
    pub fn image_of_coordinate(&self, qp: &QPic, g0: &Poly) -> Result<PicClass> {
        qp.class_of_function(&self.coordinate_function(qp.jac.k, &RatFunc::from_poly(g0)))
    }
}

/// A point together with its descent class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentImage {
    pub kind: MapKind,
    pub source: PointE,
    pub class: PicClass,
}

fn single_image(k: &FieldCtx, cfg: &CurveConfig, kind: MapKind, p: &PointE) -> Result<DescentImage> {
    let s = DescentSetup::new(k, cfg, kind)?;
    let qp = s.qpic(k)?;
    let class = s.image(&qp, p)?;
    Ok(DescentImage { kind, source: p.clone(), class })
}

/// `[1/2 div(x0 - x)]` in `Pic(C_2, Q.D_2)[2]`.
pub fn phi2(k: &FieldCtx, cfg: &CurveConfig, p: &PointE) -> Result<DescentImage> {
    single_image(k, cfg, MapKind::Phi2, p)
}

/// `[1/3 div(y0 - y)]` in `Pic(C_3, Q.D_3)[3]`.
pub fn phi3(k: &FieldCtx, cfg: &CurveConfig, p: &PointE) -> Result<DescentImage> {
    single_image(k, cfg, MapKind::Phi3, p)
}

/// `[1/3 div(y0 - y)]` in `Pic(C_3', Q.D_3')[3]` for a point of `E'`.
pub fn phi3p(k: &FieldCtx, cfg: &CurveConfig, q: &PointE) -> Result<DescentImage> {
    single_image(k, cfg, MapKind::Phi3p, q)
}

/// Points grouped by their class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub fibers: BTreeMap<PicClass, usize>,
    pub hits_zero: bool,
}

impl Census {
    pub fn add(&mut self, class: PicClass, weight: usize, zero: &PicClass) {
        if &class == zero {
            self.hits_zero = true;
        }
        *self.fibers.entry(class).or_insert(0) += weight;
    }

    pub fn max_fiber(&self) -> usize {
        self.fibers.values().copied().max().unwrap_or(0)
    }

    pub fn min_fiber(&self) -> usize {
        self.fibers.values().copied().min().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.fibers.values().sum()
    }

    /// Multiset of fiber sizes, sorted.
    pub fn sizes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.fibers.values().copied().collect();
        v.sort();
        v
    }
}

/// Fiber sizes of a descent map on a set of integral points.
pub fn fiber_census(k: &FieldCtx, cfg: &CurveConfig, kind: MapKind, points: &[IntegralPoint]) -> Result<Census> {
    let s = DescentSetup::new(k, cfg, kind)?;
    let qp = s.qpic(k)?;
    let zero = qp.zero();
    let mut c = Census::default();
    for p in points {
        c.add(s.image(&qp, &p.to_point())?, 1, &zero);
    }
    Ok(c)
}

/// `psi = c + b x + a x^2 / (f_2 f_4^2)` with `(x0 - x)(x1 - x) = psi^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionWitness2 {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
}

impl CollisionWitness2 {
    /// The three coefficient identities, with `u` the leading coefficient
    /// of `f`.
    pub fn relations_hold(&self, k: &FieldCtx, cfg: &CurveConfig, x0: &Poly, x1: &Poly) -> bool {
        let u = Poly::constant(cfg.decomp.unit);
        let (f1, f2, f4) = (cfg.fi(1), cfg.fi(2), cfg.fi(4));
        let f2f4 = f2.mul(k, &f4.square(k));
        let (a, b, c) = (&self.a, &self.b, &self.c);
        // b^2 f2 f4^2 + 2 a c = f2 f4^2
        let r2 = b.square(k).mul(k, &f2f4).add(k, &a.mul(k, c).scale(k, k.from_int(2))) == f2f4;
        let r1 = b.mul(k, c).scale(k, k.from_int(2)).sub(k, &u.mul(k, &a.square(k)).mul(k, f1))
            == x0.add(k, x1).neg(k);
        let r0 = c.square(k).sub(k, &u.mul(k, a).mul(k, b).mul(k, f1).mul(k, &f2f4).scale(k, k.from_int(2)))
            == x0.mul(k, x1);
        r2 && r1 && r0
    }
}

/// `psi = b + a y / f_3` with `(y0 - y)(y1 + y) = psi^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionWitness3 {
    pub a: Poly,
    pub b: Poly,
}

impl CollisionWitness3 {
    pub fn relations_hold(&self, k: &FieldCtx, cfg: &CurveConfig, y0: &Poly, y1: &Poly) -> bool {
        let u = Poly::constant(cfg.decomp.unit);
        let (f1, f3, f5) = (cfg.fi(1), cfg.fi(3), cfg.fi(5));
        let f5_5 = f5.pow(k, 5);
        let (a, b) = (&self.a, &self.b);
        let three = k.from_int(3);
        // (u a^3 f1 f5^5) f3 + 3 a b^2 = (y0 - y1) f3
        let r1 = u.mul(k, &a.pow(k, 3)).mul(k, f1).mul(k, &f5_5).mul(k, f3).add(k, &a.mul(k, &b.square(k)).scale(k, three))
            == y0.sub(k, y1).mul(k, f3);
        let r0 = b.pow(k, 3).add(k, &u.mul(k, &a.square(k)).mul(k, b).mul(k, f1).mul(k, f3).mul(k, &f5_5).scale(k, three))
            == y0.mul(k, y1).sub(k, &u.mul(k, f1).mul(k, &f3.pow(k, 3)).mul(k, &f5_5));
        r1 && r0
    }
}

/// The `n`-th root of an integral function whose divisor is divisible by `n`.
fn nth_root_function(k: &FieldCtx, c: &AuxCurve, prod: &FunctionRep, n: i64) -> Result<FunctionRep> {
    let d = c.divisor_of_function(k, prod)?;
    let mut half = crate::auxcurves::Divisor::zero();
    for (p, &v) in &d.coeffs {
        if v % n != 0 {
            return Err(Error::PreconditionUnmet("divisor is not divisible".into()));
        }
        half.add_at(p, v / n);
    }
    let psi0 = c.is_principal(k, &half).ok_or_else(|| Error::PreconditionUnmet("no root function".into()))?;
    // psi0^n = lambda prod
    let mut pw = psi0.clone();
    for _ in 1..n {
        pw = c.mul(k, &pw, &psi0);
    }
    let j = (0..prod.co.len()).find(|&j| !prod.co[j].is_zero()).unwrap();
    let lam = k.div(
        k.div(pw.co[j].lc(), pw.den.lc()),
        k.div(prod.co[j].lc(), prod.den.lc()),
    );
    let mu = *k
        .nth_roots(lam, n as u64)
        .first()
        .ok_or_else(|| Error::PreconditionUnmet("root function is not defined over the base field".into()))?;
    let psi = FunctionRep::new(k, psi0.co.iter().map(|p| p.scale(k, k.inv(mu))).collect(), psi0.den.clone());
    let mut check = psi.clone();
    for _ in 1..n {
        check = c.mul(k, &check, &psi);
    }
    if check != *prod {
        return Err(Error::PreconditionUnmet("root function does not match".into()));
    }
    Ok(psi)
}

fn require_pattern(cfg: &CurveConfig, allowed: &[usize], what: &str) -> Result<()> {
    for i in 1..=5 {
        if !allowed.contains(&i) && !cfg.fi(i).is_one() {
            return Err(Error::HypothesisViolated(alloc::format!("f must have the shape {what}")));
        }
    }
    if cfg.fi(1).is_constant() {
        return Err(Error::HypothesisViolated("f_1 must be nonconstant".into()));
    }
    Ok(())
}

/// The witness for two integral points with equal `phi_2` image, for
/// `f = u f_1 f_2^2 f_4^4`.  `None` when the images differ.
pub fn collision_witness_2(
    k: &FieldCtx,
    cfg: &CurveConfig,
    p0: &IntegralPoint,
    p1: &IntegralPoint,
) -> Result<Option<CollisionWitness2>> {
    require_pattern(cfg, &[1, 2, 4], "f1 f2^2 f4^4")?;
    let s = DescentSetup::new(k, cfg, MapKind::Phi2)?;
    let qp = s.qpic(k)?;
    if s.image(&qp, &p0.to_point())? != s.image(&qp, &p1.to_point())? {
        return Ok(None);
    }
    let c = &s.curve;
    let h0 = c.coordinate_difference(k, &p0.x);
    let h1 = c.coordinate_difference(k, &p1.x);
    let psi = nth_root_function(k, c, &c.mul(k, &h0, &h1), 2)?;
    if !psi.den.is_one() {
        return Err(Error::PreconditionUnmet("root function is not integral".into()));
    }
    let f4 = cfg.fi(4);
    let b = psi.co[1]
        .div_exact(k, f4)
        .ok_or_else(|| Error::PreconditionUnmet("f_4 does not divide the x coefficient".into()))?;
    let w = CollisionWitness2 { a: psi.co[2].clone(), b, c: psi.co[0].clone() };
    debug_assert!(!w.a.is_zero() || p0.x == p1.x);
    Ok(Some(w))
}

/// The witness for two integral points with equal `phi_3` image, for
/// `f = u f_1 f_3^3 f_5^5`.
pub fn collision_witness_3(
    k: &FieldCtx,
    cfg: &CurveConfig,
    p0: &IntegralPoint,
    p1: &IntegralPoint,
) -> Result<Option<CollisionWitness3>> {
    require_pattern(cfg, &[1, 3, 5], "f1 f3^3 f5^5")?;
    let s = DescentSetup::new(k, cfg, MapKind::Phi3)?;
    let qp = s.qpic(k)?;
    if s.image(&qp, &p0.to_point())? != s.image(&qp, &p1.to_point())? {
        return Ok(None);
    }
    let c = &s.curve;
    let h0 = c.coordinate_difference(k, &p0.y);
    let mut co = c.model.zero();
    co[0] = p1.y.clone();
    co[1] = c.scale.clone();
    let h1 = FunctionRep::integral(co);
    let psi = nth_root_function(k, c, &c.mul(k, &h0, &h1), 3)?;
    if !psi.den.is_one() {
        return Err(Error::PreconditionUnmet("root function is not integral".into()));
    }
    let f5sq = cfg.fi(5).square(k);
    let a = psi.co[1]
        .div_exact(k, &f5sq)
        .ok_or_else(|| Error::PreconditionUnmet("f_5^2 does not divide the y coefficient".into()))?;
    Ok(Some(CollisionWitness3 { a, b: psi.co[0].clone() }))
}

/// `zeta`, when `x1 = zeta x0` for a cube root of unity in the field.
pub fn cube_root_ratio(k: &FieldCtx, x0: &Poly, x1: &Poly) -> Option<Fq> {
    if x0.is_zero() {
        return if x1.is_zero() { Some(Fq::ONE) } else { None };
    }
    let z = k.div(x1.lc(), x0.lc());
    (x0.scale(k, z) == *x1 && k.pow(z, 3) == Fq::ONE).then_some(z)
}
