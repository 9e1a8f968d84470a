use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{Relation, Report};
use super::strata::{count_at, integral_stratum, points_with_height, StratumPoint};
use super::{Census, DescentSetup, MapKind};
use crate::algebra::factor::roots;
use crate::algebra::{Embedding, FieldCtx, Fq, Poly};
use crate::auxcurves::{AuxCurve, AuxKind, Place};
use crate::error::{Error, Result};
use crate::lattice::{shell_count, standard_lattice, LatticeName};
use crate::model::{classify_type, CurveConfig};
use crate::mordell::{enumerate_integral_points, hits_to_points, search, PointE, SearchMode, Weierstrass};
use crate::picard::{
    pic_qd_torsion, pic_torsion, rank_bound_2, rank_bound_3, support_d2, support_d3, theta_characteristics,
    w_set, QPic,
};
use crate::rat::{int, rat, Rat};

fn pow_i(b: i128, e: u32) -> i128 {
    b.pow(e)
}

fn fmt_rat(r: Rat) -> String {
    if r.is_integer() {
        format!("{}", r.to_integer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The same curve over an extension field.
pub fn extend_config(small: &FieldCtx, big: &FieldCtx, cfg: &CurveConfig) -> Result<CurveConfig> {
    let emb = Embedding::new(small, big)?;
    CurveConfig::new(big, &emb.apply_poly(small, big, &cfg.f))
}

fn is_pattern(cfg: &CurveConfig, allowed: &[usize]) -> bool {
    (1..=5).all(|i| allowed.contains(&i) || cfg.fi(i).is_one()) && !cfg.fi(1).is_constant()
}

fn is_squarefree(cfg: &CurveConfig) -> bool {
    (2..=5).all(|i| cfg.fi(i).is_one())
}

// ---------------------------------------------------------------------
// integral point bounds

/// Integral point counts against the bounds obtained by 2- and 3-descent.
pub fn verify_intbound(k: &FieldCtx, cfg: &CurveConfig) -> Result<Report> {
    let two = is_pattern(cfg, &[1, 2, 4]) && cfg.d % 3 != 0;
    let three = is_pattern(cfg, &[1, 3, 5]) && cfg.d % 2 == 1;
    if !two && !three {
        return Err(Error::HypothesisViolated(
            "need f = f1 f2^2 f4^4 with 3 not dividing d, or f = f1 f3^3 f5^5 with d odd".into(),
        ));
    }
    let pts = enumerate_integral_points(k, cfg, None)?;
    let total = pts.len() as i128;
    let mut rep = Report::new("integral point bounds");
    rep.note(format!("enumerated {} integral points up to naive height {}", total, cfg.d as i64 - 1));
    let d = cfg.d as u32;
    let (d1, d2, d4) = (cfg.di(1) as u32, cfg.di(2) as u32, cfg.di(4) as u32);
    let sixth = rat(cfg.d as i64, 6);
    if two {
        let rb = rank_bound_2(k, cfg)?;
        let r = rb.arithmetic.min(rb.geometric);
        rep.note(format!("2-descent rank bound {} (arithmetic {}, geometric {})", r, rb.arithmetic, rb.geometric));
        let w = cfg.omega(2) as u32 + cfg.omega(4) as u32;
        let small = pts.iter().filter(|p| p.naive_height() <= sixth).count() as i128;
        let large = total - small;
        rep.check("2-descent: #E(k[t]) with h <= d/6 vs rank bound", small, Relation::Le, pow_i(2, r + 1) - 2, 1);
        rep.check(
            "2-descent: #E(k[t]) with h <= d/6 vs degree bound",
            small,
            Relation::Le,
            pow_i(2, 2 * d1 + 2 * d2 - 1) - 2,
            1,
        );
        rep.check("2-descent: #E(k[t]) with h > d/6 vs rank bound", large, Relation::Le, pow_i(2, r + w + 2), 1);
        rep.check(
            "2-descent: #E(k[t]) with h > d/6 vs degree bound",
            large,
            Relation::Le,
            pow_i(2, 2 * d1 + 3 * d2 + d4),
            1,
        );
        rep.check(
            "2-descent: #E(k[t]) vs rank bound",
            total,
            Relation::Le,
            pow_i(2, r + 1) * (pow_i(2, w + 1) + 1) - 2,
            1,
        );
        rep.check(
            "2-descent: #E(k[t]) vs degree bound",
            total,
            Relation::Le,
            pow_i(2, 2 * d1 + 2 * d2 - 1) * (pow_i(2, w + 1) + 1) - 2,
            1,
        );
        if is_squarefree(cfg) {
            rep.check("2-descent, f squarefree: #E(k[t]) vs rank bound", total, Relation::Le, pow_i(2, r + 2) - 2, 1);
            rep.check("2-descent, f squarefree: #E(k[t]) vs degree bound", total, Relation::Le, pow_i(2, 2 * d) - 2, 1);
            if d == 2 {
                rep.check("squarefree quadratic: #E(k[t]) <= 12", total, Relation::Le, 12, 1);
                rep.record("squarefree quadratic: #E(k[t]) <= 2^(2d-1) - 2", total, Relation::Le, 6, 1);
                rep.note("the bound 6 for d = 2 conflicts with the count 12 over an algebraically closed field; recorded only");
            }
        }
    }
    if three {
        let rb = rank_bound_3(k, cfg)?;
        let r = rb.arithmetic.min(rb.geometric);
        rep.note(format!("3-descent rank bound {} (arithmetic {}, geometric {})", r, rb.arithmetic, rb.geometric));
        let w3 = cfg.omega(3) as u32;
        let c = pow_i(2, w3);
        let quarter = rat(cfg.d as i64, 4);
        let small = pts.iter().filter(|p| p.naive_height() < quarter).count() as i128;
        let large = total - small;
        let (b_small, b_large, b_total) = if k.zeta3_opt().is_some() {
            let h = r / 2;
            (c * (pow_i(3, h + 1) - 3), 2 * c * pow_i(3, h + 1), c * (pow_i(3, h + 2) - 3))
        } else {
            (c * (pow_i(3, r) - 1), 2 * c * pow_i(3, r), c * (pow_i(3, r + 1) - 1))
        };
        rep.check("3-descent: #E(k[t]) with h < d/4 vs rank bound", small, Relation::Le, b_small, 1);
        rep.check("3-descent: #E(k[t]) with h >= d/4 vs rank bound", large, Relation::Le, b_large, 1);
        rep.check("3-descent: #E(k[t]) vs rank bound", total, Relation::Le, b_total, 1);
        rep.check("3-descent: #E(k[t]) vs degree bound", total, Relation::Le, c * (pow_i(3, d + 1) - 3), 1);
    }
    Ok(rep.finish())
}

// ---------------------------------------------------------------------
// fiber caps of the descent maps on integral points

fn census_of(k: &FieldCtx, setup: &DescentSetup, qp: &QPic, pts: &[StratumPoint]) -> Result<Census> {
    let zero = qp.zero();
    let mut c = Census::default();
    for p in pts {
        if setup.kind != MapKind::Phi2 && p.mode == SearchMode::Rational {
            for ip in p.points(k) {
                c.add(setup.image_of_coordinate(qp, &ip.y)?, 1, &zero);
            }
        } else {
            c.add(setup.image_of_coordinate(qp, p.rational_coordinate())?, p.count, &zero);
        }
    }
    Ok(c)
}

fn check_census(rep: &mut Report, id: &str, c: &Census, cap: usize, exact: bool, omit_zero: bool) {
    rep.check(&format!("{id}: largest fiber"), c.max_fiber() as i128, Relation::Le, cap as i128, 1);
    if exact && !c.fibers.is_empty() {
        rep.check(&format!("{id}: smallest fiber"), c.min_fiber() as i128, Relation::Eq, cap as i128, 1);
    }
    if omit_zero {
        rep.check(&format!("{id}: fiber over 0"), i128::from(c.hits_zero), Relation::Eq, 0, 1);
    }
}

/// Fiber-size caps of the descent maps on every stratum the hypotheses
/// of `cfg` allow, plus the surjectivity onto the `W` sets and the list
/// of small canonical heights for squarefree `f`.
pub fn verify_fiber_caps(k: &FieldCtx, cfg: &CurveConfig) -> Result<Report> {
    let mut rep = Report::new("descent fiber caps");
    let d = cfg.d;
    let sixth = rat(d as i64, 6);
    let mut applied = false;
    if is_pattern(cfg, &[1, 2, 4]) {
        applied = true;
        let setup = DescentSetup::new(k, cfg, MapKind::Phi2)?;
        let qp = setup.qpic(k)?;
        let all = integral_stratum(k, cfg)?;
        let (small, large): (Vec<StratumPoint>, Vec<StratumPoint>) =
            all.into_iter().partition(|p| p.naive <= sixth);
        let w = cfg.omega(2) + cfg.omega(4);
        let cs = census_of(k, &setup, &qp, &small)?;
        if d % 3 != 0 {
            check_census(&mut rep, "phi2 on E(k[t]), h <= d/6", &cs, 2, true, true);
            let cl = census_of(k, &setup, &qp, &large)?;
            check_census(&mut rep, "phi2 on E(k[t]), h > d/6", &cl, 1 << (w + 2), false, false);
        } else {
            check_census(&mut rep, "phi2 on E(k[t]), h <= d/6, 3 | d", &cs, 1 << (w + 1), false, true);
        }
    }
    if is_pattern(cfg, &[1, 3, 5]) && d % 2 == 1 {
        applied = true;
        let setup = DescentSetup::new(k, cfg, MapKind::Phi3)?;
        let qp = setup.qpic(k)?;
        let cap = (1usize << cfg.omega(3)) * if k.zeta3_opt().is_some() { 3 } else { 1 };
        let all = integral_stratum(k, cfg)?;
        let q4 = rat(d as i64, 4);
        let q2 = rat(d as i64, 2);
        let strata: [(&str, Vec<StratumPoint>, bool); 3] = [
            ("phi3 on E(k[t]), h < d/4", all.iter().filter(|p| p.naive < q4).cloned().collect(), true),
            (
                "phi3 on E(k[t]), d/4 <= h < d/2",
                all.iter().filter(|p| p.naive >= q4 && p.naive < q2).cloned().collect(),
                false,
            ),
            ("phi3 on E(k[t]), h >= d/2", all.iter().filter(|p| p.naive >= q2).cloned().collect(), false),
        ];
        for (id, pts, omit) in strata {
            let c = census_of(k, &setup, &qp, &pts)?;
            check_census(&mut rep, id, &c, cap, false, omit);
        }
    }
    if is_squarefree(cfg) {
        applied = true;
        verify_small_heights(k, cfg, &mut rep)?;
    }
    if !applied {
        return Err(Error::HypothesisViolated(
            "need f = f1 f2^2 f4^4, f = f1 f3^3 f5^5 with d odd, or f squarefree".into(),
        ));
    }
    Ok(rep.finish())
}

/// The heights in `(0, d/6 + 1/3]` at which points may exist.
pub fn allowed_small_heights(d: usize) -> Vec<Rat> {
    let s = rat(d as i64, 6);
    match d % 6 {
        0 | 2 | 3 => alloc::vec![s],
        4 => alloc::vec![s, s + rat(1, 3)],
        5 => alloc::vec![rat(d as i64 + 1, 6)],
        _ => Vec::new(),
    }
}

fn verify_small_heights(k: &FieldCtx, cfg: &CurveConfig, rep: &mut Report) -> Result<()> {
    let d = cfg.d as i64;
    let allowed = allowed_small_heights(cfg.d);
    // largest multiples of 1/6 strictly below d/3 and d/4
    let below_third = rat(2 * d - 1, 6).max(rat(1, 6));
    let below_quarter = rat((3 * d + 1) / 2 - 1, 6).max(rat(1, 6));
    for (kind, mode, name, n_i, n_surj, mult) in [
        (MapKind::Phi2, SearchMode::XRational, "phi2", below_third, rat(d, 6) + rat(1, 3), 2usize),
        (MapKind::Phi3, SearchMode::YRational, "phi3", below_quarter, rat(d + 1, 6), 3),
    ] {
        let setup = DescentSetup::new(k, cfg, kind)?;
        let qp = setup.qpic(k)?;
        let pts = points_with_height(k, cfg, mode, n_i.max(n_surj), |h| h > int(0))?;
        let below: Vec<StratumPoint> = pts.iter().filter(|p| p.canonical <= n_i).cloned().collect();
        let c = census_of(k, &setup, &qp, &below)?;
        let id = format!("{name} on coordinate-rational points, 0 < h^ <= {}", fmt_rat(n_i));
        check_census(rep, &id, &c, mult, true, true);
        let surj: Vec<StratumPoint> = pts.iter().filter(|p| p.canonical <= n_surj).cloned().collect();
        let c = census_of(k, &setup, &qp, &surj)?;
        let id = format!("{name} on coordinate-rational points, 0 < h^ <= {}", fmt_rat(n_surj));
        check_census(rep, &id, &c, mult, true, true);
        let bound = n_surj * int(if kind == MapKind::Phi2 { 3 } else { 2 });
        let set = qp.torsion(&qp.sylow()?);
        let w: Vec<_> = qp.w_set(&set, bound).into_iter().filter(|a| *a != qp.zero()).collect();
        let image_in_w = c.fibers.keys().filter(|a| w.contains(a)).count();
        rep.check(&format!("{id}: image inside W"), image_in_w as i128, Relation::Eq, c.fibers.len() as i128, 1);
        rep.check(&format!("{id}: image size vs #W - 1"), c.fibers.len() as i128, Relation::Eq, w.len() as i128, 1);
        let outside = pts
            .iter()
            .filter(|p| p.canonical <= n_surj && !allowed.contains(&p.canonical))
            .map(|p| p.count)
            .sum::<usize>();
        rep.check(
            &format!("{name} search: points with 0 < h^ <= d/6 + 1/3 off the allowed heights"),
            outside as i128,
            Relation::Eq,
            0,
            1,
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------
// homomorphism tests

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HomomorphismTally {
    pub pairs: usize,
    pub additive: usize,
    pub kernel_trials: usize,
    pub kernel_zero: usize,
}

impl HomomorphismTally {
    pub fn all_pass(&self) -> bool {
        self.pairs == self.additive && self.kernel_trials == self.kernel_zero
    }
}

/// Random-pair checks of `phi(P + Q) = phi(P) + phi(Q)` and of the kernel
/// (`2E` for `phi2`, `lambda^t E'` for `phi3`, `lambda E` for `phi3p`).
pub fn homomorphism_trials(k: &FieldCtx, cfg: &CurveConfig, kind: MapKind, trials: usize, seed: u64) -> Result<HomomorphismTally> {
    let e = Weierstrass::new(&cfg.f);
    let ep = e.isogenous(k);
    let cfg_p = CurveConfig::new(k, &ep.f)?;
    let h = rat(cfg.d as i64 - 1, 1).min(int(2)).max(int(1));
    let base = |c: &CurveConfig| -> Result<Vec<PointE>> {
        let (dx, dy) = crate::mordell::degree_caps(h);
        Ok(hits_to_points(k, &search(k, &c.f, SearchMode::Rational, dx, dy)?).iter().map(|p| p.to_point()).collect())
    };
    let pts_e = base(cfg)?;
    let pts_ep = base(&cfg_p)?;
    let (curve, pts, other, other_pts) = match kind {
        MapKind::Phi3p => (&ep, &pts_ep, &e, &pts_e),
        _ => (&e, &pts_e, &ep, &pts_ep),
    };
    let setup = DescentSetup::new(k, cfg, kind)?;
    let qp = setup.qpic(k)?;
    let zero = qp.zero();
    let mut t = HomomorphismTally::default();
    if pts.is_empty() {
        return Ok(t);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pick = |v: &[PointE]| v[(rng.next_u64() % v.len() as u64) as usize].clone();
    for _ in 0..trials {
        let p = pick(pts);
        let q = pick(pts);
        let s = curve.add(k, &p, &q);
        let lhs = setup.image(&qp, &s)?;
        let rhs = qp.add(&setup.image(&qp, &p)?, &setup.image(&qp, &q)?);
        t.pairs += 1;
        t.additive += usize::from(lhs == rhs);
        let ker = match kind {
            MapKind::Phi2 => curve.smul(k, 2, &s),
            MapKind::Phi3 => {
                let src = if other_pts.is_empty() { e.lambda_isogeny(k, &p) } else { pick(other_pts) };
                let src = if other_pts.is_empty() { src } else { other.add(k, &src, &pick(other_pts)) };
                e.lambda_dual_any(k, &src)?
            }
            MapKind::Phi3p => {
                let src = if other_pts.is_empty() { p.clone() } else { e.add(k, &pick(other_pts), &pick(other_pts)) };
                e.lambda_isogeny(k, &src)
            }
        };
        t.kernel_trials += 1;
        t.kernel_zero += usize::from(setup.image(&qp, &ker)? == zero);
    }
    Ok(t)
}

// ---------------------------------------------------------------------
// counting identities for d <= 6

fn count_deg1(places: &[Place]) -> usize {
    places.iter().filter(|p| p.deg == 1).count()
}

fn theta_counts(k: &FieldCtx, c2: &AuxCurve) -> Result<(usize, usize)> {
    let th = theta_characteristics(k, c2)?;
    let odd = th.iter().filter(|t| t.odd).count();
    Ok((odd, th.len() - odd))
}

fn qd_count(k: &FieldCtx, cfg: &CurveConfig, kind: AuxKind) -> Result<i128> {
    let c = AuxCurve::new(k, cfg, kind)?;
    let (sup, n) = match kind {
        AuxKind::C2 => (support_d2(k, cfg, &c), 2),
        _ => (support_d3(k, cfg, &c), 3),
    };
    Ok(pic_qd_torsion(k, &c, &sup, n)?.len() as i128)
}

fn pic_count(k: &FieldCtx, cfg: &CurveConfig, kind: AuxKind) -> Result<i128> {
    let c = AuxCurve::new(k, cfg, kind)?;
    let n = if kind == AuxKind::C2 { 2 } else { 3 };
    Ok(pic_torsion(k, &c, n)?.len() as i128)
}

/// Number of `k`-rational cyclic subgroups of order 3 in the Jacobian of
/// `C_3`: classes fixed by Frobenius plus classes negated by it, the
/// latter counted on the quadratic twist.
pub fn rational_cyclic_subgroups_c3(k: &FieldCtx, cfg: &CurveConfig) -> Result<i128> {
    let c3 = AuxCurve::new(k, cfg, AuxKind::C3)?;
    let fixed = pic_torsion(k, &c3, 3)?.len() as i128;
    let nu = k.elements().find(|&a| k.chi2(a) == -1).ok_or_else(|| Error::InvalidField("no nonsquare".into()))?;
    let tw = AuxCurve::from_model(k, AuxKind::C3, k.mul(nu, c3.model.c), &c3.model.a, &c3.model.b, &c3.scale)?;
    let negated = pic_torsion(k, &tw, 3)?.len() as i128;
    Ok((fixed - 1) / 2 + (negated - 1) / 2)
}

fn discriminant_monic(k: &FieldCtx, g: &Poly) -> Result<Fq> {
    let g = g.monic(k);
    let c = |i| g.coeff(i);
    let n = |x: i64| k.from_int(x);
    match g.deg() {
        2 => Ok(k.sub(k.mul(c(1), c(1)), k.mul(n(4), c(0)))),
        3 => {
            let (b, cc, e) = (c(2), c(1), c(0));
            let t1 = k.mul(k.mul(b, b), k.mul(cc, cc));
            let t2 = k.mul(n(4), k.pow(cc, 3));
            let t3 = k.mul(n(4), k.mul(k.pow(b, 3), e));
            let t4 = k.mul(n(27), k.mul(e, e));
            let t5 = k.mul(n(18), k.mul(b, k.mul(cc, e)));
            Ok(k.add(k.sub(k.sub(k.sub(t1, t2), t3), t4), t5))
        }
        _ => Err(Error::TypeNotCovered),
    }
}

struct Fibers {
    /// Fibers over the base points carrying `P_1, ..., P_4`.
    fibers: Vec<Vec<Place>>,
}

impl Fibers {
    fn new(k: &FieldCtx, cfg: &CurveConfig, c: &AuxCurve) -> Fibers {
        let mut fibers = Vec::new();
        for pi in &cfg.decomp.factors[1] {
            fibers.push(c.places_above(k, pi));
        }
        if cfg.di(2) == 1 {
            fibers.push(c.infinite_places(k));
        }
        Fibers { fibers }
    }

    /// `#{P_1 + P_3, P_1 + P_4, P_2 + P_3, P_2 + P_4}(k)`.
    fn cross_sums(&self) -> i128 {
        if self.fibers.len() == 2 {
            let split = self.fibers.iter().all(|f| f.len() == 2 && f.iter().all(|p| p.deg == 1));
            if split {
                4
            } else {
                0
            }
        } else {
            self.fibers[0].iter().filter(|p| p.deg == 2).count() as i128
        }
    }

    fn rational_points(&self) -> i128 {
        self.fibers.iter().map(|f| count_deg1(f) as i128).sum()
    }
}

fn structure_check(k: &FieldCtx, cfg: &CurveConfig, order: i128, exponent: i64, rep: &mut Report) -> Result<()> {
    let big = if k.zeta3_opt().is_some() { k.clone() } else { FieldCtx::new(k.p(), 2 * k.m())? };
    let ext = big.m() / k.m();
    let emb = Embedding::new(k, &big)?;
    let g = emb.apply_poly(k, &big, &cfg.f.monic(k));
    let e = Weierstrass::new(&g);
    let pts: Vec<PointE> = hits_to_points(&big, &search(&big, &g, SearchMode::Rational, 2, 3)?)
        .iter()
        .map(|p| p.to_point())
        .collect();
    let mut group = alloc::vec![PointE::Infinity];
    group.extend(pts);
    let killed = group.iter().filter(|p| e.smul(&big, exponent, p) == PointE::Infinity).count();
    let closed = group.iter().all(|p| group.iter().all(|q| group.contains(&e.add(&big, p, q))));
    rep.check("geometric Mordell-Weil group: order", group.len() as i128, Relation::Eq, order, ext);
    rep.check(&format!("geometric Mordell-Weil group: killed by {exponent}"), killed as i128, Relation::Eq, order, ext);
    rep.check("geometric Mordell-Weil group: closed under addition", i128::from(closed), Relation::Eq, 1, ext);
    Ok(())
}

fn xr(k: &FieldCtx, cfg: &CurveConfig, h: Rat) -> Result<i128> {
    Ok(count_at(k, cfg, SearchMode::XRational, h)? as i128)
}

fn yr(k: &FieldCtx, cfg: &CurveConfig, h: Rat) -> Result<i128> {
    Ok(count_at(k, cfg, SearchMode::YRational, h)? as i128)
}

/// Clause-by-clause check of the counting identities for `d <= 6`.
pub fn verify_corsh2(k: &FieldCtx, cfg: &CurveConfig) -> Result<Report> {
    let ty = classify_type(k, &cfg.f)?;
    let mut rep = Report::new("counting identities for d <= 6");
    rep.note(format!("type {ty}"));
    let t = |s: &str| format!("type {ty}: {s}");
    let (h6, h3, h2, h23) = (rat(1, 6), rat(1, 3), rat(1, 2), rat(2, 3));
    let one = int(1);
    match ty.0 {
        [1, 0, 0, 0, 1] => structure_check(k, cfg, 1, 1, &mut rep)?,
        [0, 1, 0, 1, 0] => structure_check(k, cfg, 3, 3, &mut rep)?,
        [0, 0, 2, 0, 0] => structure_check(k, cfg, 4, 2, &mut rep)?,
        [2, 0, 0, 1, 0] => {
            let p2 = pic_count(k, cfg, AuxKind::C2)?;
            let rhs = 2 * (p2 - 1);
            rep.check(&t("x-rational points, h^ = 1/3"), xr(k, cfg, h3)?, Relation::Eq, rhs, 1);
            rep.check(&t("x-rational points, h^ = 1"), xr(k, cfg, one)?, Relation::Eq, rhs, 1);
            let q3 = qd_count(k, cfg, AuxKind::C3)?;
            rep.check(&t("y-rational points, h^ = 1/3"), yr(k, cfg, h3)?, Relation::Eq, 3 * (q3 - 1), 1);
            let q3p = qd_count(k, cfg, AuxKind::C3p)?;
            rep.check(&t("y-rational points, h^ = 1"), yr(k, cfg, one)?, Relation::Eq, 3 * (q3p - 1), 1);
        }
        [1, 1, 1, 0, 0] => {
            let q2 = qd_count(k, cfg, AuxKind::C2)?;
            let rhs = 2 * (q2 - 1);
            rep.check(&t("x-rational points, h^ = 1/6"), xr(k, cfg, h6)?, Relation::Eq, rhs, 1);
            rep.check(&t("x-rational points, h^ = 1/2"), xr(k, cfg, h2)?, Relation::Eq, rhs, 1);
            let q3 = qd_count(k, cfg, AuxKind::C3)?;
            rep.check(&t("y-rational points, h^ = 1/6"), yr(k, cfg, h6)?, Relation::Eq, 3 * (q3 - 1), 1);
            let q3p = qd_count(k, cfg, AuxKind::C3p)?;
            rep.check(&t("y-rational points, h^ = 1/2"), yr(k, cfg, h2)?, Relation::Eq, 3 * (q3p - 1), 1);
        }
        [3, 0, 1, 0, 0] => {
            let q2 = qd_count(k, cfg, AuxKind::C2)?;
            let p2 = pic_count(k, cfg, AuxKind::C2)?;
            let p3 = pic_count(k, cfg, AuxKind::C3)?;
            rep.check(&t("x-rational points, h^ = 1/2"), xr(k, cfg, h2)?, Relation::Eq, 2 * (q2 - p2), 1);
            rep.check(&t("y-rational points, h^ = 1/2"), yr(k, cfg, h2)?, Relation::Eq, 3 * (p3 - 1), 1);
            rep.check(&t("y-rational points, h^ = 1"), yr(k, cfg, one)?, Relation::Eq, 3 * (p3 - 1), 1);
            let cyc = rational_cyclic_subgroups_c3(k, cfg)?;
            rep.check(&t("x-rational points, h^ = 1"), xr(k, cfg, one)?, Relation::Eq, 2 * (p2 - 1) * cyc, 1);
            let integral = count_at(k, cfg, SearchMode::Rational, one)? as i128;
            rep.check(&t("integral points, h^ = 1"), integral, Relation::Eq, (p2 - 1) * (p3 - 1), 1);
        }
        [0, 3, 0, 0, 0] => {
            let a = cfg.f.lc();
            let g = cfg.fi(2);
            let delta = discriminant_monic(k, g)?;
            let nroots = roots(k, g).len() as i128 + i128::from(g.deg() == 2);
            if g.deg() == 2 {
                rep.note("f is the square of a quadratic; identities checked as stated");
            }
            let cnt = |x: Fq, n: u64| k.nth_roots(x, n).len() as i128;
            let a2d = k.mul(k.mul(a, a), delta);
            let x_rhs = 2 * nroots * cnt(k.mul(k.from_int(2), a2d), 3);
            rep.check(&t("x-rational points, h^ = 1/3"), xr(k, cfg, h3)?, Relation::Eq, x_rhs, 1);
            rep.check(&t("x-rational points, h^ = 1"), xr(k, cfg, one)?, Relation::Eq, x_rhs, 1);
            let ad = k.mul(a, delta);
            rep.check(&t("y-rational points, h^ = 1/3"), yr(k, cfg, h3)?, Relation::Eq, 3 * nroots * cnt(ad, 2), 1);
            let m3ad = k.mul(k.from_int(-3), ad);
            rep.check(&t("y-rational points, h^ = 1"), yr(k, cfg, one)?, Relation::Eq, 3 * nroots * cnt(m3ad, 2), 1);
        }
        [2, 2, 0, 0, 0] => {
            let c2 = AuxCurve::new(k, cfg, AuxKind::C2)?;
            let (odd, even) = theta_counts(k, &c2)?;
            let (odd, even) = (odd as i128, even as i128);
            let c3 = AuxCurve::new(k, cfg, AuxKind::C3)?;
            let c3p = AuxCurve::new(k, cfg, AuxKind::C3p)?;
            let f3 = Fibers::new(k, cfg, &c3);
            let f3p = Fibers::new(k, cfg, &c3p);
            rep.check(&t("x-rational points, h^ = 1/3"), xr(k, cfg, h3)?, Relation::Eq, 2 * odd, 1);
            rep.check(&t("y-rational points, h^ = 1/3"), yr(k, cfg, h3)?, Relation::Eq, 3 * f3.cross_sums(), 1);
            rep.check(&t("x-rational points, h^ = 2/3"), xr(k, cfg, h23)?, Relation::Eq, 4 * (even - 1), 1);
            let integral = count_at(k, cfg, SearchMode::Rational, h23)? as i128;
            rep.check(&t("integral points, h^ = 2/3"), integral, Relation::Eq, f3.rational_points() * (even - 1), 1);
            rep.check(&t("x-rational points, h^ = 1"), xr(k, cfg, one)?, Relation::Eq, 2 * odd, 1);
            rep.check(&t("y-rational points, h^ = 1"), yr(k, cfg, one)?, Relation::Eq, 3 * f3p.cross_sums(), 1);
        }
        [4, 1, 0, 0, 0] => {
            let c2 = AuxCurve::new(k, cfg, AuxKind::C2)?;
            let (odd, even) = theta_counts(k, &c2)?;
            rep.check(&t("x-rational points, h^ = 2/3"), xr(k, cfg, h23)?, Relation::Eq, 2 * (odd as i128 - 1), 1);
            let q3 = qd_count(k, cfg, AuxKind::C3)?;
            let p3 = pic_count(k, cfg, AuxKind::C3)?;
            rep.check(&t("y-rational points, h^ = 2/3"), yr(k, cfg, h23)?, Relation::Eq, 3 * (q3 - p3), 1);
            rep.check(&t("x-rational points, h^ = 1"), xr(k, cfg, one)?, Relation::Eq, 2 * even as i128, 1);
        }
        [6, 0, 0, 0, 0] => {
            let c2 = AuxCurve::new(k, cfg, AuxKind::C2)?;
            let (odd, _) = theta_counts(k, &c2)?;
            rep.check(&t("x-rational points, h^ = 1"), xr(k, cfg, one)?, Relation::Eq, 2 * odd as i128, 1);
            let p3 = pic_count(k, cfg, AuxKind::C3)?;
            rep.check(&t("y-rational points, h^ = 1"), yr(k, cfg, one)?, Relation::Eq, 3 * (p3 - 1), 1);
        }
        _ => return Err(Error::TypeNotCovered),
    }
    Ok(rep.finish())
}

// ---------------------------------------------------------------------
// W sets and Table 1

/// Size of `Pic(C, Q.D)[n]` over an algebraically closed field.
pub fn geometric_torsion_size(c: &AuxCurve, support: &[Place], n: u64) -> i128 {
    let r: usize = support.iter().map(|p| p.deg).sum();
    let e = 2 * c.genus + r.saturating_sub(1);
    (n as i128).pow(e as u32)
}

/// Both `W` sets at the bounds paired by the bijection, and whether the
/// torsion groups containing them are full.
pub struct WData {
    pub w2: i128,
    pub w3: i128,
    pub stabilized: bool,
}

fn torsion_full(k: &FieldCtx, c2: &AuxCurve, s2: &[Place], c3: &AuxCurve, s3: &[Place]) -> Result<bool> {
    let full2 = pic_qd_torsion(k, c2, s2, 2)?.len() as i128 == geometric_torsion_size(c2, s2, 2);
    Ok(full2 && pic_qd_torsion(k, c3, s3, 3)?.len() as i128 == geometric_torsion_size(c3, s3, 3))
}

/// Whether `Pic(C_2, Q.D_2)[2]` and `Pic(C_3, Q.D_3)[3]` are as large as
/// over an algebraic closure.
pub fn torsion_stabilized(k: &FieldCtx, cfg: &CurveConfig) -> Result<bool> {
    let c2 = AuxCurve::new(k, cfg, AuxKind::C2)?;
    let c3 = AuxCurve::new(k, cfg, AuxKind::C3)?;
    torsion_full(k, &c2, &support_d2(k, cfg, &c2), &c3, &support_d3(k, cfg, &c3))
}

pub fn w_data(k: &FieldCtx, cfg: &CurveConfig) -> Result<WData> {
    let d = cfg.d as i64;
    let top = if cfg.d % 6 == 5 { d + 1 } else { d };
    let c2 = AuxCurve::new(k, cfg, AuxKind::C2)?;
    let c3 = AuxCurve::new(k, cfg, AuxKind::C3)?;
    let s2 = support_d2(k, cfg, &c2);
    let s3 = support_d3(k, cfg, &c3);
    let stabilized = torsion_full(k, &c2, &s2, &c3, &s3)?;
    let w2 = w_set(k, &c2, &s2, rat(top, 2), 2)?.len() as i128;
    let w3 = w_set(k, &c3, &s3, rat(top, 3), 3)?.len() as i128;
    Ok(WData { w2, w3, stabilized })
}

/// The bijection between the `W` sets and the bound on `#W(C_2)[2]`.
pub fn verify_wbij(k: &FieldCtx, cfg: &CurveConfig) -> Result<Report> {
    if !is_squarefree(cfg) {
        return Err(Error::HypothesisViolated("f must be squarefree".into()));
    }
    let mut rep = Report::new("W-set bijection");
    let w = w_data(k, cfg)?;
    let d = cfg.d as u32;
    let lhs = 2 * (w.w2 - 1);
    let rhs = 3 * (w.w3 - 1);
    rep.record("torsion groups full over the working field", i128::from(w.stabilized), Relation::Eq, 1, k.m());
    if w.stabilized || d % 6 == 1 {
        rep.check("2(#W(C_2)[2] - 1) = 3(#W(C_3)[3] - 1)", lhs, Relation::Eq, rhs, k.m());
    } else {
        rep.record("2(#W(C_2)[2] - 1) = 3(#W(C_3)[3] - 1)", lhs, Relation::Eq, rhs, k.m());
        rep.note("torsion not full over the working field; the bijection is recorded, not asserted");
    }
    let bound = match d % 6 {
        0 => (pow_i(3, d - 1) - 1) / 2,
        1 => 1,
        _ => (pow_i(3, d) - 1) / 2,
    };
    rep.check("#W(C_2)[2] against (3^e - 1)/2", w.w2, Relation::Le, bound, k.m());
    Ok(rep.finish())
}

/// One row of the degree table for squarefree `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1Row {
    pub d: usize,
    pub height: Rat,
    pub lattice: LatticeName,
    pub count: i128,
}

pub fn table1_rows(d: usize) -> Vec<Table1Row> {
    let row = |h: Rat, l: LatticeName, c: i128| Table1Row { d, height: h, lattice: l, count: c };
    match d {
        2 => alloc::vec![row(rat(1, 3), LatticeName::A2Dual, 6)],
        3 => alloc::vec![row(rat(1, 2), LatticeName::D4Dual, 24)],
        4 => alloc::vec![row(rat(2, 3), LatticeName::E6Dual, 54), row(int(1), LatticeName::E6Dual, 72)],
        5 | 6 => alloc::vec![row(int(1), LatticeName::E8, 240)],
        _ => Vec::new(),
    }
}

/// Point counts, both descent formulas and the lattice shells for the
/// degree table; meaningful over a field where everything is rational.
pub fn verify_table1(k: &FieldCtx, cfg: &CurveConfig) -> Result<Report> {
    if !is_squarefree(cfg) || !(2..=6).contains(&cfg.d) {
        return Err(Error::HypothesisViolated("f must be squarefree of degree 2 to 6".into()));
    }
    let mut rep = Report::new("degree table");
    let d = cfg.d;
    let e = k.m();
    let c2 = AuxCurve::new(k, cfg, AuxKind::C2)?;
    let c3 = AuxCurve::new(k, cfg, AuxKind::C3)?;
    let s2 = support_d2(k, cfg, &c2);
    let s3 = support_d3(k, cfg, &c3);
    let p2 = || -> Result<i128> { Ok(pic_torsion(k, &c2, 2)?.len() as i128) };
    let p3 = || -> Result<i128> { Ok(pic_torsion(k, &c3, 3)?.len() as i128) };
    let q2 = || -> Result<i128> { Ok(pic_qd_torsion(k, &c2, &s2, 2)?.len() as i128) };
    let q3 = || -> Result<i128> { Ok(pic_qd_torsion(k, &c3, &s3, 3)?.len() as i128) };
    let full = torsion_full(k, &c2, &s2, &c3, &s3)?;
    rep.record("torsion groups full over the working field", i128::from(full), Relation::Eq, 1, e);
    if !full {
        rep.note("torsion not full over the working field; counts are recorded, not asserted");
    }
    for row in table1_rows(d) {
        let h = row.height;
        let id = |s: &str| format!("d = {d}, h^ = {}: {s}", fmt_rat(h));
        let integral = count_at(k, cfg, SearchMode::Rational, h)? as i128;
        rep.claim(full, &id("integral points"), integral, Relation::Eq, row.count, e);
        rep.claim(full, &id("x-rational points"), xr(k, cfg, h)?, Relation::Eq, row.count, e);
        rep.claim(full, &id("y-rational points"), yr(k, cfg, h)?, Relation::Eq, row.count, e);
        let (two, three) = match (d, row.count) {
            (2, _) => (Some(2 * (p2()? - 1)), Some(3 * (q3()? - 1))),
            (3, _) => (Some(2 * (q2()? - p2()?)), Some(3 * (p3()? - 1))),
            (4, 54) => {
                let (odd, _) = theta_counts(k, &c2)?;
                (Some(2 * (odd as i128 - 1)), Some(3 * (q3()? - p3()?)))
            }
            (4, _) => {
                let (_, even) = theta_counts(k, &c2)?;
                (Some(2 * even as i128), None)
            }
            _ => {
                let (odd, _) = theta_counts(k, &c2)?;
                (Some(2 * odd as i128), Some(3 * (p3()? - 1)))
            }
        };
        if let Some(v) = two {
            rep.claim(full, &id("2-descent formula"), v, Relation::Eq, row.count, e);
        }
        if let Some(v) = three {
            rep.claim(full, &id("3-descent formula"), v, Relation::Eq, row.count, e);
        }
        let lat = standard_lattice(row.lattice);
        let shell = shell_count(&lat, h * int(2)) as i128;
        rep.check(&id(&format!("{} shell at norm {}", row.lattice.name(), fmt_rat(h * int(2)))), shell, Relation::Eq, row.count, e);
    }
    Ok(rep.finish())
}
