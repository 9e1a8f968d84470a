//! Points of `E : y^2 = x^3 + f` over `k(t)`: group law, the order-3
//! automorphism, the 3-isogeny `lambda` and its dual, heights and the
//! integral point search.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::factor::nth_root_monic;
use crate::algebra::{Embedding, FieldCtx, Fq, Poly, RatFunc, SixthPowerFreeDecomp};
use crate::error::{Error, Result};
use crate::model::{davenport_height_bound, CurveConfig};
use crate::rat::{floor, int, rat, Rat};

/// A point of `E(k(t))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointE {
    Infinity,
    Finite { x: RatFunc, y: RatFunc },
}

impl PointE {
    pub fn from_polys(x: &Poly, y: &Poly) -> PointE {
        PointE::Finite { x: RatFunc::from_poly(x), y: RatFunc::from_poly(y) }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, PointE::Infinity)
    }

    pub fn x(&self) -> Option<&RatFunc> {
        match self {
            PointE::Infinity => None,
            PointE::Finite { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&RatFunc> {
        match self {
            PointE::Infinity => None,
            PointE::Finite { y, .. } => Some(y),
        }
    }

    /// Polynomial coordinates, when both are polynomials.
    pub fn as_integral(&self) -> Option<IntegralPoint> {
        match self {
            PointE::Finite { x, y } => {
                Some(IntegralPoint { x: x.as_poly()?.clone(), y: y.as_poly()?.clone() })
            }
            PointE::Infinity => None,
        }
    }

    pub fn map(&self, f: impl Fn(Fq) -> Fq) -> PointE {
        match self {
            PointE::Infinity => PointE::Infinity,
            PointE::Finite { x, y } => PointE::Finite { x: x.map(&f), y: y.map(&f) },
        }
    }
}

/// A point with polynomial coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegralPoint {
    pub x: Poly,
    pub y: Poly,
}

impl IntegralPoint {
    pub fn to_point(&self) -> PointE {
        PointE::from_polys(&self.x, &self.y)
    }

    pub fn naive_height(&self) -> Rat {
        let hx = rat(self.x.deg().max(0), 2);
        let hy = rat(self.y.deg().max(0), 3);
        hx.max(hy)
    }
}

/// The Weierstrass curve `y^2 = x^3 + f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weierstrass {
    pub f: Poly,
}

impl Weierstrass {
    pub fn new(f: &Poly) -> Weierstrass {
        Weierstrass { f: f.clone() }
    }

    /// `E' : y^2 = x^3 - 27 f`.
    pub fn isogenous(&self, k: &FieldCtx) -> Weierstrass {
        Weierstrass { f: self.f.scale(k, k.from_int(-27)) }
    }

    pub fn contains(&self, k: &FieldCtx, p: &PointE) -> bool {
        match p {
            PointE::Infinity => true,
            PointE::Finite { x, y } => {
                let rhs = x.pow(k, 3).add(k, &RatFunc::from_poly(&self.f));
                y.square(k) == rhs
            }
        }
    }

    pub fn neg(&self, k: &FieldCtx, p: &PointE) -> PointE {
        match p {
            PointE::Infinity => PointE::Infinity,
            PointE::Finite { x, y } => PointE::Finite { x: x.clone(), y: y.neg(k) },
        }
    }

    pub fn add(&self, k: &FieldCtx, p: &PointE, q: &PointE) -> PointE {
        let (x1, y1, x2, y2) = match (p, q) {
            (PointE::Infinity, _) => return q.clone(),
            (_, PointE::Infinity) => return p.clone(),
            (PointE::Finite { x: a, y: b }, PointE::Finite { x: c, y: d }) => (a, b, c, d),
        };
        let lam = if x1 == x2 {
            if y1.add(k, y2).is_zero() {
                return PointE::Infinity;
            }
            // tangent: 3x^2 / 2y
            let num = x1.square(k).scale(k, k.from_int(3));
            num.div(k, &y1.scale(k, k.from_int(2))).unwrap()
        } else {
            y2.sub(k, y1).div(k, &x2.sub(k, x1)).unwrap()
        };
        let x3 = lam.square(k).sub(k, x1).sub(k, x2);
        let y3 = lam.mul(k, &x1.sub(k, &x3)).sub(k, y1);
        PointE::Finite { x: x3, y: y3 }
    }

    pub fn sub(&self, k: &FieldCtx, p: &PointE, q: &PointE) -> PointE {
        self.add(k, p, &self.neg(k, q))
    }

    pub fn smul(&self, k: &FieldCtx, n: i64, p: &PointE) -> PointE {
        let mut base = if n < 0 { self.neg(k, p) } else { p.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = PointE::Infinity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(k, &acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.add(k, &base, &base);
            }
        }
        acc
    }

    /// `(x, y) -> (zeta3 x, y)`.
    pub fn zeta3_act(&self, k: &FieldCtx, p: &PointE) -> Result<PointE> {
        let z = k.zeta3()?;
        Ok(match p {
            PointE::Infinity => PointE::Infinity,
            PointE::Finite { x, y } => PointE::Finite { x: x.scale(k, z), y: y.clone() },
        })
    }

    /// `P -> P + 2 zeta3 P`, the endomorphism `1 + 2 zeta3 = sqrt(-3)`.
    pub fn sqrt_minus3_act(&self, k: &FieldCtx, p: &PointE) -> Result<PointE> {
        let zp = self.zeta3_act(k, p)?;
        Ok(self.add(k, p, &self.smul(k, 2, &zp)))
    }

    /// `lambda : E -> E'`, `(x,y) -> ((x^3+4f)/x^2, y(x^3-8f)/x^3)`.
    pub fn lambda_isogeny(&self, k: &FieldCtx, p: &PointE) -> PointE {
        match p {
            PointE::Infinity => PointE::Infinity,
            PointE::Finite { x, y } => {
                if x.is_zero() {
                    return PointE::Infinity;
                }
                let f = RatFunc::from_poly(&self.f);
                let x3 = x.pow(k, 3);
                let nx = x3.add(k, &f.scale(k, k.from_int(4))).div(k, &x.square(k)).unwrap();
                let ny = y.mul(k, &x3.sub(k, &f.scale(k, k.from_int(8)))).div(k, &x3).unwrap();
                PointE::Finite { x: nx, y: ny }
            }
        }
    }

    /// Dual isogeny `E' -> E`, computed as `sqrt(-3)` after the inverse of
    /// `psi : (x,y) -> (-3x, -3 r y)`.  Here `sqrt(-3)` acts as `1 + 2 zeta3`
    /// and `r = -(1 + 2 zeta3)`, which makes the composite with `lambda`
    /// equal to `[3]`.
    pub fn lambda_dual(&self, k: &FieldCtx, q: &PointE) -> Result<PointE> {
        let z = k.zeta3()?;
        let s = k.neg(k.add(Fq::ONE, k.add(z, z)));
        let pre = match q {
            PointE::Infinity => return Ok(PointE::Infinity),
            PointE::Finite { x, y } => {
                let cx = k.neg(k.inv(k.from_int(3)));
                let cy = k.neg(k.inv(k.mul(k.from_int(3), s)));
                PointE::Finite { x: x.scale(k, cx), y: y.scale(k, cy) }
            }
        };
        self.sqrt_minus3_act(k, &pre)
    }

    /// `lambda_dual` over any field: when `zeta3` is missing the computation
    /// runs over the quadratic extension and the result is restricted back.
    pub fn lambda_dual_any(&self, k: &FieldCtx, q: &PointE) -> Result<PointE> {
        if k.zeta3_opt().is_some() {
            return self.lambda_dual(k, q);
        }
        let big = FieldCtx::new(k.p(), 2 * k.m())?;
        let emb = Embedding::new(k, &big)?;
        let eb = Weierstrass::new(&emb.apply_poly(k, &big, &self.f));
        let qb = q.map(|a| emb.apply(k, &big, a));
        let r = eb.lambda_dual(&big, &qb)?;
        restrict_point(&emb, &r).ok_or_else(|| Error::PreconditionUnmet("dual isogeny image is not rational".into()))
    }
}

fn restrict_point(emb: &Embedding, p: &PointE) -> Option<PointE> {
    match p {
        PointE::Infinity => Some(PointE::Infinity),
        PointE::Finite { x, y } => {
            let r = |f: &RatFunc| -> Option<RatFunc> {
                Some(RatFunc { num: emb.restrict_poly(&f.num)?, den: emb.restrict_poly(&f.den)? })
            };
            Some(PointE::Finite { x: r(x)?, y: r(y)? })
        }
    }
}

/// Naive and canonical heights with the intersection data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightReport {
    pub naive: Rat,
    pub canonical: Rat,
    pub n2: usize,
    pub n3: usize,
    pub n4: usize,
}

/// `max(deg x / 2, deg y / 3)`.
pub fn naive_height(p: &PointE) -> Result<Rat> {
    match p {
        PointE::Infinity => Err(Error::InfinitePoint),
        PointE::Finite { x, y } => Ok(rat(x.degree().max(0), 2).max(rat(y.degree().max(0), 3))),
    }
}

/// `h - n2/3 - n3/2 - 2 n4/3` with `n_i = deg gcd(f_i, numerator of x)`.
pub fn canonical_height(k: &FieldCtx, p: &PointE, dc: &SixthPowerFreeDecomp) -> Result<HeightReport> {
    let naive = naive_height(p)?;
    let x = p.x().unwrap();
    let n = |i: usize| -> usize {
        if x.num.is_zero() {
            dc.deg(i)
        } else {
            dc.f(i).gcd(k, &x.num).deg() as usize
        }
    };
    let (n2, n3, n4) = (n(2), n(3), n(4));
    let canonical = naive - rat(n2 as i64, 3) - rat(n3 as i64, 2) - rat(2 * n4 as i64, 3);
    Ok(HeightReport { naive, canonical, n2, n3, n4 })
}

/// Canonical height of a point given by polynomial coordinates.
pub fn canonical_height_integral(k: &FieldCtx, x: &Poly, h: Rat, dc: &SixthPowerFreeDecomp) -> Rat {
    let n = |i: usize| -> i64 {
        if x.is_zero() {
            dc.deg(i) as i64
        } else {
            dc.f(i).gcd(k, x).deg()
        }
    };
    h - rat(n(2), 3) - rat(n(3), 2) - rat(2 * n(4), 3)
}

/// What the search is allowed to find.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// `x, y` in `k[t]`.
    Rational,
    /// `x` in `k[t]`, `y` in the geometric polynomial ring.
    XRational,
    /// `y` in `k[t]`, `x` in the geometric polynomial ring.
    YRational,
}

/// A group of points found by the search.  In `Rational` mode `x, y` are
/// the coordinates.  In `XRational` mode `y^2 = c * s^2` with `y` holding
/// the monic `s`; in `YRational` mode `x^3 = c * s^3` with `x` holding `s`.
/// `count` is the number of points in `E(k̄(t))` represented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchHit {
    pub x: Poly,
    pub y: Poly,
    pub c: Fq,
    pub count: usize,
    pub naive: Rat,
}

struct Sieve {
    q: u64,
    chi2: Vec<i8>,
    chi3: Vec<i8>,
    pts: Vec<(Vec<Fq>, Fq)>,
}

impl Sieve {
    fn new(k: &FieldCtx, f: &Poly, maxdeg: usize) -> Sieve {
        let q = k.q();
        let small = q <= 1 << 22;
        let chi2 = if small {
            (0..q).map(|a| k.chi2(Fq(a)) as i8).collect()
        } else {
            Vec::new()
        };
        let chi3 = if small && (q - 1) % 3 == 0 {
            (0..q)
                .map(|a| match k.log(Fq(a)) {
                    None => -1,
                    Some(l) => (l % 3) as i8,
                })
                .collect()
        } else {
            Vec::new()
        };
        let npts = q.min(8);
        let pts = (0..npts)
            .map(|a| {
                let t = Fq(a);
                let mut pw = vec![Fq::ONE];
                for i in 1..=maxdeg {
                    pw.push(k.mul(pw[i - 1], t));
                }
                (pw, f.eval(k, t))
            })
            .collect();
        Sieve { q, chi2, chi3, pts }
    }

    fn c2(&self, k: &FieldCtx, a: Fq) -> i8 {
        if self.chi2.is_empty() {
            k.chi2(a) as i8
        } else {
            self.chi2[a.0 as usize]
        }
    }
}

fn decode(idx: u64, q: u64, n: usize) -> Vec<Fq> {
    let mut v = Vec::with_capacity(n);
    let mut r = idx;
    for _ in 0..n {
        v.push(Fq(r % q));
        r /= q;
    }
    v
}

fn q_pow(q: u64, n: usize) -> Result<u64> {
    let mut r = 1u64;
    for _ in 0..n {
        r = r.checked_mul(q).ok_or(Error::SearchTooLarge { estimate: u64::MAX })?;
    }
    Ok(r)
}

/// Number of outer work items of a search (the partition unit for workers).
pub fn search_outer_count(k: &FieldCtx, mode: SearchMode, max_deg_x: i64, max_deg_y: i64) -> Result<u64> {
    let n = match mode {
        SearchMode::YRational => max_deg_y,
        _ => max_deg_x,
    };
    if n < 0 {
        return Ok(1);
    }
    q_pow(k.q(), n as usize)
}

/// Exhaustive search over coordinates of bounded degree; outer work items
/// with index `i` such that `i % parts == part` are processed.
pub fn search_partition(
    k: &FieldCtx,
    f: &Poly,
    mode: SearchMode,
    max_deg_x: i64,
    max_deg_y: i64,
    part: u64,
    parts: u64,
) -> Result<Vec<SearchHit>> {
    let mut out = Vec::new();
    if max_deg_x < 0 && max_deg_y < 0 {
        return Ok(out);
    }
    let q = k.q();
    let iter_deg = match mode {
        SearchMode::YRational => max_deg_y,
        _ => max_deg_x,
    };
    if iter_deg < 0 {
        return Ok(out);
    }
    let n = iter_deg as usize;
    let sieve = Sieve::new(k, f, n);
    let outer = q_pow(q, n)?;
    let mut idx = part;
    let mut vals = vec![Fq::ZERO; sieve.pts.len()];
    while idx < outer {
        let hi = decode(idx, q, n);
        for (j, (pw, _)) in sieve.pts.iter().enumerate() {
            let mut b = Fq::ZERO;
            for (i, &a) in hi.iter().enumerate() {
                b = k.add(b, k.mul(a, pw[i + 1]));
            }
            vals[j] = b;
        }
        for a0 in 0..sieve.q {
            let a0 = Fq(a0);
            if !sieve_pass(k, &sieve, &vals, a0, mode) {
                continue;
            }
            let mut c = Vec::with_capacity(n + 1);
            c.push(a0);
            c.extend_from_slice(&hi);
            let g = Poly::from_coeffs(c);
            if let Some(hit) = full_test(k, f, mode, &g, max_deg_x, max_deg_y) {
                out.push(hit);
            }
        }
        idx += parts;
    }
    Ok(out)
}

fn sieve_pass(k: &FieldCtx, s: &Sieve, vals: &[Fq], a0: Fq, mode: SearchMode) -> bool {
    let mut cls: i8 = 0;
    for (j, (_, fj)) in s.pts.iter().enumerate() {
        let g = k.add(vals[j], a0);
        match mode {
            SearchMode::Rational | SearchMode::XRational => {
                let v = k.add(k.mul(k.mul(g, g), g), *fj);
                let c = s.c2(k, v);
                if c == 0 {
                    continue;
                }
                if mode == SearchMode::Rational && c < 0 {
                    return false;
                }
                if cls == 0 {
                    cls = c;
                } else if cls != c {
                    return false;
                }
            }
            SearchMode::YRational => {
                if s.chi3.is_empty() {
                    return true;
                }
                let v = k.sub(k.mul(g, g), *fj);
                let c = s.chi3[v.0 as usize];
                if c < 0 {
                    continue;
                }
                let c = c + 1;
                if cls == 0 {
                    cls = c;
                } else if cls != c {
                    return false;
                }
            }
        }
    }
    true
}

fn full_test(k: &FieldCtx, f: &Poly, mode: SearchMode, g: &Poly, mx: i64, my: i64) -> Option<SearchHit> {
    match mode {
        SearchMode::Rational | SearchMode::XRational => {
            let r = g.pow(k, 3).add(k, f);
            if r.is_zero() {
                let naive = rat(g.deg().max(0), 2);
                return Some(SearchHit { x: g.clone(), y: Poly::zero(), c: Fq::ZERO, count: 1, naive });
            }
            if r.deg() % 2 != 0 || r.deg() / 2 > my {
                return None;
            }
            let lc = r.lc();
            let s = nth_root_monic(k, &r.monic(k), 2)?;
            let naive = rat(g.deg().max(0), 2).max(rat(s.deg(), 3));
            if mode == SearchMode::Rational {
                let c = *k.nth_roots(lc, 2).first()?;
                return Some(SearchHit { x: g.clone(), y: s.scale(k, c), c: lc, count: 2, naive });
            }
            Some(SearchHit { x: g.clone(), y: s, c: lc, count: 2, naive })
        }
        SearchMode::YRational => {
            let r = g.square(k).sub(k, f);
            if r.is_zero() {
                let naive = rat(g.deg().max(0), 3);
                return Some(SearchHit { x: Poly::zero(), y: g.clone(), c: Fq::ZERO, count: 1, naive });
            }
            if r.deg() % 3 != 0 || r.deg() / 3 > mx {
                return None;
            }
            let lc = r.lc();
            let s = nth_root_monic(k, &r.monic(k), 3)?;
            let naive = rat(s.deg(), 2).max(rat(g.deg().max(0), 3));
            Some(SearchHit { x: s, y: g.clone(), c: lc, count: 3, naive })
        }
    }
}

/// All hits of a search, run sequentially.
pub fn search(k: &FieldCtx, f: &Poly, mode: SearchMode, max_deg_x: i64, max_deg_y: i64) -> Result<Vec<SearchHit>> {
    search_partition(k, f, mode, max_deg_x, max_deg_y, 0, 1)
}

/// Expand `Rational` hits into integral points.
pub fn hits_to_points(k: &FieldCtx, hits: &[SearchHit]) -> Vec<IntegralPoint> {
    let mut pts = Vec::new();
    for h in hits {
        pts.push(IntegralPoint { x: h.x.clone(), y: h.y.clone() });
        if !h.y.is_zero() {
            pts.push(IntegralPoint { x: h.x.clone(), y: h.y.neg(k) });
        }
    }
    pts.sort();
    pts
}

/// Degree caps `(floor(2 h), floor(3 h))`.
pub fn degree_caps(h_max: Rat) -> (i64, i64) {
    (floor(h_max * int(2)), floor(h_max * int(3)))
}

/// All integral points of naive height at most `h_max` (capped at `d - 1`).
pub fn enumerate_integral_points(k: &FieldCtx, cfg: &CurveConfig, h_max: Option<Rat>) -> Result<Vec<IntegralPoint>> {
    let bound = davenport_height_bound(cfg)?;
    let h = h_max.map_or(bound, |h| h.min(bound));
    let (dx, dy) = degree_caps(h);
    let hits = search(k, &cfg.f, SearchMode::Rational, dx, dy)?;
    Ok(hits_to_points(k, &hits))
}
