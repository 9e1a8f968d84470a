//! Types, Kodaira fibers, genera and the change of model `t -> 1/t`.

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::factor::factor;
use crate::algebra::{sixth_power_free_decompose, FieldCtx, Poly, SixthPowerFreeDecomp};
use crate::error::{Error, Result};
use crate::rat::{int, Rat};

/// The curve `y^2 = x^3 + f` together with its decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveConfig {
    pub f: Poly,
    pub decomp: SixthPowerFreeDecomp,
    pub d: usize,
    pub chi: usize,
}

impl CurveConfig {
    pub fn new(k: &FieldCtx, f: &Poly) -> Result<CurveConfig> {
        if f.deg() < 1 {
            return Err(Error::DegenerateCurve("f must be nonconstant".into()));
        }
        let decomp = sixth_power_free_decompose(k, f)?;
        let d = f.deg() as usize;
        Ok(CurveConfig { f: f.clone(), decomp, d, chi: d.div_ceil(6) })
    }

    pub fn fi(&self, i: usize) -> &Poly {
        self.decomp.f(i)
    }

    pub fn di(&self, i: usize) -> usize {
        self.decomp.deg(i)
    }

    pub fn omega(&self, i: usize) -> usize {
        self.decomp.omega(i)
    }
}

/// `(delta_1, ..., delta_5)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeQuintuple(pub [usize; 5]);

impl core::fmt::Display for TypeQuintuple {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let d = self.0;
        write!(f, "({},{},{},{},{})", d[0], d[1], d[2], d[3], d[4])
    }
}

/// Places of `P^1` over `k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasePlace {
    Finite(Poly),
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KodairaKind {
    Good,
    II,
    IV,
    I0Star,
    IVStar,
    IIStar,
}

impl KodairaKind {
    pub fn name(self) -> &'static str {
        match self {
            KodairaKind::Good => "good",
            KodairaKind::II => "II",
            KodairaKind::IV => "IV",
            KodairaKind::I0Star => "I0*",
            KodairaKind::IVStar => "IV*",
            KodairaKind::IIStar => "II*",
        }
    }

    /// Local height contribution of a point meeting a non-identity component.
    pub fn contr(self) -> Rat {
        match self {
            KodairaKind::IV => crate::rat::rat(2, 3),
            KodairaKind::I0Star => int(1),
            KodairaKind::IVStar => crate::rat::rat(4, 3),
            _ => int(0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KodairaFiber {
    pub place: BasePlace,
    pub kind: KodairaKind,
}

const FINITE_KINDS: [KodairaKind; 5] =
    [KodairaKind::II, KodairaKind::IV, KodairaKind::I0Star, KodairaKind::IVStar, KodairaKind::IIStar];

/// Fiber type at infinity indexed by `d mod 6`.
pub fn kind_at_infinity(d: usize) -> KodairaKind {
    [
        KodairaKind::Good,
        KodairaKind::IIStar,
        KodairaKind::IVStar,
        KodairaKind::I0Star,
        KodairaKind::IV,
        KodairaKind::II,
    ][d % 6]
}

pub fn classify_type(k: &FieldCtx, f: &Poly) -> Result<TypeQuintuple> {
    let d = f.deg();
    if d > 6 {
        return Err(Error::DegreeTooLarge(d as usize));
    }
    if d < 1 {
        return Err(Error::DegenerateCurve("f must be nonconstant".into()));
    }
    let mut delta = [0usize; 5];
    for (pi, e) in factor(k, f) {
        if e >= 6 {
            return Err(Error::NotSixthPowerFree);
        }
        delta[e as usize - 1] += pi.deg() as usize;
    }
    let at_inf = 6 - d as usize;
    if at_inf > 0 {
        delta[at_inf - 1] += 1;
    }
    Ok(TypeQuintuple(delta))
}

pub fn kodaira_fibers(cfg: &CurveConfig) -> Vec<KodairaFiber> {
    let mut out = Vec::new();
    for (i, kind) in FINITE_KINDS.iter().enumerate() {
        for pi in &cfg.decomp.factors[i] {
            out.push(KodairaFiber { place: BasePlace::Finite(pi.clone()), kind: *kind });
        }
    }
    out.sort_by(|a, b| a.place.cmp(&b.place));
    out.push(KodairaFiber { place: BasePlace::Infinity, kind: kind_at_infinity(cfg.d) });
    out
}

/// Genus of `C_2 : x^3 = -f`.
pub fn genus_c2(dc: &SixthPowerFreeDecomp) -> Result<usize> {
    let s = dc.deg(1) + dc.deg(2) + dc.deg(4) + dc.deg(5);
    if s == 0 {
        return Err(Error::DegenerateCurve("f is a cube in the geometric polynomial ring".into()));
    }
    Ok(if dc.d % 3 == 0 { s - 2 } else { s - 1 })
}

/// Genus of `C_3 : y^2 = f`.
pub fn genus_c3(dc: &SixthPowerFreeDecomp) -> Result<usize> {
    let s = dc.deg(1) + dc.deg(3) + dc.deg(5);
    if s == 0 {
        return Err(Error::DegenerateCurve("f is a square in the geometric polynomial ring".into()));
    }
    Ok(if dc.d % 2 == 0 { (s - 2) / 2 } else { (s - 1) / 2 })
}

/// Upper bound `d - 1` on the naive height of an integral point.
pub fn davenport_height_bound(cfg: &CurveConfig) -> Result<Rat> {
    if cfg.fi(1).is_constant() {
        return Err(Error::HypothesisViolated("f_1 must be nonconstant".into()));
    }
    Ok(int(cfg.d as i64 - 1))
}

/// Checks `deg(g^3 - h^2) >= M + 1` under the Davenport hypotheses.
pub fn check_davenport(k: &FieldCtx, g: &Poly, h: &Poly) -> Result<bool> {
    let g3 = g.pow(k, 3);
    let h2 = h.square(k);
    if g3.deg() != h2.deg() || g3.deg() <= 0 || g3.deg() % 6 != 0 {
        return Err(Error::PreconditionUnmet(format!(
            "deg g^3 = {} and deg h^2 = {} must agree and equal 6M with M > 0",
            g3.deg(),
            h2.deg()
        )));
    }
    let m = g3.deg() / 6;
    let diff = g3.sub(k, &h2);
    if diff.is_zero() {
        return Err(Error::PreconditionUnmet("g^3 = h^2".into()));
    }
    if diff.deg() >= 1 && !factor(k, &diff).iter().any(|(_, e)| *e == 1) {
        return Err(Error::PreconditionUnmet("g^3 - h^2 has no simple irreducible factor".into()));
    }
    if diff.deg() < 1 {
        return Err(Error::PreconditionUnmet("g^3 - h^2 is constant".into()));
    }
    Ok(diff.deg() > m)
}

/// The model `y^2 = x^3 + t^(6 chi) f(1/t)`.
pub fn invert_t_model(k: &FieldCtx, cfg: &CurveConfig) -> Result<CurveConfig> {
    let f2 = cfg.f.reverse(6 * cfg.chi);
    let mut c = CurveConfig::new(k, &f2)?;
    // keep the original chi so that the transform is an involution
    c.chi = cfg.chi;
    Ok(c)
}

/// `(x, y) -> (t^(2 chi) x(1/t), t^(3 chi) y(1/t))` on points of height at most `chi`.
pub fn invert_t_point(chi: usize, x: &Poly, y: &Poly) -> Option<(Poly, Poly)> {
    if x.deg() > 2 * chi as i64 || y.deg() > 3 * chi as i64 {
        return None;
    }
    Some((x.reverse(2 * chi), y.reverse(3 * chi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    #[test]
    fn types() {
        let k = FieldCtx::prime(7).unwrap();
        assert_eq!(classify_type(&k, &Poly::t()).unwrap(), TypeQuintuple([1, 0, 0, 0, 1]));
        let t2 = parse_poly(&k, "t^2").unwrap();
        assert_eq!(classify_type(&k, &t2).unwrap(), TypeQuintuple([0, 1, 0, 1, 0]));
        let s = parse_poly(&k, "t^6 + t + 3").unwrap();
        let ty = classify_type(&k, &s).unwrap();
        if crate::algebra::factor::factor(&k, &s).iter().all(|(_, e)| *e == 1) {
            assert_eq!(ty, TypeQuintuple([6, 0, 0, 0, 0]));
        }
        assert!(matches!(classify_type(&k, &parse_poly(&k, "t^7+1").unwrap()), Err(Error::DegreeTooLarge(7))));
    }

    #[test]
    fn genera_and_bounds() {
        let k = FieldCtx::prime(7).unwrap();
        let c = CurveConfig::new(&k, &parse_poly(&k, "t^3 + 2*t + 1").unwrap()).unwrap();
        assert_eq!(genus_c2(&c.decomp).unwrap(), 1);
        assert_eq!(genus_c3(&c.decomp).unwrap(), 1);
        assert_eq!(davenport_height_bound(&c).unwrap(), int(2));
        let t = CurveConfig::new(&k, &Poly::t()).unwrap();
        assert_eq!(davenport_height_bound(&t).unwrap(), int(0));
        let inv = invert_t_model(&k, &t).unwrap();
        assert_eq!(inv.f, parse_poly(&k, "t^5").unwrap());
    }

    #[test]
    fn davenport_example() {
        let k = FieldCtx::prime(7).unwrap();
        let g = parse_poly(&k, "t^2 + 1").unwrap();
        let h = parse_poly(&k, "t^3").unwrap();
        assert!(check_davenport(&k, &g, &h).unwrap());
        assert!(check_davenport(&k, &parse_poly(&k, "t^2").unwrap(), &h).is_err());
    }
}
