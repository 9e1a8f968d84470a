use alloc::vec::Vec;

use crate::algebra::{FieldCtx, Fq, Poly};
use crate::error::Result;
use crate::model::{davenport_height_bound, CurveConfig};
use crate::mordell::{canonical_height_integral, degree_caps, search, IntegralPoint, SearchMode};
use crate::rat::{rat, Rat};

/// A search hit annotated with its heights.  See `SearchHit` for the
/// meaning of `x`, `y` and `c` in the partial modes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumPoint {
    pub mode: SearchMode,
    pub x: Poly,
    pub y: Poly,
    pub c: Fq,
    pub count: usize,
    pub naive: Rat,
    pub canonical: Rat,
}

impl StratumPoint {
    /// The polynomial coordinate that is rational over the base field.
    pub fn rational_coordinate(&self) -> &Poly {
        match self.mode {
            SearchMode::YRational => &self.y,
            _ => &self.x,
        }
    }

    /// The integral points represented, in `Rational` mode.
    pub fn points(&self, k: &FieldCtx) -> Vec<IntegralPoint> {
        let mut v = alloc::vec![IntegralPoint { x: self.x.clone(), y: self.y.clone() }];
        if self.mode == SearchMode::Rational && !self.y.is_zero() {
            v.push(IntegralPoint { x: self.x.clone(), y: self.y.neg(k) });
        }
        v
    }
}

/// Largest naive height of an integral point with canonical height at
/// most `can_max`.
pub fn naive_cap(cfg: &CurveConfig, can_max: Rat) -> Rat {
    can_max + rat(cfg.di(2) as i64, 3) + rat(cfg.di(3) as i64, 2) + rat(2 * cfg.di(4) as i64, 3)
}

/// All hits of the given mode whose canonical height satisfies `keep`,
/// searching up to canonical height `can_max`.
pub fn points_with_height(
    k: &FieldCtx,
    cfg: &CurveConfig,
    mode: SearchMode,
    can_max: Rat,
    keep: impl Fn(Rat) -> bool,
) -> Result<Vec<StratumPoint>> {
    let (dx, dy) = degree_caps(naive_cap(cfg, can_max));
    let hits = search(k, &cfg.f, mode, dx, dy)?;
    let mut out = Vec::new();
    for h in hits {
        // in YRational mode x = alpha s with alpha^3 = c, so gcds with s agree
        let canonical = canonical_height_integral(k, &h.x, h.naive, &cfg.decomp);
        if canonical <= can_max && keep(canonical) {
            out.push(StratumPoint { mode, x: h.x, y: h.y, c: h.c, count: h.count, naive: h.naive, canonical });
        }
    }
    Ok(out)
}

/// All integral points up to the naive height bound `d - 1`.
pub fn integral_stratum(k: &FieldCtx, cfg: &CurveConfig) -> Result<Vec<StratumPoint>> {
    let (dx, dy) = degree_caps(davenport_height_bound(cfg)?);
    let hits = search(k, &cfg.f, SearchMode::Rational, dx, dy)?;
    Ok(hits
        .into_iter()
        .map(|h| {
            let canonical = canonical_height_integral(k, &h.x, h.naive, &cfg.decomp);
            StratumPoint { mode: SearchMode::Rational, x: h.x, y: h.y, c: h.c, count: h.count, naive: h.naive, canonical }
        })
        .collect())
}

/// Number of points of `E(k̄(t))` represented by the hits.
pub fn weighted_count(pts: &[StratumPoint]) -> usize {
    pts.iter().map(|p| p.count).sum()
}

/// Points with canonical height exactly `h`.
pub fn count_at(k: &FieldCtx, cfg: &CurveConfig, mode: SearchMode, h: Rat) -> Result<usize> {
    Ok(weighted_count(&points_with_height(k, cfg, mode, h, |c| c == h)?))
}
