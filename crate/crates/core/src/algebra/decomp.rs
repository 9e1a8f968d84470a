//! The decomposition `f = u * f1 * f2^2 * f3^3 * f4^4 * f5^5`.

use alloc::vec::Vec;

use super::factor::factor;
use super::field::{FieldCtx, Fq};
use super::poly::{product, Poly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SixthPowerFreeDecomp {
    pub unit: Fq,
    /// `parts[i]` is `f_{i+1}`.
    pub parts: [Poly; 5],
    /// Irreducible factors of each part.
    pub factors: [Vec<Poly>; 5],
    pub omegas: [usize; 5],
    pub degrees: [usize; 5],
    /// `d = sum i * d_i`.
    pub d: usize,
}

impl SixthPowerFreeDecomp {
    /// `f_i` for `i` in `1..=5`.
    pub fn f(&self, i: usize) -> &Poly {
        &self.parts[i - 1]
    }

    pub fn deg(&self, i: usize) -> usize {
        self.degrees[i - 1]
    }

    pub fn omega(&self, i: usize) -> usize {
        self.omegas[i - 1]
    }

    pub fn is_squarefree(&self) -> bool {
        self.degrees[1..].iter().all(|&d| d == 0)
    }

    /// `u * prod f_i^i`.
    pub fn reconstruct(&self, k: &FieldCtx) -> Poly {
        let mut r = Poly::constant(self.unit);
        for i in 1..=5 {
            r = r.mul(k, &self.f(i).pow(k, i as u64));
        }
        r
    }
}

pub fn sixth_power_free_decompose(k: &FieldCtx, f: &Poly) -> Result<SixthPowerFreeDecomp> {
    if f.is_zero() {
        return Err(Error::PreconditionUnmet("f must be nonzero".into()));
    }
    let mut factors: [Vec<Poly>; 5] = Default::default();
    for (pi, e) in factor(k, f) {
        if e >= 6 {
            return Err(Error::NotSixthPowerFree);
        }
        factors[e as usize - 1].push(pi);
    }
    let parts: [Poly; 5] = core::array::from_fn(|i| product(k, &factors[i]));
    let degrees: [usize; 5] = core::array::from_fn(|i| parts[i].deg() as usize);
    let omegas: [usize; 5] = core::array::from_fn(|i| factors[i].len());
    let d = (1..=5).map(|i| i * degrees[i - 1]).sum();
    Ok(SixthPowerFreeDecomp { unit: f.lc(), parts, factors, omegas, degrees, d })
}
