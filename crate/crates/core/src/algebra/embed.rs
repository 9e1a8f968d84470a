//! Embeddings `GF(p^m) -> GF(p^M)` for `m | M`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::factor::roots;
use super::field::{FieldCtx, Fq};
use super::poly::Poly;
use crate::error::{Error, Result};

pub struct Embedding {
    powers: Vec<Fq>,
    inverse: BTreeMap<Fq, Fq>,
}

impl Embedding {
    /// The embedding sending the generator of `small` to the least root of
    /// its modulus in `big`.
    pub fn new(small: &FieldCtx, big: &FieldCtx) -> Result<Embedding> {
        if small.p() != big.p() || big.m() % small.m() != 0 {
            return Err(Error::InvalidField("no embedding between these fields".into()));
        }
        if small.q() > 1 << 22 {
            return Err(Error::InvalidField("subfield too large for an embedding table".into()));
        }
        let m = small.m() as usize;
        let root = if m == 1 {
            Fq::ONE
        } else {
            let modp = Poly::from_coeffs(small.modulus().iter().map(|&c| Fq(c)).collect());
            *roots(big, &modp).first().ok_or_else(|| Error::InvalidField("modulus has no root".into()))?
        };
        let mut powers = Vec::with_capacity(m);
        let mut cur = Fq::ONE;
        for _ in 0..m {
            powers.push(cur);
            cur = big.mul(cur, root);
        }
        let mut e = Embedding { powers, inverse: BTreeMap::new() };
        let mut inv = BTreeMap::new();
        for a in small.elements() {
            inv.insert(e.apply_raw(small, big, a), a);
        }
        e.inverse = inv;
        Ok(e)
    }

    fn apply_raw(&self, small: &FieldCtx, big: &FieldCtx, a: Fq) -> Fq {
        if small.m() == 1 {
            return a;
        }
        let mut r = Fq::ZERO;
        for (d, &w) in small.digits(a).iter().zip(&self.powers) {
            r = big.add(r, big.mul(Fq(*d), w));
        }
        r
    }

    pub fn apply(&self, small: &FieldCtx, big: &FieldCtx, a: Fq) -> Fq {
        self.apply_raw(small, big, a)
    }

    pub fn apply_poly(&self, small: &FieldCtx, big: &FieldCtx, f: &Poly) -> Poly {
        f.map(|c| self.apply_raw(small, big, c))
    }

    /// Preimage of an element of `big`, when it lies in the image.
    pub fn restrict(&self, a: Fq) -> Option<Fq> {
        self.inverse.get(&a).copied()
    }

    pub fn restrict_poly(&self, f: &Poly) -> Option<Poly> {
        let c: Option<Vec<Fq>> = f.coeffs().iter().map(|&a| self.restrict(a)).collect();
        Some(Poly::from_coeffs(c?))
    }
}
