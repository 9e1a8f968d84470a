//! Residue fields `k[t]/(pi)` and small polynomials over them.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::factor::random_poly;
use super::field::FieldCtx;
use super::poly::Poly;
use crate::error::{Error, Result};

/// The residue field of an irreducible `pi`; elements are reduced polynomials.
pub struct ResField<'a> {
    pub k: &'a FieldCtx,
    pub pi: Poly,
}

/// Polynomial over a residue field, coefficients low to high.
pub type RPoly = Vec<Poly>;

impl<'a> ResField<'a> {
    pub fn new(k: &'a FieldCtx, pi: &Poly) -> ResField<'a> {
        ResField { k, pi: pi.monic(k) }
    }

    /// Degree of the residue field over `k`.
    pub fn degree(&self) -> usize {
        self.pi.deg() as usize
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        a.rem(self.k, &self.pi)
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(self.k, b)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(self.k, b)
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        a.neg(self.k)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mulmod(self.k, b, &self.pi)
    }

    pub fn inv(&self, a: &Poly) -> Poly {
        a.inv_mod(self.k, &self.pi).expect("inverse of zero in residue field")
    }

    pub fn pow(&self, a: &Poly, e: u128) -> Poly {
        a.powmod(self.k, e, &self.pi)
    }

    /// `q mod n` raised to the residue degree, i.e. `#F mod n`.
    pub fn size_mod(&self, n: u64) -> u64 {
        let mut r = 1u64;
        for _ in 0..self.degree() {
            r = r * (self.k.q() % n) % n;
        }
        r
    }

    /// `a^((Q-1)/n)` for `Q = #F`, assuming `n | Q - 1`.
    fn power_char(&self, a: &Poly, n: u64) -> Poly {
        let q = self.k.q() as u128;
        let s = if (q - 1) % n as u128 == 0 { 1 } else { 2 };
        let qs = if s == 1 { q } else { q * q };
        let r = self.degree();
        assert!(r % s == 0, "n does not divide the residue field order minus one");
        let mut t = self.reduce(a);
        let mut nm = t.clone();
        for _ in 1..r / s {
            t = self.pow(&t, qs);
            nm = self.mul(&nm, &t);
        }
        self.pow(&nm, (qs - 1) / n as u128)
    }

    /// Number of `n`-th roots of a nonzero element (`n` is 2 or 3).
    pub fn count_nth_roots(&self, a: &Poly, n: u64) -> Result<usize> {
        let a = self.reduce(a);
        if a.is_zero() {
            return Err(Error::NotCoprime);
        }
        if self.size_mod(n) != 1 {
            return Ok(1);
        }
        Ok(if self.power_char(&a, n).is_one() { n as usize } else { 0 })
    }

    fn rp_trim(a: &mut RPoly) {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
    }

    fn rp_sub(&self, a: &RPoly, b: &RPoly) -> RPoly {
        let n = a.len().max(b.len());
        let z = Poly::zero();
        let mut r: RPoly = (0..n).map(|i| self.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
        Self::rp_trim(&mut r);
        r
    }

    fn rp_mul(&self, a: &RPoly, b: &RPoly) -> RPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![Poly::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                r[i + j] = self.add(&r[i + j], &self.mul(x, y));
            }
        }
        Self::rp_trim(&mut r);
        r
    }

    fn rp_divrem(&self, a: &RPoly, b: &RPoly) -> (RPoly, RPoly) {
        let mut r = a.clone();
        Self::rp_trim(&mut r);
        let db = b.len() - 1;
        let inv = self.inv(b.last().unwrap());
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![Poly::zero(); r.len() - db];
        while r.len() > db {
            let i = r.len() - 1;
            let f = self.mul(&r[i], &inv);
            for (j, bj) in b.iter().enumerate() {
                r[i - db + j] = self.sub(&r[i - db + j], &self.mul(&f, bj));
            }
            q[i - db] = f;
            Self::rp_trim(&mut r);
        }
        Self::rp_trim(&mut q);
        (q, r)
    }

    fn rp_monic(&self, a: &RPoly) -> RPoly {
        match a.last() {
            None => Vec::new(),
            Some(l) => {
                let inv = self.inv(l);
                a.iter().map(|c| self.mul(c, &inv)).collect()
            }
        }
    }

    fn rp_gcd(&self, a: &RPoly, b: &RPoly) -> RPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        Self::rp_trim(&mut a);
        Self::rp_trim(&mut b);
        while !b.is_empty() {
            let (_, r) = self.rp_divrem(&a, &b);
            a = b;
            b = r;
        }
        self.rp_monic(&a)
    }

    fn rp_powmod(&self, a: &RPoly, mut e: u128, m: &RPoly) -> RPoly {
        let mut r = self.rp_divrem(&vec![Poly::one()], m).1;
        let mut b = self.rp_divrem(a, m).1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.rp_divrem(&self.rp_mul(&r, &b), m).1;
            }
            e >>= 1;
            if e > 0 {
                b = self.rp_divrem(&self.rp_mul(&b, &b), m).1;
            }
        }
        r
    }

    /// `x^(#F) mod m` via repeated `q`-th powers.
    fn rp_frob_full(&self, x: &RPoly, m: &RPoly) -> RPoly {
        let mut t = x.clone();
        for _ in 0..self.degree() {
            t = self.rp_powmod(&t, self.k.q() as u128, m);
        }
        t
    }

    /// Roots of a monic squarefree polynomial over the residue field.
    pub fn roots(&self, f: &RPoly) -> Vec<Poly> {
        let f = self.rp_monic(f);
        if f.len() < 2 {
            return Vec::new();
        }
        let x: RPoly = vec![Poly::zero(), Poly::one()];
        let xq = self.rp_frob_full(&x, &f);
        let g = self.rp_gcd(&self.rp_sub(&xq, &x), &f);
        let mut out = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0x0005_1f17);
        self.split_linear(&g, &mut rng, &mut out);
        out.sort();
        out
    }

    fn split_linear(&self, g: &RPoly, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
        if g.len() < 2 {
            return;
        }
        if g.len() == 2 {
            out.push(self.neg(&g[0]));
            return;
        }
        let q = self.k.q() as u128;
        loop {
            let delta = self.reduce(&random_poly(self.k, rng, self.degree()));
            let x: RPoly = vec![delta, Poly::one()];
            // (x)^((Q-1)/2) through the norm to GF(q)
            let mut t = self.rp_divrem(&x, g).1;
            let mut nm = t.clone();
            for _ in 1..self.degree() {
                t = self.rp_powmod(&t, q, g);
                nm = self.rp_divrem(&self.rp_mul(&nm, &t), g).1;
            }
            let h = self.rp_powmod(&nm, (q - 1) / 2, g);
            let h1 = self.rp_sub(&h, &vec![Poly::one()]);
            let d = self.rp_gcd(&h1, g);
            if d.len() > 1 && d.len() < g.len() {
                let (e, _) = self.rp_divrem(g, &d);
                self.split_linear(&d, rng, out);
                self.split_linear(&self.rp_monic(&e), rng, out);
                return;
            }
        }
    }

    /// Monic irreducible factors of `T^n - a` (`n` is 2 or 3, `a` nonzero),
    /// sorted by degree and then coefficients.
    pub fn binomial_factors(&self, n: usize, a: &Poly) -> Vec<RPoly> {
        let a = self.reduce(a);
        let mut f: RPoly = vec![Poly::zero(); n + 1];
        f[0] = self.neg(&a);
        f[n] = Poly::one();
        let rts = self.roots(&f);
        let mut out: Vec<RPoly> = Vec::new();
        if rts.is_empty() {
            out.push(f);
        } else if rts.len() == n {
            for r in rts {
                out.push(vec![self.neg(&r), Poly::one()]);
            }
        } else {
            // n = 3 with a single root r: T^3 - a = (T - r)(T^2 + rT + r^2)
            let r = &rts[0];
            out.push(vec![self.neg(r), Poly::one()]);
            out.push(vec![self.mul(r, r), r.clone(), Poly::one()]);
        }
        out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.iter().rev().cmp(y.iter().rev())));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Fq;

    #[test]
    fn residue_counts_gf7() {
        let k = FieldCtx::prime(7).unwrap();
        let pi = Poly::linear(&k, Fq(3));
        let rf = ResField::new(&k, &pi);
        assert_eq!(rf.count_nth_roots(&Poly::t(), 2).unwrap(), 0);
        assert_eq!(rf.count_nth_roots(&Poly::one(), 2).unwrap(), 2);
        assert!(rf.count_nth_roots(&pi, 2).is_err());
    }

    #[test]
    fn quadratic_residue_field_roots() {
        let k = FieldCtx::prime(5).unwrap();
        let pi = Poly::from_ints(&k, &[2, 0, 1]);
        let rf = ResField::new(&k, &pi);
        // 2 is a nonsquare mod 5 but a square in GF(25)
        let r = rf.roots(&vec![Poly::from_ints(&k, &[-2]), Poly::zero(), Poly::one()]);
        assert_eq!(r.len(), 2);
        for x in r {
            assert_eq!(rf.mul(&x, &x), Poly::from_ints(&k, &[2]));
        }
    }
}
