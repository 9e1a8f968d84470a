//! Affine Kummer models `X^n = c A B^2` over `k[t]` with `A`, `B` coprime,
//! squarefree and monic (`B = 1` when `n = 2`).
//!
//! The integral closure of `k[t]` has basis `1, X, X^2/B`.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::resfield::RPoly;
use crate::algebra::{factor, FieldCtx, Fq, Poly, ResField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerModel {
    pub n: usize,
    pub c: Fq,
    pub a: Poly,
    pub b: Poly,
    ca: Poly,
    cab: Poly,
}

/// How a place sits over its image in the line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ram {
    Unramified,
    /// Over a root of `A`.
    A,
    /// Over a root of `B`.
    B,
}

/// A place of a Kummer model above the irreducible `pi`.
#[derive(Clone, Debug)]
pub struct LocalPlace {
    pub pi: Poly,
    pub idx: usize,
    pub e: usize,
    /// Residue degree over `k[t]/(pi)`.
    pub f: usize,
    pub ram: Ram,
    /// Integral element that is a unit here and vanishes at the other
    /// places above `pi`; `None` when there is only one place.
    pub eta: Option<Vec<Poly>>,
}

impl LocalPlace {
    pub fn degree(&self) -> usize {
        self.f * self.pi.deg() as usize
    }
}

impl KummerModel {
    pub fn new(k: &FieldCtx, n: usize, c: Fq, a: &Poly, b: &Poly) -> KummerModel {
        let ca = a.scale(k, c);
        let cab = ca.mul(k, b);
        KummerModel { n, c, a: a.clone(), b: b.clone(), ca, cab }
    }

    pub fn zero(&self) -> Vec<Poly> {
        vec![Poly::zero(); self.n]
    }

    pub fn basis(&self, j: usize) -> Vec<Poly> {
        let mut v = self.zero();
        v[j] = Poly::one();
        v
    }

    /// Value of `X^n`.
    pub fn xn(&self, k: &FieldCtx) -> Poly {
        self.cab.mul(k, &self.b)
    }

    pub fn add(&self, k: &FieldCtx, u: &[Poly], v: &[Poly]) -> Vec<Poly> {
        u.iter().zip(v).map(|(x, y)| x.add(k, y)).collect()
    }

    pub fn scale(&self, k: &FieldCtx, u: &[Poly], g: &Poly) -> Vec<Poly> {
        u.iter().map(|x| x.mul(k, g)).collect()
    }

    pub fn mul(&self, k: &FieldCtx, u: &[Poly], v: &[Poly]) -> Vec<Poly> {
        if self.n == 2 {
            let w0 = u[0].mul(k, &v[0]).add(k, &u[1].mul(k, &v[1]).mul(k, &self.ca));
            let w1 = u[0].mul(k, &v[1]).add(k, &u[1].mul(k, &v[0]));
            return vec![w0, w1];
        }
        let m = |a: &Poly, b: &Poly| a.mul(k, b);
        let w0 = m(&u[0], &v[0]).add(k, &m(&self.cab, &m(&u[1], &v[2]).add(k, &m(&u[2], &v[1]))));
        let w1 = m(&u[0], &v[1]).add(k, &m(&u[1], &v[0])).add(k, &m(&self.ca, &m(&u[2], &v[2])));
        let w2 = m(&u[0], &v[2]).add(k, &m(&u[2], &v[0])).add(k, &m(&self.b, &m(&u[1], &v[1])));
        vec![w0, w1, w2]
    }

    pub fn mul_mod(&self, k: &FieldCtx, u: &[Poly], v: &[Poly], m: &Poly) -> Vec<Poly> {
        self.mul(k, u, v).iter().map(|x| x.rem(k, m)).collect()
    }

    pub fn norm(&self, k: &FieldCtx, u: &[Poly]) -> Poly {
        if self.n == 2 {
            return u[0].square(k).sub(k, &u[1].square(k).mul(k, &self.ca));
        }
        let (a, b, c) = (&u[0], &u[1], &u[2]);
        let cab = &self.cab;
        let c2a2b = self.ca.mul(k, cab);
        let t0 = a.pow(k, 3);
        let t1 = b.pow(k, 3).mul(k, cab).mul(k, &self.b);
        let t2 = c.pow(k, 3).mul(k, &c2a2b);
        let t3 = a.mul(k, b).mul(k, c).mul(k, cab).scale(k, k.from_int(3));
        t0.add(k, &t1).add(k, &t2).sub(k, &t3)
    }

    /// `X^i` in the integral basis.
    pub fn x_power(&self, k: &FieldCtx, i: usize) -> Vec<Poly> {
        let x = self.basis(1);
        let mut r = self.basis(0);
        for _ in 0..i {
            r = self.mul(k, &r, &x);
        }
        r
    }

    /// `rho(X)` for a polynomial `rho` over the residue field, lifted.
    fn eval_in_x(&self, k: &FieldCtx, rho: &RPoly) -> Vec<Poly> {
        let mut r = self.zero();
        for (i, ci) in rho.iter().enumerate() {
            r = self.add(k, &r, &self.scale(k, &self.x_power(k, i), ci));
        }
        r
    }

    /// The places above the monic irreducible `pi`, in a fixed order.
    pub fn places_above(&self, k: &FieldCtx, pi: &Poly) -> Vec<LocalPlace> {
        let one = |ram| LocalPlace { pi: pi.clone(), idx: 0, e: self.n, f: 1, ram, eta: None };
        if self.a.rem(k, pi).is_zero() {
            return vec![one(Ram::A)];
        }
        if self.b.rem(k, pi).is_zero() {
            return vec![one(Ram::B)];
        }
        let rf = ResField::new(k, pi);
        let facs = rf.binomial_factors(self.n, &self.xn(k));
        if facs.len() == 1 {
            return vec![LocalPlace { pi: pi.clone(), idx: 0, e: 1, f: self.n, ram: Ram::Unramified, eta: None }];
        }
        let lifts: Vec<Vec<Poly>> = facs.iter().map(|r| self.eval_in_x(k, r)).collect();
        let mut out = Vec::new();
        for (i, rho) in facs.iter().enumerate() {
            let mut eta = self.basis(0);
            for (j, l) in lifts.iter().enumerate() {
                if j != i {
                    eta = self.mul_mod(k, &eta, l, pi);
                }
            }
            out.push(LocalPlace {
                pi: pi.clone(),
                idx: i,
                e: 1,
                f: rho.len() - 1,
                ram: Ram::Unramified,
                eta: Some(eta),
            });
        }
        out
    }

    /// `v_P(omega_j)` at a ramified place.
    pub fn ram_offset(&self, ram: Ram, j: usize) -> i64 {
        match (ram, j) {
            (_, 0) => 0,
            (Ram::A, j) => j as i64,
            (Ram::B, 1) => 2,
            (Ram::B, _) => 1,
            (Ram::Unramified, _) => 0,
        }
    }

    /// Valuation of an integral element; `i64::MAX` for zero.
    pub fn val(&self, k: &FieldCtx, lp: &LocalPlace, u: &[Poly]) -> i64 {
        if u.iter().all(|x| x.is_zero()) {
            return i64::MAX;
        }
        let vp = |x: &Poly| x.valuation(k, &lp.pi) as i64;
        match lp.ram {
            Ram::A | Ram::B => u
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| self.n as i64 * vp(x) + self.ram_offset(lp.ram, j))
                .min()
                .unwrap(),
            Ram::Unramified => match &lp.eta {
                None => u.iter().filter(|x| !x.is_zero()).map(vp).min().unwrap(),
                Some(eta) => {
                    let mut cur: Vec<Poly> = u.to_vec();
                    let mut v = 0;
                    loop {
                        let t = self.mul(k, &cur, eta);
                        let q: Option<Vec<Poly>> = t.iter().map(|x| x.div_exact(k, &lp.pi)).collect();
                        match q {
                            Some(q) => {
                                cur = q;
                                v += 1;
                            }
                            None => return v,
                        }
                    }
                }
            },
        }
    }

    /// Monic irreducible factors of the norm, used to locate zeros.
    pub fn norm_primes(&self, k: &FieldCtx, u: &[Poly]) -> Vec<Poly> {
        let nm = self.norm(k, u);
        if nm.deg() < 1 {
            return Vec::new();
        }
        factor(k, &nm).into_iter().map(|(p, _)| p).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_products_cube() {
        let k = FieldCtx::prime(7).unwrap();
        let a = Poly::from_ints(&k, &[1, 1]);
        let b = Poly::from_ints(&k, &[2, 1]);
        let m = KummerModel::new(&k, 3, Fq(3), &a, &b);
        let x3 = m.x_power(&k, 3);
        assert_eq!(x3[0], m.xn(&k));
        let x2 = m.x_power(&k, 2);
        assert_eq!(x2, vec![Poly::zero(), Poly::zero(), b.clone()]);
        // norm of X is c A B^2
        assert_eq!(m.norm(&k, &m.basis(1)), m.xn(&k));
    }

    #[test]
    fn split_counts_match_points() {
        let k = FieldCtx::prime(7).unwrap();
        let a = Poly::from_ints(&k, &[1, 0, 1]);
        let m = KummerModel::new(&k, 3, Fq(6), &a, &Poly::one());
        for t0 in k.elements() {
            let pi = Poly::linear(&k, t0);
            let places = m.places_above(&k, &pi);
            let ef: usize = places.iter().map(|p| p.e * p.f).sum();
            assert_eq!(ef, 3);
            let rhs = k.mul(Fq(6), a.eval(&k, t0));
            let pts = k.elements().filter(|&x| k.mul(k.mul(x, x), x) == rhs).count();
            let rational = places.iter().filter(|p| p.f == 1).count();
            assert_eq!(rational, pts);
        }
    }
}
