//! Riemann–Roch spaces as kernels of linear conditions over `k`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::kummer::{LocalPlace, Ram};
use super::{AuxCurve, Divisor, FunctionRep};
use crate::algebra::linalg::kernel;
use crate::algebra::{FieldCtx, Fq, Poly};

enum Cond {
    /// Coordinate `j` divisible by `modulus`.
    Coord(usize, Poly),
    /// `g * eta_t` divisible by `modulus` in every coordinate.
    Unram(Poly, Vec<Vec<Poly>>),
    /// The same at an infinite place, in the model at infinity.
    Inf(Poly, Vec<Vec<Poly>>),
}

fn coeff_vec(p: &Poly, len: usize) -> Vec<Fq> {
    (0..len).map(|i| p.coeff(i)).collect()
}

fn eta_power(c: &AuxCurve, k: &FieldCtx, inf: bool, lp: &LocalPlace, t: usize, modulus: &Poly) -> Vec<Vec<Poly>> {
    let m = if inf { &c.inf_model } else { &c.model };
    let mut et = m.basis(0);
    if let Some(eta) = &lp.eta {
        for _ in 0..t {
            et = m.mul_mod(k, &et, eta, modulus);
        }
    }
    (0..c.n).map(|j| m.mul_mod(k, &m.basis(j), &et, modulus)).collect()
}

pub(super) fn riemann_roch(c: &AuxCurve, k: &FieldCtx, d: &Divisor) -> Vec<FunctionRep> {
    if d.deg() < 0 {
        return Vec::new();
    }
    let n = c.n as i64;
    let mut by_pi: BTreeMap<Poly, ()> = BTreeMap::new();
    for p in d.coeffs.keys().filter(|p| !p.inf) {
        by_pi.insert(p.pi.clone(), ());
    }
    let mut delta = Poly::one();
    let mut conds: Vec<Cond> = Vec::new();
    for pi in by_pi.keys() {
        let locals = c.local_list(k, false, pi);
        let places: Vec<_> = locals.iter().map(|lp| AuxCurve::to_place(false, lp)).collect();
        let m = places.iter().map(|p| (d.get(p) + p.e as i64 - 1).div_euclid(p.e as i64)).max().unwrap().max(0);
        delta = delta.mul(k, &pi.pow(k, m as u64));
        for (lp, p) in locals.iter().zip(&places) {
            let t = p.e as i64 * m - d.get(p);
            if t <= 0 {
                continue;
            }
            match lp.ram {
                Ram::A | Ram::B => {
                    for j in 0..c.n {
                        let mj = (t - c.model.ram_offset(lp.ram, j) + n - 1).div_euclid(n);
                        if mj > 0 {
                            conds.push(Cond::Coord(j, pi.pow(k, mj as u64)));
                        }
                    }
                }
                Ram::Unramified => {
                    let md = pi.pow(k, t as u64);
                    let et = eta_power(c, k, false, lp, t as usize, &md);
                    conds.push(Cond::Unram(md, et));
                }
            }
        }
    }
    let ddelta = delta.deg();
    let inf_locals = c.local_list(k, true, &Poly::t());
    let inf_places: Vec<_> = inf_locals.iter().map(|lp| AuxCurve::to_place(true, lp)).collect();
    let nq: Vec<i64> = inf_places.iter().map(|p| d.get(p) + p.e as i64 * ddelta).collect();
    let db = c.model.b.deg();
    let nw = [0, c.dtot, 2 * c.dtot - n * db];
    let mut caps = vec![-1i64; c.n];
    if c.ramified_at_infinity() {
        for j in 0..c.n {
            caps[j] = (nq[0] - nw[j]).div_euclid(n);
        }
    } else {
        let nmax = *nq.iter().max().unwrap();
        for j in 0..c.n {
            caps[j] = nmax - nw[j] / n;
        }
        for (i, lp) in inf_locals.iter().enumerate() {
            let t = nmax - nq[i];
            if t > 0 {
                let md = Poly::monomial(Fq::ONE, t as usize);
                let mut et = eta_power(c, k, true, lp, t as usize, &md);
                if c.n == 3 {
                    let kappa = k.inv(c.lc_rev_b);
                    et[2] = et[2].iter().map(|x| x.scale(k, kappa)).collect();
                }
                conds.push(Cond::Inf(md, et));
            }
        }
    }
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    for (j, &cap) in caps.iter().enumerate() {
        for i in 0..=cap {
            unknowns.push((j, i as usize));
        }
    }
    if unknowns.is_empty() {
        return Vec::new();
    }
    let mut cols: Vec<Vec<Fq>> = Vec::with_capacity(unknowns.len());
    for &(j, i) in &unknowns {
        let mut col = Vec::new();
        for cd in &conds {
            match cd {
                Cond::Coord(jj, md) => {
                    let len = md.deg() as usize;
                    if *jj == j {
                        col.extend(coeff_vec(&Poly::monomial(Fq::ONE, i).rem(k, md), len));
                    } else {
                        col.extend(vec![Fq::ZERO; len]);
                    }
                }
                Cond::Unram(md, et) => {
                    let len = md.deg() as usize;
                    for x in &et[j] {
                        col.extend(coeff_vec(&x.shift(i).rem(k, md), len));
                    }
                }
                Cond::Inf(md, et) => {
                    let len = md.deg() as usize;
                    let sh = (caps[j] as usize) - i;
                    for x in &et[j] {
                        col.extend(coeff_vec(&x.shift(sh).rem(k, md), len));
                    }
                }
            }
        }
        cols.push(col);
    }
    let nrows = cols[0].len();
    let rows: Vec<Vec<Fq>> = (0..nrows).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    let ker = kernel(k, &rows, unknowns.len());
    ker.into_iter()
        .map(|v| {
            let mut co: Vec<Vec<Fq>> = (0..c.n).map(|j| vec![Fq::ZERO; (caps[j].max(-1) + 1) as usize]).collect();
            for (x, &(j, i)) in v.iter().zip(&unknowns) {
                co[j][i] = *x;
            }
            FunctionRep::new(k, co.into_iter().map(Poly::from_coeffs).collect(), delta.clone())
        })
        .collect()
}
