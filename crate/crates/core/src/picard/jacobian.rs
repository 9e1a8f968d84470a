//! Degree-zero divisor classes in reduced form and their group law.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use rand_chacha::rand_core::RngCore;
use rand_chacha::ChaCha8Rng;

use crate::algebra::factor::{is_irreducible, random_poly};
use crate::algebra::{Embedding, FieldCtx, Fq, Poly};
use crate::auxcurves::{AuxCurve, Divisor, Place};
use crate::error::{Error, Result};

/// Largest Sylow subgroup that is enumerated explicitly.
pub const SYLOW_LIMIT: u128 = 1 << 15;

/// Largest field over which points are counted.
pub const COUNT_LIMIT: u128 = 1 << 23;

/// The class of `eff - r * P0` with `eff` effective of degree `r` and `r`
/// minimal.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RedClass {
    pub eff: Divisor,
    pub r: i64,
}

impl RedClass {
    pub fn is_zero(&self) -> bool {
        self.r == 0
    }
}

pub struct Jacobian<'a> {
    pub k: &'a FieldCtx,
    pub curve: &'a AuxCurve,
    pub base: Place,
    memo: RefCell<BTreeMap<Divisor, RedClass>>,
    order: RefCell<Option<u128>>,
}

/// `L(T)` from the point counts over `GF(q^i)`, `i <= g`.
pub fn l_polynomial(k: &FieldCtx, c: &AuxCurve) -> Result<Vec<i128>> {
    let g = c.genus;
    if g == 0 {
        return Ok(vec![1]);
    }
    let q = k.q() as i128;
    let top = (k.q() as u128).checked_pow(g as u32).unwrap_or(u128::MAX);
    if top > COUNT_LIMIT {
        return Err(Error::SearchTooLarge { estimate: top.min(u64::MAX as u128) as u64 });
    }
    let mut s = vec![0i128; g + 1];
    for i in 1..=g {
        let n_i = if i == 1 {
            c.count_points(k)
        } else {
            let big = FieldCtx::new(k.p(), k.m() * i as u32)?;
            let emb = Embedding::new(k, &big)?;
            c.base_change(k, &big, &emb).count_points(&big)
        };
        s[i] = q.pow(i as u32) + 1 - n_i as i128;
    }
    let mut a = vec![0i128; 2 * g + 1];
    a[0] = 1;
    for j in 1..=g {
        let acc: i128 = (1..=j).map(|i| s[i] * a[j - i]).sum();
        debug_assert_eq!(acc % j as i128, 0);
        a[j] = -acc / j as i128;
    }
    for j in 0..g {
        a[2 * g - j] = q.pow((g - j) as u32) * a[j];
    }
    Ok(a)
}

impl<'a> Jacobian<'a> {
    pub fn new(k: &'a FieldCtx, curve: &'a AuxCurve) -> Result<Jacobian<'a>> {
        let base = curve.base_place(k)?;
        Ok(Jacobian { k, curve, base, memo: RefCell::new(BTreeMap::new()), order: RefCell::new(None) })
    }

    pub fn genus(&self) -> usize {
        self.curve.genus
    }

    pub fn zero(&self) -> RedClass {
        RedClass::default()
    }

    /// The divisor `eff - r * P0`.
    pub fn rep(&self, x: &RedClass) -> Divisor {
        x.eff.sub(&Divisor::single(&self.base, x.r))
    }

    /// Class of `D - deg(D) * P0`.
    pub fn reduce(&self, d: &Divisor) -> RedClass {
        let d0 = d.sub(&Divisor::single(&self.base, d.deg()));
        if let Some(r) = self.memo.borrow().get(&d0) {
            return r.clone();
        }
        let (k, c) = (self.k, self.curve);
        let shifted = |r: i64| d0.add(&Divisor::single(&self.base, r));
        let g = c.genus as i64;
        let (mut lo, mut hi) = (0i64, g);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if c.l(k, &shifted(mid)) >= 1 {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let dr = shifted(lo);
        let h = c.riemann_roch(k, &dr).into_iter().next().expect("Riemann–Roch guarantees a section");
        let eff = dr.add(&c.divisor_of_function(k, &h).expect("nonzero section"));
        debug_assert!(eff.is_effective() && eff.deg() == lo);
        let out = RedClass { eff, r: lo };
        self.memo.borrow_mut().insert(d0, out.clone());
        out
    }

    pub fn add(&self, a: &RedClass, b: &RedClass) -> RedClass {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        self.reduce(&a.eff.add(&b.eff))
    }

    pub fn neg(&self, a: &RedClass) -> RedClass {
        if a.is_zero() {
            return a.clone();
        }
        self.reduce(&a.eff.neg())
    }

    pub fn sub(&self, a: &RedClass, b: &RedClass) -> RedClass {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, m: i128, a: &RedClass) -> RedClass {
        let mut base = if m < 0 { self.neg(a) } else { a.clone() };
        let mut e = m.unsigned_abs();
        let mut acc = self.zero();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    /// `#J(k)`.
    pub fn order(&self) -> Result<u128> {
        if let Some(n) = *self.order.borrow() {
            return Ok(n);
        }
        let lp = l_polynomial(self.k, self.curve)?;
        let n: i128 = lp.iter().sum();
        let n = n as u128;
        *self.order.borrow_mut() = Some(n);
        Ok(n)
    }

    fn random_place(&self, rng: &mut ChaCha8Rng, max_deg: usize) -> Place {
        let (k, c) = (self.k, self.curve);
        loop {
            if rng.next_u32() % 8 == 0 {
                let inf = c.infinite_places(k);
                let p = &inf[rng.next_u32() as usize % inf.len()];
                if p.deg <= max_deg {
                    return p.clone();
                }
                continue;
            }
            let d = 1 + rng.next_u32() as usize % max_deg;
            let pi = random_poly(k, rng, d).add(k, &Poly::monomial(Fq::ONE, d));
            if !is_irreducible(k, &pi) {
                continue;
            }
            let ps: Vec<Place> = c.places_above(k, &pi).into_iter().filter(|p| p.deg <= max_deg).collect();
            if !ps.is_empty() {
                return ps[rng.next_u32() as usize % ps.len()].clone();
            }
        }
    }

    /// Class of a random effective divisor of degree `g`.
    pub fn random_class(&self, rng: &mut ChaCha8Rng) -> RedClass {
        let g = self.genus().max(1);
        let mut d = Divisor::zero();
        let mut left = g;
        while left > 0 {
            let p = self.random_place(rng, left);
            left -= p.deg;
            d.add_at(&p, 1);
        }
        self.reduce(&d)
    }
}

/// The `n`-primary part of `J(k)` with its `n`-torsion.
pub struct Sylow {
    pub n: u64,
    pub elems: Vec<RedClass>,
    pub torsion: Vec<RedClass>,
    /// `n^a` and `m` with `#J(k) = n^a m`, `gcd(n, m) = 1`.
    pub part: u128,
    pub cofactor: u128,
    /// `n * s -> s` for `s` in the subgroup.
    times_n: BTreeMap<RedClass, RedClass>,
}

fn split_order(order: u128, n: u64) -> (u128, u128) {
    let mut part = 1u128;
    let mut m = order;
    while m % n as u128 == 0 {
        m /= n as u128;
        part *= n as u128;
    }
    (part, m)
}

impl Sylow {
    pub fn compute(jac: &Jacobian, n: u64, rng: &mut ChaCha8Rng) -> Result<Sylow> {
        let order = jac.order()?;
        let (part, cofactor) = split_order(order, n);
        if part > SYLOW_LIMIT {
            return Err(Error::SearchTooLarge { estimate: part as u64 });
        }
        let mut set: BTreeSet<RedClass> = BTreeSet::new();
        set.insert(jac.zero());
        let mut tries = 0u32;
        while (set.len() as u128) < part {
            tries += 1;
            if tries > 10_000 {
                return Err(Error::SearchTooLarge { estimate: part as u64 });
            }
            let s = jac.mul(cofactor as i128, &jac.random_class(rng));
            if set.contains(&s) {
                continue;
            }
            let base: Vec<RedClass> = set.iter().cloned().collect();
            let mut cur = s.clone();
            while !set.contains(&cur) {
                for h in &base {
                    set.insert(jac.add(h, &cur));
                }
                cur = jac.add(&cur, &s);
            }
        }
        let elems: Vec<RedClass> = set.into_iter().collect();
        let mut times_n = BTreeMap::new();
        let mut torsion = Vec::new();
        for e in &elems {
            let m = jac.mul(n as i128, e);
            if m.is_zero() {
                torsion.push(e.clone());
            }
            times_n.entry(m).or_insert_with(|| e.clone());
        }
        Ok(Sylow { n, elems, torsion, part, cofactor, times_n })
    }

    /// Some `X` with `n X = b`, if one exists.
    pub fn divide(&self, jac: &Jacobian, b: &RedClass) -> Option<RedClass> {
        let n = self.n as i128;
        let m = self.cofactor as i128;
        let pa = self.part as i128;
        // u m + v n^a = 1
        let (u, v) = bezout(m, pa);
        let b_s = jac.mul(u * m, b);
        let b_m = jac.mul(v * pa, b);
        let x_s = self.times_n.get(&b_s)?.clone();
        let ninv = if m == 1 { 0 } else { modinv(n.rem_euclid(m), m) };
        let x_m = jac.mul(ninv, &b_m);
        Some(jac.add(&x_s, &x_m))
    }
}

fn bezout(a: i128, b: i128) -> (i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    (s0, t0)
}

fn modinv(a: i128, m: i128) -> i128 {
    let (s, _) = bezout(a, m);
    s.rem_euclid(m)
}
