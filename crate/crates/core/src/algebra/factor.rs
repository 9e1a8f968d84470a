//! Factorization over `GF(q)`: squarefree, distinct-degree and
//! Cantor–Zassenhaus equal-degree splitting with a seeded generator.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{FieldCtx, Fq};
use super::poly::Poly;

const SEED: u64 = 0x00de_5ce1_7f00;

pub(crate) fn random_elem(k: &FieldCtx, rng: &mut ChaCha8Rng) -> Fq {
    Fq(rng.next_u64() % k.q())
}

pub(crate) fn random_poly(k: &FieldCtx, rng: &mut ChaCha8Rng, n: usize) -> Poly {
    Poly::from_coeffs((0..n).map(|_| random_elem(k, rng)).collect())
}

/// `p`-th root of a polynomial whose derivative vanishes.
fn pth_root(k: &FieldCtx, f: &Poly) -> Poly {
    let p = k.p() as usize;
    let e = (k.q() / k.p()) as u128;
    let mut c = Vec::new();
    let mut i = 0;
    while i < f.coeffs().len() {
        c.push(k.pow(f.coeff(i), e));
        i += p;
    }
    Poly::from_coeffs(c)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, i)` with the
/// `g` pairwise coprime and `f = prod g^i`.
pub fn squarefree(k: &FieldCtx, f: &Poly) -> Vec<(Poly, u32)> {
    let f = f.monic(k);
    let mut out: Vec<(Poly, u32)> = Vec::new();
    if f.deg() < 1 {
        return out;
    }
    let d = f.derivative(k);
    if d.is_zero() {
        for (g, j) in squarefree(k, &pth_root(k, &f)) {
            out.push((g, j * k.p() as u32));
        }
        return out;
    }
    let mut c = f.gcd(k, &d);
    let mut w = f.quo(k, &c);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(k, &c);
        let fac = w.quo(k, &y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.quo(k, &w);
        i += 1;
    }
    if !c.is_one() {
        for (g, j) in squarefree(k, &pth_root(k, &c)) {
            out.push((g, j * k.p() as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree(k: &FieldCtx, f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut fs = f.monic(k);
    let mut h = Poly::t().rem(k, &fs);
    let mut i = 1usize;
    while fs.deg() >= 2 * i as i64 {
        h = h.powmod(k, k.q() as u128, &fs);
        let g = h.sub(k, &Poly::t()).gcd(k, &fs);
        if !g.is_one() {
            fs = fs.quo(k, &g);
            h = h.rem(k, &fs);
            out.push((g, i));
        }
        i += 1;
    }
    if fs.deg() >= 1 {
        let d = fs.deg() as usize;
        out.push((fs, d));
    }
    out
}

/// `x^((q^r - 1)/2) mod m`, computed through the norm to `GF(q)`.
fn half_power(k: &FieldCtx, x: &Poly, r: usize, m: &Poly) -> Poly {
    let mut t = x.rem(k, m);
    let mut n = t.clone();
    for _ in 1..r {
        t = t.powmod(k, k.q() as u128, m);
        n = n.mulmod(k, &t, m);
    }
    n.powmod(k, ((k.q() - 1) / 2) as u128, m)
}

/// Split a monic squarefree product of degree-`r` irreducibles.
pub fn equal_degree(k: &FieldCtx, f: &Poly, r: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.deg() as usize;
    if n == r {
        return vec![f.clone()];
    }
    loop {
        let a = random_poly(k, rng, n);
        if a.deg() < 1 {
            continue;
        }
        let b = half_power(k, &a, r, f).sub(k, &Poly::one());
        let g = b.gcd(k, f);
        if g.deg() > 0 && g.deg() < f.deg() {
            let h = f.quo(k, &g);
            let mut out = equal_degree(k, &g, r, rng);
            out.extend(equal_degree(k, &h, r, rng));
            return out;
        }
    }
}

/// Full factorization: monic irreducibles with multiplicities, sorted by
/// degree and then coefficients from the top down.
pub fn factor(k: &FieldCtx, f: &Poly) -> Vec<(Poly, u32)> {
    assert!(!f.is_zero(), "factor of zero polynomial");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut acc: BTreeMap<Poly, u32> = BTreeMap::new();
    for (g, i) in squarefree(k, f) {
        for (h, r) in distinct_degree(k, &g) {
            for pi in equal_degree(k, &h, r, &mut rng) {
                *acc.entry(pi).or_insert(0) += i;
            }
        }
    }
    acc.into_iter().collect()
}

/// Distinct monic irreducible factors.
pub fn irreducible_factors(k: &FieldCtx, f: &Poly) -> Vec<Poly> {
    factor(k, f).into_iter().map(|(p, _)| p).collect()
}

pub fn is_irreducible(k: &FieldCtx, f: &Poly) -> bool {
    if f.deg() < 1 {
        return false;
    }
    let fm = f.monic(k);
    let n = fm.deg() as usize;
    if n == 1 {
        return true;
    }
    let frob = |h: &Poly, times: usize| {
        let mut h = h.clone();
        for _ in 0..times {
            h = h.powmod(k, k.q() as u128, &fm);
        }
        h
    };
    let x = Poly::t().rem(k, &fm);
    if frob(&x, n) != x {
        return false;
    }
    for r in super::field::prime_factors(n as u64) {
        let h = frob(&x, n / r as usize).sub(k, &x);
        if !h.gcd(k, &fm).is_one() {
            return false;
        }
    }
    true
}

/// Distinct roots in `GF(q)`, sorted.
pub fn roots(k: &FieldCtx, f: &Poly) -> Vec<Fq> {
    if f.is_zero() {
        return Vec::new();
    }
    let fm = f.monic(k);
    if fm.deg() < 1 {
        return Vec::new();
    }
    let xq = Poly::t().powmod(k, k.q() as u128, &fm);
    let g = xq.sub(k, &Poly::t()).gcd(k, &fm);
    if g.deg() < 1 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let mut out: Vec<Fq> =
        equal_degree(k, &g, 1, &mut rng).into_iter().map(|l| k.neg(l.coeff(0))).collect();
    out.sort();
    out
}

/// Roots of `t^n - a`.
pub(crate) fn roots_of_binomial(k: &FieldCtx, n: u64, a: Fq) -> Vec<Fq> {
    let f = Poly::monomial(Fq::ONE, n as usize).sub(k, &Poly::constant(a));
    roots(k, &f)
}

/// Monic `s` with `s^n = f` for monic `f`, via reversed power series.
pub fn nth_root_monic(k: &FieldCtx, f: &Poly, n: u32) -> Option<Poly> {
    debug_assert!(f.is_monic());
    let d = f.deg();
    if d < 0 || d % n as i64 != 0 {
        return None;
    }
    let d = d as usize;
    let e = d / n as usize;
    let rev = f.reverse(d);
    let ninv = k.inv(k.from_int(n as i64));
    let mut s = vec![Fq::ZERO; e + 1];
    s[0] = Fq::ONE;
    for j in 1..=e {
        // coefficient j of the n-th power of the partial series (s_j = 0 so far)
        let partial = Poly::from_coeffs(s[..j].to_vec());
        let pw = partial.pow(k, n as u64).truncate(j + 1);
        let diff = k.sub(rev.coeff(j), pw.coeff(j));
        s[j] = k.mul(diff, ninv);
    }
    let root = Poly::from_coeffs(s).reverse(e);
    if root.pow(k, n as u64) == *f {
        Some(root)
    } else {
        None
    }
}

/// A polynomial `g` with `g^n = f` over the current field, if one exists.
pub fn poly_root_n(k: &FieldCtx, f: &Poly, n: u32) -> Option<Poly> {
    if f.is_zero() {
        return Some(Poly::zero());
    }
    let lc = f.lc();
    let s = nth_root_monic(k, &f.monic(k), n)?;
    let c = *k.nth_roots(lc, n as u64).first()?;
    Some(s.scale(k, c))
}

/// Whether `f` is an `n`-th power in `k̄[t]`.
pub fn is_geometric_power(k: &FieldCtx, f: &Poly, n: u32) -> bool {
    f.is_zero() || nth_root_monic(k, &f.monic(k), n).is_some()
}
