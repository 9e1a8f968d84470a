//! Finite fields `GF(p^m)` with `p >= 5`.
//!
//! Elements are stored as the integer `sum d_i p^i` of their coefficient
//! digits with respect to the power basis of the defining modulus.  All
//! arithmetic goes through an explicit [`FieldCtx`].

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Fields up to this size get log/exp/Zech tables.
pub const TABLE_LIMIT: u64 = 1 << 23;

const MAX_DIGITS: usize = 48;

/// A field element in digit encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fq(pub u64);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone)]
struct Tables {
    log: Vec<u32>,
    exp: Vec<u32>,
    zech: Vec<u32>,
}

const NONE: u32 = u32::MAX;

/// Context for `GF(p^m)`.
#[derive(Clone)]
pub struct FieldCtx {
    p: u64,
    m: u32,
    q: u64,
    modulus: Vec<u64>,
    zeta3: Option<Fq>,
    tab: Option<Tables>,
}

impl core::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "GF({}^{})", self.p, self.m)
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.m == o.m && self.modulus == o.modulus
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

// Dense polynomials over GF(p) as digit vectors, used only to pick the modulus.
mod small {
    use super::*;

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let inv = powmod(m[dm], p - 2, p);
        while r.len() > dm {
            let c = mulmod(*r.last().unwrap(), inv, p);
            let shift = r.len() - 1 - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - mulmod(c, mi, p)) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + mulmod(x, y, p)) % p;
            }
        }
        trim(&mut r);
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn pow_x_frob(m: &[u64], k: u32, p: u64) -> Vec<u64> {
        // x^(p^k) mod m
        let mut cur = rem(&[0, 1], m, p);
        for _ in 0..k {
            let mut r = vec![1u64];
            let mut base = cur.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    r = rem(&mul(&r, &base, p), m, p);
                }
                base = rem(&mul(&base, &base, p), m, p);
                e >>= 1;
            }
            cur = r;
        }
        cur
    }

    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let n = (f.len() - 1) as u32;
        if n == 1 {
            return true;
        }
        let xp = pow_x_frob(f, n, p);
        let mut t = xp.clone();
        // t - x
        if t.len() < 2 {
            t.resize(2, 0);
        }
        t[1] = (t[1] + p - 1) % p;
        trim(&mut t);
        if !t.is_empty() {
            return false;
        }
        for r in prime_factors(n as u64) {
            let mut h = pow_x_frob(f, n / r as u32, p);
            if h.len() < 2 {
                h.resize(2, 0);
            }
            h[1] = (h[1] + p - 1) % p;
            trim(&mut h);
            let g = gcd(f, &h, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

impl FieldCtx {
    /// The prime field `GF(p)`.
    pub fn prime(p: u64) -> Result<FieldCtx> {
        FieldCtx::new(p, 1)
    }

    /// `GF(p^m)` defined by the least irreducible monic modulus of degree `m`,
    /// where monic candidates are ordered by the integer encoding of their
    /// lower coefficients.
    pub fn new(p: u64, m: u32) -> Result<FieldCtx> {
        if !is_prime(p) || p < 5 {
            return Err(Error::InvalidField(alloc::format!("p = {p} must be a prime >= 5")));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidField(alloc::format!("p = {p} is too large")));
        }
        if m == 0 || m as usize > MAX_DIGITS {
            return Err(Error::InvalidField(alloc::format!("extension degree {m} unsupported")));
        }
        let mut q: u64 = 1;
        for _ in 0..m {
            q = q
                .checked_mul(p)
                .filter(|&v| v < 1 << 62)
                .ok_or_else(|| Error::InvalidField(alloc::format!("{p}^{m} is too large")))?;
        }
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            let mut found = None;
            let count = q;
            for n in 0..count {
                let mut f = vec![0u64; m as usize + 1];
                let mut v = n;
                for d in f.iter_mut().take(m as usize) {
                    *d = v % p;
                    v /= p;
                }
                f[m as usize] = 1;
                if f[0] == 0 {
                    continue;
                }
                if small::is_irreducible(&f, p) {
                    found = Some(f);
                    break;
                }
            }
            found.expect("irreducible polynomials exist in every degree")
        };
        let mut ctx = FieldCtx { p, m, q, modulus, zeta3: None, tab: None };
        if q <= TABLE_LIMIT {
            ctx.build_tables();
        }
        if (q - 1) % 3 == 0 {
            let z = if let Some(t) = &ctx.tab {
                Fq(t.exp[((q - 1) / 3) as usize] as u64)
            } else {
                let mut z = Fq::ONE;
                let mut a = 2u64;
                while z == Fq::ONE {
                    z = ctx.pow(Fq(a), ((q - 1) / 3) as u128);
                    a += 1;
                }
                z
            };
            ctx.zeta3 = Some(z);
        }
        Ok(ctx)
    }

    fn build_tables(&mut self) {
        let q = self.q;
        let n = (q - 1) as usize;
        let pf = prime_factors(q - 1);
        let is_gen = |ctx: &FieldCtx, g: Fq| pf.iter().all(|&r| ctx.pow(g, ((q - 1) / r) as u128) != Fq::ONE);
        // prefer the class of the variable when it is primitive
        let cand_first = if self.m == 1 { 2 } else { self.p };
        let mut g = Fq(cand_first);
        if !is_gen(self, g) {
            let mut a = 2u64;
            loop {
                if is_gen(self, Fq(a)) {
                    g = Fq(a);
                    break;
                }
                a += 1;
            }
        }
        let shift = self.m > 1 && g.0 == self.p;
        let mut log = vec![NONE; q as usize];
        let mut exp = vec![0u32; 2 * n + 1];
        let mut cur = Fq::ONE;
        for i in 0..n {
            exp[i] = cur.0 as u32;
            log[cur.0 as usize] = i as u32;
            cur = if shift { self.mul_by_x(cur) } else { self.mul_generic(cur, g) };
        }
        for i in n..2 * n + 1 {
            exp[i] = exp[i - n];
        }
        let mut zech = vec![NONE; n];
        for (d, z) in zech.iter_mut().enumerate() {
            let e = exp[d] as u64;
            // 1 + g^d: only the constant digit changes
            let c0 = e % self.p;
            let v = e - c0 + (c0 + 1) % self.p;
            *z = log[v as usize];
        }
        self.tab = Some(Tables { log, exp, zech });
    }

    fn mul_by_x(&self, a: Fq) -> Fq {
        let m = self.m as usize;
        let mut d = self.digits_arr(a);
        let top = d[m - 1];
        for i in (1..m).rev() {
            d[i] = d[i - 1];
        }
        d[0] = 0;
        if top != 0 {
            for i in 0..m {
                d[i] = (d[i] + self.p - mulmod(top, self.modulus[i], self.p)) % self.p;
            }
        }
        self.from_digit_arr(&d[..m])
    }

    fn digits_arr(&self, a: Fq) -> [u64; MAX_DIGITS] {
        let mut d = [0u64; MAX_DIGITS];
        let mut v = a.0;
        for x in d.iter_mut().take(self.m as usize) {
            *x = v % self.p;
            v /= self.p;
        }
        d
    }

    fn from_digit_arr(&self, d: &[u64]) -> Fq {
        let mut v = 0u64;
        for &x in d.iter().rev() {
            v = v * self.p + x;
        }
        Fq(v)
    }

    fn mul_generic(&self, a: Fq, b: Fq) -> Fq {
        let m = self.m as usize;
        let p = self.p;
        let da = self.digits_arr(a);
        let db = self.digits_arr(b);
        let mut pr = [0u64; 2 * MAX_DIGITS];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                pr[i + j] = (pr[i + j] + da[i] * db[j]) % p;
            }
        }
        for i in (m..2 * m - 1).rev() {
            let c = pr[i];
            if c != 0 {
                for j in 0..m {
                    pr[i - m + j] = (pr[i - m + j] + p - (c * self.modulus[j]) % p) % p;
                }
                pr[i] = 0;
            }
        }
        self.from_digit_arr(&pr[..m])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of elements.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Coefficients (low to high) of the defining modulus over `GF(p)`.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn has_tables(&self) -> bool {
        self.tab.is_some()
    }

    pub fn zeta3(&self) -> Result<Fq> {
        self.zeta3.ok_or(Error::NoZeta3)
    }

    pub fn zeta3_opt(&self) -> Option<Fq> {
        self.zeta3
    }

    pub fn zero(&self) -> Fq {
        Fq::ZERO
    }

    pub fn one(&self) -> Fq {
        Fq::ONE
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.p as i64) as u64)
    }

    /// Element from its digits (low to high), each reduced mod p.
    pub fn from_digits(&self, d: &[i64]) -> Fq {
        let mut arr = [0u64; MAX_DIGITS];
        for (i, &x) in d.iter().enumerate().take(self.m as usize) {
            arr[i] = x.rem_euclid(self.p as i64) as u64;
        }
        self.from_digit_arr(&arr[..self.m as usize])
    }

    pub fn digits(&self, a: Fq) -> Vec<u64> {
        self.digits_arr(a)[..self.m as usize].to_vec()
    }

    /// Whether the element lies in the prime field.
    pub fn is_prime_field_elem(&self, a: Fq) -> bool {
        a.0 < self.p
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.m == 1 {
            let s = a.0 + b.0;
            return Fq(if s >= self.p { s - self.p } else { s });
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        if let Some(t) = &self.tab {
            let la = t.log[a.0 as usize];
            let lb = t.log[b.0 as usize];
            let n = (self.q - 1) as u32;
            let d = if lb >= la { lb - la } else { lb + n - la };
            let z = t.zech[d as usize];
            if z == NONE {
                return Fq::ZERO;
            }
            return Fq(t.exp[(la + z) as usize] as u64);
        }
        let p = self.p;
        let (mut x, mut y) = (a.0, b.0);
        let mut r = 0u64;
        let mut pw = 1u64;
        for _ in 0..self.m {
            let s = (x % p + y % p) % p;
            r += s * pw;
            pw = pw.wrapping_mul(p);
            x /= p;
            y /= p;
        }
        Fq(r)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        if self.m == 1 {
            return Fq(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let p = self.p;
        let mut x = a.0;
        let mut r = 0u64;
        let mut pw = 1u64;
        for _ in 0..self.m {
            let d = x % p;
            r += ((p - d) % p) * pw;
            pw = pw.wrapping_mul(p);
            x /= p;
        }
        Fq(r)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if self.m == 1 {
            return Fq(mulmod(a.0, b.0, self.p));
        }
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        if let Some(t) = &self.tab {
            let l = t.log[a.0 as usize] + t.log[b.0 as usize];
            return Fq(t.exp[l as usize] as u64);
        }
        self.mul_generic(a, b)
    }

    /// Inverse; panics on zero.
    pub fn inv(&self, a: Fq) -> Fq {
        assert!(a.0 != 0, "inverse of zero");
        if self.m == 1 {
            return Fq(powmod(a.0, self.p - 2, self.p));
        }
        if let Some(t) = &self.tab {
            let n = (self.q - 1) as u32;
            let l = t.log[a.0 as usize];
            return Fq(t.exp[((n - l) % n) as usize] as u64);
        }
        self.pow(a, (self.q - 2) as u128)
    }

    pub fn try_inv(&self, a: Fq) -> Result<Fq> {
        if a.0 == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv(a))
        }
    }

    pub fn div(&self, a: Fq, b: Fq) -> Fq {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fq, e: u128) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.0 == 0 {
            return Fq::ZERO;
        }
        if let Some(t) = &self.tab {
            let n = (self.q - 1) as u128;
            let l = (t.log[a.0 as usize] as u128 * (e % n)) % n;
            return Fq(t.exp[l as usize] as u64);
        }
        let mut r = Fq::ONE;
        let mut b = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    pub fn pow_i(&self, a: Fq, e: i64) -> Fq {
        if e >= 0 {
            self.pow(a, e as u128)
        } else {
            self.inv(self.pow(a, (-e) as u128))
        }
    }

    /// Discrete log with respect to the table generator.
    pub fn log(&self, a: Fq) -> Option<u32> {
        let t = self.tab.as_ref()?;
        let l = t.log[a.0 as usize];
        if l == NONE {
            None
        } else {
            Some(l)
        }
    }

    /// Table generator raised to `e`.
    pub fn exp(&self, e: u64) -> Option<Fq> {
        let t = self.tab.as_ref()?;
        Some(Fq(t.exp[(e % (self.q - 1)) as usize] as u64))
    }

    /// Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(a, self.p as u128)
    }

    /// Whether `a` is an `n`-th power in the field (zero counts).
    pub fn is_nth_power(&self, a: Fq, n: u64) -> bool {
        if a.0 == 0 {
            return true;
        }
        let g = gcd_u64(n, self.q - 1);
        if g == 1 {
            return true;
        }
        if let Some(l) = self.log(a) {
            return l as u64 % g == 0;
        }
        self.pow(a, ((self.q - 1) / g) as u128) == Fq::ONE
    }

    /// All `n`-th roots of `a` in the field, sorted.
    pub fn nth_roots(&self, a: Fq, n: u64) -> Vec<Fq> {
        if a.0 == 0 {
            return vec![Fq::ZERO];
        }
        if let Some(l) = self.log(a) {
            let qm = self.q - 1;
            let g = gcd_u64(n, qm);
            if l as u64 % g != 0 {
                return Vec::new();
            }
            let m2 = qm / g;
            let ng = (n / g) % m2;
            let inv = if m2 == 1 { 0 } else { inv_mod(ng, m2) };
            let x0 = ((l as u64 / g) as u128 * inv as u128 % m2 as u128) as u64;
            let mut out: Vec<Fq> = (0..g).map(|k| self.exp(x0 + k * m2).unwrap()).collect();
            out.sort();
            return out;
        }
        let mut r = crate::algebra::factor::roots_of_binomial(self, n, a);
        r.sort();
        r
    }

    /// All elements, in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(Fq)
    }

    /// Quadratic character: 0, 1 or -1.
    pub fn chi2(&self, a: Fq) -> i32 {
        if a.0 == 0 {
            0
        } else if self.is_nth_power(a, 2) {
            1
        } else {
            -1
        }
    }
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub(crate) fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let qt = r0 / r1;
        let t = r0 - qt * r1;
        r0 = r1;
        r1 = t;
        let t = s0 - qt * s1;
        s0 = s1;
        s1 = t;
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(m as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf7_basics() {
        let k = FieldCtx::prime(7).unwrap();
        assert_eq!(k.mul(Fq(3), Fq(5)), Fq(1));
        assert_eq!(k.inv(Fq(3)), Fq(5));
        assert_eq!(k.neg(Fq(2)), Fq(5));
        let z = k.zeta3().unwrap();
        assert_ne!(z, Fq::ONE);
        assert_eq!(k.pow(z, 3), Fq::ONE);
    }

    #[test]
    fn gf25_tables_match_generic() {
        let k = FieldCtx::new(5, 2).unwrap();
        assert!(k.has_tables());
        for a in k.elements() {
            for b in k.elements() {
                assert_eq!(k.mul(a, b), k.mul_generic(a, b));
            }
        }
        let z = k.zeta3().unwrap();
        assert_eq!(k.pow(z, 3), Fq::ONE);
        assert_ne!(z, Fq::ONE);
    }

    #[test]
    fn no_zeta3_in_gf5() {
        let k = FieldCtx::prime(5).unwrap();
        assert_eq!(k.zeta3(), Err(Error::NoZeta3));
    }

    #[test]
    fn roots() {
        let k = FieldCtx::prime(13).unwrap();
        let r = k.nth_roots(Fq(1), 3);
        assert_eq!(r.len(), 3);
        for x in r {
            assert_eq!(k.pow(x, 3), Fq::ONE);
        }
        assert!(k.nth_roots(Fq(2), 2).is_empty());
    }

    #[test]
    fn rejects_small_char() {
        assert!(FieldCtx::prime(3).is_err());
        assert!(FieldCtx::prime(9).is_err());
    }
}
