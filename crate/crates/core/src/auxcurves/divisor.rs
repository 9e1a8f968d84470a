//! Divisors with integer or rational coefficients.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::algebra::Poly;
use crate::rat::{floor, int, Rat};

/// A closed point of an auxiliary curve. Infinite places carry `pi = s`
/// where `s = 1/t`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Place {
    pub inf: bool,
    pub pi: Poly,
    pub idx: usize,
    pub e: usize,
    pub deg: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Divisor {
    pub coeffs: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor::default()
    }

    pub fn single(p: &Place, c: i64) -> Divisor {
        let mut d = Divisor::zero();
        d.add_at(p, c);
        d
    }

    pub fn add_at(&mut self, p: &Place, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(p.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(p);
        }
    }

    pub fn get(&self, p: &Place) -> i64 {
        self.coeffs.get(p).copied().unwrap_or(0)
    }

    pub fn add(&self, o: &Divisor) -> Divisor {
        let mut r = self.clone();
        for (p, &c) in &o.coeffs {
            r.add_at(p, c);
        }
        r
    }

    pub fn neg(&self) -> Divisor {
        self.scale(-1)
    }

    pub fn sub(&self, o: &Divisor) -> Divisor {
        self.add(&o.neg())
    }

    pub fn scale(&self, m: i64) -> Divisor {
        let mut r = Divisor::zero();
        for (p, &c) in &self.coeffs {
            r.add_at(p, c * m);
        }
        r
    }

    pub fn deg(&self) -> i64 {
        self.coeffs.iter().map(|(p, &c)| c * p.deg as i64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    pub fn support(&self) -> Vec<Place> {
        self.coeffs.keys().cloned().collect()
    }

    pub fn to_q(&self) -> QDivisor {
        QDivisor { coeffs: self.coeffs.iter().map(|(p, &c)| (p.clone(), int(c))).collect() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QDivisor {
    pub coeffs: BTreeMap<Place, Rat>,
}

impl QDivisor {
    pub fn zero() -> QDivisor {
        QDivisor::default()
    }

    pub fn add_at(&mut self, p: &Place, c: Rat) {
        if c == int(0) {
            return;
        }
        let e = self.coeffs.entry(p.clone()).or_insert(int(0));
        *e += c;
        if *e == int(0) {
            self.coeffs.remove(p);
        }
    }

    pub fn get(&self, p: &Place) -> Rat {
        self.coeffs.get(p).copied().unwrap_or(int(0))
    }

    pub fn add(&self, o: &QDivisor) -> QDivisor {
        let mut r = self.clone();
        for (p, &c) in &o.coeffs {
            r.add_at(p, c);
        }
        r
    }

    pub fn scale(&self, m: Rat) -> QDivisor {
        let mut r = QDivisor::zero();
        for (p, &c) in &self.coeffs {
            r.add_at(p, c * m);
        }
        r
    }

    pub fn deg(&self) -> Rat {
        self.coeffs.iter().map(|(p, &c)| c * int(p.deg as i64)).sum()
    }

    pub fn floor(&self) -> Divisor {
        let mut d = Divisor::zero();
        for (p, &c) in &self.coeffs {
            d.add_at(p, floor(c));
        }
        d
    }
}
