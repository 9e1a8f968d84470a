use super::*;
use crate::algebra::factor::{is_irreducible, random_poly};
use crate::algebra::parse_poly;
use crate::model::{genus_c2, genus_c3};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Product of `base^exp` factors written as `"t+1:3 t:2"`.
pub(crate) fn pp(k: &FieldCtx, f: &str) -> Poly {
    let mut r = Poly::one();
    for part in f.split_whitespace() {
        let (b, e) = part.split_once(':').unwrap_or((part, "1"));
        r = r.mul(k, &parse_poly(k, b).unwrap().pow(k, e.parse().unwrap()));
    }
    r
}

fn curve(k: &FieldCtx, f: &str, kind: AuxKind) -> AuxCurve {
    let cfg = CurveConfig::new(k, &pp(k, f)).unwrap();
    AuxCurve::new(k, &cfg, kind).unwrap()
}

fn random_place(c: &AuxCurve, k: &FieldCtx, rng: &mut ChaCha8Rng) -> Place {
    if rng.next_u32() % 5 == 0 {
        let inf = c.infinite_places(k);
        return inf[rng.next_u32() as usize % inf.len()].clone();
    }
    loop {
        let d = 1 + (rng.next_u32() % 2) as usize;
        let mut pi = random_poly(k, rng, d);
        pi = pi.add(k, &Poly::monomial(Fq::ONE, d)).monic(k);
        if pi.deg() as usize == d && is_irreducible(k, &pi) {
            let ps = c.places_above(k, &pi);
            return ps[rng.next_u32() as usize % ps.len()].clone();
        }
    }
}

fn random_divisor(c: &AuxCurve, k: &FieldCtx, rng: &mut ChaCha8Rng, terms: usize) -> Divisor {
    let mut d = Divisor::zero();
    for _ in 0..terms {
        let p = random_place(c, k, rng);
        d.add_at(&p, (rng.next_u32() % 5) as i64 - 2);
    }
    d
}

fn random_function(c: &AuxCurve, k: &FieldCtx, rng: &mut ChaCha8Rng) -> FunctionRep {
    loop {
        let mut co = Vec::new();
        for _ in 0..c.n {
            let len = 1 + (rng.next_u32() % 4) as usize;
            co.push(random_poly(k, rng, len));
        }
        let len = 1 + (rng.next_u32() % 3) as usize;
        let den = random_poly(k, rng, len);
        if den.is_zero() || co.iter().all(|x| x.is_zero()) {
            continue;
        }
        return FunctionRep::new(k, co, den);
    }
}

#[test]
fn genus_matches_model() {
    let k = FieldCtx::prime(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in 1..=6usize {
        for _ in 0..200 {
            let mut f = random_poly(&k, &mut rng, d);
            f = f.add(&k, &Poly::monomial(Fq(1 + (rng.next_u32() % 6) as u64), d));
            if f.deg() != d as i64 {
                continue;
            }
            let Ok(cfg) = CurveConfig::new(&k, &f) else { continue };
            if let Ok(g) = genus_c2(&cfg.decomp) {
                assert_eq!(AuxCurve::new(&k, &cfg, AuxKind::C2).unwrap().genus, g);
            }
            if let Ok(g) = genus_c3(&cfg.decomp) {
                assert_eq!(AuxCurve::new(&k, &cfg, AuxKind::C3).unwrap().genus, g);
            }
        }
    }
}

#[test]
fn ef_bookkeeping() {
    let k = FieldCtx::prime(7).unwrap();
    for (f, kind) in [("t^5+3*t^2+1", AuxKind::C2), ("t:2 t+1:3 t+2:4", AuxKind::C2), ("t^4+t+5", AuxKind::C3)] {
        let c = curve(&k, f, kind);
        for pi in ["t", "t + 1", "t + 2", "t^2 + 1", "t^3 + t + 1"] {
            let pi = parse_poly(&k, pi).unwrap();
            if !is_irreducible(&k, &pi) {
                continue;
            }
            let s: usize = c.places_above(&k, &pi).iter().map(|p| p.e * p.deg).sum();
            assert_eq!(s, c.n * pi.deg() as usize);
        }
        let s: usize = c.infinite_places(&k).iter().map(|p| p.e * p.deg).sum();
        assert_eq!(s, c.n);
    }
}

#[test]
fn infinite_place_shapes() {
    let k = FieldCtx::prime(7).unwrap();
    let c = curve(&k, "t^2+1", AuxKind::C2);
    assert_eq!(c.infinite_places(&k).len(), 1);
    assert_eq!(c.infinite_places(&k)[0].e, 3);
    let c = curve(&k, "t^6+t+3", AuxKind::C2);
    let inf = c.infinite_places(&k);
    assert!(inf.iter().all(|p| p.e == 1));
    assert_eq!(inf.iter().map(|p| p.deg).sum::<usize>(), 3);
    let c = curve(&k, "2*t^4+1", AuxKind::C3);
    let inf = c.infinite_places(&k);
    // 2 is a square mod 7
    assert_eq!(inf.len(), 2);
    assert!(inf.iter().all(|p| p.deg == 1));
    let c = curve(&k, "3*t^4+1", AuxKind::C3);
    assert_eq!(c.infinite_places(&k).len(), 1);
    assert_eq!(c.infinite_places(&k)[0].deg, 2);
}

#[test]
fn degree_of_t_and_principal_divisors() {
    let k = FieldCtx::prime(5).unwrap();
    let c = curve(&k, "t^2+1", AuxKind::C2);
    let mut co = c.model.zero();
    co[0] = Poly::t();
    let d = c.divisor_of_function(&k, &FunctionRep::integral(co)).unwrap();
    assert_eq!(d.deg(), 0);
    let poles: i64 = d.coeffs.iter().filter(|(_, &v)| v < 0).map(|(p, &v)| v * p.deg as i64).sum();
    assert_eq!(poles, -3);
    assert!(matches!(c.divisor_of_function(&k, &FunctionRep::integral(c.model.zero())), Err(Error::ZeroFunction)));
}

#[test]
fn random_functions_have_degree_zero() {
    let k = FieldCtx::prime(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let curves = [
        curve(&k, "t^5+3*t^2+1", AuxKind::C2),
        curve(&k, "t^6+t+3", AuxKind::C2),
        curve(&k, "t:2 t+1:3 t+2:4 t+3", AuxKind::C2),
        curve(&k, "t^2+1:2 t+4:5", AuxKind::C2),
        curve(&k, "t^4+t+5", AuxKind::C3),
        curve(&k, "t^3+2*t+1", AuxKind::C3p),
    ];
    for c in &curves {
        for _ in 0..100 {
            let h = random_function(c, &k, &mut rng);
            let d = c.divisor_of_function(&k, &h).unwrap();
            assert_eq!(d.deg(), 0);
            let w = c.is_principal(&k, &d).unwrap();
            // w / h is a nonzero constant
            let q = c.divisor_of_function(&k, &w).unwrap();
            assert_eq!(q, d);
        }
    }
}

#[test]
fn riemann_roch_identity() {
    let k = FieldCtx::prime(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (f, kind) in [
        ("t^5+3*t^2+1", AuxKind::C2),
        ("t^6+t+3", AuxKind::C2),
        ("t t+1:2 t+2:4", AuxKind::C2),
        ("t^5+t+5", AuxKind::C3),
        ("t^6+2", AuxKind::C3),
    ] {
        let c = curve(&k, f, kind);
        let g = c.genus as i64;
        let kd = c.canonical_divisor(&k);
        assert_eq!(kd.deg(), 2 * g - 2);
        assert!(c.is_principal(&k, &kd.sub(&c.differential_divisor(&k))).is_some());
        assert_eq!(c.l(&k, &Divisor::zero()), 1);
        assert_eq!(c.l(&k, &kd) as i64, g);
        for _ in 0..40 {
            let d = random_divisor(&c, &k, &mut rng, 4);
            let l1 = c.l(&k, &d) as i64;
            let l2 = c.l(&k, &kd.sub(&d)) as i64;
            assert_eq!(l1 - l2, d.deg() - g + 1, "{f} {:?}", d);
            if d.deg() < 0 {
                assert_eq!(l1, 0);
            }
            if d.deg() > 2 * g - 2 {
                assert_eq!(l1, d.deg() - g + 1);
            }
        }
    }
}

#[test]
fn difference_of_points_not_principal() {
    let k = FieldCtx::prime(7).unwrap();
    let c = curve(&k, "t^3+2*t+1", AuxKind::C3);
    assert_eq!(c.genus, 1);
    let p0 = c.base_place(&k).unwrap();
    let mut found = 0;
    for a in k.elements() {
        for p in c.places_above(&k, &Poly::linear(&k, a)) {
            if p.deg == 1 && p != p0 {
                let d = Divisor::single(&p, 1).sub(&Divisor::single(&p0, 1));
                assert!(c.is_principal(&k, &d).is_none());
                // exhausting L(P0): only constants
                assert_eq!(c.l(&k, &Divisor::single(&p0, 1)), 1);
                found += 1;
            }
        }
    }
    assert!(found > 0);
}

#[test]
fn point_count_matches_places() {
    let k = FieldCtx::prime(7).unwrap();
    let c = curve(&k, "t^6+t+3", AuxKind::C2);
    let mut n = c.infinite_places(&k).iter().filter(|p| p.deg == 1).count() as u64;
    for a in k.elements() {
        n += c.places_above(&k, &Poly::linear(&k, a)).iter().filter(|p| p.deg == 1).count() as u64;
    }
    assert_eq!(n, c.count_points(&k));
}
