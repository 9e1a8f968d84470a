use super::*;
use crate::algebra::parse_poly;
use crate::algebra::factor::roots;

fn cfg(k: &FieldCtx, f: &str) -> CurveConfig {
    CurveConfig::new(k, &parse_poly(k, f).unwrap()).unwrap()
}

#[test]
fn l_polynomial_genus_one() {
    let k = FieldCtx::prime(7).unwrap();
    let c = AuxCurve::new(&k, &cfg(&k, "t^3+2*t+1"), AuxKind::C3).unwrap();
    let lp = l_polynomial(&k, &c).unwrap();
    assert_eq!(lp.len(), 3);
    assert_eq!(lp.iter().sum::<i128>(), c.count_points(&k) as i128);
}

#[test]
fn two_torsion_of_cubic() {
    for p in [5u64, 7, 11, 13] {
        let k = FieldCtx::prime(p).unwrap();
        for f in ["t^3+2*t+1", "t^3+t", "t^3-t", "t^3+3*t^2+1"] {
            let f = parse_poly(&k, f).unwrap();
            let Ok(cf) = CurveConfig::new(&k, &f) else { continue };
            if !cf.decomp.is_squarefree() {
                continue;
            }
            let c = AuxCurve::new(&k, &cf, AuxKind::C3).unwrap();
            let t = pic_torsion(&k, &c, 2).unwrap();
            let expect = roots(&k, &f).len() + 1;
            assert_eq!(t.len(), if expect == 4 { 4 } else { expect.min(2) }, "p={p}");
        }
    }
}

#[test]
fn genus_zero_is_trivial() {
    let k = FieldCtx::prime(7).unwrap();
    let c = AuxCurve::new(&k, &cfg(&k, "t^2+1"), AuxKind::C3).unwrap();
    assert_eq!(c.genus, 0);
    assert_eq!(pic_torsion(&k, &c, 3).unwrap().len(), 1);
}

#[test]
fn qd_torsion_genus_zero_two_points() {
    // y^2 = t^2 + 1 over GF(13): the two points at infinity are rational
    let k = FieldCtx::prime(13).unwrap();
    let cf = cfg(&k, "t^2+1");
    let c = AuxCurve::new(&k, &cf, AuxKind::C3).unwrap();
    let d3 = support_d3(&k, &cf, &c);
    assert_eq!(d3.len(), 2);
    let t = pic_qd_torsion(&k, &c, &d3, 3).unwrap();
    assert_eq!(t.len(), 3);
}

#[test]
fn group_axioms_and_bound() {
    let k = FieldCtx::prime(7).unwrap();
    let cf = cfg(&k, "t^3+2*t+1");
    let c = AuxCurve::new(&k, &cf, AuxKind::C2).unwrap();
    let d2 = support_d2(&k, &cf, &c);
    let qp = QPic::new(&k, &c, 2, &d2).unwrap();
    let syl = qp.sylow().unwrap();
    let t = qp.torsion(&syl);
    let base = qp.torsion(&Sylow::compute(&qp.jac, 2, &mut ChaCha8Rng::seed_from_u64(1)).unwrap());
    assert_eq!(t.classes, base.classes);
    assert!(t.contains(&qp.zero()));
    for a in &t.classes {
        assert!(t.contains(&qp.neg(a)));
        assert_eq!(qp.mul(2, a), qp.zero());
        for b in &t.classes {
            assert!(t.contains(&qp.add(a, b)));
            assert_eq!(qp.add(a, b), qp.add(b, a));
        }
    }
    let plain = pic_torsion(&k, &c, 2).unwrap();
    assert!(t.dim() <= plain.dim() + (d2.len() as u32).saturating_sub(1));
}

#[test]
fn theta_counts_genus_one() {
    // on an elliptic curve the theta characteristics are the 2-torsion points
    let k = FieldCtx::prime(13).unwrap();
    let cf = cfg(&k, "t^3-t");
    let c = AuxCurve::new(&k, &cf, AuxKind::C3).unwrap();
    let th = theta_characteristics(&k, &c).unwrap();
    assert_eq!(th.len(), 4);
    assert_eq!(th.iter().filter(|t| t.odd).count(), 1);
}
