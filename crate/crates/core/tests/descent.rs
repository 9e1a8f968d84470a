use descentff_core::algebra::{parse_poly, FieldCtx};
use descentff_core::descent::{
    extend_config, homomorphism_trials, torsion_stabilized, verify_corsh2, verify_fiber_caps, verify_intbound,
    verify_table1, verify_wbij, MapKind, Report,
};
use descentff_core::model::CurveConfig;
use descentff_core::Error;

const CURVES: &[&str] = &["t^2 + 1", "t^3 + 1", "t^3 + 2*t + 1", "t^4 + t^3", "t^3 + t^2", "t^5 + t^2", "t^4 + 1", "t^6 + 3"];

fn cfg(k: &FieldCtx, f: &str) -> CurveConfig {
    CurveConfig::new(k, &parse_poly(k, f).unwrap()).unwrap()
}

fn assert_pass(rep: &Report, what: &str) {
    assert!(rep.pass(), "{what}: {:?}", rep.failures());
}

#[test]
fn maps_are_homomorphisms_with_the_right_kernels() {
    let k = FieldCtx::prime(7).unwrap();
    for f in CURVES {
        let c = cfg(&k, f);
        for kind in [MapKind::Phi2, MapKind::Phi3, MapKind::Phi3p] {
            let t = homomorphism_trials(&k, &c, kind, 60, 3).unwrap();
            assert!(t.all_pass(), "{f} {kind:?}: {t:?}");
        }
    }
}

#[test]
fn fiber_caps_hold() {
    for p in [5, 7] {
        let k = FieldCtx::prime(p).unwrap();
        let mut checked = 0;
        for f in CURVES.iter().filter(|f| !f.starts_with("t^6")) {
            match verify_fiber_caps(&k, &cfg(&k, f)) {
                Ok(rep) => {
                    assert_pass(&rep, f);
                    checked += 1;
                }
                Err(Error::HypothesisViolated(_)) => {}
                Err(e) => panic!("{f}: {e}"),
            }
        }
        assert!(checked >= 5);
    }
}

#[test]
fn integral_point_bounds_hold() {
    for p in [5, 7] {
        let k = FieldCtx::prime(p).unwrap();
        for f in CURVES {
            match verify_intbound(&k, &cfg(&k, f)) {
                Ok(rep) => assert_pass(&rep, f),
                Err(Error::HypothesisViolated(_)) => {}
                Err(e) => panic!("{f}: {e}"),
            }
        }
    }
}

#[test]
fn counting_identities_hold() {
    for p in [7, 13] {
        let k = FieldCtx::prime(p).unwrap();
        for f in CURVES {
            assert_pass(&verify_corsh2(&k, &cfg(&k, f)).unwrap(), f);
        }
    }
}

#[test]
fn minimal_points_fill_the_lattice_shell() {
    let k1 = FieldCtx::prime(5).unwrap();
    let k2 = FieldCtx::new(5, 2).unwrap();
    let c = extend_config(&k1, &k2, &cfg(&k1, "t^3 + 1")).unwrap();
    assert!(torsion_stabilized(&k2, &c).unwrap());
    let rep = verify_table1(&k2, &c).unwrap();
    assert_pass(&rep, "t^3 + 1");
    assert!(rep.clauses.iter().any(|cl| cl.asserted && cl.lhs == 24));
    assert_pass(&verify_wbij(&k2, &c).unwrap(), "t^3 + 1");
}

#[test]
fn quadratic_over_gf7_is_stabilized() {
    let k = FieldCtx::prime(7).unwrap();
    let c = cfg(&k, "t^2 + 1");
    assert!(torsion_stabilized(&k, &c).unwrap());
    let rep = verify_table1(&k, &c).unwrap();
    assert_pass(&rep, "t^2 + 1");
    assert!(rep.clauses.iter().any(|cl| cl.asserted && cl.lhs == 6));
}
