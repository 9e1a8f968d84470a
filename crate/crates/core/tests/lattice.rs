use descentff_core::lattice::{
    mod2_fibers, mod_sqrt3_fibers, pillai_check, pillai_search, shell, shell_count, sqrt3_congruence_holds,
    standard_lattice, LatticeName,
};
use descentff_core::rat::{int, rat};

#[test]
fn theta_series_coefficients() {
    let cases = [
        (LatticeName::A2Dual, rat(2, 3), 6),
        (LatticeName::A2Dual, int(2), 6),
        (LatticeName::A2Dual, rat(8, 3), 6),
        (LatticeName::D4Dual, int(1), 24),
        (LatticeName::D4Dual, int(2), 24),
        (LatticeName::D4Dual, int(3), 96),
        (LatticeName::E6Dual, rat(4, 3), 54),
        (LatticeName::E6Dual, int(2), 72),
        (LatticeName::E8, int(2), 240),
        (LatticeName::E8, int(4), 2160),
    ];
    for (name, norm, count) in cases {
        assert_eq!(shell_count(&standard_lattice(name), norm), count, "{} at {norm}", name.name());
    }
}

#[test]
fn nothing_below_the_minimum() {
    for name in LatticeName::ALL {
        let l = standard_lattice(name);
        let below = l.min_norm - rat(1, 6);
        assert_eq!(shell_count(&l, below), 0);
        assert_eq!(shell_count(&l, int(0)), 1);
    }
}

#[test]
fn zeta_preserves_and_sqrt_minus3_triples_norms() {
    for name in LatticeName::ALL {
        let l = standard_lattice(name);
        assert!(l.zeta_is_valid());
        let s = shell(&l, l.min_norm);
        for v in &s.vectors {
            let z = l.zeta_apply(v);
            assert_eq!(l.norm(&z), l.norm(v));
            assert_eq!(l.zeta_apply(&l.zeta_apply(&z)), *v);
            assert_eq!(l.norm(&l.sqrt_minus3_apply(v)), l.norm(v) * int(3));
        }
        assert!(sqrt3_congruence_holds(&l, 200, 7));
    }
}

#[test]
fn minimal_vectors_split_evenly_into_residue_classes() {
    for name in LatticeName::ALL {
        let l = standard_lattice(name);
        let m2 = mod2_fibers(&l);
        assert!(m2.is_uniform(2) && !m2.zero_hit);
        assert_eq!(m2.classes() * 2, m2.vectors);
        let m3 = mod_sqrt3_fibers(&l);
        assert!(m3.is_uniform(3) && !m3.zero_hit);
        assert_eq!(m3.classes() * 3, m3.vectors);
    }
}

#[test]
fn pillai_bounded_search() {
    let sols = pillai_search(20);
    let values: Vec<u128> = sols.iter().map(|s| s.value).collect();
    assert_eq!(values, vec![54, 216]);
    for s in &sols {
        let lhs = (1u128 << s.x) - (1u128 << s.y) - (1u128 << s.z);
        let rhs = 3u128.pow(s.v) - 3u128.pow(s.w);
        assert_eq!(lhs, s.value);
        assert_eq!(rhs, s.value);
    }
    let rep = pillai_check();
    assert!(rep.pass(), "{:?}", rep.clauses.iter().filter(|c| !c.pass).collect::<Vec<_>>());
}
