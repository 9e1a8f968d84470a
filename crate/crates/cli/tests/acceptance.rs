//! One PASS/FAIL line per acceptance criterion.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::Instant;

use descentff_core::algebra::{factor, is_irreducible, sixth_power_free_decompose, FieldCtx, Fq, Poly};
use descentff_core::auxcurves::{AuxCurve, AuxKind, Divisor, FunctionRep, Place};
use descentff_core::descent::{
    extend_config, homomorphism_trials, torsion_stabilized, verify_corsh2, verify_fiber_caps, verify_intbound,
    verify_wbij, MapKind, Report,
};
use descentff_core::lattice::{pillai_check, pillai_search, shell_count, standard_lattice, LatticeName};
use descentff_core::model::{check_davenport, classify_type, CurveConfig};
use descentff_core::mordell::{
    canonical_height, enumerate_integral_points, hits_to_points, search, PointE, SearchMode, Weierstrass,
};
use descentff_core::picard::{pic_torsion, support_d2, support_d3, QPic};
use descentff_core::rat::{int, rat, Rat};
use descentff_core::Error;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn failures(rep: &Report) -> String {
    rep.failures().iter().map(|c| format!("{} ({} vs {})", c.id, c.lhs, c.rhs)).collect::<Vec<_>>().join("; ")
}

fn ensure_pass(rep: &Report, what: &str) -> Result<(), String> {
    ensure(rep.pass(), || format!("{what}: {}", failures(rep)))
}

fn cli(args: &[&str]) -> Value {
    let mut argv = vec!["descentff"];
    argv.extend_from_slice(args);
    descentff::run(&argv).report
}

// ---------------------------------------------------------------------
// random polynomials

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn below(r: &mut ChaCha8Rng, n: u64) -> u64 {
    r.next_u64() % n
}

fn nonzero(k: &FieldCtx, r: &mut ChaCha8Rng) -> Fq {
    Fq(1 + below(r, k.q() - 1))
}

fn monic(k: &FieldCtx, r: &mut ChaCha8Rng, d: usize) -> Poly {
    let mut c: Vec<Fq> = (0..d).map(|_| Fq(below(r, k.q()))).collect();
    c.push(Fq::ONE);
    Poly::from_coeffs(c)
}

fn monic_squarefree(k: &FieldCtx, r: &mut ChaCha8Rng, d: usize) -> Poly {
    loop {
        let f = monic(k, r, d);
        if factor(k, &f).iter().all(|(_, e)| *e == 1) {
            return f;
        }
    }
}

fn product(k: &FieldCtx, parts: &[(&Poly, u64)]) -> Poly {
    parts.iter().fold(Poly::one(), |acc, (p, e)| acc.mul(k, &p.pow(k, *e)))
}

fn config(k: &FieldCtx, f: &Poly) -> Option<CurveConfig> {
    CurveConfig::new(k, f).ok()
}

/// `(a t + b)^n + lambda (c t + e)^n` for a random invertible substitution.
fn binomial_transform(k: &FieldCtx, r: &mut ChaCha8Rng, n: usize, lambda: Fq, affine: bool) -> Poly {
    loop {
        let (a, b) = (Fq(below(r, k.q())), Fq(below(r, k.q())));
        let (c, e) = if affine { (Fq::ZERO, Fq::ONE) } else { (Fq(below(r, k.q())), Fq(below(r, k.q()))) };
        if k.sub(k.mul(a, e), k.mul(b, c)).is_zero() {
            continue;
        }
        let l1 = Poly::from_coeffs(vec![b, a]);
        let l2 = Poly::from_coeffs(vec![e, c]);
        let f = l1.pow(k, n as u64).add(k, &l2.pow(k, n as u64).scale(k, lambda));
        let scale = nonzero(k, r);
        return f.scale(k, scale);
    }
}

fn fmt(k: &FieldCtx, f: &Poly) -> String {
    descentff_core::algebra::format_poly(k, f)
}

// ---------------------------------------------------------------------
// 1. minimal-height counts

struct Table1Run {
    label: &'static str,
    args: &'static [&'static str],
    counts: &'static [i64],
}

const TABLE1: &[Table1Run] = &[
    Table1Run { label: "d=2 over GF(7)", args: &["--p", "7", "--f", "t^2 + 1"], counts: &[6] },
    Table1Run { label: "d=3 over GF(25)", args: &["--p", "5", "--ext-degree", "2", "--f", "t^3 + 1"], counts: &[24] },
    Table1Run { label: "d=4 over GF(121)", args: &["--p", "11", "--ext-degree", "2", "--f", "t^4 + 1"], counts: &[54, 72] },
    Table1Run {
        label: "d=5 over GF(25)",
        args: &["--p", "5", "--ext-degree", "2", "--f", "2*t^5 + 2*t + 1"],
        counts: &[240],
    },
    Table1Run { label: "d=6 over GF(25)", args: &["--p", "5", "--ext-degree", "2", "--f", "t^6 + 1"], counts: &[240] },
];

/// Asserted integral-point counts and formula values per run.
struct Table1Data {
    points: Vec<Vec<i64>>,
    formulas: Vec<Vec<i64>>,
    shells: Vec<Vec<i64>>,
    errors: Vec<String>,
}

fn table1_data() -> &'static Table1Data {
    static DATA: OnceLock<Table1Data> = OnceLock::new();
    DATA.get_or_init(|| {
        let mut out = Table1Data { points: vec![], formulas: vec![], shells: vec![], errors: vec![] };
        for run in TABLE1 {
            let mut args = vec!["verify-table1"];
            args.extend_from_slice(run.args);
            let rep = cli(&args);
            let clauses = rep["clauses"].as_array().cloned().unwrap_or_default();
            let pick = |pat: &str| -> Vec<i64> {
                clauses
                    .iter()
                    .filter(|c| c["clause"].as_str().unwrap_or("").contains(pat) && c["asserted"] == true)
                    .filter_map(|c| c["lhs"].as_i64())
                    .collect()
            };
            let full = clauses
                .iter()
                .any(|c| c["clause"].as_str().unwrap_or("").starts_with("torsion groups full") && c["lhs"] == 1);
            if rep["status"] != "PASS" || !full {
                out.errors.push(format!("{}: status {} full {}", run.label, rep["status"], full));
            }
            let sorted = |mut v: Vec<i64>| {
                v.sort_unstable();
                v
            };
            out.points.push(sorted(pick(": integral points")));
            out.formulas.push(sorted(pick("descent formula")));
            out.shells.push(sorted(pick("shell")));
        }
        out
    })
}

fn criterion_1() -> Verdict {
    let data = table1_data();
    ensure(data.errors.is_empty(), || data.errors.join("; "))?;
    for (i, run) in TABLE1.iter().enumerate() {
        ensure(data.points[i] == run.counts, || format!("{}: points {:?}", run.label, data.points[i]))?;
        ensure(data.shells[i] == run.counts, || format!("{}: shells {:?}", run.label, data.shells[i]))?;
    }
    Ok(TABLE1.iter().map(|r| format!("{} {:?}", r.label, r.counts)).collect::<Vec<_>>().join(", "))
}

// ---------------------------------------------------------------------
// 2. exponential identities

fn criterion_2() -> Verdict {
    let rep = pillai_check();
    ensure_pass(&rep, "identities")?;
    let p2 = |e: u32| 1i64 << e;
    let p3 = |e: u32| 3i64.pow(e);
    let identities = [
        (6, p2(3) - p2(1), p3(2) - p3(1), LatticeName::A2Dual, rat(2, 3)),
        (24, p2(5) - p2(3), p3(3) - p3(1), LatticeName::D4Dual, int(1)),
        (240, p2(8) - p2(4), p3(5) - p3(1), LatticeName::E8, int(2)),
        (54, p2(6) - p2(3) - p2(1), p3(4) - p3(3), LatticeName::E6Dual, rat(4, 3)),
        (72, p2(6) + p2(3), p3(4) - p3(2), LatticeName::E6Dual, int(2)),
    ];
    let data = table1_data();
    let seen: Vec<i64> = data.points.iter().chain(&data.formulas).flatten().copied().collect();
    for (n, two, three, lattice, norm) in identities {
        ensure(two == n && three == n, || format!("{n}: powers give {two} and {three}"))?;
        let s = shell_count(&standard_lattice(lattice), norm) as i64;
        ensure(s == n, || format!("{n}: {} shell has {s}", lattice.name()))?;
        ensure(seen.contains(&n), || format!("{n}: not among the point and Picard counts {seen:?}"))?;
    }
    let sols: Vec<u128> = pillai_search(20).iter().map(|s| s.value).collect();
    ensure(sols == [54, 216], || format!("bounded search returned {sols:?}"))?;
    Ok(format!("5 identities, search to 20 gives {sols:?}"))
}

// ---------------------------------------------------------------------
// 3. counting identities per type

type Sampler = fn(&FieldCtx, &mut ChaCha8Rng) -> Poly;

const TYPES: &[([usize; 5], Sampler)] = &[
    ([1, 0, 0, 0, 1], |k, r| monic(k, r, 1).scale(k, nonzero(k, r))),
    ([0, 1, 0, 1, 0], |k, r| monic(k, r, 1).pow(k, 2).scale(k, nonzero(k, r))),
    ([0, 0, 2, 0, 0], |k, r| monic(k, r, 1).pow(k, 3).scale(k, nonzero(k, r))),
    ([2, 0, 0, 1, 0], |k, r| monic_squarefree(k, r, 2).scale(k, nonzero(k, r))),
    ([1, 1, 1, 0, 0], |k, r| {
        let (a, b) = (monic(k, r, 1), monic(k, r, 1));
        product(k, &[(&a, 1), (&b, 2)]).scale(k, nonzero(k, r))
    }),
    ([3, 0, 1, 0, 0], |k, r| monic_squarefree(k, r, 3).scale(k, nonzero(k, r))),
    ([0, 3, 0, 0, 0], |k, r| {
        let d = 2 + below(r, 2) as usize;
        monic_squarefree(k, r, d).pow(k, 2).scale(k, nonzero(k, r))
    }),
    ([2, 2, 0, 0, 0], |k, r| {
        let (q, l) = (monic_squarefree(k, r, 2), monic(k, r, 1));
        product(k, &[(&q, 1), (&l, 2)]).scale(k, nonzero(k, r))
    }),
    ([4, 1, 0, 0, 0], |k, r| monic_squarefree(k, r, 4).scale(k, nonzero(k, r))),
    ([6, 0, 0, 0, 0], |k, r| {
        let d = 5 + below(r, 2) as usize;
        monic_squarefree(k, r, d).scale(k, nonzero(k, r))
    }),
];

fn sample_type(k: &FieldCtx, r: &mut ChaCha8Rng, ty: [usize; 5], sampler: Sampler) -> Poly {
    loop {
        let f = sampler(k, r);
        if classify_type(k, &f).map(|t| t.0) == Ok(ty) {
            return f;
        }
    }
}

fn criterion_3() -> Verdict {
    let mut runs = 0;
    for p in [7u64, 13] {
        let k = FieldCtx::prime(p).unwrap();
        let mut r = rng(300 + p);
        for &(ty, sampler) in TYPES {
            for _ in 0..3 {
                let f = sample_type(&k, &mut r, ty, sampler);
                let cfg = config(&k, &f).ok_or_else(|| format!("{}: bad config", fmt(&k, &f)))?;
                let rep = verify_corsh2(&k, &cfg).map_err(|e| format!("{} over GF({p}): {e}", fmt(&k, &f)))?;
                ensure_pass(&rep, &format!("{} over GF({p})", fmt(&k, &f)))?;
                runs += 1;
            }
        }
    }
    let k1 = FieldCtx::prime(7).unwrap();
    let k2 = FieldCtx::new(7, 2).unwrap();
    let mut r = rng(349);
    for &(ty, sampler) in &TYPES[3..6] {
        let f = sample_type(&k1, &mut r, ty, sampler);
        let cfg = extend_config(&k1, &k2, &config(&k1, &f).unwrap()).unwrap();
        let rep = verify_corsh2(&k2, &cfg).map_err(|e| format!("{} over GF(49): {e}", fmt(&k1, &f)))?;
        ensure_pass(&rep, &format!("{} over GF(49)", fmt(&k1, &f)))?;
        runs += 1;
    }
    Ok(format!("{runs} curves across 10 types"))
}

// ---------------------------------------------------------------------
// 4. integral point bounds

fn pattern_two(k: &FieldCtx, r: &mut ChaCha8Rng) -> Poly {
    loop {
        let (d1, d2, d4) = (1 + below(r, 4) as usize, below(r, 2) as usize, below(r, 2) as usize);
        let d = d1 + 2 * d2 + 4 * d4;
        if d > 5 || d % 3 == 0 {
            continue;
        }
        let f = product(k, &[(&monic(k, r, d1), 1), (&monic(k, r, d2), 2), (&monic(k, r, d4), 4)]).scale(k, nonzero(k, r));
        if let Some(cfg) = config(k, &f) {
            if [3, 5].iter().all(|&i| cfg.di(i) == 0) && cfg.di(1) > 0 && cfg.d == d {
                return f;
            }
        }
    }
}

fn pattern_three(k: &FieldCtx, r: &mut ChaCha8Rng) -> Poly {
    loop {
        let (d1, d3) = (1 + below(r, 5) as usize, below(r, 2) as usize);
        let d = d1 + 3 * d3;
        if d > 5 || d % 2 == 0 {
            continue;
        }
        let f = product(k, &[(&monic(k, r, d1), 1), (&monic(k, r, d3), 3)]).scale(k, nonzero(k, r));
        if let Some(cfg) = config(k, &f) {
            if [2, 4, 5].iter().all(|&i| cfg.di(i) == 0) && cfg.di(1) > 0 && cfg.d == d {
                return f;
            }
        }
    }
}

fn criterion_4() -> Verdict {
    let mut runs = 0;
    for p in [5u64, 7] {
        let k = FieldCtx::prime(p).unwrap();
        let mut r = rng(400 + p);
        for sampler in [pattern_two as Sampler, pattern_three] {
            for _ in 0..20 {
                let f = sampler(&k, &mut r);
                let cfg = config(&k, &f).unwrap();
                let rep = verify_intbound(&k, &cfg).map_err(|e| format!("{} over GF({p}): {e}", fmt(&k, &f)))?;
                ensure_pass(&rep, &format!("{} over GF({p})", fmt(&k, &f)))?;
                runs += 1;
            }
        }
        for _ in 0..5 {
            let f = monic_squarefree(&k, &mut r, 2).scale(&k, nonzero(&k, &mut r));
            let cfg = config(&k, &f).unwrap();
            let rep = verify_intbound(&k, &cfg).map_err(|e| e.to_string())?;
            ensure_pass(&rep, &fmt(&k, &f))?;
            let n = enumerate_integral_points(&k, &cfg, None).unwrap().len();
            ensure(n <= 12, || format!("{}: {n} points", fmt(&k, &f)))?;
            let Some((big, c)) = stabilize(&k, &f, &[1, 2, 3]) else {
                return Err(format!("{} never stabilized", fmt(&k, &f)));
            };
            let stable = enumerate_integral_points(&big, &c, None).unwrap().len();
            let m = big.m();
            ensure(stable == 12, || format!("{}: stabilized count {stable} at m = {m}", fmt(&k, &f)))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} curves"))
}

// ---------------------------------------------------------------------
// 5. canonical heights

const HEIGHT_CURVES: &[(u64, &str)] = &[
    (5, "t^3 + 1"),
    (7, "t^2 + 1"),
    (7, "t^3 + 1"),
    (13, "t^2 + 1"),
    (7, "t^2"),
    (7, "t^3 + t^2"),
    (5, "t^4 + 4*t^2"),
    (7, "t^4 + t^3"),
    (5, "t^5 + t^2"),
    (7, "t^3"),
];

fn criterion_5() -> Verdict {
    let mut checked = 0;
    for &(p, fs) in HEIGHT_CURVES {
        let k = FieldCtx::prime(p).unwrap();
        let f = descentff_core::algebra::parse_poly(&k, fs).unwrap();
        let dc = sixth_power_free_decompose(&k, &f).unwrap();
        let e = Weierstrass::new(&f);
        let pts: Vec<PointE> =
            hits_to_points(&k, &search(&k, &f, SearchMode::Rational, 4, 6).unwrap()).iter().map(|p| p.to_point()).collect();
        let hh = |q: &PointE| -> Rat {
            if q.is_infinity() {
                int(0)
            } else {
                canonical_height(&k, q, &dc).unwrap().canonical
            }
        };
        for a in &pts {
            let h = hh(a);
            ensure(hh(&e.smul(&k, 2, a)) == h * int(4), || format!("{fs}: [2]P"))?;
            ensure(hh(&e.smul(&k, 3, a)) == h * int(9), || format!("{fs}: [3]P"))?;
            ensure(h >= int(0), || format!("{fs}: negative height"))?;
            let torsion = (1..=12).any(|n| e.smul(&k, n, a).is_infinity());
            ensure((h == int(0)) == torsion, || format!("{fs}: zero height vs torsion at {a:?}"))?;
            if dc.is_squarefree() {
                ensure(canonical_height(&k, a, &dc).unwrap().naive == h, || format!("{fs}: naive differs"))?;
            }
            for b in pts.iter().take(12) {
                let lhs = hh(&e.add(&k, a, b)) + hh(&e.sub(&k, a, b));
                ensure(lhs == (h + hh(b)) * int(2), || format!("{fs}: parallelogram"))?;
            }
            checked += 1;
        }
    }
    ensure(checked > 50, || format!("only {checked} points"))?;
    Ok(format!("{checked} points on {} curves", HEIGHT_CURVES.len()))
}

// ---------------------------------------------------------------------
// 6. descent maps

const DESCENT_CURVES: &[(u64, &str)] =
    &[(7, "t^2 + 1"), (7, "t^3 + 1"), (7, "t^3 + 2*t + 1"), (7, "t^4 + t^3"), (13, "t^3 + t^2"), (5, "t^5 + t^2")];

const CAP_CURVES: &[(u64, &str)] = &[
    (5, "t^2 + 1"),
    (7, "t^2 + 1"),
    (5, "t^3 + 1"),
    (7, "t^3 + 1"),
    (7, "t^3 + 2*t + 1"),
    (7, "t^3 + t^2"),
    (5, "t^4 + 1"),
    (7, "t^4 + 1"),
    (7, "t^5 + t^2"),
    (5, "t^6 + 3"),
];

fn criterion_6() -> Verdict {
    let mut pairs = 0;
    for &(p, fs) in DESCENT_CURVES {
        let k = FieldCtx::prime(p).unwrap();
        let cfg = config(&k, &descentff_core::algebra::parse_poly(&k, fs).unwrap()).unwrap();
        for kind in [MapKind::Phi2, MapKind::Phi3, MapKind::Phi3p] {
            let t = homomorphism_trials(&k, &cfg, kind, 500, 6).map_err(|e| format!("{fs} {kind:?}: {e}"))?;
            ensure(t.all_pass(), || format!("{fs} {kind:?}: {t:?}"))?;
            pairs += t.pairs;
        }
    }
    let mut caps = 0;
    for &(p, fs) in CAP_CURVES {
        let k = FieldCtx::prime(p).unwrap();
        let cfg = config(&k, &descentff_core::algebra::parse_poly(&k, fs).unwrap()).unwrap();
        match verify_fiber_caps(&k, &cfg) {
            Ok(rep) => {
                ensure_pass(&rep, &format!("{fs} over GF({p})"))?;
                caps += rep.clauses.iter().filter(|c| c.asserted).count();
            }
            Err(Error::HypothesisViolated(_)) => {}
            Err(e) => return Err(format!("{fs}: {e}")),
        }
    }
    Ok(format!("{pairs} pairs, {caps} fiber clauses"))
}

// ---------------------------------------------------------------------
// 7. W-set bijection

fn stabilize(k1: &FieldCtx, f: &Poly, degrees: &[u32]) -> Option<(FieldCtx, CurveConfig)> {
    let cfg = config(k1, f)?;
    for &m in degrees {
        let big = FieldCtx::new(k1.p(), m).ok()?;
        let c = extend_config(k1, &big, &cfg).ok()?;
        if torsion_stabilized(&big, &c).ok()? {
            return Some((big, c));
        }
    }
    None
}

fn criterion_7() -> Verdict {
    let mut done: BTreeMap<usize, usize> = BTreeMap::new();
    let check = |k1: &FieldCtx, f: &Poly, degrees: &[u32]| -> Result<bool, String> {
        let Some((big, cfg)) = stabilize(k1, f, degrees) else { return Ok(false) };
        let rep = verify_wbij(&big, &cfg).map_err(|e| format!("{}: {e}", fmt(k1, f)))?;
        ensure_pass(&rep, &format!("{} over GF({}^{})", fmt(k1, f), big.p(), big.m()))?;
        let eq = rep.clauses.iter().any(|c| c.id.starts_with("2(#W") && c.asserted && c.pass);
        ensure(eq, || format!("{}: bijection clause not asserted", fmt(k1, f)))?;
        Ok(true)
    };
    let k7 = FieldCtx::prime(7).unwrap();
    let mut r = rng(700);
    for d in [2usize, 3] {
        let degrees: &[u32] = if d == 2 { &[1, 2] } else { &[1, 2, 3, 6] };
        let mut tries = 0;
        while done.get(&d).copied().unwrap_or(0) < 3 {
            tries += 1;
            ensure(tries < 20, || format!("d = {d}: too few stabilizing samples"))?;
            let f = monic_squarefree(&k7, &mut r, d).scale(&k7, nonzero(&k7, &mut r));
            if check(&k7, &f, degrees)? {
                *done.entry(d).or_default() += 1;
            }
        }
    }
    let k11 = FieldCtx::prime(11).unwrap();
    for _ in 0..3 {
        let lambda = nonzero(&k11, &mut r);
        let f = binomial_transform(&k11, &mut r, 4, lambda, true);
        ensure(check(&k11, &f, &[2])?, || format!("{} did not stabilize over GF(121)", fmt(&k11, &f)))?;
        *done.entry(4).or_default() += 1;
    }
    let k5 = FieldCtx::prime(5).unwrap();
    for d in [5usize, 6] {
        while done.get(&d).copied().unwrap_or(0) < 3 {
            let lambda = if d == 5 { Fq(1 + 3 * below(&mut r, 2)) } else { nonzero(&k5, &mut r) };
            let f = binomial_transform(&k5, &mut r, 6, lambda, false);
            if f.deg() as usize != d {
                continue;
            }
            ensure(check(&k5, &f, &[2])?, || format!("{} did not stabilize over GF(25)", fmt(&k5, &f)))?;
            *done.entry(d).or_default() += 1;
        }
    }
    Ok(done.iter().map(|(d, n)| format!("d={d}: {n}")).collect::<Vec<_>>().join(", "))
}

// ---------------------------------------------------------------------
// 8. Davenport

fn random_poly(k: &FieldCtx, r: &mut ChaCha8Rng, max_deg: i64) -> Poly {
    if max_deg < 0 {
        return Poly::zero();
    }
    Poly::from_coeffs((0..=max_deg).map(|_| Fq(below(r, k.q()))).collect())
}

fn criterion_8() -> Verdict {
    let k = FieldCtx::prime(11).unwrap();
    let mut r = rng(800);
    let three_halves = k.div(k.from_int(3), k.from_int(2));
    let mut low = BTreeMap::new();
    for m in 1..=3i64 {
        let mut accepted = 0;
        let mut drawn = 0;
        let mut smallest = i64::MAX;
        while accepted < 1000 {
            drawn += 1;
            ensure(drawn < 200_000, || format!("M = {m}: precondition too rare"))?;
            let s = random_poly(&k, &mut r, m - 1).add(&k, &Poly::monomial(Fq::ONE, m as usize));
            let da = below(&mut r, m as u64) as i64;
            let a = random_poly(&k, &mut r, da);
            let db = below(&mut r, 2 * m as u64) as i64 - 1;
            let b = random_poly(&k, &mut r, db);
            let c = nonzero(&k, &mut r);
            let g = s.square(&k).add(&k, &a).scale(&k, k.mul(c, c));
            let h = s.pow(&k, 3).add(&k, &a.mul(&k, &s).scale(&k, three_halves)).add(&k, &b).scale(&k, k.pow(c, 3));
            match check_davenport(&k, &g, &h) {
                Ok(ok) => {
                    ensure(ok, || format!("M = {m}: g = {}, h = {}", fmt(&k, &g), fmt(&k, &h)))?;
                    smallest = smallest.min(g.pow(&k, 3).sub(&k, &h.square(&k)).deg());
                    accepted += 1;
                }
                Err(_) => continue,
            }
        }
        low.insert(m, smallest);
    }
    Ok(format!("3000 samples, smallest deg(g^3 - h^2) per M: {low:?}"))
}

// ---------------------------------------------------------------------
// 9. infrastructure properties

fn random_place(c: &AuxCurve, k: &FieldCtx, r: &mut ChaCha8Rng) -> Place {
    if below(r, 5) == 0 {
        let inf = c.infinite_places(k);
        return inf[below(r, inf.len() as u64) as usize].clone();
    }
    loop {
        let d = 1 + below(r, 2) as usize;
        let pi = monic(k, r, d);
        if is_irreducible(k, &pi) {
            let ps = c.places_above(k, &pi);
            return ps[below(r, ps.len() as u64) as usize].clone();
        }
    }
}

fn random_divisor(c: &AuxCurve, k: &FieldCtx, r: &mut ChaCha8Rng) -> Divisor {
    let mut d = Divisor::zero();
    for _ in 0..3 {
        let p = random_place(c, k, r);
        d.add_at(&p, below(r, 5) as i64 - 2);
    }
    d
}

fn random_function(c: &AuxCurve, k: &FieldCtx, r: &mut ChaCha8Rng) -> FunctionRep {
    loop {
        let co: Vec<Poly> = (0..c.n)
            .map(|_| {
                let d = below(r, 4) as i64;
                random_poly(k, r, d)
            })
            .collect();
        let dd = below(r, 3) as i64;
        let den = random_poly(k, r, dd);
        if !den.is_zero() && co.iter().any(|x| !x.is_zero()) {
            return FunctionRep::new(k, co, den);
        }
    }
}

fn criterion_9() -> Verdict {
    let k = FieldCtx::prime(7).unwrap();
    let mut r = rng(900);
    let (mut rr, mut principal, mut groups, mut ext) = (0, 0, 0, 0);
    let mut curves = 0;
    while curves < 30 {
        let d = 1 + below(&mut r, 6) as usize;
        let f = monic(&k, &mut r, d).scale(&k, nonzero(&k, &mut r));
        let Some(cfg) = config(&k, &f) else { continue };
        let fs = fmt(&k, &f);
        for (kind, n) in [(AuxKind::C2, 2u64), (AuxKind::C3, 3), (AuxKind::C3p, 3)] {
            let Ok(c) = AuxCurve::new(&k, &cfg, kind) else { continue };
            let g = c.genus as i64;
            let kd = c.canonical_divisor(&k);
            ensure(kd.deg() == 2 * g - 2 && c.l(&k, &kd) as i64 == g, || format!("{fs} {kind:?}: canonical divisor"))?;
            for _ in 0..3 {
                let dv = random_divisor(&c, &k, &mut r);
                let lhs = c.l(&k, &dv) as i64 - c.l(&k, &kd.sub(&dv)) as i64;
                ensure(lhs == dv.deg() - g + 1, || format!("{fs} {kind:?}: Riemann-Roch at {dv:?}"))?;
                rr += 1;
                let h = random_function(&c, &k, &mut r);
                let div = c.divisor_of_function(&k, &h).map_err(|e| e.to_string())?;
                ensure(div.deg() == 0 && c.is_principal(&k, &div).is_some(), || format!("{fs} {kind:?}: principal"))?;
                principal += 1;
            }
            if kind == AuxKind::C3p {
                continue;
            }
            let support = if n == 2 { support_d2(&k, &cfg, &c) } else { support_d3(&k, &cfg, &c) };
            let qp = QPic::new(&k, &c, n, &support).map_err(|e| e.to_string())?;
            let t = qp.torsion(&qp.sylow().map_err(|e| e.to_string())?);
            let plain = pic_torsion(&k, &c, n).map_err(|e| e.to_string())?;
            ensure(t.len() == (n as usize).pow(t.dim()), || format!("{fs} {kind:?}: size {}", t.len()))?;
            for a in &t.classes {
                ensure(t.contains(&qp.neg(a)) && qp.mul(n, a) == qp.zero(), || format!("{fs}: inverse"))?;
                for b in t.classes.iter().take(9) {
                    ensure(t.contains(&qp.add(a, b)) && qp.add(a, b) == qp.add(b, a), || format!("{fs}: closure"))?;
                }
            }
            let r_places = support.len() as u32;
            ensure(t.dim() <= plain.dim() + r_places.saturating_sub(1), || format!("{fs} {kind:?}: dimension bound"))?;
            groups += 1;
            if d <= 4 {
                let k2 = FieldCtx::new(7, 2).unwrap();
                let cfg2 = extend_config(&k, &k2, &cfg).unwrap();
                let c2 = AuxCurve::new(&k2, &cfg2, kind).unwrap();
                let big = pic_torsion(&k2, &c2, n).map_err(|e| e.to_string())?.len();
                ensure(big >= plain.len() && big % plain.len() == 0, || format!("{fs} {kind:?}: {} then {big}", plain.len()))?;
                ext += 1;
            }
        }
        curves += 1;
    }
    Ok(format!("{rr} Riemann-Roch, {principal} principal, {groups} torsion groups, {ext} extension checks"))
}

// ---------------------------------------------------------------------

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("minimal-height counts match the lattice shells", criterion_1),
        ("exponential identities", criterion_2),
        ("counting identities per type", criterion_3),
        ("integral point bounds", criterion_4),
        ("canonical height is a quadratic form", criterion_5),
        ("descent maps and fiber caps", criterion_6),
        ("W-set bijection", criterion_7),
        ("Davenport inequality", criterion_8),
        ("infrastructure properties", criterion_9),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if only.is_some_and(|o| o != i + 1) {
            continue;
        }
        let start = Instant::now();
        let v = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match v {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                all = false;
                println!("criterion {} {name}: FAIL ({why}) [{secs:.1}s]", i + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
