use descentff_core::algebra::{format_elem, format_poly, parse_poly, FieldCtx, RatFunc};
use descentff_core::auxcurves::Place;
use descentff_core::descent::{
    fiber_census, homomorphism_trials, integral_stratum, points_with_height, verify_corsh2, verify_fiber_caps,
    verify_intbound, verify_table1, verify_wbij, DescentSetup, MapKind, Relation, Report,
};
use descentff_core::lattice::{
    mod2_fibers, mod_sqrt3_fibers, pillai_check, pillai_search, shell, sqrt3_congruence_holds, standard_lattice,
    LatticeName, ResidueCensus,
};
use descentff_core::model::{classify_type, davenport_height_bound, genus_c2, genus_c3, kodaira_fibers, BasePlace, CurveConfig};
use descentff_core::mordell::{canonical_height, PointE, SearchMode, Weierstrass};
use descentff_core::picard::{PicClass, QPic};
use descentff_core::rat::{rat, Rat};
use descentff_core::{Error, Result};
use std::collections::BTreeMap;
use serde_json::{json, Map, Value};

use crate::args::{Cli, Command, CurveArg, CurveArgs, MapArg, ModeArg};
use crate::field::{self, torsion_probe, Setup};
use crate::{batch, error_body, Body};

pub(crate) fn dispatch(cli: &Cli) -> Body {
    let r = match &cli.command {
        Command::Batch { manifest } => return batch::run(cli, manifest),
        Command::Lattice { name, norm, residues, vectors } => lattice(cli, name, norm.as_deref(), *residues, *vectors),
        Command::Pillai { max_exp } => pillai(*max_exp),
        Command::Classify(c) => classify(c),
        Command::Enumerate { curve, mode, max_height } => enumerate(curve, *mode, max_height),
        Command::Height { curve, x, y } => height(curve, x, y),
        Command::Descent { curve, map, x, y, trials, caps } => {
            descent(cli, curve, *map, x.as_deref().zip(y.as_deref()), *trials, *caps)
        }
        Command::Picard { curve, curve_kind, n, w_bound, plain } => {
            picard(curve, *curve_kind, *n, w_bound.as_deref(), *plain)
        }
        Command::VerifyCorsh2(c) => verifier(c, verify_corsh2),
        Command::VerifyIntbound(c) => verifier(c, verify_intbound),
        Command::VerifyTable1(c) => verifier(c, verify_table1),
        Command::Wbij(c) => verifier(c, verify_wbij),
    };
    r.unwrap_or_else(|e| error_body(&e, error_kind(&e)))
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::HypothesisViolated(_) | Error::PreconditionUnmet(_) | Error::TypeNotCovered => "hypothesis",
        Error::Parse(_) => "parse",
        Error::InvalidField(_) => "field",
        Error::SearchTooLarge { .. } | Error::GenusTooLarge(_) | Error::DegreeTooLarge(_) => "infeasible",
        _ => "input",
    }
}

pub(crate) fn fmt_rat(r: Rat) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("not a rational number: {s}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>().map_err(|_| bad())?, d.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if d == 0 {
        return Err(bad());
    }
    Ok(rat(n, d))
}

fn parse_ratfunc(k: &FieldCtx, s: &str) -> Result<RatFunc> {
    match s.split_once('/') {
        Some((n, d)) => RatFunc::new(k, &parse_poly(k, n)?, &parse_poly(k, d)?),
        None => Ok(RatFunc::from_poly(&parse_poly(k, s)?)),
    }
}

fn fmt_ratfunc(k: &FieldCtx, r: &RatFunc) -> String {
    if r.den.is_one() {
        format_poly(k, &r.num)
    } else {
        format!("({}) / ({})", format_poly(k, &r.num), format_poly(k, &r.den))
    }
}

fn fmt_place(k: &FieldCtx, p: &Place) -> String {
    let base = if p.inf { "inf".to_string() } else { format!("({})", format_poly(k, &p.pi)) };
    format!("{base}#{}", p.idx)
}

fn fmt_class(k: &FieldCtx, qp: &QPic, c: &PicClass) -> Value {
    let frac: Vec<String> =
        c.frac.iter().zip(&qp.support).filter(|(a, _)| **a != 0).map(|(a, p)| format!("{a}/{} {}", qp.n, fmt_place(k, p))).collect();
    let eff: Vec<String> = c.class.eff.coeffs.iter().map(|(p, m)| format!("{m} {}", fmt_place(k, p))).collect();
    json!({ "fractional": frac, "effective": eff, "r": c.class.r })
}

fn field_only(k: &FieldCtx) -> Value {
    json!({ "p": k.p(), "m": k.m(), "extDegreeUsed": k.m() })
}

fn classify(args: &CurveArgs) -> Result<Body> {
    let s = field::setup(args, &torsion_probe)?;
    let (k, cfg) = (&s.k, &s.cfg);
    let mut b = Body::new();
    b.field = Some(s.describe());
    b.set("type", classify_type(k, &cfg.f)?.to_string());
    b.set("degree", cfg.d);
    b.set("unit", format_elem(k, cfg.decomp.unit));
    let parts: serde_json::Map<String, Value> =
        (1..=5).map(|i| (format!("f{i}"), Value::from(format_poly(k, cfg.fi(i))))).collect();
    b.set("parts", Value::Object(parts));
    b.set("chi", cfg.chi);
    b.set("genusC2", genus_or_null(genus_c2(&cfg.decomp)));
    b.set("genusC3", genus_or_null(genus_c3(&cfg.decomp)));
    b.set("davenportBound", davenport_height_bound(cfg).map(|h| Value::from(fmt_rat(h))).unwrap_or(Value::Null));
    let fibers: Vec<Value> = kodaira_fibers(cfg)
        .iter()
        .map(|f| {
            let place = match &f.place {
                BasePlace::Finite(pi) => format_poly(k, pi),
                BasePlace::Infinity => "inf".into(),
            };
            json!({ "place": place, "kind": f.kind.name() })
        })
        .collect();
    b.set("fibers", fibers);
    Ok(b)
}

fn genus_or_null(g: Result<usize>) -> Value {
    g.map(Value::from).unwrap_or(Value::Null)
}

fn enumerate(args: &CurveArgs, mode: ModeArg, max_height: &str) -> Result<Body> {
    let s = field::setup(args, &torsion_probe)?;
    let (k, cfg) = (&s.k, &s.cfg);
    let cap = parse_rat(max_height)?;
    let mode = match mode {
        ModeArg::Rational => SearchMode::Rational,
        ModeArg::XRational => SearchMode::XRational,
        ModeArg::YRational => SearchMode::YRational,
    };
    let pts = points_with_height(k, cfg, mode, cap, |_| true)?;
    let mut b = Body::new();
    b.field = Some(s.describe());
    b.set("maxHeight", fmt_rat(cap));
    b.set("count", pts.iter().map(|p| p.count).sum::<usize>());
    let mut by_height: BTreeMap<Rat, usize> = BTreeMap::new();
    for p in &pts {
        *by_height.entry(p.canonical).or_default() += p.count;
    }
    let by_height: Map<String, Value> = by_height.into_iter().map(|(h, c)| (fmt_rat(h), Value::from(c))).collect();
    b.set("byHeight", by_height);
    b.set("hits", pts.len());
    let list: Vec<Value> = pts
        .iter()
        .map(|p| {
            json!({
                "x": format_poly(k, &p.x),
                "y": format_poly(k, &p.y),
                "c": format_elem(k, p.c),
                "count": p.count,
                "naive": fmt_rat(p.naive),
                "canonical": fmt_rat(p.canonical),
            })
        })
        .collect();
    b.set("hitList", list);
    Ok(b)
}

fn height(args: &CurveArgs, x: &str, y: &str) -> Result<Body> {
    let (k, cfg) = field::base(args)?;
    let p = PointE::Finite { x: parse_ratfunc(&k, x)?, y: parse_ratfunc(&k, y)? };
    if !Weierstrass::new(&cfg.f).contains(&k, &p) {
        return Err(Error::NotOnCurve);
    }
    let h = canonical_height(&k, &p, &cfg.decomp)?;
    let mut b = Body::new();
    b.field = Some(field_only(&k));
    b.set("x", fmt_ratfunc(&k, p.x().unwrap()));
    b.set("y", fmt_ratfunc(&k, p.y().unwrap()));
    b.set("naive", fmt_rat(h.naive));
    b.set("canonical", fmt_rat(h.canonical));
    b.set("n2", h.n2);
    b.set("n3", h.n3);
    b.set("n4", h.n4);
    Ok(b)
}

fn map_kind(m: MapArg) -> MapKind {
    match m {
        MapArg::Phi2 => MapKind::Phi2,
        MapArg::Phi3 => MapKind::Phi3,
        MapArg::Phi3p => MapKind::Phi3p,
    }
}

fn descent(cli: &Cli, args: &CurveArgs, map: MapArg, point: Option<(&str, &str)>, trials: usize, caps: bool) -> Result<Body> {
    let s: Setup = field::setup(args, &torsion_probe)?;
    let (k, cfg) = (&s.k, &s.cfg);
    let kind = map_kind(map);
    let setup = DescentSetup::new(k, cfg, kind)?;
    let qp = setup.qpic(k)?;
    let mut b = Body::new();
    b.field = Some(s.describe());
    b.set("map", kind.name());
    let mut rep = Report::new("descent");
    if let Some((x, y)) = point {
        let p = PointE::Finite { x: parse_ratfunc(k, x)?, y: parse_ratfunc(k, y)? };
        let target = if kind == MapKind::Phi3p { Weierstrass::new(&cfg.f).isogenous(k) } else { Weierstrass::new(&cfg.f) };
        if !target.contains(k, &p) {
            return Err(Error::NotOnCurve);
        }
        let class = setup.image(&qp, &p)?;
        b.set("isZero", class == qp.zero());
        b.set("class", fmt_class(k, &qp, &class));
    } else if kind != MapKind::Phi3p {
        let pts: Vec<_> = integral_stratum(k, cfg)?.iter().flat_map(|p| p.points(k)).collect();
        let census = fiber_census(k, cfg, kind, &pts)?;
        b.set("points", pts.len());
        b.set("fiberSizes", census.sizes());
        b.set("hitsZero", census.hits_zero);
    }
    if trials > 0 {
        let t = homomorphism_trials(k, cfg, kind, trials, cli.common.seed)?;
        rep.check("random pairs: phi(P + Q) = phi(P) + phi(Q)", t.additive as i128, Relation::Eq, t.pairs as i128, k.m());
        rep.check("random points: kernel elements map to 0", t.kernel_zero as i128, Relation::Eq, t.kernel_trials as i128, k.m());
    }
    if caps {
        rep.merge(verify_fiber_caps(k, cfg)?);
    }
    if !rep.clauses.is_empty() {
        b.report = Some(rep.finish());
    }
    Ok(b)
}

fn picard(args: &CurveArgs, which: CurveArg, n: u64, w_bound: Option<&str>, plain: bool) -> Result<Body> {
    let kind = match which {
        CurveArg::C2 => MapKind::Phi2,
        CurveArg::C3 => MapKind::Phi3,
        CurveArg::C3p => MapKind::Phi3p,
    };
    let bound = w_bound.map(parse_rat).transpose()?;
    let probe = move |k: &FieldCtx, cfg: &CurveConfig| -> Result<(Vec<u128>, bool)> {
        let (set, full) = torsion_of(k, cfg, kind, n, plain)?;
        Ok((vec![set as u128], full))
    };
    let s = field::setup(args, &probe)?;
    let (k, cfg) = (&s.k, &s.cfg);
    let mut setup = DescentSetup::new(k, cfg, kind)?;
    if plain {
        setup.support.clear();
    }
    let qp = QPic::new(k, &setup.curve, n, &setup.support)?;
    let syl = qp.sylow()?;
    let tors = qp.torsion(&syl);
    let classes = match bound {
        Some(bd) => qp.w_set(&tors, bd),
        None => tors.classes.clone(),
    };
    let mut b = Body::new();
    b.field = Some(s.describe());
    b.set("curve", setup.curve.kind.name());
    b.set("genus", setup.curve.genus);
    b.set("n", n);
    b.set("support", setup.support.iter().map(|p| fmt_place(k, p)).collect::<Vec<_>>());
    if let Some(bd) = bound {
        b.set("wBound", fmt_rat(bd));
    }
    b.set("cardinality", classes.len());
    b.set("extDegreeUsed", k.m());
    b.set("classes", classes.iter().map(|c| fmt_class(k, &qp, c)).collect::<Vec<_>>());
    Ok(b)
}

fn torsion_of(k: &FieldCtx, cfg: &CurveConfig, kind: MapKind, n: u64, plain: bool) -> Result<(usize, bool)> {
    let mut setup = DescentSetup::new(k, cfg, kind)?;
    if plain {
        setup.support.clear();
    }
    let qp = QPic::new(k, &setup.curve, n, &setup.support)?;
    let len = qp.torsion(&qp.sylow()?).len();
    let full = len as i128 == descentff_core::descent::geometric_torsion_size(&setup.curve, &setup.support, n);
    Ok((len, full))
}

fn verifier(args: &CurveArgs, f: fn(&FieldCtx, &CurveConfig) -> Result<Report>) -> Result<Body> {
    let s = field::setup(args, &torsion_probe)?;
    let rep = f(&s.k, &s.cfg)?;
    let mut b = Body::new();
    b.field = Some(s.describe());
    b.set("subject", rep.subject.clone());
    b.report = Some(rep);
    Ok(b)
}

fn census_json(c: &ResidueCensus) -> Value {
    json!({ "vectors": c.vectors, "classes": c.classes(), "fiberSizes": c.sizes, "zeroHit": c.zero_hit })
}

fn lattice(cli: &Cli, name: &str, norm: Option<&str>, residues: bool, vectors: bool) -> Result<Body> {
    let lname = LatticeName::parse(name).ok_or_else(|| Error::Parse(format!("unknown lattice {name}; expected A2*, D4*, E6* or E8")))?;
    let l = standard_lattice(lname);
    let norm = match norm {
        Some(s) => parse_rat(s)?,
        None => l.min_norm,
    };
    let sh = shell(&l, norm);
    let mut b = Body::new();
    b.set("name", lname.name());
    b.set("rank", l.rank);
    b.set("minNorm", fmt_rat(l.min_norm));
    b.set("norm", fmt_rat(norm));
    b.set("count", sh.vectors.len());
    if vectors {
        b.set("vectors", sh.vectors.clone());
    }
    if residues {
        let m2 = mod2_fibers(&l);
        let m3 = mod_sqrt3_fibers(&l);
        b.set("mod2", census_json(&m2));
        b.set("modSqrtMinus3", census_json(&m3));
        let mut rep = Report::new("residues of minimal vectors");
        let uniform = |c: &ResidueCensus, m: usize| i128::from(c.is_uniform(m) && !c.zero_hit);
        rep.check("L_min -> L/2L: 2-to-1 onto nonzero classes", uniform(&m2, 2), Relation::Eq, 1, 1);
        rep.check("L_min -> L/sqrt(-3)L: 3-to-1 onto nonzero classes", uniform(&m3, 3), Relation::Eq, 1, 1);
        let cong = sqrt3_congruence_holds(&l, 100, cli.common.seed);
        rep.check("v = sqrt(-3) v mod 2L on 100 random vectors", i128::from(cong), Relation::Eq, 1, 1);
        rep.check("zeta3 action: Z^2 + Z + 1 = 0, isometry", i128::from(l.zeta_is_valid()), Relation::Eq, 1, 1);
        b.report = Some(rep.finish());
    }
    Ok(b)
}

fn pillai(max_exp: u32) -> Result<Body> {
    if !(1..=60).contains(&max_exp) {
        return Err(Error::PreconditionUnmet("--max-exp must be between 1 and 60".into()));
    }
    let sols = pillai_search(max_exp);
    let mut b = Body::new();
    b.set("maxExp", max_exp);
    let list: Vec<Value> = sols
        .iter()
        .map(|s| {
            json!({
                "value": s.value.to_string(),
                "identity": format!("{} = 2^{} - 2^{} - 2^{} = 3^{} - 3^{}", s.value, s.x, s.y, s.z, s.v, s.w),
            })
        })
        .collect();
    b.set("solutions", list);
    let mut rep = pillai_check();
    if max_exp >= 8 {
        let values: Vec<u128> = sols.iter().map(|s| s.value).collect();
        rep.check("bounded search: number of solutions", values.len() as i128, Relation::Eq, 2, 1);
        let expected = i128::from(values == [54, 216]);
        rep.check("bounded search: solutions are 54 and 216", expected, Relation::Eq, 1, 1);
    }
    b.report = Some(rep.finish());
    Ok(b)
}
