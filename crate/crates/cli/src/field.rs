//! Base field, curve and extension-degree stabilization.

use descentff_core::algebra::{parse_poly, FieldCtx};
use descentff_core::descent::{extend_config, geometric_torsion_size};
use descentff_core::model::CurveConfig;
use descentff_core::picard::pic_qd_torsion;
use descentff_core::{Error, Result};
use serde_json::{json, Value};

use crate::args::CurveArgs;

/// Largest extension degree tried by `--stabilize`.
pub const STABILIZE_CAP: u32 = 12;

pub struct Setup {
    pub k: FieldCtx,
    pub cfg: CurveConfig,
    pub base_m: u32,
    pub steps: Vec<Value>,
}

impl Setup {
    pub fn describe(&self) -> Value {
        let mut v = json!({
            "p": self.k.p(),
            "m": self.base_m,
            "extDegreeUsed": self.k.m(),
        });
        if !self.steps.is_empty() {
            v["stabilization"] = Value::Array(self.steps.clone());
        }
        v
    }
}

pub fn base(args: &CurveArgs) -> Result<(FieldCtx, CurveConfig)> {
    let k = FieldCtx::new(args.field.p, args.field.m)?;
    let f = parse_poly(&k, &args.f)?;
    let cfg = CurveConfig::new(&k, &f)?;
    Ok((k, cfg))
}

/// Torsion sizes over `k` and whether they are the geometric ones.
pub type Probe = dyn Fn(&FieldCtx, &CurveConfig) -> Result<(Vec<u128>, bool)>;

/// `#Pic(C_2, Q.D_2)[2]` and `#Pic(C_3, Q.D_3)[3]`.
pub fn torsion_probe(k: &FieldCtx, cfg: &CurveConfig) -> Result<(Vec<u128>, bool)> {
    use descentff_core::auxcurves::{AuxCurve, AuxKind};
    use descentff_core::picard::{support_d2, support_d3};
    let c2 = AuxCurve::new(k, cfg, AuxKind::C2)?;
    let c3 = AuxCurve::new(k, cfg, AuxKind::C3)?;
    let s2 = support_d2(k, cfg, &c2);
    let s3 = support_d3(k, cfg, &c3);
    let t2 = pic_qd_torsion(k, &c2, &s2, 2)?.len() as u128;
    let t3 = pic_qd_torsion(k, &c3, &s3, 3)?.len() as u128;
    let full = t2 as i128 == geometric_torsion_size(&c2, &s2, 2) && t3 as i128 == geometric_torsion_size(&c3, &s3, 3);
    Ok((vec![t2, t3], full))
}

/// The curve over the field selected by `--stabilize`: the degree is
/// doubled until the probe reports geometric torsion, or two consecutive
/// degrees agree, or the cap is reached.
pub fn setup(args: &CurveArgs, probe: &Probe) -> Result<Setup> {
    let (k0, cfg0) = base(args)?;
    let m = args.field.m;
    if !args.field.stabilize {
        return Ok(Setup { k: k0, cfg: cfg0, base_m: m, steps: Vec::new() });
    }
    let mut steps = Vec::new();
    let mut best: Option<(FieldCtx, CurveConfig)> = None;
    let mut prev: Option<Vec<u128>> = None;
    let mut e = m;
    while e <= STABILIZE_CAP {
        let k = FieldCtx::new(args.field.p, e)?;
        let cfg = if e == m { cfg0.clone() } else { extend_config(&k0, &k, &cfg0)? };
        let (key, full) = match probe(&k, &cfg) {
            Ok(r) => r,
            Err(err) if best.is_some() => {
                steps.push(json!({ "extDegree": e, "error": err.to_string() }));
                break;
            }
            Err(err) => return Err(err),
        };
        steps.push(json!({ "extDegree": e, "counts": key.iter().map(|c| c.to_string()).collect::<Vec<_>>(), "full": full }));
        let agree = prev.as_ref() == Some(&key);
        if agree {
            // the smaller degree already had these counts
            break;
        }
        best = Some((k, cfg));
        prev = Some(key);
        if full {
            break;
        }
        e *= 2;
    }
    let (k, cfg) = best.ok_or_else(|| Error::InvalidField(format!("extension degree {m} exceeds the cap {STABILIZE_CAP}")))?;
    Ok(Setup { k, cfg, base_m: m, steps })
}
