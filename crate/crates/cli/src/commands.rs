use crate::{MethodArg, Output};
use hecke_core::linalg::Method;
use hecke_core::ramified::{extended_intertwiner, fmt_components, good_root_data_for, DeltaCharacter};
use hecke_core::rational::{fmt_q, parse_vec};
use hecke_core::regions::{self, attach_exceptional, load_tables, load_zero_regions, zero_cs_membership};
use hecke_core::rootsys::{parse_group, CartanType, RootDatum, WeylGroup};
use hecke_core::strings::{reconstructs, render_nu, render_orbit, unitary_via_strings, StringsVerdict};
use hecke_core::wrep::Hecke;
use hecke_core::{Error, Result, Q};
use serde_json::{json, Value};

pub fn qs(v: &[Q]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(fmt_q(x))).collect())
}

fn group_name(t: CartanType, rank: usize) -> String {
    match t {
        CartanType::A | CartanType::B | CartanType::C | CartanType::D => format!("{t}{rank}"),
        _ => t.to_string(),
    }
}

/// Type, rank and a parameter of the right length.
fn parse_point(cartan_type: &str, rank: usize, chi: &str) -> Result<(CartanType, RootDatum, Vec<Q>)> {
    let t: CartanType = cartan_type.parse()?;
    let d = RootDatum::build(t, rank)?;
    let chi = parse_vec(chi)?;
    if chi.len() != d.ambient_dim {
        return Err(Error::DimensionMismatch { expected: d.ambient_dim, got: chi.len() });
    }
    Ok((t, d, chi))
}

fn operator_detail(h: &Hecke, chi: &[Q], prefilter: bool, relevant: bool) -> Result<(bool, Value)> {
    let r = h.unitarity(chi, Method::ExactLdl, prefilter)?;
    let negative: Vec<&str> = r.per_type.iter().filter(|s| !s.psd()).map(|s| s.label.as_str()).collect();
    let mut detail = json!({
        "chi_dominant": qs(&r.chi_dominant),
        "signature": {
            "positive": r.signature.n_positive,
            "zero": r.signature.n_zero,
            "negative": r.signature.n_negative,
        },
        "negative_types": negative,
        "certificate": r.signature.method.name(),
    });
    if let Some(f) = r.float_psd {
        detail["float_psd"] = json!(f);
    }
    if relevant {
        detail["relevant_suffice"] = json!(h.relevant_suffice_check(chi)?);
    }
    Ok((r.signature.psd, detail))
}

fn strings_detail(s: &StringsVerdict, chi: &[Q]) -> Value {
    let d = &s.decomposition;
    let factors: Vec<Value> = s
        .per_factor
        .iter()
        .map(|(f, ok)| json!({ "centralizer": f.to_string(), "nu": qs(&f.nu), "unitary": ok }))
        .collect();
    json!({
        "orbit": render_orbit(d),
        "nu": render_nu(d),
        "partition": d.orbit_partition,
        "factors": factors,
        "reconstructs": reconstructs(d, chi),
    })
}

pub fn unitary(
    cartan_type: &str,
    rank: usize,
    chi: &str,
    method: MethodArg,
    delta: Option<&str>,
    prefilter: bool,
    relevant: bool,
) -> Result<Output> {
    let (t, d, chi) = parse_point(cartan_type, rank, chi)?;
    let group = group_name(t, rank);
    if let Some(delta) = delta {
        let delta: DeltaCharacter = delta.parse()?;
        if !delta.is_trivial() {
            if method != MethodArg::Operator {
                return Err(Error::Unsupported("a nontrivial δ needs --method operator".into()));
            }
            return extended(&group, t, rank, &delta, &chi);
        }
    }
    let op = if method != MethodArg::Strings {
        let h = Hecke::from_group(WeylGroup::new(&d)?)?;
        Some(operator_detail(&h, &chi, prefilter, relevant)?)
    } else {
        None
    };
    let st = if method != MethodArg::Operator {
        let s = unitary_via_strings(t, &chi)?;
        Some((s.unitary, strings_detail(&s, &chi)))
    } else {
        None
    };
    let (unitary, detail, failed) = match (op, st) {
        (Some((u, det)), None) | (None, Some((u, det))) => (u, det, false),
        (Some((u, a)), Some((v, b))) => (u, json!({ "agree": u == v, "operator": a, "strings": b }), u != v),
        (None, None) => unreachable!(),
    };
    let method = match method {
        MethodArg::Operator => "operator",
        MethodArg::Strings => "strings",
        MethodArg::Both => "both",
    };
    let rec = json!({ "group": group, "chi": qs(&chi), "method": method, "unitary": unitary, "detail": detail });
    Ok(Output { records: vec![rec], failed })
}

fn extended(group: &str, t: CartanType, rank: usize, delta: &DeltaCharacter, nu: &[Q]) -> Result<Output> {
    if delta.signs.len() != nu.len() {
        return Err(Error::DimensionMismatch { expected: nu.len(), got: delta.signs.len() });
    }
    let (w, g) = good_root_data_for(t, rank, delta)?;
    let op = extended_intertwiner(&w, &g, nu)?;
    let blocks: Vec<Value> = op
        .blocks
        .iter()
        .map(|b| {
            let mut v = json!({
                "label": b.label,
                "dim": b.dim,
                "fine": b.fine,
                "signature": {
                    "positive": b.signature.n_positive,
                    "zero": b.signature.n_zero,
                    "negative": b.signature.n_negative,
                },
            });
            if let Some(s) = b.scalar() {
                v["scalar"] = json!(fmt_q(&s));
            }
            v
        })
        .collect();
    let detail = json!({
        "delta": delta.to_string(),
        "good_roots": fmt_components(&g.subsystem_type),
        "r_group_order": g.r_group_order,
        "r_nu_order": op.r_nu_order,
        "u_length": w.length(op.u),
        "blocks": blocks,
    });
    let rec = json!({ "group": group, "chi": qs(nu), "method": "operator", "unitary": op.psd(), "detail": detail });
    Ok(Output::ok(vec![rec]))
}

pub fn strings(cartan_type: &str, rank: usize, chi: &str) -> Result<Output> {
    let (t, _, chi) = parse_point(cartan_type, rank, chi)?;
    let s = unitary_via_strings(t, &chi)?;
    let d = &s.decomposition;
    let blocks: serde_json::Map<String, Value> = d
        .tau_blocks
        .iter()
        .map(|(tau, strs)| (fmt_q(tau), Value::Array(strs.iter().map(|x| qs(x)).collect())))
        .collect();
    let mut rec = strings_detail(&s, &chi);
    rec["group"] = json!(group_name(t, rank));
    rec["chi"] = qs(&chi);
    rec["method"] = json!("strings");
    rec["unitary"] = json!(s.unitary);
    rec["blocks"] = Value::Object(blocks);
    rec["distinguished"] = Value::Array(d.distinguished.iter().map(|x| qs(x)).collect());
    Ok(Output::ok(vec![rec]))
}

pub fn region(group: &str, orbit: Option<&str>, nu: Option<&str>, chi: Option<&str>) -> Result<Output> {
    let (t, rank) = parse_group(group)?;
    let gname = group_name(t, rank);
    let rec = match (orbit, nu, chi) {
        (Some(orbit), Some(nu), None) => {
            let nu = parse_vec(nu)?;
            let tables = load_tables()?;
            let row = tables.row(&gname, orbit)?;
            json!({
                "group": gname,
                "orbit": row.name(),
                "nu": qs(&nu),
                "method": "region",
                "unitary": row.verdict(&nu)?,
                "detail": {
                    "chamber": row.chamber.text(),
                    "region": row.region.text(),
                    "centralizer": row.centralizer,
                    "chi": qs(&row.chi(&nu)?),
                },
            })
        }
        (None, Some(nu), None) => {
            let nu = parse_vec(nu)?;
            let m = zero_cs_membership(t, &nu)?;
            json!({
                "group": gname,
                "orbit": "0",
                "nu": qs(&nu),
                "method": "region",
                "unitary": m.unitary,
                "detail": {
                    "matched": m.matched,
                    "all_matches": m.all_matches,
                    "chi_dominant": qs(&m.chi_dominant),
                },
            })
        }
        (None, None, Some(chi)) => region_chi(t, rank, &gname, &parse_vec(chi)?)?,
        _ => return Err(Error::Parse("give --orbit with --nu, --nu alone, or --chi".into())),
    };
    Ok(Output::ok(vec![rec]))
}

fn region_chi(t: CartanType, rank: usize, gname: &str, chi: &[Q]) -> Result<Value> {
    match t {
        CartanType::G2 | CartanType::F4 => {
            let d = RootDatum::build(t, rank)?;
            if chi.len() != d.ambient_dim {
                return Err(Error::DimensionMismatch { expected: d.ambient_dim, got: chi.len() });
            }
            let w = WeylGroup::new(&d)?;
            let a = attach_exceptional(&w, &load_tables()?, &load_zero_regions()?, chi)?;
            Ok(json!({
                "group": gname,
                "chi": qs(chi),
                "method": "region",
                "unitary": a.unitary,
                "detail": {
                    "orbit": a.orbit,
                    "nu_solutions": a.nu_solutions.iter().map(|s| qs(s)).collect::<Vec<_>>(),
                    "matched": a.matched,
                },
            }))
        }
        CartanType::E6 | CartanType::E7 | CartanType::E8 => {
            let m = regions::zero_cs_membership(t, chi)?;
            Ok(json!({
                "group": gname,
                "chi": qs(chi),
                "method": "region",
                "unitary": m.unitary,
                "detail": {
                    "orbit": "0",
                    "matched": m.matched,
                    "all_matches": m.all_matches,
                    "chi_dominant": qs(&m.chi_dominant),
                },
            }))
        }
        _ => {
            let s = unitary_via_strings(t, chi)?;
            Ok(json!({
                "group": gname,
                "chi": qs(chi),
                "method": "strings",
                "unitary": s.unitary,
                "detail": strings_detail(&s, chi),
            }))
        }
    }
}
