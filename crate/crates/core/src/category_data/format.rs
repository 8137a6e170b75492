//! JSON category files.
//!
//! ```json
//! { "name": "fibonacci", "rank": 2, "labels": ["id", "τ"], "dual": [0, 1],
//!   "fusion": [[0,0,0,1], ...], "theta": [[1,0], [re,im]], "dims": [1, 1.618],
//!   "F": [[a,b,c,d, e,α,β, f,γ,δ, re,im], ...], "R": [[a,b,c, α,β, re,im], ...] }
//! ```
//!
//! Multiplicity indices are 1-based in files and 0-based in memory. Omitted
//! sparse entries are zero; `labels`, `dims` and `product_of` are optional.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use super::validate::dims_from_braiding;
use super::{BraidedData, CategorySpec, FusionRing, ProductOf, RibbonStructure, C64};
use crate::error::{MtcError, Result};

pub fn load_category_spec(text: &str) -> Result<CategorySpec> {
    let root: Value = serde_json::from_str(text).map_err(|e| MtcError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = root.as_object().ok_or_else(|| MtcError::Parse {
        line: 1,
        column: 1,
        message: "top level must be an object".into(),
    })?;

    let name = section(obj, "name")?
        .as_str()
        .ok_or_else(|| field("name", "expected a string"))?
        .to_string();
    let rank = index(section(obj, "rank")?, "rank", usize::MAX)?;
    if rank == 0 {
        return Err(field("rank", "must be positive"));
    }

    let labels = match obj.get("labels") {
        None => (0..rank).map(|i| i.to_string()).collect(),
        Some(v) => {
            let arr = array(v, "labels")?;
            if arr.len() != rank {
                return Err(field("labels", &format!("expected {rank} entries, found {}", arr.len())));
            }
            arr.iter()
                .enumerate()
                .map(|(i, l)| {
                    l.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| field(&format!("labels[{i}]"), "expected a string"))
                })
                .collect::<Result<Vec<_>>>()?
        }
    };

    let dual_arr = array(section(obj, "dual")?, "dual")?;
    if dual_arr.len() != rank {
        return Err(field("dual", &format!("expected {rank} entries, found {}", dual_arr.len())));
    }
    let dual = dual_arr
        .iter()
        .enumerate()
        .map(|(i, v)| index(v, &format!("dual[{i}]"), rank))
        .collect::<Result<Vec<_>>>()?;
    if dual[0] != 0 {
        return Err(MtcError::NonInvolutiveDual("dual of 0 must be 0".into()));
    }
    for (i, &j) in dual.iter().enumerate() {
        if dual[j] != i {
            return Err(MtcError::NonInvolutiveDual(format!(
                "dual[{i}] = {j} but dual[{j}] = {}",
                dual[j]
            )));
        }
    }

    let mut n = vec![0u32; rank * rank * rank];
    for (pos, entry) in array(section(obj, "fusion")?, "fusion")?.iter().enumerate() {
        let loc = format!("fusion[{pos}]");
        let e = array(entry, &loc)?;
        if e.len() != 4 {
            return Err(field(&loc, "expected [i, j, k, multiplicity]"));
        }
        let i = index(&e[0], &loc, rank)?;
        let j = index(&e[1], &loc, rank)?;
        let k = index(&e[2], &loc, rank)?;
        let m = index(&e[3], &loc, u32::MAX as usize)?;
        n[(i * rank + j) * rank + k] = m as u32;
    }
    for a in 0..rank {
        for k in 0..rank {
            let want = u32::from(a == k);
            if n[a * rank + k] != want {
                return Err(MtcError::UnitAxiom(format!("N_0{a}^{k} = {} (expected {want})", n[a * rank + k])));
            }
            if n[(a * rank) * rank + k] != want {
                return Err(MtcError::UnitAxiom(format!(
                    "N_{a}0^{k} = {} (expected {want})",
                    n[(a * rank) * rank + k]
                )));
            }
        }
    }
    let ring = FusionRing::new(rank, n, dual);

    let theta_arr = array(section(obj, "theta")?, "theta")?;
    if theta_arr.len() != rank {
        return Err(field("theta", &format!("expected {rank} entries, found {}", theta_arr.len())));
    }
    let twists = theta_arr
        .iter()
        .enumerate()
        .map(|(i, v)| complex(v, &format!("theta[{i}]")))
        .collect::<Result<Vec<_>>>()?;

    let f = sparse::<10>(section(obj, "F")?, "F", rank)?;
    let r = match obj.get("R") {
        None => return Err(MtcError::BraidedDataRequired),
        Some(v) => sparse::<5>(v, "R", rank)?,
    };
    let braided = BraidedData { f, r };

    let dims = match obj.get("dims") {
        None => dims_from_braiding(&ring, &twists, &braided),
        Some(v) => {
            let arr = array(v, "dims")?;
            if arr.len() != rank {
                return Err(field("dims", &format!("expected {rank} entries, found {}", arr.len())));
            }
            arr.iter()
                .enumerate()
                .map(|(i, d)| d.as_f64().ok_or_else(|| field(&format!("dims[{i}]"), "expected a number")))
                .collect::<Result<Vec<_>>>()?
        }
    };

    let mut spec = CategorySpec::new(name, labels, ring, RibbonStructure { dims, twists }, braided);
    if let Some(p) = obj.get("product_of") {
        spec.product_of = Some(
            serde_json::from_value::<ProductOf>(p.clone()).map_err(|e| field("product_of", &e.to_string()))?,
        );
    }
    Ok(spec)
}

pub fn serialize_category_spec(spec: &CategorySpec) -> String {
    let ring = &spec.ring;
    let rank = spec.rank();
    let mut fusion = Vec::new();
    for i in 0..rank {
        for j in 0..rank {
            for k in 0..rank {
                let m = ring.n(i, j, k);
                if m > 0 {
                    fusion.push(json!([i, j, k, m]));
                }
            }
        }
    }
    let f: Vec<Value> = spec
        .braided
        .f
        .iter()
        .map(|(k, v)| {
            json!([k[0], k[1], k[2], k[3], k[4], k[5] + 1, k[6] + 1, k[7], k[8] + 1, k[9] + 1, v.re, v.im])
        })
        .collect();
    let r: Vec<Value> = spec
        .braided
        .r
        .iter()
        .map(|(k, v)| json!([k[0], k[1], k[2], k[3] + 1, k[4] + 1, v.re, v.im]))
        .collect();
    let mut obj = Map::new();
    obj.insert("name".into(), json!(spec.name));
    obj.insert("rank".into(), json!(rank));
    obj.insert("labels".into(), json!(spec.labels));
    obj.insert("dual".into(), json!(ring.duals()));
    obj.insert("fusion".into(), Value::Array(fusion));
    obj.insert(
        "theta".into(),
        json!(spec.ribbon.twists.iter().map(|t| [t.re, t.im]).collect::<Vec<_>>()),
    );
    obj.insert("dims".into(), json!(spec.ribbon.dims));
    obj.insert("F".into(), Value::Array(f));
    obj.insert("R".into(), Value::Array(r));
    if let Some(p) = &spec.product_of {
        obj.insert("product_of".into(), json!(p));
    }
    serde_json::to_string_pretty(&Value::Object(obj)).expect("category JSON is always serializable")
}

fn field(name: &str, message: &str) -> MtcError {
    MtcError::Field {
        field: name.to_string(),
        message: message.to_string(),
    }
}

fn section<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| MtcError::MissingSection(key.to_string()))
}

fn array<'a>(v: &'a Value, loc: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| field(loc, "expected an array"))
}

/// A non-negative integer strictly below `bound`.
fn index(v: &Value, loc: &str, bound: usize) -> Result<usize> {
    let i = v
        .as_u64()
        .ok_or_else(|| field(loc, &format!("expected a non-negative integer, found {v}")))? as usize;
    if i >= bound {
        return Err(field(loc, &format!("index {i} out of range (must be < {bound})")));
    }
    Ok(i)
}

fn complex(v: &Value, loc: &str) -> Result<C64> {
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => match (re.as_f64(), im.as_f64()) {
            (Some(re), Some(im)) => Ok(C64::new(re, im)),
            _ => Err(MtcError::ComplexLiteral(format!("{loc}: {v}"))),
        },
        _ => Err(MtcError::ComplexLiteral(format!("{loc}: {v}"))),
    }
}

/// Parses `[labels..., multiplicities..., re, im]` rows. Label positions are
/// checked against the rank; multiplicity positions are shifted to 0-based.
fn sparse<const N: usize>(v: &Value, name: &str, rank: usize) -> Result<BTreeMap<[usize; N], C64>> {
    let key_len = N;
    let is_mult: &[bool] = match key_len {
        10 => &[false, false, false, false, false, true, true, false, true, true],
        _ => &[false, false, false, true, true],
    };
    let mut out = BTreeMap::new();
    for (pos, entry) in array(v, name)?.iter().enumerate() {
        let loc = format!("{name}[{pos}]");
        let e = array(entry, &loc)?;
        if e.len() != key_len + 2 {
            return Err(field(&loc, &format!("expected {} numbers, found {}", key_len + 2, e.len())));
        }
        let mut key = [0usize; N];
        for (slot, (val, &mult)) in key.iter_mut().zip(e.iter().zip(is_mult)) {
            *slot = if mult {
                let m = index(val, &loc, usize::MAX)?;
                if m == 0 {
                    return Err(field(&loc, "multiplicity indices are 1-based"));
                }
                m - 1
            } else {
                index(val, &loc, rank)?
            };
        }
        let value = match (e[key_len].as_f64(), e[key_len + 1].as_f64()) {
            (Some(re), Some(im)) => C64::new(re, im),
            _ => {
                return Err(MtcError::ComplexLiteral(format!(
                    "{loc}: [{}, {}]",
                    e[key_len],
                    e[key_len + 1]
                )))
            }
        };
        out.insert(key, value);
    }
    Ok(out)
}
