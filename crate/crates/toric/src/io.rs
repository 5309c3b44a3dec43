//! File formats and builtin geometries.
//!
//! Fans: `{"dim": n, "rays": [[..]..], "max_cones": [[..]..]}`.
//! Polytopes: `{"dim": n, "facets": [{"normal": [..], "offset": o}..]}`
//! with offsets given as integers or exact `"p/q"` strings.
//! Discs: `{"fan": <fan object or builtin id>, "components": [..]}` where
//! a component is `{"zero": true}` or
//! `{"a": real, "complex_roots": [[re, im]..], "real_roots": [..]}`.
//!
//! Builtin ids: `cp:n`, `cp1xcp1`, `blowup-cp2`; all use the monotone
//! normalization with every offset equal to 1.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Deserialize;
use serde_json::{json, Value};
use std::str::FromStr;

use crate::curves::{LiftComponent, RealDiscLift};
use crate::fan::Fan;
use crate::lattice::IntVector;
use crate::polytope::Polytope;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error at {field}: {reason}")]
    Parse { field: String, reason: String },
    #[error("unknown builtin {0:?}; expected cp:n, cp1xcp1, or blowup-cp2")]
    UnknownBuiltin(String),
    #[error("validation failed: {0}")]
    Validation(String),
}

fn parse_err(field: &str, reason: impl ToString) -> IoError {
    IoError::Parse {
        field: field.to_string(),
        reason: reason.to_string(),
    }
}

/// A named geometry: always a fan, plus the polytope when one is known
/// (builtins and polytope files).
#[derive(Debug, Clone)]
pub struct Input {
    pub name: String,
    pub fan: Fan,
    pub polytope: Option<Polytope>,
}

fn monotone_polytope(fan: &Fan) -> Polytope {
    Polytope::new(
        fan.dim,
        fan.rays.iter().map(|r| r.vector.clone()).collect(),
        vec![BigRational::one(); fan.num_rays()],
    )
    .expect("builtin normals are primitive")
}

pub fn builtin(id: &str) -> Result<Input, IoError> {
    let fan = if let Some(n) = id.strip_prefix("cp:") {
        let n: usize = n
            .parse()
            .map_err(|_| IoError::UnknownBuiltin(id.to_string()))?;
        if n == 0 {
            return Err(IoError::UnknownBuiltin(id.to_string()));
        }
        let mut rays: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
        rays.push(IntVector(vec![BigInt::from(-1); n]));
        let cones: Vec<Vec<usize>> = (0..=n)
            .map(|skip| (0..=n).filter(|&i| i != skip).collect())
            .collect();
        Fan::new(n, rays, cones)
    } else if id == "cp1xcp1" {
        Fan::new(
            2,
            vec![
                IntVector::from_i64(&[1, 0]),
                IntVector::from_i64(&[0, 1]),
                IntVector::from_i64(&[-1, 0]),
                IntVector::from_i64(&[0, -1]),
            ],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
    } else if id == "blowup-cp2" {
        Fan::new(
            2,
            vec![
                IntVector::from_i64(&[1, 0]),
                IntVector::from_i64(&[0, 1]),
                IntVector::from_i64(&[-1, -1]),
                IntVector::from_i64(&[0, -1]),
            ],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
    } else {
        return Err(IoError::UnknownBuiltin(id.to_string()));
    };
    let polytope = monotone_polytope(&fan);
    Ok(Input {
        name: id.to_string(),
        fan,
        polytope: Some(polytope),
    })
}

#[derive(Deserialize)]
struct FanFile {
    dim: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct FacetFile {
    normal: Vec<i64>,
    offset: Value,
}

#[derive(Deserialize)]
struct PolytopeFile {
    dim: usize,
    facets: Vec<FacetFile>,
}

pub fn parse_rational(v: &Value, field: &str) -> Result<BigRational, IoError> {
    match v {
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| parse_err(field, "offset must be an integer or \"p/q\""))?;
            Ok(BigRational::from_integer(BigInt::from(i)))
        }
        Value::String(s) => BigRational::from_str(s)
            .map_err(|e| parse_err(field, format!("bad rational {s:?}: {e}"))),
        other => Err(parse_err(field, format!("unexpected value {other}"))),
    }
}

fn fan_from_value(v: &Value, field: &str) -> Result<Fan, IoError> {
    let file: FanFile = serde_json::from_value(v.clone())
        .map_err(|e| parse_err(field, e))?;
    let rays = file.rays.iter().map(|r| IntVector::from_i64(r)).collect();
    Ok(Fan::new(file.dim, rays, file.max_cones))
}

fn polytope_from_value(v: &Value, field: &str) -> Result<Polytope, IoError> {
    let file: PolytopeFile =
        serde_json::from_value(v.clone()).map_err(|e| parse_err(field, e))?;
    let mut normals = Vec::new();
    let mut offsets = Vec::new();
    for (i, facet) in file.facets.iter().enumerate() {
        normals.push(IntVector::from_i64(&facet.normal));
        offsets.push(parse_rational(
            &facet.offset,
            &format!("{field}.facets[{i}].offset"),
        )?);
    }
    Polytope::new(file.dim, normals, offsets)
        .map_err(|e| IoError::Validation(e.to_string()))
}

fn read_json(path: &str) -> Result<Value, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| parse_err(path, e))
}

/// Loads a polytope or fan file, detected by its top-level key; polytope
/// files also carry their normal fan.
pub fn load_geometry(path: &str) -> Result<Input, IoError> {
    let value = read_json(path)?;
    let obj = value
        .as_object()
        .ok_or_else(|| parse_err(path, "expected a JSON object"))?;
    if obj.contains_key("facets") {
        let polytope = polytope_from_value(&value, path)?;
        let fan = polytope
            .normal_fan()
            .map_err(|e| IoError::Validation(e.to_string()))?;
        Ok(Input {
            name: path.to_string(),
            fan,
            polytope: Some(polytope),
        })
    } else if obj.contains_key("rays") {
        Ok(Input {
            name: path.to_string(),
            fan: fan_from_value(&value, path)?,
            polytope: None,
        })
    } else {
        Err(parse_err(path, "expected a \"facets\" or \"rays\" key"))
    }
}

/// Resolves `--builtin`/`--file` into a geometry.
pub fn parse_input(builtin_id: Option<&str>, file: Option<&str>) -> Result<Input, IoError> {
    match (builtin_id, file) {
        (Some(id), None) => builtin(id),
        (None, Some(path)) => load_geometry(path),
        _ => Err(parse_err(
            "input",
            "exactly one of --builtin and --file is required",
        )),
    }
}

#[derive(Deserialize)]
struct ComponentFile {
    #[serde(default)]
    zero: bool,
    #[serde(default)]
    a: Option<f64>,
    #[serde(default)]
    complex_roots: Vec<[f64; 2]>,
    #[serde(default)]
    real_roots: Vec<f64>,
}

#[derive(Deserialize)]
struct DiscFile {
    fan: Value,
    components: Vec<ComponentFile>,
}

/// Loads a disc file: the fan (inline or builtin id) and the lift.
pub fn load_disc(path: &str) -> Result<(Input, RealDiscLift), IoError> {
    let value = read_json(path)?;
    let file: DiscFile = serde_json::from_value(value).map_err(|e| parse_err(path, e))?;
    let input = match &file.fan {
        Value::String(id) => builtin(id)?,
        fan_value => Input {
            name: path.to_string(),
            fan: fan_from_value(fan_value, &format!("{path}.fan"))?,
            polytope: None,
        },
    };
    let mut components = Vec::new();
    for (i, c) in file.components.iter().enumerate() {
        if c.zero {
            components.push(LiftComponent::Zero);
        } else {
            let leading = c.a.ok_or_else(|| {
                parse_err(
                    &format!("{path}.components[{i}]"),
                    "nonzero component needs a leading coefficient \"a\"",
                )
            })?;
            components.push(LiftComponent::Factored {
                leading,
                complex_roots: c
                    .complex_roots
                    .iter()
                    .map(|[re, im]| Complex64::new(*re, *im))
                    .collect(),
                real_roots: c.real_roots.clone(),
            });
        }
    }
    Ok((input, RealDiscLift::new(components)))
}

pub fn fan_to_json(fan: &Fan) -> Value {
    json!({
        "dim": fan.dim,
        "rays": fan
            .rays
            .iter()
            .map(|r| r.vector.0.iter().map(|c| json!(c.to_i64().unwrap())).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "max_cones": fan
            .max_cones
            .iter()
            .map(|c| c.ray_indices.iter().collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn polytope_to_json(polytope: &Polytope) -> Value {
    json!({
        "dim": polytope.dim,
        "facets": polytope
            .normals
            .iter()
            .zip(&polytope.offsets)
            .map(|(n, o)| {
                json!({
                    "normal": n.0.iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>(),
                    "offset": if o.is_integer() { json!(o.to_integer().to_i64().unwrap()) } else { json!(o.to_string()) },
                })
            })
            .collect::<Vec<_>>(),
    })
}
