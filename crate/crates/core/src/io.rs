//! JSON input for polytopes and fans, and plain-text exports.
//!
//! Numbers must be exact integers: `1.0` and `1e3` are rejected, since
//! every downstream claim is exact.

use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::groebner::{MonomialOrder, Polynomial};
use crate::lattice::{hull, Fan, Halfspace, LatticeVector, Polytope};
use crate::scalar::Field;

/// Polytope read from a file, with an optional display name.
#[derive(Clone, Debug)]
pub struct PolytopeInput {
    pub name: Option<String>,
    pub polytope: Polytope,
}

fn integer(v: &Value, at: &str) -> Result<BigInt> {
    let Value::Number(n) = v else {
        return Err(Error::Parse(format!("{at}: expected an integer, found {v}")));
    };
    let s = n.to_string();
    if s.contains(['.', 'e', 'E']) {
        return Err(Error::Parse(format!("{at}: {s} is not an exact integer")));
    }
    s.parse().map_err(|_| Error::Parse(format!("{at}: cannot read {s} as an integer")))
}

fn small(v: &Value, at: &str) -> Result<usize> {
    let b = integer(v, at)?;
    usize::try_from(b).map_err(|_| Error::Parse(format!("{at}: expected a nonnegative index")))
}

fn integer_list(v: &Value, at: &str) -> Result<LatticeVector> {
    let Value::Array(xs) = v else {
        return Err(Error::Parse(format!("{at}: expected a list of integers")));
    };
    xs.iter()
        .enumerate()
        .map(|(k, x)| integer(x, &format!("{at}[{k}]")))
        .collect::<Result<_>>()
        .map(LatticeVector)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Parse(format!("missing field \"{key}\"")))
}

fn parse_value(text: &str) -> Result<Map<String, Value>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    match v {
        Value::Object(m) => Ok(m),
        _ => Err(Error::Parse("expected a JSON object".into())),
    }
}

/// `{"rank": n, "vertices": [[...]]}` or
/// `{"rank": n, "halfspaces": [{"normal": [...], "offset": k}]}`, where a
/// half-space is `<normal, x> >= -offset`.
pub fn parse_polytope(text: &str) -> Result<PolytopeInput> {
    let obj = parse_value(text)?;
    let rank = small(field(&obj, "rank")?, "rank")?;
    let name = match obj.get("name") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(v) => return Err(Error::Parse(format!("name: expected a string, found {v}"))),
    };
    let polytope = match (obj.get("vertices"), obj.get("halfspaces")) {
        (Some(_), Some(_)) => {
            return Err(Error::Parse("give either \"vertices\" or \"halfspaces\", not both".into()))
        }
        (Some(Value::Array(vs)), None) => {
            let pts: Vec<LatticeVector> = vs
                .iter()
                .enumerate()
                .map(|(k, v)| integer_list(v, &format!("vertices[{k}]")))
                .collect::<Result<_>>()?;
            if let Some(p) = pts.iter().find(|p| p.len() != rank) {
                return Err(Error::InvalidPolytope(format!("vertex {p} does not have {rank} coordinates")));
            }
            hull(&pts)?
        }
        (None, Some(Value::Array(hs))) => {
            let hs: Vec<Halfspace> = hs
                .iter()
                .enumerate()
                .map(|(k, h)| {
                    let Value::Object(o) = h else {
                        return Err(Error::Parse(format!("halfspaces[{k}]: expected an object")));
                    };
                    Ok(Halfspace::new(
                        integer_list(field(o, "normal")?, &format!("halfspaces[{k}].normal"))?,
                        integer(field(o, "offset")?, &format!("halfspaces[{k}].offset"))?,
                    ))
                })
                .collect::<Result<_>>()?;
            Polytope::from_halfspaces(rank, &hs)?
        }
        (None, None) => return Err(Error::Parse("missing \"vertices\" or \"halfspaces\"".into())),
        _ => return Err(Error::Parse("\"vertices\"/\"halfspaces\" must be a list".into())),
    };
    if polytope.rank() != rank {
        return Err(Error::InvalidPolytope(format!("declared rank {rank}, points have rank {}", polytope.rank())));
    }
    Ok(PolytopeInput { name, polytope })
}

pub fn read_polytope(path: &Path) -> Result<PolytopeInput> {
    parse_polytope(&std::fs::read_to_string(path)?)
}

fn vector_json(v: &LatticeVector) -> Value {
    Value::Array(v.0.iter().map(|x| serde_json::from_str(&x.to_string()).expect("integer literal")).collect())
}

/// Canonical vertex form; reading it back gives the same polytope.
pub fn polytope_to_json(p: &Polytope) -> Value {
    json!({
        "rank": p.rank(),
        "vertices": p.vertices().iter().map(vector_json).collect::<Vec<_>>(),
    })
}

/// `{"rank": n, "rays": [[...]], "max_cones": [[ray indices]]}`.
pub fn parse_fan(text: &str) -> Result<Fan> {
    let obj = parse_value(text)?;
    let rank = small(field(&obj, "rank")?, "rank")?;
    let Value::Array(rays) = field(&obj, "rays")? else {
        return Err(Error::Parse("rays: expected a list".into()));
    };
    let Value::Array(cones) = field(&obj, "max_cones")? else {
        return Err(Error::Parse("max_cones: expected a list".into()));
    };
    let rays = rays
        .iter()
        .enumerate()
        .map(|(k, r)| integer_list(r, &format!("rays[{k}]")))
        .collect::<Result<_>>()?;
    let cones = cones
        .iter()
        .enumerate()
        .map(|(k, c)| match c {
            Value::Array(ix) => ix
                .iter()
                .enumerate()
                .map(|(l, i)| small(i, &format!("max_cones[{k}][{l}]")))
                .collect::<Result<Vec<usize>>>(),
            _ => Err(Error::Parse(format!("max_cones[{k}]: expected a list"))),
        })
        .collect::<Result<_>>()?;
    Fan::new(rank, rays, cones)
}

pub fn fan_to_json(f: &Fan) -> Value {
    json!({
        "rank": f.rank(),
        "rays": f.rays().iter().map(vector_json).collect::<Vec<_>>(),
        "max_cones": f.max_cones().iter().map(|c| c.rays.clone()).collect::<Vec<_>>(),
    })
}

/// One polynomial per line after a header naming the order.
pub fn ideal_to_text<F: Field>(order: &MonomialOrder, gens: &[Polynomial<F>]) -> String {
    let mut s = format!("# order {}\n# generators {}\n", order.descriptor(), gens.len());
    for g in gens {
        s.push_str(&g.to_string());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_float_coordinates() {
        let e = parse_polytope(r#"{"rank": 2, "vertices": [[0, 0], [1.0, 0], [0, 1]]}"#).unwrap_err();
        assert!(matches!(e, Error::Parse(_)), "{e}");
        let e = parse_polytope(r#"{"rank": 1, "vertices": [[0], [1e1]]}"#).unwrap_err();
        assert!(matches!(e, Error::Parse(_)));
    }

    #[test]
    fn vertex_and_halfspace_forms_agree() {
        let a = parse_polytope(r#"{"rank": 2, "vertices": [[0,0],[1,0],[0,1],[1,1],[1,0]]}"#).unwrap();
        let b = parse_polytope(
            r#"{"rank": 2, "halfspaces": [
                {"normal": [1, 0], "offset": 0}, {"normal": [-1, 0], "offset": 1},
                {"normal": [0, 1], "offset": 0}, {"normal": [0, -1], "offset": 1}]}"#,
        )
        .unwrap();
        assert_eq!(a.polytope, b.polytope);
        let back = parse_polytope(&polytope_to_json(&a.polytope).to_string()).unwrap();
        assert_eq!(back.polytope, a.polytope);
    }

    #[test]
    fn large_integers_survive() {
        let p = parse_polytope(r#"{"rank": 1, "vertices": [[0], [123456789012345678901234567890]]}"#).unwrap();
        assert_eq!(p.polytope.vertices()[1].0[0].to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn fan_roundtrip() {
        let f = parse_fan(r#"{"rank": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]]}"#).unwrap();
        assert_eq!(parse_fan(&fan_to_json(&f).to_string()).unwrap(), f);
        assert!(parse_fan(r#"{"rank": 1, "rays": [[2], [-1]], "max_cones": [[0], [1]]}"#).is_err());
    }
}
