//! JSON expression-tree grammar for slice functions.
//!
//! Every node is an object with an `"op"` field:
//!
//! | op         | fields                                   | meaning                              |
//! |------------|------------------------------------------|--------------------------------------|
//! | `poly`     | `coeffs`: array of `[w,x,y,z]`           | `sum_n q^n a_n`                      |
//! | `const`    | `value`: `[w,x,y,z]`                     | constant                             |
//! | `identity` |                                          | `q`                                  |
//! | `sum`      | `args`: array of nodes                   | pointwise sum                        |
//! | `neg`      | `arg`                                    | negation                             |
//! | `scale`    | `factor`: number, `arg`                  | real scalar multiple                 |
//! | `star`     | `args`: array of nodes (left fold)       | *-product                            |
//! | `conj`     | `arg`                                    | conjugate function                   |
//! | `builtin`  | `name`: `exp`/`sin`/`cos`, optional `arg` (slice-preserving, default `q`), optional `premul`: `[w,x,y,z]` | `premul * name(arg)` |
//! | `tau`      |                                          | slice sign function on `H \ R`       |
//! | `exp`      | `arg`                                    | *-exponential (closed form)          |
//! | `cos`      | `arg`                                    | *-cosine (closed form)               |
//! | `sin`      | `arg`                                    | *-sine (closed form)                 |

use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::slicefn::function::{Expr, RealKind, SliceFunction, TrigKind};
use crate::slicefn::poly::QuaternionPolynomial;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn quaternion_from_value(v: &Value) -> Result<Quaternion> {
    let arr = v
        .as_array()
        .ok_or_else(|| parse_err("expected a [w,x,y,z] array"))?;
    if arr.len() != 4 {
        return Err(parse_err(format!(
            "quaternion needs 4 components, got {}",
            arr.len()
        )));
    }
    let mut parts = [0.0; 4];
    for (slot, item) in parts.iter_mut().zip(arr) {
        *slot = item
            .as_f64()
            .ok_or_else(|| parse_err("quaternion components must be numbers"))?;
    }
    Ok(Quaternion::new(parts[0], parts[1], parts[2], parts[3]))
}

fn field<'v>(v: &'v Value, name: &str, op: &str) -> Result<&'v Value> {
    v.get(name)
        .ok_or_else(|| parse_err(format!("op '{op}' needs field '{name}'")))
}

fn args_of(v: &Value, op: &str) -> Result<Vec<SliceFunction>> {
    let arr = field(v, "args", op)?
        .as_array()
        .ok_or_else(|| parse_err(format!("'{op}.args' must be an array")))?;
    if arr.is_empty() {
        return Err(parse_err(format!("'{op}.args' must be non-empty")));
    }
    arr.iter().map(parse).collect()
}

/// Parses the grammar above into a [`SliceFunction`].
pub fn parse(v: &Value) -> Result<SliceFunction> {
    let op = v
        .get("op")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err("node needs a string 'op' field"))?;
    match op {
        "poly" => {
            let coeffs = field(v, "coeffs", op)?
                .as_array()
                .ok_or_else(|| parse_err("'poly.coeffs' must be an array"))?
                .iter()
                .map(quaternion_from_value)
                .collect::<Result<Vec<_>>>()?;
            Ok(SliceFunction::from_coeffs(coeffs))
        }
        "const" => Ok(SliceFunction::constant(quaternion_from_value(field(
            v, "value", op,
        )?)?)),
        "identity" => Ok(SliceFunction::identity()),
        "sum" => {
            let args = args_of(v, op)?;
            let mut acc = args[0].clone();
            for item in &args[1..] {
                acc = acc.add(item)?;
            }
            Ok(acc)
        }
        "neg" => Ok(parse(field(v, "arg", op)?)?.neg()),
        "scale" => {
            let factor = field(v, "factor", op)?
                .as_f64()
                .ok_or_else(|| parse_err("'scale.factor' must be a number"))?;
            Ok(parse(field(v, "arg", op)?)?.scale(factor))
        }
        "star" => {
            let args = args_of(v, op)?;
            let mut acc = args[0].clone();
            for item in &args[1..] {
                acc = acc.star(item)?;
            }
            Ok(acc)
        }
        "conj" => Ok(parse(field(v, "arg", op)?)?.conjugate()),
        "builtin" => {
            let name = field(v, "name", op)?
                .as_str()
                .ok_or_else(|| parse_err("'builtin.name' must be a string"))?;
            let kind = match name {
                "exp" => RealKind::Exp,
                "sin" => RealKind::Sin,
                "cos" => RealKind::Cos,
                other => return Err(parse_err(format!("unknown builtin '{other}'"))),
            };
            let premul = match v.get("premul") {
                Some(p) => quaternion_from_value(p)?,
                None => Quaternion::ONE,
            };
            let inner = match v.get("arg") {
                Some(a) => parse(a)?,
                None => SliceFunction::identity(),
            };
            SliceFunction::compose_real(kind, &inner, premul)
        }
        "tau" => Ok(SliceFunction::tau()),
        "exp" => {
            let inner = parse(field(v, "arg", op)?)?;
            Ok(SliceFunction::from_parts(
                *inner.domain(),
                Expr::ExpClosed(Arc::new(inner)),
            ))
        }
        "cos" | "sin" => {
            let inner = parse(field(v, "arg", op)?)?;
            let kind = if op == "cos" {
                TrigKind::Cos
            } else {
                TrigKind::Sin
            };
            Ok(SliceFunction::from_parts(
                *inner.domain(),
                Expr::TrigClosed {
                    kind,
                    inner: Arc::new(inner),
                },
            ))
        }
        other => Err(parse_err(format!("unknown op '{other}'"))),
    }
}

/// Parses a function from JSON text.
pub fn parse_str(text: &str) -> Result<SliceFunction> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
    parse(&value)
}

fn quaternion_to_value(q: Quaternion) -> Value {
    serde_json::json!([q.w, q.x, q.y, q.z])
}

fn poly_to_value(p: &QuaternionPolynomial) -> Value {
    serde_json::json!({
        "op": "poly",
        "coeffs": p.coeffs().iter().map(|&c| quaternion_to_value(c)).collect::<Vec<_>>(),
    })
}

/// Renders a function back into the grammar. Internal evaluator nodes that
/// have no surface syntax (truncated series, product closed forms) are not
/// representable and report a parse error.
pub fn to_value(f: &SliceFunction) -> Result<Value> {
    match f.expr() {
        Expr::Poly(p) => Ok(poly_to_value(p)),
        Expr::Tau => Ok(serde_json::json!({"op": "tau"})),
        Expr::Compose {
            kind,
            inner,
            premul,
        } => Ok(serde_json::json!({
            "op": "builtin",
            "name": kind.name(),
            "arg": to_value(inner)?,
            "premul": quaternion_to_value(*premul),
        })),
        Expr::Add(a, b) => Ok(serde_json::json!({
            "op": "sum",
            "args": [to_value(a)?, to_value(b)?],
        })),
        Expr::Scale(a, s) => Ok(serde_json::json!({
            "op": "scale",
            "factor": s,
            "arg": to_value(a)?,
        })),
        Expr::Star(a, b) => Ok(serde_json::json!({
            "op": "star",
            "args": [to_value(a)?, to_value(b)?],
        })),
        Expr::Conj(a) => Ok(serde_json::json!({"op": "conj", "arg": to_value(a)?})),
        Expr::ExpClosed(a) => Ok(serde_json::json!({"op": "exp", "arg": to_value(a)?})),
        Expr::TrigClosed { kind, inner } => {
            let op = match kind {
                TrigKind::Cos => "cos",
                TrigKind::Sin => "sin",
            };
            Ok(serde_json::json!({"op": op, "arg": to_value(inner)?}))
        }
        Expr::Series { .. }
        | Expr::MuNu { .. }
        | Expr::ExpProductClosed(..)
        | Expr::SqrtForm { .. } => Err(parse_err("expression has no surface syntax")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_poly_and_evaluate() {
        let f = parse_str(r#"{"op":"poly","coeffs":[[0,1,0,0],[1,0,0,0]]}"#).unwrap();
        // f(q) = i + q at j
        let v = f.evaluate(Quaternion::J).unwrap();
        assert!((v - (Quaternion::I + Quaternion::J)).norm() < 1e-15);
    }

    #[test]
    fn parse_builtin_with_premul() {
        let pi = std::f64::consts::PI;
        let f = parse_str(&format!(
            r#"{{"op":"builtin","name":"cos","premul":[0,{pi},0,0]}}"#
        ))
        .unwrap();
        let v = f.evaluate(Quaternion::real(0.0)).unwrap();
        assert!((v - Quaternion::I * pi).norm() < 1e-15);
    }

    #[test]
    fn parse_star_of_linear_factors() {
        let f = parse_str(
            r#"{"op":"star","args":[
                {"op":"poly","coeffs":[[0,1,0,0],[1,0,0,0]]},
                {"op":"poly","coeffs":[[0,-1,0,0],[1,0,0,0]]}
            ]}"#,
        )
        .unwrap();
        let p = f.as_poly().unwrap();
        assert!(p.coeffwise_distance(&QuaternionPolynomial::from_reals(&[1.0, 0.0, 1.0])) < 1e-15);
    }

    #[test]
    fn round_trip() {
        let source = r#"{"op":"exp","arg":{"op":"sum","args":[
            {"op":"builtin","name":"cos","premul":[0,3.141592653589793,0,0]},
            {"op":"builtin","name":"sin","premul":[0,0,3.141592653589793,0]}
        ]}}"#;
        let f = parse_str(source).unwrap();
        let text = to_value(&f).unwrap();
        let g = parse(&text).unwrap();
        let pt = Quaternion::new(0.3, 0.5, -0.2, 0.1);
        let fv = f.evaluate(pt).unwrap();
        let gv = g.evaluate(pt).unwrap();
        assert!((fv - gv).norm() < 1e-14);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_str(r#"{"op":"mystery"}"#).is_err());
        assert!(parse_str(r#"{"coeffs":[]}"#).is_err());
        assert!(parse_str(r#"{"op":"poly","coeffs":[[1,2]]}"#).is_err());
        assert!(parse_str("not json").is_err());
        // Built-in with a non-slice-preserving argument is rejected.
        assert!(parse_str(
            r#"{"op":"builtin","name":"cos","arg":{"op":"poly","coeffs":[[0,1,0,0],[1,0,0,0]]}}"#
        )
        .is_err());
    }
}
