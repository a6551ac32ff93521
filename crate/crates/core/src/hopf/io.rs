//! JSON structure-tensor files for Hopf algebras and cocycles.
//!
//! Scalars are written as `[re, im]` with rational strings when they lie in
//! `Q(i)`, otherwise as `{"z12": [c0, c1, c2, c3]}` in the power basis of
//! `ζ = e^{iπ/6}`. On input, plain numbers and `"p/q"` strings are accepted too.

use super::algebra::{group_algebra, FiniteHopfAlgebra, StarAlgebra};
use super::cocycle::{bicharacter_table, DualCocycle};
use super::{HopfError, Scalar, Terms, Terms2};
use crate::linalg::Matrix;
use crate::scalar::{fmt_rat, parse_rat, Cyclo, Field, Rat};
use serde_json::{json, Value};

fn bad(what: impl Into<String>) -> HopfError {
    HopfError::Shape(what.into())
}

fn parse_rational(v: &Value) -> Result<Rat, HopfError> {
    match v {
        Value::String(s) => parse_rat(s).ok_or_else(|| bad(format!("bad rational {s:?}"))),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_integer(i.into()))
            } else {
                let f = n.as_f64().ok_or_else(|| bad("bad number"))?;
                Rat::from_float(f).ok_or_else(|| bad("non-finite number"))
            }
        }
        _ => Err(bad(format!("expected a rational, got {v}"))),
    }
}

pub fn parse_scalar(v: &Value) -> Result<Scalar, HopfError> {
    match v {
        Value::Array(parts) if parts.len() == 2 => {
            let re = parse_rational(&parts[0])?;
            let im = parse_rational(&parts[1])?;
            Ok(Scalar::from_rat(re) + Scalar::i() * Scalar::from_rat(im))
        }
        Value::Object(map) => {
            let z = map.get("z12").and_then(Value::as_array).ok_or_else(|| bad("expected {\"z12\": [..]}"))?;
            if z.len() != 4 {
                return Err(bad("z12 needs four coefficients"));
            }
            let c: Vec<Rat> = z.iter().map(parse_rational).collect::<Result<_, _>>()?;
            Ok(Cyclo::new([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]))
        }
        other => parse_rational(other).map(Scalar::from_rat),
    }
}

pub fn scalar_json(x: &Scalar) -> Value {
    let c = x.coeffs();
    if c[1] == Rat::from_integer(0.into()) && c[2] == Rat::from_integer(0.into()) {
        json!([fmt_rat(&c[0]), fmt_rat(&c[3])])
    } else {
        json!({ "z12": c.iter().map(fmt_rat).collect::<Vec<_>>() })
    }
}

fn index(v: &Value, dim: usize) -> Result<usize, HopfError> {
    let i = v.as_u64().ok_or_else(|| bad(format!("expected an index, got {v}")))? as usize;
    if i >= dim {
        return Err(bad(format!("index {i} out of range {dim}")));
    }
    Ok(i)
}

fn array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>, HopfError> {
    v.get(key).and_then(Value::as_array).ok_or_else(|| bad(format!("missing array {key:?}")))
}

/// `[[k, c], ...]` per basis element.
fn parse_lists(v: &Value, key: &str, dim: usize) -> Result<Vec<Terms>, HopfError> {
    let rows = array(v, key)?;
    if rows.len() != dim {
        return Err(bad(format!("{key:?} needs {dim} entries")));
    }
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| bad(format!("{key:?} entry is not a list")))?
                .iter()
                .map(|pair| match pair.as_array() {
                    Some(p) if p.len() == 2 => Ok((index(&p[0], dim)?, parse_scalar(&p[1])?)),
                    _ => Err(bad(format!("{key:?} terms are [index, scalar]"))),
                })
                .collect()
        })
        .collect()
}

/// `[[i, j, k, c], ...]`
fn parse_triples(v: &Value, key: &str, dim: usize) -> Result<Vec<(usize, usize, usize, Scalar)>, HopfError> {
    array(v, key)?
        .iter()
        .map(|t| match t.as_array() {
            Some(p) if p.len() == 4 => Ok((index(&p[0], dim)?, index(&p[1], dim)?, index(&p[2], dim)?, parse_scalar(&p[3])?)),
            _ => Err(bad(format!("{key:?} entries are [i, j, k, scalar]"))),
        })
        .collect()
}

/// `{"group": [n1, n2, ...]}` or the full structure tensors.
pub fn parse_hopf(v: &Value) -> Result<FiniteHopfAlgebra, HopfError> {
    if let Some(g) = v.get("group") {
        let orders: Vec<u32> = g
            .as_array()
            .ok_or_else(|| bad("\"group\" is a list of cyclic orders"))?
            .iter()
            .map(|o| o.as_u64().filter(|&o| o >= 1).map(|o| o as u32).ok_or_else(|| bad("bad cyclic order")))
            .collect::<Result<_, _>>()?;
        return group_algebra(&orders);
    }
    let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| bad("missing \"dim\""))? as usize;
    let mut product: Vec<Terms> = vec![Vec::new(); dim * dim];
    for (i, j, k, c) in parse_triples(v, "product", dim)? {
        product[i * dim + j].push((k, c));
    }
    let mut coproduct: Vec<Terms2> = vec![Vec::new(); dim];
    for (i, a, b, c) in parse_triples(v, "coproduct", dim)? {
        coproduct[i].push((a, b, c));
    }
    let counit = array(v, "counit")?.iter().map(parse_scalar).collect::<Result<Vec<_>, _>>()?;
    if counit.len() != dim {
        return Err(bad("\"counit\" has the wrong length"));
    }
    let antipode = parse_lists(v, "antipode", dim)?;
    let star = parse_lists(v, "star", dim)?;
    let unit = match v.get("unit") {
        Some(Value::Array(_)) => parse_lists(&json!({ "unit": [v["unit"].clone()] }), "unit", 1)?.remove(0),
        Some(u) => vec![(index(u, dim)?, Scalar::one())],
        None => return Err(bad("missing \"unit\"")),
    };
    let labels = match v.get("labels").and_then(Value::as_array) {
        Some(l) if l.len() == dim => l.iter().map(|s| s.as_str().map(str::to_owned).ok_or_else(|| bad("labels are strings"))).collect::<Result<_, _>>()?,
        _ => (0..dim).map(|i| format!("e{i}")).collect(),
    };
    let algebra = StarAlgebra::new(dim, product, unit, star, labels)?;
    FiniteHopfAlgebra::new(algebra, coproduct, counit, antipode)
}

fn terms_json(t: &Terms) -> Value {
    Value::Array(t.iter().map(|(k, c)| json!([k, scalar_json(c)])).collect())
}

pub fn hopf_json(h: &FiniteHopfAlgebra) -> Value {
    let n = h.dim();
    let alg = h.algebra();
    let mut product = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in alg.basis_product(i, j) {
                product.push(json!([i, j, k, scalar_json(c)]));
            }
        }
    }
    let mut coproduct = Vec::new();
    for i in 0..n {
        for (a, b, c) in h.coproduct(i) {
            coproduct.push(json!([i, a, b, scalar_json(c)]));
        }
    }
    json!({
        "dim": n,
        "labels": alg.labels(),
        "product": product,
        "coproduct": coproduct,
        "counit": h.counit().iter().map(scalar_json).collect::<Vec<_>>(),
        "antipode": (0..n).map(|i| terms_json(h.antipode(i))).collect::<Vec<_>>(),
        "star": (0..n).map(|i| terms_json(alg.basis_star(i))).collect::<Vec<_>>(),
        "unit": terms_json(alg.unit()),
    })
}

/// `{"sigma": [[..]]}` as a full table, or
/// `{"bicharacter": {"root": n, "matrix": [[..]]}}` on a group algebra of
/// cyclic orders `orders`.
pub fn parse_cocycle(v: &Value, h: &FiniteHopfAlgebra, orders: Option<&[u32]>) -> Result<DualCocycle, HopfError> {
    let n = h.dim();
    if let Some(b) = v.get("bicharacter") {
        let orders = orders.ok_or_else(|| bad("a bicharacter needs a group algebra given by cyclic orders"))?;
        let root = b.get("root").and_then(Value::as_i64).ok_or_else(|| bad("bicharacter needs \"root\""))?;
        let form: Vec<Vec<i64>> = array(b, "matrix")?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| bad("matrix rows are lists"))?
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(|| bad("matrix entries are integers")))
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        return DualCocycle::new(h, bicharacter_table(orders, root, &form)?);
    }
    let rows = array(v, "sigma")?;
    if rows.len() != n {
        return Err(bad(format!("\"sigma\" needs {n} rows")));
    }
    let mut table = Matrix::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().filter(|r| r.len() == n).ok_or_else(|| bad(format!("\"sigma\" row {i} needs {n} entries")))?;
        for (j, x) in row.iter().enumerate() {
            table[(i, j)] = parse_scalar(x)?;
        }
    }
    DualCocycle::new(h, table)
}

pub fn cocycle_json(table: &Matrix<Scalar>) -> Value {
    json!({
        "sigma": (0..table.nrows())
            .map(|i| (0..table.ncols()).map(|j| scalar_json(&table[(i, j)])).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    })
}

/// The cyclic orders of a `{"group": [...]}` file.
pub fn group_orders(v: &Value) -> Option<Vec<u32>> {
    v.get("group")?.as_array()?.iter().map(|o| o.as_u64().map(|o| o as u32)).collect()
}
