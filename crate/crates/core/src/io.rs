//! JSON formats for scalars, algebras, quantum groups, families and group
//! tables.
//!
//! Scalars are `[re, im]` pairs of strings (`"p/q"` for the exact backend,
//! decimal for the float backend); a bare string or integer is read as a
//! real number. Matrices are either dense (an array of rows) or sparse:
//! `{"rows": r, "cols": c, "entries": [[i, j, scalar], ...]}`. Output always
//! uses the sparse form with entries in row-major order, and object keys are
//! emitted sorted, so identical data serializes to identical bytes.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::algebra::{Algebra, BlockAlgebra, StarAlgebra};
use crate::constructors::{function_algebra, group_algebra};
use crate::error::{Error, Result};
use crate::family::QuantumFamily;
use crate::fourier::DualPair;
use crate::group::{named_group, FiniteGroup, GroupTable};
use crate::hopf::{Bialgebra, QuantumGroup};
use crate::linalg::SparseVec;
use crate::map::LinearMap;
use crate::scalar::Scalar;

fn parse_err(what: &str, detail: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{what}: {detail}"))
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| parse_err(key, "missing field"))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| parse_err(what, "expected a non-negative integer"))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(what, "expected an array"))
}

fn text(v: &Value, what: &str) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(parse_err(what, "expected a number or string")),
    }
}

pub fn scalar_to_json<S: Scalar>(x: &S) -> Value {
    let (re, im) = x.to_parts();
    json!([re, im])
}

pub fn scalar_from_json<S: Scalar>(v: &Value) -> Result<S> {
    match v {
        Value::Array(parts) if parts.len() == 2 => S::parse(&text(&parts[0], "re")?, &text(&parts[1], "im")?),
        Value::String(_) | Value::Number(_) => S::parse(&text(v, "scalar")?, "0"),
        _ => Err(parse_err("scalar", "expected [re, im], a string or a number")),
    }
}

pub fn vector_to_json<S: Scalar>(v: &SparseVec<S>, dim: usize) -> Value {
    Value::Array(v.to_dense(dim).iter().map(scalar_to_json).collect())
}

pub fn vector_from_json<S: Scalar>(v: &Value, dim: usize, what: &str) -> Result<SparseVec<S>> {
    let items = as_array(v, what)?;
    if items.len() != dim {
        return Err(parse_err(what, format!("expected {dim} entries, got {}", items.len())));
    }
    let coeffs = items.iter().map(scalar_from_json).collect::<Result<Vec<S>>>()?;
    Ok(SparseVec::from_dense(&coeffs))
}

pub fn map_to_json<S: Scalar>(m: &LinearMap<S>) -> Value {
    let mut entries: Vec<(usize, usize, &S)> = Vec::new();
    for (j, col) in m.columns().iter().enumerate() {
        entries.extend(col.iter().map(|(i, c)| (i, j, c)));
    }
    entries.sort_by_key(|&(i, j, _)| (i, j));
    json!({
        "rows": m.target_dim(),
        "cols": m.source_dim(),
        "entries": entries.into_iter().map(|(i, j, c)| json!([i, j, scalar_to_json(c)])).collect::<Vec<_>>(),
    })
}

/// Read a matrix with the expected shape `rows × cols`.
pub fn map_from_json<S: Scalar>(v: &Value, rows: usize, cols: usize, what: &str) -> Result<LinearMap<S>> {
    match v {
        Value::Array(dense) => {
            let parsed = dense
                .iter()
                .map(|row| as_array(row, what)?.iter().map(scalar_from_json).collect::<Result<Vec<S>>>())
                .collect::<Result<Vec<_>>>()?;
            if parsed.len() != rows {
                return Err(parse_err(what, format!("expected {rows} rows, got {}", parsed.len())));
            }
            LinearMap::from_rows(&parsed, cols).map_err(|e| parse_err(what, e))
        }
        Value::Object(_) => {
            let (r, c) = (as_usize(field(v, "rows")?, what)?, as_usize(field(v, "cols")?, what)?);
            if (r, c) != (rows, cols) {
                return Err(parse_err(what, format!("expected shape {rows}×{cols}, got {r}×{c}")));
            }
            let mut buckets: Vec<Vec<(usize, S)>> = vec![Vec::new(); cols];
            for e in as_array(field(v, "entries")?, what)? {
                let t = as_array(e, what)?;
                if t.len() != 3 {
                    return Err(parse_err(what, "entries are [row, col, scalar]"));
                }
                let (i, j) = (as_usize(&t[0], what)?, as_usize(&t[1], what)?);
                if i >= rows || j >= cols {
                    return Err(parse_err(what, format!("entry ({i}, {j}) out of range")));
                }
                buckets[j].push((i, scalar_from_json(&t[2])?));
            }
            LinearMap::from_columns(rows, buckets.into_iter().map(SparseVec::from_pairs).collect())
        }
        _ => Err(parse_err(what, "expected a matrix")),
    }
}

fn algebra_fields<S: Scalar>(a: &StarAlgebra<S>) -> Map<String, Value> {
    let n = a.dim();
    let mult: Vec<Value> = a
        .constants()
        .map(|(i, j, k, c)| {
            let (re, im) = c.to_parts();
            json!([i, j, k, re, im])
        })
        .collect();
    let mut obj = Map::new();
    obj.insert("dim".into(), json!(n));
    obj.insert("label".into(), json!(a.label()));
    obj.insert("mult".into(), Value::Array(mult));
    obj.insert("unit".into(), vector_to_json(&a.unit(), n));
    obj.insert("star".into(), map_to_json(&a.star_matrix()));
    obj
}

pub fn algebra_to_json<S: Scalar>(a: &StarAlgebra<S>) -> Value {
    Value::Object(algebra_fields(a))
}

/// An algebra object, `{"blocks": [n1, n2, ...]}` for a direct sum of matrix
/// algebras, or `"fun:NAME"` / `"grp:NAME"` for the algebra of a built-in
/// group.
pub fn algebra_from_json<S: Scalar>(v: &Value) -> Result<StarAlgebra<S>> {
    if let Value::String(s) = v {
        return Ok(quantum_group_ref::<S>(s)?.algebra);
    }
    if let Some(blocks) = v.get("blocks") {
        let blocks = as_array(blocks, "blocks")?.iter().map(|b| as_usize(b, "blocks")).collect::<Result<Vec<_>>>()?;
        return Ok(BlockAlgebra::<S>::new(&blocks)?.algebra);
    }
    let n = as_usize(field(v, "dim")?, "dim")?;
    let label = v.get("label").and_then(Value::as_str).unwrap_or("A").to_string();
    let mut constants = Vec::new();
    for e in as_array(field(v, "mult")?, "mult")? {
        let t = as_array(e, "mult")?;
        if t.len() != 5 {
            return Err(parse_err("mult", "entries are [i, j, k, re, im]"));
        }
        let idx = (as_usize(&t[0], "mult")?, as_usize(&t[1], "mult")?, as_usize(&t[2], "mult")?);
        let c = S::parse(&text(&t[3], "mult")?, &text(&t[4], "mult")?)?;
        constants.push((idx.0, idx.1, idx.2, c));
    }
    let unit = vector_from_json(field(v, "unit")?, n, "unit")?;
    let star = map_from_json::<S>(field(v, "star")?, n, n, "star")?;
    StarAlgebra::from_constants(label, n, constants, unit, star.columns().to_vec())
}

pub fn quantum_group_to_json<S: Scalar>(g: &QuantumGroup<S>) -> Value {
    let mut obj = algebra_fields(&g.algebra);
    obj.insert("coproduct".into(), map_to_json(&g.coproduct));
    obj.insert("counit".into(), map_to_json(&g.counit));
    obj.insert("antipode".into(), map_to_json(&g.antipode));
    obj.insert("haar_state".into(), map_to_json(&g.haar_state));
    obj.insert("haar_element".into(), vector_to_json(&g.haar_element, g.dim()));
    Value::Object(obj)
}

/// `F(NAME)` for `"fun:NAME"`, `ℂ[NAME]` for `"grp:NAME"`.
pub fn quantum_group_ref<S: Scalar>(spec: &str) -> Result<QuantumGroup<S>> {
    match spec.split_once(':') {
        Some(("fun", name)) => Ok(function_algebra(&named_group(name)?)),
        Some(("grp", name)) => Ok(group_algebra(&named_group(name)?)),
        _ => Err(parse_err("group reference", format!("{spec:?} is not fun:NAME or grp:NAME"))),
    }
}

pub fn quantum_group_from_json<S: Scalar>(v: &Value) -> Result<QuantumGroup<S>> {
    if let Value::String(s) = v {
        return quantum_group_ref(s);
    }
    let algebra = algebra_from_json::<S>(v)?;
    let n = algebra.dim();
    let coproduct = map_from_json(field(v, "coproduct")?, n * n, n, "coproduct")?;
    let counit = map_from_json(field(v, "counit")?, 1, n, "counit")?;
    let antipode = map_from_json(field(v, "antipode")?, n, n, "antipode")?;
    let haar_state = v.get("haar_state").map(|h| map_from_json(h, 1, n, "haar_state")).transpose()?;
    let haar_element = v.get("haar_element").map(|e| vector_from_json(e, n, "haar_element")).transpose()?;
    QuantumGroup::new(algebra, coproduct, counit, antipode, haar_state, haar_element)
}

pub fn group_from_json(v: &Value) -> Result<FiniteGroup> {
    match v {
        Value::String(name) => named_group(name),
        _ => {
            let t: GroupTable = serde_json::from_value(v.clone())?;
            FiniteGroup::from_group_table("table", t)
        }
    }
}

/// A family file: `source`, `target`, `alpha`, optional `hopf_on_B`
/// (coproduct and counit on the target, or a `"fun:NAME"` reference),
/// optional `label` and optional classical `group`.
#[derive(Clone, Debug)]
pub struct FamilyFile<S> {
    pub family: QuantumFamily<S>,
    pub group: Option<FiniteGroup>,
    /// The source reference when the source was given by name.
    pub source_ref: Option<String>,
}

pub fn family_from_json<S: Scalar>(v: &Value) -> Result<FamilyFile<S>> {
    let source = Arc::new(quantum_group_from_json::<S>(field(v, "source")?)?);
    let target = algebra_from_json::<S>(field(v, "target")?)?;
    let (n, m) = (source.dim(), target.dim());
    let alpha = map_from_json(field(v, "alpha")?, n * m, n, "alpha")?;
    let hopf = match v.get("hopf_on_B") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(quantum_group_ref::<S>(s)?.bialgebra()),
        Some(h) => Some(Bialgebra {
            coproduct: map_from_json(field(h, "coproduct")?, m * m, m, "hopf_on_B.coproduct")?,
            counit: map_from_json(field(h, "counit")?, 1, m, "hopf_on_B.counit")?,
        }),
    };
    let label = v.get("label").and_then(Value::as_str).unwrap_or("family").to_string();
    let source_ref = v["source"].as_str().map(str::to_string);
    let mut group = v.get("group").map(group_from_json).transpose()?;
    if group.is_none() {
        if let Some((_, name)) = source_ref.as_deref().and_then(|s| s.split_once(':')) {
            group = Some(named_group(name)?);
        }
    }
    let family = QuantumFamily::new(label, source, Arc::new(target), alpha, hopf.map(Arc::new))?;
    Ok(FamilyFile { family, group, source_ref })
}

/// Serialize a family. `source_ref` replaces the inline source when given
/// (for instance `"fun:D4"`).
pub fn family_to_json<S: Scalar>(qf: &QuantumFamily<S>, source_ref: Option<&str>, group: Option<&str>) -> Value {
    let mut obj = Map::new();
    obj.insert("label".into(), json!(qf.label));
    obj.insert(
        "source".into(),
        source_ref.map_or_else(|| quantum_group_to_json(&qf.source), |s| json!(s)),
    );
    obj.insert("target".into(), algebra_to_json(&qf.target));
    obj.insert("alpha".into(), map_to_json(&qf.alpha));
    if let Some(h) = &qf.hopf_on_target {
        obj.insert(
            "hopf_on_B".into(),
            json!({"coproduct": map_to_json(&h.coproduct), "counit": map_to_json(&h.counit)}),
        );
    }
    if let Some(g) = group {
        obj.insert("group".into(), json!(g));
    }
    Value::Object(obj)
}

pub fn dual_to_json<S: Scalar>(p: &DualPair<S>) -> Value {
    json!({
        "primal": p.primal.label(),
        "dual": quantum_group_to_json(&p.dual),
        "fourier": map_to_json(&p.fourier),
        "fourier_dual": map_to_json(&p.fourier_dual),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::symmetric;
    use crate::scalar::{Exact, Float};

    #[test]
    fn quantum_group_round_trip() {
        let g = group_algebra::<Exact>(&symmetric(3).unwrap());
        let text = serde_json::to_string(&quantum_group_to_json(&g)).unwrap();
        let back = quantum_group_from_json::<Exact>(&serde_json::from_str(&text).unwrap()).unwrap();
        assert!(back.approx_eq(&g));
        assert_eq!(serde_json::to_string(&quantum_group_to_json(&back)).unwrap(), text);
    }

    #[test]
    fn scalar_forms() {
        let x: Exact = scalar_from_json(&json!(["1/2", "-3"])).unwrap();
        assert!(x.approx_eq(&Exact::complex(1, 2, -3, 1)));
        let y: Exact = scalar_from_json(&json!(2)).unwrap();
        assert!(y.approx_eq(&Exact::from_i64(2)));
        let z: Float = scalar_from_json(&json!(["0.5", "0"])).unwrap();
        assert!(z.approx_eq(&Float::new(0.5, 0.0)));
        assert!(scalar_from_json::<Exact>(&json!({"re": 1})).is_err());
    }

    #[test]
    fn dense_and_sparse_matrices_agree() {
        let dense = json!([[1, 0], [0, "2/3"], [["0", "1"], 0]]);
        let sparse = json!({"rows": 3, "cols": 2, "entries": [[0, 0, 1], [1, 1, "2/3"], [2, 0, ["0", "1"]]]});
        let a = map_from_json::<Exact>(&dense, 3, 2, "m").unwrap();
        let b = map_from_json::<Exact>(&sparse, 3, 2, "m").unwrap();
        assert!(a.approx_eq(&b));
        assert!(map_from_json::<Exact>(&dense, 2, 2, "m").is_err());
    }

    #[test]
    fn family_reference_sources() {
        let v = json!({
            "source": "fun:Z2",
            "target": {"blocks": [1]},
            "alpha": [[1, 0], [0, 1]],
        });
        let f = family_from_json::<Exact>(&v).unwrap();
        assert_eq!(f.family.dim_target(), 1);
        assert!(family_from_json::<Exact>(&json!({"source": "fun:Z2"})).is_err());
    }
}
