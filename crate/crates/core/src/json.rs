//! Canonical JSON forms. Scalars are written as `["a", "b"]` meaning
//! `a + b sqrt p`, each a reduced fraction `"n/d"` or `"0"`. Objects are
//! `serde_json` maps, whose keys serialize in sorted order.

use serde_json::{json, Map, Value};

use crate::components::{Cardinality, Gl2Report, SingularityCertificate, SubFiber};
use crate::error::{Error, Result};
use crate::field::{QuadField, Scalar};
use crate::linalg::{Mat, Subspace};
use crate::moduli::{ComplexReport, ModuliPoint};
use crate::nilpotent::{Cochar, ParabolicData};

pub fn scalar(s: &Scalar) -> Value {
    let [a, b] = s.to_pair();
    json!([a, b])
}

pub fn scalars(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn mat(m: &Mat) -> Value {
    Value::Array((0..m.rows()).map(|r| scalars(m.row(r))).collect())
}

pub fn mats(ms: &[Mat]) -> Value {
    Value::Array(ms.iter().map(mat).collect())
}

fn rational_text(v: &Value) -> Result<String> {
    match v {
        Value::Number(n) if n.is_i64() => Ok(n.to_string()),
        Value::String(s) => Ok(s.clone()),
        _ => Err(Error::Invalid(format!("not a rational number: {v}"))),
    }
}

fn is_scalar(v: &Value) -> bool {
    match v {
        Value::Number(_) | Value::String(_) => true,
        Value::Array(xs) => xs.len() == 2 && xs.iter().all(|x| x.is_number() || x.is_string()),
        _ => false,
    }
}

/// Accepts an integer, a rational string `"n/d"`, or a pair `[a, b]` for
/// `a + b sqrt p`.
pub fn parse_scalar(field: QuadField, v: &Value) -> Result<Scalar> {
    match v {
        Value::Array(xs) if xs.len() == 2 => field.parse_pair(&rational_text(&xs[0])?, &rational_text(&xs[1])?),
        Value::Number(_) | Value::String(_) => Ok(field.rational(QuadField::parse_rational(&rational_text(v)?)?)),
        _ => Err(Error::Invalid(format!("not a scalar: {v}"))),
    }
}

pub fn parse_mat(field: QuadField, v: &Value) -> Result<Mat> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Invalid("a matrix is a list of rows".into()))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Invalid("a matrix row is a list of scalars".into()))?
                .iter()
                .map(|x| parse_scalar(field, x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Mat::from_rows(field, rows)
}

fn looks_like_matrix(v: &Value) -> bool {
    v.as_array().is_some_and(|rows| {
        !rows.is_empty()
            && rows
                .iter()
                .all(|r| r.as_array().is_some_and(|xs| xs.iter().all(is_scalar)))
    })
}

/// A tuple of `f` matrices, written as a list of matrices. When `f = 1` a
/// bare matrix is accepted as well.
pub fn parse_tuple(field: QuadField, v: &Value, f: usize) -> Result<Vec<Mat>> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Invalid("expected a list of matrices".into()))?;
    if f == 1 && items.len() > 1 && looks_like_matrix(v) {
        return Ok(vec![parse_mat(field, v)?]);
    }
    if items.len() != f {
        return Err(Error::Shape(format!("expected {f} matrices, got {}", items.len())));
    }
    items.iter().map(|m| parse_mat(field, m)).collect()
}

pub fn subspace_basis(s: &Subspace, n: usize) -> Value {
    let field = s.field();
    Value::Array(
        s.basis()
            .iter()
            .map(|v| mats(&crate::adjoint::vec_to_tuple(field, n, v)))
            .collect(),
    )
}

pub fn point(pt: &ModuliPoint) -> Value {
    json!({
        "phi": mats(pt.phi().mats()),
        "nil": mats(pt.nil().mats()),
    })
}

pub fn complex_report(r: &ComplexReport) -> Value {
    json!({
        "h0": r.h0,
        "h1": r.h1,
        "h2": r.h2,
        "rank_d0": r.rank_d0,
        "rank_d1": r.rank_d1,
        "filtered": r.filtered,
        "tangent_dim": r.tangent_dim,
    })
}

pub fn cochar(c: &Cochar) -> Value {
    json!({
        "conjugator": mat(c.conjugator()),
        "weights": c.weights(),
    })
}

fn basis_matrices(s: &Subspace, n: usize) -> Value {
    let field = s.field();
    Value::Array(s.basis().iter().map(|v| mat(&Mat::from_vec(field, n, v))).collect())
}

pub fn parabolic(par: &ParabolicData) -> Value {
    let n = par.n();
    let filtration: Vec<Value> = par
        .filtration
        .jumps()
        .iter()
        .map(|(k, s)| json!({"k": k, "dim": s.dim(), "basis": basis_matrices(s, n)}))
        .collect();
    json!({
        "cochar": cochar(&par.cochar),
        "p_lie": basis_matrices(&par.p_lie, n),
        "u_lie": basis_matrices(&par.u_lie, n),
        "levi_lie": basis_matrices(&par.levi_lie, n),
        "p_dim": par.p_lie.dim(),
        "u_dim": par.u_lie.dim(),
        "pattern": par.entry_pattern(),
        "filtration": filtration,
    })
}

pub fn gl2_report(r: &Gl2Report) -> Value {
    json!({
        "trace_nm": scalar(&r.trace_nm),
        "det_nm": scalar(&r.det_nm),
        "divisor_value": scalar(&r.divisor_value),
        "on_divisor": r.on_divisor,
        "charpoly_ad": scalars(&r.charpoly_ad),
        "kernel_dim": r.kernel_dim,
    })
}

pub fn cardinality(c: Cardinality) -> Value {
    match c {
        Cardinality::Finite(k) => json!(k),
        Cardinality::InfiniteP1 => json!("P1"),
    }
}

pub fn sub_fiber(fib: &SubFiber) -> Value {
    let rays: Vec<Value> = fib
        .rays
        .iter()
        .map(|r| {
            json!({
                "ray": mat(&r.ray),
                "pattern": r.parabolic.entry_pattern(),
                "p_lie": basis_matrices(&r.parabolic.p_lie, 3),
                "phi_in_parabolic": r.phi_in_parabolic,
            })
        })
        .collect();
    json!({
        "preimages": cardinality(fib.cardinality),
        "kernel_dim": fib.kernel.dim(),
        "kernel_basis": basis_matrices(&fib.kernel, 3),
        "rays": rays,
    })
}

pub fn certificate(c: &SingularityCertificate) -> Value {
    json!({
        "verdict": c.verdict.as_str(),
        "preimages": cardinality(c.preimages),
        "in_x_reg": c.in_x_reg,
    })
}

/// `{"error": {"kind", "message", "exit_code", ["index"]}}`.
pub fn error(e: &Error) -> Value {
    let mut obj = Map::new();
    obj.insert("kind".into(), json!(e.kind()));
    obj.insert("message".into(), json!(e.to_string()));
    obj.insert("exit_code".into(), json!(e.exit_code()));
    if let Error::RelationViolated { index } = e {
        obj.insert("index".into(), json!(index));
    }
    json!({ "error": Value::Object(obj) })
}
