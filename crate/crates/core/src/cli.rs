//! Command dispatch shared by the `phinmod` binary and the C interface:
//! JSON payload in, canonical JSON out, with an exit code.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::adjoint::{ad_frobenius, one_minus_pad, FrobTuple, BASIS_ORDERING};
use crate::components::{
    gl2_charpoly_formula, gl2_report, gl2_x0_tangent, reg_filtration_reconstruct, singularity_certificate, sub_fiber,
};
use crate::error::{Error, Result};
use crate::field::QuadField;
use crate::json;
use crate::linalg::{jordan_type, Mat};
use crate::moduli::{canonical_point, complex_dims, filtered_complex_dims, tangent_space, validate_point, Filtration,
    ModuliPoint};
use crate::nilpotent::associated_cocharacter;
use crate::selftest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    Validate,
    CharpolyAd,
    Kernel,
    JordanType,
    AssocCochar,
    CanonicalPoint,
    ComplexDims,
    ComplexDimsFiltered,
    TangentDim,
    Gl2Report,
    Gl2X0Tangent,
    RegReconstruct,
    Gl3SubFiber,
    Gl3Certificate,
    Selftest,
}

impl Command {
    pub const ALL: [Command; 15] = [
        Command::Validate,
        Command::CharpolyAd,
        Command::Kernel,
        Command::JordanType,
        Command::AssocCochar,
        Command::CanonicalPoint,
        Command::ComplexDims,
        Command::ComplexDimsFiltered,
        Command::TangentDim,
        Command::Gl2Report,
        Command::Gl2X0Tangent,
        Command::RegReconstruct,
        Command::Gl3SubFiber,
        Command::Gl3Certificate,
        Command::Selftest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::CharpolyAd => "charpoly-ad",
            Command::Kernel => "kernel",
            Command::JordanType => "jordan-type",
            Command::AssocCochar => "assoc-cochar",
            Command::CanonicalPoint => "canonical-point",
            Command::ComplexDims => "complex-dims",
            Command::ComplexDimsFiltered => "complex-dims-filtered",
            Command::TangentDim => "tangent-dim",
            Command::Gl2Report => "gl2-report",
            Command::Gl2X0Tangent => "gl2-x0-tangent",
            Command::RegReconstruct => "reg-reconstruct",
            Command::Gl3SubFiber => "gl3-sub-fiber",
            Command::Gl3Certificate => "gl3-certificate",
            Command::Selftest => "selftest",
        }
    }

    /// Whether the command reads a payload at all.
    pub fn takes_input(self) -> bool {
        self != Command::Selftest
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Command> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown command {s:?}")))
    }
}

/// Ambient parameters of a run. `n` is inferred from the payload when
/// absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SessionConfig {
    pub field: QuadField,
    pub n: Option<usize>,
    pub f: usize,
    pub command: Command,
}

pub const N_RANGE: std::ops::RangeInclusive<usize> = 2..=4;
pub const F_RANGE: std::ops::RangeInclusive<usize> = 1..=3;

impl SessionConfig {
    pub fn new(p: u64, n: Option<usize>, f: usize, command: Command) -> Result<SessionConfig> {
        let field = QuadField::new(p)?;
        if let Some(n) = n {
            if !N_RANGE.contains(&n) {
                return Err(Error::Invalid(format!("n = {n} outside {N_RANGE:?}")));
            }
        }
        if !F_RANGE.contains(&f) {
            return Err(Error::Invalid(format!("f = {f} outside {F_RANGE:?}")));
        }
        Ok(SessionConfig { field, n, f, command })
    }

    fn check_n(&self, n: usize) -> Result<()> {
        match self.n {
            Some(expected) if expected != n => Err(Error::Shape(format!("expected n = {expected}, got {n}"))),
            None if !N_RANGE.contains(&n) => Err(Error::Invalid(format!("n = {n} outside {N_RANGE:?}"))),
            _ => Ok(()),
        }
    }

    fn field_value<'a>(&self, payload: &'a Value, key: &str) -> Result<&'a Value> {
        payload
            .get(key)
            .ok_or_else(|| Error::Invalid(format!("payload needs a {key:?} field")))
    }

    fn matrix(&self, payload: &Value, key: &str) -> Result<Mat> {
        let m = json::parse_mat(self.field, self.field_value(payload, key)?)?;
        if !m.is_square() {
            return Err(Error::Shape(format!("{key} must be square")));
        }
        self.check_n(m.rows())?;
        Ok(m)
    }

    fn tuple(&self, payload: &Value, key: &str) -> Result<Vec<Mat>> {
        let ms = json::parse_tuple(self.field, self.field_value(payload, key)?, self.f)?;
        for m in &ms {
            if !m.is_square() {
                return Err(Error::Shape(format!("{key} must consist of square matrices")));
            }
            self.check_n(m.rows())?;
        }
        Ok(ms)
    }

    fn group(&self, payload: &Value) -> Result<FrobTuple> {
        FrobTuple::group(self.tuple(payload, "phi")?)
    }

    fn point(&self, payload: &Value) -> Result<ModuliPoint> {
        validate_point(self.group(payload)?, FrobTuple::lie(self.tuple(payload, "nil")?)?)
    }

    fn single_phi(&self, payload: &Value) -> Result<Mat> {
        if self.f != 1 {
            return Err(Error::Unsupported(format!("{} needs f = 1", self.command)));
        }
        self.matrix(payload, "phi")
    }
}

/// Runs one payload.
pub fn run_value(cfg: &SessionConfig, payload: &Value) -> Result<Value> {
    match cfg.command {
        Command::Validate => {
            let pt = cfg.point(payload)?;
            Ok(json!({"valid": true, "n": pt.n(), "f": pt.f(), "p": pt.p()}))
        }
        Command::CharpolyAd => {
            let phi = cfg.group(payload)?;
            let ad = ad_frobenius(&phi)?;
            let mut out = json!({
                "charpoly": json::scalars(ad.matrix().charpoly().coeffs()),
                "order": "ascending",
            });
            if phi.n() == 2 && phi.f() == 1 {
                let formula = gl2_charpoly_formula(&phi.mats()[0])?;
                out["gl2_formula"] = json::scalars(&formula);
            }
            Ok(out)
        }
        Command::Kernel => {
            let phi = cfg.group(payload)?;
            let k = one_minus_pad(&phi)?.kernel();
            Ok(json!({
                "dim": k.dim(),
                "basis": json::subspace_basis(&k, phi.n()),
                "basis_ordering": BASIS_ORDERING,
            }))
        }
        Command::JordanType => {
            let nil = cfg.matrix(payload, "nil")?;
            Ok(json!({"partition": jordan_type(&nil)?.parts()}))
        }
        Command::AssocCochar => {
            let nil = cfg.matrix(payload, "nil")?;
            Ok(json::cochar(&associated_cocharacter(&nil)?))
        }
        Command::CanonicalPoint => {
            let nil = cfg.matrix(payload, "nil")?;
            Ok(json::point(&canonical_point(&nil, cfg.f)?))
        }
        Command::ComplexDims => Ok(json::complex_report(&complex_dims(&cfg.point(payload)?)?)),
        Command::ComplexDimsFiltered => {
            let pt = cfg.point(payload)?;
            let weights: Vec<i32> = serde_json::from_value(cfg.field_value(payload, "weights")?.clone())
                .map_err(|e| Error::Invalid(format!("weights: {e}")))?;
            if weights.len() != pt.n() {
                return Err(Error::Shape(format!("need {} weights, got {}", pt.n(), weights.len())));
            }
            let fil = Filtration::from_weights(cfg.field, weights, pt.f());
            let mut out = json::complex_report(&filtered_complex_dims(&pt, &fil)?);
            out["fil0_dim"] = json!(fil.fil0.dim());
            Ok(out)
        }
        Command::TangentDim => {
            let pt = cfg.point(payload)?;
            Ok(json!({"tangent_dim": tangent_space(&pt)?.dim()}))
        }
        Command::Gl2Report => Ok(json::gl2_report(&gl2_report(&cfg.group(payload)?)?)),
        Command::Gl2X0Tangent => {
            let t = gl2_x0_tangent(&cfg.group(payload)?)?;
            Ok(json!({
                "divisor_tangent_dim": t.divisor_tangent_dim,
                "kernel_dim": t.kernel_dim,
                "tangent_dim": t.total,
            }))
        }
        Command::RegReconstruct => {
            let pt = cfg.point(payload)?;
            Ok(json::parabolic(&reg_filtration_reconstruct(&pt)?))
        }
        Command::Gl3SubFiber => Ok(json::sub_fiber(&sub_fiber(&cfg.single_phi(payload)?)?)),
        Command::Gl3Certificate => Ok(json::certificate(&singularity_certificate(&cfg.single_phi(payload)?)?)),
        Command::Selftest => {
            let outcomes = selftest::run_all();
            let failed = outcomes.iter().filter(|o| o.error.is_some()).count();
            let checks: Vec<Value> = outcomes
                .iter()
                .map(|o| json!({"name": o.name, "ok": o.error.is_none(), "error": o.error}))
                .collect();
            if failed > 0 {
                return Err(Error::Internal(format!("{failed} self-test checks failed: {}", Value::Array(checks))));
            }
            Ok(json!({"passed": outcomes.len(), "failed": 0, "checks": checks}))
        }
    }
}

/// One payload, or an array of payloads in batch mode. Returns the
/// serialized report and the exit code (the largest over batch items).
pub fn run_json(cfg: &SessionConfig, input: &str, batch: bool) -> (String, i32) {
    let (value, code) = run_parsed(cfg, input, batch);
    let mut text = serde_json::to_string(&value).expect("values serialize");
    text.push('\n');
    (text, code)
}

fn run_parsed(cfg: &SessionConfig, input: &str, batch: bool) -> (Value, i32) {
    let payload: Value = if !cfg.command.takes_input() && input.trim().is_empty() {
        Value::Null
    } else {
        match serde_json::from_str(input) {
            Ok(v) => v,
            Err(e) => {
                let err = Error::Invalid(format!("malformed JSON: {e}"));
                return (json::error(&err), err.exit_code());
            }
        }
    };
    if batch {
        let Some(items) = payload.as_array() else {
            let err = Error::Invalid("batch input must be a JSON array".into());
            return (json::error(&err), err.exit_code());
        };
        let results: Vec<(Value, i32)> = items.par_iter().map(|item| single(cfg, item)).collect();
        let code = results.iter().map(|(_, c)| *c).max().unwrap_or(0);
        (Value::Array(results.into_iter().map(|(v, _)| v).collect()), code)
    } else {
        single(cfg, &payload)
    }
}

fn single(cfg: &SessionConfig, payload: &Value) -> (Value, i32) {
    let outcome = std::panic::catch_unwind(|| run_value(cfg, payload))
        .unwrap_or_else(|_| Err(Error::Internal("computation panicked".into())));
    match outcome {
        Ok(v) => (v, 0),
        Err(e) => (json::error(&e), e.exit_code()),
    }
}
