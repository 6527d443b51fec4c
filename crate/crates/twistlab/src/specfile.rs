//! Structured-text spec and report files for the command-line driver.
//!
//! A **spec file** is a TOML document (format version 1) that declares a
//! scalar field, named coalgebras and algebras as sparse structure-constant
//! lists, named twisting maps as sparse or dense matrices, named functionals
//! as coefficient lists, and an ordered list of tasks to run. A **report
//! file** is the TOML document a run produces: one record per task with a
//! `pass` / `fail` / `error` verdict, basis-index witnesses for failed
//! identities, derived artifacts (computed counit coefficients, unit
//! elements, convolution inverses, intertwiner matrices), and a timing field.
//! Everything except the timing fields is deterministic: the same spec file
//! always yields byte-identical report text.
//!
//! The full grammar and the meaning of every check name are documented in
//! `docs/spec-format.md` at the repository root.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algtwist::{
    check_assoc, check_assoc_pentagons, is_in_tw_alg, is_normal, AlgTwist, TwistedAlgebra,
};
use crate::coalg::{Algebra, Coalgebra};
use crate::cotwist::{check_octagon, check_pentagons, is_conormal, Twist, TwistedCoalgebra};
use crate::equiv::{search_theta, ThetaSearchSpace};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::functionals::{conv_inverse, is_in_tw, star_inverse, Functional};
use crate::linmap::{LinMap, Mat};
use crate::report::Report;
use crate::space::TensorSpace;
use crate::zoo::{self, ZooItem};

/// The spec/report format version this build reads and writes.
pub const FORMAT_VERSION: u32 = 1;

/// Check names that operate on a twist through the coalgebra structure of
/// its domain objects.
pub const COALGEBRA_CHECKS: &[&str] = &["octagon", "pentagons", "conormal", "counit", "tw"];

/// Check names that operate on a twist through the algebra structure of its
/// domain objects.
pub const ALGEBRA_CHECKS: &[&str] = &[
    "assoc",
    "product-pentagons",
    "normal",
    "unit",
    "tw-alg",
    "algebra-axioms",
];

/// Check names that relate two twists.
pub const EQUIVALENCE_CHECKS: &[&str] = &["equivalent"];

/// Every check name the task runner understands.
pub const ALL_CHECKS: &[&str] = &[
    "octagon",
    "pentagons",
    "conormal",
    "counit",
    "tw",
    "assoc",
    "product-pentagons",
    "normal",
    "unit",
    "tw-alg",
    "coalgebra-axioms",
    "algebra-axioms",
    "conv-inverse",
    "star-inverse",
    "equivalent",
];

// ---------------------------------------------------------------------------
// Raw document layer (exactly what the TOML contains)
// ---------------------------------------------------------------------------

/// An exact scalar literal: a TOML integer, or a string `"n"` / `"p/q"`.
///
/// Numerator and denominator must fit in a signed 64-bit integer; over the
/// rationals the value is kept exact, over a prime field it is reduced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

/// The scalar field a spec works over: `{ kind = "rational" }` or
/// `{ kind = "prime", p = 7 }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDesc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

/// A coalgebra given by sparse structure constants on basis `e_0..e_{dim-1}`.
///
/// `delta` entries `[i, j, k, c]` mean: the coproduct of `e_i` contains the
/// term `c * e_j (x) e_k`. `eps` entries `[i, c]` mean: the counit sends
/// `e_i` to `c`. Repeated index patterns accumulate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoalgebraDecl {
    pub name: String,
    pub dim: usize,
    pub delta: Vec<(usize, usize, usize, Scalar)>,
    pub eps: Vec<(usize, Scalar)>,
}

/// An algebra given by sparse structure constants on basis `e_0..e_{dim-1}`.
///
/// `mul` entries `[i, j, k, c]` mean: the product `e_i * e_j` contains the
/// term `c * e_k`. `unit` entries `[k, c]` give the coefficients of the unit
/// element. Repeated index patterns accumulate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDecl {
    pub name: String,
    pub dim: usize,
    pub mul: Vec<(usize, usize, usize, Scalar)>,
    pub unit: Vec<(usize, Scalar)>,
}

/// A linear map `X (x) Y -> Y (x) X` between tensor squares of declared
/// objects, given either as sparse `[row, col, c]` entries or as a dense
/// row-major matrix. `codomain` must be the reverse of `domain`.
///
/// Basis indexing is row-major with the leftmost tensor factor most
/// significant: column `i * dim(Y) + j` is `e_i (x) e_j` in `X (x) Y`, row
/// `j * dim(X) + i` is `e_j (x) e_i` in `Y (x) X`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistDecl {
    pub name: String,
    pub domain: (String, String),
    pub codomain: (String, String),
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<(usize, usize, Scalar)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dense: Option<Vec<Vec<Scalar>>>,
}

/// A functional on `X (x) Y` given by its full coefficient list against the
/// row-major product basis (length `dim(X) * dim(Y)`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionalDecl {
    pub name: String,
    pub on: (String, String),
    pub coeffs: Vec<Scalar>,
}

/// One task: a named check applied to declared objects. Which parameter
/// fields are required depends on `check`; see `docs/spec-format.md`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskDecl {
    pub check: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functional: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

/// A parsed spec file, before object references are resolved.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDoc {
    pub version: u32,
    pub field: FieldDesc,
    #[serde(default, rename = "coalgebra", skip_serializing_if = "Vec::is_empty")]
    pub coalgebras: Vec<CoalgebraDecl>,
    #[serde(default, rename = "algebra", skip_serializing_if = "Vec::is_empty")]
    pub algebras: Vec<AlgebraDecl>,
    #[serde(default, rename = "twist", skip_serializing_if = "Vec::is_empty")]
    pub twists: Vec<TwistDecl>,
    #[serde(default, rename = "functional", skip_serializing_if = "Vec::is_empty")]
    pub functionals: Vec<FunctionalDecl>,
    #[serde(default, rename = "task", skip_serializing_if = "Vec::is_empty")]
    pub tasks: Vec<TaskDecl>,
}

/// Which concrete field a spec selects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rational,
    Prime(u64),
}

// ---------------------------------------------------------------------------
// Parsing and serialization
// ---------------------------------------------------------------------------

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for (i, ch) in text.char_indices() {
        if i >= offset {
            break;
        }
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

/// Parse a spec file and check its format version. Syntax and shape errors
/// come back as [`Error::Parse`] annotated with line and column.
pub fn parse_spec(text: &str) -> Result<SpecDoc> {
    let doc: SpecDoc = toml::from_str(text).map_err(|e| {
        let location = match e.span() {
            Some(span) => {
                let (line, col) = line_col(text, span.start);
                format!("line {line}, column {col}")
            }
            None => "document".to_string(),
        };
        Error::Parse {
            location,
            message: e.message().to_string(),
        }
    })?;
    if doc.version != FORMAT_VERSION {
        return Err(Error::Validation(format!(
            "unsupported spec format version {} (this build reads version {})",
            doc.version, FORMAT_VERSION
        )));
    }
    Ok(doc)
}

/// Serialize a spec document back to TOML text.
pub fn spec_to_toml(doc: &SpecDoc) -> Result<String> {
    toml::to_string(doc).map_err(|e| Error::Validation(format!("spec serialization: {e}")))
}

/// Parse a report file (the inverse of [`report_to_toml`]).
pub fn parse_report(text: &str) -> Result<ReportFile> {
    toml::from_str(text).map_err(|e| {
        let location = match e.span() {
            Some(span) => {
                let (line, col) = line_col(text, span.start);
                format!("line {line}, column {col}")
            }
            None => "document".to_string(),
        };
        Error::Parse {
            location,
            message: e.message().to_string(),
        }
    })
}

/// Read the field selector off a parsed spec.
pub fn field_choice(doc: &SpecDoc) -> Result<FieldChoice> {
    match (doc.field.kind.as_str(), doc.field.p) {
        ("rational", None) => Ok(FieldChoice::Rational),
        ("rational", Some(_)) => Err(Error::Validation(
            "field kind \"rational\" does not take a modulus p".into(),
        )),
        ("prime", Some(p)) => Ok(FieldChoice::Prime(p)),
        ("prime", None) => Err(Error::Validation(
            "field kind \"prime\" requires a modulus p".into(),
        )),
        (other, _) => Err(Error::Validation(format!(
            "unknown field kind \"{other}\" (expected \"rational\" or \"prime\")"
        ))),
    }
}

/// Evaluate a scalar literal in the given field. Fractions `"p/q"` are
/// rejected when the denominator vanishes in the field (e.g. `1/2` over F_2).
pub fn scalar_to_elem<F: Field>(field: &F, s: &Scalar, context: &str) -> Result<F::Elem> {
    match s {
        Scalar::Int(n) => Ok(field.from_i64(*n)),
        Scalar::Text(t) => {
            let t = t.trim();
            let (num_text, den_text) = match t.split_once('/') {
                Some((a, b)) => (a.trim(), Some(b.trim())),
                None => (t, None),
            };
            let num: i64 = num_text.parse().map_err(|_| {
                Error::Validation(format!(
                    "{context}: scalar \"{t}\" is not an integer or a fraction p/q \
                     with 64-bit parts"
                ))
            })?;
            let num = field.from_i64(num);
            match den_text {
                None => Ok(num),
                Some(d) => {
                    let den: i64 = d.parse().map_err(|_| {
                        Error::Validation(format!(
                            "{context}: scalar \"{t}\" has a non-integer denominator"
                        ))
                    })?;
                    let den = field.from_i64(den);
                    let inv = field.inv(&den).ok_or_else(|| {
                        Error::Validation(format!(
                            "{context}: denominator of \"{t}\" is zero in {}",
                            field.name()
                        ))
                    })?;
                    Ok(field.mul(&num, &inv))
                }
            }
        }
    }
}

/// Format a field element as a scalar literal that [`scalar_to_elem`] maps
/// back to the same element (integers become TOML integers when they fit).
pub fn elem_to_scalar<F: Field>(field: &F, e: &F::Elem) -> Scalar {
    let text = field.format(e);
    match text.parse::<i64>() {
        Ok(n) => Scalar::Int(n),
        Err(_) => Scalar::Text(text),
    }
}

// ---------------------------------------------------------------------------
// Resolution: raw document -> typed objects over a concrete field
// ---------------------------------------------------------------------------

/// A spec with every declaration built over a concrete field and every task
/// reference checked. Produced by [`resolve`]; consumed by [`run_tasks`].
#[derive(Debug)]
pub struct ResolvedSpec<F: Field> {
    pub field: F,
    pub coalgebras: BTreeMap<String, Coalgebra<F>>,
    pub algebras: BTreeMap<String, Algebra<F>>,
    /// Twist name -> (domain object names, the matrix as a map `X(x)Y -> Y(x)X`).
    pub twists: BTreeMap<String, ((String, String), LinMap<F>)>,
    /// Functional name -> (object names it lives on, the functional).
    pub functionals: BTreeMap<String, ((String, String), Functional<F>)>,
    pub tasks: Vec<TaskDecl>,
}

fn check_index(context: &str, what: &str, idx: usize, dim: usize) -> Result<()> {
    if idx >= dim {
        return Err(Error::Validation(format!(
            "{context}: {what} index {idx} out of range (dim {dim})"
        )));
    }
    Ok(())
}

/// Build every declared object over `field` and validate every task
/// reference. All failures are [`Error::Validation`] messages naming the
/// offending declaration.
pub fn resolve<F: Field>(doc: &SpecDoc, field: F) -> Result<ResolvedSpec<F>> {
    // Pass 1: dimensions. A name may carry both a coalgebra and an algebra
    // (the two faces of one underlying space); the dimensions must agree.
    let mut dims: BTreeMap<String, usize> = BTreeMap::new();
    let mut note_dim = |name: &str, dim: usize, section: &str| -> Result<()> {
        if name.is_empty() {
            return Err(Error::Validation(format!("{section} with empty name")));
        }
        if dim == 0 {
            return Err(Error::Validation(format!(
                "{section} \"{name}\": dim must be positive"
            )));
        }
        match dims.get(name) {
            Some(&d) if d != dim => Err(Error::Validation(format!(
                "object \"{name}\" declared with conflicting dimensions {d} and {dim}"
            ))),
            _ => {
                dims.insert(name.to_string(), dim);
                Ok(())
            }
        }
    };
    for c in &doc.coalgebras {
        note_dim(&c.name, c.dim, "coalgebra")?;
    }
    for a in &doc.algebras {
        note_dim(&a.name, a.dim, "algebra")?;
    }

    // Pass 2: build coalgebras.
    let mut coalgebras = BTreeMap::new();
    for decl in &doc.coalgebras {
        let ctx = format!("coalgebra \"{}\"", decl.name);
        if coalgebras.contains_key(&decl.name) {
            return Err(Error::Validation(format!("duplicate {ctx}")));
        }
        let dim = decl.dim;
        let space = TensorSpace::single(&decl.name, dim);
        let square = space.tensor(&space);
        let mut delta_entries = Vec::with_capacity(decl.delta.len());
        for (i, j, k, s) in &decl.delta {
            check_index(&ctx, "delta input", *i, dim)?;
            check_index(&ctx, "delta output", *j, dim)?;
            check_index(&ctx, "delta output", *k, dim)?;
            let v = scalar_to_elem(&field, s, &ctx)?;
            delta_entries.push((j * dim + k, *i, v));
        }
        let mut eps_entries = Vec::with_capacity(decl.eps.len());
        for (i, s) in &decl.eps {
            check_index(&ctx, "eps", *i, dim)?;
            eps_entries.push((0, *i, scalar_to_elem(&field, s, &ctx)?));
        }
        let delta = LinMap::from_entries(field.clone(), &space, &square, &delta_entries)?;
        let eps = LinMap::from_entries(field.clone(), &space, &TensorSpace::unit(), &eps_entries)?;
        let c = Coalgebra::new(field.clone(), space, delta, eps)?;
        coalgebras.insert(decl.name.clone(), c);
    }

    // Pass 3: build algebras.
    let mut algebras = BTreeMap::new();
    for decl in &doc.algebras {
        let ctx = format!("algebra \"{}\"", decl.name);
        if algebras.contains_key(&decl.name) {
            return Err(Error::Validation(format!("duplicate {ctx}")));
        }
        let dim = decl.dim;
        let space = TensorSpace::single(&decl.name, dim);
        let square = space.tensor(&space);
        let mut mul_entries = Vec::with_capacity(decl.mul.len());
        for (i, j, k, s) in &decl.mul {
            check_index(&ctx, "mul left", *i, dim)?;
            check_index(&ctx, "mul right", *j, dim)?;
            check_index(&ctx, "mul output", *k, dim)?;
            let v = scalar_to_elem(&field, s, &ctx)?;
            mul_entries.push((*k, i * dim + j, v));
        }
        let mut unit_entries = Vec::with_capacity(decl.unit.len());
        for (k, s) in &decl.unit {
            check_index(&ctx, "unit", *k, dim)?;
            unit_entries.push((*k, 0, scalar_to_elem(&field, s, &ctx)?));
        }
        let mul = LinMap::from_entries(field.clone(), &square, &space, &mul_entries)?;
        let unit = LinMap::from_entries(field.clone(), &TensorSpace::unit(), &space, &unit_entries)?;
        let a = Algebra::new(field.clone(), space, mul, unit)?;
        algebras.insert(decl.name.clone(), a);
    }

    // Pass 4: build twists.
    let mut twists = BTreeMap::new();
    for decl in &doc.twists {
        let ctx = format!("twist \"{}\"", decl.name);
        if decl.name.is_empty() {
            return Err(Error::Validation("twist with empty name".into()));
        }
        if twists.contains_key(&decl.name) {
            return Err(Error::Validation(format!("duplicate {ctx}")));
        }
        let (x, y) = (&decl.domain.0, &decl.domain.1);
        let dx = *dims
            .get(x)
            .ok_or_else(|| Error::Validation(format!("{ctx}: unknown domain object \"{x}\"")))?;
        let dy = *dims
            .get(y)
            .ok_or_else(|| Error::Validation(format!("{ctx}: unknown domain object \"{y}\"")))?;
        if decl.codomain != (y.clone(), x.clone()) {
            return Err(Error::Validation(format!(
                "{ctx}: codomain must be the reversed domain pair [\"{y}\", \"{x}\"]"
            )));
        }
        let domain = TensorSpace::single(x, dx).tensor(&TensorSpace::single(y, dy));
        let codomain = TensorSpace::single(y, dy).tensor(&TensorSpace::single(x, dx));
        let n = dx * dy;
        let mat = match (&decl.entries, &decl.dense) {
            (Some(_), Some(_)) => {
                return Err(Error::Validation(format!(
                    "{ctx}: give either sparse entries or a dense matrix, not both"
                )));
            }
            (None, None) => {
                return Err(Error::Validation(format!(
                    "{ctx}: missing matrix (give sparse entries or a dense matrix)"
                )));
            }
            (Some(entries), None) => {
                let mut mat = Mat::zeros(&field, n, n);
                for (r, c, s) in entries {
                    check_index(&ctx, "entry row", *r, n)?;
                    check_index(&ctx, "entry column", *c, n)?;
                    let v = scalar_to_elem(&field, s, &ctx)?;
                    let cur = mat.get(*r, *c).clone();
                    mat.set(*r, *c, field.add(&cur, &v));
                }
                mat
            }
            (None, Some(rows)) => {
                if rows.len() != n {
                    return Err(Error::Validation(format!(
                        "{ctx}: dense matrix has {} rows, expected {n}",
                        rows.len()
                    )));
                }
                let mut mat = Mat::zeros(&field, n, n);
                for (r, row) in rows.iter().enumerate() {
                    if row.len() != n {
                        return Err(Error::Validation(format!(
                            "{ctx}: dense row {r} has {} columns, expected {n}",
                            row.len()
                        )));
                    }
                    for (c, s) in row.iter().enumerate() {
                        mat.set(r, c, scalar_to_elem(&field, s, &ctx)?);
                    }
                }
                mat
            }
        };
        let map = LinMap::new(field.clone(), domain, codomain, mat)?;
        twists.insert(decl.name.clone(), ((x.clone(), y.clone()), map));
    }

    // Pass 5: build functionals.
    let mut functionals = BTreeMap::new();
    for decl in &doc.functionals {
        let ctx = format!("functional \"{}\"", decl.name);
        if decl.name.is_empty() {
            return Err(Error::Validation("functional with empty name".into()));
        }
        if functionals.contains_key(&decl.name) {
            return Err(Error::Validation(format!("duplicate {ctx}")));
        }
        let (x, y) = (&decl.on.0, &decl.on.1);
        let dx = *dims
            .get(x)
            .ok_or_else(|| Error::Validation(format!("{ctx}: unknown object \"{x}\"")))?;
        let dy = *dims
            .get(y)
            .ok_or_else(|| Error::Validation(format!("{ctx}: unknown object \"{y}\"")))?;
        if decl.coeffs.len() != dx * dy {
            return Err(Error::Validation(format!(
                "{ctx}: {} coefficients given, expected {}",
                decl.coeffs.len(),
                dx * dy
            )));
        }
        let space = TensorSpace::single(x, dx).tensor(&TensorSpace::single(y, dy));
        let coeffs = decl
            .coeffs
            .iter()
            .map(|s| scalar_to_elem(&field, s, &ctx))
            .collect::<Result<Vec<_>>>()?;
        let f = Functional::new(field.clone(), space, coeffs)?;
        functionals.insert(decl.name.clone(), ((x.clone(), y.clone()), f));
    }

    let spec = ResolvedSpec {
        field,
        coalgebras,
        algebras,
        twists,
        functionals,
        tasks: doc.tasks.clone(),
    };

    // Pass 6: validate every task reference up front, so a run can only hit
    // runtime conditions (budget exhaustion, singularities), never a typo.
    for (idx, task) in spec.tasks.iter().enumerate() {
        validate_task(&spec, idx, task)?;
    }
    Ok(spec)
}

fn validate_task<F: Field>(spec: &ResolvedSpec<F>, idx: usize, task: &TaskDecl) -> Result<()> {
    let ctx = format!("task {} (check \"{}\")", idx + 1, task.check);
    let need_twist = |side: &str| -> Result<&((String, String), LinMap<F>)> {
        let name = task
            .twist
            .as_ref()
            .ok_or_else(|| Error::Validation(format!("{ctx}: missing twist reference")))?;
        let entry = spec
            .twists
            .get(name)
            .ok_or_else(|| Error::Validation(format!("{ctx}: unknown twist \"{name}\"")))?;
        let (x, y) = &entry.0;
        for obj in [x, y] {
            let present = match side {
                "coalgebra" => spec.coalgebras.contains_key(obj),
                _ => spec.algebras.contains_key(obj),
            };
            if !present {
                return Err(Error::Validation(format!(
                    "{ctx}: twist \"{name}\" needs a {side} structure on \"{obj}\", \
                     but none is declared"
                )));
            }
        }
        Ok(entry)
    };
    match task.check.as_str() {
        "octagon" | "pentagons" | "conormal" | "counit" | "tw" => {
            need_twist("coalgebra")?;
        }
        "assoc" | "product-pentagons" | "normal" | "unit" | "tw-alg" => {
            need_twist("algebra")?;
        }
        "coalgebra-axioms" => {
            let name = task
                .object
                .as_ref()
                .ok_or_else(|| Error::Validation(format!("{ctx}: missing object reference")))?;
            if !spec.coalgebras.contains_key(name) {
                return Err(Error::Validation(format!(
                    "{ctx}: unknown coalgebra \"{name}\""
                )));
            }
        }
        "algebra-axioms" => {
            let name = task
                .object
                .as_ref()
                .ok_or_else(|| Error::Validation(format!("{ctx}: missing object reference")))?;
            if !spec.algebras.contains_key(name) {
                return Err(Error::Validation(format!(
                    "{ctx}: unknown algebra \"{name}\""
                )));
            }
        }
        "conv-inverse" | "star-inverse" => {
            let name = task
                .functional
                .as_ref()
                .ok_or_else(|| Error::Validation(format!("{ctx}: missing functional reference")))?;
            let ((x, y), _) = spec
                .functionals
                .get(name)
                .ok_or_else(|| Error::Validation(format!("{ctx}: unknown functional \"{name}\"")))?;
            for obj in [x, y] {
                if !spec.coalgebras.contains_key(obj) {
                    return Err(Error::Validation(format!(
                        "{ctx}: functional \"{name}\" needs a coalgebra structure on \
                         \"{obj}\", but none is declared"
                    )));
                }
            }
        }
        "equivalent" => {
            for (label, name) in [("left", &task.left), ("right", &task.right)] {
                let name = name.as_ref().ok_or_else(|| {
                    Error::Validation(format!("{ctx}: missing {label} twist reference"))
                })?;
                let ((x, y), _) = spec.twists.get(name).ok_or_else(|| {
                    Error::Validation(format!("{ctx}: unknown twist \"{name}\""))
                })?;
                for obj in [x, y] {
                    if !spec.coalgebras.contains_key(obj) {
                        return Err(Error::Validation(format!(
                            "{ctx}: twist \"{name}\" needs a coalgebra structure on \
                             \"{obj}\", but none is declared"
                        )));
                    }
                }
            }
            if let Some(s) = &task.space {
                if s != "factorized" && s != "general" {
                    return Err(Error::Validation(format!(
                        "{ctx}: unknown search space \"{s}\" \
                         (expected \"factorized\" or \"general\")"
                    )));
                }
            }
        }
        other => {
            return Err(Error::Validation(format!(
                "task {}: unknown check \"{other}\"",
                idx + 1
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Report layer
// ---------------------------------------------------------------------------

/// One failed identity inside a task: which sub-check failed, which identity,
/// and the first basis entry where the two composite maps disagree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub check: String,
    pub identity: String,
    pub row: usize,
    pub col: usize,
    pub row_multi: Vec<usize>,
    pub col_multi: Vec<usize>,
    pub left: String,
    pub right: String,
}

/// The outcome of one task.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaskReport {
    /// Display name, e.g. `octagon(tau)`.
    pub name: String,
    /// The check that ran.
    pub check: String,
    /// `"pass"`, `"fail"`, or `"error"`.
    pub verdict: String,
    /// Wall-clock milliseconds the task took (the only nondeterministic field).
    pub millis: u64,
    /// Present exactly when `verdict == "error"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Derived artifacts: exact coefficient/entry lists keyed by artifact
    /// name (e.g. computed counit coefficients).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub derived: BTreeMap<String, Vec<String>>,
    /// Witnesses for failed identities.
    #[serde(default, rename = "witness", skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<WitnessRecord>,
}

/// A full report: the field it ran over and one record per task, in spec
/// order. Serialized reports are byte-identical across runs of the same spec
/// except for the `millis` fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub version: u32,
    pub field: String,
    #[serde(default, rename = "task", skip_serializing_if = "Vec::is_empty")]
    pub tasks: Vec<TaskReport>,
}

impl ReportFile {
    /// True when every task verdict is `pass`.
    pub fn all_pass(&self) -> bool {
        self.tasks.iter().all(|t| t.verdict == "pass")
    }

    /// True when some task could not be evaluated at all.
    pub fn any_error(&self) -> bool {
        self.tasks.iter().any(|t| t.verdict == "error")
    }
}

/// Serialize a report to TOML text.
pub fn report_to_toml(report: &ReportFile) -> Result<String> {
    toml::to_string(report).map_err(|e| Error::Validation(format!("report serialization: {e}")))
}

struct Outcome {
    pass: bool,
    error: Option<String>,
    derived: BTreeMap<String, Vec<String>>,
    witnesses: Vec<WitnessRecord>,
}

impl Outcome {
    fn pass() -> Self {
        Outcome {
            pass: true,
            error: None,
            derived: BTreeMap::new(),
            witnesses: Vec::new(),
        }
    }

    fn fail() -> Self {
        Outcome {
            pass: false,
            ..Outcome::pass()
        }
    }

    fn error(e: &Error) -> Self {
        Outcome {
            pass: false,
            error: Some(e.to_string()),
            derived: BTreeMap::new(),
            witnesses: Vec::new(),
        }
    }

    fn from_report(report: &Report) -> Self {
        let mut out = if report.passed() {
            Outcome::pass()
        } else {
            Outcome::fail()
        };
        let mut failed = Vec::new();
        for check in &report.checks {
            if check.passed {
                continue;
            }
            failed.push(check.name.clone());
            if let Some(w) = &check.witness {
                out.witnesses.push(WitnessRecord {
                    check: check.name.clone(),
                    identity: w.identity.clone(),
                    row: w.row,
                    col: w.col,
                    row_multi: w.row_multi.clone(),
                    col_multi: w.col_multi.clone(),
                    left: w.left_value.clone(),
                    right: w.right_value.clone(),
                });
            }
        }
        if !failed.is_empty() {
            out.derived.insert("failed".into(), failed);
        }
        out
    }

    fn with_coeffs<F: Field>(mut self, field: &F, key: &str, coeffs: &[F::Elem]) -> Self {
        self.derived
            .insert(key.into(), coeffs.iter().map(|e| field.format(e)).collect());
        self
    }
}

fn sides_outcome(left: bool, right: bool) -> Outcome {
    let mut out = if left && right {
        Outcome::pass()
    } else {
        Outcome::fail()
    };
    out.derived.insert(
        "sides".into(),
        vec![format!("left={left}"), format!("right={right}")],
    );
    out
}

fn mat_entries<F: Field>(field: &F, mat: &Mat<F>) -> Vec<String> {
    let mut out = Vec::with_capacity(mat.rows * mat.cols);
    for r in 0..mat.rows {
        for c in 0..mat.cols {
            out.push(field.format(mat.get(r, c)));
        }
    }
    out
}

fn coalg_twist<F: Field>(spec: &ResolvedSpec<F>, name: &str) -> Result<Twist<F>> {
    let ((x, y), map) = &spec.twists[name];
    Twist::new(
        spec.coalgebras[x].clone(),
        spec.coalgebras[y].clone(),
        map.clone(),
    )
}

fn alg_twist<F: Field>(spec: &ResolvedSpec<F>, name: &str) -> Result<AlgTwist<F>> {
    let ((x, y), map) = &spec.twists[name];
    // The map runs X (x) Y -> Y (x) X; the algebra-side constructor takes the
    // pair the other way around so that the same matrix twists the product.
    AlgTwist::new(
        spec.algebras[y].clone(),
        spec.algebras[x].clone(),
        map.clone(),
    )
}

fn task_display_name(task: &TaskDecl) -> String {
    let target = task
        .twist
        .as_deref()
        .or(task.object.as_deref())
        .or(task.functional.as_deref());
    match task.check.as_str() {
        "equivalent" => format!(
            "equivalent({}, {})",
            task.left.as_deref().unwrap_or("?"),
            task.right.as_deref().unwrap_or("?")
        ),
        _ => match target {
            Some(t) => format!("{}({t})", task.check),
            None => task.check.clone(),
        },
    }
}

fn run_one<F: Field>(spec: &ResolvedSpec<F>, task: &TaskDecl, default_budget: u64) -> Outcome {
    let field = &spec.field;
    match task.check.as_str() {
        "octagon" => match coalg_twist(spec, task.twist.as_ref().unwrap()) {
            Ok(t) => Outcome::from_report(&check_octagon(&t)),
            Err(e) => Outcome::error(&e),
        },
        "pentagons" => match coalg_twist(spec, task.twist.as_ref().unwrap()) {
            Ok(t) => Outcome::from_report(&check_pentagons(&t)),
            Err(e) => Outcome::error(&e),
        },
        "conormal" => match coalg_twist(spec, task.twist.as_ref().unwrap()) {
            Ok(t) => {
                let (l, r) = is_conormal(&t);
                sides_outcome(l, r)
            }
            Err(e) => Outcome::error(&e),
        },
        "counit" => match coalg_twist(spec, task.twist.as_ref().unwrap()) {
            Ok(t) => {
                let tc = TwistedCoalgebra::new(t);
                match &tc.counit {
                    Some((eps, z)) => {
                        let mut out =
                            Outcome::pass().with_coeffs(field, "counit", &eps.coeffs);
                        if let Some(zmap) = z {
                            out.derived
                                .insert("z".into(), mat_entries(field, &zmap.mat));
                        }
                        out
                    }
                    None => Outcome::fail(),
                }
            }
            Err(e) => Outcome::error(&e),
        },
        "tw" => match coalg_twist(spec, task.twist.as_ref().unwrap()) {
            Ok(t) => Outcome::from_report(&is_in_tw(&t)),
            Err(e) => Outcome::error(&e),
        },
        "assoc" => match alg_twist(spec, task.twist.as_ref().unwrap()) {
            Ok(t) => Outcome::from_report(&check_assoc(&t)),
            Err(e) => Outcome::error(&e),
        },
        "product-pentagons" => match alg_twist(spec, task.twist.as_ref().unwrap()) {
            Ok(t) => Outcome::from_report(&check_assoc_pentagons(&t)),
            Err(e) => Outcome::error(&e),
        },
        "normal" => match alg_twist(spec, task.twist.as_ref().unwrap()) {
            Ok(t) => {
                let (l, r) = is_normal(&t);
                sides_outcome(l, r)
            }
            Err(e) => Outcome::error(&e),
        },
        "unit" => match alg_twist(spec, task.twist.as_ref().unwrap()) {
            Ok(t) => {
                let ta = TwistedAlgebra::new(t);
                match &ta.unit {
                    Some((z, _)) => Outcome::pass().with_coeffs(field, "unit", z),
                    None => Outcome::fail(),
                }
            }
            Err(e) => Outcome::error(&e),
        },
        "tw-alg" => match alg_twist(spec, task.twist.as_ref().unwrap()) {
            Ok(t) => Outcome::from_report(&is_in_tw_alg(&t)),
            Err(e) => Outcome::error(&e),
        },
        "coalgebra-axioms" => {
            Outcome::from_report(&spec.coalgebras[task.object.as_ref().unwrap()].check())
        }
        "algebra-axioms" => {
            Outcome::from_report(&spec.algebras[task.object.as_ref().unwrap()].check())
        }
        "conv-inverse" | "star-inverse" => {
            let ((x, y), phi) = &spec.functionals[task.functional.as_ref().unwrap()];
            let c = &spec.coalgebras[x];
            let d = &spec.coalgebras[y];
            let result = if task.check == "conv-inverse" {
                conv_inverse(c, d, phi)
            } else {
                star_inverse(c, d, phi)
            };
            match result {
                Ok(Some(inv)) => Outcome::pass().with_coeffs(field, "inverse", &inv.coeffs),
                Ok(None) => Outcome::fail(),
                Err(e) => Outcome::error(&e),
            }
        }
        "equivalent" => {
            let t1 = coalg_twist(spec, task.left.as_ref().unwrap());
            let t2 = coalg_twist(spec, task.right.as_ref().unwrap());
            let space = match task.space.as_deref() {
                Some("general") => ThetaSearchSpace::General,
                _ => ThetaSearchSpace::Factorized,
            };
            let budget = task.budget.unwrap_or(default_budget);
            match (t1, t2) {
                (Ok(t1), Ok(t2)) => match search_theta(&t1, &t2, space, budget) {
                    Ok(Some(theta)) => {
                        Outcome::pass().derived_entries(field, "theta", &theta.mat)
                    }
                    Ok(None) => Outcome::fail(),
                    Err(e) => Outcome::error(&e),
                },
                (Err(e), _) | (_, Err(e)) => Outcome::error(&e),
            }
        }
        other => Outcome::error(&Error::Validation(format!("unknown check \"{other}\""))),
    }
}

impl Outcome {
    fn derived_entries<F: Field>(mut self, field: &F, key: &str, mat: &Mat<F>) -> Self {
        self.derived.insert(key.into(), mat_entries(field, mat));
        self
    }
}

/// Run the spec's tasks in order and assemble the report. When `filter` is
/// given, only tasks whose check name is listed run; the rest are skipped
/// without a record. Task-level runtime failures (budget exhaustion,
/// singular structure) become `error` verdicts, not process errors.
pub fn run_tasks<F: Field>(
    spec: &ResolvedSpec<F>,
    default_budget: u64,
    filter: Option<&[&str]>,
) -> ReportFile {
    let mut tasks = Vec::new();
    for task in &spec.tasks {
        if let Some(allowed) = filter {
            if !allowed.contains(&task.check.as_str()) {
                continue;
            }
        }
        let start = Instant::now();
        let outcome = run_one(spec, task, default_budget);
        let millis = start.elapsed().as_millis() as u64;
        let verdict = if outcome.error.is_some() {
            "error"
        } else if outcome.pass {
            "pass"
        } else {
            "fail"
        };
        tasks.push(TaskReport {
            name: task_display_name(task),
            check: task.check.clone(),
            verdict: verdict.to_string(),
            millis,
            error: outcome.error,
            derived: outcome.derived,
            witnesses: outcome.witnesses,
        });
    }
    ReportFile {
        version: FORMAT_VERSION,
        field: spec.field.name(),
        tasks,
    }
}

/// Parse, resolve, and run a spec file in one call, dispatching on its field
/// selector. This is the whole `verify` pipeline behind the CLI.
pub fn run_spec_text(
    text: &str,
    default_budget: u64,
    filter: Option<&[&str]>,
) -> Result<ReportFile> {
    let doc = parse_spec(text)?;
    match field_choice(&doc)? {
        FieldChoice::Rational => {
            let spec = resolve(&doc, Rationals)?;
            Ok(run_tasks(&spec, default_budget, filter))
        }
        FieldChoice::Prime(p) => {
            let spec = resolve(&doc, PrimeField::new(p)?)?;
            Ok(run_tasks(&spec, default_budget, filter))
        }
    }
}

// ---------------------------------------------------------------------------
// Catalog export
// ---------------------------------------------------------------------------

fn space_name(space: &TensorSpace) -> String {
    match space.factors() {
        [(label, _)] => label.clone(),
        factors => factors
            .iter()
            .map(|(l, _)| l.as_str())
            .collect::<Vec<_>>()
            .join("-"),
    }
}

fn coalgebra_decl<F: Field>(field: &F, c: &Coalgebra<F>) -> CoalgebraDecl {
    let dim = c.space.total_dim();
    let mut delta = Vec::new();
    for i in 0..dim {
        for r in 0..dim * dim {
            let v = c.delta.mat.get(r, i);
            if !field.is_zero(v) {
                delta.push((i, r / dim, r % dim, elem_to_scalar(field, v)));
            }
        }
    }
    let mut eps = Vec::new();
    for i in 0..dim {
        let v = c.eps.mat.get(0, i);
        if !field.is_zero(v) {
            eps.push((i, elem_to_scalar(field, v)));
        }
    }
    CoalgebraDecl {
        name: space_name(&c.space),
        dim,
        delta,
        eps,
    }
}

fn algebra_decl<F: Field>(field: &F, a: &Algebra<F>) -> AlgebraDecl {
    let dim = a.space.total_dim();
    let mut mul = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let v = a.mul.mat.get(k, i * dim + j);
                if !field.is_zero(v) {
                    mul.push((i, j, k, elem_to_scalar(field, v)));
                }
            }
        }
    }
    let mut unit = Vec::new();
    for k in 0..dim {
        let v = a.unit.mat.get(k, 0);
        if !field.is_zero(v) {
            unit.push((k, elem_to_scalar(field, v)));
        }
    }
    AlgebraDecl {
        name: space_name(&a.space),
        dim,
        mul,
        unit,
    }
}

fn flip_twist_decl(name: &str, x: &str, dx: usize, y: &str, dy: usize) -> TwistDecl {
    let mut entries = Vec::with_capacity(dx * dy);
    for i in 0..dx {
        for j in 0..dy {
            entries.push((j * dx + i, i * dy + j, Scalar::Int(1)));
        }
    }
    TwistDecl {
        name: name.to_string(),
        domain: (x.to_string(), y.to_string()),
        codomain: (y.to_string(), x.to_string()),
        entries: Some(entries),
        dense: None,
    }
}

fn twist_tasks(name: &str, coalgebra_side: bool, algebra_side: bool) -> Vec<TaskDecl> {
    let blank = TaskDecl {
        check: String::new(),
        twist: Some(name.to_string()),
        object: None,
        functional: None,
        left: None,
        right: None,
        space: None,
        budget: None,
    };
    let mut tasks = Vec::new();
    if coalgebra_side {
        for check in ["octagon", "conormal", "counit", "tw"] {
            tasks.push(TaskDecl {
                check: check.to_string(),
                ..blank.clone()
            });
        }
    }
    if algebra_side {
        for check in ["assoc", "normal", "unit", "tw-alg"] {
            tasks.push(TaskDecl {
                check: check.to_string(),
                ..blank.clone()
            });
        }
    }
    tasks
}

fn object_task(check: &str, name: &str) -> TaskDecl {
    TaskDecl {
        check: check.to_string(),
        twist: None,
        object: Some(name.to_string()),
        functional: None,
        left: None,
        right: None,
        space: None,
        budget: None,
    }
}

/// Exports attach flip-twist checks only while the tensor square stays this
/// small: the composite identities live on the cube of that space, and dense
/// exact matrices past this size are no longer cheap to multiply.
const EXPORT_TWIST_DIM_LIMIT: usize = 16;

fn export_item<F: Field>(field: &F, desc: FieldDesc, item: &ZooItem<F>) -> SpecDoc {
    let mut doc = SpecDoc {
        version: FORMAT_VERSION,
        field: desc,
        coalgebras: Vec::new(),
        algebras: Vec::new(),
        twists: Vec::new(),
        functionals: Vec::new(),
        tasks: Vec::new(),
    };
    match item {
        ZooItem::Coalg(c) => {
            let decl = coalgebra_decl(field, c);
            let (name, dim) = (decl.name.clone(), decl.dim);
            doc.tasks.push(object_task("coalgebra-axioms", &name));
            if dim * dim <= EXPORT_TWIST_DIM_LIMIT {
                doc.twists
                    .push(flip_twist_decl("tau", &name, dim, &name, dim));
                doc.tasks.extend(twist_tasks("tau", true, false));
            }
            doc.coalgebras.push(decl);
        }
        ZooItem::Hopf(h) => {
            let cdecl = coalgebra_decl(field, &h.bialgebra.coalgebra);
            let adecl = algebra_decl(field, &h.bialgebra.algebra);
            let (name, dim) = (cdecl.name.clone(), cdecl.dim);
            doc.tasks.push(object_task("coalgebra-axioms", &name));
            doc.tasks.push(object_task("algebra-axioms", &name));
            if dim * dim <= EXPORT_TWIST_DIM_LIMIT {
                doc.twists
                    .push(flip_twist_decl("tau", &name, dim, &name, dim));
                doc.tasks.extend(twist_tasks("tau", true, true));
            }
            doc.coalgebras.push(cdecl);
            doc.algebras.push(adecl);
        }
        ZooItem::Pair(p) => {
            let lc = coalgebra_decl(field, &p.left.coalgebra);
            let la = algebra_decl(field, &p.left.algebra);
            let rc = coalgebra_decl(field, &p.right.coalgebra);
            let ra = algebra_decl(field, &p.right.algebra);
            let (lname, ldim) = (lc.name.clone(), lc.dim);
            let (rname, rdim) = (rc.name.clone(), rc.dim);
            for n in [&lname, &rname] {
                doc.tasks.push(object_task("coalgebra-axioms", n));
                doc.tasks.push(object_task("algebra-axioms", n));
            }
            if ldim * rdim <= EXPORT_TWIST_DIM_LIMIT {
                doc.twists
                    .push(flip_twist_decl("tau", &lname, ldim, &rname, rdim));
                doc.tasks.extend(twist_tasks("tau", true, true));
            }
            let coeffs = (0..p.form.mat.cols)
                .map(|c| elem_to_scalar(field, p.form.mat.get(0, c)))
                .collect();
            doc.functionals.push(FunctionalDecl {
                name: "form".into(),
                on: (lname.clone(), rname.clone()),
                coeffs,
            });
            doc.tasks.push(TaskDecl {
                check: "conv-inverse".into(),
                twist: None,
                object: None,
                functional: Some("form".into()),
                left: None,
                right: None,
                space: None,
                budget: None,
            });
            doc.coalgebras.extend([lc, rc]);
            doc.algebras.extend([la, ra]);
        }
    }
    doc
}

/// Export a catalog item as a complete, runnable spec document over the given
/// field: its structure constants, the flip twist on its tensor square, and a
/// task list that re-checks all of its axioms. Re-importing the export and
/// running it must produce all-pass.
pub fn export_zoo(name: &str, choice: FieldChoice) -> Result<SpecDoc> {
    match choice {
        FieldChoice::Rational => {
            let field = Rationals;
            let item = zoo::build(field.clone(), name)?;
            Ok(export_item(
                &field,
                FieldDesc {
                    kind: "rational".into(),
                    p: None,
                },
                &item,
            ))
        }
        FieldChoice::Prime(p) => {
            let field = PrimeField::new(p)?;
            let item = zoo::build(field.clone(), name)?;
            Ok(export_item(
                &field,
                FieldDesc {
                    kind: "prime".into(),
                    p: Some(p),
                },
                &item,
            ))
        }
    }
}
