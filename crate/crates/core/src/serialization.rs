//! JSON documents for dual quasi-bialgebras, bicomodules, antipode data and
//! preantipodes, plus text and JSON-lines rendering of reports.
//!
//! Sparse sections are lists of arrays whose last element is a scalar string
//! and whose other elements are basis indices:
//!
//! | section     | entry             | meaning                      |
//! |-------------|-------------------|------------------------------|
//! | `delta`     | `[i, j, k, c]`    | `Δ(e_i) += c e_j ⊗ e_k`      |
//! | `mul`       | `[i, j, k, c]`    | `e_i e_j += c e_k`           |
//! | `omega`     | `[i, j, k, c]`    | `ω(e_i ⊗ e_j ⊗ e_k) += c`    |
//! | `rho_l`     | `[v, h, w, c]`    | `ρ^l(e_v) += c e_h ⊗ e_w`    |
//! | `rho_r`     | `[v, w, h, c]`    | `ρ^r(e_v) += c e_w ⊗ e_h`    |
//! | `act`       | `[m, h, w, c]`    | `e_m · e_h += c e_w`         |
//! | `s`         | `[i, j, c]`       | `s(e_i) += c e_j`            |
//!
//! Repeated indices accumulate.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::comodules::HopfBicomodule;
use crate::dqb::{DqbError, DualQuasiBialgebra};
use crate::exactmath::{FieldSpec, Matrix, Scalar};
use crate::preantipode::{AntipodeData, Preantipode};
use crate::report::{Outcome, Report};

pub const VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("index out of range: {index} >= {bound}")]
    IndexOutOfRange { index: u64, bound: usize },
    #[error("unknown field kind {0:?}")]
    UnknownField(String),
    #[error("{0}")]
    MalformedScalar(String),
    #[error("missing key {0:?}")]
    Missing(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocumentError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Structure(#[from] DqbError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Seg {
    Key(&'static str),
    Index(usize),
}

/// A semantic error not yet located in the text.
struct Pending {
    path: Vec<Seg>,
    kind: ParseErrorKind,
}

type Res<T> = Result<T, Pending>;

fn pending(path: &[Seg], kind: ParseErrorKind) -> Pending {
    Pending { path: path.to_vec(), kind }
}

fn with(path: &[Seg], seg: Seg) -> Vec<Seg> {
    let mut p = path.to_vec();
    p.push(seg);
    p
}

fn parse_value(text: &str) -> Result<Value, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError {
        line: e.line(),
        column: e.column(),
        kind: ParseErrorKind::Syntax(e.to_string()),
    })
}

fn locate_error(text: &str, p: Pending) -> ParseError {
    let offset = locate(text, &p.path).unwrap_or(0);
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    ParseError { line, column, kind: p.kind }
}

/// Byte offset of the value at `path` in well-formed JSON text.
fn locate(text: &str, path: &[Seg]) -> Option<usize> {
    let bytes = text.as_bytes();
    let mut pos = skip_ws(bytes, 0);
    for seg in path {
        match (seg, bytes.get(pos)?) {
            (Seg::Key(key), b'{') => {
                pos += 1;
                loop {
                    pos = skip_ws(bytes, pos);
                    if bytes.get(pos)? == &b'}' {
                        return None;
                    }
                    let end = skip_string(bytes, pos)?;
                    let name: String = serde_json::from_str(&text[pos..end]).ok()?;
                    pos = skip_ws(bytes, end);
                    pos = skip_ws(bytes, pos + 1); // ':'
                    if name == *key {
                        break;
                    }
                    pos = skip_ws(bytes, skip_value(bytes, pos)?);
                    if bytes.get(pos)? == &b',' {
                        pos += 1;
                    }
                }
            }
            (Seg::Index(i), b'[') => {
                pos = skip_ws(bytes, pos + 1);
                for _ in 0..*i {
                    pos = skip_ws(bytes, skip_value(bytes, pos)?);
                    if bytes.get(pos)? != &b',' {
                        return None;
                    }
                    pos = skip_ws(bytes, pos + 1);
                }
            }
            _ => return None,
        }
    }
    Some(pos)
}

fn skip_ws(bytes: &[u8], mut pos: usize) -> usize {
    while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
        pos += 1;
    }
    pos
}

fn skip_string(bytes: &[u8], mut pos: usize) -> Option<usize> {
    pos += 1;
    while pos < bytes.len() {
        match bytes[pos] {
            b'\\' => pos += 2,
            b'"' => return Some(pos + 1),
            _ => pos += 1,
        }
    }
    None
}

fn skip_value(bytes: &[u8], pos: usize) -> Option<usize> {
    match bytes.get(pos)? {
        b'"' => skip_string(bytes, pos),
        b'{' | b'[' => {
            let mut depth = 0usize;
            let mut p = pos;
            while p < bytes.len() {
                match bytes[p] {
                    b'"' => {
                        p = skip_string(bytes, p)?;
                        continue;
                    }
                    b'{' | b'[' => depth += 1,
                    b'}' | b']' => {
                        depth -= 1;
                        if depth == 0 {
                            return Some(p + 1);
                        }
                    }
                    _ => {}
                }
                p += 1;
            }
            None
        }
        _ => {
            let mut p = pos;
            while p < bytes.len() && !matches!(bytes[p], b',' | b']' | b'}') && !bytes[p].is_ascii_whitespace() {
                p += 1;
            }
            Some(p)
        }
    }
}

fn object<'a>(v: &'a Value, path: &[Seg]) -> Res<&'a serde_json::Map<String, Value>> {
    v.as_object().ok_or_else(|| pending(path, ParseErrorKind::Invalid("expected an object".into())))
}

fn key<'a>(obj: &'a serde_json::Map<String, Value>, name: &'static str, path: &[Seg]) -> Res<&'a Value> {
    obj.get(name).ok_or_else(|| pending(path, ParseErrorKind::Missing(name.into())))
}

fn array<'a>(v: &'a Value, path: &[Seg]) -> Res<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| pending(path, ParseErrorKind::Invalid("expected an array".into())))
}

fn uint(v: &Value, path: &[Seg]) -> Res<u64> {
    v.as_u64().ok_or_else(|| pending(path, ParseErrorKind::Invalid("expected a non-negative integer".into())))
}

fn index(v: &Value, bound: usize, path: &[Seg]) -> Res<usize> {
    let i = uint(v, path)?;
    if i >= bound as u64 {
        return Err(pending(path, ParseErrorKind::IndexOutOfRange { index: i, bound }));
    }
    Ok(i as usize)
}

fn scalar(v: &Value, field: FieldSpec, path: &[Seg]) -> Res<Scalar> {
    let text = v.as_str().ok_or_else(|| pending(path, ParseErrorKind::Invalid("expected a scalar string".into())))?;
    Scalar::parse(text, field).map_err(|e| pending(path, ParseErrorKind::MalformedScalar(e.to_string())))
}

fn check_version(obj: &serde_json::Map<String, Value>) -> Res<()> {
    let path = [Seg::Key("version")];
    let v = uint(key(obj, "version", &[])?, &path)?;
    if v != VERSION {
        return Err(pending(&path, ParseErrorKind::Invalid(format!("unsupported version {v}"))));
    }
    Ok(())
}

fn field(v: &Value, path: &[Seg]) -> Res<FieldSpec> {
    let obj = object(v, path)?;
    let kind_path = with(path, Seg::Key("kind"));
    let kind = key(obj, "kind", path)?
        .as_str()
        .ok_or_else(|| pending(&kind_path, ParseErrorKind::Invalid("expected a string".into())))?;
    match kind {
        "rationals" => Ok(FieldSpec::Rationals),
        "cyclotomic" => {
            let order_path = with(path, Seg::Key("order"));
            let order = uint(key(obj, "order", path)?, &order_path)?;
            if order == 0 || order > u32::MAX as u64 {
                return Err(pending(&order_path, ParseErrorKind::Invalid(format!("invalid cyclotomic order {order}"))));
            }
            Ok(FieldSpec::cyclotomic(order as u32))
        }
        other => Err(pending(&kind_path, ParseErrorKind::UnknownField(other.into()))),
    }
}

/// Sparse entries `[i_0, …, i_{k-1}, "c"]` with `i_t < bounds[t]`.
fn sparse(v: &Value, bounds: &[usize], field: FieldSpec, path: &[Seg]) -> Res<Vec<(Vec<usize>, Scalar)>> {
    let entries = array(v, path)?;
    let mut out = Vec::with_capacity(entries.len());
    for (e, entry) in entries.iter().enumerate() {
        let epath = with(path, Seg::Index(e));
        let items = array(entry, &epath)?;
        if items.len() != bounds.len() + 1 {
            return Err(pending(
                &epath,
                ParseErrorKind::Invalid(format!("expected {} indices and a scalar", bounds.len())),
            ));
        }
        let mut idx = Vec::with_capacity(bounds.len());
        for (t, &bound) in bounds.iter().enumerate() {
            idx.push(index(&items[t], bound, &with(&epath, Seg::Index(t)))?);
        }
        let c = scalar(&items[bounds.len()], field, &with(&epath, Seg::Index(bounds.len())))?;
        out.push((idx, c));
    }
    Ok(out)
}

fn dense(v: &Value, len: usize, field: FieldSpec, path: &[Seg]) -> Res<Vec<Scalar>> {
    let items = array(v, path)?;
    if items.len() != len {
        return Err(pending(path, ParseErrorKind::Invalid(format!("expected {len} scalars, found {}", items.len()))));
    }
    items.iter().enumerate().map(|(i, x)| scalar(x, field, &with(path, Seg::Index(i)))).collect()
}

/// Sparse entry list of a matrix, given how `(row, column)` maps to indices.
type Entries = Vec<(Vec<usize>, Scalar)>;

fn fill(rows: usize, cols: usize, entries: &Entries, place: impl Fn(&[usize]) -> (usize, usize)) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for (idx, c) in entries {
        let (r, col) = place(idx);
        let sum = &m[(r, col)] + c;
        m[(r, col)] = sum;
    }
    m
}

fn collect(m: &Matrix, unplace: impl Fn(usize, usize) -> Vec<usize>) -> Entries {
    let mut out: Entries = (0..m.cols())
        .flat_map(|j| m.column_nonzeros(j).map(move |(i, c)| (i, j, c.clone())).collect::<Vec<_>>())
        .map(|(i, j, c)| (unplace(i, j), c))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Typed contents of a dual quasi-bialgebra document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DqbDocument {
    pub field: FieldSpec,
    pub dim: usize,
    pub delta: Entries,
    pub counit: Vec<Scalar>,
    pub mul: Entries,
    pub unit: Vec<Scalar>,
    pub omega: Entries,
    pub omega_inv: Option<Entries>,
}

impl DqbDocument {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let value = parse_value(text)?;
        Self::from_value(&value).map_err(|p| locate_error(text, p))
    }

    fn from_value(v: &Value) -> Res<Self> {
        let obj = object(v, &[])?;
        check_version(obj)?;
        let field = field(key(obj, "field", &[])?, &[Seg::Key("field")])?;
        let dim_path = [Seg::Key("dim")];
        let dim = uint(key(obj, "dim", &[])?, &dim_path)? as usize;
        if dim == 0 {
            return Err(pending(&dim_path, ParseErrorKind::Invalid("dimension must be positive".into())));
        }
        let three = [dim; 3];
        let section = |name: &'static str| -> Res<Entries> { sparse(key(obj, name, &[])?, &three, field, &[Seg::Key(name)]) };
        let omega_inv = match obj.get("omega_inv") {
            Some(v) => Some(sparse(v, &three, field, &[Seg::Key("omega_inv")])?),
            None => None,
        };
        Ok(DqbDocument {
            field,
            dim,
            delta: section("delta")?,
            counit: dense(key(obj, "counit", &[])?, dim, field, &[Seg::Key("counit")])?,
            mul: section("mul")?,
            unit: dense(key(obj, "unit", &[])?, dim, field, &[Seg::Key("unit")])?,
            omega: section("omega")?,
            omega_inv,
        })
    }

    pub fn to_dqb(&self) -> Result<DualQuasiBialgebra, DqbError> {
        let n = self.dim;
        let delta = fill(n * n, n, &self.delta, |x| (x[1] * n + x[2], x[0]));
        let mul = fill(n, n * n, &self.mul, |x| (x[2], x[0] * n + x[1]));
        let omega_of = |e: &Entries| fill(1, n * n * n, e, |x| (0, (x[0] * n + x[1]) * n + x[2]));
        DualQuasiBialgebra::new(
            self.field,
            n,
            delta,
            Matrix::row_vector(self.counit.clone()),
            mul,
            Matrix::column_vector(self.unit.clone()),
            omega_of(&self.omega),
            self.omega_inv.as_ref().map(omega_of),
        )
    }

    /// The canonical document of `h`, always including `omega_inv`.
    pub fn from_dqb(h: &DualQuasiBialgebra) -> Self {
        let n = h.dim;
        let omega_of = |m: &Matrix| collect(m, |_, j| vec![j / (n * n), (j / n) % n, j % n]);
        DqbDocument {
            field: h.field,
            dim: n,
            delta: collect(&h.delta, |i, j| vec![j, i / n, i % n]),
            counit: h.counit.row(0).to_vec(),
            mul: collect(&h.mul, |i, j| vec![j / n, j % n, i]),
            unit: h.unit.column(0),
            omega: omega_of(&h.omega),
            omega_inv: Some(omega_of(&h.omega_inv)),
        }
    }

    pub fn to_canonical_string(&self) -> String {
        let mut w = Writer::new(self.field);
        w.field_line();
        w.line(&format!("\"dim\": {},", self.dim));
        w.sparse("delta", &self.delta, false);
        w.dense("counit", &self.counit, false);
        w.sparse("mul", &self.mul, false);
        w.dense("unit", &self.unit, false);
        match &self.omega_inv {
            Some(inv) => {
                w.sparse("omega", &self.omega, false);
                w.sparse("omega_inv", inv, true);
            }
            None => w.sparse("omega", &self.omega, true),
        }
        w.finish()
    }
}

pub fn parse_dqb(text: &str) -> Result<DualQuasiBialgebra, DocumentError> {
    Ok(DqbDocument::parse(text)?.to_dqb()?)
}

/// Canonical text of `h`: entries sorted by index, one per line, scalars in
/// canonical form, `omega_inv` included.
pub fn serialize_dqb(h: &DualQuasiBialgebra) -> String {
    DqbDocument::from_dqb(h).to_canonical_string()
}

struct Writer {
    field: FieldSpec,
    out: String,
}

impl Writer {
    fn new(field: FieldSpec) -> Self {
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"version\": {VERSION},");
        Writer { field, out }
    }

    fn line(&mut self, s: &str) {
        let _ = writeln!(self.out, "  {s}");
    }

    fn field_line(&mut self) {
        let f = match self.field {
            FieldSpec::Rationals => "{\"kind\": \"rationals\"}".to_string(),
            FieldSpec::Cyclotomic { order } => format!("{{\"kind\": \"cyclotomic\", \"order\": {order}}}"),
        };
        self.line(&format!("\"field\": {f},"));
    }

    fn scalar(&self, c: &Scalar) -> String {
        serde_json::to_string(&c.to_canonical_string(self.field)).expect("strings serialize")
    }

    fn sparse(&mut self, name: &str, entries: &Entries, last: bool) {
        let comma = if last { "" } else { "," };
        if entries.is_empty() {
            self.line(&format!("\"{name}\": []{comma}"));
            return;
        }
        self.line(&format!("\"{name}\": ["));
        for (k, (idx, c)) in entries.iter().enumerate() {
            let sep = if k + 1 == entries.len() { "" } else { "," };
            let indices: Vec<String> = idx.iter().map(usize::to_string).collect();
            let _ = writeln!(self.out, "    [{}, {}]{sep}", indices.join(", "), self.scalar(c));
        }
        self.line(&format!("]{comma}"));
    }

    fn dense(&mut self, name: &str, values: &[Scalar], last: bool) {
        let comma = if last { "" } else { "," };
        let items: Vec<String> = values.iter().map(|c| self.scalar(c)).collect();
        self.line(&format!("\"{name}\": [{}]{comma}", items.join(", ")));
    }

    fn finish(mut self) -> String {
        self.out.push_str("}\n");
        self.out
    }
}

/// Typed contents of a module document; indices are checked against `dim`
/// and the dimension of `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleDocument {
    pub dim: usize,
    pub rho_l: Entries,
    pub rho_r: Entries,
    pub act: Entries,
}

impl ModuleDocument {
    pub fn parse(text: &str, h: &DualQuasiBialgebra) -> Result<Self, ParseError> {
        let value = parse_value(text)?;
        Self::from_value(&value, h).map_err(|p| locate_error(text, p))
    }

    fn from_value(v: &Value, h: &DualQuasiBialgebra) -> Res<Self> {
        let obj = object(v, &[])?;
        check_version(obj)?;
        let dim_path = [Seg::Key("dim")];
        let d = uint(key(obj, "dim", &[])?, &dim_path)? as usize;
        let n = h.dim;
        let section = |name: &'static str, bounds: [usize; 3]| -> Res<Entries> {
            sparse(key(obj, name, &[])?, &bounds, h.field, &[Seg::Key(name)])
        };
        Ok(ModuleDocument {
            dim: d,
            rho_l: section("rho_l", [d, n, d])?,
            rho_r: section("rho_r", [d, d, n])?,
            act: section("act", [d, n, d])?,
        })
    }

    pub fn to_module(&self, h: &DualQuasiBialgebra) -> HopfBicomodule {
        let (n, d) = (h.dim, self.dim);
        HopfBicomodule {
            dim: d,
            rho_l: fill(n * d, d, &self.rho_l, |x| (x[1] * d + x[2], x[0])),
            rho_r: fill(d * n, d, &self.rho_r, |x| (x[1] * n + x[2], x[0])),
            act: fill(d, d * n, &self.act, |x| (x[2], x[0] * n + x[1])),
        }
    }

    pub fn from_module(h: &DualQuasiBialgebra, m: &HopfBicomodule) -> Self {
        let (n, d) = (h.dim, m.dim);
        ModuleDocument {
            dim: d,
            rho_l: collect(&m.rho_l, |i, j| vec![j, i / d, i % d]),
            rho_r: collect(&m.rho_r, |i, j| vec![j, i / n, i % n]),
            act: collect(&m.act, |i, j| vec![j / n, j % n, i]),
        }
    }

    pub fn to_canonical_string(&self, field: FieldSpec) -> String {
        let mut w = Writer::new(field);
        w.line(&format!("\"dim\": {},", self.dim));
        w.sparse("rho_l", &self.rho_l, false);
        w.sparse("rho_r", &self.rho_r, false);
        w.sparse("act", &self.act, true);
        w.finish()
    }
}

pub fn parse_module(text: &str, h: &DualQuasiBialgebra) -> Result<HopfBicomodule, ParseError> {
    Ok(ModuleDocument::parse(text, h)?.to_module(h))
}

pub fn serialize_module(h: &DualQuasiBialgebra, m: &HopfBicomodule) -> String {
    ModuleDocument::from_module(h, m).to_canonical_string(h.field)
}

fn endo_entries(s: &Matrix) -> Entries {
    collect(s, |i, j| vec![j, i])
}

fn endo_from(n: usize, entries: &Entries) -> Matrix {
    fill(n, n, entries, |x| (x[1], x[0]))
}

pub fn parse_antipode(text: &str, h: &DualQuasiBialgebra) -> Result<AntipodeData, ParseError> {
    let value = parse_value(text)?;
    let inner = || -> Res<AntipodeData> {
        let obj = object(&value, &[])?;
        check_version(obj)?;
        let n = h.dim;
        let s = sparse(key(obj, "s", &[])?, &[n, n], h.field, &[Seg::Key("s")])?;
        let alpha = dense(key(obj, "alpha", &[])?, n, h.field, &[Seg::Key("alpha")])?;
        let beta = dense(key(obj, "beta", &[])?, n, h.field, &[Seg::Key("beta")])?;
        Ok(AntipodeData { s: endo_from(n, &s), alpha: Matrix::row_vector(alpha), beta: Matrix::row_vector(beta) })
    };
    inner().map_err(|p| locate_error(text, p))
}

pub fn serialize_antipode(h: &DualQuasiBialgebra, data: &AntipodeData) -> String {
    let mut w = Writer::new(h.field);
    w.sparse("s", &endo_entries(&data.s), false);
    w.dense("alpha", data.alpha.row(0), false);
    w.dense("beta", data.beta.row(0), true);
    w.finish()
}

pub fn parse_preantipode(text: &str, h: &DualQuasiBialgebra) -> Result<Preantipode, ParseError> {
    let value = parse_value(text)?;
    let inner = || -> Res<Preantipode> {
        let obj = object(&value, &[])?;
        check_version(obj)?;
        let dim_path = [Seg::Key("dim")];
        let dim = uint(key(obj, "dim", &[])?, &dim_path)? as usize;
        if dim != h.dim {
            return Err(pending(&dim_path, ParseErrorKind::Invalid(format!("dimension {dim} does not match {}", h.dim))));
        }
        let s = sparse(key(obj, "s", &[])?, &[dim, dim], h.field, &[Seg::Key("s")])?;
        Ok(Preantipode { s: endo_from(dim, &s) })
    };
    inner().map_err(|p| locate_error(text, p))
}

pub fn serialize_preantipode(h: &DualQuasiBialgebra, s: &Matrix) -> String {
    let mut w = Writer::new(h.field);
    w.line(&format!("\"dim\": {},", h.dim));
    w.sparse("s", &endo_entries(s), true);
    w.finish()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    JsonLines,
}

#[derive(Serialize)]
struct Record<'a> {
    axiom: &'a str,
    pass: bool,
    witness: Option<&'a [usize]>,
    lhs: Option<&'a str>,
    rhs: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    malformed: Option<&'a str>,
}

/// Renders a report. Text output has one line per failing axiom followed by
/// a summary line; JSON lines has one record per axiom.
pub fn serialize_report(report: &Report, format: ReportFormat) -> String {
    let mut out = String::new();
    match format {
        ReportFormat::Text => {
            for e in &report.entries {
                match &e.outcome {
                    Outcome::Pass => {}
                    Outcome::Fail(w) => {
                        let _ = writeln!(out, "FAIL {} at {:?}: lhs = {}, rhs = {}", e.axiom, w.tuple, w.lhs, w.rhs);
                    }
                    Outcome::Malformed(reason) => {
                        let _ = writeln!(out, "MALFORMED {}: {reason}", e.axiom);
                    }
                }
            }
            let failed = report.failures().count();
            if failed == 0 {
                let _ = writeln!(out, "OK ({} axioms)", report.len());
            } else {
                let _ = writeln!(out, "FAILED ({failed} of {} axioms)", report.len());
            }
        }
        ReportFormat::JsonLines => {
            for e in &report.entries {
                let (witness, lhs, rhs, malformed) = match &e.outcome {
                    Outcome::Pass => (None, None, None, None),
                    Outcome::Fail(w) => (Some(w.tuple.as_slice()), Some(w.lhs.as_str()), Some(w.rhs.as_str()), None),
                    Outcome::Malformed(r) => (None, None, None, Some(r.as_str())),
                };
                let record = Record { axiom: &e.axiom, pass: e.passed(), witness, lhs, rhs, malformed };
                out.push_str(&serde_json::to_string(&record).expect("records serialize"));
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comodules::hhat;
    use crate::dqb::validate_dqb;
    use crate::groups::{cyclic_cocycle, cyclic_dqb, group_antipode_data, GroupData};

    #[test]
    fn canonical_text_round_trips() {
        for (n, r) in [(2, 0), (2, 1), (3, 1), (4, 1)] {
            let h = cyclic_dqb(n, r).unwrap();
            let text = serialize_dqb(&h);
            let back = parse_dqb(&text).unwrap();
            assert_eq!(back, h);
            assert_eq!(serialize_dqb(&back), text);
        }
    }

    #[test]
    fn cyclotomic_scalars_appear_as_polynomials() {
        let text = serialize_dqb(&cyclic_dqb(4, 1).unwrap());
        assert!(text.contains("\"order\": 4"));
        assert!(text.contains("\"-z\"") || text.contains("\"z\""));
    }

    #[test]
    fn minimal_document_parses_and_validates() {
        let text = r#"{"version": 1, "field": {"kind": "rationals"}, "dim": 2,
            "delta": [[0,0,0,"1"],[1,1,1,"1"]], "counit": ["1","1"],
            "mul": [[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"],[1,1,0,"1"]], "unit": ["1","0"],
            "omega": [[0,0,0,"1"],[0,0,1,"1"],[0,1,0,"1"],[0,1,1,"1"],[1,0,0,"1"],[1,0,1,"1"],[1,1,0,"1"],[1,1,1,"1"]]}"#;
        let h = parse_dqb(text).unwrap();
        assert!(validate_dqb(&h).passed());
        assert_eq!(h, cyclic_dqb(2, 0).unwrap());
    }

    #[test]
    fn out_of_range_index_is_located() {
        let text = "{\n  \"version\": 1,\n  \"field\": {\"kind\": \"rationals\"},\n  \"dim\": 1,\n  \"delta\": [\n    [0, 1, 0, \"1\"]\n  ],\n  \"counit\": [\"1\"], \"mul\": [], \"unit\": [\"1\"], \"omega\": []\n}";
        let err = DqbDocument::parse(text).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::IndexOutOfRange { index: 1, bound: 1 });
        assert_eq!((err.line, err.column), (6, 9));
    }

    #[test]
    fn syntax_and_semantic_errors() {
        let err = DqbDocument::parse("{\n  \"version\": 1,,\n}").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
        assert_eq!(err.line, 2);
        let err = DqbDocument::parse(r#"{"version": 1, "field": {"kind": "reals"}}"#).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownField("reals".into()));
        assert_eq!((err.line, err.column), (1, 34));
        let text = r#"{"version": 1, "field": {"kind": "rationals"}, "dim": 1, "delta": [], "counit": ["1/0"], "mul": [], "unit": ["1"], "omega": []}"#;
        let err = DqbDocument::parse(text).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::MalformedScalar(_)));
        assert_eq!(err.column, text.find("\"1/0\"").unwrap() + 1);
        let text = r#"{"version": 1, "field": {"kind": "rationals"}, "dim": 1, "delta": [], "counit": ["z"], "mul": [], "unit": ["1"], "omega": []}"#;
        assert!(matches!(DqbDocument::parse(text).unwrap_err().kind, ParseErrorKind::MalformedScalar(_)));
        let err = DqbDocument::parse(r#"{"version": 2}"#).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Invalid(_)));
    }

    #[test]
    fn module_and_antipode_documents_round_trip() {
        let h = cyclic_dqb(2, 1).unwrap();
        let m = hhat(&h);
        let text = serialize_module(&h, &m);
        assert_eq!(parse_module(&text, &h).unwrap(), m);
        let data = group_antipode_data(&GroupData::cyclic(2), &cyclic_cocycle(2, 1).unwrap()).unwrap();
        let text = serialize_antipode(&h, &data);
        assert_eq!(parse_antipode(&text, &h).unwrap(), data);
        let s = Matrix::from_i64_rows(&[&[1, 0], &[0, -1]]);
        let text = serialize_preantipode(&h, &s);
        assert_eq!(parse_preantipode(&text, &h).unwrap().s, s);
    }

    #[test]
    fn report_rendering() {
        let empty = Report::new();
        assert_eq!(serialize_report(&empty, ReportFormat::Text), "OK (0 axioms)\n");
        assert_eq!(serialize_report(&empty, ReportFormat::JsonLines), "");
        let mut r = Report::new();
        r.pass("a");
        r.pass("b");
        assert_eq!(serialize_report(&r, ReportFormat::Text), "OK (2 axioms)\n");
        r.fail("c", vec![1, 0, 1], "-1", "1");
        let text = serialize_report(&r, ReportFormat::Text);
        assert!(text.contains("FAIL c at [1, 0, 1]"));
        assert!(text.ends_with("FAILED (1 of 3 axioms)\n"));
        let lines = serialize_report(&r, ReportFormat::JsonLines);
        let last: Value = serde_json::from_str(lines.lines().last().unwrap()).unwrap();
        assert_eq!(last["witness"], serde_json::json!([1, 0, 1]));
        assert_eq!(last["pass"], Value::Bool(false));
        assert_eq!(lines.lines().count(), 3);
    }
}
