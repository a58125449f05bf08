//! Matrix Market ingestion and tabular result emission.
//!
//! Matrices travel in the Matrix Market exchange format (coordinate and
//! array, real/integer/complex values, general/symmetric/skew-symmetric/
//! hermitian storage). Results travel as [`ResultTable`]s — typed columns
//! plus a string metadata block — rendered to CSV (metadata as `#`-prefixed
//! comment lines, reals at 17 significant digits so they round-trip
//! bit-exactly) or JSON (`{metadata, columns, rows}`, non-finite reals as
//! `null`). Complex columns flatten into `_re`/`_im` pairs in both formats.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, Symmetry};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MmFormat {
    Coordinate,
    Array,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MmField {
    Real,
    Integer,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MmSymmetry {
    General,
    Symmetric,
    SkewSymmetric,
    Hermitian,
}

/// Reads a square matrix from a Matrix Market file.
pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<DenseMatrix> {
    parse_matrix_market(&fs::read_to_string(path)?)
}

/// Writes a matrix in Matrix Market array format (symmetric storage when
/// the matrix carries the symmetric tag).
pub fn write_matrix_market(a: &DenseMatrix, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, render_matrix_market(a))?;
    Ok(())
}

struct Cursor<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
    /// 1-based number of the last line handed out (or skipped).
    line_no: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            lines: text.lines().enumerate(),
            line_no: 0,
        }
    }

    /// Next non-comment, non-blank line with its 1-based number.
    fn next_data(&mut self) -> Option<(usize, &'a str)> {
        for (i, l) in self.lines.by_ref() {
            self.line_no = i + 1;
            let t = l.trim();
            if t.is_empty() || t.starts_with('%') {
                continue;
            }
            return Some((i + 1, t));
        }
        None
    }

    fn require_data(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let line = self.line_no + 1;
        self.next_data().ok_or_else(|| Error::Parse {
            line,
            reason: format!("unexpected end of file, expected {what}"),
        })
    }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        reason: format!("invalid {what} `{tok}`"),
    })
}

fn parse_value(toks: &[&str], field: MmField, line: usize) -> Result<Complex64> {
    let real = |tok: &str| -> Result<f64> {
        tok.parse().map_err(|_| Error::Parse {
            line,
            reason: format!("invalid value `{tok}`"),
        })
    };
    match field {
        MmField::Real => Ok(Complex64::new(real(toks[0])?, 0.0)),
        MmField::Integer => {
            let v: i64 = toks[0].parse().map_err(|_| Error::Parse {
                line,
                reason: format!("invalid integer value `{}`", toks[0]),
            })?;
            Ok(Complex64::new(v as f64, 0.0))
        }
        MmField::Complex => Ok(Complex64::new(real(toks[0])?, real(toks[1])?)),
    }
}

/// Parses Matrix Market text into a dense square matrix.
///
/// Coordinate entries are 1-based and densified; duplicates are summed;
/// symmetric/skew-symmetric/hermitian storage is mirrored. Array data is
/// read column-major, lower triangle only for the packed symmetries. The
/// result is tagged symmetric exactly when the assembled entries are.
pub fn parse_matrix_market(text: &str) -> Result<DenseMatrix> {
    // The banner starts with '%', which the comment-skipping cursor would
    // swallow, so take line 1 verbatim before handing the rest to it.
    let first = text.lines().next().unwrap_or_default();
    let mut cur = Cursor::new(text);
    cur.lines.next();
    cur.line_no = 1;

    let toks: Vec<String> = first.split_whitespace().map(|t| t.to_ascii_lowercase()).collect();
    if toks.first().map(String::as_str) != Some("%%matrixmarket") {
        return Err(Error::Parse {
            line: 1,
            reason: "file must start with `%%MatrixMarket`".into(),
        });
    }
    if toks.len() < 5 {
        return Err(Error::Parse {
            line: 1,
            reason: "header needs `%%MatrixMarket matrix <format> <field> <symmetry>`".into(),
        });
    }
    if toks[1] != "matrix" {
        return Err(Error::Parse {
            line: 1,
            reason: format!("unsupported object `{}`", toks[1]),
        });
    }
    let format = match toks[2].as_str() {
        "coordinate" => MmFormat::Coordinate,
        "array" => MmFormat::Array,
        other => {
            return Err(Error::Parse {
                line: 1,
                reason: format!("unknown format `{other}`"),
            })
        }
    };
    let field = match toks[3].as_str() {
        "real" => MmField::Real,
        "integer" => MmField::Integer,
        "complex" => MmField::Complex,
        "pattern" => return Err(Error::UnsupportedField("pattern".into())),
        other => {
            return Err(Error::Parse {
                line: 1,
                reason: format!("unknown field `{other}`"),
            })
        }
    };
    let symmetry = match toks[4].as_str() {
        "general" => MmSymmetry::General,
        "symmetric" => MmSymmetry::Symmetric,
        "skew-symmetric" => MmSymmetry::SkewSymmetric,
        "hermitian" => MmSymmetry::Hermitian,
        other => {
            return Err(Error::Parse {
                line: 1,
                reason: format!("unknown symmetry `{other}`"),
            })
        }
    };

    let value_tokens = if field == MmField::Complex { 2 } else { 1 };
    let entries = match format {
        MmFormat::Coordinate => {
            let (ln, size) = cur.require_data("the `rows cols nnz` size line")?;
            let parts: Vec<&str> = size.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::Parse {
                    line: ln,
                    reason: "size line must be `rows cols nnz`".into(),
                });
            }
            let rows = parse_usize(parts[0], ln, "row count")?;
            let cols = parse_usize(parts[1], ln, "column count")?;
            let nnz = parse_usize(parts[2], ln, "entry count")?;
            if rows != cols {
                return Err(Error::NotSquare { rows, cols });
            }
            let n = rows;
            if n == 0 {
                return Err(Error::Parse {
                    line: ln,
                    reason: "matrix dimension must be positive".into(),
                });
            }
            let mut e = vec![Complex64::ZERO; n * n];
            for _ in 0..nnz {
                let (ln, line) = cur.require_data("a coordinate entry")?;
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 2 + value_tokens {
                    return Err(Error::Parse {
                        line: ln,
                        reason: format!(
                            "expected {} fields in coordinate entry, found {}",
                            2 + value_tokens,
                            toks.len()
                        ),
                    });
                }
                let i = parse_usize(toks[0], ln, "row index")?;
                let j = parse_usize(toks[1], ln, "column index")?;
                if i == 0 || j == 0 || i > n || j > n {
                    return Err(Error::Parse {
                        line: ln,
                        reason: format!("index ({i}, {j}) outside 1..={n}"),
                    });
                }
                let v = parse_value(&toks[2..], field, ln)?;
                let (i, j) = (i - 1, j - 1);
                match symmetry {
                    MmSymmetry::General => e[i * n + j] += v,
                    MmSymmetry::Symmetric => {
                        e[i * n + j] += v;
                        if i != j {
                            e[j * n + i] += v;
                        }
                    }
                    MmSymmetry::SkewSymmetric => {
                        if i == j {
                            return Err(Error::Parse {
                                line: ln,
                                reason: "skew-symmetric storage admits no diagonal entries".into(),
                            });
                        }
                        e[i * n + j] += v;
                        e[j * n + i] -= v;
                    }
                    MmSymmetry::Hermitian => {
                        if i == j && v.im != 0.0 {
                            return Err(Error::Parse {
                                line: ln,
                                reason: "hermitian diagonal entries must be real".into(),
                            });
                        }
                        e[i * n + j] += v;
                        if i != j {
                            e[j * n + i] += v.conj();
                        }
                    }
                }
            }
            if let Some((ln, _)) = cur.next_data() {
                return Err(Error::Parse {
                    line: ln,
                    reason: "more entries than the declared count".into(),
                });
            }
            (n, e)
        }
        MmFormat::Array => {
            let (ln, size) = cur.require_data("the `rows cols` size line")?;
            let parts: Vec<&str> = size.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(Error::Parse {
                    line: ln,
                    reason: "size line must be `rows cols`".into(),
                });
            }
            let rows = parse_usize(parts[0], ln, "row count")?;
            let cols = parse_usize(parts[1], ln, "column count")?;
            if rows != cols {
                return Err(Error::NotSquare { rows, cols });
            }
            let n = rows;
            if n == 0 {
                return Err(Error::Parse {
                    line: ln,
                    reason: "matrix dimension must be positive".into(),
                });
            }
            let mut e = vec![Complex64::ZERO; n * n];
            // column-major; packed symmetries store the lower triangle
            for j in 0..n {
                let start = match symmetry {
                    MmSymmetry::General => 0,
                    MmSymmetry::Symmetric | MmSymmetry::Hermitian => j,
                    MmSymmetry::SkewSymmetric => j + 1,
                };
                for i in start..n {
                    let (ln, line) = cur.require_data("an array value")?;
                    let toks: Vec<&str> = line.split_whitespace().collect();
                    if toks.len() != value_tokens {
                        return Err(Error::Parse {
                            line: ln,
                            reason: format!(
                                "expected {value_tokens} field(s) in array value, found {}",
                                toks.len()
                            ),
                        });
                    }
                    let v = parse_value(&toks, field, ln)?;
                    match symmetry {
                        MmSymmetry::General => e[i * n + j] = v,
                        MmSymmetry::Symmetric => {
                            e[i * n + j] = v;
                            e[j * n + i] = v;
                        }
                        MmSymmetry::SkewSymmetric => {
                            e[i * n + j] = v;
                            e[j * n + i] = -v;
                        }
                        MmSymmetry::Hermitian => {
                            if i == j && v.im != 0.0 {
                                return Err(Error::Parse {
                                    line: ln,
                                    reason: "hermitian diagonal entries must be real".into(),
                                });
                            }
                            e[i * n + j] = v;
                            e[j * n + i] = v.conj();
                        }
                    }
                }
            }
            if let Some((ln, _)) = cur.next_data() {
                return Err(Error::Parse {
                    line: ln,
                    reason: "more values than the array holds".into(),
                });
            }
            (n, e)
        }
    };

    let (n, e) = entries;
    let exact_symmetric = (0..n).all(|i| (i + 1..n).all(|j| e[i * n + j] == e[j * n + i]));
    let tag = if exact_symmetric {
        Symmetry::Symmetric
    } else {
        Symmetry::General
    };
    DenseMatrix::from_complex(n, e, tag)
}

/// Renders a matrix as Matrix Market array text (17-significant-digit
/// values, so reading it back is bit-exact).
pub fn render_matrix_market(a: &DenseMatrix) -> String {
    let n = a.n();
    let complex = !a.is_real();
    let symmetric = a.symmetry() == Symmetry::Symmetric;
    let mut out = format!(
        "%%MatrixMarket matrix array {} {}\n{n} {n}\n",
        if complex { "complex" } else { "real" },
        if symmetric { "symmetric" } else { "general" },
    );
    for j in 0..n {
        let start = if symmetric { j } else { 0 };
        for i in start..n {
            let z = a.get(i, j);
            if complex {
                let _ = writeln!(out, "{} {}", format_real(z.re), format_real(z.im));
            } else {
                let _ = writeln!(out, "{}", format_real(z.re));
            }
        }
    }
    out
}

/// `sha256:<hex>` digest of raw bytes, for provenance metadata.
pub fn hash_bytes(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut s = String::with_capacity(7 + 64);
    s.push_str("sha256:");
    for b in digest {
        let _ = write!(s, "{b:02x}");
    }
    s
}

/// Digest of a file's bytes.
pub fn hash_file(path: impl AsRef<Path>) -> Result<String> {
    Ok(hash_bytes(&fs::read(path)?))
}

/// Digest of a matrix's canonical byte encoding (for generated inputs that
/// never touch disk).
pub fn hash_matrix(a: &DenseMatrix) -> String {
    hash_bytes(&a.canonical_bytes())
}

/// 17-significant-digit decimal rendering; round-trips `f64` bit-exactly.
pub fn format_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnType {
    Index,
    Real,
    Complex,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Index(usize),
    Real(f64),
    Complex(Complex64),
    Text(String),
}

impl Value {
    fn matches(&self, ty: ColumnType) -> bool {
        matches!(
            (self, ty),
            (Value::Index(_), ColumnType::Index)
                | (Value::Real(_), ColumnType::Real)
                | (Value::Complex(_), ColumnType::Complex)
                | (Value::Text(_), ColumnType::Text)
        )
    }
}

#[derive(Debug, Clone)]
pub struct Column {
    pub name: String,
    pub ty: ColumnType,
}

/// A typed, schema-named table with string metadata, the common shape of
/// every emitted result.
#[derive(Debug, Clone)]
pub struct ResultTable {
    pub schema_name: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Value>>,
    pub metadata: BTreeMap<String, String>,
}

impl ResultTable {
    pub fn new(schema_name: &str, columns: &[(&str, ColumnType)]) -> Self {
        ResultTable {
            schema_name: schema_name.to_string(),
            columns: columns
                .iter()
                .map(|&(name, ty)| Column {
                    name: name.to_string(),
                    ty,
                })
                .collect(),
            rows: Vec::new(),
            metadata: BTreeMap::new(),
        }
    }

    /// Per-eigenvalue truncation errors against their closed-form bounds.
    pub fn error_bounds() -> Self {
        Self::new(
            "error_bounds",
            &[
                ("eig_index", ColumnType::Index),
                ("lambda_re", ColumnType::Real),
                ("lambda_im", ColumnType::Real),
                ("rel_error", ColumnType::Real),
                ("bound", ColumnType::Real),
                ("approx_center_shifted", ColumnType::Real),
            ],
        )
    }

    /// Eigenvector entry magnitudes against the per-entry disc bound.
    pub fn eigvec_trend() -> Self {
        Self::new(
            "eigvec_trend",
            &[
                ("entry_index", ColumnType::Index),
                ("abs_entry", ColumnType::Real),
                ("trend_value", ColumnType::Real),
            ],
        )
    }

    /// Power-method convergence traces across trials and start kinds.
    pub fn perron_trace() -> Self {
        Self::new(
            "perron_trace",
            &[
                ("trial", ColumnType::Index),
                ("start_kind", ColumnType::Text),
                ("iteration", ColumnType::Index),
                ("residual", ColumnType::Real),
            ],
        )
    }

    /// Appends a row; panics on arity or type mismatch (programmer error).
    pub fn push_row(&mut self, row: Vec<Value>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row arity does not match schema `{}`",
            self.schema_name
        );
        for (v, c) in row.iter().zip(&self.columns) {
            assert!(
                v.matches(c.ty),
                "value {v:?} does not fit column `{}` of schema `{}`",
                c.name,
                self.schema_name
            );
        }
        self.rows.push(row);
    }

    pub fn set_meta(&mut self, key: &str, value: impl Into<String>) {
        self.metadata.insert(key.to_string(), value.into());
    }

    /// Stamps the metadata every emitted table must carry.
    pub fn stamp(&mut self, radius_mode: &str, seed: u64, input_hash: &str) {
        self.set_meta("radius_mode", radius_mode);
        self.set_meta("seed", seed.to_string());
        self.set_meta("tool_version", env!("CARGO_PKG_VERSION"));
        self.set_meta("input_hash", input_hash);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl std::str::FromStr for TableFormat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(format!("unknown format `{other}` (use csv|json)")),
        }
    }
}

/// Column list with complex columns flattened to `_re`/`_im` pairs.
fn flat_columns(table: &ResultTable) -> Vec<(String, &'static str)> {
    let mut out = Vec::new();
    for c in &table.columns {
        match c.ty {
            ColumnType::Complex => {
                out.push((format!("{}_re", c.name), "real"));
                out.push((format!("{}_im", c.name), "real"));
            }
            ColumnType::Index => out.push((c.name.clone(), "index")),
            ColumnType::Real => out.push((c.name.clone(), "real")),
            ColumnType::Text => out.push((c.name.clone(), "text")),
        }
    }
    out
}

fn flat_values(row: &[Value]) -> Vec<Value> {
    let mut out = Vec::with_capacity(row.len());
    for v in row {
        match v {
            Value::Complex(z) => {
                out.push(Value::Real(z.re));
                out.push(Value::Real(z.im));
            }
            other => out.push(other.clone()),
        }
    }
    out
}

/// Renders a table to the requested format.
pub fn render_table(table: &ResultTable, format: TableFormat) -> String {
    match format {
        TableFormat::Csv => render_csv(table),
        TableFormat::Json => render_json(table),
    }
}

/// Renders and writes a table.
pub fn write_table(table: &ResultTable, format: TableFormat, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, render_table(table, format))?;
    Ok(())
}

fn render_csv(table: &ResultTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# schema = {}", table.schema_name);
    for (k, v) in &table.metadata {
        let _ = writeln!(out, "# {k} = {v}");
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(flat_columns(table).iter().map(|(name, _)| name.as_str()))
        .expect("writing to memory cannot fail");
    for row in &table.rows {
        let fields: Vec<String> = flat_values(row)
            .into_iter()
            .map(|v| match v {
                Value::Index(i) => i.to_string(),
                Value::Real(x) => format_real(x),
                Value::Text(s) => s,
                Value::Complex(_) => unreachable!("complex values are flattened"),
            })
            .collect();
        w.write_record(&fields).expect("writing to memory cannot fail");
    }
    let bytes = w.into_inner().expect("flushing to memory cannot fail");
    out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
    out
}

fn render_json(table: &ResultTable) -> String {
    use serde_json::{json, Map, Number, Value as J};

    let real_json = |x: f64| -> J {
        Number::from_f64(x).map(J::Number).unwrap_or(J::Null)
    };
    let mut metadata = Map::new();
    metadata.insert("schema".into(), J::String(table.schema_name.clone()));
    for (k, v) in &table.metadata {
        metadata.insert(k.clone(), J::String(v.clone()));
    }
    let columns: Vec<J> = flat_columns(table)
        .into_iter()
        .map(|(name, ty)| json!({ "name": name, "type": ty }))
        .collect();
    let rows: Vec<J> = table
        .rows
        .iter()
        .map(|row| {
            J::Array(
                flat_values(row)
                    .into_iter()
                    .map(|v| match v {
                        Value::Index(i) => J::Number(Number::from(i as u64)),
                        Value::Real(x) => real_json(x),
                        Value::Text(s) => J::String(s),
                        Value::Complex(_) => unreachable!("complex values are flattened"),
                    })
                    .collect(),
            )
        })
        .collect();
    let doc = json!({ "metadata": J::Object(metadata), "columns": columns, "rows": rows });
    let mut s = serde_json::to_string_pretty(&doc).expect("table JSON serializes");
    s.push('\n');
    s
}
