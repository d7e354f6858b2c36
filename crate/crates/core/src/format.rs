//! Text encodings shared by the library and the command-line tool.
//!
//! Vectors over GF(q) are written as digit strings: for `q <= 36` one
//! character per entry from `0-9a-z` (the element's integer code, see
//! [`crate::field`]), whitespace ignored; for larger `q` entries are decimal
//! integers separated by spaces or commas.
//!
//! Code specifications are TOML documents ([`CodeSpecFile`]):
//!
//! ```toml
//! p = 2
//! m = 1
//! n = 5
//! construction = "generator-rows"   # or "cyclic-roots", "symplectic-generators"
//! rows = ["12210", "01221"]         # generator rows of C over GF(p^2m)
//! # roots = [0, 1, 4]               # for cyclic-roots
//! # generators = ["10010|01100"]    # for symplectic-generators, a|b over F_p
//!
//! [options]
//! omega = 2                          # ω override (m = 1)
//! representation = "normal-basis"    # force Φ for m = 1
//! alphas = [1, 2]                    # scalar basis for Φ
//! puncture = [1]                     # 1-based coordinate of the check code
//! ```
//!
//! `build` writes the same document with a `[record]` table holding the derived
//! data (k, d and its flag, field, ω/θ/D/α, classical and check rows,
//! symplectic generators); reading it back re-derives and compares everything.

use serde::{Deserialize, Serialize};

use crate::classical::{CyclicCode, LinearCode};
use crate::field::{Elem, Field, FieldRecord};
use crate::linalg::Matrix;
use crate::stabilizer::{BuildOptions, Representation, StabilizerCode};
use crate::symplectic::{SymplecticMap, SymplecticVector};
use crate::{Error, Result};

const DIGITS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";

pub fn format_digits(v: &[Elem], q: u32) -> String {
    if q <= 36 {
        v.iter().map(|e| DIGITS[e.0 as usize] as char).collect()
    } else {
        v.iter().map(|e| e.0.to_string()).collect::<Vec<_>>().join(" ")
    }
}

pub fn parse_digits(s: &str, q: u32) -> Result<Vec<Elem>> {
    let check = |v: u32, token: &str| {
        if v < q {
            Ok(Elem(v))
        } else {
            Err(Error::InvalidArgument(format!("digit {token:?} is out of range for GF({q})")))
        }
    };
    if q <= 36 {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| {
                let v = c.to_digit(36).ok_or_else(|| Error::InvalidArgument(format!("invalid digit {c:?}")))?;
                check(v, &c.to_string())
            })
            .collect()
    } else {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                let v: u32 = t.parse().map_err(|_| Error::InvalidArgument(format!("invalid entry {t:?}")))?;
                check(v, t)
            })
            .collect()
    }
}

/// Byte offset to 1-based `(line, column)`.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Position of the first line assigning `key`, for errors found after parsing.
fn locate(text: &str, key: &str) -> (usize, usize) {
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let trimmed = line.trim_start();
        if trimmed.strip_prefix(key).is_some_and(|rest| rest.trim_start().starts_with('=')) {
            return line_col(text, offset + line.len() - trimmed.len());
        }
        offset += line.len();
    }
    (1, 1)
}

fn parse_error_at(text: &str, key: &str, message: impl Into<String>) -> Error {
    let (line, column) = locate(text, key);
    Error::Parse { line, column, message: message.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    /// Generator rows of `C` over GF(p^{2m}).
    GeneratorRows,
    /// `C` cyclic with the given zeros `γ^j`.
    CyclicRoots,
    /// Symplectic generators `a|b` over F_p.
    SymplecticGenerators,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct SpecOptions {
    /// Element code of `ω` for `φ` (`m = 1`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<u32>,
    /// Element codes of the scalar basis `α_j` for Φ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<u32>>,
    /// Element code of the normal element `θ` for Φ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<u32>,
    /// Rows of `D` as digit strings over F_p.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_matrix: Option<Vec<String>>,
    /// `"auto"` (`φ` for `m = 1`) or `"normal-basis"` (always Φ).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<String>,
    /// 1-based coordinates to puncture the check code at (at most one).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub puncture: Vec<usize>,
}

/// Derived data written by `build`; when present on input it is re-checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct CodeRecord {
    pub k: usize,
    pub d: usize,
    /// `"exact"` or `"bch-lower-bound"`.
    pub d_kind: String,
    pub field: FieldRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_matrix: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<u32>>,
    /// Rows of `C` in generator order.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub classical_rows: Vec<String>,
    /// `g_i^{p^m}` in generator order.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub check_rows: Vec<String>,
    pub generators: Vec<String>,
}

/// A code specification file, optionally carrying a [`CodeRecord`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct CodeSpecFile {
    pub p: u32,
    pub m: u32,
    pub n: usize,
    pub construction: ConstructionKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub options: SpecOptions,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub record: Option<CodeRecord>,
}

fn is_default(o: &SpecOptions) -> bool {
    *o == SpecOptions::default()
}

impl CodeSpecFile {
    /// Parses and checks that exactly the fields of the declared construction
    /// are present. Errors carry 1-based line and column numbers.
    pub fn parse(text: &str) -> Result<CodeSpecFile> {
        let spec: CodeSpecFile = toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map_or((1, 1), |s| line_col(text, s.start));
            Error::Parse { line, column, message: e.message().to_string() }
        })?;
        let present = [("rows", spec.rows.is_some()), ("roots", spec.roots.is_some()), ("generators", spec.generators.is_some())];
        let wanted = match spec.construction {
            ConstructionKind::GeneratorRows => "rows",
            ConstructionKind::CyclicRoots => "roots",
            ConstructionKind::SymplecticGenerators => "generators",
        };
        for (key, is_set) in present {
            if key == wanted && !is_set {
                return Err(parse_error_at(text, "construction", format!("this construction needs `{key}`")));
            }
            if key != wanted && is_set {
                return Err(parse_error_at(text, key, format!("`{key}` does not belong to this construction")));
            }
        }
        let q = spec.p.checked_pow(2 * spec.m).unwrap_or(u32::MAX);
        if let Some(rows) = &spec.rows {
            for r in rows {
                let v = parse_digits(r, q).map_err(|e| parse_error_at(text, "rows", e.to_string()))?;
                if v.len() != spec.n {
                    return Err(parse_error_at(text, "rows", format!("row {r:?} has {} entries, expected n = {}", v.len(), spec.n)));
                }
            }
        }
        if spec.options.puncture.len() > 1 {
            return Err(parse_error_at(text, "puncture", "at most one puncture position is supported"));
        }
        if let Some(&pos) = spec.options.puncture.first() {
            if pos == 0 || pos > spec.n {
                return Err(parse_error_at(text, "puncture", format!("position {pos} outside 1..={}", spec.n)));
            }
        }
        if let Some(r) = &spec.options.representation {
            if r != "auto" && r != "normal-basis" {
                return Err(parse_error_at(text, "representation", format!("unknown representation {r:?}")));
            }
        }
        Ok(spec)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec files serialize")
    }

    /// The build options implied by `options`.
    pub fn build_options(&self, base: &BuildOptions) -> Result<BuildOptions> {
        let mut out = base.clone();
        let o = &self.options;
        out.omega = o.omega.map(Elem);
        out.alphas = o.alphas.as_ref().map(|a| a.iter().map(|&x| Elem(x)).collect());
        out.theta = o.theta.map(Elem);
        if let Some(rows) = &o.d_matrix {
            let parsed = rows.iter().map(|r| parse_digits(r, self.p)).collect::<Result<Vec<_>>>()?;
            out.d_matrix = Some(Matrix::from_rows(&parsed, 2 * self.m as usize)?);
        }
        out.representation = match o.representation.as_deref() {
            Some("normal-basis") => Representation::NormalBasis,
            _ => Representation::Auto,
        };
        Ok(out)
    }

    /// Builds the code. If a record is attached, the rebuilt code must
    /// reproduce it exactly.
    pub fn build(&self, base: &BuildOptions) -> Result<StabilizerCode> {
        let (p, m, n) = (self.p, self.m as usize, self.n);
        let code = match self.construction {
            ConstructionKind::SymplecticGenerators => {
                if !self.options.puncture.is_empty() || self.options != SpecOptions::default() {
                    return Err(Error::InvalidArgument("options apply only to classical constructions".into()));
                }
                let vectors = self
                    .generators
                    .as_deref()
                    .unwrap_or_default()
                    .iter()
                    .map(|g| SymplecticVector::parse(g, p, m, n))
                    .collect::<Result<Vec<_>>>()?;
                StabilizerCode::from_symplectic_basis(vectors, p, m, n, base.enum_bound, base.exec)?
            }
            ConstructionKind::GeneratorRows | ConstructionKind::CyclicRoots => {
                let field = Field::new(p, 2 * self.m)?;
                let c = match self.construction {
                    ConstructionKind::GeneratorRows => {
                        let rows = self
                            .rows
                            .as_deref()
                            .unwrap_or_default()
                            .iter()
                            .map(|r| parse_digits(r, field.order()))
                            .collect::<Result<Vec<_>>>()?;
                        if let Some((i, j)) = raw_violation(&field, &rows) {
                            return Err(Error::NotSelfOrthogonal(i + 1, j + 1));
                        }
                        LinearCode::from_rows(&field, n, &rows)?
                    }
                    _ => CyclicCode::from_roots(&field, n, self.roots.as_deref().unwrap_or_default())?.code().clone(),
                };
                let options = self.build_options(base)?;
                match self.options.puncture.first() {
                    Some(&pos) => StabilizerCode::from_shortened(&c, pos - 1, &options)?,
                    None => StabilizerCode::from_classical_code(&c, &options)?,
                }
            }
        };
        if let Some(record) = &self.record {
            let rebuilt = CodeRecord::of(&code);
            if &rebuilt != record {
                return Err(Error::InvalidArgument("the attached record does not match the rebuilt code".into()));
            }
        }
        Ok(code)
    }

    /// A spec that rebuilds `code`, with its record attached.
    pub fn from_code(code: &StabilizerCode) -> CodeSpecFile {
        let (p, m, n) = (code.p(), code.m() as u32, code.n());
        let mut spec = CodeSpecFile {
            p,
            m,
            n,
            construction: ConstructionKind::SymplecticGenerators,
            rows: None,
            roots: None,
            generators: None,
            options: SpecOptions::default(),
            record: Some(CodeRecord::of(code)),
        };
        match code.origin() {
            None => spec.generators = Some(code.generators().iter().map(|g| g.to_string()).collect()),
            Some(origin) => {
                let q = origin.field().order();
                spec.construction = ConstructionKind::GeneratorRows;
                let source = origin.punctured_from.as_ref().map_or(&origin.code, |pf| &pf.code);
                spec.rows = Some(source.generator().row_vecs().iter().map(|r| format_digits(r, q)).collect());
                if let Some(pf) = &origin.punctured_from {
                    spec.options.puncture = vec![pf.position + 1];
                }
                match &origin.map {
                    SymplecticMap::Phi(phi) => {
                        if phi.omega() != phi.field().primitive() {
                            spec.options.omega = Some(phi.omega().0);
                        }
                    }
                    SymplecticMap::BigPhi(_) => {
                        if m == 1 {
                            spec.options.representation = Some("normal-basis".into());
                        }
                        let record = spec.record.as_ref().expect("set above");
                        spec.options.alphas = record.alphas.clone();
                        spec.options.theta = record.theta;
                        spec.options.d_matrix = record.d_matrix.clone();
                    }
                }
            }
        }
        spec
    }
}

/// First pair of rows `(i, j)`, 0-based in input order, with `<r_i, r_j^{p^m}> != 0`.
fn raw_violation(field: &Field, rows: &[Vec<Elem>]) -> Option<(usize, usize)> {
    let m = field.degree() / 2;
    for (i, a) in rows.iter().enumerate() {
        for (j, b) in rows.iter().enumerate() {
            let conj: Vec<Elem> = b.iter().map(|&e| field.frobenius(e, m)).collect();
            if !field.dot(a, &conj).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

impl CodeRecord {
    pub fn of(code: &StabilizerCode) -> CodeRecord {
        let mut record = CodeRecord {
            k: code.k(),
            d: code.distance().value(),
            d_kind: code.distance().label().into(),
            field: code.prime_field().record(),
            omega: None,
            theta: None,
            d_matrix: None,
            alphas: None,
            classical_rows: Vec::new(),
            check_rows: Vec::new(),
            generators: code.generators().iter().map(|g| g.to_string()).collect(),
        };
        if let Some(origin) = code.origin() {
            let field = origin.field();
            let q = field.order();
            record.field = field.record();
            record.classical_rows = origin.code.generator().row_vecs().iter().map(|r| format_digits(r, q)).collect();
            record.check_rows = origin.check_rows.row_vecs().iter().map(|r| format_digits(r, q)).collect();
            match &origin.map {
                SymplecticMap::Phi(phi) => record.omega = Some(phi.omega().0),
                SymplecticMap::BigPhi(s) => {
                    record.theta = Some(s.basis().theta().0);
                    record.d_matrix = Some(s.d().row_vecs().iter().map(|r| format_digits(r, code.p())).collect());
                    record.alphas = origin.dual_basis.as_ref().map(|d| d.alphas().iter().map(|a| a.0).collect());
                }
            }
        }
        record
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_roundtrip() {
        let v = vec![Elem(0), Elem(15), Elem(3)];
        assert_eq!(format_digits(&v, 16), "0f3");
        assert_eq!(parse_digits("0 f 3", 16).unwrap(), v);
        assert_eq!(parse_digits(&format_digits(&v, 49), 49).unwrap(), v);
        assert!(parse_digits("4", 4).is_err());
    }

    #[test]
    fn parse_errors_have_positions() {
        let err = CodeSpecFile::parse("p = 2\nm = 1\nn = 5\nconstruction = \"nope\"\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err:?}");
        let err = CodeSpecFile::parse("p = 2\nm = 1\nn = 3\nconstruction = \"generator-rows\"\nrows = [\"12\"]\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 5, column: 1, .. }), "{err:?}");
        let err = CodeSpecFile::parse("p = 2\nm = 1\nn = 3\nconstruction = \"cyclic-roots\"\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err:?}");
    }

    #[test]
    fn empty_generator_list_builds_trivial_code() {
        let spec = CodeSpecFile::parse("p = 2\nm = 1\nn = 3\nconstruction = \"generator-rows\"\nrows = []\n").unwrap();
        let code = spec.build(&BuildOptions::default()).unwrap();
        assert_eq!((code.n(), code.k(), code.distance().value()), (3, 3, 1));
    }
}
