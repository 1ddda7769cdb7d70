//! Problem files: JSON documents with named matrices, vectors, subspaces,
//! relations and weights, plus one section per command naming its inputs.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::{CMatrix, CVector};
use crate::relation::LinearRelation;
use crate::subspace::Subspace;
use crate::tolerance::Tolerance;
use crate::weighted::{Weight, WeightKind};

pub const VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum ProblemError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("unsupported {what}: {found}")]
    Unsupported { what: &'static str, found: String },
    #[error("undefined {kind} '{name}'")]
    Undefined { kind: &'static str, name: String },
    #[error("missing section '{0}'")]
    MissingSection(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid {what}: {detail}")]
    Invalid { what: String, detail: String },
    #[error(transparent)]
    Library(#[from] crate::Error),
}

/// A complex scalar, written as a plain number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Pair([f64; 2]),
}

impl Scalar {
    pub fn value(self) -> Complex64 {
        match self {
            Scalar::Real(re) => Complex64::new(re, 0.0),
            Scalar::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

pub type MatrixLit = Vec<Vec<Scalar>>;
pub type VectorLit = Vec<Scalar>;

/// Either the name of an entry defined elsewhere in the file or an inline value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref<T> {
    Name(String),
    Inline(T),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceDef {
    pub ambient: usize,
    #[serde(default)]
    pub span: Vec<VectorLit>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RelationDef {
    /// Graph of a matrix, `{(x, A x)}`.
    Matrix(Ref<MatrixLit>),
    /// Span of the listed pairs `(x, y)`.
    Pairs {
        dim_in: usize,
        dim_out: usize,
        pairs: Vec<[VectorLit; 2]>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightDef {
    pub matrix: Ref<MatrixLit>,
    pub kind: WeightKind,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    pub rho: Option<f64>,
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationAnalyze {
    pub relation: Ref<RelationDef>,
    pub apply: Option<Ref<VectorLit>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjBuild {
    #[serde(rename = "M")]
    pub m: Ref<SubspaceDef>,
    #[serde(rename = "N")]
    pub n: Ref<SubspaceDef>,
    pub apply: Option<Ref<VectorLit>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum ProjRepresent {
    Relation {
        relation: Ref<RelationDef>,
        splitting: Ref<SubspaceDef>,
    },
    Super {
        #[serde(rename = "M")]
        m: Ref<SubspaceDef>,
        #[serde(rename = "S1")]
        s1: Ref<SubspaceDef>,
        #[serde(rename = "S2")]
        s2: Ref<SubspaceDef>,
        x: Ref<RelationDef>,
    },
    Pair {
        #[serde(rename = "M")]
        m: Ref<SubspaceDef>,
        #[serde(rename = "N")]
        n: Ref<SubspaceDef>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LssSection {
    pub relation: Ref<RelationDef>,
    pub weight: Ref<WeightDef>,
    pub b: Ref<VectorLit>,
    pub x0: Option<Ref<VectorLit>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct W1w2Section {
    pub relation: Ref<RelationDef>,
    pub w1: Ref<WeightDef>,
    pub w2: Ref<WeightDef>,
    pub b: Ref<VectorLit>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplineSection {
    #[serde(rename = "T")]
    pub t: Ref<MatrixLit>,
    #[serde(rename = "V")]
    pub v: Ref<MatrixLit>,
    pub b: Ref<VectorLit>,
    pub rho: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedSection {
    pub weight: Ref<WeightDef>,
    pub subspace: Ref<SubspaceDef>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub version: u32,
    #[serde(default = "default_field")]
    pub field: String,
    #[serde(default)]
    pub matrices: BTreeMap<String, MatrixLit>,
    #[serde(default)]
    pub vectors: BTreeMap<String, VectorLit>,
    #[serde(default)]
    pub subspaces: BTreeMap<String, SubspaceDef>,
    #[serde(default)]
    pub relations: BTreeMap<String, RelationDef>,
    #[serde(default)]
    pub weights: BTreeMap<String, WeightDef>,
    #[serde(default)]
    pub params: Params,
    #[serde(rename = "relation-analyze")]
    pub relation_analyze: Option<RelationAnalyze>,
    #[serde(rename = "proj-build")]
    pub proj_build: Option<ProjBuild>,
    #[serde(rename = "proj-represent")]
    pub proj_represent: Option<ProjRepresent>,
    #[serde(rename = "lss-solve")]
    pub lss_solve: Option<LssSection>,
    #[serde(rename = "w1w2-solve")]
    pub w1w2_solve: Option<W1w2Section>,
    pub spline: Option<SplineSection>,
    pub smooth: Option<SplineSection>,
    pub shorted: Option<WeightedSection>,
    pub complementable: Option<WeightedSection>,
    #[serde(rename = "krein-classify")]
    pub krein_classify: Option<WeightedSection>,
}

fn default_field() -> String {
    "complex".into()
}

pub fn parse_str(text: &str) -> Result<ProblemFile, ProblemError> {
    let file: ProblemFile = serde_json::from_str(text)?;
    file.validate()?;
    Ok(file)
}

pub fn parse(path: &Path) -> Result<ProblemFile, ProblemError> {
    let text = std::fs::read_to_string(path).map_err(|source| ProblemError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_str(&text)
}

/// Converts a row list into a matrix, rejecting ragged rows.
pub fn matrix_from(name: &str, rows: &MatrixLit) -> Result<CMatrix, ProblemError> {
    let cols = rows.first().map_or(0, Vec::len);
    if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
        return Err(ProblemError::Dimension(format!(
            "matrix '{name}' row {bad} has {} entries, row 0 has {cols}",
            rows[bad].len()
        )));
    }
    Ok(CMatrix::from_fn(rows.len(), cols, |i, j| {
        rows[i][j].value()
    }))
}

pub fn vector_from(entries: &VectorLit) -> CVector {
    CVector::from_iterator(entries.len(), entries.iter().map(|s| s.value()))
}

fn check_finite(
    what: &str,
    values: impl IntoIterator<Item = Complex64>,
) -> Result<(), ProblemError> {
    if values
        .into_iter()
        .all(|z| z.re.is_finite() && z.im.is_finite())
    {
        Ok(())
    } else {
        Err(ProblemError::Invalid {
            what: what.into(),
            detail: "non-finite entry".into(),
        })
    }
}

impl ProblemFile {
    /// Checks the header and every named entry on its own; cross-entry
    /// dimensions are checked when a command section is resolved.
    pub fn validate(&self) -> Result<(), ProblemError> {
        if self.version != VERSION {
            return Err(ProblemError::Unsupported {
                what: "version",
                found: self.version.to_string(),
            });
        }
        if self.field != "complex" {
            return Err(ProblemError::Unsupported {
                what: "field",
                found: self.field.clone(),
            });
        }
        for (name, rows) in &self.matrices {
            let m = matrix_from(name, rows)?;
            check_finite(&format!("matrix '{name}'"), m.iter().copied())?;
        }
        for (name, v) in &self.vectors {
            check_finite(&format!("vector '{name}'"), vector_from(v).iter().copied())?;
        }
        let tol = Tolerance::default();
        for (name, s) in &self.subspaces {
            self.subspace_inner(name, s, &tol)?;
        }
        for (name, r) in &self.relations {
            self.relation_inner(name, r, &tol)?;
        }
        for (name, w) in &self.weights {
            self.weight_matrix(name, w)?;
        }
        if let Some(rho) = self.params.rho {
            positive("params.rho", rho)?;
        }
        if let Some(t) = self.params.tol {
            positive("params.tol", t)?;
        }
        Ok(())
    }

    pub fn matrix(
        &self,
        field: &str,
        r: &Ref<MatrixLit>,
    ) -> Result<(String, CMatrix), ProblemError> {
        match r {
            Ref::Name(name) => {
                let rows = self
                    .matrices
                    .get(name)
                    .ok_or_else(|| undefined("matrix", name))?;
                Ok((name.clone(), matrix_from(name, rows)?))
            }
            Ref::Inline(rows) => Ok((field.to_string(), matrix_from(field, rows)?)),
        }
    }

    pub fn vector(
        &self,
        field: &str,
        r: &Ref<VectorLit>,
    ) -> Result<(String, CVector), ProblemError> {
        match r {
            Ref::Name(name) => {
                let v = self
                    .vectors
                    .get(name)
                    .ok_or_else(|| undefined("vector", name))?;
                Ok((name.clone(), vector_from(v)))
            }
            Ref::Inline(v) => Ok((field.to_string(), vector_from(v))),
        }
    }

    pub fn subspace(
        &self,
        field: &str,
        r: &Ref<SubspaceDef>,
        tol: &Tolerance,
    ) -> Result<(String, Subspace), ProblemError> {
        match r {
            Ref::Name(name) => {
                let s = self
                    .subspaces
                    .get(name)
                    .ok_or_else(|| undefined("subspace", name))?;
                Ok((name.clone(), self.subspace_inner(name, s, tol)?))
            }
            Ref::Inline(s) => Ok((field.to_string(), self.subspace_inner(field, s, tol)?)),
        }
    }

    fn subspace_inner(
        &self,
        name: &str,
        s: &SubspaceDef,
        tol: &Tolerance,
    ) -> Result<Subspace, ProblemError> {
        let mut vectors = Vec::with_capacity(s.span.len());
        for (i, v) in s.span.iter().enumerate() {
            if v.len() != s.ambient {
                return Err(ProblemError::Dimension(format!(
                    "subspace '{name}' has ambient dimension {} but spanning vector {i} has length {}",
                    s.ambient,
                    v.len()
                )));
            }
            vectors.push(vector_from(v));
        }
        check_finite(
            &format!("subspace '{name}'"),
            vectors.iter().flat_map(|v| v.iter().copied()),
        )?;
        Ok(Subspace::span(s.ambient, &vectors, tol)?)
    }

    pub fn relation(
        &self,
        field: &str,
        r: &Ref<RelationDef>,
        tol: &Tolerance,
    ) -> Result<(String, LinearRelation), ProblemError> {
        match r {
            Ref::Name(name) => {
                let def = self
                    .relations
                    .get(name)
                    .ok_or_else(|| undefined("relation", name))?;
                Ok((name.clone(), self.relation_inner(name, def, tol)?))
            }
            Ref::Inline(def) => Ok((field.to_string(), self.relation_inner(field, def, tol)?)),
        }
    }

    fn relation_inner(
        &self,
        name: &str,
        def: &RelationDef,
        tol: &Tolerance,
    ) -> Result<LinearRelation, ProblemError> {
        match def {
            RelationDef::Matrix(m) => {
                let (_, a) = self.matrix(name, m)?;
                check_finite(&format!("relation '{name}'"), a.iter().copied())?;
                Ok(LinearRelation::graph_of_matrix(&a, tol))
            }
            RelationDef::Pairs {
                dim_in,
                dim_out,
                pairs,
            } => {
                let mut built = Vec::with_capacity(pairs.len());
                for (i, [x, y]) in pairs.iter().enumerate() {
                    if x.len() != *dim_in || y.len() != *dim_out {
                        return Err(ProblemError::Dimension(format!(
                            "relation '{name}' acts C^{dim_in} -> C^{dim_out} but pair {i} has lengths ({}, {})",
                            x.len(),
                            y.len()
                        )));
                    }
                    built.push((vector_from(x), vector_from(y)));
                }
                check_finite(
                    &format!("relation '{name}'"),
                    built
                        .iter()
                        .flat_map(|(x, y)| x.iter().chain(y.iter()).copied()),
                )?;
                Ok(LinearRelation::from_pairs(*dim_in, *dim_out, &built, tol)?)
            }
        }
    }

    pub fn weight(
        &self,
        field: &str,
        r: &Ref<WeightDef>,
        tol: &Tolerance,
    ) -> Result<(String, Weight), ProblemError> {
        let (name, def) = match r {
            Ref::Name(name) => (
                name.clone(),
                self.weights
                    .get(name)
                    .ok_or_else(|| undefined("weight", name))?,
            ),
            Ref::Inline(def) => (field.to_string(), def),
        };
        let m = self.weight_matrix(&name, def)?;
        Ok((name, Weight::new(m, def.kind, tol)?))
    }

    fn weight_matrix(&self, name: &str, def: &WeightDef) -> Result<CMatrix, ProblemError> {
        let (_, m) = self.matrix(name, &def.matrix)?;
        if m.nrows() != m.ncols() {
            return Err(ProblemError::Dimension(format!(
                "weight '{name}' must be square, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        check_finite(&format!("weight '{name}'"), m.iter().copied())?;
        Ok(m)
    }
}

fn undefined(kind: &'static str, name: &str) -> ProblemError {
    ProblemError::Undefined {
        kind,
        name: name.to_string(),
    }
}

pub(crate) fn positive(what: &str, value: f64) -> Result<(), ProblemError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(ProblemError::Invalid {
            what: what.into(),
            detail: format!("expected a positive number, got {value}"),
        })
    }
}

/// Fails unless the two named operands have equal dimensions.
pub(crate) fn same_dim(a: (&str, usize), b: (&str, usize)) -> Result<(), ProblemError> {
    if a.1 == b.1 {
        Ok(())
    } else {
        Err(ProblemError::Dimension(format!(
            "'{}' has dimension {} but '{}' has dimension {}",
            a.0, a.1, b.0, b.1
        )))
    }
}
