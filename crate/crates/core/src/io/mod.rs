//! JSON file formats for algebras, modules and certificates, and report
//! builders. Scalars are strings: `"3"` over F_p, `"-7/2"` over Q.

pub mod report;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraData;
use crate::arith::{Field, FieldDesc, Poly, PrimeField, Rationals};
use crate::decomp::Certificate;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::module::{EndoMatrix, ModuleRep, ProjectiveSection, ProjectivityRefutation};

/// Algebra definition file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: FieldDesc,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub unit: Vec<String>,
    /// `[i, j, k, c]`: coefficient `c` of `b_k` in `b_i b_j`
    pub structure: Vec<(usize, usize, usize, String)>,
}

/// Module file; the algebra is inline or a path to an algebra file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub algebra: AlgebraRef,
    pub dim: usize,
    /// one row-major matrix per basis element
    pub action: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Inline(AlgebraFile),
    Path(String),
}

/// Module action without the algebra, as embedded in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleData {
    pub dim: usize,
    pub action: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixData {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

/// A subspace by its reduced echelon basis rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceData {
    pub ambient: usize,
    pub basis: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum CertificateData {
    SimpleByNorton { element: Vec<String>, factor: Vec<String>, kernel: SubspaceData, dual_vector: Vec<String> },
    SimpleByExhaustiveSpin { points: u64 },
    IndecomposableByLocalEnd { radical: Vec<MatrixData> },
    IndecomposableBySimpleTop { ideal: SubspaceData, top: Box<CertificateData> },
    ProjectiveBySection { generators: Vec<Vec<String>>, section: MatrixData },
    NotProjectiveWitness { generators: Vec<Vec<String>>, hom_dim: usize, witness: Vec<String> },
    NotSimpleWitness { subspace: SubspaceData },
    DecomposableWitness { idempotent: MatrixData },
}

/// An algebra over whichever field its file names.
#[derive(Debug, Clone)]
pub enum AnyAlgebra {
    Fp(Arc<AlgebraData<PrimeField>>),
    Q(Arc<AlgebraData<Rationals>>),
}

impl AnyAlgebra {
    pub fn desc(&self) -> FieldDesc {
        match self {
            AnyAlgebra::Fp(a) => a.field().desc(),
            AnyAlgebra::Q(a) => a.field().desc(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyAlgebra::Fp(a) => a.dim(),
            AnyAlgebra::Q(a) => a.dim(),
        }
    }

    pub fn to_file(&self) -> AlgebraFile {
        match self {
            AnyAlgebra::Fp(a) => algebra_to_file(a),
            AnyAlgebra::Q(a) => algebra_to_file(a),
        }
    }
}

pub fn vector_to_strings<F: Field>(f: F, v: &[F::Elem]) -> Vec<String> {
    v.iter().map(|x| f.format(x)).collect()
}

pub fn vector_from_strings<F: Field>(f: F, v: &[String], len: usize) -> Result<Vec<F::Elem>> {
    if v.len() != len {
        return Err(Error::Parse(format!("expected {len} scalars, found {}", v.len())));
    }
    v.iter().map(|s| f.parse(s)).collect()
}

pub fn matrix_rows<F: Field>(m: &Matrix<F>) -> Vec<Vec<String>> {
    let f = m.field();
    (0..m.rows()).map(|r| vector_to_strings(f, m.row(r))).collect()
}

fn matrix_from_rows<F: Field>(f: F, rows: usize, cols: usize, entries: &[Vec<String>]) -> Result<Matrix<F>> {
    if entries.len() != rows {
        return Err(Error::Parse(format!("expected {rows} matrix rows, found {}", entries.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for r in entries {
        data.extend(vector_from_strings(f, r, cols)?);
    }
    Matrix::from_vec(f, rows, cols, data)
}

pub fn matrix_to_data<F: Field>(m: &Matrix<F>) -> MatrixData {
    MatrixData { rows: m.rows(), cols: m.cols(), entries: matrix_rows(m) }
}

pub fn matrix_from_data<F: Field>(f: F, d: &MatrixData) -> Result<Matrix<F>> {
    matrix_from_rows(f, d.rows, d.cols, &d.entries)
}

pub fn subspace_to_data<F: Field>(s: &Subspace<F>) -> SubspaceData {
    SubspaceData { ambient: s.ambient_dim(), basis: matrix_rows(s.basis()) }
}

pub fn subspace_from_data<F: Field>(f: F, d: &SubspaceData) -> Result<Subspace<F>> {
    let vs = d.basis.iter().map(|v| vector_from_strings(f, v, d.ambient)).collect::<Result<Vec<_>>>()?;
    Subspace::from_vectors(f, d.ambient, &vs)
}

pub fn algebra_to_file<F: Field>(a: &AlgebraData<F>) -> AlgebraFile {
    let f = a.field();
    AlgebraFile {
        field: f.desc(),
        dim: a.dim(),
        labels: Some(a.labels().to_vec()),
        unit: vector_to_strings(f, a.unit()),
        structure: a.structure_entries().into_iter().map(|(i, j, k, v)| (i, j, k, f.format(&v))).collect(),
    }
}

/// Builds and validates the algebra described by `file` over `f`.
pub fn algebra_from_file_in<F: Field>(f: F, file: &AlgebraFile) -> Result<AlgebraData<F>> {
    let unit = vector_from_strings(f, &file.unit, file.dim)?;
    let entries = file
        .structure
        .iter()
        .map(|(i, j, k, v)| Ok((*i, *j, *k, f.parse(v)?)))
        .collect::<Result<Vec<_>>>()?;
    AlgebraData::new(f, file.dim, &entries, unit, file.labels.clone())
}

pub fn algebra_from_file(file: &AlgebraFile) -> Result<AnyAlgebra> {
    Ok(match file.field {
        FieldDesc::Prime { p } => AnyAlgebra::Fp(algebra_from_file_in(PrimeField::new(p as u64)?, file)?.shared()),
        FieldDesc::Rationals => AnyAlgebra::Q(algebra_from_file_in(Rationals, file)?.shared()),
    })
}

pub fn parse_algebra(json: &str) -> Result<AnyAlgebra> {
    let file: AlgebraFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    algebra_from_file(&file)
}

pub fn algebra_json<F: Field>(a: &AlgebraData<F>) -> String {
    serde_json::to_string_pretty(&algebra_to_file(a)).expect("serializable")
}

pub fn module_to_data<F: Field>(m: &ModuleRep<F>) -> ModuleData {
    ModuleData { dim: m.dim(), action: m.actions().iter().map(matrix_rows).collect() }
}

pub fn module_from_data<F: Field>(a: &Arc<AlgebraData<F>>, d: &ModuleData) -> Result<ModuleRep<F>> {
    if d.action.len() != a.dim() {
        return Err(Error::Parse(format!("{} action matrices for an algebra of dimension {}", d.action.len(), a.dim())));
    }
    let action = d
        .action
        .iter()
        .map(|rows| matrix_from_rows(a.field(), d.dim, d.dim, rows))
        .collect::<Result<Vec<_>>>()?;
    ModuleRep::new(a.clone(), d.dim, action)
}

pub fn module_to_file<F: Field>(m: &ModuleRep<F>) -> ModuleFile {
    let d = module_to_data(m);
    ModuleFile { algebra: AlgebraRef::Inline(algebra_to_file(m.algebra())), dim: d.dim, action: d.action }
}

pub fn certificate_to_data<F: Field>(f: F, c: &Certificate<F>) -> CertificateData {
    match c {
        Certificate::SimpleByNorton { element, factor, kernel, dual_vector } => CertificateData::SimpleByNorton {
            element: vector_to_strings(f, element),
            factor: vector_to_strings(f, factor.coeffs()),
            kernel: subspace_to_data(kernel),
            dual_vector: vector_to_strings(f, dual_vector),
        },
        Certificate::SimpleByExhaustiveSpin { points } => CertificateData::SimpleByExhaustiveSpin { points: *points },
        Certificate::IndecomposableByLocalEnd { radical } => {
            CertificateData::IndecomposableByLocalEnd { radical: radical.iter().map(matrix_to_data).collect() }
        }
        Certificate::IndecomposableBySimpleTop { ideal, top } => CertificateData::IndecomposableBySimpleTop {
            ideal: subspace_to_data(ideal),
            top: Box::new(certificate_to_data(f, top)),
        },
        Certificate::ProjectiveBySection(s) => CertificateData::ProjectiveBySection {
            generators: s.generators.iter().map(|g| vector_to_strings(f, g)).collect(),
            section: matrix_to_data(&s.section),
        },
        Certificate::NotProjectiveWitness(r) => CertificateData::NotProjectiveWitness {
            generators: r.generators.iter().map(|g| vector_to_strings(f, g)).collect(),
            hom_dim: r.hom_dim,
            witness: vector_to_strings(f, &r.witness),
        },
        Certificate::NotSimpleWitness(s) => CertificateData::NotSimpleWitness { subspace: subspace_to_data(s) },
        Certificate::DecomposableWitness(e) => CertificateData::DecomposableWitness { idempotent: matrix_to_data(e.matrix()) },
    }
}

/// Rebuilds a certificate for `m`; structural checks happen in
/// [`Certificate::verify`].
pub fn certificate_from_data<F: Field>(m: &ModuleRep<F>, d: &CertificateData) -> Result<Certificate<F>> {
    let f = m.field();
    let n = m.dim();
    let vec_any = |v: &[String]| v.iter().map(|s| f.parse(s)).collect::<Result<Vec<_>>>();
    Ok(match d {
        CertificateData::SimpleByNorton { element, factor, kernel, dual_vector } => Certificate::SimpleByNorton {
            element: vector_from_strings(f, element, m.algebra().dim())?,
            factor: Poly::new(f, vec_any(factor)?),
            kernel: subspace_from_data(f, kernel)?,
            dual_vector: vector_from_strings(f, dual_vector, n)?,
        },
        CertificateData::SimpleByExhaustiveSpin { points } => Certificate::SimpleByExhaustiveSpin { points: *points },
        CertificateData::IndecomposableByLocalEnd { radical } => Certificate::IndecomposableByLocalEnd {
            radical: radical.iter().map(|r| matrix_from_data(f, r)).collect::<Result<_>>()?,
        },
        CertificateData::IndecomposableBySimpleTop { ideal, top } => {
            let ideal = subspace_from_data(f, ideal)?;
            if ideal.ambient_dim() != m.algebra().dim() {
                return Err(Error::Parse("ideal does not live in the algebra".into()));
            }
            let i = crate::algebra::IdealHandle::new(m.algebra().clone(), ideal.clone(), crate::algebra::Sidedness::TwoSided)?;
            let im = crate::module::ideal_action(&i, m)?;
            let (q, _) = crate::module::quotient_module(m, &im)?;
            Certificate::IndecomposableBySimpleTop { ideal, top: Box::new(certificate_from_data(&q, top)?) }
        }
        CertificateData::ProjectiveBySection { generators, section } => {
            Certificate::ProjectiveBySection(ProjectiveSection {
                generators: generators.iter().map(|g| vector_from_strings(f, g, n)).collect::<Result<_>>()?,
                section: matrix_from_data(f, section)?,
            })
        }
        CertificateData::NotProjectiveWitness { generators, hom_dim, witness } => {
            Certificate::NotProjectiveWitness(ProjectivityRefutation {
                generators: generators.iter().map(|g| vector_from_strings(f, g, n)).collect::<Result<_>>()?,
                hom_dim: *hom_dim,
                witness: vec_any(witness)?,
            })
        }
        CertificateData::NotSimpleWitness { subspace } => Certificate::NotSimpleWitness(subspace_from_data(f, subspace)?),
        CertificateData::DecomposableWitness { idempotent } => {
            Certificate::DecomposableWitness(EndoMatrix::new(m, matrix_from_data(f, idempotent)?)?)
        }
    })
}
