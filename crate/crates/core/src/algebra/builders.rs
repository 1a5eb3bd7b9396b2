use std::fmt;
use std::str::FromStr;

use super::AlgebraData;
use crate::arith::Field;
use crate::error::{Error, Result};

/// Standard test algebras.
///
/// Basis orders:
/// - `UpperTriangular(n)`: matrix units `e_ij`, `i <= j`, row-major.
/// - `FullMatrix(n)`: all `e_ij`, row-major.
/// - `CyclicGroup(n)`: `g^0, ..., g^(n-1)`.
/// - `TruncatedPoly(n)`: `1, t, ..., t^(n-1)` in `K[t]/(t^n)`.
/// - `DirectProduct(a, b)`: basis of `a` then basis of `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExampleKind {
    UpperTriangular(usize),
    FullMatrix(usize),
    CyclicGroup(usize),
    TruncatedPoly(usize),
    DirectProduct(Box<ExampleKind>, Box<ExampleKind>),
}

impl ExampleKind {
    pub fn dim(&self) -> usize {
        match self {
            ExampleKind::UpperTriangular(n) => n * (n + 1) / 2,
            ExampleKind::FullMatrix(n) => n * n,
            ExampleKind::CyclicGroup(n) | ExampleKind::TruncatedPoly(n) => *n,
            ExampleKind::DirectProduct(a, b) => a.dim() + b.dim(),
        }
    }
}

impl fmt::Display for ExampleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExampleKind::UpperTriangular(n) => write!(f, "upper-triangular:{n}"),
            ExampleKind::FullMatrix(n) => write!(f, "full-matrix:{n}"),
            ExampleKind::CyclicGroup(n) => write!(f, "cyclic-group:{n}"),
            ExampleKind::TruncatedPoly(n) => write!(f, "truncated-poly:{n}"),
            ExampleKind::DirectProduct(a, b) => {
                let wrap = |k: &ExampleKind| match k {
                    ExampleKind::DirectProduct(..) => format!("({k})"),
                    _ => k.to_string(),
                };
                write!(f, "{}*{}", wrap(a), wrap(b))
            }
        }
    }
}

/// Parses `upper-triangular:2`, `ut:2`, `cyclic-group:3*truncated-poly:2`, ...
/// `*` builds direct products, left-associative; parentheses group.
impl FromStr for ExampleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut depth = 0i32;
        let mut split = None;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '*' if depth == 0 => split = Some(i),
                _ => {}
            }
        }
        if let Some(i) = split {
            let a: ExampleKind = s[..i].parse()?;
            let b: ExampleKind = s[i + 1..].parse()?;
            return Ok(ExampleKind::DirectProduct(Box::new(a), Box::new(b)));
        }
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            return inner.parse();
        }
        let (name, n) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected kind:n, got {s:?}")))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad size in {s:?}")))?;
        match name.trim() {
            "upper-triangular" | "ut" => Ok(ExampleKind::UpperTriangular(n)),
            "full-matrix" | "mat" => Ok(ExampleKind::FullMatrix(n)),
            "cyclic-group" | "cyc" => Ok(ExampleKind::CyclicGroup(n)),
            "truncated-poly" | "trunc" => Ok(ExampleKind::TruncatedPoly(n)),
            other => Err(Error::Parse(format!("unknown example kind {other:?}"))),
        }
    }
}

pub fn build_example<F: Field>(kind: &ExampleKind, field: F) -> Result<AlgebraData<F>> {
    match kind {
        ExampleKind::UpperTriangular(n) => {
            check_n(*n)?;
            let cells: Vec<(usize, usize)> =
                (0..*n).flat_map(|i| (i..*n).map(move |j| (i, j))).collect();
            matrix_units(field, *n, &cells)
        }
        ExampleKind::FullMatrix(n) => {
            check_n(*n)?;
            let cells: Vec<(usize, usize)> =
                (0..*n).flat_map(|i| (0..*n).map(move |j| (i, j))).collect();
            matrix_units(field, *n, &cells)
        }
        ExampleKind::CyclicGroup(n) => {
            let n = *n;
            check_n(n)?;
            let entries: Vec<_> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j, (i + j) % n)))
                .map(|(i, j, k)| (i, j, k, field.one()))
                .collect();
            let labels = (0..n).map(|i| format!("g^{i}")).collect();
            AlgebraData::from_structure(field, n, &entries, unit_at(field, n, &[0]), Some(labels))
        }
        ExampleKind::TruncatedPoly(n) => {
            let n = *n;
            check_n(n)?;
            let entries: Vec<_> = (0..n)
                .flat_map(|i| (0..n - i).map(move |j| (i, j, i + j)))
                .map(|(i, j, k)| (i, j, k, field.one()))
                .collect();
            let labels = (0..n)
                .map(|i| match i {
                    0 => "1".to_string(),
                    1 => "t".to_string(),
                    _ => format!("t^{i}"),
                })
                .collect();
            AlgebraData::from_structure(field, n, &entries, unit_at(field, n, &[0]), Some(labels))
        }
        ExampleKind::DirectProduct(a, b) => {
            let a = build_example(a, field)?;
            let b = build_example(b, field)?;
            Ok(direct_product(&a, &b))
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::BadParam("size parameter must be at least 1".into()));
    }
    Ok(())
}

fn unit_at<F: Field>(field: F, dim: usize, ones: &[usize]) -> Vec<F::Elem> {
    let mut u = vec![field.zero(); dim];
    for &i in ones {
        u[i] = field.one();
    }
    u
}

/// Span of the matrix units in `cells`, which must be closed under products.
fn matrix_units<F: Field>(field: F, n: usize, cells: &[(usize, usize)]) -> Result<AlgebraData<F>> {
    let index = |r: usize, c: usize| cells.iter().position(|&x| x == (r, c));
    let mut entries = Vec::new();
    for (a, &(i, j)) in cells.iter().enumerate() {
        for (b, &(k, l)) in cells.iter().enumerate() {
            if j == k {
                let c = index(i, l).expect("closed under products");
                entries.push((a, b, c, field.one()));
            }
        }
    }
    let diag: Vec<usize> = (0..n).map(|i| index(i, i).expect("diagonal present")).collect();
    let labels = cells.iter().map(|&(i, j)| format!("e{}{}", i + 1, j + 1)).collect();
    AlgebraData::from_structure(field, cells.len(), &entries, unit_at(field, cells.len(), &diag), Some(labels))
}

/// `A x B` with componentwise multiplication and unit `(1, 1)`.
pub fn direct_product<F: Field>(a: &AlgebraData<F>, b: &AlgebraData<F>) -> AlgebraData<F> {
    let field = a.field();
    let (da, db) = (a.dim(), b.dim());
    let mut entries = Vec::new();
    for (i, j, k, v) in a.structure_entries() {
        entries.push((i, j, k, v));
    }
    for (i, j, k, v) in b.structure_entries() {
        entries.push((da + i, da + j, da + k, v));
    }
    let mut unit = a.unit().to_vec();
    unit.extend_from_slice(b.unit());
    let labels = a
        .labels()
        .iter()
        .map(|l| format!("a:{l}"))
        .chain(b.labels().iter().map(|l| format!("b:{l}")))
        .collect();
    AlgebraData::from_structure(field, da + db, &entries, unit, Some(labels)).expect("well-formed")
}
