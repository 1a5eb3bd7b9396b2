//! Finite-dimensional unital algebras given by structure constants.

mod builders;
mod endos;
mod ideal;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use builders::{build_example, direct_product, ExampleKind};
pub use endos::{algebra_from_endos, MatrixEmbedding};
pub use ideal::{dickson_radical, quotient_algebra, IdealHandle, Sidedness};

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One failed axiom, with the basis indices that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `b_i (b_j b_k) != (b_i b_j) b_k`
    NonAssociative { i: usize, j: usize, k: usize },
    /// `1 * b_j != b_j`
    LeftUnit { j: usize },
    /// `b_j * 1 != b_j`
    RightUnit { j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonAssociative { i, j, k } => {
                write!(f, "b{i}(b{j}b{k}) != (b{i}b{j})b{k}")
            }
            Violation::LeftUnit { j } => write!(f, "1*b{j} != b{j}"),
            Violation::RightUnit { j } => write!(f, "b{j}*1 != b{j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// First violation in (i, j, k) order.
    pub fn witness(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let shown: Vec<String> = self.violations.iter().take(5).map(|v| v.to_string()).collect();
        write!(f, "{} violation(s): {}", self.violations.len(), shown.join("; "))?;
        if self.violations.len() > 5 {
            f.write_str("; ...")?;
        }
        Ok(())
    }
}

/// A finite-dimensional algebra with basis `b_0..b_{d-1}`:
/// `b_i b_j = sum_k c[i][j][k] b_k`.
#[derive(Clone)]
pub struct AlgebraData<F: Field> {
    field: F,
    dim: usize,
    // products[i * dim + j] = coordinates of b_i b_j
    products: Vec<Vec<F::Elem>>,
    unit: Vec<F::Elem>,
    labels: Vec<String>,
    left_ops: Vec<Matrix<F>>,
    generators: OnceLock<Vec<usize>>,
    opposite: OnceLock<Arc<AlgebraData<F>>>,
}

impl<F: Field> PartialEq for AlgebraData<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.products == other.products
            && self.unit == other.unit
    }
}

impl<F: Field> Eq for AlgebraData<F> {}

impl<F: Field> fmt::Debug for AlgebraData<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraData")
            .field("field", &self.field.desc())
            .field("dim", &self.dim)
            .field("labels", &self.labels)
            .finish()
    }
}

fn default_labels(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("b{i}")).collect()
}

impl<F: Field> AlgebraData<F> {
    /// Builds an algebra from sparse structure constants without checking
    /// associativity or the unit; see [`AlgebraData::validate`].
    pub fn from_structure(
        field: F,
        dim: usize,
        entries: &[(usize, usize, usize, F::Elem)],
        unit: Vec<F::Elem>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let mut products = vec![vec![field.zero(); dim]; dim * dim];
        let mut seen = std::collections::HashSet::new();
        for (i, j, k, v) in entries {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::BadParam(format!(
                    "structure index ({i},{j},{k}) out of range for dimension {dim}"
                )));
            }
            if !seen.insert((*i, *j, *k)) {
                return Err(Error::BadParam(format!("duplicate structure entry ({i},{j},{k})")));
            }
            products[i * dim + j][*k] = v.clone();
        }
        Self::from_products(field, dim, products, unit, labels)
    }

    /// `products[i * dim + j]` holds the coordinates of `b_i b_j`.
    pub fn from_products(
        field: F,
        dim: usize,
        products: Vec<Vec<F::Elem>>,
        unit: Vec<F::Elem>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadParam("algebra dimension must be at least 1".into()));
        }
        if products.len() != dim * dim || products.iter().any(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch("structure tensor shape".into()));
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "unit has {} coordinates, algebra has dimension {dim}",
                unit.len()
            )));
        }
        let labels = labels.unwrap_or_else(|| default_labels(dim));
        if labels.len() != dim {
            return Err(Error::DimensionMismatch("one label per basis element".into()));
        }
        let left_ops = (0..dim)
            .map(|i| {
                let cols: Vec<Vec<F::Elem>> =
                    (0..dim).map(|j| products[i * dim + j].clone()).collect();
                Matrix::from_columns(field, dim, &cols).expect("square")
            })
            .collect();
        Ok(AlgebraData { field, dim, products, unit, labels, left_ops, generators: OnceLock::new(), opposite: OnceLock::new() })
    }

    /// Like [`AlgebraData::from_structure`] but rejects algebras failing validation.
    pub fn new(
        field: F,
        dim: usize,
        entries: &[(usize, usize, usize, F::Elem)],
        unit: Vec<F::Elem>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let a = Self::from_structure(field, dim, entries, unit, labels)?;
        a.ensure_valid()?;
        Ok(a)
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidAlgebra(report.to_string()))
        }
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let f = self.field;
        (0..self.dim).map(|k| if k == i { f.one() } else { f.zero() }).collect()
    }

    pub fn zero_vector(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim]
    }

    /// Coordinates of `b_i b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[F::Elem] {
        &self.products[i * self.dim + j]
    }

    /// Nonzero structure constants `(i, j, k, c)` in lexicographic order.
    pub fn structure_entries(&self) -> Vec<(usize, usize, usize, F::Elem)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, v) in self.basis_product(i, j).iter().enumerate() {
                    if !self.field.is_zero(v) {
                        out.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        out
    }

    /// Left multiplication by `b_i`.
    pub fn left_op(&self, i: usize) -> &Matrix<F> {
        &self.left_ops[i]
    }

    pub fn left_ops(&self) -> &[Matrix<F>] {
        &self.left_ops
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field;
        let mut out = self.zero_vector();
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (o, p) in out.iter_mut().zip(self.basis_product(i, j)) {
                    *o = f.mul_add(o, &c, p);
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[F::Elem], mut e: u64) -> Vec<F::Elem> {
        let mut base = x.to_vec();
        let mut acc = self.unit.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Matrix of `y -> x y` (Left) or `y -> y x` (Right).
    pub fn mult_operator(&self, x: &[F::Elem], side: Side) -> Result<Matrix<F>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, algebra has dimension {}",
                x.len(),
                self.dim
            )));
        }
        let f = self.field;
        match side {
            Side::Left => {
                let mut acc = Matrix::zeros(f, self.dim, self.dim);
                for (i, xi) in x.iter().enumerate() {
                    acc.add_scaled(xi, &self.left_ops[i]);
                }
                Ok(acc)
            }
            Side::Right => {
                let cols: Vec<_> =
                    (0..self.dim).map(|j| self.mul(&self.basis_vector(j), x)).collect();
                Matrix::from_columns(f, self.dim, &cols)
            }
        }
    }

    /// Checks `L_{b_i} L_{b_j} = L_{b_i b_j}` and the two-sided unit.
    pub fn validate(&self) -> ValidationReport {
        let f = self.field;
        let d = self.dim;
        let mut violations = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let lhs = self.left_ops[i].mul(&self.left_ops[j]).expect("square");
                let rhs = self
                    .mult_operator(self.basis_product(i, j), Side::Left)
                    .expect("length d");
                if lhs != rhs {
                    for k in 0..d {
                        if lhs.column(k) != rhs.column(k) {
                            violations.push(Violation::NonAssociative { i, j, k });
                        }
                    }
                }
            }
        }
        for j in 0..d {
            let bj = self.basis_vector(j);
            if self.mul(&self.unit, &bj) != bj {
                violations.push(Violation::LeftUnit { j });
            }
            if self.mul(&bj, &self.unit) != bj {
                violations.push(Violation::RightUnit { j });
            }
        }
        let _ = f;
        ValidationReport { violations }
    }

    /// Opposite algebra: `c'[i][j][k] = c[j][i][k]`, same unit.
    pub fn opposite(&self) -> Self {
        let d = self.dim;
        let products = (0..d * d)
            .map(|ij| {
                let (i, j) = (ij / d, ij % d);
                self.basis_product(j, i).to_vec()
            })
            .collect();
        Self::from_products(self.field, d, products, self.unit.clone(), Some(self.labels.clone()))
            .expect("same shape")
    }

    /// Shared opposite algebra, built once.
    pub fn opposite_shared(&self) -> Arc<Self> {
        self.opposite.get_or_init(|| Arc::new(self.opposite())).clone()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Indices of basis elements that, with the unit, generate the algebra.
    /// Chosen greedily in basis order; cached.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let mut gens: Vec<usize> = Vec::new();
            let mut span = self.subalgebra_closure(&gens);
            for i in 0..self.dim {
                if span.contains(&self.basis_vector(i)) {
                    continue;
                }
                gens.push(i);
                span = self.subalgebra_closure(&gens);
                if span.rank() == self.dim {
                    break;
                }
            }
            gens
        })
    }

    fn subalgebra_closure(&self, gens: &[usize]) -> Echelon<F> {
        let mut ech = Echelon::new(self.field, self.dim);
        let mut queue = vec![self.unit.clone()];
        ech.insert(self.unit.clone());
        while let Some(v) = queue.pop() {
            for &g in gens {
                let w = self.left_ops[g].apply(&v);
                if ech.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        ech
    }

    pub fn shared(self) -> Arc<Self> {
        Arc::new(self)
    }
}

/// Same algebra, by pointer or by value.
pub fn same_algebra<F: Field>(a: &Arc<AlgebraData<F>>, b: &Arc<AlgebraData<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn field_itself_is_valid() {
        let f = f5();
        let a = AlgebraData::from_structure(f, 1, &[(0, 0, 0, 1)], vec![1], None).unwrap();
        assert!(a.validate().is_valid());
    }

    #[test]
    fn planted_associativity_failure() {
        // dim 2, b0 = 1 except b0 b1 = 0 and b1 b1 = b0:
        // b0 (b1 b1) = b0 b0 = b0 but (b0 b1) b1 = 0.
        let f = f5();
        let entries = [(0, 0, 0, 1), (1, 0, 1, 1), (1, 1, 0, 1)];
        let a = AlgebraData::from_structure(f, 2, &entries, vec![1, 0], None).unwrap();
        let report = a.validate();
        assert!(!report.is_valid());
        assert_eq!(report.witness(), Some(&Violation::NonAssociative { i: 0, j: 1, k: 1 }));
    }

    #[test]
    fn bad_indices_rejected() {
        let f = f5();
        assert!(AlgebraData::from_structure(f, 1, &[(0, 1, 0, 1)], vec![1], None).is_err());
        assert!(AlgebraData::from_structure(f, 1, &[(0, 0, 0, 1), (0, 0, 0, 2)], vec![1], None).is_err());
        assert!(AlgebraData::from_structure(f, 1, &[], vec![1, 0], None).is_err());
    }

    #[test]
    fn unit_operator_is_identity() {
        let a = build_example(&ExampleKind::UpperTriangular(2), f5()).unwrap();
        for side in [Side::Left, Side::Right] {
            assert!(a.mult_operator(a.unit(), side).unwrap().is_identity());
            assert!(a.mult_operator(&a.zero_vector(), side).unwrap().is_zero());
        }
        assert!(matches!(a.mult_operator(&[1], Side::Left), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn upper_triangular_left_e11() {
        // e11 * {e11, e12, e22} = {e11, e12, 0}
        let a = build_example(&ExampleKind::UpperTriangular(2), f5()).unwrap();
        let l = a.mult_operator(&a.basis_vector(0), Side::Left).unwrap();
        assert_eq!(l, Matrix::from_i64(f5(), &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]));
        assert_eq!(l.rank(), 2);
    }

    #[test]
    fn opposite_examples() {
        let f = f5();
        let t = build_example(&ExampleKind::TruncatedPoly(3), f).unwrap();
        assert_eq!(t.opposite(), t);
        let ut = build_example(&ExampleKind::UpperTriangular(2), f).unwrap();
        let op = ut.opposite();
        assert_eq!(op.opposite(), ut);
        assert!(op.validate().is_valid());
        // e12 (index 1) * e11 (index 0): 0 in A, e12 in A^op
        assert_eq!(ut.basis_product(1, 0), &[0, 0, 0]);
        assert_eq!(op.basis_product(1, 0), &[0, 1, 0]);
    }

    #[test]
    fn generators_generate() {
        let a = build_example(&ExampleKind::UpperTriangular(4), f5()).unwrap();
        let gens = a.generators().to_vec();
        assert!(gens.len() < a.dim());
        assert_eq!(a.subalgebra_closure(&gens).rank(), a.dim());
    }
}
