use super::matrix::Matrix;
use crate::arith::Field;
use crate::error::{Error, Result};

/// A subspace of F^n stored by its reduced row-echelon basis. The
/// representation is canonical, so equality is basis equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace<F: Field> {
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace { basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        Subspace { basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the rows of `m`.
    pub fn from_matrix(m: &Matrix<F>) -> Self {
        let (r, pivots) = m.rref();
        let basis = r.submatrix_rows(&(0..pivots.len()).collect::<Vec<_>>());
        Subspace { basis, pivots }
    }

    pub fn from_vectors(field: F, ambient: usize, vectors: &[Vec<F::Elem>]) -> Result<Self> {
        Ok(Subspace::from_matrix(&Matrix::from_rows(field, ambient, vectors)?))
    }

    pub fn field(&self) -> F {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    /// Basis vectors as rows of an RREF matrix.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<F::Elem>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; they index a complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_p = vec![false; self.ambient_dim()];
        for &p in &self.pivots {
            is_p[p] = true;
        }
        (0..self.ambient_dim()).filter(|&c| !is_p[c]).collect()
    }

    /// Remainder of `v` modulo the subspace (zero at every pivot column).
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.ambient_dim(), "vector length mismatch");
        let f = self.field();
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = out[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            let nc = f.neg(&c);
            for (o, b) in out.iter_mut().zip(self.basis.row(i)) {
                *o = f.mul_add(o, &nc, b);
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let f = self.field();
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Vector with the given coordinates in the RREF basis.
    pub fn vector_from_coords(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut v = vec![f.zero(); self.ambient_dim()];
        for (i, c) in coords.iter().enumerate() {
            for (o, b) in v.iter_mut().zip(self.basis.row(i)) {
                *o = f.mul_add(o, c, b);
            }
        }
        v
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::AmbientMismatch(self.ambient_dim(), other.ambient_dim()));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field().desc(), other.field().desc()));
        }
        Ok(())
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Subspace::from_matrix(&self.basis.vstack(&other.basis)?))
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let f = self.field();
        let n = self.ambient_dim();
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(f, n));
        }
        // columns: basis of self, then negated basis of other
        let (a, b) = (self.dim(), other.dim());
        let mut m = Matrix::zeros(f, n, a + b);
        for i in 0..a {
            for j in 0..n {
                m.set(j, i, self.basis.get(i, j).clone());
            }
        }
        for i in 0..b {
            for j in 0..n {
                m.set(j, a + i, f.neg(other.basis.get(i, j)));
            }
        }
        let ker = m.kernel();
        let vectors: Vec<Vec<F::Elem>> = ker
            .basis_vectors()
            .iter()
            .map(|k| self.vector_from_coords(&k[..a]))
            .collect();
        Subspace::from_vectors(f, n, &vectors)
    }

    /// `(self ∩ other, self + other)`
    pub fn meet_join(&self, other: &Self) -> Result<(Self, Self)> {
        Ok((self.meet(other)?, self.join(other)?))
    }

    /// Image of the subspace under a linear map (matrix acting on columns).
    pub fn image(&self, map: &Matrix<F>) -> Result<Self> {
        if map.cols() != self.ambient_dim() {
            return Err(Error::DimensionMismatch("map does not act on this space".into()));
        }
        let vectors: Vec<_> = (0..self.dim()).map(|i| map.apply(self.basis.row(i))).collect();
        Subspace::from_vectors(self.field(), map.rows(), &vectors)
    }

    /// Vectors annihilating the subspace under the standard pairing.
    pub fn annihilator(&self) -> Self {
        self.basis.kernel()
    }
}

/// Incremental semi-echelon basis: each stored row has a leading one at its
/// pivot and is zero at the pivots of all earlier rows.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    width: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, width: usize) -> Self {
        Echelon { field, width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn reduce(&self, v: &mut [F::Elem]) {
        let f = self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            let nc = f.neg(&c);
            for (o, b) in v[p..].iter_mut().zip(&row[p..]) {
                *o = f.mul_add(o, &nc, b);
            }
        }
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v` if it is independent of the stored rows; returns whether it was.
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> bool {
        assert_eq!(v.len(), self.width, "vector length mismatch");
        self.reduce(&mut v);
        let f = self.field;
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("nonzero");
        for x in v[p..].iter_mut() {
            *x = f.mul(x, &inv);
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn into_subspace(self) -> Subspace<F> {
        Subspace::from_vectors(self.field, self.width, &self.rows).expect("consistent lengths")
    }

    /// Basis of `{x : r . x = 0 for every stored row r}`.
    pub fn null_space(&self) -> Subspace<F> {
        let m = Matrix::from_rows(self.field, self.width, &self.rows).expect("consistent lengths");
        m.kernel()
    }
}
