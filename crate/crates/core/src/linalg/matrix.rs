use std::fmt;

use super::subspace::Subspace;
use crate::arith::{Field, Poly};
use crate::error::{Error, Result};

/// Dense row-major matrix over a field. Vectors are acted on as columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.desc())?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_vec(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    /// Builds a matrix from rows; `cols` is needed when `rows` is empty.
    pub fn from_rows(field: F, cols: usize, rows: &[Vec<F::Elem>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix { field, rows: rows.len(), cols, data })
    }

    pub fn from_i64(field: F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<F::Elem>> =
            rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Matrix::from_rows(field, cols, &rows).expect("rectangular input")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: F, rows: usize, cols: &[Vec<F::Elem>]) -> Result<Self> {
        Ok(Matrix::from_rows(field, rows, cols)?.transpose())
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn into_data(self) -> Vec<F::Elem> {
        self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.field, self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                out.push(self.get(r, c).clone());
            }
        }
        Matrix { field: self.field, rows: self.cols, cols: self.rows, data: out }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Ok(Matrix { field: f, rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Ok(Matrix { field: f, rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    /// `self += c * other` in place.
    pub fn add_scaled(&mut self, c: &F::Elem, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        if f.is_zero(c) {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a = f.mul_add(a, c, b);
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let (n, m) = (self.rows, other.cols);
        let mut out = vec![f.zero(); n * m];
        for i in 0..n {
            let orow = &mut out[i * m..(i + 1) * m];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if f.is_zero(a) {
                    continue;
                }
                let brow = other.row(k);
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o = f.mul_add(o, a, b);
                }
            }
        }
        Ok(Matrix { field: f, rows: n, cols: m, data: out })
    }

    /// Matrix-vector product (vector as a column).
    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.mul_add(&acc, a, b))
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Evaluates `p` at this (square) matrix by Horner's rule.
    pub fn eval_poly(&self, p: &Poly<F>) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let f = self.field;
        let n = self.rows;
        let mut acc = Matrix::zeros(f, n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self)?;
            for i in 0..n {
                let d = f.add(acc.get(i, i), c);
                acc.set(i, i, d);
            }
        }
        Ok(acc)
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Self) -> Self {
        let f = self.field;
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        let mut m = Matrix::zeros(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn submatrix_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend(self.row(r).iter().cloned());
        }
        Matrix { field: self.field, rows: rows.len(), cols: self.cols, data }
    }

    pub fn submatrix_cols(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            for &c in cols {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { field: self.field, rows: self.rows, cols: cols.len(), data }
    }

    /// Reduced row-echelon form and the (strictly increasing) pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("nonzero pivot");
            for j in c..cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            let (head, tail) = self.data.split_at_mut(r * cols);
            let (prow, rest) = tail.split_at_mut(cols);
            for other in head.chunks_mut(cols).chain(rest.chunks_mut(cols)) {
                let factor = other[c].clone();
                if f.is_zero(&factor) {
                    continue;
                }
                let nf = f.neg(&factor);
                for j in c..cols {
                    other[j] = f.mul_add(&other[j], &nf, &prow[j]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// `{v : self * v = 0}` as a subspace of F^cols.
    pub fn kernel(&self) -> Subspace<F> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![None; n];
        for (i, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(i);
        }
        let mut basis = Vec::new();
        for free in (0..n).filter(|&c| is_pivot[c].is_none()) {
            let mut v = vec![f.zero(); n];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        Subspace::from_vectors(f, n, &basis).expect("consistent lengths")
    }

    /// The span of the columns.
    pub fn column_space(&self) -> Subspace<F> {
        Subspace::from_matrix(&self.transpose())
    }

    pub fn row_space(&self) -> Subspace<F> {
        Subspace::from_matrix(self)
    }

    /// Particular solution of `self * x = rhs` with free variables set to zero.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "system has {} rows but right-hand side has {}",
                self.rows, rhs.rows
            )));
        }
        let f = self.field;
        let n = self.cols;
        let k = rhs.cols;
        let mut aug = Matrix::zeros(f, self.rows, n + k);
        for i in 0..self.rows {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..k {
                aug.set(i, n + j, rhs.get(i, j).clone());
            }
        }
        let pivots = aug.rref_in_place();
        if pivots.iter().any(|&p| p >= n) {
            return Err(Error::NoSolution);
        }
        let mut x = Matrix::zeros(f, n, k);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..k {
                x.set(p, j, aug.get(i, n + j).clone());
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        if self.rank() < self.rows {
            return Err(Error::DivisionByZero);
        }
        self.solve(&Matrix::identity(self.field, self.rows))
    }

    pub fn determinant(&self) -> Result<F::Elem> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let f = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Ok(f.zero());
            };
            if pr != c {
                for j in 0..n {
                    m.data.swap(pr * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv)?;
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                let nf = f.neg(&factor);
                for j in c..n {
                    let v = f.mul_add(m.get(i, j), &nf, m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Entries flattened row-major, as a vector.
    pub fn flatten(&self) -> Vec<F::Elem> {
        self.data.clone()
    }

    pub fn trace(&self) -> F::Elem {
        let f = self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }
}

/// Linear combination `sum c_i * m_i` of equally shaped matrices.
pub fn combine<F: Field>(field: F, rows: usize, cols: usize, coeffs: &[F::Elem], mats: &[Matrix<F>]) -> Matrix<F> {
    let mut acc = Matrix::zeros(field, rows, cols);
    for (c, m) in coeffs.iter().zip(mats) {
        acc.add_scaled(c, m);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rationals};

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = f5();
        let id = Matrix::identity(f, 3);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2]));
        let z = Matrix::zeros(f, 2, 4);
        assert_eq!(z.rref(), (z.clone(), vec![]));
        let m = Matrix::from_i64(f, &[&[2, 4], &[1, 2]]);
        assert_eq!(m.rref(), (Matrix::from_i64(f, &[&[1, 2], &[0, 0]]), vec![0]));
    }

    #[test]
    fn kernel_examples() {
        let f = f5();
        assert_eq!(Matrix::identity(f, 4).kernel().dim(), 0);
        assert_eq!(Matrix::zeros(f, 2, 3).kernel().dim(), 3);
        let f3 = PrimeField::new(3).unwrap();
        let k = Matrix::from_i64(f3, &[&[1, 1, 1]]).kernel();
        assert_eq!(k.dim(), 2);
        for v in k.basis_vectors() {
            assert!(Matrix::from_i64(f3, &[&[1, 1, 1]]).apply(&v).iter().all(|x| *x == 0));
        }
    }

    #[test]
    fn solve_examples() {
        let f = f5();
        let rhs = Matrix::from_i64(f, &[&[1, 2], &[3, 4]]);
        assert_eq!(Matrix::identity(f, 2).solve(&rhs).unwrap(), rhs);
        assert_eq!(Matrix::zeros(f, 2, 2).solve(&rhs), Err(Error::NoSolution));
        let x = Matrix::from_i64(f, &[&[2]]).solve(&Matrix::from_i64(f, &[&[1]])).unwrap();
        assert_eq!(x, Matrix::from_i64(f, &[&[3]]));
        assert!(matches!(
            Matrix::identity(f, 2).solve(&Matrix::zeros(f, 3, 1)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn rational_inverse_and_det() {
        let m = Matrix::from_i64(Rationals, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert_eq!(m.determinant().unwrap(), Rationals.one());
        let sing = Matrix::from_i64(Rationals, &[&[1, 2], &[2, 4]]);
        assert_eq!(sing.determinant().unwrap(), Rationals.zero());
        assert!(sing.inverse().is_err());
    }

    #[test]
    fn eval_poly_matches_powers() {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_i64(f, &[&[1, 2], &[3, 4]]);
        let p = Poly::from_i64(f, &[1, 2, 3]);
        let direct = Matrix::identity(f, 2)
            .add(&m.scale(&2))
            .unwrap()
            .add(&m.mul(&m).unwrap().scale(&3))
            .unwrap();
        assert_eq!(m.eval_poly(&p).unwrap(), direct);
    }
}
