//! Dense exact linear algebra over a [`Field`](crate::arith::Field).

mod charpoly;
mod matrix;
mod subspace;

pub use charpoly::{apply_poly, char_poly, min_poly, vector_min_poly};
pub use matrix::{combine, Matrix};
pub use subspace::{Echelon, Subspace};

/// Coordinates of vectors with respect to a fixed, linearly independent list.
#[derive(Clone, Debug)]
pub struct SpanCoords<F: crate::arith::Field> {
    rref: Subspace<F>,
    // rref row i = sum_j transform[i][j] * original_j
    transform: Matrix<F>,
}

impl<F: crate::arith::Field> SpanCoords<F> {
    /// Fails with `LinearlyDependent` when the vectors are not independent.
    pub fn new(field: F, ambient: usize, vectors: &[Vec<F::Elem>]) -> crate::Result<Self> {
        let k = vectors.len();
        let mut aug_rows = Vec::with_capacity(k);
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != ambient {
                return Err(crate::Error::DimensionMismatch("vector length".into()));
            }
            let mut row = v.clone();
            row.extend((0..k).map(|j| if i == j { field.one() } else { field.zero() }));
            aug_rows.push(row);
        }
        let aug = Matrix::from_rows(field, ambient + k, &aug_rows)?;
        let (r, pivots) = aug.rref();
        if pivots.len() < k || pivots.iter().any(|&p| p >= ambient) {
            return Err(crate::Error::LinearlyDependent);
        }
        let rows: Vec<usize> = (0..k).collect();
        let left: Vec<usize> = (0..ambient).collect();
        let right: Vec<usize> = (ambient..ambient + k).collect();
        let rr = r.submatrix_rows(&rows);
        let rref = Subspace::from_matrix(&rr.submatrix_cols(&left));
        Ok(SpanCoords { rref, transform: rr.submatrix_cols(&right) })
    }

    pub fn dim(&self) -> usize {
        self.rref.dim()
    }

    pub fn span(&self) -> &Subspace<F> {
        &self.rref
    }

    /// Coefficients `c` with `v = sum c_j * original_j`, if `v` is in the span.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let c = self.rref.coords(v)?;
        let f = self.rref.field();
        let k = self.transform.cols();
        let mut out = vec![f.zero(); k];
        for (i, ci) in c.iter().enumerate() {
            for (o, t) in out.iter_mut().zip(self.transform.row(i)) {
                *o = f.mul_add(o, ci, t);
            }
        }
        Some(out)
    }
}
