use super::AlgebraData;
use crate::arith::Field;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SpanCoords};

/// Identifies an abstract algebra with a span of square matrices.
#[derive(Debug, Clone)]
pub struct MatrixEmbedding<F: Field> {
    n: usize,
    basis: Vec<Matrix<F>>,
    coords: SpanCoords<F>,
}

impl<F: Field> MatrixEmbedding<F> {
    pub fn new(basis: Vec<Matrix<F>>) -> Result<Self> {
        let first = basis
            .first()
            .ok_or_else(|| Error::BadParam("empty matrix basis".into()))?;
        let n = first.rows();
        let field = first.field();
        for m in &basis {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "expected {n}x{n} matrices, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let flat: Vec<Vec<F::Elem>> = basis.iter().map(|m| m.flatten()).collect();
        let coords = SpanCoords::new(field, n * n, &flat)?;
        Ok(MatrixEmbedding { n, basis, coords })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Matrix<F>] {
        &self.basis
    }

    pub fn to_matrix(&self, x: &[F::Elem]) -> Matrix<F> {
        let f = self.basis[0].field();
        crate::linalg::combine(f, self.n, self.n, x, &self.basis)
    }

    /// Coordinates of `m` in the basis, if it lies in the span.
    pub fn coords_of(&self, m: &Matrix<F>) -> Option<Vec<F::Elem>> {
        if m.rows() != self.n || m.cols() != self.n {
            return None;
        }
        self.coords.coords(&m.flatten())
    }
}

/// Algebra structure on the span of `homs`, multiplication = composition
/// (`b_i b_j = h_i h_j`).
pub fn algebra_from_endos<F: Field>(homs: &[Matrix<F>]) -> Result<(AlgebraData<F>, MatrixEmbedding<F>)> {
    let emb = MatrixEmbedding::new(homs.to_vec())?;
    let f = homs[0].field();
    let d = homs.len();
    let mut products = Vec::with_capacity(d * d);
    for hi in homs {
        for hj in homs {
            let c = emb.coords_of(&hi.mul(hj)?).ok_or(Error::NotClosed)?;
            products.push(c);
        }
    }
    let unit = emb.coords_of(&Matrix::identity(f, emb.size())).ok_or(Error::NoIdentity)?;
    let a = AlgebraData::from_products(f, d, products, unit, None)?;
    Ok((a, emb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;

    #[test]
    fn identity_only() {
        let f = PrimeField::new(7).unwrap();
        let (a, _) = algebra_from_endos(&[Matrix::identity(f, 3)]).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.unit(), &[1]);
        assert_eq!(a.basis_product(0, 0), &[1]);
    }

    #[test]
    fn dual_numbers() {
        let f = PrimeField::new(5).unwrap();
        let eps = Matrix::from_i64(f, &[&[0, 1], &[0, 0]]);
        let (a, emb) = algebra_from_endos(&[Matrix::identity(f, 2), eps.clone()]).unwrap();
        assert!(a.validate().is_valid());
        assert!(a.is_commutative());
        assert_eq!(a.basis_product(1, 1), &[0, 0]);
        assert_eq!(emb.to_matrix(&[0, 1]), eps);
    }

    #[test]
    fn errors() {
        let f = PrimeField::new(5).unwrap();
        let x = Matrix::from_i64(f, &[&[0, 1], &[1, 0]]);
        // x^2 = id lies outside span{x}
        assert_eq!(algebra_from_endos(&[x]).unwrap_err(), Error::NotClosed);
        let e = Matrix::from_i64(f, &[&[1, 0], &[0, 0]]);
        assert_eq!(algebra_from_endos(&[e]).unwrap_err(), Error::NoIdentity);
    }
}
