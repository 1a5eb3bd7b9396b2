use std::sync::Arc;

use super::AlgebraData;
use crate::arith::Field;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Sidedness {
    Left,
    TwoSided,
}

/// A left or two-sided ideal, checked for closure on construction.
#[derive(Debug, Clone)]
pub struct IdealHandle<F: Field> {
    algebra: Arc<AlgebraData<F>>,
    space: Subspace<F>,
    sidedness: Sidedness,
}

impl<F: Field> PartialEq for IdealHandle<F> {
    fn eq(&self, other: &Self) -> bool {
        super::same_algebra(&self.algebra, &other.algebra)
            && self.space == other.space
            && self.sidedness == other.sidedness
    }
}

fn left_closed<F: Field>(a: &AlgebraData<F>, space: &Subspace<F>) -> bool {
    space
        .basis_vectors()
        .iter()
        .all(|v| (0..a.dim()).all(|i| space.contains(&a.left_op(i).apply(v))))
}

fn right_closed<F: Field>(a: &AlgebraData<F>, space: &Subspace<F>) -> bool {
    space
        .basis_vectors()
        .iter()
        .all(|v| (0..a.dim()).all(|i| space.contains(&a.mul(v, &a.basis_vector(i)))))
}

impl<F: Field> IdealHandle<F> {
    pub fn new(algebra: Arc<AlgebraData<F>>, space: Subspace<F>, sidedness: Sidedness) -> Result<Self> {
        if space.ambient_dim() != algebra.dim() {
            return Err(Error::AmbientMismatch(space.ambient_dim(), algebra.dim()));
        }
        if !left_closed(&algebra, &space) {
            return Err(Error::NotLeftIdeal);
        }
        if sidedness == Sidedness::TwoSided && !right_closed(&algebra, &space) {
            return Err(Error::NotTwoSided);
        }
        Ok(IdealHandle { algebra, space, sidedness })
    }

    /// Smallest ideal of the given sidedness containing `vectors`.
    pub fn generated(
        algebra: Arc<AlgebraData<F>>,
        vectors: &[Vec<F::Elem>],
        sidedness: Sidedness,
    ) -> Result<Self> {
        let a = &algebra;
        let d = a.dim();
        let mut ech = Echelon::new(a.field(), d);
        let mut queue = Vec::new();
        for v in vectors {
            if v.len() != d {
                return Err(Error::DimensionMismatch("generator length".into()));
            }
            if ech.insert(v.clone()) {
                queue.push(v.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for i in 0..d {
                let mut images = vec![a.left_op(i).apply(&v)];
                if sidedness == Sidedness::TwoSided {
                    images.push(a.mul(&v, &a.basis_vector(i)));
                }
                for w in images {
                    if ech.insert(w.clone()) {
                        queue.push(w);
                    }
                }
            }
        }
        let space = ech.into_subspace();
        Ok(IdealHandle { algebra, space, sidedness })
    }

    pub fn zero(algebra: Arc<AlgebraData<F>>) -> Self {
        let space = Subspace::zero(algebra.field(), algebra.dim());
        IdealHandle { algebra, space, sidedness: Sidedness::TwoSided }
    }

    pub fn whole(algebra: Arc<AlgebraData<F>>) -> Self {
        let space = Subspace::full(algebra.field(), algebra.dim());
        IdealHandle { algebra, space, sidedness: Sidedness::TwoSided }
    }

    pub fn algebra(&self) -> &Arc<AlgebraData<F>> {
        &self.algebra
    }

    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }

    pub fn sidedness(&self) -> Sidedness {
        self.sidedness
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn is_proper(&self) -> bool {
        !self.space.is_full()
    }

    /// `IJ = span{xy : x in I, y in J}`; an ideal of the sidedness of `J`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if !super::same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let a = &self.algebra;
        let mut ech = Echelon::new(a.field(), a.dim());
        let ys = other.space.basis_vectors();
        'outer: for x in self.space.basis_vectors() {
            let lx = a.mult_operator(&x, super::Side::Left)?;
            for y in &ys {
                ech.insert(lx.apply(y));
                if ech.rank() == other.dim() {
                    break 'outer;
                }
            }
        }
        Ok(IdealHandle {
            algebra: self.algebra.clone(),
            space: ech.into_subspace(),
            sidedness: other.sidedness,
        })
    }

    /// `I^k`, with `I^0 = A`.
    pub fn power(&self, k: usize) -> Result<Self> {
        let mut acc = IdealHandle::whole(self.algebra.clone());
        for _ in 0..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `I, I^2, ...` up to the first repeat.
    pub fn power_chain(&self) -> Result<Vec<Subspace<F>>> {
        let mut chain = vec![self.space.clone()];
        let mut cur = self.clone();
        loop {
            let next = cur.product(self)?;
            if next.space == cur.space {
                return Ok(chain);
            }
            chain.push(next.space.clone());
            cur = next;
        }
    }

    /// Least `k` with `I^k = 0`, if any.
    pub fn nilpotency_index(&self) -> Result<Option<usize>> {
        if self.is_zero() {
            return Ok(Some(1));
        }
        let chain = self.power_chain()?;
        Ok(chain.iter().position(|s| s.is_zero()).map(|i| i + 1))
    }
}

/// Radical as the kernel of the trace form `(x, y) -> tr(L_x L_y)`.
/// Valid over Q and over F_p for p > dim.
pub fn dickson_radical<F: Field>(a: &Arc<AlgebraData<F>>) -> Result<IdealHandle<F>> {
    let f = a.field();
    let d = a.dim();
    if let Some(p) = f.order() {
        if p <= d as u64 {
            return Err(Error::UnsupportedCharacteristic { p, dim: d });
        }
    }
    let mut gram = Matrix::zeros(f, d, d);
    let transposed: Vec<Matrix<F>> = a.left_ops().iter().map(|m| m.transpose()).collect();
    for i in 0..d {
        for j in i..d {
            // tr(L_i L_j) = sum over entries of L_i (elementwise) L_j^T
            let mut t = f.zero();
            for (x, y) in a.left_op(i).data().iter().zip(transposed[j].data()) {
                if !f.is_zero(x) {
                    t = f.mul_add(&t, x, y);
                }
            }
            gram.set(i, j, t.clone());
            gram.set(j, i, t);
        }
    }
    let space = gram.kernel();
    let ideal = IdealHandle::new(a.clone(), space, Sidedness::TwoSided)
        .map_err(|e| Error::InternalInvariantViolation(format!("trace-form kernel is not an ideal: {e}")))?;
    if !ideal.power(d)?.is_zero() {
        return Err(Error::InternalInvariantViolation("trace-form kernel is not nilpotent".into()));
    }
    Ok(ideal)
}

/// `A / I` on the complement coordinates of `I`, with the projection matrix.
pub fn quotient_algebra<F: Field>(
    a: &Arc<AlgebraData<F>>,
    ideal: &IdealHandle<F>,
) -> Result<(AlgebraData<F>, Matrix<F>)> {
    if !super::same_algebra(a, &ideal.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    if ideal.sidedness != Sidedness::TwoSided && !right_closed(a, &ideal.space) {
        return Err(Error::NotTwoSided);
    }
    if !ideal.is_proper() {
        return Err(Error::ImproperIdeal);
    }
    let f = a.field();
    let d = a.dim();
    let keep = ideal.space.non_pivots();
    let project = |v: &[F::Elem]| -> Vec<F::Elem> {
        let r = ideal.space.reduce(v);
        keep.iter().map(|&c| r[c].clone()).collect()
    };
    let cols: Vec<Vec<F::Elem>> = (0..d).map(|j| project(&a.basis_vector(j))).collect();
    let projection = Matrix::from_columns(f, keep.len(), &cols)?;
    let n = keep.len();
    let mut products = Vec::with_capacity(n * n);
    for &i in &keep {
        for &j in &keep {
            products.push(project(a.basis_product(i, j)));
        }
    }
    let labels = keep.iter().map(|&c| a.labels()[c].clone()).collect();
    let q = AlgebraData::from_products(f, n, products, project(a.unit()), Some(labels))?;
    Ok((q, projection))
}
