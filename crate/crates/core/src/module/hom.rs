use super::ops::generating_set;
use super::ModuleRep;
use crate::algebra::{algebra_from_endos, AlgebraData};
use crate::arith::Field;
use crate::error::{Error, Result};
use crate::linalg::{combine, Echelon, Matrix, SpanCoords, Subspace};

/// Basis of `Hom_A(source, target)` as `target.dim x source.dim` matrices,
/// in canonical (row-reduced) form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomBasis<F: Field> {
    source_dim: usize,
    target_dim: usize,
    basis: Vec<Matrix<F>>,
}

impl<F: Field> HomBasis<F> {
    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Matrix<F>] {
        &self.basis
    }

    pub fn combine(&self, field: F, coeffs: &[F::Elem]) -> Matrix<F> {
        combine(field, self.target_dim, self.source_dim, coeffs, &self.basis)
    }
}

enum Origin {
    Gen(usize),
    Image { gen_action: usize, of: usize },
}

/// All module homomorphisms `m -> n`.
///
/// A homomorphism is determined by the images `u_g` of a generating set of
/// `m`. Spinning the generators gives a basis `w_l` of `m` together with
/// matrices `W_l` such that `phi(w_l) = W_l u`; every action step not used
/// to define the basis yields a linear constraint on `u`.
pub fn hom_basis<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>) -> Result<HomBasis<F>> {
    m.same_algebra_as(n)?;
    let f = m.field();
    let (md, nd) = (m.dim(), n.dim());
    let empty = HomBasis { source_dim: md, target_dim: nd, basis: Vec::new() };
    if md == 0 || nd == 0 {
        return Ok(empty);
    }
    let gens = generating_set(m);
    let m_acts = m.generator_actions();
    let n_acts = n.generator_actions();

    let mut ech = Echelon::new(f, md);
    let mut basis: Vec<Vec<F::Elem>> = Vec::new();
    let mut origin = Vec::new();
    let mut k = 0;
    for v in gens {
        if ech.insert(v.clone()) {
            basis.push(v);
            origin.push(Origin::Gen(k));
            k += 1;
        }
    }
    let mut defining = std::collections::HashSet::new();
    let mut next = 0;
    while next < basis.len() {
        for (gi, act) in m_acts.iter().enumerate() {
            let w = act.apply(&basis[next]);
            if ech.insert(w.clone()) {
                basis.push(w);
                origin.push(Origin::Image { gen_action: gi, of: next });
                defining.insert((gi, next));
            }
        }
        next += 1;
    }
    if basis.len() != md {
        return Err(Error::InternalInvariantViolation("generating set does not span".into()));
    }

    let width = k * nd;
    let mut images: Vec<Matrix<F>> = Vec::with_capacity(md);
    for o in &origin {
        let w = match *o {
            Origin::Gen(g) => {
                let mut w = Matrix::zeros(f, nd, width);
                for r in 0..nd {
                    w.set(r, g * nd + r, f.one());
                }
                w
            }
            Origin::Image { gen_action, of } => n_acts[gen_action].mul(&images[of])?,
        };
        images.push(w);
    }

    let coords = SpanCoords::new(f, md, &basis)?;
    let mut constraints = Echelon::new(f, width);
    'pairs: for l in 0..md {
        for (gi, act) in m_acts.iter().enumerate() {
            if defining.contains(&(gi, l)) {
                continue;
            }
            let c = coords.coords(&act.apply(&basis[l])).expect("spin basis spans");
            let mut lhs = n_acts[gi].mul(&images[l])?;
            for (ct, wt) in c.iter().zip(&images) {
                if !f.is_zero(ct) {
                    lhs.add_scaled(&f.neg(ct), wt);
                }
            }
            for row in lhs.row_vecs() {
                constraints.insert(row);
            }
            if constraints.rank() == width {
                break 'pairs;
            }
        }
    }
    let solutions = constraints.null_space();
    if solutions.is_zero() {
        return Ok(empty);
    }

    let s_inv = Matrix::from_columns(f, md, &basis)?.inverse()?;
    let mut flat = Vec::with_capacity(solutions.dim());
    for u in solutions.basis_vectors() {
        let cols: Vec<_> = images.iter().map(|w| w.apply(&u)).collect();
        let y = Matrix::from_columns(f, nd, &cols)?;
        flat.push(y.mul(&s_inv)?.flatten());
    }
    let canon = Subspace::from_vectors(f, nd * md, &flat)?;
    let basis = canon
        .basis_vectors()
        .into_iter()
        .map(|v| Matrix::from_vec(f, nd, md, v).expect("shape"))
        .collect();
    Ok(HomBasis { source_dim: md, target_dim: nd, basis })
}

/// `End_A(m)` as an abstract algebra; basis element `i` is `hom.basis()[i]`.
pub fn end_algebra<F: Field>(m: &ModuleRep<F>) -> Result<(AlgebraData<F>, HomBasis<F>)> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let hom = hom_basis(m, m)?;
    let (alg, _) = algebra_from_endos(hom.basis())?;
    Ok((alg, hom))
}

/// An endomorphism of a module, verified on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoMatrix<F: Field> {
    matrix: Matrix<F>,
}

impl<F: Field> EndoMatrix<F> {
    pub fn new(m: &ModuleRep<F>, matrix: Matrix<F>) -> Result<Self> {
        if !m.intertwines(m, &matrix) {
            return Err(Error::NotEndomorphism);
        }
        Ok(EndoMatrix { matrix })
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<F> {
        self.matrix
    }
}

/// `(ker theta^n, im theta^n)` with `n = dim m`.
pub fn fitting_split<F: Field>(m: &ModuleRep<F>, theta: &EndoMatrix<F>) -> Result<(Subspace<F>, Subspace<F>)> {
    if !m.intertwines(m, &theta.matrix) {
        return Err(Error::NotEndomorphism);
    }
    let t = theta.matrix.pow(m.dim() as u64)?;
    Ok((t.kernel(), t.column_space()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndoClass {
    /// least `k` with `theta^k = 0`
    Nilpotent(usize),
    Invertible,
    Neither,
}

pub fn classify_endo<F: Field>(m: &ModuleRep<F>, theta: &EndoMatrix<F>) -> Result<EndoClass> {
    if !m.intertwines(m, &theta.matrix) {
        return Err(Error::NotEndomorphism);
    }
    let f = m.field();
    if !f.is_zero(&theta.matrix.determinant()?) {
        return Ok(EndoClass::Invertible);
    }
    let mut p = theta.matrix.clone();
    for k in 1..=m.dim() {
        if p.is_zero() {
            return Ok(EndoClass::Nilpotent(k));
        }
        p = p.mul(&theta.matrix)?;
    }
    Ok(EndoClass::Neither)
}

#[cfg(test)]
mod tests {
    use super::super::test_util::*;
    use super::super::{direct_sum, free_module, regular_module};
    use super::*;
    use crate::arith::PrimeField;

    /// Brute-force intertwiner space: solve `X rho_m(b_i) = rho_n(b_i) X`
    /// for all basis elements as one linear system in the entries of X.
    fn hom_oracle(m: &ModuleRep<PrimeField>, n: &ModuleRep<PrimeField>) -> Subspace<PrimeField> {
        let f = m.field();
        let (md, nd) = (m.dim(), n.dim());
        let mut rows = Vec::new();
        for (a, b) in m.actions().iter().zip(n.actions()) {
            for r in 0..nd {
                for c in 0..md {
                    // (X a)[r][c] - (b X)[r][c]
                    let mut row = vec![0u32; nd * md];
                    for t in 0..md {
                        let idx = r * md + t;
                        row[idx] = f.add(&row[idx], a.get(t, c));
                    }
                    for t in 0..nd {
                        let idx = t * md + c;
                        row[idx] = f.sub(&row[idx], b.get(r, t));
                    }
                    rows.push(row);
                }
            }
        }
        Matrix::from_rows(f, nd * md, &rows).unwrap().kernel()
    }

    fn as_space(h: &HomBasis<PrimeField>) -> Subspace<PrimeField> {
        let f = f5();
        let flat: Vec<_> = h.basis().iter().map(|x| x.flatten()).collect();
        Subspace::from_vectors(f, h.source_dim() * h.target_dim(), &flat).unwrap()
    }

    #[test]
    fn hom_examples() {
        let (p1, p2, s2) = ut2_modules();
        assert_eq!(hom_basis(&p1, &s2).unwrap().dim(), 0);
        assert_eq!(hom_basis(&p2, &s2).unwrap().dim(), 1);
        for m in [&p1, &p2, &s2] {
            let h = hom_basis(m, m).unwrap();
            assert!(h.dim() >= 1);
            let id = Matrix::identity(f5(), m.dim());
            assert!(as_space(&h).contains(&id.flatten()));
        }
    }

    #[test]
    fn hom_matches_oracle() {
        let (p1, p2, s2) = ut2_modules();
        let reg = regular_module(&ut2());
        let sum = direct_sum(&direct_sum(&s2, &s2).unwrap(), &p2).unwrap();
        let mods = [p1, p2, s2, reg, sum, free_module(&ut2(), 2)];
        for m in &mods {
            for n in &mods {
                let h = hom_basis(m, n).unwrap();
                assert_eq!(as_space(&h), hom_oracle(m, n));
                for x in h.basis() {
                    assert!(m.intertwines(n, x));
                }
            }
        }
    }

    #[test]
    fn end_examples() {
        let (p1, _, s2) = ut2_modules();
        let (e, _) = end_algebra(&p1).unwrap();
        assert_eq!(e.dim(), 1);
        let reg = regular_module(&ut2());
        let (e, h) = end_algebra(&reg).unwrap();
        assert_eq!(e.dim(), 3);
        assert!(e.validate().is_valid());
        assert_eq!(h.dim(), 3);
        let ss = direct_sum(&s2, &s2).unwrap();
        let (e, _) = end_algebra(&ss).unwrap();
        assert_eq!(e.dim(), 4);
        assert!(!e.is_commutative());
        assert_eq!(end_algebra(&ModuleRep::zero(ut2())).unwrap_err(), Error::ZeroModule);
    }

    #[test]
    fn end_of_regular_is_opposite() {
        // every endomorphism of A is right multiplication by some a
        let a = ut2();
        let reg = regular_module(&a);
        let h = hom_basis(&reg, &reg).unwrap();
        let rights: Vec<_> = (0..3)
            .map(|i| a.mult_operator(&a.basis_vector(i), crate::algebra::Side::Right).unwrap().flatten())
            .collect();
        assert_eq!(as_space(&h), Subspace::from_vectors(f5(), 9, &rights).unwrap());
    }

    #[test]
    fn fitting_examples() {
        let (p1, p2, _) = ut2_modules();
        let m = direct_sum(&p1, &p2).unwrap();
        let f = f5();
        let id = EndoMatrix::new(&m, Matrix::identity(f, 3)).unwrap();
        let (k, i) = fitting_split(&m, &id).unwrap();
        assert!(k.is_zero() && i.is_full());
        let zero = EndoMatrix::new(&m, Matrix::zeros(f, 3, 3)).unwrap();
        let (k, i) = fitting_split(&m, &zero).unwrap();
        assert!(k.is_full() && i.is_zero());
        let proj = Matrix::from_i64(f, &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        let e = EndoMatrix::new(&m, proj).unwrap();
        let (k, i) = fitting_split(&m, &e).unwrap();
        assert_eq!(k, span(3, &[&[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(i, span(3, &[&[1, 0, 0]]));
        assert_eq!(classify_endo(&m, &e).unwrap(), EndoClass::Neither);
        assert_eq!(classify_endo(&m, &id).unwrap(), EndoClass::Invertible);
    }

    #[test]
    fn classify_nilpotent() {
        let a = crate::algebra::build_example(&crate::algebra::ExampleKind::TruncatedPoly(2), f5()).unwrap();
        let reg = regular_module(&a.shared());
        // multiplication by t: 1 -> t, t -> 0
        let n = Matrix::from_i64(f5(), &[&[0, 0], &[1, 0]]);
        let e = EndoMatrix::new(&reg, n).unwrap();
        assert_eq!(classify_endo(&reg, &e).unwrap(), EndoClass::Nilpotent(2));
    }

    #[test]
    fn non_endomorphism_rejected() {
        let (_, p2, _) = ut2_modules();
        // top and socle of P2 are not isomorphic, so e22 -> e12 is not a map
        let bad = Matrix::from_i64(f5(), &[&[0, 1], &[0, 0]]);
        assert_eq!(EndoMatrix::new(&p2, bad).unwrap_err(), Error::NotEndomorphism);
    }
}
