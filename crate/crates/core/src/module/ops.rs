use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{hom_basis, ModuleRep};
use crate::algebra::{same_algebra, AlgebraData, IdealHandle};
use crate::arith::Field;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, Subspace};
use std::sync::Arc;

pub fn regular_module<F: Field>(a: &Arc<AlgebraData<F>>) -> ModuleRep<F> {
    ModuleRep { algebra: a.clone(), dim: a.dim(), action: a.left_ops().to_vec() }
}

/// `A^k` with block-diagonal actions.
pub fn free_module<F: Field>(a: &Arc<AlgebraData<F>>, k: usize) -> ModuleRep<F> {
    let mut m = ModuleRep::zero(a.clone());
    let reg = regular_module(a);
    for _ in 0..k {
        m = direct_sum(&m, &reg).expect("same algebra");
    }
    m
}

pub fn direct_sum<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>) -> Result<ModuleRep<F>> {
    m.same_algebra_as(n)?;
    let action = m.action.iter().zip(&n.action).map(|(x, y)| x.block_diag(y)).collect();
    Ok(ModuleRep { algebra: m.algebra.clone(), dim: m.dim + n.dim, action })
}

pub(crate) fn spin_echelon<F: Field>(m: &ModuleRep<F>, vectors: &[Vec<F::Elem>]) -> Echelon<F> {
    let gens = m.generator_actions();
    let mut ech = Echelon::new(m.field(), m.dim);
    let mut queue = Vec::new();
    for v in vectors {
        if ech.insert(v.clone()) {
            queue.push(v.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if ech.rank() == m.dim {
            break;
        }
        for g in &gens {
            let w = g.apply(&v);
            if ech.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    ech
}

/// Dimension of the submodule generated by `v`.
pub(crate) fn spin_dim<F: Field>(m: &ModuleRep<F>, v: &[F::Elem]) -> usize {
    spin_echelon(m, &[v.to_vec()]).rank()
}

/// Smallest submodule containing `vectors`.
pub fn spin<F: Field>(m: &ModuleRep<F>, vectors: &[Vec<F::Elem>]) -> Result<Subspace<F>> {
    if let Some(v) = vectors.iter().find(|v| v.len() != m.dim) {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} in a module of dimension {}",
            v.len(),
            m.dim
        )));
    }
    let s = spin_echelon(m, vectors).into_subspace();
    debug_assert!(is_invariant(m, &s));
    Ok(s)
}

/// Whether every basis element's action maps `s` into itself.
pub fn is_invariant<F: Field>(m: &ModuleRep<F>, s: &Subspace<F>) -> bool {
    s.ambient_dim() == m.dim
        && s.basis_vectors()
            .iter()
            .all(|v| m.action.iter().all(|r| s.contains(&r.apply(v))))
}

/// `m / s` on the non-pivot coordinates of `s`, with the projection.
pub fn quotient_module<F: Field>(m: &ModuleRep<F>, s: &Subspace<F>) -> Result<(ModuleRep<F>, Matrix<F>)> {
    if !is_invariant(m, s) {
        return Err(Error::NotInvariant);
    }
    let f = m.field();
    let keep = s.non_pivots();
    let k = keep.len();
    let project = |v: &[F::Elem]| -> Vec<F::Elem> {
        let r = s.reduce(v);
        keep.iter().map(|&c| r[c].clone()).collect()
    };
    let mut e = vec![f.zero(); m.dim];
    let mut proj_cols = Vec::with_capacity(m.dim);
    for j in 0..m.dim {
        e[j] = f.one();
        proj_cols.push(project(&e));
        e[j] = f.zero();
    }
    let projection = Matrix::from_columns(f, k, &proj_cols)?;
    let action = m
        .action
        .iter()
        .map(|r| {
            let cols: Vec<_> = keep.iter().map(|&c| project(&r.column(c))).collect();
            Matrix::from_columns(f, k, &cols).expect("shape")
        })
        .collect();
    Ok((ModuleRep { algebra: m.algebra.clone(), dim: k, action }, projection))
}

/// `s` as a module in its RREF basis, with the inclusion.
pub fn submodule_restrict<F: Field>(m: &ModuleRep<F>, s: &Subspace<F>) -> Result<(ModuleRep<F>, Matrix<F>)> {
    if !is_invariant(m, s) {
        return Err(Error::NotInvariant);
    }
    let f = m.field();
    let basis = s.basis_vectors();
    let k = basis.len();
    let inclusion = Matrix::from_columns(f, m.dim, &basis)?;
    let action = m
        .action
        .iter()
        .map(|r| {
            let cols: Vec<_> = basis
                .iter()
                .map(|v| s.coords(&r.apply(v)).expect("invariant"))
                .collect();
            Matrix::from_columns(f, k, &cols).expect("shape")
        })
        .collect();
    Ok((ModuleRep { algebra: m.algebra.clone(), dim: k, action }, inclusion))
}

/// Module over the opposite algebra acting by transposed matrices.
pub fn transpose_module<F: Field>(m: &ModuleRep<F>) -> ModuleRep<F> {
    ModuleRep {
        algebra: m.algebra.opposite_shared(),
        dim: m.dim,
        action: m.action.iter().map(|r| r.transpose()).collect(),
    }
}

/// `I m`: the span of `rho(v) m` over `v` in the ideal.
pub fn ideal_action<F: Field>(i: &IdealHandle<F>, m: &ModuleRep<F>) -> Result<Subspace<F>> {
    if !same_algebra(i.algebra(), &m.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let mut vectors = Vec::new();
    for v in i.space().basis_vectors() {
        let r = m.act(&v);
        vectors.extend(r.column_space().basis_vectors());
    }
    spin(m, &vectors)
}

/// Intersection of the kernels of all homomorphisms into the given simples.
pub fn radical_of_module<F: Field>(m: &ModuleRep<F>, simples: &[ModuleRep<F>]) -> Result<Subspace<F>> {
    let f = m.field();
    if m.is_zero() {
        return Ok(Subspace::zero(f, 0));
    }
    if simples.is_empty() {
        return Err(Error::IncompleteSimples);
    }
    let mut rows = Vec::new();
    for s in simples {
        for phi in hom_basis(m, s)?.basis() {
            rows.extend(phi.row_vecs());
        }
    }
    if rows.is_empty() {
        return Ok(Subspace::full(f, m.dim));
    }
    Ok(Matrix::from_rows(f, m.dim, &rows)?.kernel())
}

const GENSET_SEED: u64 = 0x9e37_79b9_7f4a_7c15;

/// A small generating set: pseudo-random vectors outside the current span,
/// falling back to the first standard basis vector not yet reached.
/// Deterministic.
pub fn generating_set<F: Field>(m: &ModuleRep<F>) -> Vec<Vec<F::Elem>> {
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(GENSET_SEED);
    let mut gens = Vec::new();
    let mut ech = Echelon::new(f, m.dim);
    while ech.rank() < m.dim {
        let v: Vec<F::Elem> = (0..m.dim).map(|_| f.random(&mut rng)).collect();
        let v = if ech.contains(&v) {
            let j = (0..m.dim)
                .find(|&j| {
                    let mut e = vec![f.zero(); m.dim];
                    e[j] = f.one();
                    !ech.contains(&e)
                })
                .expect("proper span misses a basis vector");
            let mut e = vec![f.zero(); m.dim];
            e[j] = f.one();
            e
        } else {
            v
        };
        gens.push(v);
        ech = spin_echelon(m, &gens);
    }
    gens
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSearch<E> {
    Found(Vec<E>),
    NotFound { tried: usize },
}

/// Searches for `v` with `spin(v) = m`: `hint` first, then standard basis
/// vectors, then up to `budget` seeded random vectors.
pub fn find_generator<F: Field>(
    m: &ModuleRep<F>,
    hint: Option<&[F::Elem]>,
    seed: u64,
    budget: usize,
) -> GeneratorSearch<F::Elem> {
    let f = m.field();
    if m.is_zero() {
        return GeneratorSearch::NotFound { tried: 0 };
    }
    let mut tried = 0;
    if let Some(h) = hint {
        tried += 1;
        if h.len() == m.dim && spin_dim(m, h) == m.dim {
            return GeneratorSearch::Found(h.to_vec());
        }
    }
    for j in 0..m.dim {
        let mut e = vec![f.zero(); m.dim];
        e[j] = f.one();
        tried += 1;
        if spin_dim(m, &e) == m.dim {
            return GeneratorSearch::Found(e);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let v: Vec<F::Elem> = (0..m.dim).map(|_| f.random(&mut rng)).collect();
        tried += 1;
        if spin_dim(m, &v) == m.dim {
            return GeneratorSearch::Found(v);
        }
    }
    GeneratorSearch::NotFound { tried }
}

#[cfg(test)]
mod tests {
    use super::super::test_util::*;
    use super::super::validate_module;
    use super::*;
    use crate::algebra::{build_example, dickson_radical, ExampleKind, Sidedness};
    use crate::arith::{PrimeField, Rationals};

    #[test]
    fn regular_and_free() {
        let a = ut2();
        let reg = regular_module(&a);
        assert_eq!(reg.dim(), 3);
        assert!(validate_module(&reg).is_valid());
        assert_eq!(free_module(&a, 0).dim(), 0);
        assert_eq!(free_module(&a, 1), reg);
        let f2 = free_module(&a, 2);
        assert_eq!(f2.dim(), 6);
        assert!(validate_module(&f2).is_valid());

        let k = build_example(&ExampleKind::TruncatedPoly(1), f5()).unwrap().shared();
        assert!(regular_module(&k).action(0).is_identity());
        let f3 = PrimeField::new(3).unwrap();
        let m2 = build_example(&ExampleKind::FullMatrix(2), f3).unwrap().shared();
        assert_eq!(regular_module(&m2).dim(), 4);
    }

    #[test]
    fn spin_examples() {
        let reg = regular_module(&ut2());
        assert!(spin(&reg, &[vec![0, 0, 0]]).unwrap().is_zero());
        assert_eq!(spin(&reg, &[vec![1, 0, 0]]).unwrap(), span(3, &[&[1, 0, 0]]));
        assert_eq!(spin(&reg, &[vec![0, 0, 1]]).unwrap(), span(3, &[&[0, 1, 0], &[0, 0, 1]]));
        assert!(matches!(spin(&reg, &[vec![1]]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn quotient_examples() {
        let reg = regular_module(&ut2());
        let (q, p) = quotient_module(&reg, &Subspace::zero(f5(), 3)).unwrap();
        assert_eq!(q, reg);
        assert!(p.is_identity());
        let (q, _) = quotient_module(&reg, &Subspace::full(f5(), 3)).unwrap();
        assert_eq!(q.dim(), 0);
        let (_, _, s2) = ut2_modules();
        assert_eq!(s2.dim(), 1);
        // (x y; 0 z) acts by z
        assert_eq!(s2.action(0).get(0, 0), &0);
        assert_eq!(s2.action(1).get(0, 0), &0);
        assert_eq!(s2.action(2).get(0, 0), &1);
        assert!(validate_module(&s2).is_valid());
        assert_eq!(quotient_module(&reg, &span(3, &[&[0, 0, 1]])).unwrap_err(), Error::NotInvariant);
    }

    #[test]
    fn projection_intertwines() {
        let reg = regular_module(&ut2());
        let (q, p) = quotient_module(&reg, &span(3, &[&[0, 1, 0]])).unwrap();
        assert!(reg.intertwines(&q, &p));
        assert_eq!(p.rank(), q.dim());
    }

    #[test]
    fn restrict_examples() {
        let reg = regular_module(&ut2());
        let (p1, inc) = submodule_restrict(&reg, &span(3, &[&[1, 0, 0]])).unwrap();
        assert_eq!(p1.dim(), 1);
        assert_eq!(p1.action(0).get(0, 0), &1);
        assert_eq!(p1.action(1).get(0, 0), &0);
        assert_eq!(p1.action(2).get(0, 0), &0);
        assert!(p1.intertwines(&reg, &inc));
        let (w, _) = submodule_restrict(&reg, &Subspace::full(f5(), 3)).unwrap();
        assert_eq!(w, reg);
        assert_eq!(submodule_restrict(&reg, &Subspace::zero(f5(), 3)).unwrap().0.dim(), 0);
    }

    #[test]
    fn direct_sum_examples() {
        let (p1, p2, _) = ut2_modules();
        let z = ModuleRep::zero(p1.algebra().clone());
        assert_eq!(direct_sum(&p1, &z).unwrap(), p1);
        let s = direct_sum(&p1, &p2).unwrap();
        assert_eq!(s.dim(), 3);
        assert!(validate_module(&s).is_valid());
        let other = regular_module(&build_example(&ExampleKind::TruncatedPoly(3), f5()).unwrap().shared());
        assert_eq!(direct_sum(&p1, &other).unwrap_err(), Error::AlgebraMismatch);
    }

    #[test]
    fn transpose_examples() {
        let reg = regular_module(&ut2());
        let t = transpose_module(&reg);
        assert!(validate_module(&t).is_valid());
        assert_eq!(transpose_module(&t), reg);
        let tp = build_example(&ExampleKind::TruncatedPoly(3), f5()).unwrap().shared();
        let tr = transpose_module(&regular_module(&tp));
        assert!(validate_module(&tr).is_valid());
        assert_eq!(**tr.algebra(), *tp);
        let (p1, _, _) = ut2_modules();
        assert_eq!(transpose_module(&p1).actions(), p1.actions());
    }

    #[test]
    fn ideal_action_examples() {
        let a = ut2();
        let reg = regular_module(&a);
        assert!(ideal_action(&IdealHandle::zero(a.clone()), &reg).unwrap().is_zero());
        let rad = IdealHandle::new(a.clone(), span(3, &[&[0, 1, 0]]), Sidedness::TwoSided).unwrap();
        assert_eq!(ideal_action(&rad, &reg).unwrap(), span(3, &[&[0, 1, 0]]));

        let t3 = build_example(&ExampleKind::TruncatedPoly(3), Rationals).unwrap().shared();
        let r = dickson_radical(&t3).unwrap();
        let s = ideal_action(&r, &regular_module(&t3)).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.pivots(), &[1, 2]);
    }

    #[test]
    fn radical_of_module_examples() {
        let (p1, _, s2) = ut2_modules();
        let reg = regular_module(&ut2());
        let simples = vec![p1.clone(), s2.clone()];
        assert_eq!(radical_of_module(&reg, &simples).unwrap(), span(3, &[&[0, 1, 0]]));
        assert!(radical_of_module(&p1, &simples).unwrap().is_zero());
        assert_eq!(radical_of_module(&reg, &[]).unwrap_err(), Error::IncompleteSimples);
    }

    #[test]
    fn find_generator_examples() {
        let a = ut2();
        let reg = regular_module(&a);
        assert_eq!(find_generator(&reg, Some(a.unit()), 1, 8), GeneratorSearch::Found(vec![1, 0, 1]));
        let (_, p2, _) = ut2_modules();
        // P2 in basis (e12, e22): e22 is the second coordinate
        assert_eq!(find_generator(&p2, None, 1, 8), GeneratorSearch::Found(vec![0, 1]));
        assert_eq!(find_generator(&ModuleRep::zero(a), None, 1, 8), GeneratorSearch::NotFound { tried: 0 });
    }

    #[test]
    fn generating_set_spans() {
        let a = ut2();
        let m = free_module(&a, 2);
        let gens = generating_set(&m);
        assert!(spin(&m, &gens).unwrap().is_full());
        assert!(gens.len() <= 3);
    }
}
