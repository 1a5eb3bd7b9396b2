use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::indecomp::{is_indecomposable, iso_indecomposable};
use super::{derive_seed, is_simple, Certificate};
use crate::algebra::{AlgebraData, IdealHandle, Sidedness};
use crate::arith::{require_finite, Field};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::module::{hom_basis, quotient_module, regular_module, submodule_restrict, ModuleRep};

pub const DEFAULT_ISO_BUDGET: usize = 64;

/// `0 = M_0 < M_1 < ... < M_r = M` with simple factors `M_j / M_{j-1}`.
#[derive(Debug, Clone)]
pub struct CompSeries<F: Field> {
    pub chain: Vec<Subspace<F>>,
    pub factors: Vec<ModuleRep<F>>,
    /// simplicity certificate of each factor
    pub certificates: Vec<Certificate<F>>,
    pub factor_class_ids: Vec<usize>,
}

impl<F: Field> CompSeries<F> {
    pub fn length(&self) -> usize {
        self.factors.len()
    }

    pub fn class_count(&self) -> usize {
        self.factor_class_ids.iter().max().map_or(0, |m| m + 1)
    }

    /// class id -> multiplicity
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &c in &self.factor_class_ids {
            *out.entry(c).or_insert(0) += 1;
        }
        out
    }

    /// First factor of each class, in class order.
    pub fn representatives(&self) -> Vec<(ModuleRep<F>, Certificate<F>)> {
        (0..self.class_count())
            .map(|c| {
                let i = self.factor_class_ids.iter().position(|&x| x == c).expect("class used");
                (self.factors[i].clone(), self.certificates[i].clone())
            })
            .collect()
    }
}

/// Assigns class ids to `items` under the equivalence `same`; ids are
/// ordered by dimension, then by first occurrence.
pub fn group_classes<F: Field>(
    items: &[ModuleRep<F>],
    mut same: impl FnMut(&ModuleRep<F>, &ModuleRep<F>) -> Result<bool>,
) -> Result<Vec<usize>> {
    let mut reps: Vec<usize> = Vec::new();
    let mut raw = Vec::with_capacity(items.len());
    for (i, m) in items.iter().enumerate() {
        let mut found = None;
        for (c, &r) in reps.iter().enumerate() {
            if items[r].dim() == m.dim() && same(&items[r], m)? {
                found = Some(c);
                break;
            }
        }
        let c = match found {
            Some(c) => c,
            None => {
                reps.push(i);
                reps.len() - 1
            }
        };
        raw.push(c);
    }
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by_key(|&c| (items[reps[c]].dim(), reps[c]));
    let mut rename = vec![0; reps.len()];
    for (new, &old) in order.iter().enumerate() {
        rename[old] = new;
    }
    Ok(raw.into_iter().map(|c| rename[c]).collect())
}

/// Isomorphism of modules already known to be simple: any nonzero map is
/// invertible.
pub(crate) fn simples_isomorphic<F: Field>(s: &ModuleRep<F>, t: &ModuleRep<F>) -> Result<bool> {
    if s.dim() != t.dim() {
        return Ok(false);
    }
    let h = hom_basis(s, t)?;
    match h.basis().first() {
        None => Ok(false),
        Some(x) if x.rank() == s.dim() => Ok(true),
        Some(_) => Err(Error::InternalInvariantViolation("nonzero map between simples is not invertible".into())),
    }
}

type Chop<F> = (Vec<Subspace<F>>, Vec<ModuleRep<F>>, Vec<Certificate<F>>);

fn chop<F: Field>(m: &ModuleRep<F>, seed: u64) -> Result<Chop<F>> {
    let f = m.field();
    let n = m.dim();
    if n == 0 {
        return Ok((vec![Subspace::zero(f, 0)], Vec::new(), Vec::new()));
    }
    let cert = is_simple(m, seed)?;
    let u = match cert {
        Certificate::NotSimpleWitness(u) => u,
        c => return Ok((vec![Subspace::zero(f, n), Subspace::full(f, n)], vec![m.clone()], vec![c])),
    };
    let (sub, inc) = submodule_restrict(m, &u)?;
    let (quo, _) = quotient_module(m, &u)?;
    let (c1, mut f1, mut k1) = chop(&sub, derive_seed(seed, 1))?;
    let (c2, f2, k2) = chop(&quo, derive_seed(seed, 2))?;
    let mut chain: Vec<Subspace<F>> = c1.iter().map(|s| s.image(&inc)).collect::<Result<_>>()?;
    let keep = u.non_pivots();
    for s in c2.iter().skip(1) {
        let lifts: Vec<Vec<F::Elem>> = s
            .basis_vectors()
            .into_iter()
            .map(|v| {
                let mut w = vec![f.zero(); n];
                for (&c, x) in keep.iter().zip(v) {
                    w[c] = x;
                }
                w
            })
            .collect();
        chain.push(u.join(&Subspace::from_vectors(f, n, &lifts)?)?);
    }
    f1.extend(f2);
    k1.extend(k2);
    Ok((chain, f1, k1))
}

/// Composition series by recursive splitting along certified submodules;
/// factors grouped into isomorphism classes.
pub fn composition_series<F: Field>(m: &ModuleRep<F>, seed: u64) -> Result<CompSeries<F>> {
    require_finite(m.field())?;
    let (chain, factors, certificates) = chop(m, seed)?;
    let factor_class_ids = group_classes(&factors, simples_isomorphic)?;
    Ok(CompSeries { chain, factors, certificates, factor_class_ids })
}

/// Jacobson radical with the simple modules found along the way.
#[derive(Debug, Clone)]
pub struct AlgebraRadical<F: Field> {
    pub ideal: IdealHandle<F>,
    /// one simple module per isomorphism class, in class order
    pub simples: Vec<ModuleRep<F>>,
    pub simple_certificates: Vec<Certificate<F>>,
    pub series: CompSeries<F>,
}

/// Every simple module is a composition factor of the regular module; the
/// radical is the common annihilator of those factors.
pub fn algebra_radical<F: Field>(a: &Arc<AlgebraData<F>>, seed: u64) -> Result<AlgebraRadical<F>> {
    let f = a.field();
    require_finite(f)?;
    let d = a.dim();
    let series = composition_series(&regular_module(a), seed)?;
    let (simples, simple_certificates): (Vec<_>, Vec<_>) = series.representatives().into_iter().unzip();
    let mut rows = Vec::new();
    for s in &simples {
        let n = s.dim();
        for r in 0..n {
            for c in 0..n {
                rows.push((0..d).map(|i| s.action(i).get(r, c).clone()).collect::<Vec<_>>());
            }
        }
    }
    let space = if rows.is_empty() { Subspace::full(f, d) } else { Matrix::from_rows(f, d, &rows)?.kernel() };
    let ideal = IdealHandle::new(a.clone(), space, Sidedness::TwoSided)
        .map_err(|e| Error::InternalInvariantViolation(format!("annihilator is not an ideal: {e}")))?;
    Ok(AlgebraRadical { ideal, simples, simple_certificates, series })
}

/// Least `n >= 1` with `rad^n = 0`.
pub fn radical_nilpotency_index<F: Field>(rad: &IdealHandle<F>) -> Result<usize> {
    rad.nilpotency_index()?.ok_or(Error::NotNilpotent)
}

/// Whether two simple modules are isomorphic; both are certified first.
pub fn iso_simple<F: Field>(s: &ModuleRep<F>, t: &ModuleRep<F>, seed: u64) -> Result<bool> {
    s.same_algebra_as(t)?;
    for m in [s, t] {
        if m.is_zero() || !is_simple(m, seed)?.proves_simple() {
            return Err(Error::NotCertifiedSimple);
        }
    }
    simples_isomorphic(s, t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoResult<F: Field> {
    Isomorphic(Matrix<F>),
    NotIsomorphic(String),
    Unknown,
}

/// Decides isomorphism where a certificate settles it (dimension or Hom
/// asymmetry, simple or indecomposable modules); otherwise searches random
/// homomorphisms for an invertible one.
pub fn iso_modules<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>, seed: u64, budget: usize) -> Result<IsoResult<F>> {
    m.same_algebra_as(n)?;
    let f = m.field();
    if m.dim() != n.dim() {
        return Ok(IsoResult::NotIsomorphic(format!("dimensions differ: {} vs {}", m.dim(), n.dim())));
    }
    if m.is_zero() {
        return Ok(IsoResult::Isomorphic(Matrix::zeros(f, 0, 0)));
    }
    let h_mn = hom_basis(m, n)?;
    let h_nm = hom_basis(n, m)?;
    if h_mn.dim() != h_nm.dim() {
        return Ok(IsoResult::NotIsomorphic(format!(
            "hom dimensions differ: {} vs {}",
            h_mn.dim(),
            h_nm.dim()
        )));
    }
    if h_mn.is_empty() {
        return Ok(IsoResult::NotIsomorphic("no nonzero homomorphisms".into()));
    }
    for x in h_mn.basis() {
        if !f.is_zero(&x.determinant()?) {
            return Ok(IsoResult::Isomorphic(x.clone()));
        }
    }
    if require_finite(f).is_ok() {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 0x69736f));
        for _ in 0..budget {
            let c: Vec<F::Elem> = (0..h_mn.dim()).map(|_| f.random(&mut rng)).collect();
            let x = h_mn.combine(f, &c);
            if !f.is_zero(&x.determinant()?) {
                return Ok(IsoResult::Isomorphic(x));
            }
        }
        let sm = is_simple(m, seed)?;
        let sn = is_simple(n, seed)?;
        if sm.proves_simple() && sn.proves_simple() {
            return Ok(IsoResult::NotIsomorphic("simple modules with no invertible map".into()));
        }
        if is_indecomposable(m, seed)?.proves_indecomposable() && is_indecomposable(n, seed)?.proves_indecomposable() {
            return Ok(match iso_indecomposable(m, n)? {
                Some(x) => IsoResult::Isomorphic(x),
                None => IsoResult::NotIsomorphic("indecomposable modules with no invertible composite".into()),
            });
        }
    }
    Ok(IsoResult::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_example, ExampleKind};
    use crate::arith::PrimeField;
    use crate::module::test_util::*;
    use crate::module::{direct_sum, is_invariant};

    fn check_series(m: &ModuleRep<PrimeField>, cs: &CompSeries<PrimeField>) {
        assert_eq!(cs.chain.len(), cs.factors.len() + 1);
        assert!(cs.chain[0].is_zero());
        assert!(cs.chain.last().unwrap().is_full());
        for w in cs.chain.windows(2) {
            assert!(w[0].is_subspace_of(&w[1]) && w[0].dim() < w[1].dim());
        }
        for (j, s) in cs.chain.iter().enumerate() {
            assert!(is_invariant(m, s), "chain member {j} not invariant");
        }
        for (fac, cert) in cs.factors.iter().zip(&cs.certificates) {
            cert.verify(fac).unwrap();
        }
        for j in 1..cs.chain.len() {
            assert_eq!(cs.factors[j - 1].dim(), cs.chain[j].dim() - cs.chain[j - 1].dim());
        }
    }

    #[test]
    fn regular_ut2() {
        let reg = regular_module(&ut2());
        let cs = composition_series(&reg, 0).unwrap();
        check_series(&reg, &cs);
        assert_eq!(cs.length(), 3);
        // S1 (e11 acts as 1) twice, S2 (e22 acts as 1) once
        let reps = cs.representatives();
        assert_eq!(reps.len(), 2);
        assert_eq!(reps[0].0.action(0).get(0, 0), &1);
        assert_eq!(reps[1].0.action(2).get(0, 0), &1);
        assert_eq!(cs.multiplicities(), BTreeMap::from([(0, 2), (1, 1)]));
    }

    #[test]
    fn simple_series() {
        let (p1, _, _) = ut2_modules();
        let cs = composition_series(&p1, 0).unwrap();
        assert_eq!(cs.chain.len(), 2);
        assert_eq!(cs.factors.len(), 1);
    }

    #[test]
    fn full_matrix_regular() {
        let f3 = PrimeField::new(3).unwrap();
        let a = build_example(&ExampleKind::FullMatrix(2), f3).unwrap().shared();
        let reg = regular_module(&a);
        let cs = composition_series(&reg, 0).unwrap();
        check_series(&reg, &cs);
        assert_eq!(cs.factors.iter().map(|m| m.dim()).collect::<Vec<_>>(), vec![2, 2]);
        assert_eq!(cs.factor_class_ids, vec![0, 0]);
    }

    #[test]
    fn radical_examples() {
        let r = algebra_radical(&ut2(), 0).unwrap();
        assert_eq!(r.ideal.space(), &span(3, &[&[0, 1, 0]]));
        assert_eq!(r.simples.iter().map(|s| s.dim()).collect::<Vec<_>>(), vec![1, 1]);
        assert_eq!(radical_nilpotency_index(&r.ideal).unwrap(), 2);

        let f3 = PrimeField::new(3).unwrap();
        let c3 = build_example(&ExampleKind::CyclicGroup(3), f3).unwrap().shared();
        let r = algebra_radical(&c3, 0).unwrap();
        assert_eq!(r.ideal.dim(), 2);
        assert_eq!(r.simples.len(), 1);
        assert_eq!(r.simples[0].dim(), 1);
        assert_eq!(radical_nilpotency_index(&r.ideal).unwrap(), 3);

        let m2 = build_example(&ExampleKind::FullMatrix(2), f3).unwrap().shared();
        let r = algebra_radical(&m2, 0).unwrap();
        assert!(r.ideal.is_zero());
        assert_eq!(radical_nilpotency_index(&r.ideal).unwrap(), 1);

        let f5 = PrimeField::new(5).unwrap();
        let t3 = build_example(&ExampleKind::TruncatedPoly(3), f5).unwrap().shared();
        let r = algebra_radical(&t3, 0).unwrap();
        assert_eq!(radical_nilpotency_index(&r.ideal).unwrap(), 3);
    }

    #[test]
    fn iso_simple_examples() {
        let (p1, p2, s2) = ut2_modules();
        assert!(iso_simple(&p1, &p1, 0).unwrap());
        assert!(!iso_simple(&p1, &s2, 0).unwrap());
        assert_eq!(iso_simple(&p1, &p2, 0).unwrap_err(), Error::NotCertifiedSimple);
    }

    #[test]
    fn iso_simple_change_of_basis() {
        let f3 = PrimeField::new(3).unwrap();
        let a = build_example(&ExampleKind::FullMatrix(2), f3).unwrap().shared();
        let reg = regular_module(&a);
        let c1 = Subspace::from_vectors(f3, 4, &[vec![1, 0, 0, 0], vec![0, 0, 1, 0]]).unwrap();
        let c2 = Subspace::from_vectors(f3, 4, &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]).unwrap();
        let (s, _) = submodule_restrict(&reg, &c1).unwrap();
        let (t, _) = submodule_restrict(&reg, &c2).unwrap();
        assert!(iso_simple(&s, &t, 0).unwrap());
    }

    #[test]
    fn iso_modules_examples() {
        let (p1, p2, _) = ut2_modules();
        assert!(matches!(iso_modules(&p2, &p2, 0, 8).unwrap(), IsoResult::Isomorphic(_)));
        assert!(matches!(iso_modules(&p1, &p2, 0, 8).unwrap(), IsoResult::NotIsomorphic(_)));
        let a = direct_sum(&p1, &p2).unwrap();
        let b = regular_module(&ut2());
        assert!(matches!(iso_modules(&a, &b, 0, 8).unwrap(), IsoResult::Isomorphic(_)));
    }
}
