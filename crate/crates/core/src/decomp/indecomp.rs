use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::series::{algebra_radical, group_classes};
use super::{derive_seed, is_simple, Certificate};
use crate::algebra::{quotient_algebra, AlgebraData, IdealHandle, Side};
use crate::arith::{require_finite, Field, Poly};
use crate::error::{Error, Result};
use crate::linalg::{apply_poly, min_poly, Matrix, Subspace};
use crate::module::{
    end_algebra, fitting_split, hom_basis, ideal_action, quotient_module, submodule_restrict, EndoMatrix, ModuleRep,
};

const IDEMPOTENT_TRIES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct LocalChecks {
    pub commutative: bool,
    pub frobenius_injective: bool,
    /// dimension of the fixed space of `x -> x^p`
    pub fixed_dim: usize,
}

impl LocalChecks {
    pub fn is_field(&self) -> bool {
        self.commutative && self.frobenius_injective && self.fixed_dim == 1
    }
}

fn frobenius<F: Field>(d: &AlgebraData<F>) -> Result<Matrix<F>> {
    let p = require_finite(d.field())?;
    let cols: Vec<_> = (0..d.dim()).map(|i| d.pow(&d.basis_vector(i), p)).collect();
    Matrix::from_columns(d.field(), d.dim(), &cols)
}

/// A finite commutative algebra is a field iff Frobenius is injective and
/// fixes only the prime field.
pub(crate) fn local_checks<F: Field>(d: &AlgebraData<F>) -> Result<LocalChecks> {
    if !d.is_commutative() {
        return Ok(LocalChecks { commutative: false, frobenius_injective: false, fixed_dim: 0 });
    }
    let phi = frobenius(d)?;
    let fixed = phi.sub(&Matrix::identity(d.field(), d.dim()))?.kernel();
    Ok(LocalChecks { commutative: true, frobenius_injective: phi.rank() == d.dim(), fixed_dim: fixed.dim() })
}

/// A nontrivial idempotent of a semisimple algebra that is not a field.
pub fn find_idempotent<F: Field>(d: &AlgebraData<F>, seed: u64) -> Result<Vec<F::Elem>> {
    let f = d.field();
    require_finite(f)?;
    let unit = d.unit().to_vec();
    let is_scalar = |x: &[F::Elem]| Subspace::from_vectors(f, d.dim(), &[unit.clone(), x.to_vec()]).map(|s| s.dim() <= 1);
    if d.is_commutative() {
        let fixed = frobenius(d)?.sub(&Matrix::identity(f, d.dim()))?.kernel();
        for x in fixed.basis_vectors() {
            if is_scalar(&x)? {
                continue;
            }
            // x^p = x, so the minimal polynomial splits into distinct linear factors
            let lx = d.mult_operator(&x, Side::Left)?;
            let roots: Vec<F::Elem> = f
                .factor_poly(&min_poly(&lx)?, derive_seed(seed, 1))?
                .into_iter()
                .map(|(g, _)| f.neg(&g.coeff(0)))
                .collect();
            let mut ell = Poly::one(f);
            for r in &roots[1..] {
                let c = f.inv(&f.sub(&roots[0], r))?;
                ell = ell.mul(&Poly::linear(f, r)).scale(&c);
            }
            return Ok(apply_poly(&lx, &ell, &unit));
        }
        return Err(Error::InternalInvariantViolation("semisimple commutative algebra is a field".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 2));
    for attempt in 0..IDEMPOTENT_TRIES {
        let x: Vec<F::Elem> = (0..d.dim()).map(|_| f.random(&mut rng)).collect();
        let lx = d.mult_operator(&x, Side::Left)?;
        let mp = min_poly(&lx)?;
        let factors = f.factor_poly(&mp, derive_seed(seed, 16 + attempt as u64))?;
        if factors.len() < 2 {
            continue;
        }
        let g = factors[0].0.pow(factors[0].1 as u64);
        let h = mp.exact_div(&g);
        let (_, u, _) = g.ext_gcd(&h);
        // u g = 1 mod h and 0 mod g
        let ug = u.mul(&g).rem(&mp)?;
        return Ok(apply_poly(&lx, &ug, &unit));
    }
    Err(Error::SearchBudgetExceeded(format!("no splitting element in {IDEMPOTENT_TRIES} samples")))
}

/// Lifts an endomorphism idempotent modulo the nilpotent span `radical`
/// (`radical^nu = 0`) to a true idempotent by `e -> 3e^2 - 2e^3`.
pub fn lift_idempotent<F: Field>(
    m: &ModuleRep<F>,
    radical: &[Matrix<F>],
    nu: usize,
    e_bar: &Matrix<F>,
) -> Result<EndoMatrix<F>> {
    let f = m.field();
    let e = EndoMatrix::new(m, e_bar.clone())?.into_matrix();
    let defect = e.mul(&e)?.sub(&e)?;
    let n2 = m.dim() * m.dim();
    let rad = Subspace::from_vectors(f, n2, &radical.iter().map(|r| r.flatten()).collect::<Vec<_>>())?;
    if !rad.contains(&defect.flatten()) {
        return Err(Error::NotApproxIdempotent);
    }
    let rounds = nu.max(1).next_power_of_two().trailing_zeros() as usize + 1;
    let (three, two) = (f.from_i64(3), f.from_i64(2));
    let mut e = e;
    for _ in 0..rounds {
        let e2 = e.mul(&e)?;
        let e3 = e2.mul(&e)?;
        e = e2.scale(&three).sub(&e3.scale(&two))?;
    }
    if e.mul(&e)? != e {
        return Err(Error::NotApproxIdempotent);
    }
    EndoMatrix::new(m, e)
}

/// Local endomorphism algebra, or a nontrivial idempotent endomorphism.
pub fn is_indecomposable<F: Field>(m: &ModuleRep<F>, seed: u64) -> Result<Certificate<F>> {
    let f = m.field();
    require_finite(f)?;
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let (e, hom) = end_algebra(m)?;
    let e = Arc::new(e);
    let rad = algebra_radical(&e, derive_seed(seed, 11))?;
    let rad_mats: Vec<Matrix<F>> =
        rad.ideal.space().basis_vectors().iter().map(|c| hom.combine(f, c)).collect();
    let (d, _) = quotient_algebra(&e, &rad.ideal)?;
    if local_checks(&d)?.is_field() {
        return Ok(Certificate::IndecomposableByLocalEnd { radical: rad_mats });
    }
    let e_d = find_idempotent(&d, derive_seed(seed, 12))?;
    let mut coords = vec![f.zero(); e.dim()];
    for (&c, x) in rad.ideal.space().non_pivots().iter().zip(e_d) {
        coords[c] = x;
    }
    let nu = rad.ideal.nilpotency_index()?.ok_or(Error::NotNilpotent)?;
    let idem = lift_idempotent(m, &rad_mats, nu, &hom.combine(f, &coords))?;
    Ok(Certificate::DecomposableWitness(idem))
}

/// Tries `m / I m` simple for the nilpotent ideal `rad` first, then falls
/// back to [`is_indecomposable`].
pub fn is_indecomposable_with_radical<F: Field>(
    m: &ModuleRep<F>,
    rad: &IdealHandle<F>,
    seed: u64,
) -> Result<Certificate<F>> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let im = ideal_action(rad, m)?;
    if !im.is_full() {
        let (top, _) = quotient_module(m, &im)?;
        let cert = is_simple(&top, derive_seed(seed, 13))?;
        if cert.proves_simple() {
            return Ok(Certificate::IndecomposableBySimpleTop { ideal: rad.space().clone(), top: Box::new(cert) });
        }
    }
    is_indecomposable(m, seed)
}

/// For indecomposable `m`: an isomorphism `m -> n`, found as a basis map
/// `phi` whose composite with some basis map `n -> m` is invertible.
pub fn iso_indecomposable<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>) -> Result<Option<Matrix<F>>> {
    m.same_algebra_as(n)?;
    if m.dim() != n.dim() {
        return Ok(None);
    }
    let h_mn = hom_basis(m, n)?;
    let h_nm = hom_basis(n, m)?;
    let f = m.field();
    for phi in h_mn.basis() {
        for psi in h_nm.basis() {
            if !f.is_zero(&psi.mul(phi)?.determinant()?) {
                return Ok(Some(phi.clone()));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone)]
pub struct Summand<F: Field> {
    pub module: ModuleRep<F>,
    /// columns: basis of the summand inside the decomposed module
    pub inclusion: Matrix<F>,
    pub embedding: Subspace<F>,
    pub certificate: Certificate<F>,
}

#[derive(Debug, Clone)]
pub struct DecompositionReport<F: Field> {
    pub summands: Vec<Summand<F>>,
    /// isomorphism class of each summand, ordered by dimension then first occurrence
    pub class_ids: Vec<usize>,
}

impl<F: Field> DecompositionReport<F> {
    pub fn class_count(&self) -> usize {
        self.class_ids.iter().max().map_or(0, |m| m + 1)
    }
}

fn split_rec<F: Field>(
    m: &ModuleRep<F>,
    to_root: Matrix<F>,
    seed: u64,
    rad: Option<&IdealHandle<F>>,
    out: &mut Vec<Summand<F>>,
) -> Result<()> {
    let cert = match rad {
        Some(r) => is_indecomposable_with_radical(m, r, seed)?,
        None => is_indecomposable(m, seed)?,
    };
    let idem = match cert {
        Certificate::DecomposableWitness(e) => e,
        certificate => {
            let embedding = to_root.column_space();
            out.push(Summand { module: m.clone(), inclusion: to_root, embedding, certificate });
            return Ok(());
        }
    };
    let (k, i) = fitting_split(m, &idem)?;
    for (tag, s) in [(1, i), (2, k)] {
        let (sub, inc) = submodule_restrict(m, &s)?;
        split_rec(&sub, to_root.mul(&inc)?, derive_seed(seed, tag), rad, out)?;
    }
    Ok(())
}

pub(crate) fn decompose_with<F: Field>(
    m: &ModuleRep<F>,
    seed: u64,
    rad: Option<&IdealHandle<F>>,
) -> Result<DecompositionReport<F>> {
    require_finite(m.field())?;
    if m.is_zero() {
        return Ok(DecompositionReport { summands: Vec::new(), class_ids: Vec::new() });
    }
    let mut summands = Vec::new();
    split_rec(m, Matrix::identity(m.field(), m.dim()), seed, rad, &mut summands)?;
    let mods: Vec<ModuleRep<F>> = summands.iter().map(|s| s.module.clone()).collect();
    let class_ids = group_classes(&mods, |a, b| Ok(iso_indecomposable(a, b)?.is_some()))?;
    Ok(DecompositionReport { summands, class_ids })
}

/// Splits `m` into certified indecomposable summands by idempotents.
pub fn indecomposable_decomposition<F: Field>(m: &ModuleRep<F>, seed: u64) -> Result<DecompositionReport<F>> {
    decompose_with(m, seed, None)
}
