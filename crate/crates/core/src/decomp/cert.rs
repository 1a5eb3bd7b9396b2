use std::sync::Arc;

use super::indecomp::{local_checks, LocalChecks};
use super::simple::{verify_exhaustive, verify_norton};
use crate::algebra::{algebra_from_endos, quotient_algebra, IdealHandle, Sidedness};
use crate::arith::{Field, Poly};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::module::{
    hom_basis, ideal_action, is_invariant, quotient_module, EndoMatrix, ModuleRep, ProjectiveSection,
    ProjectivityRefutation,
};

/// Evidence for a claim about a module; [`Certificate::verify`] re-checks it
/// from the payload alone, without search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate<F: Field> {
    /// `kernel = ker factor(rho(element))`; every point of `kernel`
    /// generates the module and `dual_vector`, a kernel vector of the
    /// transposed matrix, generates the transpose module.
    SimpleByNorton { element: Vec<F::Elem>, factor: Poly<F>, kernel: Subspace<F>, dual_vector: Vec<F::Elem> },
    /// Every one of the `points` 1-dimensional subspaces generates.
    SimpleByExhaustiveSpin { points: u64 },
    /// A nilpotent two-sided ideal of `End(m)`, given as endomorphisms, with
    /// field quotient.
    IndecomposableByLocalEnd { radical: Vec<Matrix<F>> },
    /// A nilpotent two-sided ideal `I` of the algebra with `m / I m` simple,
    /// so `I m` is the unique maximal submodule.
    IndecomposableBySimpleTop { ideal: Subspace<F>, top: Box<Certificate<F>> },
    ProjectiveBySection(ProjectiveSection<F>),
    NotProjectiveWitness(ProjectivityRefutation<F>),
    NotSimpleWitness(Subspace<F>),
    /// An idempotent endomorphism other than 0 and 1.
    DecomposableWitness(EndoMatrix<F>),
}

impl<F: Field> Certificate<F> {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::SimpleByNorton { .. } => "SimpleByNorton",
            Certificate::SimpleByExhaustiveSpin { .. } => "SimpleByExhaustiveSpin",
            Certificate::IndecomposableByLocalEnd { .. } => "IndecomposableByLocalEnd",
            Certificate::IndecomposableBySimpleTop { .. } => "IndecomposableBySimpleTop",
            Certificate::ProjectiveBySection(_) => "ProjectiveBySection",
            Certificate::NotProjectiveWitness(_) => "NotProjectiveWitness",
            Certificate::NotSimpleWitness(_) => "NotSimpleWitness",
            Certificate::DecomposableWitness(_) => "DecomposableWitness",
        }
    }

    pub fn proves_simple(&self) -> bool {
        matches!(self, Certificate::SimpleByNorton { .. } | Certificate::SimpleByExhaustiveSpin { .. })
    }

    pub fn proves_indecomposable(&self) -> bool {
        self.proves_simple()
            || matches!(
                self,
                Certificate::IndecomposableByLocalEnd { .. } | Certificate::IndecomposableBySimpleTop { .. }
            )
    }

    /// Re-checks the claim for `m`.
    pub fn verify(&self, m: &ModuleRep<F>) -> Result<()> {
        let reject = |s: &str| Err(Error::CertificateRejected(s.into()));
        match self {
            Certificate::SimpleByNorton { element, factor, kernel, dual_vector } => {
                verify_norton(m, element, factor, kernel, dual_vector)
            }
            Certificate::SimpleByExhaustiveSpin { .. } => verify_exhaustive(m),
            Certificate::IndecomposableByLocalEnd { radical } => verify_local_end(m, radical),
            Certificate::IndecomposableBySimpleTop { ideal, top } => {
                if m.is_zero() {
                    return reject("zero module");
                }
                if !top.proves_simple() {
                    return reject("top certificate does not prove simplicity");
                }
                let i = IdealHandle::new(m.algebra().clone(), ideal.clone(), Sidedness::TwoSided)
                    .map_err(|_| Error::CertificateRejected("not a two-sided ideal".into()))?;
                if i.nilpotency_index()?.is_none() {
                    return reject("ideal is not nilpotent");
                }
                let im = ideal_action(&i, m)?;
                let (q, _) = quotient_module(m, &im)?;
                if q.is_zero() {
                    return reject("top is zero");
                }
                top.verify(&q)
            }
            Certificate::ProjectiveBySection(s) => s.verify(m),
            Certificate::NotProjectiveWitness(r) => r.verify(m),
            Certificate::NotSimpleWitness(s) => {
                if s.ambient_dim() != m.dim() || s.is_zero() || s.is_full() {
                    return reject("subspace is not proper and nonzero");
                }
                if !is_invariant(m, s) {
                    return reject("subspace is not a submodule");
                }
                Ok(())
            }
            Certificate::DecomposableWitness(e) => {
                let e = EndoMatrix::new(m, e.matrix().clone()).map_err(|_| Error::CertificateRejected("not an endomorphism".into()))?;
                let x = e.matrix();
                if x.mul(x)? != *x {
                    return reject("not idempotent");
                }
                if x.is_zero() || x.is_identity() {
                    return reject("trivial idempotent");
                }
                Ok(())
            }
        }
    }
}

fn verify_local_end<F: Field>(m: &ModuleRep<F>, radical: &[Matrix<F>]) -> Result<()> {
    let reject = |s: &str| Err(Error::CertificateRejected(s.into()));
    if m.is_zero() {
        return reject("zero module");
    }
    for r in radical {
        if !m.intertwines(m, r) {
            return reject("radical element is not an endomorphism");
        }
    }
    let hom = hom_basis(m, m)?;
    let (e, emb) = algebra_from_endos(hom.basis())?;
    let e = Arc::new(e);
    let coords: Vec<Vec<F::Elem>> =
        radical.iter().map(|r| emb.coords_of(r).expect("endomorphisms lie in the span")).collect();
    let space = Subspace::from_vectors(m.field(), e.dim(), &coords)?;
    let ideal = match IdealHandle::new(e.clone(), space, Sidedness::TwoSided) {
        Ok(i) => i,
        Err(_) => return reject("not a two-sided ideal of the endomorphism algebra"),
    };
    if ideal.nilpotency_index()?.is_none() {
        return reject("ideal is not nilpotent");
    }
    let (d, _) = match quotient_algebra(&e, &ideal) {
        Ok(q) => q,
        Err(_) => return reject("ideal is the whole endomorphism algebra"),
    };
    let LocalChecks { commutative, frobenius_injective, fixed_dim } = local_checks(&d)?;
    if !(commutative && frobenius_injective && fixed_dim == 1) {
        return reject("quotient is not a field");
    }
    Ok(())
}
