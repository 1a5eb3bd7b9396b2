use super::ops::{free_module, generating_set};
use super::{hom_basis, ModuleRep};
use crate::arith::Field;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Evidence that `m` is a direct summand of a free module: a module map
/// `section: m -> A^g` with `cover * section = id`, where `cover` sends the
/// unit of the `j`-th copy to `generators[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveSection<F: Field> {
    pub generators: Vec<Vec<F::Elem>>,
    pub section: Matrix<F>,
}

/// No section exists: `witness` is orthogonal to `cover * h` for every
/// `h` in `Hom(m, A^g)` but not to the identity (matrices paired entrywise).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectivityRefutation<F: Field> {
    pub generators: Vec<Vec<F::Elem>>,
    pub hom_dim: usize,
    pub witness: Vec<F::Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projectivity<F: Field> {
    Projective(ProjectiveSection<F>),
    NotProjective(ProjectivityRefutation<F>),
}

impl<F: Field> Projectivity<F> {
    pub fn is_projective(&self) -> bool {
        matches!(self, Projectivity::Projective(_))
    }
}

/// The epimorphism `A^g -> m`, `(a_1, ..., a_g) -> sum a_j v_j`.
pub fn cover_map<F: Field>(m: &ModuleRep<F>, generators: &[Vec<F::Elem>]) -> Result<Matrix<F>> {
    let d = m.algebra().dim();
    let mut cols = Vec::with_capacity(generators.len() * d);
    for v in generators {
        if v.len() != m.dim() {
            return Err(Error::DimensionMismatch("generator length".into()));
        }
        for i in 0..d {
            cols.push(m.action(i).apply(v));
        }
    }
    Matrix::from_columns(m.field(), m.dim(), &cols)
}

fn pair<F: Field>(f: F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter().zip(b).fold(f.zero(), |acc, (x, y)| f.mul_add(&acc, x, y))
}

pub fn is_projective<F: Field>(m: &ModuleRep<F>) -> Result<Projectivity<F>> {
    let f = m.field();
    let n = m.dim();
    let generators = generating_set(m);
    let free = free_module(m.algebra(), generators.len());
    if n == 0 {
        let section = Matrix::zeros(f, free.dim(), 0);
        return Ok(Projectivity::Projective(ProjectiveSection { generators, section }));
    }
    let pi = cover_map(m, &generators)?;
    let homs = hom_basis(m, &free)?;
    let composed: Vec<Vec<F::Elem>> = homs
        .basis()
        .iter()
        .map(|h| pi.mul(h).map(|x| x.flatten()))
        .collect::<Result<_>>()?;
    let target = Matrix::identity(f, n).flatten();
    if !composed.is_empty() {
        let system = Matrix::from_columns(f, n * n, &composed)?;
        let rhs = Matrix::from_columns(f, n * n, std::slice::from_ref(&target))?;
        if let Ok(c) = system.solve(&rhs) {
            let coeffs = c.column(0);
            let section = homs.combine(f, &coeffs);
            return Ok(Projectivity::Projective(ProjectiveSection { generators, section }));
        }
    }
    // target is outside the span: some annihilator vector sees it
    let span = Matrix::from_rows(f, n * n, &composed)?;
    let witness = span
        .kernel()
        .basis_vectors()
        .into_iter()
        .find(|y| !f.is_zero(&pair(f, y, &target)))
        .ok_or_else(|| Error::InternalInvariantViolation("unsolvable system without a witness".into()))?;
    Ok(Projectivity::NotProjective(ProjectivityRefutation { generators, hom_dim: homs.dim(), witness }))
}

impl<F: Field> ProjectiveSection<F> {
    pub fn verify(&self, m: &ModuleRep<F>) -> Result<()> {
        let reject = |s: &str| Err(Error::CertificateRejected(s.into()));
        let free = free_module(m.algebra(), self.generators.len());
        if self.section.rows() != free.dim() || self.section.cols() != m.dim() {
            return reject("section has the wrong shape");
        }
        if !m.intertwines(&free, &self.section) {
            return reject("section is not a module map");
        }
        let pi = cover_map(m, &self.generators)?;
        if !pi.mul(&self.section)?.is_identity() {
            return reject("cover composed with section is not the identity");
        }
        Ok(())
    }
}

impl<F: Field> ProjectivityRefutation<F> {
    /// Recomputes the homomorphism space and checks the witness against it.
    pub fn verify(&self, m: &ModuleRep<F>) -> Result<()> {
        let reject = |s: &str| Err(Error::CertificateRejected(s.into()));
        let f = m.field();
        let n = m.dim();
        if self.witness.len() != n * n {
            return reject("witness has the wrong length");
        }
        let free = free_module(m.algebra(), self.generators.len());
        let homs = hom_basis(m, &free)?;
        if homs.dim() != self.hom_dim {
            return reject("homomorphism space dimension differs");
        }
        let pi = cover_map(m, &self.generators)?;
        if super::ops::spin(m, &self.generators)?.dim() != n {
            return reject("generators do not generate");
        }
        for h in homs.basis() {
            if !f.is_zero(&pair(f, &self.witness, &pi.mul(h)?.flatten())) {
                return reject("witness is not orthogonal to a composed map");
            }
        }
        if f.is_zero(&pair(f, &self.witness, &Matrix::identity(f, n).flatten())) {
            return reject("witness is orthogonal to the identity");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::regular_module;
    use super::super::test_util::*;
    use super::*;

    #[test]
    fn examples() {
        let reg = regular_module(&ut2());
        let (p1, p2, s2) = ut2_modules();
        for m in [&reg, &p1, &p2] {
            match is_projective(m).unwrap() {
                Projectivity::Projective(s) => s.verify(m).unwrap(),
                other => panic!("expected projective, got {other:?}"),
            }
        }
        match is_projective(&s2).unwrap() {
            Projectivity::NotProjective(r) => r.verify(&s2).unwrap(),
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn tampered_section_rejected() {
        let (p1, _, _) = ut2_modules();
        let Projectivity::Projective(mut s) = is_projective(&p1).unwrap() else { panic!() };
        let f = f5();
        s.section = s.section.scale(&f.from_i64(2));
        assert!(matches!(s.verify(&p1), Err(Error::CertificateRejected(_))));
    }
}
