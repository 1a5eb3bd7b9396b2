use std::ops::ControlFlow;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{derive_seed, Certificate};
use crate::arith::{require_finite, Field, Poly};
use crate::error::{Error, Result};
use crate::linalg::{char_poly, Subspace};
use crate::module::{spin, transpose_module, ModuleRep};

/// Default number of candidate algebra elements examined.
pub const DEFAULT_BUDGET: usize = 64;
/// Largest `p^dim` decided by spinning every vector.
pub const EXHAUSTIVE_LIMIT: u64 = 4096;
/// Largest number of projective points of a kernel checked by the
/// Norton-style test.
pub const NORTON_POINT_CAP: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SimplicityMethod {
    /// Exhaustive spin when `p^dim <= 4096`, Norton-style otherwise.
    #[default]
    Auto,
    Norton,
    Exhaustive,
}

/// The `t`-th candidate algebra element: basis elements first, then
/// pseudo-random combinations drawn from `seed`.
pub struct CandidateStream<F: Field> {
    field: F,
    dim: usize,
    next: usize,
    rng: ChaCha8Rng,
}

impl<F: Field> CandidateStream<F> {
    pub fn new(field: F, dim: usize, seed: u64) -> Self {
        CandidateStream { field, dim, next: 0, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl<F: Field> Iterator for CandidateStream<F> {
    type Item = Vec<F::Elem>;

    fn next(&mut self) -> Option<Vec<F::Elem>> {
        let f = self.field;
        let t = self.next;
        self.next += 1;
        if t < self.dim {
            let mut v = vec![f.zero(); self.dim];
            v[t] = f.one();
            Some(v)
        } else {
            Some((0..self.dim).map(|_| f.random(&mut self.rng)).collect())
        }
    }
}

/// Number of 1-dimensional subspaces of `F_p^k`.
pub(crate) fn point_count(p: u64, k: usize) -> Option<u64> {
    if k == 0 {
        return Some(0);
    }
    let pk = p.checked_pow(k as u32)?;
    Some((pk - 1) / (p - 1))
}

/// Calls `visit` on one representative of every 1-dimensional subspace of
/// the span of `basis`: coefficient vectors whose first nonzero entry is 1,
/// ordered by that position, then lexicographically.
pub(crate) fn for_each_point<F: Field, B>(
    field: F,
    basis: &[Vec<F::Elem>],
    mut visit: impl FnMut(Vec<F::Elem>) -> ControlFlow<B>,
) -> Option<B> {
    let p = field.order().expect("finite field");
    let k = basis.len();
    let n = basis.first().map_or(0, |b| b.len());
    for lead in 0..k {
        let free = k - lead - 1;
        let mut digits = vec![0u64; free];
        loop {
            let mut v = basis[lead].clone();
            for (d, b) in digits.iter().zip(&basis[lead + 1..]) {
                if *d != 0 {
                    let c = field.element(*d);
                    for (o, x) in v.iter_mut().zip(b) {
                        *o = field.mul_add(o, &c, x);
                    }
                }
            }
            debug_assert_eq!(v.len(), n);
            if let ControlFlow::Break(b) = visit(v) {
                return Some(b);
            }
            // next digit string
            let mut i = 0;
            while i < free {
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == free {
                break;
            }
        }
    }
    None
}

fn annihilator_of<F: Field>(s: &Subspace<F>) -> Subspace<F> {
    s.annihilator()
}

pub(crate) enum Probe<F: Field> {
    Submodule { space: Subspace<F>, candidate: usize },
    Norton { element: Vec<F::Elem>, factor: Poly<F>, kernel: Subspace<F>, dual_vector: Vec<F::Elem> },
    Exhausted { tried: usize },
}

/// Examines candidates in order. For each, every factor `f` of the
/// characteristic polynomial of `rho(a)` gives `W = ker f(rho(a))`; basis
/// vectors of `W` are spun in `m` and basis vectors of `ker f(rho(a)^T)` in
/// the transpose. The smallest proper submodule seen for the first candidate
/// producing one is returned. With `norton`, a kernel whose points all
/// generate, together with a generating dual vector, proves simplicity.
pub(crate) fn probe<F: Field>(m: &ModuleRep<F>, seed: u64, budget: usize, norton: bool) -> Result<Probe<F>> {
    let f = m.field();
    let p = require_finite(f)?;
    let n = m.dim();
    let a = m.algebra();
    let dual = if norton || n > 1 { Some(transpose_module(m)) } else { None };
    let stream = CandidateStream::new(f, a.dim(), derive_seed(seed, 0x70726f6265));
    for (t, x) in stream.take(budget).enumerate() {
        let rho = m.act(&x);
        let cp = char_poly(&rho)?;
        let factors = f.factor_poly(&cp, derive_seed(seed, t as u64))?;
        let mut best: Option<Subspace<F>> = None;
        let consider = |s: Subspace<F>, best: &mut Option<Subspace<F>>| {
            if s.dim() > 0 && s.dim() < n && best.as_ref().is_none_or(|b| s.dim() < b.dim()) {
                *best = Some(s);
            }
        };
        let mut norton_hit = None;
        for (g, _) in &factors {
            let gx = rho.eval_poly(g)?;
            let kernel = gx.kernel();
            for v in kernel.basis_vectors() {
                consider(spin(m, &[v])?, &mut best);
            }
            let dual_kernel = gx.transpose().kernel();
            let dual_m = dual.as_ref().expect("built when needed");
            let mut dual_full = None;
            for w in dual_kernel.basis_vectors() {
                let s = spin(dual_m, std::slice::from_ref(&w))?;
                if s.is_full() {
                    dual_full.get_or_insert(w);
                } else {
                    consider(annihilator_of(&s), &mut best);
                }
            }
            if best.is_none() && norton && norton_hit.is_none() {
                let Some(w) = dual_full else { continue };
                match point_count(p, kernel.dim()) {
                    Some(c) if c <= NORTON_POINT_CAP => {}
                    _ => continue,
                }
                let found = for_each_point(f, &kernel.basis_vectors(), |v| {
                    let s = spin(m, &[v]).expect("length");
                    if s.is_full() {
                        ControlFlow::Continue(())
                    } else {
                        ControlFlow::Break(s)
                    }
                });
                match found {
                    Some(s) => consider(s, &mut best),
                    None => norton_hit = Some((g.clone(), kernel, w)),
                }
            }
        }
        if let Some(space) = best {
            return Ok(Probe::Submodule { space, candidate: t });
        }
        if let Some((factor, kernel, dual_vector)) = norton_hit {
            return Ok(Probe::Norton { element: x, factor, kernel, dual_vector });
        }
    }
    Ok(Probe::Exhausted { tried: budget })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubmoduleSearch<F: Field> {
    Found { space: Subspace<F>, candidate: usize },
    Exhausted { tried: usize },
}

/// Searches for a submodule `0 < U < m` among kernels of factors of
/// characteristic polynomials of candidate elements.
pub fn find_proper_submodule<F: Field>(m: &ModuleRep<F>, seed: u64, budget: usize) -> Result<SubmoduleSearch<F>> {
    require_finite(m.field())?;
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    if m.dim() == 1 {
        return Ok(SubmoduleSearch::Exhausted { tried: 0 });
    }
    match probe(m, seed, budget, false)? {
        Probe::Submodule { space, candidate } => Ok(SubmoduleSearch::Found { space, candidate }),
        Probe::Exhausted { tried } => Ok(SubmoduleSearch::Exhausted { tried }),
        Probe::Norton { .. } => unreachable!("norton disabled"),
    }
}

pub fn is_simple<F: Field>(m: &ModuleRep<F>, seed: u64) -> Result<Certificate<F>> {
    is_simple_with(m, seed, SimplicityMethod::Auto, DEFAULT_BUDGET)
}

/// Returns `SimpleByExhaustiveSpin`, `SimpleByNorton` or `NotSimpleWitness`.
pub fn is_simple_with<F: Field>(
    m: &ModuleRep<F>,
    seed: u64,
    method: SimplicityMethod,
    budget: usize,
) -> Result<Certificate<F>> {
    let f = m.field();
    let p = require_finite(f)?;
    let n = m.dim();
    if n == 0 {
        return Err(Error::ZeroModule);
    }
    let small = p.checked_pow(n as u32).is_some_and(|q| q <= EXHAUSTIVE_LIMIT);
    let exhaustive = match method {
        SimplicityMethod::Exhaustive => true,
        SimplicityMethod::Norton => false,
        SimplicityMethod::Auto => small || n == 1,
    };
    if exhaustive {
        return Ok(match exhaustive_spin(m) {
            Some(s) => Certificate::NotSimpleWitness(s),
            None => Certificate::SimpleByExhaustiveSpin { points: point_count(p, n).unwrap_or(u64::MAX) },
        });
    }
    match probe(m, seed, budget, true)? {
        Probe::Submodule { space, .. } => Ok(Certificate::NotSimpleWitness(space)),
        Probe::Norton { element, factor, kernel, dual_vector, .. } => {
            Ok(Certificate::SimpleByNorton { element, factor, kernel, dual_vector })
        }
        Probe::Exhausted { tried } => Err(Error::SearchBudgetExceeded(format!(
            "no decisive candidate among {tried} algebra elements"
        ))),
    }
}

/// First proper submodule spun from a point of `F_p^n`, if any.
pub(crate) fn exhaustive_spin<F: Field>(m: &ModuleRep<F>) -> Option<Subspace<F>> {
    let f = m.field();
    let n = m.dim();
    let basis: Vec<Vec<F::Elem>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
        .collect();
    for_each_point(f, &basis, |v| {
        let s = spin(m, &[v]).expect("length");
        if s.is_full() {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(s)
        }
    })
}

/// Replays a Norton-style simplicity proof.
pub(crate) fn verify_norton<F: Field>(
    m: &ModuleRep<F>,
    element: &[F::Elem],
    factor: &Poly<F>,
    kernel: &Subspace<F>,
    dual_vector: &[F::Elem],
) -> Result<()> {
    let reject = |s: &str| Err(Error::CertificateRejected(s.into()));
    let f = m.field();
    let p = require_finite(f)?;
    if element.len() != m.algebra().dim() || dual_vector.len() != m.dim() {
        return reject("payload has the wrong shape");
    }
    if m.is_zero() {
        return reject("zero module");
    }
    let gx = m.act(element).eval_poly(factor)?;
    if gx.kernel() != *kernel {
        return reject("kernel does not match the factor");
    }
    if kernel.is_zero() {
        return reject("kernel is zero");
    }
    if point_count(p, kernel.dim()).is_none_or(|c| c > 1 << 24) {
        return reject("kernel too large to replay");
    }
    let gt = gx.transpose();
    if dual_vector.iter().all(|x| f.is_zero(x)) || gt.apply(dual_vector).iter().any(|x| !f.is_zero(x)) {
        return reject("dual vector is not a nonzero kernel vector");
    }
    if !spin(&transpose_module(m), &[dual_vector.to_vec()])?.is_full() {
        return reject("dual vector does not generate the transpose module");
    }
    let bad = for_each_point(f, &kernel.basis_vectors(), |v| {
        if spin(m, &[v]).expect("length").is_full() {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(())
        }
    });
    if bad.is_some() {
        return reject("a kernel vector generates a proper submodule");
    }
    Ok(())
}

pub(crate) fn verify_exhaustive<F: Field>(m: &ModuleRep<F>) -> Result<()> {
    let p = require_finite(m.field())?;
    if m.is_zero() {
        return Err(Error::CertificateRejected("zero module".into()));
    }
    if point_count(p, m.dim()).is_none_or(|c| c > 1 << 20) {
        return Err(Error::CertificateRejected("module too large for exhaustive replay".into()));
    }
    match exhaustive_spin(m) {
        None => Ok(()),
        Some(_) => Err(Error::CertificateRejected("a vector generates a proper submodule".into())),
    }
}
