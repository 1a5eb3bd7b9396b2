#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use pimtop::algebra::{build_example, AlgebraData, ExampleKind};
use pimtop::arith::PrimeField;
use pimtop::decomp::{indecomposable_decomposition, is_simple};
use pimtop::linalg::Subspace;
use pimtop::module::{ideal_action, quotient_module, submodule_restrict, ModuleRep};
use pimtop::algebra::IdealHandle;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const PRIMES: [u64; 4] = [2, 3, 5, 7];

pub type Alg = Arc<AlgebraData<PrimeField>>;
pub type Module = ModuleRep<PrimeField>;

pub fn alg(kind: &ExampleKind, p: u64) -> Alg {
    build_example(kind, PrimeField::new(p).unwrap()).unwrap().shared()
}

/// Twenty direct products drawn from a fixed pool with a fixed seed.
pub fn product_kinds() -> Vec<ExampleKind> {
    use ExampleKind::*;
    let pool = [
        UpperTriangular(2),
        UpperTriangular(3),
        FullMatrix(2),
        CyclicGroup(2),
        CyclicGroup(3),
        CyclicGroup(4),
        TruncatedPoly(2),
        TruncatedPoly(3),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut out: Vec<ExampleKind> = Vec::new();
    while out.len() < 20 {
        let a = pool[rng.gen_range(0..pool.len())].clone();
        let b = pool[rng.gen_range(0..pool.len())].clone();
        let mut k = DirectProduct(Box::new(a), Box::new(b));
        if rng.gen_bool(0.25) {
            let c = pool[rng.gen_range(0..4)].clone();
            k = DirectProduct(Box::new(k), Box::new(c));
        }
        if !out.contains(&k) {
            out.push(k);
        }
    }
    out
}

pub fn base_kinds() -> Vec<ExampleKind> {
    use ExampleKind::*;
    let mut v = vec![UpperTriangular(2), UpperTriangular(3), FullMatrix(2), FullMatrix(3)];
    v.extend((2..=6).map(CyclicGroup));
    v.extend((2..=5).map(TruncatedPoly));
    v
}

/// Every (kind, prime) pair of the corpus.
pub fn corpus() -> Vec<(ExampleKind, u64)> {
    let mut kinds = base_kinds();
    kinds.extend(product_kinds());
    let mut out = Vec::new();
    for k in kinds {
        for p in PRIMES {
            out.push((k.clone(), p));
        }
    }
    out
}

pub fn small_enough(kind: &ExampleKind, p: u64) -> bool {
    (p as f64).powi(kind.dim() as i32) <= 4096.0
}

// ---- brute-force oracle ------------------------------------------------

/// All nonzero vectors of F_p^n.
pub fn all_vectors(p: u32, n: usize) -> Vec<Vec<u32>> {
    let total = (p as u64).pow(n as u32);
    (1..total)
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let d = (x % p as u64) as u32;
                    x /= p as u64;
                    d
                })
                .collect()
        })
        .collect()
}

/// Closure of `v` under every basis action matrix, one vector at a time.
pub fn naive_spin(m: &Module, v: &[u32]) -> Subspace<PrimeField> {
    let f = m.field();
    let mut span = Subspace::from_vectors(f, m.dim(), &[v.to_vec()]).unwrap();
    loop {
        let mut grew = false;
        for b in span.basis_vectors() {
            for x in m.actions() {
                let w = x.apply(&b);
                if !span.contains(&w) {
                    span = span.join(&Subspace::from_vectors(f, m.dim(), &[w]).unwrap()).unwrap();
                    grew = true;
                }
            }
        }
        if !grew {
            return span;
        }
    }
}

/// Every submodule of `m`, by spinning every vector and closing under sums.
pub fn submodule_lattice(m: &Module) -> Vec<Subspace<PrimeField>> {
    let f = m.field();
    let n = m.dim();
    let mut cyclic: Vec<Subspace<PrimeField>> = Vec::new();
    for v in all_vectors(f.p(), n) {
        let s = naive_spin(m, &v);
        if !cyclic.contains(&s) {
            cyclic.push(s);
        }
    }
    let mut all = vec![Subspace::zero(f, n)];
    all.extend(cyclic.iter().cloned());
    let mut i = 0;
    while i < all.len() {
        for c in &cyclic {
            let j = all[i].join(c).unwrap();
            if !all.contains(&j) {
                all.push(j);
            }
        }
        i += 1;
    }
    all.sort_by_key(|s| s.dim());
    all
}

fn brute_annihilator(a: &Alg, pred: impl Fn(&[u32]) -> bool) -> Subspace<PrimeField> {
    let f = a.field();
    let hits: Vec<Vec<u32>> = all_vectors(f.p(), a.dim()).into_iter().filter(|x| pred(x)).collect();
    Subspace::from_vectors(f, a.dim(), &hits).unwrap()
}

pub struct Oracle {
    pub lattice_dims: BTreeSet<usize>,
    pub radical: Subspace<PrimeField>,
    /// one entry per simple class, sorted
    pub simple_dims: Vec<usize>,
    /// one entry per PIM class, sorted
    pub pim_dims: Vec<usize>,
    pub submodule_count: usize,
}

fn split_brute(
    u: &Subspace<PrimeField>,
    lattice: &[Subspace<PrimeField>],
    out: &mut Vec<Subspace<PrimeField>>,
) {
    let inside: Vec<&Subspace<PrimeField>> =
        lattice.iter().filter(|s| !s.is_zero() && s.dim() < u.dim() && s.is_subspace_of(u)).collect();
    for v in &inside {
        if 2 * v.dim() > u.dim() {
            break;
        }
        for w in inside.iter().filter(|w| w.dim() == u.dim() - v.dim()) {
            if v.join(w).unwrap().dim() == u.dim() {
                split_brute(v, lattice, out);
                split_brute(w, lattice, out);
                return;
            }
        }
    }
    out.push(u.clone());
}

/// Structure of the regular module of `a` by exhaustive enumeration.
pub fn oracle(a: &Alg, reg: &Module) -> Oracle {
    let f = a.field();
    let d = a.dim();
    let lattice = submodule_lattice(reg);
    let full = Subspace::full(f, d);
    let proper: Vec<&Subspace<PrimeField>> = lattice.iter().filter(|s| !s.is_full()).collect();
    let maximal: Vec<&Subspace<PrimeField>> = proper
        .iter()
        .filter(|s| !proper.iter().any(|t| t.dim() > s.dim() && s.is_subspace_of(t)))
        .copied()
        .collect();
    let mut radical = full.clone();
    for m in &maximal {
        radical = radical.meet(m).unwrap();
    }

    // simple modules A/m, identified by their annihilators
    let mut anns: Vec<Subspace<PrimeField>> = Vec::new();
    let mut simple_dims = Vec::new();
    for m in &maximal {
        let ann = brute_annihilator(a, |x| (0..d).all(|j| m.contains(&a.mul(x, &a.basis_vector(j)))));
        if !anns.contains(&ann) {
            anns.push(ann);
            simple_dims.push(d - m.dim());
        }
    }
    simple_dims.sort();

    // indecomposable summands of A, grouped by the annihilator of their top
    let mut summands = Vec::new();
    split_brute(&full, &lattice, &mut summands);
    let mut top_anns: Vec<Subspace<PrimeField>> = Vec::new();
    let mut pim_dims = Vec::new();
    for u in &summands {
        let ju: Vec<Vec<u32>> = radical
            .basis_vectors()
            .iter()
            .flat_map(|j| u.basis_vectors().into_iter().map(move |v| (j.clone(), v)))
            .map(|(j, v)| a.mul(&j, &v))
            .collect();
        let ju = Subspace::from_vectors(f, d, &ju).unwrap();
        let ann = brute_annihilator(a, |x| u.basis_vectors().iter().all(|v| ju.contains(&a.mul(x, v))));
        if !top_anns.contains(&ann) {
            top_anns.push(ann);
            pim_dims.push(u.dim());
        }
    }
    pim_dims.sort();

    Oracle {
        lattice_dims: lattice.iter().map(|s| s.dim()).collect(),
        radical,
        simple_dims,
        pim_dims,
        submodule_count: lattice.len(),
    }
}

// ---- fast side for submodule dimensions ---------------------------------

fn minkowski(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect()
}

/// Dimensions of all submodules of `m`: additive over direct sums, and for
/// a module with simple top the proper submodules are those of its radical.
/// `None` when an indecomposable piece has a non-simple top.
pub fn submodule_dims_fast(m: &Module, rad: &IdealHandle<PrimeField>, seed: u64) -> Option<BTreeSet<usize>> {
    let mut acc: BTreeSet<usize> = [0].into();
    if m.is_zero() {
        return Some(acc);
    }
    let report = indecomposable_decomposition(m, seed).unwrap();
    for s in &report.summands {
        let n = &s.module;
        let jn = ideal_action(rad, n).unwrap();
        let (top, _) = quotient_module(n, &jn).unwrap();
        if !is_simple(&top, seed).unwrap().proves_simple() {
            return None;
        }
        let (inner, _) = submodule_restrict(n, &jn).unwrap();
        let mut dims = submodule_dims_fast(&inner, rad, seed.wrapping_add(1))?;
        dims.insert(n.dim());
        acc = minkowski(&acc, &dims);
    }
    Some(acc)
}
