mod common;

use common::*;
use pimtop::algebra::{ExampleKind, Side};
use pimtop::arith::{poly_factor, Field, Poly, PrimeField};
use pimtop::decomp::{composition_series, indecomposable_decomposition, is_simple};
use pimtop::linalg::{Matrix, Subspace};
use pimtop::module::{regular_module, ModuleRep};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 101])
}

fn small_kind() -> impl Strategy<Value = ExampleKind> {
    use ExampleKind::*;
    prop::sample::select(vec![
        UpperTriangular(2),
        UpperTriangular(3),
        FullMatrix(2),
        CyclicGroup(3),
        CyclicGroup(4),
        TruncatedPoly(3),
        DirectProduct(Box::new(UpperTriangular(2)), Box::new(CyclicGroup(2))),
    ])
}

fn random_matrix(f: PrimeField, r: usize, c: usize, rng: &mut ChaCha8Rng) -> Matrix<PrimeField> {
    Matrix::from_vec(f, r, c, (0..r * c).map(|_| f.random(rng)).collect()).unwrap()
}

fn random_invertible(f: PrimeField, n: usize, rng: &mut ChaCha8Rng) -> Matrix<PrimeField> {
    loop {
        let g = random_matrix(f, n, n, rng);
        if g.rank() == n {
            return g;
        }
    }
}

fn conjugate(m: &Module, g: &Matrix<PrimeField>) -> Module {
    let gi = g.inverse().unwrap();
    let action = m.actions().iter().map(|x| g.mul(x).unwrap().mul(&gi).unwrap()).collect();
    ModuleRep::new(m.algebra().clone(), m.dim(), action).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(p in prime(), a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
        let f = PrimeField::new(p).unwrap();
        let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
        if !f.is_zero(&a) {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        } else {
            prop_assert!(f.inv(&a).is_err());
        }
        prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a);
    }

    #[test]
    fn factors_multiply_back(p in prime(), coeffs in prop::collection::vec(-50i64..50, 2..9), seed in any::<u64>()) {
        let f = PrimeField::new(p).unwrap();
        let poly = Poly::from_i64(f, &coeffs);
        prop_assume!(poly.degree().unwrap_or(0) >= 1);
        let factors = poly_factor(&poly, seed).unwrap();
        let mut prod = Poly::one(f);
        for (g, e) in &factors {
            prop_assert!(g.is_monic());
            prop_assert!(pimtop::arith::is_irreducible(g));
            prod = prod.mul(&g.pow(*e as u64));
        }
        prop_assert_eq!(prod, poly.monic());
    }

    #[test]
    fn rank_nullity(p in prime(), r in 1usize..7, c in 1usize..7, seed in any::<u64>()) {
        let f = PrimeField::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(f, r, c, &mut rng);
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.dim(), c);
        for v in k.basis_vectors() {
            prop_assert!(m.apply(&v).iter().all(|x| f.is_zero(x)));
        }
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn meet_join_dimensions(p in prime(), n in 1usize..7, a in 0usize..5, b in 0usize..5, seed in any::<u64>()) {
        let f = PrimeField::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = Subspace::from_vectors(f, n, &random_matrix(f, a, n, &mut rng).row_vecs()).unwrap();
        let w = Subspace::from_vectors(f, n, &random_matrix(f, b, n, &mut rng).row_vecs()).unwrap();
        let (meet, join) = u.meet_join(&w).unwrap();
        prop_assert_eq!(meet.dim() + join.dim(), u.dim() + w.dim());
        prop_assert!(meet.is_subspace_of(&u) && meet.is_subspace_of(&w));
        prop_assert!(u.is_subspace_of(&join) && w.is_subspace_of(&join));
        prop_assert_eq!(meet, u.meet(&w).unwrap());
    }

    #[test]
    fn multiplication_operators_compose(kind in small_kind(), p in prime(), seed in any::<u64>()) {
        let a = alg(&kind, p);
        let f = a.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = a.dim();
        let x: Vec<u32> = (0..d).map(|_| f.random(&mut rng)).collect();
        let y: Vec<u32> = (0..d).map(|_| f.random(&mut rng)).collect();
        let xy = a.mul(&x, &y);
        let lx = a.mult_operator(&x, Side::Left).unwrap();
        let ly = a.mult_operator(&y, Side::Left).unwrap();
        prop_assert_eq!(a.mult_operator(&xy, Side::Left).unwrap(), lx.mul(&ly).unwrap());
        let rx = a.mult_operator(&x, Side::Right).unwrap();
        let ry = a.mult_operator(&y, Side::Right).unwrap();
        prop_assert_eq!(a.mult_operator(&xy, Side::Right).unwrap(), ry.mul(&rx).unwrap());
        prop_assert_eq!(a.mult_operator(a.unit(), Side::Left).unwrap(), Matrix::identity(f, d));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conjugated_modules_keep_their_structure(kind in small_kind(), p in prime(), seed in any::<u64>()) {
        let a = alg(&kind, p);
        let reg = regular_module(&a);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_invertible(a.field(), reg.dim(), &mut rng);
        let m = conjugate(&reg, &g);

        let s0 = composition_series(&reg, seed).unwrap();
        let s1 = composition_series(&m, seed ^ 1).unwrap();
        prop_assert_eq!(s0.length(), s1.length());
        let mut f0: Vec<usize> = s0.factors.iter().map(|x| x.dim()).collect();
        let mut f1: Vec<usize> = s1.factors.iter().map(|x| x.dim()).collect();
        f0.sort();
        f1.sort();
        prop_assert_eq!(f0, f1);
        let mut m0: Vec<usize> = s0.multiplicities().into_values().collect();
        let mut m1: Vec<usize> = s1.multiplicities().into_values().collect();
        m0.sort();
        m1.sort();
        prop_assert_eq!(m0, m1);
        for (x, c) in s1.factors.iter().zip(&s1.certificates) {
            prop_assert!(c.proves_simple());
            c.verify(x).unwrap();
        }

        let d0 = indecomposable_decomposition(&reg, seed).unwrap();
        let d1 = indecomposable_decomposition(&m, seed).unwrap();
        let mut a0: Vec<usize> = d0.summands.iter().map(|s| s.module.dim()).collect();
        let mut a1: Vec<usize> = d1.summands.iter().map(|s| s.module.dim()).collect();
        a0.sort();
        a1.sort();
        prop_assert_eq!(a0, a1);
        prop_assert_eq!(d0.class_count(), d1.class_count());
        let mut total = Subspace::zero(a.field(), m.dim());
        for s in &d1.summands {
            s.certificate.verify(&s.module).unwrap();
            total = total.join(&s.embedding).unwrap();
        }
        prop_assert!(total.is_full());
    }

    #[test]
    fn simplicity_is_invariant_under_conjugation(p in prime(), seed in any::<u64>()) {
        let a = alg(&ExampleKind::FullMatrix(2), p);
        let reg = regular_module(&a);
        let s0 = composition_series(&reg, 0).unwrap();
        let simple = &s0.factors[0];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_invertible(a.field(), simple.dim(), &mut rng);
        let c = is_simple(&conjugate(simple, &g), seed).unwrap();
        prop_assert!(c.proves_simple());
        let bigger = conjugate(&reg, &random_invertible(a.field(), reg.dim(), &mut rng));
        let c = is_simple(&bigger, seed).unwrap();
        prop_assert!(!c.proves_simple());
        c.verify(&bigger).unwrap();
    }
}
