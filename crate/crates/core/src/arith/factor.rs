//! Factorization of univariate polynomials over prime fields: squarefree
//! decomposition, distinct-degree splitting, then Cantor-Zassenhaus
//! equal-degree splitting driven by a seeded ChaCha stream.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Field, PrimeField};
use super::poly::Poly;
use crate::error::{Error, Result};

type P = Poly<PrimeField>;

/// Monic irreducible factors with multiplicities, sorted by
/// [`Poly::canonical_cmp`]. The leading coefficient of `f` is dropped.
pub fn factor(f: &P, seed: u64) -> Result<Vec<(P, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (part, mult) in squarefree(&f.monic()) {
        for (block, d) in distinct_degree(&part)? {
            let mut pieces = Vec::new();
            equal_degree(&block, d, &mut rng, &mut pieces)?;
            out.extend(pieces.into_iter().map(|g| (g, mult)));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime
/// squarefree parts with their multiplicities.
pub fn squarefree(f: &P) -> Vec<(P, usize)> {
    let field = f.field();
    let p = field.p() as usize;
    let one = P::one(field);
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c);
    let mut i = 1;
    while w != one {
        let y = w.gcd(&c);
        let z = w.exact_div(&y);
        if z != one {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w);
    }
    if c != one {
        // c is a p-th power; coefficients of F_p are their own p-th roots
        let root = P::new(
            field,
            c.coeffs().iter().step_by(p).cloned().collect(),
        );
        out.extend(squarefree(&root).into_iter().map(|(g, m)| (g, m * p)));
    }
    out
}

/// Splits a monic squarefree polynomial into products of irreducibles of equal degree.
pub fn distinct_degree(f: &P) -> Result<Vec<(P, usize)>> {
    let field = f.field();
    let p = field.p() as u128;
    let t = P::t(field);
    let mut g = f.clone();
    let mut h = t.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while g.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(p, &g)?;
        let gd = g.gcd(&h.sub(&t));
        if gd.degree().unwrap_or(0) > 0 {
            g = g.exact_div(&gd);
            h = h.rem(&g)?;
            out.push((gd, d));
        }
        d += 1;
    }
    if let Some(deg) = g.degree().filter(|&k| k > 0) {
        out.push((g, deg));
    }
    Ok(out)
}

fn random_poly(field: PrimeField, deg_below: usize, rng: &mut ChaCha8Rng) -> P {
    P::new(field, (0..deg_below).map(|_| field.random(rng)).collect())
}

fn equal_degree(f: &P, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<P>) -> Result<()> {
    let n = f.degree().expect("nonzero");
    if n == d {
        out.push(f.monic());
        return Ok(());
    }
    let field = f.field();
    let p = field.p() as u128;
    loop {
        let a = random_poly(field, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut s = a.rem(f)?;
            let mut acc = s.clone();
            for _ in 1..d {
                s = s.mul(&s).rem(f)?;
                acc = acc.add(&s);
            }
            acc
        } else {
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
            let mut s = a.rem(f)?;
            let mut acc = s.clone();
            for _ in 1..d {
                s = s.pow_mod(p, f)?;
                acc = acc.mul(&s).rem(f)?;
            }
            acc.pow_mod((p - 1) / 2, f)?.sub(&P::one(field))
        };
        let g = f.gcd(&b);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let rest = f.exact_div(&g);
            equal_degree(&g, d, rng, out)?;
            equal_degree(&rest, d, rng, out)?;
            return Ok(());
        }
    }
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &P) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let field = f.field();
    let p = field.p() as u128;
    let f = f.monic();
    let t = P::t(field);
    let frob_pow = |k: usize| -> P {
        let mut h = t.clone();
        for _ in 0..k {
            h = h.pow_mod(p, &f).expect("nonzero");
        }
        h
    };
    if frob_pow(n).sub(&t).rem(&f).expect("nonzero").degree().is_some() {
        return false;
    }
    let mut m = n;
    let mut q = 2;
    while m > 1 {
        if m % q == 0 {
            while m % q == 0 {
                m /= q;
            }
            let g = frob_pow(n / q).sub(&t).gcd(&f);
            if g.degree() != Some(0) {
                return false;
            }
        }
        q += 1;
    }
    true
}
