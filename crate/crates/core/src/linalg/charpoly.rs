use super::matrix::Matrix;
use crate::arith::{Field, Poly};
use crate::error::{Error, Result};

/// Characteristic polynomial `det(tI - m)`, via Hessenberg reduction and the
/// determinant recurrence. Uses only field operations, so it is valid in
/// every characteristic.
pub fn char_poly<F: Field>(m: &Matrix<F>) -> Result<Poly<F>> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let f = m.field();
    let n = m.rows();
    let h = hessenberg(m);
    // p[k] = characteristic polynomial of the leading k x k block
    let mut p: Vec<Poly<F>> = Vec::with_capacity(n + 1);
    p.push(Poly::one(f));
    for k in 1..=n {
        let c = k - 1;
        let mut pk = Poly::linear(f, h.get(c, c)).mul(&p[k - 1]);
        let mut prod = f.one();
        for i in (1..k).rev() {
            // prod = h[i][i-1] * ... * h[k-1][k-2] (0-based)
            prod = f.mul(&prod, h.get(i, i - 1));
            if f.is_zero(&prod) {
                break;
            }
            let coef = f.mul(h.get(i - 1, c), &prod);
            if !f.is_zero(&coef) {
                pk = pk.sub(&p[i - 1].scale(&coef));
            }
        }
        p.push(pk);
    }
    Ok(p.pop().expect("nonempty"))
}

fn hessenberg<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let f = m.field();
    let n = m.rows();
    let mut h = m.clone();
    for col in 0..n.saturating_sub(2) {
        let piv_row = col + 1;
        let Some(i) = (piv_row..n).find(|&i| !f.is_zero(h.get(i, col))) else {
            continue;
        };
        if i != piv_row {
            for j in 0..n {
                let (a, b) = (h.get(i, j).clone(), h.get(piv_row, j).clone());
                h.set(i, j, b);
                h.set(piv_row, j, a);
            }
            for r in 0..n {
                let (a, b) = (h.get(r, i).clone(), h.get(r, piv_row).clone());
                h.set(r, i, b);
                h.set(r, piv_row, a);
            }
        }
        let inv = f.inv(h.get(piv_row, col)).expect("nonzero pivot");
        for j in piv_row + 1..n {
            let u = f.mul(h.get(j, col), &inv);
            if f.is_zero(&u) {
                continue;
            }
            // row_j -= u * row_piv
            let nu = f.neg(&u);
            for c in 0..n {
                let v = f.mul_add(h.get(j, c), &nu, h.get(piv_row, c));
                h.set(j, c, v);
            }
            // col_piv += u * col_j
            for r in 0..n {
                let v = f.mul_add(h.get(r, piv_row), &u, h.get(r, j));
                h.set(r, piv_row, v);
            }
        }
    }
    h
}

/// Monic annihilator of the Krylov sequence `v, mv, m^2 v, ...`.
pub fn vector_min_poly<F: Field>(m: &Matrix<F>, v: &[F::Elem]) -> Poly<F> {
    let f = m.field();
    let n = m.rows();
    // semi-echelon rows with the combination of Krylov vectors producing them
    let mut rows: Vec<(Vec<F::Elem>, Vec<F::Elem>, usize)> = Vec::new();
    let mut raw = v.to_vec();
    for k in 0..=n {
        let mut w = raw.clone();
        let mut combo = vec![f.zero(); n + 1];
        combo[k] = f.one();
        for (row, rc, p) in &rows {
            let c = w[*p].clone();
            if f.is_zero(&c) {
                continue;
            }
            let nc = f.neg(&c);
            for (o, b) in w.iter_mut().zip(row) {
                *o = f.mul_add(o, &nc, b);
            }
            for (o, b) in combo.iter_mut().zip(rc) {
                *o = f.mul_add(o, &nc, b);
            }
        }
        match w.iter().position(|x| !f.is_zero(x)) {
            None => return Poly::new(f, combo),
            Some(p) => {
                let inv = f.inv(&w[p]).expect("nonzero");
                let w: Vec<_> = w.iter().map(|x| f.mul(x, &inv)).collect();
                let combo: Vec<_> = combo.iter().map(|x| f.mul(x, &inv)).collect();
                rows.push((w, combo, p));
            }
        }
        raw = m.apply(&raw);
    }
    unreachable!("Krylov sequence in dimension n is dependent after n steps")
}

/// Minimal polynomial: least common multiple of the annihilators of the
/// Krylov sequences of the standard basis vectors.
pub fn min_poly<F: Field>(m: &Matrix<F>) -> Result<Poly<F>> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let f = m.field();
    let n = m.rows();
    let mut acc = Poly::one(f);
    for j in 0..n {
        let mut e = vec![f.zero(); n];
        e[j] = f.one();
        if apply_poly(m, &acc, &e).iter().all(|x| f.is_zero(x)) {
            continue;
        }
        acc = acc.lcm(&vector_min_poly(m, &e));
    }
    Ok(acc)
}

/// `p(m) v` by Horner's rule on vectors.
pub fn apply_poly<F: Field>(m: &Matrix<F>, p: &Poly<F>, v: &[F::Elem]) -> Vec<F::Elem> {
    let f = m.field();
    let mut acc = vec![f.zero(); v.len()];
    for c in p.coeffs().iter().rev() {
        acc = m.apply(&acc);
        for (a, x) in acc.iter_mut().zip(v) {
            *a = f.mul_add(a, c, x);
        }
    }
    acc
}
