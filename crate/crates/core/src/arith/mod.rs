//! Exact scalars (F_p and Q) and univariate polynomials.

pub mod factor;
mod field;
mod poly;

pub use factor::is_irreducible;
pub use field::{is_prime, require_finite, scalar_inv, Field, FieldDesc, PrimeField, Rationals, Scalar};
pub use poly::Poly;

/// Factors `f` over its base field; only prime fields are supported.
pub fn poly_factor<F: Field>(f: &Poly<F>, seed: u64) -> crate::Result<Vec<(Poly<F>, usize)>> {
    f.field().factor_poly(f, seed)
}
