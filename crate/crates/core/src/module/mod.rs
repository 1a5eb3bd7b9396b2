//! Left modules given by the matrices of the basis elements' actions.

mod hom;
mod ops;
mod projective;

use std::fmt;
use std::sync::Arc;

pub use hom::{classify_endo, end_algebra, fitting_split, hom_basis, EndoClass, EndoMatrix, HomBasis};
pub use ops::{
    direct_sum, find_generator, free_module, generating_set, ideal_action, is_invariant,
    quotient_module, radical_of_module, regular_module, spin, submodule_restrict,
    transpose_module, GeneratorSearch,
};
pub use projective::{is_projective, Projectivity, ProjectiveSection, ProjectivityRefutation};

use crate::algebra::{same_algebra, AlgebraData};
use crate::arith::Field;
use crate::error::{Error, Result};
use crate::linalg::{combine, Matrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleViolation {
    /// action matrix `i` has the wrong shape
    Shape { i: usize },
    /// the unit does not act as the identity
    Unit,
    /// `rho(b_i) rho(b_j) != rho(b_i b_j)`
    Product { i: usize, j: usize },
}

impl fmt::Display for ModuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleViolation::Shape { i } => write!(f, "action matrix {i} has the wrong shape"),
            ModuleViolation::Unit => f.write_str("unit does not act as the identity"),
            ModuleViolation::Product { i, j } => write!(f, "rho(b{i})rho(b{j}) != rho(b{i}b{j})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModuleValidation {
    pub violations: Vec<ModuleViolation>,
}

impl ModuleValidation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ModuleValidation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let shown: Vec<String> = self.violations.iter().take(5).map(|v| v.to_string()).collect();
        write!(f, "{} violation(s): {}", self.violations.len(), shown.join("; "))
    }
}

/// A left module: `action[i]` is the `n x n` matrix of `b_i` acting on
/// column vectors.
#[derive(Clone)]
pub struct ModuleRep<F: Field> {
    algebra: Arc<AlgebraData<F>>,
    dim: usize,
    action: Vec<Matrix<F>>,
}

impl<F: Field> fmt::Debug for ModuleRep<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleRep")
            .field("algebra_dim", &self.algebra.dim())
            .field("dim", &self.dim)
            .field("action", &self.action)
            .finish()
    }
}

impl<F: Field> PartialEq for ModuleRep<F> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.action == other.action && same_algebra(&self.algebra, &other.algebra)
    }
}

impl<F: Field> ModuleRep<F> {
    /// Validated constructor.
    pub fn new(algebra: Arc<AlgebraData<F>>, dim: usize, action: Vec<Matrix<F>>) -> Result<Self> {
        let m = Self::from_action_unchecked(algebra, dim, action)?;
        let report = validate_module(&m);
        if !report.is_valid() {
            return Err(Error::InvalidModule(report.to_string()));
        }
        Ok(m)
    }

    /// Checks only the number of matrices; see [`validate_module`].
    pub fn from_action_unchecked(algebra: Arc<AlgebraData<F>>, dim: usize, action: Vec<Matrix<F>>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!(
                "expected {} action matrices, got {}",
                algebra.dim(),
                action.len()
            )));
        }
        Ok(ModuleRep { algebra, dim, action })
    }

    pub fn zero(algebra: Arc<AlgebraData<F>>) -> Self {
        let f = algebra.field();
        let action = vec![Matrix::zeros(f, 0, 0); algebra.dim()];
        ModuleRep { algebra, dim: 0, action }
    }

    pub fn algebra(&self) -> &Arc<AlgebraData<F>> {
        &self.algebra
    }

    pub fn field(&self) -> F {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn action(&self, i: usize) -> &Matrix<F> {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix<F>] {
        &self.action
    }

    /// Matrix of an arbitrary algebra element.
    pub fn act(&self, x: &[F::Elem]) -> Matrix<F> {
        combine(self.field(), self.dim, self.dim, x, &self.action)
    }

    /// Action matrices of the algebra's generating set.
    pub fn generator_actions(&self) -> Vec<&Matrix<F>> {
        self.algebra.generators().iter().map(|&i| &self.action[i]).collect()
    }

    pub fn same_algebra_as(&self, other: &Self) -> Result<()> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// `X rho_self(b_i) = rho_target(b_i) X` for every basis element.
    pub fn intertwines(&self, target: &Self, x: &Matrix<F>) -> bool {
        if x.rows() != target.dim || x.cols() != self.dim {
            return false;
        }
        self.action
            .iter()
            .zip(&target.action)
            .all(|(a, b)| x.mul(a).expect("shape") == b.mul(x).expect("shape"))
    }
}

pub fn validate_module<F: Field>(m: &ModuleRep<F>) -> ModuleValidation {
    let a = &m.algebra;
    let n = m.dim;
    let mut violations = Vec::new();
    for (i, r) in m.action.iter().enumerate() {
        if r.rows() != n || r.cols() != n {
            violations.push(ModuleViolation::Shape { i });
        }
    }
    if !violations.is_empty() {
        return ModuleValidation { violations };
    }
    if !m.act(a.unit()).is_identity() {
        violations.push(ModuleViolation::Unit);
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = m.action[i].mul(&m.action[j]).expect("square");
            if lhs != m.act(a.basis_product(i, j)) {
                violations.push(ModuleViolation::Product { i, j });
            }
        }
    }
    ModuleValidation { violations }
}
