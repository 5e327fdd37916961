use super::Tensor3;
use crate::error::{Error, Result};
use crate::exactlin::{check_hom_module, vector, HomModule, Matrix, Scalar};
use crate::report::AxiomReport;

pub const HOM_ASSOCIATIVITY: &str = "Hom-associativity";
pub const MULTIPLICATIVITY: &str = "multiplicativity";
pub use crate::exactlin::INVOLUTIVITY;

/// Common surface of the finite-dimensional twisted algebras: a bilinear
/// product on `K^n` plus a twist.
pub trait TwistedAlgebra {
    fn module(&self) -> &HomModule;
    fn table(&self) -> &Tensor3;
    fn names(&self) -> &[String];

    fn dim(&self) -> usize {
        self.module().dim()
    }

    fn twist(&self) -> &Matrix {
        self.module().alpha()
    }

    fn product(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.table().apply(u, v)
    }

    fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.table().entry(i, j)
    }

    fn apply_twist(&self, u: &[Scalar]) -> Vec<Scalar> {
        self.twist().mul_vec(u)
    }
}

pub(crate) fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub(crate) fn validate_shape(alpha: &Matrix, table: &Tensor3, names: &[String]) -> Result<()> {
    let n = alpha.rows();
    if !alpha.is_square() {
        return Err(Error::invalid("twist matrix is not square"));
    }
    if table.shape() != (n, n, n) {
        return Err(Error::invalid(format!(
            "structure tensor has shape {:?}, expected ({n}, {n}, {n})",
            table.shape()
        )));
    }
    if names.len() != n {
        return Err(Error::invalid(format!(
            "{} basis names given for dimension {n}",
            names.len()
        )));
    }
    Ok(())
}

/// Structure constants and twist expressed in the basis given by the columns
/// of the invertible matrix `p`.
pub(crate) fn rebase(
    alpha: &Matrix,
    table: &Tensor3,
    p: &Matrix,
) -> Result<(Matrix, Tensor3)> {
    let n = alpha.rows();
    let inv = p
        .inverse()
        .ok_or_else(|| Error::invalid("change of basis matrix is singular"))?;
    let cols = p.columns();
    let mut t = Tensor3::square(n);
    for i in 0..n {
        for j in 0..n {
            let prod = table.apply(&cols[i], &cols[j]);
            t.set_entry(i, j, &inv.mul_vec(&prod));
        }
    }
    Ok((&(&inv * alpha) * p, t))
}

/// Finite-dimensional Hom-associative algebra `(A, *, alpha)` given by
/// structure constants `e_i * e_j = sum_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomAssociativeAlgebra {
    module: HomModule,
    table: Tensor3,
    names: Vec<String>,
}

impl HomAssociativeAlgebra {
    /// Shape-checked constructor; the axioms are checked separately by
    /// [`check_hom_associative`].
    pub fn new(alpha: Matrix, table: Tensor3, names: Option<Vec<String>>) -> Result<Self> {
        let names = names.unwrap_or_else(|| default_names("e", alpha.rows()));
        validate_shape(&alpha, &table, &names)?;
        Ok(HomAssociativeAlgebra {
            module: HomModule::new(alpha)?,
            table,
            names,
        })
    }

    /// Yau twist: same space, product `x *' y = alpha(x * y)`.
    pub fn yau_twist(&self, alpha: &Matrix) -> Result<Self> {
        let n = self.dim();
        let mut t = Tensor3::square(n);
        for i in 0..n {
            for j in 0..n {
                t.set_entry(i, j, &alpha.mul_vec(&self.table.entry(i, j)));
            }
        }
        Self::new(alpha.clone(), t, Some(self.names.clone()))
    }

    /// The same algebra in the basis formed by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        let (alpha, table) = rebase(self.twist(), &self.table, p)?;
        Self::new(alpha, table, Some(default_names("e", self.dim())))
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        validate_shape(self.twist(), &self.table, &names)?;
        self.names = names;
        Ok(self)
    }
}

impl TwistedAlgebra for HomAssociativeAlgebra {
    fn module(&self) -> &HomModule {
        &self.module
    }
    fn table(&self) -> &Tensor3 {
        &self.table
    }
    fn names(&self) -> &[String] {
        &self.names
    }
}

/// Multiplicativity `alpha(e_i e_j) = alpha(e_i) alpha(e_j)` on all basis pairs.
pub(crate) fn check_multiplicative(alg: &impl TwistedAlgebra, report: &mut AxiomReport) {
    let n = alg.dim();
    let alpha_basis = alg.twist().columns();
    report.declare(MULTIPLICATIVITY);
    for i in 0..n {
        for j in 0..n {
            let lhs = alg.apply_twist(&alg.basis_product(i, j));
            let rhs = alg.product(&alpha_basis[i], &alpha_basis[j]);
            report.observe(MULTIPLICATIVITY, &[i, j], vector::sub(&lhs, &rhs));
        }
    }
}

/// Evaluates Hom-associativity, multiplicativity and involutivity on every
/// basis tuple.
pub fn check_hom_associative(a: &HomAssociativeAlgebra) -> AxiomReport {
    let n = a.dim();
    let mut report = AxiomReport::new();
    let alpha_basis = a.twist().columns();
    let prods: Vec<Vec<Vec<Scalar>>> = (0..n)
        .map(|i| (0..n).map(|j| a.basis_product(i, j)).collect())
        .collect();
    report.declare(HOM_ASSOCIATIVITY);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // alpha(e_i) * (e_j * e_k) - (e_i * e_j) * alpha(e_k)
                let lhs = a.product(&alpha_basis[i], &prods[j][k]);
                let rhs = a.product(&prods[i][j], &alpha_basis[k]);
                report.observe(HOM_ASSOCIATIVITY, &[i, j, k], vector::sub(&lhs, &rhs));
            }
        }
    }
    check_multiplicative(a, &mut report);
    report.merge(check_hom_module(a.module()));
    report
}
