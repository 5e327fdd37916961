use num_traits::Zero;

use super::algebra::{
    check_hom_associative, check_multiplicative, default_names, rebase, validate_shape,
    TwistedAlgebra,
};
use super::{HomAssociativeAlgebra, Tensor3};
use crate::error::{Error, Result};
use crate::exactlin::{check_hom_module, vector, HomModule, Matrix, Scalar};
use crate::report::AxiomReport;

pub const HOM_JACOBI: &str = "Hom-Jacobi";

/// Finite-dimensional Hom-Lie algebra `(g, [.,.], beta)`.
///
/// The bracket tensor is skew-symmetric by construction; [`HomLieAlgebra::new`]
/// rejects anything else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomLieAlgebra {
    module: HomModule,
    bracket: Tensor3,
    names: Vec<String>,
}

impl HomLieAlgebra {
    pub fn new(beta: Matrix, bracket: Tensor3, names: Option<Vec<String>>) -> Result<Self> {
        let names = names.unwrap_or_else(|| default_names("x", beta.rows()));
        validate_shape(&beta, &bracket, &names)?;
        let n = beta.rows();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if !(bracket.get(i, j, k) + bracket.get(j, i, k)).is_zero() {
                        return Err(Error::invalid(format!(
                            "bracket tensor is not skew-symmetric at ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(HomLieAlgebra {
            module: HomModule::new(beta)?,
            bracket,
            names,
        })
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.bracket.apply(u, v)
    }

    /// Yau twist: bracket `[x, y]' = beta([x, y])`.
    pub fn yau_twist(&self, beta: &Matrix) -> Result<Self> {
        let n = self.dim();
        let mut t = Tensor3::square(n);
        for i in 0..n {
            for j in 0..n {
                t.set_entry(i, j, &beta.mul_vec(&self.bracket.entry(i, j)));
            }
        }
        Self::new(beta.clone(), t, Some(self.names.clone()))
    }

    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        let (beta, table) = rebase(self.twist(), &self.bracket, p)?;
        Self::new(beta, table, Some(default_names("x", self.dim())))
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        validate_shape(self.twist(), &self.bracket, &names)?;
        self.names = names;
        Ok(self)
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_zero()
    }
}

impl TwistedAlgebra for HomLieAlgebra {
    fn module(&self) -> &HomModule {
        &self.module
    }
    fn table(&self) -> &Tensor3 {
        &self.bracket
    }
    fn names(&self) -> &[String] {
        &self.names
    }
}

/// Hom-Jacobi, multiplicativity and involutivity on all basis tuples.
pub fn check_hom_lie(l: &HomLieAlgebra) -> AxiomReport {
    let n = l.dim();
    let mut report = AxiomReport::new();
    let beta_basis = l.twist().columns();
    let br: Vec<Vec<Vec<Scalar>>> = (0..n)
        .map(|i| (0..n).map(|j| l.basis_product(i, j)).collect())
        .collect();
    report.declare(HOM_JACOBI);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let r = vector::add(
                    &vector::add(
                        &l.bracket(&beta_basis[i], &br[j][k]),
                        &l.bracket(&beta_basis[j], &br[k][i]),
                    ),
                    &l.bracket(&beta_basis[k], &br[i][j]),
                );
                report.observe(HOM_JACOBI, &[i, j, k], r);
            }
        }
    }
    check_multiplicative(l, &mut report);
    report.merge(check_hom_module(l.module()));
    report
}

/// The commutator Hom-Lie algebra `[x, y] = x*y - y*x`, `beta = alpha`.
///
/// Rejects inputs that fail any of the Hom-associative axioms.
pub fn commutator_hom_lie(a: &HomAssociativeAlgebra) -> Result<HomLieAlgebra> {
    let report = check_hom_associative(a);
    if let Some(v) = report.violations.first() {
        return Err(Error::hypothesis(
            v.axiom.clone(),
            format!("input fails at basis tuple {:?}", v.witness),
        ));
    }
    let n = a.dim();
    let mut t = Tensor3::square(n);
    for i in 0..n {
        for j in 0..n {
            t.set_entry(i, j, &vector::sub(&a.basis_product(i, j), &a.basis_product(j, i)));
        }
    }
    HomLieAlgebra::new(a.twist().clone(), t, Some(a.names().to_vec()))
}
