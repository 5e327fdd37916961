use super::algebra::TwistedAlgebra;
use super::{HomAssociativeAlgebra, Tensor3};
use crate::error::{Error, Result};
use crate::exactlin::{vector, HomModule, Matrix, Scalar};
use crate::report::AxiomReport;

pub const CLOSED_UNDER_PRODUCT: &str = "closed under product";
pub const TWIST_STABLE: &str = "twist-stable";
pub const LEFT_ABSORPTION: &str = "absorbs left products";
pub const RIGHT_ABSORPTION: &str = "absorbs right products";

/// A subspace of `K^n` given by an independent spanning list.
///
/// A complement is fixed on construction by greedily adding standard basis
/// vectors; coordinates "outside" the subspace are taken with respect to
/// that complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceData {
    parent_dim: usize,
    basis: Vec<Vec<Scalar>>,
    complement: Vec<usize>,
    // inverse of [basis | complement unit vectors]
    split: Matrix,
}

impl SubspaceData {
    pub fn new(parent_dim: usize, basis: Vec<Vec<Scalar>>) -> Result<Self> {
        if basis.iter().any(|v| v.len() != parent_dim) {
            return Err(Error::invalid(format!(
                "subspace vectors must have length {parent_dim}"
            )));
        }
        if Matrix::from_columns(parent_dim, &basis).rank() != basis.len() {
            return Err(Error::invalid("subspace basis vectors are linearly dependent"));
        }
        let mut cols = basis.clone();
        let mut complement = Vec::new();
        for j in 0..parent_dim {
            if cols.len() == parent_dim {
                break;
            }
            cols.push(vector::unit(parent_dim, j));
            if Matrix::from_columns(parent_dim, &cols).rank() == cols.len() {
                complement.push(j);
            } else {
                cols.pop();
            }
        }
        let split = Matrix::from_columns(parent_dim, &cols)
            .inverse()
            .ok_or_else(|| Error::Internal("failed to complete subspace basis".into()))?;
        Ok(SubspaceData {
            parent_dim,
            basis,
            complement,
            split,
        })
    }

    pub fn zero(parent_dim: usize) -> Self {
        Self::new(parent_dim, Vec::new()).expect("zero subspace")
    }

    pub fn whole(parent_dim: usize) -> Self {
        Self::new(
            parent_dim,
            (0..parent_dim).map(|i| vector::unit(parent_dim, i)).collect(),
        )
        .expect("whole space")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn parent_dim(&self) -> usize {
        self.parent_dim
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// `parent_dim x dim` inclusion matrix.
    pub fn inclusion(&self) -> Matrix {
        Matrix::from_columns(self.parent_dim, &self.basis)
    }

    /// Standard basis indices spanning the chosen complement.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// Splits `v` into subspace coordinates and complement coordinates.
    pub fn split(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut c = self.split.mul_vec(v);
        let outside = c.split_off(self.dim());
        (c, outside)
    }

    /// Complement coordinates of `v`; zero iff `v` lies in the subspace.
    pub fn outside(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.split(v).1
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        vector::is_zero(&self.outside(v))
    }

    /// Coordinates of `v` in the subspace basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let (inside, outside) = self.split(v);
        vector::is_zero(&outside).then_some(inside)
    }

    /// Parent vector with the given subspace coordinates.
    pub fn embed(&self, coords: &[Scalar]) -> Vec<Scalar> {
        vector::combine(self.parent_dim, coords, &self.basis)
    }

    /// Parent vector with the given complement coordinates.
    pub fn lift_complement(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut v = vector::zeros(self.parent_dim);
        for (c, &j) in coords.iter().zip(&self.complement) {
            v[j] = c.clone();
        }
        v
    }

    /// Matrix of `m` restricted to the subspace, in subspace coordinates;
    /// `None` when the subspace is not `m`-stable.
    pub fn restrict(&self, m: &Matrix) -> Option<Matrix> {
        let cols: Option<Vec<_>> = self
            .basis
            .iter()
            .map(|b| self.coordinates(&m.mul_vec(b)))
            .collect();
        Some(Matrix::from_columns(self.dim(), &cols?))
    }

    /// The Hom-module `(S, alpha|_S)`, or an error when `alpha(S)` leaves `S`.
    pub fn restricted_module(&self, alpha: &Matrix) -> Result<HomModule> {
        let r = self
            .restrict(alpha)
            .ok_or_else(|| Error::hypothesis(TWIST_STABLE, "twist does not preserve the subspace"))?;
        HomModule::new(r)
    }
}

fn check_shape(alg: &impl TwistedAlgebra, s: &SubspaceData) -> Result<()> {
    if s.parent_dim() != alg.dim() {
        return Err(Error::invalid(format!(
            "subspace lives in dimension {}, algebra has dimension {}",
            s.parent_dim(),
            alg.dim()
        )));
    }
    Ok(())
}

/// `S * S ⊆ S` and `alpha(S) ⊆ S`. Works for both product and bracket algebras.
pub fn check_subalgebra(alg: &impl TwistedAlgebra, s: &SubspaceData) -> Result<AxiomReport> {
    check_shape(alg, s)?;
    let mut report = AxiomReport::new();
    report.declare(CLOSED_UNDER_PRODUCT);
    for (i, u) in s.basis().iter().enumerate() {
        for (j, v) in s.basis().iter().enumerate() {
            report.observe(CLOSED_UNDER_PRODUCT, &[i, j], s.outside(&alg.product(u, v)));
        }
    }
    report.declare(TWIST_STABLE);
    for (i, u) in s.basis().iter().enumerate() {
        report.observe(TWIST_STABLE, &[i], s.outside(&alg.apply_twist(u)));
    }
    Ok(report)
}

/// Subalgebra conditions plus `A * S ⊆ S` and `S * A ⊆ S`.
///
/// Left-absorption witnesses are `(algebra basis index, subspace basis index)`;
/// right-absorption witnesses are `(subspace basis index, algebra basis index)`.
pub fn check_ideal(alg: &impl TwistedAlgebra, s: &SubspaceData) -> Result<AxiomReport> {
    let mut report = check_subalgebra(alg, s)?;
    let n = alg.dim();
    report.declare(LEFT_ABSORPTION);
    report.declare(RIGHT_ABSORPTION);
    for a in 0..n {
        let e = vector::unit(n, a);
        for (i, u) in s.basis().iter().enumerate() {
            report.observe(LEFT_ABSORPTION, &[a, i], s.outside(&alg.product(&e, u)));
            report.observe(RIGHT_ABSORPTION, &[i, a], s.outside(&alg.product(u, &e)));
        }
    }
    Ok(report)
}

/// Quotient by a Hom-ideal, expressed on the standard-basis complement of `I`.
pub fn quotient_algebra(a: &HomAssociativeAlgebra, ideal: &SubspaceData) -> Result<HomAssociativeAlgebra> {
    let report = check_ideal(a, ideal)?;
    if let Some(v) = report.violations.first() {
        return Err(Error::hypothesis(
            format!("Hom-ideal ({})", v.axiom),
            format!("fails at {:?}", v.witness),
        ));
    }
    let reps: Vec<usize> = ideal.complement().to_vec();
    let q = reps.len();
    let n = a.dim();
    let mut table = Tensor3::square(q);
    let mut alpha = Matrix::zeros(q, q);
    for (x, &i) in reps.iter().enumerate() {
        let ei = vector::unit(n, i);
        for (y, &j) in reps.iter().enumerate() {
            let ej = vector::unit(n, j);
            table.set_entry(x, y, &ideal.outside(&a.product(&ei, &ej)));
        }
        for (k, c) in ideal.outside(&a.apply_twist(&ei)).into_iter().enumerate() {
            alpha[(k, x)] = c;
        }
    }
    let names = reps.iter().map(|&i| format!("[{}]", a.names()[i])).collect();
    HomAssociativeAlgebra::new(alpha, table, Some(names))
}
