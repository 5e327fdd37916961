use crate::error::{Error, Result};
use crate::exactlin::{check_hom_module, vector, Matrix, Scalar};
use crate::homalg::{check_subalgebra, HomAssociativeAlgebra, SubspaceData, Tensor3, TwistedAlgebra};

/// The Hom-module `A/B` with its left `B`-action, on the standard-basis
/// complement of `B` chosen by [`SubspaceData`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetHomModule {
    pub parent: HomAssociativeAlgebra,
    pub sub: SubspaceData,
    /// `action[b][x][y]`: coefficient of `y` in `b * x + B`.
    pub action: Tensor3,
    pub twist: Matrix,
}

impl CosetHomModule {
    pub fn dim(&self) -> usize {
        self.sub.complement().len()
    }

    /// `b * q` for `b` in `B`-coordinates and `q` in `A/B`-coordinates.
    pub fn act(&self, b: &[Scalar], q: &[Scalar]) -> Vec<Scalar> {
        self.action.apply(b, q)
    }

    /// Representative in `A` of a coset given in `A/B`-coordinates.
    pub fn lift(&self, q: &[Scalar]) -> Vec<Scalar> {
        self.sub.lift_complement(q)
    }

    /// Class in `A/B` of an element of `A`.
    pub fn project(&self, a: &[Scalar]) -> Vec<Scalar> {
        self.sub.outside(a)
    }

    /// An element of `B` acting as the identity on `A/B`, if one exists.
    pub fn unit_of_action(&self) -> Option<Vec<Scalar>> {
        let (m, q) = (self.sub.dim(), self.dim());
        // unknowns: b in K^m; equations: b * e_x = e_x for every x
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for x in 0..q {
            for y in 0..q {
                rows.push((0..m).map(|b| self.action.get(b, x, y).clone()).collect::<Vec<_>>());
                rhs.push(if x == y { Scalar::from_integer(1.into()) } else { Scalar::from_integer(0.into()) });
            }
        }
        if rows.is_empty() {
            return Some(vector::zeros(m));
        }
        Matrix::from_rows(rows).ok()?.solve(&rhs)
    }
}

/// Builds `A/B`; `B` must be a subalgebra stable under the twist.
pub fn coset_module(a: &HomAssociativeAlgebra, b: &SubspaceData) -> Result<CosetHomModule> {
    let report = check_subalgebra(a, b)?;
    if let Some(v) = report.violations.first() {
        return Err(Error::hypothesis(
            format!("subalgebra ({})", v.axiom),
            format!("fails at {:?}", v.witness),
        ));
    }
    let reps = b.complement();
    let q = reps.len();
    let n = a.dim();
    let mut action = Tensor3::zeros(b.dim(), q, q);
    for (i, bi) in b.basis().iter().enumerate() {
        // the formula kills B: b * B ⊆ B
        for bj in b.basis() {
            if !b.contains(&a.product(bi, bj)) {
                return Err(Error::Internal("coset action not well defined".into()));
            }
        }
        for (x, &r) in reps.iter().enumerate() {
            action.set_entry(i, x, &b.outside(&a.product(bi, &vector::unit(n, r))));
        }
    }
    let cols: Vec<_> = reps
        .iter()
        .map(|&r| b.outside(&a.apply_twist(&vector::unit(n, r))))
        .collect();
    let twist = Matrix::from_columns(q, &cols);
    Ok(CosetHomModule {
        parent: a.clone(),
        sub: b.clone(),
        action,
        twist,
    })
}

/// Result of testing whether `X` freely generates `A/B` as a left `B`-module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeBasisWitness {
    /// Elements of `X` in `A/B`-coordinates.
    pub x: Vec<Vec<Scalar>>,
    /// Their representatives in `A`.
    pub lifts: Vec<Vec<Scalar>>,
    /// Columns are the images of the generators of the free module.
    pub matrix: Matrix,
    /// `B` has an element acting as the identity on `A/B`, so the free module
    /// is `⊕ B x`; otherwise it is `⊕ (K + B) x`.
    pub unital: bool,
    /// The quotient twist maps `span X` into itself.
    pub alpha_stable: bool,
    pub pass: bool,
}

/// Checks bijectivity of `(b_x) -> sum b_x * x` onto `A/B` by exact rank.
pub fn check_free_basis(q: &CosetHomModule, x: &[Vec<Scalar>]) -> Result<FreeBasisWitness> {
    let qd = q.dim();
    if x.iter().any(|v| v.len() != qd) {
        return Err(Error::invalid(format!("free basis vectors must have length {qd}")));
    }
    let unital = q.unit_of_action().is_some();
    let mut cols = Vec::new();
    for xv in x {
        if !unital {
            cols.push(xv.clone());
        }
        for i in 0..q.sub.dim() {
            cols.push(q.act(&vector::unit(q.sub.dim(), i), xv));
        }
    }
    let matrix = Matrix::from_columns(qd, &cols);
    let pass = cols.len() == qd && matrix.rank() == qd;
    let span = Matrix::from_columns(qd, x);
    let r = span.rank();
    let alpha_stable = x
        .iter()
        .all(|v| span.hstack(&Matrix::from_columns(qd, &[q.twist.mul_vec(v)])).rank() == r);
    Ok(FreeBasisWitness {
        x: x.to_vec(),
        lifts: x.iter().map(|v| q.lift(v)).collect(),
        matrix,
        unital,
        alpha_stable,
        pass,
    })
}

/// [`check_free_basis`] for representatives given in `A`-coordinates.
pub fn check_free_basis_lifted(q: &CosetHomModule, lifts: &[Vec<Scalar>]) -> Result<FreeBasisWitness> {
    if lifts.iter().any(|v| v.len() != q.parent.dim()) {
        return Err(Error::invalid("representatives must live in the algebra"));
    }
    let x: Vec<_> = lifts.iter().map(|v| q.project(v)).collect();
    let mut w = check_free_basis(q, &x)?;
    w.lifts = lifts.to_vec();
    Ok(w)
}

pub fn is_involutive(q: &CosetHomModule) -> bool {
    crate::exactlin::HomModule::new(q.twist.clone())
        .map(|m| check_hom_module(&m).pass())
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;
    use crate::homalg::catalog;

    fn span(n: usize, vs: &[&[i64]]) -> SubspaceData {
        SubspaceData::new(n, vs.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn trivial_cosets() {
        let a = catalog::upper_triangular(2);
        let q0 = coset_module(&a, &SubspaceData::zero(3)).unwrap();
        assert_eq!(q0.dim(), 3);
        assert_eq!(q0.twist, *a.twist());
        let w = check_free_basis(&q0, &[ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])]).unwrap();
        assert!(w.pass);
        let qa = coset_module(&a, &SubspaceData::whole(3)).unwrap();
        assert_eq!(qa.dim(), 0);
        assert!(check_free_basis(&qa, &[]).unwrap().pass);
    }

    #[test]
    fn diagonal_in_upper_triangular() {
        let a = catalog::upper_triangular(2);
        // basis e11, e12, e22; B = diagonal
        let q = coset_module(&a, &span(3, &[&[1, 0, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(q.dim(), 1);
        // diag(a, b) acts on e12 + B by a
        assert_eq!(q.act(&ints(&[5, 7]), &ints(&[1])), ints(&[5]));
        let w = check_free_basis(&q, &[ints(&[1])]).unwrap();
        assert!(w.unital);
        assert_eq!(w.matrix.cols(), 2);
        assert!(!w.pass);
    }

    #[test]
    fn unstable_subspace_rejected() {
        let a = catalog::matrix_algebra(2)
            .yau_twist(&Matrix::from_i64(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]))
            .unwrap();
        assert!(coset_module(&a, &span(4, &[&[1, 0, 0, 0]])).is_err());
    }

    #[test]
    fn recombination_invariance() {
        let a = catalog::truncated_polynomial(2, true);
        let b = span(2, &[&[1, 0]]);
        let q = coset_module(&a, &b).unwrap();
        assert!(check_free_basis(&q, &[ints(&[1])]).unwrap().pass);
        assert!(check_free_basis(&q, &[ints(&[-3])]).unwrap().pass);
        assert!(is_involutive(&q));
    }
}
