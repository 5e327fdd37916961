use super::{vector, Matrix};
use crate::error::{Error, Result};
use crate::report::AxiomReport;

/// A vector space `K^dim` with a designated linear self-map (the twist).
///
/// Only the shape is enforced on construction; involutivity is a checked
/// property, see [`check_hom_module`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomModule {
    alpha: Matrix,
}

impl HomModule {
    pub fn new(alpha: Matrix) -> Result<Self> {
        if !alpha.is_square() {
            return Err(Error::invalid(format!(
                "twist must be square, got {}x{}",
                alpha.rows(),
                alpha.cols()
            )));
        }
        Ok(HomModule { alpha })
    }

    /// `K^dim` with the identity twist.
    pub fn trivial(dim: usize) -> Self {
        HomModule {
            alpha: Matrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.alpha.rows()
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    /// Direct sum with block-diagonal twist.
    pub fn direct_sum(&self, other: &HomModule) -> HomModule {
        let n = self.dim() + other.dim();
        let mut alpha = Matrix::zeros(n, n);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                alpha[(i, j)] = self.alpha[(i, j)].clone();
            }
        }
        let o = self.dim();
        for i in 0..other.dim() {
            for j in 0..other.dim() {
                alpha[(o + i, o + j)] = other.alpha[(i, j)].clone();
            }
        }
        HomModule { alpha }
    }
}

/// A linear map between two Hom-modules, as a `codomain.dim x domain.dim` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMapBetween {
    pub domain: HomModule,
    pub codomain: HomModule,
    pub matrix: Matrix,
}

impl LinearMapBetween {
    pub fn new(domain: HomModule, codomain: HomModule, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(Error::invalid(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.dim(),
                domain.dim()
            )));
        }
        Ok(LinearMapBetween {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn compose(&self, first: &LinearMapBetween) -> Result<LinearMapBetween> {
        if first.codomain != self.domain {
            return Err(Error::invalid("composition of maps with mismatched Hom-modules"));
        }
        LinearMapBetween::new(
            first.domain.clone(),
            self.codomain.clone(),
            &self.matrix * &first.matrix,
        )
    }
}

pub const INVOLUTIVITY: &str = "involutivity";
pub const HOM_MODULE_MORPHISM: &str = "Hom-module morphism";

/// Checks `alpha^2 = id`; witnesses are basis indices where the square
/// differs from the identity column.
pub fn check_hom_module(v: &HomModule) -> AxiomReport {
    let mut report = AxiomReport::new();
    let sq = &v.alpha * &v.alpha;
    report.declare(INVOLUTIVITY);
    for j in 0..v.dim() {
        let residual = vector::sub(&sq.column(j), &vector::unit(v.dim(), j));
        report.observe(INVOLUTIVITY, &[j], residual);
    }
    report
}

/// Checks `f . alpha_V = alpha_W . f` column by column.
pub fn check_hom_morphism(f: &LinearMapBetween) -> AxiomReport {
    let mut report = AxiomReport::new();
    report.declare(HOM_MODULE_MORPHISM);
    let lhs = &f.matrix * f.domain.alpha();
    let rhs = f.codomain.alpha() * &f.matrix;
    for j in 0..f.domain.dim() {
        report.observe(
            HOM_MODULE_MORPHISM,
            &[j],
            vector::sub(&lhs.column(j), &rhs.column(j)),
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;

    #[test]
    fn hom_module_examples() {
        assert!(check_hom_module(&HomModule::trivial(3)).pass());
        let d = HomModule::new(Matrix::diagonal(&[int(1), int(-1)])).unwrap();
        assert!(check_hom_module(&d).pass());
        let shear = HomModule::new(Matrix::from_i64(&[&[1, 1], &[0, 1]])).unwrap();
        let r = check_hom_module(&shear);
        assert!(!r.pass());
        // column 1 of the square is (2, 1), off by 2 in the first entry
        let v = r.violation(INVOLUTIVITY).unwrap();
        assert_eq!(v.witness, vec![1]);
        assert_eq!(v.residual, vec![int(2), int(0)]);
        assert!(HomModule::new(Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn morphism_examples() {
        let v = HomModule::new(Matrix::diagonal(&[int(1), int(-1)])).unwrap();
        let id = LinearMapBetween::new(v.clone(), v.clone(), Matrix::identity(2)).unwrap();
        assert!(check_hom_morphism(&id).pass());
        let zero = LinearMapBetween::new(v.clone(), v.clone(), Matrix::zeros(2, 2)).unwrap();
        assert!(check_hom_morphism(&zero).pass());
        let swap =
            LinearMapBetween::new(v.clone(), v.clone(), Matrix::from_i64(&[&[0, 1], &[1, 0]]))
                .unwrap();
        assert!(!check_hom_morphism(&swap).pass());
        assert!(LinearMapBetween::new(v.clone(), v, Matrix::zeros(3, 2)).is_err());
    }

    #[test]
    fn composition_of_morphisms_is_morphism() {
        let v = HomModule::new(Matrix::diagonal(&[int(1), int(-1), int(1)])).unwrap();
        let f = LinearMapBetween::new(
            v.clone(),
            v.clone(),
            Matrix::from_i64(&[&[1, 0, 2], &[0, 3, 0], &[4, 0, 1]]),
        )
        .unwrap();
        let g = LinearMapBetween::new(
            v.clone(),
            v.clone(),
            Matrix::from_i64(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 5]]),
        )
        .unwrap();
        assert!(check_hom_morphism(&f).pass());
        assert!(check_hom_morphism(&g).pass());
        assert!(check_hom_morphism(&g.compose(&f).unwrap()).pass());
    }
}
