use super::algebra::TwistedAlgebra;
use super::subspace::{check_subalgebra, SubspaceData};
use super::{HomAssociativeAlgebra, HomLieAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{check_hom_morphism, vector, LinearMapBetween, Matrix, Scalar};
use crate::report::AxiomReport;

pub const COMMUTES_WITH_TWIST: &str = "commutes with twist power";
pub const TWISTED_LEIBNIZ: &str = "twisted Leibniz rule";
pub const THETA_LEIBNIZ: &str = "theta-Leibniz rule";

/// A linear self-map together with the twist exponent `k` it is measured against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationData {
    pub map: Matrix,
    pub power: u32,
}

impl DerivationData {
    pub fn new(map: Matrix, power: u32) -> Result<Self> {
        if !map.is_square() {
            return Err(Error::invalid("derivation matrix must be square"));
        }
        Ok(DerivationData { map, power })
    }

    pub fn zero(n: usize, power: u32) -> Self {
        DerivationData {
            map: Matrix::zeros(n, n),
            power,
        }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.map.mul_vec(v)
    }
}

/// Leibniz rule for `theta`-twisted derivations `B -> A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LeibnizVariant {
    /// `delta(b b') = delta(b) b' + theta(b) delta(b')`
    #[default]
    Mixed,
    /// `delta(b b') = delta(b) theta(b') + theta(b) delta(b')`
    TwistedBoth,
}

impl LeibnizVariant {
    pub const ALL: [LeibnizVariant; 2] = [LeibnizVariant::Mixed, LeibnizVariant::TwistedBoth];

    pub fn name(self) -> &'static str {
        match self {
            LeibnizVariant::Mixed => "mixed",
            LeibnizVariant::TwistedBoth => "twisted-both",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "mixed" => Ok(LeibnizVariant::Mixed),
            "twisted-both" => Ok(LeibnizVariant::TwistedBoth),
            other => Err(Error::invalid(format!("unknown Leibniz variant '{other}'"))),
        }
    }
}

fn visit_twisted_derivation(
    alg: &impl TwistedAlgebra,
    map: &Matrix,
    power: u32,
    sink: &mut dyn FnMut(&'static str, &[usize], Vec<Scalar>),
) {
    let n = alg.dim();
    let ak = alg.twist().pow(power);
    let comm = &(map * &ak) - &(&ak * map);
    for j in 0..n {
        sink(COMMUTES_WITH_TWIST, &[j], comm.column(j));
    }
    let d_cols = map.columns();
    let ak_cols = ak.columns();
    for i in 0..n {
        for j in 0..n {
            let lhs = map.mul_vec(&alg.basis_product(i, j));
            let rhs = vector::add(
                &alg.product(&d_cols[i], &ak_cols[j]),
                &alg.product(&ak_cols[i], &d_cols[j]),
            );
            sink(TWISTED_LEIBNIZ, &[i, j], vector::sub(&lhs, &rhs));
        }
    }
}

fn check_twisted_derivation(alg: &impl TwistedAlgebra, d: &DerivationData) -> Result<AxiomReport> {
    if d.map.rows() != alg.dim() {
        return Err(Error::invalid(format!(
            "derivation is {}x{}, algebra has dimension {}",
            d.map.rows(),
            d.map.cols(),
            alg.dim()
        )));
    }
    let mut report = AxiomReport::new();
    visit_twisted_derivation(alg, &d.map, d.power, &mut |ax, w, r| report.observe(ax, w, r));
    Ok(report)
}

/// `D alpha^k = alpha^k D` and `D(xy) = D(x) alpha^k(y) + alpha^k(x) D(y)`.
pub fn check_alpha_k_derivation(a: &HomAssociativeAlgebra, d: &DerivationData) -> Result<AxiomReport> {
    check_twisted_derivation(a, d)
}

/// `D beta^k = beta^k D` and `D[u, v] = [D u, beta^k v] + [beta^k u, D v]`.
pub fn check_beta_k_derivation(l: &HomLieAlgebra, d: &DerivationData) -> Result<AxiomReport> {
    check_twisted_derivation(l, d)
}

/// Basis of the space of all `alpha^k`-derivations (resp. `beta^k`), found by
/// solving the defining linear system.
pub fn derivation_space(alg: &impl TwistedAlgebra, power: u32) -> Vec<Matrix> {
    let n = alg.dim();
    solve_linear_maps(n, n, |m| {
        let mut out = Vec::new();
        visit_twisted_derivation(alg, m, power, &mut |_, _, r| out.extend(r));
        out
    })
}

/// Kernel of a linear map `residual` from `rows x cols` matrices to vectors.
pub(crate) fn solve_linear_maps(
    rows: usize,
    cols: usize,
    residual: impl Fn(&Matrix) -> Vec<Scalar>,
) -> Vec<Matrix> {
    let unknowns = rows * cols;
    let mut columns = Vec::with_capacity(unknowns);
    for r in 0..rows {
        for c in 0..cols {
            let mut e = Matrix::zeros(rows, cols);
            e[(r, c)] = Scalar::from_integer(1.into());
            columns.push(residual(&e));
        }
    }
    let height = columns.first().map_or(0, Vec::len);
    if height == 0 {
        return (0..unknowns)
            .map(|u| {
                let mut e = Matrix::zeros(rows, cols);
                e[(u / cols, u % cols)] = Scalar::from_integer(1.into());
                e
            })
            .collect();
    }
    Matrix::from_columns(height, &columns)
        .kernel()
        .into_iter()
        .map(|v| {
            let mut m = Matrix::zeros(rows, cols);
            for (u, x) in v.into_iter().enumerate() {
                m[(u / cols, u % cols)] = x;
            }
            m
        })
        .collect()
}

fn visit_theta_leibniz(
    a: &HomAssociativeAlgebra,
    b: &SubspaceData,
    theta: &Matrix,
    delta: &Matrix,
    variant: LeibnizVariant,
    sink: &mut dyn FnMut(&[usize], Vec<Scalar>),
) {
    let m = b.dim();
    for i in 0..m {
        for j in 0..m {
            let bi = &b.basis()[i];
            let bj = &b.basis()[j];
            let Some(prod) = b.coordinates(&a.product(bi, bj)) else {
                continue;
            };
            let lhs = delta.mul_vec(&prod);
            let d_i = delta.column(i);
            let d_j = delta.column(j);
            let th_i = theta.column(i);
            let right_factor = match variant {
                LeibnizVariant::Mixed => bj.clone(),
                LeibnizVariant::TwistedBoth => theta.column(j),
            };
            let rhs = vector::add(&a.product(&d_i, &right_factor), &a.product(&th_i, &d_j));
            sink(&[i, j], vector::sub(&lhs, &rhs));
        }
    }
}

fn validate_theta(a: &HomAssociativeAlgebra, b: &SubspaceData, theta: &LinearMapBetween) -> Result<()> {
    let sub = check_subalgebra(a, b)?;
    if let Some(v) = sub.violations.first() {
        return Err(Error::hypothesis(
            "subalgebra",
            format!("{} fails at {:?}", v.axiom, v.witness),
        ));
    }
    if theta.matrix.rows() != a.dim() || theta.matrix.cols() != b.dim() {
        return Err(Error::invalid("theta must map the subalgebra into the algebra"));
    }
    let morph = check_hom_morphism(theta);
    if let Some(v) = morph.violations.first() {
        return Err(Error::hypothesis(
            "theta is a Hom-module morphism",
            format!("fails at {:?}", v.witness),
        ));
    }
    for i in 0..b.dim() {
        for j in 0..b.dim() {
            let prod = b
                .coordinates(&a.product(&b.basis()[i], &b.basis()[j]))
                .expect("closed subalgebra");
            let lhs = theta.matrix.mul_vec(&prod);
            let rhs = a.product(&theta.matrix.column(i), &theta.matrix.column(j));
            if lhs != rhs {
                return Err(Error::hypothesis(
                    "theta is an algebra morphism",
                    format!("fails at {:?}", [i, j]),
                ));
            }
        }
    }
    Ok(())
}

/// Leibniz rule for `delta : B -> A` twisted by `theta : B -> A`, both given
/// as `dim(A) x dim(B)` matrices in the basis of `B`.
pub fn check_theta_derivation(
    a: &HomAssociativeAlgebra,
    b: &SubspaceData,
    theta: &LinearMapBetween,
    delta: &LinearMapBetween,
    variant: LeibnizVariant,
) -> Result<AxiomReport> {
    validate_theta(a, b, theta)?;
    if delta.matrix.rows() != a.dim() || delta.matrix.cols() != b.dim() {
        return Err(Error::invalid("delta must map the subalgebra into the algebra"));
    }
    let mut report = AxiomReport::new();
    report.declare(THETA_LEIBNIZ);
    visit_theta_leibniz(a, b, &theta.matrix, &delta.matrix, variant, &mut |w, r| {
        report.observe(THETA_LEIBNIZ, w, r)
    });
    Ok(report)
}

/// All `delta` satisfying the chosen Leibniz rule and `alpha_A delta = delta alpha_B`.
pub fn theta_derivation_space(
    a: &HomAssociativeAlgebra,
    b: &SubspaceData,
    theta: &LinearMapBetween,
    variant: LeibnizVariant,
) -> Result<Vec<Matrix>> {
    validate_theta(a, b, theta)?;
    let alpha_b = b.restrict(a.twist()).expect("twist-stable subalgebra");
    Ok(solve_linear_maps(a.dim(), b.dim(), |delta| {
        let mut out = Vec::new();
        visit_theta_leibniz(a, b, &theta.matrix, delta, variant, &mut |_, r| out.extend(r));
        let comm = &(a.twist() * delta) - &(delta * &alpha_b);
        for j in 0..b.dim() {
            out.extend(comm.column(j));
        }
        out
    }))
}

/// Matrix of `ad_x : y -> [x, y]`, as a derivation of power 1.
pub fn adjoint(l: &HomLieAlgebra, x: &[Scalar]) -> Result<DerivationData> {
    let n = l.dim();
    if x.len() != n {
        return Err(Error::invalid(format!("vector has length {}, expected {n}", x.len())));
    }
    let cols: Vec<_> = (0..n).map(|j| l.bracket(x, &vector::unit(n, j))).collect();
    DerivationData::new(Matrix::from_columns(n, &cols), 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int, HomModule};
    use crate::homalg::{catalog, Tensor3};

    #[test]
    fn zero_derivation_passes() {
        let a = catalog::matrix_algebra(2);
        for k in 0..3 {
            assert!(check_alpha_k_derivation(&a, &DerivationData::zero(4, k)).unwrap().pass());
        }
        let l = catalog::sl2();
        assert!(check_beta_k_derivation(&l, &DerivationData::zero(3, 1)).unwrap().pass());
    }

    #[test]
    fn inner_derivation_of_associative_algebra() {
        let a = catalog::matrix_algebra(2);
        // D(y) = c*y - y*c with c = e12 + 2 e21
        let c = vec![int(0), int(1), int(2), int(0)];
        let cols: Vec<_> = (0..4)
            .map(|j| {
                let e = vector::unit(4, j);
                vector::sub(&a.product(&c, &e), &a.product(&e, &c))
            })
            .collect();
        let d = DerivationData::new(Matrix::from_columns(4, &cols), 0).unwrap();
        assert!(check_alpha_k_derivation(&a, &d).unwrap().pass());
    }

    #[test]
    fn identity_on_idempotent_fails() {
        let mut t = Tensor3::square(1);
        t.set(0, 0, 0, int(1));
        let a = HomAssociativeAlgebra::new(Matrix::identity(1), t, None).unwrap();
        let r = check_alpha_k_derivation(&a, &DerivationData::new(Matrix::identity(1), 0).unwrap())
            .unwrap();
        // D(e*e) = e, D(e)e + eD(e) = 2e
        assert_eq!(r.violation(TWISTED_LEIBNIZ).unwrap().residual, vec![int(-1)]);
    }

    #[test]
    fn adjoint_examples() {
        let sl2 = catalog::sl2();
        assert!(adjoint(&sl2, &vector::zeros(3)).unwrap().map.is_zero());
        let ad_h = adjoint(&sl2, &vector::unit(3, 0)).unwrap();
        assert_eq!(ad_h.map, Matrix::diagonal(&[int(0), int(2), int(-2)]));
        assert!(check_beta_k_derivation(&sl2, &ad_h).unwrap().pass());
        let ab = catalog::abelian(3);
        assert!(adjoint(&ab, &[int(1), int(2), int(3)]).unwrap().map.is_zero());
        let arbitrary = DerivationData::new(Matrix::from_i64(&[&[1, 2, 0], &[0, 1, 5], &[3, 0, 0]]), 2).unwrap();
        assert!(check_beta_k_derivation(&ab, &arbitrary).unwrap().pass());
    }

    #[test]
    fn derivation_space_of_sl2_is_three_dimensional() {
        // every derivation of sl2 is inner
        assert_eq!(derivation_space(&catalog::sl2(), 1).len(), 3);
        assert_eq!(derivation_space(&catalog::abelian(2), 1).len(), 4);
    }

    #[test]
    fn theta_variants_coincide_for_identity() {
        let a = catalog::upper_triangular(2);
        let b = SubspaceData::whole(3);
        let bm = HomModule::trivial(3);
        let theta = LinearMapBetween::new(bm.clone(), bm.clone(), Matrix::identity(3)).unwrap();
        for d in derivation_space(&a, 0) {
            let delta = LinearMapBetween::new(bm.clone(), bm.clone(), d).unwrap();
            for v in LeibnizVariant::ALL {
                assert!(check_theta_derivation(&a, &b, &theta, &delta, v).unwrap().pass());
            }
        }
        let zero = LinearMapBetween::new(bm.clone(), bm.clone(), Matrix::zeros(3, 3)).unwrap();
        for v in LeibnizVariant::ALL {
            assert!(check_theta_derivation(&a, &b, &theta, &zero, v).unwrap().pass());
        }
        assert_eq!(
            theta_derivation_space(&a, &b, &theta, LeibnizVariant::Mixed).unwrap().len(),
            derivation_space(&a, 0).len()
        );
    }

    #[test]
    fn non_morphism_theta_rejected() {
        let a = catalog::diagonal(2);
        let b = SubspaceData::whole(2);
        let bm = HomModule::trivial(2);
        // d1 -> d1 + d2 is not multiplicative: (d1+d2)^2 = d1 + d2 but theta(d1*d2) = 0
        let theta = LinearMapBetween::new(bm.clone(), bm.clone(), Matrix::from_i64(&[&[1, 1], &[1, 1]]))
            .unwrap();
        let zero = LinearMapBetween::new(bm.clone(), bm, Matrix::zeros(2, 2)).unwrap();
        assert!(check_theta_derivation(&a, &b, &theta, &zero, LeibnizVariant::Mixed).is_err());
    }
}
