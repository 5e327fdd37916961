use super::monomial::{poly_add, poly_axpy, poly_sub, MonomialTable, Node, Poly};
use super::presented::{FreeConfig, PresentedAlgebraTrunc};
use crate::error::{Error, Result};
use crate::exactlin::{vector, Matrix, Scalar};
use crate::homalg::{check_beta_k_derivation, check_hom_lie, DerivationData, HomLieAlgebra, TwistedAlgebra};
use crate::report::{AxiomReport, EmbeddingCertificate};

pub const PHI_BRACKET: &str = "phi preserves brackets";
pub const PHI_TWIST: &str = "phi commutes with twists";
pub const QUOTIENT_INVOLUTIVE: &str = "quotient twist involutive";
pub const QUOTIENT_HOM_ASSOCIATIVE: &str = "quotient Hom-associativity";

/// Truncated universal enveloping algebra: the unital truncated free algebra
/// on `g` modulo `x_i x_j - x_j x_i - [x_i, x_j]` for `i < j`.
#[derive(Debug, Clone)]
pub struct EnvelopingAlgebra {
    pub g: HomLieAlgebra,
    pub algebra: PresentedAlgebraTrunc,
    /// Outcome of the checks on `phi` and on the quotient structure.
    pub verification: AxiomReport,
}

pub(crate) fn commutator_relations(table: &MonomialTable, g: &HomLieAlgebra, letters: &[usize]) -> Result<Vec<Poly>> {
    let n = g.dim();
    let lift = |v: &[Scalar]| {
        let mut full = vector::zeros(table.letters());
        for (c, &l) in v.iter().zip(letters) {
            full[l] = c.clone();
        }
        table.letter_combination(&full)
    };
    let mut rels = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let xi = table.leaf(letters[i]);
            let xj = table.leaf(letters[j]);
            let comm = poly_sub(&table.mul_poly(&xi, &xj)?, &table.mul_poly(&xj, &xi)?);
            rels.push(poly_sub(&comm, &lift(&g.basis_product(i, j))));
        }
    }
    Ok(rels)
}

/// Builds the truncated enveloping algebra and verifies `phi` and the
/// quotient structure on all generator pairs and basis triples.
pub fn enveloping(g: &HomLieAlgebra, degree: usize) -> Result<EnvelopingAlgebra> {
    if let Some(v) = check_hom_lie(g).violations.first() {
        return Err(Error::hypothesis(v.axiom.clone(), format!("fails at {:?}", v.witness)));
    }
    if degree < 2 {
        return Err(Error::invalid("enveloping algebra needs truncation degree at least 2"));
    }
    let free = PresentedAlgebraTrunc::free(FreeConfig {
        names: g.names().to_vec(),
        generator_twist: g.twist().clone(),
        degree,
        unital: true,
        bound: None,
    })?;
    let letters: Vec<usize> = (0..g.dim()).collect();
    let rels = commutator_relations(free.table(), g, &letters)?;
    let algebra = free.with_relations(rels)?;
    let mut e = EnvelopingAlgebra {
        g: g.clone(),
        algebra,
        verification: AxiomReport::new(),
    };
    e.verification = e.verify()?;
    Ok(e)
}

impl EnvelopingAlgebra {
    /// `phi(x)` for a coordinate vector over the basis of `g`.
    pub fn phi(&self, x: &[Scalar]) -> Poly {
        self.algebra.reduce(&self.algebra.table().letter_combination(x))
    }

    pub fn dims(&self) -> Vec<usize> {
        self.algebra.dims()
    }

    /// Same generators with extra relations; no longer an enveloping algebra,
    /// used for negative controls.
    pub fn with_extra_relations(&self, relations: Vec<Poly>) -> Result<EnvelopingAlgebra> {
        Ok(EnvelopingAlgebra {
            g: self.g.clone(),
            algebra: self.algebra.with_relations(relations)?,
            verification: self.verification.clone(),
        })
    }

    fn verify(&self) -> Result<AxiomReport> {
        let a = &self.algebra;
        let n = self.g.dim();
        let basis = a.basis();
        let mut report = AxiomReport::new();
        report.declare(PHI_BRACKET);
        for i in 0..n {
            for j in 0..n {
                let (xi, xj) = (a.generator(i), a.generator(j));
                let comm = poly_sub(&a.multiply(&xi, &xj)?, &a.multiply(&xj, &xi)?);
                let r = poly_sub(&comm, &self.phi(&self.g.basis_product(i, j)));
                report.observe(PHI_BRACKET, &[i, j], a.coordinates(&r));
            }
        }
        report.declare(PHI_TWIST);
        let beta = self.g.twist();
        for i in 0..n {
            let r = poly_sub(&a.twist(&a.generator(i)), &self.phi(&beta.column(i)));
            report.observe(PHI_TWIST, &[i], a.coordinates(&r));
        }
        report.declare(QUOTIENT_INVOLUTIVE);
        for (k, &b) in basis.iter().enumerate() {
            let m = super::monomial::monomial(b);
            let r = poly_sub(&a.twist(&a.twist(&m)), &m);
            report.observe(QUOTIENT_INVOLUTIVE, &[k], a.coordinates(&r));
        }
        report.declare(QUOTIENT_HOM_ASSOCIATIVE);
        let t = a.table();
        let pos: Vec<(usize, usize)> = basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| t.degree(b) > 0)
            .map(|(k, &b)| (k, b))
            .collect();
        for &(ku, u) in &pos {
            for &(kv, v) in &pos {
                for &(kw, w) in &pos {
                    if t.degree(u) + t.degree(v) + t.degree(w) > a.degree() {
                        continue;
                    }
                    let (pu, pv, pw) = (
                        super::monomial::monomial(u),
                        super::monomial::monomial(v),
                        super::monomial::monomial(w),
                    );
                    let lhs = a.multiply(&a.twist(&pu), &a.multiply(&pv, &pw)?)?;
                    let rhs = a.multiply(&a.multiply(&pu, &pv)?, &a.twist(&pw))?;
                    report.observe(QUOTIENT_HOM_ASSOCIATIVE, &[ku, kv, kw], a.coordinates(&poly_sub(&lhs, &rhs)));
                }
            }
        }
        Ok(report)
    }
}

/// Injectivity of `phi` at the truncation: the images of the basis of `g`
/// are independent in the quotient.
pub fn check_pbw_injectivity(e: &EnvelopingAlgebra) -> EmbeddingCertificate {
    let n = e.g.dim();
    let images: Vec<Poly> = (0..n).map(|i| e.algebra.generator(i)).collect();
    let kernel = n - e.algebra.rank_of(&images);
    EmbeddingCertificate::new(Some(e.algebra.degree()), None, Vec::new(), kernel)
}

/// A derivation of the truncated free algebra, extended from the generators
/// by `D(xy) = D(x) alpha^k(y) + alpha^k(x) D(y)`, that descends to the
/// quotient.
#[derive(Debug, Clone)]
pub struct DerivationOperator {
    pub power: u32,
    /// `D` of every monomial of the free table, unreduced.
    images: Vec<Poly>,
}

/// `D` on every monomial of `table`, given its values on the letters.
pub(crate) fn leibniz_images(table: &MonomialTable, on_letters: &[Poly], power: u32) -> Result<Vec<Poly>> {
    let mut images: Vec<Poly> = Vec::with_capacity(table.len());
    let twist_k = |id: usize| {
        if power % 2 == 1 {
            table.twist_monomial(id).clone()
        } else {
            super::monomial::monomial(id)
        }
    };
    for id in 0..table.len() {
        let img = match table.node(id) {
            Node::Unit => Poly::new(),
            Node::Leaf(i) => on_letters[i].clone(),
            Node::Mul(a, b) => poly_add(
                &table.mul_poly(&images[a], &twist_k(b))?,
                &table.mul_poly(&twist_k(a), &images[b])?,
            ),
        };
        images.push(img);
    }
    Ok(images)
}

impl DerivationOperator {
    pub fn apply_free(&self, p: &Poly) -> Poly {
        let mut out = Poly::new();
        for (&id, c) in p {
            poly_axpy(&mut out, c, &self.images[id]);
        }
        out
    }

    /// `D` on the quotient, applied to a normal form.
    pub fn apply(&self, a: &PresentedAlgebraTrunc, u: &Poly) -> Poly {
        a.reduce(&self.apply_free(&a.reduce(u)))
    }

    /// Matrix over the quotient basis.
    pub fn matrix(&self, a: &PresentedAlgebraTrunc) -> Matrix {
        let basis = a.basis();
        let cols: Vec<_> = basis
            .iter()
            .map(|&b| a.coordinates(&self.apply(a, &super::monomial::monomial(b))))
            .collect();
        Matrix::from_columns(basis.len(), &cols)
    }
}

/// Extends a `beta^k`-derivation of `g` to the truncated enveloping algebra.
///
/// Fails if some element of the truncated ideal is not mapped into the ideal,
/// i.e. the extension is not well defined at this truncation.
pub fn extend_derivation(e: &EnvelopingAlgebra, d: &DerivationData) -> Result<DerivationOperator> {
    let report = check_beta_k_derivation(&e.g, d)?;
    if let Some(v) = report.violations.first() {
        return Err(Error::hypothesis(v.axiom.clone(), format!("fails at {:?}", v.witness)));
    }
    let a = &e.algebra;
    let t = a.table();
    let on_letters: Vec<Poly> = (0..e.g.dim()).map(|i| t.letter_combination(&d.map.column(i))).collect();
    let op = DerivationOperator {
        power: d.power,
        images: leibniz_images(t, &on_letters, d.power)?,
    };
    for row in a.ideal_rows() {
        let image = a.reduce(&op.apply_free(row));
        if !image.is_empty() {
            return Err(Error::hypothesis(
                "derivation extension well defined",
                format!("{} maps to {}", a.render(row), a.render(&image)),
            ));
        }
    }
    for b in a.basis() {
        let m = super::monomial::monomial(b);
        let mut twisted = m.clone();
        for _ in 0..d.power % 2 {
            twisted = a.twist(&twisted);
        }
        let mut lhs = op.apply(a, &twisted);
        let mut rhs = op.apply(a, &m);
        for _ in 0..d.power % 2 {
            rhs = a.twist(&rhs);
        }
        lhs = a.reduce(&lhs);
        if !a.equal_mod_ideal(&lhs, &rhs) {
            return Err(Error::hypothesis(
                "derivation commutes with the twist",
                format!("fails on {}", t.render(b)),
            ));
        }
    }
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;
    use crate::homalg::{adjoint, catalog};

    #[test]
    fn abelian_one_dim_is_polynomial_ring() {
        let e = enveloping(&catalog::abelian(1), 3).unwrap();
        assert_eq!(e.dims(), vec![1, 1, 1, 1]);
        assert!(e.verification.pass());
        assert!(check_pbw_injectivity(&e).pass);
    }

    #[test]
    fn sl2_filtration_and_relation() {
        let e = enveloping(&catalog::sl2(), 2).unwrap();
        assert_eq!(e.dims(), vec![1, 3, 6]);
        assert!(e.verification.pass(), "{:?}", e.verification.violations);
        let a = &e.algebra;
        let (h, x, y) = (a.generator(0), a.generator(1), a.generator(2));
        let comm = poly_sub(&a.multiply(&x, &y).unwrap(), &a.multiply(&y, &x).unwrap());
        assert!(a.equal_mod_ideal(&comm, &h));
        assert!(check_pbw_injectivity(&e).pass);
    }

    #[test]
    fn abelian_products_commute() {
        let e = enveloping(&catalog::abelian(2), 2).unwrap();
        let a = &e.algebra;
        let (x, y) = (a.generator(0), a.generator(1));
        assert!(a.equal_mod_ideal(&a.multiply(&x, &y).unwrap(), &a.multiply(&y, &x).unwrap()));
    }

    #[test]
    fn forced_kernel_fails_injectivity() {
        let e = enveloping(&catalog::abelian(2), 2).unwrap();
        let x1 = e.algebra.table().leaf(0);
        let bad = e.with_extra_relations(vec![x1]).unwrap();
        let cert = check_pbw_injectivity(&bad);
        assert!(!cert.pass);
        assert_eq!(cert.kernel_dim, 1);
    }

    #[test]
    fn extension_examples() {
        let e = enveloping(&catalog::abelian(2), 2).unwrap();
        let zero = extend_derivation(&e, &DerivationData::zero(2, 1)).unwrap();
        assert!(zero.matrix(&e.algebra).is_zero());
        let id = extend_derivation(&e, &DerivationData::new(Matrix::identity(2), 1).unwrap()).unwrap();
        let a = &e.algebra;
        let xy = a.multiply(&a.generator(0), &a.generator(1)).unwrap();
        assert_eq!(id.apply(a, &xy), super::super::monomial::poly_scale(&int(2), &xy));

        let sl2 = catalog::sl2();
        let e = enveloping(&sl2, 3).unwrap();
        let ad_h = adjoint(&sl2, &vector::unit(3, 0)).unwrap();
        let op = extend_derivation(&e, &ad_h).unwrap();
        for r in e.algebra.relations() {
            assert!(e.algebra.reduce(&op.apply_free(r)).is_empty());
        }
    }
}
