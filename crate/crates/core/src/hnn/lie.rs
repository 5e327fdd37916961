use crate::construct::{semidirect_product, HomAction};
use crate::error::{Error, Result};
use crate::exactlin::{vector, Matrix, Scalar};
use crate::freepres::{
    check_pbw_injectivity, commutator_relations, enveloping, poly_add, poly_sub, FreeConfig, LetterBound,
    MonomialTable, Node, Poly, PresentedAlgebraTrunc,
};
use crate::homalg::{
    check_beta_k_derivation, check_hom_lie, check_subalgebra, DerivationData, HomLieAlgebra, SubspaceData,
    Tensor3, TwistedAlgebra,
};
use crate::report::{AxiomReport, EmbeddingCertificate, RelationCheck};

pub const LIE_SUBALGEBRA: &str = "Hom-Lie subalgebra";
pub const D_LEIBNIZ: &str = "d is a beta-derivation on s";
pub const D_COMMUTES: &str = "d commutes with the twist";
pub const D_EXTENDS: &str = "d extends to the subalgebra generated by s";
pub const BRACKETS_AGREE: &str = "bracket tables agree";
pub const TWISTS_AGREE: &str = "twists agree";

/// A Hom-Lie algebra `g`, a Hom-subalgebra `s` and `d: s -> g` satisfying
/// `d[u, v] = [d u, beta v] + [beta u, d v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HNNLieData {
    pub g: HomLieAlgebra,
    pub s: SubspaceData,
    /// `dim(g) x dim(s)`, columns in the basis of `s`.
    pub d: Matrix,
}

impl HNNLieData {
    pub fn new(g: HomLieAlgebra, s: SubspaceData, d: Matrix) -> Result<Self> {
        if s.parent_dim() != g.dim() || d.rows() != g.dim() || d.cols() != s.dim() {
            return Err(Error::invalid(format!(
                "derivation must be a {} x {} matrix",
                g.dim(),
                s.dim()
            )));
        }
        Ok(HNNLieData { g, s, d })
    }

    /// `s = g` with a derivation of `g`.
    pub fn from_derivation(g: HomLieAlgebra, d: &DerivationData) -> Result<Self> {
        let n = g.dim();
        Self::new(g, SubspaceData::whole(n), d.map.clone())
    }

    pub fn apply_d(&self, s_coords: &[Scalar]) -> Vec<Scalar> {
        self.d.mul_vec(s_coords)
    }
}

pub fn validate_hnn_lie_data(data: &HNNLieData) -> Result<AxiomReport> {
    let g = &data.g;
    let mut report = check_hom_lie(g);
    report.merge(check_subalgebra(g, &data.s)?.prefixed(&format!("{LIE_SUBALGEBRA}: ")));
    let m = data.s.dim();
    let basis = data.s.basis();
    let beta_s = data.s.restrict(g.twist());
    report.declare(D_LEIBNIZ);
    for i in 0..m {
        for j in 0..m {
            let Some(br) = data.s.coordinates(&g.bracket(&basis[i], &basis[j])) else {
                continue;
            };
            let lhs = data.apply_d(&br);
            let rhs = vector::add(
                &g.bracket(&data.d.column(i), &g.apply_twist(&basis[j])),
                &g.bracket(&g.apply_twist(&basis[i]), &data.d.column(j)),
            );
            report.observe(D_LEIBNIZ, &[i, j], vector::sub(&lhs, &rhs));
        }
    }
    report.declare(D_COMMUTES);
    if let Some(beta_s) = beta_s {
        let r = &(g.twist() * &data.d) - &(&data.d * &beta_s);
        for j in 0..m {
            report.observe(D_COMMUTES, &[j], r.column(j));
        }
    }
    Ok(report)
}

fn require(report: &AxiomReport) -> Result<()> {
    match report.violations.first() {
        Some(v) => Err(Error::hypothesis(v.axiom.clone(), format!("fails at {:?}", v.witness))),
        None => Ok(()),
    }
}

/// Generators `g` plus `t`, with `beta(t) = t` and relations `[t, s_j] = d(s_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HNNLiePresentation {
    pub generators: Vec<String>,
    pub twist: Matrix,
    pub g: HomLieAlgebra,
    /// `(s_j, d(s_j))` in `g`-coordinates.
    pub t_relations: Vec<(Vec<Scalar>, Vec<Scalar>)>,
}

pub fn hnn_lie_presentation(data: &HNNLieData) -> Result<HNNLiePresentation> {
    require(&validate_hnn_lie_data(data)?)?;
    let g = &data.g;
    let n = g.dim();
    let mut generators = g.names().to_vec();
    generators.push("t".into());
    let mut twist = Matrix::identity(n + 1);
    for i in 0..n {
        for j in 0..n {
            twist[(i, j)] = g.twist()[(i, j)].clone();
        }
    }
    let t_relations = (0..data.s.dim())
        .map(|j| (data.s.basis()[j].clone(), data.d.column(j)))
        .collect();
    Ok(HNNLiePresentation {
        generators,
        twist,
        g: g.clone(),
        t_relations,
    })
}

impl HNNLiePresentation {
    /// When `s` is all of `g` the presentation is the Hom-Lie algebra
    /// `g ⊕ span{t}` with `[t, x] = d(x)`.
    pub fn semidirect_table(&self) -> Option<HomLieAlgebra> {
        let n = self.g.dim();
        if self.t_relations.len() != n {
            return None;
        }
        let s_cols: Vec<_> = self.t_relations.iter().map(|(s, _)| s.clone()).collect();
        let d_cols: Vec<_> = self.t_relations.iter().map(|(_, d)| d.clone()).collect();
        let inv = Matrix::from_columns(n, &s_cols).inverse()?;
        let d_std = &Matrix::from_columns(n, &d_cols) * &inv;
        let mut t = Tensor3::square(n + 1);
        for i in 0..n {
            for j in 0..n {
                let mut v = self.g.basis_product(i, j);
                v.push(Scalar::from_integer(0.into()));
                t.set_entry(i, j, &v);
            }
            let mut di = d_std.column(i);
            di.push(Scalar::from_integer(0.into()));
            t.set_entry(n, i, &di);
            t.set_entry(i, n, &vector::neg(&di));
        }
        HomLieAlgebra::new(self.twist.clone(), t, Some(self.generators.clone())).ok()
    }
}

/// Compares the presentation for `s = g` with the semidirect product of `g`
/// by `span{t}` acting through `d`.
pub fn crosscheck_semidirect(g: &HomLieAlgebra, d: &DerivationData) -> Result<AxiomReport> {
    require(&check_beta_k_derivation(g, d)?)?;
    let pres = hnn_lie_presentation(&HNNLieData::from_derivation(g.clone(), d)?)?;
    let table = pres
        .semidirect_table()
        .ok_or_else(|| Error::Internal("presentation over all of g has no table".into()))?;
    let semi = semidirect_product(&HomAction::by_derivation(g, d)?)?.result;
    let n = table.dim();
    let mut report = AxiomReport::new();
    report.declare(BRACKETS_AGREE);
    for i in 0..n {
        for j in 0..n {
            report.observe(
                BRACKETS_AGREE,
                &[i, j],
                vector::sub(&table.basis_product(i, j), &semi.basis_product(i, j)),
            );
        }
    }
    report.declare(TWISTS_AGREE);
    let diff = table.twist() - semi.twist();
    for j in 0..n {
        report.observe(TWISTS_AGREE, &[j], diff.column(j));
    }
    Ok(report)
}

/// The truncated model `M` of the enveloping algebra of the extension:
/// letters `g` and `t`, at most `max_t` copies of `t` per monomial.
#[derive(Debug, Clone)]
pub struct HNNLieModel {
    pub algebra: PresentedAlgebraTrunc,
    /// The same truncation without the `t`-relations.
    pub base: PresentedAlgebraTrunc,
    /// Index of the letter `t`.
    pub t: usize,
    /// Elements of the free algebra whose classes form a basis of the image
    /// of the subalgebra generated by `s`, paired with their derivatives.
    pub images: Vec<(Poly, Poly)>,
}

impl HNNLieModel {
    /// `phi(x)` for `x` in `g`-coordinates.
    pub fn phi(&self, x: &[Scalar]) -> Poly {
        let mut full = x.to_vec();
        full.push(Scalar::from_integer(0.into()));
        self.algebra.reduce(&self.algebra.table().letter_combination(&full))
    }

    /// `None` when the truncation allows no letter `t`.
    pub fn t_element(&self) -> Option<Poly> {
        let allowed = self.algebra.table().bound().is_none_or(|b| b.max > 0);
        allowed.then(|| self.algebra.generator(self.t))
    }
}

/// Evaluations of the free magma on `s` inside the table of `M`, together with
/// the extension of `d` by the Leibniz rule.
fn s_evaluations(data: &HNNLieData, table: &MonomialTable, degree: usize) -> Result<Vec<(Poly, Poly)>> {
    let n = data.g.dim();
    let m = data.s.dim();
    let beta_s = data
        .s
        .restrict(data.g.twist())
        .ok_or_else(|| Error::hypothesis("twist-stable subalgebra", "beta does not preserve s"))?;
    let magma = MonomialTable::new(
        (1..=m).map(|j| format!("s{j}")).collect(),
        beta_s,
        degree,
        false,
        None,
    )?;
    let lift = |v: &[Scalar]| {
        let mut full = v.to_vec();
        full.resize(n + 1, Scalar::from_integer(0.into()));
        table.letter_combination(&full)
    };
    let mut out: Vec<(Poly, Poly)> = Vec::with_capacity(magma.len());
    for id in 0..magma.len() {
        let pair = match magma.node(id) {
            Node::Unit => (Poly::new(), Poly::new()),
            Node::Leaf(j) => (lift(&data.s.basis()[j]), lift(&data.d.column(j))),
            Node::Mul(a, b) => {
                let (ea, da) = &out[a];
                let (eb, db) = &out[b];
                let e = table.mul_poly(ea, eb)?;
                let d = poly_add(
                    &table.mul_poly(da, &table.twist_poly(eb))?,
                    &table.mul_poly(&table.twist_poly(ea), db)?,
                );
                (e, d)
            }
        };
        out.push(pair);
    }
    Ok(out)
}

/// Builds `M` at degree `degree` with at most `max_t` letters `t` per
/// monomial.
///
/// `d` is first extended to the subalgebra generated by `s` inside the
/// enveloping algebra of `g`; the extension must kill every relation among
/// the images of `s`, otherwise the hypothesis is reported as failed.
pub fn build_m(data: &HNNLieData, degree: usize, max_t: usize) -> Result<HNNLieModel> {
    require(&validate_hnn_lie_data(data)?)?;
    if degree < 2 {
        return Err(Error::invalid("truncation degree must be at least 2"));
    }
    if max_t == 0 && data.s.dim() > 0 {
        return Err(Error::invalid("the t-relations need at least one letter t"));
    }
    let g = &data.g;
    let n = g.dim();
    let pres = hnn_lie_presentation(data)?;
    let free = PresentedAlgebraTrunc::free(FreeConfig {
        names: pres.generators.clone(),
        generator_twist: pres.twist.clone(),
        degree,
        unital: true,
        bound: Some(LetterBound { letter: n, max: max_t }),
    })?;
    let letters: Vec<usize> = (0..n).collect();
    let base = free.with_relations(commutator_relations(free.table(), g, &letters)?)?;
    let table = base.table();
    let evals = s_evaluations(data, table, degree - 1)?;

    let cols: Vec<Vec<Scalar>> = evals.iter().map(|(e, _)| base.coordinates(e)).collect();
    let rows = base.basis().len();
    if !cols.is_empty() {
        let eval_matrix = Matrix::from_columns(rows, &cols);
        for kappa in eval_matrix.kernel() {
            let mut image = Poly::new();
            for (c, (_, dv)) in kappa.iter().zip(&evals) {
                image = poly_add(&image, &crate::freepres::poly_scale(c, dv));
            }
            let r = base.reduce(&image);
            if !r.is_empty() {
                return Err(Error::hypothesis(
                    D_EXTENDS,
                    format!("a relation among images of s maps to {}", base.render(&r)),
                ));
            }
        }
    }

    let mut chosen: Vec<usize> = Vec::new();
    let mut chosen_cols: Vec<Vec<Scalar>> = Vec::new();
    for (k, c) in cols.iter().enumerate() {
        chosen_cols.push(c.clone());
        if Matrix::from_columns(rows, &chosen_cols).rank() == chosen_cols.len() {
            chosen.push(k);
        } else {
            chosen_cols.pop();
        }
    }
    let mut rels = Vec::new();
    let mut images = Vec::new();
    for &k in &chosen {
        let t = table.leaf(n);
        let (e, dv) = &evals[k];
        let comm = poly_sub(&table.mul_poly(&t, e)?, &table.mul_poly(e, &t)?);
        rels.push(poly_sub(&comm, dv));
        images.push((e.clone(), dv.clone()));
    }
    let algebra = base.with_relations(rels)?;
    Ok(HNNLieModel {
        algebra,
        base,
        t: n,
        images,
    })
}

/// `g -> M` is injective and `[t, phi(s_j)] = phi(d s_j)` holds in `M`.
///
/// The enveloping algebra of `g` must pass its own injectivity check at the
/// same degree.
pub fn embedding_certificate_lie(data: &HNNLieData, degree: usize, max_t: usize) -> Result<EmbeddingCertificate> {
    let ug = enveloping(&data.g, degree)?;
    require(&ug.verification)?;
    if !check_pbw_injectivity(&ug).pass {
        return Err(Error::hypothesis(
            "injectivity of g into its enveloping algebra",
            format!("fails at degree {degree}"),
        ));
    }
    let model = build_m(data, degree, max_t)?;
    let a = &model.algebra;
    let n = data.g.dim();
    let mut relations = Vec::new();
    for (j, (s, ds)) in data.s.basis().iter().zip(data.d.columns()).enumerate() {
        let t = model.t_element().ok_or_else(|| Error::Internal("t-relation without letter t".into()))?;
        let ps = model.phi(s);
        let r = poly_sub(&poly_sub(&a.multiply(&t, &ps)?, &a.multiply(&ps, &t)?), &model.phi(&ds));
        relations.push(RelationCheck {
            label: format!("[t, s{}] = d(s{})", j + 1, j + 1),
            zero: a.reduce(&r).is_empty(),
        });
    }
    let leaves: Vec<Poly> = (0..n).map(|i| a.generator(i)).collect();
    let kernel = n - a.rank_of(&leaves);
    Ok(EmbeddingCertificate::new(Some(degree), Some(max_t), relations, kernel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;
    use crate::homalg::{adjoint, catalog};

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    /// `[x, y] = y`, `s = span{y}`, `d(y) = y`.
    fn affine_example() -> HNNLieData {
        let g = catalog::affine_line();
        let s = SubspaceData::new(2, vec![ints(&[0, 1])]).unwrap();
        HNNLieData::new(g, s, Matrix::from_i64(&[&[0], &[1]])).unwrap()
    }

    #[test]
    fn affine_example_embeds() {
        let cert = embedding_certificate_lie(&affine_example(), 3, 2).unwrap();
        assert!(cert.pass, "{cert:?}");
        assert_eq!(cert.kernel_dim, 0);
    }

    #[test]
    fn presentation_generators() {
        let p = hnn_lie_presentation(&affine_example()).unwrap();
        assert_eq!(p.generators, vec!["x", "y", "t"]);
        assert_eq!(p.t_relations.len(), 1);
        assert!(p.semidirect_table().is_none());
    }

    #[test]
    fn inner_derivation_matches_semidirect() {
        let g = catalog::sl2();
        let d = adjoint(&g, &ints(&[1, 0, 0])).unwrap();
        let r = crosscheck_semidirect(&g, &d).unwrap();
        assert!(r.pass(), "{:?}", r.violations);
    }

    #[test]
    fn non_subalgebra_is_rejected() {
        let g = catalog::sl2();
        let s = SubspaceData::new(3, vec![ints(&[0, 1, 0]), ints(&[0, 0, 1])]).unwrap();
        let data = HNNLieData::new(g, s, Matrix::zeros(3, 2)).unwrap();
        match hnn_lie_presentation(&data) {
            Err(Error::Hypothesis { hypothesis, .. }) => assert!(hypothesis.starts_with(LIE_SUBALGEBRA)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_derivation_is_rejected() {
        let g = catalog::affine_line();
        let s = SubspaceData::whole(2);
        // d(x) = x, d(y) = 0: d[x, y] = 0 but [dx, y] + [x, dy] = y
        let data = HNNLieData::new(g, s, Matrix::from_i64(&[&[1, 0], &[0, 0]])).unwrap();
        assert!(matches!(build_m(&data, 3, 1), Err(Error::Hypothesis { .. })));
    }

    #[test]
    fn twisted_sl2_derivation_embeds() {
        let beta = Matrix::from_i64(&[&[-1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        let tg = catalog::sl2().yau_twist(&beta).unwrap();
        // e + f is fixed by beta, so its adjoint commutes with the twist
        let d = adjoint(&tg, &ints(&[0, 1, 1])).unwrap();
        let data = HNNLieData::from_derivation(tg.clone(), &d).unwrap();
        assert!(validate_hnn_lie_data(&data).unwrap().pass());
        assert!(crosscheck_semidirect(&tg, &d).unwrap().pass());
        let cert = embedding_certificate_lie(&data, 3, 1).unwrap();
        assert!(cert.pass, "{cert:?}");
    }

    #[test]
    fn zero_subalgebra_adjoins_free_letter() {
        let g = catalog::abelian(2);
        let data = HNNLieData::new(g, SubspaceData::zero(2), Matrix::zeros(2, 0)).unwrap();
        let p = hnn_lie_presentation(&data).unwrap();
        assert!(p.t_relations.is_empty());
        let m = build_m(&data, 2, 1).unwrap();
        let t = m.t_element().unwrap();
        let x = m.phi(&ints(&[1, 0]));
        let a = &m.algebra;
        assert!(!a.equal_mod_ideal(&a.multiply(&t, &x).unwrap(), &a.multiply(&x, &t).unwrap()));
        assert!(embedding_certificate_lie(&data, 2, 0).unwrap().pass);
    }

    #[test]
    fn weyl_relation_holds() {
        let g = catalog::abelian(1);
        let data = HNNLieData::new(g, SubspaceData::whole(1), Matrix::identity(1)).unwrap();
        let m = build_m(&data, 3, 2).unwrap();
        let a = &m.algebra;
        let (t, x) = (m.t_element().unwrap(), m.phi(&ints(&[1])));
        let comm = poly_sub(&a.multiply(&t, &x).unwrap(), &a.multiply(&x, &t).unwrap());
        assert!(a.equal_mod_ideal(&comm, &x));
        let cert = embedding_certificate_lie(&data, 3, 2).unwrap();
        assert!(cert.pass);
        assert_eq!(cert.relations.len(), 1);
        assert!(build_m(&data, 3, 0).is_err());
    }
}
