use crate::error::{Error, Result};
use crate::exactlin::{vector, Matrix, Scalar};
use crate::homalg::{
    check_hom_lie, DerivationData, HomLieAlgebra, SubspaceData, Tensor3, TwistedAlgebra,
};
use crate::report::AxiomReport;

pub const ACTION_BRACKET: &str = "Hom-action (a) bracket compatibility";
pub const ACTION_DERIVATION: &str = "Hom-action (b) acts by derivations";
pub const ACTION_TWIST: &str = "Hom-action (c) twist compatibility";

/// Bilinear `l x m -> m`, `x |> m = sum tensor[x][m][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomAction {
    pub actor: HomLieAlgebra,
    pub target: HomLieAlgebra,
    pub tensor: Tensor3,
}

impl HomAction {
    pub fn new(actor: HomLieAlgebra, target: HomLieAlgebra, tensor: Tensor3) -> Result<Self> {
        let want = (actor.dim(), target.dim(), target.dim());
        if tensor.shape() != want {
            return Err(Error::invalid(format!(
                "action tensor has shape {:?}, expected {want:?}",
                tensor.shape()
            )));
        }
        Ok(HomAction {
            actor,
            target,
            tensor,
        })
    }

    pub fn zero(actor: HomLieAlgebra, target: HomLieAlgebra) -> Self {
        let tensor = Tensor3::zeros(actor.dim(), target.dim(), target.dim());
        HomAction {
            actor,
            target,
            tensor,
        }
    }

    /// `l` acting on itself by its bracket.
    pub fn adjoint(l: &HomLieAlgebra) -> Self {
        HomAction {
            actor: l.clone(),
            target: l.clone(),
            tensor: l.table().clone(),
        }
    }

    /// The one-dimensional algebra `span{t}` (identity twist) acting by `d`.
    pub fn by_derivation(m: &HomLieAlgebra, d: &DerivationData) -> Result<Self> {
        let n = m.dim();
        if d.map.rows() != n {
            return Err(Error::invalid("derivation does not match the target dimension"));
        }
        let actor = HomLieAlgebra::new(Matrix::identity(1), Tensor3::square(1), Some(vec!["t".into()]))?;
        let mut tensor = Tensor3::zeros(1, n, n);
        for j in 0..n {
            tensor.set_entry(0, j, &d.map.column(j));
        }
        Self::new(actor, m.clone(), tensor)
    }

    pub fn act(&self, x: &[Scalar], m: &[Scalar]) -> Vec<Scalar> {
        self.tensor.apply(x, m)
    }
}

/// Evaluates the three Hom-action axioms on all basis tuples.
///
/// Both algebras must themselves pass [`check_hom_lie`].
pub fn check_hom_action(act: &HomAction) -> Result<AxiomReport> {
    for (role, alg) in [("actor", &act.actor), ("target", &act.target)] {
        if let Some(v) = check_hom_lie(alg).violations.first() {
            return Err(Error::hypothesis(
                format!("{role} is a Hom-Lie algebra"),
                format!("{} fails at {:?}", v.axiom, v.witness),
            ));
        }
    }
    let (l, m) = (&act.actor, &act.target);
    let (p, n) = (l.dim(), m.dim());
    let ex = |i: usize| vector::unit(p, i);
    let em = |i: usize| vector::unit(n, i);
    let al = l.twist().columns();
    let am = m.twist().columns();
    let mut report = AxiomReport::new();
    report.declare(ACTION_BRACKET);
    for x in 0..p {
        for y in 0..p {
            for k in 0..n {
                let lhs = act.act(&l.basis_product(x, y), &am[k]);
                let rhs = vector::sub(
                    &act.act(&al[x], &act.act(&ex(y), &em(k))),
                    &act.act(&al[y], &act.act(&ex(x), &em(k))),
                );
                report.observe(ACTION_BRACKET, &[x, y, k], vector::sub(&lhs, &rhs));
            }
        }
    }
    report.declare(ACTION_DERIVATION);
    for x in 0..p {
        for a in 0..n {
            for b in 0..n {
                let lhs = act.act(&al[x], &m.basis_product(a, b));
                let rhs = vector::add(
                    &m.bracket(&act.act(&ex(x), &em(a)), &am[b]),
                    &m.bracket(&am[a], &act.act(&ex(x), &em(b))),
                );
                report.observe(ACTION_DERIVATION, &[x, a, b], vector::sub(&lhs, &rhs));
            }
        }
    }
    report.declare(ACTION_TWIST);
    for x in 0..p {
        for a in 0..n {
            let lhs = m.apply_twist(&act.act(&ex(x), &em(a)));
            let rhs = act.act(&al[x], &am[a]);
            report.observe(ACTION_TWIST, &[x, a], vector::sub(&lhs, &rhs));
        }
    }
    Ok(report)
}

/// `m ⋊ l` on `m ⊕ l` (target coordinates first) with the embedded copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectProduct {
    pub result: HomLieAlgebra,
    pub target_embedding: SubspaceData,
    pub actor_embedding: SubspaceData,
}

pub fn semidirect_product(act: &HomAction) -> Result<SemidirectProduct> {
    let report = check_hom_action(act)?;
    if let Some(v) = report.violations.first() {
        return Err(Error::hypothesis(v.axiom.clone(), format!("fails at {:?}", v.witness)));
    }
    let (l, m) = (&act.actor, &act.target);
    let (p, n) = (l.dim(), m.dim());
    let total = n + p;
    let split = |v: &[Scalar]| (v[..n].to_vec(), v[n..].to_vec());
    let mut t = Tensor3::square(total);
    for i in 0..total {
        for j in 0..total {
            let (m1, x1) = split(&vector::unit(total, i));
            let (m2, x2) = split(&vector::unit(total, j));
            // ([m1,m2] + x1 |> m2 - x2 |> m1, [x1,x2])
            let mut top = m.bracket(&m1, &m2);
            top = vector::add(&top, &act.act(&x1, &m2));
            top = vector::sub(&top, &act.act(&x2, &m1));
            let bottom = l.bracket(&x1, &x2);
            top.extend(bottom);
            t.set_entry(i, j, &top);
        }
    }
    let alpha = m.module().direct_sum(l.module()).alpha().clone();
    let names = m.names().iter().chain(l.names()).cloned().collect();
    let result = HomLieAlgebra::new(alpha, t, Some(names))?;
    let target_embedding = SubspaceData::new(total, (0..n).map(|i| vector::unit(total, i)).collect())?;
    let actor_embedding =
        SubspaceData::new(total, (n..total).map(|i| vector::unit(total, i)).collect())?;
    Ok(SemidirectProduct {
        result,
        target_embedding,
        actor_embedding,
    })
}
