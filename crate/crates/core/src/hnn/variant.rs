use crate::error::Result;
use crate::exactlin::{int, LinearMapBetween, Matrix, Scalar};
use crate::homalg::{catalog, theta_derivation_space, HomAssociativeAlgebra, LeibnizVariant, SubspaceData, TwistedAlgebra};

use super::assoc::{embedding_certificate_assoc, HNNAssocData, HNNLetter};

/// An extension datum `(A, B, theta, X)` with `theta` different from the
/// inclusion, on which the two Leibniz conventions can disagree.
pub struct VariantInstance {
    pub name: &'static str,
    pub a: HomAssociativeAlgebra,
    pub sub: SubspaceData,
    pub theta: Matrix,
    pub reps: Vec<Vec<Scalar>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariantOutcome {
    pub variant: LeibnizVariant,
    /// Dimension of the space of derivations admitted by the variant.
    pub derivations: usize,
    /// Basis derivations whose relation residuals vanish at the tested length.
    pub closing: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariantRow {
    pub instance: String,
    pub outcomes: Vec<VariantOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariantExperiment {
    pub max_len: usize,
    pub rows: Vec<VariantRow>,
    /// The variant closing on every instance, when exactly one does.
    pub selected: Option<LeibnizVariant>,
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| int(x)).collect()
}

fn col(v: &[i64]) -> Matrix {
    Matrix::from_columns(v.len(), &[ints(v)])
}

/// Small unital instances with non-inclusion `theta`.
pub fn variant_instances() -> Vec<VariantInstance> {
    let ut2 = catalog::upper_triangular(2);
    let one_ut2 = SubspaceData::new(3, vec![ints(&[1, 0, 1])]).expect("independent");
    let m2 = catalog::matrix_algebra(2);
    let one_m2 = SubspaceData::new(4, vec![ints(&[1, 0, 0, 1])]).expect("independent");
    let d2 = catalog::diagonal(2);
    let one_d2 = SubspaceData::new(2, vec![ints(&[1, 1])]).expect("independent");
    vec![
        VariantInstance {
            name: "ut2 theta(1)=e11",
            a: ut2.clone(),
            sub: one_ut2.clone(),
            theta: col(&[1, 0, 0]),
            reps: vec![ints(&[1, 0, 0]), ints(&[0, 1, 0])],
        },
        VariantInstance {
            name: "ut2 theta(1)=e22",
            a: ut2.clone(),
            sub: one_ut2.clone(),
            theta: col(&[0, 0, 1]),
            reps: vec![ints(&[1, 0, 0]), ints(&[0, 1, 0])],
        },
        VariantInstance {
            name: "ut2 theta(1)=e11+e12",
            a: ut2,
            sub: one_ut2,
            theta: col(&[1, 1, 0]),
            reps: vec![ints(&[1, 0, 0]), ints(&[0, 1, 0])],
        },
        VariantInstance {
            name: "k2 theta(1)=e1",
            a: d2,
            sub: one_d2,
            theta: col(&[1, 0]),
            reps: vec![ints(&[1, 0])],
        },
        VariantInstance {
            name: "m2 theta(1)=e11",
            a: m2,
            sub: one_m2,
            theta: col(&[1, 0, 0, 0]),
            reps: vec![ints(&[1, 0, 0, 0]), ints(&[0, 1, 0, 0]), ints(&[0, 0, 1, 0])],
        },
    ]
}

fn outcome(inst: &VariantInstance, variant: LeibnizVariant, max_len: usize) -> Result<VariantOutcome> {
    let b_module = inst.sub.restricted_module(inst.a.twist())?;
    let theta = LinearMapBetween::new(b_module, inst.a.module().clone(), inst.theta.clone())?;
    let space = theta_derivation_space(&inst.a, &inst.sub, &theta, variant)?;
    let mut closing = 0;
    for delta in &space {
        let letter = HNNLetter::new(&inst.a, inst.sub.clone(), inst.theta.clone(), delta.clone(), inst.reps.clone())?;
        let mut data = HNNAssocData::new(inst.a.clone(), vec![letter]);
        data.variant = variant;
        if embedding_certificate_assoc(&data, max_len)?.relations.iter().all(|r| r.zero) {
            closing += 1;
        }
    }
    Ok(VariantOutcome {
        variant,
        derivations: space.len(),
        closing,
    })
}

/// For every instance and variant, extends each basis derivation of the
/// variant to the truncated module and records whether the defining relation
/// holds.
pub fn variant_experiment(max_len: usize) -> Result<VariantExperiment> {
    let mut rows = Vec::new();
    for inst in variant_instances() {
        let outcomes = LeibnizVariant::ALL
            .iter()
            .map(|&v| outcome(&inst, v, max_len))
            .collect::<Result<Vec<_>>>()?;
        rows.push(VariantRow {
            instance: inst.name.to_string(),
            outcomes,
        });
    }
    let closes_everywhere: Vec<LeibnizVariant> = LeibnizVariant::ALL
        .iter()
        .copied()
        .filter(|&v| {
            rows.iter()
                .all(|r| r.outcomes.iter().any(|o| o.variant == v && o.closing == o.derivations))
        })
        .collect();
    let selected = match closes_everywhere.as_slice() {
        [v] => Some(*v),
        _ => None,
    };
    Ok(VariantExperiment {
        max_len,
        rows,
        selected,
    })
}

impl VariantExperiment {
    pub fn render(&self) -> String {
        let mut s = format!("leibniz variant experiment, max length {}\n", self.max_len);
        for r in &self.rows {
            s.push_str(&format!("instance {}\n", r.instance));
            for o in &r.outcomes {
                s.push_str(&format!(
                    "  {}: derivations {} closing {}\n",
                    o.variant.name(),
                    o.derivations,
                    o.closing
                ));
            }
        }
        match self.selected {
            Some(v) => s.push_str(&format!("selected {}\n", v.name())),
            None => s.push_str("selected none\n"),
        }
        s
    }
}
