use std::collections::VecDeque;
use std::sync::Arc;

use num_traits::Zero;

use super::monomial::{poly_sub, LetterBound, MonomialTable, Poly};
use super::reducer::Reducer;
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Scalar};

/// Parameters of a free involutive Hom-associative algebra truncated at a
/// degree.
#[derive(Debug, Clone)]
pub struct FreeConfig {
    pub names: Vec<String>,
    pub generator_twist: Matrix,
    pub degree: usize,
    /// Adjoin a degree-0 unit fixed by the twist.
    pub unital: bool,
    pub bound: Option<LetterBound>,
}

/// A quotient of the truncated free algebra by the Hom-associativity ideal
/// plus extra relations, with the ideal saturated inside the truncation.
///
/// The ideal is the smallest subspace of the degree-`<= d` part that contains
/// the generators, is stable under the twist, and is closed under left and
/// right multiplication by monomials as long as the product stays inside the
/// truncation. Equalities are therefore certified only up to degree `d`.
#[derive(Debug, Clone)]
pub struct PresentedAlgebraTrunc {
    table: Arc<MonomialTable>,
    ideal: Reducer,
    relations: Vec<Poly>,
}

/// Closes `reducer` under the twist and multiplication by monomials.
fn saturate(table: &MonomialTable, reducer: &mut Reducer, generators: Vec<Poly>) {
    let d = table.max_degree();
    let positive: Vec<usize> = table.positive().collect();
    let mut queue: VecDeque<Poly> = generators.into();
    while let Some(p) = queue.pop_front() {
        let Some(row) = reducer.insert(&p) else {
            continue;
        };
        let e = table.poly_degree(&row);
        queue.push_back(table.twist_poly(&row));
        for &m in &positive {
            if table.degree(m) + e > d {
                break;
            }
            let mp = super::monomial::monomial(m);
            if let Some(x) = table.try_mul_poly(&mp, &row) {
                queue.push_back(x);
            }
            if let Some(x) = table.try_mul_poly(&row, &mp) {
                queue.push_back(x);
            }
        }
    }
}

/// `alpha(x)(yz) - (xy)alpha(z)` for positive-degree monomials inside the
/// truncation.
fn hom_associativity_instances(table: &MonomialTable) -> Vec<Poly> {
    let d = table.max_degree();
    let positive: Vec<usize> = table.positive().collect();
    let mut out = Vec::new();
    for &x in &positive {
        for &y in &positive {
            if table.degree(x) + table.degree(y) + 1 > d {
                break;
            }
            let Some(xy) = table.mul(x, y) else { continue };
            for &z in &positive {
                if table.degree(x) + table.degree(y) + table.degree(z) > d {
                    break;
                }
                let Some(yz) = table.mul(y, z) else { continue };
                let lhs = table.try_mul_poly(table.twist_monomial(x), &super::monomial::monomial(yz));
                let rhs = table.try_mul_poly(&super::monomial::monomial(xy), table.twist_monomial(z));
                if let (Some(l), Some(r)) = (lhs, rhs) {
                    let rel = poly_sub(&l, &r);
                    if !rel.is_empty() {
                        out.push(rel);
                    }
                }
            }
        }
    }
    out
}

impl PresentedAlgebraTrunc {
    /// The truncated free involutive Hom-associative algebra.
    pub fn free(config: FreeConfig) -> Result<Self> {
        let table = MonomialTable::new(
            config.names,
            config.generator_twist,
            config.degree,
            config.unital,
            config.bound,
        )?;
        let mut ideal = Reducer::new();
        let gens = hom_associativity_instances(&table);
        saturate(&table, &mut ideal, gens);
        Ok(PresentedAlgebraTrunc {
            table: Arc::new(table),
            ideal,
            relations: Vec::new(),
        })
    }

    /// Adds relations (elements of the free algebra, built with
    /// [`PresentedAlgebraTrunc::table`]) to the ideal.
    pub fn with_relations(&self, relations: Vec<Poly>) -> Result<Self> {
        let n = self.table.len();
        if relations.iter().any(|r| r.keys().any(|&k| k >= n)) {
            return Err(Error::invalid("relation refers to an unknown monomial"));
        }
        let mut ideal = self.ideal.clone();
        saturate(&self.table, &mut ideal, relations.clone());
        let mut all = self.relations.clone();
        all.extend(relations);
        Ok(PresentedAlgebraTrunc {
            table: Arc::clone(&self.table),
            ideal,
            relations: all,
        })
    }

    pub fn table(&self) -> &MonomialTable {
        &self.table
    }

    pub fn degree(&self) -> usize {
        self.table.max_degree()
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    /// Echelon rows spanning the saturated ideal.
    pub fn ideal_rows(&self) -> impl Iterator<Item = &Poly> {
        self.ideal.rows()
    }

    pub fn generator(&self, i: usize) -> Poly {
        self.reduce(&self.table.leaf(i))
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        self.ideal.reduce(p)
    }

    /// Product of reduced elements, reduced; errors past the truncation.
    pub fn multiply(&self, u: &Poly, v: &Poly) -> Result<Poly> {
        Ok(self.reduce(&self.table.mul_poly(u, v)?))
    }

    pub fn twist(&self, u: &Poly) -> Poly {
        self.reduce(&self.table.twist_poly(u))
    }

    /// `u = v` in the quotient, valid up to the truncation degree.
    pub fn equal_mod_ideal(&self, u: &Poly, v: &Poly) -> bool {
        self.reduce(&poly_sub(u, v)).is_empty()
    }

    /// Quotient basis monomials of degree `k`.
    pub fn graded_basis(&self, k: usize) -> Result<Vec<usize>> {
        if k > self.degree() {
            return Err(Error::TruncationOverflow {
                degree: k,
                limit: self.degree(),
            });
        }
        Ok(self
            .table
            .of_degree(k)
            .iter()
            .copied()
            .filter(|&id| !self.ideal.is_pivot(id))
            .collect())
    }

    /// Quotient basis dimension per degree `0..=d`.
    pub fn dims(&self) -> Vec<usize> {
        (0..=self.degree())
            .map(|k| self.graded_basis(k).expect("within truncation").len())
            .collect()
    }

    /// All quotient basis monomials in id order.
    pub fn basis(&self) -> Vec<usize> {
        (0..self.table.len()).filter(|&id| !self.ideal.is_pivot(id)).collect()
    }

    /// Dense coordinates of the normal form over [`Self::basis`].
    pub fn coordinates(&self, u: &Poly) -> Vec<Scalar> {
        let r = self.reduce(u);
        self.basis()
            .into_iter()
            .map(|id| r.get(&id).cloned().unwrap_or_else(Scalar::zero))
            .collect()
    }

    /// Number of independent elements among `images`, in the quotient.
    pub fn rank_of(&self, images: &[Poly]) -> usize {
        if images.is_empty() {
            return 0;
        }
        let cols: Vec<_> = images.iter().map(|p| self.coordinates(p)).collect();
        Matrix::from_columns(cols[0].len(), &cols).rank()
    }

    pub fn render(&self, u: &Poly) -> String {
        self.table.render_poly(u)
    }

    /// Basis terms of degree `k` in canonical text form.
    pub fn render_basis(&self, k: usize) -> Result<Vec<String>> {
        Ok(self.graded_basis(k)?.into_iter().map(|id| self.table.render(id)).collect())
    }
}

/// The truncated free involutive Hom-associative algebra on a Hom-module.
#[derive(Debug, Clone)]
pub struct FreeAlgebraTrunc(PresentedAlgebraTrunc);

impl FreeAlgebraTrunc {
    pub fn new(config: FreeConfig) -> Result<Self> {
        PresentedAlgebraTrunc::free(config).map(FreeAlgebraTrunc)
    }

    pub fn graded_basis(&self, k: usize) -> Result<Vec<usize>> {
        self.0.graded_basis(k)
    }

    pub fn present(&self, relations: Vec<Poly>) -> Result<PresentedAlgebraTrunc> {
        self.0.with_relations(relations)
    }

    pub fn algebra(&self) -> &PresentedAlgebraTrunc {
        &self.0
    }
}

impl std::ops::Deref for FreeAlgebraTrunc {
    type Target = PresentedAlgebraTrunc;
    fn deref(&self) -> &PresentedAlgebraTrunc {
        &self.0
    }
}
