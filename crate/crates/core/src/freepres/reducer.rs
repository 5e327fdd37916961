use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::monomial::Poly;
use crate::exactlin::Scalar;

/// A subspace of the free algebra in echelon form: each row is monic at its
/// largest monomial, and no two rows share that pivot.
///
/// Reducing a polynomial removes every pivot monomial, so normal forms are
/// combinations of non-pivot monomials and the quotient basis consists of the
/// smallest independent monomials.
#[derive(Debug, Clone, Default)]
pub struct Reducer {
    rows: BTreeMap<usize, Poly>,
}

impl Reducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, id: usize) -> bool {
        self.rows.contains_key(&id)
    }

    pub fn rows(&self) -> impl Iterator<Item = &Poly> {
        self.rows.values()
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut v = p.clone();
        let mut out = Poly::new();
        while let Some((m, c)) = v.pop_last() {
            match self.rows.get(&m) {
                Some(row) => {
                    for (&k, x) in row.range(..m) {
                        let slot = v.entry(k).or_insert_with(Scalar::zero);
                        *slot -= &c * x;
                        if slot.is_zero() {
                            v.remove(&k);
                        }
                    }
                }
                None => {
                    out.insert(m, c);
                }
            }
        }
        out
    }

    /// Adds `p` to the subspace; returns the new echelon row when `p` was
    /// independent of the existing rows.
    pub fn insert(&mut self, p: &Poly) -> Option<Poly> {
        let r = self.reduce(p);
        let (&pivot, lead) = r.last_key_value()?;
        let inv = Scalar::one() / lead;
        let row: Poly = r.iter().map(|(&k, x)| (k, x * &inv)).collect();
        self.rows.insert(pivot, row.clone());
        Some(row)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;

    fn poly(terms: &[(usize, i64)]) -> Poly {
        terms.iter().map(|&(k, c)| (k, int(c))).collect()
    }

    #[test]
    fn reduce_is_idempotent_projection() {
        let mut r = Reducer::new();
        assert!(r.insert(&poly(&[(0, 1), (2, 2)])).is_some());
        assert!(r.insert(&poly(&[(1, 1), (2, 1)])).is_some());
        assert!(r.insert(&poly(&[(0, 1), (1, 2), (2, 4)])).is_none());
        let p = poly(&[(2, 3), (3, 1)]);
        let once = r.reduce(&p);
        assert_eq!(r.reduce(&once), once);
        assert!(!once.contains_key(&2));
        for row in r.rows() {
            assert!(r.reduce(row).is_empty());
        }
    }
}
