use num_traits::Zero;

use crate::exactlin::{vector, Scalar};

/// Rank-3 array `t[i][j][k]`, read as the bilinear map
/// `(e_i, f_j) -> sum_k t[i][j][k] g_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tensor3 {
    shape: (usize, usize, usize),
    data: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zeros(d0: usize, d1: usize, d2: usize) -> Self {
        Tensor3 {
            shape: (d0, d1, d2),
            data: vec![Scalar::zero(); d0 * d1 * d2],
        }
    }

    /// Square structure-constant tensor of an `n`-dimensional algebra.
    pub fn square(n: usize) -> Self {
        Self::zeros(n, n, n)
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        self.shape
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i < self.shape.0 && j < self.shape.1 && k < self.shape.2);
        (i * self.shape.1 + j) * self.shape.2 + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[self.offset(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Scalar) {
        let o = self.offset(i, j, k);
        self.data[o] = value;
    }

    /// The output vector for the basis pair `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> Vec<Scalar> {
        let o = self.offset(i, j, 0);
        self.data[o..o + self.shape.2].to_vec()
    }

    pub fn set_entry(&mut self, i: usize, j: usize, value: &[Scalar]) {
        assert_eq!(value.len(), self.shape.2);
        let o = self.offset(i, j, 0);
        self.data[o..o + self.shape.2].clone_from_slice(value);
    }

    /// Bilinear evaluation on coordinate vectors.
    pub fn apply(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(u.len(), self.shape.0);
        assert_eq!(v.len(), self.shape.1);
        let mut out = vector::zeros(self.shape.2);
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let c = ui * vj;
                let o = self.offset(i, j, 0);
                vector::axpy(&mut out, &c, &self.data[o..o + self.shape.2]);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}
