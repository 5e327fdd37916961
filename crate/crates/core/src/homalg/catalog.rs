//! Classical algebras used as seeds for twisted examples and tests.

use super::{HomAssociativeAlgebra, HomLieAlgebra, Tensor3};
use crate::exactlin::{int, Matrix};

fn assoc(table: Tensor3, names: Vec<String>) -> HomAssociativeAlgebra {
    let n = names.len();
    HomAssociativeAlgebra::new(Matrix::identity(n), table, Some(names)).expect("catalog shape")
}

fn lie(table: Tensor3, names: Vec<String>) -> HomLieAlgebra {
    let n = names.len();
    HomLieAlgebra::new(Matrix::identity(n), table, Some(names)).expect("catalog tensor is skew")
}

/// Full matrix algebra `M_n`, basis `e_ij` in row-major order.
pub fn matrix_algebra(n: usize) -> HomAssociativeAlgebra {
    let idx = |i: usize, j: usize| i * n + j;
    let mut t = Tensor3::square(n * n);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                t.set(idx(i, j), idx(j, l), idx(i, l), int(1));
            }
        }
    }
    let names = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("e{}{}", i + 1, j + 1)))
        .collect();
    assoc(t, names)
}

/// Upper-triangular `n x n` matrices, basis `e_ij` (`i <= j`) in row-major order.
pub fn upper_triangular(n: usize) -> HomAssociativeAlgebra {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let pos = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap();
    let mut t = Tensor3::square(pairs.len());
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(k, l)) in pairs.iter().enumerate() {
            if j == k {
                t.set(a, b, pos(i, l), int(1));
            }
        }
    }
    let names = pairs
        .iter()
        .map(|(i, j)| format!("e{}{}", i + 1, j + 1))
        .collect();
    assoc(t, names)
}

/// `K[x]/(x^k)` with basis `1, x, .., x^(k-1)` when unital, otherwise the
/// augmentation ideal `x, .., x^k` of `K[x]/(x^(k+1))`.
pub fn truncated_polynomial(k: usize, unital: bool) -> HomAssociativeAlgebra {
    let offset = usize::from(!unital);
    let top = k + offset; // exponents must stay below this
    let mut t = Tensor3::square(k);
    for a in 0..k {
        for b in 0..k {
            let e = a + b + offset * 2;
            if e < top {
                t.set(a, b, e - offset, int(1));
            }
        }
    }
    let names = (0..k)
        .map(|a| match a + offset {
            0 => "1".to_string(),
            1 => "x".to_string(),
            p => format!("x{p}"),
        })
        .collect();
    assoc(t, names)
}

/// `K^n` with componentwise product.
pub fn diagonal(n: usize) -> HomAssociativeAlgebra {
    let mut t = Tensor3::square(n);
    for i in 0..n {
        t.set(i, i, i, int(1));
    }
    assoc(t, (1..=n).map(|i| format!("d{i}")).collect())
}

/// `n`-dimensional algebra with zero product.
pub fn zero_algebra(n: usize) -> HomAssociativeAlgebra {
    assoc(Tensor3::square(n), (1..=n).map(|i| format!("z{i}")).collect())
}

/// `sl_2` with basis `h, e, f`: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2() -> HomLieAlgebra {
    let mut t = Tensor3::square(3);
    let mut set = |i: usize, j: usize, v: [i64; 3]| {
        let v: Vec<_> = v.iter().map(|&x| int(x)).collect();
        let w: Vec<_> = v.iter().map(|x| -x).collect();
        t.set_entry(i, j, &v);
        t.set_entry(j, i, &w);
    };
    set(0, 1, [0, 2, 0]);
    set(0, 2, [0, 0, -2]);
    set(1, 2, [1, 0, 0]);
    lie(t, vec!["h".into(), "e".into(), "f".into()])
}

/// `n`-dimensional abelian Lie algebra.
pub fn abelian(n: usize) -> HomLieAlgebra {
    lie(Tensor3::square(n), (1..=n).map(|i| format!("x{i}")).collect())
}

/// Two-dimensional nonabelian Lie algebra, `[x, y] = y`.
pub fn affine_line() -> HomLieAlgebra {
    let mut t = Tensor3::square(2);
    t.set(0, 1, 1, int(1));
    t.set(1, 0, 1, int(-1));
    lie(t, vec!["x".into(), "y".into()])
}

/// Heisenberg algebra, `[x, y] = z`.
pub fn heisenberg() -> HomLieAlgebra {
    let mut t = Tensor3::square(3);
    t.set(0, 1, 2, int(1));
    t.set(1, 0, 2, int(-1));
    lie(t, vec!["x".into(), "y".into(), "z".into()])
}

/// `so_3`: `[e1,e2] = e3` and cyclic.
pub fn so3() -> HomLieAlgebra {
    let mut t = Tensor3::square(3);
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        t.set(i, j, k, int(1));
        t.set(j, i, k, int(-1));
    }
    lie(t, vec!["e1".into(), "e2".into(), "e3".into()])
}
