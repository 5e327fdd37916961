//! Seeded generators of validated test data: Yau twists of classical
//! algebras by involutive automorphisms, Hom-actions, and HNN-extension data.
//!
//! Every candidate is re-checked and only passing ones are returned.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::construct::{check_hom_action, HomAction};
use crate::error::{Error, Result};
use crate::exactlin::{int, vector, Matrix, Scalar};
use crate::hnn::{validate_hnn_assoc_data, HNNAssocData, HNNLetter};
use crate::homalg::{
    catalog, check_hom_associative, check_hom_lie, check_subalgebra, commutator_hom_lie, derivation_space,
    theta_derivation_space, DerivationData, HomAssociativeAlgebra, HomLieAlgebra, LeibnizVariant, SubspaceData,
    Tensor3, TwistedAlgebra,
};

pub const DEFAULT_SEED: u64 = 20240521;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraKind {
    HomAssociative,
    HomLie,
}

impl AlgebraKind {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::HomAssociative => "hom-associative",
            AlgebraKind::HomLie => "hom-lie",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "hom-associative" => Ok(AlgebraKind::HomAssociative),
            "hom-lie" => Ok(AlgebraKind::HomLie),
            _ => Err(Error::invalid(format!("unknown algebra kind {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generated {
    Assoc(HomAssociativeAlgebra),
    Lie(HomLieAlgebra),
}

/// Involutive signed permutation matrices of size `n`.
pub fn signed_involutions(n: usize) -> Vec<Matrix> {
    let mut perms = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &perms {
            for k in 0..n {
                if !p.contains(&k) {
                    let mut q = p.clone();
                    q.push(k);
                    next.push(q);
                }
            }
        }
        perms = next;
    }
    let mut out = Vec::new();
    for p in perms {
        if (0..n).any(|i| p[p[i]] != i) {
            continue;
        }
        for mask in 0..(1u32 << n) {
            let mut m = Matrix::zeros(n, n);
            for (j, &i) in p.iter().enumerate() {
                m[(i, j)] = int(if mask >> j & 1 == 1 { -1 } else { 1 });
            }
            if (&m * &m).is_identity() {
                out.push(m);
            }
        }
    }
    out
}

/// Signed involutions that are automorphisms of the product of `alg`.
pub fn involutive_automorphisms(alg: &impl TwistedAlgebra) -> Vec<Matrix> {
    let n = alg.dim();
    signed_involutions(n)
        .into_iter()
        .filter(|m| {
            let cols = m.columns();
            (0..n).all(|i| {
                (0..n).all(|j| m.mul_vec(&alg.basis_product(i, j)) == alg.product(&cols[i], &cols[j]))
            })
        })
        .collect()
}

/// Classical associative algebras of dimension at most `max_dim`.
pub fn assoc_seeds(max_dim: usize) -> Vec<HomAssociativeAlgebra> {
    let mut v = vec![catalog::upper_triangular(2), catalog::matrix_algebra(2)];
    for k in 1..=4 {
        v.push(catalog::truncated_polynomial(k, true));
        v.push(catalog::truncated_polynomial(k, false));
        v.push(catalog::diagonal(k));
    }
    v.push(catalog::zero_algebra(2));
    v.retain(|a| a.dim() <= max_dim);
    v
}

/// Classical Lie algebras of dimension at most `max_dim`.
pub fn lie_seeds(max_dim: usize) -> Vec<HomLieAlgebra> {
    let mut v = vec![catalog::sl2(), catalog::so3(), catalog::heisenberg(), catalog::affine_line()];
    for k in 1..=3 {
        v.push(catalog::abelian(k));
    }
    for a in [catalog::matrix_algebra(2), catalog::upper_triangular(2)] {
        v.push(commutator_hom_lie(&a).expect("classical algebra"));
    }
    v.retain(|l| l.dim() <= max_dim);
    v
}

/// Seed algebras by name, for reproducible command-line generation.
pub fn named_seed(name: &str) -> Option<Generated> {
    let assoc = |a| Some(Generated::Assoc(a));
    let lie = |l| Some(Generated::Lie(l));
    let digit = |prefix: &str| name.strip_prefix(prefix).and_then(|k| k.parse::<usize>().ok()).filter(|&k| (1..=4).contains(&k));
    match name {
        "m2" => assoc(catalog::matrix_algebra(2)),
        "ut2" => assoc(catalog::upper_triangular(2)),
        "sl2" => lie(catalog::sl2()),
        "so3" => lie(catalog::so3()),
        "heisenberg" => lie(catalog::heisenberg()),
        "affine" => lie(catalog::affine_line()),
        "gl2" => lie(commutator_hom_lie(&catalog::matrix_algebra(2)).ok()?),
        _ => {
            if let Some(k) = digit("poly") {
                assoc(catalog::truncated_polynomial(k, true))
            } else if let Some(k) = digit("diag") {
                assoc(catalog::diagonal(k))
            } else if let Some(k) = digit("abelian") {
                lie(catalog::abelian(k))
            } else {
                None
            }
        }
    }
}

/// Names accepted by [`named_seed`].
pub const SEED_NAMES: &str = "m2, ut2, poly1-4, diag1-4, sl2, so3, heisenberg, affine, gl2, abelian1-4";

/// The unit of an algebra, if it has one.
pub fn unit_element(a: &impl TwistedAlgebra) -> Option<Vec<Scalar>> {
    let n = a.dim();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for x in 0..n {
        // e * x = x and x * e = x, unknown e
        for k in 0..n {
            rows.push((0..n).map(|e| a.basis_product(e, x)[k].clone()).collect::<Vec<_>>());
            rhs.push(int(i64::from(x == k)));
            rows.push((0..n).map(|e| a.basis_product(x, e)[k].clone()).collect::<Vec<_>>());
            rhs.push(int(i64::from(x == k)));
        }
    }
    if n == 0 {
        return None;
    }
    Matrix::from_rows(rows).ok()?.solve(&rhs)
}

pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A product of a few elementary integer matrices, so its inverse is
    /// integral too.
    pub fn unimodular(&mut self, n: usize) -> Matrix {
        let mut m = Matrix::identity(n);
        if n < 2 {
            return m;
        }
        for _ in 0..self.rng.gen_range(0..=n) {
            let i = self.rng.gen_range(0..n);
            let mut j = self.rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let c = int(if self.rng.gen_bool(0.5) { 1 } else { -1 });
            let mut e = Matrix::identity(n);
            e[(i, j)] = c;
            m = &m * &e;
        }
        m
    }

    fn small(&mut self) -> Scalar {
        int(self.rng.gen_range(-2..=2))
    }

    /// A random Yau twist of a classical associative algebra, in a random
    /// integral basis.
    pub fn yau_twist_assoc(&mut self, max_dim: usize) -> Result<HomAssociativeAlgebra> {
        let seeds = assoc_seeds(max_dim);
        for _ in 0..64 {
            let seed = seeds
                .choose(&mut self.rng)
                .ok_or_else(|| Error::invalid("no seed algebra of that dimension"))?;
            let autos = involutive_automorphisms(seed);
            let alpha = autos.choose(&mut self.rng).expect("identity is an automorphism");
            let twisted = seed.yau_twist(alpha)?;
            let p = self.unimodular(seed.dim());
            let a = twisted.change_basis(&p)?;
            if check_hom_associative(&a).pass() {
                return Ok(a);
            }
        }
        Err(Error::Exhausted {
            attempts: 64,
            detail: "no valid Yau twist".into(),
        })
    }

    pub fn yau_twist_lie(&mut self, max_dim: usize) -> Result<HomLieAlgebra> {
        let seeds = lie_seeds(max_dim);
        for _ in 0..64 {
            let seed = seeds
                .choose(&mut self.rng)
                .ok_or_else(|| Error::invalid("no seed algebra of that dimension"))?;
            let autos = involutive_automorphisms(seed);
            let beta = autos.choose(&mut self.rng).expect("identity is an automorphism");
            let twisted = seed.yau_twist(beta)?;
            let p = self.unimodular(seed.dim());
            let l = twisted.change_basis(&p)?;
            if check_hom_lie(&l).pass() {
                return Ok(l);
            }
        }
        Err(Error::Exhausted {
            attempts: 64,
            detail: "no valid Yau twist".into(),
        })
    }

    /// Yau twist of a given seed by a random involutive automorphism, in a
    /// random integral basis.
    pub fn yau_twist_of(&mut self, seed: &Generated) -> Result<Generated> {
        let out = match seed {
            Generated::Assoc(a) => {
                let alpha = involutive_automorphisms(a).choose(&mut self.rng).cloned().expect("identity");
                Generated::Assoc(a.yau_twist(&alpha)?.change_basis(&self.unimodular(a.dim()))?)
            }
            Generated::Lie(l) => {
                let beta = involutive_automorphisms(l).choose(&mut self.rng).cloned().expect("identity");
                Generated::Lie(l.yau_twist(&beta)?.change_basis(&self.unimodular(l.dim()))?)
            }
        };
        let ok = match &out {
            Generated::Assoc(a) => check_hom_associative(a).pass(),
            Generated::Lie(l) => check_hom_lie(l).pass(),
        };
        if ok {
            Ok(out)
        } else {
            Err(Error::Internal("Yau twist failed its own axioms".into()))
        }
    }

    pub fn yau_twist(&mut self, kind: AlgebraKind, max_dim: usize) -> Result<Generated> {
        match kind {
            AlgebraKind::HomAssociative => self.yau_twist_assoc(max_dim).map(Generated::Assoc),
            AlgebraKind::HomLie => self.yau_twist_lie(max_dim).map(Generated::Lie),
        }
    }

    /// A random combination of a basis of `beta`-derivations.
    pub fn derivation(&mut self, l: &HomLieAlgebra) -> DerivationData {
        let n = l.dim();
        let mut m = Matrix::zeros(n, n);
        for b in derivation_space(l, 1) {
            let c = self.small();
            m = &m + &b.scale(&c);
        }
        DerivationData::new(m, 1).expect("square")
    }

    /// A validated Hom-action: a derivation action, the adjoint action, or the
    /// zero action between two generated algebras.
    pub fn hom_action(&mut self, max_dim: usize) -> Result<HomAction> {
        for _ in 0..64 {
            let m = self.yau_twist_lie(max_dim)?;
            let act = match self.rng.gen_range(0..3) {
                0 => {
                    let d = self.derivation(&m);
                    HomAction::by_derivation(&m, &d)?
                }
                1 => HomAction::adjoint(&m),
                _ => HomAction::zero(self.yau_twist_lie(max_dim)?, m),
            };
            if check_hom_action(&act)?.pass() {
                return Ok(act);
            }
        }
        Err(Error::Exhausted {
            attempts: 64,
            detail: "no valid Hom-action".into(),
        })
    }

    fn random_tensor(&mut self, n: usize, skew: bool) -> Tensor3 {
        let mut t = Tensor3::square(n);
        for i in 0..n {
            let start = if skew { i + 1 } else { 0 };
            for j in start..n {
                for k in 0..n {
                    if self.rng.gen_bool(0.3) {
                        let c = self.small();
                        t.set(i, j, k, c.clone());
                        if skew {
                            t.set(j, i, k, -c);
                        }
                    }
                }
            }
        }
        t
    }

    /// One candidate of exact dimension `dim`: a Yau twist of a seed of that
    /// dimension when one exists, otherwise a random sparse table with a
    /// random signed involution.
    fn candidate(&mut self, kind: AlgebraKind, dim: usize) -> Result<Generated> {
        let use_seed = self.rng.gen_bool(0.5);
        let twist = signed_involutions(dim)
            .choose(&mut self.rng)
            .cloned()
            .unwrap_or_else(|| Matrix::identity(dim));
        Ok(match kind {
            AlgebraKind::HomAssociative => {
                let seeds: Vec<_> = assoc_seeds(dim).into_iter().filter(|a| a.dim() == dim).collect();
                match seeds.choose(&mut self.rng) {
                    Some(s) if use_seed => {
                        let alpha = involutive_automorphisms(s).choose(&mut self.rng).cloned().expect("identity");
                        Generated::Assoc(s.yau_twist(&alpha)?.change_basis(&self.unimodular(dim))?)
                    }
                    _ => Generated::Assoc(HomAssociativeAlgebra::new(twist, self.random_tensor(dim, false), None)?),
                }
            }
            AlgebraKind::HomLie => {
                let seeds: Vec<_> = lie_seeds(dim).into_iter().filter(|l| l.dim() == dim).collect();
                match seeds.choose(&mut self.rng) {
                    Some(s) if use_seed => {
                        let beta = involutive_automorphisms(s).choose(&mut self.rng).cloned().expect("identity");
                        Generated::Lie(s.yau_twist(&beta)?.change_basis(&self.unimodular(dim))?)
                    }
                    _ => Generated::Lie(HomLieAlgebra::new(twist, self.random_tensor(dim, true), None)?),
                }
            }
        })
    }

    /// Searches for a passing algebra of dimension `dim`, nonabelian
    /// (nonzero product) when asked.
    pub fn random_search(&mut self, kind: AlgebraKind, dim: usize, nonabelian: bool, attempts: usize) -> Result<Generated> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        for _ in 0..attempts {
            let c = self.candidate(kind, dim)?;
            let (ok, zero) = match &c {
                Generated::Assoc(a) => (check_hom_associative(a).pass(), a.table().is_zero()),
                Generated::Lie(l) => (check_hom_lie(l).pass(), l.table().is_zero()),
            };
            if ok && !(nonabelian && zero) {
                return Ok(c);
            }
        }
        Err(Error::Exhausted {
            attempts,
            detail: format!(
                "{} of dimension {dim}{}",
                kind.name(),
                if nonabelian { " with nonzero product" } else { "" }
            ),
        })
    }

    /// A validated HNN datum over a classical unital algebra (`alpha = id`)
    /// of dimension at most `max_dim`, with one or two letters; `None` when
    /// the sampled choices fail validation.
    pub fn hnn_assoc_instance(&mut self, max_dim: usize) -> Result<Option<HNNAssocData>> {
        let seeds: Vec<_> = assoc_seeds(max_dim)
            .into_iter()
            .filter(|a| unit_element(a).is_some())
            .collect();
        let seed = seeds
            .choose(&mut self.rng)
            .ok_or_else(|| Error::invalid("no unital seed algebra"))?
            .clone();
        let p = self.unimodular(seed.dim());
        let pinv = p.inverse().expect("unimodular");
        let a = seed.change_basis(&p)?;
        let letters = self.rng.gen_range(1..=2);
        let mut out = Vec::new();
        for _ in 0..letters {
            match self.hnn_letter(&seed, &a, &pinv)? {
                Some(l) => out.push(l),
                None => return Ok(None),
            }
        }
        let data = HNNAssocData::new(a, out);
        Ok(validate_hnn_assoc_data(&data).pass().then_some(data))
    }

    /// Builds a letter on `seed`, then moves it to `a = seed` in the basis
    /// whose inverse change is `pinv`.
    fn hnn_letter(&mut self, seed: &HomAssociativeAlgebra, a: &HomAssociativeAlgebra, pinv: &Matrix) -> Result<Option<HNNLetter>> {
        let n = seed.dim();
        let one = unit_element(seed).expect("unital seed");
        let mut subs = Vec::new();
        for mask in 0..(1u32 << n) {
            let mut basis = vec![one.clone()];
            basis.extend((0..n).filter(|i| mask >> i & 1 == 1).map(|i| vector::unit(n, i)));
            if let Ok(s) = SubspaceData::new(n, basis) {
                if s.dim() < n && check_subalgebra(seed, &s)?.pass() && !subs.contains(&s) {
                    subs.push(s);
                }
            }
        }
        let Some(sub) = subs.choose(&mut self.rng).cloned() else {
            return Ok(None);
        };
        let mut thetas: Vec<Matrix> = involutive_automorphisms(seed)
            .iter()
            .map(|psi| psi * &sub.inclusion())
            .collect();
        if sub.dim() == 1 {
            for i in 0..n {
                let e = vector::unit(n, i);
                if seed.product(&e, &e) == e {
                    thetas.push(Matrix::from_columns(n, &[e]));
                }
            }
        }
        let theta = thetas.choose(&mut self.rng).expect("identity").clone();
        let b_module = sub.restricted_module(seed.twist())?;
        let theta_map = crate::exactlin::LinearMapBetween::new(b_module, seed.module().clone(), theta.clone())?;
        let mut delta = Matrix::zeros(n, sub.dim());
        for d in theta_derivation_space(seed, &sub, &theta_map, LeibnizVariant::Mixed)? {
            let c = self.small();
            delta = &delta + &d.scale(&c);
        }
        let reps: Vec<Vec<Scalar>> = (0..n - sub.dim())
            .map(|q| sub.lift_complement(&vector::unit(n - sub.dim(), q)))
            .collect();
        let moved = SubspaceData::new(n, sub.basis().iter().map(|b| pinv.mul_vec(b)).collect())?;
        let reps = reps.iter().map(|x| pinv.mul_vec(x)).collect();
        match HNNLetter::new(a, moved, pinv * &theta, pinv * &delta, reps) {
            Ok(l) => Ok(Some(l)),
            Err(Error::Hypothesis { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_involution_counts() {
        // n = 1: +-1; n = 2: four diagonal plus two signed swaps
        assert_eq!(signed_involutions(1).len(), 2);
        assert_eq!(signed_involutions(2).len(), 6);
    }

    #[test]
    fn sl2_swap_is_an_automorphism() {
        let autos = involutive_automorphisms(&catalog::sl2());
        let swap = Matrix::from_i64(&[&[-1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        assert!(autos.contains(&swap));
        assert!(autos.iter().any(|m| m.is_identity()));
    }

    #[test]
    fn generation_is_seeded() {
        let a: Vec<_> = (0..5).map({
            let mut g = Generator::new(7);
            move |_| g.yau_twist_assoc(4).unwrap()
        }).collect();
        let mut g = Generator::new(7);
        for x in &a {
            assert_eq!(&g.yau_twist_assoc(4).unwrap(), x);
        }
    }

    #[test]
    fn one_dimensional_nonabelian_lie_is_exhausted() {
        let mut g = Generator::new(1);
        let r = g.random_search(AlgebraKind::HomLie, 1, true, 50);
        assert!(matches!(r, Err(Error::Exhausted { .. })));
        assert!(g.random_search(AlgebraKind::HomLie, 2, true, 200).is_ok());
    }

    #[test]
    fn unit_of_matrix_algebra() {
        assert_eq!(unit_element(&catalog::matrix_algebra(2)), Some(vec![int(1), int(0), int(0), int(1)]));
        assert_eq!(unit_element(&catalog::truncated_polynomial(2, false)), None);
    }

    #[test]
    fn hnn_instances_validate() {
        let mut g = Generator::new(3);
        let found = (0..40).filter_map(|_| g.hnn_assoc_instance(3).unwrap()).count();
        assert!(found > 5, "{found}");
    }
}
