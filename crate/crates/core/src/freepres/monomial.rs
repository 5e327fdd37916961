use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::term::Term;
use crate::error::{Error, Result};
use crate::exactlin::{check_hom_module, format_scalar, HomModule, Matrix, Scalar};

/// Sparse linear combination of monomials, keyed by monomial id.
pub type Poly = BTreeMap<usize, Scalar>;

pub(crate) fn poly_axpy(acc: &mut Poly, c: &Scalar, p: &Poly) {
    if c.is_zero() {
        return;
    }
    for (&k, x) in p {
        let slot = acc.entry(k).or_insert_with(Scalar::zero);
        *slot += c * x;
        if slot.is_zero() {
            acc.remove(&k);
        }
    }
}

pub fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    poly_axpy(&mut out, &Scalar::one(), b);
    out
}

pub fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    poly_axpy(&mut out, &-Scalar::one(), b);
    out
}

pub fn poly_scale(c: &Scalar, p: &Poly) -> Poly {
    let mut out = Poly::new();
    poly_axpy(&mut out, c, p);
    out
}

pub fn monomial(id: usize) -> Poly {
    Poly::from([(id, Scalar::one())])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    Unit,
    Leaf(usize),
    Mul(usize, usize),
}

/// Caps how often one letter may occur in a monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LetterBound {
    pub letter: usize,
    pub max: usize,
}

/// All plain product trees (no twist markers) up to a degree, interned.
///
/// Ids increase with degree. Within a degree `k`, monomials `u.v` are ordered
/// by the degree of `u`, then by the id of `u`, then by the id of `v`.
#[derive(Debug, Clone)]
pub struct MonomialTable {
    names: Vec<String>,
    alpha_v: Matrix,
    max_degree: usize,
    unital: bool,
    bound: Option<LetterBound>,
    nodes: Vec<Node>,
    degree: Vec<usize>,
    bounded: Vec<usize>,
    index: HashMap<Node, usize>,
    by_degree: Vec<Vec<usize>>,
    alpha: Vec<Poly>,
}

impl MonomialTable {
    pub fn new(
        names: Vec<String>,
        alpha_v: Matrix,
        max_degree: usize,
        unital: bool,
        bound: Option<LetterBound>,
    ) -> Result<Self> {
        let n = names.len();
        if alpha_v.rows() != n || !alpha_v.is_square() {
            return Err(Error::invalid(format!(
                "generator twist must be {n}x{n}, got {}x{}",
                alpha_v.rows(),
                alpha_v.cols()
            )));
        }
        if let Some(v) = check_hom_module(&HomModule::new(alpha_v.clone())?).violations.first() {
            return Err(Error::hypothesis(
                v.axiom.clone(),
                format!("generator twist fails at column {:?}", v.witness),
            ));
        }
        if let Some(b) = bound {
            if b.letter >= n {
                return Err(Error::invalid("bounded letter out of range"));
            }
            for j in 0..n {
                let fixed = if j == b.letter { Scalar::one() } else { Scalar::zero() };
                if alpha_v[(j, b.letter)] != fixed || (j != b.letter && !alpha_v[(b.letter, j)].is_zero()) {
                    return Err(Error::invalid("bounded letter must be fixed by the twist"));
                }
            }
        }
        let mut t = MonomialTable {
            names,
            alpha_v,
            max_degree,
            unital,
            bound,
            nodes: Vec::new(),
            degree: Vec::new(),
            bounded: Vec::new(),
            index: HashMap::new(),
            by_degree: vec![Vec::new(); max_degree + 1],
            alpha: Vec::new(),
        };
        if unital {
            t.push(Node::Unit, 0, 0);
        }
        if max_degree >= 1 {
            for i in 0..n {
                let c = usize::from(bound.is_some_and(|b| b.letter == i));
                if t.count_ok(c) {
                    t.push(Node::Leaf(i), 1, c);
                }
            }
        }
        for k in 2..=max_degree {
            for p in 1..k {
                let left = t.by_degree[p].clone();
                let right = t.by_degree[k - p].clone();
                for &a in &left {
                    for &b in &right {
                        let c = t.bounded[a] + t.bounded[b];
                        if t.count_ok(c) {
                            t.push(Node::Mul(a, b), k, c);
                        }
                    }
                }
            }
        }
        for id in 0..t.nodes.len() {
            let img = match t.nodes[id] {
                Node::Unit => monomial(id),
                Node::Leaf(i) => t.letter_combination(&t.alpha_v.column(i)),
                Node::Mul(a, b) => t.mul_poly(&t.alpha[a], &t.alpha[b])?,
            };
            t.alpha.push(img);
        }
        Ok(t)
    }

    fn count_ok(&self, c: usize) -> bool {
        self.bound.is_none_or(|b| c <= b.max)
    }

    fn push(&mut self, node: Node, degree: usize, bounded: usize) {
        let id = self.nodes.len();
        self.nodes.push(node);
        self.degree.push(degree);
        self.bounded.push(bounded);
        self.index.insert(node, id);
        self.by_degree[degree].push(id);
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letters(&self) -> usize {
        self.names.len()
    }

    pub fn generator_twist(&self) -> &Matrix {
        &self.alpha_v
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn bound(&self) -> Option<LetterBound> {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: usize) -> Node {
        self.nodes[id]
    }

    pub fn degree(&self, id: usize) -> usize {
        self.degree[id]
    }

    /// Occurrences of the bounded letter in the monomial.
    pub fn bounded_count(&self, id: usize) -> usize {
        self.bounded[id]
    }

    pub fn of_degree(&self, k: usize) -> &[usize] {
        self.by_degree.get(k).map_or(&[], Vec::as_slice)
    }

    /// Monomials of positive degree, in id order.
    pub fn positive(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&id| self.degree[id] > 0)
    }

    pub fn unit(&self) -> Option<Poly> {
        self.unital.then(|| monomial(0))
    }

    pub fn leaf(&self, i: usize) -> Poly {
        monomial(self.index[&Node::Leaf(i)])
    }

    /// `sum_i c_i g_i` for a coordinate vector over the letters.
    pub fn letter_combination(&self, c: &[Scalar]) -> Poly {
        let mut p = Poly::new();
        for (i, x) in c.iter().enumerate() {
            if !x.is_zero() {
                if let Some(&id) = self.index.get(&Node::Leaf(i)) {
                    p.insert(id, x.clone());
                }
            }
        }
        p
    }

    /// Id of `a.b`, or `None` if it lies beyond the truncation.
    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        match (self.nodes[a], self.nodes[b]) {
            (Node::Unit, _) => Some(b),
            (_, Node::Unit) => Some(a),
            _ => self.index.get(&Node::Mul(a, b)).copied(),
        }
    }

    /// Product of two combinations, `None` if any term leaves the table.
    pub fn try_mul_poly(&self, p: &Poly, q: &Poly) -> Option<Poly> {
        let mut out = Poly::new();
        for (&a, x) in p {
            for (&b, y) in q {
                let id = self.mul(a, b)?;
                let slot = out.entry(id).or_insert_with(Scalar::zero);
                *slot += x * y;
                if slot.is_zero() {
                    out.remove(&id);
                }
            }
        }
        Some(out)
    }

    pub fn mul_poly(&self, p: &Poly, q: &Poly) -> Result<Poly> {
        self.try_mul_poly(p, q).ok_or_else(|| Error::TruncationOverflow {
            degree: self.poly_degree(p) + self.poly_degree(q),
            limit: self.max_degree,
        })
    }

    /// Image of a monomial under the twist (multiplicative extension of the
    /// generator twist).
    pub fn twist_monomial(&self, id: usize) -> &Poly {
        &self.alpha[id]
    }

    pub fn twist_poly(&self, p: &Poly) -> Poly {
        let mut out = Poly::new();
        for (&id, c) in p {
            poly_axpy(&mut out, c, &self.alpha[id]);
        }
        out
    }

    /// Largest degree among the terms; 0 for the zero polynomial.
    pub fn poly_degree(&self, p: &Poly) -> usize {
        p.keys().map(|&id| self.degree[id]).max().unwrap_or(0)
    }

    /// Expands a symbolic term; twisted leaves go through the generator twist.
    pub fn term_to_poly(&self, t: &Term) -> Result<Poly> {
        match t {
            Term::Gen { index, twisted } => {
                if *index >= self.letters() {
                    return Err(Error::invalid(format!("generator index {index} out of range")));
                }
                let leaf = self.leaf(*index);
                Ok(if *twisted { self.twist_poly(&leaf) } else { leaf })
            }
            Term::Twist(inner) => Ok(self.twist_poly(&self.term_to_poly(inner)?)),
            Term::Mul(a, b) => self.mul_poly(&self.term_to_poly(a)?, &self.term_to_poly(b)?),
        }
    }

    pub fn render(&self, id: usize) -> String {
        match self.nodes[id] {
            Node::Unit => "1".to_string(),
            Node::Leaf(i) => self.names[i].clone(),
            Node::Mul(a, b) => {
                let wrap = |x: usize| match self.nodes[x] {
                    Node::Mul(..) => format!("({})", self.render(x)),
                    _ => self.render(x),
                };
                format!("{}.{}", wrap(a), wrap(b))
            }
        }
    }

    pub fn render_poly(&self, p: &Poly) -> String {
        if p.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (&id, c)) in p.iter().enumerate() {
            let neg = c < &Scalar::zero();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if !abs.is_one() {
                s.push_str(&format_scalar(&abs));
                s.push('*');
            }
            s.push_str(&self.render(id));
        }
        s
    }
}
