use std::fmt::Write;

/// Symbolic element of the free involutive Hom-associative algebra: a product
/// tree with twist markers, either on leaves or on whole subtrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Gen { index: usize, twisted: bool },
    Twist(Box<Term>),
    Mul(Box<Term>, Box<Term>),
}

impl Term {
    pub fn gen(index: usize) -> Term {
        Term::Gen {
            index,
            twisted: false,
        }
    }

    pub fn twisted_gen(index: usize) -> Term {
        Term::Gen {
            index,
            twisted: true,
        }
    }

    pub fn twist(self) -> Term {
        Term::Twist(Box::new(self))
    }

    pub fn mul(self, other: Term) -> Term {
        Term::Mul(Box::new(self), Box::new(other))
    }

    pub fn degree(&self) -> usize {
        match self {
            Term::Gen { .. } => 1,
            Term::Twist(t) => t.degree(),
            Term::Mul(a, b) => a.degree() + b.degree(),
        }
    }

    /// Number of `Twist` nodes, i.e. markers not yet pushed to a leaf.
    pub fn internal_markers(&self) -> usize {
        match self {
            Term::Gen { .. } => 0,
            Term::Twist(t) => 1 + t.internal_markers(),
            Term::Mul(a, b) => a.internal_markers() + b.internal_markers(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.internal_markers() == 0
    }

    /// Renders with `a(..)` for the twist and `.` for the product.
    pub fn render(&self, names: &[String]) -> String {
        let mut s = String::new();
        self.render_into(names, &mut s);
        s
    }

    fn render_into(&self, names: &[String], s: &mut String) {
        match self {
            Term::Gen { index, twisted } => {
                let name = names.get(*index).cloned().unwrap_or_else(|| format!("g{}", index + 1));
                if *twisted {
                    let _ = write!(s, "a({name})");
                } else {
                    s.push_str(&name);
                }
            }
            Term::Twist(t) => {
                s.push_str("a(");
                t.render_into(names, s);
                s.push(')');
            }
            Term::Mul(a, b) => {
                for (i, f) in [a, b].into_iter().enumerate() {
                    if i == 1 {
                        s.push('.');
                    }
                    if matches!(**f, Term::Mul(..)) {
                        s.push('(');
                        f.render_into(names, s);
                        s.push(')');
                    } else {
                        f.render_into(names, s);
                    }
                }
            }
        }
    }
}

/// Pushes every twist marker to the leaves and reduces exponents mod 2.
pub fn normalize_term(t: &Term) -> Term {
    fn go(t: &Term, flip: bool) -> Term {
        match t {
            Term::Gen { index, twisted } => Term::Gen {
                index: *index,
                twisted: *twisted ^ flip,
            },
            Term::Twist(inner) => go(inner, !flip),
            Term::Mul(a, b) => go(a, flip).mul(go(b, flip)),
        }
    }
    go(t, false)
}

/// All binary product shapes with `k` leaves, leaves numbered left to right.
fn shapes(k: usize) -> Vec<Term> {
    if k == 1 {
        return vec![Term::gen(0)];
    }
    let mut out = Vec::new();
    for p in 1..k {
        for a in shapes(p) {
            for b in shapes(k - p) {
                out.push(a.clone().mul(b));
            }
        }
    }
    out
}

fn fill(shape: &Term, leaves: &mut impl Iterator<Item = (usize, bool)>) -> Term {
    match shape {
        Term::Mul(a, b) => {
            let a = fill(a, leaves);
            a.mul(fill(b, leaves))
        }
        _ => {
            let (index, twisted) = leaves.next().expect("leaf count matches shape");
            Term::Gen { index, twisted }
        }
    }
}

/// Every normalized term of degree `k` on `n` generators: each shape with
/// each assignment of generator and exponent to the leaves.
pub fn spanning_terms(n: usize, k: usize) -> Vec<Term> {
    let labels = 2 * n;
    let count = labels.pow(k as u32);
    let mut out = Vec::new();
    for shape in shapes(k) {
        for mut code in 0..count {
            let mut leaves = Vec::with_capacity(k);
            for _ in 0..k {
                let l = code % labels;
                code /= labels;
                leaves.push((l / 2, l % 2 == 1));
            }
            leaves.reverse();
            out.push(fill(&shape, &mut leaves.into_iter()));
        }
    }
    out
}
