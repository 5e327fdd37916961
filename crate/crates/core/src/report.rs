use crate::exactlin::{vector, Scalar};

/// A single failed axiom together with the first basis tuple on which it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<usize>,
    pub residual: Vec<Scalar>,
}

/// Outcome of an axiom checker.
///
/// Every axiom that was evaluated is listed in `checked`; an axiom fails iff a
/// violation with its name is present. Only the first failing tuple per axiom
/// is stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checked: Vec<String>,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    /// Whether the named axiom was checked and holds.
    pub fn passed(&self, axiom: &str) -> bool {
        self.checked.iter().any(|a| a == axiom) && self.violation(axiom).is_none()
    }

    pub fn violation(&self, axiom: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }

    /// Registers `axiom` as checked without evaluating anything.
    pub fn declare(&mut self, axiom: &str) {
        if !self.checked.iter().any(|a| a == axiom) {
            self.checked.push(axiom.to_string());
        }
    }

    /// Records one evaluation of `axiom`; a nonzero residual is a failure.
    pub fn observe(&mut self, axiom: &str, witness: &[usize], residual: Vec<Scalar>) {
        self.declare(axiom);
        if !vector::is_zero(&residual) && self.violation(axiom).is_none() {
            self.violations.push(Violation {
                axiom: axiom.to_string(),
                witness: witness.to_vec(),
                residual,
            });
        }
    }

    /// Records a boolean outcome that has no natural residual vector.
    pub fn observe_flag(&mut self, axiom: &str, witness: &[usize], ok: bool) {
        let residual = if ok {
            Vec::new()
        } else {
            vec![Scalar::from_integer(1.into())]
        };
        self.observe(axiom, witness, residual);
    }

    pub fn merge(&mut self, other: AxiomReport) {
        for axiom in other.checked {
            self.declare(&axiom);
        }
        for v in other.violations {
            if self.violation(&v.axiom).is_none() {
                self.violations.push(v);
            }
        }
    }

    /// Same report with every axiom name prefixed, used when several
    /// sub-reports are aggregated.
    pub fn prefixed(self, prefix: &str) -> AxiomReport {
        AxiomReport {
            checked: self
                .checked
                .into_iter()
                .map(|a| format!("{prefix}{a}"))
                .collect(),
            violations: self
                .violations
                .into_iter()
                .map(|mut v| {
                    v.axiom = format!("{prefix}{}", v.axiom);
                    v
                })
                .collect(),
        }
    }
}

/// Outcome of one relation check inside an embedding certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub label: String,
    pub zero: bool,
}

/// Exact witness that a structure map is injective at a given truncation:
/// every relation residual vanishes and the kernel is trivial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingCertificate {
    pub degree: Option<usize>,
    pub max_length: Option<usize>,
    pub relations: Vec<RelationCheck>,
    pub kernel_dim: usize,
    pub pass: bool,
}

impl EmbeddingCertificate {
    pub fn new(
        degree: Option<usize>,
        max_length: Option<usize>,
        relations: Vec<RelationCheck>,
        kernel_dim: usize,
    ) -> Self {
        let pass = kernel_dim == 0 && relations.iter().all(|r| r.zero);
        EmbeddingCertificate {
            degree,
            max_length,
            relations,
            kernel_dim,
            pass,
        }
    }
}
