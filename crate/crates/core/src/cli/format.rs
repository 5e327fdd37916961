//! Line-oriented text format for algebras and extension data.
//!
//! ```text
//! # comments start with '#'
//! kind hom-associative
//! names 1 x
//! twist
//!   1 0
//!   0 1
//! product
//!   1 1 : 1 0
//!   1 x : 0 1
//!   x 1 : 0 1
//! letter
//!   subalgebra
//!     1 0
//!   theta
//!     1
//!     0
//!   delta
//!     0
//!     0
//!   free-basis
//!     0 1
//! end
//! ```
//!
//! `kind hom-lie` files use `bracket` instead of `product` and may carry a
//! `subalgebra` block (basis vectors of `s`, one per line) and a `derivation`
//! block (rows of `d: s -> g`). `kind hom-action` files name the actor with
//! `actor-names` and list `action` entries `x m : v`. Table entries absent from
//! the file are zero.

use crate::construct::HomAction;
use crate::error::{Error, Result};
use crate::exactlin::{format_scalar, parse_scalar, Matrix, Scalar};
use crate::hnn::{HNNAssocData, HNNLetter, HNNLieData};
use crate::homalg::{HomAssociativeAlgebra, HomLieAlgebra, LeibnizVariant, SubspaceData, Tensor3, TwistedAlgebra};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    HomAssociative,
    HomLie,
    HomAction,
}

impl FileKind {
    pub fn name(self) -> &'static str {
        match self {
            FileKind::HomAssociative => "hom-associative",
            FileKind::HomLie => "hom-lie",
            FileKind::HomAction => "hom-action",
        }
    }

    fn table_keyword(self) -> &'static str {
        match self {
            FileKind::HomAssociative => "product",
            FileKind::HomLie => "bracket",
            FileKind::HomAction => "action",
        }
    }
}

/// One letter of an associative HNN datum, all in coordinates of `A` except
/// the columns of `theta` and `delta`, which follow the subalgebra basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterBlock {
    pub subalgebra: Vec<Vec<Scalar>>,
    pub theta: Matrix,
    pub delta: Matrix,
    pub free_basis: Vec<Vec<Scalar>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraFile {
    pub kind: FileKind,
    /// Basis names; for actions, the names of the target.
    pub names: Vec<String>,
    pub actor_names: Vec<String>,
    /// Absent for actions.
    pub twist: Option<Matrix>,
    pub table: Tensor3,
    pub letters: Vec<LetterBlock>,
    pub variant: Option<LeibnizVariant>,
    pub subalgebra: Option<Vec<Vec<Scalar>>>,
    pub derivation: Option<Matrix>,
}

const KEYWORDS: &[&str] = &[
    "kind",
    "names",
    "actor-names",
    "twist",
    "product",
    "bracket",
    "action",
    "letter",
    "subalgebra",
    "theta",
    "delta",
    "free-basis",
    "end",
    "derivation",
    "variant",
];

fn err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::invalid(format!("line {line}: {msg}"))
}

struct Block<'a> {
    keyword: &'a str,
    args: Vec<&'a str>,
    line: usize,
    rows: Vec<(usize, Vec<&'a str>)>,
}

fn blocks(text: &str) -> Result<Vec<Block<'_>>> {
    let mut out: Vec<Block> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        let Some(&first) = toks.first() else { continue };
        if KEYWORDS.contains(&first) {
            out.push(Block {
                keyword: first,
                args: toks[1..].to_vec(),
                line,
                rows: Vec::new(),
            });
        } else {
            match out.last_mut() {
                Some(b) => b.rows.push((line, toks)),
                None => return Err(err(line, format!("expected a keyword, found {first:?}"))),
            }
        }
    }
    Ok(out)
}

fn scalars(line: usize, toks: &[&str]) -> Result<Vec<Scalar>> {
    toks.iter()
        .map(|t| parse_scalar(t).map_err(|_| err(line, format!("not a rational number: {t:?}"))))
        .collect()
}

fn vectors(b: &Block, len: usize) -> Result<Vec<Vec<Scalar>>> {
    b.rows
        .iter()
        .map(|(line, toks)| {
            let v = scalars(*line, toks)?;
            if v.len() != len {
                return Err(err(*line, format!("expected {len} entries, found {}", v.len())));
            }
            Ok(v)
        })
        .collect()
}

fn matrix(b: &Block, rows: usize, cols: usize) -> Result<Matrix> {
    let v = vectors(b, cols)?;
    if v.len() != rows {
        return Err(err(b.line, format!("{} needs {rows} rows, found {}", b.keyword, v.len())));
    }
    if rows == 0 {
        return Ok(Matrix::zeros(0, cols));
    }
    Matrix::from_rows(v)
}

fn no_args(b: &Block) -> Result<()> {
    if b.args.is_empty() {
        Ok(())
    } else {
        Err(err(b.line, format!("{} takes no arguments", b.keyword)))
    }
}

fn check_names(line: usize, names: &[&str]) -> Result<Vec<String>> {
    for (i, n) in names.iter().enumerate() {
        if n.contains(':') || KEYWORDS.contains(n) || names[..i].contains(n) {
            return Err(err(line, format!("invalid or repeated basis name {n:?}")));
        }
    }
    Ok(names.iter().map(|s| s.to_string()).collect())
}

fn position(names: &[String], line: usize, n: &str) -> Result<usize> {
    names
        .iter()
        .position(|x| x == n)
        .ok_or_else(|| err(line, format!("unknown basis name {n:?}")))
}

pub fn parse(text: &str) -> Result<AlgebraFile> {
    let bs = blocks(text)?;
    let mut it = bs.iter().peekable();
    let kind = match it.next() {
        Some(b) if b.keyword == "kind" && b.args.len() == 1 && b.rows.is_empty() => match b.args[0] {
            "hom-associative" => FileKind::HomAssociative,
            "hom-lie" => FileKind::HomLie,
            "hom-action" => FileKind::HomAction,
            other => return Err(err(b.line, format!("unknown kind {other:?}"))),
        },
        Some(b) => return Err(err(b.line, "file must start with 'kind <hom-associative|hom-lie|hom-action>'")),
        None => return Err(Error::invalid("empty file")),
    };
    let mut names: Option<Vec<String>> = None;
    let mut actor_names: Vec<String> = Vec::new();
    let mut twist = None;
    let mut table_block = None;
    let mut letters = Vec::new();
    let mut variant = None;
    let mut subalgebra = None;
    let mut derivation_block = None;
    let mut seen: Vec<&str> = Vec::new();
    while let Some(b) = it.next() {
        let once = !matches!(b.keyword, "letter");
        if once && seen.contains(&b.keyword) {
            return Err(err(b.line, format!("repeated block {}", b.keyword)));
        }
        seen.push(b.keyword);
        let n = || names.as_ref().map(Vec::len).ok_or_else(|| err(b.line, "names must come first"));
        match b.keyword {
            "names" if b.rows.is_empty() => names = Some(check_names(b.line, &b.args)?),
            "actor-names" if kind == FileKind::HomAction && b.rows.is_empty() => {
                actor_names = check_names(b.line, &b.args)?
            }
            "twist" if kind != FileKind::HomAction => {
                no_args(b)?;
                let n = n()?;
                twist = Some(matrix(b, n, n)?);
            }
            kw if kw == kind.table_keyword() => {
                no_args(b)?;
                n()?;
                table_block = Some(b);
            }
            "letter" if kind == FileKind::HomAssociative => {
                no_args(b)?;
                if !b.rows.is_empty() {
                    return Err(err(b.line, "letter opens a block of subalgebra/theta/delta/free-basis"));
                }
                let n = n()?;
                let mut parts: [Option<&Block>; 4] = [None; 4];
                loop {
                    let Some(inner) = it.next() else {
                        return Err(err(b.line, "letter block is not closed by 'end'"));
                    };
                    let slot = match inner.keyword {
                        "subalgebra" => 0,
                        "theta" => 1,
                        "delta" => 2,
                        "free-basis" => 3,
                        "end" => {
                            no_args(inner)?;
                            break;
                        }
                        other => return Err(err(inner.line, format!("{other} is not allowed inside a letter"))),
                    };
                    no_args(inner)?;
                    if parts[slot].replace(inner).is_some() {
                        return Err(err(inner.line, format!("repeated {} in letter", inner.keyword)));
                    }
                }
                let missing = |k: usize, name: &str| parts[k].ok_or_else(|| err(b.line, format!("letter lacks {name}")));
                let sub = vectors(missing(0, "subalgebra")?, n)?;
                let m = sub.len();
                letters.push(LetterBlock {
                    subalgebra: sub,
                    theta: matrix(missing(1, "theta")?, n, m)?,
                    delta: matrix(missing(2, "delta")?, n, m)?,
                    free_basis: vectors(missing(3, "free-basis")?, n)?,
                });
            }
            "variant" if kind == FileKind::HomAssociative && b.rows.is_empty() && b.args.len() == 1 => {
                variant = Some(LeibnizVariant::parse(b.args[0]).map_err(|e| err(b.line, e))?)
            }
            "subalgebra" if kind == FileKind::HomLie => {
                no_args(b)?;
                subalgebra = Some(vectors(b, n()?)?);
            }
            "derivation" if kind == FileKind::HomLie => {
                no_args(b)?;
                n()?;
                derivation_block = Some(b);
            }
            other => return Err(err(b.line, format!("unexpected {other} in a {} file", kind.name()))),
        }
    }
    let names = names.ok_or_else(|| Error::invalid("missing names"))?;
    let n = names.len();
    if n == 0 {
        return Err(Error::invalid("an algebra needs at least one basis element"));
    }
    let p = match kind {
        FileKind::HomAction if actor_names.is_empty() => return Err(Error::invalid("missing actor-names")),
        FileKind::HomAction => actor_names.len(),
        _ => n,
    };
    if kind != FileKind::HomAction && twist.is_none() {
        return Err(Error::invalid("missing twist"));
    }
    let mut table = Tensor3::zeros(p, n, n);
    let mut filled = std::collections::BTreeSet::new();
    if let Some(b) = table_block {
        let left = if kind == FileKind::HomAction { &actor_names } else { &names };
        for (line, toks) in &b.rows {
            if toks.len() != n + 3 || toks[2] != ":" {
                return Err(err(*line, format!("expected 'a b : v1 .. v{n}'")));
            }
            let i = position(left, *line, toks[0])?;
            let j = position(&names, *line, toks[1])?;
            if !filled.insert((i, j)) {
                return Err(err(*line, "repeated table entry"));
            }
            table.set_entry(i, j, &scalars(*line, &toks[3..])?);
        }
    }
    let derivation = match derivation_block {
        Some(b) => {
            let cols = subalgebra.as_ref().map_or(n, Vec::len);
            Some(matrix(b, n, cols)?)
        }
        None => None,
    };
    Ok(AlgebraFile {
        kind,
        names,
        actor_names,
        twist,
        table,
        letters,
        variant,
        subalgebra,
        derivation,
    })
}

fn row(v: &[Scalar]) -> String {
    v.iter().map(format_scalar).collect::<Vec<_>>().join(" ")
}

fn push_matrix(out: &mut String, indent: &str, m: &Matrix) {
    for r in m.to_rows() {
        out.push_str(&format!("{indent}{}\n", row(&r)));
    }
}

fn push_vectors(out: &mut String, indent: &str, vs: &[Vec<Scalar>]) {
    for v in vs {
        out.push_str(&format!("{indent}{}\n", row(v)));
    }
}

/// Canonical text: fixed block order, nonzero table entries only.
pub fn render(f: &AlgebraFile) -> String {
    let mut out = format!("kind {}\n", f.kind.name());
    out.push_str(&format!("names {}\n", f.names.join(" ")));
    if f.kind == FileKind::HomAction {
        out.push_str(&format!("actor-names {}\n", f.actor_names.join(" ")));
    }
    if let Some(t) = &f.twist {
        out.push_str("twist\n");
        push_matrix(&mut out, "  ", t);
    }
    out.push_str(&format!("{}\n", f.kind.table_keyword()));
    let left = if f.kind == FileKind::HomAction { &f.actor_names } else { &f.names };
    let (p, n, _) = f.table.shape();
    for i in 0..p {
        for j in 0..n {
            let v = f.table.entry(i, j);
            if v.iter().any(|x| !num_traits::Zero::is_zero(x)) {
                out.push_str(&format!("  {} {} : {}\n", left[i], f.names[j], row(&v)));
            }
        }
    }
    if let Some(v) = f.variant {
        out.push_str(&format!("variant {}\n", v.name()));
    }
    for l in &f.letters {
        out.push_str("letter\n  subalgebra\n");
        push_vectors(&mut out, "    ", &l.subalgebra);
        out.push_str("  theta\n");
        push_matrix(&mut out, "    ", &l.theta);
        out.push_str("  delta\n");
        push_matrix(&mut out, "    ", &l.delta);
        out.push_str("  free-basis\n");
        push_vectors(&mut out, "    ", &l.free_basis);
        out.push_str("end\n");
    }
    if let Some(s) = &f.subalgebra {
        out.push_str("subalgebra\n");
        push_vectors(&mut out, "  ", s);
    }
    if let Some(d) = &f.derivation {
        out.push_str("derivation\n");
        push_matrix(&mut out, "  ", d);
    }
    out
}

impl AlgebraFile {
    fn expect(&self, kind: FileKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::invalid(format!("expected a {} file, found {}", kind.name(), self.kind.name())))
        }
    }

    fn twist_matrix(&self) -> Result<Matrix> {
        self.twist.clone().ok_or_else(|| Error::invalid("missing twist"))
    }

    pub fn to_assoc(&self) -> Result<HomAssociativeAlgebra> {
        self.expect(FileKind::HomAssociative)?;
        HomAssociativeAlgebra::new(self.twist_matrix()?, self.table.clone(), Some(self.names.clone()))
    }

    pub fn to_lie(&self) -> Result<HomLieAlgebra> {
        self.expect(FileKind::HomLie)?;
        HomLieAlgebra::new(self.twist_matrix()?, self.table.clone(), Some(self.names.clone()))
    }

    /// The action of `actor` on `target`; basis names must match the file.
    pub fn to_action(&self, actor: &HomLieAlgebra, target: &HomLieAlgebra) -> Result<HomAction> {
        self.expect(FileKind::HomAction)?;
        if self.actor_names != actor.names() || self.names != target.names() {
            return Err(Error::invalid("action file names do not match the algebras"));
        }
        HomAction::new(actor.clone(), target.clone(), self.table.clone())
    }

    pub fn to_hnn_assoc(&self) -> Result<HNNAssocData> {
        let a = self.to_assoc()?;
        let n = a.dim();
        let mut letters = Vec::new();
        for l in &self.letters {
            let sub = SubspaceData::new(n, l.subalgebra.clone())?;
            letters.push(HNNLetter::new(&a, sub, l.theta.clone(), l.delta.clone(), l.free_basis.clone())?);
        }
        let mut data = HNNAssocData::new(a, letters);
        if let Some(v) = self.variant {
            data.variant = v;
        }
        Ok(data)
    }

    /// `s` defaults to all of `g` and `d` to zero.
    pub fn to_hnn_lie(&self) -> Result<HNNLieData> {
        let g = self.to_lie()?;
        let n = g.dim();
        let s = match &self.subalgebra {
            Some(b) => SubspaceData::new(n, b.clone())?,
            None => SubspaceData::whole(n),
        };
        let d = self.derivation.clone().unwrap_or_else(|| Matrix::zeros(n, s.dim()));
        HNNLieData::new(g, s, d)
    }

    fn bare(kind: FileKind, names: &[String], twist: Option<Matrix>, table: Tensor3) -> Self {
        AlgebraFile {
            kind,
            names: names.to_vec(),
            actor_names: Vec::new(),
            twist,
            table,
            letters: Vec::new(),
            variant: None,
            subalgebra: None,
            derivation: None,
        }
    }

    pub fn from_assoc(a: &HomAssociativeAlgebra) -> Self {
        Self::bare(FileKind::HomAssociative, a.names(), Some(a.twist().clone()), a.table().clone())
    }

    pub fn from_lie(l: &HomLieAlgebra) -> Self {
        Self::bare(FileKind::HomLie, l.names(), Some(l.twist().clone()), l.table().clone())
    }

    pub fn from_action(act: &HomAction) -> Self {
        let mut f = Self::bare(FileKind::HomAction, act.target.names(), None, act.tensor.clone());
        f.actor_names = act.actor.names().to_vec();
        f
    }

    pub fn from_hnn_assoc(data: &HNNAssocData) -> Self {
        let mut f = Self::from_assoc(&data.a);
        f.letters = data
            .letters
            .iter()
            .map(|l| LetterBlock {
                subalgebra: l.sub.basis().to_vec(),
                theta: l.theta.matrix.clone(),
                delta: l.delta.matrix.clone(),
                free_basis: l.reps().to_vec(),
            })
            .collect();
        if data.variant != LeibnizVariant::default() {
            f.variant = Some(data.variant);
        }
        f
    }

    pub fn from_hnn_lie(data: &HNNLieData) -> Self {
        let mut f = Self::from_lie(&data.g);
        f.subalgebra = Some(data.s.basis().to_vec());
        f.derivation = Some(data.d.clone());
        f
    }
}
