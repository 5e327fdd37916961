//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use hom_hnn::cli::format::parse;
use hom_hnn::construct::{check_hom_action, semidirect_product};
use hom_hnn::exactlin::{int, Matrix, Scalar};
use hom_hnn::freepres::{
    check_pbw_injectivity, enveloping, normalize_term, poly_sub, spanning_terms, FreeConfig, PresentedAlgebraTrunc,
};
use hom_hnn::generate::Generator;
use hom_hnn::hnn::{
    build_m, build_q, check_hnn_relation, crosscheck_semidirect, embedding_certificate_assoc,
    embedding_certificate_lie, validate_hnn_assoc_data, variant_experiment, HNNLieData,
};
use hom_hnn::homalg::catalog::{abelian, affine_line, sl2};
use hom_hnn::homalg::{
    adjoint, check_beta_k_derivation, check_hom_associative, check_hom_lie, check_ideal, check_subalgebra,
    commutator_hom_lie, DerivationData, HomLieAlgebra, LeibnizVariant, SubspaceData, TwistedAlgebra, HOM_JACOBI,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

fn load(name: &str) -> hom_hnn::cli::format::AlgebraFile {
    let text = std::fs::read_to_string(corpus().join(name)).expect("corpus file");
    parse(&text).expect("corpus file parses")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn basis_vector(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![int(0); n];
    v[i] = int(1);
    v
}

fn axiom_suite() -> Outcome {
    let g = sl2();
    ensure(check_hom_lie(&g).pass(), || "sl2 fails its checker".into())?;
    let gl2 = load("gl2.alg").to_lie().map_err(|e| e.to_string())?;
    ensure(gl2.twist().is_identity() && check_hom_lie(&gl2).pass(), || "gl2 fails".into())?;
    let m2 = load("m2.alg").to_assoc().map_err(|e| e.to_string())?;
    ensure(check_hom_associative(&m2).pass(), || "M2 fails".into())?;

    // single stored entries break skew-symmetry and are rejected at construction
    let mut raw = Vec::new();
    for delta in [1i64, -1] {
        raw.extend((0..27).map(|x| (x / 9, (x / 3) % 3, x % 3, delta)));
    }
    raw.truncate(50);
    for &(i, j, k, delta) in &raw {
        let mut t = g.table().clone();
        let v = t.get(i, j, k) + int(delta);
        t.set(i, j, k, v);
        let msg = match HomLieAlgebra::new(g.twist().clone(), t, None) {
            Err(e) => e.to_string(),
            Ok(_) => return Err(format!("perturbation {:?} accepted", (i, j, k, delta))),
        };
        ensure(msg.contains("skew") && msg.contains('('), || format!("no witness in {msg:?}"))?;
    }
    // skew-consistent perturbations: the checker must agree with a direct Jacobi scan
    let mut jacobi_failures = 0;
    for delta in [1i64, -1, 2] {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            for k in 0..3 {
                let mut t = g.table().clone();
                let v = t.get(i, j, k) + int(delta);
                t.set(i, j, k, v.clone());
                t.set(j, i, k, -v);
                let l = HomLieAlgebra::new(g.twist().clone(), t, None).map_err(|e| e.to_string())?;
                let r = check_hom_lie(&l);
                let holds = jacobi_oracle(&l);
                ensure(r.passed(HOM_JACOBI) == holds, || format!("checker disagrees at {:?}", (i, j, k, delta)))?;
                if let Some(v) = r.violation(HOM_JACOBI) {
                    ensure(v.witness.len() == 3, || "witness is not a triple".into())?;
                    jacobi_failures += 1;
                }
            }
        }
    }
    Ok(format!(
        "sl2, gl2 and M2 pass; {} single-entry perturbations fail skew-symmetry; \
         checker matches direct scan on 27 skew perturbations ({jacobi_failures} fail Hom-Jacobi)",
        raw.len()
    ))
}

fn jacobi_oracle(l: &HomLieAlgebra) -> bool {
    let n = l.dim();
    let b = |u: &[Scalar], v: &[Scalar]| l.bracket(u, v);
    let beta = |u: &[Scalar]| l.twist().mul_vec(u);
    let e = |i| basis_vector(n, i);
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| {
                let s1 = b(&beta(&e(x)), &b(&e(y), &e(z)));
                let s2 = b(&beta(&e(y)), &b(&e(z), &e(x)));
                let s3 = b(&beta(&e(z)), &b(&e(x), &e(y)));
                s1.iter().zip(&s2).zip(&s3).all(|((a, c), d)| num_traits::Zero::is_zero(&(a + c + d)))
            })
        })
    })
}

fn commutator_functor() -> Outcome {
    let mut seen = std::collections::BTreeSet::new();
    let mut seed = 0u64;
    while seen.len() < 100 {
        let a = Generator::new(seed).yau_twist_assoc(4).map_err(|e| e.to_string())?;
        seed += 1;
        ensure(check_hom_associative(&a).pass(), || format!("seed {seed}: generated algebra fails"))?;
        let key = format!("{:?}{:?}", a.twist(), a.table());
        if !seen.insert(key) {
            continue;
        }
        let l = commutator_hom_lie(&a).map_err(|e| e.to_string())?;
        ensure(check_hom_lie(&l).pass(), || format!("seed {seed}: commutator fails"))?;
    }
    Ok(format!("{} distinct algebras from {seed} seeds", seen.len()))
}

fn adjoint_derivations() -> Outcome {
    let mut checked = 0;
    for seed in 0..100 {
        let l = Generator::new(seed).yau_twist_lie(4).map_err(|e| e.to_string())?;
        ensure(check_hom_lie(&l).pass(), || format!("seed {seed}: generated algebra fails"))?;
        let n = l.dim();
        for i in 0..n {
            let x = basis_vector(n, i);
            if l.twist().mul_vec(&x) != x {
                continue;
            }
            let d = adjoint(&l, &x).map_err(|e| e.to_string())?;
            let r = check_beta_k_derivation(&l, &d).map_err(|e| e.to_string())?;
            ensure(r.pass(), || format!("seed {seed}: ad(e{}) is not a derivation", i + 1))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} fixed basis vectors over 100 algebras"))
}

fn semidirect_products() -> Outcome {
    let mut g = Generator::new(4);
    let mut count = 0;
    while count < 20 {
        let act = g.hom_action(3).map_err(|e| e.to_string())?;
        ensure(check_hom_action(&act).map_err(|e| e.to_string())?.pass(), || "action fails".into())?;
        let sp = semidirect_product(&act).map_err(|e| e.to_string())?;
        ensure(check_hom_lie(&sp.result).pass(), || format!("action {count}: result fails"))?;
        let ideal = check_ideal(&sp.result, &sp.target_embedding).map_err(|e| e.to_string())?;
        let sub = check_subalgebra(&sp.result, &sp.actor_embedding).map_err(|e| e.to_string())?;
        ensure(ideal.pass() && sub.pass(), || format!("action {count}: embeddings fail"))?;
        count += 1;
    }
    Ok(format!("{count} validated actions"))
}

fn words(n: usize, k: usize) -> usize {
    let mut acc: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        acc = acc
            .iter()
            .flat_map(|w| (0..n).map(move |x| [w.as_slice(), &[x]].concat()))
            .collect();
    }
    acc.len()
}

fn free_algebra() -> Outcome {
    let mut terms = 0;
    for n in 1..=2 {
        for k in 1..=4 {
            for w in spanning_terms(n, k) {
                let w = normalize_term(&w);
                ensure(normalize_term(&w.clone().twist().twist()) == w, || format!("alpha^2 moves {w:?}"))?;
                terms += 1;
            }
        }
        let a = PresentedAlgebraTrunc::free(FreeConfig {
            names: (0..n).map(|i| format!("g{i}")).collect(),
            generator_twist: Matrix::identity(n),
            degree: 4,
            unital: false,
            bound: None,
        })
        .map_err(|e| e.to_string())?;
        let dims = a.dims();
        for k in 1..=4 {
            ensure(dims[k] == words(n, k), || format!("n={n}: dims {dims:?}"))?;
        }
    }
    Ok(format!("alpha^2 = id on {terms} normalized terms; identity-twist dims match word counts"))
}

fn pbw() -> Outcome {
    let e = enveloping(&sl2(), 2).map_err(|e| e.to_string())?;
    let total: usize = e.dims().iter().sum();
    // monomials of degree <= 2 in 3 commuting variables
    let oracle = (0..=2).map(|k| (0..=k).map(|a| k - a + 1).sum::<usize>()).sum::<usize>();
    ensure(total == oracle && total == 10, || format!("U(sl2) degree <= 2 has dimension {total}"))?;
    let twisted = load("sl2_twisted.alg").to_lie().map_err(|e| e.to_string())?;
    let mut algebras = vec![("sl2", sl2()), ("twisted sl2", twisted)];
    for n in 1..=3 {
        algebras.push(("abelian", abelian(n)));
    }
    for (name, g) in &algebras {
        let e = enveloping(g, 3).map_err(|e| e.to_string())?;
        ensure(e.verification.pass(), || format!("{name}: enveloping verification fails"))?;
        ensure(check_pbw_injectivity(&e).pass, || format!("{name}: PBW certificate fails"))?;
    }
    Ok(format!("dim U(sl2)_(<=2) = {total}; {} certificates at degree 3", algebras.len()))
}

fn hnn_assoc() -> Outcome {
    let data = load("worked_hnn.alg").to_hnn_assoc().map_err(|e| e.to_string())?;
    ensure(validate_hnn_assoc_data(&data).pass(), || "worked instance fails validation".into())?;
    let q = build_q(&data, 2).map_err(|e| e.to_string())?;
    let frag = check_hnn_relation(&q, 0, &[int(1)]).map_err(|e| e.to_string())?;
    ensure(frag.zero, || "worked instance residual is nonzero".into())?;
    ensure(
        embedding_certificate_assoc(&data, 2).map_err(|e| e.to_string())?.pass,
        || "worked instance certificate fails".into(),
    )?;
    let mut instances = 0;
    for seed in 0..300 {
        let Some(d) = Generator::new(seed).hnn_assoc_instance(3).map_err(|e| e.to_string())? else {
            continue;
        };
        ensure(d.a.twist().is_identity() && validate_hnn_assoc_data(&d).pass(), || {
            format!("seed {seed}: invalid instance")
        })?;
        let q = build_q(&d, 2).map_err(|e| e.to_string())?;
        for (i, l) in d.letters.iter().enumerate() {
            for k in 0..l.sub.dim() {
                let f = check_hnn_relation(&q, i, &basis_vector(l.sub.dim(), k)).map_err(|e| e.to_string())?;
                ensure(f.zero, || format!("seed {seed}: letter {} residual nonzero", i + 1))?;
            }
        }
        instances += 1;
    }
    ensure(instances > 0, || "random search found no instances".into())?;
    Ok(format!("worked instance certified; {instances} random instances with zero residuals"))
}

fn variant() -> Outcome {
    let exp = variant_experiment(2).map_err(|e| e.to_string())?;
    let golden = include_str!("golden/leibniz_variant.txt");
    ensure(exp.render() == golden, || "experiment differs from golden file".into())?;
    let selected = exp.selected.ok_or("no unique variant")?;
    ensure(selected == LeibnizVariant::default(), || "default differs from selection".into())?;
    Ok(format!("selected {}", selected.name()))
}

fn hnn_lie() -> Outcome {
    let g1 = abelian(1);
    let cases = [
        (
            "abelian",
            HNNLieData::new(g1, SubspaceData::whole(1), Matrix::identity(1)).map_err(|e| e.to_string())?,
        ),
        (
            "affine",
            HNNLieData::new(
                affine_line(),
                SubspaceData::new(2, vec![vec![int(0), int(1)]]).map_err(|e| e.to_string())?,
                Matrix::from_i64(&[&[0], &[1]]),
            )
            .map_err(|e| e.to_string())?,
        ),
    ];
    for (name, data) in &cases {
        let m = build_m(data, 3, 2).map_err(|e| format!("{name}: {e}"))?;
        let t = m.t_element().ok_or(format!("{name}: no letter t"))?;
        let alg = &m.algebra;
        for j in 0..data.s.dim() {
            let s = m.phi(&data.s.basis()[j]);
            let ds = m.phi(&data.d.column(j));
            let ts = alg.multiply(&t, &s).map_err(|e| e.to_string())?;
            let st = alg.multiply(&s, &t).map_err(|e| e.to_string())?;
            ensure(alg.equal_mod_ideal(&poly_sub(&ts, &st), &ds), || format!("{name}: [t, s{}] != d(s{})", j + 1, j + 1))?;
        }
        let cert = embedding_certificate_lie(data, 3, 2).map_err(|e| e.to_string())?;
        ensure(cert.pass, || format!("{name}: certificate fails"))?;
    }
    Ok("abelian and affine extensions certified at degree 3, bound 2".into())
}

fn crosscheck() -> Outcome {
    let mut pairs: Vec<(String, HomLieAlgebra, DerivationData)> = Vec::new();
    for name in ["sl2_adh.alg", "abelian_hnn.alg"] {
        let f = load(name);
        let data = f.to_hnn_lie().map_err(|e| e.to_string())?;
        if data.s.dim() == data.g.dim() && data.s.inclusion().is_identity() {
            pairs.push((name.into(), data.g.clone(), DerivationData::new(data.d.clone(), 1).map_err(|e| e.to_string())?));
        }
    }
    let mut g = Generator::new(10);
    for k in 0..20 {
        let l = g.yau_twist_lie(3).map_err(|e| e.to_string())?;
        let d = g.derivation(&l);
        pairs.push((format!("generated {k}"), l, d));
    }
    let mut checked = 0;
    for (name, l, d) in &pairs {
        if !check_beta_k_derivation(l, d).map_err(|e| e.to_string())?.pass() {
            continue;
        }
        let r = crosscheck_semidirect(l, d).map_err(|e| e.to_string())?;
        ensure(r.pass(), || format!("{name}: tables differ"))?;
        checked += 1;
    }
    ensure(checked >= 2, || "too few verified derivations".into())?;
    Ok(format!("{checked} (g, d) pairs agree entry by entry"))
}

fn cli_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_hom-hnn");
    let matrix: &[(&[&str], i32)] = &[
        (&["check", "sl2.alg"], 0),
        (&["--json", "check", "m2_twisted.alg"], 0),
        (&["check", "not_involutive.alg"], 1),
        (&["check", "not_jacobi.alg"], 2),
        (&["check", "malformed.alg"], 2),
        (&["check", "absent.alg"], 2),
        (&["commutator", "m2.alg"], 0),
        (&["semidirect", "heis_actor.alg", "heis_target.alg", "heis_action.alg"], 0),
        (&["envelope", "sl2_twisted.alg", "--degree", "3"], 0),
        (&["--json", "hnn-assoc", "worked_hnn.alg", "--maxlen", "2"], 0),
        (&["hnn-assoc", "zero_theta_hnn.alg", "--maxlen", "2"], 1),
        (&["hnn-lie", "affine_hnn.alg", "--degree", "3", "--maxlen", "2"], 0),
        (&["hnn-lie", "not_subalgebra_hnn.alg", "--degree", "2", "--maxlen", "1"], 1),
        (&["generate", "--mode", "yau-twist", "--kind", "hom-lie", "--dim", "3", "--seed", "5"], 0),
        (&["generate", "--mode", "random-search", "--kind", "hom-associative", "--dim", "2", "--seed", "5"], 0),
        (&["generate", "--mode", "random-search", "--kind", "hom-lie", "--dim", "1", "--nonabelian", "--attempts", "3"], 3),
        (&["unknown-command"], 2),
    ];
    for (args, expected) in matrix {
        let run = || Command::new(bin).args(*args).current_dir(corpus()).output().map_err(|e| e.to_string());
        let (a, b) = (run()?, run()?);
        ensure(a.stdout == b.stdout, || format!("{args:?}: output differs between runs"))?;
        let code = a.status.code().unwrap_or(-1);
        ensure(code == *expected, || format!("{args:?}: exit {code}, expected {expected}"))?;
    }
    Ok(format!("{} commands, each run twice", matrix.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("axiom suite and perturbations", axiom_suite, 1),
        ("commutator functor", commutator_functor, 10),
        ("adjoint derivations", adjoint_derivations, 5),
        ("semidirect products", semidirect_products, 5),
        ("free algebra", free_algebra, 20),
        ("enveloping algebra and PBW", pbw, 30),
        ("associative HNN-extension", hnn_assoc, 20),
        ("Leibniz variant discrimination", variant, 20),
        ("Hom-Lie HNN-extension", hnn_lie, 30),
        ("semidirect cross-check", crosscheck, 5),
        ("CLI determinism and exit codes", cli_determinism, 10),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > Duration::from_secs(*limit) => Err(format!("took {elapsed:.2?}, limit {limit} s")),
            r => r,
        };
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{elapsed:.2?}]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
