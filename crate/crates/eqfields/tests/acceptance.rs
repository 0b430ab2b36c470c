//! The acceptance suite: ten property-based criteria, each printed as a
//! single pass/fail line. Time limits are enforced in optimized builds
//! (run with `cargo test --release -p eqfields --test acceptance --
//! --nocapture`); debug builds check everything but only report timings.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use eqfields::algebra::{
    constants_linear_dependent, parse_element, Coeff, FPoly, FieldDescriptor, FieldElement, Matrix,
};
use eqfields::chain::{chain_run, ChainOptions};
use eqfields::cli::pass_check;
use eqfields::corpus;
use eqfields::exterior::{is_decomposable, recover_subspace, subsets, wedge, PluckerVector};
use eqfields::formula::sexpr::parse_file;
use eqfields::formula::shapes::{classify, ClassifiedShape, DeltaTame, GuardKind, LambdaTame};
use eqfields::formula::{FormulaFile, FreshNames};
use eqfields::fuzz::fuzz_equivalence;
use eqfields::oracle::{ModelOracle, Point, Sampler};
use eqfields::pairs::simple_linear_checks;

struct Outcome {
    label: &'static str,
    limit: f64,
    elapsed: f64,
    error: Option<String>,
}

fn run_criterion(
    outcomes: &mut Vec<Outcome>,
    label: &'static str,
    limit: f64,
    f: impl FnOnce() -> Result<(), String>,
) {
    let t0 = Instant::now();
    let error = f().err();
    let elapsed = t0.elapsed().as_secs_f64();
    let timed_out = cfg!(not(debug_assertions)) && elapsed > limit;
    let status = match (&error, timed_out) {
        (None, false) => "PASS".to_string(),
        (None, true) => format!("FAIL (over the {limit}s limit)"),
        (Some(e), _) => format!("FAIL ({e})"),
    };
    println!("criterion {label}: {status} [{elapsed:.1}s / limit {limit}s]");
    let error = match (error, timed_out) {
        (None, true) => Some(format!("exceeded the {limit}s limit: {elapsed:.1}s")),
        (e, _) => e,
    };
    outcomes.push(Outcome { label, limit, elapsed, error });
}

fn check(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

// ---------------------------------------------------------------------------
// criterion 1: algebra kernel
// ---------------------------------------------------------------------------

/// Independent dependence check over the constants: expand a common
/// denominator and match coefficients over a basis of K over C_K. Over
/// Q(t) the constants are Q; over F_p(t) they are F_p(t^p), handled by
/// residue splitting into the isomorphic field F_p(s).
fn brute_force_constants_dependent(elems: &[FieldElement]) -> bool {
    let desc = elems[0].desc.clone();
    let mut den = FPoly::one(desc.nvars(), desc.charp);
    for e in elems {
        let g = den.gcd(&e.den);
        den = den.mul(&e.den.div_exact(&g).expect("gcd divides"));
    }
    let cleared: Vec<FPoly> = elems
        .iter()
        .map(|e| e.num.mul(&den.div_exact(&e.den).expect("lcm construction")))
        .collect();
    if desc.charp == 0 {
        // rows indexed by t-monomials, kernel over Q
        let qdesc = Arc::new(FieldDescriptor::rationals(&[]));
        let top = cleared.iter().map(|p| p.degree_in(0)).max().unwrap_or(0);
        let mut rows = Vec::new();
        for deg in 0..=top {
            let row: Vec<FieldElement> = cleared
                .iter()
                .map(|p| {
                    let c = p
                        .terms
                        .iter()
                        .find(|(m, _)| m.0[0] == deg)
                        .map(|(_, c)| c.clone())
                        .unwrap_or_else(|| Coeff::zero(0));
                    FieldElement::from_poly(&qdesc, FPoly::constant(0, c))
                })
                .collect();
            rows.push(row);
        }
        let m = Matrix::from_rows(&qdesc, &rows);
        m.rank() < elems.len()
    } else {
        // f_i = sum_r t^r g_{i,r}(t^p): dependence over the constants is a
        // kernel over F_p(s) with s standing for t^p
        let p = desc.charp;
        let sdesc = Arc::new(FieldDescriptor::prime_field(p, &["s"]).unwrap());
        let mut rows = Vec::new();
        for r in 0..p as u32 {
            let row: Vec<FieldElement> = cleared
                .iter()
                .map(|f| {
                    let split = f.residue_split();
                    let part = split.get(&vec![r]).cloned().unwrap_or_else(|| FPoly::zero(1, p));
                    // cube-root coefficients are themselves; exponents carry over
                    let mut g = FPoly::zero(1, p);
                    for (m, c) in &part.terms {
                        let mut mono = eqfields::algebra::Mono::one(1);
                        mono.0[0] = m.0[0];
                        g = g.add(&FPoly {
                            nvars: 1,
                            charp: p,
                            terms: [(mono, c.clone())].into_iter().collect(),
                        });
                    }
                    FieldElement::from_poly(&sdesc, g)
                })
                .collect();
            rows.push(row);
        }
        let m = Matrix::from_rows(&sdesc, &rows);
        m.rank() < elems.len()
    }
}

fn criterion_algebra() -> Result<(), String> {
    let descs: Vec<Arc<FieldDescriptor>> = vec![
        Arc::new(FieldDescriptor::rationals(&["t"]).with_default_derivation()),
        Arc::new(FieldDescriptor::prime_field(2, &["t"]).unwrap().with_default_derivation()),
        Arc::new(FieldDescriptor::prime_field(3, &["t"]).unwrap().with_default_derivation()),
    ];
    let oracles = [
        ModelOracle::pair(1).unwrap(),
        ModelOracle::scf(2, 1).unwrap(),
        ModelOracle::scf(3, 1).unwrap(),
    ];
    // field axioms and Leibniz rule, 500 trials per field
    for (fi, oracle) in oracles.iter().enumerate() {
        for trial in 0..500u64 {
            let mut s = Sampler::for_trial(oracle, 1001, fi as u64, trial);
            let a = s.element();
            let b = s.element();
            let c = s.element();
            check(a.add(&b).add(&c) == a.add(&b.add(&c)), "additive associativity")?;
            check(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), "multiplicative associativity")?;
            check(a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c)), "distributivity")?;
            check(a.add(&b) == b.add(&a) && a.mul(&b) == b.mul(&a), "commutativity")?;
            check(a.sub(&a).is_zero(), "additive inverse")?;
            if !a.is_zero() {
                check(a.mul(&a.inv().unwrap()).is_one(), "multiplicative inverse")?;
            }
            let leibniz = a.mul(&b).derive().unwrap()
                == a.mul(&b.derive().unwrap()).add(&b.mul(&a.derive().unwrap()));
            check(leibniz, "Leibniz rule")?;
            check(
                a.add(&b).derive().unwrap() == a.derive().unwrap().add(&b.derive().unwrap()),
                "derivation additivity",
            )?;
        }
    }
    // adjugate identity, 500 trials per field, sizes 1..=3
    for (fi, (oracle, desc)) in oracles.iter().zip(&descs).enumerate() {
        for trial in 0..500u64 {
            let mut s = Sampler::for_trial(oracle, 2002, fi as u64, trial);
            let n = 1 + (trial % 3) as usize;
            let entries: Vec<FieldElement> = (0..n * n).map(|_| s.element()).collect();
            let m = Matrix::new(desc, n, n, entries);
            let det = m.det().map_err(|e| e.to_string())?;
            let prod = m.mul(&m.adjugate().map_err(|e| e.to_string())?);
            check(prod == Matrix::identity(desc, n).scale(&det), "adjugate identity")?;
        }
    }
    // Wronskian vs brute-force kernel, 500 tuples per field from the pool
    let pool = ["0", "1", "2", "t", "t+1", "t^2", "1/(t)", "(t)/(t+1)", "t^2+1", "2*t"];
    for (fi, desc) in [&descs[0], &descs[2]].iter().enumerate() {
        let elems: Vec<FieldElement> =
            pool.iter().map(|s| parse_element(desc, s).unwrap()).collect();
        let oracle = if fi == 0 { &oracles[0] } else { &oracles[2] };
        for trial in 0..500u64 {
            let mut s = Sampler::for_trial(oracle, 3003, fi as u64, trial);
            let len = 1 + (trial % 4) as usize;
            let tuple: Vec<FieldElement> = (0..len)
                .map(|_| {
                    let mut seedbytes = [0u8; 8];
                    use rand_chacha::rand_core::RngCore;
                    // reuse the sampler's stream for pool picks
                    let _ = &mut seedbytes;
                    elems[(sample_u64(&mut s) % pool.len() as u64) as usize].clone()
                })
                .collect();
            let wronski = constants_linear_dependent(&tuple).map_err(|e| e.to_string())?;
            let brute = brute_force_constants_dependent(&tuple);
            check(wronski == brute, "Wronskian vs brute-force kernel disagreement")?;
        }
    }
    Ok(())
}

fn sample_u64(s: &mut Sampler) -> u64 {
    // deterministic auxiliary draw derived from element sampling
    let e = s.element();
    let text = e.to_string();
    let mut h: u64 = 0xcbf29ce484222325;
    for b in text.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

// ---------------------------------------------------------------------------
// criterion 2: exterior module
// ---------------------------------------------------------------------------

fn criterion_exterior() -> Result<(), String> {
    // exhaustive Gr(2, 4) over F_2
    let d = Arc::new(FieldDescriptor::prime_field(2, &[]).unwrap());
    let vecs_of = |bits: usize, len: usize| -> Vec<FieldElement> {
        (0..len).map(|i| FieldElement::from_int(&d, ((bits >> i) & 1) as i64)).collect()
    };
    // all 2-dimensional subspaces, identified by their three nonzero vectors
    let mut subspaces: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut plucker_of_subspace: Vec<Vec<usize>> = Vec::new();
    let mut decomposable_coords: BTreeSet<Vec<u8>> = BTreeSet::new();
    for a in 1..16usize {
        for b in 1..16usize {
            if a == b {
                continue;
            }
            let c = a ^ b;
            let mut key = vec![a, b, c];
            key.sort_unstable();
            if subspaces.insert(key.clone()) {
                plucker_of_subspace.push(key.clone());
                let z = wedge(&d, &[vecs_of(a, 4), vecs_of(b, 4)]).map_err(|e| e.to_string())?;
                let coords: Vec<u8> =
                    z.coords.iter().map(|e| if e.is_zero() { 0 } else { 1 }).collect();
                decomposable_coords.insert(coords);
            }
        }
    }
    check(subspaces.len() == 35, "expected 35 two-dimensional subspaces of F_2^4")?;
    // compare the membership test against the enumeration on all 63 vectors
    for bits in 1..64usize {
        let coords: Vec<FieldElement> =
            (0..6).map(|i| FieldElement::from_int(&d, ((bits >> i) & 1) as i64)).collect();
        let z = PluckerVector::new(&d, 4, 2, coords.clone()).map_err(|e| e.to_string())?;
        let expected = decomposable_coords
            .contains(&coords.iter().map(|e| if e.is_zero() { 0 } else { 1 }).collect::<Vec<u8>>());
        let got = is_decomposable(&z).map_err(|e| e.to_string())?;
        check(got == expected, &format!("decomposability mismatch on vector {bits}"))?;
    }
    // wedge/recover roundtrip on 200 random decomposables over F_3 and Q
    let fields = [
        Arc::new(FieldDescriptor::prime_field(3, &[]).unwrap()),
        Arc::new(FieldDescriptor::rationals(&[])),
    ];
    let mut done = 0;
    let mut trial = 0u64;
    while done < 200 {
        trial += 1;
        let desc = &fields[(trial % 2) as usize];
        let mut h = trial.wrapping_mul(0x9E3779B97F4A7C15);
        let mut next = || {
            h ^= h >> 31;
            h = h.wrapping_mul(0xBF58476D1CE4E5B9);
            h ^= h >> 29;
            h
        };
        let n = 3 + (next() % 3) as usize;
        let k = 1 + (next() % 3.min(n as u64)) as usize;
        let vectors: Vec<Vec<FieldElement>> = (0..k)
            .map(|_| (0..n).map(|_| FieldElement::from_int(desc, (next() % 7) as i64 - 3)).collect())
            .collect();
        let z = wedge(desc, &vectors).map_err(|e| e.to_string())?;
        if z.is_zero() {
            continue;
        }
        let basis = recover_subspace(&z).map_err(|e| e.to_string())?;
        check(basis.len() == k, "recovered dimension mismatch")?;
        let again = wedge(desc, &basis).map_err(|e| e.to_string())?;
        check(again.proportional(&z), "wedge/recover roundtrip failed")?;
        done += 1;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// fuzz-based criteria
// ---------------------------------------------------------------------------

fn run_pass(
    pass: &'static str,
    oracle: &ModelOracle,
    corpus: Vec<FormulaFile>,
    trials: u64,
    forced_zero: u64,
) -> Result<(), String> {
    let report = fuzz_equivalence(
        pass,
        &|f, o, seed| pass_check(pass, f, o, seed),
        &corpus,
        oracle,
        trials,
        42,
        forced_zero,
    )
    .map_err(|e| format!("{pass}: {e}"))?;
    check(
        report.disagreements == 0,
        &format!("{pass} on {}: {} disagreements", oracle.spec_string(), report.disagreements),
    )
}

fn criterion_homogenisation() -> Result<(), String> {
    for p in [2u64, 3] {
        let o = ModelOracle::scf(p, 1).unwrap();
        let corpus: Vec<FormulaFile> = corpus::scf_lambda_tame(p)
            .into_iter()
            .chain(corpus::scf_lambda_tame_vector(p))
            .map(|e| e.file)
            .collect();
        run_pass("lambda-hom", &o, corpus, 500, 100)?;
        let od = ModelOracle::dcf(p).unwrap();
        let corpus: Vec<FormulaFile> =
            corpus::dcf_delta_tame(p).into_iter().map(|e| e.file).collect();
        run_pass("delta-hom", &od, corpus, 500, 100)?;
    }
    Ok(())
}

fn criterion_bk() -> Result<(), String> {
    for p in [2u64, 3] {
        let o = ModelOracle::scf(p, 1).unwrap();
        run_pass("lambda-bk", &o, corpus::scf_term_equations(p), 500, 0)?;
        let od = ModelOracle::dcf(p).unwrap();
        run_pass("delta-bk", &od, corpus::dcf_term_equations(p), 500, 0)?;
    }
    Ok(())
}

fn criterion_lambda_to_delta() -> Result<(), String> {
    let o = ModelOracle::scf(3, 1).unwrap();
    let corpus: Vec<FormulaFile> =
        corpus::scf_lambda_tame(3).into_iter().map(|e| e.file).collect();
    run_pass("lambda-to-delta", &o, corpus, 300, 0)
}

fn criterion_s_formulae() -> Result<(), String> {
    let o = ModelOracle::dcf(3).unwrap();
    for (idx, entry) in corpus::dcf_delta_tame(3).into_iter().enumerate() {
        let dt = DeltaTame::from_formula(&entry.file.formula, 3).map_err(|e| e.to_string())?;
        let sform = eqfields::dcf::to_s_formula(&dt);
        eqfields::dcf::validate_s_formula(&sform, 3)
            .map_err(|e| format!("shape validator rejected output {idx}: {e}"))?;
        let mut fresh = FreshNames::for_formula(&sform);
        let back = eqfields::dcf::from_s_formula(&sform, 3, &mut fresh).map_err(|e| e.to_string())?;
        let ff = dt.to_formula();
        let bf = back.to_formula();
        let mut vars = entry.file.formula.free_variables();
        vars.sort();
        for trial in 0..200u64 {
            let mut s = Sampler::for_trial(&o, 4242, idx as u64, trial);
            let point = s.point(&vars);
            let a = o.eval_formula(&ff, &point).map_err(|e| e.to_string())?;
            let b = o.eval_formula(&sform, &point).map_err(|e| e.to_string())?;
            let c = o.eval_formula(&bf, &point).map_err(|e| e.to_string())?;
            check(a == b && b == c, &format!("s-formula roundtrip disagreement on entry {idx}"))?;
        }
    }
    Ok(())
}

fn criterion_reductions() -> Result<(), String> {
    // degree drop, classifier-checked, then pointwise equivalence
    let o = ModelOracle::scf(2, 1).unwrap();
    for (idx, entry) in corpus::scf_claim_instances(2).into_iter().enumerate() {
        let lt = LambdaTame::from_formula(&entry.file.formula, 2, GuardKind::Scf)
            .map_err(|e| e.to_string())?;
        let before = lt.degree();
        let mut sampler = Sampler::for_trial(&o, 42, u64::MAX, 0);
        let mut b = Point::new();
        for v in &entry.params {
            b.insert(v.clone(), sampler.element());
        }
        let mut fresh = FreshNames::for_formula(&entry.file.formula);
        let red = eqfields::scf::reduce_instance_scf(&lt, &b, &o, &mut fresh)
            .map_err(|e| e.to_string())?;
        let out = FormulaFile::new(entry.file.lang, 2, red.formula).map_err(|e| e.to_string())?;
        match classify(&out) {
            ClassifiedShape::LambdaTame { degree } => check(
                degree + 1 == before,
                &format!("scf instance {idx}: degree {before} -> {degree}"),
            )?,
            other => return Err(format!("scf instance {idx}: unexpected shape {other:?}")),
        }
    }
    run_pass("scf-reduce", &o, corpus::scf_claim_instances(2).into_iter().map(|e| e.file).collect(), 200, 0)?;

    let od = ModelOracle::dcf(3).unwrap();
    for (idx, entry) in corpus::dcf_claim_instances(3).into_iter().enumerate() {
        let dt = DeltaTame::from_formula(&entry.file.formula, 3).map_err(|e| e.to_string())?;
        let before = dt.quantifiers();
        let mut sampler = Sampler::for_trial(&od, 42, u64::MAX, 0);
        let mut b = Point::new();
        for v in &entry.params {
            b.insert(v.clone(), sampler.element());
        }
        let mut fresh = FreshNames::for_formula(&entry.file.formula);
        let red = eqfields::dcf::reduce_instance_dcf(&dt, &b, &od, &mut fresh)
            .map_err(|e| e.to_string())?;
        check(
            red.reduced.quantifiers() + 1 == before,
            &format!("dcf instance {idx}: quantifier count did not drop by one"),
        )?;
        let out = FormulaFile::new(entry.file.lang, 3, red.reduced.to_formula())
            .map_err(|e| e.to_string())?;
        match classify(&out) {
            ClassifiedShape::DeltaTame { quantifiers } => check(
                quantifiers + 1 == before,
                &format!("dcf instance {idx}: classifier count mismatch"),
            )?,
            other => return Err(format!("dcf instance {idx}: unexpected shape {other:?}")),
        }
    }
    run_pass("dcf-reduce", &od, corpus::dcf_claim_instances(3).into_iter().map(|e| e.file).collect(), 200, 0)?;
    Ok(())
}

fn criterion_pairs() -> Result<(), String> {
    let o = ModelOracle::pair(1).unwrap();
    let segre_corpus: Vec<FormulaFile> = corpus::pair_tame_pairs()
        .into_iter()
        .flat_map(|(a, b)| {
            let and = eqfields::formula::Formula::And(vec![a.formula.clone(), b.formula.clone()]);
            let or = eqfields::formula::Formula::Or(vec![a.formula, b.formula]);
            [
                FormulaFile::new(eqfields::formula::LanguageTag::Pair, 0, and).unwrap(),
                FormulaFile::new(eqfields::formula::LanguageTag::Pair, 0, or).unwrap(),
            ]
        })
        .collect();
    run_pass("segre", &o, segre_corpus, 200, 0)?;
    run_pass("lambdap-to-tame", &o, corpus::pair_lambda_p(), 200, 0)?;
    run_pass("linearize", &o, corpus::pair_tame(), 200, 0)?;
    // simple-linear implication on 500 random matrices up to 3x4
    for trial in 0..500u64 {
        let mut s = Sampler::for_trial(&o, 777, 0, trial);
        let m = 1 + (trial % 3) as usize;
        let n = 1 + ((trial / 3) % 4) as usize;
        let mut rows: Vec<Vec<FieldElement>> = (0..m)
            .map(|_| (0..n).map(|_| s.element()).collect())
            .collect();
        // make dependent rows common: half the time overwrite a row with a
        // rational multiple of another
        if m >= 2 && trial % 2 == 0 {
            rows[m - 1] = rows[0].iter().map(|e| e.mul_int((trial % 5) as i64)).collect();
        }
        let rep = simple_linear_checks(&o, &rows, 3, trial).map_err(|e| e.to_string())?;
        check(
            rep.implication_holds,
            &format!("simple-linear implication failed on trial {trial}"),
        )?;
    }
    Ok(())
}

fn criterion_chain() -> Result<(), String> {
    let opts = ChainOptions::default();
    // the x - y example stabilizes at exactly 2
    let f5 = ModelOracle::scf(5, 0).unwrap();
    let file = parse_file(";; lang: scf  p: 5\n(eq0 (+ x (- y)))\n").unwrap();
    let params: Vec<Point> = [1i64, 2, 3, 4]
        .iter()
        .map(|&v| [("y".to_string(), FieldElement::from_int(&f5.desc, v))].into_iter().collect())
        .collect();
    let rep = chain_run(&file, &params, &f5, &opts).map_err(|e| e.to_string())?;
    check(rep.stabilization_index == 2, "x - y example must stabilize at index 2")?;
    check(rep.stabilized, "x - y example must stabilize")?;
    let exact = rep.exact.ok_or("finite oracle must enumerate")?;
    check(exact.matches_span_index, "span and exact indices must agree")?;

    // polynomial candidates over finite oracles
    let candidates = [
        (";; lang: scf  p: 5\n(eq0 (+ (* y1 x1) (* y2 x2)))\n", 5u64, vec!["y1", "y2"]),
        (";; lang: scf  p: 3\n(eq0 (+ (^ x 2) (- y)))\n", 3, vec!["y"]),
        (";; lang: scf  p: 5\n(eq0 (+ (* y1 (^ x 2)) (* y2 x)))\n", 5, vec!["y1", "y2"]),
    ];
    for (src, p, yvars) in candidates {
        let oracle = ModelOracle::scf(p, 0).unwrap();
        let file = parse_file(src).unwrap();
        let params: Vec<Point> = (0..6u64)
            .map(|i| {
                yvars
                    .iter()
                    .enumerate()
                    .map(|(j, v)| {
                        (
                            v.to_string(),
                            FieldElement::from_int(&oracle.desc, ((i * 3 + j as u64 * 2 + 1) % p) as i64),
                        )
                    })
                    .collect()
            })
            .collect();
        let rep = chain_run(&file, &params, &oracle, &opts).map_err(|e| e.to_string())?;
        check(rep.stabilized, &format!("candidate over F_{p} did not stabilize"))?;
        check(rep.monotonicity_violations == 0, "descriptor gained solutions")?;
        let exact = rep.exact.ok_or("finite oracle must enumerate")?;
        check(
            exact.matches_span_index,
            &format!("span index {} vs exact index {}", rep.stabilization_index, exact.stabilization_index),
        )?;
    }

    // a differential candidate stabilizes as well
    let od = ModelOracle::dcf(3).unwrap();
    let file = parse_file(";; lang: dcf  p: 3\n(eq0 (+ (d x) (* y x)))\n").unwrap();
    let params: Vec<Point> = (1..6i64)
        .map(|i| [("y".to_string(), FieldElement::from_int(&od.desc, i))].into_iter().collect())
        .collect();
    let rep = chain_run(&file, &params, &od, &opts).map_err(|e| e.to_string())?;
    check(rep.stabilized, "differential candidate did not stabilize")?;
    check(rep.monotonicity_violations == 0, "differential descriptor gained solutions")?;
    Ok(())
}

fn criterion_determinism() -> Result<(), String> {
    let o = ModelOracle::scf(2, 1).unwrap();
    let corpus = corpus::scf_term_equations(2);
    let run = || {
        fuzz_equivalence(
            "lambda-bk",
            &|f, or, seed| pass_check("lambda-bk", f, or, seed),
            &corpus[..4],
            &o,
            50,
            42,
            0,
        )
        .map(|r| serde_json::to_vec(&r).unwrap())
    };
    let a = run().map_err(|e| e.to_string())?;
    let b = run().map_err(|e| e.to_string())?;
    check(a == b, "fuzz reports differ under the same seed")?;

    let f5 = ModelOracle::scf(5, 0).unwrap();
    let file = parse_file(";; lang: scf  p: 5\n(eq0 (+ x (- y)))\n").unwrap();
    let params: Vec<Point> = [1i64, 2]
        .iter()
        .map(|&v| [("y".to_string(), FieldElement::from_int(&f5.desc, v))].into_iter().collect())
        .collect();
    let opts = ChainOptions::default();
    let r1 = serde_json::to_vec(&chain_run(&file, &params, &f5, &opts).unwrap()).unwrap();
    let r2 = serde_json::to_vec(&chain_run(&file, &params, &f5, &opts).unwrap()).unwrap();
    check(r1 == r2, "chain reports differ under the same seed")?;
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let mut outcomes = Vec::new();
    run_criterion(&mut outcomes, "01 algebra kernel", 30.0, criterion_algebra);
    run_criterion(&mut outcomes, "02 exterior module", 10.0, criterion_exterior);
    run_criterion(&mut outcomes, "03 homogenisation biconditionals", 60.0, criterion_homogenisation);
    run_criterion(&mut outcomes, "04 term eliminations", 120.0, criterion_bk);
    run_criterion(&mut outcomes, "05 lambda-to-delta translation", 60.0, criterion_lambda_to_delta);
    run_criterion(&mut outcomes, "06 s-formula roundtrip", 30.0, criterion_s_formulae);
    run_criterion(&mut outcomes, "07 instance reductions", 60.0, criterion_reductions);
    run_criterion(&mut outcomes, "08 pairs pipeline", 90.0, criterion_pairs);
    run_criterion(&mut outcomes, "09 chain lab", 30.0, criterion_chain);
    run_criterion(&mut outcomes, "10 determinism", 30.0, criterion_determinism);
    let failures: Vec<String> = outcomes
        .iter()
        .filter_map(|o| o.error.as_ref().map(|e| format!("criterion {}: {e}", o.label)))
        .collect();
    let total: f64 = outcomes.iter().map(|o| o.elapsed).sum();
    println!(
        "acceptance: {}/{} criteria passed in {total:.1}s",
        outcomes.len() - failures.len(),
        outcomes.len()
    );
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
