//! Command-line front end: rewrite passes over `.eqf` files, oracle
//! evaluation, seeded equivalence fuzzing, the descending-chain lab,
//! annihilators, and shape classification. Exit codes: 0 success, 1 a
//! finding (fuzz disagreement or unstabilized chain), 2 usage errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::chain::{chain_run, ChainOptions};
use crate::corpus;
use crate::error::{Error, Result};
use crate::formula::sexpr::{parse_file, print_file};
use crate::formula::shapes::{
    classify, ClassifiedShape, DeltaTame, GuardKind, LambdaTame, TameFormula,
};
use crate::formula::{Formula, FormulaFile, FreshNames, LanguageTag};
use crate::fuzz::{fuzz_equivalence, PassCheck};
use crate::oracle::{parse_point, ModelOracle, Point};
use crate::pairs::{annihilator, combine_tame, lambdap_to_tame, linearize_tame, Connective};

#[derive(Parser)]
#[command(name = "eqfields", version, about = "exact rewriting pipelines for equational field theories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a rewriting pass to a formula file
    Rewrite(RewriteArgs),
    /// Evaluate a formula at a point
    Eval(EvalArgs),
    /// Fuzz a pass for oracle equivalence over a corpus
    Fuzz(FuzzArgs),
    /// Run a descending-chain experiment
    Chain(ChainArgs),
    /// Annihilator dimensions, basis and Pluecker point
    Ann(AnnArgs),
    /// Classify the shape of a formula file
    Classify { file: PathBuf },
}

#[derive(Args)]
struct RewriteArgs {
    /// one of: lambda-bk, lambda-hom, scf-reduce, delta-bk, delta-hom,
    /// lambda-to-delta, s-form, dcf-reduce, segre, lambdap-to-tame, linearize
    #[arg(long)]
    pass: String,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// oracle spec (scf:p=2,e=1 | dcf:p=3 | pair:k=1), for instance reductions
    #[arg(long)]
    oracle: Option<String>,
    /// JSON point file with the instance parameters b
    #[arg(long)]
    point: Option<PathBuf>,
    /// homogenisation block, comma separated (lambda-hom)
    #[arg(long)]
    block: Option<String>,
    /// homogenisation pivot variable
    #[arg(long)]
    pivot: Option<String>,
    /// delta-homogenisation exponents, e.g. x1=1,x2=2
    #[arg(long)]
    exponents: Option<String>,
    /// linearization degree (defaults to the zeta-degree)
    #[arg(long)]
    degree: Option<u32>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    oracle: String,
    #[arg(long)]
    formula: PathBuf,
    #[arg(long)]
    point: PathBuf,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long)]
    pass: String,
    #[arg(long)]
    oracle: String,
    #[arg(long, default_value_t = 500)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// pivot-zero trials for homogenisation passes
    #[arg(long, default_value_t = 100)]
    forced_zero: u64,
    /// directory of .eqf files; the built-in corpus when absent
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// write the JSON report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ChainArgs {
    #[arg(long)]
    formula: PathBuf,
    #[arg(long)]
    oracle: String,
    /// JSON list of parameter tuples, e.g. [{"y":"1"},{"y":"2"}]
    #[arg(long)]
    params: PathBuf,
    #[arg(long)]
    degree_bound: Option<u32>,
    #[arg(long, default_value_t = 64)]
    max_steps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AnnArgs {
    #[arg(long)]
    point: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "pair:k=1")]
    oracle: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn need<'a, T>(opt: &'a Option<T>, what: &str) -> Result<&'a T> {
    opt.as_ref().ok_or_else(|| Error::Usage(format!("this pass needs --{what}")))
}

fn parse_exponents(s: &str) -> Result<BTreeMap<String, u32>> {
    let mut out = BTreeMap::new();
    for part in s.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Usage(format!("bad exponent entry '{part}'")))?;
        let e: u32 = v.parse().map_err(|_| Error::Usage(format!("bad exponent '{v}'")))?;
        out.insert(k.trim().to_string(), e);
    }
    Ok(out)
}

fn emit_report(out: &Option<PathBuf>, value: &serde_json::Value) -> Result<()> {
    let text = format!("{}\n", serde_json::to_string_pretty(value).expect("serializable"));
    match out {
        Some(p) => write_out(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn split_tame_pair(f: &Formula, charp: u64) -> Result<(TameFormula, TameFormula, Connective)> {
    let (parts, conn) = match f {
        Formula::And(fs) if fs.len() == 2 => (fs, Connective::And),
        Formula::Or(fs) if fs.len() == 2 => (fs, Connective::Or),
        _ => {
            return Err(Error::ShapeViolation(
                "segre expects a binary and/or of two tame formulae".into(),
            ))
        }
    };
    Ok((
        TameFormula::from_formula(&parts[0], charp)?,
        TameFormula::from_formula(&parts[1], charp)?,
        conn,
    ))
}

fn run_rewrite(args: &RewriteArgs) -> Result<i32> {
    let input = parse_file(&read(&args.input)?)?;
    let charp = input.charp;
    let mut extra: Option<serde_json::Value> = None;
    let output_file: FormulaFile = match args.pass.as_str() {
        "lambda-bk" => {
            let out = crate::scf::eliminate_lambda_terms(&input.formula, charp)?;
            FormulaFile::new(input.lang, charp, out)?
        }
        "lambda-hom" => {
            let block: Vec<String> = need(&args.block, "block")?
                .split(',')
                .map(|s| s.trim().to_string())
                .collect();
            let pivot = need(&args.pivot, "pivot")?;
            let lt = LambdaTame::from_formula(&input.formula, charp, GuardKind::Scf)?;
            let out = crate::scf::homogenize_lambda(&lt, &block, pivot)?;
            FormulaFile::new(input.lang, charp, out.to_formula())?
        }
        "scf-reduce" => {
            let oracle = ModelOracle::from_spec(need(&args.oracle, "oracle")?)?;
            let b = parse_point(&oracle, &read(need(&args.point, "point")?)?)?;
            let lt = LambdaTame::from_formula(&input.formula, charp, GuardKind::Scf)?;
            let mut fresh = FreshNames::for_formula(&input.formula);
            let red = crate::scf::reduce_instance_scf(&lt, &b, &oracle, &mut fresh)?;
            extra = Some(json!({
                "bprime": red.bprime.iter().map(|(k, v)| (k.clone(), v.to_string())).collect::<BTreeMap<_, _>>(),
            }));
            FormulaFile::new(input.lang, charp, red.formula)?
        }
        "delta-bk" => {
            let out = crate::dcf::eliminate_s_terms(&input.formula, charp)?;
            FormulaFile::new(input.lang, charp, out)?
        }
        "delta-hom" => {
            let exps = parse_exponents(need(&args.exponents, "exponents")?)?;
            let pivot = need(&args.pivot, "pivot")?;
            let dt = DeltaTame::from_formula(&input.formula, charp)?;
            let out = crate::dcf::homogenize_delta(&dt, &exps, pivot)?;
            FormulaFile::new(input.lang, charp, out.to_formula())?
        }
        "lambda-to-delta" => {
            let lt = LambdaTame::from_formula(&input.formula, charp, GuardKind::Scf)?;
            let mut fresh = FreshNames::for_formula(&input.formula);
            let out = crate::dcf::lambda_to_delta(&lt, &mut fresh)?;
            FormulaFile::new(LanguageTag::Dcf, charp, out.to_formula())?
        }
        "s-form" => {
            // delta-tame inputs go to S-formulae, S-formulae come back
            match DeltaTame::from_formula(&input.formula, charp) {
                Ok(dt) if !dt.chain.is_empty() => {
                    FormulaFile::new(input.lang, charp, crate::dcf::to_s_formula(&dt))?
                }
                _ => {
                    let mut fresh = FreshNames::for_formula(&input.formula);
                    let dt = crate::dcf::from_s_formula(&input.formula, charp, &mut fresh)?;
                    FormulaFile::new(input.lang, charp, dt.to_formula())?
                }
            }
        }
        "dcf-reduce" => {
            let oracle = ModelOracle::from_spec(need(&args.oracle, "oracle")?)?;
            let b = parse_point(&oracle, &read(need(&args.point, "point")?)?)?;
            let dt = DeltaTame::from_formula(&input.formula, charp)?;
            let mut fresh = FreshNames::for_formula(&input.formula);
            let red = crate::dcf::reduce_instance_dcf(&dt, &b, &oracle, &mut fresh)?;
            extra = Some(json!({
                "bprime": red.bprime.iter().map(|(k, v)| (k.clone(), v.to_string())).collect::<BTreeMap<_, _>>(),
            }));
            FormulaFile::new(input.lang, charp, red.reduced.to_formula())?
        }
        "segre" => {
            let (t1, t2, conn) = split_tame_pair(&input.formula, charp)?;
            let out = combine_tame(&t1, &t2, conn)?;
            FormulaFile::new(input.lang, charp, out.to_formula())?
        }
        "lambdap-to-tame" => {
            let lt = LambdaTame::from_formula(&input.formula, charp, GuardKind::Pair)?;
            let mut fresh = FreshNames::for_formula(&input.formula);
            let out = lambdap_to_tame(&lt.shape, charp, &mut fresh)?;
            FormulaFile::new(input.lang, charp, out.to_formula())?
        }
        "linearize" => {
            let tame = TameFormula::from_formula(&input.formula, charp)?;
            let d = args.degree.unwrap_or(tame.zeta_degree().max(1) as u32);
            let mut fresh = FreshNames::for_formula(&input.formula);
            let lin = linearize_tame(&tame, d, &mut fresh)?;
            FormulaFile::new(input.lang, charp, lin.to_tame().to_formula())?
        }
        other => return Err(Error::Usage(format!("unknown pass '{other}'"))),
    };
    write_out(&args.output, &print_file(&output_file))?;
    if let Some(v) = extra {
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
    }
    Ok(0)
}

fn run_eval(args: &EvalArgs) -> Result<i32> {
    let oracle = ModelOracle::from_spec(&args.oracle)?;
    let file = parse_file(&read(&args.formula)?)?;
    let point = parse_point(&oracle, &read(&args.point)?)?;
    let value = oracle.eval_routed(&file, &point)?;
    let report = json!({
        "schema": "eqfields-report-v1",
        "kind": "eval",
        "oracle": oracle.spec_string(),
        "value": value,
    });
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    Ok(0)
}

/// Built-in corpora and pass closures by pass name.
fn builtin_corpus(pass: &str, oracle: &ModelOracle) -> Result<Vec<FormulaFile>> {
    let p = oracle.charp();
    Ok(match pass {
        "lambda-bk" => corpus::scf_term_equations(p),
        "delta-bk" => corpus::dcf_term_equations(p),
        "lambda-hom" => corpus::scf_lambda_tame(p)
            .into_iter()
            .chain(corpus::scf_lambda_tame_vector(p))
            .map(|e| e.file)
            .collect(),
        "delta-hom" => corpus::dcf_delta_tame(p).into_iter().map(|e| e.file).collect(),
        "lambda-to-delta" => corpus::scf_lambda_tame(p).into_iter().map(|e| e.file).collect(),
        "s-form" => corpus::dcf_delta_tame(p).into_iter().map(|e| e.file).collect(),
        "scf-reduce" => corpus::scf_claim_instances(p).into_iter().map(|e| e.file).collect(),
        "dcf-reduce" => corpus::dcf_claim_instances(p).into_iter().map(|e| e.file).collect(),
        "segre" => corpus::pair_tame_pairs()
            .into_iter()
            .flat_map(|(a, b)| {
                let and = Formula::And(vec![a.formula.clone(), b.formula.clone()]);
                let or = Formula::Or(vec![a.formula, b.formula]);
                [
                    FormulaFile::new(LanguageTag::Pair, 0, and).unwrap(),
                    FormulaFile::new(LanguageTag::Pair, 0, or).unwrap(),
                ]
            })
            .collect(),
        "lambdap-to-tame" => corpus::pair_lambda_p(),
        "linearize" => corpus::pair_tame(),
        other => return Err(Error::Usage(format!("unknown pass '{other}'"))),
    })
}

/// Pass closure used by the fuzzer; homogenisation metadata comes from
/// the built-in corpus (block variables by convention `y*`/`x*`).
pub fn pass_check(pass: &str, f: &FormulaFile, oracle: &ModelOracle, seed: u64) -> Result<PassCheck> {
    let charp = f.charp;
    match pass {
        "lambda-bk" => Ok(PassCheck::Equivalence {
            output: FormulaFile::new(f.lang, charp, crate::scf::eliminate_lambda_terms(&f.formula, charp)?)?,
            fixed: Point::new(),
            output_oracle: None,
        }),
        "delta-bk" => Ok(PassCheck::Equivalence {
            output: FormulaFile::new(f.lang, charp, crate::dcf::eliminate_s_terms(&f.formula, charp)?)?,
            fixed: Point::new(),
            output_oracle: None,
        }),
        "lambda-hom" => {
            let mut block: Vec<String> =
                f.formula.free_variables().into_iter().filter(|v| v.starts_with('y')).collect();
            block.sort();
            let lt = LambdaTame::from_formula(&f.formula, charp, GuardKind::Scf)?;
            let mut fresh = FreshNames::for_formula(&f.formula);
            let pivot = fresh.fresh("y0_");
            let out = crate::scf::homogenize_lambda(&lt, &block, &pivot)?;
            Ok(PassCheck::Homogenisation {
                output: FormulaFile::new(f.lang, charp, out.to_formula())?,
                exponents: block.into_iter().map(|v| (v, 1)).collect(),
                pivot,
            })
        }
        "delta-hom" => {
            let mut exps: Vec<(String, u32)> = f
                .formula
                .free_variables()
                .into_iter()
                .filter(|v| v.starts_with('x'))
                .enumerate()
                .map(|(i, v)| (v, (i as u32 % 2) + 1))
                .collect();
            exps.sort();
            let dt = DeltaTame::from_formula(&f.formula, charp)?;
            let mut fresh = FreshNames::for_formula(&f.formula);
            let pivot = fresh.fresh("x0_");
            let out =
                crate::dcf::homogenize_delta(&dt, &exps.iter().cloned().collect(), &pivot)?;
            Ok(PassCheck::Homogenisation {
                output: FormulaFile::new(f.lang, charp, out.to_formula())?,
                exponents: exps,
                pivot,
            })
        }
        "lambda-to-delta" => {
            let lt = LambdaTame::from_formula(&f.formula, charp, GuardKind::Scf)?;
            let mut fresh = FreshNames::for_formula(&f.formula);
            let out = crate::dcf::lambda_to_delta(&lt, &mut fresh)?;
            Ok(PassCheck::Equivalence {
                output: FormulaFile::new(LanguageTag::Dcf, charp, out.to_formula())?,
                fixed: Point::new(),
                output_oracle: Some(ModelOracle::dcf(charp)?),
            })
        }
        "s-form" => {
            let dt = DeltaTame::from_formula(&f.formula, charp)?;
            let out = crate::dcf::to_s_formula(&dt);
            crate::dcf::validate_s_formula(&out, charp)?;
            Ok(PassCheck::Equivalence {
                output: FormulaFile::new(f.lang, charp, out)?,
                fixed: Point::new(),
                output_oracle: None,
            })
        }
        "scf-reduce" => {
            let lt = LambdaTame::from_formula(&f.formula, charp, GuardKind::Scf)?;
            let mut fresh = FreshNames::for_formula(&f.formula);
            let params: Vec<String> =
                f.formula.free_variables().into_iter().filter(|v| v.starts_with('y')).collect();
            let mut sampler = crate::oracle::Sampler::for_trial(oracle, seed, u64::MAX, 0);
            let mut b = Point::new();
            for v in &params {
                b.insert(v.clone(), sampler.element());
            }
            let red = crate::scf::reduce_instance_scf(&lt, &b, oracle, &mut fresh)?;
            let mut fixed = b;
            fixed.extend(red.bprime.clone());
            Ok(PassCheck::Equivalence {
                output: FormulaFile::new(f.lang, charp, red.formula)?,
                fixed,
                output_oracle: None,
            })
        }
        "dcf-reduce" => {
            let dt = DeltaTame::from_formula(&f.formula, charp)?;
            let mut fresh = FreshNames::for_formula(&f.formula);
            let params: Vec<String> =
                f.formula.free_variables().into_iter().filter(|v| v.starts_with('y')).collect();
            let mut sampler = crate::oracle::Sampler::for_trial(oracle, seed, u64::MAX, 0);
            let mut b = Point::new();
            for v in &params {
                b.insert(v.clone(), sampler.element());
            }
            let red = crate::dcf::reduce_instance_dcf(&dt, &b, oracle, &mut fresh)?;
            let mut fixed = b;
            fixed.extend(red.bprime.clone());
            Ok(PassCheck::Equivalence {
                output: FormulaFile::new(f.lang, charp, red.reduced.to_formula())?,
                fixed,
                output_oracle: None,
            })
        }
        "segre" => {
            let (t1, t2, conn) = split_tame_pair(&f.formula, charp)?;
            let out = combine_tame(&t1, &t2, conn)?;
            Ok(PassCheck::Equivalence {
                output: FormulaFile::new(f.lang, charp, out.to_formula())?,
                fixed: Point::new(),
                output_oracle: None,
            })
        }
        "lambdap-to-tame" => {
            let lt = LambdaTame::from_formula(&f.formula, charp, GuardKind::Pair)?;
            let mut fresh = FreshNames::for_formula(&f.formula);
            let out = lambdap_to_tame(&lt.shape, charp, &mut fresh)?;
            Ok(PassCheck::Equivalence {
                output: FormulaFile::new(f.lang, charp, out.to_formula())?,
                fixed: Point::new(),
                output_oracle: None,
            })
        }
        "linearize" => {
            let tame = TameFormula::from_formula(&f.formula, charp)?;
            let d = tame.zeta_degree().max(1) as u32;
            let mut fresh = FreshNames::for_formula(&f.formula);
            let lin = linearize_tame(&tame, d, &mut fresh)?;
            Ok(PassCheck::Equivalence {
                output: FormulaFile::new(f.lang, charp, lin.to_tame().to_formula())?,
                fixed: Point::new(),
                output_oracle: None,
            })
        }
        other => Err(Error::Usage(format!("unknown pass '{other}'"))),
    }
}

fn run_fuzz(args: &FuzzArgs) -> Result<i32> {
    let oracle = ModelOracle::from_spec(&args.oracle)?;
    let corpus: Vec<FormulaFile> = match &args.corpus {
        Some(dir) => {
            let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
                .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().map_or(false, |x| x == "eqf"))
                .collect();
            files.sort();
            files
                .iter()
                .map(|p| parse_file(&read(p)?))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|f| f.lang == oracle.lang())
                .collect()
        }
        None => builtin_corpus(&args.pass, &oracle)?,
    };
    let pass_name = args.pass.clone();
    let report = fuzz_equivalence(
        &pass_name,
        &|f, o, seed| pass_check(&pass_name, f, o, seed),
        &corpus,
        &oracle,
        args.trials,
        args.seed,
        args.forced_zero,
    )?;
    let value = serde_json::to_value(&report).expect("serializable");
    emit_report(&args.output, &value)?;
    Ok(if report.disagreements > 0 { 1 } else { 0 })
}

fn run_chain(args: &ChainArgs) -> Result<i32> {
    let oracle = ModelOracle::from_spec(&args.oracle)?;
    let file = parse_file(&read(&args.formula)?)?;
    let raw: Vec<BTreeMap<String, String>> = serde_json::from_str(&read(&args.params)?)
        .map_err(|e| Error::Io(format!("params file: {e}")))?;
    let mut params = Vec::with_capacity(raw.len());
    for entry in raw {
        let mut point = Point::new();
        for (k, v) in entry {
            point.insert(k, crate::algebra::parse_element(&oracle.desc, &v)?);
        }
        params.push(point);
    }
    let opts = ChainOptions {
        degree_bound: args.degree_bound,
        max_steps: args.max_steps,
        grid_samples: 16,
        seed: args.seed,
    };
    let report = chain_run(&file, &params, &oracle, &opts)?;
    let ok = report.stabilized && report.monotonicity_violations == 0;
    let value = serde_json::to_value(&report).expect("serializable");
    emit_report(&args.output, &value)?;
    Ok(if ok { 0 } else { 1 })
}

fn run_ann(args: &AnnArgs) -> Result<i32> {
    let oracle = ModelOracle::from_spec(&args.oracle)?;
    let point = parse_point(&oracle, &read(&args.point)?)?;
    let tuple: Vec<crate::algebra::FieldElement> = point.values().cloned().collect();
    if tuple.is_empty() {
        return Err(Error::Usage("the point file must assign at least one variable".into()));
    }
    let (dim, basis, pk) = annihilator(&oracle, &tuple, args.n)?;
    let report = json!({
        "schema": "eqfields-report-v1",
        "kind": "ann",
        "oracle": oracle.spec_string(),
        "n": args.n,
        "dimension": dim,
        "basis": basis
            .iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "plucker": {
            "ambient": pk.n,
            "grade": pk.k,
            "coords": pk.coords.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        },
    });
    emit_report(&args.output, &report)?;
    Ok(0)
}

fn shape_json(shape: &ClassifiedShape) -> serde_json::Value {
    match shape {
        ClassifiedShape::LambdaTame { degree } => json!({"shape": shape.name(), "degree": degree}),
        ClassifiedShape::LambdaP { degree } => json!({"shape": shape.name(), "degree": degree}),
        ClassifiedShape::DeltaTame { quantifiers } => {
            json!({"shape": shape.name(), "quantifiers": quantifiers})
        }
        ClassifiedShape::TermEquation { function_symbols } => {
            json!({"shape": shape.name(), "function_symbols": function_symbols})
        }
        ClassifiedShape::BooleanCombination(leaves) => {
            json!({"shape": shape.name(), "leaves": leaves.iter().map(shape_json).collect::<Vec<_>>()})
        }
        _ => json!({"shape": shape.name()}),
    }
}

fn run_classify(path: &Path) -> Result<i32> {
    let file = parse_file(&read(path)?)?;
    let shape = classify(&file);
    println!("{}", serde_json::to_string(&shape_json(&shape)).expect("serializable"));
    Ok(0)
}

/// Entry point used by the binary; returns the process exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap exits 2 on usage errors and 0 on --help/--version
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Rewrite(a) => run_rewrite(a),
        Command::Eval(a) => run_eval(a),
        Command::Fuzz(a) => run_fuzz(a),
        Command::Chain(a) => run_chain(a),
        Command::Ann(a) => run_ann(a),
        Command::Classify { file } => run_classify(file),
    };
    match result {
        Ok(code) => code,
        Err(Error::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

