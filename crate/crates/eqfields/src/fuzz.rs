//! Seeded equivalence fuzzing of rewriting passes against the oracle
//! models, with JSON-serializable reports. Identical seeds give byte
//! identical reports.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::formula::FormulaFile;
use crate::oracle::{ModelOracle, Point, Sampler};

/// What a pass asks the fuzzer to verify for one corpus formula.
pub enum PassCheck {
    /// input and output are oracle-equivalent pointwise; `fixed` holds
    /// instance parameters merged into every sampled point; an output
    /// oracle is given when the pass changes language (lambda-to-delta).
    Equivalence {
        output: FormulaFile,
        fixed: Point,
        output_oracle: Option<ModelOracle>,
    },
    /// output(x, pivot, v) holds iff input(x, v / pivot^k) or pivot = 0.
    Homogenisation {
        output: FormulaFile,
        exponents: Vec<(String, u32)>,
        pivot: String,
    },
}

pub type PassFn<'a> = &'a dyn Fn(&FormulaFile, &ModelOracle, u64) -> Result<PassCheck>;

#[derive(Debug, Clone, Serialize)]
pub struct Disagreement {
    pub formula: usize,
    pub trial: u64,
    pub forced_zero: bool,
    pub point: BTreeMap<String, String>,
    pub input_value: bool,
    pub output_value: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzFormulaReport {
    pub formula: usize,
    pub trials: u64,
    pub forced_zero_trials: u64,
    pub disagreements: Vec<Disagreement>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzReport {
    pub schema: String,
    pub kind: String,
    pub pass: String,
    pub oracle: String,
    pub trials: u64,
    pub seed: u64,
    pub formulas: Vec<FuzzFormulaReport>,
    pub disagreements: usize,
}

fn record(
    dis: &mut Vec<Disagreement>,
    idx: usize,
    trial: u64,
    forced: bool,
    point: &Point,
    lhs: bool,
    rhs: bool,
) {
    if lhs != rhs {
        dis.push(Disagreement {
            formula: idx,
            trial,
            forced_zero: forced,
            point: point.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            input_value: lhs,
            output_value: rhs,
        });
    }
}

/// Runs `pass` over the corpus and samples `trials` points per formula
/// (plus `forced_zero` pivot-zero points for homogenisation checks),
/// recording every truth-value disagreement with its reproducing point.
pub fn fuzz_equivalence(
    pass_name: &str,
    pass: PassFn,
    corpus: &[FormulaFile],
    oracle: &ModelOracle,
    trials: u64,
    seed: u64,
    forced_zero: u64,
) -> Result<FuzzReport> {
    let mut formulas = Vec::new();
    let mut total = 0usize;
    for (idx, file) in corpus.iter().enumerate() {
        let check = pass(file, oracle, seed)?;
        let mut dis = Vec::new();
        let mut forced_done = 0u64;
        match &check {
            PassCheck::Equivalence { output, fixed, output_oracle } => {
                let out_oracle = output_oracle.as_ref().unwrap_or(oracle);
                let mut vars: Vec<String> = file.formula.free_variables();
                for v in output.formula.free_variables() {
                    if !vars.contains(&v) {
                        vars.push(v);
                    }
                }
                vars.retain(|v| !fixed.contains_key(v));
                vars.sort();
                for trial in 0..trials {
                    let mut sampler = Sampler::for_trial(oracle, seed, idx as u64, trial);
                    let mut point = sampler.point(&vars);
                    for (k, v) in fixed {
                        point.insert(k.clone(), v.clone());
                    }
                    let lhs = oracle.eval_routed(file, &point)?;
                    let rhs = out_oracle.eval_routed(output, &point)?;
                    record(&mut dis, idx, trial, false, &point, lhs, rhs);
                }
            }
            PassCheck::Homogenisation { output, exponents, pivot } => {
                let mut vars: Vec<String> = output.formula.free_variables();
                vars.retain(|v| v != pivot);
                vars.sort();
                for round in 0..trials + forced_zero {
                    let forced = round >= trials;
                    let mut sampler = Sampler::for_trial(oracle, seed, idx as u64, round);
                    let mut point = sampler.point(&vars);
                    let pivot_val = if forced {
                        crate::algebra::FieldElement::zero(&oracle.desc)
                    } else {
                        sampler.element()
                    };
                    point.insert(pivot.clone(), pivot_val.clone());
                    let rhs = oracle.eval_routed(output, &point)?;
                    if pivot_val.is_zero() {
                        // the pivot-zero locus must satisfy the output
                        record(&mut dis, idx, round, forced, &point, true, rhs);
                    } else {
                        let mut inner = point.clone();
                        inner.remove(pivot);
                        for (v, k) in exponents {
                            let val = point[v].div(&pivot_val.pow(*k)).expect("pivot nonzero");
                            inner.insert(v.clone(), val);
                        }
                        let lhs = oracle.eval_routed(file, &inner)?;
                        record(&mut dis, idx, round, forced, &point, lhs, rhs);
                    }
                    if forced {
                        forced_done += 1;
                    }
                }
            }
        }
        total += dis.len();
        formulas.push(FuzzFormulaReport {
            formula: idx,
            trials,
            forced_zero_trials: forced_done,
            disagreements: dis,
        });
    }
    Ok(FuzzReport {
        schema: "eqfields-report-v1".into(),
        kind: "fuzz".into(),
        pass: pass_name.to_string(),
        oracle: oracle.spec_string(),
        trials,
        seed,
        formulas,
        disagreements: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::sexpr::parse_file;

    #[test]
    fn identity_pass_has_no_disagreements() {
        let o = ModelOracle::scf(2, 1).unwrap();
        let corpus =
            vec![parse_file(";; lang: scf  p: 2\n(or (pdep 2 x y) (eq0 (+ (* x y) -1)))\n").unwrap()];
        let report = fuzz_equivalence(
            "identity",
            &|f, _, _| {
                Ok(PassCheck::Equivalence { output: f.clone(), fixed: Point::new(), output_oracle: None })
            },
            &corpus,
            &o,
            50,
            42,
            0,
        )
        .unwrap();
        assert_eq!(report.disagreements, 0);
    }

    #[test]
    fn broken_pass_is_caught() {
        // the canary: dropping a negation must surface within the trials
        let o = ModelOracle::scf(2, 1).unwrap();
        let corpus = vec![parse_file(";; lang: scf  p: 2\n(eq0 (* x y))\n").unwrap()];
        let report = fuzz_equivalence(
            "canary",
            &|f, _, _| {
                Ok(PassCheck::Equivalence {
                    output: FormulaFile::new(
                        f.lang,
                        f.charp,
                        crate::formula::Formula::not(f.formula.clone()),
                    )?,
                    fixed: Point::new(),
                    output_oracle: None,
                })
            },
            &corpus,
            &o,
            50,
            42,
            0,
        )
        .unwrap();
        assert!(report.disagreements > 0);
    }

    #[test]
    fn reports_are_byte_identical_for_equal_seeds() {
        let o = ModelOracle::scf(2, 1).unwrap();
        let corpus = vec![parse_file(";; lang: scf  p: 2\n(eq0 (+ x y))\n").unwrap()];
        let run = || {
            fuzz_equivalence(
                "identity",
                &|f, _, _| {
                    Ok(PassCheck::Equivalence { output: f.clone(), fixed: Point::new(), output_oracle: None })
                },
                &corpus,
                &o,
                20,
                7,
                0,
            )
            .unwrap()
        };
        let a = serde_json::to_vec(&run()).unwrap();
        let b = serde_json::to_vec(&run()).unwrap();
        assert_eq!(a, b);
    }
}
