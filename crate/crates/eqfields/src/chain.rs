//! The descending-chain lab: runs a candidate equation phi(x; y) against
//! a stream of parameter tuples and tracks the intersection of instances
//! as a degree-bounded linear span of instance polynomials, with an exact
//! solution-set cross-check on small finite oracles.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::{FieldElement, Matrix};
use crate::error::{Error, Result};
use crate::formula::canon::{term_to_tpoly, AtomKind, TMono, TPoly};
use crate::formula::shapes::{LinearTame, TameFormula};
use crate::formula::{Formula, FormulaFile};
use crate::oracle::{ModelOracle, Point, Sampler};

#[derive(Debug, Clone, Serialize)]
pub struct ChainStep {
    pub index: usize,
    pub changed: bool,
    pub dim: usize,
    pub descriptor_hash: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactChain {
    pub stabilization_index: usize,
    pub matches_span_index: bool,
}

/// Record of one descending-chain run: the per-step descriptors, the
/// first step after which nothing changes, and the exact solution-set
/// cross-check where the oracle is small enough to enumerate.
#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    pub schema: String,
    pub kind: String,
    pub formula: String,
    pub oracle: String,
    pub degree_bound: u32,
    pub params_consumed: usize,
    pub steps: Vec<ChainStep>,
    pub stabilization_index: usize,
    pub stabilized: bool,
    pub monotonicity_violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactChain>,
}

pub struct ChainOptions {
    pub degree_bound: Option<u32>,
    pub max_steps: usize,
    pub grid_samples: u64,
    pub seed: u64,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions { degree_bound: None, max_steps: 64, grid_samples: 16, seed: 0 }
    }
}

enum Candidate {
    /// p(x; y) = 0, polynomial or differential polynomial
    PolyEq(TPoly),
    /// zeta-linear tame block over the pair oracle
    Linear(LinearTame),
}

/// Slot in the span space: (zeta index or 0, x-monomial).
type Slot = (usize, TMono);

fn xpart_split(p: &TPoly, yvars: &BTreeSet<String>) -> Result<Vec<(TMono, TPoly)>> {
    // splits each monomial into its x-part (kept symbolic) and y-part
    let mut out: BTreeMap<TMono, TPoly> = BTreeMap::new();
    for (m, c) in &p.terms {
        let mut xm = BTreeMap::new();
        let mut ypoly = TPoly::bigint(p.charp, c);
        for (a, &e) in &m.0 {
            let AtomKind::Var(v) = &a.kind else {
                return Err(Error::ShapeViolation("chain candidates are variable polynomials".into()));
            };
            if yvars.contains(v) {
                ypoly = ypoly.mul(&TPoly::atom(p.charp, a.clone()).pow(e));
            } else {
                xm.insert(a.clone(), e);
            }
        }
        let entry = out.entry(TMono(xm)).or_insert_with(|| TPoly::zero(p.charp));
        *entry = entry.add(&ypoly);
    }
    Ok(out.into_iter().collect())
}

fn fnv1a(data: &str) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in data.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

fn mono_degree(m: &TMono) -> u32 {
    m.total_degree()
}

/// Runs the chain: each parameter tuple contributes its instance
/// polynomial(s) to the span; the report records when the reduced basis
/// stops changing.
pub fn chain_run(
    file: &FormulaFile,
    params: &[Point],
    oracle: &ModelOracle,
    opts: &ChainOptions,
) -> Result<ChainReport> {
    if file.lang != oracle.lang() || file.charp != oracle.charp() {
        return Err(Error::LanguageMismatch);
    }
    let yvars: BTreeSet<String> = params.first().map(|p| p.keys().cloned().collect()).unwrap_or_default();
    for p in params {
        if p.keys().cloned().collect::<BTreeSet<_>>() != yvars {
            return Err(Error::ShapeViolation("all parameter tuples assign the same variables".into()));
        }
    }
    let candidate = match &file.formula {
        Formula::Eq0(t) => {
            let p = term_to_tpoly(t, file.charp);
            if !p.is_diff_poly() {
                return Err(Error::ShapeViolation(
                    "chain candidates are polynomial or differential-polynomial equations".into(),
                ));
            }
            Candidate::PolyEq(p)
        }
        f @ Formula::ExistsP { .. } => {
            let tame = TameFormula::from_formula(f, file.charp)?;
            let lin = LinearTame::from_tame(&tame)
                .ok_or_else(|| Error::UndecidableShape("chain existsP candidates must be zeta-linear".into()))?;
            Candidate::Linear(lin)
        }
        _ => {
            return Err(Error::ShapeViolation(
                "unsupported candidate shape for the chain lab".into(),
            ))
        }
    };

    let steps_to_run = params.len().min(opts.max_steps);
    // instance rows, sparse over slots
    let mut instances: Vec<Vec<(Slot, FieldElement)>> = Vec::new();
    for b in params.iter().take(steps_to_run) {
        match &candidate {
            Candidate::PolyEq(p) => {
                let split = xpart_split(p, &yvars)?;
                let mut row = Vec::new();
                for (xm, ypoly) in &split {
                    let v = oracle.eval_tpoly(ypoly, b)?;
                    if !v.is_zero() {
                        row.push(((0usize, xm.clone()), v));
                    }
                }
                instances.push(row);
            }
            Candidate::Linear(lin) => {
                let k = lin.matrix.first().map_or(0, Vec::len);
                for j in 0..k {
                    let mut row = Vec::new();
                    for (i, zrow) in lin.matrix.iter().enumerate() {
                        let split = xpart_split(&zrow[j], &yvars)?;
                        for (xm, ypoly) in &split {
                            let v = oracle.eval_tpoly(ypoly, b)?;
                            if !v.is_zero() {
                                row.push(((i + 1, xm.clone()), v));
                            }
                        }
                    }
                    instances.push(row);
                }
            }
        }
    }
    // with multiple rows per parameter for linear candidates, regroup
    let rows_per_step = match &candidate {
        Candidate::PolyEq(_) => 1,
        Candidate::Linear(lin) => lin.matrix.first().map_or(1, Vec::len).max(1),
    };

    // fixed slot universe from all instances
    let mut slots: Vec<Slot> = Vec::new();
    for row in &instances {
        for (s, _) in row {
            if !slots.contains(s) {
                slots.push(s.clone());
            }
        }
    }
    slots.sort();
    let max_deg = slots.iter().map(|(_, m)| mono_degree(m)).max().unwrap_or(0);
    let degree_bound = opts.degree_bound.unwrap_or(2 * max_deg.max(1));
    if max_deg > degree_bound {
        return Err(Error::ShapeViolation(format!(
            "instance degree {max_deg} exceeds the degree bound {degree_bound}"
        )));
    }
    let slot_index: BTreeMap<Slot, usize> =
        slots.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let width = slots.len().max(1);

    let densify = |row: &[(Slot, FieldElement)]| -> Vec<FieldElement> {
        let mut out = vec![FieldElement::zero(&oracle.desc); width];
        for (s, v) in row {
            out[slot_index[s]] = v.clone();
        }
        out
    };

    let mut accumulated: Vec<Vec<FieldElement>> = Vec::new();
    let mut steps: Vec<ChainStep> = Vec::new();
    let mut last_hash = String::new();
    let mut last_changed = 0usize;
    let mut bases: Vec<Vec<Vec<FieldElement>>> = Vec::new();
    for (step, chunk) in instances.chunks(rows_per_step).enumerate() {
        for row in chunk {
            accumulated.push(densify(row));
        }
        let basis = if accumulated.iter().all(|r| r.iter().all(FieldElement::is_zero)) {
            Vec::new()
        } else {
            Matrix::from_rows(&oracle.desc, &accumulated).row_space_basis()
        };
        let text: String = basis
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";");
        let hash = fnv1a(&text);
        let changed = hash != last_hash;
        if changed {
            last_changed = step + 1;
        }
        last_hash = hash.clone();
        steps.push(ChainStep { index: step + 1, changed, dim: basis.len(), descriptor_hash: hash });
        bases.push(basis);
    }

    let stabilized = !steps.is_empty() && !steps.last().unwrap().changed;

    // sampled monotonicity check: satisfaction may only shrink step by step
    let mut violations = 0usize;
    if !bases.is_empty() {
        let xvars: Vec<String> = file
            .formula
            .free_variables()
            .into_iter()
            .filter(|v| !yvars.contains(v))
            .collect();
        for g in 0..opts.grid_samples {
            let mut sampler = Sampler::for_trial(oracle, opts.seed, u64::MAX, g);
            let pt = sampler.point(&xvars);
            let mut prev_sat: Option<bool> = None;
            for basis in &bases {
                let sat = descriptor_satisfied(oracle, &candidate, basis, &slots, &pt)?;
                if let Some(p) = prev_sat {
                    if sat && !p {
                        violations += 1;
                    }
                }
                prev_sat = Some(sat);
            }
        }
    }

    // exact cross-check over enumerable finite oracles
    let exact = exact_chain(file, params, oracle, steps_to_run, &yvars)?;
    let exact_report = exact.map(|idx| ExactChain {
        stabilization_index: idx,
        matches_span_index: idx == last_changed,
    });

    Ok(ChainReport {
        schema: "eqfields-report-v1".into(),
        kind: "chain".into(),
        formula: crate::formula::sexpr::print_formula(&file.formula),
        oracle: oracle.spec_string(),
        degree_bound,
        params_consumed: steps_to_run,
        steps,
        stabilization_index: last_changed,
        stabilized,
        monotonicity_violations: violations,
        exact: exact_report,
    })
}

/// Whether a point satisfies every polynomial in the descriptor basis
/// (for equations), or whether the accumulated linear system still has a
/// nonzero constant kernel (for linear candidates).
fn descriptor_satisfied(
    oracle: &ModelOracle,
    candidate: &Candidate,
    basis: &[Vec<FieldElement>],
    slots: &[Slot],
    pt: &Point,
) -> Result<bool> {
    match candidate {
        Candidate::PolyEq(_) => {
            for row in basis {
                let mut acc = FieldElement::zero(&oracle.desc);
                for (slot, coeff) in slots.iter().zip(row) {
                    if coeff.is_zero() {
                        continue;
                    }
                    let mono = TPoly {
                        charp: oracle.charp(),
                        terms: [(slot.1.clone(), num_bigint::BigInt::from(1))].into_iter().collect(),
                    };
                    let v = oracle.eval_tpoly(&mono, pt)?;
                    acc = acc.add(&v.mul(coeff));
                }
                if !acc.is_zero() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Candidate::Linear(lin) => {
            let s = lin.zetas.len();
            // evaluate each basis row into a constraint vector over zeta
            let mut cols: Vec<Vec<FieldElement>> = Vec::new();
            for row in basis {
                let mut col = vec![FieldElement::zero(&oracle.desc); s];
                for (slot, coeff) in slots.iter().zip(row) {
                    if coeff.is_zero() || slot.0 == 0 {
                        continue;
                    }
                    let mono = TPoly {
                        charp: oracle.charp(),
                        terms: [(slot.1.clone(), num_bigint::BigInt::from(1))].into_iter().collect(),
                    };
                    let v = oracle.eval_tpoly(&mono, pt)?;
                    col[slot.0 - 1] = col[slot.0 - 1].add(&v.mul(coeff));
                }
                cols.push(col);
            }
            if cols.iter().all(|c| c.iter().all(FieldElement::is_zero)) {
                return Ok(true);
            }
            let hull = crate::pairs::e_hull(&oracle.desc, &cols)?;
            Ok(hull.len() < s)
        }
    }
}

/// Exact solution-set chain over finite oracles small enough to
/// enumerate; returns the stabilization index.
fn exact_chain(
    file: &FormulaFile,
    params: &[Point],
    oracle: &ModelOracle,
    steps_to_run: usize,
    yvars: &BTreeSet<String>,
) -> Result<Option<usize>> {
    let p = oracle.charp();
    if p == 0 || oracle.desc.nvars() != 0 {
        return Ok(None);
    }
    let xvars: Vec<String> = file
        .formula
        .free_variables()
        .into_iter()
        .filter(|v| !yvars.contains(v))
        .collect();
    let total = (p as u64).checked_pow(xvars.len() as u32).unwrap_or(u64::MAX);
    if total > 10_000 {
        return Ok(None);
    }
    let mut points: Vec<Point> = vec![Point::new()];
    for v in &xvars {
        let mut next = Vec::with_capacity(points.len() * p as usize);
        for pt in &points {
            for val in 0..p {
                let mut q = pt.clone();
                q.insert(v.clone(), FieldElement::from_int(&oracle.desc, val as i64));
                next.push(q);
            }
        }
        points = next;
    }
    let mut alive: BTreeSet<usize> = (0..points.len()).collect();
    let mut last_changed = 0usize;
    for (step, b) in params.iter().take(steps_to_run).enumerate() {
        let mut next = BTreeSet::new();
        for &i in &alive {
            let mut pt = points[i].clone();
            for (k, v) in b {
                pt.insert(k.clone(), v.clone());
            }
            if oracle.eval(file, &pt)? {
                next.insert(i);
            }
        }
        if next != alive {
            last_changed = step + 1;
        }
        alive = next;
    }
    Ok(Some(last_changed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::sexpr::parse_file;

    fn f5() -> ModelOracle {
        ModelOracle::scf(5, 0).unwrap()
    }

    fn param(oracle: &ModelOracle, pairs: &[(&str, i64)]) -> Point {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), FieldElement::from_int(&oracle.desc, *v)))
            .collect()
    }

    #[test]
    fn distinct_singletons_stabilize_at_two() {
        let oracle = f5();
        let file = parse_file(";; lang: scf  p: 5\n(eq0 (+ x (- y)))\n").unwrap();
        let params = vec![
            param(&oracle, &[("y", 1)]),
            param(&oracle, &[("y", 2)]),
            param(&oracle, &[("y", 3)]),
        ];
        let rep = chain_run(&file, &params, &oracle, &ChainOptions::default()).unwrap();
        assert_eq!(rep.stabilization_index, 2);
        assert!(rep.stabilized);
        assert_eq!(rep.monotonicity_violations, 0);
        let exact = rep.exact.unwrap();
        assert_eq!(exact.stabilization_index, 2);
        assert!(exact.matches_span_index);
    }

    #[test]
    fn repeated_parameter_stabilizes_at_one() {
        let oracle = f5();
        let file = parse_file(";; lang: scf  p: 5\n(eq0 (+ x (- y)))\n").unwrap();
        let params = vec![param(&oracle, &[("y", 1)]); 4];
        let rep = chain_run(&file, &params, &oracle, &ChainOptions::default()).unwrap();
        assert_eq!(rep.stabilization_index, 1);
        assert!(rep.stabilized);
        assert!(rep.exact.unwrap().matches_span_index);
    }

    #[test]
    fn linear_in_x_chain_is_short() {
        // y1 x1 + y2 x2 = 0: dimension argument bounds the chain by 3
        let oracle = f5();
        let file = parse_file(";; lang: scf  p: 5\n(eq0 (+ (* y1 x1) (* y2 x2)))\n").unwrap();
        let params: Vec<Point> = (0..8)
            .map(|i| param(&oracle, &[("y1", (i * 3 + 1) % 5), ("y2", (i * 2 + 3) % 5)]))
            .collect();
        let rep = chain_run(&file, &params, &oracle, &ChainOptions::default()).unwrap();
        assert!(rep.stabilization_index <= 3);
        assert!(rep.stabilized);
        let exact = rep.exact.unwrap();
        assert!(exact.matches_span_index);
    }

    #[test]
    fn differential_candidate_runs() {
        let oracle = ModelOracle::dcf(3).unwrap();
        let file = parse_file(";; lang: dcf  p: 3\n(eq0 (+ (d x) (* y x)))\n").unwrap();
        let params: Vec<Point> = (1..5)
            .map(|i| {
                [("y".to_string(), FieldElement::from_int(&oracle.desc, i))].into_iter().collect()
            })
            .collect();
        let rep = chain_run(&file, &params, &oracle, &ChainOptions::default()).unwrap();
        assert!(rep.stabilized);
        assert_eq!(rep.monotonicity_violations, 0);
        assert!(rep.exact.is_none());
    }

    #[test]
    fn reports_are_deterministic() {
        let oracle = f5();
        let file = parse_file(";; lang: scf  p: 5\n(eq0 (+ x (- y)))\n").unwrap();
        let params = vec![param(&oracle, &[("y", 1)]), param(&oracle, &[("y", 2)])];
        let r1 = chain_run(&file, &params, &oracle, &ChainOptions::default()).unwrap();
        let r2 = chain_run(&file, &params, &oracle, &ChainOptions::default()).unwrap();
        assert_eq!(serde_json::to_string(&r1).unwrap(), serde_json::to_string(&r2).unwrap());
    }
}
