//! The positive-characteristic differential pipeline: s-term elimination,
//! delta-homogenisation, the lambda-to-delta Wronskian translation,
//! S-formula conversion, and the pth-power instance reduction.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::formula::canon::{
    term_to_tpoly, tpoly_adjugate, tpoly_det, tpoly_to_term, tpoly_wronskian_matrix, AtomKind, TAtom,
    TPoly,
};
use crate::formula::shapes::{DeltaTame, GuardKind, LambdaTame, LtShape};
use crate::formula::{Formula, FreshNames};
use crate::oracle::{ModelOracle, OracleKind, Point};
use crate::scf::BkTree;

fn innermost_s(polys: &[&TPoly]) -> Option<TPoly> {
    for p in polys {
        for a in p.atoms_deep() {
            if let AtomKind::S(q) = &a.kind {
                if q.count_s_atoms() == 0 {
                    return Some(q.as_ref().clone());
                }
            }
        }
    }
    None
}

fn replace_s(p: &TPoly, q: &TPoly, z: &str, charp: u64) -> TPoly {
    p.map_atoms(&mut |a| match &a.kind {
        AtomKind::S(inner) if inner.as_ref() == q => Some(TPoly::dvar(charp, z, a.dord)),
        _ => None,
    })
}

fn eliminate_poly_s(p: &TPoly, charp: u64, fresh: &mut FreshNames) -> BkTree {
    let Some(q) = innermost_s(&[p]) else {
        return BkTree::Leaf(Formula::Eq0(tpoly_to_term(p)));
    };
    let z = fresh.fresh("z");
    let r = replace_s(p, &q, &z, charp);
    debug_assert!(r.count_s_atoms() < p.count_s_atoms());

    let zero_map: BTreeMap<String, TPoly> = [(z.clone(), TPoly::zero(charp))].into_iter().collect();
    let r0 = r.subst_vars(&zero_map);
    let nonconstant_branch = eliminate_poly_s(&r0, charp, fresh);

    let bk = eliminate_poly_s(&r, charp, fresh);
    let dq_zero = Formula::Eq0(tpoly_to_term(&q.derive()));
    let q_term = tpoly_to_term(&q);
    let wrapped = bk.map_leaves(&mut |leaf: &Formula| {
        let zl = fresh.fresh("z");
        let renamed = crate::formula::shapes::map_polys(leaf, charp, &mut |poly| poly.rename_var(&z, &zl));
        Formula::ExistsPth { var: zl, pth: q_term.clone(), body: Box::new(renamed) }
    });

    BkTree::Or(vec![
        BkTree::And(vec![BkTree::Not(Box::new(BkTree::Leaf(dq_zero.clone()))), nonconstant_branch]),
        BkTree::And(vec![BkTree::Leaf(dq_zero), wrapped]),
    ])
}

/// Rewrites an s-bearing term equation into a Boolean combination of
/// delta-tame formulae, eliminating innermost s-applications first.
/// s-free inputs return unchanged.
pub fn eliminate_s_terms(f: &Formula, charp: u64) -> Result<Formula> {
    let Formula::Eq0(term) = f else {
        return Err(Error::NotTermEquation);
    };
    let p = term_to_tpoly(term, charp);
    if p.count_s_atoms() == 0 {
        return Ok(f.clone());
    }
    let mut fresh = FreshNames::for_formula(f);
    Ok(eliminate_poly_s(&p, charp, &mut fresh).to_formula())
}

// ---------------------------------------------------------------------------
// delta-homogenisation
// ---------------------------------------------------------------------------

/// A fraction with pivot-power denominator: num / pivot^pow.
#[derive(Clone)]
struct PivFrac {
    num: TPoly,
    pow: u32,
}

struct PivotSubst<'a> {
    charp: u64,
    pivot: &'a str,
    exponents: BTreeMap<String, u32>,
    memo: BTreeMap<(String, u32), PivFrac>,
}

impl<'a> PivotSubst<'a> {
    fn new(charp: u64, pivot: &'a str, exponents: &BTreeMap<String, u32>) -> Self {
        PivotSubst { charp, pivot, exponents: exponents.clone(), memo: BTreeMap::new() }
    }

    /// Image of delta^dord(v / pivot^k) by the quotient rule:
    /// d(u / x0^e) = (u' x0 - e u x0') / x0^{e+1}.
    fn var_image(&mut self, v: &str, dord: u32) -> PivFrac {
        if let Some(hit) = self.memo.get(&(v.to_string(), dord)) {
            return hit.clone();
        }
        let k = self.exponents.get(v).copied().unwrap_or(0);
        let out = if k == 0 {
            PivFrac { num: TPoly::dvar(self.charp, v, dord), pow: 0 }
        } else if dord == 0 {
            PivFrac { num: TPoly::var(self.charp, v), pow: k }
        } else {
            let prev = self.var_image(v, dord - 1);
            let x0 = TPoly::var(self.charp, self.pivot);
            let dx0 = TPoly::dvar(self.charp, self.pivot, 1);
            let num = prev
                .num
                .derive()
                .mul(&x0)
                .sub(&prev.num.mul(&dx0).mul_int(prev.pow as i64));
            PivFrac { num, pow: prev.pow + 1 }
        };
        self.memo.insert((v.to_string(), dord), out.clone());
        out
    }

    fn poly_image(&mut self, p: &TPoly) -> Result<PivFrac> {
        let mut terms: Vec<PivFrac> = Vec::new();
        for (m, c) in &p.terms {
            let mut num = TPoly::bigint(self.charp, c);
            let mut pow = 0u32;
            for (a, &e) in &m.0 {
                let AtomKind::Var(v) = &a.kind else {
                    return Err(Error::NotDeltaTame);
                };
                let img = self.var_image(v, a.dord);
                num = num.mul(&img.num.pow(e));
                pow += img.pow * e;
            }
            terms.push(PivFrac { num, pow });
        }
        let top = terms.iter().map(|t| t.pow).max().unwrap_or(0);
        let x0 = TPoly::var(self.charp, self.pivot);
        let mut acc = TPoly::zero(self.charp);
        for t in terms {
            acc = acc.add(&t.num.mul(&x0.pow(top - t.pow)));
        }
        Ok(PivFrac { num: acc, pow: top })
    }
}

/// Homogenisation of a delta-tame formula: variable v with exponent k
/// becomes v / pivot^k for pivot nonzero, and the pivot-zero locus
/// satisfies the result. Witness variables acquire derived exponents as
/// the chain is processed outermost-first.
pub fn homogenize_delta(
    dt: &DeltaTame,
    exponents: &BTreeMap<String, u32>,
    pivot: &str,
) -> Result<DeltaTame> {
    let p = dt.charp;
    assert!(p > 0, "delta-homogenisation lives in positive characteristic");
    if exponents.contains_key(pivot) || dt.chain.iter().any(|(z, _)| z == pivot) {
        return Err(Error::ShapeViolation("pivot must be a fresh variable".into()));
    }
    let mut subst = PivotSubst::new(p, pivot, exponents);
    let x0 = TPoly::var(p, pivot);
    let mut chain = Vec::with_capacity(dt.chain.len());
    for (z, q) in &dt.chain {
        let img = subst.poly_image(q)?;
        // choose N with p*N - 1 >= pow, pad the numerator accordingly
        let n_exp = (img.pow + p as u32) / p as u32;
        let pad = p as u32 * n_exp - 1 - img.pow;
        let q_new = x0.mul(&img.num).mul(&x0.pow(pad));
        chain.push((z.clone(), q_new));
        subst.exponents.insert(z.clone(), n_exp);
        subst.memo.clear();
    }
    let mut system = Vec::with_capacity(dt.system.len());
    for s in &dt.system {
        let img = subst.poly_image(s)?;
        system.push(x0.mul(&img.num));
    }
    Ok(DeltaTame { charp: p, chain, system })
}

// ---------------------------------------------------------------------------
// lambda-tame -> delta-tame translation
// ---------------------------------------------------------------------------

/// Translation of a lambda-tame formula into a delta-tame one: the
/// dependence guard becomes the Wronskian equation, lambda values become
/// Cramer expressions (W lambda)^p = W^{p-1} B D bound as pth-root
/// witnesses, and the nested translation is homogenized at the pivot W.
pub fn lambda_to_delta(lt: &LambdaTame, fresh: &mut FreshNames) -> Result<DeltaTame> {
    if lt.kind != GuardKind::Scf {
        return Err(Error::NotLambdaTame);
    }
    translate_shape(&lt.shape, lt.charp, fresh)
}

fn translate_shape(shape: &LtShape, charp: u64, fresh: &mut FreshNames) -> Result<DeltaTame> {
    match shape {
        LtShape::System(ps) => Ok(DeltaTame { charp, chain: vec![], system: ps.clone() }),
        LtShape::Conj(parts) => {
            let mut chain = Vec::new();
            let mut system = Vec::new();
            for part in parts {
                let t = translate_shape(part, charp, fresh)?;
                chain.extend(t.chain);
                system.extend(t.system);
            }
            Ok(DeltaTame { charp, chain, system })
        }
        LtShape::Guarded { nn, n, qs, zs, inner } => {
            if *nn != 1 {
                return Err(Error::ShapeViolation(
                    "the Wronskian translation works on scalar guards".into(),
                ));
            }
            let p = charp as u32;
            let q0 = qs[0][0].clone();
            let qrest: Vec<TPoly> = qs[1..].iter().map(|v| v[0].clone()).collect();
            let a_rows = tpoly_wronskian_matrix(&qrest, charp);
            let w = tpoly_det(&a_rows, charp);
            let adj = tpoly_adjugate(&a_rows, charp);
            let d_col: Vec<TPoly> = {
                let mut cur = q0.clone();
                let mut out = Vec::with_capacity(*n);
                for i in 0..*n {
                    if i > 0 {
                        cur = cur.derive();
                    }
                    out.push(cur.clone());
                }
                out
            };
            let wpow = w.pow(p - 1);
            let v: Vec<TPoly> = (0..*n)
                .map(|i| {
                    let mut acc = TPoly::zero(charp);
                    for (j, d) in d_col.iter().enumerate() {
                        acc = acc.add(&adj[i][j].mul(d));
                    }
                    wpow.mul(&acc)
                })
                .collect();

            let psi = translate_shape(inner, charp, fresh)?;
            let pivot = fresh.fresh("w");
            let exps: BTreeMap<String, u32> = zs.iter().map(|z| (z.clone(), 1)).collect();
            let hom = homogenize_delta(&psi, &exps, &pivot)?;
            let mut map: BTreeMap<String, TPoly> = BTreeMap::new();
            map.insert(pivot, w);
            let hom = hom.substitute(&map);

            let mut chain: Vec<(String, TPoly)> = zs.iter().cloned().zip(v).collect();
            chain.extend(hom.chain);
            Ok(DeltaTame { charp, chain, system: hom.system })
        }
    }
}

// ---------------------------------------------------------------------------
// S-formulae
// ---------------------------------------------------------------------------

/// Conversion to an S-formula: outermost witnesses become s-applications
/// guarded by their constancy equations.
pub fn to_s_formula(dt: &DeltaTame) -> Formula {
    let charp = dt.charp;
    let mut map: BTreeMap<String, TPoly> = BTreeMap::new();
    let mut eqs: Vec<Formula> = Vec::new();
    for (z, q) in &dt.chain {
        let q_s = q.subst_vars(&map);
        eqs.push(Formula::Eq0(tpoly_to_term(&q_s.derive())));
        map.insert(
            z.clone(),
            TPoly::atom(charp, TAtom { kind: AtomKind::S(Box::new(q_s)), dord: 0 }),
        );
    }
    for s in &dt.system {
        eqs.push(Formula::Eq0(tpoly_to_term(&s.subst_vars(&map))));
    }
    Formula::and(eqs)
}

/// Checks Definition shape: a conjunction of equations such that every
/// subterm s(r) is accompanied by the equation delta(r) = 0.
pub fn validate_s_formula(f: &Formula, charp: u64) -> Result<()> {
    let mut polys: Vec<TPoly> = Vec::new();
    collect_equations(f, charp, &mut polys)?;
    let mut pending: Vec<TPoly> = polys.clone();
    let mut seen: BTreeSet<TPoly> = BTreeSet::new();
    let eqset: BTreeSet<TPoly> = polys.iter().cloned().collect();
    while let Some(p) = pending.pop() {
        for a in p.atoms_deep() {
            if let AtomKind::S(r) = &a.kind {
                if seen.insert(r.as_ref().clone()) {
                    let guard = r.derive();
                    if !eqset.contains(&guard) {
                        return Err(Error::ShapeViolation(
                            "s-subterm lacks its constancy equation".into(),
                        ));
                    }
                    pending.push(r.as_ref().clone());
                }
            }
        }
    }
    Ok(())
}

fn collect_equations(f: &Formula, charp: u64, out: &mut Vec<TPoly>) -> Result<()> {
    match f {
        Formula::True => Ok(()),
        Formula::Eq0(t) => {
            out.push(term_to_tpoly(t, charp));
            Ok(())
        }
        Formula::And(fs) => fs.iter().try_for_each(|x| collect_equations(x, charp, out)),
        _ => Err(Error::ShapeViolation("an S-formula is a conjunction of equations".into())),
    }
}

/// Conversion back from an S-formula: innermost s-subterms become
/// pth-root witnesses, using the constancy guards required by the shape.
pub fn from_s_formula(f: &Formula, charp: u64, fresh: &mut FreshNames) -> Result<DeltaTame> {
    validate_s_formula(f, charp)?;
    let mut polys: Vec<TPoly> = Vec::new();
    collect_equations(f, charp, &mut polys)?;
    let mut chain: Vec<(String, TPoly)> = Vec::new();
    loop {
        let refs: Vec<&TPoly> = polys.iter().collect();
        let Some(q) = innermost_s(&refs) else {
            break;
        };
        let z = fresh.fresh("z");
        polys = polys.iter().map(|p| replace_s(p, &q, &z, charp)).collect();
        chain.push((z, q));
    }
    Ok(DeltaTame { charp, chain, system: polys })
}

// ---------------------------------------------------------------------------
// pth-power instance reduction
// ---------------------------------------------------------------------------

pub struct DcfReduction {
    pub reduced: DeltaTame,
    pub bprime: Point,
}

/// The instance reduction: when every differential x-monomial of the
/// leading pth-power witness occurs as a p-th power, the outer quantifier
/// disappears at a concrete parameter point b.
pub fn reduce_instance_dcf(
    dt: &DeltaTame,
    b: &Point,
    oracle: &ModelOracle,
    fresh: &mut FreshNames,
) -> Result<DcfReduction> {
    if !matches!(oracle.kind, OracleKind::Dcf { .. }) {
        return Err(Error::OracleMismatch("the reduction works over a dcf oracle".into()));
    }
    let p = dt.charp;
    let Some(((z1, q), rest)) = dt.chain.split_first() else {
        return Err(Error::ShapeViolation("the claim shape has at least one witness".into()));
    };
    let yvars: BTreeSet<String> = b.keys().cloned().collect();
    let xvars: BTreeSet<String> =
        q.variables().into_iter().filter(|v| !yvars.contains(v)).collect();
    let rooted = q
        .strip_pth_powers(&xvars)
        .ok_or_else(|| Error::ShapeViolation("x occurs outside p-th powers".into()))?;

    // split into c * U(x) * M(y) with U the rooted differential monomial
    struct SplitTerm {
        xpart: TPoly,
        ymono_idx: usize,
        coeff: num_bigint::BigInt,
    }
    let mut ymonos: Vec<TPoly> = vec![TPoly::one(p)]; // b_0 = 1 is always present
    let mut mono_index: BTreeMap<TPoly, usize> = [(TPoly::one(p), 0)].into_iter().collect();
    let mut terms: Vec<SplitTerm> = Vec::new();
    for (m, c) in &rooted.terms {
        let mut xm = TPoly::one(p);
        let mut ym = TPoly::one(p);
        for (a, &e) in &m.0 {
            let AtomKind::Var(v) = &a.kind else {
                return Err(Error::NotDeltaTame);
            };
            let factor = TPoly::atom(p, a.clone()).pow(e);
            if xvars.contains(v) {
                xm = xm.mul(&factor);
            } else {
                ym = ym.mul(&factor);
            }
        }
        let idx = *mono_index.entry(ym.clone()).or_insert_with(|| {
            ymonos.push(ym.clone());
            ymonos.len() - 1
        });
        terms.push(SplitTerm { xpart: xm, ymono_idx: idx, coeff: c.clone() });
    }

    let values: Vec<crate::algebra::FieldElement> = ymonos
        .iter()
        .map(|m| oracle.eval_tpoly(m, b))
        .collect::<Result<_>>()?;
    let (basis_count, coords) = crate::scf::pth_power_coordinates(oracle, &values)?;

    let mut bp_names: Vec<Vec<String>> = Vec::new();
    let mut bprime = Point::new();
    for row in &coords {
        let mut names = Vec::new();
        for zeta in row {
            let name = fresh.fresh("bp");
            bprime.insert(name.clone(), zeta.clone());
            names.push(name);
        }
        bp_names.push(names);
    }

    // q_i(x, b') for i = 0..basis_count-1
    let mut q_parts = vec![TPoly::zero(p); basis_count];
    for t in &terms {
        for (i, part) in q_parts.iter_mut().enumerate() {
            let coeff_var = TPoly::var(p, &bp_names[t.ymono_idx][i]);
            *part = part.add(&t.xpart.mul(&coeff_var).mul(&TPoly::bigint(p, &t.coeff)));
        }
    }

    // psi' = (/\_{i>=1} q_i = 0) /\ psi(x, b, q_0)
    let mut map: BTreeMap<String, TPoly> = BTreeMap::new();
    map.insert(z1.clone(), q_parts[0].clone());
    let inner = DeltaTame { charp: p, chain: rest.to_vec(), system: dt.system.clone() };
    let mut reduced = inner.substitute(&map);
    for part in q_parts.iter().skip(1) {
        reduced.system.push(part.clone());
    }
    debug_assert_eq!(reduced.quantifiers() + 1, dt.quantifiers());
    Ok(DcfReduction { reduced, bprime })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;
    use crate::formula::sexpr::parse_file;
    use crate::formula::FormulaFile;
    use crate::oracle::Sampler;

    fn dcf_file(src: &str) -> FormulaFile {
        parse_file(&format!(";; lang: dcf  p: 3\n{src}\n")).unwrap()
    }

    fn o3() -> ModelOracle {
        ModelOracle::dcf(3).unwrap()
    }

    #[test]
    fn s_free_input_unchanged() {
        let f = dcf_file("(eq0 (+ (d x) (* x x)))");
        assert_eq!(eliminate_s_terms(&f.formula, 3).unwrap(), f.formula);
    }

    #[test]
    fn s_elimination_spec_cases() {
        // t(x) = s(x) * x
        let f = dcf_file("(eq0 (* (s x) x))");
        let out = eliminate_s_terms(&f.formula, 3).unwrap();
        let oracle = o3();
        let at = |v: &str| -> Point {
            [("x".to_string(), parse_element(&oracle.desc, v).unwrap())].into_iter().collect()
        };
        // x = t: delta(x) = 1 != 0, s(t) = 0, so s(t)*t = 0 -> true
        assert!(oracle.eval(&f, &at("t")).unwrap());
        assert!(oracle.eval_formula(&out, &at("t")).unwrap());
        // x = t^3: z = t, z*x = t^4 != 0 -> false
        assert!(!oracle.eval(&f, &at("t^3")).unwrap());
        assert!(!oracle.eval_formula(&out, &at("t^3")).unwrap());
        // seeded agreement
        for trial in 0..100 {
            let mut s = Sampler::for_trial(&oracle, 23, 0, trial);
            let point = s.point(&["x".to_string()]);
            assert_eq!(
                oracle.eval(&f, &point).unwrap(),
                oracle.eval_formula(&out, &point).unwrap(),
                "disagreement at {point:?}"
            );
        }
    }

    #[test]
    fn nested_s_elimination_fuzz() {
        let oracle = o3();
        let corpus = ["(eq0 (+ (s (s x)) x))", "(eq0 (* (s (+ x (d x))) (s x)))", "(eq0 (+ (d (s x)) 1))"];
        for (i, src) in corpus.iter().enumerate() {
            let f = dcf_file(src);
            let out = eliminate_s_terms(&f.formula, 3).unwrap();
            for trial in 0..60 {
                let mut s = Sampler::for_trial(&oracle, 31, i as u64, trial);
                let point = s.point(&["x".to_string()]);
                assert_eq!(
                    oracle.eval(&f, &point).unwrap(),
                    oracle.eval_formula(&out, &point).unwrap(),
                    "formula {i} disagreement at {point:?}"
                );
            }
        }
    }

    #[test]
    fn homogenize_delta_closed_form() {
        // phi = eq0(delta(x1)), k1 = 1: phi' = x0 * (x1' x0 - x1 x0')
        let dt = DeltaTame { charp: 3, chain: vec![], system: vec![TPoly::dvar(3, "x1", 1)] };
        let exps: BTreeMap<String, u32> = [("x1".to_string(), 1)].into_iter().collect();
        let hom = homogenize_delta(&dt, &exps, "x0").unwrap();
        let x0 = TPoly::var(3, "x0");
        let expect = x0.mul(
            &TPoly::dvar(3, "x1", 1)
                .mul(&x0)
                .sub(&TPoly::var(3, "x1").mul(&TPoly::dvar(3, "x0", 1))),
        );
        assert_eq!(hom.system, vec![expect]);
    }

    #[test]
    fn homogenize_delta_biconditional() {
        let oracle = o3();
        // exists z (z^3 = x1 /\ z + x1 = 0) homogenized at exponent 1
        let f = dcf_file("(existsPth z x1 (eq0 (+ z x1)))");
        let dt = DeltaTame::from_formula(&f.formula, 3).unwrap();
        let exps: BTreeMap<String, u32> = [("x1".to_string(), 1)].into_iter().collect();
        let hom = homogenize_delta(&dt, &exps, "x0").unwrap();
        let homf = hom.to_formula();
        for trial in 0..120 {
            let mut s = Sampler::for_trial(&oracle, 37, 0, trial);
            let x0 = s.element();
            let x1 = s.element();
            let mut point = Point::new();
            point.insert("x0".to_string(), x0.clone());
            point.insert("x1".to_string(), x1.clone());
            let hval = oracle.eval_formula(&homf, &point).unwrap();
            if x0.is_zero() {
                assert!(hval);
            } else {
                let mut inner = Point::new();
                inner.insert("x1".to_string(), x1.div(&x0).unwrap());
                let pval = oracle.eval(&f, &inner).unwrap();
                assert_eq!(hval, pval, "trial {trial}");
            }
        }
    }

    #[test]
    fn lambda_to_delta_pdep_example() {
        // pdep_2(1, x) translates to a formula equivalent to delta(x) = 0
        let f = parse_file(";; lang: scf  p: 3\n(pdep 2 1 x)\n").unwrap();
        let lt = LambdaTame::from_formula(&f.formula, 3, GuardKind::Scf).unwrap();
        let mut fresh = FreshNames::for_formula(&f.formula);
        let dt = lambda_to_delta(&lt, &mut fresh).unwrap();
        let out = dt.to_formula();
        let oracle = o3();
        let scf_oracle = ModelOracle::scf(3, 1).unwrap();
        for (val, expect) in [("t^2+1", false), ("t^3", true), ("t", false), ("2", true)] {
            let point: Point =
                [("x".to_string(), parse_element(&oracle.desc, val).unwrap())].into_iter().collect();
            assert_eq!(oracle.eval_formula(&out, &point).unwrap(), expect, "at {val}");
            // the scf oracle agrees on the original
            assert_eq!(scf_oracle.eval(&f, &point).unwrap(), expect, "scf at {val}");
        }
    }

    #[test]
    fn lambda_to_delta_guarded_fuzz() {
        // phi = pdep(q1) \/ (ldef(q0,q1) /\ lam = 0) with q0 = y, q1 = x
        let src = "(or (pdep 1 x) (and (not (pdep 1 x)) (pdep 2 y x) (eq0 (lam 1 1 y x))))";
        let f = parse_file(&format!(";; lang: scf  p: 3\n{src}\n")).unwrap();
        let lt = LambdaTame::from_formula(&f.formula, 3, GuardKind::Scf).unwrap();
        let mut fresh = FreshNames::for_formula(&f.formula);
        let dt = lambda_to_delta(&lt, &mut fresh).unwrap();
        let out = dt.to_formula();
        let dcf_oracle = o3();
        let scf_oracle = ModelOracle::scf(3, 1).unwrap();
        for trial in 0..100 {
            let mut s = Sampler::for_trial(&dcf_oracle, 41, 0, trial);
            let point = s.point(&["x".to_string(), "y".to_string()]);
            let lhs = scf_oracle.eval(&f, &point).unwrap();
            let rhs = dcf_oracle.eval_formula(&out, &point).unwrap();
            assert_eq!(lhs, rhs, "disagreement at {point:?}");
        }
    }

    #[test]
    fn s_formula_roundtrip() {
        let f = dcf_file("(existsPth z x (eq0 (+ z x)))");
        let dt = DeltaTame::from_formula(&f.formula, 3).unwrap();
        let sform = to_s_formula(&dt);
        validate_s_formula(&sform, 3).unwrap();
        // the displayed equivalence: exists z (z^p = x /\ z = 0) becomes
        // delta(x) = 0 /\ s(x) = 0 shapes
        let mut fresh = FreshNames::for_formula(&sform);
        let back = from_s_formula(&sform, 3, &mut fresh).unwrap();
        let oracle = o3();
        let bf = back.to_formula();
        let ff = dt.to_formula();
        for trial in 0..100 {
            let mut s = Sampler::for_trial(&oracle, 43, 0, trial);
            let point = s.point(&["x".to_string()]);
            assert_eq!(
                oracle.eval_formula(&ff, &point).unwrap(),
                oracle.eval_formula(&bf, &point).unwrap()
            );
            assert_eq!(
                oracle.eval_formula(&ff, &point).unwrap(),
                oracle.eval_formula(&sform, &point).unwrap()
            );
        }
        // pure systems come back unchanged
        let sys = dcf_file("(eq0 (d x))");
        let dt0 = DeltaTame::from_formula(&sys.formula, 3).unwrap();
        assert_eq!(to_s_formula(&dt0), sys.formula);
    }

    #[test]
    fn reduce_instance_spec_example() {
        // q(x, y) = x^3 + y at b: y = t over F_3(t): psi' gains 1 = 0
        let f = dcf_file("(existsPth z (+ (^ x 3) y) (eq0 (+ z (- z))))");
        let dt = DeltaTame::from_formula(&f.formula, 3).unwrap();
        let oracle = o3();
        let b: Point =
            [("y".to_string(), parse_element(&oracle.desc, "t").unwrap())].into_iter().collect();
        let mut fresh = FreshNames::for_formula(&f.formula);
        let red = reduce_instance_dcf(&dt, &b, &oracle, &mut fresh).unwrap();
        assert_eq!(red.reduced.quantifiers(), 0);
        // some side conjunct evaluates to the constant 1 at b' (for any x),
        // so the reduced formula is never satisfied
        let mut at_zero = red.bprime.clone();
        at_zero.insert("x".to_string(), parse_element(&oracle.desc, "0").unwrap());
        let has_unit = red
            .reduced
            .system
            .iter()
            .any(|p| oracle.eval_tpoly(p, &at_zero).map(|v| v.is_one()).unwrap_or(false));
        assert!(has_unit);
        let out = red.reduced.to_formula();
        for trial in 0..60 {
            let mut s = Sampler::for_trial(&oracle, 47, 0, trial);
            let mut point = b.clone();
            point.insert("x".to_string(), s.element());
            for (k, v) in &red.bprime {
                point.insert(k.clone(), v.clone());
            }
            let lhs = oracle.eval(&f, &point).unwrap();
            let rhs = oracle.eval_formula(&out, &point).unwrap();
            assert!(!lhs, "z^3 = x^3 + t is unsolvable");
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn reduce_instance_trivial_pth_power() {
        // q(x, y) = x^3: q_0 = x, no side conjuncts beyond the original
        let f = dcf_file("(existsPth z (^ x 3) (eq0 (+ z (* 2 x))))");
        let dt = DeltaTame::from_formula(&f.formula, 3).unwrap();
        let oracle = o3();
        let b = Point::new();
        let mut fresh = FreshNames::for_formula(&f.formula);
        let red = reduce_instance_dcf(&dt, &b, &oracle, &mut fresh).unwrap();
        assert_eq!(red.reduced.quantifiers(), 0);
        let out = red.reduced.to_formula();
        for trial in 0..60 {
            let mut s = Sampler::for_trial(&oracle, 53, 0, trial);
            let mut point = Point::new();
            point.insert("x".to_string(), s.element());
            for (k, v) in &red.bprime {
                point.insert(k.clone(), v.clone());
            }
            assert_eq!(
                oracle.eval(&f, &point).unwrap(),
                oracle.eval_formula(&out, &point).unwrap()
            );
        }
    }
}
