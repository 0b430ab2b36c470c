//! The SCF rewriting pipeline: lambda-term elimination into Boolean
//! combinations of lambda-tame formulae, homogenisation, and the
//! instance-reduction step that lowers the lambda-tame degree by one at
//! a concrete parameter point.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::formula::canon::{
    term_to_tpoly, tpoly_adjugate, tpoly_det, tpoly_to_term, AtomKind, TAtom, TPoly,
};
use crate::formula::shapes::{GuardKind, LambdaTame, LtShape};
use crate::formula::{Formula, FreshNames};
use crate::oracle::{ModelOracle, OracleKind, Point};

/// Boolean skeleton whose leaves are already-shaped formulae; keeps the
/// leaf boundary explicit while passes rewrite leaves.
#[derive(Debug, Clone)]
pub(crate) enum BkTree {
    Leaf(Formula),
    And(Vec<BkTree>),
    Or(Vec<BkTree>),
    Not(Box<BkTree>),
}

impl BkTree {
    pub(crate) fn to_formula(&self) -> Formula {
        match self {
            BkTree::Leaf(f) => f.clone(),
            BkTree::And(xs) => Formula::and(xs.iter().map(BkTree::to_formula).collect()),
            BkTree::Or(xs) => Formula::or(xs.iter().map(BkTree::to_formula).collect()),
            BkTree::Not(x) => Formula::not(x.to_formula()),
        }
    }

    pub(crate) fn map_leaves(&self, f: &mut impl FnMut(&Formula) -> Formula) -> BkTree {
        match self {
            BkTree::Leaf(x) => BkTree::Leaf(f(x)),
            BkTree::And(xs) => BkTree::And(xs.iter().map(|x| x.map_leaves(f)).collect()),
            BkTree::Or(xs) => BkTree::Or(xs.iter().map(|x| x.map_leaves(f)).collect()),
            BkTree::Not(x) => BkTree::Not(Box::new(x.map_leaves(f))),
        }
    }
}

/// The guard family of one lambda application: vector length, n, and the
/// n+1 argument vectors.
struct LamFamily {
    nn: usize,
    n: usize,
    qs: Vec<Vec<TPoly>>,
}

fn innermost_lambda(p: &TPoly) -> Option<TAtom> {
    // first lambda atom in canonical order whose arguments are lambda-free
    p.atoms_deep()
        .into_iter()
        .find(|a| match &a.kind {
            AtomKind::Lam { args, .. } | AtomKind::LamN { args, .. } => {
                args.iter().all(|q| q.count_lam_atoms() == 0)
            }
            _ => false,
        })
}

fn family_of(atom: &TAtom) -> LamFamily {
    match &atom.kind {
        AtomKind::Lam { n, args, .. } => {
            LamFamily { nn: 1, n: *n, qs: args.iter().map(|q| vec![q.clone()]).collect() }
        }
        AtomKind::LamN { nn, n, args, .. } => LamFamily {
            nn: *nn,
            n: *n,
            qs: args.chunks(*nn).map(|c| c.to_vec()).collect(),
        },
        _ => unreachable!("family_of on a lambda atom"),
    }
}

fn guard_atom(nn: usize, n: usize, vectors: &[Vec<TPoly>]) -> Formula {
    let args = vectors.iter().flat_map(|v| v.iter().map(tpoly_to_term)).collect();
    if nn == 1 {
        Formula::Pdep { n, args }
    } else {
        Formula::PdepN { nn, n, args }
    }
}

fn lambda_atom_poly(charp: u64, nn: usize, n: usize, i: usize, qs: &[Vec<TPoly>]) -> TPoly {
    let args: Vec<TPoly> = qs.iter().flat_map(|v| v.iter().cloned()).collect();
    let kind = if nn == 1 { AtomKind::Lam { n, i, args } } else { AtomKind::LamN { nn, n, i, args } };
    TPoly::atom(charp, TAtom { kind, dord: 0 })
}

fn replace_family(p: &TPoly, fam: &LamFamily, zs: &[String], charp: u64) -> TPoly {
    let flat: Vec<TPoly> = fam.qs.iter().flat_map(|v| v.iter().cloned()).collect();
    p.map_atoms(&mut |a| {
        if a.dord != 0 {
            return None;
        }
        let hit = match &a.kind {
            AtomKind::Lam { n, i, args } if fam.nn == 1 && *n == fam.n && *args == flat => Some(*i),
            AtomKind::LamN { nn, n, i, args } if *nn == fam.nn && *n == fam.n && *args == flat => Some(*i),
            _ => None,
        };
        hit.map(|i| TPoly::var(charp, &zs[i - 1]))
    })
}

fn eliminate_poly(p: &TPoly, charp: u64, fresh: &mut FreshNames) -> BkTree {
    let Some(atom) = innermost_lambda(p) else {
        return BkTree::Leaf(Formula::Eq0(tpoly_to_term(p)));
    };
    let fam = family_of(&atom);
    let zs: Vec<String> = (0..fam.n).map(|_| fresh.fresh("z")).collect();
    let r = replace_family(p, &fam, &zs, charp);
    debug_assert!(r.count_lam_atoms() < p.count_lam_atoms());

    // branch where the lambda values are undefined (read as 0)
    let zero_map: BTreeMap<String, TPoly> =
        zs.iter().map(|z| (z.clone(), TPoly::zero(charp))).collect();
    let r0 = r.subst_vars(&zero_map);
    let undefined_branch = eliminate_poly(&r0, charp, fresh);

    // branch where they are defined: wrap each lambda-tame leaf psi into
    // dep(q_1..q_n) \/ (ldef(q) /\ psi(x, lambda(q)))
    let bk = eliminate_poly(&r, charp, fresh);
    let dep = guard_atom(fam.nn, fam.n, &fam.qs[1..]);
    let ext = guard_atom(fam.nn, fam.n + 1, &fam.qs);
    let lam_map: BTreeMap<String, TPoly> = zs
        .iter()
        .enumerate()
        .map(|(idx, z)| (z.clone(), lambda_atom_poly(charp, fam.nn, fam.n, idx + 1, &fam.qs)))
        .collect();
    let wrapped = bk.map_leaves(&mut |leaf: &Formula| {
        let substituted = crate::formula::shapes::map_polys(leaf, charp, &mut |q| q.subst_vars(&lam_map));
        let mut parts = vec![Formula::not(dep.clone()), ext.clone()];
        match substituted {
            Formula::True => {}
            Formula::And(ps) => parts.extend(ps),
            other => parts.push(other),
        }
        Formula::Or(vec![dep.clone(), Formula::And(parts)])
    });

    BkTree::Or(vec![
        BkTree::And(vec![
            BkTree::Or(vec![BkTree::Leaf(dep.clone()), BkTree::Not(Box::new(BkTree::Leaf(ext.clone())))]),
            undefined_branch,
        ]),
        BkTree::And(vec![
            BkTree::Not(Box::new(BkTree::Leaf(dep))),
            BkTree::Leaf(ext),
            wrapped,
        ]),
    ])
}

/// Rewrites a term equation t(x) = 0 of the lambda language into a
/// Boolean combination of lambda-tame formulae, eliminating innermost
/// lambda applications first. Lambda-free inputs return unchanged.
pub fn eliminate_lambda_terms(f: &Formula, charp: u64) -> Result<Formula> {
    let Formula::Eq0(term) = f else {
        return Err(Error::NotTermEquation);
    };
    let p = term_to_tpoly(term, charp);
    if p.count_lam_atoms() == 0 {
        return Ok(f.clone());
    }
    let mut fresh = FreshNames::for_formula(f);
    Ok(eliminate_poly(&p, charp, &mut fresh).to_formula())
}

/// Homogenisation of a lambda-tame formula with respect to a variable
/// block: clears the block denominators with the minimal exponent per
/// polynomial family and multiplies through by the pivot once, so the
/// pivot-zero locus satisfies the result.
pub fn homogenize_lambda(lt: &LambdaTame, block: &[String], pivot: &str) -> Result<LambdaTame> {
    let blockset: BTreeSet<String> = block.iter().cloned().collect();
    if blockset.contains(pivot) {
        return Err(Error::ShapeViolation("pivot must be a fresh variable".into()));
    }
    let shape = homogenize_shape(&lt.shape, &blockset, pivot, lt.charp)?;
    Ok(LambdaTame { kind: lt.kind, charp: lt.charp, shape })
}

fn homogenize_shape(shape: &LtShape, block: &BTreeSet<String>, pivot: &str, charp: u64) -> Result<LtShape> {
    match shape {
        LtShape::System(ps) => {
            let out = ps
                .iter()
                .map(|q| {
                    let n = q.degree_in_block(block);
                    Ok(TPoly::var(charp, pivot).mul(&q.homogenize_block(block, pivot, n)?))
                })
                .collect::<Result<_>>()?;
            Ok(LtShape::System(out))
        }
        LtShape::Conj(parts) => Ok(LtShape::Conj(
            parts.iter().map(|s| homogenize_shape(s, block, pivot, charp)).collect::<Result<_>>()?,
        )),
        LtShape::Guarded { nn, n, qs, zs, inner } => {
            let bign = qs
                .iter()
                .flat_map(|v| v.iter().map(|q| q.degree_in_block(block)))
                .max()
                .unwrap_or(0);
            let qs2: Vec<Vec<TPoly>> = qs
                .iter()
                .map(|v| {
                    v.iter()
                        .map(|q| Ok(TPoly::var(charp, pivot).mul(&q.homogenize_block(block, pivot, bign)?)))
                        .collect::<Result<_>>()
                })
                .collect::<Result<_>>()?;
            let inner2 = homogenize_shape(inner, block, pivot, charp)?;
            Ok(LtShape::Guarded { nn: *nn, n: *n, qs: qs2, zs: zs.clone(), inner: Box::new(inner2) })
        }
    }
}

/// Result of an instance reduction: the lower-degree formula and the
/// computed parameter tuple b'.
pub struct Reduction {
    pub formula: Formula,
    pub bprime: Point,
}

/// The instance-reduction step: at a concrete parameter point b, a
/// lambda-tame formula of degree D whose polynomials see x only through
/// p-th powers becomes one of degree D-1 over x, b and a new tuple b'.
pub fn reduce_instance_scf(
    lt: &LambdaTame,
    b: &Point,
    oracle: &ModelOracle,
    fresh: &mut FreshNames,
) -> Result<Reduction> {
    if !matches!(oracle.kind, OracleKind::Scf { .. }) {
        return Err(Error::OracleMismatch("the reduction works over an scf oracle".into()));
    }
    if lt.kind != GuardKind::Scf {
        return Err(Error::ShapeViolation("expected an scf lambda-tame formula".into()));
    }
    let LtShape::Guarded { nn, n, qs, zs, inner } = &lt.shape else {
        return Err(Error::ShapeViolation("the claim shape is a single guarded nest".into()));
    };
    let p = lt.charp;
    let yvars: BTreeSet<String> = b.keys().cloned().collect();
    let xvars: BTreeSet<String> = qs
        .iter()
        .flat_map(|v| v.iter().flat_map(|q| q.variables()))
        .filter(|v| !yvars.contains(v))
        .collect();

    // split every component into terms c * x^{p alpha} * M(y); collect the
    // y-monomials and root the x-part
    struct SplitTerm {
        xpart: TPoly,
        ymono_idx: usize,
        coeff: num_bigint::BigInt,
    }
    let mut ymonos: Vec<TPoly> = Vec::new();
    let mut mono_index: BTreeMap<TPoly, usize> = BTreeMap::new();
    let mut split: Vec<Vec<Vec<SplitTerm>>> = Vec::new(); // [k][component][term]
    for vec_k in qs {
        let mut comp_terms = Vec::new();
        for q in vec_k {
            let rooted = q
                .strip_pth_powers(&xvars)
                .ok_or_else(|| Error::ShapeViolation("x occurs outside p-th powers".into()))?;
            let mut terms = Vec::new();
            for (m, c) in &rooted.terms {
                let mut xm = TPoly::one(p);
                let mut ym = TPoly::one(p);
                for (a, &e) in &m.0 {
                    let AtomKind::Var(v) = &a.kind else {
                        return Err(Error::ShapeViolation("guard polynomials must be plain".into()));
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
            comp_terms.push(terms);
        }
        split.push(comp_terms);
    }

    // evaluate the monomials at b and pick a greedy K^p-basis
    let values: Vec<crate::algebra::FieldElement> = ymonos
        .iter()
        .map(|m| oracle.eval_tpoly(m, b))
        .collect::<Result<_>>()?;
    let (basis_count, coords) = pth_power_coordinates(oracle, &values)?;

    // b' variables: one per (monomial, basis slot)
    let mut bp_names: Vec<Vec<String>> = Vec::new();
    let mut bprime = Point::new();
    for (mi, row) in coords.iter().enumerate() {
        let mut names = Vec::new();
        for (j, z) in row.iter().enumerate() {
            let name = fresh.fresh("bp");
            let _ = (mi, j);
            bprime.insert(name.clone(), z.clone());
            names.push(name);
        }
        bp_names.push(names);
    }

    // stacked vectors: row index (j, component), columns k = 1..n
    let rows = basis_count * nn;
    let stacked = |k: usize| -> Vec<TPoly> {
        let mut out = vec![TPoly::zero(p); rows];
        for (c, terms) in split[k].iter().enumerate() {
            for t in terms {
                for j in 0..basis_count {
                    let slot = j * nn + c;
                    let coeff_var = TPoly::var(p, &bp_names[t.ymono_idx][j]);
                    let add = t.xpart.mul(&coeff_var).mul(&TPoly::bigint(p, &t.coeff));
                    out[slot] = out[slot].add(&add);
                }
            }
        }
        out
    };
    let q0_vec = stacked(0);
    let cols: Vec<Vec<TPoly>> = (1..=*n).map(stacked).collect();

    // conjunction over all n-row subsets J
    let mut conjuncts: Vec<LtShape> = Vec::new();
    for j_rows in crate::exterior::subsets(rows, *n) {
        let sub: Vec<Vec<TPoly>> = j_rows
            .iter()
            .map(|&r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        let det = tpoly_det(&sub, p);
        let adj = tpoly_adjugate(&sub, p);
        let q0_sub: Vec<TPoly> = j_rows.iter().map(|&r| q0_vec[r].clone()).collect();
        let r_vec: Vec<TPoly> = (0..*n)
            .map(|i| {
                let mut acc = TPoly::zero(p);
                for (jj, q0e) in q0_sub.iter().enumerate() {
                    acc = acc.add(&adj[i][jj].mul(q0e));
                }
                acc
            })
            .collect();
        // psi_J = (q_0 = Q z /\ psi), lambda-tame of degree D-1
        let mut eqs: Vec<TPoly> = Vec::new();
        for r in 0..rows {
            let mut rhs = TPoly::zero(p);
            for (k, col) in cols.iter().enumerate() {
                rhs = rhs.add(&col[r].mul(&TPoly::var(p, &zs[k])));
            }
            eqs.push(q0_vec[r].sub(&rhs));
        }
        let psi_j = LtShape::Conj(vec![LtShape::System(eqs), inner.as_ref().clone()]);
        // homogenize in the z-block and substitute z0 -> det, z_i -> r_i
        let pivot = fresh.fresh("w");
        let hom = homogenize_shape(&psi_j, &zs.iter().cloned().collect(), &pivot, p)?;
        let mut map: BTreeMap<String, TPoly> = BTreeMap::new();
        map.insert(pivot.clone(), det.clone());
        for (i, z) in zs.iter().enumerate() {
            map.insert(z.clone(), r_vec[i].clone());
        }
        conjuncts.push(hom.subst(&map));
    }
    let out_shape = if conjuncts.len() == 1 {
        conjuncts.pop().unwrap()
    } else {
        LtShape::Conj(conjuncts)
    };
    let out = LambdaTame { kind: GuardKind::Scf, charp: p, shape: out_shape };
    debug_assert_eq!(out.degree() + 1, lt.degree());
    Ok(Reduction { formula: out.to_formula(), bprime })
}

/// Greedy K^p-basis of the given values (in order) and the coordinates of
/// every value over that basis: value_m = sum_j coords[m][j]^p * basis_j.
pub(crate) fn pth_power_coordinates(
    oracle: &ModelOracle,
    values: &[crate::algebra::FieldElement],
) -> Result<(usize, Vec<Vec<crate::algebra::FieldElement>>)> {
    use crate::algebra::{FieldElement, Matrix};
    let desc = &oracle.desc;
    let basis_monos = desc.standard_p_basis();
    let coord = |a: &FieldElement| a.p_basis_coordinates(&basis_monos);
    let mut kept: Vec<Vec<FieldElement>> = Vec::new(); // coordinate vectors
    let mut kept_idx: Vec<usize> = Vec::new();
    for (i, v) in values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let c = coord(v)?;
        let mut rows = kept.clone();
        rows.push(c.clone());
        if Matrix::from_rows(desc, &rows).rank() > kept.len() {
            kept.push(c);
            kept_idx.push(i);
        }
    }
    let mut out = Vec::with_capacity(values.len());
    for v in values {
        let c = coord(v)?;
        // solve c = sum_j zeta_j * kept_j exactly
        let n = kept.len();
        let width = c.len();
        let mut aug = Vec::with_capacity(width);
        for w in 0..width {
            let mut row: Vec<FieldElement> = kept.iter().map(|k| k[w].clone()).collect();
            row.push(c[w].clone());
            aug.push(row);
        }
        if n == 0 {
            if !v.is_zero() {
                return Err(Error::ShapeViolation("empty basis cannot express a nonzero value".into()));
            }
            out.push(vec![]);
            continue;
        }
        let m = Matrix::from_rows(desc, &aug);
        let (r, pivots) = m.rref();
        if pivots.contains(&n) {
            return Err(Error::ShapeViolation("greedy basis does not span the monomial values".into()));
        }
        let mut sol = vec![FieldElement::zero(desc); n];
        for (row, &col) in pivots.iter().enumerate() {
            sol[col] = r.at(row, n).clone();
        }
        out.push(sol);
    }
    Ok((kept.len(), out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::sexpr::parse_file;
    use crate::formula::shapes::classify;
    use crate::formula::shapes::ClassifiedShape;
    use crate::formula::FormulaFile;
    use crate::formula::LanguageTag;
    use crate::fuzz::{fuzz_equivalence, PassCheck};
    use crate::oracle::Sampler;

    fn scf_file(src: &str) -> FormulaFile {
        parse_file(&format!(";; lang: scf  p: 2\n{src}\n")).unwrap()
    }

    #[test]
    fn polynomial_input_unchanged() {
        let f = scf_file("(eq0 (+ (* x y) -1))");
        let out = eliminate_lambda_terms(&f.formula, 2).unwrap();
        assert_eq!(out, f.formula);
    }

    #[test]
    fn single_lambda_elimination_shape() {
        let f = scf_file("(eq0 (lam 1 1 x0 x1))");
        let out = eliminate_lambda_terms(&f.formula, 2).unwrap();
        // output is a Boolean combination whose leaves are lambda-tame
        let file = FormulaFile::new(LanguageTag::Scf, 2, out.clone()).unwrap();
        match classify(&file) {
            ClassifiedShape::BooleanCombination(_) | ClassifiedShape::LambdaTame { .. } => {}
            other => panic!("unexpected shape {other:?}"),
        }
        // oracle equivalence on seeded points
        let oracle = ModelOracle::scf(2, 1).unwrap();
        for trial in 0..100 {
            let mut s = Sampler::for_trial(&oracle, 5, 0, trial);
            let point = s.point(&["x0".to_string(), "x1".to_string()]);
            let lhs = oracle.eval(&f, &point).unwrap();
            let rhs = oracle.eval_formula(&out, &point).unwrap();
            assert_eq!(lhs, rhs, "disagreement at {point:?}");
        }
    }

    #[test]
    fn nested_lambda_fuzz() {
        let oracle = ModelOracle::scf(2, 1).unwrap();
        let corpus = [
            "(eq0 (+ (* (lam 1 1 x y) x) 1))",
            "(eq0 (+ (lam 2 1 x y u) (lam 2 2 x y u)))",
            "(eq0 (lam 1 1 (lam 1 1 x y) y))",
            "(eq0 (* (lam 1 1 (+ (^ x 2) y) y) x))",
        ];
        for (i, src) in corpus.iter().enumerate() {
            let f = scf_file(src);
            let out = eliminate_lambda_terms(&f.formula, 2).unwrap();
            for trial in 0..60 {
                let mut s = Sampler::for_trial(&oracle, 11, i as u64, trial);
                let mut vars = f.formula.free_variables();
                vars.sort();
                let point = s.point(&vars);
                let lhs = oracle.eval(&f, &point).unwrap();
                let rhs = oracle.eval_formula(&out, &point).unwrap();
                assert_eq!(lhs, rhs, "formula {i} disagreement at {point:?}");
            }
        }
    }

    #[test]
    fn homogenisation_degree_and_biconditional() {
        // phi = eq0(x*y1 - 1), homogenize over (y0; y1)
        let f = scf_file("(eq0 (+ (* x y1) -1))");
        let lt = LambdaTame::from_formula(&f.formula, 2, GuardKind::Scf).unwrap();
        let hom = homogenize_lambda(&lt, &["y1".to_string()], "y0").unwrap();
        assert_eq!(hom.degree(), lt.degree());
        let out = hom.to_formula();
        let oracle = ModelOracle::scf(2, 1).unwrap();
        for trial in 0..120 {
            let mut s = Sampler::for_trial(&oracle, 3, 0, trial);
            let x = s.element();
            let y0 = s.element();
            let y1 = s.element();
            let mut point = Point::new();
            point.insert("x".to_string(), x.clone());
            point.insert("y0".to_string(), y0.clone());
            point.insert("y1".to_string(), y1.clone());
            let homval = oracle.eval_formula(&out, &point).unwrap();
            if y0.is_zero() {
                assert!(homval, "pivot-zero locus must satisfy the homogenisation");
            } else {
                let mut inner = Point::new();
                inner.insert("x".to_string(), x);
                inner.insert("y1".to_string(), y1.div(&y0).unwrap());
                let phival = oracle.eval(&f, &inner).unwrap();
                assert_eq!(homval, phival);
            }
        }
    }

    #[test]
    fn reduce_instance_degree_drop_and_equivalence() {
        // pdepN 1 1 guard over q1(x^p, y) = y * x^2 (p = 2), q0 = x^2 + y
        let src = "(or (pdepN 1 1 (* y (^ x 2))) (and (not (pdepN 1 1 (* y (^ x 2)))) (pdepN 1 2 (+ (^ x 2) y) (* y (^ x 2))) (eq0 (* (lamN 1 1 1 (+ (^ x 2) y) (* y (^ x 2))) x))))";
        let f = scf_file(src);
        let lt = LambdaTame::from_formula(&f.formula, 2, GuardKind::Scf).unwrap();
        assert_eq!(lt.degree(), 1);
        let oracle = ModelOracle::scf(2, 1).unwrap();
        let mut b = Point::new();
        b.insert("y".to_string(), crate::algebra::parse_element(&oracle.desc, "t").unwrap());
        let mut fresh = FreshNames::for_formula(&f.formula);
        let red = reduce_instance_scf(&lt, &b, &oracle, &mut fresh).unwrap();
        let out_file = FormulaFile::new(LanguageTag::Scf, 2, red.formula.clone()).unwrap();
        match classify(&out_file) {
            ClassifiedShape::LambdaTame { degree } => assert_eq!(degree, 0),
            other => panic!("unexpected shape {other:?}"),
        }
        for trial in 0..100 {
            let mut s = Sampler::for_trial(&oracle, 29, 0, trial);
            let mut point = b.clone();
            point.insert("x".to_string(), s.element());
            for (k, v) in &red.bprime {
                point.insert(k.clone(), v.clone());
            }
            let lhs = oracle.eval(&f, &point).unwrap();
            let rhs = oracle.eval_formula(&red.formula, &point).unwrap();
            assert_eq!(lhs, rhs, "disagreement at trial {trial}");
        }
    }

    #[test]
    fn elimination_via_fuzz_harness() {
        let oracle = ModelOracle::scf(3, 1).unwrap();
        let corpus = vec![parse_file(";; lang: scf  p: 3\n(eq0 (+ (lam 1 1 x y) y))\n").unwrap()];
        let report = fuzz_equivalence(
            "lambda-bk",
            &|f, _, _| {
                Ok(PassCheck::Equivalence {
                    output: FormulaFile::new(f.lang, f.charp, eliminate_lambda_terms(&f.formula, f.charp)?)?,
                    fixed: Point::new(),
                    output_oracle: None,
                })
            },
            &corpus,
            &oracle,
            80,
            42,
            0,
        )
        .unwrap();
        assert_eq!(report.disagreements, 0);
    }
}
