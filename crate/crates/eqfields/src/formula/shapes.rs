//! Structured views of the shaped formula classes (lambda-tame, delta-tame,
//! tame/linear/simple) with recognizers, canonical emission, and the shape
//! classifier.

use std::collections::{BTreeMap, BTreeSet};

use super::canon::{term_to_tpoly, tpoly_to_term, AtomKind, TAtom, TPoly};
use super::{Formula, FormulaFile, LanguageTag, Term};
use crate::error::{Error, Result};

/// Which function/relation family a guarded nest uses: pdep/lam over SCF,
/// dep/lamP over the pair language.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuardKind {
    Scf,
    Pair,
}

/// The shape of a lambda-tame (or lambda_P-) formula: polynomial systems,
/// conjunctions, and guarded nests
/// `dep(q_1..q_n) \/ (ldef(q_0..q_n) /\ psi(x, lambda(q_0..q_n)))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LtShape {
    System(Vec<TPoly>),
    Conj(Vec<LtShape>),
    Guarded {
        /// vector length of the generalized atoms; 1 for the plain ones
        nn: usize,
        n: usize,
        /// n+1 argument vectors q_0..q_n, each of length nn
        qs: Vec<Vec<TPoly>>,
        /// internal names for the lambda values fed to the inner shape
        zs: Vec<String>,
        inner: Box<LtShape>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaTame {
    pub kind: GuardKind,
    pub charp: u64,
    pub shape: LtShape,
}

impl LtShape {
    pub fn degree(&self) -> usize {
        match self {
            LtShape::System(_) => 0,
            LtShape::Conj(parts) => parts.iter().map(LtShape::degree).max().unwrap_or(0),
            LtShape::Guarded { inner, .. } => inner.degree() + 1,
        }
    }

    pub(crate) fn subst(&self, map: &BTreeMap<String, TPoly>) -> LtShape {
        match self {
            LtShape::System(ps) => LtShape::System(ps.iter().map(|p| p.subst_vars(map)).collect()),
            LtShape::Conj(parts) => LtShape::Conj(parts.iter().map(|s| s.subst(map)).collect()),
            LtShape::Guarded { nn, n, qs, zs, inner } => {
                debug_assert!(zs.iter().all(|z| !map.contains_key(z)));
                LtShape::Guarded {
                    nn: *nn,
                    n: *n,
                    qs: qs.iter().map(|v| v.iter().map(|p| p.subst_vars(map)).collect()).collect(),
                    zs: zs.clone(),
                    inner: Box::new(inner.subst(map)),
                }
            }
        }
    }
}

fn dep_atom(kind: GuardKind, nn: usize, n: usize, vectors: &[Vec<TPoly>]) -> Formula {
    debug_assert_eq!(vectors.len(), n);
    let args: Vec<Term> = vectors.iter().flat_map(|v| v.iter().map(tpoly_to_term)).collect();
    match kind {
        GuardKind::Scf => {
            if nn == 1 {
                Formula::Pdep { n, args }
            } else {
                Formula::PdepN { nn, n, args }
            }
        }
        GuardKind::Pair => {
            debug_assert_eq!(nn, 1);
            Formula::Dep { n, args }
        }
    }
}

fn lambda_atom(kind: GuardKind, charp: u64, nn: usize, n: usize, i: usize, qs: &[Vec<TPoly>]) -> TPoly {
    let args: Vec<TPoly> = qs.iter().flat_map(|v| v.iter().cloned()).collect();
    let k = match kind {
        GuardKind::Scf => {
            if nn == 1 {
                AtomKind::Lam { n, i, args }
            } else {
                AtomKind::LamN { nn, n, i, args }
            }
        }
        GuardKind::Pair => {
            debug_assert_eq!(nn, 1);
            AtomKind::LamP { n, i, args }
        }
    };
    TPoly::atom(charp, TAtom { kind: k, dord: 0 })
}

impl LambdaTame {
    pub fn degree(&self) -> usize {
        self.shape.degree()
    }

    /// Polynomial substitution on the free variables (the lambda values of
    /// the nests are internal and untouched); same-degree by construction.
    pub fn substitute(&self, map: &BTreeMap<String, TPoly>) -> LambdaTame {
        LambdaTame { kind: self.kind, charp: self.charp, shape: self.shape.subst(map) }
    }

    pub fn to_formula(&self) -> Formula {
        emit_shape(&self.shape, self.kind, self.charp, &BTreeMap::new())
    }

    pub fn from_formula(f: &Formula, charp: u64, kind: GuardKind) -> Result<LambdaTame> {
        let mut counter = 0usize;
        let shape = recognize_shape(f, charp, kind, &mut counter)?;
        Ok(LambdaTame { kind, charp, shape })
    }
}

fn emit_shape(shape: &LtShape, kind: GuardKind, charp: u64, map: &BTreeMap<String, TPoly>) -> Formula {
    match shape {
        LtShape::System(ps) => {
            Formula::and(ps.iter().map(|p| Formula::Eq0(tpoly_to_term(&p.subst_vars(map)))).collect())
        }
        LtShape::Conj(parts) => Formula::and(parts.iter().map(|s| emit_shape(s, kind, charp, map)).collect()),
        LtShape::Guarded { nn, n, qs, zs, inner } => {
            let qs_s: Vec<Vec<TPoly>> = qs.iter().map(|v| v.iter().map(|p| p.subst_vars(map)).collect()).collect();
            let dep = dep_atom(kind, *nn, *n, &qs_s[1..]);
            let ext = dep_atom(kind, *nn, *n + 1, &qs_s);
            let mut inner_map = map.clone();
            for (i, z) in zs.iter().enumerate() {
                inner_map.insert(z.clone(), lambda_atom(kind, charp, *nn, *n, i + 1, &qs_s));
            }
            let psi = emit_shape(inner, kind, charp, &inner_map);
            let mut parts = vec![Formula::not(dep.clone()), ext];
            match psi {
                Formula::True => {}
                Formula::And(ps) => parts.extend(ps),
                other => parts.push(other),
            }
            Formula::Or(vec![dep, Formula::And(parts)])
        }
    }
}

fn atom_vectors(f: &Formula, charp: u64, kind: GuardKind) -> Option<(usize, usize, Vec<Vec<TPoly>>)> {
    match (kind, f) {
        (GuardKind::Scf, Formula::Pdep { n, args }) => {
            Some((1, *n, args.iter().map(|t| vec![term_to_tpoly(t, charp)]).collect()))
        }
        (GuardKind::Scf, Formula::PdepN { nn, n, args }) => {
            let vectors: Vec<Vec<TPoly>> = args
                .chunks(*nn)
                .map(|chunk| chunk.iter().map(|t| term_to_tpoly(t, charp)).collect())
                .collect();
            Some((*nn, *n, vectors))
        }
        (GuardKind::Pair, Formula::Dep { n, args }) => {
            Some((1, *n, args.iter().map(|t| vec![term_to_tpoly(t, charp)]).collect()))
        }
        _ => None,
    }
}

fn polys_plain(vectors: &[Vec<TPoly>]) -> bool {
    vectors.iter().all(|v| v.iter().all(TPoly::is_plain_poly))
}

/// Replaces lambda applications over exactly the argument family `qs`
/// by the fresh variables `zs`, inside every atom of the formula.
fn abstract_lambdas(f: &Formula, charp: u64, kind: GuardKind, nn: usize, n: usize, qs: &[Vec<TPoly>], zs: &[String]) -> Formula {
    let flat: Vec<TPoly> = qs.iter().flat_map(|v| v.iter().cloned()).collect();
    map_polys(f, charp, &mut |p: &TPoly| {
        p.map_atoms(&mut |a: &TAtom| {
            if a.dord != 0 {
                return None;
            }
            let hit = match (&a.kind, kind) {
                (AtomKind::Lam { n: an, i, args }, GuardKind::Scf) if nn == 1 && *an == n && *args == flat => Some(*i),
                (AtomKind::LamN { nn: ann, n: an, i, args }, GuardKind::Scf)
                    if *ann == nn && *an == n && *args == flat =>
                {
                    Some(*i)
                }
                (AtomKind::LamP { n: an, i, args }, GuardKind::Pair) if *an == n && *args == flat => Some(*i),
                _ => None,
            };
            hit.map(|i| TPoly::var(charp, &zs[i - 1]))
        })
    })
}

/// Rebuilds every atom polynomial through `g` (terms are re-emitted in
/// canonical form).
pub fn map_polys(f: &Formula, charp: u64, g: &mut impl FnMut(&TPoly) -> TPoly) -> Formula {
    let conv = |t: &Term, g: &mut dyn FnMut(&TPoly) -> TPoly| tpoly_to_term(&g(&term_to_tpoly(t, charp)));
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Eq0(t) => Formula::Eq0(conv(t, g)),
        Formula::PMem(t) => Formula::PMem(conv(t, g)),
        Formula::Nonzero(t) => Formula::Nonzero(conv(t, g)),
        Formula::Pdep { n, args } => Formula::Pdep { n: *n, args: args.iter().map(|t| conv(t, g)).collect() },
        Formula::PdepN { nn, n, args } => {
            Formula::PdepN { nn: *nn, n: *n, args: args.iter().map(|t| conv(t, g)).collect() }
        }
        Formula::Dep { n, args } => Formula::Dep { n: *n, args: args.iter().map(|t| conv(t, g)).collect() },
        Formula::And(fs) => Formula::And(fs.iter().map(|x| map_polys(x, charp, g)).collect()),
        Formula::Or(fs) => Formula::Or(fs.iter().map(|x| map_polys(x, charp, g)).collect()),
        Formula::Not(x) => Formula::not(map_polys(x, charp, g)),
        Formula::ExistsP { vars, body } => {
            Formula::ExistsP { vars: vars.clone(), body: Box::new(map_polys(body, charp, g)) }
        }
        Formula::ExistsPth { var, pth, body } => Formula::ExistsPth {
            var: var.clone(),
            pth: conv(pth, g),
            body: Box::new(map_polys(body, charp, g)),
        },
    }
}

fn recognize_shape(f: &Formula, charp: u64, kind: GuardKind, counter: &mut usize) -> Result<LtShape> {
    match f {
        Formula::True => Ok(LtShape::System(vec![])),
        Formula::Eq0(t) => {
            let p = term_to_tpoly(t, charp);
            if p.is_plain_poly() {
                Ok(LtShape::System(vec![p]))
            } else {
                Err(Error::NotLambdaTame)
            }
        }
        // a bare dependence atom is lambda-tame of degree 1 through the
        // encoding dep(q) \/ (ldef(0,q) /\ 1 = 0)
        Formula::Pdep { .. } | Formula::PdepN { .. } | Formula::Dep { .. } => {
            let (nn, n, vectors) = atom_vectors(f, charp, kind).ok_or(Error::NotLambdaTame)?;
            if !polys_plain(&vectors) {
                return Err(Error::NotLambdaTame);
            }
            let mut qs = vec![vec![TPoly::zero(charp); nn]];
            qs.extend(vectors);
            *counter += 1;
            let zs: Vec<String> = (1..=n).map(|i| format!("_lt{}_{}", *counter, i)).collect();
            Ok(LtShape::Guarded { nn, n, qs, zs, inner: Box::new(LtShape::System(vec![TPoly::one(charp)])) })
        }
        Formula::And(fs) => {
            let parts: Vec<LtShape> =
                fs.iter().map(|x| recognize_shape(x, charp, kind, counter)).collect::<Result<_>>()?;
            if parts.iter().all(|p| matches!(p, LtShape::System(_))) {
                let merged = parts
                    .into_iter()
                    .flat_map(|p| match p {
                        LtShape::System(ps) => ps,
                        _ => unreachable!(),
                    })
                    .collect();
                Ok(LtShape::System(merged))
            } else {
                Ok(LtShape::Conj(parts))
            }
        }
        Formula::Or(fs) => {
            if fs.len() != 2 {
                return Err(Error::NotLambdaTame);
            }
            let (nn, n, tail_vectors) = atom_vectors(&fs[0], charp, kind).ok_or(Error::NotLambdaTame)?;
            if !polys_plain(&tail_vectors) {
                return Err(Error::NotLambdaTame);
            }
            let Formula::And(parts) = &fs[1] else {
                return Err(Error::NotLambdaTame);
            };
            if parts.len() < 2 {
                return Err(Error::NotLambdaTame);
            }
            let Formula::Not(neg) = &parts[0] else {
                return Err(Error::NotLambdaTame);
            };
            let Some((nn2, n2, tail2)) = atom_vectors(neg, charp, kind) else {
                return Err(Error::NotLambdaTame);
            };
            if (nn2, n2) != (nn, n) || tail2 != tail_vectors {
                return Err(Error::NotLambdaTame);
            }
            let Some((nn3, n3, full)) = atom_vectors(&parts[1], charp, kind) else {
                return Err(Error::NotLambdaTame);
            };
            if nn3 != nn || n3 != n + 1 || full[1..] != tail_vectors[..] || !polys_plain(&full[..1]) {
                return Err(Error::NotLambdaTame);
            }
            let qs = full;
            *counter += 1;
            let zs: Vec<String> = (1..=n).map(|i| format!("_lt{}_{}", *counter, i)).collect();
            let rest = parts[2..].to_vec();
            let psi = Formula::and(rest);
            let abstracted = abstract_lambdas(&psi, charp, kind, nn, n, &qs, &zs);
            let inner = recognize_shape(&abstracted, charp, kind, counter)?;
            Ok(LtShape::Guarded { nn, n, qs, zs, inner: Box::new(inner) })
        }
        _ => Err(Error::NotLambdaTame),
    }
}

// ---------------------------------------------------------------------------
// delta-tame formulae
// ---------------------------------------------------------------------------

/// Nested exists-pth-root blocks over a differential polynomial system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaTame {
    pub charp: u64,
    /// (witness variable, q_j); q_j may mention x and earlier witnesses.
    pub chain: Vec<(String, TPoly)>,
    pub system: Vec<TPoly>,
}

impl DeltaTame {
    pub fn quantifiers(&self) -> usize {
        self.chain.len()
    }

    pub fn from_formula(f: &Formula, charp: u64) -> Result<DeltaTame> {
        let mut chain = Vec::new();
        let mut cur = f;
        loop {
            match cur {
                Formula::ExistsPth { var, pth, body } => {
                    let q = term_to_tpoly(pth, charp);
                    if !q.is_diff_poly() {
                        return Err(Error::NotDeltaTame);
                    }
                    chain.push((var.clone(), q));
                    cur = body;
                }
                _ => break,
            }
        }
        let system = collect_diff_system(cur, charp).ok_or(Error::NotDeltaTame)?;
        Ok(DeltaTame { charp, chain, system })
    }

    pub fn to_formula(&self) -> Formula {
        let mut f = Formula::and(self.system.iter().map(|p| Formula::Eq0(tpoly_to_term(p))).collect());
        for (var, q) in self.chain.iter().rev() {
            f = Formula::ExistsPth { var: var.clone(), pth: tpoly_to_term(q), body: Box::new(f) };
        }
        f
    }

    /// Substitutes polynomials for free variables in every chain entry and
    /// the trailing system. The map must not touch witness names.
    pub fn substitute(&self, map: &BTreeMap<String, TPoly>) -> DeltaTame {
        debug_assert!(self.chain.iter().all(|(z, _)| !map.contains_key(z)));
        DeltaTame {
            charp: self.charp,
            chain: self.chain.iter().map(|(z, q)| (z.clone(), q.subst_vars(map))).collect(),
            system: self.system.iter().map(|p| p.subst_vars(map)).collect(),
        }
    }

    /// Renames witness variables with fresh names from the generator.
    pub fn refresh_witnesses(&self, fresh: &mut super::FreshNames) -> DeltaTame {
        let mut map: BTreeMap<String, TPoly> = BTreeMap::new();
        let mut chain = Vec::new();
        for (z, q) in &self.chain {
            let nz = fresh.fresh("z");
            let q2 = q.subst_vars(&map);
            map.insert(z.clone(), TPoly::var(self.charp, &nz));
            chain.push((nz, q2));
        }
        DeltaTame {
            charp: self.charp,
            chain,
            system: self.system.iter().map(|p| p.subst_vars(&map)).collect(),
        }
    }
}

fn collect_diff_system(f: &Formula, charp: u64) -> Option<Vec<TPoly>> {
    match f {
        Formula::True => Some(vec![]),
        Formula::Eq0(t) => {
            let p = term_to_tpoly(t, charp);
            if p.is_diff_poly() {
                Some(vec![p])
            } else {
                None
            }
        }
        Formula::And(fs) => {
            let mut out = Vec::new();
            for x in fs {
                out.extend(collect_diff_system(x, charp)?);
            }
            Some(out)
        }
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// tame formulae over the pair language
// ---------------------------------------------------------------------------

/// exists zeta in P^r (zeta != 0 /\ q_j(x, zeta) = 0), every q_j
/// homogeneous in the zeta block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TameFormula {
    pub charp: u64,
    pub zetas: Vec<String>,
    pub polys: Vec<TPoly>,
}

impl TameFormula {
    pub fn zeta_block(&self) -> BTreeSet<String> {
        self.zetas.iter().cloned().collect()
    }

    pub fn zeta_degree(&self) -> usize {
        let block = self.zeta_block();
        self.polys.iter().map(|p| p.degree_in_block(&block) as usize).max().unwrap_or(0)
    }

    pub fn validate_homogeneous(&self) -> Result<()> {
        let block = self.zeta_block();
        for p in &self.polys {
            if p.homogeneous_block_degree(&block).is_none() {
                return Err(Error::NotTame);
            }
            if !p.is_plain_poly() {
                return Err(Error::NotTame);
            }
        }
        Ok(())
    }

    pub fn from_formula(f: &Formula, charp: u64) -> Result<TameFormula> {
        let Formula::ExistsP { vars, body } = f else {
            return Err(Error::NotTame);
        };
        let (nontriv, eqs): (&Formula, &[Formula]) = match body.as_ref() {
            Formula::And(parts) if !parts.is_empty() => (&parts[0], &parts[1..]),
            other => (other, &[]),
        };
        if !nontriviality_matches(nontriv, vars) {
            return Err(Error::NotTame);
        }
        let mut polys = Vec::new();
        for e in eqs {
            let Formula::Eq0(t) = e else {
                return Err(Error::NotTame);
            };
            polys.push(term_to_tpoly(t, charp));
        }
        let tame = TameFormula { charp, zetas: vars.clone(), polys };
        tame.validate_homogeneous()?;
        Ok(tame)
    }

    pub fn to_formula(&self) -> Formula {
        let nontriv = nontriviality(&self.zetas);
        let mut parts = vec![nontriv];
        parts.extend(self.polys.iter().map(|p| Formula::Eq0(tpoly_to_term(p))));
        Formula::ExistsP { vars: self.zetas.clone(), body: Box::new(Formula::and(parts)) }
    }
}

pub fn nontriviality(vars: &[String]) -> Formula {
    Formula::or(vars.iter().map(|v| Formula::Nonzero(Term::Var(v.clone()))).collect())
}

fn nontriviality_matches(f: &Formula, vars: &[String]) -> bool {
    match f {
        Formula::Nonzero(Term::Var(v)) => vars.len() == 1 && &vars[0] == v,
        Formula::Or(parts) => {
            parts.len() == vars.len()
                && parts
                    .iter()
                    .zip(vars)
                    .all(|(p, v)| matches!(p, Formula::Nonzero(Term::Var(w)) if w == v))
        }
        _ => false,
    }
}

/// A tame formula whose polynomials are zeta-linear: the matrix entry
/// (i, j) is the coefficient of zeta_i in the j-th conjunct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearTame {
    pub charp: u64,
    pub zetas: Vec<String>,
    /// matrix[i][j] = q_{i,j}(x): s rows (one per zeta), k columns.
    pub matrix: Vec<Vec<TPoly>>,
}

impl LinearTame {
    pub fn from_tame(t: &TameFormula) -> Option<LinearTame> {
        let block = t.zeta_block();
        let s = t.zetas.len();
        let k = t.polys.len();
        let mut matrix = vec![vec![TPoly::zero(t.charp); k]; s];
        for (j, p) in t.polys.iter().enumerate() {
            if p.is_zero() {
                continue; // 0 = 0 is a vacuous linear constraint
            }
            if p.homogeneous_block_degree(&block) != Some(1) {
                return None;
            }
            // split each monomial on its unique zeta factor
            for (m, c) in &p.terms {
                let mut zeta_slot: Option<(usize, TAtom)> = None;
                let mut rest = m.0.clone();
                for (a, &e) in &m.0 {
                    if let AtomKind::Var(v) = &a.kind {
                        if let Some(idx) = t.zetas.iter().position(|z| z == v) {
                            if e != 1 || a.dord != 0 || zeta_slot.is_some() {
                                return None;
                            }
                            zeta_slot = Some((idx, a.clone()));
                        }
                    }
                }
                let (idx, atom) = zeta_slot?;
                rest.remove(&atom);
                let mut mono_poly = TPoly::zero(t.charp);
                // rebuild the monomial without the zeta factor
                let mut one = TPoly::one(t.charp);
                for (a, &e) in &rest {
                    one = one.mul(&TPoly::atom(t.charp, a.clone()).pow(e));
                }
                mono_poly = mono_poly.add(&one.mul(&TPoly::bigint(t.charp, c)));
                matrix[idx][j] = matrix[idx][j].add(&mono_poly);
            }
        }
        Some(LinearTame { charp: t.charp, zetas: t.zetas.clone(), matrix })
    }

    pub fn is_simple(&self) -> bool {
        self.matrix.first().map_or(false, |row| row.len() == 1)
    }

    pub fn to_tame(&self) -> TameFormula {
        let k = self.matrix.first().map_or(0, Vec::len);
        let mut polys = Vec::with_capacity(k);
        for j in 0..k {
            let mut acc = TPoly::zero(self.charp);
            for (i, z) in self.zetas.iter().enumerate() {
                acc = acc.add(&TPoly::var(self.charp, z).mul(&self.matrix[i][j]));
            }
            polys.push(acc);
        }
        TameFormula { charp: self.charp, zetas: self.zetas.clone(), polys }
    }
}

// ---------------------------------------------------------------------------
// classifier
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifiedShape {
    PolynomialSystem,
    LambdaTame { degree: usize },
    DeltaTame { quantifiers: usize },
    Tame,
    LinearTame,
    SimpleLinear,
    LambdaP { degree: usize },
    /// a term equation still carrying lambda/s applications
    TermEquation { function_symbols: usize },
    BooleanCombination(Vec<ClassifiedShape>),
}

impl ClassifiedShape {
    pub fn name(&self) -> &'static str {
        match self {
            ClassifiedShape::PolynomialSystem => "polynomial-system",
            ClassifiedShape::LambdaTame { .. } => "lambda-tame",
            ClassifiedShape::DeltaTame { .. } => "delta-tame",
            ClassifiedShape::Tame => "tame",
            ClassifiedShape::LinearTame => "linear-tame",
            ClassifiedShape::SimpleLinear => "simple-linear",
            ClassifiedShape::LambdaP { .. } => "lambdaP",
            ClassifiedShape::TermEquation { .. } => "term-equation",
            ClassifiedShape::BooleanCombination(_) => "boolean-combination",
        }
    }
}

fn is_plain_system(f: &Formula, charp: u64) -> bool {
    match f {
        Formula::True => true,
        Formula::Eq0(t) => term_to_tpoly(t, charp).is_plain_poly(),
        Formula::And(fs) => fs.iter().all(|x| is_plain_system(x, charp)),
        _ => false,
    }
}

/// Deterministic shape classification, most specific shape first. In the
/// SCF tag polynomial systems report as lambda-tame of degree 0.
pub fn classify(file: &FormulaFile) -> ClassifiedShape {
    classify_inner(&file.formula, file.lang, file.charp)
}

fn classify_inner(f: &Formula, lang: LanguageTag, charp: u64) -> ClassifiedShape {
    match lang {
        LanguageTag::Scf => {
            if let Ok(lt) = LambdaTame::from_formula(f, charp, GuardKind::Scf) {
                return ClassifiedShape::LambdaTame { degree: lt.degree() };
            }
            if let Formula::Eq0(t) = f {
                let p = term_to_tpoly(t, charp);
                return ClassifiedShape::TermEquation { function_symbols: p.count_lam_atoms() };
            }
            boolean_shape(f, lang, charp)
        }
        LanguageTag::Dcf => {
            if let Ok(dt) = DeltaTame::from_formula(f, charp) {
                return ClassifiedShape::DeltaTame { quantifiers: dt.quantifiers() };
            }
            if let Formula::Eq0(t) = f {
                let p = term_to_tpoly(t, charp);
                return ClassifiedShape::TermEquation { function_symbols: p.count_s_atoms() };
            }
            boolean_shape(f, lang, charp)
        }
        LanguageTag::Pair => {
            if is_plain_system(f, charp) {
                return ClassifiedShape::PolynomialSystem;
            }
            if let Ok(t) = TameFormula::from_formula(f, charp) {
                if let Some(lin) = LinearTame::from_tame(&t) {
                    if lin.is_simple() {
                        return ClassifiedShape::SimpleLinear;
                    }
                    return ClassifiedShape::LinearTame;
                }
                return ClassifiedShape::Tame;
            }
            if let Ok(lt) = LambdaTame::from_formula(f, charp, GuardKind::Pair) {
                return ClassifiedShape::LambdaP { degree: lt.degree() };
            }
            boolean_shape(f, lang, charp)
        }
    }
}

fn boolean_shape(f: &Formula, lang: LanguageTag, charp: u64) -> ClassifiedShape {
    match f {
        Formula::And(fs) | Formula::Or(fs) => {
            ClassifiedShape::BooleanCombination(fs.iter().map(|x| classify_inner(x, lang, charp)).collect())
        }
        Formula::Not(x) => ClassifiedShape::BooleanCombination(vec![classify_inner(x, lang, charp)]),
        _ => ClassifiedShape::BooleanCombination(vec![]),
    }
}

/// The substitution operation on certified lambda-tame formulae: maps each
/// free variable to a polynomial term and preserves the degree.
pub fn substitute_lambda_tame(
    f: &Formula,
    charp: u64,
    kind: GuardKind,
    assignment: &BTreeMap<String, Term>,
) -> Result<Formula> {
    let lt = LambdaTame::from_formula(f, charp, kind)?;
    let map: BTreeMap<String, TPoly> = assignment
        .iter()
        .map(|(k, v)| {
            let p = term_to_tpoly(v, charp);
            if !p.is_plain_poly() {
                return Err(Error::ShapeViolation("substitution images must be polynomial terms".into()));
            }
            Ok((k.clone(), p))
        })
        .collect::<Result<_>>()?;
    Ok(lt.substitute(&map).to_formula())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::sexpr::parse_file;

    fn scf(src: &str) -> FormulaFile {
        parse_file(&format!(";; lang: scf  p: 2\n{src}\n")).unwrap()
    }

    fn pair(src: &str) -> FormulaFile {
        parse_file(&format!(";; lang: pair  p: 0\n{src}\n")).unwrap()
    }

    fn dcf(src: &str) -> FormulaFile {
        parse_file(&format!(";; lang: dcf  p: 3\n{src}\n")).unwrap()
    }

    #[test]
    fn polynomial_equation_is_lambda_tame_zero() {
        let f = scf("(eq0 (+ (* x y) -1))");
        assert_eq!(classify(&f), ClassifiedShape::LambdaTame { degree: 0 });
    }

    #[test]
    fn pdep_atom_is_lambda_tame_one() {
        let f = scf("(pdep 2 x y)");
        assert_eq!(classify(&f), ClassifiedShape::LambdaTame { degree: 1 });
    }

    #[test]
    fn guarded_nest_roundtrip() {
        // pdep(q1) \/ (not pdep(q1) /\ pdep(q0,q1) /\ lam-value = 0)
        let src = "(or (pdep 1 x) (and (not (pdep 1 x)) (pdep 2 y x) (eq0 (lam 1 1 y x))))";
        let f = scf(src);
        let lt = LambdaTame::from_formula(&f.formula, 2, GuardKind::Scf).unwrap();
        assert_eq!(lt.degree(), 1);
        let emitted = lt.to_formula();
        let again = LambdaTame::from_formula(&emitted, 2, GuardKind::Scf).unwrap();
        assert_eq!(again.shape, lt.shape);
        assert_eq!(classify(&f), ClassifiedShape::LambdaTame { degree: 1 });
    }

    #[test]
    fn nested_degree_two() {
        // inner formula uses the outer lambda value inside a second nest
        let inner = "(and (not (pdep 1 (lam 1 1 y x))) (pdep 2 x (lam 1 1 y x)) (eq0 (lam 1 1 x (lam 1 1 y x))))";
        let src = format!(
            "(or (pdep 1 x) (and (not (pdep 1 x)) (pdep 2 y x) (or (pdep 1 (lam 1 1 y x)) {inner})))"
        );
        let f = scf(&src);
        assert_eq!(classify(&f), ClassifiedShape::LambdaTame { degree: 2 });
    }

    #[test]
    fn substitution_preserves_degree() {
        let src = "(or (pdep 2 x y) (and (not (pdep 2 x y)) (pdep 3 1 x y) (eq0 (+ (lam 2 1 1 x y) (lam 2 2 1 x y)))))";
        let f = scf(src);
        let mut map = BTreeMap::new();
        map.insert("x".to_string(), Term::mul(Term::var("u"), Term::var("u")));
        map.insert("y".to_string(), Term::add(Term::var("u"), Term::int(1)));
        let out = substitute_lambda_tame(&f.formula, 2, GuardKind::Scf, &map).unwrap();
        let shape = LambdaTame::from_formula(&out, 2, GuardKind::Scf).unwrap();
        assert_eq!(shape.degree(), 1);
    }

    #[test]
    fn delta_tame_recognition() {
        let f = dcf("(existsPth z1 x (existsPth z2 (+ z1 x) (eq0 (+ (d z2) (* z1 x)))))");
        let dt = DeltaTame::from_formula(&f.formula, 3).unwrap();
        assert_eq!(dt.quantifiers(), 2);
        let back = dt.to_formula();
        assert_eq!(DeltaTame::from_formula(&back, 3).unwrap(), dt);
        assert_eq!(classify(&f), ClassifiedShape::DeltaTame { quantifiers: 2 });
        // bare differential system
        let f0 = dcf("(eq0 (+ (d x) (* x x)))");
        assert_eq!(classify(&f0), ClassifiedShape::DeltaTame { quantifiers: 0 });
    }

    #[test]
    fn s_term_equation_classifies() {
        let f = dcf("(eq0 (* (s x) x))");
        assert_eq!(classify(&f), ClassifiedShape::TermEquation { function_symbols: 1 });
    }

    #[test]
    fn tame_shapes() {
        let simple = pair("(existsP (z1 z2) (and (or (nonzero z1) (nonzero z2)) (eq0 (+ (* z1 x) (* z2 y)))))");
        assert_eq!(classify(&simple), ClassifiedShape::SimpleLinear);
        let linear = pair(
            "(existsP (z1 z2) (and (or (nonzero z1) (nonzero z2)) (eq0 (+ (* z1 x) (* z2 y))) (eq0 (+ (* z1 y) (* z2 1)))))",
        );
        assert_eq!(classify(&linear), ClassifiedShape::LinearTame);
        let quad = pair("(existsP (z) (and (nonzero z) (eq0 (* (* z z) x))))");
        assert_eq!(classify(&quad), ClassifiedShape::Tame);
        let sys = pair("(and (eq0 x) (eq0 y))");
        assert_eq!(classify(&sys), ClassifiedShape::PolynomialSystem);
    }

    #[test]
    fn inhomogeneous_existsp_is_not_tame() {
        let f = pair("(existsP (z) (and (nonzero z) (eq0 (+ (* z x) 1))))");
        assert!(TameFormula::from_formula(&f.formula, 0).is_err());
    }

    #[test]
    fn boolean_combination_shape() {
        // conjunctions of lambda-tame formulae stay lambda-tame; negation
        // breaks out into a Boolean combination
        let conj = scf("(and (eq0 x) (pdep 2 x y))");
        assert_eq!(classify(&conj), ClassifiedShape::LambdaTame { degree: 1 });
        let f = scf("(not (and (eq0 x) (pdep 2 x y)))");
        assert_eq!(
            classify(&f),
            ClassifiedShape::BooleanCombination(vec![ClassifiedShape::LambdaTame { degree: 1 }])
        );
        let mix = scf("(or (eq0 x) (eq0 y) (eq0 (* x y)))");
        assert_eq!(
            classify(&mix),
            ClassifiedShape::BooleanCombination(vec![
                ClassifiedShape::LambdaTame { degree: 0 },
                ClassifiedShape::LambdaTame { degree: 0 },
                ClassifiedShape::LambdaTame { degree: 0 },
            ])
        );
    }

    #[test]
    fn linear_tame_matrix_extraction() {
        let f = pair(
            "(existsP (z1 z2) (and (or (nonzero z1) (nonzero z2)) (eq0 (+ (* z1 x) (* z2 (* x y))))))",
        );
        let t = TameFormula::from_formula(&f.formula, 0).unwrap();
        let lin = LinearTame::from_tame(&t).unwrap();
        assert!(lin.is_simple());
        assert_eq!(lin.matrix[0][0], TPoly::var(0, "x"));
        assert_eq!(lin.matrix[1][0], TPoly::var(0, "x").mul(&TPoly::var(0, "y")));
        // roundtrip through to_tame preserves the polynomials
        assert_eq!(lin.to_tame().polys, t.polys);
    }
}
