//! Typed ASTs for the three formal languages, with a textual format,
//! substitution, Boolean restructuring, and shape classification.

pub mod canon;
pub mod sexpr;
pub mod shapes;

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LanguageTag {
    Scf,
    Dcf,
    Pair,
}

impl LanguageTag {
    pub fn name(self) -> &'static str {
        match self {
            LanguageTag::Scf => "scf",
            LanguageTag::Dcf => "dcf",
            LanguageTag::Pair => "pair",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "scf" => Some(LanguageTag::Scf),
            "dcf" => Some(LanguageTag::Dcf),
            "pair" => Some(LanguageTag::Pair),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Int(BigInt),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Neg(Box<Term>),
    Pow(Box<Term>, u32),
    /// lambda_n^i(a_0..a_n), SCF only; args has n+1 entries.
    Lam { n: usize, i: usize, args: Vec<Term> },
    /// lambda_{N,n}^i on vectors of length N; args has (n+1)*N entries,
    /// the n+1 vectors concatenated.
    LamN { nn: usize, n: usize, i: usize, args: Vec<Term> },
    /// delta, DCF only.
    D(Box<Term>),
    /// the p-th root of constants, DCF only.
    S(Box<Term>),
    /// lambda_n^i of the pair language, values in the small field.
    LamP { n: usize, i: usize, args: Vec<Term> },
}

impl Term {
    pub fn int(n: i64) -> Term {
        Term::Int(BigInt::from(n))
    }

    pub fn var(s: &str) -> Term {
        Term::Var(s.to_string())
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Term) -> Term {
        Term::Neg(Box::new(a))
    }

    pub fn pow(a: Term, e: u32) -> Term {
        Term::Pow(Box::new(a), e)
    }

    pub fn sub(a: Term, b: Term) -> Term {
        Term::add(a, Term::neg(b))
    }

    fn walk_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Int(_) => {}
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.walk_vars(out);
                b.walk_vars(out);
            }
            Term::Neg(a) | Term::D(a) | Term::S(a) | Term::Pow(a, _) => a.walk_vars(out),
            Term::Lam { args, .. } | Term::LamN { args, .. } | Term::LamP { args, .. } => {
                for a in args {
                    a.walk_vars(out);
                }
            }
        }
    }

    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.walk_vars(&mut out);
        out
    }

    fn validate(&self, lang: LanguageTag) -> Result<()> {
        let bad = |what: &str| {
            Err(Error::LanguageViolation { lang: lang.name().to_string(), what: what.to_string() })
        };
        match self {
            Term::Var(_) | Term::Int(_) => Ok(()),
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.validate(lang)?;
                b.validate(lang)
            }
            Term::Neg(a) | Term::Pow(a, _) => a.validate(lang),
            Term::Lam { n, i, args } => {
                if lang != LanguageTag::Scf {
                    return bad("lam term");
                }
                if *i < 1 || i > n || args.len() != n + 1 {
                    return Err(Error::Arity(format!("lam {n} {i} expects {} args, got {}", n + 1, args.len())));
                }
                args.iter().try_for_each(|a| a.validate(lang))
            }
            Term::LamN { nn, n, i, args } => {
                if lang != LanguageTag::Scf {
                    return bad("lamN term");
                }
                if *i < 1 || i > n || args.len() != (n + 1) * nn {
                    return Err(Error::Arity(format!(
                        "lamN {nn} {n} {i} expects {} args, got {}",
                        (n + 1) * nn,
                        args.len()
                    )));
                }
                args.iter().try_for_each(|a| a.validate(lang))
            }
            Term::D(a) => {
                if lang != LanguageTag::Dcf {
                    return bad("d term");
                }
                a.validate(lang)
            }
            Term::S(a) => {
                if lang != LanguageTag::Dcf {
                    return bad("s term");
                }
                a.validate(lang)
            }
            Term::LamP { n, i, args } => {
                if lang != LanguageTag::Pair {
                    return bad("lamP term");
                }
                if *i < 1 || i > n || args.len() != n + 1 {
                    return Err(Error::Arity(format!("lamP {n} {i} expects {} args, got {}", n + 1, args.len())));
                }
                args.iter().try_for_each(|a| a.validate(lang))
            }
        }
    }

    /// Textbook substitution of terms for variables, no binder awareness.
    pub fn subst(&self, map: &std::collections::BTreeMap<String, Term>) -> Term {
        match self {
            Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Int(_) => self.clone(),
            Term::Add(a, b) => Term::add(a.subst(map), b.subst(map)),
            Term::Mul(a, b) => Term::mul(a.subst(map), b.subst(map)),
            Term::Neg(a) => Term::neg(a.subst(map)),
            Term::Pow(a, e) => Term::pow(a.subst(map), *e),
            Term::D(a) => Term::D(Box::new(a.subst(map))),
            Term::S(a) => Term::S(Box::new(a.subst(map))),
            Term::Lam { n, i, args } => Term::Lam { n: *n, i: *i, args: args.iter().map(|a| a.subst(map)).collect() },
            Term::LamN { nn, n, i, args } => {
                Term::LamN { nn: *nn, n: *n, i: *i, args: args.iter().map(|a| a.subst(map)).collect() }
            }
            Term::LamP { n, i, args } => {
                Term::LamP { n: *n, i: *i, args: args.iter().map(|a| a.subst(map)).collect() }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Eq0(Term),
    /// pdep_n(q_1..q_n): the arguments are K^p-linearly dependent. SCF.
    Pdep { n: usize, args: Vec<Term> },
    /// pdep_{N,n} on n vectors of length N (args concatenated). SCF.
    PdepN { nn: usize, n: usize, args: Vec<Term> },
    /// dep_n: E-linear dependence in the pair language.
    Dep { n: usize, args: Vec<Term> },
    /// P(t): membership in the small field of the pair.
    PMem(Term),
    Nonzero(Term),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
    /// exists zeta in P^r (tame blocks), PAIR only.
    ExistsP { vars: Vec<String>, body: Box<Formula> },
    /// exists z (z^p = q /\ body), DCF only.
    ExistsPth { var: String, pth: Term, body: Box<Formula> },
}

impl Formula {
    pub fn and(fs: Vec<Formula>) -> Formula {
        match fs.len() {
            0 => Formula::True,
            1 => fs.into_iter().next().unwrap(),
            _ => Formula::And(fs),
        }
    }

    pub fn or(fs: Vec<Formula>) -> Formula {
        match fs.len() {
            0 => Formula::False,
            1 => fs.into_iter().next().unwrap(),
            _ => Formula::Or(fs),
        }
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    fn walk(&self, free: &mut Vec<String>, bound: &mut Vec<String>, all_bound: &mut Vec<String>) {
        let add_term = |t: &Term, bound: &Vec<String>, free: &mut Vec<String>| {
            for v in t.variables() {
                if !bound.contains(&v) && !free.contains(&v) {
                    free.push(v);
                }
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Eq0(t) | Formula::PMem(t) | Formula::Nonzero(t) => add_term(t, bound, free),
            Formula::Pdep { args, .. } | Formula::PdepN { args, .. } | Formula::Dep { args, .. } => {
                for t in args {
                    add_term(t, bound, free);
                }
            }
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.walk(free, bound, all_bound);
                }
            }
            Formula::Not(f) => f.walk(free, bound, all_bound),
            Formula::ExistsP { vars, body } => {
                for v in vars {
                    bound.push(v.clone());
                    all_bound.push(v.clone());
                }
                body.walk(free, bound, all_bound);
                for _ in vars {
                    bound.pop();
                }
            }
            Formula::ExistsPth { var, pth, body } => {
                add_term(pth, bound, free);
                bound.push(var.clone());
                all_bound.push(var.clone());
                body.walk(free, bound, all_bound);
                bound.pop();
            }
        }
    }

    pub fn free_variables(&self) -> Vec<String> {
        let mut free = Vec::new();
        self.walk(&mut free, &mut Vec::new(), &mut Vec::new());
        free
    }

    pub fn bound_variables(&self) -> Vec<String> {
        let mut all = Vec::new();
        self.walk(&mut Vec::new(), &mut Vec::new(), &mut all);
        all
    }

    fn validate_inner(&self, lang: LanguageTag) -> Result<()> {
        let bad = |what: &str| {
            Err(Error::LanguageViolation { lang: lang.name().to_string(), what: what.to_string() })
        };
        match self {
            Formula::True | Formula::False => Ok(()),
            Formula::Eq0(t) => t.validate(lang),
            Formula::Pdep { n, args } => {
                if lang != LanguageTag::Scf {
                    return bad("pdep atom");
                }
                if args.len() != *n || *n == 0 {
                    return Err(Error::Arity(format!("pdep {n} expects {n} args, got {}", args.len())));
                }
                args.iter().try_for_each(|t| t.validate(lang))
            }
            Formula::PdepN { nn, n, args } => {
                if lang != LanguageTag::Scf {
                    return bad("pdepN atom");
                }
                if args.len() != nn * n || *n == 0 || *nn == 0 {
                    return Err(Error::Arity(format!("pdepN {nn} {n} expects {} args, got {}", nn * n, args.len())));
                }
                args.iter().try_for_each(|t| t.validate(lang))
            }
            Formula::Dep { n, args } => {
                if lang != LanguageTag::Pair {
                    return bad("dep atom");
                }
                if args.len() != *n || *n == 0 {
                    return Err(Error::Arity(format!("dep {n} expects {n} args, got {}", args.len())));
                }
                args.iter().try_for_each(|t| t.validate(lang))
            }
            Formula::PMem(t) => {
                if lang != LanguageTag::Pair {
                    return bad("P atom");
                }
                t.validate(lang)
            }
            Formula::Nonzero(t) => {
                if lang != LanguageTag::Pair {
                    return bad("nonzero atom");
                }
                t.validate(lang)
            }
            Formula::And(fs) | Formula::Or(fs) => {
                if fs.is_empty() {
                    return Err(Error::Arity("and/or need at least one operand".into()));
                }
                fs.iter().try_for_each(|f| f.validate_inner(lang))
            }
            Formula::Not(f) => f.validate_inner(lang),
            Formula::ExistsP { vars, body } => {
                if lang != LanguageTag::Pair {
                    return bad("existsP block");
                }
                if vars.is_empty() {
                    return Err(Error::Arity("existsP needs at least one variable".into()));
                }
                body.validate_inner(lang)
            }
            Formula::ExistsPth { pth, body, .. } => {
                if lang != LanguageTag::Dcf {
                    return bad("existsPth block");
                }
                pth.validate(lang)?;
                body.validate_inner(lang)
            }
        }
    }

    /// Well-formedness: legal atoms for the tag, arities, and variable
    /// hygiene (bound names unique and disjoint from free names).
    pub fn validate(&self, lang: LanguageTag) -> Result<()> {
        self.validate_inner(lang)?;
        let bound = self.bound_variables();
        let mut seen = std::collections::BTreeSet::new();
        for b in &bound {
            if !seen.insert(b.clone()) {
                return Err(Error::Hygiene(format!("bound name {b} is not unique")));
            }
        }
        for f in self.free_variables() {
            if seen.contains(&f) {
                return Err(Error::Hygiene(format!("name {f} is both free and bound")));
            }
        }
        Ok(())
    }

    /// Applies a variable -> term map to every atom (no binder capture
    /// checks; callers substitute free variables only).
    pub fn subst_terms(&self, map: &std::collections::BTreeMap<String, Term>) -> Formula {
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Eq0(t) => Formula::Eq0(t.subst(map)),
            Formula::PMem(t) => Formula::PMem(t.subst(map)),
            Formula::Nonzero(t) => Formula::Nonzero(t.subst(map)),
            Formula::Pdep { n, args } => Formula::Pdep { n: *n, args: args.iter().map(|t| t.subst(map)).collect() },
            Formula::PdepN { nn, n, args } => {
                Formula::PdepN { nn: *nn, n: *n, args: args.iter().map(|t| t.subst(map)).collect() }
            }
            Formula::Dep { n, args } => Formula::Dep { n: *n, args: args.iter().map(|t| t.subst(map)).collect() },
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.subst_terms(map)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.subst_terms(map)).collect()),
            Formula::Not(f) => Formula::not(f.subst_terms(map)),
            Formula::ExistsP { vars, body } => {
                Formula::ExistsP { vars: vars.clone(), body: Box::new(body.subst_terms(map)) }
            }
            Formula::ExistsPth { var, pth, body } => Formula::ExistsPth {
                var: var.clone(),
                pth: pth.subst(map),
                body: Box::new(body.subst_terms(map)),
            },
        }
    }
}

/// A parsed formula file: header language tag, characteristic, formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaFile {
    pub lang: LanguageTag,
    pub charp: u64,
    pub formula: Formula,
}

impl FormulaFile {
    pub fn new(lang: LanguageTag, charp: u64, formula: Formula) -> Result<Self> {
        match lang {
            LanguageTag::Scf | LanguageTag::Dcf => {
                if charp == 0 {
                    return Err(Error::WrongDescriptor(format!("{} needs a positive characteristic", lang.name())));
                }
            }
            LanguageTag::Pair => {
                if charp != 0 {
                    return Err(Error::WrongDescriptor("the pair pipeline works in characteristic 0".into()));
                }
            }
        }
        formula.validate(lang)?;
        Ok(FormulaFile { lang, charp, formula })
    }
}

/// Negation normal form with flattened conjunctions and disjunctions;
/// atoms and quantifier blocks are left untouched.
pub fn boolean_normal(f: &Formula) -> Formula {
    fn nnf(f: &Formula, neg: bool) -> Formula {
        match f {
            Formula::Not(g) => nnf(g, !neg),
            Formula::And(fs) => {
                let parts: Vec<Formula> = fs.iter().map(|g| nnf(g, neg)).collect();
                if neg {
                    Formula::or(flatten_or(parts))
                } else {
                    Formula::and(flatten_and(parts))
                }
            }
            Formula::Or(fs) => {
                let parts: Vec<Formula> = fs.iter().map(|g| nnf(g, neg)).collect();
                if neg {
                    Formula::and(flatten_and(parts))
                } else {
                    Formula::or(flatten_or(parts))
                }
            }
            Formula::True => {
                if neg {
                    Formula::False
                } else {
                    Formula::True
                }
            }
            Formula::False => {
                if neg {
                    Formula::True
                } else {
                    Formula::False
                }
            }
            leaf => {
                if neg {
                    Formula::not(leaf.clone())
                } else {
                    leaf.clone()
                }
            }
        }
    }
    fn flatten_and(parts: Vec<Formula>) -> Vec<Formula> {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Formula::And(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        out
    }
    fn flatten_or(parts: Vec<Formula>) -> Vec<Formula> {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Formula::Or(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        out
    }
    nnf(f, false)
}

/// Produces names `base1`, `base2`, ... distinct from everything in `used`.
pub struct FreshNames {
    used: std::collections::BTreeSet<String>,
    counter: usize,
}

impl FreshNames {
    pub fn new<I: IntoIterator<Item = String>>(used: I) -> Self {
        FreshNames { used: used.into_iter().collect(), counter: 0 }
    }

    pub fn for_formula(f: &Formula) -> Self {
        let mut used: Vec<String> = f.free_variables();
        used.extend(f.bound_variables());
        Self::new(used)
    }

    pub fn fresh(&mut self, base: &str) -> String {
        loop {
            self.counter += 1;
            let cand = format!("{base}{}", self.counter);
            if self.used.insert(cand.clone()) {
                return cand;
            }
        }
    }

    pub fn reserve(&mut self, name: &str) {
        self.used.insert(name.to_string());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nnf_de_morgan() {
        let a = Formula::Eq0(Term::var("x"));
        let b = Formula::Eq0(Term::var("y"));
        let f = Formula::not(Formula::And(vec![a.clone(), b.clone()]));
        let n = boolean_normal(&f);
        assert_eq!(n, Formula::Or(vec![Formula::not(a), Formula::not(b)]));
    }

    #[test]
    fn nnf_double_negation() {
        let a = Formula::Eq0(Term::var("x"));
        let f = Formula::not(Formula::not(a.clone()));
        assert_eq!(boolean_normal(&f), a);
    }

    #[test]
    fn nnf_idempotent_on_normal() {
        let a = Formula::Eq0(Term::var("x"));
        let b = Formula::not(Formula::Eq0(Term::var("y")));
        let f = Formula::Or(vec![a, b]);
        assert_eq!(boolean_normal(&f), f);
    }

    #[test]
    fn language_violations_rejected() {
        let dep = Formula::Dep { n: 1, args: vec![Term::var("x")] };
        assert!(dep.validate(LanguageTag::Scf).is_err());
        assert!(dep.validate(LanguageTag::Pair).is_ok());
        let s = Formula::Eq0(Term::S(Box::new(Term::var("x"))));
        assert!(s.validate(LanguageTag::Scf).is_err());
        assert!(s.validate(LanguageTag::Dcf).is_ok());
    }

    #[test]
    fn hygiene_rejects_shadowing() {
        let body = Formula::Eq0(Term::var("z"));
        let f = Formula::ExistsPth {
            var: "z".into(),
            pth: Term::var("z"),
            body: Box::new(body),
        };
        // the pth-power argument mentions z free while z is also bound
        assert!(f.validate(LanguageTag::Dcf).is_err());
    }

    #[test]
    fn free_and_bound() {
        let f = Formula::ExistsPth {
            var: "z".into(),
            pth: Term::var("x"),
            body: Box::new(Formula::Eq0(Term::mul(Term::var("z"), Term::var("y")))),
        };
        assert_eq!(f.free_variables(), vec!["x".to_string(), "y".to_string()]);
        assert_eq!(f.bound_variables(), vec!["z".to_string()]);
    }
}
