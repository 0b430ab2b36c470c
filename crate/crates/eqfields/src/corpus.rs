//! The built-in formula corpus: term equations, shaped formulae, and
//! instance-reduction inputs for every pass, in all three languages.
//! Entries are constructed programmatically and printed canonically, so
//! the on-disk `.eqf` copies round-trip byte-exactly.

use std::collections::BTreeMap;

use crate::formula::canon::TPoly;
use crate::formula::shapes::{GuardKind, LambdaTame, LtShape, DeltaTame, TameFormula};
use crate::formula::{Formula, FormulaFile, LanguageTag, Term};

fn v(name: &str) -> Term {
    Term::var(name)
}

fn i(n: i64) -> Term {
    Term::int(n)
}

fn add2(a: Term, b: Term) -> Term {
    Term::add(a, b)
}

fn mul2(a: Term, b: Term) -> Term {
    Term::mul(a, b)
}

fn pw(a: Term, e: u32) -> Term {
    Term::pow(a, e)
}

fn lam(n: usize, idx: usize, args: Vec<Term>) -> Term {
    Term::Lam { n, i: idx, args }
}

fn s(a: Term) -> Term {
    Term::S(Box::new(a))
}

fn d(a: Term) -> Term {
    Term::D(Box::new(a))
}

fn eq0(t: Term) -> Formula {
    Formula::Eq0(t)
}

fn file(lang: LanguageTag, p: u64, f: Formula) -> FormulaFile {
    FormulaFile::new(lang, p, f).expect("corpus formula is well-formed")
}

fn tp(p: u64, name: &str) -> TPoly {
    TPoly::var(p, name)
}

// ---------------------------------------------------------------------------
// term equations
// ---------------------------------------------------------------------------

/// Lambda-bearing term equations, nesting depth at most 3.
pub fn scf_term_equations(p: u64) -> Vec<FormulaFile> {
    let x = || v("x");
    let y = || v("y");
    let u = || v("u");
    let terms: Vec<Term> = vec![
        add2(mul2(x(), y()), i(-1)),
        lam(1, 1, vec![x(), y()]),
        add2(mul2(lam(1, 1, vec![x(), y()]), x()), i(1)),
        add2(lam(2, 1, vec![x(), y(), u()]), lam(2, 2, vec![x(), y(), u()])),
        lam(1, 1, vec![lam(1, 1, vec![x(), y()]), y()]),
        mul2(lam(1, 1, vec![add2(pw(x(), 2), y()), y()]), x()),
        add2(lam(1, 1, vec![x(), y()]), lam(1, 1, vec![y(), x()])),
        lam(1, 1, vec![lam(1, 1, vec![lam(1, 1, vec![x(), y()]), y()]), y()]),
        add2(pw(lam(1, 1, vec![x(), y()]), 2), x()),
        mul2(lam(2, 1, vec![i(1), x(), y()]), lam(1, 1, vec![x(), u()])),
        add2(lam(1, 1, vec![mul2(x(), x()), y()]), i(-1)),
        mul2(x(), lam(1, 1, vec![y(), add2(x(), y())])),
        add2(lam(1, 1, vec![x(), lam(1, 1, vec![y(), x()])]), y()),
        add2(mul2(lam(1, 1, vec![x(), y()]), lam(2, 1, vec![x(), y(), u()])), u()),
        add2(x(), lam(1, 1, vec![i(1), x()])),
    ];
    terms.into_iter().map(|t| file(LanguageTag::Scf, p, eq0(t))).collect()
}

/// s-bearing term equations, nesting depth at most 3.
pub fn dcf_term_equations(p: u64) -> Vec<FormulaFile> {
    let x = || v("x");
    let y = || v("y");
    let terms: Vec<Term> = vec![
        add2(d(x()), mul2(x(), x())),
        mul2(s(x()), x()),
        add2(s(s(x())), x()),
        mul2(s(add2(x(), d(x()))), s(x())),
        add2(d(s(x())), i(1)),
        add2(s(d(x())), y()),
        mul2(s(x()), s(y())),
        add2(s(s(s(x()))), x()),
        add2(mul2(s(x()), y()), d(y())),
        s(mul2(x(), y())),
        add2(s(add2(pw(x(), 3), y())), Term::neg(x())),
        mul2(d(s(add2(x(), y()))), x()),
        add2(s(x()), d(d(x()))),
        mul2(add2(s(x()), i(1)), add2(s(y()), i(-1))),
        add2(s(pw(x(), 3)), mul2(i(2), y())),
    ];
    terms.into_iter().map(|t| file(LanguageTag::Dcf, p, eq0(t))).collect()
}

// ---------------------------------------------------------------------------
// lambda-tame corpus with homogenisation blocks
// ---------------------------------------------------------------------------

pub struct HomEntry {
    pub file: FormulaFile,
    pub block: Vec<String>,
    pub pivot: String,
}

fn lt_file(p: u64, kind: GuardKind, shape: LtShape) -> FormulaFile {
    let lt = LambdaTame { kind, charp: p, shape };
    let lang = match kind {
        GuardKind::Scf => LanguageTag::Scf,
        GuardKind::Pair => LanguageTag::Pair,
    };
    file(lang, p, lt.to_formula())
}

/// Lambda-tame formulae over parameters x and a block y1..yk, paired
/// with the homogenisation block and pivot the suites use.
pub fn scf_lambda_tame(p: u64) -> Vec<HomEntry> {
    let x = tp(p, "x");
    let y1 = tp(p, "y1");
    let y2 = tp(p, "y2");
    let one = TPoly::one(p);
    let entry = |shape: LtShape, block: &[&str]| HomEntry {
        file: lt_file(p, GuardKind::Scf, shape),
        block: block.iter().map(|s| s.to_string()).collect(),
        pivot: "y0".to_string(),
    };
    vec![
        // degree 0: x*y1 - 1 = 0
        entry(LtShape::System(vec![x.mul(&y1).sub(&one)]), &["y1"]),
        // degree 0 system in two block variables
        entry(
            LtShape::System(vec![y1.pow(2).add(&x.mul(&y2)), y1.mul(&y2).sub(&one)]),
            &["y1", "y2"],
        ),
        // guarded, degree 1: q0 = y1, q1 = x, q2 = y2
        entry(
            LtShape::Guarded {
                nn: 1,
                n: 2,
                qs: vec![vec![y1.clone()], vec![x.clone()], vec![y2.clone()]],
                zs: vec!["za".into(), "zb".into()],
                inner: Box::new(LtShape::System(vec![tp(p, "za").add(&tp(p, "zb").mul(&x))])),
            },
            &["y1", "y2"],
        ),
        // guarded, degree 1: q0 = 1, q1 = y1
        entry(
            LtShape::Guarded {
                nn: 1,
                n: 1,
                qs: vec![vec![one.clone()], vec![y1.clone()]],
                zs: vec!["za".into()],
                inner: Box::new(LtShape::System(vec![tp(p, "za").pow(2).add(&y1)])),
            },
            &["y1"],
        ),
        // degree 2 nest
        entry(
            LtShape::Guarded {
                nn: 1,
                n: 1,
                qs: vec![vec![y1.clone()], vec![x.clone()]],
                zs: vec!["za".into()],
                inner: Box::new(LtShape::Guarded {
                    nn: 1,
                    n: 1,
                    qs: vec![vec![tp(p, "za")], vec![y1.add(&x)]],
                    zs: vec!["zb".into()],
                    inner: Box::new(LtShape::System(vec![tp(p, "zb").add(&x)])),
                }),
            },
            &["y1"],
        ),
        // conjunction of a system and a guarded nest
        entry(
            LtShape::Conj(vec![
                LtShape::System(vec![x.add(&y1)]),
                LtShape::Guarded {
                    nn: 1,
                    n: 1,
                    qs: vec![vec![y2.clone()], vec![x.clone()]],
                    zs: vec!["za".into()],
                    inner: Box::new(LtShape::System(vec![tp(p, "za")])),
                },
            ]),
            &["y1", "y2"],
        ),
        // guarded with constant tail, degree 1
        entry(
            LtShape::Guarded {
                nn: 1,
                n: 2,
                qs: vec![vec![x.pow(2)], vec![one.clone()], vec![y1.clone()]],
                zs: vec!["za".into(), "zb".into()],
                inner: Box::new(LtShape::System(vec![tp(p, "za").mul(&tp(p, "zb")).add(&y1)])),
            },
            &["y1"],
        ),
    ]
}

/// Scalar-guard subsets of the lambda-tame corpus, plus vector-guard
/// entries, for passes that need each flavor.
pub fn scf_lambda_tame_vector(p: u64) -> Vec<HomEntry> {
    let x = tp(p, "x");
    let y1 = tp(p, "y1");
    let one = TPoly::one(p);
    vec![HomEntry {
        file: lt_file(
            p,
            GuardKind::Scf,
            LtShape::Guarded {
                nn: 2,
                n: 1,
                qs: vec![vec![y1.clone(), x.clone()], vec![x.clone(), one.clone()]],
                zs: vec!["za".into()],
                inner: Box::new(LtShape::System(vec![tp(p, "za").add(&y1)])),
            },
        ),
        block: vec!["y1".to_string()],
        pivot: "y0".to_string(),
    }]
}

// ---------------------------------------------------------------------------
// delta-tame corpus with homogenisation exponents
// ---------------------------------------------------------------------------

pub struct DeltaHomEntry {
    pub file: FormulaFile,
    pub exponents: BTreeMap<String, u32>,
    pub pivot: String,
}

pub fn dcf_delta_tame(p: u64) -> Vec<DeltaHomEntry> {
    let x = tp(p, "x1");
    let y = tp(p, "x2");
    let entry = |dt: DeltaTame, exps: &[(&str, u32)]| DeltaHomEntry {
        file: file(LanguageTag::Dcf, p, dt.to_formula()),
        exponents: exps.iter().map(|(k, e)| (k.to_string(), *e)).collect(),
        pivot: "x0".to_string(),
    };
    vec![
        // pure differential system
        entry(
            DeltaTame { charp: p, chain: vec![], system: vec![x.derive().add(&x.pow(2))] },
            &[("x1", 1)],
        ),
        // one witness
        entry(
            DeltaTame {
                charp: p,
                chain: vec![("z1".into(), x.clone())],
                system: vec![tp(p, "z1").add(&x)],
            },
            &[("x1", 1)],
        ),
        // two witnesses, second chained on the first
        entry(
            DeltaTame {
                charp: p,
                chain: vec![
                    ("z1".into(), x.clone()),
                    ("z2".into(), tp(p, "z1").add(&y)),
                ],
                system: vec![tp(p, "z2").derive().mul(&x)],
            },
            &[("x1", 1), ("x2", 2)],
        ),
        // derivative inside the pth-power argument
        entry(
            DeltaTame {
                charp: p,
                chain: vec![("z1".into(), x.mul(&y))],
                system: vec![tp(p, "z1").pow(2).add(&y)],
            },
            &[("x1", 1), ("x2", 1)],
        ),
        // system mixing derivatives of both variables
        entry(
            DeltaTame {
                charp: p,
                chain: vec![],
                system: vec![x.derive().mul(&y).sub(&y.derive().mul(&x))],
            },
            &[("x1", 2), ("x2", 1)],
        ),
        // witness used under a derivative
        entry(
            DeltaTame {
                charp: p,
                chain: vec![("z1".into(), x.pow(2).add(&y))],
                system: vec![tp(p, "z1").derive().add(&tp(p, "z1").mul(&x))],
            },
            &[("x1", 1), ("x2", 1)],
        ),
    ]
}

// ---------------------------------------------------------------------------
// instance-reduction corpora
// ---------------------------------------------------------------------------

pub struct ClaimEntry {
    pub file: FormulaFile,
    /// parameter variables the instance point must assign
    pub params: Vec<String>,
}

/// Claim-shaped lambda-tame formulae: generalized guards over q(x^p, y).
pub fn scf_claim_instances(p: u64) -> Vec<ClaimEntry> {
    let xp = tp(p, "x").pow(p as u32);
    let y = tp(p, "y");
    let one = TPoly::one(p);
    let mk = |shape: LtShape| ClaimEntry {
        file: lt_file(p, GuardKind::Scf, shape),
        params: vec!["y".to_string()],
    };
    vec![
        // nn=1, n=1: q0 = x^p + y, q1 = y x^p
        mk(LtShape::Guarded {
            nn: 1,
            n: 1,
            qs: vec![vec![xp.add(&y)], vec![y.mul(&xp)]],
            zs: vec!["za".into()],
            inner: Box::new(LtShape::System(vec![tp(p, "za").mul(&tp(p, "x"))])),
        }),
        // nn=2, n=1: vector guards
        mk(LtShape::Guarded {
            nn: 2,
            n: 1,
            qs: vec![vec![y.clone(), xp.clone()], vec![xp.add(&y), one.clone()]],
            zs: vec!["za".into()],
            inner: Box::new(LtShape::System(vec![tp(p, "za").add(&y)])),
        }),
        // nn=1, n=2
        mk(LtShape::Guarded {
            nn: 1,
            n: 2,
            qs: vec![vec![y.clone()], vec![xp.clone()], vec![y.mul(&xp).add(&one)]],
            zs: vec!["za".into(), "zb".into()],
            inner: Box::new(LtShape::System(vec![tp(p, "za").add(&tp(p, "zb").mul(&tp(p, "x")))])),
        }),
        // degree 2 input: inner nest over the lambda values
        mk(LtShape::Guarded {
            nn: 1,
            n: 1,
            qs: vec![vec![y.clone()], vec![xp.clone()]],
            zs: vec!["za".into()],
            inner: Box::new(LtShape::Guarded {
                nn: 1,
                n: 1,
                qs: vec![vec![tp(p, "za")], vec![y.add(&one)]],
                zs: vec!["zb".into()],
                inner: Box::new(LtShape::System(vec![tp(p, "zb").add(&tp(p, "x"))])),
            }),
        }),
    ]
}

/// Claim-shaped delta-tame formulae: the leading pth-power argument sees
/// x only through p-th powers of differential monomials.
pub fn dcf_claim_instances(p: u64) -> Vec<ClaimEntry> {
    let e = p as u32;
    let x = tp(p, "x");
    let y = tp(p, "y");
    let mk = |dt: DeltaTame| ClaimEntry {
        file: file(LanguageTag::Dcf, p, dt.to_formula()),
        params: vec!["y".to_string()],
    };
    vec![
        mk(DeltaTame {
            charp: p,
            chain: vec![("z1".into(), x.pow(e).add(&y))],
            system: vec![tp(p, "z1").add(&x.mul_int(2))],
        }),
        mk(DeltaTame {
            charp: p,
            chain: vec![("z1".into(), x.derive().pow(e).mul(&y))],
            system: vec![tp(p, "z1").mul(&x).add(&y)],
        }),
        mk(DeltaTame {
            charp: p,
            chain: vec![
                ("z1".into(), x.pow(e).mul(&y).add(&y.pow(e))),
                ("z2".into(), tp(p, "z1").mul(&y).add(&x.pow(e))),
            ],
            system: vec![tp(p, "z2").add(&tp(p, "z1"))],
        }),
        mk(DeltaTame {
            charp: p,
            chain: vec![("z1".into(), x.pow(e))],
            system: vec![tp(p, "z1").derive().add(&y)],
        }),
    ]
}

// ---------------------------------------------------------------------------
// pair corpora
// ---------------------------------------------------------------------------

fn tame_file(t: &TameFormula) -> FormulaFile {
    file(LanguageTag::Pair, 0, t.to_formula())
}

/// Tame formulae for combination and linearization, linear and not.
pub fn pair_tame() -> Vec<FormulaFile> {
    let x = tp(0, "x");
    let y = tp(0, "y");
    let z = |n: &str| tp(0, n);
    let mk = |zetas: &[&str], polys: Vec<TPoly>| {
        tame_file(&TameFormula {
            charp: 0,
            zetas: zetas.iter().map(|s| s.to_string()).collect(),
            polys,
        })
    };
    vec![
        mk(&["za"], vec![z("za").mul(&x)]),
        mk(
            &["za", "zb"],
            vec![z("za").mul(&x).add(&z("zb").mul(&y)), z("za").mul(&y).add(&z("zb"))],
        ),
        mk(&["za"], vec![z("za").pow(2).mul(&x)]),
        mk(
            &["za", "zb"],
            vec![z("za").mul(&z("zb")).mul(&x).add(&z("za").pow(2).mul(&y))],
        ),
        mk(&["za", "zb"], vec![z("za").mul(&x).add(&z("zb").mul(&x.mul(&y)))]),
        mk(&["za"], vec![z("za").pow(3).mul(&x.add(&y))]),
    ]
}

/// Pairs of zeta-linear tame formulae for the Segre combination suite.
/// The two members bind disjoint block names so their conjunction and
/// disjunction stay hygienic.
pub fn pair_tame_pairs() -> Vec<(FormulaFile, FormulaFile)> {
    let x = tp(0, "x");
    let y = tp(0, "y");
    let z = |n: &str| tp(0, n);
    let simple = |name: &str, poly: TPoly| {
        tame_file(&TameFormula { charp: 0, zetas: vec![name.to_string()], polys: vec![poly] })
    };
    let two = |n1: &str, n2: &str, p1: TPoly, p2: TPoly| {
        tame_file(&TameFormula {
            charp: 0,
            zetas: vec![n1.to_string(), n2.to_string()],
            polys: vec![p1, p2],
        })
    };
    vec![
        (simple("za", z("za").mul(&x)), simple("zc", z("zc").mul(&y))),
        (
            simple("za", z("za").mul(&x.add(&y))),
            two("zc", "zd", z("zc").mul(&x).add(&z("zd").mul(&y)), z("zc").mul(&y)),
        ),
        (
            two("za", "zb", z("za").mul(&x).add(&z("zb").mul(&y)), z("za").mul(&y).add(&z("zb"))),
            simple("zc", z("zc").mul(&x.mul(&y))),
        ),
    ]
}

/// lambda_P-formulae (guarded dep/lamP nests) for the translation suite.
pub fn pair_lambda_p() -> Vec<FormulaFile> {
    let x = tp(0, "x");
    let y = tp(0, "y");
    let one = TPoly::one(0);
    let guard = |qs: Vec<Vec<TPoly>>, zs: Vec<&str>, inner: LtShape| {
        lt_file(
            0,
            GuardKind::Pair,
            LtShape::Guarded { nn: 1, n: qs.len() - 1, qs, zs: zs.iter().map(|s| s.to_string()).collect(), inner: Box::new(inner) },
        )
    };
    vec![
        // bare dep atom (degree-1 encoding)
        file(LanguageTag::Pair, 0, Formula::Dep { n: 2, args: vec![v("x"), v("y")] }),
        // polynomial equation (degree 0)
        file(LanguageTag::Pair, 0, eq0(add2(mul2(v("x"), v("y")), i(-1)))),
        // guarded, inner polynomial in the lambda values
        guard(
            vec![vec![one.clone()], vec![x.clone()], vec![y.clone()]],
            vec!["za", "zb"],
            LtShape::System(vec![tp(0, "za").add(&tp(0, "zb"))]),
        ),
        // guarded with a nonconstant inner polynomial
        guard(
            vec![vec![y.clone()], vec![x.clone()]],
            vec!["za"],
            LtShape::System(vec![tp(0, "za").mul(&x).add(&one)]),
        ),
        // conjunction
        lt_file(
            0,
            GuardKind::Pair,
            LtShape::Conj(vec![
                LtShape::System(vec![x.mul(&y)]),
                LtShape::Guarded {
                    nn: 1,
                    n: 1,
                    qs: vec![vec![one.clone()], vec![x.add(&y)]],
                    zs: vec!["za".into()],
                    inner: Box::new(LtShape::System(vec![tp(0, "za").add(&one)])),
                },
            ]),
        ),
        // degree 2 nest
        guard(
            vec![vec![y.clone()], vec![x.clone()]],
            vec!["za"],
            LtShape::Guarded {
                nn: 1,
                n: 1,
                qs: vec![vec![tp(0, "za")], vec![one.clone()]],
                zs: vec!["zb".into()],
                inner: Box::new(LtShape::System(vec![tp(0, "zb").add(&x)])),
            },
        ),
    ]
}

// ---------------------------------------------------------------------------
// the golden corpus
// ---------------------------------------------------------------------------

pub struct Named {
    pub name: String,
    pub file: FormulaFile,
}

fn push_all(out: &mut Vec<Named>, prefix: &str, files: Vec<FormulaFile>) {
    for (i, f) in files.into_iter().enumerate() {
        out.push(Named { name: format!("{prefix}_{:02}", i + 1), file: f });
    }
}

/// Every corpus entry under a stable name; covers all atom kinds and all
/// three languages.
pub fn golden() -> Vec<Named> {
    let mut out = Vec::new();
    push_all(&mut out, "scf_term", scf_term_equations(2));
    push_all(&mut out, "dcf_term", dcf_term_equations(3));
    push_all(&mut out, "scf_tame", scf_lambda_tame(2).into_iter().map(|e| e.file).collect());
    push_all(&mut out, "scf_tame_vec", scf_lambda_tame_vector(2).into_iter().map(|e| e.file).collect());
    push_all(&mut out, "scf_claim", scf_claim_instances(2).into_iter().map(|e| e.file).collect());
    push_all(&mut out, "dcf_tame", dcf_delta_tame(3).into_iter().map(|e| e.file).collect());
    push_all(&mut out, "dcf_claim", dcf_claim_instances(3).into_iter().map(|e| e.file).collect());
    push_all(&mut out, "pair_tame", pair_tame());
    push_all(&mut out, "pair_lamP", pair_lambda_p());
    // grammar coverage strays
    let misc = vec![
        file(LanguageTag::Pair, 0, Formula::PMem(v("x"))),
        file(LanguageTag::Pair, 0, Formula::Nonzero(add2(v("x"), i(1)))),
        file(LanguageTag::Pair, 0, Formula::Dep { n: 3, args: vec![v("x"), v("y"), mul2(v("x"), v("y"))] }),
        file(LanguageTag::Scf, 2, Formula::True),
        file(LanguageTag::Scf, 2, Formula::False),
        file(
            LanguageTag::Scf,
            2,
            Formula::Or(vec![
                Formula::not(eq0(v("x"))),
                Formula::And(vec![eq0(v("y")), Formula::Pdep { n: 2, args: vec![i(1), v("x")] }]),
            ]),
        ),
        file(
            LanguageTag::Scf,
            2,
            Formula::PdepN { nn: 2, n: 1, args: vec![v("x"), v("y")] },
        ),
        file(
            LanguageTag::Dcf,
            3,
            Formula::ExistsPth {
                var: "z".into(),
                pth: add2(pw(v("x"), 3), v("y")),
                body: Box::new(eq0(add2(v("z"), Term::neg(v("x"))))),
            },
        ),
        file(
            LanguageTag::Pair,
            0,
            Formula::ExistsP {
                vars: vec!["za".into()],
                body: Box::new(Formula::And(vec![
                    Formula::Nonzero(v("za")),
                    eq0(mul2(v("za"), pw(v("x"), 2))),
                ])),
            },
        ),
        file(LanguageTag::Pair, 0, eq0(Term::LamP { n: 1, i: 1, args: vec![v("x"), v("y")] })),
    ];
    push_all(&mut out, "misc", misc);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::sexpr::{parse_file, print_file};

    #[test]
    fn golden_corpus_is_large_enough() {
        let g = golden();
        assert!(g.len() >= 50, "only {} corpus entries", g.len());
        let per_lang = |l: LanguageTag| g.iter().filter(|n| n.file.lang == l).count();
        assert!(per_lang(LanguageTag::Scf) >= 15);
        assert!(per_lang(LanguageTag::Dcf) >= 15);
        assert!(per_lang(LanguageTag::Pair) >= 15);
    }

    #[test]
    fn golden_corpus_roundtrips_byte_exactly() {
        for entry in golden() {
            let text = print_file(&entry.file);
            let parsed = parse_file(&text).unwrap_or_else(|e| panic!("{}: {e}", entry.name));
            assert_eq!(print_file(&parsed), text, "roundtrip failed for {}", entry.name);
            assert_eq!(parsed, entry.file, "ast mismatch for {}", entry.name);
        }
    }

    #[test]
    fn disk_corpus_matches_generated() {
        let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
        let entries = golden();
        let on_disk = std::fs::read_dir(&dir).unwrap().count();
        assert_eq!(on_disk, entries.len(), "stale corpus directory");
        for entry in entries {
            let path = dir.join(format!("{}.eqf", entry.name));
            let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", entry.name));
            assert_eq!(text, print_file(&entry.file), "stale corpus file {}", entry.name);
        }
    }

    #[test]
    fn shaped_entries_are_recognized() {
        for e in scf_lambda_tame(2) {
            LambdaTame::from_formula(&e.file.formula, 2, GuardKind::Scf)
                .unwrap_or_else(|err| panic!("{err:?}"));
        }
        for e in dcf_delta_tame(3) {
            DeltaTame::from_formula(&e.file.formula, 3).unwrap();
        }
        for f in pair_tame() {
            TameFormula::from_formula(&f.formula, 0).unwrap();
        }
        for f in pair_lambda_p() {
            LambdaTame::from_formula(&f.formula, 0, GuardKind::Pair).unwrap();
        }
    }
}
