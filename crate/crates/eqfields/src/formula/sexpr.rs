//! The `.eqf` formula format: a header line fixing language and
//! characteristic, then one s-expression formula.
//!
//! ```text
//! ;; lang: scf  p: 2
//! (or (pdep 2 x y) (eq0 (+ (* x y) -1)))
//! ```
//!
//! Parsing accepts arbitrary whitespace and n-ary `+`/`*`; printing emits
//! the canonical single-line form with strictly binary `+`/`*`, so that
//! print . parse is the identity on printed text and parse . print is the
//! identity on ASTs.

use num_bigint::BigInt;

use super::{Formula, FormulaFile, LanguageTag, Term};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LParen,
    RParen,
    Sym(String),
    Int(BigInt),
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Lexer {
    fn new(src: &str, line_offset: usize) -> Self {
        Lexer { chars: src.chars().collect(), pos: 0, line: line_offset, col: 1 }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax { line: self.line, col: self.col, msg: msg.to_string() }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied();
        if let Some(c) = c {
            self.pos += 1;
            if c == '\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
        c
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>> {
        let mut out = Vec::new();
        loop {
            while matches!(self.peek(), Some(c) if c.is_whitespace()) {
                self.bump();
            }
            if self.peek() == Some(';') {
                while matches!(self.peek(), Some(c) if c != '\n') {
                    self.bump();
                }
                continue;
            }
            let (line, col) = (self.line, self.col);
            let Some(c) = self.peek() else {
                return Ok(out);
            };
            match c {
                '(' => {
                    self.bump();
                    out.push((Tok::LParen, line, col));
                }
                ')' => {
                    self.bump();
                    out.push((Tok::RParen, line, col));
                }
                _ => {
                    let start = self.pos;
                    while matches!(self.peek(), Some(ch) if !ch.is_whitespace() && ch != '(' && ch != ')' && ch != ';')
                    {
                        self.bump();
                    }
                    if start == self.pos {
                        return Err(self.err("unexpected character"));
                    }
                    let word: String = self.chars[start..self.pos].iter().collect();
                    let tok = if word.chars().next().map_or(false, |c| c.is_ascii_digit())
                        || (word.len() > 1 && word.starts_with('-') && word[1..].chars().all(|c| c.is_ascii_digit()))
                    {
                        match word.parse::<BigInt>() {
                            Ok(n) => Tok::Int(n),
                            Err(_) => return Err(Error::Syntax { line, col, msg: format!("bad integer '{word}'") }),
                        }
                    } else {
                        Tok::Sym(word)
                    };
                    out.push((tok, line, col));
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
enum SExp {
    Sym(String, usize, usize),
    Int(BigInt, usize, usize),
    List(Vec<SExp>, usize, usize),
}

impl SExp {
    fn pos(&self) -> (usize, usize) {
        match self {
            SExp::Sym(_, l, c) | SExp::Int(_, l, c) | SExp::List(_, l, c) => (*l, *c),
        }
    }
}

fn parse_sexp(toks: &[(Tok, usize, usize)], at: &mut usize) -> Result<SExp> {
    let Some((tok, line, col)) = toks.get(*at) else {
        return Err(Error::Syntax { line: 0, col: 0, msg: "unexpected end of input".into() });
    };
    *at += 1;
    match tok {
        Tok::Sym(s) => Ok(SExp::Sym(s.clone(), *line, *col)),
        Tok::Int(n) => Ok(SExp::Int(n.clone(), *line, *col)),
        Tok::LParen => {
            let mut items = Vec::new();
            loop {
                match toks.get(*at) {
                    Some((Tok::RParen, _, _)) => {
                        *at += 1;
                        return Ok(SExp::List(items, *line, *col));
                    }
                    Some(_) => items.push(parse_sexp(toks, at)?),
                    None => return Err(Error::Syntax { line: *line, col: *col, msg: "unclosed '('".into() }),
                }
            }
        }
        Tok::RParen => Err(Error::Syntax { line: *line, col: *col, msg: "unexpected ')'".into() }),
    }
}

fn syn(e: &SExp, msg: &str) -> Error {
    let (line, col) = e.pos();
    Error::Syntax { line, col, msg: msg.to_string() }
}

fn as_usize(e: &SExp) -> Result<usize> {
    match e {
        SExp::Int(n, ..) => usize::try_from(n.clone()).map_err(|_| syn(e, "expected a small natural number")),
        _ => Err(syn(e, "expected a natural number")),
    }
}

fn term_of(e: &SExp) -> Result<Term> {
    match e {
        SExp::Sym(s, ..) => Ok(Term::Var(s.clone())),
        SExp::Int(n, ..) => Ok(Term::Int(n.clone())),
        SExp::List(items, line, col) => {
            let Some(SExp::Sym(head, ..)) = items.first() else {
                return Err(Error::Syntax { line: *line, col: *col, msg: "term list must start with an operator".into() });
            };
            let rest = &items[1..];
            let nary = |rest: &[SExp], mk: fn(Term, Term) -> Term| -> Result<Term> {
                if rest.len() < 2 {
                    return Err(Error::Syntax { line: *line, col: *col, msg: "operator needs at least two operands".into() });
                }
                let mut parts: Vec<Term> = rest.iter().map(term_of).collect::<Result<_>>()?;
                let mut acc = parts.pop().unwrap();
                while let Some(p) = parts.pop() {
                    acc = mk(p, acc);
                }
                Ok(acc)
            };
            match head.as_str() {
                "+" => nary(rest, Term::add),
                "*" => nary(rest, Term::mul),
                "-" => {
                    if rest.len() != 1 {
                        return Err(Error::Syntax { line: *line, col: *col, msg: "unary minus takes one operand".into() });
                    }
                    Ok(Term::neg(term_of(&rest[0])?))
                }
                "^" => {
                    if rest.len() != 2 {
                        return Err(Error::Syntax { line: *line, col: *col, msg: "^ takes a base and an exponent".into() });
                    }
                    let e = as_usize(&rest[1])? as u32;
                    Ok(Term::pow(term_of(&rest[0])?, e))
                }
                "d" => {
                    if rest.len() != 1 {
                        return Err(Error::Syntax { line: *line, col: *col, msg: "d takes one operand".into() });
                    }
                    Ok(Term::D(Box::new(term_of(&rest[0])?)))
                }
                "s" => {
                    if rest.len() != 1 {
                        return Err(Error::Syntax { line: *line, col: *col, msg: "s takes one operand".into() });
                    }
                    Ok(Term::S(Box::new(term_of(&rest[0])?)))
                }
                "lam" => {
                    if rest.len() < 2 {
                        return Err(Error::Syntax { line: *line, col: *col, msg: "lam needs n, i and arguments".into() });
                    }
                    let n = as_usize(&rest[0])?;
                    let i = as_usize(&rest[1])?;
                    let args: Vec<Term> = rest[2..].iter().map(term_of).collect::<Result<_>>()?;
                    Ok(Term::Lam { n, i, args })
                }
                "lamN" => {
                    if rest.len() < 3 {
                        return Err(Error::Syntax { line: *line, col: *col, msg: "lamN needs N, n, i and arguments".into() });
                    }
                    let nn = as_usize(&rest[0])?;
                    let n = as_usize(&rest[1])?;
                    let i = as_usize(&rest[2])?;
                    let args: Vec<Term> = rest[3..].iter().map(term_of).collect::<Result<_>>()?;
                    Ok(Term::LamN { nn, n, i, args })
                }
                "lamP" => {
                    if rest.len() < 2 {
                        return Err(Error::Syntax { line: *line, col: *col, msg: "lamP needs n, i and arguments".into() });
                    }
                    let n = as_usize(&rest[0])?;
                    let i = as_usize(&rest[1])?;
                    let args: Vec<Term> = rest[2..].iter().map(term_of).collect::<Result<_>>()?;
                    Ok(Term::LamP { n, i, args })
                }
                other => Err(Error::Syntax { line: *line, col: *col, msg: format!("unknown term operator '{other}'") }),
            }
        }
    }
}

fn formula_of(e: &SExp) -> Result<Formula> {
    match e {
        SExp::Sym(s, line, col) => match s.as_str() {
            "true" => Ok(Formula::True),
            "false" => Ok(Formula::False),
            other => Err(Error::Syntax { line: *line, col: *col, msg: format!("unknown formula '{other}'") }),
        },
        SExp::Int(..) => Err(syn(e, "expected a formula")),
        SExp::List(items, line, col) => {
            let Some(SExp::Sym(head, ..)) = items.first() else {
                return Err(Error::Syntax { line: *line, col: *col, msg: "formula list must start with a keyword".into() });
            };
            let rest = &items[1..];
            let one_term = |rest: &[SExp], what: &str| -> Result<Term> {
                if rest.len() != 1 {
                    return Err(Error::Syntax { line: *line, col: *col, msg: format!("{what} takes one term") });
                }
                term_of(&rest[0])
            };
            match head.as_str() {
                "eq0" => Ok(Formula::Eq0(one_term(rest, "eq0")?)),
                "P" => Ok(Formula::PMem(one_term(rest, "P")?)),
                "nonzero" => Ok(Formula::Nonzero(one_term(rest, "nonzero")?)),
                "pdep" => {
                    if rest.is_empty() {
                        return Err(Error::Syntax { line: *line, col: *col, msg: "pdep needs n and terms".into() });
                    }
                    let n = as_usize(&rest[0])?;
                    let args: Vec<Term> = rest[1..].iter().map(term_of).collect::<Result<_>>()?;
                    Ok(Formula::Pdep { n, args })
                }
                "pdepN" => {
                    if rest.len() < 2 {
                        return Err(Error::Syntax { line: *line, col: *col, msg: "pdepN needs N, n and terms".into() });
                    }
                    let nn = as_usize(&rest[0])?;
                    let n = as_usize(&rest[1])?;
                    let args: Vec<Term> = rest[2..].iter().map(term_of).collect::<Result<_>>()?;
                    Ok(Formula::PdepN { nn, n, args })
                }
                "dep" => {
                    if rest.is_empty() {
                        return Err(Error::Syntax { line: *line, col: *col, msg: "dep needs n and terms".into() });
                    }
                    let n = as_usize(&rest[0])?;
                    let args: Vec<Term> = rest[1..].iter().map(term_of).collect::<Result<_>>()?;
                    Ok(Formula::Dep { n, args })
                }
                "and" | "or" => {
                    if rest.is_empty() {
                        return Err(Error::Syntax { line: *line, col: *col, msg: format!("{head} needs operands") });
                    }
                    let parts: Vec<Formula> = rest.iter().map(formula_of).collect::<Result<_>>()?;
                    Ok(if head == "and" { Formula::And(parts) } else { Formula::Or(parts) })
                }
                "not" => {
                    if rest.len() != 1 {
                        return Err(Error::Syntax { line: *line, col: *col, msg: "not takes one formula".into() });
                    }
                    Ok(Formula::not(formula_of(&rest[0])?))
                }
                "existsP" => {
                    if rest.len() != 2 {
                        return Err(Error::Syntax { line: *line, col: *col, msg: "existsP takes a variable list and a body".into() });
                    }
                    let SExp::List(vars, ..) = &rest[0] else {
                        return Err(syn(&rest[0], "existsP variables must be a list"));
                    };
                    let names: Vec<String> = vars
                        .iter()
                        .map(|v| match v {
                            SExp::Sym(s, ..) => Ok(s.clone()),
                            _ => Err(syn(v, "expected a variable name")),
                        })
                        .collect::<Result<_>>()?;
                    Ok(Formula::ExistsP { vars: names, body: Box::new(formula_of(&rest[1])?) })
                }
                "existsPth" => {
                    if rest.len() != 3 {
                        return Err(Error::Syntax { line: *line, col: *col, msg: "existsPth takes a variable, a term and a body".into() });
                    }
                    let SExp::Sym(var, ..) = &rest[0] else {
                        return Err(syn(&rest[0], "expected a variable name"));
                    };
                    Ok(Formula::ExistsPth {
                        var: var.clone(),
                        pth: term_of(&rest[1])?,
                        body: Box::new(formula_of(&rest[2])?),
                    })
                }
                other => Err(Error::Syntax { line: *line, col: *col, msg: format!("unknown formula keyword '{other}'") }),
            }
        }
    }
}

/// Parses a complete `.eqf` file (header + one formula) and validates it.
pub fn parse_file(text: &str) -> Result<FormulaFile> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(Error::Syntax { line: 1, col: 1, msg: "empty file".into() })?;
    let (lang, charp) = parse_header(header)?;
    let body: String = lines.collect::<Vec<_>>().join("\n");
    let toks = Lexer::new(&body, 2).tokens()?;
    let mut at = 0;
    let sexp = parse_sexp(&toks, &mut at)?;
    if at != toks.len() {
        let (_, line, col) = &toks[at];
        return Err(Error::Syntax { line: *line, col: *col, msg: "trailing input after formula".into() });
    }
    let formula = formula_of(&sexp)?;
    FormulaFile::new(lang, charp, formula)
}

fn parse_header(header: &str) -> Result<(LanguageTag, u64)> {
    let h = header.trim();
    let bad = || Error::Syntax { line: 1, col: 1, msg: "header must be ';; lang: scf|dcf|pair  p: <prime|0>'".into() };
    let rest = h.strip_prefix(";;").ok_or_else(bad)?.trim();
    let rest = rest.strip_prefix("lang:").ok_or_else(bad)?.trim();
    let mut parts = rest.split_whitespace();
    let lang = LanguageTag::from_name(parts.next().ok_or_else(bad)?).ok_or_else(bad)?;
    let ptag = parts.next().ok_or_else(bad)?;
    if ptag != "p:" {
        return Err(bad());
    }
    let p: u64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok((lang, p))
}

pub fn print_term(t: &Term) -> String {
    match t {
        Term::Var(v) => v.clone(),
        Term::Int(n) => n.to_string(),
        Term::Add(a, b) => format!("(+ {} {})", print_term(a), print_term(b)),
        Term::Mul(a, b) => format!("(* {} {})", print_term(a), print_term(b)),
        Term::Neg(a) => format!("(- {})", print_term(a)),
        Term::Pow(a, e) => format!("(^ {} {e})", print_term(a)),
        Term::D(a) => format!("(d {})", print_term(a)),
        Term::S(a) => format!("(s {})", print_term(a)),
        Term::Lam { n, i, args } => {
            let body: Vec<String> = args.iter().map(print_term).collect();
            format!("(lam {n} {i} {})", body.join(" "))
        }
        Term::LamN { nn, n, i, args } => {
            let body: Vec<String> = args.iter().map(print_term).collect();
            format!("(lamN {nn} {n} {i} {})", body.join(" "))
        }
        Term::LamP { n, i, args } => {
            let body: Vec<String> = args.iter().map(print_term).collect();
            format!("(lamP {n} {i} {})", body.join(" "))
        }
    }
}

pub fn print_formula(f: &Formula) -> String {
    let terms = |args: &[Term]| args.iter().map(print_term).collect::<Vec<_>>().join(" ");
    match f {
        Formula::True => "true".to_string(),
        Formula::False => "false".to_string(),
        Formula::Eq0(t) => format!("(eq0 {})", print_term(t)),
        Formula::PMem(t) => format!("(P {})", print_term(t)),
        Formula::Nonzero(t) => format!("(nonzero {})", print_term(t)),
        Formula::Pdep { n, args } => format!("(pdep {n} {})", terms(args)),
        Formula::PdepN { nn, n, args } => format!("(pdepN {nn} {n} {})", terms(args)),
        Formula::Dep { n, args } => format!("(dep {n} {})", terms(args)),
        Formula::And(fs) => format!("(and {})", fs.iter().map(print_formula).collect::<Vec<_>>().join(" ")),
        Formula::Or(fs) => format!("(or {})", fs.iter().map(print_formula).collect::<Vec<_>>().join(" ")),
        Formula::Not(g) => format!("(not {})", print_formula(g)),
        Formula::ExistsP { vars, body } => {
            format!("(existsP ({}) {})", vars.join(" "), print_formula(body))
        }
        Formula::ExistsPth { var, pth, body } => {
            format!("(existsPth {var} {} {})", print_term(pth), print_formula(body))
        }
    }
}

/// Canonical file text: header, formula line, trailing newline.
pub fn print_file(file: &FormulaFile) -> String {
    format!(";; lang: {}  p: {}\n{}\n", file.lang.name(), file.charp, print_formula(&file.formula))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let f = parse_file(";; lang: scf  p: 2\n(eq0 (+ (* x y1) -1))\n").unwrap();
        assert_eq!(f.lang, LanguageTag::Scf);
        assert_eq!(f.charp, 2);
        assert_eq!(
            f.formula,
            Formula::Eq0(Term::add(Term::mul(Term::var("x"), Term::var("y1")), Term::int(-1)))
        );

        let f = parse_file(";; lang: scf  p: 2\n(pdep 2 1 x)\n").unwrap();
        assert_eq!(f.formula, Formula::Pdep { n: 2, args: vec![Term::int(1), Term::var("x")] });

        let f = parse_file(";; lang: pair  p: 0\n(existsP (z) (and (nonzero z) (eq0 (* z x))))\n").unwrap();
        match f.formula {
            Formula::ExistsP { ref vars, .. } => assert_eq!(vars, &["z".to_string()]),
            _ => panic!("expected existsP"),
        }
    }

    #[test]
    fn roundtrip_is_byte_exact_on_printed_text() {
        let texts = [
            ";; lang: scf  p: 2\n(or (pdep 2 x y) (eq0 (+ (* x y) -1)))\n",
            ";; lang: dcf  p: 3\n(existsPth z x (eq0 (+ (^ z 2) (- (d x)))))\n",
            ";; lang: pair  p: 0\n(existsP (z1 z2) (and (or (nonzero z1) (nonzero z2)) (eq0 (+ (* z1 x) (* z2 y)))))\n",
        ];
        for t in texts {
            let f = parse_file(t).unwrap();
            assert_eq!(print_file(&f), t);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_file(";; lang: scf  p: 2\n(eq0 (frob x))\n").unwrap_err();
        match e {
            Error::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(parse_file(";; lang: scf  p: 2\n(pdep 2 x)\n").is_err()); // arity
        assert!(parse_file(";; lang: pair  p: 3\n(eq0 x)\n").is_err()); // pair is char 0
    }

    #[test]
    fn nary_sugar_folds_right() {
        let f = parse_file(";; lang: scf  p: 2\n(eq0 (+ x y z))\n").unwrap();
        assert_eq!(
            f.formula,
            Formula::Eq0(Term::add(Term::var("x"), Term::add(Term::var("y"), Term::var("z"))))
        );
    }
}
