//! Canonical polynomial form of terms: sparse polynomials with integer
//! coefficients (reduced mod p in positive characteristic) over atoms.
//! An atom is a differential indeterminate delta^m(x) or an opaque
//! function application (lam/lamN/s/lamP) with canonicalized arguments
//! and its own derivative order.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Term;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum AtomKind {
    Var(String),
    Lam { n: usize, i: usize, args: Vec<TPoly> },
    LamN { nn: usize, n: usize, i: usize, args: Vec<TPoly> },
    S(Box<TPoly>),
    LamP { n: usize, i: usize, args: Vec<TPoly> },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TAtom {
    pub kind: AtomKind,
    pub dord: u32,
}

/// Monomial: atom -> positive exponent, ordered by total degree then by
/// the entry list (graded-lexicographic with respect to the atom order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TMono(pub BTreeMap<TAtom, u32>);

impl TMono {
    pub fn one() -> Self {
        TMono(BTreeMap::new())
    }

    pub fn total_degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn mul(&self, other: &TMono) -> TMono {
        let mut out = self.0.clone();
        for (a, e) in &other.0 {
            *out.entry(a.clone()).or_insert(0) += e;
        }
        TMono(out)
    }
}

impl Ord for TMono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for TMono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TPoly {
    pub charp: u64,
    pub terms: BTreeMap<TMono, BigInt>,
}

fn reduce(charp: u64, n: &BigInt) -> BigInt {
    if charp == 0 {
        n.clone()
    } else {
        let m = BigInt::from(charp);
        let mut r = n % &m;
        if r.is_negative() {
            r += &m;
        }
        r
    }
}

impl TPoly {
    pub fn zero(charp: u64) -> Self {
        TPoly { charp, terms: BTreeMap::new() }
    }

    pub fn int(charp: u64, n: i64) -> Self {
        Self::bigint(charp, &BigInt::from(n))
    }

    pub fn bigint(charp: u64, n: &BigInt) -> Self {
        let mut p = Self::zero(charp);
        p.insert(TMono::one(), reduce(charp, n));
        p
    }

    pub fn one(charp: u64) -> Self {
        Self::int(charp, 1)
    }

    pub fn var(charp: u64, name: &str) -> Self {
        Self::dvar(charp, name, 0)
    }

    pub fn dvar(charp: u64, name: &str, dord: u32) -> Self {
        Self::atom(charp, TAtom { kind: AtomKind::Var(name.to_string()), dord })
    }

    pub fn atom(charp: u64, a: TAtom) -> Self {
        let mut p = Self::zero(charp);
        let mut m = BTreeMap::new();
        m.insert(a, 1);
        p.insert(TMono(m), BigInt::one());
        p
    }

    fn insert(&mut self, m: TMono, c: BigInt) {
        let c = reduce(self.charp, &c);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = reduce(self.charp, &(e.get() + &c));
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().map_or(false, |(m, c)| m.total_degree() == 0 && c.is_one())
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.total_degree() == 0 {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn add(&self, other: &TPoly) -> TPoly {
        debug_assert_eq!(self.charp, other.charp);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TPoly) -> TPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TPoly {
        let mut out = TPoly::zero(self.charp);
        for (m, c) in &self.terms {
            out.insert(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        debug_assert_eq!(self.charp, other.charp);
        let mut out = TPoly::zero(self.charp);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_int(&self, n: i64) -> TPoly {
        self.mul(&TPoly::int(self.charp, n))
    }

    pub fn pow(&self, e: u32) -> TPoly {
        let mut acc = TPoly::one(self.charp);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal derivation: Leibniz on monomials; every atom is treated as
    /// a differential indeterminate whose derivative bumps `dord`.
    pub fn derive(&self) -> TPoly {
        let mut out = TPoly::zero(self.charp);
        for (m, c) in &self.terms {
            for (a, &e) in &m.0 {
                // d(a^e) = e a^{e-1} a'
                let mut rest = m.0.clone();
                if e == 1 {
                    rest.remove(a);
                } else {
                    rest.insert(a.clone(), e - 1);
                }
                let bumped = TAtom { kind: a.kind.clone(), dord: a.dord + 1 };
                *rest.entry(bumped).or_insert(0) += 1;
                out.insert(TMono(rest), c * BigInt::from(e));
            }
        }
        out
    }

    pub fn derive_n(&self, n: u32) -> TPoly {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.derive();
        }
        p
    }

    /// Rebuilds the polynomial, offering every atom (bottom-up, after its
    /// arguments have been rebuilt) to `f`; a `Some` image replaces the
    /// atom entirely (the image is raised to the atom's power).
    pub fn map_atoms(&self, f: &mut impl FnMut(&TAtom) -> Option<TPoly>) -> TPoly {
        let mut out = TPoly::zero(self.charp);
        for (m, c) in &self.terms {
            let mut term = TPoly::bigint(self.charp, c);
            for (a, &e) in &m.0 {
                let rebuilt_kind = match &a.kind {
                    AtomKind::Var(v) => AtomKind::Var(v.clone()),
                    AtomKind::Lam { n, i, args } => AtomKind::Lam {
                        n: *n,
                        i: *i,
                        args: args.iter().map(|p| p.map_atoms(f)).collect(),
                    },
                    AtomKind::LamN { nn, n, i, args } => AtomKind::LamN {
                        nn: *nn,
                        n: *n,
                        i: *i,
                        args: args.iter().map(|p| p.map_atoms(f)).collect(),
                    },
                    AtomKind::S(q) => AtomKind::S(Box::new(q.map_atoms(f))),
                    AtomKind::LamP { n, i, args } => AtomKind::LamP {
                        n: *n,
                        i: *i,
                        args: args.iter().map(|p| p.map_atoms(f)).collect(),
                    },
                };
                let rebuilt = TAtom { kind: rebuilt_kind, dord: a.dord };
                let factor = match f(&rebuilt) {
                    Some(image) => image,
                    None => TPoly::atom(self.charp, rebuilt),
                };
                term = term.mul(&factor.pow(e));
            }
            out = out.add(&term);
        }
        out
    }

    /// Substitutes polynomials for variables. A variable occurrence of
    /// derivative order m receives the m-th formal derivative of its image.
    pub fn subst_vars(&self, map: &BTreeMap<String, TPoly>) -> TPoly {
        self.map_atoms(&mut |a| match &a.kind {
            AtomKind::Var(v) => map.get(v).map(|img| img.derive_n(a.dord)),
            _ => None,
        })
    }

    pub fn rename_var(&self, from: &str, to: &str) -> TPoly {
        let mut map = BTreeMap::new();
        map.insert(from.to_string(), TPoly::var(self.charp, to));
        self.subst_vars(&map)
    }

    /// True when every atom is a plain variable of derivative order 0.
    pub fn is_plain_poly(&self) -> bool {
        self.atoms().iter().all(|a| matches!(a.kind, AtomKind::Var(_)) && a.dord == 0)
    }

    /// True when every atom is a variable (any derivative order).
    pub fn is_diff_poly(&self) -> bool {
        self.atoms().iter().all(|a| matches!(a.kind, AtomKind::Var(_)))
    }

    pub fn atoms(&self) -> BTreeSet<TAtom> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            for a in m.0.keys() {
                out.insert(a.clone());
            }
        }
        out
    }

    /// All atoms including those nested inside argument polynomials.
    pub fn atoms_deep(&self) -> BTreeSet<TAtom> {
        let mut out = BTreeSet::new();
        self.map_atoms(&mut |a| {
            out.insert(a.clone());
            None
        });
        out
    }

    pub fn count_lam_atoms(&self) -> usize {
        self.atoms_deep()
            .iter()
            .filter(|a| matches!(a.kind, AtomKind::Lam { .. } | AtomKind::LamN { .. }))
            .count()
    }

    pub fn count_s_atoms(&self) -> usize {
        self.atoms_deep().iter().filter(|a| matches!(a.kind, AtomKind::S(_))).count()
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.atoms_deep()
            .iter()
            .filter_map(|a| match &a.kind {
                AtomKind::Var(v) => Some(v.clone()),
                _ => None,
            })
            .collect()
    }

    /// Degree of a monomial restricted to variable atoms in `block`
    /// (counting every derivative order).
    fn block_degree(m: &TMono, block: &BTreeSet<String>) -> u32 {
        m.0.iter()
            .filter(|(a, _)| matches!(&a.kind, AtomKind::Var(v) if block.contains(v)))
            .map(|(_, &e)| e)
            .sum()
    }

    pub fn degree_in_block(&self, block: &BTreeSet<String>) -> u32 {
        self.terms.keys().map(|m| Self::block_degree(m, block)).max().unwrap_or(0)
    }

    /// Some(d) when every monomial has block-degree d (the zero polynomial
    /// is homogeneous of degree 0).
    pub fn homogeneous_block_degree(&self, block: &BTreeSet<String>) -> Option<u32> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = Self::block_degree(m, block);
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    /// q'(x, pivot, y) = pivot^N * q(x, y/pivot) as pure monomial surgery;
    /// requires N at least the block degree and no block variable hidden
    /// inside non-variable atoms.
    pub fn homogenize_block(&self, block: &BTreeSet<String>, pivot: &str, bign: u32) -> Result<TPoly> {
        for a in self.atoms_deep() {
            match &a.kind {
                AtomKind::Var(_) => {}
                _ => {
                    let inner: BTreeSet<String> = match &a.kind {
                        AtomKind::Lam { args, .. } | AtomKind::LamN { args, .. } | AtomKind::LamP { args, .. } => {
                            args.iter().flat_map(|p| p.variables()).collect()
                        }
                        AtomKind::S(q) => q.variables(),
                        AtomKind::Var(_) => unreachable!(),
                    };
                    if inner.iter().any(|v| block.contains(v)) {
                        return Err(Error::ShapeViolation(
                            "homogenisation block variable occurs inside a function atom".into(),
                        ));
                    }
                }
            }
        }
        let mut out = TPoly::zero(self.charp);
        let pivot_atom = TAtom { kind: AtomKind::Var(pivot.to_string()), dord: 0 };
        for (m, c) in &self.terms {
            let d = Self::block_degree(m, block);
            if d > bign {
                return Err(Error::ShapeViolation(format!(
                    "homogenisation exponent {bign} is below the block degree {d}"
                )));
            }
            let mut mm = m.0.clone();
            if bign > d {
                *mm.entry(pivot_atom.clone()).or_insert(0) += bign - d;
            }
            out.insert(TMono(mm), c.clone());
        }
        Ok(out)
    }

    /// Splits off pth-power x-structure: every monomial must have all its
    /// variable exponents (and no other atoms) divisible by p in `vars`.
    pub fn strip_pth_powers(&self, vars: &BTreeSet<String>) -> Option<TPoly> {
        let p = self.charp as u32;
        assert!(p > 0);
        let mut out = TPoly::zero(self.charp);
        for (m, c) in &self.terms {
            let mut mm = BTreeMap::new();
            for (a, &e) in &m.0 {
                match &a.kind {
                    AtomKind::Var(v) if vars.contains(v) => {
                        if e % p != 0 {
                            return None;
                        }
                        if e / p > 0 {
                            mm.insert(a.clone(), e / p);
                        }
                    }
                    _ => {
                        mm.insert(a.clone(), e);
                    }
                }
            }
            out.insert(TMono(mm), c.clone());
        }
        Some(out)
    }
}

/// Canonicalizes a term to its polynomial form.
pub fn term_to_tpoly(t: &Term, charp: u64) -> TPoly {
    match t {
        Term::Var(v) => TPoly::var(charp, v),
        Term::Int(n) => TPoly::bigint(charp, n),
        Term::Add(a, b) => term_to_tpoly(a, charp).add(&term_to_tpoly(b, charp)),
        Term::Mul(a, b) => term_to_tpoly(a, charp).mul(&term_to_tpoly(b, charp)),
        Term::Neg(a) => term_to_tpoly(a, charp).neg(),
        Term::Pow(a, e) => term_to_tpoly(a, charp).pow(*e),
        Term::D(a) => term_to_tpoly(a, charp).derive(),
        Term::S(a) => TPoly::atom(charp, TAtom { kind: AtomKind::S(Box::new(term_to_tpoly(a, charp))), dord: 0 }),
        Term::Lam { n, i, args } => TPoly::atom(
            charp,
            TAtom {
                kind: AtomKind::Lam { n: *n, i: *i, args: args.iter().map(|a| term_to_tpoly(a, charp)).collect() },
                dord: 0,
            },
        ),
        Term::LamN { nn, n, i, args } => TPoly::atom(
            charp,
            TAtom {
                kind: AtomKind::LamN {
                    nn: *nn,
                    n: *n,
                    i: *i,
                    args: args.iter().map(|a| term_to_tpoly(a, charp)).collect(),
                },
                dord: 0,
            },
        ),
        Term::LamP { n, i, args } => TPoly::atom(
            charp,
            TAtom {
                kind: AtomKind::LamP { n: *n, i: *i, args: args.iter().map(|a| term_to_tpoly(a, charp)).collect() },
                dord: 0,
            },
        ),
    }
}

fn atom_to_term(a: &TAtom) -> Term {
    let base = match &a.kind {
        AtomKind::Var(v) => Term::Var(v.clone()),
        AtomKind::Lam { n, i, args } => Term::Lam { n: *n, i: *i, args: args.iter().map(tpoly_to_term).collect() },
        AtomKind::LamN { nn, n, i, args } => {
            Term::LamN { nn: *nn, n: *n, i: *i, args: args.iter().map(tpoly_to_term).collect() }
        }
        AtomKind::S(q) => Term::S(Box::new(tpoly_to_term(q))),
        AtomKind::LamP { n, i, args } => Term::LamP { n: *n, i: *i, args: args.iter().map(tpoly_to_term).collect() },
    };
    let mut t = base;
    for _ in 0..a.dord {
        t = Term::D(Box::new(t));
    }
    t
}

/// Canonical term of a polynomial: monomials from the largest graded-lex
/// monomial down, right-nested sums and products.
pub fn tpoly_to_term(p: &TPoly) -> Term {
    if p.is_zero() {
        return Term::int(0);
    }
    let mut monos: Vec<Term> = Vec::new();
    for (m, c) in p.terms.iter().rev() {
        let mut factors: Vec<Term> = Vec::new();
        for (a, &e) in &m.0 {
            let base = atom_to_term(a);
            factors.push(if e == 1 { base } else { Term::pow(base, e) });
        }
        let body = factors.into_iter().reduce(|x, y| Term::mul(x, y));
        let term = match body {
            None => Term::Int(c.clone()),
            Some(b) => {
                if c.is_one() {
                    b
                } else {
                    Term::mul(Term::Int(c.clone()), b)
                }
            }
        };
        monos.push(term);
    }
    let mut acc = monos.pop().unwrap();
    while let Some(t) = monos.pop() {
        acc = Term::add(t, acc);
    }
    acc
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn tpoly_det(rows: &[Vec<TPoly>], charp: u64) -> TPoly {
    let n = rows.len();
    if n == 0 {
        return TPoly::one(charp);
    }
    assert!(rows.iter().all(|r| r.len() == n), "square matrix");
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut acc = TPoly::zero(charp);
    for (j, entry) in rows[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<TPoly>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let cof = entry.mul(&tpoly_det(&minor, charp));
        acc = if j % 2 == 0 { acc.add(&cof) } else { acc.sub(&cof) };
    }
    acc
}

/// Classical adjugate over the polynomial ring.
pub fn tpoly_adjugate(rows: &[Vec<TPoly>], charp: u64) -> Vec<Vec<TPoly>> {
    let n = rows.len();
    if n == 1 {
        return vec![vec![TPoly::one(charp)]];
    }
    let mut adj = vec![vec![TPoly::zero(charp); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<TPoly>> = rows
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != i)
                .map(|(_, row)| {
                    row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect()
                })
                .collect();
            let c = tpoly_det(&minor, charp);
            adj[j][i] = if (i + j) % 2 == 0 { c } else { c.neg() };
        }
    }
    adj
}

/// Wronskian matrix rows delta^i(q_j) of polynomials, expanded symbolically.
pub fn tpoly_wronskian_matrix(qs: &[TPoly], _charp: u64) -> Vec<Vec<TPoly>> {
    let k = qs.len();
    let mut rows = Vec::with_capacity(k);
    let mut cur: Vec<TPoly> = qs.to_vec();
    for i in 0..k {
        if i > 0 {
            cur = cur.iter().map(TPoly::derive).collect();
        }
        rows.push(cur.clone());
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_equality() {
        // x + x == 2x, and (x+1)^2 == x^2 + 2x + 1
        let x = Term::var("x");
        let a = term_to_tpoly(&Term::add(x.clone(), x.clone()), 0);
        let b = term_to_tpoly(&Term::mul(Term::int(2), x.clone()), 0);
        assert_eq!(a, b);
        let sq = term_to_tpoly(&Term::pow(Term::add(x.clone(), Term::int(1)), 2), 0);
        let expand = term_to_tpoly(
            &Term::add(Term::pow(x.clone(), 2), Term::add(Term::mul(Term::int(2), x.clone()), Term::int(1))),
            0,
        );
        assert_eq!(sq, expand);
    }

    #[test]
    fn char_p_reduction() {
        let x = Term::var("x");
        let three_x = term_to_tpoly(&Term::mul(Term::int(3), x.clone()), 3);
        assert!(three_x.is_zero());
    }

    #[test]
    fn derivation_leibniz_and_pth_powers() {
        let x = TPoly::var(3, "x");
        // d(x^3) = 3 x^2 x' = 0 in characteristic 3
        assert!(x.pow(3).derive().is_zero());
        // d(x^2) = 2 x x'
        let d = x.pow(2).derive();
        let expect = x.mul(&TPoly::dvar(3, "x", 1)).mul_int(2);
        assert_eq!(d, expect);
    }

    #[test]
    fn term_roundtrip_via_canonical_form() {
        let t = Term::add(
            Term::mul(Term::int(2), Term::pow(Term::var("x"), 2)),
            Term::mul(Term::var("y"), Term::var("x")),
        );
        let p = term_to_tpoly(&t, 0);
        let t2 = tpoly_to_term(&p);
        assert_eq!(term_to_tpoly(&t2, 0), p);
    }

    #[test]
    fn subst_respects_derivative_order() {
        // substituting x -> y^2 into d(x) gives 2 y y'
        let dx = TPoly::dvar(0, "x", 1);
        let mut map = BTreeMap::new();
        map.insert("x".to_string(), TPoly::var(0, "y").pow(2));
        let img = dx.subst_vars(&map);
        let expect = TPoly::var(0, "y").mul(&TPoly::dvar(0, "y", 1)).mul_int(2);
        assert_eq!(img, expect);
    }

    #[test]
    fn homogenize_block_surgery() {
        // q = x*y1 - 1 over block {y1}, N = 1: pivot^1 * q(x, y1/pivot) = x*y1 - pivot
        let q = TPoly::var(0, "x").mul(&TPoly::var(0, "y1")).sub(&TPoly::one(0));
        let block: BTreeSet<String> = ["y1".to_string()].into_iter().collect();
        let h = q.homogenize_block(&block, "y0", 1).unwrap();
        let expect = TPoly::var(0, "x").mul(&TPoly::var(0, "y1")).sub(&TPoly::var(0, "y0"));
        assert_eq!(h, expect);
    }

    #[test]
    fn dets_and_adjugates() {
        let a = TPoly::var(0, "a");
        let b = TPoly::var(0, "b");
        let c = TPoly::var(0, "c");
        let d = TPoly::var(0, "d");
        let m = vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]];
        let det = tpoly_det(&m, 0);
        assert_eq!(det, a.mul(&d).sub(&b.mul(&c)));
        let adj = tpoly_adjugate(&m, 0);
        assert_eq!(adj[0][0], d);
        assert_eq!(adj[0][1], b.neg());
        assert_eq!(adj[1][0], c.neg());
        assert_eq!(adj[1][1], a);
    }

    #[test]
    fn wronskian_of_one_and_x() {
        // W(1, x) = det [[1, x], [0, x']] = x'
        let one = TPoly::one(3);
        let x = TPoly::var(3, "x");
        let rows = tpoly_wronskian_matrix(&[one, x], 3);
        let w = tpoly_det(&rows, 3);
        assert_eq!(w, TPoly::dvar(3, "x", 1));
    }

    #[test]
    fn strip_pth_powers_works() {
        // x^2*y + y^3 in char 2 with vars {x}: -> x*y + y^3
        let p = TPoly::var(2, "x").pow(2).mul(&TPoly::var(2, "y")).add(&TPoly::var(2, "y").pow(3));
        let vars: BTreeSet<String> = ["x".to_string()].into_iter().collect();
        let stripped = p.strip_pth_powers(&vars).unwrap();
        let expect = TPoly::var(2, "x").mul(&TPoly::var(2, "y")).add(&TPoly::var(2, "y").pow(3));
        assert_eq!(stripped, expect);
        // x*y is not a pth power in x
        let bad = TPoly::var(2, "x").mul(&TPoly::var(2, "y"));
        assert!(bad.strip_pth_powers(&vars).is_none());
    }
}
