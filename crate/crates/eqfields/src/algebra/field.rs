//! Field descriptors and exact elements of Q(t_1..t_k) and F_p(t_1..t_e).
//!
//! Elements are reduced fractions of multivariate polynomials; equality is
//! syntactic equality of the canonical form (gcd removed, denominator
//! monic in graded-lex order).

use std::sync::Arc;

use super::coeff::Coeff;
use super::poly::{format_poly, FPoly, Mono};
use crate::error::{Error, Result};

/// Describes the coefficient field: characteristic (0 for the rationals,
/// a prime p for F_p), named transcendentals, and an optional derivation
/// given by its values on the transcendentals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDescriptor {
    pub charp: u64,
    pub trans: Vec<String>,
    /// delta(t_i) as a raw fraction (num, den) over the same variables.
    pub derivation: Option<Vec<(FPoly, FPoly)>>,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldDescriptor {
    pub fn new(charp: u64, trans: &[&str]) -> Result<Self> {
        if charp != 0 && !is_prime(charp) {
            return Err(Error::WrongDescriptor(format!("characteristic {charp} is not 0 or prime")));
        }
        Ok(FieldDescriptor {
            charp,
            trans: trans.iter().map(|s| s.to_string()).collect(),
            derivation: None,
        })
    }

    pub fn rationals(trans: &[&str]) -> Self {
        Self::new(0, trans).unwrap()
    }

    pub fn prime_field(p: u64, trans: &[&str]) -> Result<Self> {
        Self::new(p, trans)
    }

    /// d/dt_1: the first transcendental maps to 1, all others to 0.
    pub fn with_default_derivation(mut self) -> Self {
        let k = self.trans.len();
        assert!(k >= 1, "derivation needs at least one transcendental");
        let mut images = Vec::with_capacity(k);
        for i in 0..k {
            let num = if i == 0 { FPoly::one(k, self.charp) } else { FPoly::zero(k, self.charp) };
            images.push((num, FPoly::one(k, self.charp)));
        }
        self.derivation = Some(images);
        self
    }

    pub fn nvars(&self) -> usize {
        self.trans.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.trans.iter().position(|t| t == name)
    }

    /// The standard p-basis monomials t^nu, 0 <= nu_i < p, in ascending
    /// graded-lex order. Requires positive characteristic.
    pub fn standard_p_basis(&self) -> Vec<Mono> {
        assert!(self.charp > 0);
        let p = self.charp as u32;
        let e = self.nvars();
        let total = (p as usize).pow(e as u32);
        let mut all = Vec::with_capacity(total);
        for idx in 0..total {
            let mut rem = idx;
            let mut exps = vec![0u32; e];
            for slot in (0..e).rev() {
                exps[slot] = (rem % p as usize) as u32;
                rem /= p as usize;
            }
            all.push(Mono(exps));
        }
        all.sort();
        all
    }
}

/// An exact element of the described field, in canonical reduced form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    pub desc: Arc<FieldDescriptor>,
    pub num: FPoly,
    pub den: FPoly,
}

impl FieldElement {
    fn canonical(desc: Arc<FieldDescriptor>, num: FPoly, den: FPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            let one = FPoly::one(desc.nvars(), desc.charp);
            return Ok(FieldElement { desc: desc.clone(), num, den: one });
        }
        let g = num.gcd(&den);
        let mut n = num.div_exact(&g).expect("gcd divides");
        let mut d = den.div_exact(&g).expect("gcd divides");
        let lc = d.leading().unwrap().1.clone();
        let inv = lc.inv().expect("leading coefficient nonzero");
        n = n.mul_coeff(&inv);
        d = d.mul_coeff(&inv);
        Ok(FieldElement { desc, num: n, den: d })
    }

    pub fn from_poly(desc: &Arc<FieldDescriptor>, num: FPoly) -> Self {
        let one = FPoly::one(desc.nvars(), desc.charp);
        Self::canonical(desc.clone(), num, one).unwrap()
    }

    pub fn from_fraction(desc: &Arc<FieldDescriptor>, num: FPoly, den: FPoly) -> Result<Self> {
        Self::canonical(desc.clone(), num, den)
    }

    pub fn zero(desc: &Arc<FieldDescriptor>) -> Self {
        Self::from_poly(desc, FPoly::zero(desc.nvars(), desc.charp))
    }

    pub fn one(desc: &Arc<FieldDescriptor>) -> Self {
        Self::from_poly(desc, FPoly::one(desc.nvars(), desc.charp))
    }

    pub fn from_int(desc: &Arc<FieldDescriptor>, n: i64) -> Self {
        Self::from_poly(desc, FPoly::constant(desc.nvars(), Coeff::from_int(desc.charp, n)))
    }

    pub fn transcendental(desc: &Arc<FieldDescriptor>, i: usize) -> Self {
        Self::from_poly(desc, FPoly::var(desc.nvars(), desc.charp, i))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn check(&self, other: &FieldElement) {
        assert_eq!(self.desc, other.desc, "field descriptor mismatch");
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.check(other);
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::canonical(self.desc.clone(), num, den).unwrap()
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement { desc: self.desc.clone(), num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.check(other);
        let num = self.num.mul(&other.num);
        let den = self.den.mul(&other.den);
        Self::canonical(self.desc.clone(), num, den).unwrap()
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::canonical(self.desc.clone(), self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other);
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> FieldElement {
        let mut acc = FieldElement::one(&self.desc);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn mul_int(&self, n: i64) -> FieldElement {
        self.mul(&FieldElement::from_int(&self.desc, n))
    }

    /// delta(a) via the quotient rule from the generator assignments.
    pub fn derive(&self) -> Result<FieldElement> {
        let images = self.desc.derivation.as_ref().ok_or(Error::NoDerivation)?;
        let dn = derive_poly(&self.desc, images, &self.num);
        let dd = derive_poly(&self.desc, images, &self.den);
        // (dn*den - num*dd) / den^2, all as fractions
        let den_e = FieldElement { desc: self.desc.clone(), num: self.den.clone(), den: FPoly::one(self.desc.nvars(), self.desc.charp) };
        let num_e = FieldElement { desc: self.desc.clone(), num: self.num.clone(), den: FPoly::one(self.desc.nvars(), self.desc.charp) };
        let top = dn.mul(&den_e).sub(&num_e.mul(&dd));
        top.div(&den_e.mul(&den_e))
    }

    pub fn derive_n(&self, n: usize) -> Result<FieldElement> {
        let mut a = self.clone();
        for _ in 0..n {
            a = a.derive()?;
        }
        Ok(a)
    }

    pub fn is_constant(&self) -> Result<bool> {
        Ok(self.derive()?.is_zero())
    }

    /// Exact p-th root if this element lies in K^p.
    pub fn pth_root(&self) -> Option<FieldElement> {
        let p = self.desc.charp;
        assert!(p > 0, "pth_root needs positive characteristic");
        let h = self.num.mul(&self.den.pow(p as u32 - 1));
        let root = h.pth_root()?;
        Some(Self::canonical(self.desc.clone(), root, self.den.clone()).unwrap())
    }

    /// Coordinates over the standard p-basis: the unique (zeta_nu) with
    /// a = sum zeta_nu^p * t^nu, computed by exponent-residue splitting.
    /// The supplied basis must be the standard monomial list.
    pub fn p_basis_coordinates(&self, basis: &[Mono]) -> Result<Vec<FieldElement>> {
        let p = self.desc.charp;
        if p == 0 {
            return Err(Error::WrongDescriptor("p-basis coordinates need characteristic p".into()));
        }
        let standard = self.desc.standard_p_basis();
        if basis != standard.as_slice() {
            return Err(Error::WrongDescriptor("basis is not the standard p-basis monomial list".into()));
        }
        let h = self.num.mul(&self.den.pow(p as u32 - 1));
        let mut split = h.residue_split();
        let mut out = Vec::with_capacity(basis.len());
        for m in basis {
            let part = split.remove(&m.0).unwrap_or_else(|| FPoly::zero(self.desc.nvars(), p));
            out.push(Self::canonical(self.desc.clone(), part, self.den.clone()).unwrap());
        }
        debug_assert!(split.is_empty(), "residues outside the standard basis");
        Ok(out)
    }

    /// Substitutes a field element for transcendental `i` (an embedding of
    /// rational functions; used e.g. for the shift t -> t + c).
    pub fn substitute_transcendental(&self, i: usize, value: &FieldElement) -> Result<FieldElement> {
        self.check(value);
        let n = compose_fraction(&self.desc, &self.num, i, value);
        let d = compose_fraction(&self.desc, &self.den, i, value);
        n.div(&d)
    }
}

fn derive_poly(desc: &Arc<FieldDescriptor>, images: &[(FPoly, FPoly)], p: &FPoly) -> FieldElement {
    let mut acc = FieldElement::zero(desc);
    for i in 0..desc.nvars() {
        let part = p.partial(i);
        if part.is_zero() {
            continue;
        }
        let (gn, gd) = &images[i];
        let gen = FieldElement::from_fraction(desc, gn.clone(), gd.clone()).unwrap();
        let part_e = FieldElement::from_poly(desc, part);
        acc = acc.add(&part_e.mul(&gen));
    }
    acc
}

fn compose_fraction(desc: &Arc<FieldDescriptor>, p: &FPoly, i: usize, value: &FieldElement) -> FieldElement {
    // f(.., t_i -> u/v, ..) = sum_m c * pre^alpha * (u/v)^e
    let mut acc = FieldElement::zero(desc);
    for (m, c) in &p.terms {
        let mut term = FieldElement::from_poly(desc, FPoly::constant(desc.nvars(), c.clone()));
        for (j, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if j == i {
                term = term.mul(&value.pow(e));
            } else {
                term = term.mul(&FieldElement::transcendental(desc, j).pow(e));
            }
        }
        acc = acc.add(&term);
    }
    acc
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names = &self.desc.trans;
        if self.den.is_one() {
            write!(f, "{}", format_poly(&self.num, names))
        } else {
            write!(f, "({})/({})", format_poly(&self.num, names), format_poly(&self.den, names))
        }
    }
}

// ---------------------------------------------------------------------------
// Element text parsing: standard infix polynomial/fraction syntax.
// ---------------------------------------------------------------------------

struct ElemParser<'a> {
    chars: Vec<char>,
    pos: usize,
    desc: &'a Arc<FieldDescriptor>,
}

impl<'a> ElemParser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { line: 1, col: self.pos + 1, msg: msg.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<FieldElement> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FieldElement> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some('/') => {
                    self.pos += 1;
                    acc = acc.div(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<FieldElement> {
        self.skip_ws();
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        self.skip_ws();
        if self.eat('^') {
            self.skip_ws();
            let e = self.nat()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn nat(&mut self) -> Result<u32> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected exponent"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<u32>().map_err(|_| self.err("exponent out of range"))
    }

    fn atom(&mut self) -> Result<FieldElement> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while matches!(self.peek(), Some(ch) if ch.is_ascii_digit()) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                let n: i64 = s.parse().map_err(|_| self.err("integer out of range"))?;
                Ok(FieldElement::from_int(self.desc, n))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(ch) if ch.is_alphanumeric() || ch == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.desc.var_index(&name) {
                    Some(i) => Ok(FieldElement::transcendental(self.desc, i)),
                    None => Err(self.err(&format!("unknown transcendental '{name}'"))),
                }
            }
            _ => Err(self.err("expected element")),
        }
    }
}

/// Parses the infix element syntax, e.g. `(t^2+1)/(2*t)`.
pub fn parse_element(desc: &Arc<FieldDescriptor>, text: &str) -> Result<FieldElement> {
    let mut p = ElemParser { chars: text.chars().collect(), pos: 0, desc };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qt() -> Arc<FieldDescriptor> {
        Arc::new(FieldDescriptor::rationals(&["t"]).with_default_derivation())
    }

    fn f3t() -> Arc<FieldDescriptor> {
        Arc::new(FieldDescriptor::prime_field(3, &["t"]).unwrap().with_default_derivation())
    }

    #[test]
    fn parse_print_roundtrip() {
        let d = qt();
        let e = parse_element(&d, "(t^2+1)/(2*t)").unwrap();
        let text = e.to_string();
        let e2 = parse_element(&d, &text).unwrap();
        assert_eq!(e, e2);
    }

    #[test]
    fn power_rule() {
        let d = qt();
        let t = FieldElement::transcendental(&d, 0);
        let dt2 = t.pow(2).derive().unwrap();
        assert_eq!(dt2, t.mul_int(2));
    }

    #[test]
    fn constant_derivative_is_zero() {
        let d = qt();
        assert!(FieldElement::from_int(&d, 7).derive().unwrap().is_zero());
    }

    #[test]
    fn char_p_kills_pth_powers() {
        let d = f3t();
        let t = FieldElement::transcendental(&d, 0);
        assert!(t.pow(3).derive().unwrap().is_zero());
    }

    #[test]
    fn quotient_rule() {
        let d = qt();
        let t = FieldElement::transcendental(&d, 0);
        let one = FieldElement::one(&d);
        // d/dt (1/t) = -1/t^2
        let e = one.div(&t).unwrap().derive().unwrap();
        let expect = one.neg().div(&t.pow(2)).unwrap();
        assert_eq!(e, expect);
    }

    #[test]
    fn p_basis_examples_f2() {
        let d = Arc::new(FieldDescriptor::prime_field(2, &["t"]).unwrap().with_default_derivation());
        let basis = d.standard_p_basis();
        let t = FieldElement::transcendental(&d, 0);
        let one = FieldElement::one(&d);
        // a = 1 -> (1, 0)
        let c = one.p_basis_coordinates(&basis).unwrap();
        assert_eq!(c, vec![one.clone(), FieldElement::zero(&d)]);
        // a = t -> (0, 1)
        let c = t.p_basis_coordinates(&basis).unwrap();
        assert_eq!(c, vec![FieldElement::zero(&d), one.clone()]);
        // a = t^2 -> (t, 0)
        let c = t.pow(2).p_basis_coordinates(&basis).unwrap();
        assert_eq!(c, vec![t.clone(), FieldElement::zero(&d)]);
    }

    #[test]
    fn p_basis_roundtrip_fraction() {
        let d = f3t();
        let basis = d.standard_p_basis();
        let t = FieldElement::transcendental(&d, 0);
        let a = t.pow(4).add(&FieldElement::from_int(&d, 2)).div(&t.pow(2).add(&FieldElement::one(&d))).unwrap();
        let coords = a.p_basis_coordinates(&basis).unwrap();
        let mut acc = FieldElement::zero(&d);
        for (m, z) in basis.iter().zip(&coords) {
            let mono = FieldElement::from_poly(&d, FPoly { nvars: 1, charp: 3, terms: [(m.clone(), Coeff::one(3))].into_iter().collect() });
            acc = acc.add(&z.pow(3).mul(&mono));
        }
        assert_eq!(acc, a);
    }

    #[test]
    fn pth_root_cases() {
        let d = f3t();
        let t = FieldElement::transcendental(&d, 0);
        assert_eq!(t.pow(3).pth_root(), Some(t.clone()));
        assert_eq!(t.pth_root(), None);
        let frac = t.pow(3).div(&t.pow(3).add(&FieldElement::one(&d)).pow(3)).unwrap();
        let r = frac.pth_root().unwrap();
        assert_eq!(r.pow(3), frac);
    }

    #[test]
    fn substitution_shift() {
        let d = qt();
        let t = FieldElement::transcendental(&d, 0);
        let shifted = t.pow(2).substitute_transcendental(0, &t.add(&FieldElement::one(&d))).unwrap();
        let expect = t.add(&FieldElement::one(&d)).pow(2);
        assert_eq!(shifted, expect);
    }
}
