//! Sparse multivariate polynomials over an exact base field, stored in
//! graded-lexicographic order so every polynomial has one canonical form.

use std::collections::BTreeMap;

use super::coeff::Coeff;


/// Exponent vector with graded-lex ordering: total degree first, then
/// lexicographic with the first variable most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Mono(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` variables. The zero polynomial has an empty
/// term map; all stored coefficients are nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FPoly {
    pub nvars: usize,
    pub charp: u64,
    pub terms: BTreeMap<Mono, Coeff>,
}

impl FPoly {
    pub fn zero(nvars: usize, charp: u64) -> Self {
        FPoly { nvars, charp, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Coeff) -> Self {
        let charp = c.characteristic();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(nvars), c);
        }
        FPoly { nvars, charp, terms }
    }

    pub fn one(nvars: usize, charp: u64) -> Self {
        Self::constant(nvars, Coeff::one(charp))
    }

    pub fn var(nvars: usize, charp: u64, i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono::var(nvars, i), Coeff::one(charp));
        FPoly { nvars, charp, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().map_or(false, |(m, c)| m.total_degree() == 0 && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.total_degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Coeff> {
        if self.is_zero() {
            Some(Coeff::zero(self.charp))
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::total_degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    fn insert_term(&mut self, m: Mono, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &FPoly) -> FPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &FPoly) -> FPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FPoly {
        FPoly {
            nvars: self.nvars,
            charp: self.charp,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &FPoly) -> FPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = FPoly::zero(self.nvars, self.charp);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn mul_coeff(&self, c: &Coeff) -> FPoly {
        if c.is_zero() {
            return FPoly::zero(self.nvars, self.charp);
        }
        FPoly {
            nvars: self.nvars,
            charp: self.charp,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k.mul(c))).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> FPoly {
        FPoly {
            nvars: self.nvars,
            charp: self.charp,
            terms: self.terms.iter().map(|(m0, c)| (m0.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> FPoly {
        let mut acc = FPoly::one(self.nvars, self.charp);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn leading(&self) -> Option<(&Mono, &Coeff)> {
        self.terms.iter().next_back()
    }

    /// Divides by the leading coefficient so the top graded-lex term is 1.
    pub fn monic(&self) -> FPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("leading coefficient nonzero");
                self.mul_coeff(&inv)
            }
        }
    }

    /// Exact division; returns None when the remainder is nonzero.
    pub fn div_exact(&self, d: &FPoly) -> Option<FPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = FPoly::zero(self.nvars, self.charp);
        let (dm, dc) = {
            let (m, c) = d.leading().unwrap();
            (m.clone(), c.clone())
        };
        let dcinv = dc.inv().ok()?;
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            if !dm.divides(&rm) {
                return None;
            }
            let qm = rm.div(&dm);
            let qc = rc.mul(&dcinv);
            let mut t = FPoly::zero(self.nvars, self.charp);
            t.insert_term(qm, qc);
            rem = rem.sub(&t.mul(d));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> FPoly {
        let mut out = FPoly::zero(self.nvars, self.charp);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            let factor = Coeff::from_int(self.charp, e as i64);
            out.insert_term(m2, c.mul(&factor));
        }
        out
    }

    /// Substitutes polynomials for every variable (used for shifts like
    /// t -> t + c).
    pub fn compose(&self, images: &[FPoly]) -> FPoly {
        assert_eq!(images.len(), self.nvars);
        let nv = images.first().map_or(self.nvars, |p| p.nvars);
        let mut out = FPoly::zero(nv, self.charp);
        for (m, c) in &self.terms {
            let mut term = FPoly::constant(nv, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e));
                }
            }
            out = out.add(&term);
        }
        out
    }

    fn occurring_vars(&self) -> Vec<usize> {
        let mut occ = vec![false; self.nvars];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    occ[i] = true;
                }
            }
        }
        occ.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
    }

    /// Views the polynomial as univariate in `v`; index d holds the
    /// coefficient polynomial of v^d (with v zeroed out).
    fn univar_coeffs(&self, v: usize) -> Vec<FPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![FPoly::zero(self.nvars, self.charp); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[v] as usize;
            let mut m2 = m.clone();
            m2.0[v] = 0;
            out[e].insert_term(m2, c.clone());
        }
        out
    }

    /// Monic gcd. Univariate inputs run the Euclidean algorithm; genuinely
    /// multivariate ones use a primitive PRS on the top occurring variable.
    pub fn gcd(&self, other: &FPoly) -> FPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let mut vars = self.occurring_vars();
        for v in other.occurring_vars() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        vars.sort_unstable();
        match vars.len() {
            0 => FPoly::one(self.nvars, self.charp),
            1 => self.gcd_univar(other, vars[0]),
            _ => self.gcd_multivar(other, *vars.last().unwrap()),
        }
    }

    fn gcd_univar(&self, other: &FPoly, v: usize) -> FPoly {
        if self.charp == 0 {
            return self.gcd_univar_primitive(other, v);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem_univar(&b, v);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Dense integer coefficient view of a univariate polynomial in v,
    /// cleared of rational denominators and integer content.
    fn primitive_int_coeffs(&self, v: usize) -> Vec<num_bigint::BigInt> {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::{One, Signed, Zero};
        let d = self.degree_in(v) as usize;
        let mut dens: BigInt = BigInt::one();
        for c in self.terms.values() {
            let Coeff::Q(q) = c else { unreachable!("characteristic 0") };
            dens = dens.lcm(q.denom());
        }
        let mut out = vec![BigInt::zero(); d + 1];
        for (m, c) in &self.terms {
            let Coeff::Q(q) = c else { unreachable!() };
            out[m.0[v] as usize] += q.numer() * (&dens / q.denom());
        }
        let mut content = BigInt::zero();
        for c in &out {
            content = content.gcd(c);
        }
        if !content.is_zero() && !content.is_one() {
            for c in &mut out {
                *c /= &content;
            }
        }
        if out.iter().last().map_or(false, |c| c.is_negative()) {
            for c in &mut out {
                *c = -c.clone();
            }
        }
        out
    }

    /// Primitive pseudo-remainder sequence over the integers; keeps the
    /// coefficient growth of the rational Euclidean algorithm in check.
    fn gcd_univar_primitive(&self, other: &FPoly, v: usize) -> FPoly {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::{One, Signed, Zero};
        fn trim(a: &mut Vec<BigInt>) {
            while a.last().map_or(false, |c| c.is_zero()) {
                a.pop();
            }
        }
        fn make_primitive(a: &mut Vec<BigInt>) {
            trim(a);
            let mut content = BigInt::zero();
            for c in a.iter() {
                content = content.gcd(c);
            }
            if !content.is_zero() && !content.is_one() {
                for c in a.iter_mut() {
                    *c /= &content;
                }
            }
            if a.last().map_or(false, |c| c.is_negative()) {
                for c in a.iter_mut() {
                    *c = -c.clone();
                }
            }
        }
        // pseudo-remainder: lc(b)^(da-db+1) * a mod b
        fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
            let mut r = a.to_vec();
            let db = b.len() - 1;
            let lcb = b.last().unwrap().clone();
            while r.len() > db && r.len() >= b.len() {
                let dr = r.len() - 1;
                let lead = r.last().unwrap().clone();
                for c in r.iter_mut() {
                    *c *= &lcb;
                }
                for (k, bc) in b.iter().enumerate() {
                    r[dr - db + k] -= &lead * bc;
                }
                trim(&mut r);
                if r.is_empty() {
                    break;
                }
            }
            r
        }
        let mut a = self.primitive_int_coeffs(v);
        let mut b = other.primitive_int_coeffs(v);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            if b.len() == 1 {
                // a nonzero constant: the primitive gcd is 1
                a = vec![BigInt::one()];
                break;
            }
            let mut r = prem(&a, &b);
            make_primitive(&mut r);
            a = b;
            b = r;
        }
        // rebuild as a monic polynomial in v
        let mut out = FPoly::zero(self.nvars, 0);
        for (e, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut m = Mono::one(self.nvars);
            m.0[v] = e as u32;
            out.insert_term(m, Coeff::Q(num_rational::BigRational::from_integer(c.clone())));
        }
        out.monic()
    }

    fn rem_univar(&self, d: &FPoly, v: usize) -> FPoly {
        let mut rem = self.clone();
        let dd = d.degree_in(v);
        let dc = d.univar_coeffs(v).pop().unwrap();
        let dcinv = dc
            .constant_value()
            .expect("univariate leading coefficient is a scalar")
            .inv()
            .expect("nonzero");
        while !rem.is_zero() && rem.degree_in(v) >= dd && !(dd == 0) {
            let rd = rem.degree_in(v);
            let rc = rem.univar_coeffs(v).pop().unwrap();
            let q = rc.mul_coeff(&dcinv);
            let mut shift = Mono::one(self.nvars);
            shift.0[v] = rd - dd;
            rem = rem.sub(&q.mul_mono(&shift).mul(d));
        }
        if dd == 0 {
            FPoly::zero(self.nvars, self.charp)
        } else {
            rem
        }
    }

    fn content_wrt(&self, v: usize) -> FPoly {
        let coeffs = self.univar_coeffs(v);
        let mut g = FPoly::zero(self.nvars, self.charp);
        for c in coeffs {
            if !c.is_zero() {
                g = g.gcd(&c);
            }
        }
        g
    }

    fn gcd_multivar(&self, other: &FPoly, v: usize) -> FPoly {
        let ca = self.content_wrt(v);
        let cb = other.content_wrt(v);
        let cg = ca.gcd(&cb);
        let mut a = self.div_exact(&ca).expect("content divides");
        let mut b = other.div_exact(&cb).expect("content divides");
        if a.degree_in(v) < b.degree_in(v) {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b, v);
            a = b;
            b = if r.is_zero() {
                r
            } else {
                let c = r.content_wrt(v);
                r.div_exact(&c).expect("content divides")
            };
        }
        if a.degree_in(v) == 0 {
            cg.monic()
        } else {
            cg.mul(&a).monic()
        }
    }

    /// Pseudo-remainder of self by d in variable v.
    fn prem(&self, d: &FPoly, v: usize) -> FPoly {
        let dd = d.degree_in(v);
        let lc = d.univar_coeffs(v).pop().unwrap();
        let mut rem = self.clone();
        while !rem.is_zero() && rem.degree_in(v) >= dd {
            let rd = rem.degree_in(v);
            let rc = rem.univar_coeffs(v).pop().unwrap();
            let mut shift = Mono::one(self.nvars);
            shift.0[v] = rd - dd;
            rem = rem.mul(&lc).sub(&rc.mul_mono(&shift).mul(d));
            if rd == dd {
                break;
            }
        }
        rem
    }

    /// Writes the polynomial as sum of c_nu^p * t^nu over residue classes
    /// nu in {0..p-1}^nvars; valid in characteristic p only.
    pub fn residue_split(&self) -> BTreeMap<Vec<u32>, FPoly> {
        let p = self.charp;
        assert!(p > 0, "residue split needs positive characteristic");
        let mut out: BTreeMap<Vec<u32>, FPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let nu: Vec<u32> = m.0.iter().map(|e| e % p as u32).collect();
            let root = Mono(m.0.iter().zip(&nu).map(|(e, r)| (e - r) / p as u32).collect());
            let entry = out.entry(nu).or_insert_with(|| FPoly::zero(self.nvars, p));
            entry.insert_term(root, c.pth_root());
        }
        out
    }

    /// Exact p-th root when defined.
    pub fn pth_root(&self) -> Option<FPoly> {
        let p = self.charp;
        assert!(p > 0);
        let mut split = self.residue_split();
        if self.is_zero() {
            return Some(FPoly::zero(self.nvars, p));
        }
        if split.len() != 1 {
            return None;
        }
        let (nu, root) = split.pop_first().unwrap();
        if nu.iter().any(|&r| r != 0) {
            return None;
        }
        Some(root)
    }
}

/// Printing helpers shared by the element syntax. Terms are emitted from
/// the largest graded-lex monomial down.
pub fn format_poly(p: &FPoly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (idx, (m, c)) in p.terms.iter().rev().enumerate() {
        let (neg, mag) = coeff_sign_mag(c);
        if idx == 0 {
            if neg {
                s.push('-');
            }
        } else if neg {
            s.push_str(" - ");
        } else {
            s.push_str(" + ");
        }
        s.push_str(&term_body(&mag, m, names));
    }
    s
}

fn coeff_sign_mag(c: &Coeff) -> (bool, Coeff) {
    match c {
        Coeff::Q(q) => {
            if q < &num_rational::BigRational::from_integer(0.into()) {
                (true, Coeff::Q(-q))
            } else {
                (false, c.clone())
            }
        }
        Coeff::F { .. } => (false, c.clone()),
    }
}

fn term_body(c: &Coeff, m: &Mono, names: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    if !c.is_one() || m.total_degree() == 0 {
        parts.push(format!("{c}"));
    }
    for (i, &e) in m.0.iter().enumerate() {
        if e == 1 {
            parts.push(names[i].clone());
        } else if e > 1 {
            parts.push(format!("{}^{}", names[i], e));
        }
    }
    parts.join("*")
}
