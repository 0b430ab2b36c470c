//! Concrete evaluable field models: the SCF approximation F_p(t_1..t_e),
//! the DCF approximation (F_p(t), d/dt), and the pair (Q(t_1..t_k), E)
//! with E the constants of d/dt_1.
//!
//! These are deliberately not models of the completed theories; they
//! validate exactly the field-level identities the constructive passes
//! use. Lambda- and s-values follow the "otherwise 0" totalization.
//!
//! Sampling distribution (fixed, versioned): rational-function values
//! with numerator and denominator built from up to four monomials, every
//! exponent at most 3, coefficients drawn from the seven-element pool
//! {-3,-2,-1,0,1,2,3}; denominators resampled until nonzero. Trial seeds
//! derive from (seed, formula index, trial index), so parallel and serial
//! runs would produce identical reports.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    parse_element, wronskian, wronskian_matrix, Coeff, FieldDescriptor, FieldElement, Matrix,
};
use crate::error::{Error, Result};
use crate::formula::canon::{term_to_tpoly, AtomKind, TAtom, TPoly};
use crate::formula::shapes::{LinearTame, TameFormula};
use crate::formula::{Formula, FormulaFile, LanguageTag, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    Scf { p: u64, e: usize },
    Dcf { p: u64 },
    Pair { k: usize },
}

/// A concrete evaluable structure mapping (formula, point) to a truth
/// value.
#[derive(Debug, Clone)]
pub struct ModelOracle {
    pub kind: OracleKind,
    pub desc: Arc<FieldDescriptor>,
}

fn trans_names(prefix: &str, count: usize) -> Vec<String> {
    if count == 1 {
        vec![prefix.to_string()]
    } else {
        (1..=count).map(|i| format!("{prefix}{i}")).collect()
    }
}

impl ModelOracle {
    pub fn scf(p: u64, e: usize) -> Result<ModelOracle> {
        let names = trans_names("t", e);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut desc = FieldDescriptor::prime_field(p, &refs)?;
        if e >= 1 {
            desc = desc.with_default_derivation();
        }
        Ok(ModelOracle { kind: OracleKind::Scf { p, e }, desc: Arc::new(desc) })
    }

    pub fn dcf(p: u64) -> Result<ModelOracle> {
        let desc = FieldDescriptor::prime_field(p, &["t"])?.with_default_derivation();
        Ok(ModelOracle { kind: OracleKind::Dcf { p }, desc: Arc::new(desc) })
    }

    pub fn pair(k: usize) -> Result<ModelOracle> {
        if k == 0 {
            return Err(Error::OracleSpec("pair oracle needs at least one transcendental".into()));
        }
        let names = trans_names("t", k);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let desc = FieldDescriptor::rationals(&refs).with_default_derivation();
        Ok(ModelOracle { kind: OracleKind::Pair { k }, desc: Arc::new(desc) })
    }

    /// Oracle spec strings: `scf:p=2,e=1`, `dcf:p=3`, `pair:k=1`.
    pub fn from_spec(spec: &str) -> Result<ModelOracle> {
        let bad = || Error::OracleSpec(format!("cannot parse oracle spec '{spec}'"));
        let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
        let mut params: BTreeMap<&str, u64> = BTreeMap::new();
        for part in rest.split(',') {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            params.insert(k.trim(), v.trim().parse().map_err(|_| bad())?);
        }
        match kind.trim() {
            "scf" => {
                let p = *params.get("p").ok_or_else(bad)?;
                let e = *params.get("e").ok_or_else(bad)? as usize;
                ModelOracle::scf(p, e)
            }
            "dcf" => ModelOracle::dcf(*params.get("p").ok_or_else(bad)?),
            "pair" => ModelOracle::pair(*params.get("k").ok_or_else(bad)? as usize),
            _ => Err(bad()),
        }
    }

    pub fn spec_string(&self) -> String {
        match self.kind {
            OracleKind::Scf { p, e } => format!("scf:p={p},e={e}"),
            OracleKind::Dcf { p } => format!("dcf:p={p}"),
            OracleKind::Pair { k } => format!("pair:k={k}"),
        }
    }

    pub fn lang(&self) -> LanguageTag {
        match self.kind {
            OracleKind::Scf { .. } => LanguageTag::Scf,
            OracleKind::Dcf { .. } => LanguageTag::Dcf,
            OracleKind::Pair { .. } => LanguageTag::Pair,
        }
    }

    pub fn charp(&self) -> u64 {
        self.desc.charp
    }

    // -- SCF lambda machinery ------------------------------------------------

    fn coords(&self, a: &FieldElement) -> Result<Vec<FieldElement>> {
        let basis = self.desc.standard_p_basis();
        a.p_basis_coordinates(&basis)
    }

    /// Stacked p-basis coordinates of a vector of elements.
    fn stacked_coords(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let mut out = Vec::new();
        for a in v {
            out.extend(self.coords(a)?);
        }
        Ok(out)
    }

    /// Unique solution of a_0 = sum zeta_i^p a_i on vectors, when the
    /// a_1..a_n are K^p-independent and the system is consistent.
    pub fn eval_generalized_lambda(&self, vectors: &[Vec<FieldElement>]) -> Result<Option<Vec<FieldElement>>> {
        if !matches!(self.kind, OracleKind::Scf { .. }) {
            return Err(Error::OracleMismatch("generalized lambda values live in the scf oracle".into()));
        }
        assert!(vectors.len() >= 2, "need a_0 and at least one a_i");
        let b = self.stacked_coords(&vectors[0])?;
        let cols: Vec<Vec<FieldElement>> = vectors[1..]
            .iter()
            .map(|v| self.stacked_coords(v))
            .collect::<Result<_>>()?;
        Ok(solve_unique(&self.desc, &cols, &b))
    }

    fn lambda_values(&self, args: &[FieldElement]) -> Result<Option<Vec<FieldElement>>> {
        let vectors: Vec<Vec<FieldElement>> = args.iter().map(|a| vec![a.clone()]).collect();
        self.eval_generalized_lambda(&vectors)
    }

    fn pdep_vectors(&self, vectors: &[Vec<FieldElement>]) -> Result<bool> {
        let cols: Vec<Vec<FieldElement>> = vectors
            .iter()
            .map(|v| self.stacked_coords(v))
            .collect::<Result<_>>()?;
        let rows = cols[0].len();
        let m = Matrix::from_rows(&self.desc, &transpose(&cols, rows));
        Ok(m.rank() < cols.len())
    }

    // -- DCF s-function ------------------------------------------------------

    pub fn s_value(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.derive()?.is_zero() {
            a.pth_root()
                .ok_or_else(|| Error::OracleMismatch("oracle is not differentially perfect".into()))
        } else {
            Ok(FieldElement::zero(&self.desc))
        }
    }

    // -- pair lambda machinery -----------------------------------------------

    fn dep(&self, args: &[FieldElement]) -> Result<bool> {
        Ok(wronskian(args)?.is_zero())
    }

    fn lambda_pair_values(&self, args: &[FieldElement]) -> Result<Option<Vec<FieldElement>>> {
        let (a0, rest) = args.split_first().expect("lamP arity");
        if self.dep(rest)? || !self.dep(args)? {
            return Ok(None);
        }
        // W-matrix system: rows delta^i(a_j), column delta^i(a_0)
        let m = wronskian_matrix(rest)?;
        let det = m.det()?;
        debug_assert!(!det.is_zero());
        let adj = m.adjugate()?;
        let mut rhs = Vec::with_capacity(rest.len());
        let mut cur = a0.clone();
        for i in 0..rest.len() {
            if i > 0 {
                cur = cur.derive()?;
            }
            rhs.push(cur.clone());
        }
        let mut sol = Vec::with_capacity(rest.len());
        for i in 0..rest.len() {
            let mut acc = FieldElement::zero(&self.desc);
            for (j, r) in rhs.iter().enumerate() {
                acc = acc.add(&adj.at(i, j).mul(r));
            }
            sol.push(acc.div(&det)?);
        }
        // the values must be constants and reproduce a_0
        let mut check = FieldElement::zero(&self.desc);
        for (c, a) in sol.iter().zip(rest) {
            if !c.derive()?.is_zero() {
                return Ok(None);
            }
            check = check.add(&c.mul(a));
        }
        if check != *a0 {
            return Ok(None);
        }
        Ok(Some(sol))
    }

    // -- term and formula evaluation ------------------------------------------

    fn eval_atom(&self, a: &TAtom, point: &Point) -> Result<FieldElement> {
        let base = match &a.kind {
            AtomKind::Var(v) => point
                .get(v)
                .cloned()
                .ok_or_else(|| Error::MissingAssignment(v.clone()))?,
            AtomKind::Lam { n, i, args } => {
                if !matches!(self.kind, OracleKind::Scf { .. }) {
                    return Err(Error::LanguageMismatch);
                }
                debug_assert_eq!(args.len(), n + 1);
                let vals: Vec<FieldElement> =
                    args.iter().map(|p| self.eval_tpoly(p, point)).collect::<Result<_>>()?;
                match self.lambda_values(&vals)? {
                    Some(z) => z[i - 1].clone(),
                    None => FieldElement::zero(&self.desc),
                }
            }
            AtomKind::LamN { nn, n, i, args } => {
                if !matches!(self.kind, OracleKind::Scf { .. }) {
                    return Err(Error::LanguageMismatch);
                }
                debug_assert_eq!(args.len(), (n + 1) * nn);
                let vals: Vec<FieldElement> =
                    args.iter().map(|p| self.eval_tpoly(p, point)).collect::<Result<_>>()?;
                let vectors: Vec<Vec<FieldElement>> = vals.chunks(*nn).map(|c| c.to_vec()).collect();
                match self.eval_generalized_lambda(&vectors)? {
                    Some(z) => z[i - 1].clone(),
                    None => FieldElement::zero(&self.desc),
                }
            }
            AtomKind::S(q) => {
                if !matches!(self.kind, OracleKind::Dcf { .. }) {
                    return Err(Error::LanguageMismatch);
                }
                let v = self.eval_tpoly(q, point)?;
                self.s_value(&v)?
            }
            AtomKind::LamP { n, i, args } => {
                if !matches!(self.kind, OracleKind::Pair { .. }) {
                    return Err(Error::LanguageMismatch);
                }
                debug_assert_eq!(args.len(), n + 1);
                let vals: Vec<FieldElement> =
                    args.iter().map(|p| self.eval_tpoly(p, point)).collect::<Result<_>>()?;
                match self.lambda_pair_values(&vals)? {
                    Some(z) => z[i - 1].clone(),
                    None => FieldElement::zero(&self.desc),
                }
            }
        };
        base.derive_n(a.dord as usize)
    }

    pub fn eval_tpoly(&self, p: &TPoly, point: &Point) -> Result<FieldElement> {
        let mut acc = FieldElement::zero(&self.desc);
        for (m, c) in &p.terms {
            let mut term = self.coeff_to_element(c);
            for (a, &e) in &m.0 {
                let v = self.eval_atom(a, point)?;
                term = term.mul(&v.pow(e));
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    fn coeff_to_element(&self, c: &BigInt) -> FieldElement {
        let nv = self.desc.nvars();
        let coeff = if self.desc.charp == 0 {
            Coeff::Q(BigRational::from_integer(c.clone()))
        } else {
            Coeff::from_bigint(self.desc.charp, c)
        };
        FieldElement::from_poly(&self.desc, crate::algebra::FPoly::constant(nv, coeff))
    }

    pub fn eval_term(&self, t: &Term, point: &Point) -> Result<FieldElement> {
        self.eval_tpoly(&term_to_tpoly(t, self.charp()), point)
    }

    /// Truth value of a formula at a point by structural recursion.
    /// existsP blocks must be zeta-linear; nonlinear blocks are decided
    /// only through the pairs linearization route.
    pub fn eval(&self, file: &FormulaFile, point: &Point) -> Result<bool> {
        if file.lang != self.lang() || file.charp != self.charp() {
            return Err(Error::LanguageMismatch);
        }
        self.eval_formula(&file.formula, point)
    }

    pub fn eval_formula(&self, f: &Formula, point: &Point) -> Result<bool> {
        match f {
            Formula::True => Ok(true),
            Formula::False => Ok(false),
            Formula::Eq0(t) => Ok(self.eval_term(t, point)?.is_zero()),
            Formula::Nonzero(t) => Ok(!self.eval_term(t, point)?.is_zero()),
            Formula::PMem(t) => {
                let v = self.eval_term(t, point)?;
                Ok(v.derive()?.is_zero())
            }
            Formula::Pdep { args, .. } => {
                let vals: Vec<Vec<FieldElement>> = args
                    .iter()
                    .map(|t| Ok(vec![self.eval_term(t, point)?]))
                    .collect::<Result<_>>()?;
                self.pdep_vectors(&vals)
            }
            Formula::PdepN { nn, args, .. } => {
                let vals: Vec<FieldElement> =
                    args.iter().map(|t| self.eval_term(t, point)).collect::<Result<_>>()?;
                let vectors: Vec<Vec<FieldElement>> = vals.chunks(*nn).map(|c| c.to_vec()).collect();
                self.pdep_vectors(&vectors)
            }
            Formula::Dep { args, .. } => {
                let vals: Vec<FieldElement> =
                    args.iter().map(|t| self.eval_term(t, point)).collect::<Result<_>>()?;
                self.dep(&vals)
            }
            Formula::And(fs) => {
                for x in fs {
                    if !self.eval_formula(x, point)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Or(fs) => {
                for x in fs {
                    if self.eval_formula(x, point)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Formula::Not(x) => Ok(!self.eval_formula(x, point)?),
            Formula::ExistsPth { var, pth, body } => {
                let q = self.eval_term(pth, point)?;
                if !q.derive()?.is_zero() {
                    return Ok(false);
                }
                let z = q
                    .pth_root()
                    .ok_or_else(|| Error::OracleMismatch("oracle is not differentially perfect".into()))?;
                let mut inner = point.clone();
                inner.insert(var.clone(), z);
                self.eval_formula(body, &inner)
            }
            Formula::ExistsP { .. } => {
                let tame = TameFormula::from_formula(f, self.charp())
                    .map_err(|_| Error::UndecidableShape("existsP block is not a tame formula".into()))?;
                let lin = LinearTame::from_tame(&tame).ok_or_else(|| {
                    Error::UndecidableShape(
                        "nonlinear existsP reached without linearization".into(),
                    )
                })?;
                self.eval_linear_tame(&lin, point)
            }
        }
    }

    /// Like [`eval`], but nonlinear existsP blocks are decided through
    /// the pairs linearization route instead of erroring.
    pub fn eval_routed(&self, file: &FormulaFile, point: &Point) -> Result<bool> {
        if file.lang != self.lang() || file.charp != self.charp() {
            return Err(Error::LanguageMismatch);
        }
        self.eval_formula_routed(&file.formula, point)
    }

    pub fn eval_formula_routed(&self, f: &Formula, point: &Point) -> Result<bool> {
        match f {
            Formula::ExistsP { .. } => {
                let tame = TameFormula::from_formula(f, self.charp())
                    .map_err(|_| Error::UndecidableShape("existsP block is not a tame formula".into()))?;
                match LinearTame::from_tame(&tame) {
                    Some(lin) => self.eval_linear_tame(&lin, point),
                    None => Ok(crate::pairs::eval_tame_kolchin(self, &tame, point)?.0),
                }
            }
            Formula::And(fs) => {
                for x in fs {
                    if !self.eval_formula_routed(x, point)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Or(fs) => {
                for x in fs {
                    if self.eval_formula_routed(x, point)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Formula::Not(x) => Ok(!self.eval_formula_routed(x, point)?),
            other => self.eval_formula(other, point),
        }
    }

    /// Decides a zeta-linear block: a nonzero constant vector orthogonal
    /// to every evaluated constraint column exists iff the E-hull of the
    /// columns has dimension below the block size.
    pub fn eval_linear_tame(&self, lin: &LinearTame, point: &Point) -> Result<bool> {
        let s = lin.zetas.len();
        let k = lin.matrix.first().map_or(0, Vec::len);
        let mut columns = Vec::with_capacity(k);
        for j in 0..k {
            let col: Vec<FieldElement> = (0..s)
                .map(|i| self.eval_tpoly(&lin.matrix[i][j], point))
                .collect::<Result<_>>()?;
            columns.push(col);
        }
        if columns.iter().all(|c| c.iter().all(FieldElement::is_zero)) {
            return Ok(true);
        }
        Ok(crate::pairs::e_span_dim(&self.desc, &columns)? < s)
    }
}

fn transpose(cols: &[Vec<FieldElement>], rows: usize) -> Vec<Vec<FieldElement>> {
    (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}

/// Unique solution of (columns) * zeta = b, None when the columns are
/// dependent or the system inconsistent.
fn solve_unique(
    desc: &Arc<FieldDescriptor>,
    cols: &[Vec<FieldElement>],
    b: &[FieldElement],
) -> Option<Vec<FieldElement>> {
    let n = cols.len();
    let rows = b.len();
    let mut aug_rows = Vec::with_capacity(rows);
    for r in 0..rows {
        let mut row: Vec<FieldElement> = cols.iter().map(|c| c[r].clone()).collect();
        row.push(b[r].clone());
        aug_rows.push(row);
    }
    let m = Matrix::from_rows(desc, &aug_rows);
    let (r, pivots) = m.rref();
    if pivots.contains(&n) {
        return None; // inconsistent
    }
    if pivots.len() < n {
        return None; // columns dependent: no unique solution
    }
    let mut sol = vec![FieldElement::zero(desc); n];
    for (row, &col) in pivots.iter().enumerate() {
        sol[col] = r.at(row, n).clone();
    }
    Some(sol)
}

/// Named assignment of field elements to formula variables.
pub type Point = BTreeMap<String, FieldElement>;

pub fn parse_point(oracle: &ModelOracle, json: &str) -> Result<Point> {
    let raw: BTreeMap<String, String> =
        serde_json::from_str(json).map_err(|e| Error::Io(format!("point file: {e}")))?;
    let mut out = Point::new();
    for (k, v) in raw {
        out.insert(k, parse_element(&oracle.desc, &v)?);
    }
    Ok(out)
}

pub fn point_to_json(point: &Point) -> String {
    let map: BTreeMap<String, String> = point.iter().map(|(k, v)| (k.clone(), v.to_string())).collect();
    serde_json::to_string(&map).expect("point serializes")
}

// ---------------------------------------------------------------------------
// seeded sampling
// ---------------------------------------------------------------------------

pub const COEFF_POOL: [i64; 7] = [-3, -2, -1, 0, 1, 2, 3];
pub const MAX_EXPONENT: u32 = 3;
pub const MAX_TERMS: usize = 4;

pub struct Sampler {
    rng: ChaCha8Rng,
    desc: Arc<FieldDescriptor>,
}

impl Sampler {
    pub fn new(oracle: &ModelOracle, seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), desc: oracle.desc.clone() }
    }

    /// Derived per-trial seed, documented scheme: splitmix-style mix of
    /// (seed, formula index, trial index).
    pub fn trial_seed(seed: u64, formula_idx: u64, trial: u64) -> u64 {
        let mut x = seed
            .wrapping_add(formula_idx.wrapping_mul(0x9E3779B97F4A7C15))
            .wrapping_add(trial.wrapping_mul(0xBF58476D1CE4E5B9));
        x ^= x >> 30;
        x = x.wrapping_mul(0xBF58476D1CE4E5B9);
        x ^= x >> 27;
        x = x.wrapping_mul(0x94D049BB133111EB);
        x ^= x >> 31;
        x
    }

    pub fn for_trial(oracle: &ModelOracle, seed: u64, formula_idx: u64, trial: u64) -> Self {
        Self::new(oracle, Self::trial_seed(seed, formula_idx, trial))
    }

    fn below(&mut self, n: usize) -> usize {
        (self.rng.next_u64() % n as u64) as usize
    }

    fn pool_coeff(&mut self) -> i64 {
        COEFF_POOL[self.below(COEFF_POOL.len())]
    }

    fn poly(&mut self) -> FieldElement {
        let nv = self.desc.nvars();
        let mut acc = FieldElement::zero(&self.desc);
        if nv == 0 {
            let c = self.pool_coeff();
            return FieldElement::from_int(&self.desc, c);
        }
        let terms = 1 + self.below(MAX_TERMS);
        for _ in 0..terms {
            let c = self.pool_coeff();
            let mut mono = FieldElement::from_int(&self.desc, c);
            for i in 0..nv {
                let e = self.below(MAX_EXPONENT as usize + 1) as u32;
                if e > 0 {
                    mono = mono.mul(&FieldElement::transcendental(&self.desc, i).pow(e));
                }
            }
            acc = acc.add(&mono);
        }
        acc
    }

    pub fn element(&mut self) -> FieldElement {
        let num = self.poly();
        loop {
            let den = self.poly();
            if !den.is_zero() {
                return num.div(&den).unwrap();
            }
        }
    }

    /// A nonzero element (resampled).
    pub fn nonzero_element(&mut self) -> FieldElement {
        loop {
            let e = self.element();
            if !e.is_zero() {
                return e;
            }
        }
    }

    pub fn point(&mut self, vars: &[String]) -> Point {
        let mut out = Point::new();
        for v in vars {
            out.insert(v.clone(), self.element());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::sexpr::parse_file;

    fn pt(oracle: &ModelOracle, pairs: &[(&str, &str)]) -> Point {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), parse_element(&oracle.desc, v).unwrap()))
            .collect()
    }

    #[test]
    fn scf_pdep_example() {
        // pdep_2(1, t) is false in F_2(t): coordinates of t are (0,1)
        let o = ModelOracle::scf(2, 1).unwrap();
        let f = parse_file(";; lang: scf  p: 2\n(pdep 2 1 t0)\n").unwrap();
        let point = pt(&o, &[("t0", "t")]);
        assert!(!o.eval(&f, &point).unwrap());
        let f2 = parse_file(";; lang: scf  p: 2\n(pdep 2 t0 t1)\n").unwrap();
        let point2 = pt(&o, &[("t0", "t"), ("t1", "t^3")]);
        // t and t^3 = t*(t)^2 are K^2-dependent
        assert!(o.eval(&f2, &point2).unwrap());
    }

    #[test]
    fn lambda_roundtrip_random() {
        let o = ModelOracle::scf(3, 1).unwrap();
        for trial in 0..50 {
            let mut s = Sampler::for_trial(&o, 7, 0, trial);
            let a1 = s.nonzero_element();
            let a2 = s.nonzero_element();
            let z1 = s.element();
            let z2 = s.element();
            let a0 = z1.pow(3).mul(&a1).add(&z2.pow(3).mul(&a2));
            if let Some(vals) = o.lambda_values(&[a0.clone(), a1.clone(), a2.clone()]).unwrap() {
                let mut acc = FieldElement::zero(&o.desc);
                for (z, a) in vals.iter().zip([&a1, &a2]) {
                    acc = acc.add(&z.pow(3).mul(a));
                }
                assert_eq!(acc, a0);
            }
        }
    }

    #[test]
    fn s_function_cases() {
        let o = ModelOracle::dcf(3).unwrap();
        let t3 = parse_element(&o.desc, "t^3").unwrap();
        let t = parse_element(&o.desc, "t").unwrap();
        assert_eq!(o.s_value(&t3).unwrap(), t);
        assert!(o.s_value(&t).unwrap().is_zero());
    }

    #[test]
    fn dcf_differential_perfectness_sampled() {
        let o = ModelOracle::dcf(2).unwrap();
        for trial in 0..100 {
            let mut s = Sampler::for_trial(&o, 13, 0, trial);
            let a = s.element();
            if a.derive().unwrap().is_zero() {
                let r = a.pth_root().expect("constants are pth powers in F_p(t)");
                assert_eq!(r.pow(2), a);
            }
        }
    }

    #[test]
    fn pair_dep_and_membership() {
        let o = ModelOracle::pair(1).unwrap();
        let f = parse_file(";; lang: pair  p: 0\n(dep 2 x (* 2 x))\n").unwrap();
        let point = pt(&o, &[("x", "t")]);
        assert!(o.eval(&f, &point).unwrap());
        let f2 = parse_file(";; lang: pair  p: 0\n(dep 2 1 x)\n").unwrap();
        assert!(!o.eval(&f2, &point).unwrap());
        let m = parse_file(";; lang: pair  p: 0\n(P x)\n").unwrap();
        assert!(!o.eval(&m, &point).unwrap());
        assert!(o.eval(&m, &pt(&o, &[("x", "7")])).unwrap());
    }

    #[test]
    fn pair_lambda_values() {
        let o = ModelOracle::pair(1).unwrap();
        // a0 = 2*a1 + 3*a2 with a1 = t, a2 = t^2
        let a1 = parse_element(&o.desc, "t").unwrap();
        let a2 = parse_element(&o.desc, "t^2").unwrap();
        let a0 = a1.mul_int(2).add(&a2.mul_int(3));
        let vals = o.lambda_pair_values(&[a0, a1, a2]).unwrap().unwrap();
        assert_eq!(vals[0], FieldElement::from_int(&o.desc, 2));
        assert_eq!(vals[1], FieldElement::from_int(&o.desc, 3));
        // independent family: undefined
        let one = FieldElement::one(&o.desc);
        let t = parse_element(&o.desc, "t").unwrap();
        assert!(o.lambda_pair_values(&[t.clone(), one]).unwrap().is_none());
    }

    #[test]
    fn exists_pth_eval() {
        let o = ModelOracle::dcf(3).unwrap();
        // exists z (z^3 = x /\ z*x = 0) at x = t^3: z = t, t^4 != 0 -> false
        let f = parse_file(";; lang: dcf  p: 3\n(existsPth z x (eq0 (* z x)))\n").unwrap();
        assert!(!o.eval(&f, &pt(&o, &[("x", "t^3")])).unwrap());
        // at x = 0: z = 0, 0 = 0 -> true
        assert!(o.eval(&f, &pt(&o, &[("x", "0")])).unwrap());
        // at x = t (not constant) -> false
        assert!(!o.eval(&f, &pt(&o, &[("x", "t")])).unwrap());
    }

    #[test]
    fn linear_exists_p_eval() {
        let o = ModelOracle::pair(1).unwrap();
        // exists zeta != 0 in P with zeta * x = 0 <=> x = 0
        let f = parse_file(";; lang: pair  p: 0\n(existsP (z) (and (nonzero z) (eq0 (* z x))))\n").unwrap();
        assert!(o.eval(&f, &pt(&o, &[("x", "0")])).unwrap());
        assert!(!o.eval(&f, &pt(&o, &[("x", "t")])).unwrap());
        // exists zeta != 0 with zeta * 0 = 0 is true everywhere
        let g = parse_file(";; lang: pair  p: 0\n(existsP (z) (and (nonzero z) (eq0 (* z 0))))\n").unwrap();
        assert!(o.eval(&g, &pt(&o, &[("x", "t")])).unwrap());
    }

    #[test]
    fn deterministic_sampling() {
        let o = ModelOracle::scf(2, 1).unwrap();
        let mut s1 = Sampler::for_trial(&o, 42, 3, 17);
        let mut s2 = Sampler::for_trial(&o, 42, 3, 17);
        for _ in 0..10 {
            assert_eq!(s1.element(), s2.element());
        }
    }

}
