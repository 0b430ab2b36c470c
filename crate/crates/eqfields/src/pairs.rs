//! The pair-of-fields pipeline: tame-formula algebra (Segre combination),
//! lambda_P translation, annihilator spaces, E-hulls, differential ideal
//! slices, linearization, and the simple-linear checks.
//!
//! The pair oracle fixes E = constants of (Q(t_1..t_k), d/dt_1); E-linear
//! questions are decided exactly by derivative closure: a delta-closed
//! span is generated by constant vectors, which its reduced row echelon
//! basis exhibits.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{wronskian, FieldDescriptor, FieldElement, Matrix};
use crate::error::{Error, Result};
use crate::exterior::{binomial, wedge, PluckerVector};
use crate::formula::canon::{AtomKind, TPoly};
use crate::formula::shapes::{LinearTame, TameFormula};
use crate::formula::FreshNames;
use crate::oracle::{ModelOracle, OracleKind, Point};

/// Derivative of a vector, entrywise.
fn derive_vec(v: &[FieldElement]) -> Result<Vec<FieldElement>> {
    v.iter().map(FieldElement::derive).collect()
}

/// Basis of the E-hull of the given vectors: the smallest subspace
/// generated by constant-entry vectors containing them. Closes the span
/// under the derivation, then reads off the reduced row echelon basis,
/// whose entries are necessarily constants.
pub fn e_hull(desc: &Arc<FieldDescriptor>, vectors: &[Vec<FieldElement>]) -> Result<Vec<Vec<FieldElement>>> {
    let live: Vec<Vec<FieldElement>> =
        vectors.iter().filter(|v| v.iter().any(|e| !e.is_zero())).cloned().collect();
    if live.is_empty() {
        return Ok(vec![]);
    }
    let mut basis = Matrix::from_rows(desc, &live).row_space_basis();
    loop {
        let mut ext = basis.clone();
        for r in &basis {
            ext.push(derive_vec(r)?);
        }
        let closed = Matrix::from_rows(desc, &ext);
        let next = closed.row_space_basis();
        if next.len() == basis.len() {
            for row in &basis {
                for e in row {
                    if !e.derive()?.is_zero() {
                        return Err(Error::OracleMismatch(
                            "delta-closed span has a non-constant echelon basis".into(),
                        ));
                    }
                }
            }
            return Ok(basis);
        }
        basis = next;
    }
}

/// The coefficient-vector generating set of the E-hull of one vector:
/// clear denominators (hulls are invariant under nonzero scaling), then
/// split every entry by its power of the first transcendental; the
/// resulting coefficient vectors have entries in E and span the hull.
pub fn e_coefficient_vectors(
    desc: &Arc<FieldDescriptor>,
    v: &[FieldElement],
) -> Result<Vec<Vec<FieldElement>>> {
    use crate::algebra::{FPoly, Mono};
    let mut den = FPoly::one(desc.nvars(), desc.charp);
    for e in v {
        let g = den.gcd(&e.den);
        den = den.mul(&e.den.div_exact(&g).expect("gcd divides"));
    }
    let cleared: Vec<FPoly> = v
        .iter()
        .map(|e| {
            let scale = den.div_exact(&e.den).expect("lcm construction");
            e.num.mul(&scale)
        })
        .collect();
    let top = cleared.iter().map(|p| p.degree_in(0)).max().unwrap_or(0);
    let mut out = Vec::new();
    for deg in 0..=top {
        let mut row = Vec::with_capacity(v.len());
        let mut nonzero = false;
        for p in &cleared {
            // the coefficient of t1^deg, a polynomial in the remaining vars
            let mut coeff = FPoly::zero(desc.nvars(), desc.charp);
            for (m, c) in &p.terms {
                if m.0[0] == deg {
                    let mut m2 = m.clone();
                    m2.0[0] = 0;
                    coeff.terms.insert(Mono(m2.0), c.clone());
                }
            }
            if !coeff.is_zero() {
                nonzero = true;
            }
            row.push(FieldElement::from_poly(desc, coeff));
        }
        if nonzero {
            out.push(row);
        }
    }
    Ok(out)
}

/// Incremental echelon basis over the rationals with early exit at full
/// width; rows are reduced in place against the pivots seen so far.
struct RationalRank {
    width: usize,
    rows: Vec<Vec<num_rational::BigRational>>,
    pivots: Vec<usize>,
}

impl RationalRank {
    fn new(width: usize) -> Self {
        RationalRank { width, rows: Vec::new(), pivots: Vec::new() }
    }

    fn full(&self) -> bool {
        self.rows.len() == self.width
    }

    fn insert(&mut self, mut row: Vec<num_rational::BigRational>) {
        use num_traits::Zero;
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (a, b) in row.iter_mut().zip(r) {
                    *a -= &f * b;
                }
            }
        }
        if let Some(p) = row.iter().position(|c| !c.is_zero()) {
            let lead = row[p].clone();
            for a in row.iter_mut() {
                *a /= &lead;
            }
            self.rows.push(row);
            self.pivots.push(p);
        }
    }
}

/// Dimension of the E-hull of the given vectors, through the coefficient
/// split; agrees with `e_hull(..).len()` and avoids rational-function
/// elimination entirely.
pub fn e_span_dim(desc: &Arc<FieldDescriptor>, vectors: &[Vec<FieldElement>]) -> Result<usize> {
    if desc.charp == 0 && desc.nvars() == 1 {
        // single transcendental: the coefficient vectors are rational
        let width = vectors.first().map_or(0, Vec::len);
        let mut rank = RationalRank::new(width);
        for v in vectors {
            if rank.full() {
                break;
            }
            if v.iter().all(FieldElement::is_zero) {
                continue;
            }
            for row in e_coefficient_vectors(desc, v)? {
                let rat: Vec<num_rational::BigRational> = row
                    .iter()
                    .map(|e| match e.num.constant_value() {
                        Some(crate::algebra::Coeff::Q(q)) => q,
                        _ => unreachable!("coefficient vectors over Q(t) are rational"),
                    })
                    .collect();
                rank.insert(rat);
                if rank.full() {
                    break;
                }
            }
        }
        return Ok(rank.rows.len());
    }
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for v in vectors {
        if v.iter().all(FieldElement::is_zero) {
            continue;
        }
        rows.extend(e_coefficient_vectors(desc, v)?);
    }
    if rows.is_empty() {
        return Ok(0);
    }
    Ok(Matrix::from_rows(desc, &rows).rank())
}

/// The fixed monomial enumeration M_1, M_2, ... of all monomials in s
/// variables, in ascending graded-lexicographic order.
pub fn monomial_enumeration(s: usize, count: usize) -> Vec<Vec<u32>> {
    fn compositions(total: u32, slots: usize) -> Vec<Vec<u32>> {
        if slots == 0 {
            return if total == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for first in 0..=total {
            for mut rest in compositions(total - first, slots - 1) {
                let mut v = vec![first];
                v.append(&mut rest);
                out.push(v);
            }
        }
        out
    }
    let mut out = Vec::new();
    let mut degree = 0u32;
    while out.len() < count {
        let mut level = compositions(degree, s);
        level.sort();
        out.extend(level);
        degree += 1;
    }
    out.truncate(count);
    out
}

fn eval_monomial(a: &[FieldElement], exps: &[u32]) -> FieldElement {
    let desc = &a[0].desc;
    let mut acc = FieldElement::one(desc);
    for (x, &e) in a.iter().zip(exps) {
        if e > 0 {
            acc = acc.mul(&x.pow(e));
        }
    }
    acc
}

/// The E-linear relations among the first n monomials at the point a:
/// dimension, a basis (kernel over E), and its Pluecker coordinates.
pub fn annihilator(
    oracle: &ModelOracle,
    a: &[FieldElement],
    n: usize,
) -> Result<(usize, Vec<Vec<FieldElement>>, PluckerVector)> {
    if !matches!(oracle.kind, OracleKind::Pair { .. }) {
        return Err(Error::OracleMismatch("annihilators live in the pair oracle".into()));
    }
    assert!(!a.is_empty());
    let desc = &oracle.desc;
    let monos = monomial_enumeration(a.len(), n);
    let values: Vec<FieldElement> = monos.iter().map(|m| eval_monomial(a, m)).collect();
    let hull = e_hull(desc, &[values])?;
    let kernel = if hull.is_empty() {
        Matrix::zero(desc, 1, n).kernel_basis()
    } else {
        Matrix::from_rows(desc, &hull).kernel_basis()
    };
    let dim = kernel.len();
    let pk = if dim == 0 {
        PluckerVector::new(desc, n, 0, vec![FieldElement::one(desc)])?
    } else {
        wedge(desc, &kernel)?
    };
    Ok((dim, kernel, pk))
}

// ---------------------------------------------------------------------------
// differential ideal slices
// ---------------------------------------------------------------------------

/// A polynomial in the block variables Z with field coefficients, given
/// on the monomial support as (exponent vector, coefficient) pairs.
pub type ZPoly = Vec<(Vec<u32>, FieldElement)>;

#[derive(Debug, Clone)]
pub struct IdealSlice {
    /// degree-d monomials of the slice, ascending graded-lex
    pub monomials: Vec<Vec<u32>>,
    /// constant-entry generators of the closed slice (echelon rows)
    pub basis: Vec<Vec<FieldElement>>,
    /// derivative levels materialized, counting only levels that
    /// contributed a nonzero vector, including the stabilizing one
    pub iterations: usize,
}

fn zpoly_degree(g: &ZPoly) -> Option<u32> {
    let mut deg = None;
    for (m, c) in g {
        if c.is_zero() {
            continue;
        }
        let d: u32 = m.iter().sum();
        match deg {
            None => deg = Some(d),
            Some(d0) if d0 != d => return None,
            _ => {}
        }
    }
    deg
}

fn monomials_of_degree(s: usize, d: u32) -> Vec<Vec<u32>> {
    monomial_enumeration(s, binomial(d as usize + s - 1, s - 1) + if d == 0 { 0 } else { count_below(s, d) })
        .into_iter()
        .filter(|m| m.iter().sum::<u32>() == d)
        .collect()
}

fn count_below(s: usize, d: u32) -> usize {
    (0..d).map(|k| binomial(k as usize + s - 1, s - 1)).sum()
}

/// Span of {M * g_j : deg M + deg g_j = d} closed under coefficientwise
/// derivation; returns constant-entry generators of the degree-d slice
/// and the stabilization iteration count.
fn slice_vectors(
    desc: &Arc<FieldDescriptor>,
    nzeta: usize,
    generators: &[ZPoly],
    d: u32,
) -> Result<(Vec<Vec<u32>>, Vec<Vec<FieldElement>>)> {
    let slice_monos = monomials_of_degree(nzeta, d);
    let index: BTreeMap<Vec<u32>, usize> =
        slice_monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut level: Vec<Vec<FieldElement>> = Vec::new();
    for g in generators {
        let Some(dg) = zpoly_degree(g) else {
            return Err(Error::InhomogeneousInput);
        };
        if dg > d {
            return Err(Error::DegreeTooLow { given: d as usize, needed: dg as usize });
        }
        for m in monomials_of_degree(nzeta, d - dg) {
            let mut vec = vec![FieldElement::zero(desc); slice_monos.len()];
            for (gm, c) in g {
                if c.is_zero() {
                    continue;
                }
                let prod: Vec<u32> = gm.iter().zip(&m).map(|(a, b)| a + b).collect();
                let slot = index[&prod];
                vec[slot] = vec[slot].add(c);
            }
            level.push(vec);
        }
    }
    level.retain(|v| v.iter().any(|e| !e.is_zero()));
    Ok((slice_monos, level))
}

pub fn differential_ideal_closure(
    desc: &Arc<FieldDescriptor>,
    nzeta: usize,
    generators: &[ZPoly],
    d: u32,
) -> Result<IdealSlice> {
    let (slice_monos, mut level) = slice_vectors(desc, nzeta, generators, d)?;
    if level.is_empty() {
        return Ok(IdealSlice { monomials: slice_monos, basis: vec![], iterations: 0 });
    }
    let mut iterations = 1usize;
    let mut rows = level.clone();
    let mut span = Matrix::from_rows(desc, &rows).row_space_basis();
    loop {
        let next_level: Vec<Vec<FieldElement>> = level
            .iter()
            .map(|v| derive_vec(v))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|v| v.iter().any(|e| !e.is_zero()))
            .collect();
        if next_level.is_empty() {
            break;
        }
        let mut ext = rows.clone();
        ext.extend(next_level.clone());
        let next_span = Matrix::from_rows(desc, &ext).row_space_basis();
        if next_span.len() == span.len() {
            // nonzero derivatives appeared but the span is already closed
            iterations += 1;
            break;
        }
        iterations += 1;
        rows = ext;
        span = next_span;
        level = next_level;
    }
    for row in &span {
        for e in row {
            if !e.derive()?.is_zero() {
                return Err(Error::OracleMismatch("closed slice basis is not constant".into()));
            }
        }
    }
    Ok(IdealSlice { monomials: slice_monos, basis: span, iterations })
}

// ---------------------------------------------------------------------------
// tame-formula algebra
// ---------------------------------------------------------------------------

fn split_by_block(p: &TPoly, block: &[String]) -> Result<BTreeMap<Vec<u32>, TPoly>> {
    if !p.is_plain_poly() {
        return Err(Error::NotTame);
    }
    let mut out: BTreeMap<Vec<u32>, TPoly> = BTreeMap::new();
    for (m, c) in &p.terms {
        let mut exps = vec![0u32; block.len()];
        let mut rest = TPoly::bigint(p.charp, c);
        for (a, &e) in &m.0 {
            let AtomKind::Var(v) = &a.kind else { unreachable!() };
            match block.iter().position(|b| b == v) {
                Some(i) => exps[i] += e,
                None => rest = rest.mul(&TPoly::atom(p.charp, a.clone()).pow(e)),
            }
        }
        let entry = out.entry(exps).or_insert_with(|| TPoly::zero(p.charp));
        *entry = entry.add(&rest);
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

fn rename_block(polys: &[TPoly], from: &[String], to: &[String]) -> Vec<TPoly> {
    let map: BTreeMap<String, TPoly> = from
        .iter()
        .zip(to)
        .map(|(f, t)| (f.clone(), TPoly::var(polys.first().map_or(0, |p| p.charp), t)))
        .collect();
    polys.iter().map(|p| p.subst_vars(&map)).collect()
}

/// Segre merge of a bihomogeneous system over two disjoint quantifier
/// blocks into one block of size r*s: every polynomial is instantiated at
/// (column j of xi, row i of xi) for all i, j.
fn segre_merge(
    charp: u64,
    polys: &[TPoly],
    block1: &[String],
    block2: &[String],
    fresh: &mut FreshNames,
) -> Result<TameFormula> {
    let r = block1.len();
    let s = block2.len();
    let set1: BTreeSet<String> = block1.iter().cloned().collect();
    let set2: BTreeSet<String> = block2.iter().cloned().collect();
    for p in polys {
        if p.homogeneous_block_degree(&set1).is_none() || p.homogeneous_block_degree(&set2).is_none() {
            return Err(Error::NotTame);
        }
    }
    let mut xi = vec![vec![String::new(); s]; r];
    let mut names = Vec::with_capacity(r * s);
    for (i, row) in xi.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let name = fresh.fresh("xi");
            let _ = (i, j);
            *slot = name.clone();
            names.push(name);
        }
    }
    let mut out_polys = Vec::new();
    let mut seen: BTreeSet<TPoly> = BTreeSet::new();
    for i in 0..r {
        for j in 0..s {
            let mut map: BTreeMap<String, TPoly> = BTreeMap::new();
            for (b1_idx, v) in block1.iter().enumerate() {
                map.insert(v.clone(), TPoly::var(charp, &xi[b1_idx][j]));
            }
            for (b2_idx, v) in block2.iter().enumerate() {
                map.insert(v.clone(), TPoly::var(charp, &xi[i][b2_idx]));
            }
            for p in polys {
                let q = p.subst_vars(&map);
                if seen.insert(q.clone()) {
                    out_polys.push(q);
                }
            }
        }
    }
    let tame = TameFormula { charp, zetas: names, polys: out_polys };
    tame.validate_homogeneous()?;
    Ok(tame)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connective {
    And,
    Or,
}

/// Conjunction and disjunction of tame formulae: separate blocks, the
/// two systems (for "and") or all pairwise products (for "or"), then the
/// Segre substitution onto a single block.
pub fn combine_tame(phi1: &TameFormula, phi2: &TameFormula, op: Connective) -> Result<TameFormula> {
    let charp = phi1.charp;
    phi1.validate_homogeneous()?;
    phi2.validate_homogeneous()?;
    let mut used: Vec<String> = phi1.zetas.clone();
    used.extend(phi2.zetas.clone());
    for p in phi1.polys.iter().chain(&phi2.polys) {
        used.extend(p.variables());
    }
    let mut fresh = FreshNames::new(used);
    let ups: Vec<String> = (0..phi1.zetas.len()).map(|_| fresh.fresh("u")).collect();
    let zes: Vec<String> = (0..phi2.zetas.len()).map(|_| fresh.fresh("v")).collect();
    let p1 = rename_block(&phi1.polys, &phi1.zetas, &ups);
    let p2 = rename_block(&phi2.polys, &phi2.zetas, &zes);
    let family: Vec<TPoly> = match op {
        Connective::And => p1.into_iter().chain(p2).collect(),
        Connective::Or => {
            let mut out = Vec::new();
            for a in &p1 {
                for b in &p2 {
                    out.push(a.mul(b));
                }
            }
            out
        }
    };
    segre_merge(charp, &family, &ups, &zes, &mut fresh)
}

/// Translation of a lambda_P-formula (guarded dep/lam nests over the pair
/// language) into a tame formula.
pub fn lambdap_to_tame(shape: &crate::formula::shapes::LtShape, charp: u64, fresh: &mut FreshNames) -> Result<TameFormula> {
    use crate::formula::shapes::LtShape;
    match shape {
        LtShape::System(ps) => {
            // q = 0 is the simple linear formula dep_1(q)
            let mut acc: Option<TameFormula> = None;
            if ps.is_empty() {
                let z = fresh.fresh("zeta");
                return Ok(TameFormula { charp, zetas: vec![z], polys: vec![] });
            }
            for p in ps {
                let z = fresh.fresh("zeta");
                let tame = TameFormula {
                    charp,
                    zetas: vec![z.clone()],
                    polys: vec![TPoly::var(charp, &z).mul(p)],
                };
                acc = Some(match acc {
                    None => tame,
                    Some(prev) => combine_tame(&prev, &tame, Connective::And)?,
                });
            }
            Ok(acc.unwrap())
        }
        LtShape::Conj(parts) => {
            let mut acc: Option<TameFormula> = None;
            for part in parts {
                let t = lambdap_to_tame(part, charp, fresh)?;
                acc = Some(match acc {
                    None => t,
                    Some(prev) => combine_tame(&prev, &t, Connective::And)?,
                });
            }
            match acc {
                Some(t) => Ok(t),
                None => lambdap_to_tame(&LtShape::System(vec![]), charp, fresh),
            }
        }
        LtShape::Guarded { nn, n: _, qs, zs, inner } => {
            if *nn != 1 {
                return Err(Error::ShapeViolation("pair guards have scalar arguments".into()));
            }
            let psi = lambdap_to_tame(inner, charp, fresh)?;
            // homogenize psi's system in (z0, zs) with exponent above the
            // block degree, so the pivot divides every term
            let z0 = fresh.fresh("z0_");
            let mut block: BTreeSet<String> = zs.iter().cloned().collect();
            let bign = psi
                .polys
                .iter()
                .map(|p| p.degree_in_block(&block))
                .max()
                .unwrap_or(0)
                + 1;
            block.insert(z0.clone());
            let mut polys: Vec<TPoly> = Vec::new();
            // zeta_0 q_0 - sum_i zeta_i q_i = 0, linear in the new block
            let mut lin = TPoly::var(charp, &z0).mul(&qs[0][0]);
            let zeta_names: Vec<String> = std::iter::once(z0.clone())
                .chain(zs.iter().cloned())
                .collect();
            for (i, z) in zs.iter().enumerate() {
                lin = lin.sub(&TPoly::var(charp, z).mul(&qs[i + 1][0]));
            }
            polys.push(lin);
            let zb: BTreeSet<String> = zs.iter().cloned().collect();
            for p in &psi.polys {
                polys.push(p.homogenize_block(&zb, &z0, bign)?);
            }
            segre_merge(charp, &polys, &zeta_names, &psi.zetas, fresh)
        }
    }
}

/// Degree-d linearization: generates the degree-d slice products
/// f = M * q_j symbolically and rewrites them as one zeta-linear system
/// over the degree-d monomials.
pub fn linearize_tame(phi: &TameFormula, d: u32, fresh: &mut FreshNames) -> Result<LinearTame> {
    phi.validate_homogeneous()?;
    let need = phi.zeta_degree() as u32;
    if d < need {
        return Err(Error::DegreeTooLow { given: d as usize, needed: need as usize });
    }
    let r = phi.zetas.len();
    let slice_monos = monomials_of_degree(r, d);
    let index: BTreeMap<Vec<u32>, usize> =
        slice_monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let block = phi.zeta_block();
    let mut columns: Vec<Vec<TPoly>> = Vec::new();
    for q in &phi.polys {
        let dq = q.homogeneous_block_degree(&block).ok_or(Error::NotTame)?;
        let split = split_by_block(q, &phi.zetas)?;
        for m in monomials_of_degree(r, d - dq) {
            let mut col = vec![TPoly::zero(phi.charp); slice_monos.len()];
            for (exps, coeff) in &split {
                let prod: Vec<u32> = exps.iter().zip(&m).map(|(a, b)| a + b).collect();
                let slot = index[&prod];
                col[slot] = col[slot].add(coeff);
            }
            columns.push(col);
        }
    }
    let xis: Vec<String> = (0..slice_monos.len()).map(|_| fresh.fresh("xi")).collect();
    // matrix[i][j]: coefficient of xi_i in column j
    let mut matrix = vec![vec![TPoly::zero(phi.charp); columns.len()]; slice_monos.len()];
    for (j, col) in columns.iter().enumerate() {
        for (i, entry) in col.iter().enumerate() {
            matrix[i][j] = entry.clone();
        }
    }
    Ok(LinearTame { charp: phi.charp, zetas: xis, matrix })
}

/// Evaluates a tame formula at a point through the differential-ideal
/// route: build the ideal slice at a degree schedule, close it under the
/// coefficient derivation, and test whether the slice stays proper.
/// Returns the verdict and the degree at which the schedule settled.
pub fn eval_tame_kolchin(oracle: &ModelOracle, phi: &TameFormula, point: &Point) -> Result<(bool, u32)> {
    if !matches!(oracle.kind, OracleKind::Pair { .. }) {
        return Err(Error::OracleMismatch("the Kolchin route needs the pair oracle".into()));
    }
    phi.validate_homogeneous()?;
    let d0 = phi.zeta_degree().max(1) as u32;
    let mut prev: Option<bool> = None;
    let mut degree = d0;
    for d in d0..=d0 + 4 {
        let v = kolchin_verdict(oracle, phi, point, d)?;
        degree = d;
        match prev {
            Some(p) if p == v => return Ok((v, d)),
            _ => prev = Some(v),
        }
    }
    Ok((prev.unwrap(), degree))
}

fn kolchin_verdict(oracle: &ModelOracle, phi: &TameFormula, point: &Point, d: u32) -> Result<bool> {
    let r = phi.zetas.len();
    let mut gens: Vec<ZPoly> = Vec::new();
    for q in &phi.polys {
        let split = split_by_block(q, &phi.zetas)?;
        let mut g: ZPoly = Vec::new();
        for (exps, coeff) in &split {
            let v = oracle.eval_tpoly(coeff, point)?;
            if !v.is_zero() {
                g.push((exps.clone(), v));
            }
        }
        if !g.is_empty() {
            gens.push(g);
        }
    }
    // the closed slice is the sum of the generator hulls, so its dimension
    // is the rank of the coefficient-split vectors
    let (slice_monos, level) = slice_vectors(&oracle.desc, r, &gens, d)?;
    Ok(e_span_dim(&oracle.desc, &level)? < slice_monos.len())
}

// ---------------------------------------------------------------------------
// simple-linear checks
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SimpleLinearReport {
    /// display (2): a nonzero constant row-kernel vector exists
    pub kernel_nonzero: bool,
    /// display (3): all maximal minors vanish
    pub minors_vanish: bool,
    /// display (4) on the sampled polynomial tuples
    pub dep_samples: Vec<bool>,
    pub implication_holds: bool,
}

/// Evaluates the checkable directions of the simple-linear reduction on a
/// concrete m x n matrix: the constant-kernel condition, the maximal
/// minors, and dep_m on sampled polynomial combinations of the columns.
pub fn simple_linear_checks(
    oracle: &ModelOracle,
    rows: &[Vec<FieldElement>],
    samples: usize,
    seed: u64,
) -> Result<SimpleLinearReport> {
    if !matches!(oracle.kind, OracleKind::Pair { .. }) {
        return Err(Error::OracleMismatch("simple-linear checks need the pair oracle".into()));
    }
    let desc = &oracle.desc;
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    // (2): exists nonzero zeta in E^m with sum_i zeta_i a_{i,j} = 0 for all j
    let columns: Vec<Vec<FieldElement>> = (0..n).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
    let live: Vec<Vec<FieldElement>> = columns.clone();
    let hull = e_hull(desc, &live)?;
    let kernel_nonzero = hull.len() < m;
    // (3): all m x m column minors vanish
    let mut minors_vanish = true;
    for cols in crate::exterior::subsets(n, m) {
        let sub_rows: Vec<Vec<FieldElement>> =
            rows.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect();
        if !Matrix::from_rows(desc, &sub_rows).det()?.is_zero() {
            minors_vanish = false;
            break;
        }
    }
    // (4): dep_m of sampled integer-polynomial column combinations
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dep_samples = Vec::with_capacity(samples);
    let flat: Vec<FieldElement> = rows.iter().flatten().cloned().collect();
    for _ in 0..samples {
        let rho: Vec<FieldElement> = (0..n)
            .map(|_| {
                // a small integer polynomial in the matrix entries
                let c0 = (rng.next_u64() % 7) as i64 - 3;
                let mut v = FieldElement::from_int(desc, c0);
                for _ in 0..2 {
                    let c = (rng.next_u64() % 7) as i64 - 3;
                    if c == 0 || flat.is_empty() {
                        continue;
                    }
                    let x1 = &flat[(rng.next_u64() % flat.len() as u64) as usize];
                    let x2 = &flat[(rng.next_u64() % flat.len() as u64) as usize];
                    v = v.add(&x1.mul(x2).mul_int(c));
                }
                v
            })
            .collect();
        let combos: Vec<FieldElement> = (0..m)
            .map(|i| {
                let mut acc = FieldElement::zero(desc);
                for (j, r) in rho.iter().enumerate() {
                    acc = acc.add(&rows[i][j].mul(r));
                }
                acc
            })
            .collect();
        dep_samples.push(wronskian(&combos)?.is_zero());
    }
    let implication_holds = !kernel_nonzero || (minors_vanish && dep_samples.iter().all(|&b| b));
    Ok(SimpleLinearReport { kernel_nonzero, minors_vanish, dep_samples, implication_holds })
}
