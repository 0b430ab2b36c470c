//! Exterior algebra kernel: wedge products, Pluecker coordinates, inner
//! contraction, Grassmannian membership, and subspace recovery.
//!
//! Index sets are sorted k-subsets of {0..n-1} in lexicographic order.
//! The contraction sign convention: for a (k-1)-subset I and i not in I,
//! the coordinate of e_I -| zeta on position i is
//! (-1)^{#{a in I : a > i}} * zeta_{I + {i}}, i.e. the shuffle sign that
//! sorts (I, i) into the combined index set.

use std::sync::Arc;

use crate::algebra::{FieldDescriptor, FieldElement, Matrix};
use crate::error::{Error, Result};

/// All sorted k-subsets of {0..n-1} in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Homogeneous coordinates of a grade-k vector in the exterior power of
/// an n-dimensional space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PluckerVector {
    pub n: usize,
    pub k: usize,
    pub coords: Vec<FieldElement>,
    pub desc: Arc<FieldDescriptor>,
}

impl PluckerVector {
    pub fn new(desc: &Arc<FieldDescriptor>, n: usize, k: usize, coords: Vec<FieldElement>) -> Result<Self> {
        if coords.len() != binomial(n, k) {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coordinates for grade {k} in dimension {n}, got {}",
                binomial(n, k),
                coords.len()
            )));
        }
        Ok(PluckerVector { n, k, coords, desc: desc.clone() })
    }

    pub fn zero(desc: &Arc<FieldDescriptor>, n: usize, k: usize) -> Self {
        PluckerVector { n, k, coords: vec![FieldElement::zero(desc); binomial(n, k)], desc: desc.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(FieldElement::is_zero)
    }

    pub fn add(&self, other: &PluckerVector) -> PluckerVector {
        assert_eq!((self.n, self.k), (other.n, other.k));
        PluckerVector {
            n: self.n,
            k: self.k,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.add(b)).collect(),
            desc: self.desc.clone(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> PluckerVector {
        PluckerVector {
            n: self.n,
            k: self.k,
            coords: self.coords.iter().map(|a| a.mul(c)).collect(),
            desc: self.desc.clone(),
        }
    }

    /// True iff the two vectors differ by a nonzero scalar.
    pub fn proportional(&self, other: &PluckerVector) -> bool {
        if (self.n, self.k) != (other.n, other.k) {
            return false;
        }
        let mut ratio: Option<FieldElement> = None;
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => return false,
                (false, false) => {
                    let r = a.div(b).unwrap();
                    match &ratio {
                        None => ratio = Some(r),
                        Some(r0) => {
                            if *r0 != r {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        ratio.is_some()
    }
}

fn index_of(subsets: &[Vec<usize>], s: &[usize]) -> usize {
    subsets.binary_search_by(|probe| probe.as_slice().cmp(s)).expect("subset present")
}

/// Pluecker coordinates of v_1 /\ ... /\ v_k: the coordinate on a sorted
/// subset J is the k x k minor of the column matrix of the v_i on rows J.
pub fn wedge(desc: &Arc<FieldDescriptor>, vectors: &[Vec<FieldElement>]) -> Result<PluckerVector> {
    let k = vectors.len();
    assert!(k >= 1, "wedge of at least one vector");
    let n = vectors[0].len();
    if vectors.iter().any(|v| v.len() != n) {
        return Err(Error::DimensionMismatch("wedge vectors must share the ambient dimension".into()));
    }
    if k > n {
        return Err(Error::DimensionMismatch(format!("grade {k} exceeds dimension {n}")));
    }
    let subs = subsets(n, k);
    let mut coords = Vec::with_capacity(subs.len());
    for j in &subs {
        let rows: Vec<Vec<FieldElement>> = j
            .iter()
            .map(|&row| vectors.iter().map(|v| v[row].clone()).collect())
            .collect();
        coords.push(Matrix::from_rows(desc, &rows).det()?);
    }
    PluckerVector::new(desc, n, k, coords)
}

/// Inner product e_I -| zeta for a basis (k-1)-covector index set I.
pub fn contract(covector: &[usize], zeta: &PluckerVector) -> Result<Vec<FieldElement>> {
    if covector.len() + 1 != zeta.k {
        return Err(Error::GradeMismatch(format!(
            "covector grade {} does not contract grade {}",
            covector.len(),
            zeta.k
        )));
    }
    let subs = subsets(zeta.n, zeta.k);
    let mut out = vec![FieldElement::zero(&zeta.desc); zeta.n];
    'outer: for i in 0..zeta.n {
        if covector.contains(&i) {
            continue;
        }
        let mut joined = covector.to_vec();
        joined.push(i);
        joined.sort_unstable();
        for w in joined.windows(2) {
            if w[0] == w[1] {
                continue 'outer;
            }
        }
        let sign = covector.iter().filter(|&&a| a > i).count();
        let c = zeta.coords[index_of(&subs, &joined)].clone();
        out[i] = if sign % 2 == 0 { c } else { c.neg() };
    }
    Ok(out)
}

/// zeta /\ v for a plain vector v; used by the decomposability test.
pub fn wedge_with_vector(zeta: &PluckerVector, v: &[FieldElement]) -> Result<PluckerVector> {
    if v.len() != zeta.n {
        return Err(Error::DimensionMismatch("vector length must match ambient dimension".into()));
    }
    if zeta.k + 1 > zeta.n {
        // top grade exceeded: the (k+1)-power is zero-dimensional only when
        // k+1 > n; represent it as the empty-coordinate zero vector.
        return PluckerVector::new(&zeta.desc, zeta.n, zeta.k + 1, vec![]);
    }
    let subs_k = subsets(zeta.n, zeta.k);
    let subs_k1 = subsets(zeta.n, zeta.k + 1);
    let mut coords = vec![FieldElement::zero(&zeta.desc); subs_k1.len()];
    for (slot, l) in subs_k1.iter().enumerate() {
        let mut acc = FieldElement::zero(&zeta.desc);
        for (pos, &i) in l.iter().enumerate() {
            if v[i].is_zero() {
                continue;
            }
            let rest: Vec<usize> = l.iter().copied().filter(|&x| x != i).collect();
            let sign = l.len() - 1 - pos; // elements of L greater than i
            let term = zeta.coords[index_of(&subs_k, &rest)].mul(&v[i]);
            acc = if sign % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        coords[slot] = acc;
    }
    PluckerVector::new(&zeta.desc, zeta.n, zeta.k + 1, coords)
}

/// Grassmannian membership: zeta /\ (e -| zeta) = 0 for every basis
/// (k-1)-covector e.
pub fn is_decomposable(zeta: &PluckerVector) -> Result<bool> {
    if zeta.is_zero() {
        return Err(Error::ZeroInput);
    }
    for e in subsets(zeta.n, zeta.k - 1) {
        let v = contract(&e, zeta)?;
        if !wedge_with_vector(zeta, &v)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis of the smallest subspace V_zeta with zeta in its k-th exterior
/// power: the span of all contractions by basis covectors, returned in
/// reduced row echelon form.
pub fn recover_subspace(zeta: &PluckerVector) -> Result<Vec<Vec<FieldElement>>> {
    if zeta.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut rows = Vec::new();
    for e in subsets(zeta.n, zeta.k - 1) {
        rows.push(contract(&e, zeta)?);
    }
    let m = Matrix::from_rows(&zeta.desc, &rows);
    Ok(m.row_space_basis())
}

/// The Grassmannian equations for (n, k) as symbolic quadratic forms in
/// the Pluecker coordinates: for each basis covector index I and each
/// (k+1)-subset L, the coordinate of zeta /\ (e_I -| zeta) on L.
/// Returned as vectors of (monomial = coordinate index pair, integer
/// coefficient) triples: (a, b, c) meaning c * p_a * p_b.
pub fn grassmann_equation_terms(n: usize, k: usize) -> Vec<Vec<(usize, usize, i64)>> {
    let subs_k = subsets(n, k);
    let subs_k1 = subsets(n, k + 1);
    let mut eqs = Vec::new();
    for i_set in subsets(n, k - 1) {
        for l in &subs_k1 {
            let mut terms: Vec<(usize, usize, i64)> = Vec::new();
            for i in 0..n {
                if i_set.contains(&i) {
                    continue;
                }
                // coefficient of v_i in e_I -| zeta
                let mut joined = i_set.clone();
                joined.push(i);
                joined.sort_unstable();
                if joined.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                let contract_sign = if i_set.iter().filter(|&&a| a > i).count() % 2 == 0 { 1i64 } else { -1 };
                let a_idx = index_of(&subs_k, &joined);
                // wedge slot: i must lie in L
                let Some(pos) = l.iter().position(|&x| x == i) else {
                    continue;
                };
                let rest: Vec<usize> = l.iter().copied().filter(|&x| x != i).collect();
                let wedge_sign = if (l.len() - 1 - pos) % 2 == 0 { 1i64 } else { -1 };
                let b_idx = index_of(&subs_k, &rest);
                terms.push((b_idx, a_idx, contract_sign * wedge_sign));
            }
            if !terms.is_empty() {
                eqs.push(terms);
            }
        }
    }
    eqs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;

    fn qq() -> Arc<FieldDescriptor> {
        Arc::new(FieldDescriptor::rationals(&[]))
    }

    fn vecq(d: &Arc<FieldDescriptor>, vals: &[i64]) -> Vec<FieldElement> {
        vals.iter().map(|&v| FieldElement::from_int(d, v)).collect()
    }

    #[test]
    fn wedge_basis_vectors() {
        let d = qq();
        let z = wedge(&d, &[vecq(&d, &[1, 0, 0]), vecq(&d, &[0, 1, 0])]).unwrap();
        assert_eq!(z.coords, vecq(&d, &[1, 0, 0]));
    }

    #[test]
    fn wedge_minors() {
        let d = qq();
        let z = wedge(&d, &[vecq(&d, &[1, 1, 0]), vecq(&d, &[0, 1, 1])]).unwrap();
        assert_eq!(z.coords, vecq(&d, &[1, 1, 1]));
    }

    #[test]
    fn wedge_antisymmetry() {
        let d = qq();
        let a = vecq(&d, &[1, 2, 3]);
        let b = vecq(&d, &[0, 1, 1]);
        let z1 = wedge(&d, &[a.clone(), b.clone()]).unwrap();
        let z2 = wedge(&d, &[b, a]).unwrap();
        for (x, y) in z1.coords.iter().zip(&z2.coords) {
            assert_eq!(x.neg(), *y);
        }
    }

    #[test]
    fn contract_examples() {
        let d = qq();
        let z = wedge(&d, &[vecq(&d, &[1, 0, 0]), vecq(&d, &[0, 1, 0])]).unwrap();
        // e_{0} -| (e0 /\ e1) = e1 under the stated sign convention
        assert_eq!(contract(&[0], &z).unwrap(), vecq(&d, &[0, 1, 0]));
        // no overlap term
        assert_eq!(contract(&[2], &z).unwrap(), vecq(&d, &[0, 0, 0]));
    }

    #[test]
    fn contract_linear() {
        let d = qq();
        let z1 = wedge(&d, &[vecq(&d, &[1, 2, 0]), vecq(&d, &[0, 1, 1])]).unwrap();
        let z2 = wedge(&d, &[vecq(&d, &[1, 0, 3]), vecq(&d, &[2, 1, 0])]).unwrap();
        let sum = z1.add(&z2);
        let c1 = contract(&[1], &z1).unwrap();
        let c2 = contract(&[1], &z2).unwrap();
        let cs = contract(&[1], &sum).unwrap();
        for i in 0..3 {
            assert_eq!(cs[i], c1[i].add(&c2[i]));
        }
    }

    #[test]
    fn decomposability() {
        let d = qq();
        let e12 = wedge(&d, &[vecq(&d, &[1, 0, 0, 0]), vecq(&d, &[0, 1, 0, 0])]).unwrap();
        assert!(is_decomposable(&e12).unwrap());
        let e34 = wedge(&d, &[vecq(&d, &[0, 0, 1, 0]), vecq(&d, &[0, 0, 0, 1])]).unwrap();
        let mixed = e12.add(&e34);
        assert!(!is_decomposable(&mixed).unwrap());
        assert_eq!(is_decomposable(&PluckerVector::zero(&d, 4, 2)), Err(Error::ZeroInput));
    }

    #[test]
    fn recover_examples() {
        let d = qq();
        let z = wedge(&d, &[vecq(&d, &[1, 1, 0]), vecq(&d, &[0, 1, 1])]).unwrap();
        let basis = recover_subspace(&z).unwrap();
        assert_eq!(basis.len(), 2);
        let again = wedge(&d, &basis).unwrap();
        assert!(again.proportional(&z));

        let e12 = wedge(&d, &[vecq(&d, &[1, 0, 0, 0]), vecq(&d, &[0, 1, 0, 0])]).unwrap();
        let e34 = wedge(&d, &[vecq(&d, &[0, 0, 1, 0]), vecq(&d, &[0, 0, 0, 1])]).unwrap();
        let mixed = e12.add(&e34);
        assert_eq!(recover_subspace(&mixed).unwrap().len(), 4);
    }

    #[test]
    fn grassmann_equation_for_gr24() {
        // the single Pluecker relation p01*p23 - p02*p13 + p03*p12
        let eqs = grassmann_equation_terms(4, 2);
        let d = qq();
        let e12 = wedge(&d, &[vecq(&d, &[1, 0, 0, 0]), vecq(&d, &[0, 1, 0, 0])]).unwrap();
        let e34 = wedge(&d, &[vecq(&d, &[0, 0, 1, 0]), vecq(&d, &[0, 0, 0, 1])]).unwrap();
        let mixed = e12.add(&e34);
        let eval = |z: &PluckerVector| {
            eqs.iter().all(|terms| {
                let mut acc = FieldElement::zero(&d);
                for &(a, b, c) in terms {
                    acc = acc.add(&z.coords[a].mul(&z.coords[b]).mul_int(c));
                }
                acc.is_zero()
            })
        };
        assert!(eval(&e12));
        assert!(!eval(&mixed));
    }

    #[test]
    fn scaling_invariance() {
        let d = Arc::new(FieldDescriptor::rationals(&["t"]));
        let t = parse_element(&d, "t").unwrap();
        let v1: Vec<FieldElement> = ["1", "t", "0"].iter().map(|s| parse_element(&d, s).unwrap()).collect();
        let v2: Vec<FieldElement> = ["0", "1", "t+1"].iter().map(|s| parse_element(&d, s).unwrap()).collect();
        let z = wedge(&d, &[v1, v2]).unwrap();
        assert!(is_decomposable(&z).unwrap());
        assert!(is_decomposable(&z.scale(&t)).unwrap());
    }
}
