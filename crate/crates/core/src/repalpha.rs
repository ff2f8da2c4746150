//! Algebras as representations of `k[t]/(t^p)` through a nilpotent derivation,
//! and their decompositions into Jordan chains.

use crate::algebra::ModularSuperAlgebra;
use crate::error::{Error, Result};
use crate::field::{FpMatrix, FpVector, Subspace};
use crate::roots::{attached_node, is_admissible, Gcm};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct Realization {
    algebra: Arc<ModularSuperAlgebra>,
    element: Option<FpVector>,
    der: FpMatrix,
    degree: usize,
}

impl Realization {
    pub fn algebra(&self) -> &ModularSuperAlgebra {
        &self.algebra
    }
    pub fn algebra_arc(&self) -> &Arc<ModularSuperAlgebra> {
        &self.algebra
    }
    pub fn element(&self) -> Option<&FpVector> {
        self.element.as_ref()
    }
    pub fn der(&self) -> &FpMatrix {
        &self.der
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn modulus(&self) -> u32 {
        self.algebra.modulus()
    }
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
    pub fn apply(&self, v: &FpVector) -> FpVector {
        self.der.mul_vec(v).expect("dimension checked at construction")
    }

    /// Wraps an arbitrary derivation; checks the Leibniz rule and `degree <= p`.
    pub fn from_derivation(algebra: Arc<ModularSuperAlgebra>, der: FpMatrix) -> Result<Realization> {
        let n = algebra.dim();
        if der.rows() != n || der.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: der.rows() });
        }
        if !algebra.is_purely_even() {
            return Err(Error::PreconditionViolated("realizations need a purely even algebra".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let (xi, xj) = (algebra.basis_vector(i), algebra.basis_vector(j));
                let lhs = der.mul_vec(&algebra.bracket(&xi, &xj))?;
                let rhs = algebra
                    .bracket(&der.column(i), &xj)
                    .add(&algebra.bracket(&xi, &der.column(j)));
                if lhs != rhs {
                    return Err(Error::PreconditionViolated(format!("not a derivation on ({i}, {j})")));
                }
            }
        }
        let degree = der.nilpotency_degree()?;
        let p = algebra.modulus();
        if degree > p as usize {
            return Err(Error::DegreeExceedsP { degree, p });
        }
        Ok(Realization { algebra, element: None, der, degree })
    }
}

/// Realizes `algebra` through `ad v`.
pub fn realize(algebra: Arc<ModularSuperAlgebra>, v: FpVector) -> Result<Realization> {
    if v.len() != algebra.dim() {
        return Err(Error::DimensionMismatch { expected: algebra.dim(), found: v.len() });
    }
    if !algebra.is_purely_even() {
        return Err(Error::PreconditionViolated("realizations need a purely even algebra".into()));
    }
    let der = algebra.ad(&v);
    let degree = der.nilpotency_degree()?;
    let p = algebra.modulus();
    if degree > p as usize {
        return Err(Error::DegreeExceedsP { degree, p });
    }
    Ok(Realization { algebra, element: Some(v), der, degree })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanChain {
    vectors: Vec<FpVector>,
    tag: Option<String>,
}

impl JordanChain {
    /// The chain generated by `head` under `D`.
    pub fn generate(r: &Realization, head: FpVector, tag: Option<String>) -> JordanChain {
        let mut vectors = vec![head];
        loop {
            let next = r.apply(vectors.last().unwrap());
            if next.is_zero() {
                break;
            }
            vectors.push(next);
        }
        JordanChain { vectors, tag }
    }

    /// A chain from explicit vectors; checked against `D`.
    pub fn explicit(r: &Realization, vectors: Vec<FpVector>, tag: Option<String>) -> Result<JordanChain> {
        if vectors.is_empty() {
            return Err(Error::InvalidInput("empty chain".into()));
        }
        for w in vectors.windows(2) {
            if r.apply(&w[0]) != w[1] {
                return Err(Error::PreconditionViolated("chain vectors are not successive images".into()));
            }
        }
        if !r.apply(vectors.last().unwrap()).is_zero() {
            return Err(Error::PreconditionViolated("last chain vector is not killed".into()));
        }
        Ok(JordanChain { vectors, tag })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }
    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
    pub fn head(&self) -> &FpVector {
        &self.vectors[0]
    }
    pub fn vectors(&self) -> &[FpVector] {
        &self.vectors
    }
    pub fn tag(&self) -> Option<&str> {
        self.tag.as_deref()
    }
}

#[derive(Clone, Debug)]
pub struct ChainDecomposition {
    p: u32,
    dim: usize,
    chains: Vec<JordanChain>,
}

impl ChainDecomposition {
    /// Checks that the chains are valid for `r` and that their vectors form a basis.
    pub fn from_chains(r: &Realization, chains: Vec<JordanChain>) -> Result<ChainDecomposition> {
        let p = r.modulus();
        for c in &chains {
            if c.len() > p as usize {
                return Err(Error::PreconditionViolated(format!("chain of length {} exceeds p", c.len())));
            }
            JordanChain::explicit(r, c.vectors.clone(), None)?;
        }
        let total: usize = chains.iter().map(|c| c.len()).sum();
        if total != r.dim() {
            return Err(Error::DimensionMismatch { expected: r.dim(), found: total });
        }
        let span = Subspace::span(r.dim(), p, chains.iter().flat_map(|c| c.vectors.iter()));
        if !span.is_full() {
            return Err(Error::PreconditionViolated("chain vectors are not a basis".into()));
        }
        Ok(ChainDecomposition { p, dim: r.dim(), chains })
    }

    pub fn chains(&self) -> &[JordanChain] {
        &self.chains
    }
    pub fn modulus(&self) -> u32 {
        self.p
    }
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `(n_1, .., n_p)`.
    pub fn counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.p as usize];
        for ch in &self.chains {
            c[ch.len() - 1] += 1;
        }
        c
    }

    pub fn chain_by_tag(&self, tag: &str) -> Option<usize> {
        self.chains.iter().position(|c| c.tag.as_deref() == Some(tag))
    }

    /// Matrix whose columns are all chain vectors, chain after chain.
    pub fn basis_matrix(&self) -> FpMatrix {
        let cols: Vec<FpVector> = self.chains.iter().flat_map(|c| c.vectors.iter().cloned()).collect();
        FpMatrix::from_columns(&cols, self.dim, self.p)
    }

    /// Column index of the first vector of each chain in [`Self::basis_matrix`].
    pub fn head_positions(&self) -> Vec<usize> {
        let mut pos = Vec::with_capacity(self.chains.len());
        let mut at = 0;
        for c in &self.chains {
            pos.push(at);
            at += c.len();
        }
        pos
    }
}

pub fn block_counts(d: &ChainDecomposition) -> Vec<usize> {
    d.counts()
}

/// Counts from ranks of powers: `n_l = r(D^{l-1}) - 2 r(D^l) + r(D^{l+1})`.
pub fn rank_formula_counts(der: &FpMatrix, p: u32) -> Result<Vec<usize>> {
    let mut ranks = vec![der.rows()];
    let mut pw = FpMatrix::identity(der.rows(), p);
    for _ in 0..=p {
        pw = pw.mul(der)?;
        ranks.push(pw.rank());
    }
    Ok((1..=p as usize).map(|l| ranks[l - 1] + ranks[l + 1] - 2 * ranks[l]).collect())
}

fn order_of(d: &FpMatrix, v: &FpVector) -> usize {
    let mut k = 0;
    let mut cur = v.clone();
    while !cur.is_zero() {
        cur = d.mul_vec(&cur).unwrap();
        k += 1;
    }
    k
}

/// Jordan chains of a nilpotent matrix: seeds first, then completed by heads
/// taken from the kernel basis of each power, longest chains first.
fn chains_of(d: &FpMatrix, seeds: Vec<(FpVector, Option<String>)>) -> Result<Vec<(Vec<FpVector>, Option<String>)>> {
    let n = d.rows();
    let p = d.modulus();
    let deg = d.nilpotency_degree()?;
    let mut powers = vec![FpMatrix::identity(n, p)];
    for _ in 0..deg {
        let next = powers.last().unwrap().mul(d)?;
        powers.push(next);
    }
    let mut seeds: Vec<(usize, FpVector, Option<String>)> =
        seeds.into_iter().map(|(v, t)| (order_of(d, &v), v, t)).collect();
    if seeds.iter().any(|s| s.0 == 0) {
        return Err(Error::PreconditionViolated("zero seed vector".into()));
    }
    let mut heads: Vec<(usize, FpVector, Option<String>)> = Vec::new();
    for l in (1..=deg).rev() {
        let mut covered = Subspace::span(n, p, &powers[l - 1].kernel_basis());
        for (m, h, _) in &heads {
            covered.insert(&powers[m - l].mul_vec(h)?);
        }
        for (m, v, t) in seeds.iter_mut().filter(|s| s.0 == l) {
            if !covered.insert(v) {
                return Err(Error::PreconditionViolated(format!(
                    "seed {} is dependent at length {m}",
                    t.as_deref().unwrap_or("<untagged>")
                )));
            }
            heads.push((*m, v.clone(), t.take()));
        }
        for v in powers[l].kernel_basis() {
            if covered.insert(&v) {
                heads.push((l, v, None));
            }
        }
    }
    Ok(heads
        .into_iter()
        .map(|(m, h, t)| {
            let mut vs = vec![h];
            for _ in 1..m {
                let next = d.mul_vec(vs.last().unwrap()).unwrap();
                vs.push(next);
            }
            (vs, t)
        })
        .collect())
}

/// Connected components of the support graph of `d`, restricted to `coords`.
fn components(d: &FpMatrix, coords: &[usize]) -> Vec<Vec<usize>> {
    let n = d.rows();
    let mut local = vec![usize::MAX; n];
    for (a, &i) in coords.iter().enumerate() {
        local[i] = a;
    }
    let mut parent: Vec<usize> = (0..coords.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let nx = parent[y];
            parent[y] = r;
            y = nx;
        }
        r
    }
    for (a, &i) in coords.iter().enumerate() {
        for j in 0..n {
            if d.get(i, j) != 0 || d.get(j, i) != 0 {
                let b = local[j];
                if b == usize::MAX {
                    continue;
                }
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = std::collections::BTreeMap::new();
    for (a, &i) in coords.iter().enumerate() {
        let r = find(&mut parent, a);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Generic chains on a D-invariant coordinate subspace, block by block.
fn generic_chains(r: &Realization, coords: &[usize]) -> Result<Vec<JordanChain>> {
    let d = r.der();
    let (n, p) = (r.dim(), r.modulus());
    let mut out = Vec::new();
    for comp in components(d, coords) {
        if comp.len() == 1 {
            out.push(JordanChain { vectors: vec![FpVector::unit(n, comp[0], p)], tag: None });
            continue;
        }
        let sub = d.submatrix(&comp, &comp);
        for (vs, _) in chains_of(&sub, Vec::new())? {
            let vectors = vs
                .into_iter()
                .map(|v| {
                    let mut g = FpVector::zeros(n, p);
                    for (a, c) in v.support() {
                        g.set(comp[a], c);
                    }
                    g
                })
                .collect();
            out.push(JordanChain { vectors, tag: None });
        }
    }
    Ok(out)
}

/// Deterministic generic decomposition.
pub fn jordan_decompose(r: &Realization) -> Result<ChainDecomposition> {
    let coords: Vec<usize> = (0..r.dim()).collect();
    let chains = generic_chains(r, &coords)?;
    Ok(ChainDecomposition { p: r.modulus(), dim: r.dim(), chains })
}

/// Decomposition containing the given tagged heads, completed generically.
pub fn seeded_decompose(r: &Realization, seeds: Vec<(FpVector, String)>) -> Result<ChainDecomposition> {
    let seeds = seeds.into_iter().map(|(v, t)| (v, Some(t))).collect();
    let chains = chains_of(r.der(), seeds)?
        .into_iter()
        .map(|(vectors, tag)| JordanChain { vectors, tag })
        .collect();
    ChainDecomposition::from_chains(r, chains)
}

fn named_vector(g: &ModularSuperAlgebra, name: &str) -> Result<FpVector> {
    g.named(name).map(|i| g.basis_vector(i)).ok_or_else(|| Error::UnknownGenerator(name.into()))
}

/// The generator-compatible decomposition for `e = Σ_{i in S} e_i` with `S` admissible:
/// explicit chains on the span W of the simple root spaces, the root spaces of
/// `α_i + α_j` and the Cartan subalgebra, completed by generic chains on the span of the
/// remaining root spaces.
pub fn structured_decompose(r: &Realization, gcm: &Gcm, subset: &[usize]) -> Result<ChainDecomposition> {
    let g = r.algebra();
    let p = r.modulus();
    if p != 3 {
        return Err(Error::PreconditionViolated("structured decomposition is defined for p = 3".into()));
    }
    if !is_admissible(gcm, subset) {
        return Err(Error::PreconditionViolated(format!("{subset:?} is not admissible")));
    }
    let grading = g.grading().ok_or_else(|| Error::PreconditionViolated("algebra carries no root grading".into()))?;
    let n = gcm.n();
    let mut e_s = FpVector::zeros(g.dim(), p);
    let mut f_s = FpVector::zeros(g.dim(), p);
    for &i in subset {
        e_s.axpy(1, &named_vector(g, &format!("e{i}"))?);
        f_s.axpy(1, &named_vector(g, &format!("f{i}"))?);
    }
    if r.element() != Some(&e_s) {
        return Err(Error::PreconditionViolated("element is not the sum of the chosen simple root vectors".into()));
    }
    let pairs: Vec<(usize, usize)> = subset.iter().map(|&i| (i, attached_node(gcm, i).unwrap())).collect();
    let mut chains = Vec::new();
    let touched: Vec<usize> = pairs.iter().flat_map(|&(i, j)| [i, j]).collect();
    for &(i, j) in &pairs {
        let ej = named_vector(g, &format!("e{j}"))?;
        let fj = named_vector(g, &format!("f{j}"))?;
        chains.push(JordanChain::explicit(r, vec![ej.clone(), r.apply(&ej)], Some(format!("e{j}")))?);
        chains.push(JordanChain::explicit(r, vec![g.bracket(&f_s, &fj), fj], Some(format!("f{j}")))?);
        let fi = named_vector(g, &format!("f{i}"))?;
        let hi = named_vector(g, &format!("h{i}"))?;
        let ei = named_vector(g, &format!("e{i}"))?;
        chains.push(JordanChain::explicit(r, vec![fi, hi.clone(), ei.scale(crate::field::reduce(-2, p))], Some(format!("f{i}")))?);
        let hj = named_vector(g, &format!("h{j}"))?;
        chains.push(JordanChain::explicit(r, vec![hj.sub(&hi)], Some(format!("h{j}-h{i}")))?);
    }
    for k in 1..=n {
        if touched.contains(&k) {
            continue;
        }
        for kind in ["e", "f", "h"] {
            let v = named_vector(g, &format!("{kind}{k}"))?;
            chains.push(JordanChain::explicit(r, vec![v], Some(format!("{kind}{k}")))?);
        }
    }
    // complement: root spaces of height >= 2 in absolute value other than ±(α_i + α_j)
    let special: Vec<Vec<i32>> = pairs
        .iter()
        .flat_map(|&(i, j)| {
            let mut c = vec![0; n];
            c[i - 1] = 1;
            c[j - 1] = 1;
            [c.clone(), c.iter().map(|x| -x).collect()]
        })
        .collect();
    let rest: Vec<usize> = (0..g.dim())
        .filter(|&x| {
            let w = &grading[x];
            let h: i32 = w.iter().sum();
            h.abs() >= 2 && !special.contains(w)
        })
        .collect();
    let d = r.der();
    let inside: std::collections::HashSet<usize> = rest.iter().copied().collect();
    for &a in &rest {
        for b in 0..g.dim() {
            if d.get(b, a) != 0 && !inside.contains(&b) {
                return Err(Error::PreconditionViolated("complement of W is not invariant".into()));
            }
        }
    }
    chains.extend(generic_chains(r, &rest)?);
    ChainDecomposition::from_chains(r, chains)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::{chevalley_by_name, gl, reduce_mod_p};
    use crate::expr::parse_element;
    use crate::roots::cartan_matrix;
    use proptest::prelude::*;

    fn algebra(name: &str, p: u32) -> Arc<ModularSuperAlgebra> {
        Arc::new(reduce_mod_p(&chevalley_by_name(name).unwrap(), p).unwrap())
    }

    fn realize_str(g: &Arc<ModularSuperAlgebra>, s: &str) -> Result<Realization> {
        let (_, v) = parse_element(s, g)?;
        realize(g.clone(), v)
    }

    #[test]
    fn degrees() {
        let f4 = algebra("f4", 3);
        assert_eq!(realize_str(&f4, "e4").unwrap().degree(), 3);
        let e6 = algebra("e6", 3);
        // the A2-regular element is 3-nilpotent as a matrix, so (ad x)^3 = ad(x^[3]) = 0
        assert_eq!(realize_str(&e6, "e1 + e3").unwrap().degree(), 3);
        let err = realize_str(&e6, "e1 + e3 + e4").unwrap_err();
        assert!(matches!(err, Error::DegreeExceedsP { degree, p: 3 } if degree > 3), "{err:?}");
        let zero = realize(f4.clone(), FpVector::zeros(52, 3)).unwrap();
        assert_eq!(zero.degree(), 1);
        let h = realize_str(&f4, "h1").unwrap_err();
        assert_eq!(h, Error::NotNilpotent);
    }

    #[test]
    fn g2_beta() {
        let g2 = algebra("g2", 3);
        let r = realize_str(&g2, "e2").unwrap();
        assert_eq!(r.degree(), 3);
        let d = jordan_decompose(&r).unwrap();
        assert_eq!(d.counts(), vec![3, 4, 1]);
        assert_eq!(rank_formula_counts(r.der(), 3).unwrap(), vec![3, 4, 1]);
    }

    #[test]
    fn f4_e4_counts_and_chains() {
        let f4 = algebra("f4", 3);
        let r = realize_str(&f4, "e4").unwrap();
        assert_eq!(jordan_decompose(&r).unwrap().counts(), vec![21, 14, 1]);
        let gcm = cartan_matrix("f4").unwrap();
        let s = structured_decompose(&r, &gcm, &[4]).unwrap();
        assert_eq!(s.counts(), vec![21, 14, 1]);
        let g = r.algebra();
        let e3 = g.basis_vector(g.named("e3").unwrap());
        let e4 = g.basis_vector(g.named("e4").unwrap());
        let f3 = g.basis_vector(g.named("f3").unwrap());
        let f4v = g.basis_vector(g.named("f4").unwrap());
        let c = &s.chains()[s.chain_by_tag("e3").unwrap()];
        assert_eq!(c.vectors(), &[e3.clone(), g.bracket(&e4, &e3)]);
        let c = &s.chains()[s.chain_by_tag("f3").unwrap()];
        assert_eq!(c.vectors(), &[g.bracket(&f4v, &f3), f3]);
        let c = &s.chains()[s.chain_by_tag("f4").unwrap()];
        assert_eq!(c.len(), 3);
        assert_eq!(c.vectors()[2], e4.scale(1));
    }

    #[test]
    fn e6_pair_tags() {
        let e6 = algebra("e6", 3);
        let r = realize_str(&e6, "e1 + e2").unwrap();
        let gcm = cartan_matrix("e6").unwrap();
        let s = structured_decompose(&r, &gcm, &[1, 2]).unwrap();
        assert_eq!(s.counts(), vec![22, 16, 8]);
        for t in ["e3", "e4", "f3", "f4", "h3-h1", "h4-h2", "e5", "f6", "h5"] {
            assert!(s.chain_by_tag(t).is_some(), "{t}");
        }
        let g = r.algebra();
        let c = &s.chains()[s.chain_by_tag("e3").unwrap()];
        let e1 = g.basis_vector(g.named("e1").unwrap());
        assert_eq!(c.vectors()[1], g.bracket(&e1, &c.vectors()[0]));
    }

    #[test]
    fn structured_preconditions() {
        let e6 = algebra("e6", 3);
        let gcm = cartan_matrix("e6").unwrap();
        let r = realize_str(&e6, "e1").unwrap();
        assert!(matches!(structured_decompose(&r, &gcm, &[2]), Err(Error::PreconditionViolated(_))));
        let r = realize_str(&e6, "e3").unwrap();
        assert!(matches!(structured_decompose(&r, &gcm, &[3]), Err(Error::PreconditionViolated(_))));
        let r0 = realize(e6.clone(), FpVector::zeros(78, 3)).unwrap();
        assert_eq!(structured_decompose(&r0, &gcm, &[]).unwrap().counts(), vec![78, 0, 0]);
    }

    #[test]
    fn zero_on_gl3() {
        let g = Arc::new(gl(3, 3).unwrap());
        let r = realize(g, FpVector::zeros(9, 3)).unwrap();
        assert_eq!(jordan_decompose(&r).unwrap().counts(), vec![9, 0, 0]);
    }

    #[test]
    fn seeds_must_be_independent() {
        let g2 = algebra("g2", 3);
        let r = realize_str(&g2, "e2").unwrap();
        let g = r.algebra();
        let f2 = g.basis_vector(g.named("f2").unwrap());
        let d = seeded_decompose(&r, vec![(f2.clone(), "a".into())]).unwrap();
        assert_eq!(d.chains()[d.chain_by_tag("a").unwrap()].len(), 3);
        let err = seeded_decompose(&r, vec![(f2.clone(), "a".into()), (f2.scale(2), "b".into())]);
        assert!(matches!(err, Err(Error::PreconditionViolated(_))));
    }

    fn check_decomposition(r: &Realization, d: &ChainDecomposition) {
        let p = r.modulus() as usize;
        let counts = d.counts();
        assert_eq!(counts.iter().enumerate().map(|(l, c)| (l + 1) * c).sum::<usize>(), r.dim());
        assert_eq!(counts, rank_formula_counts(r.der(), r.modulus()).unwrap());
        assert!(counts.len() == p);
        for c in d.chains() {
            for w in c.vectors().windows(2) {
                assert_eq!(r.apply(&w[0]), w[1]);
            }
            assert!(r.apply(c.vectors().last().unwrap()).is_zero());
        }
        let span = Subspace::span(r.dim(), r.modulus(), d.chains().iter().flat_map(|c| c.vectors().iter()));
        assert!(span.is_full());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn random_nilpotents_decompose(coeffs in proptest::collection::vec(0i64..3, 6), name in prop_oneof![Just("g2"), Just("a3"), Just("b2")]) {
            // combinations of positive root vectors are nilpotent; degree may exceed p
            let g = algebra(name, 3);
            let m = (g.dim() - g.grading().unwrap().iter().filter(|w| w.iter().all(|&x| x == 0)).count()) / 2;
            let mut v = FpVector::zeros(g.dim(), 3);
            for (k, &c) in coeffs.iter().enumerate().take(m) {
                v.set(k, c as u32);
            }
            match realize(g.clone(), v) {
                Ok(r) => {
                    let d = jordan_decompose(&r).unwrap();
                    check_decomposition(&r, &d);
                }
                Err(Error::DegreeExceedsP { degree, .. }) => prop_assert!(degree > 3),
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }

    #[test]
    fn free_nilpotent_realization() {
        let (g, d) = crate::chevalley::free_nilpotent_example(3).unwrap();
        let r = Realization::from_derivation(Arc::new(g), d).unwrap();
        let dec = jordan_decompose(&r).unwrap();
        assert_eq!(dec.counts(), vec![1, 2, 0]);
        check_decomposition(&r, &dec);
    }
}
