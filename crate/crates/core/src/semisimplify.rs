//! Semisimplification: the Lie superalgebra carried by the `J_1` and `J_{p-1}` chains
//! of a [`ChainDecomposition`].

use crate::algebra::{ModularSuperAlgebra, SuperDim};
use crate::error::{Error, Result};
use crate::field::{self, FpVector};
use crate::repalpha::{ChainDecomposition, JordanChain, Realization};
use crate::roots::Parity;
use crate::superalgebra::{check_super_jacobi, check_super_skew};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Labels of `L_m ⊗ L_n` after deleting negligible summands.
pub fn clebsch_gordan(m: usize, n: usize, p: u32) -> Result<Vec<usize>> {
    let top = p as usize - 1;
    if !(1..=top).contains(&m) || !(1..=top).contains(&n) {
        return Err(Error::PreconditionViolated(format!("labels must lie in 1..={top}")));
    }
    let r = m.min(n).min(top + 1 - m).min(top + 1 - n);
    Ok((1..=r).map(|i| m.abs_diff(n) + 2 * i - 1).collect())
}

/// `Σ_{a=1}^{p-1} (-1)^a [c_i[a], c_j[p-a]]`, chain vectors indexed from 1.
pub fn pairing_vector(r: &Realization, ci: &JordanChain, cj: &JordanChain) -> FpVector {
    let g = r.algebra();
    let p = r.modulus();
    let mut acc = FpVector::zeros(g.dim(), p);
    for a in 1..p as usize {
        let (Some(u), Some(v)) = (ci.vectors().get(a - 1), cj.vectors().get(p as usize - a - 1)) else {
            continue;
        };
        let s = if a % 2 == 1 { p - 1 } else { 1 };
        acc.axpy(s, &g.bracket(u, v));
    }
    acc
}

#[derive(Clone, Debug)]
pub struct SemisimplifiedAlgebra {
    pub algebra: ModularSuperAlgebra,
    /// Originating chain index for each output basis vector.
    pub provenance: Vec<usize>,
    pub chains: Vec<JordanChain>,
    pub tags: BTreeMap<String, usize>,
}

impl SemisimplifiedAlgebra {
    pub fn superdim(&self) -> SuperDim {
        self.algebra.superdim()
    }

    pub fn by_tag(&self, tag: &str) -> Option<usize> {
        self.tags.get(tag).copied()
    }

    pub fn index_of_chain(&self, chain: usize) -> Option<usize> {
        self.provenance.iter().position(|&c| c == chain)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let mut v = self.algebra.to_json_value();
        let p = self.algebra.modulus();
        let prov: Vec<serde_json::Value> = self
            .provenance
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let ch = &self.chains[c];
                serde_json::json!({
                    "index": i,
                    "chain": c,
                    "tag": ch.tag(),
                    "vectors": ch.vectors().iter().map(|x| x.to_signed()).collect::<Vec<_>>(),
                    "p": p,
                })
            })
            .collect();
        v["provenance"] = serde_json::Value::Array(prov);
        v
    }
}

/// Output order: `J_1` chains, then `J_{p-1}` chains, each in decomposition order.
fn output_chains(d: &ChainDecomposition) -> Vec<(usize, Parity)> {
    let p = d.modulus() as usize;
    let even = d.chains().iter().enumerate().filter(|(_, c)| c.len() == 1).map(|(i, _)| (i, Parity::Even));
    let odd = d.chains().iter().enumerate().filter(|(_, c)| c.len() == p - 1).map(|(i, _)| (i, Parity::Odd));
    even.chain(odd).collect()
}

fn labels_and_names(d: &ChainDecomposition, out: &[(usize, Parity)]) -> (Vec<String>, BTreeMap<String, usize>) {
    let labels: Vec<String> = (1..=out.len()).map(|k| format!("y{k}")).collect();
    let mut names: BTreeMap<String, usize> = labels.iter().cloned().zip(0..).collect();
    for (k, &(c, _)) in out.iter().enumerate() {
        if let Some(t) = d.chains()[c].tag() {
            names.insert(t.to_string(), k);
        }
    }
    (labels, names)
}

pub fn semisimplify(r: &Realization, d: &ChainDecomposition) -> Result<SemisimplifiedAlgebra> {
    if d.dim() != r.dim() || d.modulus() != r.modulus() {
        return Err(Error::DimensionMismatch { expected: r.dim(), found: d.dim() });
    }
    let g = r.algebra();
    let (n, p) = (g.dim(), g.modulus());
    let out = output_chains(d);
    let m = out.len();
    let heads = d.head_positions();
    let pinv = d
        .basis_matrix()
        .inverse()
        .ok_or_else(|| Error::PreconditionViolated("chain vectors are not a basis".into()))?;
    // row t of `read` is the coordinate functional of the head of output t; stored by input coordinate
    let mut read = vec![vec![0u32; m]; n];
    for (t, &(c, _)) in out.iter().enumerate() {
        for (x, row) in read.iter_mut().enumerate() {
            row[t] = pinv.get(heads[c], x);
        }
    }
    let project = |v: &FpVector| -> Vec<(usize, i64)> {
        let mut acc = vec![0u32; m];
        for (x, c) in v.support() {
            for (a, &q) in acc.iter_mut().zip(&read[x]) {
                if q != 0 {
                    *a = field::add(*a, field::mul(c, q, p), p);
                }
            }
        }
        acc.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k, c as i64)).collect()
    };
    let chains = d.chains();
    let rows: Vec<Vec<Vec<(usize, i64)>>> = (0..m)
        .into_par_iter()
        .map(|i| {
            let (ci, pi) = out[i];
            (0..m)
                .map(|j| {
                    let (cj, pj) = out[j];
                    let v = if pi.is_odd() && pj.is_odd() {
                        pairing_vector(r, &chains[ci], &chains[cj])
                    } else {
                        g.bracket(chains[ci].head(), chains[cj].head())
                    };
                    let want = pi.add(pj);
                    project(&v).into_iter().filter(|&(k, _)| out[k].1 == want).collect()
                })
                .collect()
        })
        .collect();
    let table: Vec<Vec<(usize, i64)>> = rows.into_iter().flatten().collect();
    let (labels, names) = labels_and_names(d, &out);
    let parity = out.iter().map(|&(_, q)| q).collect();
    let algebra = ModularSuperAlgebra::from_table(p, parity, labels, table)?.with_names(names);
    let skew = check_super_skew(&algebra);
    if !skew.pass {
        return Err(Error::JacobiViolation(format!("super skew fails at {:?}", skew.witness)));
    }
    let jac = check_super_jacobi(&algebra);
    if !jac.pass {
        return Err(Error::JacobiViolation(format!("super Jacobi fails at {:?}", jac.witness)));
    }
    let tags = out
        .iter()
        .enumerate()
        .filter_map(|(k, &(c, _))| chains[c].tag().map(|t| (t.to_string(), k)))
        .collect();
    Ok(SemisimplifiedAlgebra {
        algebra,
        provenance: out.iter().map(|&(c, _)| c).collect(),
        chains: chains.to_vec(),
        tags,
    })
}

/// Dense transcription of the char 3 structure constant rules, kept apart from
/// [`semisimplify`] as a cross-check: expand by solving against the full chain basis,
/// even-even and even-odd read off the ordinary bracket, odd-odd off
/// `-[x_i, x_j'] + [x_i', x_j]`, everything else zero.
pub fn char3_reference(r: &Realization, d: &ChainDecomposition) -> Result<ModularSuperAlgebra> {
    let p = r.modulus();
    if p != 3 {
        return Err(Error::PreconditionViolated("the reference rules are for p = 3".into()));
    }
    let g = r.algebra();
    let basis = d.basis_matrix();
    let heads = d.head_positions();
    let chains = d.chains();
    let ones: Vec<usize> = (0..chains.len()).filter(|&c| chains[c].len() == 1).collect();
    let twos: Vec<usize> = (0..chains.len()).filter(|&c| chains[c].len() == 2).collect();
    let all: Vec<usize> = ones.iter().chain(&twos).copied().collect();
    let n1 = ones.len();
    let m = all.len();
    let mut table = vec![Vec::new(); m * m];
    for i in 0..m {
        for j in 0..m {
            let (a, b) = (&chains[all[i]], &chains[all[j]]);
            let v = match (i < n1, j < n1) {
                (false, false) => {
                    let x = g.bracket(&a.vectors()[0], &b.vectors()[1]).neg();
                    x.add(&g.bracket(&a.vectors()[1], &b.vectors()[0]))
                }
                _ => g.bracket(&a.vectors()[0], &b.vectors()[0]),
            };
            let coords = basis.solve(&v)?.expect("chain basis spans");
            for k in 0..m {
                // even-even and odd-odd land in the even part, mixed pairs in the odd part
                let lands_even = (i < n1) == (j < n1);
                if (k < n1) != lands_even {
                    continue;
                }
                let c = coords.get(heads[all[k]]);
                if c != 0 {
                    table[i * m + j].push((k, c as i64));
                }
            }
        }
    }
    let parity = (0..m).map(|k| if k < n1 { Parity::Even } else { Parity::Odd }).collect();
    ModularSuperAlgebra::from_table(p, parity, (1..=m).map(|k| format!("y{k}")).collect(), table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FpMatrix;
    use crate::chevalley::{chevalley_by_name, free_nilpotent_example, gl, reduce_mod_p};
    use crate::repalpha::{jordan_decompose, rank_formula_counts, realize, structured_decompose};
    use crate::roots::cartan_matrix;
    use crate::superalgebra::{center, check_odd_cubes, derived_subalgebra};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn named(g: &ModularSuperAlgebra, n: &str) -> FpVector {
        g.basis_vector(g.named(n).unwrap())
    }

    fn gl3_case() -> (Realization, ChainDecomposition) {
        let g = Arc::new(gl(3, 3).unwrap());
        let r = realize(g.clone(), named(&g, "e23")).unwrap();
        let v = |s: &[&str], c: &[i64]| {
            let mut x = FpVector::zeros(9, 3);
            for (n, &k) in s.iter().zip(c) {
                x.axpy(field::reduce(k, 3), &named(&g, n));
            }
            x
        };
        let chains = vec![
            JordanChain::explicit(&r, vec![v(&["e11"], &[1])], None).unwrap(),
            JordanChain::explicit(&r, vec![v(&["e11", "e22", "e33"], &[1, 1, 1])], None).unwrap(),
            JordanChain::explicit(&r, vec![v(&["e12"], &[1]), v(&["e13"], &[-1])], None).unwrap(),
            JordanChain::explicit(&r, vec![v(&["e31"], &[1]), v(&["e21"], &[1])], None).unwrap(),
            JordanChain::explicit(&r, vec![v(&["e32"], &[1]), v(&["e22", "e33"], &[1, -1]), v(&["e23"], &[1])], None)
                .unwrap(),
        ];
        let d = ChainDecomposition::from_chains(&r, chains).unwrap();
        (r, d)
    }

    // J_m ⊗ J_n over F_p, decomposed by ranks, with the J_p blocks deleted
    fn brute_cg(m: usize, n: usize, p: u32) -> Vec<usize> {
        let shift = |k: usize| {
            let mut a = FpMatrix::zeros(k, k, p);
            for i in 0..k - 1 {
                a.set(i + 1, i, 1);
            }
            a
        };
        let (a, b) = (shift(m), shift(n));
        let mut t = FpMatrix::zeros(m * n, m * n, p);
        for i in 0..m {
            for j in 0..n {
                for k in 0..m {
                    for l in 0..n {
                        let mut x = 0;
                        if j == l {
                            x = field::add(x, a.get(i, k), p);
                        }
                        if i == k {
                            x = field::add(x, b.get(j, l), p);
                        }
                        t.set(i * n + j, k * n + l, x);
                    }
                }
            }
        }
        let counts = rank_formula_counts(&t, p).unwrap();
        let mut out = Vec::new();
        for (l, &c) in counts.iter().enumerate().take(p as usize - 1) {
            out.extend(std::iter::repeat(l + 1).take(c));
        }
        out
    }

    #[test]
    fn cg_examples() {
        assert_eq!(clebsch_gordan(2, 2, 3).unwrap(), vec![1]);
        assert_eq!(clebsch_gordan(1, 4, 5).unwrap(), vec![4]);
        assert_eq!(clebsch_gordan(2, 3, 5).unwrap(), vec![2, 4]);
        assert_eq!(brute_cg(2, 3, 5), vec![2, 4]);
        assert!(clebsch_gordan(0, 1, 5).is_err());
        assert!(clebsch_gordan(5, 1, 5).is_err());
    }

    proptest! {
        #[test]
        fn cg_matches_brute_force(pi in 0usize..3, m in 1usize..7, n in 1usize..7) {
            let p = [3u32, 5, 7][pi];
            prop_assume!(m < p as usize && n < p as usize);
            prop_assert_eq!(clebsch_gordan(m, n, p).unwrap(), brute_cg(m, n, p));
        }
    }

    #[test]
    fn gl3_gives_gl11() {
        let (r, d) = gl3_case();
        let c = &d.chains()[2..4];
        let pv = pairing_vector(&r, &c[0], &c[1]);
        assert_eq!(pv, d.chains()[1].head().clone());
        let s = semisimplify(&r, &d).unwrap();
        let a = &s.algebra;
        assert_eq!(s.superdim(), SuperDim::new(2, 2));
        let y = |k: usize| a.basis_vector(k - 1);
        assert_eq!(a.bracket(&y(1), &y(3)), y(3));
        assert_eq!(a.bracket(&y(1), &y(4)), y(4).neg());
        assert_eq!(a.bracket(&y(3), &y(4)), y(2));
        let reference = char3_reference(&r, &d).unwrap();
        assert_eq!(reference.constants().collect::<Vec<_>>(), a.constants().collect::<Vec<_>>());
    }

    #[test]
    fn g2_is_3_4() {
        let g = Arc::new(reduce_mod_p(&chevalley_by_name("g2").unwrap(), 3).unwrap());
        let r = realize(g.clone(), named(&g, "e2")).unwrap();
        let d = jordan_decompose(&r).unwrap();
        let s = semisimplify(&r, &d).unwrap();
        assert_eq!(s.superdim(), SuperDim::new(3, 4));
        let reference = char3_reference(&r, &d).unwrap();
        assert_eq!(reference.constants().collect::<Vec<_>>(), s.algebra.constants().collect::<Vec<_>>());
    }

    #[test]
    fn f4_e4_reference_and_functoriality() {
        let g = Arc::new(reduce_mod_p(&chevalley_by_name("f4").unwrap(), 3).unwrap());
        let r = realize(g.clone(), named(&g, "e4")).unwrap();
        let ds = structured_decompose(&r, &cartan_matrix("f4").unwrap(), &[4]).unwrap();
        let dg = jordan_decompose(&r).unwrap();
        let s1 = semisimplify(&r, &ds).unwrap();
        let s2 = semisimplify(&r, &dg).unwrap();
        let reference = char3_reference(&r, &ds).unwrap();
        assert_eq!(reference.constants().collect::<Vec<_>>(), s1.algebra.constants().collect::<Vec<_>>());
        for s in [&s1, &s2] {
            assert_eq!(s.superdim(), SuperDim::new(21, 14));
            assert!(check_odd_cubes(&s.algebra).pass);
        }
        assert_eq!(center(&s1.algebra).dim(), center(&s2.algebra).dim());
        let d1 = derived_subalgebra(&s1.algebra);
        let d2 = derived_subalgebra(&s2.algebra);
        assert_eq!(d1.dim(), d2.dim());
        assert!(s1.by_tag("e4").is_none());
        assert!(s1.by_tag("e3").is_some());
        let js = s1.to_json_value();
        assert_eq!(js["schema"], 1);
        assert_eq!(js["provenance"].as_array().unwrap().len(), 35);
    }

    #[test]
    fn zero_element_is_identity() {
        let g = Arc::new(gl(3, 3).unwrap());
        let r = realize(g.clone(), FpVector::zeros(9, 3)).unwrap();
        let d = jordan_decompose(&r).unwrap();
        let reference = char3_reference(&r, &d).unwrap();
        let s = semisimplify(&r, &d).unwrap();
        assert_eq!(s.superdim(), SuperDim::new(9, 0));
        // the chain basis is the coordinate basis, so constants coincide with gl3's
        assert_eq!(reference.constants().collect::<Vec<_>>(), g.constants().collect::<Vec<_>>());
    }

    #[test]
    fn free_nilpotent_fails_odd_cubes() {
        let (g, der) = free_nilpotent_example(3).unwrap();
        let r = Realization::from_derivation(Arc::new(g), der).unwrap();
        let d = jordan_decompose(&r).unwrap();
        let s = semisimplify(&r, &d).unwrap();
        assert_eq!(s.superdim(), SuperDim::new(1, 2));
        let rep = check_odd_cubes(&s.algebra);
        assert!(!rep.pass);
    }

    #[test]
    fn e8_mod5_is_55_32() {
        let g = Arc::new(reduce_mod_p(&chevalley_by_name("e8").unwrap(), 5).unwrap());
        let mut v = FpVector::zeros(g.dim(), 5);
        for n in ["e2", "e3", "e4"] {
            v.axpy(1, &named(&g, n));
        }
        let r = realize(g, v).unwrap();
        let d = jordan_decompose(&r).unwrap();
        assert_eq!(d.counts(), vec![55, 0, 0, 32, 13]);
        let s = semisimplify(&r, &d).unwrap();
        assert_eq!(s.superdim(), SuperDim::new(55, 32));
        assert!(check_odd_cubes(&s.algebra).pass);
    }

    #[test]
    fn rejects_other_primes_in_reference() {
        let g = Arc::new(gl(2, 5).unwrap());
        let r = realize(g.clone(), named(&g, "e12")).unwrap();
        let d = jordan_decompose(&r).unwrap();
        assert!(char3_reference(&r, &d).is_err());
    }
}
