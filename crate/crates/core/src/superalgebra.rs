//! Axiom checks and structural operations on [`ModularSuperAlgebra`] values.

use crate::algebra::{ModularSuperAlgebra, SuperDim};
use crate::error::{Error, Result};
use crate::field::{self, FpMatrix, FpVector};
use crate::roots::Parity;
use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

pub use crate::field::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckReport {
    fn new(check: &str, witness: Option<Witness>) -> Self {
        CheckReport { check: check.into(), pass: witness.is_none(), witness }
    }
}

fn sign(g: &ModularSuperAlgebra, i: usize, j: usize) -> u32 {
    // (-1)^{|i||j|} as a residue
    if g.parity(i).is_odd() && g.parity(j).is_odd() {
        g.modulus() - 1
    } else {
        1
    }
}

pub fn check_super_skew(g: &ModularSuperAlgebra) -> CheckReport {
    let p = g.modulus();
    let n = g.dim();
    for i in 0..n {
        for j in i..n {
            // C(i,j,k) + (-1)^{|i||j|} C(j,i,k) = 0
            let s = sign(g, i, j);
            let mut acc: std::collections::BTreeMap<usize, u32> = std::collections::BTreeMap::new();
            for &(k, c) in g.bracket_basis(i, j) {
                *acc.entry(k as usize).or_insert(0) = c;
            }
            for &(k, c) in g.bracket_basis(j, i) {
                let e = acc.entry(k as usize).or_insert(0);
                *e = field::add(*e, field::mul(s, c, p), p);
            }
            if let Some((&k, _)) = acc.iter().find(|(_, &c)| c != 0) {
                return CheckReport::new("super_skew", Some(Witness { i, j, k }));
            }
        }
    }
    CheckReport::new("super_skew", None)
}

/// `[x_i,[x_j,x_k]] - [[x_i,x_j],x_k] - (-1)^{|i||j|}[x_j,[x_i,x_k]]` into `acc`.
fn jacobi_defect(g: &ModularSuperAlgebra, i: usize, j: usize, k: usize, acc: &mut [u32], touched: &mut Vec<usize>) {
    let p = g.modulus();
    let mut push = |acc: &mut [u32], idx: usize, c: u32| {
        if acc[idx] == 0 {
            touched.push(idx);
        }
        acc[idx] = field::add(acc[idx], c, p);
    };
    for &(a, c) in g.bracket_basis(j, k) {
        for &(l, d) in g.bracket_basis(i, a as usize) {
            push(acc, l as usize, field::mul(c, d, p));
        }
    }
    for &(a, c) in g.bracket_basis(i, j) {
        for &(l, d) in g.bracket_basis(a as usize, k) {
            push(acc, l as usize, field::neg(field::mul(c, d, p), p));
        }
    }
    let s = field::neg(sign(g, i, j), p);
    for &(a, c) in g.bracket_basis(i, k) {
        for &(l, d) in g.bracket_basis(j, a as usize) {
            push(acc, l as usize, field::mul(s, field::mul(c, d, p), p));
        }
    }
}

/// Full scan over basis triples, parallel over the first index.
pub fn check_super_jacobi(g: &ModularSuperAlgebra) -> CheckReport {
    let n = g.dim();
    let witness = (0..n).into_par_iter().find_map_first(|i| {
        let mut acc = vec![0u32; n];
        let mut touched = Vec::new();
        for j in 0..n {
            for k in 0..n {
                jacobi_defect(g, i, j, k, &mut acc, &mut touched);
                let mut bad = None;
                for &t in &touched {
                    if acc[t] != 0 && bad.is_none() {
                        bad = Some(t);
                    }
                    acc[t] = 0;
                }
                touched.clear();
                if bad.is_some() {
                    return Some(Witness { i, j, k });
                }
            }
        }
        None
    });
    CheckReport::new("super_jacobi", witness)
}

/// Sums of at most three distinct odd basis vectors with coefficients in {1, 2}.
pub fn odd_cube_polarization_set(g: &ModularSuperAlgebra) -> Vec<FpVector> {
    let odd = g.odd_indices();
    let p = g.modulus();
    let mut out = Vec::new();
    for size in 1..=3.min(odd.len()) {
        for combo in odd.iter().copied().combinations(size) {
            for coeffs in (0..size).map(|_| [1u32, 2]).multi_cartesian_product() {
                let mut v = FpVector::zeros(g.dim(), p);
                for (&i, &c) in combo.iter().zip(&coeffs) {
                    v.set(i, c % p);
                }
                out.push(v);
            }
        }
    }
    out
}

pub fn odd_cube(g: &ModularSuperAlgebra, x: &FpVector) -> FpVector {
    g.bracket(x, &g.bracket(x, x))
}

/// `[x,[x,x]] = 0` on the polarization set; the witness holds the support of a failing `x`.
pub fn check_odd_cubes(g: &ModularSuperAlgebra) -> CheckReport {
    let set = odd_cube_polarization_set(g);
    let bad = set.par_iter().find_first(|x| !odd_cube(g, x).is_zero());
    let witness = bad.map(|x| {
        let s: Vec<usize> = x.support().map(|(i, _)| i).collect();
        Witness { i: s[0], j: *s.get(1).unwrap_or(&s[0]), k: *s.get(2).unwrap_or(&s[0]) }
    });
    CheckReport::new("odd_cubes", witness)
}

pub fn superdim(g: &ModularSuperAlgebra) -> SuperDim {
    g.superdim()
}

/// `{x : [x, g] = 0}`, by intersecting kernels of `x ↦ [x, x_b]` one basis vector at a time.
pub fn center(g: &ModularSuperAlgebra) -> Subspace {
    let all: Vec<usize> = (0..g.dim()).collect();
    commutant(g, all.clone(), &all)
}

/// Odd vectors commuting with the whole odd part. A purely odd ideal lies in here.
pub fn odd_annihilator(g: &ModularSuperAlgebra) -> Subspace {
    let odd = g.odd_indices();
    commutant(g, odd.clone(), &odd)
}

/// Vectors in the span of basis vectors `start` commuting with every basis vector in `against`.
fn commutant(g: &ModularSuperAlgebra, start: Vec<usize>, against: &[usize]) -> Subspace {
    let (n, p) = (g.dim(), g.modulus());
    let mut basis: Vec<FpVector> = start.into_iter().map(|i| g.basis_vector(i)).collect();
    for &b in against {
        if basis.is_empty() {
            break;
        }
        let images: Vec<FpVector> = basis.iter().map(|v| g.bracket_with_basis(v, b)).collect();
        if images.iter().all(|v| v.is_zero()) {
            continue;
        }
        let m = FpMatrix::from_columns(&images, n, p);
        basis = m
            .kernel_basis()
            .iter()
            .map(|k| {
                let mut v = FpVector::zeros(n, p);
                for (a, c) in k.support() {
                    v.axpy(c, &basis[a]);
                }
                v
            })
            .collect();
    }
    Subspace::span(n, p, &basis)
}

pub fn derived_subalgebra(g: &ModularSuperAlgebra) -> Subspace {
    let (n, p) = (g.dim(), g.modulus());
    let mut s = Subspace::zero(n, p);
    for i in 0..n {
        for j in i..n {
            if s.is_full() {
                return s;
            }
            let cell = g.bracket_basis(i, j);
            if cell.is_empty() {
                continue;
            }
            let mut v = FpVector::zeros(n, p);
            for &(k, c) in cell {
                v.set(k as usize, c);
            }
            s.insert(&v);
        }
    }
    s
}

/// Smallest subspace containing `seeds` and stable under `ad u` for every `u` in `ops`.
pub fn submodule_closure(g: &ModularSuperAlgebra, seeds: &[FpVector], ops: &[FpVector]) -> Subspace {
    let (n, p) = (g.dim(), g.modulus());
    let mut s = Subspace::zero(n, p);
    let mut work: Vec<FpVector> = Vec::new();
    for v in seeds {
        if s.insert(v) {
            work.push(v.clone());
        }
    }
    let mut head = 0;
    while head < work.len() {
        let v = work[head].clone();
        head += 1;
        for u in ops {
            if s.is_full() {
                return s;
            }
            let w = g.bracket(u, &v);
            if s.insert(&w) {
                work.push(w);
            }
        }
    }
    s
}

/// Subalgebra generated by `vectors`: closing the span under `ad` of the generators
/// already yields every right-normed bracket.
pub fn generated_subalgebra(g: &ModularSuperAlgebra, vectors: &[FpVector]) -> Subspace {
    submodule_closure(g, vectors, vectors)
}

pub fn ideal_closure(g: &ModularSuperAlgebra, vectors: &[FpVector]) -> Subspace {
    let basis: Vec<FpVector> = (0..g.dim()).map(|i| g.basis_vector(i)).collect();
    submodule_closure(g, vectors, &basis)
}

pub fn is_homogeneous(g: &ModularSuperAlgebra, s: &Subspace) -> bool {
    s.basis().iter().all(|v| g.vector_parity(v).is_some())
}

pub fn is_ideal(g: &ModularSuperAlgebra, s: &Subspace) -> bool {
    s.basis().iter().all(|v| (0..g.dim()).all(|b| s.contains(&g.bracket_with_basis(v, b))))
}

pub fn is_subalgebra(g: &ModularSuperAlgebra, s: &Subspace) -> bool {
    let b = s.basis();
    (0..b.len()).all(|i| (i..b.len()).all(|j| s.contains(&g.bracket(&b[i], &b[j]))))
}

#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub parent: ModularSuperAlgebra,
    pub ideal: Subspace,
    pub quotient: ModularSuperAlgebra,
    pub projection: FpMatrix,
}

impl QuotientAlgebra {
    pub fn project(&self, v: &FpVector) -> FpVector {
        self.projection.mul_vec(v).expect("ambient dimension")
    }
}

/// Quotient by a homogeneous ideal; the surviving basis is the non-pivot coordinates.
pub fn quotient(g: &ModularSuperAlgebra, ideal: &Subspace) -> Result<QuotientAlgebra> {
    if ideal.ambient() != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: ideal.ambient() });
    }
    if !is_homogeneous(g, ideal) {
        return Err(Error::NotParityHomogeneous);
    }
    if !is_ideal(g, ideal) {
        return Err(Error::NotAnIdeal);
    }
    let (n, p) = (g.dim(), g.modulus());
    let keep: Vec<usize> = (0..n).filter(|c| !ideal.pivots().contains(c)).collect();
    let m = keep.len();
    let mut projection = FpMatrix::zeros(m, n, p);
    for j in 0..n {
        let r = ideal.reduce(&g.basis_vector(j));
        for (a, &c) in keep.iter().enumerate() {
            projection.set(a, j, r.get(c));
        }
    }
    let mut table = vec![Vec::new(); m * m];
    for a in 0..m {
        for b in 0..m {
            let w = ideal.reduce(&g.bracket(&g.basis_vector(keep[a]), &g.basis_vector(keep[b])));
            table[a * m + b] = keep
                .iter()
                .enumerate()
                .filter(|(_, &c)| w.get(c) != 0)
                .map(|(t, &c)| (t, w.get(c) as i64))
                .collect();
        }
    }
    let quotient = ModularSuperAlgebra::from_table(
        p,
        keep.iter().map(|&c| g.parity(c)).collect(),
        keep.iter().map(|&c| g.label(c).to_string()).collect(),
        table,
    )?;
    Ok(QuotientAlgebra { parent: g.clone(), ideal: ideal.clone(), quotient, projection })
}

/// A homogeneous subalgebra as an algebra in its echelon basis.
pub fn subalgebra(g: &ModularSuperAlgebra, s: &Subspace) -> Result<ModularSuperAlgebra> {
    if !is_homogeneous(g, s) {
        return Err(Error::NotParityHomogeneous);
    }
    let rows = s.basis();
    let m = rows.len();
    let mut table = vec![Vec::new(); m * m];
    for a in 0..m {
        for b in 0..m {
            let w = g.bracket(&rows[a], &rows[b]);
            let coords = s
                .coordinates(&w)
                .ok_or_else(|| Error::PreconditionViolated("subspace is not closed under the bracket".into()))?;
            table[a * m + b] = coords.iter().enumerate().filter(|(_, &c)| c != 0).map(|(t, &c)| (t, c as i64)).collect();
        }
    }
    let parity: Vec<Parity> = rows.iter().map(|v| g.vector_parity(v).unwrap()).collect();
    let labels = s.pivots().iter().map(|&c| format!("<{}>", g.label(c))).collect();
    ModularSuperAlgebra::from_table(g.modulus(), parity, labels, table)
}

/// The subalgebra generated by `generators`, modulo the ideal generated by odd cubes.
#[derive(Clone, Debug)]
pub struct GenSubquotient {
    pub generated: Subspace,
    pub generated_algebra: ModularSuperAlgebra,
    pub cube_ideal: Subspace,
    pub quotient: ModularSuperAlgebra,
    /// Generator images in quotient coordinates.
    pub images: Vec<FpVector>,
}

pub fn gen_subquotient(g: &ModularSuperAlgebra, generators: &[FpVector]) -> Result<GenSubquotient> {
    let generated = generated_subalgebra(g, generators);
    let sub = subalgebra(g, &generated)?;
    let cubes: Vec<FpVector> = odd_cube_polarization_set(&sub).iter().map(|x| odd_cube(&sub, x)).collect();
    let cube_ideal = ideal_closure(&sub, &cubes);
    let q = quotient(&sub, &cube_ideal)?;
    let images = generators
        .iter()
        .map(|v| {
            let c = generated.coordinates(v).expect("generator lies in the generated subalgebra");
            q.project(&FpVector::from_residues(c, g.modulus()))
        })
        .collect();
    Ok(GenSubquotient { generated, generated_algebra: sub, cube_ideal, quotient: q.quotient, images })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::{chevalley_by_name, gl, reduce_mod_p};

    fn lie(name: &str, p: u32) -> ModularSuperAlgebra {
        reduce_mod_p(&chevalley_by_name(name).unwrap(), p).unwrap()
    }

    #[test]
    fn checks_on_gl3() {
        let g = gl(3, 3).unwrap();
        assert!(check_super_skew(&g).pass);
        assert!(check_super_jacobi(&g).pass);
        assert!(check_odd_cubes(&g).pass);
        let bad = g.perturbed(1, 5, 2, 1);
        let r = check_super_skew(&bad);
        assert!(!r.pass);
        assert_eq!(r.witness, Some(Witness { i: 1, j: 5, k: 2 }));
        assert!(!check_super_jacobi(&bad).pass);
    }

    #[test]
    fn f4_structure() {
        let g = lie("f4", 3);
        assert!(check_super_jacobi(&g).pass);
        assert_eq!(center(&g).dim(), 0);
        assert_eq!(derived_subalgebra(&g).dim(), 52);
        let one = g.basis_vector(17);
        assert!(ideal_closure(&g, &[one]).is_full());
    }

    #[test]
    fn e6_center() {
        let g = lie("e6", 3);
        let z = center(&g);
        assert_eq!(z.dim(), 1);
        let q = quotient(&g, &z).unwrap();
        assert_eq!(q.quotient.dim(), 77);
        assert_eq!(center(&q.quotient).dim(), 0);
        assert_eq!(ideal_closure(&g, z.basis()), z);
    }

    #[test]
    fn gl3_derived() {
        let g = gl(3, 3).unwrap();
        assert_eq!(derived_subalgebra(&g).dim(), 8);
        assert_eq!(superdim(&g), SuperDim::new(9, 0));
        let abelian = ModularSuperAlgebra::from_upper(5, vec![Parity::Even; 2], vec!["a".into(), "b".into()], &[]).unwrap();
        assert_eq!(derived_subalgebra(&abelian).dim(), 0);
    }

    #[test]
    fn generation() {
        let g = lie("g2", 5);
        let gens: Vec<FpVector> = ["e1", "e2", "f1", "f2"].iter().map(|n| g.basis_vector(g.named(n).unwrap())).collect();
        let s = generated_subalgebra(&g, &gens);
        assert!(s.is_full());
        assert_eq!(generated_subalgebra(&g, &[]).dim(), 0);
        let e = generated_subalgebra(&g, &gens[..2]);
        assert_eq!(e.dim(), 6);
        assert_eq!(generated_subalgebra(&g, e.basis()), e);
        assert!(is_subalgebra(&g, &e));
    }

    #[test]
    fn quotient_errors() {
        let g = lie("a2", 5);
        let s = Subspace::span(8, 5, [&g.basis_vector(0)]);
        assert!(matches!(quotient(&g, &s), Err(Error::NotAnIdeal)));
        let zero = Subspace::zero(8, 5);
        assert_eq!(quotient(&g, &zero).unwrap().quotient.dim(), 8);
    }

    #[test]
    fn polarization_set_size() {
        let parity = vec![Parity::Odd; 4];
        let g = ModularSuperAlgebra::from_upper(3, parity, (0..4).map(|i| i.to_string()).collect(), &[]).unwrap();
        // 4*2 + 6*4 + 4*8
        assert_eq!(odd_cube_polarization_set(&g).len(), 64);
    }
}
