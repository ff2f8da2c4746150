//! Certificates identifying a semisimplified algebra with a contragredient target:
//! superdimension, Chevalley-type relations on generator images, generation, odd cubes.

use crate::algebra::{ModularSuperAlgebra, SuperDim};
use crate::error::{Error, Result};
use crate::field::{self, FpVector};
use crate::repalpha::{seeded_decompose, ChainDecomposition, Realization};
use crate::roots::{cartan_matrix, Gcm, Parity};
use crate::semisimplify::SemisimplifiedAlgebra;
use crate::superalgebra::{check_odd_cubes, check_super_jacobi, gen_subquotient, generated_subalgebra, submodule_closure};
use itertools::Itertools;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetInfo {
    pub name: String,
    pub p: u32,
    /// `None` for targets identified through their even part instead.
    pub gcm: Option<Gcm>,
    pub superdim: SuperDim,
    pub even_type: Option<String>,
}

fn target(name: &str, a: &[&[i64]], parity: &[u8], sd: (usize, usize)) -> TargetInfo {
    let a = a.iter().map(|r| r.to_vec()).collect();
    let parity = parity.iter().map(|&b| Parity::from_bit(b)).collect();
    TargetInfo {
        name: name.into(),
        p: 3,
        gcm: Some(Gcm::validate(a, parity).expect("catalog matrices are valid")),
        superdim: SuperDim::new(sd.0, sd.1),
        even_type: None,
    }
}

/// The twelve exceptional targets.
pub fn target_catalog() -> Vec<TargetInfo> {
    vec![
        target("g(1,6)", &[&[2, -1, 0], &[-1, 2, -2], &[0, -1, 0]], &[0, 0, 1], (21, 14)),
        target("g(2,3)", &[&[0, -1, 0], &[-1, 0, -1], &[0, -1, 0]], &[1, 1, 1], (11, 14)),
        target(
            "g(3,3)",
            &[&[0, -1, 0, 0], &[-1, 0, -1, 0], &[0, -1, 2, -1], &[0, 0, -1, 2]],
            &[1, 1, 0, 0],
            (22, 16),
        ),
        target(
            "g(2,6)",
            &[&[2, -1, 0, 0, 0], &[-1, 2, -1, 0, 0], &[0, -1, 0, -1, 0], &[0, 0, -1, 2, -1], &[0, 0, 0, -1, 2]],
            &[0, 0, 1, 0, 0],
            (35, 20),
        ),
        target(
            "g(4,3)",
            &[&[0, -1, 0, 0], &[-1, 0, -1, 0], &[0, -1, 2, -1], &[0, 0, -1, 0]],
            &[1, 1, 0, 1],
            (24, 26),
        ),
        target(
            "g(4,6)",
            &[
                &[2, 0, -1, 0, 0, 0],
                &[0, 0, -1, 0, 0, 0],
                &[-1, -1, 2, -1, 0, 0],
                &[0, 0, -1, 2, -1, 0],
                &[0, 0, 0, -1, 2, -1],
                &[0, 0, 0, 0, -1, 2],
            ],
            &[0, 1, 0, 0, 0, 0],
            (66, 32),
        ),
        target(
            "el(5;3)",
            &[&[2, 0, -1, 0, 0], &[0, 0, -1, 0, 0], &[-1, -1, 2, -1, 0], &[0, 0, -1, 2, -1], &[0, 0, 0, -1, 0]],
            &[0, 1, 0, 0, 1],
            (39, 32),
        ),
        target(
            "g(8,3)",
            &[&[0, -1, 0, 0, 0], &[-1, 0, -1, 0, 0], &[0, -1, 2, -1, 0], &[0, 0, -1, 2, -1], &[0, 0, 0, -1, 0]],
            &[1, 1, 0, 0, 1],
            (55, 50),
        ),
        target(
            "g(6,6)",
            &[
                &[0, -1, 0, 0, 0, 0],
                &[-1, 0, -1, 0, 0, 0],
                &[0, -1, 2, -1, 0, 0],
                &[0, 0, -1, 2, -1, 0],
                &[0, 0, 0, -1, 2, -1],
                &[0, 0, 0, 0, -1, 2],
            ],
            &[1, 1, 0, 0, 0, 0],
            (78, 64),
        ),
        target(
            "g(8,6)",
            &[
                &[2, 0, -1, 0, 0, 0, 0],
                &[0, 0, -1, 0, 0, 0, 0],
                &[-1, -1, 2, -1, 0, 0, 0],
                &[0, 0, -1, 2, -1, 0, 0],
                &[0, 0, 0, -1, 2, -1, 0],
                &[0, 0, 0, 0, -1, 2, -1],
                &[0, 0, 0, 0, 0, -1, 2],
            ],
            &[0, 1, 0, 0, 0, 0, 0],
            (133, 56),
        ),
        target(
            "g(3,6)",
            &[&[0, -1, 0, 0], &[-1, 0, -1, 0], &[0, -1, 0, -2], &[0, 0, -1, 2]],
            &[1, 1, 1, 0],
            (36, 40),
        ),
        TargetInfo {
            name: "el(5;5)".into(),
            p: 5,
            gcm: None,
            superdim: SuperDim::new(55, 32),
            even_type: Some("B5".into()),
        },
    ]
}

/// Targets outside the exceptional list; `sl(3|1)` in the matrix form the F4 diagram produces at node 1.
pub fn auxiliary_targets() -> Vec<TargetInfo> {
    vec![target("sl(3|1)", &[&[0, -2, 0], &[-1, 2, -1], &[0, -1, 2]], &[1, 0, 0], (9, 6))]
}

pub fn lookup_target(name: &str) -> Result<TargetInfo> {
    let key: String = name.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    target_catalog()
        .into_iter()
        .chain(auxiliary_targets())
        .find(|t| t.name == key)
        .ok_or_else(|| Error::UnknownName(name.into()))
}

/// Images `ẽ_i, f̃_i, h̃_i` of the target's generators, in the target's node order once matched.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorImages {
    pub e: Vec<FpVector>,
    pub f: Vec<FpVector>,
    pub h: Vec<FpVector>,
    pub parity: Vec<Parity>,
    /// Where each triple came from (a chain tag or a grade).
    pub origin: Vec<String>,
}

impl GeneratorImages {
    pub fn rank(&self) -> usize {
        self.e.len()
    }

    pub fn all(&self) -> Vec<FpVector> {
        self.e.iter().chain(&self.f).chain(&self.h).cloned().collect()
    }
}

fn tag_vector(ss: &SemisimplifiedAlgebra, tag: &str) -> Result<FpVector> {
    ss.by_tag(tag)
        .map(|k| ss.algebra.basis_vector(k))
        .ok_or_else(|| Error::MissingTags(tag.into()))
}

/// Images read off the chain tags of a structured decomposition for the admissible set
/// `subset`, in the natural order of the nodes that survive. `h̃` is provisionally the
/// image of `h_j - h_i` (odd) or `h_k` (even); [`match_target`] replaces it by `[ẽ, f̃]`.
pub fn generator_images(ss: &SemisimplifiedAlgebra, gcm: &Gcm, subset: &[usize]) -> Result<GeneratorImages> {
    let (_, keep) = crate::roots::derive_tilde(gcm, subset)?;
    let partner: BTreeMap<usize, usize> = subset
        .iter()
        .map(|&i| (crate::roots::attached_node(gcm, i).expect("admissible"), i))
        .collect();
    let mut out = GeneratorImages { e: vec![], f: vec![], h: vec![], parity: vec![], origin: vec![] };
    for &k in &keep {
        let h = match partner.get(&k) {
            Some(&i) => format!("h{k}-h{i}"),
            None => format!("h{k}"),
        };
        out.e.push(tag_vector(ss, &format!("e{k}"))?);
        out.f.push(tag_vector(ss, &format!("f{k}"))?);
        out.h.push(tag_vector(ss, &h)?);
        out.parity.push(if partner.contains_key(&k) { Parity::Odd } else { Parity::Even });
        out.origin.push(format!("e{k}"));
    }
    Ok(out)
}

/// `Some(c)` with `w = c v`, for nonzero `v`.
fn ratio(w: &FpVector, v: &FpVector) -> Option<u32> {
    let p = v.modulus();
    let lead = v.leading()?;
    let c = field::mul(w.get(lead), field::inv(v.get(lead), p), p);
    (v.scale(c) == *w).then_some(c)
}

/// Resets `h̃ = [ẽ, f̃]`, scales each row with nonzero diagonal to `2`, and returns the
/// realized matrix `B` with `[h̃_i, ẽ_j] = B_ij ẽ_j`.
fn normalize(g: &ModularSuperAlgebra, gens: &mut GeneratorImages) -> Option<Vec<Vec<u32>>> {
    let p = g.modulus();
    let r = gens.rank();
    for m in 0..r {
        let pe = g.vector_parity(&gens.e[m])?;
        if gens.e[m].is_zero() || g.vector_parity(&gens.f[m]) != Some(pe) {
            return None;
        }
        gens.parity[m] = pe;
        gens.h[m] = g.bracket(&gens.e[m], &gens.f[m]);
        if gens.h[m].is_zero() {
            return None;
        }
    }
    let mut b = vec![vec![0u32; r]; r];
    for m in 0..r {
        for l in 0..r {
            b[m][l] = ratio(&g.bracket(&gens.h[m], &gens.e[l]), &gens.e[l])?;
        }
        if b[m][m] != 0 {
            let s = field::mul(2, field::inv(b[m][m], p), p);
            gens.f[m] = gens.f[m].scale(s);
            gens.h[m] = gens.h[m].scale(s);
            b[m].iter_mut().for_each(|x| *x = field::mul(*x, s, p));
        }
    }
    Some(b)
}

/// Node bijection `perm` (target node `t` ↔ found node `perm[t]`) and row scalars with
/// `B[perm t][perm t'] = c_t ã_{t t'}`; `c_t = 1` on rows with nonzero diagonal.
pub fn match_matrix(b: &[Vec<u32>], parity: &[Parity], target: &Gcm, p: u32) -> Option<(Vec<usize>, Vec<u32>)> {
    let r = target.n();
    if b.len() != r {
        return None;
    }
    let a: Vec<Vec<u32>> = (0..r).map(|i| (0..r).map(|j| field::reduce(target.entry(i, j), p)).collect()).collect();
    'perm: for perm in (0..r).permutations(r) {
        let mut scales = Vec::with_capacity(r);
        for t in 0..r {
            if parity[perm[t]] != target.parity()[t] {
                continue 'perm;
            }
            let row = &b[perm[t]];
            let c = if a[t][t] != 0 {
                1
            } else {
                match (0..r).find(|&u| a[t][u] != 0) {
                    Some(u) => field::mul(row[perm[u]], field::inv(a[t][u], p), p),
                    None => 1,
                }
            };
            if c == 0 || (0..r).any(|u| row[perm[u]] != field::mul(c, a[t][u], p)) {
                continue 'perm;
            }
            scales.push(c);
        }
        return Some((perm, scales));
    }
    None
}

/// Normalizes, matches against `target` and reorders into its node order.
pub fn match_target(g: &ModularSuperAlgebra, gens: &GeneratorImages, target: &Gcm) -> Option<(GeneratorImages, Vec<usize>)> {
    let mut gens = gens.clone();
    let b = normalize(g, &mut gens)?;
    let p = g.modulus();
    let (perm, scales) = match_matrix(&b, &gens.parity, target, p)?;
    let mut out = GeneratorImages { e: vec![], f: vec![], h: vec![], parity: vec![], origin: vec![] };
    for (t, &m) in perm.iter().enumerate() {
        let s = field::inv(scales[t], p);
        out.e.push(gens.e[m].clone());
        out.f.push(gens.f[m].scale(s));
        out.h.push(gens.h[m].scale(s));
        out.parity.push(gens.parity[m]);
        out.origin.push(gens.origin[m].clone());
    }
    Some((out, perm))
}

/// Integer grading of the semisimplified basis inherited from the root grading of the
/// original algebra, projected away from the nodes in `support`: `ad(Σ_{i∈support} e_i)`
/// preserves it, so every chain is homogeneous.
pub fn inherited_grading(ss: &SemisimplifiedAlgebra, original: &ModularSuperAlgebra, support: &[usize]) -> Result<Vec<Vec<i32>>> {
    let grading = original
        .grading()
        .ok_or_else(|| Error::PreconditionViolated("original algebra carries no root grading".into()))?;
    let keep: Vec<usize> = (0..grading.first().map_or(0, |w| w.len())).filter(|k| !support.contains(&(k + 1))).collect();
    let project = |x: usize| keep.iter().map(|&k| grading[x][k]).collect::<Vec<i32>>();
    ss.provenance
        .iter()
        .map(|&c| {
            let mut grades = ss.chains[c].head().support().map(|(x, _)| project(x));
            let first = grades.next().expect("chain heads are nonzero");
            if grades.all(|w| w == first) {
                Ok(first)
            } else {
                Err(Error::PreconditionViolated(format!("chain {c} is not homogeneous")))
            }
        })
        .collect()
}

fn grade_index(grades: &[Vec<i32>]) -> HashMap<Vec<i32>, Vec<usize>> {
    let mut m: HashMap<Vec<i32>, Vec<usize>> = HashMap::new();
    for (k, w) in grades.iter().enumerate() {
        m.entry(w.clone()).or_default().push(k);
    }
    m
}

fn lex_positive(w: &[i32]) -> bool {
    w.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// Positive grades that are not sums of two positive grades, for the lexicographic order.
pub fn lex_simple_grades(grades: &[Vec<i32>]) -> Vec<Vec<i32>> {
    let pos: BTreeSet<Vec<i32>> = grades.iter().filter(|w| lex_positive(w)).cloned().collect();
    pos.iter()
        .filter(|w| {
            !pos.iter().any(|a| {
                let rest: Vec<i32> = w.iter().zip(a).map(|(x, y)| x - y).collect();
                lex_positive(&rest) && pos.contains(&rest)
            })
        })
        .cloned()
        .collect()
}

fn images_at(g: &ModularSuperAlgebra, index: &HashMap<Vec<i32>, Vec<usize>>, simple: &[Vec<i32>]) -> Option<GeneratorImages> {
    let mut out = GeneratorImages { e: vec![], f: vec![], h: vec![], parity: vec![], origin: vec![] };
    for w in simple {
        let neg: Vec<i32> = w.iter().map(|x| -x).collect();
        let (up, down) = (index.get(w)?, index.get(&neg)?);
        if up.len() != 1 || down.len() != 1 {
            return None;
        }
        out.e.push(g.basis_vector(up[0]));
        out.f.push(g.basis_vector(down[0]));
        out.h.push(FpVector::zeros(g.dim(), g.modulus()));
        out.parity.push(g.parity(up[0]));
        out.origin.push(format!("{w:?}"));
    }
    Some(out)
}

/// Generator images found from the grading: start at `start` (simple grades), match the
/// target, and otherwise move through odd reflections until a match or `limit` systems.
/// Returns the images and the number of reflections used.
pub fn find_generators(
    g: &ModularSuperAlgebra,
    grades: &[Vec<i32>],
    start: Vec<Vec<i32>>,
    target: &Gcm,
    limit: usize,
) -> Option<(GeneratorImages, usize)> {
    let index = grade_index(grades);
    let mut queue = VecDeque::from([(start.clone(), 0usize)]);
    let mut seen: BTreeSet<Vec<Vec<i32>>> = BTreeSet::from([start.iter().cloned().sorted().collect()]);
    while let Some((simple, depth)) = queue.pop_front() {
        let Some(mut gens) = images_at(g, &index, &simple) else { continue };
        let Some(b) = normalize(g, &mut gens) else { continue };
        if let Some((found, _)) = match_target(g, &gens, target) {
            return Some((found, depth));
        }
        for k in 0..simple.len() {
            if !gens.parity[k].is_odd() || b[k][k] != 0 {
                continue;
            }
            let next: Vec<Vec<i32>> = simple
                .iter()
                .enumerate()
                .map(|(j, w)| {
                    if j == k {
                        return w.iter().map(|x| -x).collect();
                    }
                    let sum: Vec<i32> = w.iter().zip(&simple[k]).map(|(x, y)| x + y).collect();
                    if index.contains_key(&sum) {
                        sum
                    } else {
                        w.clone()
                    }
                })
                .collect();
            if seen.len() < limit && seen.insert(next.iter().cloned().sorted().collect()) {
                queue.push_back((next, depth + 1));
            }
        }
    }
    None
}

/// Chains for `e = e1 + e2 + e6 + e8` in E8 (p = 3): the J_2 chains `e3 ↦ e9`, `e4 ↦ e10`,
/// `e5 ↦ -e13` and their lowering partners, the J_1 pair `e14 + e15` / lowering partner,
/// `e7 ↦ e14 - e15 ↦ ..` and `h6 - h7 + h8`, completed generically. Here `e9 = [e1, e3]`,
/// `e10 = [e2, e4]`, `e13 = [e5, e6]`, `e14 = [e6, e7]`, `e15 = [-e8, e7]`.
pub fn custom_plan_g36(r: &Realization) -> Result<ChainDecomposition> {
    let g = r.algebra();
    let p = r.modulus();
    let v = |s: &str| crate::expr::parse_element(s, g).map(|x| x.1);
    if p != 3 || r.element() != Some(&v("e1 + e2 + e6 + e8")?) {
        return Err(Error::PreconditionViolated("the plan needs E8 at e1 + e2 + e6 + e8 over F_3".into()));
    }
    let grading = g.grading().ok_or_else(|| Error::PreconditionViolated("no root grading".into()))?;
    let root_vector = |coords: &[i32]| -> Result<FpVector> {
        grading
            .iter()
            .position(|w| w.as_slice() == coords)
            .map(|x| g.basis_vector(x))
            .ok_or_else(|| Error::PreconditionViolated(format!("{coords:?} is not a root")))
    };
    let neg_root = |nodes: &[usize]| {
        let mut c = vec![0i32; 8];
        nodes.iter().for_each(|&k| c[k - 1] = -1);
        root_vector(&c)
    };
    let mut seeds = vec![
        (v("e3")?, "pe1".to_string()),
        (v("e4")?, "pe2".to_string()),
        (v("e5")?, "pe3".to_string()),
        (v("[e6, e7] + [-e8, e7]")?, "pe4".to_string()),
    ];
    // lowering partners: heads in -(α1+α3), -(α2+α4), -(α5+α6) with D(head) = f3, f4, f5
    for (t, (nodes, img)) in [(&[1usize, 3][..], "f3"), (&[2, 4], "f4"), (&[5, 6], "f5")].into_iter().enumerate() {
        let x = neg_root(nodes)?;
        let c = ratio(&r.apply(&x), &v(img)?)
            .filter(|&c| c != 0)
            .ok_or_else(|| Error::PreconditionViolated(format!("D does not send the head to {img}")))?;
        seeds.push((x.scale(field::inv(c, p)), format!("pf{}", t + 1)));
    }
    // the J_1 partner of e14 + e15 lies in span(f_{α6+α7}, f_{α7+α8}) ∩ ker D
    let (a, b) = (neg_root(&[6, 7])?, neg_root(&[7, 8])?);
    let (da, db) = (r.apply(&a), r.apply(&b));
    let c = ratio(&da, &db).ok_or_else(|| Error::PreconditionViolated("no J_1 partner for e14 + e15".into()))?;
    let mut f4 = a.clone();
    f4.axpy(field::neg(c, p), &b);
    seeds.push((f4, "pf4".to_string()));
    seeds.push((v("e7")?, "e7".to_string()));
    seeds.push((v("h6 - h7 + h8")?, "h6-h7+h8".to_string()));
    seeded_decompose(r, seeds)
}

/// Images of the plan's tagged chains in plan order.
pub fn plan_images(ss: &SemisimplifiedAlgebra) -> Result<GeneratorImages> {
    let mut out = GeneratorImages { e: vec![], f: vec![], h: vec![], parity: vec![], origin: vec![] };
    for t in 1..=4 {
        let e = tag_vector(ss, &format!("pe{t}"))?;
        out.parity.push(ss.algebra.vector_parity(&e).unwrap_or(Parity::Even));
        out.e.push(e);
        out.f.push(tag_vector(ss, &format!("pf{t}"))?);
        out.h.push(FpVector::zeros(ss.algebra.dim(), ss.algebra.modulus()));
        out.origin.push(format!("pe{t}"));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub pass: bool,
    pub checked: usize,
    pub failures: Vec<String>,
}

/// `[ẽ_i, f̃_j] = δ_ij h̃_i`, `[h̃_i, ẽ_j] = ã_ij ẽ_j`, `[h̃_i, f̃_j] = -ã_ij f̃_j`,
/// `[h̃_i, h̃_j] = 0`, and parities as in the target.
pub fn check_relations(g: &ModularSuperAlgebra, gens: &GeneratorImages, target: &Gcm) -> RelationReport {
    let p = g.modulus();
    let r = target.n();
    let mut failures = Vec::new();
    let mut checked = 0;
    if gens.rank() != r {
        return RelationReport { pass: false, checked: 0, failures: vec![format!("rank {} against {r}", gens.rank())] };
    }
    let zero = FpVector::zeros(g.dim(), p);
    let mut expect = |ok: bool, what: String| {
        checked += 1;
        if !ok && failures.len() < 16 {
            failures.push(what);
        }
    };
    for i in 0..r {
        let par = target.parity()[i];
        expect(g.vector_parity(&gens.e[i]) == Some(par) && !gens.e[i].is_zero(), format!("parity of e{}", i + 1));
        expect(g.vector_parity(&gens.f[i]) == Some(par) && !gens.f[i].is_zero(), format!("parity of f{}", i + 1));
        expect(g.vector_parity(&gens.h[i]) == Some(Parity::Even), format!("parity of h{}", i + 1));
    }
    for i in 0..r {
        for j in 0..r {
            let want = if i == j { gens.h[i].clone() } else { zero.clone() };
            expect(g.bracket(&gens.e[i], &gens.f[j]) == want, format!("[e{}, f{}]", i + 1, j + 1));
            let a = field::reduce(target.entry(i, j), p);
            expect(g.bracket(&gens.h[i], &gens.e[j]) == gens.e[j].scale(a), format!("[h{}, e{}]", i + 1, j + 1));
            let want = gens.f[j].scale(field::neg(a, p));
            expect(g.bracket(&gens.h[i], &gens.f[j]) == want, format!("[h{}, f{}]", i + 1, j + 1));
            expect(g.bracket(&gens.h[i], &gens.h[j]).is_zero(), format!("[h{}, h{}]", i + 1, j + 1));
        }
    }
    RelationReport { pass: failures.is_empty(), checked, failures }
}

pub fn check_generation(g: &ModularSuperAlgebra, gens: &GeneratorImages) -> bool {
    generated_subalgebra(g, &gens.all()).is_full()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Conclusion {
    Verified,
    Refuted,
    Inconclusive,
}

impl std::fmt::Display for Conclusion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// On the even-type route the relation slot holds the even-part identification and the
/// generation slot holds irreducibility of the odd part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub target: String,
    pub route: String,
    pub superdim: String,
    pub expected_superdim: String,
    pub superdim_match: bool,
    pub relations_pass: bool,
    pub generation_pass: bool,
    pub odd_cubes_pass: bool,
    pub conclusion: Conclusion,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relations: Option<RelationReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<String>,
    pub odd_reflections: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub even_type: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn conclude(c: &mut Certificate) {
    c.conclusion = if !c.superdim_match {
        Conclusion::Refuted
    } else if c.relations_pass && c.generation_pass && c.odd_cubes_pass {
        Conclusion::Verified
    } else {
        Conclusion::Inconclusive
    };
}

fn blank(g: &ModularSuperAlgebra, target: &TargetInfo, route: &str) -> Certificate {
    Certificate {
        target: target.name.clone(),
        route: route.into(),
        superdim: g.superdim().to_string(),
        expected_superdim: target.superdim.to_string(),
        superdim_match: g.superdim() == target.superdim,
        relations_pass: false,
        generation_pass: false,
        odd_cubes_pass: false,
        conclusion: Conclusion::Inconclusive,
        relations: None,
        generators: vec![],
        odd_reflections: 0,
        even_type: None,
        notes: vec![],
    }
}

/// Certificate against a target with a Cartan matrix. Without images only the
/// superdimension can be decided.
pub fn certify(g: &ModularSuperAlgebra, gens: Option<&GeneratorImages>, target: &TargetInfo) -> Result<Certificate> {
    let gcm = target
        .gcm
        .as_ref()
        .ok_or_else(|| Error::PreconditionViolated(format!("{} has no Cartan matrix", target.name)))?;
    if target.p != g.modulus() {
        return Err(Error::PreconditionViolated(format!("{} lives in characteristic {}", target.name, target.p)));
    }
    let mut c = blank(g, target, "contragredient");
    if !c.superdim_match {
        c.notes.push("superdimension differs; other checks skipped".into());
        conclude(&mut c);
        return Ok(c);
    }
    match gens {
        Some(gens) => {
            let rep = check_relations(g, gens, gcm);
            c.relations_pass = rep.pass;
            c.relations = Some(rep);
            c.generation_pass = check_generation(g, gens);
            c.generators = gens.origin.clone();
        }
        None => c.notes.push("no generator images matched the target".into()),
    }
    c.odd_cubes_pass = check_odd_cubes(g).pass;
    conclude(&mut c);
    Ok(c)
}

/// Certificate for the generated subquotient (generated subalgebra modulo the ideal of odd cubes).
pub fn certify_subquotient(g: &ModularSuperAlgebra, gens: &GeneratorImages, target: &TargetInfo) -> Result<Certificate> {
    let sq = gen_subquotient(g, &gens.all())?;
    let r = gens.rank();
    let q = GeneratorImages {
        e: sq.images[..r].to_vec(),
        f: sq.images[r..2 * r].to_vec(),
        h: sq.images[2 * r..].to_vec(),
        parity: gens.parity.clone(),
        origin: gens.origin.clone(),
    };
    let mut c = certify(&sq.quotient, Some(&q), target)?;
    c.route = "generated subquotient".into();
    c.notes.push(format!("generated subalgebra {}, full algebra {}", sq.generated_algebra.superdim(), g.superdim()));
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenType {
    pub label: String,
    pub rank: usize,
    pub dim: usize,
    pub cartan: Vec<Vec<i64>>,
}

fn classify_component(a: &[Vec<i64>]) -> Option<String> {
    let n = a.len();
    let mut names: Vec<String> = vec![format!("a{n}")];
    if n >= 2 {
        names.push(format!("b{n}"));
    }
    if n >= 3 {
        names.push(format!("c{n}"));
    }
    if n >= 4 {
        names.push(format!("d{n}"));
    }
    names.extend(["e6", "e7", "e8", "f4", "g2"].iter().map(|s| s.to_string()));
    for name in names {
        let Ok(cm) = cartan_matrix(&name) else { continue };
        if cm.n() != n {
            continue;
        }
        let found = (0..n).permutations(n).any(|perm| (0..n).all(|i| (0..n).all(|j| cm.entry(i, j) == a[perm[i]][perm[j]])));
        if found {
            return Some(name.to_uppercase());
        }
    }
    None
}

/// Cartan type of the even part, from an integer grading of the basis by the weights of a
/// maximal torus (for instance [`inherited_grading`]). Root spaces must be one-dimensional;
/// Cartan integers come from root strings and are cross-checked against `α_j(h_i)` mod p.
pub fn recognize_even_type(g: &ModularSuperAlgebra, grades: &[Vec<i32>]) -> Result<EvenType> {
    let p = g.modulus();
    let even = g.even_indices();
    for &a in &even {
        for &b in &even {
            for &(k, _) in g.bracket_basis(a, b) {
                let sum: Vec<i32> = grades[a].iter().zip(&grades[b]).map(|(x, y)| x + y).collect();
                if grades[k as usize] != sum {
                    return Err(Error::NotDiagonalizable(format!("bracket of {a} and {b} leaves the grading")));
                }
            }
        }
    }
    let zero_dim = even.iter().filter(|&&a| grades[a].iter().all(|&x| x == 0)).count();
    let mut roots: HashMap<Vec<i32>, usize> = HashMap::new();
    for &a in &even {
        if grades[a].iter().any(|&x| x != 0) && roots.insert(grades[a].clone(), a).is_some() {
            return Err(Error::UnrecognizedType(format!("root space {:?} is not one-dimensional", grades[a])));
        }
    }
    let neg = |w: &[i32]| w.iter().map(|x| -x).collect::<Vec<i32>>();
    if roots.keys().any(|w| !roots.contains_key(&neg(w))) {
        return Err(Error::UnrecognizedType("roots are not symmetric".into()));
    }
    let positive: Vec<Vec<i32>> = roots.keys().filter(|w| lex_positive(w)).cloned().sorted().collect();
    let simple: Vec<Vec<i32>> = lex_simple_grades(&positive);
    let n = simple.len();
    if n != zero_dim {
        return Err(Error::UnrecognizedType(format!("{n} simple roots but a {zero_dim}-dimensional torus")));
    }
    let mut h = Vec::with_capacity(n);
    for w in &simple {
        let (x, y) = (g.basis_vector(roots[w]), g.basis_vector(roots[&neg(w)]));
        let hw = g.bracket(&x, &y);
        let lam = ratio(&g.bracket(&hw, &x), &x).filter(|&l| l != 0);
        let lam = lam.ok_or_else(|| Error::UnrecognizedType(format!("root {w:?} acts with weight zero on its coroot")))?;
        h.push(hw.scale(field::mul(2, field::inv(lam, p), p)));
    }
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            a[i][j] = if i == j {
                2
            } else {
                let mut q = 0;
                let mut cur = simple[j].clone();
                loop {
                    cur = cur.iter().zip(&simple[i]).map(|(x, y)| x + y).collect();
                    if !roots.contains_key(&cur) {
                        break;
                    }
                    q += 1;
                }
                -q
            };
            let xj = g.basis_vector(roots[&simple[j]]);
            if ratio(&g.bracket(&h[i], &xj), &xj) != Some(field::reduce(a[i][j], p)) {
                return Err(Error::UnrecognizedType(format!("Cartan integer a_{}{} disagrees mod p", i + 1, j + 1)));
            }
        }
    }
    // connected components of the diagram
    let mut comp = vec![usize::MAX; n];
    let mut labels = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut members = vec![s];
        comp[s] = labels.len();
        let mut k = 0;
        while k < members.len() {
            let u = members[k];
            k += 1;
            for v in 0..n {
                if comp[v] == usize::MAX && a[u][v] != 0 {
                    comp[v] = labels.len();
                    members.push(v);
                }
            }
        }
        members.sort();
        let sub: Vec<Vec<i64>> = members.iter().map(|&i| members.iter().map(|&j| a[i][j]).collect()).collect();
        labels.push(classify_component(&sub).ok_or_else(|| Error::UnrecognizedType(format!("component {sub:?}")))?);
    }
    labels.sort();
    Ok(EvenType { label: labels.join("+"), rank: n, dim: zero_dim + roots.len(), cartan: a })
}

/// Irreducibility of the odd part as a module over the even part. The degree zero even
/// vectors act diagonally; when their weights on the odd basis are distinct, any nonzero
/// submodule contains an odd basis vector, so it suffices that each one generates everything.
pub fn odd_part_irreducible(g: &ModularSuperAlgebra, grades: &[Vec<i32>]) -> Result<bool> {
    let even = g.even_indices();
    let odd = g.odd_indices();
    if odd.is_empty() {
        return Ok(false);
    }
    let torus: Vec<FpVector> = even.iter().filter(|&&a| grades[a].iter().all(|&x| x == 0)).map(|&a| g.basis_vector(a)).collect();
    let mut weights = BTreeSet::new();
    for &x in &odd {
        let v = g.basis_vector(x);
        let w: Option<Vec<u32>> = torus.iter().map(|t| ratio(&g.bracket(t, &v), &v)).collect();
        let w = w.ok_or_else(|| Error::NotDiagonalizable(format!("odd basis vector {x} is not a weight vector")))?;
        if !weights.insert(w) {
            return Err(Error::PreconditionViolated("odd weight spaces are not one-dimensional".into()));
        }
    }
    let ops: Vec<FpVector> = even.iter().map(|&a| g.basis_vector(a)).collect();
    Ok(odd.iter().all(|&x| submodule_closure(g, &[g.basis_vector(x)], &ops).dim() == odd.len()))
}

/// Certificate for a target known through its even part and odd dimension.
pub fn certify_even_type(g: &ModularSuperAlgebra, grades: &[Vec<i32>], target: &TargetInfo) -> Result<Certificate> {
    let want = target
        .even_type
        .as_ref()
        .ok_or_else(|| Error::PreconditionViolated(format!("{} has no even-part description", target.name)))?;
    let mut c = blank(g, target, "even type");
    if !c.superdim_match {
        conclude(&mut c);
        return Ok(c);
    }
    let jacobi = check_super_jacobi(g).pass;
    let ty = recognize_even_type(g, grades);
    let type_ok = matches!(&ty, Ok(t) if &t.label == want && t.dim == target.superdim.even);
    c.even_type = ty.as_ref().ok().map(|t| t.label.clone());
    if let Err(e) = &ty {
        c.notes.push(format!("even part not recognized: {e}"));
    }
    c.relations_pass = type_ok && jacobi;
    c.generation_pass = odd_part_irreducible(g, grades).unwrap_or(false);
    c.odd_cubes_pass = check_odd_cubes(g).pass;
    c.notes.push(format!("super Jacobi {}", if jacobi { "holds" } else { "fails" }));
    conclude(&mut c);
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::{chevalley_by_name, reduce_mod_p};
    use crate::expr::parse_element;
    use crate::repalpha::{jordan_decompose, realize, structured_decompose};
    use crate::roots::derive_tilde;
    use crate::semisimplify::semisimplify;
    use std::sync::Arc;

    fn lie(name: &str, p: u32) -> Arc<ModularSuperAlgebra> {
        Arc::new(reduce_mod_p(&chevalley_by_name(name).unwrap(), p).unwrap())
    }

    fn structured(name: &str, subset: &[usize]) -> (Arc<ModularSuperAlgebra>, SemisimplifiedAlgebra) {
        let g = lie(name, 3);
        let expr = subset.iter().map(|i| format!("e{i}")).join("+");
        let r = realize(g.clone(), parse_element(&expr, &g).unwrap().1).unwrap();
        let d = structured_decompose(&r, &cartan_matrix(name).unwrap(), subset).unwrap();
        (g, semisimplify(&r, &d).unwrap())
    }

    #[test]
    fn catalog() {
        let cat = target_catalog();
        assert_eq!(cat.len(), 12);
        let t = lookup_target("g(1,6)").unwrap();
        assert_eq!(t.gcm.as_ref().unwrap().entries(), &[vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 0]]);
        assert_eq!(t.superdim, SuperDim::new(21, 14));
        let t = lookup_target("g(3, 6)").unwrap();
        assert_eq!(t.gcm.as_ref().unwrap().parity().iter().map(|q| q.bit()).collect::<Vec<_>>(), vec![1, 1, 1, 0]);
        assert_eq!(t.superdim, SuperDim::new(36, 40));
        let t = lookup_target("el(5;5)").unwrap();
        assert!(t.gcm.is_none());
        assert_eq!((t.p, t.even_type.as_deref()), (5, Some("B5")));
        assert!(matches!(lookup_target("g(9,9)"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn derive_tilde_matches_catalog() {
        let want = [
            ("f4", vec![4], "g(1,6)"),
            ("f4", vec![1], "sl(3|1)"),
            ("e6", vec![2], "g(2,6)"),
            ("e6", vec![1, 2], "g(3,3)"),
            ("e6", vec![1, 2, 6], "g(2,3)"),
            ("e7", vec![1], "g(4,6)"),
            ("e7", vec![1, 7], "el(5;3)"),
            ("e7", vec![1, 2, 7], "g(4,3)"),
            ("e8", vec![1], "g(8,6)"),
            ("e8", vec![1, 2], "g(6,6)"),
            ("e8", vec![1, 2, 8], "g(8,3)"),
        ];
        for (name, s, t) in want {
            let (dt, _) = derive_tilde(&cartan_matrix(name).unwrap(), &s).unwrap();
            let target = lookup_target(t).unwrap();
            let b: Vec<Vec<u32>> = dt.entries().iter().map(|r| r.iter().map(|&x| field::reduce(x, 3)).collect()).collect();
            assert!(match_matrix(&b, dt.parity(), target.gcm.as_ref().unwrap(), 3).is_some(), "{name} {s:?} {t}");
        }
    }

    #[test]
    fn tags_on_e6_pair() {
        let (_, ss) = structured("e6", &[1, 2]);
        let gens = generator_images(&ss, &cartan_matrix("e6").unwrap(), &[1, 2]).unwrap();
        assert_eq!(gens.e[0], ss.algebra.basis_vector(ss.by_tag("e3").unwrap()));
        assert_eq!(gens.h[0], ss.algebra.basis_vector(ss.by_tag("h3-h1").unwrap()));
        let t = lookup_target("g(3,3)").unwrap();
        let (m, _) = match_target(&ss.algebra, &gens, t.gcm.as_ref().unwrap()).unwrap();
        let c = certify(&ss.algebra, Some(&m), &t).unwrap();
        assert_eq!(c.conclusion, Conclusion::Verified, "{c:?}");
        let wrong = lookup_target("g(2,3)").unwrap();
        assert!(!check_relations(&ss.algebra, &m, wrong.gcm.as_ref().unwrap()).pass);
        let empty = generator_images(&ss, &cartan_matrix("e6").unwrap(), &[]);
        assert!(empty.is_err());
    }

    #[test]
    fn f4_e4_and_e1() {
        let (_, ss) = structured("f4", &[4]);
        let f4 = cartan_matrix("f4").unwrap();
        let gens = generator_images(&ss, &f4, &[4]).unwrap();
        assert_eq!(gens.e[2], ss.algebra.basis_vector(ss.by_tag("e3").unwrap()));
        let t = lookup_target("g(1,6)").unwrap();
        let (m, _) = match_target(&ss.algebra, &gens, t.gcm.as_ref().unwrap()).unwrap();
        assert!(check_generation(&ss.algebra, &m));
        assert_eq!(certify(&ss.algebra, Some(&m), &t).unwrap().conclusion, Conclusion::Verified);

        let (_, ss) = structured("f4", &[1]);
        assert_eq!(ss.superdim(), SuperDim::new(15, 8));
        let gens = generator_images(&ss, &f4, &[1]).unwrap();
        let t = lookup_target("sl(3|1)").unwrap();
        let (m, _) = match_target(&ss.algebra, &gens, t.gcm.as_ref().unwrap()).unwrap();
        assert!(!check_generation(&ss.algebra, &m));
        assert_eq!(certify(&ss.algebra, Some(&m), &t).unwrap().conclusion, Conclusion::Refuted);
        let sq = gen_subquotient(&ss.algebra, &m.all()).unwrap();
        assert_eq!(sq.generated_algebra.superdim(), SuperDim::new(9, 6));
        assert_eq!(sq.quotient.superdim(), SuperDim::new(9, 6));
        let c = certify_subquotient(&ss.algebra, &m, &t).unwrap();
        assert_eq!(c.conclusion, Conclusion::Verified, "{c:?}");
    }

    #[test]
    fn graded_search_on_nonadmissible_member() {
        // {3} is reached from {1} by a swap but is not admissible
        let g = lie("e6", 3);
        let r = realize(g.clone(), parse_element("e3", &g).unwrap().1).unwrap();
        let ss = semisimplify(&r, &jordan_decompose(&r).unwrap()).unwrap();
        let grades = inherited_grading(&ss, &g, &[3]).unwrap();
        let t = lookup_target("g(2,6)").unwrap();
        let (m, _) = find_generators(&ss.algebra, &grades, lex_simple_grades(&grades), t.gcm.as_ref().unwrap(), 2000).unwrap();
        assert_eq!(certify(&ss.algebra, Some(&m), &t).unwrap().conclusion, Conclusion::Verified);
    }

    #[test]
    fn even_type_of_f4() {
        let g = lie("f4", 3);
        let grades = g.grading().unwrap().to_vec();
        let ty = recognize_even_type(&g, &grades).unwrap();
        assert_eq!((ty.label.as_str(), ty.rank, ty.dim), ("F4", 4, 52));
        let g = lie("d5", 3);
        assert_eq!(recognize_even_type(&g, g.grading().unwrap()).unwrap().label, "D5");
    }

    #[test]
    fn plan_g36_images() {
        let g = lie("e8", 3);
        let r = realize(g.clone(), parse_element("e1+e2+e6+e8", &g).unwrap().1).unwrap();
        let d = custom_plan_g36(&r).unwrap();
        assert_eq!(d.counts(), vec![36, 40, 44]);
        let ss = semisimplify(&r, &d).unwrap();
        let gens = plan_images(&ss).unwrap();
        assert_eq!(gens.parity[3], Parity::Even);
        assert_eq!(gens.e[2], ss.algebra.basis_vector(ss.by_tag("pe3").unwrap()));
        let t = lookup_target("g(3,6)").unwrap();
        let (m, _) = match_target(&ss.algebra, &gens, t.gcm.as_ref().unwrap()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!(ss.algebra.bracket(&m.h[i], &m.h[j]).is_zero());
            }
        }
        assert_eq!(certify(&ss.algebra, Some(&m), &t).unwrap().conclusion, Conclusion::Verified);
        let wrong = realize(g.clone(), parse_element("e1+e2+e8", &g).unwrap().1).unwrap();
        assert!(custom_plan_g36(&wrong).is_err());
    }

    #[test]
    fn el55_by_even_type() {
        let g = lie("e8", 5);
        let r = realize(g.clone(), parse_element("e2+e3+e4", &g).unwrap().1).unwrap();
        let ss = semisimplify(&r, &jordan_decompose(&r).unwrap()).unwrap();
        let grades = inherited_grading(&ss, &g, &[2, 3, 4]).unwrap();
        let ty = recognize_even_type(&ss.algebra, &grades).unwrap();
        assert_eq!((ty.label.as_str(), ty.dim), ("B5", 55));
        assert!(odd_part_irreducible(&ss.algebra, &grades).unwrap());
        let c = certify_even_type(&ss.algebra, &grades, &lookup_target("el(5;5)").unwrap()).unwrap();
        assert_eq!(c.conclusion, Conclusion::Verified, "{c:?}");
    }

    #[test]
    fn e7_even_image_is_f4() {
        let g = lie("e7", 3);
        let r = realize(g.clone(), parse_element("e2+e5+e7", &g).unwrap().1).unwrap();
        let ss = semisimplify(&r, &jordan_decompose(&r).unwrap()).unwrap();
        assert_eq!(ss.superdim(), SuperDim::new(52, 0));
        let grades = inherited_grading(&ss, &g, &[2, 5, 7]).unwrap();
        assert_eq!(recognize_even_type(&ss.algebra, &grades).unwrap().label, "F4");
        let c = certify(&ss.algebra, None, &lookup_target("g(4,3)").unwrap()).unwrap();
        assert_eq!(c.conclusion, Conclusion::Refuted);
    }
}
