//! Cartan matrices with parities, finite root systems and Dynkin-diagram combinatorics.
//!
//! Matrix indices are 0-based. Everything that talks about *nodes* of a diagram
//! (colorings, boundary nodes, subsets) uses 1-based labels, as diagrams are drawn.
//! The convention is `a_ij = α_j(h_i)`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Parity {
        if b == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
    pub fn add(self, o: Parity) -> Parity {
        Parity::from_bit(self.bit() ^ o.bit())
    }
}

/// A generalized Cartan matrix together with a parity vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gcm {
    entries: Vec<Vec<i64>>,
    parity: Vec<Parity>,
}

impl Gcm {
    pub fn validate(a: Vec<Vec<i64>>, parity: Vec<Parity>) -> Result<Gcm> {
        let n = a.len();
        if parity.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: parity.len() });
        }
        if let Some(row) = a.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
        for i in 0..n {
            match parity[i] {
                Parity::Even if a[i][i] != 2 => {
                    return Err(Error::AxiomViolation { axiom: 1, detail: format!("a_{0}{0} = {1} at an even node", i + 1, a[i][i]) })
                }
                Parity::Odd if a[i][i] != 0 && a[i][i] != 1 => {
                    return Err(Error::AxiomViolation { axiom: 2, detail: format!("a_{0}{0} = {1} at an odd node", i + 1, a[i][i]) })
                }
                _ => {}
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                if a[i][i] == 2 && a[i][j] > 0 {
                    return Err(Error::AxiomViolation { axiom: 3, detail: format!("a_{}{} = {} > 0", i + 1, j + 1, a[i][j]) });
                }
                if (a[i][j] == 0) != (a[j][i] == 0) {
                    return Err(Error::AxiomViolation {
                        axiom: 4,
                        detail: format!("a_{0}{1} = {2} but a_{1}{0} = {3}", i + 1, j + 1, a[i][j], a[j][i]),
                    });
                }
            }
        }
        Ok(Gcm { entries: a, parity })
    }

    pub fn even(a: Vec<Vec<i64>>) -> Result<Gcm> {
        let n = a.len();
        Self::validate(a, vec![Parity::Even; n])
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }
    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }
    pub fn parity(&self) -> &[Parity] {
        &self.parity
    }
    pub fn is_purely_even(&self) -> bool {
        self.parity.iter().all(|&p| p == Parity::Even)
    }

    /// 1-based labels of the nodes joined to `node`.
    pub fn neighbors(&self, node: usize) -> Vec<usize> {
        let i = node - 1;
        (0..self.n()).filter(|&j| j != i && self.entries[i][j] != 0).map(|j| j + 1).collect()
    }

    pub fn is_simple_edge(&self, a: usize, b: usize) -> bool {
        self.entries[a - 1][b - 1] == -1 && self.entries[b - 1][a - 1] == -1
    }

    /// Relabels so that new index `k` is old index `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Gcm {
        let entries = perm.iter().map(|&i| perm.iter().map(|&j| self.entries[i][j]).collect()).collect();
        Gcm { entries, parity: perm.iter().map(|&i| self.parity[i]).collect() }
    }

    /// Positive integers `s_i` with `s_i a_ij = s_j a_ji`, i.e. `(α_i, α_i) = 2 s_i`.
    pub fn symmetrizer(&self) -> Option<Vec<i64>> {
        let n = self.n();
        // rationals as (num, den)
        let mut s: Vec<Option<(i64, i64)>> = vec![None; n];
        for start in 0..n {
            if s[start].is_some() {
                continue;
            }
            s[start] = Some((1, 1));
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let (a, b) = s[i].unwrap();
                for j in 0..n {
                    if j == i || self.entries[i][j] == 0 {
                        continue;
                    }
                    let (num, den) = (a * self.entries[i][j], b * self.entries[j][i]);
                    let g = gcd(num, den) * den.signum();
                    let cand = (num / g, den / g);
                    match s[j] {
                        None => {
                            s[j] = Some(cand);
                            queue.push_back(j);
                        }
                        Some(old) if old.0 * cand.1 != old.1 * cand.0 => return None,
                        _ => {}
                    }
                }
            }
        }
        let l = s.iter().flatten().fold(1, |acc, &(_, d)| lcm(acc, d));
        let ints: Vec<i64> = s.iter().map(|x| x.unwrap().0 * l / x.unwrap().1).collect();
        if ints.iter().any(|&x| x <= 0) {
            return None;
        }
        let g = ints.iter().fold(0, |acc, &x| gcd(acc, x));
        Some(ints.iter().map(|x| x / g).collect())
    }

    pub fn render_ascii(&self, black: &BTreeSet<usize>) -> String {
        let mut out = String::from("nodes:");
        for i in 1..=self.n() {
            let par = if self.parity[i - 1].is_odd() { "*" } else { "" };
            if black.contains(&i) {
                out += &format!(" [{i}{par}]");
            } else {
                out += &format!(" {i}{par}");
            }
        }
        out += "\nedges:";
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                let (a, b) = (self.entries[i][j], self.entries[j][i]);
                if a == 0 {
                    continue;
                }
                if a == -1 && b == -1 {
                    out += &format!(" {}-{}", i + 1, j + 1);
                } else {
                    out += &format!(" {}-{}({},{})", i + 1, j + 1, a, b);
                }
            }
        }
        out.push('\n');
        out
    }

    pub fn to_json(&self, black: &BTreeSet<usize>) -> serde_json::Value {
        let nodes: Vec<_> = (1..=self.n())
            .map(|i| serde_json::json!({"index": i, "parity": self.parity[i - 1].bit(), "black": black.contains(&i)}))
            .collect();
        let mut edges = Vec::new();
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.entries[i][j] != 0 {
                    edges.push(serde_json::json!({"i": i + 1, "j": j + 1, "a_ij": self.entries[i][j], "a_ji": self.entries[j][i]}));
                }
            }
        }
        serde_json::json!({"nodes": nodes, "edges": edges})
    }
}

pub fn validate_gcm(a: Vec<Vec<i64>>, parity: Vec<Parity>) -> Result<Gcm> {
    Gcm::validate(a, parity)
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

fn chain(n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        if i + 1 < n {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    a
}

/// Cartan matrices of the finite types by name: `a1`..`a9`, `b2`.., `c2`.., `d4`.., `g2`, `f4`, `e6`, `e7`, `e8`.
pub fn cartan_matrix(name: &str) -> Result<Gcm> {
    let lower = name.trim().to_ascii_lowercase();
    let unknown = || Error::UnknownName(name.to_string());
    let (kind, rank) = lower.split_at(1);
    let n: usize = rank.parse().map_err(|_| unknown())?;
    let a = match (kind, n) {
        ("a", 1..) => chain(n),
        ("b", 2..) => {
            let mut a = chain(n);
            a[n - 1][n - 2] = -2;
            a
        }
        ("c", 2..) => {
            let mut a = chain(n);
            a[n - 2][n - 1] = -2;
            a
        }
        ("d", 4..) => {
            let mut a = chain(n);
            a[n - 2][n - 1] = 0;
            a[n - 1][n - 2] = 0;
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
            a
        }
        ("g", 2) => vec![vec![2, -3], vec![-1, 2]],
        ("f", 4) => vec![vec![2, -1, 0, 0], vec![-1, 2, -2, 0], vec![0, -1, 2, -1], vec![0, 0, -1, 2]],
        ("e", 6..=8) => {
            let mut a = vec![vec![0; n]; n];
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = 2;
            }
            let mut edges = vec![(1, 3), (2, 4), (3, 4), (4, 5), (5, 6)];
            if n >= 7 {
                edges.push((6, 7));
            }
            if n >= 8 {
                edges.push((7, 8));
            }
            for (i, j) in edges {
                a[i - 1][j - 1] = -1;
                a[j - 1][i - 1] = -1;
            }
            a
        }
        _ => return Err(unknown()),
    };
    Gcm::even(a)
}

/// An element of the root lattice in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub coords: Vec<i32>,
}

impl Root {
    pub fn height(&self) -> i32 {
        self.coords.iter().sum()
    }
    pub fn neg(&self) -> Root {
        Root { coords: self.coords.iter().map(|x| -x).collect() }
    }
    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&x| x >= 0) && self.coords.iter().any(|&x| x > 0)
    }
}

fn add(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

const ROOT_BOUND: usize = 4096;

#[derive(Clone, Debug)]
pub struct RootSystem {
    gcm: Gcm,
    positive: Vec<Root>,
    index: HashMap<Vec<i32>, usize>,
    sym: Vec<i64>,
}

impl RootSystem {
    pub fn gcm(&self) -> &Gcm {
        &self.gcm
    }
    pub fn rank(&self) -> usize {
        self.gcm.n()
    }
    pub fn positive(&self) -> &[Root] {
        &self.positive
    }
    pub fn len(&self) -> usize {
        self.positive.len()
    }
    pub fn is_empty(&self) -> bool {
        self.positive.is_empty()
    }
    pub fn symmetrizer(&self) -> &[i64] {
        &self.sym
    }

    /// Index of a positive root.
    pub fn position(&self, coords: &[i32]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// `(index, sign)` for any root, sign +1 for positive.
    pub fn locate(&self, coords: &[i32]) -> Option<(usize, i32)> {
        if let Some(&i) = self.index.get(coords) {
            return Some((i, 1));
        }
        let negc: Vec<i32> = coords.iter().map(|x| -x).collect();
        self.index.get(&negc).map(|&i| (i, -1))
    }

    pub fn is_root(&self, coords: &[i32]) -> bool {
        self.locate(coords).is_some()
    }

    /// Invariant form with `(α_i, α_j) = s_i a_ij`.
    pub fn form(&self, a: &[i32], b: &[i32]) -> i64 {
        let n = self.rank();
        let mut s = 0i64;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a[i] as i64 * b[j] as i64 * self.sym[i] * self.gcm.entry(i, j);
            }
        }
        s
    }

    /// `ξ(h_i)`.
    pub fn pairing(&self, xi: &[i32], i: usize) -> i64 {
        (0..self.rank()).map(|j| xi[j] as i64 * self.gcm.entry(i, j)).sum()
    }

    pub fn reflect(&self, i: usize, xi: &[i32]) -> Vec<i32> {
        let mut out = xi.to_vec();
        out[i] -= self.pairing(xi, i) as i32;
        out
    }

    /// Coefficients of the coroot of `xi` over the simple coroots.
    pub fn coroot(&self, xi: &[i32]) -> Vec<i64> {
        let half = self.form(xi, xi) / 2;
        xi.iter()
            .zip(&self.sym)
            .map(|(&c, &s)| {
                let num = c as i64 * s;
                assert_eq!(num % half, 0, "coroot not integral");
                num / half
            })
            .collect()
    }

    pub fn highest(&self) -> &Root {
        self.positive.last().expect("nonempty root system")
    }
}

/// All positive roots by closure of the simple roots under simple reflections,
/// ordered by height and then lexicographically.
pub fn positive_roots(gcm: &Gcm) -> Result<RootSystem> {
    if !gcm.is_purely_even() {
        return Err(Error::PreconditionViolated("root systems need a purely even Cartan matrix".into()));
    }
    let sym = gcm.symmetrizer().ok_or(Error::NotFiniteType(0))?;
    let n = gcm.n();
    let mut seen: BTreeSet<Vec<i32>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut c = vec![0; n];
        c[i] = 1;
        seen.insert(c.clone());
        queue.push_back(c);
    }
    let tmp = RootSystem { gcm: gcm.clone(), positive: Vec::new(), index: HashMap::new(), sym: sym.clone() };
    while let Some(xi) = queue.pop_front() {
        for i in 0..n {
            let r = tmp.reflect(i, &xi);
            if r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0) && seen.insert(r.clone()) {
                if seen.len() > ROOT_BOUND {
                    return Err(Error::NotFiniteType(ROOT_BOUND));
                }
                queue.push_back(r);
            }
        }
    }
    let mut positive: Vec<Root> = seen.into_iter().map(|coords| Root { coords }).collect();
    positive.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.coords.cmp(&b.coords)));
    let index = positive.iter().enumerate().map(|(i, r)| (r.coords.clone(), i)).collect();
    let rs = RootSystem { gcm: gcm.clone(), positive, index, sym };
    // a finite root system has positive definite form
    if rs.positive.iter().any(|r| rs.form(&r.coords, &r.coords) <= 0) {
        return Err(Error::NotFiniteType(rs.len()));
    }
    Ok(rs)
}

/// Nodes joined to exactly one other node, by a single edge.
pub fn boundary_nodes(gcm: &Gcm) -> Vec<usize> {
    (1..=gcm.n())
        .filter(|&i| {
            let nb = gcm.neighbors(i);
            nb.len() == 1 && gcm.is_simple_edge(i, nb[0])
        })
        .collect()
}

/// For a boundary node, the node it hangs off.
pub fn attached_node(gcm: &Gcm, i: usize) -> Option<usize> {
    let nb = gcm.neighbors(i);
    (nb.len() == 1).then(|| nb[0])
}

pub fn is_admissible(gcm: &Gcm, subset: &[usize]) -> bool {
    let boundary = boundary_nodes(gcm);
    if !subset.iter().all(|i| boundary.contains(i)) {
        return false;
    }
    let set: BTreeSet<usize> = subset.iter().copied().collect();
    if set.len() != subset.len() {
        return false;
    }
    let attached: BTreeSet<usize> = subset.iter().filter_map(|&i| attached_node(gcm, i)).collect();
    attached.len() == subset.len() && attached.is_disjoint(&set)
}

/// Subsets of boundary nodes with distinct attached nodes and no two members adjacent,
/// ordered by size and then lexicographically.
pub fn admissible_subsets(gcm: &Gcm) -> Vec<Vec<usize>> {
    let b = boundary_nodes(gcm);
    let mut out = Vec::new();
    for mask in 0u32..(1 << b.len()) {
        let s: Vec<usize> = (0..b.len()).filter(|k| mask >> k & 1 == 1).map(|k| b[k]).collect();
        if is_admissible(gcm, &s) {
            out.push(s);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Deletes each `i_r` in `subset`, zeroes the diagonal at its attached node and marks it odd.
/// Returns the new matrix and the original labels of the surviving nodes, in their natural order.
pub fn derive_tilde(gcm: &Gcm, subset: &[usize]) -> Result<(Gcm, Vec<usize>)> {
    if !gcm.is_purely_even() || !is_admissible(gcm, subset) {
        return Err(Error::PreconditionViolated(format!("{subset:?} is not an admissible subset")));
    }
    let odd: BTreeSet<usize> = subset.iter().filter_map(|&i| attached_node(gcm, i)).collect();
    let keep: Vec<usize> = (1..=gcm.n()).filter(|i| !subset.contains(i)).collect();
    let a: Vec<Vec<i64>> = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| if i == j && odd.contains(&i) { 0 } else { gcm.entry(i - 1, j - 1) }).collect())
        .collect();
    let parity = keep.iter().map(|i| if odd.contains(i) { Parity::Odd } else { Parity::Even }).collect();
    Ok((Gcm::validate(a, parity)?, keep))
}

/// A purely even diagram with a set of pairwise non-adjacent black nodes (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    diagram: Gcm,
    black: BTreeSet<usize>,
}

impl Coloring {
    pub fn new(diagram: Gcm, black: impl IntoIterator<Item = usize>) -> Result<Coloring> {
        let black: BTreeSet<usize> = black.into_iter().collect();
        if let Some(&b) = black.iter().find(|&&b| b == 0 || b > diagram.n()) {
            return Err(Error::InvalidColoring(format!("node {b} out of range")));
        }
        for &a in &black {
            for &b in &black {
                if a < b && diagram.entry(a - 1, b - 1) != 0 {
                    return Err(Error::InvalidColoring(format!("black nodes {a} and {b} are adjacent")));
                }
            }
        }
        Ok(Coloring { diagram, black })
    }
    pub fn diagram(&self) -> &Gcm {
        &self.diagram
    }
    pub fn black(&self) -> &BTreeSet<usize> {
        &self.black
    }
    pub fn black_vec(&self) -> Vec<usize> {
        self.black.iter().copied().collect()
    }
}

pub fn legal_swap(c: &Coloring, i: usize, j: usize) -> Result<Coloring> {
    let g = &c.diagram;
    if !c.black.contains(&i) {
        return Err(Error::IllegalSwap(format!("node {i} is not black")));
    }
    if j == 0 || j > g.n() || c.black.contains(&j) {
        return Err(Error::IllegalSwap(format!("node {j} is not a white node")));
    }
    if g.entry(i - 1, j - 1) == 0 {
        return Err(Error::IllegalSwap(format!("nodes {i} and {j} are not adjacent")));
    }
    if !g.is_simple_edge(i, j) {
        return Err(Error::IllegalSwap(format!("nodes {i} and {j} are joined by a multiple edge")));
    }
    if let Some(k) = g.neighbors(j).into_iter().find(|&k| k != i && c.black.contains(&k)) {
        return Err(Error::IllegalSwap(format!("node {j} has another black neighbor {k}")));
    }
    let mut black = c.black.clone();
    black.remove(&i);
    black.insert(j);
    Ok(Coloring { diagram: c.diagram.clone(), black })
}

/// A coloring reached from the start together with the swaps that reach it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitMember {
    pub coloring: Coloring,
    pub path: Vec<(usize, usize)>,
}

pub fn swap_orbit(c: &Coloring) -> Vec<OrbitMember> {
    let mut out = vec![OrbitMember { coloring: c.clone(), path: Vec::new() }];
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([c.black_vec()]);
    let mut head = 0;
    while head < out.len() {
        let cur = out[head].clone();
        head += 1;
        for &i in cur.coloring.black.iter() {
            for j in cur.coloring.diagram.neighbors(i) {
                if let Ok(next) = legal_swap(&cur.coloring, i, j) {
                    if seen.insert(next.black_vec()) {
                        let mut path = cur.path.clone();
                        path.push((i, j));
                        out.push(OrbitMember { coloring: next, path });
                    }
                }
            }
        }
    }
    out
}

/// Integer matrix (acting on simple-root coordinates as columns) of the Weyl group
/// element carried by a sequence of swaps: each swap `(i, j)` contributes `s_i s_j`,
/// which sends `α_i` to `α_j` and fixes the other black simple roots.
pub fn swap_path_weyl(rs: &RootSystem, path: &[(usize, usize)]) -> Vec<Vec<i32>> {
    let n = rs.rank();
    let mut images: Vec<Vec<i32>> = (0..n)
        .map(|k| {
            let mut e = vec![0; n];
            e[k] = 1;
            e
        })
        .collect();
    for &(i, j) in path {
        for v in images.iter_mut() {
            *v = rs.reflect(i - 1, &rs.reflect(j - 1, v));
        }
    }
    images
}

/// Applies a Weyl matrix given by images of the simple roots.
pub fn weyl_apply(images: &[Vec<i32>], xi: &[i32]) -> Vec<i32> {
    let n = xi.len();
    let mut out = vec![0; n];
    for (k, &c) in xi.iter().enumerate() {
        if c != 0 {
            for t in 0..n {
                out[t] += c * images[k][t];
            }
        }
    }
    out
}

pub(crate) fn root_add(a: &[i32], b: &[i32]) -> Vec<i32> {
    add(a, b)
}

pub(crate) fn root_sub(a: &[i32], b: &[i32]) -> Vec<i32> {
    sub(a, b)
}
