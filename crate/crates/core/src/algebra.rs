//! Finite-dimensional superalgebras over F_p given by structure constants.

use crate::error::{Error, Result};
use crate::field::{self, FpMatrix, FpVector};
use crate::roots::Parity;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SuperDim {
    pub even: usize,
    pub odd: usize,
}

impl SuperDim {
    pub fn new(even: usize, odd: usize) -> Self {
        SuperDim { even, odd }
    }
    pub fn total(self) -> usize {
        self.even + self.odd
    }
}

impl fmt::Display for SuperDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.even, self.odd)
    }
}

/// Basis with parities and a sparse structure tensor: `[x_i, x_j] = Σ_k C(i,j,k) x_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularSuperAlgebra {
    p: u32,
    parity: Vec<Parity>,
    labels: Vec<String>,
    names: BTreeMap<String, usize>,
    grading: Option<Vec<Vec<i32>>>,
    // CSR over ordered pairs i * dim + j
    offsets: Vec<u32>,
    entries: Vec<(u32, u32)>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    schema: u32,
    p: u32,
    dim: usize,
    parity: Vec<u8>,
    labels: Vec<String>,
    constants: Vec<[i64; 4]>,
}

impl ModularSuperAlgebra {
    /// Builds from the bracket of every ordered pair; `table[i * dim + j]` lists `(k, c)`.
    pub fn from_table(p: u32, parity: Vec<Parity>, labels: Vec<String>, table: Vec<Vec<(usize, i64)>>) -> Result<Self> {
        field::check_modulus(p)?;
        let dim = parity.len();
        if labels.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: labels.len() });
        }
        if table.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: table.len() });
        }
        let mut offsets = Vec::with_capacity(dim * dim + 1);
        let mut entries = Vec::new();
        offsets.push(0);
        for cell in table {
            let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
            for (k, c) in cell {
                if k >= dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: k + 1 });
                }
                let e = acc.entry(k).or_insert(0);
                *e = field::add(*e, field::reduce(c, p), p);
            }
            entries.extend(acc.into_iter().filter(|&(_, c)| c != 0).map(|(k, c)| (k as u32, c)));
            offsets.push(entries.len() as u32);
        }
        Ok(ModularSuperAlgebra { p, parity, labels, names: BTreeMap::new(), grading: None, offsets, entries })
    }

    /// Builds from brackets with `i <= j`; the rest follows from super skew symmetry.
    pub fn from_upper(p: u32, parity: Vec<Parity>, labels: Vec<String>, upper: &[(usize, usize, usize, i64)]) -> Result<Self> {
        let dim = parity.len();
        let mut table = vec![Vec::new(); dim * dim];
        for &(i, j, k, c) in upper {
            if i > j || j >= dim {
                return Err(Error::InvalidInput(format!("constant ({i},{j},{k}) is not in upper form")));
            }
            table[i * dim + j].push((k, c));
            if i != j {
                let sign = if parity[i].is_odd() && parity[j].is_odd() { 1 } else { -1 };
                table[j * dim + i].push((k, sign * c));
            }
        }
        Self::from_table(p, parity, labels, table)
    }

    pub fn with_names(mut self, names: BTreeMap<String, usize>) -> Self {
        self.names = names;
        self
    }

    pub fn with_grading(mut self, grading: Vec<Vec<i32>>) -> Self {
        assert_eq!(grading.len(), self.dim());
        self.grading = Some(grading);
        self
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }
    pub fn dim(&self) -> usize {
        self.parity.len()
    }
    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }
    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }
    pub fn names(&self) -> &BTreeMap<String, usize> {
        &self.names
    }
    pub fn named(&self, name: &str) -> Option<usize> {
        self.names.get(name).copied()
    }
    pub fn grading(&self) -> Option<&[Vec<i32>]> {
        self.grading.as_deref()
    }

    pub fn superdim(&self) -> SuperDim {
        let odd = self.parity.iter().filter(|p| p.is_odd()).count();
        SuperDim::new(self.dim() - odd, odd)
    }

    pub fn is_purely_even(&self) -> bool {
        self.parity.iter().all(|p| !p.is_odd())
    }

    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.parity[i].is_odd()).collect()
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity[i].is_odd()).collect()
    }

    /// `[x_i, x_j]` as `(k, c)` pairs.
    #[inline]
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(u32, u32)] {
        let cell = i * self.dim() + j;
        &self.entries[self.offsets[cell] as usize..self.offsets[cell + 1] as usize]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> u32 {
        self.bracket_basis(i, j).iter().find(|e| e.0 as usize == k).map_or(0, |e| e.1)
    }

    pub fn basis_vector(&self, i: usize) -> FpVector {
        FpVector::unit(self.dim(), i, self.p)
    }

    pub fn bracket(&self, x: &FpVector, y: &FpVector) -> FpVector {
        let p = self.p;
        let mut acc = vec![0u32; self.dim()];
        for (i, a) in x.support() {
            for (j, b) in y.support() {
                let ab = field::mul(a, b, p);
                for &(k, c) in self.bracket_basis(i, j) {
                    let k = k as usize;
                    acc[k] = field::add(acc[k], field::mul(ab, c, p), p);
                }
            }
        }
        FpVector::from_residues(acc, p)
    }

    /// `[x, x_j]` for a basis vector `x_j`.
    pub fn bracket_with_basis(&self, x: &FpVector, j: usize) -> FpVector {
        let p = self.p;
        let mut acc = vec![0u32; self.dim()];
        for (i, a) in x.support() {
            for &(k, c) in self.bracket_basis(i, j) {
                let k = k as usize;
                acc[k] = field::add(acc[k], field::mul(a, c, p), p);
            }
        }
        FpVector::from_residues(acc, p)
    }

    /// Matrix of `ad x` in the standard basis (column `j` is `[x, x_j]`).
    pub fn ad(&self, x: &FpVector) -> FpMatrix {
        let n = self.dim();
        let p = self.p;
        let mut m = FpMatrix::zeros(n, n, p);
        for (i, a) in x.support() {
            for j in 0..n {
                for &(k, c) in self.bracket_basis(i, j) {
                    let k = k as usize;
                    let cur = m.get(k, j);
                    m.set(k, j, field::add(cur, field::mul(a, c, p), p));
                }
            }
        }
        m
    }

    /// Parity of a homogeneous nonzero vector.
    pub fn vector_parity(&self, v: &FpVector) -> Option<Parity> {
        let mut found = None;
        for (i, _) in v.support() {
            match found {
                None => found = Some(self.parity[i]),
                Some(q) if q != self.parity[i] => return None,
                _ => {}
            }
        }
        found
    }

    /// All constants `(i, j, k, c)` over ordered pairs.
    pub fn constants(&self) -> impl Iterator<Item = (usize, usize, usize, u32)> + '_ {
        let n = self.dim();
        (0..n * n).flat_map(move |cell| {
            self.entries[self.offsets[cell] as usize..self.offsets[cell + 1] as usize]
                .iter()
                .map(move |&(k, c)| (cell / n, cell % n, k as usize, c))
        })
    }

    /// Copy with `C(i, j, k)` shifted by `delta`; intended for fault injection in checks.
    pub fn perturbed(&self, i: usize, j: usize, k: usize, delta: i64) -> ModularSuperAlgebra {
        let n = self.dim();
        let mut table: Vec<Vec<(usize, i64)>> = (0..n * n)
            .map(|cell| {
                self.entries[self.offsets[cell] as usize..self.offsets[cell + 1] as usize]
                    .iter()
                    .map(|&(k, c)| (k as usize, c as i64))
                    .collect()
            })
            .collect();
        table[i * n + j].push((k, delta));
        let mut out = Self::from_table(self.p, self.parity.clone(), self.labels.clone(), table).expect("same shape");
        out.names = self.names.clone();
        out.grading = self.grading.clone();
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let constants = self
            .constants()
            .filter(|&(i, j, _, _)| i <= j)
            .map(|(i, j, k, c)| [i as i64, j as i64, k as i64, field::signed(c, self.p)])
            .collect();
        serde_json::to_value(AlgebraJson {
            schema: 1,
            p: self.p,
            dim: self.dim(),
            parity: self.parity.iter().map(|q| q.bit()).collect(),
            labels: self.labels.clone(),
            constants,
        })
        .expect("serializable")
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let raw: AlgebraJson = serde_json::from_value(v.clone()).map_err(|e| Error::InvalidInput(e.to_string()))?;
        if raw.parity.len() != raw.dim {
            return Err(Error::DimensionMismatch { expected: raw.dim, found: raw.parity.len() });
        }
        let upper: Vec<(usize, usize, usize, i64)> = raw
            .constants
            .iter()
            .map(|q| {
                if q[..3].iter().any(|&x| x < 0) {
                    Err(Error::InvalidInput("negative index in constants".into()))
                } else {
                    Ok((q[0] as usize, q[1] as usize, q[2] as usize, q[3]))
                }
            })
            .collect::<Result<_>>()?;
        Self::from_upper(raw.p, raw.parity.into_iter().map(Parity::from_bit).collect(), raw.labels, &upper)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2(p: u32) -> ModularSuperAlgebra {
        // basis e, f, h
        let upper = [(0, 1, 2, 1), (0, 2, 0, -2), (1, 2, 1, 2)];
        ModularSuperAlgebra::from_upper(p, vec![Parity::Even; 3], vec!["e".into(), "f".into(), "h".into()], &upper).unwrap()
    }

    #[test]
    fn skew_fill() {
        let g = sl2(3);
        assert_eq!(g.constant(2, 0, 0), 2);
        assert_eq!(g.constant(0, 2, 0), 1);
        assert_eq!(g.constant(1, 0, 2), 2);
        let h = g.basis_vector(2);
        let ad = g.ad(&h);
        assert_eq!(ad.get(0, 0), 2);
        assert_eq!(ad.get(1, 1), 1);
    }

    #[test]
    fn json_roundtrip() {
        let g = sl2(5);
        let v = g.to_json_value();
        assert_eq!(v["schema"], 1);
        let back = ModularSuperAlgebra::from_json_value(&v).unwrap();
        assert_eq!(back.constants().collect::<Vec<_>>(), g.constants().collect::<Vec<_>>());
    }

    #[test]
    fn bracket_bilinear() {
        let g = sl2(7);
        let x = FpVector::from_i64(&[1, 2, 3], 7);
        let y = FpVector::from_i64(&[4, 0, 1], 7);
        let lhs = g.bracket(&x, &y);
        let rhs = g.ad(&x).mul_vec(&y).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(g.bracket(&y, &x), lhs.neg());
    }
}
