//! Dense linear algebra over a prime field F_p.
//!
//! Entries are stored as `u32` residues in `[0, p)`. All elimination routines
//! pivot on the leftmost available column and, within a column, the smallest
//! row index, so every output is reproducible.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

pub fn is_odd_prime(p: u32) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3u32;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn check_modulus(p: u32) -> Result<()> {
    // products of two residues must fit in u64 accumulators many times over
    if is_odd_prime(p) && p < (1 << 20) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

#[inline]
pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

/// Multiplicative inverse; panics on zero.
pub fn inv(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    pow(a, (p - 2) as u64, p)
}

/// Symmetric representative in `(-p/2, p/2]`, handy for printing.
pub fn signed(a: u32, p: u32) -> i64 {
    if a > p / 2 {
        a as i64 - p as i64
    } else {
        a as i64
    }
}

/// A single residue together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpScalar {
    value: u32,
    modulus: u32,
}

impl FpScalar {
    pub fn new(x: i64, p: u32) -> Self {
        FpScalar { value: reduce(x, p), modulus: p }
    }
    pub fn value(self) -> u32 {
        self.value
    }
    pub fn modulus(self) -> u32 {
        self.modulus
    }
    pub fn is_zero(self) -> bool {
        self.value == 0
    }
    pub fn inv(self) -> Option<Self> {
        (self.value != 0).then(|| FpScalar { value: inv(self.value, self.modulus), modulus: self.modulus })
    }
}

impl std::ops::Add for FpScalar {
    type Output = FpScalar;
    fn add(self, o: FpScalar) -> FpScalar {
        debug_assert_eq!(self.modulus, o.modulus);
        FpScalar { value: add(self.value, o.value, self.modulus), modulus: self.modulus }
    }
}

impl std::ops::Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, o: FpScalar) -> FpScalar {
        debug_assert_eq!(self.modulus, o.modulus);
        FpScalar { value: sub(self.value, o.value, self.modulus), modulus: self.modulus }
    }
}

impl std::ops::Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, o: FpScalar) -> FpScalar {
        debug_assert_eq!(self.modulus, o.modulus);
        FpScalar { value: mul(self.value, o.value, self.modulus), modulus: self.modulus }
    }
}

impl std::ops::Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> FpScalar {
        FpScalar { value: neg(self.value, self.modulus), modulus: self.modulus }
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpVector {
    p: u32,
    data: Vec<u32>,
}

impl FpVector {
    pub fn zeros(n: usize, p: u32) -> Self {
        FpVector { p, data: vec![0; n] }
    }

    pub fn unit(n: usize, i: usize, p: u32) -> Self {
        let mut v = Self::zeros(n, p);
        v.data[i] = 1 % p;
        v
    }

    pub fn from_i64(xs: &[i64], p: u32) -> Self {
        FpVector { p, data: xs.iter().map(|&x| reduce(x, p)).collect() }
    }

    /// Wraps residues that are already reduced.
    pub fn from_residues(data: Vec<u32>, p: u32) -> Self {
        debug_assert!(data.iter().all(|&x| x < p));
        FpVector { p, data }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }
    pub fn modulus(&self) -> u32 {
        self.p
    }
    pub fn as_slice(&self) -> &[u32] {
        &self.data
    }
    pub fn as_mut_slice(&mut self) -> &mut [u32] {
        &mut self.data
    }
    pub fn into_vec(self) -> Vec<u32> {
        self.data
    }
    pub fn get(&self, i: usize) -> u32 {
        self.data[i]
    }
    pub fn set(&mut self, i: usize, x: u32) {
        self.data[i] = x % self.p;
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.data.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c))
    }

    pub fn leading(&self) -> Option<usize> {
        self.data.iter().position(|&x| x != 0)
    }

    pub fn scale(&self, c: u32) -> FpVector {
        let p = self.p;
        FpVector { p, data: self.data.iter().map(|&x| mul(x, c, p)).collect() }
    }

    /// self += c * other
    pub fn axpy(&mut self, c: u32, other: &FpVector) {
        let p = self.p;
        if c == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            if b != 0 {
                *a = add(*a, mul(c, b, p), p);
            }
        }
    }

    pub fn add(&self, other: &FpVector) -> FpVector {
        let mut r = self.clone();
        r.axpy(1, other);
        r
    }

    pub fn sub(&self, other: &FpVector) -> FpVector {
        let mut r = self.clone();
        r.axpy(self.p - 1, other);
        r
    }

    pub fn neg(&self) -> FpVector {
        self.scale(self.p - 1)
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.data.iter().map(|&x| signed(x, self.p)).collect()
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_signed())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>], p: u32) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c, p);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = reduce(x, p);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[FpVector], n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, cols.len(), p);
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), n);
            for (i, &x) in v.as_slice().iter().enumerate() {
                m.data[i * cols.len() + j] = x;
            }
        }
        m
    }

    pub fn from_rows(rows: &[FpVector], n: usize, p: u32) -> Self {
        let mut m = Self::zeros(rows.len(), n, p);
        for (i, v) in rows.iter().enumerate() {
            assert_eq!(v.len(), n);
            m.data[i * n..(i + 1) * n].copy_from_slice(v.as_slice());
        }
        m
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x % self.p;
    }
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn row_vector(&self, i: usize) -> FpVector {
        FpVector::from_residues(self.row(i).to_vec(), self.p)
    }
    pub fn column(&self, j: usize) -> FpVector {
        FpVector::from_residues((0..self.rows).map(|i| self.get(i, j)).collect(), self.p)
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = Self::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let p = self.p as u64;
        let (n, m) = (self.rows, other.cols);
        let mut acc = vec![0u64; m];
        let mut out = Self::zeros(n, m, self.p);
        for i in 0..n {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (x, &b) in acc.iter_mut().zip(other.row(k)) {
                    *x += a * b as u64;
                }
                // keep the accumulator bounded
                if k % 1024 == 1023 {
                    acc.iter_mut().for_each(|x| *x %= p);
                }
            }
            for j in 0..m {
                out.data[i * m + j] = (acc[j] % p) as u32;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &FpVector) -> Result<FpVector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let p = self.p as u64;
        let data = (0..self.rows)
            .map(|i| {
                let s: u64 = self
                    .row(i)
                    .iter()
                    .zip(v.as_slice())
                    .filter(|(&a, &b)| a != 0 && b != 0)
                    .map(|(&a, &b)| (a as u64 * b as u64) % p)
                    .sum();
                (s % p) as u32
            })
            .collect();
        Ok(FpVector::from_residues(data, self.p))
    }

    pub fn pow(&self, k: u32) -> Result<FpMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let mut r = Self::identity(self.rows, self.p);
        for _ in 0..k {
            r = r.mul(self)?;
        }
        Ok(r)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            if piv != r {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, r * m.cols + j);
                }
            }
            let s = inv(m.get(r, c), p);
            for j in c..m.cols {
                let x = m.get(r, j);
                m.data[r * m.cols + j] = mul(x, s, p);
            }
            let pivot_row: Vec<u32> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                let row = &mut m.data[i * m.cols..(i + 1) * m.cols];
                for j in c..row.len() {
                    if pivot_row[j] != 0 {
                        row[j] = sub(row[j], mul(f, pivot_row[j], p), p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per free column (free entry set to 1).
    pub fn kernel_basis(&self) -> Vec<FpVector> {
        let p = self.p;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        let mut out = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = FpVector::zeros(self.cols, p);
            v.data[free] = 1;
            for (row, &c) in pivots.iter().enumerate() {
                v.data[c] = neg(r.get(row, free), p);
            }
            out.push(v);
        }
        out
    }

    /// Some solution of `self * x = b`, free variables set to zero.
    pub fn solve(&self, b: &FpVector) -> Result<Option<FpVector>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1, self.p);
        for i in 0..self.rows {
            aug.data[i * (self.cols + 1)..i * (self.cols + 1) + self.cols].copy_from_slice(self.row(i));
            aug.data[i * (self.cols + 1) + self.cols] = b.get(i);
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = FpVector::zeros(self.cols, self.p);
        for (row, &c) in pivots.iter().enumerate() {
            x.data[c] = r.get(row, self.cols);
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n, self.p);
        for i in 0..n {
            aug.data[i * 2 * n..i * 2 * n + n].copy_from_slice(self.row(i));
            aug.data[i * 2 * n + n + i] = 1 % self.p;
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Self::zeros(n, n, self.p);
        for i in 0..n {
            out.data[i * n..(i + 1) * n].copy_from_slice(&r.row(i)[n..]);
        }
        Some(out)
    }

    /// Smallest k with M^k = 0.
    pub fn nilpotency_degree(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        // repeated squaring decides nilpotency in log(n) products
        let mut sq = self.clone();
        let mut e = 1usize;
        while e < n {
            sq = sq.mul(&sq)?;
            e *= 2;
        }
        if !sq.is_zero() {
            return Err(Error::NotNilpotent);
        }
        let mut k = 1;
        let mut pw = self.clone();
        while !pw.is_zero() {
            pw = pw.mul(self)?;
            k += 1;
        }
        Ok(k)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> FpMatrix {
        let mut m = Self::zeros(rows.len(), cols.len(), self.p);
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.data[a * cols.len() + b] = self.get(i, j);
            }
        }
        m
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<i64> = self.row(i).iter().map(|&x| signed(x, self.p)).collect();
            writeln!(f, "{row:?}")?;
        }
        Ok(())
    }
}

pub fn mat_rank(m: &FpMatrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &FpMatrix) -> Vec<FpVector> {
    m.kernel_basis()
}

pub fn solve(m: &FpMatrix, b: &FpVector) -> Result<Option<FpVector>> {
    m.solve(b)
}

pub fn nilpotency_degree(m: &FpMatrix) -> Result<usize> {
    m.nilpotency_degree()
}

/// A subspace of F_p^n held in canonical reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    p: u32,
    ambient: usize,
    rows: Vec<FpVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize, p: u32) -> Self {
        Subspace { p, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize, p: u32) -> Self {
        Subspace {
            p,
            ambient,
            rows: (0..ambient).map(|i| FpVector::unit(ambient, i, p)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<'a>(ambient: usize, p: u32, vs: impl IntoIterator<Item = &'a FpVector>) -> Self {
        let mut s = Self::zero(ambient, p);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn modulus(&self) -> u32 {
        self.p
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn basis(&self) -> &[FpVector] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Remainder of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &FpVector) -> FpVector {
        let mut r = v.clone();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = r.get(c);
            if f != 0 {
                r.axpy(neg(f, self.p), row);
            }
        }
        r
    }

    pub fn contains(&self, v: &FpVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &FpVector) -> Option<Vec<u32>> {
        self.contains(v).then(|| self.pivots.iter().map(|&c| v.get(c)).collect())
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &FpVector) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut r = self.reduce(v);
        let Some(c) = r.leading() else { return false };
        let s = inv(r.get(c), self.p);
        r = r.scale(s);
        for row in &mut self.rows {
            let f = row.get(c);
            if f != 0 {
                row.axpy(neg(f, self.p), &r);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(pos, c);
        self.rows.insert(pos, r);
        true
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]], p: u32) -> FpMatrix {
        FpMatrix::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), p)
    }

    // enumerate all of F_p^n; used as an independent kernel oracle
    fn brute_kernel_size(a: &FpMatrix) -> usize {
        let (p, n) = (a.modulus(), a.cols());
        let total = (p as usize).pow(n as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let x: Vec<i64> = (0..n)
                    .map(|_| {
                        let d = c % p as usize;
                        c /= p as usize;
                        d as i64
                    })
                    .collect();
                a.mul_vec(&FpVector::from_i64(&x, p)).unwrap().is_zero()
            })
            .count()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(FpMatrix::zeros(3, 3, 3).rank(), 0);
        assert_eq!(FpMatrix::identity(5, 5).rank(), 5);
        let a = m(&[&[1, 2], &[2, 4]], 5);
        assert_eq!(a.rank(), 1);
        assert_eq!(brute_kernel_size(&a), 5);
    }

    #[test]
    fn kernel_examples() {
        assert!(FpMatrix::identity(4, 3).kernel_basis().is_empty());
        assert_eq!(FpMatrix::zeros(1, 3, 3).kernel_basis().len(), 3);
        let k = m(&[&[1, 1], &[2, 2]], 3).kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].as_slice(), &[2, 1]);
    }

    #[test]
    fn solve_examples() {
        let b = FpVector::from_i64(&[4, 1, 2], 5);
        assert_eq!(FpMatrix::identity(3, 5).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(FpMatrix::zeros(3, 3, 5).solve(&b).unwrap(), None);
        let x = m(&[&[1, 1], &[0, 1]], 3).solve(&FpVector::from_i64(&[0, 1], 3)).unwrap().unwrap();
        assert_eq!(x.as_slice(), &[2, 1]);
        assert!(FpMatrix::identity(2, 3).solve(&FpVector::zeros(3, 3)).is_err());
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(FpMatrix::zeros(4, 4, 3).nilpotency_degree().unwrap(), 1);
        for n in 1..7 {
            let mut j = FpMatrix::zeros(n, n, 7);
            for i in 0..n - 1 {
                j.set(i + 1, i, 1);
            }
            assert_eq!(j.nilpotency_degree().unwrap(), n);
        }
        assert_eq!(FpMatrix::identity(2, 3).nilpotency_degree(), Err(Error::NotNilpotent));
    }

    #[test]
    fn primes() {
        let ps: Vec<u32> = (0..30).filter(|&p| is_odd_prime(p)).collect();
        assert_eq!(ps, vec![3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[1, 2, 0], &[0, 1, 4], &[3, 0, 1]], 7);
        let b = a.inverse().unwrap();
        assert_eq!(a.mul(&b).unwrap(), FpMatrix::identity(3, 7));
        assert!(m(&[&[1, 2], &[2, 4]], 5).inverse().is_none());
    }

    #[test]
    fn subspace_is_canonical() {
        let p = 5;
        let a = FpVector::from_i64(&[1, 2, 3, 0], p);
        let b = FpVector::from_i64(&[0, 1, 1, 1], p);
        let s1 = Subspace::span(4, p, [&a, &b]);
        let s2 = Subspace::span(4, p, [&b.add(&a.scale(3)), &a.scale(2)]);
        assert_eq!(s1, s2);
        assert!(s1.contains(&a.add(&b)));
        assert!(!s1.contains(&FpVector::unit(4, 3, p)));
        let c = s1.coordinates(&a.add(&b)).unwrap();
        let mut rebuilt = FpVector::zeros(4, p);
        for (x, row) in c.iter().zip(s1.basis()) {
            rebuilt.axpy(*x, row);
        }
        assert_eq!(rebuilt, a.add(&b));
    }

    fn arb_matrix(p: u32) -> impl Strategy<Value = FpMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(0..p, r * c).prop_map(move |d| FpMatrix { p, rows: r, cols: c, data: d })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(a in prop_oneof![arb_matrix(3), arb_matrix(5), arb_matrix(7)]) {
            let k = a.kernel_basis();
            prop_assert_eq!(a.rank() + k.len(), a.cols());
            for v in &k {
                prop_assert!(a.mul_vec(v).unwrap().is_zero());
            }
            prop_assert_eq!(Subspace::span(a.cols(), a.modulus(), &k).dim(), k.len());
        }

        #[test]
        fn kernel_matches_enumeration(a in arb_matrix(3)) {
            prop_assume!(a.cols() <= 4);
            let expected = 3usize.pow((a.cols() - a.rank()) as u32);
            prop_assert_eq!(brute_kernel_size(&a), expected);
        }

        #[test]
        fn solve_is_sound(a in arb_matrix(5), seed in proptest::collection::vec(0u32..5, 6)) {
            let b = FpVector::from_residues(seed[..a.rows()].to_vec(), 5);
            match a.solve(&b).unwrap() {
                Some(x) => prop_assert_eq!(a.mul_vec(&x).unwrap(), b),
                None => {
                    let mut aug: Vec<Vec<i64>> = Vec::new();
                    for i in 0..a.rows() {
                        let mut row: Vec<i64> = a.row(i).iter().map(|&x| x as i64).collect();
                        row.push(b.get(i) as i64);
                        aug.push(row);
                    }
                    prop_assert!(FpMatrix::from_i64(&aug, 5).rank() > a.rank());
                }
            }
        }

        #[test]
        fn strictly_lower_is_nilpotent(d in proptest::collection::vec(0u32..3, 25)) {
            let mut a = FpMatrix::zeros(5, 5, 3);
            for i in 0..5 { for j in 0..i { a.set(i, j, d[i * 5 + j]); } }
            let k = a.nilpotency_degree().unwrap();
            prop_assert!(a.pow(k as u32).unwrap().is_zero());
            prop_assert!(!a.pow(k as u32 - 1).unwrap().is_zero());
        }
    }
}
