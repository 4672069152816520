//! Dense linear algebra over a prime field `F_p`.
//!
//! Entries are stored as `u32` residues in `0..p`. Every routine is exact and
//! deterministic: pivots are always the first usable row or column.

use alloc::vec;
use alloc::vec::Vec;

/// Arithmetic in the prime field of order `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Self {
        assert!(is_prime(p), "{} is not prime", p);
        Fp { p }
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, (self.p - 2) as u64)
    }

    pub fn from_i64(self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    /// `(-1)^k` as a field element.
    #[inline]
    pub fn sign(self, k: usize) -> u32 {
        if k % 2 == 0 {
            1 % self.p
        } else {
            self.neg(1 % self.p)
        }
    }

    /// `acc += c * v` entrywise.
    pub fn axpy(self, acc: &mut [u32], c: u32, v: &[u32]) {
        if c == 0 {
            return;
        }
        for (a, &x) in acc.iter_mut().zip(v) {
            if x != 0 {
                *a = self.add(*a, self.mul(c, x));
            }
        }
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, 1)
    }

    pub fn scalar(n: usize, c: u32) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn from_row_vecs(cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zero(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                m.data[i * cols.len() + j] = c[i];
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn to_row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, f: Fp) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let start = i * other.cols;
                f.axpy(&mut out.data[start..start + other.cols], a, orow);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32], f: Fp) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        let mut out = vec![0u32; self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = 0u64;
            for (a, b) in self.row(i).iter().zip(v) {
                acc += *a as u64 * *b as u64;
            }
            *o = (acc % f.p() as u64) as u32;
        }
        out
    }

    pub fn add(&self, other: &Matrix, f: Fp) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix, f: Fp) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u32, f: Fp) -> Matrix {
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(i));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zero(rows, cols);
        for i in 0..rows {
            let src = (r0 + i) * self.cols + c0;
            m.data[i * cols..(i + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        m
    }

    pub fn hstack(rows: usize, blocks: &[Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zero(rows, cols);
        let mut c0 = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            m.put_block(0, c0, b);
            c0 += b.cols;
        }
        m
    }

    pub fn vstack(cols: usize, blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut m = Matrix::zero(rows, cols);
        let mut r0 = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            m.put_block(r0, 0, b);
            r0 += b.rows;
        }
        m
    }

    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zero(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.put_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn rank(&self, f: Fp) -> usize {
        rref(self, f).1.len()
    }

    pub fn inverse(&self, f: Fp) -> Option<Matrix> {
        inverse(self, f)
    }
}

/// Reduced row echelon form and its pivot columns.
pub fn rref(m: &Matrix, f: Fp) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| a.get(i, c) != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..a.cols {
                a.data.swap(pr * a.cols + j, r * a.cols + j);
            }
        }
        let inv = f.inv(a.get(r, c));
        for j in 0..a.cols {
            let v = a.get(r, j);
            a.set(r, j, f.mul(v, inv));
        }
        let pivot_row = a.row(r).to_vec();
        for i in 0..a.rows {
            if i != r {
                let factor = a.get(i, c);
                if factor != 0 {
                    let start = i * a.cols;
                    let neg = f.neg(factor);
                    f.axpy(&mut a.data[start..start + a.cols], neg, &pivot_row);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of the right kernel `{v : m v = 0}`.
pub fn kernel(m: &Matrix, f: Fp) -> Vec<Vec<u32>> {
    let (a, pivots) = rref(m, f);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![0u32; m.cols];
        v[free] = 1;
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = f.neg(a.get(r, free));
        }
        basis.push(v);
    }
    basis
}

pub fn inverse(m: &Matrix, f: Fp) -> Option<Matrix> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows;
    if n == 0 {
        return Some(Matrix::zero(0, 0));
    }
    let aug = Matrix::hstack(n, &[m.clone(), Matrix::identity(n)]);
    let (red, pivots) = rref(&aug, f);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.block(0, n, n, n))
}

/// Some `x` with `m x = b`, if one exists.
pub fn solve(m: &Matrix, b: &[u32], f: Fp) -> Option<Vec<u32>> {
    assert_eq!(b.len(), m.rows);
    let bcol = Matrix::from_columns(m.rows, &[b.to_vec()]);
    let aug = Matrix::hstack(m.rows, &[m.clone(), bcol]);
    let (red, pivots) = rref(&aug, f);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![0u32; m.cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = red.get(r, m.cols);
    }
    Some(x)
}

/// A matrix `R` with `m R v = v` for every `v` in the column space of `m`.
pub fn image_section(m: &Matrix, f: Fp) -> Matrix {
    let (rows, cols) = (m.rows, m.cols);
    let aug = Matrix::hstack(rows, &[m.clone(), Matrix::identity(rows)]);
    let (red, pivots) = rref(&aug, f);
    let mut out = Matrix::zero(cols, rows);
    for (i, &c) in pivots.iter().enumerate() {
        if c >= cols {
            break;
        }
        for j in 0..rows {
            out.set(c, j, red.get(i, cols + j));
        }
    }
    out
}

/// Incremental echelon basis of a subspace of `F_p^n`.
///
/// Each stored row carries a tag vector recording it as a combination of
/// tagged inputs, so that `reduce` can report coordinates.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Fp,
    n: usize,
    ntag: usize,
    rows: Vec<Vec<u32>>,
    tags: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: Fp, n: usize, ntag: usize) -> Self {
        Echelon { field, n, ntag, rows: Vec::new(), tags: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Residual of `v` after eliminating all pivots, plus the tag combination
    /// of the rows that were subtracted.
    pub fn reduce(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let f = self.field;
        let mut r = v.to_vec();
        let mut tag = vec![0u32; self.ntag];
        for (i, &c) in self.pivots.iter().enumerate() {
            let x = r[c];
            if x != 0 {
                f.axpy(&mut r, f.neg(x), &self.rows[i]);
                f.axpy(&mut tag, x, &self.tags[i]);
            }
        }
        (r, tag)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).0.iter().all(|&x| x == 0)
    }

    /// Inserts `v` with the given tag; returns false if `v` was dependent.
    pub fn insert_tagged(&mut self, v: &[u32], tag: &[u32]) -> bool {
        assert_eq!(v.len(), self.n);
        let f = self.field;
        let (mut r, sub) = self.reduce(v);
        let Some(c) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let mut t = tag.to_vec();
        for (a, &b) in t.iter_mut().zip(&sub) {
            *a = f.sub(*a, b);
        }
        let inv = f.inv(r[c]);
        for x in r.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for x in t.iter_mut() {
            *x = f.mul(*x, inv);
        }
        self.rows.push(r);
        self.tags.push(t);
        self.pivots.push(c);
        true
    }

    pub fn insert(&mut self, v: &[u32]) -> bool {
        let tag = vec![0u32; self.ntag];
        self.insert_tagged(v, &tag)
    }
}

/// Rank of the span of the given vectors.
pub fn span_rank(field: Fp, n: usize, vectors: &[Vec<u32>]) -> usize {
    let mut e = Echelon::new(field, n, 0);
    for v in vectors {
        e.insert(v);
    }
    e.dim()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_inverse() {
        let f = Fp::new(7);
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn kernel_and_rank() {
        let f = Fp::new(3);
        let m = Matrix::from_row_vecs(3, &[vec![1, 2, 0], vec![2, 1, 0]]);
        assert_eq!(m.rank(f), 1);
        let k = kernel(&m, f);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v, f).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = Fp::new(5);
        let m = Matrix::from_row_vecs(2, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse(f).unwrap();
        assert_eq!(m.mul(&inv, f), Matrix::identity(2));
        let singular = Matrix::from_row_vecs(2, &[vec![1, 2], vec![2, 4]]);
        assert!(singular.inverse(f).is_none());
        assert_eq!(Matrix::zero(0, 0).inverse(f), Some(Matrix::zero(0, 0)));
    }

    #[test]
    fn tagged_coordinates() {
        let f = Fp::new(5);
        let mut e = Echelon::new(f, 3, 2);
        e.insert_tagged(&[1, 1, 0], &[1, 0]);
        e.insert_tagged(&[0, 1, 1], &[0, 1]);
        let v = [2, 3, 1];
        let (res, tag) = e.reduce(&v);
        assert!(res.iter().all(|&x| x == 0));
        assert_eq!(tag, vec![2, 1]);
    }

    #[test]
    fn solve_finds_preimage() {
        let f = Fp::new(2);
        let m = Matrix::from_row_vecs(3, &[vec![1, 1, 0], vec![0, 1, 1]]);
        let x = solve(&m, &[1, 0], f).unwrap();
        assert_eq!(m.mul_vec(&x, f), vec![1, 0]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn mat(p: u32, r: usize, c: usize) -> impl Strategy<Value = Matrix> {
            proptest::collection::vec(0..p, r * c).prop_map(move |d| Matrix::from_rows(r, c, d))
        }

        proptest! {
            #[test]
            fn rank_nullity(m in mat(3, 4, 6)) {
                let f = Fp::new(3);
                prop_assert_eq!(m.rank(f) + kernel(&m, f).len(), 6);
            }

            #[test]
            fn image_section_splits(m in mat(5, 4, 6), w in proptest::collection::vec(0u32..5, 6)) {
                let f = Fp::new(5);
                let v = m.mul_vec(&w, f);
                let r = image_section(&m, f);
                prop_assert_eq!(m.mul_vec(&r.mul_vec(&v, f), f), v);
            }

            #[test]
            fn transpose_preserves_rank(m in mat(2, 5, 3)) {
                let f = Fp::new(2);
                prop_assert_eq!(m.rank(f), m.transpose().rank(f));
            }
        }
    }
}
