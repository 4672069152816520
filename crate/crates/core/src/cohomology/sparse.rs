//! Row-sparse matrices over `F_p`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::linalg::{Fp, Matrix};

pub type SparseRow = Vec<(usize, u32)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix { rows, cols, data: alloc::vec![Vec::new(); rows] }
    }

    pub fn from_dense(m: &Matrix) -> SparseMatrix {
        let data = (0..m.rows())
            .map(|r| m.row(r).iter().enumerate().filter(|&(_, &v)| v != 0).map(|(c, &v)| (c, v)).collect())
            .collect();
        SparseMatrix { rows: m.rows(), cols: m.cols(), data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entries must be sorted by column with no zeros.
    pub fn set_row(&mut self, r: usize, entries: SparseRow) {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        self.data[r] = entries;
    }

    pub fn row(&self, r: usize) -> &[(usize, u32)] {
        &self.data[r]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zero(self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for &(c, v) in row {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[u32], f: Fp) -> Vec<u32> {
        self.data
            .iter()
            .map(|row| row.iter().fold(0, |acc, &(c, x)| f.add(acc, f.mul(x, v[c]))))
            .collect()
    }

    /// Rank by elimination on rows, pivoting on the smallest remaining column.
    pub fn rank(&self, f: Fp) -> usize {
        let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for row in &self.data {
            let mut cur = row.clone();
            while let Some(&(lead, v)) = cur.first() {
                match pivots.get(&lead) {
                    Some(p) => cur = axpy_sparse(f, &cur, f.neg(v), p),
                    None => {
                        let inv = f.inv(v);
                        for e in cur.iter_mut() {
                            e.1 = f.mul(e.1, inv);
                        }
                        pivots.insert(lead, cur);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }
}

/// `a + c·b` for rows sorted by column.
pub fn axpy_sparse(f: Fp, a: &[(usize, u32)], c: u32, b: &[(usize, u32)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f.mul(c, b[j].1)));
            j += 1;
        } else {
            let v = f.add(a[i].1, f.mul(c, b[j].1));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
