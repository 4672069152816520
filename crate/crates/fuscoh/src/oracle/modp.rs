//! Gaussian elimination over `F_p` for the oracles.

use std::collections::BTreeMap;

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Rank of a matrix given by sparse rows `(column, value)`, values reduced mod `p`.
pub fn sparse_rank(rows: &[Vec<(usize, u32)>], p: u32) -> usize {
    let p64 = p as u64;
    let mut pivots: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
    for row in rows {
        let mut cur: BTreeMap<usize, u64> = BTreeMap::new();
        for &(c, v) in row {
            let e = cur.entry(c).or_insert(0);
            *e = (*e + v as u64) % p64;
        }
        cur.retain(|_, v| *v != 0);
        while let Some((&lead, &v)) = cur.iter().next() {
            let Some(piv) = pivots.get(&lead) else {
                let s = inv_mod(v, p64);
                for x in cur.values_mut() {
                    *x = *x * s % p64;
                }
                pivots.insert(lead, cur);
                break;
            };
            for (&c, &w) in piv {
                let e = cur.entry(c).or_insert(0);
                *e = (*e + (p64 - v) * w) % p64;
                if *e == 0 {
                    cur.remove(&c);
                }
            }
        }
    }
    pivots.len()
}

/// Reduced row echelon form of dense rows; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<u32>>, cols: usize, p: u32) -> Vec<usize> {
    let p64 = p as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, k);
        let s = inv_mod(rows[r][c] as u64, p64);
        for x in rows[r].iter_mut() {
            *x = (*x as u64 * s % p64) as u32;
        }
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let t = p64 - row[c] as u64;
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    if y != 0 {
                        *x = ((*x as u64 + t * y as u64) % p64) as u32;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A basis of `{x : A x = 0}` for `A` with the given dense rows.
pub fn nullspace(rows: &[Vec<u32>], cols: usize, p: u32) -> Vec<Vec<u32>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, cols, p);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = (p - m[r][free]) % p;
        }
        basis.push(v);
    }
    basis
}

/// An incrementally built subspace of `F_p^n` in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Span {
    p: u32,
    rows: BTreeMap<usize, Vec<u32>>,
}

impl Span {
    pub fn new(p: u32) -> Span {
        Span { p, rows: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut v = v.to_vec();
        for (&c, row) in &self.rows {
            let a = v[c] as u64;
            if a != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    if y != 0 {
                        *x = ((*x as u64 + (p - a) * y as u64) % p) as u32;
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut r = self.reduce(v);
        let Some(c) = r.iter().position(|&x| x != 0) else { return false };
        let p = self.p as u64;
        let s = inv_mod(r[c] as u64, p);
        for x in r.iter_mut() {
            *x = (*x as u64 * s % p) as u32;
        }
        for row in self.rows.values_mut() {
            let a = row[c] as u64;
            if a != 0 {
                for (x, &y) in row.iter_mut().zip(&r) {
                    if y != 0 {
                        *x = ((*x as u64 + (p - a) * y as u64) % p) as u32;
                    }
                }
            }
        }
        self.rows.insert(c, r);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        let rows = vec![vec![(0, 1), (1, 1)], vec![(1, 1), (2, 1)], vec![(0, 1), (2, 2)]];
        assert_eq!(sparse_rank(&rows, 3), 2);
        assert_eq!(sparse_rank(&rows, 5), 3);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let rows = vec![vec![1, 2, 0, 1], vec![0, 1, 1, 1]];
        let ns = nullspace(&rows, 4, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &rows {
                assert_eq!(r.iter().zip(v).map(|(a, b)| a * b).sum::<u32>() % 3, 0);
            }
        }
    }

    #[test]
    fn span_membership() {
        let mut s = Span::new(2);
        assert!(s.insert(&[1, 1, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[1, 0, 1]));
        assert!(s.contains(&[1, 0, 1]));
        assert!(!s.contains(&[1, 0, 0]));
        assert_eq!(s.dim(), 2);
    }
}
