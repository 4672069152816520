//! Nondegenerate chains in the nerve of a finite category and the normalized cochain differential.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::category::FinCat;
use crate::coefficients::CoefficientSystem;
use crate::error::{Error, Result};
use crate::linalg::Fp;

use super::sparse::SparseMatrix;

pub const DEFAULT_ROW_CAP: usize = 1_000_000;

/// `c_0 -> c_1 -> ... -> c_n`, stored as its first object and the morphisms in order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain {
    pub start: u32,
    pub mors: Vec<u32>,
}

impl Chain {
    pub fn object(start: u32) -> Chain {
        Chain { start, mors: Vec::new() }
    }

    pub fn new(start: u32, mors: Vec<u32>) -> Chain {
        Chain { start, mors }
    }

    pub fn degree(&self) -> usize {
        self.mors.len()
    }

    /// The `i`-th object `c_i`.
    pub fn obj(&self, cat: &FinCat, i: usize) -> u32 {
        if i == 0 {
            self.start
        } else {
            cat.tgt(self.mors[i - 1])
        }
    }

    pub fn last(&self, cat: &FinCat) -> u32 {
        self.obj(cat, self.degree())
    }

    pub fn is_nondegenerate(&self, cat: &FinCat) -> bool {
        self.mors.iter().all(|&m| !cat.is_identity(m))
    }

    /// Face `∂_i`; `None` when the face is degenerate.
    pub fn face(&self, cat: &FinCat, i: usize) -> Option<Chain> {
        let n = self.degree();
        assert!(n > 0 && i <= n);
        if i == 0 {
            return Some(Chain::new(cat.tgt(self.mors[0]), self.mors[1..].to_vec()));
        }
        if i == n {
            return Some(Chain::new(self.start, self.mors[..n - 1].to_vec()));
        }
        let composite = cat.compose(self.mors[i], self.mors[i - 1]);
        if cat.is_identity(composite) {
            return None;
        }
        let mut mors = Vec::with_capacity(n - 1);
        mors.extend_from_slice(&self.mors[..i - 1]);
        mors.push(composite);
        mors.extend_from_slice(&self.mors[i + 1..]);
        Some(Chain::new(self.start, mors))
    }

    /// `c_0 -> ... -> c_k`
    pub fn front(&self, k: usize) -> Chain {
        Chain::new(self.start, self.mors[..k].to_vec())
    }

    /// `c_{n-l} -> ... -> c_n`
    pub fn back(&self, cat: &FinCat, l: usize) -> Chain {
        let n = self.degree();
        Chain::new(self.obj(cat, n - l), self.mors[n - l..].to_vec())
    }

    /// Composite `c_j -> c_k` of the morphisms between, or the identity when `j == k`.
    pub fn composite(&self, cat: &FinCat, j: usize, k: usize) -> u32 {
        let mut m = cat.id(self.obj(cat, j));
        for &a in &self.mors[j..k] {
            m = cat.compose(a, m);
        }
        m
    }

    pub fn push(&self, m: u32) -> Chain {
        let mut mors = self.mors.clone();
        mors.push(m);
        Chain::new(self.start, mors)
    }
}

/// The nondegenerate chains of one degree in lexicographic order.
#[derive(Clone, Debug)]
pub struct ChainBasis {
    degree: usize,
    chains: Vec<Chain>,
    index: BTreeMap<Chain, usize>,
}

impl ChainBasis {
    pub fn enumerate(cat: &FinCat, degree: usize, cap: usize) -> Result<ChainBasis> {
        let mut chains: Vec<Chain> = (0..cat.object_count() as u32).map(Chain::object).collect();
        for _ in 0..degree {
            let mut next = Vec::new();
            for c in &chains {
                for &m in cat.out_of(c.last(cat)) {
                    if cat.is_identity(m) {
                        continue;
                    }
                    next.push(c.push(m));
                    if next.len() > cap {
                        return Err(Error::DegreeCapExceeded { rows: next.len(), cap });
                    }
                }
            }
            chains = next;
        }
        chains.sort();
        let index = chains.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        Ok(ChainBasis { degree, chains, index })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    pub fn position(&self, c: &Chain) -> Option<usize> {
        self.index.get(c).copied()
    }
}

/// Coordinates of `C^n(M) = ⊕_λ M(last λ)`.
#[derive(Clone, Debug)]
pub struct CochainLayout {
    offsets: Vec<usize>,
    total: usize,
}

impl CochainLayout {
    pub fn new(cat: &FinCat, basis: &ChainBasis, m: &CoefficientSystem) -> CochainLayout {
        let mut offsets = Vec::with_capacity(basis.len());
        let mut total = 0;
        for c in basis.chains() {
            offsets.push(total);
            total += m.dim(c.last(cat));
        }
        CochainLayout { offsets, total }
    }

    pub fn offset(&self, i: usize) -> usize {
        self.offsets[i]
    }

    pub fn total(&self) -> usize {
        self.total
    }
}

/// Matrix of `d^n : C^n(M) -> C^{n+1}(M)` on normalized cochains.
pub fn differential(cat: &FinCat, m: &CoefficientSystem, n: usize, cap: usize) -> Result<SparseMatrix> {
    let bn = ChainBasis::enumerate(cat, n, cap)?;
    let bn1 = ChainBasis::enumerate(cat, n + 1, cap)?;
    differential_between(cat, m, &bn, &bn1, cap)
}

pub fn differential_between(
    cat: &FinCat,
    m: &CoefficientSystem,
    bn: &ChainBasis,
    bn1: &ChainBasis,
    cap: usize,
) -> Result<SparseMatrix> {
    let f = m.field();
    let n = bn.degree();
    let src = CochainLayout::new(cat, bn, m);
    let dst = CochainLayout::new(cat, bn1, m);
    if dst.total() > cap {
        return Err(Error::DegreeCapExceeded { rows: dst.total(), cap });
    }
    let mut out = SparseMatrix::new(dst.total(), src.total());
    for (li, lam) in bn1.chains().iter().enumerate() {
        let last = lam.last(cat);
        let d = m.dim(last);
        let mut acc: Vec<BTreeMap<usize, u32>> = (0..d).map(|_| BTreeMap::new()).collect();
        for i in 0..=n + 1 {
            let Some(face) = lam.face(cat, i) else { continue };
            let pos = bn.position(&face).expect("face of a nondegenerate chain");
            let col0 = src.offset(pos);
            let sign = f.sign(i);
            if i == n + 1 {
                let a = lam.mors[n];
                let mat = m.mat(a);
                for r in 0..d {
                    for c in 0..mat.cols() {
                        let v = mat.get(r, c);
                        if v != 0 {
                            add_entry(f, &mut acc[r], col0 + c, f.mul(sign, v));
                        }
                    }
                }
            } else {
                for r in 0..d {
                    add_entry(f, &mut acc[r], col0 + r, sign);
                }
            }
        }
        let row0 = dst.offset(li);
        for (r, entries) in acc.into_iter().enumerate() {
            out.set_row(row0 + r, entries.into_iter().filter(|&(_, v)| v != 0).collect());
        }
    }
    Ok(out)
}

fn add_entry(f: Fp, row: &mut BTreeMap<usize, u32>, col: usize, v: u32) {
    let e = row.entry(col).or_insert(0);
    *e = f.add(*e, v);
}

/// Dimensions of `H^i(C; M)` for `i ≤ maxdeg` computed directly on normalized nerve cochains.
pub fn nerve_cohomology_dims(cat: &FinCat, m: &CoefficientSystem, maxdeg: usize, cap: usize) -> Result<Vec<usize>> {
    let f = m.field();
    let mut bases = Vec::with_capacity(maxdeg + 2);
    for n in 0..=maxdeg + 1 {
        bases.push(ChainBasis::enumerate(cat, n, cap)?);
    }
    let mut ranks = Vec::with_capacity(maxdeg + 1);
    let mut sizes = Vec::with_capacity(maxdeg + 1);
    for n in 0..=maxdeg {
        let d = differential_between(cat, m, &bases[n], &bases[n + 1], cap)?;
        sizes.push(d.cols());
        ranks.push(d.rank(f));
    }
    Ok((0..=maxdeg)
        .map(|n| sizes[n] - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::group_category;
    use crate::group::builtin;

    fn cyclic_cat(n: usize) -> FinCat {
        let g = builtin::cyclic(n).unwrap();
        group_category(g.order(), |a, b| g.mul(a, b)).unwrap()
    }

    #[test]
    fn faces_and_degeneracy() {
        let g = builtin::cyclic(3).unwrap();
        let c = cyclic_cat(3);
        let lam = Chain::new(0, alloc::vec![1, 1]);
        assert_eq!(lam.face(&c, 0), Some(Chain::new(0, alloc::vec![1])));
        assert_eq!(lam.face(&c, 2), Some(Chain::new(0, alloc::vec![1])));
        assert_eq!(lam.face(&c, 1), Some(Chain::new(0, alloc::vec![g.mul(1, 1)])));
        let back_and_forth = Chain::new(0, alloc::vec![1, g.inv(1)]);
        assert_eq!(back_and_forth.face(&c, 1), None);
    }

    #[test]
    fn chain_counts_for_cyclic_group() {
        let c = cyclic_cat(3);
        for n in 0..5 {
            let b = ChainBasis::enumerate(&c, n, DEFAULT_ROW_CAP).unwrap();
            assert_eq!(b.len(), 2usize.pow(n as u32));
        }
    }

    #[test]
    fn differential_squares_to_zero() {
        let g = builtin::symmetric(3).unwrap();
        let c = group_category(g.order(), |a, b| g.mul(a, b)).unwrap();
        let f = Fp::new(3);
        let m = CoefficientSystem::constant(&c, f, 1);
        for n in 0..3 {
            let d0 = differential(&c, &m, n, DEFAULT_ROW_CAP).unwrap().to_dense();
            let d1 = differential(&c, &m, n + 1, DEFAULT_ROW_CAP).unwrap().to_dense();
            assert!(d1.mul(&d0, f).is_zero());
        }
    }

    #[test]
    fn cyclic_three_has_one_dimensional_cohomology() {
        let c = cyclic_cat(3);
        let m = CoefficientSystem::constant(&c, Fp::new(3), 1);
        let dims = nerve_cohomology_dims(&c, &m, 6, DEFAULT_ROW_CAP).unwrap();
        assert_eq!(dims, alloc::vec![1; 7]);
    }

    #[test]
    fn cap_is_enforced() {
        let c = cyclic_cat(5);
        let err = ChainBasis::enumerate(&c, 6, 100).unwrap_err();
        assert!(matches!(err, Error::DegreeCapExceeded { cap: 100, .. }));
    }
}
