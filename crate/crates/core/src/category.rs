//! Finite categories with a materialized composition table.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite category. Morphisms are numbered `0..morphism_count()`, and
/// `hom(a, b)` lists the morphisms `a -> b` in increasing id order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    n_obj: usize,
    src: Vec<u32>,
    tgt: Vec<u32>,
    identity: Vec<u32>,
    out: Vec<Vec<u32>>,
    out_pos: Vec<u32>,
    hom: BTreeMap<(u32, u32), Vec<u32>>,
    hom_pos: Vec<u32>,
    comp: Vec<Vec<u32>>,
}

impl FinCat {
    /// Builds a category from source/target lists, identities, and a
    /// composition rule `compose(g, f) = g ∘ f`. Associativity and the
    /// identity laws are checked.
    pub fn new(
        n_obj: usize,
        src: Vec<u32>,
        tgt: Vec<u32>,
        identity: Vec<u32>,
        mut compose: impl FnMut(u32, u32) -> u32,
    ) -> Result<FinCat> {
        let n_mor = src.len();
        if tgt.len() != n_mor || identity.len() != n_obj {
            return Err(Error::Invalid("inconsistent category data".into()));
        }
        let mut out = vec![Vec::new(); n_obj];
        let mut out_pos = vec![0u32; n_mor];
        let mut hom: BTreeMap<(u32, u32), Vec<u32>> = BTreeMap::new();
        let mut hom_pos = vec![0u32; n_mor];
        for m in 0..n_mor {
            let (s, t) = (src[m], tgt[m]);
            out_pos[m] = out[s as usize].len() as u32;
            out[s as usize].push(m as u32);
            let h = hom.entry((s, t)).or_default();
            hom_pos[m] = h.len() as u32;
            h.push(m as u32);
        }
        for (o, &i) in identity.iter().enumerate() {
            if src[i as usize] as usize != o || tgt[i as usize] as usize != o {
                return Err(Error::Invalid("identity has wrong endpoints".into()));
            }
        }
        let mut comp = Vec::with_capacity(n_mor);
        for f in 0..n_mor as u32 {
            let t = tgt[f as usize];
            let row: Vec<u32> = out[t as usize].iter().map(|&g| compose(g, f)).collect();
            comp.push(row);
        }
        let cat = FinCat { n_obj, src, tgt, identity, out, out_pos, hom, hom_pos, comp };
        cat.check_laws()?;
        Ok(cat)
    }

    fn check_laws(&self) -> Result<()> {
        for f in 0..self.morphism_count() as u32 {
            let (s, t) = (self.src(f), self.tgt(f));
            if self.compose(self.id(t), f) != f || self.compose(f, self.id(s)) != f {
                return Err(Error::NotFunctorial("identity law fails".into()));
            }
            for &g in self.out_of(t) {
                let gf = self.compose(g, f);
                if self.src(gf) != s || self.tgt(gf) != self.tgt(g) {
                    return Err(Error::NotFunctorial("composite has wrong endpoints".into()));
                }
                for &h in self.out_of(self.tgt(g)) {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        return Err(Error::NotFunctorial("composition is not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn object_count(&self) -> usize {
        self.n_obj
    }

    #[inline]
    pub fn morphism_count(&self) -> usize {
        self.src.len()
    }

    #[inline]
    pub fn src(&self, f: u32) -> u32 {
        self.src[f as usize]
    }

    #[inline]
    pub fn tgt(&self, f: u32) -> u32 {
        self.tgt[f as usize]
    }

    #[inline]
    pub fn id(&self, obj: u32) -> u32 {
        self.identity[obj as usize]
    }

    #[inline]
    pub fn is_identity(&self, f: u32) -> bool {
        self.identity[self.src[f as usize] as usize] == f
    }

    /// `g ∘ f`; requires `tgt(f) == src(g)`.
    #[inline]
    pub fn compose(&self, g: u32, f: u32) -> u32 {
        debug_assert_eq!(self.tgt(f), self.src(g));
        self.comp[f as usize][self.out_pos[g as usize] as usize]
    }

    pub fn out_of(&self, obj: u32) -> &[u32] {
        &self.out[obj as usize]
    }

    pub fn hom(&self, a: u32, b: u32) -> &[u32] {
        self.hom.get(&(a, b)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Position of `f` inside `hom(src f, tgt f)`.
    #[inline]
    pub fn hom_pos(&self, f: u32) -> usize {
        self.hom_pos[f as usize] as usize
    }

    /// Connected components of the underlying undirected graph, as a
    /// component label per object.
    pub fn components(&self) -> Vec<u32> {
        let mut uf = UnionFind::new(self.n_obj);
        for f in 0..self.morphism_count() as u32 {
            uf.union(self.src(f) as usize, self.tgt(f) as usize);
        }
        uf.labels()
    }

    pub fn is_connected(&self) -> bool {
        self.n_obj > 0 && self.components().iter().all(|&c| c == 0)
    }
}

/// Union-find over `0..n` with deterministic labels.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Labels `0..k` numbered by first occurrence.
    pub fn labels(&mut self) -> Vec<u32> {
        let n = self.parent.len();
        let mut label = BTreeMap::new();
        (0..n)
            .map(|x| {
                let r = self.find(x);
                let next = label.len() as u32;
                *label.entry(r).or_insert(next)
            })
            .collect()
    }
}

/// The one-object category of a finite group given by a multiplication
/// table, with `compose(g, f) = g * f`.
pub fn group_category(order: usize, mul: impl Fn(u32, u32) -> u32) -> Result<FinCat> {
    FinCat::new(1, vec![0; order], vec![0; order], vec![0], |g, f| mul(g, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_category() {
        let c = group_category(3, |a, b| (a + b) % 3).unwrap();
        assert_eq!(c.morphism_count(), 3);
        assert_eq!(c.compose(1, 2), 0);
        assert!(c.is_identity(0));
        assert!(c.is_connected());
    }

    #[test]
    fn poset_category() {
        // 0 -> 1 -> 2 with the composite 0 -> 2.
        let src = vec![0, 1, 2, 0, 1, 0];
        let tgt = vec![0, 1, 2, 1, 2, 2];
        let cat = FinCat::new(3, src, tgt, vec![0, 1, 2], |g, f| match (g, f) {
            (g, f) if g <= 2 => f,
            (g, f) if f <= 2 => g,
            (4, 3) => 5,
            _ => unreachable!(),
        })
        .unwrap();
        assert_eq!(cat.compose(4, 3), 5);
        assert_eq!(cat.hom(0, 2), &[5]);
        assert!(cat.is_connected());
    }

    #[test]
    fn non_associative_rule_is_rejected() {
        let r = FinCat::new(1, vec![0; 3], vec![0; 3], vec![0], |g, f| match (g, f) {
            (0, f) => f,
            (g, 0) => g,
            (1, 1) => 2,
            (1, 2) => 1,
            _ => 2,
        });
        assert!(r.is_err());
    }
}
