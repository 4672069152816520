//! Normalized nerve cochains as lazily evaluated functions on chains.
//!
//! A cochain of degree `n` assigns to every nondegenerate chain
//! `c_0 -> ... -> c_n` a vector in `M(c_n)`. Every operation here maps
//! nondegenerate chains to nondegenerate chains, so evaluation only ever sees
//! nondegenerate input.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::category::FinCat;
use crate::coefficients::CoefficientSystem;
use crate::error::{Error, Result};
use crate::gamma::{GammaData, Section};
use crate::group::{self, Subgroup};
use crate::linalg::Fp;
use crate::linking::LinkingSystem;

use super::chains::Chain;
use super::resolution::Resolution;

pub trait Cochain {
    fn degree(&self) -> usize;
    fn eval(&self, chain: &Chain) -> Vec<u32>;
}

impl<T: Cochain + ?Sized> Cochain for &T {
    fn degree(&self) -> usize {
        (**self).degree()
    }

    fn eval(&self, chain: &Chain) -> Vec<u32> {
        (**self).eval(chain)
    }
}

impl<T: Cochain + ?Sized> Cochain for Box<T> {
    fn degree(&self) -> usize {
        (**self).degree()
    }

    fn eval(&self, chain: &Chain) -> Vec<u32> {
        (**self).eval(chain)
    }
}

/// `f^*` from nerve cochains to cochains on the resolution.
pub fn to_resolution(res: &Resolution, m: &CoefficientSystem, psi: &dyn Cochain) -> Vec<u32> {
    let f = res.field();
    let n = psi.degree();
    let bar = res.to_bar(n);
    let (offs, total) = res.cochain_offsets(n, m);
    let mut out = vec![0u32; total];
    for (j, elem) in bar.iter().enumerate() {
        let slot = &mut out[offs[j]..offs[j] + m.dim(res.generators(n)[j].object)];
        for (lam, c) in elem {
            f.axpy(slot, *c, &psi.eval(lam));
        }
    }
    out
}

/// The nerve cochain `g^* ξ` of a resolution cochain.
pub struct PulledBack<'a> {
    res: &'a Resolution,
    m: &'a CoefficientSystem,
    degree: usize,
    offsets: Vec<usize>,
    xi: Vec<u32>,
}

impl<'a> PulledBack<'a> {
    pub fn new(res: &'a Resolution, m: &'a CoefficientSystem, degree: usize, xi: Vec<u32>) -> Self {
        let (offsets, total) = res.cochain_offsets(degree, m);
        assert_eq!(xi.len(), total);
        PulledBack { res, m, degree, offsets, xi }
    }

    pub fn values(&self) -> &[u32] {
        &self.xi
    }
}

impl Cochain for PulledBack<'_> {
    fn degree(&self) -> usize {
        self.degree
    }

    fn eval(&self, chain: &Chain) -> Vec<u32> {
        let res = self.res;
        let f = res.field();
        let cat = res.cat();
        let x = chain.last(cat);
        let v = res.from_bar(chain);
        let mut out = vec![0u32; self.m.dim(x)];
        for (j, g) in res.generators(self.degree).iter().enumerate() {
            let val = &self.xi[self.offsets[j]..self.offsets[j] + self.m.dim(g.object)];
            if val.iter().all(|&c| c == 0) {
                continue;
            }
            for &beta in cat.hom(g.object, x) {
                let c = v[res.index(self.degree, j, beta)];
                if c != 0 {
                    f.axpy(&mut out, c, &self.m.apply(beta, val));
                }
            }
        }
        out
    }
}

/// Caches the values of another cochain.
pub struct Memo<C> {
    inner: C,
    cache: RefCell<BTreeMap<Chain, Vec<u32>>>,
}

impl<C: Cochain> Memo<C> {
    pub fn new(inner: C) -> Self {
        Memo { inner, cache: RefCell::new(BTreeMap::new()) }
    }
}

impl<C: Cochain> Cochain for Memo<C> {
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn eval(&self, chain: &Chain) -> Vec<u32> {
        if let Some(v) = self.cache.borrow().get(chain) {
            return v.clone();
        }
        let v = self.inner.eval(chain);
        self.cache.borrow_mut().insert(chain.clone(), v.clone());
        v
    }
}

/// Pseudo-random values determined by a seed and the chain.
pub struct RandomCochain<'a> {
    cat: &'a FinCat,
    dims: Vec<usize>,
    field: Fp,
    degree: usize,
    seed: u64,
}

impl<'a> RandomCochain<'a> {
    pub fn new(cat: &'a FinCat, m: &CoefficientSystem, degree: usize, seed: u64) -> Self {
        RandomCochain { cat, dims: m.dims().to_vec(), field: m.field(), degree, seed }
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

impl Cochain for RandomCochain<'_> {
    fn degree(&self) -> usize {
        self.degree
    }

    fn eval(&self, chain: &Chain) -> Vec<u32> {
        let mut h = splitmix(self.seed ^ (chain.start as u64).wrapping_mul(0x1000_0000_01b3));
        for &m in &chain.mors {
            h = splitmix(h ^ m as u64);
        }
        let d = self.dims[chain.last(self.cat) as usize];
        (0..d)
            .map(|i| {
                h = splitmix(h.wrapping_add(i as u64));
                (h % self.field.p() as u64) as u32
            })
            .collect()
    }
}

/// `Σ c_i φ_i`.
pub struct Combination<'a> {
    field: Fp,
    degree: usize,
    terms: Vec<(u32, &'a dyn Cochain)>,
}

impl<'a> Combination<'a> {
    pub fn new(field: Fp, terms: Vec<(u32, &'a dyn Cochain)>) -> Self {
        let degree = terms.first().map(|t| t.1.degree()).expect("at least one term");
        assert!(terms.iter().all(|t| t.1.degree() == degree));
        Combination { field, degree, terms }
    }

    pub fn difference(field: Fp, a: &'a dyn Cochain, b: &'a dyn Cochain) -> Self {
        Self::new(field, vec![(1, a), (field.neg(1), b)])
    }
}

impl Cochain for Combination<'_> {
    fn degree(&self) -> usize {
        self.degree
    }

    fn eval(&self, chain: &Chain) -> Vec<u32> {
        let mut out = self.terms[0].1.eval(chain);
        let f = self.field;
        for x in out.iter_mut() {
            *x = f.mul(*x, self.terms[0].0);
        }
        for (c, t) in &self.terms[1..] {
            f.axpy(&mut out, *c, &t.eval(chain));
        }
        out
    }
}

/// `dφ` on the normalized nerve.
pub struct Coboundary<'a> {
    inner: &'a dyn Cochain,
    cat: &'a FinCat,
    m: &'a CoefficientSystem,
}

impl<'a> Coboundary<'a> {
    pub fn new(inner: &'a dyn Cochain, cat: &'a FinCat, m: &'a CoefficientSystem) -> Self {
        Coboundary { inner, cat, m }
    }
}

impl Cochain for Coboundary<'_> {
    fn degree(&self) -> usize {
        self.inner.degree() + 1
    }

    fn eval(&self, chain: &Chain) -> Vec<u32> {
        let f = self.m.field();
        let n1 = chain.degree();
        let mut out = vec![0u32; self.m.dim(chain.last(self.cat))];
        for i in 0..n1 {
            if let Some(face) = chain.face(self.cat, i) {
                f.axpy(&mut out, f.sign(i), &self.inner.eval(&face));
            }
        }
        let last = chain.face(self.cat, n1).expect("last face");
        let moved = self.m.apply(chain.mors[n1 - 1], &self.inner.eval(&last));
        f.axpy(&mut out, f.sign(n1), &moved);
        out
    }
}

/// Cup product for a constant coefficient algebra, multiplying componentwise.
pub struct Cup<'a> {
    cat: &'a FinCat,
    field: Fp,
    left: &'a dyn Cochain,
    right: &'a dyn Cochain,
}

impl<'a> Cup<'a> {
    pub fn new(
        cat: &'a FinCat,
        algebra: &CoefficientSystem,
        left: &'a dyn Cochain,
        right: &'a dyn Cochain,
    ) -> Result<Self> {
        if !algebra.is_constant() {
            return Err(Error::NotAnAlgebra);
        }
        Ok(Cup { cat, field: algebra.field(), left, right })
    }
}

impl Cochain for Cup<'_> {
    fn degree(&self) -> usize {
        self.left.degree() + self.right.degree()
    }

    fn eval(&self, chain: &Chain) -> Vec<u32> {
        let k = self.left.degree();
        let a = self.left.eval(&chain.front(k));
        let b = self.right.eval(&chain.back(self.cat, self.right.degree()));
        a.iter().zip(&b).map(|(&x, &y)| self.field.mul(x, y)).collect()
    }
}

/// Translation of chains of a subsystem of `L` into chains of a larger subsystem.
fn lift_chain(small: &LinkingSystem, big: &LinkingSystem, chain: &Chain) -> Chain {
    let mors = chain
        .mors
        .iter()
        .map(|&m| big.from_parent(small.parent_id(m)).expect("subsystem morphism"))
        .collect();
    Chain::new(chain.start, mors)
}

/// `Res`: a cochain on `big` evaluated on chains of `small ⊆ big`.
pub struct Restricted<'a> {
    inner: &'a dyn Cochain,
    small: &'a LinkingSystem,
    big: &'a LinkingSystem,
}

impl<'a> Restricted<'a> {
    pub fn new(inner: &'a dyn Cochain, small: &'a LinkingSystem, big: &'a LinkingSystem) -> Self {
        Restricted { inner, small, big }
    }
}

impl Cochain for Restricted<'_> {
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn eval(&self, chain: &Chain) -> Vec<u32> {
        self.inner.eval(&lift_chain(self.small, self.big, chain))
    }
}

/// Conjugation `c_α`: a cochain on `L_K` becomes a cochain on `L_H`, where
/// `Θ̂(α)⁻¹ H Θ̂(α) ≤ K`.
pub struct Conjugated<'a> {
    inner: &'a dyn Cochain,
    l: &'a LinkingSystem,
    small: &'a LinkingSystem,
    big: &'a LinkingSystem,
    m: &'a CoefficientSystem,
    rep: u32,
    rep_inv: u32,
}

impl<'a> Conjugated<'a> {
    /// `alpha` is a morphism `S -> S` of the full system `l`; `small = L_H`, `big = L_K`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        inner: &'a dyn Cochain,
        l: &'a LinkingSystem,
        gd: &GammaData,
        alpha: u32,
        (small, h): (&'a LinkingSystem, &Subgroup),
        (big, k): (&'a LinkingSystem, &Subgroup),
        m: &'a CoefficientSystem,
    ) -> Result<Self> {
        if l.src(alpha) != l.s_object() || l.tgt(alpha) != l.s_object() {
            return Err(Error::Invalid("conjugating morphism must be an automorphism of S".into()));
        }
        let gm = gd.gamma();
        let x = gd.theta_hat(alpha);
        if !group::conjugate(gm, gm.inv(x), h).is_subgroup_of(k) {
            return Err(Error::ConjugacyConditionViolated);
        }
        let rep = l.rep(alpha);
        Ok(Conjugated { inner, l, small, big, m, rep, rep_inv: l.group().inv(rep) })
    }

    fn twist(&self, chain: &Chain) -> Chain {
        let g = self.l.group();
        let cat = self.small.cat();
        let objs: Vec<u32> =
            (0..=chain.degree()).map(|i| self.l.conjugate_object(chain.obj(cat, i), self.rep_inv)).collect();
        let mors = chain
            .mors
            .iter()
            .enumerate()
            .map(|(i, &f)| {
                let x = g.mul(self.rep_inv, g.mul(self.small.rep(f), self.rep));
                self.big.morphism(objs[i], objs[i + 1], x).expect("conjugate morphism lies in the target subsystem")
            })
            .collect();
        Chain::new(objs[0], mors)
    }
}

impl Cochain for Conjugated<'_> {
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn eval(&self, chain: &Chain) -> Vec<u32> {
        let twisted = self.twist(chain);
        let last = chain.last(self.small.cat());
        let src = twisted.last(self.big.cat());
        let restricted = self.l.morphism(src, last, self.rep).expect("restriction of α");
        self.m.apply(restricted, &self.inner.eval(&twisted))
    }
}

/// Transfer along a section `σ : K/H -> Aut_L(S)`: a cochain on `L_H` becomes a cochain on `L_K`.
pub struct Transferred<'a> {
    inner: &'a dyn Cochain,
    l: &'a LinkingSystem,
    gd: &'a GammaData,
    section: &'a Section,
    small: &'a LinkingSystem,
    big: &'a LinkingSystem,
    m: &'a CoefficientSystem,
    reps: Vec<u32>,
    reps_inv: Vec<u32>,
}

impl<'a> Transferred<'a> {
    /// `small = L_H` and `big = L_K` for the subgroups `H ≤ K` of the section.
    pub fn new(
        inner: &'a dyn Cochain,
        l: &'a LinkingSystem,
        gd: &'a GammaData,
        section: &'a Section,
        small: &'a LinkingSystem,
        big: &'a LinkingSystem,
        m: &'a CoefficientSystem,
    ) -> Self {
        let g = l.group();
        let reps: Vec<u32> = section.morphisms().iter().map(|&s| l.rep(s)).collect();
        let reps_inv = reps.iter().map(|&r| g.inv(r)).collect();
        Transferred { inner, l, gd, section, small, big, m, reps, reps_inv }
    }

    /// The chain `λ^{(c)}` of `L_H` for the last coset `c`.
    fn twist(&self, chain: &Chain, c: u32) -> Chain {
        let l = self.l;
        let g = l.group();
        let gm = self.gd.gamma();
        let cat = self.big.cat();
        let n = chain.degree();
        let mut cosets = vec![0u32; n + 1];
        cosets[n] = c;
        for i in (1..=n).rev() {
            let t = self.gd.theta_hat_in(self.big, chain.mors[i - 1]);
            cosets[i - 1] = self.section.act(gm, gm.inv(t), cosets[i]);
        }
        let objs: Vec<u32> = (0..=n)
            .map(|i| l.conjugate_object(chain.obj(cat, i), self.reps_inv[cosets[i] as usize]))
            .collect();
        let mors = (0..n)
            .map(|i| {
                let f = chain.mors[i];
                let x = g.mul(self.reps_inv[cosets[i + 1] as usize], g.mul(self.big.rep(f), self.reps[cosets[i] as usize]));
                self.small.morphism(objs[i], objs[i + 1], x).expect("twisted morphism lies in the subsystem")
            })
            .collect();
        Chain::new(objs[0], mors)
    }
}

impl Cochain for Transferred<'_> {
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn eval(&self, chain: &Chain) -> Vec<u32> {
        let f = self.m.field();
        let last = chain.last(self.big.cat());
        let mut out = vec![0u32; self.m.dim(last)];
        for c in 0..self.section.coset_count() as u32 {
            let twisted = self.twist(chain, c);
            let src = twisted.last(self.small.cat());
            let restricted = self.l.morphism(src, last, self.reps[c as usize]).expect("restriction of σ");
            f.axpy(&mut out, 1, &self.m.apply(restricted, &self.inner.eval(&twisted)));
        }
        out
    }
}
