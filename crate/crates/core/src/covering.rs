//! The covering category of `L` attached to `H ≤ Γ`, its lift of `L_H`, and
//! the transfer obtained by summing over the sheets.
//!
//! Objects are pairs `(P, c)` with `c ∈ Γ/H`; a morphism `(φ, c)` goes from
//! `(P, c)` to `(Q, Θ̂(φ)c)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::category::{FinCat, UnionFind};
use crate::coefficients::{CoefficientSystem, NaturalTransformation};
use crate::cohomology::cochains::{Cochain, Memo, Restricted};
use crate::cohomology::maps::CohomologyTable;
use crate::cohomology::{induced_matrix, Chain, Cohomology};
use crate::error::{Error, Result};
use crate::gamma::{GammaData, Section};
use crate::group::Subgroup;
use crate::linalg::Matrix;
use crate::linking::LinkingSystem;

#[derive(Clone, Debug)]
pub struct CoveringCategory {
    h: Subgroup,
    cosets: usize,
    cat: FinCat,
    /// `Θ̂(φ)` acting on coset indices, one row per morphism of `L`.
    action: Vec<Vec<u32>>,
}

impl CoveringCategory {
    pub fn build(l: &LinkingSystem, gd: &GammaData, h: &Subgroup) -> Result<CoveringCategory> {
        let section = Section::canonical(l, gd, h)?;
        let gm = gd.gamma();
        let k = section.coset_count();
        let lc = l.cat();
        let action: Vec<Vec<u32>> = (0..lc.morphism_count() as u32)
            .map(|m| (0..k as u32).map(|c| section.act(gm, gd.theta_hat(m), c)).collect())
            .collect();
        let nmor = lc.morphism_count() * k;
        let mut src = Vec::with_capacity(nmor);
        let mut tgt = Vec::with_capacity(nmor);
        for m in 0..lc.morphism_count() {
            for c in 0..k {
                src.push(lc.src(m as u32) * k as u32 + c as u32);
                tgt.push(lc.tgt(m as u32) * k as u32 + action[m][c]);
            }
        }
        let identity = (0..lc.object_count() * k).map(|o| lc.id((o / k) as u32) * k as u32 + (o % k) as u32).collect();
        let cat = FinCat::new(lc.object_count() * k, src, tgt, identity, |g, f| {
            let (gi, fi) = (g as usize / k, f as usize / k);
            lc.compose(gi as u32, fi as u32) * k as u32 + (f as usize % k) as u32
        })?;
        Ok(CoveringCategory { h: h.clone(), cosets: k, cat, action })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.h
    }

    pub fn cat(&self) -> &FinCat {
        &self.cat
    }

    pub fn sheets(&self) -> usize {
        self.cosets
    }

    pub fn object(&self, p: u32, c: u32) -> u32 {
        p * self.cosets as u32 + c
    }

    pub fn morphism(&self, phi: u32, c: u32) -> u32 {
        phi * self.cosets as u32 + c
    }

    /// `π` on morphisms.
    pub fn project(&self, m: u32) -> u32 {
        m / self.cosets as u32
    }

    pub fn project_object(&self, o: u32) -> u32 {
        o / self.cosets as u32
    }

    pub fn coset_of_object(&self, o: u32) -> u32 {
        o % self.cosets as u32
    }

    /// `Θ̂(φ) c`.
    pub fn act(&self, phi: u32, c: u32) -> u32 {
        self.action[phi as usize][c as usize]
    }

    /// `π^* M`.
    pub fn pullback(&self, m: &CoefficientSystem) -> Result<CoefficientSystem> {
        let dims = (0..self.cat.object_count() as u32).map(|o| m.dim(self.project_object(o))).collect();
        let mats = (0..self.cat.morphism_count() as u32).map(|f| m.mat(self.project(f)).clone()).collect();
        CoefficientSystem::new(&self.cat, m.field(), dims, mats)
    }

    /// `ι̂` on morphisms of `L_H`.
    pub fn lift_morphism(&self, lh: &LinkingSystem, m: u32) -> u32 {
        self.morphism(lh.parent_id(m), 0)
    }

    /// The lift of a chain of `L` ending on sheet `c`.
    pub fn lift_chain(&self, chain: &Chain, c: u32) -> Chain {
        let n = chain.degree();
        let mut sheets = vec![0u32; n + 1];
        sheets[n] = c;
        for i in (1..=n).rev() {
            let phi = chain.mors[i - 1];
            sheets[i - 1] = (0..self.cosets as u32).find(|&d| self.act(phi, d) == sheets[i]).expect("Θ̂ permutes cosets");
        }
        let mors = (0..n).map(|i| self.morphism(chain.mors[i], sheets[i])).collect();
        Chain::new(self.object(chain.start, sheets[0]), mors)
    }

    /// Checks `π ∘ ι̂ = ι` and that `ι̂` is faithful and lands on the first sheet.
    pub fn check_lift(&self, lh: &LinkingSystem) -> Result<()> {
        let c = lh.cat();
        let mut seen = vec![false; self.cat.morphism_count()];
        for m in 0..c.morphism_count() as u32 {
            let lifted = self.lift_morphism(lh, m);
            if self.project(lifted) != lh.parent_id(m)
                || self.cat.src(lifted) != self.object(c.src(m), 0)
                || self.cat.tgt(lifted) != self.object(c.tgt(m), 0)
                || seen[lifted as usize]
            {
                return Err(Error::NotFunctorial("lift of the subsystem".into()));
            }
            seen[lifted as usize] = true;
        }
        for f in 0..c.morphism_count() as u32 {
            for &g in c.out_of(c.tgt(f)) {
                let lhs = self.lift_morphism(lh, c.compose(g, f));
                let rhs = self.cat.compose(self.lift_morphism(lh, g), self.lift_morphism(lh, f));
                if lhs != rhs {
                    return Err(Error::NotFunctorial("lift of the subsystem".into()));
                }
            }
        }
        Ok(())
    }

    /// Component counts of the undercategories `P ↓ π`, after checking that every
    /// component has an initial object.
    pub fn undercategory_components(&self, l: &LinkingSystem) -> Result<Vec<usize>> {
        let lc = l.cat();
        let mut counts = Vec::with_capacity(lc.object_count());
        for p in 0..lc.object_count() as u32 {
            // objects (y, u) with u : p -> π(y)
            let mut objects: Vec<(u32, u32)> = Vec::new();
            for y in 0..self.cat.object_count() as u32 {
                for &u in lc.hom(p, self.project_object(y)) {
                    objects.push((y, u));
                }
            }
            let index = |y: u32, u: u32| objects.binary_search(&(y, u)).expect("undercategory object");
            let mut uf = UnionFind::new(objects.len());
            let mut arrows: Vec<Vec<usize>> = vec![Vec::new(); objects.len()];
            for (i, &(y, u)) in objects.iter().enumerate() {
                for &w in self.cat.out_of(y) {
                    let j = index(self.cat.tgt(w), lc.compose(self.project(w), u));
                    uf.union(i, j);
                    arrows[i].push(j);
                }
            }
            let labels = uf.labels();
            let k = labels.iter().copied().max().map_or(0, |m| m as usize + 1);
            for comp in 0..k as u32 {
                let members: Vec<usize> = (0..objects.len()).filter(|&i| labels[i] == comp).collect();
                let initial = members.iter().any(|&i| {
                    let mut hits = vec![0usize; objects.len()];
                    for &j in &arrows[i] {
                        hits[j] += 1;
                    }
                    members.iter().all(|&j| hits[j] == 1)
                });
                if !initial {
                    return Err(Error::Invalid(alloc::format!("undercategory of object {} lacks an initial object", p)));
                }
            }
            counts.push(k);
        }
        Ok(counts)
    }

    /// `R_π(π^* M)`: the sheets stacked in coset order.
    pub fn pushforward(&self, l: &LinkingSystem, m: &CoefficientSystem) -> Result<CoefficientSystem> {
        let lc = l.cat();
        let k = self.cosets;
        let dims: Vec<usize> = (0..lc.object_count() as u32).map(|p| k * m.dim(p)).collect();
        let mats = (0..lc.morphism_count() as u32)
            .map(|phi| {
                let (a, b) = (m.dim(lc.src(phi)), m.dim(lc.tgt(phi)));
                let mut big = Matrix::zero(k * b, k * a);
                for c in 0..k as u32 {
                    big.put_block(self.act(phi, c) as usize * b, c as usize * a, m.mat(phi));
                }
                big
            })
            .collect();
        CoefficientSystem::new(lc, m.field(), dims, mats)
    }

    /// The sum over sheets `T : R_π(π^* M) -> M`, checked to be natural.
    pub fn geometric_transfer(&self, l: &LinkingSystem, m: &CoefficientSystem) -> Result<NaturalTransformation> {
        if !m.is_locally_constant() {
            return Err(Error::NotLocallyConstant);
        }
        let r = self.pushforward(l, m)?;
        let components = (0..l.object_count() as u32)
            .map(|p| Matrix::hstack(m.dim(p), &vec![Matrix::identity(m.dim(p)); self.cosets]))
            .collect();
        let t = NaturalTransformation { components };
        t.check(l.cat(), &r, m)?;
        Ok(t)
    }

    /// The diagonal `M -> R_π(π^* M)`.
    pub fn diagonal(&self, l: &LinkingSystem, m: &CoefficientSystem) -> Result<NaturalTransformation> {
        let r = self.pushforward(l, m)?;
        let components = (0..l.object_count() as u32)
            .map(|p| Matrix::vstack(m.dim(p), &vec![Matrix::identity(m.dim(p)); self.cosets]))
            .collect();
        let d = NaturalTransformation { components };
        d.check(l.cat(), m, &r)?;
        Ok(d)
    }
}

/// `ψ ↦ (λ ↦ Σ_c ψ(λ̂_c))`, from cochains on the covering to cochains on `L`.
pub struct SheetSum<'a> {
    inner: &'a dyn Cochain,
    covering: &'a CoveringCategory,
    field: crate::linalg::Fp,
}

impl<'a> SheetSum<'a> {
    pub fn new(inner: &'a dyn Cochain, covering: &'a CoveringCategory, m: &CoefficientSystem) -> Self {
        SheetSum { inner, covering, field: m.field() }
    }
}

impl Cochain for SheetSum<'_> {
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn eval(&self, chain: &Chain) -> Vec<u32> {
        let mut out: Option<Vec<u32>> = None;
        for c in 0..self.covering.sheets() as u32 {
            let v = self.inner.eval(&self.covering.lift_chain(chain, c));
            match out.as_mut() {
                None => out = Some(v),
                Some(acc) => self.field.axpy(acc, 1, &v),
            }
        }
        out.expect("at least one sheet")
    }
}

/// `ι̂^*`: cochains on the covering restricted along the lift of `L_H`.
pub struct LiftRestricted<'a> {
    inner: &'a dyn Cochain,
    covering: &'a CoveringCategory,
    lh: &'a LinkingSystem,
}

impl<'a> LiftRestricted<'a> {
    pub fn new(inner: &'a dyn Cochain, covering: &'a CoveringCategory, lh: &'a LinkingSystem) -> Self {
        LiftRestricted { inner, covering, lh }
    }
}

impl Cochain for LiftRestricted<'_> {
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn eval(&self, chain: &Chain) -> Vec<u32> {
        let mors = chain.mors.iter().map(|&m| self.covering.lift_morphism(self.lh, m)).collect();
        self.inner.eval(&Chain::new(self.covering.object(chain.start, 0), mors))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferComparison {
    pub degree: usize,
    pub algebraic: Matrix,
    pub geometric: Matrix,
}

impl TransferComparison {
    pub fn equal(&self) -> bool {
        self.algebraic == self.geometric
    }
}

/// Transfer matrices `H^n(L_H) -> H^n(L)` by the section formula and through the covering.
pub fn compare_transfers(table: &CohomologyTable<'_>, h: &Subgroup, maxdeg: usize) -> Result<Vec<TransferComparison>> {
    let l = table.linking();
    let gd = table.gamma_data();
    let m = table.system();
    if !m.is_locally_constant() {
        return Err(Error::NotLocallyConstant);
    }
    let f = m.field();
    let covering = CoveringCategory::build(l, gd, h)?;
    let pm = covering.pullback(m)?;
    let hc = Cohomology::compute(covering.cat(), &pm, maxdeg)?;
    let small = table.level(h)?;
    let big = table.level(&table.whole())?;
    covering.check_lift(&small.linking)?;
    let section = Section::canonical(l, gd, h)?;
    let mut out = Vec::with_capacity(maxdeg + 1);
    for n in 0..=maxdeg {
        let lift = induced_matrix(small.cohomology.dim(n), hc.dim(n), |j| {
            let psi = hc.class_cochain(n, j);
            small.cohomology.read_class(&LiftRestricted::new(&psi, &covering, &small.linking))
        })?;
        let sum = induced_matrix(big.cohomology.dim(n), hc.dim(n), |j| {
            let psi = hc.class_cochain(n, j);
            let s = Memo::new(SheetSum::new(&psi, &covering, m));
            big.cohomology.read_class(&Restricted::new(&s, &big.linking, l))
        })?;
        let inverse = lift.inverse(f).ok_or_else(|| Error::Invalid("lift does not induce an isomorphism".into()))?;
        let geometric = sum.mul(&inverse, f);
        let algebraic = table.transfer(n, &section)?;
        out.push(TransferComparison { degree: n, algebraic, geometric });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::permutation_system;
    use crate::fusion::FusionSystem;
    use crate::gamma::DEFAULT_COSET_CAP;
    use crate::group::builtin;
    use crate::linalg::Fp;
    use alloc::sync::Arc;

    fn setup(g: crate::group::FiniteGroup, p: u32) -> (LinkingSystem, GammaData) {
        let f = FusionSystem::from_group(Arc::new(g), p).unwrap();
        let l = LinkingSystem::build(Arc::new(f)).unwrap();
        let gd = GammaData::compute(&l, DEFAULT_COSET_CAP).unwrap();
        (l, gd)
    }

    #[test]
    fn sym3_covering_counts() {
        let (l, gd) = setup(builtin::symmetric(3).unwrap(), 3);
        let cov = CoveringCategory::build(&l, &gd, &Subgroup::trivial()).unwrap();
        assert_eq!(cov.cat().object_count(), 2);
        assert_eq!(cov.cat().morphism_count(), 2 * l.morphism_count());
        assert!(cov.cat().is_connected());
        assert_eq!(cov.undercategory_components(&l).unwrap(), vec![2]);
        let whole = CoveringCategory::build(&l, &gd, &gd.gamma().whole()).unwrap();
        assert_eq!(whole.cat().object_count(), l.object_count());
        assert_eq!(whole.undercategory_components(&l).unwrap(), vec![1]);
    }

    #[test]
    fn sheet_sum_after_diagonal_is_the_index() {
        let (l, gd) = setup(builtin::alternating(4).unwrap(), 2);
        let f = Fp::new(2);
        let cov = CoveringCategory::build(&l, &gd, &Subgroup::trivial()).unwrap();
        let m = CoefficientSystem::constant(l.cat(), f, 2);
        let t = cov.geometric_transfer(&l, &m).unwrap();
        let d = cov.diagonal(&l, &m).unwrap();
        for c in t.compose(&d, f).components {
            assert_eq!(c, Matrix::scalar(2, 3 % 2));
        }
        let perm = permutation_system(&l, &gd, &Subgroup::trivial(), f).unwrap();
        assert!(cov.geometric_transfer(&l, &perm).is_ok());
    }

    #[test]
    fn lifted_cohomology_matches_the_subsystem() {
        let (l, gd) = setup(builtin::symmetric(3).unwrap(), 3);
        let f = Fp::new(3);
        let m = CoefficientSystem::constant(l.cat(), f, 1);
        let cov = CoveringCategory::build(&l, &gd, &Subgroup::trivial()).unwrap();
        let hc = Cohomology::compute(cov.cat(), &cov.pullback(&m).unwrap(), 4).unwrap();
        assert_eq!(hc.dims(), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn sym3_transfers_agree() {
        let (l, gd) = setup(builtin::symmetric(3).unwrap(), 3);
        let m = CoefficientSystem::constant(l.cat(), Fp::new(3), 1);
        let table = CohomologyTable::new(&l, &gd, &m, 4);
        for cmp in compare_transfers(&table, &Subgroup::trivial(), 4).unwrap() {
            assert!(cmp.equal(), "degree {}", cmp.degree);
        }
    }

    #[test]
    fn non_locally_constant_systems_are_rejected() {
        let (l, gd) = setup(builtin::symmetric(4).unwrap(), 2);
        let f = Fp::new(2);
        let cov = CoveringCategory::build(&l, &gd, &gd.gamma().whole()).unwrap();
        let s = l.s_object();
        let dims: Vec<usize> = (0..l.object_count() as u32).map(|a| (a == s) as usize).collect();
        let mats = (0..l.morphism_count() as u32)
            .map(|m| {
                let (a, b) = (dims[l.src(m) as usize], dims[l.tgt(m) as usize]);
                if a == 1 && b == 1 { Matrix::identity(1) } else { Matrix::zero(b, a) }
            })
            .collect();
        let top_only = CoefficientSystem::new(l.cat(), f, dims, mats).unwrap();
        assert!(!top_only.is_locally_constant());
        assert!(matches!(cov.geometric_transfer(&l, &top_only), Err(Error::NotLocallyConstant)));
    }
}
