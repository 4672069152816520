//! Coefficient systems: covariant functors from a finite category to
//! finite-dimensional `F_p`-vector spaces.

use alloc::vec;
use alloc::vec::Vec;

use crate::category::FinCat;
use crate::error::{Error, Result};
use crate::gamma::{GammaData, Section};
use crate::group::Subgroup;
use crate::linalg::{Fp, Matrix};
use crate::linking::LinkingSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientSystem {
    field: Fp,
    dims: Vec<usize>,
    mats: Vec<Matrix>,
    locally_constant: bool,
}

impl CoefficientSystem {
    /// Checks that every matrix has the right shape and that identities and
    /// composites are preserved.
    pub fn new(cat: &FinCat, field: Fp, dims: Vec<usize>, mats: Vec<Matrix>) -> Result<CoefficientSystem> {
        if dims.len() != cat.object_count() || mats.len() != cat.morphism_count() {
            return Err(Error::Invalid("coefficient data does not match the category".into()));
        }
        for (m, a) in mats.iter().enumerate() {
            let m = m as u32;
            if a.rows() != dims[cat.tgt(m) as usize] || a.cols() != dims[cat.src(m) as usize] {
                return Err(Error::Invalid(alloc::format!("matrix of morphism {} has the wrong shape", m)));
            }
            if a.data().iter().any(|&x| x >= field.p()) {
                return Err(Error::Invalid(alloc::format!("matrix of morphism {} has entries outside F_p", m)));
            }
        }
        for o in 0..cat.object_count() as u32 {
            if mats[cat.id(o) as usize] != Matrix::identity(dims[o as usize]) {
                return Err(Error::NotFunctorial(alloc::format!("identity of object {}", o)));
            }
        }
        for f in 0..cat.morphism_count() as u32 {
            for &g in cat.out_of(cat.tgt(f)) {
                let gf = cat.compose(g, f);
                if mats[gf as usize] != mats[g as usize].mul(&mats[f as usize], field) {
                    return Err(Error::NotFunctorial(alloc::format!("composite of {} and {}", g, f)));
                }
            }
        }
        let locally_constant = mats.iter().all(|a| a.is_square() && a.rank(field) == a.rows());
        Ok(CoefficientSystem { field, dims, mats, locally_constant })
    }

    pub fn constant(cat: &FinCat, field: Fp, d: usize) -> CoefficientSystem {
        CoefficientSystem {
            field,
            dims: vec![d; cat.object_count()],
            mats: vec![Matrix::identity(d); cat.morphism_count()],
            locally_constant: true,
        }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn dim(&self, obj: u32) -> usize {
        self.dims[obj as usize]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    #[inline]
    pub fn mat(&self, m: u32) -> &Matrix {
        &self.mats[m as usize]
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn is_locally_constant(&self) -> bool {
        self.locally_constant
    }

    /// Whether every object carries the same dimension and every morphism acts
    /// as the identity.
    pub fn is_constant(&self) -> bool {
        self.dims.windows(2).all(|w| w[0] == w[1]) && self.mats.iter().all(|a| *a == Matrix::identity(a.rows()))
    }

    pub fn apply(&self, m: u32, v: &[u32]) -> Vec<u32> {
        self.mats[m as usize].mul_vec(v, self.field)
    }

    /// Direct sum, block-diagonal on every morphism.
    pub fn direct_sum(&self, other: &CoefficientSystem) -> CoefficientSystem {
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| Matrix::block_diag(&[a.clone(), b.clone()])).collect();
        CoefficientSystem {
            field: self.field,
            dims,
            mats,
            locally_constant: self.locally_constant && other.locally_constant,
        }
    }

    /// The system transported along per-object changes of basis `t_P`:
    /// `f ↦ t_Q M(f) t_P⁻¹`.
    pub fn conjugated(&self, cat: &FinCat, bases: &[Matrix]) -> Result<CoefficientSystem> {
        let f = self.field;
        let mut inverses = Vec::with_capacity(bases.len());
        for (o, t) in bases.iter().enumerate() {
            if t.rows() != self.dims[o] {
                return Err(Error::Invalid("change of basis has the wrong size".into()));
            }
            inverses.push(t.inverse(f).ok_or_else(|| Error::Invalid("change of basis is singular".into()))?);
        }
        let mats = (0..cat.morphism_count() as u32)
            .map(|m| bases[cat.tgt(m) as usize].mul(&self.mats[m as usize], f).mul(&inverses[cat.src(m) as usize], f))
            .collect();
        Ok(CoefficientSystem { field: f, dims: self.dims.clone(), mats, locally_constant: self.locally_constant })
    }
}

/// A natural transformation given by one matrix per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalTransformation {
    pub components: Vec<Matrix>,
}

impl NaturalTransformation {
    pub fn identity(m: &CoefficientSystem) -> Self {
        NaturalTransformation { components: m.dims.iter().map(|&d| Matrix::identity(d)).collect() }
    }

    /// Checks shapes and `η_Q M(f) = N(f) η_P` for every morphism.
    pub fn check(&self, cat: &FinCat, src: &CoefficientSystem, tgt: &CoefficientSystem) -> Result<()> {
        let f = src.field;
        for o in 0..cat.object_count() {
            let c = &self.components[o];
            if c.rows() != tgt.dims[o] || c.cols() != src.dims[o] {
                return Err(Error::Invalid(alloc::format!("component at object {} has the wrong shape", o)));
            }
        }
        for m in 0..cat.morphism_count() as u32 {
            let lhs = self.components[cat.tgt(m) as usize].mul(src.mat(m), f);
            let rhs = tgt.mat(m).mul(&self.components[cat.src(m) as usize], f);
            if lhs != rhs {
                return Err(Error::NotFunctorial(alloc::format!("naturality fails at morphism {}", m)));
            }
        }
        Ok(())
    }

    pub fn compose(&self, first: &NaturalTransformation, f: Fp) -> NaturalTransformation {
        NaturalTransformation {
            components: self.components.iter().zip(&first.components).map(|(a, b)| a.mul(b, f)).collect(),
        }
    }
}

/// The permutation system on `Γ/K`: a morphism `f` sends the coset `cK` to
/// `Θ̂(f)cK`. Works on the full linking system or any subsystem.
pub fn permutation_system(l: &LinkingSystem, gd: &GammaData, k: &Subgroup, field: Fp) -> Result<CoefficientSystem> {
    let gm = gd.gamma();
    if !k.is_closed(gm) {
        return Err(Error::Invalid("K is not a subgroup of gamma".into()));
    }
    let cosets = crate::group::left_cosets(gm, &gm.whole(), k);
    let mut coset_of = vec![0usize; gm.order()];
    for (i, c) in cosets.iter().enumerate() {
        for &x in c {
            coset_of[x as usize] = i;
        }
    }
    let n = cosets.len();
    let mats = (0..l.morphism_count() as u32)
        .map(|m| {
            let t = gd.theta_hat_in(l, m);
            let mut a = Matrix::zero(n, n);
            for (c, coset) in cosets.iter().enumerate() {
                a.set(coset_of[gm.mul(t, coset[0]) as usize], c, 1);
            }
            a
        })
        .collect();
    CoefficientSystem::new(l.cat(), field, vec![n; l.object_count()], mats)
}

/// `ι*M`: the restriction of a system on `L` to a subsystem `L_H`.
pub fn restrict_system(m: &CoefficientSystem, lh: &LinkingSystem) -> CoefficientSystem {
    let mats: Vec<Matrix> = (0..lh.morphism_count() as u32).map(|k| m.mat(lh.parent_id(k)).clone()).collect();
    let locally_constant = mats.iter().all(|a| a.is_square() && a.rank(m.field) == a.rows());
    CoefficientSystem { field: m.field, dims: m.dims.clone(), mats, locally_constant }
}

/// The object `σ_c⁻¹(P)`.
fn twisted_object(l: &LinkingSystem, section: &Section, c: u32, a: u32) -> u32 {
    let s = l.rep(section.sigma(c));
    l.conjugate_object(a, l.group().inv(s))
}

/// Morphism of `L_H` with representative `s_c⁻¹ x s_{c'}` between the twisted objects.
fn twisted_morphism(l: &LinkingSystem, lh: &LinkingSystem, section: &Section, c: u32, cp: u32, m: u32) -> Result<u32> {
    let g = l.group();
    let a = twisted_object(l, section, cp, l.src(m));
    let b = twisted_object(l, section, c, l.tgt(m));
    let x = g.mul(g.mul(g.inv(l.rep(section.sigma(c))), l.rep(m)), l.rep(section.sigma(cp)));
    lh.morphism(a, b, x).ok_or(Error::RestrictionUndefined)
}

/// Block layout of `R_ι(M)(P) = ⊕_c M(σ_c⁻¹P)`: offsets per coset.
fn kan_offsets(l: &LinkingSystem, m: &CoefficientSystem, section: &Section, a: u32) -> Vec<usize> {
    let mut offs = Vec::with_capacity(section.coset_count() + 1);
    let mut acc = 0;
    for c in 0..section.coset_count() as u32 {
        offs.push(acc);
        acc += m.dim(twisted_object(l, section, c, a));
    }
    offs.push(acc);
    offs
}

/// The right Kan extension of a system on `L_H` along the inclusion into `L`.
pub fn right_kan_extension(
    l: &LinkingSystem,
    lh: &LinkingSystem,
    gd: &GammaData,
    m: &CoefficientSystem,
    section: &Section,
) -> Result<CoefficientSystem> {
    let gm = gd.gamma();
    let n_obj = l.object_count() as u32;
    let offsets: Vec<Vec<usize>> = (0..n_obj).map(|a| kan_offsets(l, m, section, a)).collect();
    let dims: Vec<usize> = offsets.iter().map(|o| *o.last().unwrap()).collect();
    let mut mats = Vec::with_capacity(l.morphism_count());
    for f in 0..l.morphism_count() as u32 {
        let (a, b) = (l.src(f), l.tgt(f));
        let mut big = Matrix::zero(dims[b as usize], dims[a as usize]);
        let tinv = gm.inv(gd.theta_hat(l.parent_id(f)));
        for c in 0..section.coset_count() as u32 {
            let cp = section.act(gm, tinv, c);
            let k = twisted_morphism(l, lh, section, c, cp, f)?;
            big.put_block(offsets[b as usize][c as usize], offsets[a as usize][cp as usize], m.mat(k));
        }
        mats.push(big);
    }
    CoefficientSystem::new(l.cat(), m.field, dims, mats)
}

/// Applies the Kan extension to a natural transformation of systems on `L_H`.
pub fn kan_extend_transformation(
    l: &LinkingSystem,
    section: &Section,
    eta: &NaturalTransformation,
) -> NaturalTransformation {
    let components = (0..l.object_count() as u32)
        .map(|a| {
            let blocks: Vec<Matrix> = (0..section.coset_count() as u32)
                .map(|c| eta.components[twisted_object(l, section, c, a) as usize].clone())
                .collect();
            Matrix::block_diag(&blocks)
        })
        .collect();
    NaturalTransformation { components }
}

/// `R_ι(ι*M) -> M`, summing the blocks through `M(σ_c)`.
pub fn pre_transfer(l: &LinkingSystem, m: &CoefficientSystem, section: &Section) -> Result<NaturalTransformation> {
    let mut components = Vec::new();
    for a in 0..l.object_count() as u32 {
        let mut blocks = Vec::new();
        for c in 0..section.coset_count() as u32 {
            let t = twisted_object(l, section, c, a);
            let k = l.morphism(t, a, l.rep(section.sigma(c))).ok_or(Error::SectionMismatch)?;
            blocks.push(m.mat(l.parent_id(k)).clone());
        }
        components.push(Matrix::hstack(m.dim(a), &blocks));
    }
    Ok(NaturalTransformation { components })
}

/// `M -> R_ι(ι*M)`, stacking the blocks `M(σ_c)⁻¹`.
pub fn unit_delta(l: &LinkingSystem, m: &CoefficientSystem, section: &Section) -> Result<NaturalTransformation> {
    let g = l.group();
    let mut components = Vec::new();
    for a in 0..l.object_count() as u32 {
        let mut blocks = Vec::new();
        for c in 0..section.coset_count() as u32 {
            let t = twisted_object(l, section, c, a);
            let k = l.morphism(a, t, g.inv(l.rep(section.sigma(c)))).ok_or(Error::SectionMismatch)?;
            blocks.push(m.mat(l.parent_id(k)).clone());
        }
        components.push(Matrix::vstack(m.dim(a), &blocks));
    }
    Ok(NaturalTransformation { components })
}

/// The isomorphism `R^σ(M) -> R^τ(M)` with blocks `M(τ_c⁻¹ σ_c)`.
pub fn change_of_section(
    l: &LinkingSystem,
    lh: &LinkingSystem,
    m: &CoefficientSystem,
    sigma: &Section,
    tau: &Section,
) -> Result<NaturalTransformation> {
    if sigma.subgroup() != tau.subgroup() {
        return Err(Error::SectionMismatch);
    }
    let g = l.group();
    let mut components = Vec::new();
    for a in 0..l.object_count() as u32 {
        let mut blocks = Vec::new();
        for c in 0..sigma.coset_count() as u32 {
            let src = twisted_object(l, sigma, c, a);
            let dst = twisted_object(l, tau, c, a);
            let x = g.mul(g.inv(l.rep(tau.sigma(c))), l.rep(sigma.sigma(c)));
            let k = lh.morphism(src, dst, x).ok_or(Error::SectionMismatch)?;
            blocks.push(m.mat(k).clone());
        }
        components.push(Matrix::block_diag(&blocks));
    }
    Ok(NaturalTransformation { components })
}

/// Outcome of the exactness probe for one short exact sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub objects_checked: usize,
    pub exact: bool,
    pub failing_object: Option<u32>,
}

fn exact_at_objects(
    cat: &FinCat,
    a: &CoefficientSystem,
    b: &CoefficientSystem,
    c: &CoefficientSystem,
    i: &NaturalTransformation,
    q: &NaturalTransformation,
) -> Option<u32> {
    let f = a.field;
    for o in 0..cat.object_count() as u32 {
        let (ia, qb) = (&i.components[o as usize], &q.components[o as usize]);
        let ok = ia.rank(f) == a.dim(o)
            && qb.rank(f) == c.dim(o)
            && qb.mul(ia, f).is_zero()
            && b.dim(o) == a.dim(o) + c.dim(o);
        if !ok {
            return Some(o);
        }
    }
    None
}

/// Checks that `0 -> A -> B -> C -> 0` on `L_H` is exact, then that its
/// image under the Kan extension is exact on `L`.
#[allow(clippy::too_many_arguments)]
pub fn exactness_probe(
    l: &LinkingSystem,
    lh: &LinkingSystem,
    gd: &GammaData,
    section: &Section,
    seq: (&CoefficientSystem, &CoefficientSystem, &CoefficientSystem),
    i: &NaturalTransformation,
    q: &NaturalTransformation,
) -> Result<ExactnessReport> {
    let (a, b, c) = seq;
    i.check(lh.cat(), a, b)?;
    q.check(lh.cat(), b, c)?;
    if let Some(o) = exact_at_objects(lh.cat(), a, b, c, i, q) {
        return Err(Error::InputNotExact(alloc::format!("at object {}", o)));
    }
    let ra = right_kan_extension(l, lh, gd, a, section)?;
    let rb = right_kan_extension(l, lh, gd, b, section)?;
    let rc = right_kan_extension(l, lh, gd, c, section)?;
    let ri = kan_extend_transformation(l, section, i);
    let rq = kan_extend_transformation(l, section, q);
    ri.check(l.cat(), &ra, &rb)?;
    rq.check(l.cat(), &rb, &rc)?;
    let failing_object = exact_at_objects(l.cat(), &ra, &rb, &rc, &ri, &rq);
    Ok(ExactnessReport { objects_checked: l.object_count(), exact: failing_object.is_none(), failing_object })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::FusionSystem;
    use crate::gamma::{build_p_prime_subsystem, DEFAULT_COSET_CAP};
    use crate::group::{self, builtin, FiniteGroup};
    use alloc::sync::Arc;

    pub(crate) struct Fixture {
        pub l: LinkingSystem,
        pub gd: GammaData,
    }

    pub(crate) fn fixture(g: FiniteGroup, p: u32) -> Fixture {
        let f = FusionSystem::from_group(Arc::new(g), p).unwrap();
        let l = LinkingSystem::build(Arc::new(f)).unwrap();
        let gd = GammaData::compute(&l, DEFAULT_COSET_CAP).unwrap();
        Fixture { l, gd }
    }

    #[test]
    fn permutation_systems() {
        let fx = fixture(builtin::symmetric(3).unwrap(), 3);
        let f = Fp::new(3);
        let m = permutation_system(&fx.l, &fx.gd, &Subgroup::trivial(), f).unwrap();
        assert_eq!(m.dims(), &[2]);
        assert!(m.is_locally_constant());
        let swaps = fx.l.aut_s().iter().filter(|&&a| m.mat(a).get(0, 0) == 0).count();
        assert_eq!(swaps, 3);
        let whole = permutation_system(&fx.l, &fx.gd, &fx.gd.gamma().whole(), f).unwrap();
        assert_eq!(whole, CoefficientSystem::constant(fx.l.cat(), f, 1));
    }

    #[test]
    fn kan_extension_of_constant_is_permutation() {
        for (g, p) in [(builtin::symmetric(3).unwrap(), 3), (builtin::symmetric(5).unwrap(), 5)] {
            let fx = fixture(g, p);
            let f = Fp::new(p);
            for h in group::subgroups_of(fx.gd.gamma(), &fx.gd.gamma().whole()) {
                let sub = build_p_prime_subsystem(&fx.l, &fx.gd, &h).unwrap();
                let s = Section::canonical(&fx.l, &fx.gd, &h).unwrap();
                let c = CoefficientSystem::constant(sub.linking.cat(), f, 1);
                let r = right_kan_extension(&fx.l, &sub.linking, &fx.gd, &c, &s).unwrap();
                let perm = permutation_system(&fx.l, &fx.gd, &h, f).unwrap();
                assert_eq!(r, perm);
            }
        }
    }

    #[test]
    fn normalization_and_naturality() {
        let fx = fixture(builtin::symmetric(5).unwrap(), 5);
        let f = Fp::new(5);
        for h in group::subgroups_of(fx.gd.gamma(), &fx.gd.gamma().whole()) {
            let sub = build_p_prime_subsystem(&fx.l, &fx.gd, &h).unwrap();
            let s = Section::canonical(&fx.l, &fx.gd, &h).unwrap();
            let index = (fx.gd.gamma().order() / h.order()) as u32;
            for m in [
                CoefficientSystem::constant(fx.l.cat(), f, 1),
                permutation_system(&fx.l, &fx.gd, &Subgroup::trivial(), f).unwrap(),
            ] {
                let im = restrict_system(&m, &sub.linking);
                let r = right_kan_extension(&fx.l, &sub.linking, &fx.gd, &im, &s).unwrap();
                let pt = pre_transfer(&fx.l, &m, &s).unwrap();
                let d = unit_delta(&fx.l, &m, &s).unwrap();
                pt.check(fx.l.cat(), &r, &m).unwrap();
                d.check(fx.l.cat(), &m, &r).unwrap();
                for (o, c) in pt.compose(&d, f).components.iter().enumerate() {
                    assert_eq!(*c, Matrix::scalar(m.dim(o as u32), index % 5));
                }
            }
        }
    }

    #[test]
    fn section_change_commutes_with_pre_transfer() {
        let fx = fixture(builtin::symmetric(3).unwrap(), 3);
        let f = Fp::new(3);
        let h = Subgroup::trivial();
        let sub = build_p_prime_subsystem(&fx.l, &fx.gd, &h).unwrap();
        let sigma = Section::canonical(&fx.l, &fx.gd, &h).unwrap();
        let tau = Section::with_choice(&fx.l, &fx.gd, &h, |n| n - 1).unwrap();
        assert_ne!(sigma, tau);
        let m = CoefficientSystem::constant(fx.l.cat(), f, 1);
        let im = restrict_system(&m, &sub.linking);
        let rs = right_kan_extension(&fx.l, &sub.linking, &fx.gd, &im, &sigma).unwrap();
        let rt = right_kan_extension(&fx.l, &sub.linking, &fx.gd, &im, &tau).unwrap();
        let phi = change_of_section(&fx.l, &sub.linking, &im, &sigma, &tau).unwrap();
        phi.check(fx.l.cat(), &rs, &rt).unwrap();
        let lhs = pre_transfer(&fx.l, &m, &tau).unwrap().compose(&phi, f);
        assert_eq!(lhs, pre_transfer(&fx.l, &m, &sigma).unwrap());
    }

    #[test]
    fn restricted_permutation_has_fixed_summand() {
        let fx = fixture(builtin::symmetric(3).unwrap(), 3);
        let f = Fp::new(3);
        let h = Subgroup::trivial();
        let sub = build_p_prime_subsystem(&fx.l, &fx.gd, &h).unwrap();
        let m = permutation_system(&fx.l, &fx.gd, &h, f).unwrap();
        let r = restrict_system(&m, &sub.linking);
        assert!(r.mats().iter().all(|a| *a == Matrix::identity(2)));
    }

    #[test]
    fn exactness_of_a_split_sequence() {
        let fx = fixture(builtin::symmetric(3).unwrap(), 3);
        let f = Fp::new(3);
        let h = Subgroup::trivial();
        let sub = build_p_prime_subsystem(&fx.l, &fx.gd, &h).unwrap();
        let s = Section::canonical(&fx.l, &fx.gd, &h).unwrap();
        let one = CoefficientSystem::constant(sub.linking.cat(), f, 1);
        let two = one.direct_sum(&one);
        let i = NaturalTransformation { components: vec![Matrix::from_row_vecs(1, &[vec![1], vec![0]])] };
        let q = NaturalTransformation { components: vec![Matrix::from_row_vecs(2, &[vec![0, 1]])] };
        let rep = exactness_probe(&fx.l, &sub.linking, &fx.gd, &s, (&one, &two, &one), &i, &q).unwrap();
        assert!(rep.exact);
        let bad = NaturalTransformation { components: vec![Matrix::from_row_vecs(2, &[vec![1, 0]])] };
        let err = exactness_probe(&fx.l, &sub.linking, &fx.gd, &s, (&one, &two, &one), &i, &bad).unwrap_err();
        assert!(matches!(err, Error::InputNotExact(_)));
    }
}
