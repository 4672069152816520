//! Fusion systems over a Sylow subgroup, stored as conjugation representatives.
//!
//! Every morphism `P -> S` in the systems built here is a conjugation `c_x`
//! restricted to `P`, so `Hom(P, S)` is stored as the set of least
//! representatives of the cosets `x C_G(P)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{self, FiniteGroup, GroupHom, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SubgroupFlags {
    pub fully_normalized: bool,
    pub fully_centralized: bool,
    pub centric: bool,
    pub radical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaturationFailure {
    /// A fully normalized subgroup that is not fully centralized, or whose
    /// `Aut_S(P)` is not Sylow in `Aut_F(P)`.
    SylowCondition { subgroup: usize },
    /// A morphism `c_x : P -> S` onto a fully centralized image with no
    /// extension to `N_phi`.
    Extension { subgroup: usize, rep: u32 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SaturationReport {
    pub checked_subgroups: usize,
    pub checked_morphisms: usize,
    pub failures: Vec<SaturationFailure>,
}

impl SaturationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct FusionSystem {
    group: Arc<FiniteGroup>,
    p: u32,
    sylow: Subgroup,
    subgroups: Vec<Subgroup>,
    sub_index: BTreeMap<Subgroup, usize>,
    below: Vec<Vec<usize>>,
    centralizers: Vec<Subgroup>,
    homs: Vec<Vec<u32>>,
}

impl FusionSystem {
    /// The fusion system `F_S(G)` over the canonical Sylow `p`-subgroup.
    pub fn from_group(group: Arc<FiniteGroup>, p: u32) -> Result<FusionSystem> {
        if !crate::linalg::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if group.order() % p as usize != 0 {
            return Err(Error::Invalid(alloc::format!("{} does not divide the group order {}", p, group.order())));
        }
        let sylow = group::sylow_subgroup(&group, p);
        let mut fs = FusionSystem::skeleton(group, p, sylow);
        for i in 0..fs.subgroups.len() {
            let n = group::transporter(&fs.group, &fs.subgroups[i], &fs.sylow);
            let reps: BTreeSet<u32> = n.iter().map(|&x| fs.canonical_rep(i, x)).collect();
            fs.homs[i] = reps.into_iter().collect();
        }
        Ok(fs)
    }

    /// The smallest fusion system over `sylow` containing the conjugations
    /// `c_x : P -> S` listed in `seeds` (pairs of subgroup index and element),
    /// closed under restriction, composition and inverses.
    pub fn generated_by(
        group: Arc<FiniteGroup>,
        p: u32,
        sylow: Subgroup,
        seeds: &[(usize, u32)],
    ) -> Result<FusionSystem> {
        let mut fs = FusionSystem::skeleton(group, p, sylow);
        let n = fs.subgroups.len();
        let mut sets: Vec<BTreeSet<u32>> = (0..n).map(|_| BTreeSet::from([0u32])).collect();
        for &(i, x) in seeds {
            if !group::conjugate(&fs.group, x, &fs.subgroups[i]).is_subgroup_of(&fs.sylow) {
                return Err(Error::ImageNotContained);
            }
            let r = fs.canonical_rep(i, x);
            sets[i].insert(r);
        }
        loop {
            let mut changed = false;
            for i in 0..n {
                let current: Vec<u32> = sets[i].iter().copied().collect();
                for &x in &current {
                    let img = fs.image_index(i, x);
                    let inv = fs.canonical_rep(img, fs.group.inv(x));
                    changed |= sets[img].insert(inv);
                    let onward: Vec<u32> = sets[img].iter().copied().collect();
                    for y in onward {
                        let yx = fs.canonical_rep(i, fs.group.mul(y, x));
                        changed |= sets[i].insert(yx);
                    }
                    for &j in &fs.below[i] {
                        let r = fs.canonical_rep(j, x);
                        changed |= sets[j].insert(r);
                    }
                }
            }
            if !changed {
                break;
            }
        }
        fs.homs = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        Ok(fs)
    }

    fn skeleton(group: Arc<FiniteGroup>, p: u32, sylow: Subgroup) -> FusionSystem {
        let subgroups = group::subgroups_of(&group, &sylow);
        let sub_index = subgroups.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let below = subgroups
            .iter()
            .map(|q| (0..subgroups.len()).filter(|&j| subgroups[j].is_subgroup_of(q)).collect())
            .collect();
        let centralizers = subgroups.iter().map(|q| group::centralizer(&group, q)).collect();
        let n = subgroups.len();
        FusionSystem { group, p, sylow, subgroups, sub_index, below, centralizers, homs: alloc::vec![Vec::new(); n] }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn sylow(&self) -> &Subgroup {
        &self.sylow
    }

    /// All subgroups of `S`, in canonical order.
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn subgroup_index(&self, p: &Subgroup) -> Option<usize> {
        self.sub_index.get(p).copied()
    }

    pub fn sylow_index(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn centralizer(&self, i: usize) -> &Subgroup {
        &self.centralizers[i]
    }

    /// Least element of `x C_G(P)`.
    pub fn canonical_rep(&self, i: usize, x: u32) -> u32 {
        self.centralizers[i].members().iter().map(|&c| self.group.mul(x, c)).min().unwrap_or(x)
    }

    /// Index of `x P x^-1`, which must be a subgroup of `S`.
    pub fn image_index(&self, i: usize, x: u32) -> usize {
        let img = group::conjugate(&self.group, x, &self.subgroups[i]);
        self.sub_index[&img]
    }

    /// Representatives of `Hom_F(P, S)`.
    pub fn homs_to_s(&self, i: usize) -> &[u32] {
        &self.homs[i]
    }

    /// Representatives of `Hom_F(P, Q)`.
    pub fn homs(&self, i: usize, j: usize) -> Vec<u32> {
        let q = &self.subgroups[j];
        self.homs[i]
            .iter()
            .copied()
            .filter(|&x| self.subgroups[i].members().iter().all(|&y| q.contains(self.group.conj(x, y))))
            .collect()
    }

    pub fn contains_hom(&self, i: usize, x: u32) -> bool {
        self.homs[i].binary_search(&self.canonical_rep(i, x)).is_ok()
    }

    pub fn hom_map(&self, i: usize, j: usize, x: u32) -> GroupHom {
        GroupHom::conjugation(&self.group, x, &self.subgroups[i], &self.subgroups[j])
    }

    /// Indices of the `F`-conjugates of `P`.
    pub fn conjugacy_class(&self, i: usize) -> Vec<usize> {
        let class: BTreeSet<usize> = self.homs[i].iter().map(|&x| self.image_index(i, x)).collect();
        class.into_iter().collect()
    }

    fn n_s(&self, i: usize) -> Subgroup {
        group::normalizer_in(&self.group, &self.sylow, &self.subgroups[i])
    }

    fn c_s(&self, i: usize) -> Subgroup {
        group::centralizer_in(&self.group, &self.sylow, &self.subgroups[i])
    }

    /// `Aut_F(P)` as a permutation group on the members of `P`, together with
    /// the permutations of the inner automorphisms.
    fn aut_group(&self, i: usize) -> (FiniteGroup, Vec<crate::group::Perm>) {
        let p = &self.subgroups[i];
        let pos: BTreeMap<u32, u32> = p.members().iter().enumerate().map(|(k, &y)| (y, k as u32)).collect();
        let as_perm = |x: u32| -> crate::group::Perm {
            p.members().iter().map(|&y| pos[&self.group.conj(x, y)]).collect()
        };
        let auts = self.homs(i, i);
        let gens: Vec<_> = auts.iter().map(|&x| as_perm(x)).collect();
        let a = FiniteGroup::generate(p.order(), &gens, group::DEFAULT_ELEMENT_CAP)
            .expect("automorphisms of a subgroup form a small group");
        let inner = p.members().iter().map(|&y| as_perm(y)).collect();
        (a, inner)
    }

    pub fn aut_order(&self, i: usize) -> usize {
        self.homs(i, i).len()
    }

    pub fn classify_subgroup(&self, i: usize) -> SubgroupFlags {
        let class = self.conjugacy_class(i);
        let n_here = self.n_s(i).order();
        let c_here = self.c_s(i).order();
        let fully_normalized = class.iter().all(|&j| self.n_s(j).order() <= n_here);
        let fully_centralized = class.iter().all(|&j| self.c_s(j).order() <= c_here);
        let centric = class.iter().all(|&j| self.c_s(j).is_subgroup_of(&self.subgroups[j]));
        let (aut, inner) = self.aut_group(i);
        let inner: BTreeSet<u32> = inner.iter().map(|q| aut.index_of(q).expect("inner automorphism")).collect();
        let op = group::o_p(&aut, &aut.whole(), self.p);
        let radical = op.order() == inner.len();
        SubgroupFlags { fully_normalized, fully_centralized, centric, radical }
    }

    /// `F`-centric subgroups, increasing in canonical order.
    pub fn centric_subgroups(&self) -> Vec<usize> {
        (0..self.subgroups.len()).filter(|&i| self.classify_subgroup(i).centric).collect()
    }

    /// Whether `Z(P)` is a Sylow subgroup of `C_G(P)`.
    pub fn is_p_centric_in_group(&self, i: usize) -> bool {
        group::p_prime_complement(&self.group, &self.centralizers[i], &self.subgroups[i], self.p).is_ok()
    }

    pub fn check_saturation(&self) -> SaturationReport {
        let mut report = SaturationReport::default();
        let g = &*self.group;
        for i in 0..self.subgroups.len() {
            report.checked_subgroups += 1;
            let flags = self.classify_subgroup(i);
            if flags.fully_normalized {
                let aut_s = self.n_s(i).order() / self.c_s(i).order();
                let aut_f = self.aut_order(i);
                if !flags.fully_centralized || aut_s != group::p_part(aut_f, self.p) {
                    report.failures.push(SaturationFailure::SylowCondition { subgroup: i });
                }
            }
            let n_s = self.n_s(i);
            for &x in &self.homs[i] {
                let j = self.image_index(i, x);
                if !self.classify_subgroup(j).fully_centralized {
                    continue;
                }
                report.checked_morphisms += 1;
                let target_n = self.n_s(j);
                let aut_s_target: BTreeSet<u32> = target_n
                    .members()
                    .iter()
                    .flat_map(|&s| self.centralizers[j].members().iter().map(move |&c| g.mul(s, c)))
                    .collect();
                let n_phi_members: Vec<u32> =
                    n_s.members().iter().copied().filter(|&h| aut_s_target.contains(&g.conj(x, h))).collect();
                let n_phi = Subgroup::from_sorted(n_phi_members);
                let k = self.sub_index[&n_phi];
                let c_p = &self.centralizers[i];
                let extends = self.homs[k].iter().any(|&y| c_p.contains(g.mul(g.inv(y), x)));
                if !extends {
                    report.failures.push(SaturationFailure::Extension { subgroup: i, rep: x });
                }
            }
        }
        report
    }

    /// Checks the fusion system axioms: inner conjugations from `S` are present,
    /// every morphism is an injective homomorphism into `S`, and the hom sets are
    /// closed under composition, restriction and inverses.
    pub fn check_axioms(&self) -> Result<()> {
        let g = &*self.group;
        for i in 0..self.subgroups.len() {
            for &s in self.sylow.members() {
                if !self.contains_hom(i, s) {
                    return Err(Error::Invalid(alloc::format!("conjugation by {} missing on subgroup {}", s, i)));
                }
            }
            for &x in &self.homs[i] {
                let j = self.image_index(i, x);
                let h = self.hom_map(i, j, x);
                if !h.is_homomorphism(g) || !h.is_injective() {
                    return Err(Error::Invalid("morphism is not an injective homomorphism".into()));
                }
                if !self.contains_hom(j, g.inv(x)) {
                    return Err(Error::Invalid("isomorphism lacks an inverse".into()));
                }
                for &y in &self.homs[j] {
                    if !self.contains_hom(i, g.mul(y, x)) {
                        return Err(Error::Invalid("hom sets not closed under composition".into()));
                    }
                }
                for &k in &self.below[i] {
                    if !self.contains_hom(k, x) {
                        return Err(Error::Invalid("hom sets not closed under restriction".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;

    fn fusion(g: FiniteGroup, p: u32) -> FusionSystem {
        FusionSystem::from_group(Arc::new(g), p).unwrap()
    }

    #[test]
    fn s3_at_3() {
        let f = fusion(builtin::symmetric(3).unwrap(), 3);
        assert_eq!(f.subgroups().len(), 2);
        assert_eq!(f.aut_order(f.sylow_index()), 2);
        f.check_axioms().unwrap();
        assert!(f.check_saturation().passed());
        assert!(!f.classify_subgroup(0).centric);
    }

    #[test]
    fn s3_at_2_hom_between_transpositions() {
        let g = builtin::symmetric(3).unwrap();
        let f = fusion(g, 2);
        let t01 = f.group().index_of(&[1, 0, 2]).unwrap();
        let t02 = f.group().index_of(&[2, 1, 0]).unwrap();
        let p = group::closure_of(f.group(), &[t01]);
        let q = group::closure_of(f.group(), &[t02]);
        let n = group::transporter(f.group(), &p, &q);
        let c = group::centralizer(f.group(), &p);
        assert_eq!(n.len() / c.order(), 1);
    }

    #[test]
    fn a4_at_2() {
        let f = fusion(builtin::alternating(4).unwrap(), 2);
        assert_eq!(f.aut_order(f.sylow_index()), 3);
        assert!(f.check_saturation().passed());
    }

    #[test]
    fn s4_at_2_classification() {
        let g = builtin::symmetric(4).unwrap();
        let f = fusion(g, 2);
        f.check_axioms().unwrap();
        assert!(f.check_saturation().passed());
        let v4: Vec<u32> = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
            .iter()
            .map(|p| f.group().index_of(p).unwrap())
            .collect();
        let v = f.subgroup_index(&Subgroup::from_unsorted(v4)).unwrap();
        let flags = f.classify_subgroup(v);
        assert!(flags.centric && flags.radical);
        assert!(f.classify_subgroup(f.sylow_index()).fully_normalized);
        for i in 0..f.subgroups().len() {
            assert_eq!(f.classify_subgroup(i).centric, f.is_p_centric_in_group(i));
        }
        assert_eq!(f.centric_subgroups().len(), 4);
    }

    #[test]
    fn s5_at_5_saturated() {
        let f = fusion(builtin::symmetric(5).unwrap(), 5);
        assert!(f.check_saturation().passed());
        assert_eq!(f.aut_order(f.sylow_index()), 4);
    }

    #[test]
    fn generated_system_from_sylow_normalizer() {
        let f = fusion(builtin::symmetric(4).unwrap(), 2);
        let nseeds: Vec<(usize, u32)> = (0..f.subgroups().len())
            .flat_map(|i| f.homs_to_s(i).iter().map(move |&x| (i, x)))
            .collect();
        let h = FusionSystem::generated_by(f.group_arc().clone(), 2, f.sylow().clone(), &nseeds).unwrap();
        for i in 0..f.subgroups().len() {
            assert_eq!(h.homs_to_s(i), f.homs_to_s(i));
        }
        let s_only: Vec<(usize, u32)> = f.sylow().members().iter().map(|&s| (f.sylow_index(), s)).collect();
        let inner = FusionSystem::generated_by(f.group_arc().clone(), 2, f.sylow().clone(), &s_only).unwrap();
        inner.check_axioms().unwrap();
        assert!(inner.check_saturation().passed());
    }

    #[test]
    fn non_saturated_system_is_reported() {
        // Fuse a non-central involution of D8 to the centre without extending
        // the fusion to its normalizer: axiom II must fail.
        let f = fusion(builtin::symmetric(4).unwrap(), 2);
        let g = f.group_arc().clone();
        let s = f.sylow().clone();
        let z = group::center(&g, &s).members()[1];
        let (t, x) = s
            .members()
            .iter()
            .copied()
            .filter(|&t| t != z && g.elem_order(t) == 2)
            .find_map(|t| (0..g.order() as u32).find(|&x| g.conj(x, t) == z).map(|x| (t, x)))
            .unwrap();
        let p = f.subgroup_index(&group::closure_of(&g, &[t])).unwrap();
        let mut seeds: Vec<(usize, u32)> = s.members().iter().map(|&y| (f.sylow_index(), y)).collect();
        seeds.push((p, x));
        let bad = FusionSystem::generated_by(g, 2, s, &seeds).unwrap();
        bad.check_axioms().unwrap();
        let report = bad.check_saturation();
        assert!(report.failures.iter().any(|e| matches!(e, SaturationFailure::Extension { .. })));
    }
}
