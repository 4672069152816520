//! Centric linking systems of finite groups.
//!
//! Objects are the `F`-centric subgroups of `S`; `Mor(P, Q)` is the set of
//! cosets `x C'_G(P)` with `x` in the transporter `N_G(P, Q)`. Each morphism
//! is identified by the least element of its coset.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::category::FinCat;
use crate::error::{Error, Result};
use crate::fusion::FusionSystem;
use crate::group::{self, FiniteGroup, Subgroup};

#[derive(Clone, Debug)]
pub struct LinkingSystem {
    fusion: Arc<FusionSystem>,
    objects: Vec<usize>,
    obj_index: BTreeMap<usize, u32>,
    complements: Vec<Subgroup>,
    cat: FinCat,
    reps: Vec<u32>,
    lookup: BTreeMap<(u32, u32, u32), u32>,
    parent: Vec<u32>,
}

impl LinkingSystem {
    /// Builds `L_S^c(G)` and checks the linking system axioms.
    pub fn build(fusion: Arc<FusionSystem>) -> Result<LinkingSystem> {
        let g = fusion.group_arc().clone();
        let objects = fusion.centric_subgroups();
        let mut complements = Vec::with_capacity(objects.len());
        for &i in &objects {
            if !fusion.is_p_centric_in_group(i) {
                return Err(Error::NotPCentric);
            }
            let c = group::p_prime_complement(&g, fusion.centralizer(i), fusion.subgroup(i), fusion.prime())?;
            complements.push(c);
        }
        let mut morphisms: Vec<(u32, u32, u32, Vec<u32>)> = Vec::new();
        for (a, &i) in objects.iter().enumerate() {
            for (b, &j) in objects.iter().enumerate() {
                let n = group::transporter(&g, fusion.subgroup(i), fusion.subgroup(j));
                let mut seen = alloc::collections::BTreeSet::new();
                for x in n {
                    if seen.contains(&x) {
                        continue;
                    }
                    let mut coset: Vec<u32> = complements[a].members().iter().map(|&c| g.mul(x, c)).collect();
                    coset.sort_unstable();
                    seen.extend(coset.iter().copied());
                    morphisms.push((a as u32, b as u32, coset[0], coset));
                }
            }
        }
        morphisms.sort_by_key(|m| (m.0, m.1, m.2));
        let mut lookup = BTreeMap::new();
        for (id, (a, b, _, coset)) in morphisms.iter().enumerate() {
            for &x in coset {
                lookup.insert((*a, *b, x), id as u32);
            }
        }
        let src: Vec<u32> = morphisms.iter().map(|m| m.0).collect();
        let tgt: Vec<u32> = morphisms.iter().map(|m| m.1).collect();
        let reps: Vec<u32> = morphisms.iter().map(|m| m.2).collect();
        let identity: Vec<u32> = (0..objects.len() as u32).map(|a| lookup[&(a, a, 0)]).collect();
        let cat = FinCat::new(objects.len(), src.clone(), tgt.clone(), identity, |h, f| {
            lookup[&(src[f as usize], tgt[h as usize], g.mul(reps[h as usize], reps[f as usize]))]
        })?;
        let obj_index = objects.iter().enumerate().map(|(a, &i)| (i, a as u32)).collect();
        let parent = (0..reps.len() as u32).collect();
        let l = LinkingSystem { fusion, objects, obj_index, complements, cat, reps, lookup, parent };
        l.check_axioms()?;
        Ok(l)
    }

    /// The subcategory on the same objects with the morphisms selected by
    /// `keep`. The selection must contain identities and be closed under
    /// composition.
    pub fn subsystem(&self, keep: impl Fn(u32) -> bool) -> Result<LinkingSystem> {
        let kept: Vec<u32> = (0..self.morphism_count() as u32).filter(|&m| keep(m)).collect();
        let new_id: BTreeMap<u32, u32> = kept.iter().enumerate().map(|(k, &m)| (m, k as u32)).collect();
        let lookup: BTreeMap<(u32, u32, u32), u32> = self
            .lookup
            .iter()
            .filter_map(|(&key, m)| new_id.get(m).map(|&k| (key, k)))
            .collect();
        let src: Vec<u32> = kept.iter().map(|&m| self.cat.src(m)).collect();
        let tgt: Vec<u32> = kept.iter().map(|&m| self.cat.tgt(m)).collect();
        let mut identity = Vec::new();
        for a in 0..self.object_count() as u32 {
            identity.push(*new_id.get(&self.cat.id(a)).ok_or_else(|| Error::Invalid("subsystem lacks an identity".into()))?);
        }
        let mut closed = true;
        let cat = FinCat::new(self.object_count(), src, tgt, identity, |h, f| {
            let c = self.cat.compose(kept[h as usize], kept[f as usize]);
            match new_id.get(&c) {
                Some(&k) => k,
                None => {
                    closed = false;
                    0
                }
            }
        });
        if !closed {
            return Err(Error::Invalid("subsystem not closed under composition".into()));
        }
        let cat = cat?;
        let reps = kept.iter().map(|&m| self.reps[m as usize]).collect();
        let parent = kept.iter().map(|&m| self.parent[m as usize]).collect();
        Ok(LinkingSystem {
            fusion: self.fusion.clone(),
            objects: self.objects.clone(),
            obj_index: self.obj_index.clone(),
            complements: self.complements.clone(),
            cat,
            reps,
            lookup,
            parent,
        })
    }

    pub fn fusion(&self) -> &FusionSystem {
        &self.fusion
    }

    pub fn fusion_arc(&self) -> &Arc<FusionSystem> {
        &self.fusion
    }

    pub fn group(&self) -> &FiniteGroup {
        self.fusion.group()
    }

    pub fn cat(&self) -> &FinCat {
        &self.cat
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.reps.len()
    }

    /// Index into the fusion system's subgroup list.
    pub fn object_subgroup_index(&self, a: u32) -> usize {
        self.objects[a as usize]
    }

    pub fn object_subgroup(&self, a: u32) -> &Subgroup {
        self.fusion.subgroup(self.objects[a as usize])
    }

    pub fn object_of(&self, p: &Subgroup) -> Option<u32> {
        self.fusion.subgroup_index(p).and_then(|i| self.obj_index.get(&i).copied())
    }

    pub fn object_of_index(&self, i: usize) -> Option<u32> {
        self.obj_index.get(&i).copied()
    }

    /// The object `x P x^-1`.
    pub fn conjugate_object(&self, a: u32, x: u32) -> u32 {
        let i = self.fusion.image_index(self.objects[a as usize], x);
        self.obj_index[&i]
    }

    pub fn complement(&self, a: u32) -> &Subgroup {
        &self.complements[a as usize]
    }

    pub fn s_object(&self) -> u32 {
        (self.objects.len() - 1) as u32
    }

    #[inline]
    pub fn src(&self, m: u32) -> u32 {
        self.cat.src(m)
    }

    #[inline]
    pub fn tgt(&self, m: u32) -> u32 {
        self.cat.tgt(m)
    }

    #[inline]
    pub fn rep(&self, m: u32) -> u32 {
        self.reps[m as usize]
    }

    /// Id of the same morphism in the full linking system.
    #[inline]
    pub fn parent_id(&self, m: u32) -> u32 {
        self.parent[m as usize]
    }

    /// Local id of a morphism of the full linking system, if this system contains it.
    pub fn from_parent(&self, full: u32) -> Option<u32> {
        self.parent.binary_search(&full).ok().map(|i| i as u32)
    }

    #[inline]
    pub fn compose(&self, h: u32, f: u32) -> u32 {
        self.cat.compose(h, f)
    }

    /// The morphism `a -> b` whose coset contains `x`, if present.
    #[inline]
    pub fn morphism(&self, a: u32, b: u32, x: u32) -> Option<u32> {
        self.lookup.get(&(a, b, x)).copied()
    }

    pub fn delta(&self, a: u32, x: u32) -> Option<u32> {
        self.morphism(a, a, x)
    }

    /// The chosen inclusion `P -> Q`, the coset of the identity element.
    pub fn inclusion(&self, a: u32, b: u32) -> Option<u32> {
        self.morphism(a, b, 0)
    }

    /// Morphisms `S -> S`.
    pub fn aut_s(&self) -> &[u32] {
        let s = self.s_object();
        self.cat.hom(s, s)
    }

    /// Representative of `pi(f)` in the fusion system.
    pub fn pi(&self, m: u32) -> u32 {
        self.fusion.canonical_rep(self.objects[self.src(m) as usize], self.rep(m))
    }

    /// Whether `m` is an isomorphism onto its target.
    pub fn is_iso(&self, m: u32) -> bool {
        self.object_subgroup(self.src(m)).order() == self.object_subgroup(self.tgt(m)).order()
    }

    /// The inverse of an isomorphism.
    pub fn inverse(&self, m: u32) -> Option<u32> {
        let x = self.group().inv(self.rep(m));
        self.morphism(self.tgt(m), self.src(m), x)
    }

    /// The unique `psi : P' -> Q'` with `incl ∘ psi = m ∘ incl`.
    pub fn restrict(&self, m: u32, p: &Subgroup, q: &Subgroup) -> Result<u32> {
        let a = self.object_of(p).ok_or(Error::NotAnObject)?;
        let b = self.object_of(q).ok_or(Error::NotAnObject)?;
        if !p.is_subgroup_of(self.object_subgroup(self.src(m))) || !q.is_subgroup_of(self.object_subgroup(self.tgt(m))) {
            return Err(Error::ImageNotContained);
        }
        let x = self.rep(m);
        if !group::conjugate(self.group(), x, p).is_subgroup_of(q) {
            return Err(Error::ImageNotContained);
        }
        self.morphism(a, b, x).ok_or(Error::RestrictionUndefined)
    }

    /// Restriction of `m` to `P' -> x P' x^-1`, where `x` is the representative.
    pub fn restrict_to_image(&self, m: u32, a: u32) -> Result<u32> {
        let b = self.conjugate_object(a, self.rep(m));
        self.restrict(m, &self.object_subgroup(a).clone(), &self.object_subgroup(b).clone())
    }

    pub fn check_axioms(&self) -> Result<()> {
        let g = self.group();
        let f = &*self.fusion;
        let n = self.object_count() as u32;
        for a in 0..n {
            let p = self.object_subgroup(a);
            let z = group::center(g, p);
            for b in 0..n {
                let homs = f.homs(self.objects[a as usize], self.objects[b as usize]);
                let mors = self.cat.hom(a, b);
                if mors.len() != z.order() * homs.len() {
                    return Err(Error::Invalid(format!("axiom A: |Mor({},{})| = {} but |Z(P)||Hom_F| = {}", a, b, mors.len(), z.order() * homs.len())));
                }
                for &m in mors {
                    let mut orbit: Vec<u32> = z.members().iter().map(|&zz| self.compose(m, self.delta(a, zz).unwrap())).collect();
                    orbit.sort_unstable();
                    orbit.dedup();
                    if orbit.len() != z.order() {
                        return Err(Error::Invalid("axiom A: Z(P) does not act freely".into()));
                    }
                    if orbit.iter().any(|&o| self.pi(o) != self.pi(m)) {
                        return Err(Error::Invalid("axiom A: orbit not contained in a fibre of pi".into()));
                    }
                    for &x in p.members() {
                        let y = g.conj(self.rep(m), x);
                        let lhs = self.compose(m, self.delta(a, x).unwrap());
                        let rhs = self.compose(self.delta(b, y).unwrap(), m);
                        if lhs != rhs {
                            return Err(Error::Invalid("axiom C fails".into()));
                        }
                    }
                }
            }
            for &x in p.members() {
                let d = self.delta(a, x).ok_or_else(|| Error::Invalid("delta undefined".into()))?;
                if f.canonical_rep(self.objects[a as usize], self.rep(d)) != f.canonical_rep(self.objects[a as usize], x) {
                    return Err(Error::Invalid("axiom B fails".into()));
                }
            }
            let mut deltas: Vec<u32> = p.members().iter().map(|&x| self.delta(a, x).unwrap()).collect();
            deltas.sort_unstable();
            deltas.dedup();
            if deltas.len() != p.order() {
                return Err(Error::Invalid("delta is not injective".into()));
            }
        }
        self.check_inclusions()?;
        for m in 0..self.morphism_count() as u32 {
            for &h in self.cat.out_of(self.tgt(m)) {
                let lhs = self.pi(self.compose(h, m));
                let rhs = f.canonical_rep(self.objects[self.src(m) as usize], g.mul(self.pi(h), self.pi(m)));
                if lhs != rhs {
                    return Err(Error::NotFunctorial("pi".into()));
                }
            }
        }
        Ok(())
    }

    fn check_inclusions(&self) -> Result<()> {
        let n = self.object_count() as u32;
        let s = self.s_object();
        if self.inclusion(s, s) != Some(self.cat.id(s)) {
            return Err(Error::Invalid("inclusion of S in itself is not the identity".into()));
        }
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = self.inclusion(a, b) else { continue };
                for c in 0..n {
                    if let Some(bc) = self.inclusion(b, c) {
                        if self.inclusion(a, c) != Some(self.compose(bc, ab)) {
                            return Err(Error::Invalid("inclusions are not compatible".into()));
                        }
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

    pub(crate) fn linking(g: FiniteGroup, p: u32) -> LinkingSystem {
        let f = FusionSystem::from_group(Arc::new(g), p).unwrap();
        LinkingSystem::build(Arc::new(f)).unwrap()
    }

    #[test]
    fn s3_at_3() {
        let l = linking(builtin::symmetric(3).unwrap(), 3);
        assert_eq!(l.object_count(), 1);
        assert_eq!(l.aut_s().len(), 6);
    }

    #[test]
    fn s4_at_2_objects() {
        let l = linking(builtin::symmetric(4).unwrap(), 2);
        let orders: Vec<usize> = (0..l.object_count() as u32).map(|a| l.object_subgroup(a).order()).collect();
        assert_eq!(orders, [4, 4, 4, 8]);
        let cyclic = (0..l.object_count() as u32)
            .filter(|&a| l.object_subgroup(a).members().iter().any(|&x| l.group().elem_order(x) == 4) && l.object_subgroup(a).order() == 4)
            .count();
        assert_eq!(cyclic, 1);
    }

    #[test]
    fn a4_at_2() {
        let l = linking(builtin::alternating(4).unwrap(), 2);
        assert_eq!(l.object_count(), 1);
        assert_eq!(l.aut_s().len(), 12);
    }

    #[test]
    fn restriction() {
        let l = linking(builtin::symmetric(4).unwrap(), 2);
        let s = l.s_object();
        let id = l.cat().id(s);
        for a in 0..l.object_count() as u32 {
            let p = l.object_subgroup(a).clone();
            let r = l.restrict(id, &p, &p).unwrap();
            assert_eq!(r, l.cat().id(a));
            assert_eq!(Some(r), l.delta(a, 0));
        }
        for &alpha in l.aut_s() {
            for a in 0..l.object_count() as u32 {
                let r = l.restrict_to_image(alpha, a).unwrap();
                let b = l.tgt(r);
                // uniqueness: exactly one morphism a -> b makes the square commute
                let sq: Vec<u32> = l
                    .cat()
                    .hom(a, b)
                    .iter()
                    .copied()
                    .filter(|&psi| l.compose(l.inclusion(b, s).unwrap(), psi) == l.compose(alpha, l.inclusion(a, s).unwrap()))
                    .collect();
                assert_eq!(sq, [r]);
            }
        }
        let small = l.object_subgroup(0).clone();
        let other = l.object_subgroup(1).clone();
        let bad = l.restrict(id, &small, &other);
        assert_eq!(bad, Err(Error::ImageNotContained));
    }

    #[test]
    fn restriction_is_associative() {
        let l = linking(builtin::symmetric(4).unwrap(), 2);
        let s = l.s_object();
        let d8 = l.object_subgroup(s).clone();
        for &alpha in l.aut_s() {
            for a in 0..l.object_count() as u32 {
                let p = l.object_subgroup(a).clone();
                let img = l.object_subgroup(l.conjugate_object(a, l.rep(alpha))).clone();
                let once = l.restrict(alpha, &p, &img).unwrap();
                let mid = l.restrict(alpha, &d8, &d8).unwrap();
                let twice = l.restrict(mid, &p, &img).unwrap();
                assert_eq!(once, twice);
            }
        }
    }

    #[test]
    fn centric_matches_p_centric() {
        for (g, p) in [
            (builtin::symmetric(3).unwrap(), 3),
            (builtin::alternating(4).unwrap(), 2),
            (builtin::symmetric(4).unwrap(), 2),
            (builtin::symmetric(5).unwrap(), 5),
        ] {
            let f = FusionSystem::from_group(Arc::new(g), p).unwrap();
            for i in 0..f.subgroups().len() {
                assert_eq!(f.classify_subgroup(i).centric, f.is_p_centric_in_group(i));
            }
        }
    }
}
