//! The group `Γ = π₁(|F^c|)`, the labelling `Θ̂` of linking morphisms, sections
//! of `Aut_L(S) -> Γ/H`, and the subsystems of index prime to `p`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::{FinCat, UnionFind};
use crate::error::{Error, Result};
use crate::fusion::FusionSystem;
use crate::group::{self, FiniteGroup, Perm, Subgroup};
use crate::linking::LinkingSystem;

pub const DEFAULT_COSET_CAP: usize = 100_000;

/// A finite presentation. Letters are `+(i+1)` for generator `i` and
/// `-(i+1)` for its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedGroup {
    pub generators: usize,
    pub relators: Vec<Vec<i32>>,
}

/// A presentation of the fundamental group of a category together with the
/// generator attached to each morphism (none for tree edges and identities).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryPresentation {
    pub presentation: PresentedGroup,
    pub generator_of: Vec<Option<usize>>,
}

fn free_reduce(w: &mut Vec<i32>) {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &x in w.iter() {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    while out.len() >= 2 && out[0] == -out[out.len() - 1] {
        out.remove(0);
        out.pop();
    }
    *w = out;
}

/// Presentation of `π₁(|C|)`. `tree` lists the spanning tree morphisms; when
/// absent a breadth-first tree from `base` is used.
pub fn pi1_presentation(cat: &FinCat, base: u32, tree: Option<&[u32]>) -> Result<CategoryPresentation> {
    if !cat.is_connected() {
        return Err(Error::CategoryNotConnected);
    }
    let n = cat.object_count();
    let tree_edges: BTreeSet<u32> = match tree {
        Some(t) => {
            let mut uf = UnionFind::new(n);
            for &m in t {
                let (a, b) = (cat.src(m) as usize, cat.tgt(m) as usize);
                if uf.find(a) == uf.find(b) {
                    return Err(Error::Invalid("tree edges contain a cycle".into()));
                }
                uf.union(a, b);
            }
            if t.len() + 1 != n {
                return Err(Error::Invalid("tree does not span the category".into()));
            }
            t.iter().copied().collect()
        }
        None => {
            let mut seen = vec![false; n];
            seen[base as usize] = true;
            let mut edges = BTreeSet::new();
            let mut queue = VecDeque::from([base]);
            while let Some(o) = queue.pop_front() {
                for m in 0..cat.morphism_count() as u32 {
                    let (a, b) = (cat.src(m), cat.tgt(m));
                    let other = if a == o { b } else if b == o { a } else { continue };
                    if !seen[other as usize] {
                        seen[other as usize] = true;
                        edges.insert(m);
                        queue.push_back(other);
                    }
                }
            }
            edges
        }
    };
    let mut generator_of = vec![None; cat.morphism_count()];
    let mut count = 0;
    for m in 0..cat.morphism_count() as u32 {
        if !cat.is_identity(m) && !tree_edges.contains(&m) {
            generator_of[m as usize] = Some(count);
            count += 1;
        }
    }
    let word = |m: u32| -> Vec<i32> { generator_of[m as usize].map(|g| vec![g as i32 + 1]).unwrap_or_default() };
    let inverse = |w: Vec<i32>| -> Vec<i32> { w.into_iter().rev().map(|x| -x).collect() };
    let mut relators = BTreeSet::new();
    for f in 0..cat.morphism_count() as u32 {
        for &g in cat.out_of(cat.tgt(f)) {
            let mut r = word(cat.compose(g, f));
            r.extend(inverse(word(f)));
            r.extend(inverse(word(g)));
            free_reduce(&mut r);
            if !r.is_empty() {
                relators.insert(r);
            }
        }
    }
    Ok(CategoryPresentation {
        presentation: PresentedGroup { generators: count, relators: relators.into_iter().collect() },
        generator_of,
    })
}

const NONE: u32 = u32::MAX;

struct CosetTable {
    cols: usize,
    table: Vec<Vec<u32>>,
    parent: Vec<u32>,
    live: usize,
    cap: usize,
    queue: Vec<u32>,
}

impl CosetTable {
    fn col(letter: i32) -> usize {
        if letter > 0 {
            2 * (letter as usize - 1)
        } else {
            2 * ((-letter) as usize - 1) + 1
        }
    }

    fn inv_col(c: usize) -> usize {
        c ^ 1
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<()> {
        if self.live >= self.cap {
            return Err(Error::CosetCapExceeded { cap: self.cap });
        }
        let n = self.table.len() as u32;
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(n);
        self.live += 1;
        self.table[c as usize][x] = n;
        self.table[n as usize][Self::inv_col(x)] = c;
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi as usize] = lo;
        self.live -= 1;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e as usize][x];
                if f == NONE {
                    continue;
                }
                let ix = Self::inv_col(x);
                if self.table[f as usize][ix] == e {
                    self.table[f as usize][ix] = NONE;
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let a1 = self.table[e1 as usize][x];
                if a1 != NONE {
                    self.merge(f1, a1);
                } else {
                    let b1 = self.table[f1 as usize][ix];
                    if b1 != NONE {
                        self.merge(e1, b1);
                    } else {
                        self.table[e1 as usize][x] = f1;
                        self.table[f1 as usize][ix] = e1;
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Scans `w` from coset `c`, defining new cosets when `fill` is set.
    fn scan(&mut self, c: u32, w: &[usize], fill: bool) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.table[f as usize][w[i]] != NONE {
                f = self.table[f as usize][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b as usize][Self::inv_col(w[j as usize])] != NONE {
                b = self.table[b as usize][Self::inv_col(w[j as usize])];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            } else if j == i as isize {
                self.table[f as usize][w[i]] = b;
                self.table[b as usize][Self::inv_col(w[i])] = f;
                return Ok(());
            } else if fill {
                self.define(f, w[i])?;
            } else {
                return Ok(());
            }
        }
    }
}

fn process_coset(t: &mut CosetTable, c: u32, rels: &[Vec<usize>]) -> Result<()> {
    for r in rels {
        if !t.is_live(c) {
            return Ok(());
        }
        t.scan(c, r, true)?;
    }
    for x in 0..t.cols {
        if t.is_live(c) && t.table[c as usize][x] == NONE {
            t.define(c, x)?;
        }
    }
    Ok(())
}

/// Result of enumerating the cosets of the trivial subgroup.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub group: FiniteGroup,
    /// Element of `group` represented by each generator.
    pub generator_images: Vec<u32>,
}

/// Coset enumeration over the trivial subgroup (HLT with a lookahead pass
/// whenever the live coset count reaches `cap`). The result is the regular
/// permutation representation.
pub fn todd_coxeter(p: &PresentedGroup, cap: usize) -> Result<Enumeration> {
    let cols = 2 * p.generators;
    let rels: Vec<Vec<usize>> = p.relators.iter().map(|r| r.iter().map(|&x| CosetTable::col(x)).collect()).collect();
    let mut t = CosetTable { cols, table: vec![vec![NONE; cols]], parent: vec![0], live: 1, cap, queue: Vec::new() };
    let mut c = 0u32;
    while (c as usize) < t.table.len() {
        if t.is_live(c) {
            if let Err(Error::CosetCapExceeded { .. }) = process_coset(&mut t, c, &rels) {
                for d in 0..t.table.len() as u32 {
                    for r in &rels {
                        if t.is_live(d) {
                            t.scan(d, r, false)?;
                        }
                    }
                }
                if t.live >= cap {
                    return Err(Error::CosetCapExceeded { cap });
                }
                continue;
            }
        }
        c += 1;
    }
    // Renumber live cosets breadth-first from coset 0.
    let mut order = vec![NONE; t.table.len()];
    let mut seq = vec![0u32];
    order[0] = 0;
    let mut head = 0;
    while head < seq.len() {
        let e = seq[head];
        head += 1;
        for x in 0..cols {
            let f = t.rep(t.table[e as usize][x]);
            if order[f as usize] == NONE {
                order[f as usize] = seq.len() as u32;
                seq.push(f);
            }
        }
    }
    let n = seq.len();
    let mut gens: Vec<Perm> = Vec::new();
    for g in 0..p.generators {
        let rho: Perm = seq.iter().map(|&e| order[t.rep(t.table[e as usize][2 * g]) as usize]).collect();
        gens.push(group::invert(&rho));
    }
    let degree = n.max(1);
    let group = FiniteGroup::generate(degree, &gens, cap.max(n))?;
    if group.order() != n {
        return Err(Error::Invalid("coset enumeration did not produce a regular representation".into()));
    }
    let generator_images = gens.iter().map(|g| group.index_of(g).expect("generator lies in its closure")).collect();
    Ok(Enumeration { group, generator_images })
}

/// `F^c` as a finite category, morphisms ordered by (source, target, representative).
#[derive(Clone, Debug)]
pub struct CentricFusionCategory {
    pub cat: FinCat,
    pub reps: Vec<u32>,
    lookup: BTreeMap<(u32, u32, u32), u32>,
}

impl CentricFusionCategory {
    pub fn build(l: &LinkingSystem) -> Result<CentricFusionCategory> {
        let f = l.fusion();
        let g = l.group();
        let n = l.object_count() as u32;
        let mut mors = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for x in f.homs(l.object_subgroup_index(a), l.object_subgroup_index(b)) {
                    mors.push((a, b, x));
                }
            }
        }
        let lookup: BTreeMap<(u32, u32, u32), u32> =
            mors.iter().enumerate().map(|(k, &m)| (m, k as u32)).collect();
        let src: Vec<u32> = mors.iter().map(|m| m.0).collect();
        let tgt: Vec<u32> = mors.iter().map(|m| m.1).collect();
        let reps: Vec<u32> = mors.iter().map(|m| m.2).collect();
        let identity = (0..n).map(|a| lookup[&(a, a, f.canonical_rep(l.object_subgroup_index(a), 0))]).collect();
        let cat = FinCat::new(n as usize, src.clone(), tgt.clone(), identity, |h, k| {
            let s = src[k as usize];
            let x = f.canonical_rep(l.object_subgroup_index(s), g.mul(reps[h as usize], reps[k as usize]));
            lookup[&(s, tgt[h as usize], x)]
        })?;
        Ok(CentricFusionCategory { cat, reps, lookup })
    }

    pub fn morphism(&self, a: u32, b: u32, rep: u32) -> Option<u32> {
        self.lookup.get(&(a, b, rep)).copied()
    }
}

/// `Γ_{p'}(F)` with the labelling `Θ̂` of every morphism of `L`.
#[derive(Clone, Debug)]
pub struct GammaData {
    gamma: FiniteGroup,
    presentation: CategoryPresentation,
    fc: CentricFusionCategory,
    theta_hat: Vec<u32>,
}

impl GammaData {
    pub fn compute(l: &LinkingSystem, cap: usize) -> Result<GammaData> {
        let fc = CentricFusionCategory::build(l)?;
        let s = l.s_object();
        let tree: Vec<u32> = (0..l.object_count() as u32)
            .filter(|&a| a != s)
            .map(|a| fc.morphism(a, s, l.fusion().canonical_rep(l.object_subgroup_index(a), 0)).expect("inclusion into S"))
            .collect();
        let presentation = pi1_presentation(&fc.cat, s, Some(&tree))?;
        let en = todd_coxeter(&presentation.presentation, cap)?;
        let theta_hat = (0..l.morphism_count() as u32)
            .map(|m| {
                let k = fc.morphism(l.src(m), l.tgt(m), l.pi(m)).expect("pi lands in F^c");
                presentation.generator_of[k as usize].map(|gi| en.generator_images[gi]).unwrap_or(0)
            })
            .collect();
        let gd = GammaData { gamma: en.group, presentation, fc, theta_hat };
        gd.check(l)?;
        Ok(gd)
    }

    fn check(&self, l: &LinkingSystem) -> Result<()> {
        let gm = &self.gamma;
        for f in 0..l.morphism_count() as u32 {
            for &h in l.cat().out_of(l.tgt(f)) {
                if self.theta_hat(l.compose(h, f)) != gm.mul(self.theta_hat(h), self.theta_hat(f)) {
                    return Err(Error::NotFunctorial("theta hat".into()));
                }
            }
        }
        let n = l.object_count() as u32;
        for a in 0..n {
            for b in 0..n {
                if let Some(i) = l.inclusion(a, b) {
                    if self.theta_hat(i) != 0 {
                        return Err(Error::Invalid("theta hat does not kill an inclusion".into()));
                    }
                }
            }
        }
        let image: BTreeSet<u32> = l.aut_s().iter().map(|&m| self.theta_hat(m)).collect();
        if image.len() != gm.order() {
            return Err(Error::SurjectivityFailure);
        }
        let s = l.s_object();
        for &x in l.object_subgroup(s).members() {
            if self.theta_hat(l.delta(s, x).expect("delta")) != 0 {
                return Err(Error::Invalid("theta is not trivial on S".into()));
            }
        }
        if gm.order() % l.fusion().prime() as usize == 0 {
            return Err(Error::Invalid("gamma is not a p'-group".into()));
        }
        Ok(())
    }

    pub fn gamma(&self) -> &FiniteGroup {
        &self.gamma
    }

    pub fn presentation(&self) -> &CategoryPresentation {
        &self.presentation
    }

    pub fn centric_fusion_category(&self) -> &CentricFusionCategory {
        &self.fc
    }

    /// `Θ̂` of a morphism of the full linking system.
    #[inline]
    pub fn theta_hat(&self, m: u32) -> u32 {
        self.theta_hat[m as usize]
    }

    pub fn theta_hat_all(&self) -> &[u32] {
        &self.theta_hat
    }

    /// `Θ̂` of a morphism of a subsystem, through its parent id.
    #[inline]
    pub fn theta_hat_in(&self, l: &LinkingSystem, m: u32) -> u32 {
        self.theta_hat[l.parent_id(m) as usize]
    }

    /// Least `α ∈ Aut_L(S)` with `Θ̂(α) = g`.
    pub fn least_lift(&self, l: &LinkingSystem, g: u32) -> Result<u32> {
        l.aut_s().iter().copied().find(|&m| self.theta_hat(m) == g).ok_or(Error::SectionUnavailable)
    }
}

/// `Γ_p(F) = S / O^p_F(S)` with the hyperfocal subgroup.
pub fn gamma_p(f: &FusionSystem) -> (FiniteGroup, Subgroup) {
    let g = f.group();
    let p = f.prime();
    let mut gens = BTreeSet::new();
    for i in 0..f.subgroups().len() {
        let q = f.subgroup(i);
        let c = f.centralizer(i);
        for x in f.homs(i, i) {
            let mut k = 1u32;
            let mut y = x;
            while !c.contains(y) {
                y = g.mul(y, x);
                k += 1;
            }
            if k % p == 0 {
                continue;
            }
            for &z in q.members() {
                gens.insert(g.mul(g.inv(z), g.conj(x, z)));
            }
        }
    }
    let gens: Vec<u32> = gens.into_iter().collect();
    let hyper = group::normal_closure(g, f.sylow(), &gens);
    let (q, _) = group::quotient(g, f.sylow(), &hyper);
    (q, hyper)
}

/// A section `K/H -> Aut_L(S)` with values over `K`, the identity on the trivial coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    k: Subgroup,
    h: Subgroup,
    cosets: Vec<Vec<u32>>,
    coset_of: Vec<u32>,
    sigma: Vec<u32>,
}

impl Section {
    /// The canonical section of `Γ/H`: least morphism in each fibre.
    pub fn canonical(l: &LinkingSystem, gd: &GammaData, h: &Subgroup) -> Result<Section> {
        Self::canonical_in(l, gd, &gd.gamma().whole(), h)
    }

    pub fn canonical_in(l: &LinkingSystem, gd: &GammaData, k: &Subgroup, h: &Subgroup) -> Result<Section> {
        Self::choose(l, gd, k, h, |_, fibre| Some(fibre[0]))
    }

    /// A section of `Γ/H` picking the `pick(fibre_len)`-th element of each non-trivial fibre.
    pub fn with_choice(
        l: &LinkingSystem,
        gd: &GammaData,
        h: &Subgroup,
        mut pick: impl FnMut(usize) -> usize,
    ) -> Result<Section> {
        Self::choose(l, gd, &gd.gamma().whole(), h, |_, fibre| Some(fibre[pick(fibre.len()) % fibre.len()]))
    }

    fn choose(
        l: &LinkingSystem,
        gd: &GammaData,
        k: &Subgroup,
        h: &Subgroup,
        mut choose: impl FnMut(usize, &[u32]) -> Option<u32>,
    ) -> Result<Section> {
        let gm = gd.gamma();
        if !h.is_closed(gm) || !k.is_closed(gm) {
            return Err(Error::Invalid("not a subgroup of gamma".into()));
        }
        if !h.is_subgroup_of(k) {
            return Err(Error::NotASubgroupChain);
        }
        let cosets = group::left_cosets(gm, k, h);
        let mut coset_of = vec![NONE; gm.order()];
        for (c, members) in cosets.iter().enumerate() {
            for &x in members {
                coset_of[x as usize] = c as u32;
            }
        }
        let mut sigma = Vec::with_capacity(cosets.len());
        for c in 0..cosets.len() {
            if c == 0 {
                sigma.push(l.cat().id(l.s_object()));
                continue;
            }
            let fibre: Vec<u32> =
                l.aut_s().iter().copied().filter(|&m| coset_of[gd.theta_hat(m) as usize] == c as u32).collect();
            if fibre.is_empty() {
                return Err(Error::SectionUnavailable);
            }
            sigma.push(choose(c, &fibre).ok_or(Error::SectionUnavailable)?);
        }
        Ok(Section { k: k.clone(), h: h.clone(), cosets, coset_of, sigma })
    }

    /// Builds a section of `Γ/H` from explicit morphisms, one per coset in canonical order.
    pub fn from_morphisms(l: &LinkingSystem, gd: &GammaData, h: &Subgroup, sigma: Vec<u32>) -> Result<Section> {
        Self::from_morphisms_in(l, gd, &gd.gamma().whole(), h, sigma)
    }

    pub fn from_morphisms_in(
        l: &LinkingSystem,
        gd: &GammaData,
        k: &Subgroup,
        h: &Subgroup,
        sigma: Vec<u32>,
    ) -> Result<Section> {
        let mut s = Self::canonical_in(l, gd, k, h)?;
        if sigma.len() != s.sigma.len() || sigma[0] != l.cat().id(l.s_object()) {
            return Err(Error::SectionMismatch);
        }
        for (c, &m) in sigma.iter().enumerate() {
            if l.src(m) != l.s_object() || l.tgt(m) != l.s_object() || s.coset_of[gd.theta_hat(m) as usize] != c as u32 {
                return Err(Error::SectionMismatch);
            }
        }
        s.sigma = sigma;
        Ok(s)
    }

    pub fn ambient(&self) -> &Subgroup {
        &self.k
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.h
    }

    pub fn coset_count(&self) -> usize {
        self.cosets.len()
    }

    pub fn cosets(&self) -> &[Vec<u32>] {
        &self.cosets
    }

    #[inline]
    pub fn coset_of(&self, g: u32) -> u32 {
        self.coset_of[g as usize]
    }

    /// Coset of `g * c` for a coset `c` and `g ∈ K`.
    #[inline]
    pub fn act(&self, gm: &FiniteGroup, g: u32, c: u32) -> u32 {
        self.coset_of[gm.mul(g, self.cosets[c as usize][0]) as usize]
    }

    /// `σ_c` as a morphism of the full linking system.
    #[inline]
    pub fn sigma(&self, c: u32) -> u32 {
        self.sigma[c as usize]
    }

    pub fn morphisms(&self) -> &[u32] {
        &self.sigma
    }
}

/// The subsystem `(F_H, L_H)` of index prime to `p` attached to `H ≤ Γ`.
#[derive(Clone, Debug)]
pub struct Subsystem {
    pub h: Subgroup,
    pub fusion: Arc<FusionSystem>,
    pub linking: LinkingSystem,
}

pub fn build_p_prime_subsystem(l: &LinkingSystem, gd: &GammaData, h: &Subgroup) -> Result<Subsystem> {
    if !h.is_closed(gd.gamma()) {
        return Err(Error::Invalid("H is not a subgroup of gamma".into()));
    }
    let lh = l.subsystem(|m| h.contains(gd.theta_hat(m)))?;
    let f = l.fusion();
    let seeds: Vec<(usize, u32)> =
        (0..lh.morphism_count() as u32).map(|m| (lh.object_subgroup_index(lh.src(m)), lh.rep(m))).collect();
    let fh = FusionSystem::generated_by(f.group_arc().clone(), f.prime(), f.sylow().clone(), &seeds)?;
    fh.check_axioms()?;
    let centric = fh.centric_subgroups();
    let objects: Vec<usize> = (0..l.object_count() as u32).map(|a| l.object_subgroup_index(a)).collect();
    if centric != objects {
        return Err(Error::Invalid("subsystem has different centric subgroups".into()));
    }
    if !fh.check_saturation().passed() {
        return Err(Error::Invalid("subsystem fusion is not saturated".into()));
    }
    Ok(Subsystem { h: h.clone(), fusion: Arc::new(fh), linking: lh })
}

/// Components of the groupoid of pairs `(P^α, α)` with `α : P -> P^α` an
/// isomorphism of `L`, two pairs being joined when `β ∘ α⁻¹` lies in `L_H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidComponents {
    pub isomorphisms: Vec<u32>,
    pub component: Vec<u32>,
    /// Coset `Θ̂(α)⁻¹H` attached to each component.
    pub coset_of_component: Vec<u32>,
}

pub fn enumerate_gh(l: &LinkingSystem, gd: &GammaData, section: &Section, a: u32) -> Result<GroupoidComponents> {
    let gm = gd.gamma();
    let h = section.subgroup();
    let isos: Vec<u32> = l.cat().out_of(a).iter().copied().filter(|&m| l.is_iso(m)).collect();
    let mut uf = UnionFind::new(isos.len());
    for i in 0..isos.len() {
        let inv = l.inverse(isos[i]).ok_or_else(|| Error::Invalid("isomorphism without inverse".into()))?;
        for j in 0..isos.len() {
            let joined = l.compose(isos[j], inv);
            if h.contains(gd.theta_hat(joined)) {
                uf.union(i, j);
            }
        }
    }
    let component = uf.labels();
    let k = component.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut coset_of_component = vec![NONE; k];
    for (i, &c) in component.iter().enumerate() {
        let coset = section.coset_of(gm.inv(gd.theta_hat(isos[i])));
        if coset_of_component[c as usize] == NONE {
            coset_of_component[c as usize] = coset;
        } else if coset_of_component[c as usize] != coset {
            return Err(Error::Invalid("component meets two cosets".into()));
        }
    }
    let distinct: BTreeSet<u32> = coset_of_component.iter().copied().collect();
    if distinct.len() != k || k != section.coset_count() {
        return Err(Error::Invalid("components are not in bijection with cosets".into()));
    }
    Ok(GroupoidComponents { isomorphisms: isos, component, coset_of_component })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::group_category;
    use crate::group::builtin;

    fn setup(g: FiniteGroup, p: u32) -> (LinkingSystem, GammaData) {
        let f = FusionSystem::from_group(Arc::new(g), p).unwrap();
        let l = LinkingSystem::build(Arc::new(f)).unwrap();
        let gd = GammaData::compute(&l, DEFAULT_COSET_CAP).unwrap();
        (l, gd)
    }

    #[test]
    fn presentation_of_z2() {
        let c = group_category(2, |a, b| a ^ b).unwrap();
        let p = pi1_presentation(&c, 0, None).unwrap();
        assert_eq!(p.presentation.generators, 1);
        assert_eq!(p.presentation.relators, [vec![-1, -1]]);
        assert_eq!(todd_coxeter(&p.presentation, 100).unwrap().group.order(), 2);
    }

    #[test]
    fn contractible_poset_has_trivial_group() {
        let c = FinCat::new(2, vec![0, 1, 0], vec![0, 1, 1], vec![0, 1], |g, f| if g <= 1 { f } else { g }).unwrap();
        let p = pi1_presentation(&c, 1, None).unwrap();
        assert_eq!(p.presentation.generators, 0);
        assert_eq!(todd_coxeter(&p.presentation, 10).unwrap().group.order(), 1);
    }

    #[test]
    fn s3_presentation() {
        let p = PresentedGroup { generators: 2, relators: vec![vec![1, 1], vec![2, 2, 2], vec![1, 2, 1, 2]] };
        let e = todd_coxeter(&p, 1000).unwrap();
        assert_eq!(e.group.order(), 6);
        let (a, b) = (e.generator_images[0], e.generator_images[1]);
        let gm = &e.group;
        assert_eq!(gm.mul(a, a), 0);
        assert_eq!(gm.pow(b, 3), 0);
        assert_eq!(gm.pow(gm.mul(a, b), 2), 0);
        assert!(!gm.is_abelian());
    }

    #[test]
    fn coset_cap_is_reported() {
        let p = PresentedGroup { generators: 2, relators: vec![vec![1, 1], vec![2, 2, 2]] };
        assert_eq!(todd_coxeter(&p, 50).unwrap_err(), Error::CosetCapExceeded { cap: 50 });
    }

    #[test]
    fn larger_presentation_with_coincidences() {
        // Binary-free presentation of A5: <a, b | a^2, b^3, (ab)^5>.
        let p = PresentedGroup { generators: 2, relators: vec![vec![1, 1], vec![2, 2, 2], [1, 2].repeat(5)] };
        assert_eq!(todd_coxeter(&p, 10_000).unwrap().group.order(), 60);
    }

    #[test]
    fn gamma_orders_of_fixtures() {
        let cases = [
            (builtin::symmetric(3).unwrap(), 3, 2),
            (builtin::alternating(4).unwrap(), 2, 3),
            (builtin::symmetric(4).unwrap(), 2, 1),
            (builtin::symmetric(5).unwrap(), 5, 4),
        ];
        for (g, p, order) in cases {
            let (l, gd) = setup(g, p);
            assert_eq!(gd.gamma().order(), order);
            assert!(gd.gamma().is_abelian());
            if order == 4 {
                assert!((0..4).any(|x| gd.gamma().elem_order(x) == 4));
            }
            let _ = l;
        }
    }

    #[test]
    fn single_object_gamma_is_aut_f() {
        for (g, p) in [
            (builtin::symmetric(3).unwrap(), 3),
            (builtin::alternating(4).unwrap(), 2),
            (builtin::symmetric(5).unwrap(), 5),
        ] {
            let (l, gd) = setup(g, p);
            assert_eq!(l.object_count(), 1);
            assert_eq!(gd.gamma().order(), l.fusion().aut_order(l.fusion().sylow_index()));
        }
    }

    #[test]
    fn gamma_p_examples() {
        let f = FusionSystem::from_group(Arc::new(builtin::symmetric(3).unwrap()), 3).unwrap();
        assert_eq!(gamma_p(&f).0.order(), 1);
        let f = FusionSystem::from_group(Arc::new(builtin::cyclic(4).unwrap()), 2).unwrap();
        let (q, hyper) = gamma_p(&f);
        assert_eq!(q.order(), 4);
        assert!(hyper.is_trivial());
        let f = FusionSystem::from_group(Arc::new(builtin::alternating(4).unwrap()), 2).unwrap();
        assert_eq!(gamma_p(&f).0.order(), 1);
    }

    #[test]
    fn subsystems() {
        let (l, gd) = setup(builtin::symmetric(3).unwrap(), 3);
        let sub = build_p_prime_subsystem(&l, &gd, &Subgroup::trivial()).unwrap();
        assert_eq!(sub.linking.aut_s().len(), 3);
        let all = build_p_prime_subsystem(&l, &gd, &gd.gamma().whole()).unwrap();
        assert_eq!(all.linking.morphism_count(), l.morphism_count());

        let (l, gd) = setup(builtin::symmetric(5).unwrap(), 5);
        let subs = group::subgroups_of(gd.gamma(), &gd.gamma().whole());
        let half = subs.iter().find(|s| s.order() == 2).unwrap();
        let sub = build_p_prime_subsystem(&l, &gd, half).unwrap();
        assert_eq!(sub.linking.aut_s().len(), 10);
        assert_eq!(sub.linking.object_count(), l.object_count());
    }

    #[test]
    fn sections_and_groupoids() {
        let (l, gd) = setup(builtin::symmetric(3).unwrap(), 3);
        let whole = Section::canonical(&l, &gd, &gd.gamma().whole()).unwrap();
        assert_eq!(whole.morphisms(), &[l.cat().id(l.s_object())]);
        let s = Section::canonical(&l, &gd, &Subgroup::trivial()).unwrap();
        assert_eq!(s.coset_count(), 2);
        for c in 0..2 {
            assert_eq!(s.coset_of(gd.theta_hat(s.sigma(c))), c);
        }
        let comps = enumerate_gh(&l, &gd, &s, l.s_object()).unwrap();
        assert_eq!(comps.coset_of_component.len(), 2);
        assert_eq!(enumerate_gh(&l, &gd, &whole, l.s_object()).unwrap().coset_of_component, [0]);

        let (l, gd) = setup(builtin::symmetric(5).unwrap(), 5);
        for h in group::subgroups_of(gd.gamma(), &gd.gamma().whole()) {
            let s = Section::canonical(&l, &gd, &h).unwrap();
            for a in 0..l.object_count() as u32 {
                let comps = enumerate_gh(&l, &gd, &s, a).unwrap();
                assert_eq!(comps.coset_of_component.len(), 4 / h.order());
            }
        }
    }
}
