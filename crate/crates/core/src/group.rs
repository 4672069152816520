//! Finite permutation groups, fully enumerated.
//!
//! Elements are stored in breadth-first discovery order from the identity,
//! so element 0 is always the identity. Products compose right to left:
//! `(a * b)(i) = a(b(i))`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub type Perm = Vec<u32>;

pub const DEFAULT_ELEMENT_CAP: usize = 100_000;
const TABLE_LIMIT: usize = 1500;

pub fn identity_perm(degree: usize) -> Perm {
    (0..degree as u32).collect()
}

pub fn compose(a: &[u32], b: &[u32]) -> Perm {
    b.iter().map(|&i| a[i as usize]).collect()
}

pub fn invert(a: &[u32]) -> Perm {
    let mut inv = vec![0u32; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

/// Builds a permutation of `0..degree` from disjoint cycles.
pub fn perm_from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Perm> {
    let mut p = identity_perm(degree);
    let mut seen = BTreeSet::new();
    for c in cycles {
        for (k, &x) in c.iter().enumerate() {
            if x as usize >= degree {
                return Err(Error::Invalid(alloc::format!("point {} outside degree {}", x, degree)));
            }
            if !seen.insert(x) {
                return Err(Error::Invalid(alloc::format!("point {} repeated in cycles", x)));
            }
            p[x as usize] = c[(k + 1) % c.len()];
        }
    }
    Ok(p)
}

/// A finite permutation group with every element materialized.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: BTreeMap<Perm, u32>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
    table: Option<Vec<u32>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.generators == other.generators
    }
}

impl Eq for FiniteGroup {}

/// Closure of `generators` acting on `0..degree`, with the default element cap.
pub fn generate_group(degree: usize, generators: &[Perm]) -> Result<FiniteGroup> {
    FiniteGroup::generate(degree, generators, DEFAULT_ELEMENT_CAP)
}

impl FiniteGroup {
    pub fn generate(degree: usize, generators: &[Perm], cap: usize) -> Result<FiniteGroup> {
        for g in generators {
            if g.len() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.len() });
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x as usize >= degree || seen[x as usize] {
                    return Err(Error::Invalid("generator is not a permutation".into()));
                }
                seen[x as usize] = true;
            }
        }
        let id = identity_perm(degree);
        let mut elements = vec![id.clone()];
        let mut index = BTreeMap::new();
        index.insert(id, 0u32);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for s in generators {
                let y = compose(&x, s);
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::ElementCapExceeded { cap });
                    }
                    index.insert(y.clone(), elements.len() as u32);
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let inverses = elements.iter().map(|e| index[&invert(e)]).collect();
        let mut g = FiniteGroup {
            degree,
            generators: generators.to_vec(),
            elements,
            index,
            inverses,
            orders: Vec::new(),
            table: None,
        };
        if n <= TABLE_LIMIT {
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    let c = compose(&g.elements[a], &g.elements[b]);
                    t[a * n + b] = g.index[&c];
                }
            }
            g.table = Some(t);
        }
        g.orders = (0..n as u32).map(|x| g.compute_order(x)).collect();
        Ok(g)
    }

    fn compute_order(&self, x: u32) -> u32 {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, x: u32) -> &Perm {
        &self.elements[x as usize]
    }

    pub fn index_of(&self, p: &[u32]) -> Option<u32> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => self.index[&compose(&self.elements[a as usize], &self.elements[b as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, x: u32, e: u32) -> u32 {
        (0..e).fold(0, |acc, _| self.mul(acc, x))
    }

    #[inline]
    pub fn elem_order(&self, x: u32) -> u32 {
        self.orders[x as usize]
    }

    /// Indices of the generators.
    pub fn generator_indices(&self) -> Vec<u32> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_indices();
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted((0..self.order() as u32).collect())
    }
}

/// A subgroup given by the sorted list of its member indices in the parent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    members: Vec<u32>,
}

impl Subgroup {
    pub fn from_sorted(members: Vec<u32>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subgroup { members }
    }

    pub fn from_unsorted(mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        members.dedup();
        Subgroup { members }
    }

    pub fn trivial() -> Self {
        Subgroup { members: vec![0] }
    }

    #[inline]
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    /// Checks closure under the parent operations.
    pub fn is_closed(&self, g: &FiniteGroup) -> bool {
        self.contains(0)
            && self.members.iter().all(|&a| {
                self.contains(g.inv(a)) && self.members.iter().all(|&b| self.contains(g.mul(a, b)))
            })
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_sorted(self.members.iter().copied().filter(|&x| other.contains(x)).collect())
    }
}

/// A homomorphism between subgroups given by its table of images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: Subgroup,
    pub target: Subgroup,
    pub images: BTreeMap<u32, u32>,
}

impl GroupHom {
    /// The conjugation `c_x : P -> Q`, `y -> x y x^-1`.
    pub fn conjugation(g: &FiniteGroup, x: u32, source: &Subgroup, target: &Subgroup) -> GroupHom {
        let images = source.members().iter().map(|&y| (y, g.conj(x, y))).collect();
        GroupHom { source: source.clone(), target: target.clone(), images }
    }

    pub fn apply(&self, y: u32) -> u32 {
        self.images[&y]
    }

    pub fn is_homomorphism(&self, g: &FiniteGroup) -> bool {
        self.images.values().all(|&v| self.target.contains(v))
            && self.source.members().iter().all(|&a| {
                self.source.members().iter().all(|&b| self.apply(g.mul(a, b)) == g.mul(self.apply(a), self.apply(b)))
            })
    }

    pub fn is_injective(&self) -> bool {
        let imgs: BTreeSet<u32> = self.images.values().copied().collect();
        imgs.len() == self.images.len()
    }
}

/// Subgroup generated by the given elements.
pub fn closure_of(g: &FiniteGroup, gens: &[u32]) -> Subgroup {
    let mut seen = BTreeSet::new();
    seen.insert(0u32);
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    Subgroup::from_sorted(seen.into_iter().collect())
}

/// Smallest subgroup containing both.
pub fn join(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut gens = generating_set(g, a);
    gens.extend(generating_set(g, b));
    closure_of(g, &gens)
}

/// A small generating set, found greedily in member order.
pub fn generating_set(g: &FiniteGroup, h: &Subgroup) -> Vec<u32> {
    let mut gens = Vec::new();
    let mut current = Subgroup::trivial();
    for &x in h.members() {
        if !current.contains(x) {
            gens.push(x);
            current = closure_of(g, &gens);
            if current.order() == h.order() {
                break;
            }
        }
    }
    gens
}

/// `x P x^-1`.
pub fn conjugate(g: &FiniteGroup, x: u32, p: &Subgroup) -> Subgroup {
    Subgroup::from_unsorted(p.members().iter().map(|&y| g.conj(x, y)).collect())
}

/// `N_G(P, Q) = { x : x P x^-1 <= Q }`, in element order.
pub fn transporter(g: &FiniteGroup, p: &Subgroup, q: &Subgroup) -> Vec<u32> {
    let gens = generating_set(g, p);
    (0..g.order() as u32).filter(|&x| gens.iter().all(|&y| q.contains(g.conj(x, y)))).collect()
}

/// Transporter restricted to elements of `within`.
pub fn transporter_in(g: &FiniteGroup, within: &Subgroup, p: &Subgroup, q: &Subgroup) -> Vec<u32> {
    let gens = generating_set(g, p);
    within.members().iter().copied().filter(|&x| gens.iter().all(|&y| q.contains(g.conj(x, y)))).collect()
}

pub fn normalizer(g: &FiniteGroup, p: &Subgroup) -> Subgroup {
    Subgroup::from_sorted(transporter(g, p, p))
}

pub fn normalizer_in(g: &FiniteGroup, within: &Subgroup, p: &Subgroup) -> Subgroup {
    Subgroup::from_sorted(transporter_in(g, within, p, p))
}

/// `C_G(P)`.
pub fn centralizer(g: &FiniteGroup, p: &Subgroup) -> Subgroup {
    centralizer_in(g, &g.whole(), p)
}

pub fn centralizer_in(g: &FiniteGroup, within: &Subgroup, p: &Subgroup) -> Subgroup {
    let gens = generating_set(g, p);
    Subgroup::from_sorted(
        within.members().iter().copied().filter(|&x| gens.iter().all(|&y| g.mul(x, y) == g.mul(y, x))).collect(),
    )
}

pub fn center(g: &FiniteGroup, p: &Subgroup) -> Subgroup {
    centralizer_in(g, p, p)
}

pub fn is_normal_in(g: &FiniteGroup, n: &Subgroup, a: &Subgroup) -> bool {
    let gens_a = generating_set(g, a);
    gens_a.iter().all(|&x| n.members().iter().all(|&y| n.contains(g.conj(x, y))))
}

/// Normal closure of `set` inside `a`.
pub fn normal_closure(g: &FiniteGroup, a: &Subgroup, set: &[u32]) -> Subgroup {
    let mut n = closure_of(g, set);
    loop {
        let gens_a = generating_set(g, a);
        let gens_n = generating_set(g, &n);
        let mut extra = Vec::new();
        for &x in &gens_a {
            for &y in &gens_n {
                let c = g.conj(x, y);
                if !n.contains(c) {
                    extra.push(c);
                }
            }
        }
        if extra.is_empty() {
            return n;
        }
        let mut all = gens_n;
        all.extend(extra);
        n = closure_of(g, &all);
    }
}

pub fn p_part(mut n: usize, p: u32) -> usize {
    let mut r = 1;
    while n % p as usize == 0 {
        n /= p as usize;
        r *= p as usize;
    }
    r
}

pub fn is_p_power(n: usize, p: u32) -> bool {
    p_part(n, p) == n
}

/// A Sylow `p`-subgroup, grown one factor of `p` at a time using the first
/// suitable element in element order.
pub fn sylow_subgroup(g: &FiniteGroup, p: u32) -> Subgroup {
    sylow_subgroup_of(g, &g.whole(), p)
}

pub fn sylow_subgroup_of(g: &FiniteGroup, a: &Subgroup, p: u32) -> Subgroup {
    let target = p_part(a.order(), p);
    let mut s = Subgroup::trivial();
    while s.order() < target {
        let n = normalizer_in(g, a, &s);
        let x = n
            .members()
            .iter()
            .copied()
            .find(|&x| !s.contains(x) && s.contains(g.pow(x, p)) && is_p_power(g.elem_order(x) as usize, p))
            .or_else(|| {
                n.members().iter().copied().find(|&x| !s.contains(x) && s.contains(g.pow(x, p)))
            })
            .expect("normalizer of a non-Sylow p-subgroup has a p-element outside it");
        let mut gens = generating_set(g, &s);
        gens.push(x);
        s = closure_of(g, &gens);
    }
    s
}

/// `C'`: the elements of `c` of order prime to `p`, checked to satisfy
/// `C = Z(P) x C'`.
pub fn p_prime_complement(g: &FiniteGroup, c: &Subgroup, p: &Subgroup, prime: u32) -> Result<Subgroup> {
    let comp = Subgroup::from_sorted(
        c.members().iter().copied().filter(|&x| g.elem_order(x) % prime != 0).collect(),
    );
    if !comp.is_closed(g) {
        return Err(Error::NotPCentric);
    }
    let z = center(g, p);
    if !z.is_subgroup_of(c) || z.order() * comp.order() != c.order() {
        return Err(Error::NotPCentric);
    }
    let commute = z.members().iter().all(|&a| comp.members().iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
    if !commute {
        return Err(Error::NotPCentric);
    }
    Ok(comp)
}

/// Every subgroup of `s`, ordered by order then by member list.
pub fn subgroups_of(g: &FiniteGroup, s: &Subgroup) -> Vec<Subgroup> {
    let mut found: BTreeSet<Subgroup> = BTreeSet::new();
    let mut cyclic: BTreeSet<Subgroup> = BTreeSet::new();
    for &x in s.members() {
        cyclic.insert(closure_of(g, &[x]));
    }
    let cyclic: Vec<Subgroup> = cyclic.into_iter().collect();
    let mut frontier: Vec<Subgroup> = cyclic.clone();
    found.extend(cyclic.iter().cloned());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for c in &cyclic {
                if c.is_subgroup_of(h) {
                    continue;
                }
                let j = join(g, h, c);
                if !found.contains(&j) {
                    found.insert(j.clone());
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut all: Vec<Subgroup> = found.into_iter().collect();
    all.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
    all
}

/// Left cosets `xH` of `h` inside `a`, each sorted, ordered by least member.
pub fn left_cosets(g: &FiniteGroup, a: &Subgroup, h: &Subgroup) -> Vec<Vec<u32>> {
    let mut seen = BTreeSet::new();
    let mut cosets = Vec::new();
    for &x in a.members() {
        if seen.contains(&x) {
            continue;
        }
        let mut c: Vec<u32> = h.members().iter().map(|&y| g.mul(x, y)).collect();
        c.sort_unstable();
        seen.extend(c.iter().copied());
        cosets.push(c);
    }
    cosets
}

/// Double cosets `H x K` inside `a`, ordered by least member.
pub fn double_cosets(g: &FiniteGroup, a: &Subgroup, h: &Subgroup, k: &Subgroup) -> Vec<Vec<u32>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &x in a.members() {
        if seen.contains(&x) {
            continue;
        }
        let mut d = BTreeSet::new();
        for &y in h.members() {
            for &z in k.members() {
                d.insert(g.mul(g.mul(y, x), z));
            }
        }
        seen.extend(d.iter().copied());
        out.push(d.into_iter().collect());
    }
    out
}

/// `A/N` as a permutation group on the left cosets of `n`, together with the
/// projection of each member of `a` (as pairs `member -> quotient index`).
pub fn quotient(g: &FiniteGroup, a: &Subgroup, n: &Subgroup) -> (FiniteGroup, BTreeMap<u32, u32>) {
    let cosets = left_cosets(g, a, n);
    let mut coset_of = BTreeMap::new();
    for (i, c) in cosets.iter().enumerate() {
        for &x in c {
            coset_of.insert(x, i as u32);
        }
    }
    let act = |x: u32| -> Perm { cosets.iter().map(|c| coset_of[&g.mul(x, c[0])]).collect() };
    let gens: Vec<Perm> = generating_set(g, a).into_iter().map(act).collect();
    let q = FiniteGroup::generate(cosets.len(), &gens, DEFAULT_ELEMENT_CAP).expect("quotient is no larger than its source");
    let proj = a.members().iter().map(|&x| (x, q.index_of(&act(x)).expect("coset action lies in the quotient"))).collect();
    (q, proj)
}

/// Largest normal p-subgroup of `a`.
pub fn o_p(g: &FiniteGroup, a: &Subgroup, p: u32) -> Subgroup {
    let s = sylow_subgroup_of(g, a, p);
    let mut core = s.clone();
    for &x in a.members() {
        core = core.intersection(&conjugate(g, x, &s));
    }
    core
}

/// Subgroup generated by the elements of `a` of order prime to `p`.
pub fn o_to_the_p(g: &FiniteGroup, a: &Subgroup, p: u32) -> Subgroup {
    let gens: Vec<u32> = a.members().iter().copied().filter(|&x| g.elem_order(x) % p != 0).collect();
    closure_of(g, &gens)
}

/// Subgroup generated by the `p`-elements of `a`.
pub fn o_to_the_p_prime(g: &FiniteGroup, a: &Subgroup, p: u32) -> Subgroup {
    let gens: Vec<u32> =
        a.members().iter().copied().filter(|&x| is_p_power(g.elem_order(x) as usize, p)).collect();
    closure_of(g, &gens)
}

/// Named groups accepted in group files.
pub mod builtin {
    use super::*;

    pub fn symmetric(n: usize) -> Result<FiniteGroup> {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(perm_from_cycles(n, &[vec![0, 1]])?);
        }
        if n >= 3 {
            gens.push(perm_from_cycles(n, &[(0..n as u32).collect()])?);
        }
        generate_group(n, &gens)
    }

    pub fn alternating(n: usize) -> Result<FiniteGroup> {
        let mut gens = Vec::new();
        for k in 2..n as u32 {
            gens.push(perm_from_cycles(n, &[vec![0, 1, k]])?);
        }
        generate_group(n, &gens)
    }

    /// Dihedral group of order `order`, acting on `order / 2` points.
    pub fn dihedral(order: usize) -> Result<FiniteGroup> {
        if order < 2 || order % 2 != 0 {
            return Err(Error::Invalid(alloc::format!("dihedral order {} must be even", order)));
        }
        let m = order / 2;
        if m == 1 {
            return generate_group(2, &[vec![1, 0]]);
        }
        if m == 2 {
            let a = perm_from_cycles(4, &[vec![0, 1], vec![2, 3]])?;
            let b = perm_from_cycles(4, &[vec![0, 2], vec![1, 3]])?;
            return generate_group(4, &[a, b]);
        }
        let rot: Perm = (0..m as u32).map(|i| (i + 1) % m as u32).collect();
        let refl: Perm = (0..m as u32).map(|i| (m as u32 - i) % m as u32).collect();
        generate_group(m, &[rot, refl])
    }

    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::Invalid("cyclic group of order 0".into()));
        }
        let rot: Perm = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        generate_group(n, &[rot])
    }

    /// `GL_n(F_q)` for prime `q`, acting on the nonzero column vectors,
    /// numbered by their base-`q` value minus one.
    pub fn general_linear(n: usize, q: u32) -> Result<FiniteGroup> {
        if !crate::linalg::is_prime(q) {
            return Err(Error::Invalid(alloc::format!("gl requires a prime field, got {}", q)));
        }
        if n == 0 {
            return Err(Error::Invalid("gl of dimension 0".into()));
        }
        let count = (q as usize).pow(n as u32);
        let decode = |v: usize| -> Vec<u32> {
            let mut x = v;
            (0..n)
                .map(|_| {
                    let d = (x % q as usize) as u32;
                    x /= q as usize;
                    d
                })
                .collect()
        };
        let encode = |c: &[u32]| -> usize { c.iter().rev().fold(0usize, |acc, &d| acc * q as usize + d as usize) };
        let act = |m: &[Vec<u32>]| -> Perm {
            (1..count)
                .map(|v| {
                    let x = decode(v);
                    let y: Vec<u32> =
                        (0..n).map(|i| (0..n).map(|j| m[i][j] * x[j]).sum::<u32>() % q).collect();
                    (encode(&y) - 1) as u32
                })
                .collect()
        };
        let ident = |k: usize| -> Vec<Vec<u32>> {
            (0..k).map(|i| (0..k).map(|j| u32::from(i == j)).collect()).collect()
        };
        let mut gens = Vec::new();
        let omega = (1..q).find(|&w| (1..q - 1).all(|e| crate::linalg::Fp::new(q).pow(w, e as u64) != 1)).unwrap_or(1);
        if q > 2 {
            let mut d = ident(n);
            d[0][0] = omega;
            gens.push(act(&d));
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut e = ident(n);
                    e[i][j] = 1;
                    gens.push(act(&e));
                }
            }
        }
        generate_group(count - 1, &gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cs: &[&[u32]]) -> Perm {
        perm_from_cycles(n, &cs.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn generated_orders() {
        let s3 = generate_group(3, &[cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(s3.order(), 6);
        let triv = generate_group(4, &[]).unwrap();
        assert_eq!(triv.order(), 1);
        let d8 = generate_group(4, &[cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[0, 2]])]).unwrap();
        assert_eq!(d8.order(), 8);
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let r = generate_group(3, &[vec![1, 0]]);
        assert_eq!(r.unwrap_err(), Error::DegreeMismatch { expected: 3, found: 2 });
    }

    #[test]
    fn element_cap() {
        let r = FiniteGroup::generate(5, &[cyc(5, &[&[0, 1]]), cyc(5, &[&[0, 1, 2, 3, 4]])], 50);
        assert_eq!(r.unwrap_err(), Error::ElementCapExceeded { cap: 50 });
    }

    #[test]
    fn sylow_orders() {
        let s3 = builtin::symmetric(3).unwrap();
        assert_eq!(sylow_subgroup(&s3, 3).order(), 3);
        let s4 = builtin::symmetric(4).unwrap();
        assert_eq!(sylow_subgroup(&s4, 2).order(), 8);
        let a4 = builtin::alternating(4).unwrap();
        let v4 = sylow_subgroup(&a4, 2);
        assert_eq!(v4.order(), 4);
        assert!(v4.members().iter().all(|&x| a4.elem_order(x) <= 2));
        assert!(sylow_subgroup(&s3, 5).is_trivial());
    }

    #[test]
    fn transporter_of_transpositions_in_s3() {
        let s3 = builtin::symmetric(3).unwrap();
        let t01 = s3.index_of(&cyc(3, &[&[0, 1]])).unwrap();
        let t02 = s3.index_of(&cyc(3, &[&[0, 2]])).unwrap();
        let p = closure_of(&s3, &[t01]);
        let q = closure_of(&s3, &[t02]);
        let n = transporter(&s3, &p, &q);
        let brute: Vec<u32> =
            (0..6).filter(|&x| p.members().iter().all(|&y| q.contains(s3.conj(x, y)))).collect();
        assert_eq!(n, brute);
        assert_eq!(n.len(), 2);
        let c3 = sylow_subgroup(&s3, 3);
        assert_eq!(transporter(&s3, &c3, &c3).len(), 6);
        assert_eq!(transporter(&s3, &s3.whole(), &s3.whole()).len(), 6);
    }

    #[test]
    fn centralizers_and_centers() {
        let s3 = builtin::symmetric(3).unwrap();
        let c3 = sylow_subgroup(&s3, 3);
        assert_eq!(centralizer(&s3, &c3).order(), 3);
        let d8 = builtin::dihedral(8).unwrap();
        assert_eq!(center(&d8, &d8.whole()).order(), 2);
        let s4 = builtin::symmetric(4).unwrap();
        let v = closure_of(
            &s4,
            &[s4.index_of(&cyc(4, &[&[0, 1], &[2, 3]])).unwrap(), s4.index_of(&cyc(4, &[&[0, 2], &[1, 3]])).unwrap()],
        );
        assert_eq!(normalizer(&s4, &v).order(), 24);
    }

    #[test]
    fn p_prime_complements() {
        let s3 = builtin::symmetric(3).unwrap();
        let c3 = sylow_subgroup(&s3, 3);
        let c = centralizer(&s3, &c3);
        assert!(p_prime_complement(&s3, &c, &c3, 3).unwrap().is_trivial());
        let s4 = builtin::symmetric(4).unwrap();
        let t = closure_of(&s4, &[s4.index_of(&cyc(4, &[&[0, 1]])).unwrap()]);
        let c = centralizer(&s4, &t);
        assert_eq!(p_prime_complement(&s4, &c, &t, 2), Err(Error::NotPCentric));
        let d8 = builtin::dihedral(8).unwrap();
        let z = center(&d8, &d8.whole());
        assert!(p_prime_complement(&d8, &z, &d8.whole(), 2).unwrap().is_trivial());
    }

    #[test]
    fn subgroup_lattice_of_d8() {
        let d8 = builtin::dihedral(8).unwrap();
        let subs = subgroups_of(&d8, &d8.whole());
        assert_eq!(subs.len(), 10);
        for s in &subs {
            assert!(s.is_closed(&d8));
            assert_eq!(8 % s.order(), 0);
        }
    }

    #[test]
    fn builtin_orders() {
        assert_eq!(builtin::symmetric(5).unwrap().order(), 120);
        assert_eq!(builtin::alternating(5).unwrap().order(), 60);
        assert_eq!(builtin::cyclic(7).unwrap().order(), 7);
        assert_eq!(builtin::general_linear(3, 2).unwrap().order(), 168);
        assert_eq!(builtin::general_linear(2, 3).unwrap().order(), 48);
        assert_eq!(builtin::dihedral(4).unwrap().order(), 4);
    }

    #[test]
    fn quotient_of_s4_by_v4() {
        let s4 = builtin::symmetric(4).unwrap();
        let a4 = builtin::alternating(4).unwrap();
        let v_in_a4 = sylow_subgroup(&a4, 2);
        let v: Vec<u32> = v_in_a4.members().iter().map(|&x| s4.index_of(a4.element(x)).unwrap()).collect();
        let v = Subgroup::from_unsorted(v);
        let (q, proj) = quotient(&s4, &s4.whole(), &v);
        assert_eq!(q.order(), 6);
        assert_eq!(proj.len(), 24);
        for a in 0..24u32 {
            for b in 0..24u32 {
                assert_eq!(proj[&s4.mul(a, b)], q.mul(proj[&a], proj[&b]));
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]
            #[test]
            fn transporter_to_self_is_normalizer(i in 0usize..30) {
                let s4 = builtin::symmetric(4).unwrap();
                let subs = subgroups_of(&s4, &sylow_subgroup(&s4, 2));
                let p = &subs[i % subs.len()];
                prop_assert_eq!(transporter(&s4, p, p), normalizer(&s4, p).members().to_vec());
            }

            #[test]
            fn hom_count_times_centralizer(i in 0usize..30, j in 0usize..30) {
                let s4 = builtin::symmetric(4).unwrap();
                let subs = subgroups_of(&s4, &sylow_subgroup(&s4, 2));
                let p = &subs[i % subs.len()];
                let q = &subs[j % subs.len()];
                let n = transporter(&s4, p, q);
                let c = centralizer(&s4, p);
                let classes: BTreeSet<Vec<u32>> = n.iter().map(|&x| {
                    let mut v: Vec<u32> = p.members().iter().map(|&y| s4.conj(x, y)).collect();
                    v.truncate(v.len());
                    v
                }).collect();
                prop_assert_eq!(classes.len() * c.order(), n.len());
            }

            #[test]
            fn complement_iff_center_is_sylow(i in 0usize..30) {
                let s4 = builtin::symmetric(4).unwrap();
                let subs = subgroups_of(&s4, &sylow_subgroup(&s4, 2));
                let p = &subs[i % subs.len()];
                let c = centralizer(&s4, p);
                let z = center(&s4, p);
                let z_is_sylow = z.order() == p_part(c.order(), 2);
                prop_assert_eq!(p_prime_complement(&s4, &c, p, 2).is_ok(), z_is_sylow);
            }
        }
    }
}
