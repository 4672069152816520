//! Normalized bar complex of a group with trivial `F_p` coefficients, and its
//! subcomplex of cochains invariant under a group of automorphisms.

use std::collections::{HashMap, HashSet};

use super::modp::sparse_rank;
use super::PermGroup;

/// Dimensions of `H^n(K; F_p)^A` for `n ≤ maxdeg`, where `K` is given by its
/// members in `g` and `A` acts through conjugation by `acting`.
///
/// The image of `A` in `Aut(K)` must have order prime to `p`; the invariant
/// cochains then compute the invariants of cohomology.
pub fn invariant_dims(g: &PermGroup, k: &[u32], acting: &[u32], p: u32, maxdeg: usize) -> Result<Vec<usize>, String> {
    let nonid: Vec<u32> = k.iter().copied().filter(|&x| x != 0).collect();
    let pos: HashMap<u32, usize> = nonid.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut autos: HashSet<Vec<usize>> = HashSet::new();
    for &a in acting {
        let img: Vec<usize> = nonid.iter().map(|&x| pos[&g.mul(g.mul(a, x), g.inv(a))]).collect();
        autos.insert(img);
    }
    let autos: Vec<Vec<usize>> = autos.into_iter().collect();
    if autos.len() as u32 % p == 0 {
        return Err(format!("acting group of order {} is not prime to {}", autos.len(), p));
    }
    let m = nonid.len();
    let orbits: Vec<Orbits> = (0..=maxdeg + 1).map(|n| Orbits::new(m, n, &autos)).collect();
    let mut ranks = Vec::with_capacity(maxdeg + 1);
    for n in 0..=maxdeg {
        ranks.push(coboundary_rank(g, &nonid, &pos, &orbits[n], &orbits[n + 1], p));
    }
    Ok((0..=maxdeg)
        .map(|n| orbits[n].reps.len() - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] })
        .collect())
}

/// Dimensions of `H^n(G; F_p)` for `n ≤ maxdeg` from the normalized bar complex.
pub fn bar_dims(g: &PermGroup, p: u32, maxdeg: usize) -> Vec<usize> {
    let all: Vec<u32> = (0..g.order() as u32).collect();
    invariant_dims(g, &all, &[0], p, maxdeg).expect("trivial action")
}

/// Orbits of `A` on tuples of length `n` over `m` letters, tuples encoded base `m`.
struct Orbits {
    n: usize,
    m: usize,
    orbit_of: Vec<u32>,
    reps: Vec<usize>,
}

impl Orbits {
    fn new(m: usize, n: usize, autos: &[Vec<usize>]) -> Orbits {
        let total = m.checked_pow(n as u32).expect("tuple count overflows");
        let mut orbit_of = vec![u32::MAX; total];
        let mut reps = Vec::new();
        for code in 0..total {
            if orbit_of[code] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(code);
            let t = decode(code, m, n);
            for a in autos {
                let img: Vec<usize> = t.iter().map(|&x| a[x]).collect();
                orbit_of[encode(&img, m)] = id;
            }
        }
        Orbits { n, m, orbit_of, reps }
    }
}

fn decode(mut code: usize, m: usize, n: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for i in (0..n).rev() {
        t[i] = code % m;
        code /= m;
    }
    t
}

fn encode(t: &[usize], m: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * m + x)
}

fn coboundary_rank(
    g: &PermGroup,
    nonid: &[u32],
    pos: &HashMap<u32, usize>,
    src: &Orbits,
    tgt: &Orbits,
    p: u32,
) -> usize {
    let n = src.n;
    let rows: Vec<Vec<(usize, u32)>> = tgt
        .reps
        .iter()
        .map(|&code| {
            let t = decode(code, tgt.m, n + 1);
            let mut row = Vec::new();
            for i in 0..=n + 1 {
                let face: Option<Vec<usize>> = if i == 0 {
                    Some(t[1..].to_vec())
                } else if i == n + 1 {
                    Some(t[..n].to_vec())
                } else {
                    let prod = g.mul(nonid[t[i - 1]], nonid[t[i]]);
                    pos.get(&prod).map(|&x| {
                        let mut f = t[..i - 1].to_vec();
                        f.push(x);
                        f.extend_from_slice(&t[i + 1..]);
                        f
                    })
                };
                if let Some(f) = face {
                    let sign = if i % 2 == 0 { 1 } else { p - 1 };
                    row.push((src.orbit_of[encode(&f, src.m)] as usize, sign));
                }
            }
            row
        })
        .collect();
    sparse_rank(&rows, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> PermGroup {
        PermGroup::generate(n, &[(0..n as u32).map(|i| (i + 1) % n as u32).collect()])
    }

    #[test]
    fn cyclic_groups() {
        assert_eq!(bar_dims(&cyclic(3), 3, 4), vec![1, 1, 1, 1, 1]);
        assert_eq!(bar_dims(&cyclic(3), 2, 3), vec![1, 0, 0, 0]);
        assert_eq!(bar_dims(&cyclic(4), 2, 3), vec![1, 1, 1, 1]);
    }

    #[test]
    fn klein_four_mod_two() {
        let v4 = PermGroup::generate(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]);
        assert_eq!(bar_dims(&v4, 2, 3), vec![1, 2, 3, 4]);
    }

    #[test]
    fn inversion_invariants_of_z3() {
        let s3 = PermGroup::generate(3, &[vec![1, 0, 2], vec![1, 2, 0]]);
        let c3: Vec<u32> = (0..6).filter(|&x| s3.mul(s3.mul(x, x), x) == 0).collect();
        let all: Vec<u32> = (0..6).collect();
        assert_eq!(invariant_dims(&s3, &c3, &all, 3, 4).unwrap(), vec![1, 0, 0, 1, 1]);
        assert!(invariant_dims(&s3, &c3, &all, 2, 1).is_err());
    }
}
