//! A free `F_p[G]`-resolution of the trivial module, built by lifting kernels.
//!
//! `P_n = F_p[G]^{r_n}`; a vector of `P_n` has entry `b·|G| + h` for the
//! coefficient of `h e_b`, and `g` acts by `h e_b ↦ gh e_b`.

use super::modp::{nullspace, sparse_rank, Span};
use super::PermGroup;

pub struct FreeResolution {
    p: u32,
    order: usize,
    /// `images[n][j]`: boundary of the `j`-th generator of `P_{n+1}`, in `P_n`.
    images: Vec<Vec<Vec<u32>>>,
}

impl FreeResolution {
    /// Builds `P_0, ..., P_top`.
    pub fn build(g: &PermGroup, p: u32, top: usize) -> FreeResolution {
        let order = g.order();
        let mut images: Vec<Vec<Vec<u32>>> = Vec::new();
        let mut rank = 1usize;
        let mut rows: Vec<Vec<u32>> = vec![vec![1; order]];
        for _ in 0..top {
            let kernel = nullspace(&rows, rank * order, p);
            let mut span = Span::new(p);
            let mut gens = Vec::new();
            for w in &kernel {
                if span.dim() == kernel.len() {
                    break;
                }
                if span.contains(w) {
                    continue;
                }
                for x in 0..order as u32 {
                    span.insert(&act(g, x, w, rank));
                }
                gens.push(w.clone());
            }
            rows = boundary_rows(g, &gens, rank);
            rank = gens.len();
            images.push(gens);
        }
        FreeResolution { p, order, images }
    }

    pub fn ranks(&self) -> Vec<usize> {
        std::iter::once(1).chain(self.images.iter().map(Vec::len)).collect()
    }

    /// `dim H^n(G; F_p)` for `n < top`.
    pub fn dims(&self) -> Vec<usize> {
        let ranks = self.ranks();
        let induced: Vec<usize> = (0..self.images.len())
            .map(|n| {
                let rows: Vec<Vec<(usize, u32)>> = self.images[n]
                    .iter()
                    .map(|v| {
                        (0..ranks[n])
                            .map(|b| {
                                let s = v[b * self.order..(b + 1) * self.order].iter().map(|&x| x as u64).sum::<u64>();
                                (b, (s % self.p as u64) as u32)
                            })
                            .filter(|&(_, x)| x != 0)
                            .collect()
                    })
                    .collect();
                sparse_rank(&rows, self.p)
            })
            .collect();
        (0..self.images.len())
            .map(|n| ranks[n] - induced[n] - if n == 0 { 0 } else { induced[n - 1] })
            .collect()
    }
}

fn act(g: &PermGroup, x: u32, v: &[u32], rank: usize) -> Vec<u32> {
    let order = g.order();
    let mut out = vec![0u32; v.len()];
    for b in 0..rank {
        for h in 0..order {
            let c = v[b * order + h];
            if c != 0 {
                out[b * order + g.mul(x, h as u32) as usize] = c;
            }
        }
    }
    out
}

/// Rows of the `F_p`-matrix of `P_{n+1} -> P_n`, columns indexed by `(j, g)`.
fn boundary_rows(g: &PermGroup, gens: &[Vec<u32>], rank: usize) -> Vec<Vec<u32>> {
    let order = g.order();
    let mut rows = vec![vec![0u32; gens.len() * order]; rank * order];
    for (j, w) in gens.iter().enumerate() {
        for x in 0..order as u32 {
            for (r, &c) in act(g, x, w, rank).iter().enumerate() {
                rows[r][j * order + x as usize] = c;
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::bar::bar_dims;

    #[test]
    fn agrees_with_the_bar_complex() {
        let s3 = PermGroup::generate(3, &[vec![1, 0, 2], vec![1, 2, 0]]);
        for p in [2, 3] {
            assert_eq!(FreeResolution::build(&s3, p, 5).dims(), bar_dims(&s3, p, 4));
        }
        let a4 = PermGroup::generate(4, &[vec![1, 2, 0, 3], vec![1, 3, 2, 0]]);
        assert_eq!(a4.order(), 12);
        assert_eq!(FreeResolution::build(&a4, 2, 4).dims(), bar_dims(&a4, 2, 3));
    }

    #[test]
    fn boundaries_compose_to_zero() {
        let s3 = PermGroup::generate(3, &[vec![1, 0, 2], vec![1, 2, 0]]);
        let r = FreeResolution::build(&s3, 3, 4);
        for n in 1..r.images.len() {
            let rows = boundary_rows(&s3, &r.images[n - 1], r.ranks()[n - 1]);
            for v in &r.images[n] {
                for row in &rows {
                    let s: u64 = row.iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                    assert_eq!(s % 3, 0);
                }
            }
        }
    }
}
