//! A projective resolution of the constant functor by sums of representables,
//! with chain maps to and from the normalized bar resolution.
//!
//! Degree `n` is `Q_n = ⊕_j F_p[Mor(a_j, -)]`. A basis of `Q_n(x)` is the pairs
//! `(j, β)` with `β : a_j -> x`. Generator `j` of degree `n` has boundary
//! `k_j ∈ Q_{n-1}(a_j)`, and in degree zero `k_j` is a scalar of the constant functor.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::category::FinCat;
use crate::coefficients::CoefficientSystem;
use crate::error::{Error, Result};
use crate::linalg::{image_section, kernel, Echelon, Fp, Matrix};

use super::chains::Chain;

pub const DEFAULT_DIMENSION_CAP: usize = 6000;

#[derive(Clone, Debug)]
pub struct Generator {
    pub object: u32,
    pub boundary: Vec<u32>,
}

/// An element of the bar resolution at the generator's object: chains with coefficients.
pub type BarElement = Vec<(Chain, u32)>;

#[derive(Debug)]
pub struct Resolution {
    cat: FinCat,
    field: Fp,
    gens: Vec<Vec<Generator>>,
    offsets: Vec<Vec<Vec<usize>>>,
    dims: Vec<Vec<usize>>,
    /// `homotopy[n + 1][x]` is `h_n(x) : Q_n(x) -> Q_{n+1}(x)`, starting at `n = -1`.
    homotopy: Vec<Vec<Matrix>>,
    to_bar: RefCell<Vec<Rc<Vec<BarElement>>>>,
    from_bar: RefCell<Vec<BTreeMap<Chain, Rc<Vec<u32>>>>>,
}

impl Resolution {
    /// Resolution through degree `top`.
    pub fn build(cat: &FinCat, field: Fp, top: usize, cap: usize) -> Result<Resolution> {
        let nobj = cat.object_count();
        let mut r = Resolution {
            cat: cat.clone(),
            field,
            gens: Vec::new(),
            offsets: Vec::new(),
            dims: Vec::new(),
            homotopy: Vec::new(),
            to_bar: RefCell::new(Vec::new()),
            from_bar: RefCell::new(vec![BTreeMap::new(); top + 1]),
        };
        let mut kernels: Vec<Vec<Vec<u32>>> = vec![vec![vec![1]]; nobj];
        let mut ambient: Vec<usize> = vec![1; nobj];
        let mut boundaries: Vec<Vec<Matrix>> = Vec::new();
        for n in 0..=top {
            let gens = r.select(n, &kernels, &ambient);
            r.push_degree(gens, cap)?;
            let bd: Vec<Matrix> = (0..nobj as u32).map(|x| r.boundary_matrix(n, x)).collect();
            kernels = bd.iter().map(|m| kernel(m, field)).collect();
            ambient = r.dims[n].clone();
            boundaries.push(bd);
        }
        r.homotopy.push(boundaries[0].iter().map(|e| image_section(e, field)).collect());
        for n in 0..top {
            let row = (0..nobj)
                .map(|x| {
                    let d = r.dims[n][x];
                    let proj = Matrix::identity(d).sub(&r.homotopy[n][x].mul(&boundaries[n][x], field), field);
                    image_section(&boundaries[n + 1][x], field).mul(&proj, field)
                })
                .collect();
            r.homotopy.push(row);
        }
        Ok(r)
    }

    fn select(&self, n: usize, kernels: &[Vec<Vec<u32>>], ambient: &[usize]) -> Vec<Generator> {
        let cat = &self.cat;
        let mut spans: Vec<Echelon> = ambient.iter().map(|&d| Echelon::new(self.field, d, 0)).collect();
        let mut gens = Vec::new();
        for a in 0..cat.object_count() as u32 {
            for k in &kernels[a as usize] {
                if spans[a as usize].contains(k) {
                    continue;
                }
                for x in 0..cat.object_count() as u32 {
                    for &beta in cat.hom(a, x) {
                        let v = self.act_below(n, beta, k);
                        spans[x as usize].insert(&v);
                    }
                }
                gens.push(Generator { object: a, boundary: k.clone() });
            }
        }
        gens
    }

    fn push_degree(&mut self, gens: Vec<Generator>, cap: usize) -> Result<()> {
        let nobj = self.cat.object_count();
        let mut offsets = vec![Vec::with_capacity(gens.len()); nobj];
        let mut dims = vec![0usize; nobj];
        for g in &gens {
            for x in 0..nobj {
                offsets[x].push(dims[x]);
                dims[x] += self.cat.hom(g.object, x as u32).len();
            }
        }
        if let Some(&big) = dims.iter().max() {
            if big > cap {
                return Err(Error::DegreeCapExceeded { rows: big, cap });
            }
        }
        self.gens.push(gens);
        self.offsets.push(offsets);
        self.dims.push(dims);
        Ok(())
    }

    /// `Q_{n-1}(β)`, where `Q_{-1}` is the constant functor.
    fn act_below(&self, n: usize, beta: u32, v: &[u32]) -> Vec<u32> {
        if n == 0 {
            v.to_vec()
        } else {
            self.act(n - 1, beta, v)
        }
    }

    pub fn cat(&self) -> &FinCat {
        &self.cat
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn top(&self) -> usize {
        self.gens.len() - 1
    }

    pub fn generators(&self, n: usize) -> &[Generator] {
        &self.gens[n]
    }

    pub fn generator_counts(&self) -> Vec<usize> {
        self.gens.iter().map(Vec::len).collect()
    }

    pub fn dim(&self, n: usize, x: u32) -> usize {
        self.dims[n][x as usize]
    }

    /// Basis index of `(j, β)` in `Q_n(tgt β)`.
    pub fn index(&self, n: usize, j: usize, beta: u32) -> usize {
        self.offsets[n][self.cat.tgt(beta) as usize][j] + self.cat.hom_pos(beta)
    }

    /// `Q_n(γ) : Q_n(x) -> Q_n(y)` for `γ : x -> y`.
    pub fn act(&self, n: usize, gamma: u32, v: &[u32]) -> Vec<u32> {
        let cat = &self.cat;
        let (x, y) = (cat.src(gamma), cat.tgt(gamma));
        let mut out = vec![0u32; self.dim(n, y)];
        for (j, g) in self.gens[n].iter().enumerate() {
            let base = self.offsets[n][x as usize][j];
            for (pos, &beta) in cat.hom(g.object, x).iter().enumerate() {
                let c = v[base + pos];
                if c != 0 {
                    let i = self.index(n, j, cat.compose(gamma, beta));
                    out[i] = self.field.add(out[i], c);
                }
            }
        }
        out
    }

    /// `∂_n(x) : Q_n(x) -> Q_{n-1}(x)`; for `n = 0` the augmentation.
    pub fn boundary_matrix(&self, n: usize, x: u32) -> Matrix {
        let rows = if n == 0 { 1 } else { self.dim(n - 1, x) };
        let mut cols = Vec::with_capacity(self.dim(n, x));
        for g in &self.gens[n] {
            for &beta in self.cat.hom(g.object, x) {
                cols.push(self.act_below(n, beta, &g.boundary));
            }
        }
        Matrix::from_columns(rows, &cols)
    }

    /// `h_n(x)` for `n ≥ -1`, given as `n + 1`.
    pub fn homotopy(&self, shifted: usize, x: u32) -> &Matrix {
        &self.homotopy[shifted][x as usize]
    }

    /// Image of generator `e_j` of degree `n` in the bar resolution.
    pub fn to_bar(&self, n: usize) -> Rc<Vec<BarElement>> {
        loop {
            let have = self.to_bar.borrow().len();
            if have > n {
                return self.to_bar.borrow()[n].clone();
            }
            let level = self.to_bar_level(have);
            self.to_bar.borrow_mut().push(Rc::new(level));
        }
    }

    fn to_bar_level(&self, n: usize) -> Vec<BarElement> {
        let f = self.field;
        if n == 0 {
            return self.gens[0].iter().map(|g| vec![(Chain::object(g.object), g.boundary[0])]).collect();
        }
        let below = self.to_bar(n - 1);
        let sign = f.sign(n);
        self.gens[n]
            .iter()
            .map(|g| {
                let mut acc: BTreeMap<Chain, u32> = BTreeMap::new();
                for (i, gi) in self.gens[n - 1].iter().enumerate() {
                    let base = self.offsets[n - 1][g.object as usize][i];
                    for (pos, &gamma) in self.cat.hom(gi.object, g.object).iter().enumerate() {
                        let c = g.boundary[base + pos];
                        if c == 0 || self.cat.is_identity(gamma) {
                            continue;
                        }
                        let c = f.mul(sign, c);
                        for (lam, c2) in below[i].iter() {
                            let e = acc.entry(lam.push(gamma)).or_insert(0);
                            *e = f.add(*e, f.mul(c, *c2));
                        }
                    }
                }
                acc.into_iter().filter(|&(_, c)| c != 0).collect()
            })
            .collect()
    }

    /// Image of the chain `λ` (with trailing identity) in `Q_n(last λ)`.
    pub fn from_bar(&self, lam: &Chain) -> Rc<Vec<u32>> {
        let n = lam.degree();
        if let Some(v) = self.from_bar.borrow()[n].get(lam) {
            return v.clone();
        }
        let f = self.field;
        let cat = &self.cat;
        let x = lam.last(cat);
        let v = if n == 0 {
            self.homotopy[0][x as usize].col(0)
        } else {
            let mut u = vec![0u32; self.dim(n - 1, x)];
            for i in 0..n {
                if let Some(face) = lam.face(cat, i) {
                    f.axpy(&mut u, f.sign(i), &self.from_bar(&face));
                }
            }
            let face = lam.face(cat, n).expect("last face is never degenerate");
            let moved = self.act(n - 1, lam.mors[n - 1], &self.from_bar(&face));
            f.axpy(&mut u, f.sign(n), &moved);
            self.homotopy[n][x as usize].mul_vec(&u, f)
        };
        let v = Rc::new(v);
        self.from_bar.borrow_mut()[n].insert(lam.clone(), v.clone());
        v
    }

    /// Offsets of `Hom(Q_n, M) = ⊕_j M(a_j)`.
    pub fn cochain_offsets(&self, n: usize, m: &CoefficientSystem) -> (Vec<usize>, usize) {
        let mut offs = Vec::with_capacity(self.gens[n].len());
        let mut total = 0;
        for g in &self.gens[n] {
            offs.push(total);
            total += m.dim(g.object);
        }
        (offs, total)
    }

    /// `ξ(v)` for `ξ ∈ Hom(Q_n, M)` and `v ∈ Q_n(x)`.
    pub fn evaluate(&self, n: usize, m: &CoefficientSystem, xi: &[u32], x: u32, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let (offs, _) = self.cochain_offsets(n, m);
        let mut out = vec![0u32; m.dim(x)];
        for (j, g) in self.gens[n].iter().enumerate() {
            let base = self.offsets[n][x as usize][j];
            let val = &xi[offs[j]..offs[j] + m.dim(g.object)];
            for (pos, &beta) in self.cat.hom(g.object, x).iter().enumerate() {
                let c = v[base + pos];
                if c != 0 {
                    f.axpy(&mut out, c, &m.apply(beta, val));
                }
            }
        }
        out
    }

    /// `δ^n : Hom(Q_n, M) -> Hom(Q_{n+1}, M)`.
    pub fn coboundary_matrix(&self, n: usize, m: &CoefficientSystem) -> Matrix {
        let f = self.field;
        let (src, cols) = self.cochain_offsets(n, m);
        let (dst, rows) = self.cochain_offsets(n + 1, m);
        let mut d = Matrix::zero(rows, cols);
        for (j, g) in self.gens[n + 1].iter().enumerate() {
            for (i, gi) in self.gens[n].iter().enumerate() {
                let base = self.offsets[n][g.object as usize][i];
                for (pos, &gamma) in self.cat.hom(gi.object, g.object).iter().enumerate() {
                    let c = g.boundary[base + pos];
                    if c == 0 {
                        continue;
                    }
                    let mat = m.mat(gamma);
                    for r in 0..mat.rows() {
                        for s in 0..mat.cols() {
                            let v = f.add(d.get(dst[j] + r, src[i] + s), f.mul(c, mat.get(r, s)));
                            d.set(dst[j] + r, src[i] + s, v);
                        }
                    }
                }
            }
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::group_category;
    use crate::cohomology::chains::{ChainBasis, DEFAULT_ROW_CAP};
    use crate::group::builtin;

    fn sym3() -> FinCat {
        let g = builtin::symmetric(3).unwrap();
        group_category(g.order(), |a, b| g.mul(a, b)).unwrap()
    }

    #[test]
    fn resolution_is_exact_and_homotopy_contracts() {
        let c = sym3();
        let f = Fp::new(3);
        let r = Resolution::build(&c, f, 4, DEFAULT_DIMENSION_CAP).unwrap();
        for n in 1..=4 {
            let d = r.boundary_matrix(n, 0);
            let d_prev = r.boundary_matrix(n - 1, 0);
            assert!(d_prev.mul(&d, f).is_zero());
            assert_eq!(d_prev.rank(f) + d.rank(f), r.dim(n - 1, 0));
        }
        for n in 0..4 {
            let lhs = r
                .boundary_matrix(n + 1, 0)
                .mul(r.homotopy(n + 1, 0), f)
                .add(&r.homotopy(n, 0).mul(&r.boundary_matrix(n, 0), f), f);
            assert_eq!(lhs, Matrix::identity(r.dim(n, 0)));
        }
    }

    #[test]
    fn comparison_maps_are_chain_maps() {
        let c = sym3();
        let f = Fp::new(3);
        let r = Resolution::build(&c, f, 4, DEFAULT_DIMENSION_CAP).unwrap();
        for n in 1..=3 {
            for lam in ChainBasis::enumerate(&c, n, DEFAULT_ROW_CAP).unwrap().chains() {
                let x = lam.last(&c);
                let lhs = r.boundary_matrix(n, x).mul_vec(&r.from_bar(lam), f);
                let mut rhs = vec![0u32; r.dim(n - 1, x)];
                for i in 0..n {
                    if let Some(face) = lam.face(&c, i) {
                        f.axpy(&mut rhs, f.sign(i), &r.from_bar(&face));
                    }
                }
                let moved = r.act(n - 1, lam.mors[n - 1], &r.from_bar(&lam.face(&c, n).unwrap()));
                f.axpy(&mut rhs, f.sign(n), &moved);
                assert_eq!(lhs, rhs);
            }
        }
        let bar = r.to_bar(2);
        assert_eq!(bar.len(), r.generators(2).len());
        for elem in bar.iter() {
            assert!(elem.iter().all(|(lam, _)| lam.degree() == 2 && lam.is_nondegenerate(&c)));
        }
    }

    #[test]
    fn cap_is_reported() {
        let c = sym3();
        let err = Resolution::build(&c, Fp::new(3), 3, 4).unwrap_err();
        assert!(matches!(err, Error::DegreeCapExceeded { cap: 4, .. }));
    }
}
