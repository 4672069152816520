//! Maps induced on cohomology by restriction, conjugation and transfer between
//! the subsystems `L_H` of index prime to `p`.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::coefficients::{restrict_system, CoefficientSystem};
use crate::error::{Error, Result};
use crate::gamma::{build_p_prime_subsystem, GammaData, Section};
use crate::group::{self, Subgroup};
use crate::linalg::{kernel, Echelon, Matrix};
use crate::linking::LinkingSystem;

use super::cochains::{Conjugated, Memo, Restricted, Transferred};
use super::{induced_matrix, Cohomology};

/// A subsystem `L_H` with the cohomology of the restricted system.
#[derive(Debug)]
pub struct Level {
    pub h: Subgroup,
    pub linking: LinkingSystem,
    pub system: CoefficientSystem,
    pub cohomology: Cohomology,
}

/// Cohomology of `ι_H^* M` for the subgroups `H ≤ Γ`, built on demand.
pub struct CohomologyTable<'a> {
    l: &'a LinkingSystem,
    gd: &'a GammaData,
    m: &'a CoefficientSystem,
    maxdeg: usize,
    levels: RefCell<BTreeMap<Subgroup, Rc<Level>>>,
}

impl<'a> CohomologyTable<'a> {
    pub fn new(l: &'a LinkingSystem, gd: &'a GammaData, m: &'a CoefficientSystem, maxdeg: usize) -> Self {
        CohomologyTable { l, gd, m, maxdeg, levels: RefCell::new(BTreeMap::new()) }
    }

    pub fn linking(&self) -> &'a LinkingSystem {
        self.l
    }

    pub fn gamma_data(&self) -> &'a GammaData {
        self.gd
    }

    pub fn system(&self) -> &'a CoefficientSystem {
        self.m
    }

    pub fn maxdeg(&self) -> usize {
        self.maxdeg
    }

    pub fn whole(&self) -> Subgroup {
        self.gd.gamma().whole()
    }

    pub fn level(&self, h: &Subgroup) -> Result<Rc<Level>> {
        if let Some(l) = self.levels.borrow().get(h) {
            return Ok(l.clone());
        }
        let sub = build_p_prime_subsystem(self.l, self.gd, h)?;
        let system = restrict_system(self.m, &sub.linking);
        let cohomology = Cohomology::compute(sub.linking.cat(), &system, self.maxdeg)?;
        let level = Rc::new(Level { h: h.clone(), linking: sub.linking, system, cohomology });
        self.levels.borrow_mut().insert(h.clone(), level.clone());
        Ok(level)
    }

    /// `Res^K_H : H^n(L_K) -> H^n(L_H)`.
    pub fn restriction(&self, n: usize, k: &Subgroup, h: &Subgroup) -> Result<Matrix> {
        if !h.is_subgroup_of(k) {
            return Err(Error::NotASubgroupChain);
        }
        let big = self.level(k)?;
        let small = self.level(h)?;
        induced_matrix(small.cohomology.dim(n), big.cohomology.dim(n), |j| {
            let phi = big.cohomology.class_cochain(n, j);
            let res = Restricted::new(&phi, &small.linking, &big.linking);
            small.cohomology.read_class(&res)
        })
    }

    /// Transfer `H^n(L_H) -> H^n(L_K)` along a section of `K/H`.
    pub fn transfer(&self, n: usize, section: &Section) -> Result<Matrix> {
        let small = self.level(section.subgroup())?;
        let big = self.level(section.ambient())?;
        induced_matrix(big.cohomology.dim(n), small.cohomology.dim(n), |j| {
            let psi = small.cohomology.class_cochain(n, j);
            let tr = Memo::new(Transferred::new(&psi, self.l, self.gd, section, &small.linking, &big.linking, self.m));
            big.cohomology.read_class(&tr)
        })
    }

    /// `c_α : H^n(L_K) -> H^n(L_H)` for `α ∈ Aut_L(S)` with `Θ̂(α)⁻¹ H Θ̂(α) ≤ K`.
    pub fn conjugation(&self, n: usize, alpha: u32, h: &Subgroup, k: &Subgroup) -> Result<Matrix> {
        let big = self.level(k)?;
        let small = self.level(h)?;
        induced_matrix(small.cohomology.dim(n), big.cohomology.dim(n), |j| {
            let psi = big.cohomology.class_cochain(n, j);
            let c = Conjugated::new(&psi, self.l, self.gd, alpha, (&small.linking, h), (&big.linking, k), self.m)?;
            small.cohomology.read_class(&c)
        })
    }

    /// The stable subspace of `H^n(L_H)`, as a basis in class coordinates.
    ///
    /// A class `x` is stable when `c_g(Res_{g⁻¹Ug}(x)) = Res_U(x)` for every
    /// `U ≤ H` and `g ∈ Γ` with `g⁻¹Ug ≤ H`; `c_g` uses the least lift of `g`.
    pub fn stable_elements(&self, n: usize, h: &Subgroup) -> Result<Vec<Vec<u32>>> {
        let gm = self.gd.gamma();
        let f = self.m.field();
        let top = self.level(h)?;
        let dim = top.cohomology.dim(n);
        let mut conditions: Vec<Vec<u32>> = Vec::new();
        for u in group::subgroups_of(gm, h) {
            let lu = self.level(&u)?;
            for g in 0..gm.order() as u32 {
                let conj = group::conjugate(gm, gm.inv(g), &u);
                if !conj.is_subgroup_of(h) {
                    continue;
                }
                let alpha = self.gd.least_lift(self.l, g)?;
                let lc = self.level(&conj)?;
                let plain = self.restriction(n, h, &u)?;
                let twisted = induced_matrix(lu.cohomology.dim(n), dim, |j| {
                    let phi = top.cohomology.class_cochain(n, j);
                    let r = Restricted::new(&phi, &lc.linking, &top.linking);
                    let c = Conjugated::new(&r, self.l, self.gd, alpha, (&lu.linking, &u), (&lc.linking, &conj), self.m)?;
                    lu.cohomology.read_class(&c)
                })?;
                conditions.extend(twisted.sub(&plain, f).to_row_vecs());
            }
        }
        Ok(kernel(&Matrix::from_row_vecs(dim, &conditions), f))
    }

    /// A basis of the image of `Res^Γ_H` in `H^n(L_H)`.
    pub fn restriction_image(&self, n: usize, h: &Subgroup) -> Result<Vec<Vec<u32>>> {
        let r = self.restriction(n, &self.whole(), h)?;
        let mut e = Echelon::new(self.m.field(), r.rows(), 0);
        for c in 0..r.cols() {
            e.insert(&r.col(c));
        }
        Ok(e.basis().to_vec())
    }
}

/// Whether two lists of vectors span the same subspace.
pub fn same_span(f: crate::linalg::Fp, n: usize, a: &[Vec<u32>], b: &[Vec<u32>]) -> bool {
    let mut ea = Echelon::new(f, n, 0);
    for v in a {
        ea.insert(v);
    }
    let mut eb = Echelon::new(f, n, 0);
    for v in b {
        eb.insert(v);
    }
    ea.dim() == eb.dim() && a.iter().all(|v| eb.contains(v)) && b.iter().all(|v| ea.contains(v))
}
