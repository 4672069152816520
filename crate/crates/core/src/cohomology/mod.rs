//! Higher limits of coefficient systems on finite categories.
//!
//! Cohomology is computed on a small resolution by representables; the
//! normalized nerve complex is available alongside for direct computation and
//! as the model on which cochain-level operations act. Classes move between the
//! two through the comparison maps of [`resolution::Resolution`].

pub mod chains;
pub mod cochains;
pub mod identities;
pub mod maps;
pub mod resolution;
pub mod sparse;

use alloc::rc::Rc;
use alloc::vec::Vec;

use crate::category::FinCat;
use crate::coefficients::CoefficientSystem;
use crate::error::{Error, Result};
use crate::linalg::{kernel, Echelon, Fp, Matrix};

pub use chains::{differential, nerve_cohomology_dims, Chain, ChainBasis, DEFAULT_ROW_CAP};
pub use cochains::Cochain;
pub use resolution::{Resolution, DEFAULT_DIMENSION_CAP};

pub const DEFAULT_MAXDEG: usize = 4;

#[derive(Clone, Debug)]
struct DegreeData {
    dim: usize,
    cochain_dim: usize,
    representatives: Vec<Vec<u32>>,
    coboundaries: Echelon,
    coordinates: Echelon,
}

/// Cohomology of `Hom(Q_•, M)` through `maxdeg`.
#[derive(Clone, Debug)]
pub struct CohomologyResult {
    field: Fp,
    degrees: Vec<DegreeData>,
    differentials: Vec<Matrix>,
}

impl CohomologyResult {
    pub fn compute(res: &Resolution, m: &CoefficientSystem, maxdeg: usize) -> Result<CohomologyResult> {
        if res.top() < maxdeg + 1 {
            return Err(Error::Invalid("resolution too short for the requested degree".into()));
        }
        let f = res.field();
        let differentials: Vec<Matrix> = (0..=maxdeg).map(|n| res.coboundary_matrix(n, m)).collect();
        let mut degrees = Vec::with_capacity(maxdeg + 1);
        for n in 0..=maxdeg {
            let d = &differentials[n];
            let size = d.cols();
            let mut coboundaries = Echelon::new(f, size, 0);
            if n > 0 {
                let prev = &differentials[n - 1];
                for c in 0..prev.cols() {
                    coboundaries.insert(&prev.col(c));
                }
            }
            let cocycles = kernel(d, f);
            let dim = cocycles.len() - coboundaries.dim();
            let mut coordinates = Echelon::new(f, size, dim);
            let zero = alloc::vec![0u32; dim];
            for b in coboundaries.basis() {
                coordinates.insert_tagged(b, &zero);
            }
            let mut representatives = Vec::with_capacity(dim);
            for z in cocycles {
                let mut tag = zero.clone();
                if representatives.len() < dim {
                    tag[representatives.len()] = 1;
                }
                if coordinates.insert_tagged(&z, &tag) {
                    representatives.push(z);
                }
            }
            debug_assert_eq!(representatives.len(), dim);
            degrees.push(DegreeData { dim, cochain_dim: size, representatives, coboundaries, coordinates });
        }
        Ok(CohomologyResult { field: f, degrees, differentials })
    }

    pub fn maxdeg(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim).collect()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.degrees[n].dim
    }

    pub fn cochain_dim(&self, n: usize) -> usize {
        self.degrees[n].cochain_dim
    }

    pub fn representatives(&self, n: usize) -> &[Vec<u32>] {
        &self.degrees[n].representatives
    }

    pub fn differential(&self, n: usize) -> &Matrix {
        &self.differentials[n]
    }

    pub fn is_cocycle(&self, n: usize, v: &[u32]) -> bool {
        self.differentials[n].mul_vec(v, self.field).iter().all(|&x| x == 0)
    }

    pub fn is_coboundary(&self, n: usize, v: &[u32]) -> bool {
        self.degrees[n].coboundaries.contains(v)
    }

    /// Coordinates of the class of a cocycle in the representative basis.
    pub fn coordinates(&self, n: usize, v: &[u32]) -> Result<Vec<u32>> {
        let (residual, tag) = self.degrees[n].coordinates.reduce(v);
        if residual.iter().any(|&x| x != 0) {
            return Err(Error::Invalid("cochain is not a cocycle".into()));
        }
        Ok(tag)
    }
}

/// A resolution with the cohomology of one coefficient system on it.
#[derive(Debug)]
pub struct Cohomology {
    res: Rc<Resolution>,
    m: CoefficientSystem,
    result: CohomologyResult,
}

impl Cohomology {
    pub fn compute(cat: &FinCat, m: &CoefficientSystem, maxdeg: usize) -> Result<Cohomology> {
        let res = Rc::new(Resolution::build(cat, m.field(), maxdeg + 1, DEFAULT_DIMENSION_CAP)?);
        Self::with_resolution(res, m, maxdeg)
    }

    pub fn with_resolution(res: Rc<Resolution>, m: &CoefficientSystem, maxdeg: usize) -> Result<Cohomology> {
        let result = CohomologyResult::compute(&res, m, maxdeg)?;
        Ok(Cohomology { res, m: m.clone(), result })
    }

    pub fn resolution(&self) -> &Rc<Resolution> {
        &self.res
    }

    pub fn system(&self) -> &CoefficientSystem {
        &self.m
    }

    pub fn result(&self) -> &CohomologyResult {
        &self.result
    }

    pub fn dims(&self) -> Vec<usize> {
        self.result.dims()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.result.dim(n)
    }

    pub fn maxdeg(&self) -> usize {
        self.result.maxdeg()
    }

    /// The nerve cochain of a resolution cochain `ξ`.
    pub fn nerve_cochain(&self, n: usize, xi: Vec<u32>) -> cochains::PulledBack<'_> {
        cochains::PulledBack::new(&self.res, &self.m, n, xi)
    }

    /// The nerve cochain of the `k`-th basis class in degree `n`.
    pub fn class_cochain(&self, n: usize, k: usize) -> cochains::PulledBack<'_> {
        self.nerve_cochain(n, self.result.representatives(n)[k].clone())
    }

    /// The resolution cochain of a nerve cochain.
    pub fn resolution_cochain(&self, psi: &dyn Cochain) -> Vec<u32> {
        cochains::to_resolution(&self.res, &self.m, psi)
    }

    /// Coordinates of the class of a nerve cocycle.
    pub fn read_class(&self, psi: &dyn Cochain) -> Result<Vec<u32>> {
        let v = self.resolution_cochain(psi);
        self.result.coordinates(psi.degree(), &v)
    }

    /// Whether a nerve cocycle is a coboundary.
    pub fn is_zero_class(&self, psi: &dyn Cochain) -> Result<bool> {
        Ok(self.read_class(psi)?.iter().all(|&x| x == 0))
    }
}

/// Matrix `rows × cols` whose `k`-th column is `column(k)`.
pub fn induced_matrix(rows: usize, cols: usize, mut column: impl FnMut(usize) -> Result<Vec<u32>>) -> Result<Matrix> {
    let mut columns = Vec::with_capacity(cols);
    for k in 0..cols {
        let c = column(k)?;
        debug_assert_eq!(c.len(), rows);
        columns.push(c);
    }
    Ok(Matrix::from_columns(rows, &columns))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::group_category;
    use crate::group::builtin;

    fn group_cat(g: &crate::group::FiniteGroup) -> FinCat {
        group_category(g.order(), |a, b| g.mul(a, b)).unwrap()
    }

    #[test]
    fn cyclic_three_dims_are_one() {
        let c = group_cat(&builtin::cyclic(3).unwrap());
        let m = CoefficientSystem::constant(&c, Fp::new(3), 1);
        let h = Cohomology::compute(&c, &m, 6).unwrap();
        assert_eq!(h.dims(), alloc::vec![1; 7]);
    }

    #[test]
    fn resolution_agrees_with_nerve() {
        for (g, p, deg) in [(builtin::symmetric(3).unwrap(), 3, 4), (builtin::symmetric(3).unwrap(), 2, 4), (builtin::cyclic(4).unwrap(), 2, 4)] {
            let c = group_cat(&g);
            let m = CoefficientSystem::constant(&c, Fp::new(p), 1);
            let h = Cohomology::compute(&c, &m, deg).unwrap();
            assert_eq!(h.dims(), nerve_cohomology_dims(&c, &m, deg, DEFAULT_ROW_CAP).unwrap());
        }
    }

    #[test]
    fn representatives_are_cocycles_and_round_trip() {
        let c = group_cat(&builtin::symmetric(3).unwrap());
        let m = CoefficientSystem::constant(&c, Fp::new(3), 1);
        let h = Cohomology::compute(&c, &m, 4).unwrap();
        for n in 0..=4 {
            for k in 0..h.dim(n) {
                let rep = &h.result().representatives(n)[k];
                assert!(h.result().is_cocycle(n, rep));
                let phi = h.class_cochain(n, k);
                let mut expect = alloc::vec![0u32; h.dim(n)];
                expect[k] = 1;
                assert_eq!(h.read_class(&phi).unwrap(), expect);
            }
        }
    }

    #[test]
    fn non_cocycles_are_rejected() {
        let c = group_cat(&builtin::cyclic(2).unwrap());
        let m = CoefficientSystem::constant(&c, Fp::new(3), 1);
        let h = Cohomology::compute(&c, &m, 2).unwrap();
        let size = h.result().cochain_dim(1);
        let mut junk = alloc::vec![0u32; size];
        junk[0] = 1;
        assert!(!h.result().is_cocycle(1, &junk));
        assert!(h.result().coordinates(1, &junk).is_err());
    }
}
