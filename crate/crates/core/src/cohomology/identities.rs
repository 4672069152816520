//! Exact checks of transfer identities on random cochains and on basis classes.
//!
//! The double coset formula and transitivity hold on the nose once the sections
//! are adapted to each other: for the double coset formula the section of `Γ/K`
//! sends `hxK` to `τ_h ∘ α_x`, where `α_x` is the least lift of the double coset
//! representative and `τ` is the section of `H/(H ∩ xKx⁻¹)`; for transitivity the
//! section of `Γ/H` is `σ_a ∘ τ_b`.

use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::gamma::Section;
use crate::group::{self, Subgroup};
use crate::linking::LinkingSystem;

use super::chains::{Chain, ChainBasis, DEFAULT_ROW_CAP};
use super::cochains::{Cochain, Combination, Conjugated, Cup, RandomCochain, Restricted, Transferred};
use super::maps::CohomologyTable;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMismatch {
    pub seed: u64,
    pub degree: usize,
    pub chain: Chain,
    pub lhs: Vec<u32>,
    pub rhs: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub trials: usize,
    pub evaluations: usize,
    pub mismatch: Option<ChainMismatch>,
}

impl IdentityOutcome {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

fn compare_on(
    l: &LinkingSystem,
    degree: usize,
    seed: u64,
    lhs: &dyn Cochain,
    rhs: &dyn Cochain,
    evaluations: &mut usize,
) -> Result<Option<ChainMismatch>> {
    for chain in ChainBasis::enumerate(l.cat(), degree, DEFAULT_ROW_CAP)?.chains() {
        *evaluations += 1;
        let (a, b) = (lhs.eval(chain), rhs.eval(chain));
        if a != b {
            return Ok(Some(ChainMismatch { seed, degree, chain: chain.clone(), lhs: a, rhs: b }));
        }
    }
    Ok(None)
}

/// The pieces of the double coset formula for `H, K ≤ Γ`.
pub struct DoubleCosetData {
    /// Section of `Γ/K` adapted to the double cosets.
    pub outer: Section,
    /// For each representative `x`: `α_x`, `H ∩ xKx⁻¹`, `x⁻¹Hx ∩ K`, section of `H/(H ∩ xKx⁻¹)`.
    pub pieces: Vec<DoubleCosetPiece>,
}

pub struct DoubleCosetPiece {
    pub representative: u32,
    pub alpha: u32,
    pub inner: Subgroup,
    pub conjugated: Subgroup,
    pub section: Section,
}

pub fn double_coset_data(table: &CohomologyTable<'_>, h: &Subgroup, k: &Subgroup) -> Result<DoubleCosetData> {
    let l = table.linking();
    let gd = table.gamma_data();
    let gm = gd.gamma();
    let whole = gm.whole();
    let canonical = Section::canonical_in(l, gd, &whole, k)?;
    let mut sigma = alloc::vec![u32::MAX; canonical.coset_count()];
    let mut pieces = Vec::new();
    for dc in group::double_cosets(gm, &whole, h, k) {
        let x = dc[0];
        let alpha = if x == 0 { l.cat().id(l.s_object()) } else { gd.least_lift(l, x)? };
        let inner = h.intersection(&group::conjugate(gm, x, k));
        let conjugated = group::conjugate(gm, gm.inv(x), h).intersection(k);
        let section = Section::canonical_in(l, gd, h, &inner)?;
        for &tau in section.morphisms() {
            let m = l.compose(tau, alpha);
            let c = canonical.coset_of(gd.theta_hat(m)) as usize;
            if sigma[c] != u32::MAX {
                return Err(Error::SectionMismatch);
            }
            sigma[c] = m;
        }
        pieces.push(DoubleCosetPiece { representative: x, alpha, inner, conjugated, section });
    }
    let outer = Section::from_morphisms_in(l, gd, &whole, k, sigma)?;
    Ok(DoubleCosetData { outer, pieces })
}

/// `Res_H ∘ Tr_K = Σ_x Tr^H_{H∩xKx⁻¹} ∘ c_x ∘ Res^K_{x⁻¹Hx∩K}` on random cochains of `L_K`.
pub fn check_double_coset(
    table: &CohomologyTable<'_>,
    h: &Subgroup,
    k: &Subgroup,
    degrees: &[usize],
    seeds: Range<u64>,
) -> Result<IdentityOutcome> {
    let l = table.linking();
    let gd = table.gamma_data();
    let m = table.system();
    let f = m.field();
    let data = double_coset_data(table, h, k)?;
    let lg = table.level(&table.whole())?;
    let lh = table.level(h)?;
    let lk = table.level(k)?;
    let mut levels = Vec::new();
    for piece in &data.pieces {
        levels.push((table.level(&piece.inner)?, table.level(&piece.conjugated)?));
    }
    let mut outcome = IdentityOutcome { trials: 0, evaluations: 0, mismatch: None };
    for seed in seeds {
        for &n in degrees {
            outcome.trials += 1;
            let phi = RandomCochain::new(lk.linking.cat(), &lk.system, n, seed);
            let tr = Transferred::new(&phi, l, gd, &data.outer, &lk.linking, &lg.linking, m);
            let lhs = Restricted::new(&tr, &lh.linking, &lg.linking);
            let mut restricted = Vec::new();
            for (piece, (_, conj_level)) in data.pieces.iter().zip(&levels) {
                restricted.push((piece, Restricted::new(&phi, &conj_level.linking, &lk.linking)));
            }
            let mut conjugated = Vec::new();
            for ((piece, r), (inner_level, conj_level)) in restricted.iter().zip(&levels) {
                conjugated.push(Conjugated::new(
                    r,
                    l,
                    gd,
                    piece.alpha,
                    (&inner_level.linking, &piece.inner),
                    (&conj_level.linking, &piece.conjugated),
                    m,
                )?);
            }
            let transferred: Vec<Transferred<'_>> = conjugated
                .iter()
                .zip(&data.pieces)
                .zip(&levels)
                .map(|((c, piece), (inner_level, _))| {
                    Transferred::new(c, l, gd, &piece.section, &inner_level.linking, &lh.linking, m)
                })
                .collect();
            let rhs = Combination::new(f, transferred.iter().map(|t| (1, t as &dyn Cochain)).collect());
            if let Some(w) = compare_on(&lh.linking, n, seed, &lhs, &rhs, &mut outcome.evaluations)? {
                outcome.mismatch = Some(w);
                return Ok(outcome);
            }
        }
    }
    Ok(outcome)
}

/// The section `σ_a ∘ τ_b` of `Γ/H` built from the canonical sections of `Γ/K` and `K/H`.
pub fn composite_section(table: &CohomologyTable<'_>, h: &Subgroup, k: &Subgroup) -> Result<(Section, Section, Section)> {
    let l = table.linking();
    let gd = table.gamma_data();
    let whole = table.whole();
    let outer = Section::canonical_in(l, gd, &whole, k)?;
    let inner = Section::canonical_in(l, gd, k, h)?;
    let canonical = Section::canonical_in(l, gd, &whole, h)?;
    let mut sigma = alloc::vec![u32::MAX; canonical.coset_count()];
    for &a in outer.morphisms() {
        for &b in inner.morphisms() {
            let m = l.compose(a, b);
            let c = canonical.coset_of(gd.theta_hat(m)) as usize;
            if sigma[c] != u32::MAX {
                return Err(Error::SectionMismatch);
            }
            sigma[c] = m;
        }
    }
    let composite = Section::from_morphisms_in(l, gd, &whole, h, sigma)?;
    Ok((composite, outer, inner))
}

/// `Tr_H = Tr_K ∘ Tr_H^K` on random cochains of `L_H`.
pub fn check_transitivity(
    table: &CohomologyTable<'_>,
    h: &Subgroup,
    k: &Subgroup,
    degrees: &[usize],
    seeds: Range<u64>,
) -> Result<IdentityOutcome> {
    if !h.is_subgroup_of(k) {
        return Err(Error::NotASubgroupChain);
    }
    let l = table.linking();
    let gd = table.gamma_data();
    let m = table.system();
    let (composite, outer, inner) = composite_section(table, h, k)?;
    let lg = table.level(&table.whole())?;
    let lh = table.level(h)?;
    let lk = table.level(k)?;
    let mut outcome = IdentityOutcome { trials: 0, evaluations: 0, mismatch: None };
    for seed in seeds {
        for &n in degrees {
            outcome.trials += 1;
            let psi = RandomCochain::new(lh.linking.cat(), &lh.system, n, seed);
            let direct = Transferred::new(&psi, l, gd, &composite, &lh.linking, &lg.linking, m);
            let first = Transferred::new(&psi, l, gd, &inner, &lh.linking, &lk.linking, m);
            let second = Transferred::new(&first, l, gd, &outer, &lk.linking, &lg.linking, m);
            if let Some(w) = compare_on(&lg.linking, n, seed, &direct, &second, &mut outcome.evaluations)? {
                outcome.mismatch = Some(w);
                return Ok(outcome);
            }
        }
    }
    Ok(outcome)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusFailure {
    pub degrees: (usize, usize),
    pub classes: (usize, usize),
    pub difference: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusOutcome {
    pub pairs: usize,
    pub failure: Option<FrobeniusFailure>,
}

/// `Tr(Res(x) ∪ y) - x ∪ Tr(y)` is a coboundary for basis classes `x ∈ H^a(L)`,
/// `y ∈ H^b(L_H)` with `a + b ≤ total`.
pub fn check_frobenius(table: &CohomologyTable<'_>, h: &Subgroup, total: usize) -> Result<FrobeniusOutcome> {
    let l = table.linking();
    let gd = table.gamma_data();
    let m = table.system();
    let f = m.field();
    let section = Section::canonical(l, gd, h)?;
    let lg = table.level(&table.whole())?;
    let lh = table.level(h)?;
    let mut outcome = FrobeniusOutcome { pairs: 0, failure: None };
    for a in 0..=total {
        for b in 0..=total - a {
            for i in 0..lg.cohomology.dim(a) {
                for j in 0..lh.cohomology.dim(b) {
                    outcome.pairs += 1;
                    let x = lg.cohomology.class_cochain(a, i);
                    let y = lh.cohomology.class_cochain(b, j);
                    let res_x = Restricted::new(&x, &lh.linking, &lg.linking);
                    let prod = Cup::new(lh.linking.cat(), &lh.system, &res_x, &y)?;
                    let lhs = Transferred::new(&prod, l, gd, &section, &lh.linking, &lg.linking, m);
                    let tr_y = Transferred::new(&y, l, gd, &section, &lh.linking, &lg.linking, m);
                    let rhs = Cup::new(lg.linking.cat(), &lg.system, &x, &tr_y)?;
                    let diff = Combination::difference(f, &lhs, &rhs);
                    let coords = lg.cohomology.read_class(&diff)?;
                    if coords.iter().any(|&c| c != 0) {
                        outcome.failure =
                            Some(FrobeniusFailure { degrees: (a, b), classes: (i, j), difference: coords });
                        return Ok(outcome);
                    }
                }
            }
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::CoefficientSystem;
    use crate::fusion::FusionSystem;
    use crate::gamma::{GammaData, DEFAULT_COSET_CAP};
    use crate::group::builtin;
    use crate::linalg::Fp;
    use alloc::sync::Arc;

    fn setup(g: crate::group::FiniteGroup, p: u32) -> (LinkingSystem, GammaData) {
        let f = FusionSystem::from_group(Arc::new(g), p).unwrap();
        let l = LinkingSystem::build(Arc::new(f)).unwrap();
        let gd = GammaData::compute(&l, DEFAULT_COSET_CAP).unwrap();
        (l, gd)
    }

    #[test]
    fn sym3_identities() {
        let (l, gd) = setup(builtin::symmetric(3).unwrap(), 3);
        let m = CoefficientSystem::constant(l.cat(), Fp::new(3), 1);
        let table = CohomologyTable::new(&l, &gd, &m, 3);
        let subs = group::subgroups_of(gd.gamma(), &gd.gamma().whole());
        for h in &subs {
            for k in &subs {
                let out = check_double_coset(&table, h, k, &[0, 1, 2], 0..5).unwrap();
                assert!(out.passed(), "{:?}", out.mismatch);
            }
            let fr = check_frobenius(&table, h, 3).unwrap();
            assert!(fr.failure.is_none());
        }
        let out = check_transitivity(&table, &Subgroup::trivial(), &gd.gamma().whole(), &[1, 2], 0..3).unwrap();
        assert!(out.passed());
    }

    #[test]
    fn double_coset_sections_cover_every_coset() {
        let (l, gd) = setup(builtin::symmetric(3).unwrap(), 3);
        let m = CoefficientSystem::constant(l.cat(), Fp::new(3), 1);
        let table = CohomologyTable::new(&l, &gd, &m, 1);
        let t = Subgroup::trivial();
        let data = double_coset_data(&table, &t, &t).unwrap();
        assert_eq!(data.pieces.len(), 2);
        assert_eq!(data.outer.coset_count(), 2);
    }
}
