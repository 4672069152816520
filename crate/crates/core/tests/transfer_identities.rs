use std::sync::Arc;

use fuscoh_core::coefficients::{permutation_system, CoefficientSystem};
use fuscoh_core::cohomology::identities::{check_double_coset, check_frobenius, check_transitivity};
use fuscoh_core::cohomology::maps::CohomologyTable;
use fuscoh_core::fusion::FusionSystem;
use fuscoh_core::gamma::{GammaData, Section, DEFAULT_COSET_CAP};
use fuscoh_core::group::{builtin, subgroups_of, FiniteGroup, Subgroup};
use fuscoh_core::linalg::{Fp, Matrix};
use fuscoh_core::linking::LinkingSystem;

fn setup(g: FiniteGroup, p: u32) -> (LinkingSystem, GammaData) {
    let f = FusionSystem::from_group(Arc::new(g), p).unwrap();
    let l = LinkingSystem::build(Arc::new(f)).unwrap();
    let gd = GammaData::compute(&l, DEFAULT_COSET_CAP).unwrap();
    (l, gd)
}

fn sym5() -> (LinkingSystem, GammaData) {
    setup(builtin::symmetric(5).unwrap(), 5)
}

#[test]
fn sym5_double_coset_formula_on_random_cochains() {
    let (l, gd) = sym5();
    let m = CoefficientSystem::constant(l.cat(), Fp::new(5), 1);
    let table = CohomologyTable::new(&l, &gd, &m, 3);
    let subs = subgroups_of(gd.gamma(), &gd.gamma().whole());
    assert_eq!(subs.len(), 3);
    for h in &subs {
        for k in &subs {
            let out = check_double_coset(&table, h, k, &[0, 1, 2], 0..10).unwrap();
            assert!(out.passed(), "{:?}", out.mismatch);
        }
    }
}

#[test]
fn sym5_transfer_is_transitive_along_the_subgroup_chain() {
    let (l, gd) = sym5();
    let m = CoefficientSystem::constant(l.cat(), Fp::new(5), 1);
    let table = CohomologyTable::new(&l, &gd, &m, 3);
    let subs = subgroups_of(gd.gamma(), &gd.gamma().whole());
    let (trivial, middle) = (&subs[0], &subs[1]);
    assert_eq!(middle.order(), 2);
    let out = check_transitivity(&table, trivial, middle, &[0, 1, 2, 3], 0..10).unwrap();
    assert!(out.passed(), "{:?}", out.mismatch);
}

#[test]
fn sym5_frobenius_reciprocity() {
    let (l, gd) = sym5();
    let m = CoefficientSystem::constant(l.cat(), Fp::new(5), 1);
    let table = CohomologyTable::new(&l, &gd, &m, 4);
    for h in subgroups_of(gd.gamma(), &gd.gamma().whole()) {
        let out = check_frobenius(&table, &h, 4).unwrap();
        assert!(out.failure.is_none(), "{:?}", out.failure);
    }
}

#[test]
fn normalization_for_permutation_coefficients() {
    let (l, gd) = setup(builtin::alternating(4).unwrap(), 2);
    let f = Fp::new(2);
    let trivial = Subgroup::trivial();
    let m = permutation_system(&l, &gd, &trivial, f).unwrap();
    let table = CohomologyTable::new(&l, &gd, &m, 3);
    let whole = table.whole();
    let section = Section::canonical(&l, &gd, &trivial).unwrap();
    for n in 0..=3 {
        let tr = table.transfer(n, &section).unwrap();
        let res = table.restriction(n, &whole, &trivial).unwrap();
        let d = table.level(&whole).unwrap().cohomology.dim(n);
        assert_eq!(tr.mul(&res, f), Matrix::scalar(d, 3 % 2));
    }
}
