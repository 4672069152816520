//! Property checks producing pass/fail reports with witnesses.

use std::collections::BTreeSet;

use fuscoh_core::coefficients::{
    exactness_probe, permutation_system, pre_transfer, restrict_system, right_kan_extension, unit_delta,
    CoefficientSystem, NaturalTransformation,
};
use fuscoh_core::cohomology::identities::{check_double_coset, check_frobenius, check_transitivity, ChainMismatch};
use fuscoh_core::cohomology::maps::{same_span, CohomologyTable};
use fuscoh_core::cohomology::{Chain, Cochain, Cohomology};
use fuscoh_core::covering::{compare_transfers, CoveringCategory};
use fuscoh_core::gamma::{build_p_prime_subsystem, Section};
use fuscoh_core::group::{self, FiniteGroup, Subgroup};
use fuscoh_core::linalg::{Fp, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::context::Context;
use crate::oracle::classical::{transfer_value, RightCosets};
use crate::oracle::PermGroup;

pub const PROPERTIES: &[&str] = &[
    "saturation",
    "linking-axioms",
    "gamma-surjectivity",
    "gamma-cross-check",
    "shapiro",
    "normalization",
    "double-coset",
    "transitivity",
    "stable-elements",
    "frobenius",
    "section-independence",
    "geometric-comparison",
    "exactness",
    "classical-transfer",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub property: String,
    /// The identity checked, in words.
    pub statement: String,
    pub status: Status,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl VerificationReport {
    fn new(property: &str, statement: &str, details: Value, witness: Option<Value>) -> Self {
        let status = if witness.is_none() { Status::Pass } else { Status::Fail };
        VerificationReport { property: property.into(), statement: statement.into(), status, details, witness }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

type Res = fuscoh_core::Result<VerificationReport>;

fn matrix_json(m: &Matrix) -> Value {
    json!(m.to_row_vecs())
}

fn mismatch_json(w: &ChainMismatch) -> Value {
    json!({ "seed": w.seed, "degree": w.degree, "chain": { "start": w.chain.start, "morphisms": w.chain.mors }, "lhs": w.lhs, "rhs": w.rhs })
}

fn subgroup_json(h: &Subgroup) -> Value {
    json!(h.members())
}

fn index(ctx: &Context, h: &Subgroup) -> usize {
    ctx.gamma.gamma().order() / h.order()
}

pub fn all_subgroups(ctx: &Context) -> Vec<Subgroup> {
    let gm = ctx.gamma.gamma();
    group::subgroups_of(gm, &gm.whole())
}

pub fn saturation(ctx: &Context) -> VerificationReport {
    let r = ctx.fusion().check_saturation();
    let witness = (!r.passed()).then(|| json!(r.failures.iter().map(|f| format!("{:?}", f)).collect::<Vec<_>>()));
    VerificationReport::new(
        "saturation",
        "the Sylow and extension axioms hold for every subgroup of S",
        json!({ "subgroups": r.checked_subgroups, "morphisms": r.checked_morphisms }),
        witness,
    )
}

pub fn linking_axioms(ctx: &Context) -> VerificationReport {
    let l = &ctx.linking;
    let f = l.fusion();
    let g = l.group();
    let mut witness = l.check_axioms().err().map(|e| json!(e.to_string()));
    let n = l.object_count() as u32;
    for a in 0..n {
        let z = group::center(g, l.object_subgroup(a)).order();
        for b in 0..n {
            let homs = f.homs(l.object_subgroup_index(a), l.object_subgroup_index(b)).len();
            let mors = l.cat().hom(a, b).len();
            if witness.is_none() && mors != z * homs {
                witness = Some(json!({ "source": a, "target": b, "morphisms": mors, "center": z, "homs": homs }));
            }
        }
    }
    VerificationReport::new(
        "linking-axioms",
        "|Mor_L(P,Q)| = |Z(P)|·|Hom_F(P,Q)| with free Z(P)-action, and delta is compatible with the projection",
        json!({ "objects": l.object_count(), "morphisms": l.morphism_count() }),
        witness,
    )
}

/// Whether `g` is cyclic.
pub fn is_cyclic(g: &FiniteGroup) -> bool {
    (0..g.order() as u32).any(|x| g.elem_order(x) as usize == g.order())
}

pub fn gamma_surjectivity(ctx: &Context) -> VerificationReport {
    let gm = ctx.gamma.gamma();
    let image: BTreeSet<u32> = ctx.linking.aut_s().iter().map(|&m| ctx.gamma.theta_hat(m)).collect();
    let missing: Vec<u32> = (0..gm.order() as u32).filter(|x| !image.contains(x)).collect();
    VerificationReport::new(
        "gamma-surjectivity",
        "Aut_L(S) maps onto Gamma",
        json!({ "gamma_order": gm.order(), "cyclic": is_cyclic(gm), "aut_s": ctx.linking.aut_s().len() }),
        (!missing.is_empty()).then(|| json!({ "missing": missing })),
    )
}

/// Brute-force isomorphism test by extending maps of generators.
pub fn isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    if a.order() != b.order() {
        return false;
    }
    let gens = group::generating_set(a, &a.whole());
    let mut words: Vec<Option<(u32, usize)>> = vec![None; a.order()];
    let mut order = vec![0u32];
    let mut seen = vec![false; a.order()];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for (k, &s) in gens.iter().enumerate() {
            let y = a.mul(x, s);
            if !seen[y as usize] {
                seen[y as usize] = true;
                words[y as usize] = Some((x, k));
                order.push(y);
            }
        }
        i += 1;
    }
    let candidates: Vec<Vec<u32>> =
        gens.iter().map(|&s| (0..b.order() as u32).filter(|&y| b.elem_order(y) == a.elem_order(s)).collect()).collect();
    let mut choice = vec![0usize; gens.len()];
    loop {
        if candidates.iter().any(Vec::is_empty) {
            return false;
        }
        let img: Vec<u32> = choice.iter().zip(&candidates).map(|(&c, v)| v[c]).collect();
        let mut phi = vec![0u32; a.order()];
        for &x in &order[1..] {
            let (prev, k) = words[x as usize].unwrap();
            phi[x as usize] = b.mul(phi[prev as usize], img[k]);
        }
        let bijective = phi.iter().collect::<BTreeSet<_>>().len() == b.order();
        if bijective
            && (0..a.order() as u32).all(|x| {
                (0..a.order() as u32).all(|y| phi[a.mul(x, y) as usize] == b.mul(phi[x as usize], phi[y as usize]))
            })
        {
            return true;
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return false;
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// When `F^c` has the single object `S`, `Γ` must be `Aut_F(S)` modulo the
/// subgroup generated by its `p`-elements.
pub fn gamma_cross_check(ctx: &Context) -> Option<VerificationReport> {
    let l = &ctx.linking;
    if l.object_count() != 1 {
        return None;
    }
    let g = l.group();
    let s = l.object_subgroup(l.s_object());
    let (aut, _) = group::quotient(g, &group::normalizer(g, s), &group::centralizer(g, s));
    let (q, _) = group::quotient(&aut, &aut.whole(), &group::o_to_the_p_prime(&aut, &aut.whole(), ctx.prime()));
    let ok = isomorphic(&q, ctx.gamma.gamma());
    Some(VerificationReport::new(
        "gamma-cross-check",
        "Gamma is isomorphic to the p'-quotient of Aut_F(S) when S is the only centric subgroup",
        json!({ "aut_f_s": aut.order(), "quotient": q.order(), "gamma": ctx.gamma.gamma().order() }),
        (!ok).then(|| json!({ "quotient_order": q.order(), "gamma_order": ctx.gamma.gamma().order() })),
    ))
}

/// `dim H^i(L, R_ι ι*M) = dim H^i(L_H, ι*M)`.
pub fn shapiro(ctx: &Context, m: &CoefficientSystem, h: &Subgroup, maxdeg: usize) -> Res {
    let (l, gd) = (&ctx.linking, &ctx.gamma);
    let sub = build_p_prime_subsystem(l, gd, h)?;
    let section = Section::canonical(l, gd, h)?;
    let im = restrict_system(m, &sub.linking);
    let r = right_kan_extension(l, &sub.linking, gd, &im, &section)?;
    let big = Cohomology::compute(l.cat(), &r, maxdeg)?.dims();
    let small = Cohomology::compute(sub.linking.cat(), &im, maxdeg)?.dims();
    Ok(VerificationReport::new(
        "shapiro",
        "H^i(L, R_iota iota*M) and H^i(L_H, iota*M) have equal dimensions",
        json!({ "H": subgroup_json(h), "kan_extension": big, "subsystem": small }),
        (big != small).then(|| json!({ "kan_extension": big, "subsystem": small })),
    ))
}

/// `PreTr ∘ δ = [Γ:H]·id` on objects and `Tr ∘ Res = [Γ:H]·id` on cohomology.
pub fn normalization(ctx: &Context, m: &CoefficientSystem, h: &Subgroup, maxdeg: usize) -> Res {
    let (l, gd) = (&ctx.linking, &ctx.gamma);
    let f = m.field();
    let idx = index(ctx, h);
    let c = (idx % f.p() as usize) as u32;
    let section = Section::canonical(l, gd, h)?;
    let sub = build_p_prime_subsystem(l, gd, h)?;
    let r = right_kan_extension(l, &sub.linking, gd, &restrict_system(m, &sub.linking), &section)?;
    let pt = pre_transfer(l, m, &section)?;
    let d = unit_delta(l, m, &section)?;
    pt.check(l.cat(), &r, m)?;
    d.check(l.cat(), m, &r)?;
    let mut witness = None;
    for (o, comp) in pt.compose(&d, f).components.iter().enumerate() {
        if *comp != Matrix::scalar(m.dim(o as u32), c) {
            witness = Some(json!({ "object": o, "component": matrix_json(comp) }));
            break;
        }
    }
    let table = CohomologyTable::new(l, gd, m, maxdeg);
    let whole = table.whole();
    let mut composites = Vec::new();
    for n in 0..=maxdeg {
        let tr = table.transfer(n, &section)?;
        let res = table.restriction(n, &whole, h)?;
        let comp = tr.mul(&res, f);
        let d = table.level(&whole)?.cohomology.dim(n);
        if witness.is_none() && comp != Matrix::scalar(d, c) {
            witness = Some(json!({ "degree": n, "tr_res": matrix_json(&comp) }));
        }
        composites.push(matrix_json(&comp));
    }
    Ok(VerificationReport::new(
        "normalization",
        "PreTr after delta and Tr after Res are multiplication by the index",
        json!({ "H": subgroup_json(h), "index": idx, "factor": c, "tr_res": composites }),
        witness,
    ))
}

pub fn double_coset(ctx: &Context, m: &CoefficientSystem, h: &Subgroup, k: &Subgroup, degrees: &[usize], seeds: std::ops::Range<u64>) -> Res {
    let table = CohomologyTable::new(&ctx.linking, &ctx.gamma, m, degrees.iter().copied().max().unwrap_or(0));
    let out = check_double_coset(&table, h, k, degrees, seeds)?;
    Ok(VerificationReport::new(
        "double-coset",
        "Res_H after Tr_K equals the sum over double cosets of Tr, conjugation and Res, on random cochains",
        json!({ "H": subgroup_json(h), "K": subgroup_json(k), "trials": out.trials, "evaluations": out.evaluations }),
        out.mismatch.as_ref().map(mismatch_json),
    ))
}

pub fn transitivity(ctx: &Context, m: &CoefficientSystem, h: &Subgroup, k: &Subgroup, degrees: &[usize], seeds: std::ops::Range<u64>) -> Res {
    let table = CohomologyTable::new(&ctx.linking, &ctx.gamma, m, degrees.iter().copied().max().unwrap_or(0));
    let out = check_transitivity(&table, h, k, degrees, seeds)?;
    Ok(VerificationReport::new(
        "transitivity",
        "Tr_H equals Tr_K after Tr_H^K on random cochains",
        json!({ "H": subgroup_json(h), "K": subgroup_json(k), "trials": out.trials, "evaluations": out.evaluations }),
        out.mismatch.as_ref().map(mismatch_json),
    ))
}

pub fn stable_elements(ctx: &Context, m: &CoefficientSystem, h: &Subgroup, maxdeg: usize) -> Res {
    let table = CohomologyTable::new(&ctx.linking, &ctx.gamma, m, maxdeg);
    let f = m.field();
    let mut dims = Vec::new();
    let mut witness = None;
    for n in 0..=maxdeg {
        let stable = table.stable_elements(n, h)?;
        let image = table.restriction_image(n, h)?;
        let ambient = table.level(h)?.cohomology.dim(n);
        if witness.is_none() && !same_span(f, ambient, &stable, &image) {
            witness = Some(json!({ "degree": n, "stable": stable, "image": image }));
        }
        dims.push(image.len());
    }
    Ok(VerificationReport::new(
        "stable-elements",
        "the image of restriction to L_H is the subspace of stable elements",
        json!({ "H": subgroup_json(h), "image_dims": dims }),
        witness,
    ))
}

pub fn frobenius(ctx: &Context, h: &Subgroup, total: usize) -> Res {
    let m = CoefficientSystem::constant(ctx.linking.cat(), Fp::new(ctx.prime()), 1);
    let table = CohomologyTable::new(&ctx.linking, &ctx.gamma, &m, total);
    let out = check_frobenius(&table, h, total)?;
    Ok(VerificationReport::new(
        "frobenius",
        "Tr(Res(x) y) - x Tr(y) is a coboundary for basis classes",
        json!({ "H": subgroup_json(h), "pairs": out.pairs }),
        out.failure.map(|w| json!({ "degrees": w.degrees, "classes": w.classes, "difference": w.difference })),
    ))
}

/// A section of `Γ/H` choosing lifts uniformly at random.
pub fn random_section(ctx: &Context, h: &Subgroup, seed: u64) -> fuscoh_core::Result<Section> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Section::with_choice(&ctx.linking, &ctx.gamma, h, |n| rng.gen_range(0..n))
}

pub fn section_independence(ctx: &Context, m: &CoefficientSystem, h: &Subgroup, maxdeg: usize, seeds: std::ops::Range<u64>) -> Res {
    let table = CohomologyTable::new(&ctx.linking, &ctx.gamma, m, maxdeg);
    let canonical = Section::canonical(&ctx.linking, &ctx.gamma, h)?;
    let reference: Vec<Matrix> = (0..=maxdeg).map(|n| table.transfer(n, &canonical)).collect::<Result<_, _>>()?;
    let mut witness = None;
    let mut distinct = 0;
    let mut trials = 0;
    for seed in seeds {
        let s = random_section(ctx, h, seed)?;
        trials += 1;
        if s != canonical {
            distinct += 1;
        }
        for n in 0..=maxdeg {
            let tr = table.transfer(n, &s)?;
            if witness.is_none() && tr != reference[n] {
                witness = Some(json!({ "seed": seed, "degree": n, "section": s.morphisms(), "transfer": matrix_json(&tr), "canonical": matrix_json(&reference[n]) }));
            }
        }
    }
    Ok(VerificationReport::new(
        "section-independence",
        "transfer matrices do not depend on the section",
        json!({ "H": subgroup_json(h), "sections": trials, "distinct_from_canonical": distinct }),
        witness,
    ))
}

pub fn geometric_comparison(ctx: &Context, m: &CoefficientSystem, h: &Subgroup, maxdeg: usize) -> Res {
    let (l, gd) = (&ctx.linking, &ctx.gamma);
    let idx = index(ctx, h);
    let cov = CoveringCategory::build(l, gd, h)?;
    let components = cov.undercategory_components(l)?;
    let mut witness = None;
    if cov.cat().object_count() != l.object_count() * idx {
        witness = Some(json!({ "covering_objects": cov.cat().object_count(), "expected": l.object_count() * idx }));
    }
    if witness.is_none() && components.iter().any(|&c| c != idx) {
        witness = Some(json!({ "undercategory_components": components }));
    }
    let table = CohomologyTable::new(l, gd, m, maxdeg);
    let cmp = compare_transfers(&table, h, maxdeg)?;
    if witness.is_none() {
        if let Some(c) = cmp.iter().find(|c| !c.equal()) {
            witness = Some(json!({ "degree": c.degree, "algebraic": matrix_json(&c.algebraic), "geometric": matrix_json(&c.geometric) }));
        }
    }
    Ok(VerificationReport::new(
        "geometric-comparison",
        "the transfer through the covering category agrees with the algebraic transfer",
        json!({
            "H": subgroup_json(h),
            "covering_objects": cov.cat().object_count(),
            "covering_morphisms": cov.cat().morphism_count(),
            "undercategory_components": components,
            "transfers": cmp.iter().map(|c| matrix_json(&c.algebraic)).collect::<Vec<_>>(),
        }),
        witness,
    ))
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize, f: Fp) -> Matrix {
    loop {
        let data = (0..n * n).map(|_| rng.gen_range(0..f.p())).collect();
        let m = Matrix::from_rows(n, n, data);
        if m.rank(f) == n {
            return m;
        }
    }
}

/// A random split short exact sequence `0 -> A -> B -> C -> 0` on `L_H`,
/// with `B` carried to a random basis at every object.
pub fn random_sequence(
    ctx: &Context,
    lh: &fuscoh_core::linking::LinkingSystem,
    seed: u64,
) -> fuscoh_core::Result<(CoefficientSystem, CoefficientSystem, CoefficientSystem, NaturalTransformation, NaturalTransformation)> {
    let f = Fp::new(ctx.prime());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subgroups = all_subgroups(ctx);
    let piece = |rng: &mut ChaCha8Rng| -> fuscoh_core::Result<CoefficientSystem> {
        let count = rng.gen_range(1..=2);
        let mut acc: Option<CoefficientSystem> = None;
        for _ in 0..count {
            let k = &subgroups[rng.gen_range(0..subgroups.len())];
            let p = if rng.gen_bool(0.5) {
                CoefficientSystem::constant(lh.cat(), f, 1)
            } else {
                restrict_system(&permutation_system(&ctx.linking, &ctx.gamma, k, f)?, lh)
            };
            acc = Some(match acc {
                None => p,
                Some(a) => a.direct_sum(&p),
            });
        }
        Ok(acc.unwrap())
    };
    let a = piece(&mut rng)?;
    let c = piece(&mut rng)?;
    let split = a.direct_sum(&c);
    let n_obj = lh.object_count();
    let bases: Vec<Matrix> = (0..n_obj).map(|o| random_invertible(&mut rng, split.dim(o as u32), f)).collect();
    let b = split.conjugated(lh.cat(), &bases)?;
    let mut inc = Vec::new();
    let mut proj = Vec::new();
    for (o, t) in bases.iter().enumerate() {
        let (da, dc) = (a.dim(o as u32), c.dim(o as u32));
        let i0 = Matrix::vstack(da, &[Matrix::identity(da), Matrix::zero(dc, da)]);
        let q0 = Matrix::hstack(dc, &[Matrix::zero(dc, da), Matrix::identity(dc)]);
        inc.push(t.mul(&i0, f));
        proj.push(q0.mul(&t.inverse(f).expect("invertible"), f));
    }
    Ok((a, b, c, NaturalTransformation { components: inc }, NaturalTransformation { components: proj }))
}

pub fn exactness(ctx: &Context, h: &Subgroup, seeds: std::ops::Range<u64>) -> Res {
    let (l, gd) = (&ctx.linking, &ctx.gamma);
    let sub = build_p_prime_subsystem(l, gd, h)?;
    let section = Section::canonical(l, gd, h)?;
    let mut witness = None;
    let mut trials = 0;
    for seed in seeds {
        trials += 1;
        let (a, b, c, i, q) = random_sequence(ctx, &sub.linking, seed)?;
        let rep = exactness_probe(l, &sub.linking, gd, &section, (&a, &b, &c), &i, &q)?;
        if !rep.exact {
            witness = Some(json!({ "seed": seed, "failing_object": rep.failing_object }));
            break;
        }
    }
    Ok(VerificationReport::new(
        "exactness",
        "the right Kan extension carries short exact sequences on L_H to short exact sequences on L",
        json!({ "H": subgroup_json(h), "sequences": trials }),
        witness,
    ))
}

struct FnCochain<F: Fn(&Chain) -> Vec<u32>> {
    degree: usize,
    f: F,
}

impl<F: Fn(&Chain) -> Vec<u32>> Cochain for FnCochain<F> {
    fn degree(&self) -> usize {
        self.degree
    }

    fn eval(&self, chain: &Chain) -> Vec<u32> {
        (self.f)(chain)
    }
}

/// The transfer `H^n(L_H) -> H^n(L)` computed as classical group transfer
/// `H^n(N_H) -> H^n(N)` for `L` with the single object `S` and `C'_G(S) = 1`,
/// where `N = N_G(S)` and `N_H` is the preimage of `H`.
///
/// Nerve chains `(α_1, .., α_n)` correspond to bar tuples `(a_1⁻¹, .., a_n⁻¹)`.
pub fn classical_transfer_matrices(ctx: &Context, h: &Subgroup, maxdeg: usize) -> anyhow::Result<Vec<(Matrix, Matrix)>> {
    let (l, gd) = (&ctx.linking, &ctx.gamma);
    if l.object_count() != 1 || !l.complement(l.s_object()).is_trivial() {
        anyhow::bail!("classical transfer needs a single object with trivial complement");
    }
    let g = l.group();
    let p = ctx.prime();
    let m = CoefficientSystem::constant(l.cat(), Fp::new(p), 1);
    let table = CohomologyTable::new(l, gd, &m, maxdeg);
    let small = table.level(h)?;
    let big = table.level(&table.whole())?;
    let s = l.s_object();
    let reps: Vec<Vec<u32>> = l.aut_s().iter().map(|&a| g.element(l.rep(a)).to_vec()).collect();
    let n_group = PermGroup::generate(g.degree(), &reps);
    let to_oracle = |x: u32| n_group.index_of(g.element(x)).expect("rep lies in N");
    let to_core = |y: u32| g.index_of(n_group.element(y)).expect("element of G");
    let nh: Vec<u32> = (0..small.linking.morphism_count() as u32).map(|m| to_oracle(small.linking.rep(m))).collect();
    let cosets = RightCosets::new(&n_group, &nh);
    let section = Section::canonical(l, gd, h)?;
    let mut out = Vec::new();
    for n in 0..=maxdeg {
        let classical = fuscoh_core::cohomology::induced_matrix(big.cohomology.dim(n), small.cohomology.dim(n), |k| {
            let phi = small.cohomology.class_cochain(n, k);
            let bar_h = |args: &[u32]| -> u32 {
                let mors = args
                    .iter()
                    .map(|&y| small.linking.morphism(s, s, g.inv(to_core(y))).expect("element of N_H"))
                    .collect();
                phi.eval(&Chain::new(s, mors))[0]
            };
            let nerve = FnCochain {
                degree: n,
                f: |c: &Chain| {
                    let args: Vec<u32> = c.mors.iter().map(|&mm| to_oracle(g.inv(big.linking.rep(mm)))).collect();
                    vec![transfer_value(&n_group, &cosets, &bar_h, &args, p)]
                },
            };
            big.cohomology.read_class(&nerve)
        })?;
        out.push((classical, table.transfer(n, &section)?));
    }
    Ok(out)
}

pub fn classical_transfer(ctx: &Context, h: &Subgroup, maxdeg: usize) -> anyhow::Result<VerificationReport> {
    let mats = classical_transfer_matrices(ctx, h, maxdeg)?;
    let witness = mats
        .iter()
        .enumerate()
        .find(|(_, (a, b))| a != b)
        .map(|(n, (a, b))| json!({ "degree": n, "classical": matrix_json(a), "local": matrix_json(b) }));
    Ok(VerificationReport::new(
        "classical-transfer",
        "the transfer of L_H into L equals the classical group cohomology transfer",
        json!({ "H": subgroup_json(h), "matrices": mats.iter().map(|(a, _)| matrix_json(a)).collect::<Vec<_>>() }),
        witness,
    ))
}
