//! Acceptance suite: one line per criterion, exact equality throughout.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use fuscoh::context::Context;
use fuscoh::fixtures::{self, FixtureDef, FIXTURES};
use fuscoh::oracle::bar::bar_dims;
use fuscoh::oracle::free::FreeResolution;
use fuscoh::oracle::PermGroup;
use fuscoh::verify::{self, VerificationReport};
use fuscoh_core::coefficients::{permutation_system, CoefficientSystem};
use fuscoh_core::cohomology::Cohomology;
use fuscoh_core::group::Subgroup;
use fuscoh_core::linalg::Fp;

type Outcome = Result<String, String>;

fn fixture(name: &str) -> FixtureDef {
    FixtureDef::by_name(name).expect("known fixture")
}

fn systems(ctx: &Context) -> Vec<(&'static str, CoefficientSystem)> {
    let f = Fp::new(ctx.prime());
    vec![
        ("constant", CoefficientSystem::constant(ctx.linking.cat(), f, 1)),
        ("permutation", permutation_system(&ctx.linking, &ctx.gamma, &Subgroup::trivial(), f).unwrap()),
    ]
}

fn require(report: VerificationReport, label: &str) -> Result<(), String> {
    if report.passed() {
        Ok(())
    } else {
        Err(format!("{}: {}", label, serde_json::to_string(&report.witness).unwrap()))
    }
}

fn core<T>(r: fuscoh_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn c1() -> Outcome {
    let start = Instant::now();
    let mut sizes = Vec::new();
    for def in &FIXTURES {
        let ctx = def.context();
        require(verify::saturation(&ctx), def.name)?;
        require(verify::linking_axioms(&ctx), def.name)?;
        sizes.push(format!("{}:{}obj/{}mor", def.name, ctx.linking.object_count(), ctx.linking.morphism_count()));
    }
    let t = start.elapsed();
    if t >= Duration::from_secs(30) {
        return Err(format!("took {:.2?}", t));
    }
    Ok(format!("{} in {:.2?}", sizes.join(" "), t))
}

fn c2() -> Outcome {
    let want = [("E1", 2), ("E2", 3), ("E3", 1), ("E4", 4)];
    let mut notes = Vec::new();
    for (name, order) in want {
        let ctx = fixture(name).context();
        let gm = ctx.gamma.gamma();
        if gm.order() != order || !verify::is_cyclic(gm) {
            return Err(format!("{}: |Gamma| = {}, cyclic = {}", name, gm.order(), verify::is_cyclic(gm)));
        }
        require(verify::gamma_surjectivity(&ctx), name)?;
        match verify::gamma_cross_check(&ctx) {
            Some(r) => {
                require(r, name)?;
                notes.push(format!("{}:Z/{} (cross-checked)", name, order));
            }
            None => notes.push(format!("{}:Z/{}", name, order)),
        }
    }
    Ok(notes.join(" "))
}

fn c3() -> Outcome {
    let start = Instant::now();
    let dir = fixtures::fixtures_dir();
    let mut notes = Vec::new();
    for def in &FIXTURES {
        let frozen = fixtures::load(&dir, def.name).map_err(|e| e.to_string())?;
        let expected = frozen.get("group_cohomology_dims").ok_or("missing oracle value")?.to_vec();
        let spec = def.spec();
        let g = PermGroup::generate(spec.degree, &spec.generators);
        let live = if def.bar {
            bar_dims(&g, def.prime, def.group_maxdeg)
        } else {
            FreeResolution::build(&g, def.prime, def.group_maxdeg + 1).dims()
        };
        if live != expected {
            return Err(format!("{}: oracle {:?} differs from frozen {:?}", def.name, live, expected));
        }
        let ctx = def.context();
        let m = CoefficientSystem::constant(ctx.linking.cat(), Fp::new(def.prime), 1);
        let dims = core(Cohomology::compute(ctx.linking.cat(), &m, def.group_maxdeg))?.dims();
        if dims != expected {
            return Err(format!("{}: H*(L) = {:?}, H*(BG) = {:?}", def.name, dims, expected));
        }
        notes.push(format!("{}:{:?}", def.name, dims));
    }
    let e1 = fixtures::load(&dir, "E1").map_err(|e| e.to_string())?;
    let eigen = e1.get("sylow_invariant_dims").ok_or("missing oracle value")?;
    let ctx = fixture("E1").context();
    let m = CoefficientSystem::constant(ctx.linking.cat(), Fp::new(3), 1);
    let dims = core(Cohomology::compute(ctx.linking.cat(), &m, 4))?.dims();
    if dims != eigen {
        return Err(format!("E1 degree <= 4: {:?} vs eigenspace {:?}", dims, eigen));
    }
    let t = start.elapsed();
    if t >= Duration::from_secs(300) {
        return Err(format!("took {:.2?}", t));
    }
    Ok(format!("{} E1<=4:{:?} in {:.2?}", notes.join(" "), dims, t))
}

fn c4() -> Outcome {
    let mut count = 0;
    for name in ["E1", "E2", "E4"] {
        let ctx = fixture(name).context();
        for (label, m) in systems(&ctx) {
            for h in verify::all_subgroups(&ctx) {
                require(core(verify::shapiro(&ctx, &m, &h, 4))?, &format!("{} {} |H|={}", name, label, h.order()))?;
                count += 1;
            }
        }
    }
    Ok(format!("{} (fixture, M, H) cases", count))
}

fn c5() -> Outcome {
    let mut count = 0;
    for def in &FIXTURES {
        let ctx = def.context();
        for (label, m) in systems(&ctx) {
            for h in verify::all_subgroups(&ctx) {
                let r = core(verify::normalization(&ctx, &m, &h, 4))?;
                require(r, &format!("{} {} |H|={}", def.name, label, h.order()))?;
                count += 1;
            }
        }
    }
    Ok(format!("{} (fixture, M, H) cases", count))
}

fn c6() -> Outcome {
    let mut notes = Vec::new();
    for name in ["E1", "E4"] {
        let ctx = fixture(name).context();
        let m = CoefficientSystem::constant(ctx.linking.cat(), Fp::new(ctx.prime()), 1);
        let subs = verify::all_subgroups(&ctx);
        let mut least = usize::MAX;
        for h in &subs {
            for k in &subs {
                let r = core(verify::double_coset(&ctx, &m, h, k, &[0, 1, 2, 3], 0..25))?;
                least = least.min(r.details["trials"].as_u64().unwrap() as usize);
                require(r, &format!("{} |H|={} |K|={}", name, h.order(), k.order()))?;
            }
        }
        notes.push(format!("{}:{} pairs x {} cochains", name, subs.len() * subs.len(), least));
    }
    Ok(notes.join(" "))
}

fn c7() -> Outcome {
    let ctx = fixture("E4").context();
    let m = CoefficientSystem::constant(ctx.linking.cat(), Fp::new(5), 1);
    let subs = verify::all_subgroups(&ctx);
    let z2 = subs.iter().find(|s| s.order() == 2).ok_or("no subgroup of order 2")?;
    let r = core(verify::transitivity(&ctx, &m, &Subgroup::trivial(), z2, &[0, 1, 2, 3], 0..25))?;
    let trials = r.details["trials"].clone();
    require(r, "E4")?;
    Ok(format!("1 <= Z/2 <= Z/4, {} cochains", trials))
}

fn c8() -> Outcome {
    let e1 = fixtures::load(&fixtures::fixtures_dir(), "E1").map_err(|e| e.to_string())?;
    let eigen = e1.get("sylow_invariant_dims").ok_or("missing oracle value")?.to_vec();
    let mut notes = Vec::new();
    for name in ["E1", "E2"] {
        let ctx = fixture(name).context();
        let m = CoefficientSystem::constant(ctx.linking.cat(), Fp::new(ctx.prime()), 1);
        let r = core(verify::stable_elements(&ctx, &m, &Subgroup::trivial(), 4))?;
        let dims: Vec<usize> = serde_json::from_value(r.details["image_dims"].clone()).unwrap();
        require(r, name)?;
        if name == "E1" && dims != eigen {
            return Err(format!("E1 image dims {:?}, eigenspace {:?}", dims, eigen));
        }
        notes.push(format!("{}:{:?}", name, dims));
    }
    Ok(notes.join(" "))
}

fn c9() -> Outcome {
    let mut pairs = 0;
    for name in ["E1", "E4"] {
        let ctx = fixture(name).context();
        for h in verify::all_subgroups(&ctx) {
            let r = core(verify::frobenius(&ctx, &h, 4))?;
            pairs += r.details["pairs"].as_u64().unwrap();
            require(r, &format!("{} |H|={}", name, h.order()))?;
        }
    }
    Ok(format!("{} class pairs", pairs))
}

fn c10() -> Outcome {
    let mut cases = 0;
    let mut distinct = 0;
    for name in ["E1", "E2", "E4"] {
        let ctx = fixture(name).context();
        for (label, m) in systems(&ctx) {
            for h in verify::all_subgroups(&ctx) {
                let r = core(verify::section_independence(&ctx, &m, &h, 4, 0..5))?;
                distinct += r.details["distinct_from_canonical"].as_u64().unwrap();
                require(r, &format!("{} {} |H|={}", name, label, h.order()))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{} cases x 5 sections, {} differ from canonical", cases, distinct))
}

fn c11() -> Outcome {
    let ctx = fixture("E1").context();
    let r = verify::classical_transfer(&ctx, &Subgroup::trivial(), 4).map_err(|e| e.to_string())?;
    let mats = r.details["matrices"].to_string();
    require(r, "E1")?;
    Ok(format!("Tr by degree {}", mats))
}

fn c12() -> Outcome {
    let mut notes = Vec::new();
    for name in ["E1", "E2"] {
        let ctx = fixture(name).context();
        for (label, m) in systems(&ctx) {
            for h in verify::all_subgroups(&ctx) {
                let r = core(verify::geometric_comparison(&ctx, &m, &h, 4))?;
                if label == "constant" {
                    notes.push(format!("{}|H|={}:{}obj", name, h.order(), r.details["covering_objects"]));
                }
                require(r, &format!("{} {} |H|={}", name, label, h.order()))?;
            }
        }
    }
    Ok(notes.join(" "))
}

fn c13() -> Outcome {
    let mut total = 0;
    for name in ["E1", "E2", "E4"] {
        let ctx = fixture(name).context();
        for h in verify::all_subgroups(&ctx) {
            let r = core(verify::exactness(&ctx, &h, 0..100))?;
            total += r.details["sequences"].as_u64().unwrap();
            require(r, &format!("{} |H|={}", name, h.order()))?;
        }
    }
    Ok(format!("{} sequences", total))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("construction and axioms", c1),
        ("Gamma", c2),
        ("constant coefficients against group cohomology", c3),
        ("Shapiro dimensions", c4),
        ("normalization", c5),
        ("double coset formula on cochains", c6),
        ("transitivity on cochains", c7),
        ("stable elements", c8),
        ("Frobenius reciprocity", c9),
        ("section independence", c10),
        ("classical transfer", c11),
        ("geometric transfer", c12),
        ("exactness of the Kan extension", c13),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {} [{:.2?}] {}", i + 1, name, t, detail),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {} [{:.2?}] {}", i + 1, name, t, why);
            }
        }
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
