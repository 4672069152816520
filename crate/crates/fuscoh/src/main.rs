use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context as _;
use clap::{Parser, Subcommand};
use fuscoh::context::{self, Context};
use fuscoh::fixtures;
use fuscoh::input::{parse_subgroup, resolve_group, CoeffSpec};
use fuscoh::verify::{self, VerificationReport};
use fuscoh_core::cohomology::maps::CohomologyTable;
use fuscoh_core::cohomology::{Cohomology, DEFAULT_MAXDEG};
use fuscoh_core::gamma::{build_p_prime_subsystem, gamma_p, Section};
use fuscoh_core::group;
use fuscoh_core::linalg::Matrix;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "fuscoh", version, about = "Cohomology and transfers of p-local finite groups")]
struct Cli {
    /// The prime, required when the source is a group rather than a cache.
    #[arg(long, global = true)]
    p: Option<u32>,
    #[arg(long, global = true)]
    maxdeg: Option<usize>,
    /// Subgroup of Gamma: trivial, all, index:k or aut:i,j.
    #[arg(long = "H", global = true, default_value = "trivial")]
    h: String,
    #[arg(long = "K", global = true, default_value = "all")]
    k: String,
    /// constant, constant:d, permutation:<H spec>, inline JSON or a JSON file.
    #[arg(long, global = true, default_value = "constant")]
    coeff: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of seeded random trials for the randomized checks.
    #[arg(long, global = true, default_value_t = 10)]
    trials: u64,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Recompute the oracle fixture files (into --cache-dir, default the crate fixtures).
    #[arg(long)]
    regen_oracles: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Build (S, F, L, Gamma, theta) and write the JSON cache.
    Build { source: Vec<String> },
    /// Dimensions and representatives of H^n(L, M).
    Cohomology { source: Vec<String> },
    /// Restriction and transfer matrices between L_H and L.
    Transfer { source: Vec<String> },
    /// Check a property and print a report.
    Verify { property: String, source: Vec<String> },
    /// Gamma, its multiplication table and the labelling of Aut_L(S).
    Gamma { source: Vec<String> },
    /// The subsystem L_H attached to --H.
    Subsystem { source: Vec<String> },
}

#[derive(Debug, thiserror::Error)]
#[error("verification failed")]
struct VerificationFailed;

fn load_source(cli: &Cli, source: &[String]) -> anyhow::Result<Context> {
    if source.is_empty() {
        anyhow::bail!(fuscoh::input::ParseError::new(0, "missing group or cache argument"));
    }
    if source.len() == 1 && source[0].ends_with(".json") {
        return Ok(context::load(std::path::Path::new(&source[0]))?);
    }
    let spec = resolve_group(source)?;
    let p = cli.p.context("--p is required when the source is a group")?;
    log::info!("building {} at p = {}", spec.name, p);
    Ok(Context::build(spec, p)?)
}

fn maxdeg(cli: &Cli) -> usize {
    cli.maxdeg.unwrap_or(DEFAULT_MAXDEG)
}

fn matrix_json(m: &Matrix) -> Value {
    json!(m.to_row_vecs())
}

fn cmd_build(cli: &Cli, source: &[String]) -> anyhow::Result<Value> {
    let ctx = load_source(cli, source)?;
    let art = ctx.artifact();
    let dir = cli.cache_dir.clone().unwrap_or_else(|| PathBuf::from("."));
    let path = art.write(&dir)?;
    Ok(json!({
        "cache": path.display().to_string(),
        "group_order": art.order,
        "sylow_order": art.sylow.len(),
        "objects": art.linking.objects.len(),
        "morphisms": art.linking.morphisms.len(),
        "gamma_order": art.gamma.order,
    }))
}

fn cmd_cohomology(cli: &Cli, source: &[String]) -> anyhow::Result<Value> {
    let ctx = load_source(cli, source)?;
    let spec = CoeffSpec::parse(&cli.coeff)?;
    let m = spec.build(&ctx.linking, &ctx.gamma)?;
    let n = maxdeg(cli);
    let h = Cohomology::compute(ctx.linking.cat(), &m, n)?;
    let reps: Vec<Value> = (0..=n).map(|d| json!(h.result().representatives(d))).collect();
    let sizes: Vec<usize> = (0..=n).map(|d| h.result().cochain_dim(d)).collect();
    Ok(json!({
        "coefficients": spec,
        "prime": ctx.prime(),
        "dims": h.dims(),
        "basis": "cocycles of Hom(Q, M) for the projective resolution Q by representables",
        "cochain_dims": sizes,
        "representatives": reps,
    }))
}

fn cmd_transfer(cli: &Cli, source: &[String]) -> anyhow::Result<Value> {
    let ctx = load_source(cli, source)?;
    let m = CoeffSpec::parse(&cli.coeff)?.build(&ctx.linking, &ctx.gamma)?;
    let h = parse_subgroup(&cli.h, &ctx.linking, &ctx.gamma)?;
    let n = maxdeg(cli);
    let table = CohomologyTable::new(&ctx.linking, &ctx.gamma, &m, n);
    let whole = table.whole();
    let section = Section::canonical(&ctx.linking, &ctx.gamma, &h)?;
    let index = ctx.gamma.gamma().order() / h.order();
    let f = m.field();
    let mut degrees = Vec::new();
    for d in 0..=n {
        let res = table.restriction(d, &whole, &h)?;
        let tr = table.transfer(d, &section)?;
        let comp = tr.mul(&res, f);
        let dim = table.level(&whole)?.cohomology.dim(d);
        degrees.push(json!({
            "degree": d,
            "res": matrix_json(&res),
            "tr": matrix_json(&tr),
            "tr_res": matrix_json(&comp),
            "equals_index": comp == Matrix::scalar(dim, (index % f.p() as usize) as u32),
        }));
    }
    Ok(json!({ "H": h.members(), "index": index, "degrees": degrees }))
}

fn cmd_gamma(cli: &Cli, source: &[String]) -> anyhow::Result<Value> {
    let ctx = load_source(cli, source)?;
    let gm = ctx.gamma.gamma();
    let table: Vec<Vec<u32>> = (0..gm.order() as u32).map(|a| (0..gm.order() as u32).map(|b| gm.mul(a, b)).collect()).collect();
    let labels: Vec<(u32, u32)> = ctx.linking.aut_s().iter().map(|&a| (ctx.linking.rep(a), ctx.gamma.theta_hat(a))).collect();
    let (gp, hyper) = gamma_p(ctx.fusion());
    let subgroups: Vec<Vec<u32>> = group::subgroups_of(gm, &gm.whole()).iter().map(|s| s.members().to_vec()).collect();
    let pres = ctx.gamma.presentation();
    Ok(json!({
        "order": gm.order(),
        "cyclic": verify::is_cyclic(gm),
        "table": table,
        "aut_s_labels": labels,
        "subgroups": subgroups,
        "presentation": { "generators": pres.presentation.generators, "relators": pres.presentation.relators },
        "gamma_p_order": gp.order(),
        "hyperfocal_order": hyper.order(),
    }))
}

fn cmd_subsystem(cli: &Cli, source: &[String]) -> anyhow::Result<Value> {
    let ctx = load_source(cli, source)?;
    let h = parse_subgroup(&cli.h, &ctx.linking, &ctx.gamma)?;
    let sub = build_p_prime_subsystem(&ctx.linking, &ctx.gamma, &h)?;
    let lh = &sub.linking;
    let objects: Vec<Vec<u32>> = (0..lh.object_count() as u32).map(|a| lh.object_subgroup(a).members().to_vec()).collect();
    Ok(json!({
        "H": h.members(),
        "objects": objects,
        "morphisms": lh.morphism_count(),
        "aut_s": lh.aut_s().len(),
        "saturated": sub.fusion.check_saturation().passed(),
    }))
}

fn run_verify(cli: &Cli, property: &str, source: &[String]) -> anyhow::Result<VerificationReport> {
    if !verify::PROPERTIES.contains(&property) {
        anyhow::bail!(fuscoh::input::ParseError::new(
            0,
            format!("unknown property `{}`; expected one of {}", property, verify::PROPERTIES.join(", ")),
        ));
    }
    let ctx = load_source(cli, source)?;
    let (l, gd) = (&ctx.linking, &ctx.gamma);
    let h = parse_subgroup(&cli.h, l, gd)?;
    let k = parse_subgroup(&cli.k, l, gd)?;
    let m = CoeffSpec::parse(&cli.coeff)?.build(l, gd)?;
    let n = maxdeg(cli);
    let seeds = cli.seed..cli.seed + cli.trials;
    let degrees: Vec<usize> = (0..=n).collect();
    let report = match property {
        "saturation" => verify::saturation(&ctx),
        "linking-axioms" => verify::linking_axioms(&ctx),
        "gamma-surjectivity" => verify::gamma_surjectivity(&ctx),
        "gamma-cross-check" => verify::gamma_cross_check(&ctx).context("the cross-check needs S to be the only centric subgroup")?,
        "shapiro" => verify::shapiro(&ctx, &m, &h, n)?,
        "normalization" => verify::normalization(&ctx, &m, &h, n)?,
        "double-coset" => verify::double_coset(&ctx, &m, &h, &k, &degrees, seeds)?,
        "transitivity" => verify::transitivity(&ctx, &m, &h, &k, &degrees, seeds)?,
        "stable-elements" => verify::stable_elements(&ctx, &m, &h, n)?,
        "frobenius" => verify::frobenius(&ctx, &h, n)?,
        "section-independence" => verify::section_independence(&ctx, &m, &h, n, seeds)?,
        "geometric-comparison" => verify::geometric_comparison(&ctx, &m, &h, n)?,
        "exactness" => verify::exactness(&ctx, &h, seeds)?,
        "classical-transfer" => verify::classical_transfer(&ctx, &h, n)?,
        _ => unreachable!(),
    };
    Ok(report)
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.is::<VerificationFailed>() {
        return 1;
    }
    for cause in e.chain() {
        if let Some(core) = cause.downcast_ref::<fuscoh_core::Error>() {
            return match core {
                fuscoh_core::Error::DegreeCapExceeded { .. }
                | fuscoh_core::Error::ElementCapExceeded { .. }
                | fuscoh_core::Error::CosetCapExceeded { .. } => 3,
                _ => 2,
            };
        }
    }
    2
}

/// Writes JSON to stdout; a closed pipe is not an error.
fn emit(v: &Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(v).expect("output serializes");
    let _ = writeln!(std::io::stdout().lock(), "{}", text);
}

fn run(cli: &Cli) -> anyhow::Result<Value> {
    if cli.regen_oracles {
        let dir = cli.cache_dir.clone().unwrap_or_else(fixtures::fixtures_dir);
        let paths = fixtures::regenerate(&dir)?;
        return Ok(json!({ "fixtures": paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>() }));
    }
    let command = cli.command.as_ref().context("no command given; see --help")?;
    match command {
        Command::Build { source } => cmd_build(cli, source),
        Command::Cohomology { source } => cmd_cohomology(cli, source),
        Command::Transfer { source } => cmd_transfer(cli, source),
        Command::Gamma { source } => cmd_gamma(cli, source),
        Command::Subsystem { source } => cmd_subsystem(cli, source),
        Command::Verify { property, source } => {
            let report = run_verify(cli, property, source)?;
            emit(&serde_json::to_value(&report)?);
            if report.passed() {
                Ok(Value::Null)
            } else {
                Err(VerificationFailed.into())
            }
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Value::Null) => ExitCode::SUCCESS,
        Ok(v) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Err(e) => {
            if !e.is::<VerificationFailed>() {
                eprintln!("error: {:#}", e);
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
