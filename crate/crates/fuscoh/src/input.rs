//! Parsing of group files, subgroup specs and coefficient specs.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use fuscoh_core::coefficients::{permutation_system, CoefficientSystem};
use fuscoh_core::gamma::GammaData;
use fuscoh_core::group::{self, builtin, FiniteGroup, Perm, Subgroup};
use fuscoh_core::linalg::{Fp, Matrix};
use fuscoh_core::linking::LinkingSystem;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
    /// Set when the text parsed but building the group failed.
    pub cause: Option<fuscoh_core::Error>,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> ParseError {
        ParseError { line, message: message.into(), cause: None }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        self.cause.as_ref().map(|e| e as _)
    }
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::new(line, message)
}

/// A group given by generating permutations of `0..degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Perm>,
}

impl GroupSpec {
    pub fn from_group(name: impl Into<String>, g: &FiniteGroup) -> GroupSpec {
        GroupSpec { name: name.into(), degree: g.degree(), generators: g.generators().to_vec() }
    }

    pub fn generate(&self) -> fuscoh_core::Result<FiniteGroup> {
        group::generate_group(self.degree, &self.generators)
    }
}

/// `sym 4`, `alt 4`, `dihedral 8`, `cyclic 5` or `gl 3 2`.
pub fn parse_builtin(text: &str, line: usize) -> Result<GroupSpec, ParseError> {
    let words: Vec<&str> = text.split_whitespace().collect();
    let nums: Vec<usize> = words
        .iter()
        .skip(1)
        .map(|w| w.parse::<usize>().map_err(|_| err(line, format!("expected a number, found `{}`", w))))
        .collect::<Result<_, _>>()?;
    let kind = *words.first().ok_or_else(|| err(line, "empty builtin"))?;
    let arity = if kind == "gl" { 2 } else { 1 };
    if nums.len() != arity {
        return Err(err(line, format!("builtin `{}` takes {} argument(s)", kind, arity)));
    }
    let built = match kind {
        "sym" => builtin::symmetric(nums[0]),
        "alt" => builtin::alternating(nums[0]),
        "dihedral" => builtin::dihedral(nums[0]),
        "cyclic" => builtin::cyclic(nums[0]),
        "gl" => builtin::general_linear(nums[0], nums[1] as u32),
        other => return Err(err(line, format!("unknown builtin `{}`", other))),
    };
    let g = built.map_err(|e| ParseError { cause: Some(e.clone()), ..err(line, e.to_string()) })?;
    Ok(GroupSpec::from_group(words.join("_"), &g))
}

/// Cycles on one line, e.g. `(0 1 2)(3 4)`; `()` is the identity.
pub fn parse_cycles(text: &str, line: usize) -> Result<Vec<Vec<u32>>, ParseError> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| err(line, format!("expected `(`, found `{}`", rest)))?;
        let close = body.find(')').ok_or_else(|| err(line, "unclosed cycle"))?;
        let inner = &body[..close];
        if inner.contains('(') {
            return Err(err(line, "nested `(` inside a cycle"));
        }
        let points: Vec<u32> = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|w| !w.is_empty())
            .map(|w| w.parse::<u32>().map_err(|_| err(line, format!("bad point `{}`", w))))
            .collect::<Result<_, _>>()?;
        let mut seen = points.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(err(line, "repeated point in a cycle"));
        }
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// A group file: one generator per line, or a single `builtin:` line.
/// Blank lines and `#` comments are skipped.
pub fn parse_group_file(text: &str, name: &str) -> Result<GroupSpec, ParseError> {
    let mut raw: Vec<(usize, Vec<Vec<u32>>)> = Vec::new();
    let mut spec = None;
    for (i, full) in text.lines().enumerate() {
        let line = i + 1;
        let content = full.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(b) = content.strip_prefix("builtin:") {
            if spec.is_some() || !raw.is_empty() {
                return Err(err(line, "a builtin line must be the only generator line"));
            }
            spec = Some(parse_builtin(b, line)?);
            continue;
        }
        if spec.is_some() {
            return Err(err(line, "a builtin line must be the only generator line"));
        }
        raw.push((line, parse_cycles(content, line)?));
    }
    if let Some(s) = spec {
        return Ok(s);
    }
    if raw.is_empty() {
        return Err(err(text.lines().count().max(1), "no generators"));
    }
    let degree = raw.iter().flat_map(|(_, c)| c.iter().flatten()).map(|&x| x as usize + 1).max().unwrap_or(1);
    let generators = raw
        .iter()
        .map(|(line, c)| group::perm_from_cycles(degree, c).map_err(|e| err(*line, e.to_string())))
        .collect::<Result<_, _>>()?;
    Ok(GroupSpec { name: name.to_string(), degree, generators })
}

/// `builtin:sym 3`, `builtin:sym` followed by `3`, or a path to a group file.
pub fn resolve_group(words: &[String]) -> anyhow::Result<GroupSpec> {
    let joined = words.join(" ");
    if let Some(b) = joined.strip_prefix("builtin:") {
        return Ok(parse_builtin(b, 1)?);
    }
    if words.len() != 1 {
        anyhow::bail!(err(1, format!("expected one group file, found `{}`", joined)));
    }
    let path = Path::new(&words[0]);
    let text = std::fs::read_to_string(path)?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("group");
    Ok(parse_group_file(&text, name)?)
}

/// Subgroup of Γ: `trivial`, `all`, `index:k` (the k-th subgroup in canonical
/// order) or `aut:i,j,...` (generated by `Θ̂` of the listed `Aut_L(S)` morphisms).
pub fn parse_subgroup(text: &str, l: &LinkingSystem, gd: &GammaData) -> anyhow::Result<Subgroup> {
    let gm = gd.gamma();
    let all = group::subgroups_of(gm, &gm.whole());
    let t = text.trim();
    if t == "trivial" {
        return Ok(Subgroup::trivial());
    }
    if t == "all" {
        return Ok(gm.whole());
    }
    if let Some(k) = t.strip_prefix("index:") {
        let k: usize = k.parse().map_err(|_| anyhow::anyhow!("bad subgroup index `{}`", k))?;
        return all
            .get(k)
            .cloned()
            .ok_or_else(|| anyhow::anyhow!("subgroup index {} out of range ({} subgroups)", k, all.len()));
    }
    if let Some(list) = t.strip_prefix("aut:") {
        let mut gens = Vec::new();
        for w in list.split(',').filter(|w| !w.is_empty()) {
            let i: usize = w.trim().parse().map_err(|_| anyhow::anyhow!("bad automorphism index `{}`", w))?;
            let m = *l.aut_s().get(i).ok_or_else(|| anyhow::anyhow!("automorphism index {} out of range", i))?;
            gens.push(gd.theta_hat(m));
        }
        return Ok(group::closure_of(gm, &gens));
    }
    anyhow::bail!("unknown subgroup spec `{}`", t)
}

/// A coefficient system on the full linking system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CoeffSpec {
    Constant {
        dim: usize,
    },
    Permutation {
        subgroup: String,
    },
    Explicit {
        dims: BTreeMap<u32, usize>,
        matrices: BTreeMap<u32, Vec<Vec<u32>>>,
    },
}

impl CoeffSpec {
    /// `constant`, `constant:d`, `permutation:<H spec>`, inline JSON, or a JSON file.
    pub fn parse(text: &str) -> anyhow::Result<CoeffSpec> {
        let t = text.trim();
        if t == "constant" {
            return Ok(CoeffSpec::Constant { dim: 1 });
        }
        if let Some(d) = t.strip_prefix("constant:") {
            return Ok(CoeffSpec::Constant { dim: d.parse()? });
        }
        if let Some(h) = t.strip_prefix("permutation:") {
            return Ok(CoeffSpec::Permutation { subgroup: h.to_string() });
        }
        if t.starts_with('{') {
            return Ok(serde_json::from_str(t)?);
        }
        let body = std::fs::read_to_string(t).map_err(|e| anyhow::anyhow!("coefficient spec `{}`: {}", t, e))?;
        Ok(serde_json::from_str(&body)?)
    }

    pub fn build(&self, l: &LinkingSystem, gd: &GammaData) -> anyhow::Result<CoefficientSystem> {
        let field = Fp::new(l.fusion().prime());
        match self {
            CoeffSpec::Constant { dim } => Ok(CoefficientSystem::constant(l.cat(), field, *dim)),
            CoeffSpec::Permutation { subgroup } => {
                let k = parse_subgroup(subgroup, l, gd)?;
                Ok(permutation_system(l, gd, &k, field)?)
            }
            CoeffSpec::Explicit { dims, matrices } => {
                let n = l.object_count() as u32;
                let dims: Vec<usize> = (0..n)
                    .map(|o| dims.get(&o).copied().ok_or_else(|| anyhow::anyhow!("missing dim for object {}", o)))
                    .collect::<anyhow::Result<_>>()?;
                let mut mats = Vec::with_capacity(l.morphism_count());
                for m in 0..l.morphism_count() as u32 {
                    let rows = matrices.get(&m).ok_or_else(|| anyhow::anyhow!("missing matrix for morphism {}", m))?;
                    let cols = dims[l.src(m) as usize];
                    if rows.len() != dims[l.tgt(m) as usize] || rows.iter().any(|r| r.len() != cols) {
                        anyhow::bail!("matrix for morphism {} has the wrong shape", m);
                    }
                    if rows.iter().flatten().any(|&x| x >= field.p()) {
                        anyhow::bail!("matrix for morphism {} has entries outside 0..{}", m, field.p());
                    }
                    mats.push(Matrix::from_row_vecs(cols, rows));
                }
                Ok(CoefficientSystem::new(l.cat(), field, dims, mats)?)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_parse() {
        assert_eq!(parse_cycles("(0 1 2)(3 4)", 1).unwrap(), vec![vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(parse_cycles("()", 1).unwrap(), Vec::<Vec<u32>>::new());
        assert_eq!(parse_cycles("(0,1)", 1).unwrap(), vec![vec![0, 1]]);
    }

    #[test]
    fn unclosed_cycle_reports_its_line() {
        let e = parse_group_file("# header\n(0 1 2)\n(0 1\n", "g").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("unclosed"));
    }

    #[test]
    fn repeated_points_are_rejected() {
        assert!(parse_cycles("(0 1 0)", 4).unwrap_err().message.contains("repeated"));
    }

    #[test]
    fn generator_file_matches_builtin() {
        let spec = parse_group_file("(0 1)\n(0 1 2)\n", "s3").unwrap();
        assert_eq!(spec.degree, 3);
        assert_eq!(spec.generate().unwrap().order(), 6);
        let b = parse_group_file("builtin: sym 4\n", "x").unwrap();
        assert_eq!(b.generate().unwrap().order(), 24);
        assert_eq!(parse_group_file("builtin: gl 3 2", "x").unwrap().generate().unwrap().order(), 168);
    }

    #[test]
    fn builtin_errors() {
        assert!(parse_builtin("sym", 1).is_err());
        assert!(parse_builtin("foo 3", 1).unwrap_err().message.contains("unknown"));
        assert!(parse_group_file("builtin: sym 3\n(0 1)\n", "x").unwrap_err().line == 2);
    }

    #[test]
    fn coeff_specs() {
        assert_eq!(CoeffSpec::parse("constant").unwrap(), CoeffSpec::Constant { dim: 1 });
        assert_eq!(
            CoeffSpec::parse("permutation:trivial").unwrap(),
            CoeffSpec::Permutation { subgroup: "trivial".into() }
        );
        let j = CoeffSpec::parse(r#"{"type":"constant","dim":2}"#).unwrap();
        assert_eq!(j, CoeffSpec::Constant { dim: 2 });
    }
}
