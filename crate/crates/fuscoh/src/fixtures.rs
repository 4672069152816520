//! The four reference fixtures and their frozen oracle values.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::input::{parse_builtin, GroupSpec};
use crate::oracle::bar::{bar_dims, invariant_dims};
use crate::oracle::free::FreeResolution;
use crate::oracle::PermGroup;

pub const REGEN_COMMAND: &str = "fuscoh --regen-oracles --cache-dir crates/fuscoh/fixtures";

#[derive(Clone, Copy, Debug)]
pub struct FixtureDef {
    pub name: &'static str,
    pub builtin: &'static str,
    pub prime: u32,
    /// Highest degree of the group cohomology oracle.
    pub group_maxdeg: usize,
    /// Whether the bar complex is small enough; otherwise a free resolution is used.
    pub bar: bool,
}

pub const FIXTURES: [FixtureDef; 4] = [
    FixtureDef { name: "E1", builtin: "sym 3", prime: 3, group_maxdeg: 4, bar: true },
    FixtureDef { name: "E2", builtin: "alt 4", prime: 2, group_maxdeg: 3, bar: true },
    FixtureDef { name: "E3", builtin: "sym 4", prime: 2, group_maxdeg: 3, bar: false },
    FixtureDef { name: "E4", builtin: "sym 5", prime: 5, group_maxdeg: 3, bar: false },
];

pub const INVARIANT_MAXDEG: usize = 4;

impl FixtureDef {
    pub fn spec(&self) -> GroupSpec {
        parse_builtin(self.builtin, 1).expect("fixture builtins parse")
    }

    pub fn context(&self) -> Context {
        Context::build(self.spec(), self.prime).expect("fixture builds")
    }

    pub fn by_name(name: &str) -> Option<FixtureDef> {
        FIXTURES.iter().copied().find(|f| f.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub key: String,
    pub value: Vec<usize>,
    pub oracle: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub group: String,
    pub prime: u32,
    pub generator: String,
    pub expected: Vec<Expected>,
}

impl Fixture {
    pub fn get(&self, key: &str) -> Option<&[usize]> {
        self.expected.iter().find(|e| e.key == key).map(|e| e.value.as_slice())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("fixture serializes");
        s.push('\n');
        s
    }
}

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn load(dir: &Path, name: &str) -> anyhow::Result<Fixture> {
    let text = std::fs::read_to_string(dir.join(format!("{}.json", name)))?;
    Ok(serde_json::from_str(&text)?)
}

/// Recomputes every oracle value of a fixture.
pub fn generate(def: &FixtureDef) -> Fixture {
    let spec = def.spec();
    let g = PermGroup::generate(spec.degree, &spec.generators);
    let p = def.prime;
    let mut expected = Vec::new();
    let (dims, oracle) = if def.bar {
        (bar_dims(&g, p, def.group_maxdeg), "normalized bar complex of G")
    } else {
        (FreeResolution::build(&g, p, def.group_maxdeg + 1).dims(), "free F_p[G]-resolution of F_p")
    };
    expected.push(Expected { key: "group_cohomology_dims".into(), value: dims, oracle: oracle.into() });

    let ctx = def.context();
    let l = &ctx.linking;
    let s = l.object_subgroup(l.s_object());
    let to_oracle = |x: u32| g.index_of(l.group().element(x)).expect("element of G");
    let s_members: Vec<u32> = s.members().iter().map(|&x| to_oracle(x)).collect();
    let n = g.normalizer(&s_members);
    if let Ok(v) = invariant_dims(&g, &s_members, &n, p, INVARIANT_MAXDEG) {
        expected.push(Expected {
            key: "sylow_invariant_dims".into(),
            value: v,
            oracle: "N_G(S)-invariant cochains of the bar complex of S".into(),
        });
    }
    let sg = PermGroup::generate(spec.degree, &s_members.iter().map(|&x| g.element(x).to_vec()).collect::<Vec<_>>());
    expected.push(Expected {
        key: "sylow_cohomology_dims".into(),
        value: bar_dims(&sg, p, INVARIANT_MAXDEG),
        oracle: "normalized bar complex of S".into(),
    });
    Fixture {
        name: def.name.into(),
        group: format!("builtin:{}", def.builtin),
        prime: p,
        generator: REGEN_COMMAND.into(),
        expected,
    }
}

pub fn regenerate(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    for def in &FIXTURES {
        let path = dir.join(format!("{}.json", def.name));
        std::fs::write(&path, generate(def).to_json())?;
        out.push(path);
    }
    Ok(out)
}
