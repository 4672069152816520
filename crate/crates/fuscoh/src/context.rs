//! The full pipeline from a group to `(S, F, L, Γ, Θ̂)`, and its JSON cache.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use fuscoh_core::fusion::FusionSystem;
use fuscoh_core::gamma::{GammaData, DEFAULT_COSET_CAP};
use fuscoh_core::group::FiniteGroup;
use fuscoh_core::linking::LinkingSystem;
use serde::{Deserialize, Serialize};

use crate::input::GroupSpec;

pub const CACHE_VERSION: u32 = 1;

pub struct Context {
    pub spec: GroupSpec,
    pub linking: LinkingSystem,
    pub gamma: GammaData,
}

impl Context {
    pub fn build(spec: GroupSpec, p: u32) -> fuscoh_core::Result<Context> {
        let g = Arc::new(spec.generate()?);
        let f = Arc::new(FusionSystem::from_group(g, p)?);
        let linking = LinkingSystem::build(f)?;
        let gamma = GammaData::compute(&linking, DEFAULT_COSET_CAP)?;
        Ok(Context { spec, linking, gamma })
    }

    pub fn prime(&self) -> u32 {
        self.linking.fusion().prime()
    }

    pub fn group(&self) -> &FiniteGroup {
        self.linking.group()
    }

    pub fn fusion(&self) -> &FusionSystem {
        self.linking.fusion()
    }

    pub fn artifact(&self) -> CacheArtifact {
        let l = &self.linking;
        let f = l.fusion();
        let g = l.group();
        let gm = self.gamma.gamma();
        let subgroups = f.subgroups().iter().map(|s| s.members().to_vec()).collect();
        let centric = f.centric_subgroups();
        let mut homs = Vec::new();
        for &i in &centric {
            for &j in &centric {
                let n = f.homs(i, j).len();
                if n > 0 {
                    homs.push([i, j, n]);
                }
            }
        }
        let objects = (0..l.object_count() as u32).map(|a| l.object_subgroup_index(a)).collect();
        let morphisms = (0..l.morphism_count() as u32).map(|m| [l.src(m), l.tgt(m), l.rep(m)]).collect();
        let gamma_table = (0..gm.order() as u32).map(|a| (0..gm.order() as u32).map(|b| gm.mul(a, b)).collect()).collect();
        CacheArtifact {
            version: CACHE_VERSION,
            group: self.spec.clone(),
            prime: self.prime(),
            order: g.order(),
            sylow: f.sylow().members().to_vec(),
            fusion: FusionRecord { subgroups, centric, homs },
            linking: LinkingRecord { objects, morphisms },
            gamma: GammaRecord { order: gm.order(), table: gamma_table },
            theta_hat: self.gamma.theta_hat_all().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionRecord {
    pub subgroups: Vec<Vec<u32>>,
    pub centric: Vec<usize>,
    /// `[source, target, |Hom_F(P, Q)|]` for centric pairs with a morphism.
    pub homs: Vec<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkingRecord {
    pub objects: Vec<usize>,
    /// `[source, target, representative]`.
    pub morphisms: Vec<[u32; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaRecord {
    pub order: usize,
    pub table: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheArtifact {
    pub version: u32,
    pub group: GroupSpec,
    pub prime: u32,
    pub order: usize,
    pub sylow: Vec<u32>,
    pub fusion: FusionRecord,
    pub linking: LinkingRecord,
    pub gamma: GammaRecord,
    pub theta_hat: Vec<u32>,
}

impl CacheArtifact {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("artifact serializes");
        s.push('\n');
        s
    }

    pub fn file_name(&self) -> String {
        format!("{}_p{}.json", self.group.name, self.prime)
    }

    pub fn write(&self, dir: &Path) -> std::io::Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(self.file_name());
        std::fs::write(&path, self.to_json())?;
        Ok(path)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("cache {path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("cache {path}: version {found}, expected {expected}")]
    Version { path: String, found: u32, expected: u32 },
    #[error("cache {path} does not match a rebuild from its group")]
    Stale { path: String },
    #[error("cache {path}: {source}")]
    Build { path: String, source: fuscoh_core::Error },
}

/// Loads a cache and rebuilds the context from its group, rejecting a
/// cache whose recorded data differs from the rebuild.
pub fn load(path: &Path) -> Result<Context, CacheError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CacheError::Io { path: name.clone(), source })?;
    let art: CacheArtifact = serde_json::from_str(&text).map_err(|source| CacheError::Json { path: name.clone(), source })?;
    if art.version != CACHE_VERSION {
        return Err(CacheError::Version { path: name, found: art.version, expected: CACHE_VERSION });
    }
    let ctx = Context::build(art.group.clone(), art.prime).map_err(|source| CacheError::Build { path: name.clone(), source })?;
    if ctx.artifact() != art {
        return Err(CacheError::Stale { path: name });
    }
    Ok(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::parse_builtin;

    #[test]
    fn artifact_round_trips() {
        let ctx = Context::build(parse_builtin("sym 3", 1).unwrap(), 3).unwrap();
        let art = ctx.artifact();
        assert_eq!(art.linking.objects.len(), 1);
        assert_eq!(art.gamma.order, 2);
        let back: CacheArtifact = serde_json::from_str(&art.to_json()).unwrap();
        assert_eq!(back, art);
        assert_eq!(back.to_json(), art.to_json());
    }
}
