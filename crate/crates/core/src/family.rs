//! Family descriptors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    BranchingTree,
    LeveledTreeCycles,
    Theorem3,
    CliqueRay,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::BranchingTree,
        FamilyKind::LeveledTreeCycles,
        FamilyKind::Theorem3,
        FamilyKind::CliqueRay,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::BranchingTree => "branching_tree",
            FamilyKind::LeveledTreeCycles => "leveled_tree_cycles",
            FamilyKind::Theorem3 => "theorem3",
            FamilyKind::CliqueRay => "clique_ray",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::Descriptor(format!("unknown family {s:?}")))
    }
}

/// Which built-in family to build, with its integer parameters.
///
/// `depth` is the certification depth used by tests and sampling, never a
/// truncation of the graph itself. `rays` and `bridge` only affect
/// `clique_ray`: the number of rays glued at the first clique, and the level
/// at which consecutive rays get one extra edge (0 means no such edges).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: FamilyKind,
    pub k: u32,
    pub depth: u32,
    pub seed: u64,
    pub rays: u32,
    pub bridge: u32,
}

impl FamilySpec {
    pub fn new(family: FamilyKind, k: u32) -> Self {
        FamilySpec {
            family,
            k,
            depth: 8,
            seed: 0,
            rays: 1,
            bridge: 0,
        }
    }

    pub fn with_rays(mut self, rays: u32) -> Self {
        self.rays = rays;
        self
    }

    pub fn with_bridge(mut self, bridge: u32) -> Self {
        self.bridge = bridge;
        self
    }

    pub fn with_depth(mut self, depth: u32) -> Self {
        self.depth = depth;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::Descriptor("k must be at least 1".into()));
        }
        if self.depth < 1 {
            return Err(Error::Descriptor("depth must be at least 1".into()));
        }
        match self.family {
            FamilyKind::LeveledTreeCycles if self.k < 2 => Err(Error::Descriptor(
                "leveled_tree_cycles needs k >= 2".into(),
            )),
            FamilyKind::CliqueRay if !(1..=26).contains(&self.rays) => {
                Err(Error::Descriptor("clique_ray needs 1 <= rays <= 26".into()))
            }
            _ => Ok(()),
        }
    }

    /// Parses a TOML descriptor:
    ///
    /// ```toml
    /// family = "theorem3"
    /// [params]
    /// k = 3
    /// depth = 6
    /// ```
    pub fn from_toml(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Doc {
            family: String,
            #[serde(default)]
            params: Params,
        }
        #[derive(Deserialize, Default)]
        #[serde(deny_unknown_fields)]
        struct Params {
            k: Option<u32>,
            depth: Option<u32>,
            seed: Option<u64>,
            rays: Option<u32>,
            bridge: Option<u32>,
        }
        let doc: Doc = toml::from_str(text).map_err(|e| Error::Descriptor(e.to_string()))?;
        let kind: FamilyKind = doc.family.parse()?;
        let p = doc.params;
        let mut spec = FamilySpec::new(kind, p.k.unwrap_or(3));
        spec.depth = p.depth.unwrap_or(spec.depth);
        spec.seed = p.seed.unwrap_or(spec.seed);
        spec.rays = p.rays.unwrap_or(spec.rays);
        spec.bridge = p.bridge.unwrap_or(spec.bridge);
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_toml(&self) -> String {
        format!(
            "family = \"{}\"\n\n[params]\nk = {}\ndepth = {}\nseed = {}\nrays = {}\nbridge = {}\n",
            self.family, self.k, self.depth, self.seed, self.rays, self.bridge
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_round_trip() {
        let spec = FamilySpec::new(FamilyKind::CliqueRay, 4)
            .with_rays(2)
            .with_bridge(2)
            .with_seed(9);
        assert_eq!(FamilySpec::from_toml(&spec.to_toml()).unwrap(), spec);
    }

    #[test]
    fn defaults_fill_missing_params() {
        let spec = FamilySpec::from_toml("family = \"branching_tree\"\n").unwrap();
        assert_eq!(spec, FamilySpec::new(FamilyKind::BranchingTree, 3));
    }

    #[test]
    fn rejects_bad_descriptors() {
        assert!(FamilySpec::from_toml("family = \"torus\"").is_err());
        assert!(FamilySpec::from_toml("family = \"theorem3\"\n[params]\nk = 0").is_err());
        assert!(FamilySpec::from_toml("family = \"theorem3\"\n[params]\nwidth = 2").is_err());
        assert!(FamilySpec::from_toml("family = \"leveled_tree_cycles\"\n[params]\nk = 1").is_err());
    }
}
