//! Input files: posets, games and point configurations, all JSON.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use supermod::{
    build_lattice_with, parse_scalar, Coalition, DownSetLattice, Limits, PayoffVector, Permutation,
    PointConfiguration, Poset, RatGame, Rational,
};

use crate::CliError;

/// Environment variable overriding the lattice-size cap.
pub const MAX_LATTICE_VAR: &str = "SUPERMOD_MAX_LATTICE";

/// `{"n": 4, "covers": [[2, 1], [3, 1]]}`, where `[i, j]` means `i ≺ j`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetSpec {
    pub n: usize,
    #[serde(default)]
    pub covers: Vec<(usize, usize)>,
}

impl PosetSpec {
    pub fn build(&self) -> Result<Poset, CliError> {
        Ok(Poset::from_covers(self.n, &self.covers)?)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PosetRef {
    Path(String),
    Inline(PosetSpec),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    pub fn parse(&self) -> Result<Rational, CliError> {
        match self {
            ScalarText::Int(v) => Ok(Rational::from_integer((*v).into())),
            ScalarText::Text(s) => parse_scalar(s)
                .ok_or_else(|| CliError::Input(format!("'{s}' is not a rational number"))),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameSpec {
    pub poset: PosetRef,
    #[serde(default)]
    pub values: BTreeMap<String, ScalarText>,
}

/// Reads input files and remembers a SHA-256 digest of each one.
#[derive(Debug, Default)]
pub struct Loader {
    pub digests: BTreeMap<String, String>,
    pub limits: Limits,
}

impl Loader {
    pub fn from_env() -> Result<Self, CliError> {
        let mut limits = Limits::default();
        if let Ok(text) = std::env::var(MAX_LATTICE_VAR) {
            limits.max_lattice = text
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("{MAX_LATTICE_VAR}={text} is not a size")))?;
        }
        Ok(Loader { digests: BTreeMap::new(), limits })
    }

    pub fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        self.digests
            .insert(path.display().to_string(), hex::encode(Sha256::digest(&bytes)));
        String::from_utf8(bytes)
            .map_err(|_| CliError::Input(format!("{} is not UTF-8", path.display())))
    }

    fn json<T: serde::de::DeserializeOwned>(&mut self, path: &Path) -> Result<T, CliError> {
        let text = self.read(path)?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    pub fn poset(&mut self, path: &Path) -> Result<Poset, CliError> {
        self.json::<PosetSpec>(path)?.build()
    }

    pub fn lattice(&mut self, path: &Path) -> Result<Arc<DownSetLattice>, CliError> {
        let poset = self.poset(path)?;
        self.build(&poset)
    }

    pub fn build(&self, poset: &Poset) -> Result<Arc<DownSetLattice>, CliError> {
        Ok(build_lattice_with(poset, self.limits)?)
    }

    pub fn game(&mut self, path: &Path) -> Result<RatGame, CliError> {
        let spec: GameSpec = self.json(path)?;
        let poset = match &spec.poset {
            PosetRef::Inline(p) => p.build()?,
            PosetRef::Path(rel) => {
                let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
                self.poset(&resolve(&base, rel))?
            }
        };
        let lattice = self.build(&poset)?;
        game_from_values(&lattice, &spec.values)
    }

    pub fn configuration(
        &mut self,
        path: &Path,
        n: usize,
    ) -> Result<PointConfiguration<Rational>, CliError> {
        let raw: BTreeMap<String, Vec<ScalarText>> = self.json(path)?;
        let mut entries = BTreeMap::new();
        for (perm, xs) in raw {
            let perm: Permutation = perm.parse()?;
            let x = xs.iter().map(ScalarText::parse).collect::<Result<Vec<_>, _>>()?;
            if x.len() != n {
                return Err(CliError::Input(format!(
                    "payoff vector of {perm} has {} entries, expected {n}",
                    x.len()
                )));
            }
            entries.insert(perm, PayoffVector(x));
        }
        Ok(PointConfiguration { entries })
    }
}

fn resolve(base: &Path, rel: &str) -> PathBuf {
    let p = Path::new(rel);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// Sparse values keyed by coalition text; absent coalitions are 0.
pub fn game_from_values(
    lattice: &Arc<DownSetLattice>,
    values: &BTreeMap<String, ScalarText>,
) -> Result<RatGame, CliError> {
    let mut entries = Vec::with_capacity(values.len());
    for (key, v) in values {
        entries.push((Coalition::parse(key, lattice.n())?, v.parse()?));
    }
    Ok(RatGame::from_sparse(lattice, &entries)?)
}
