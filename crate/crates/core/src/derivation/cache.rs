//! On-disk cache of derived systems: one `.poly` file per polynomial and a
//! `manifest.json` holding content hashes, sizes and the derivation logs.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{derive_n3, derive_n4, DerivationError, DerivationLog, DerivedSystem3, DerivedSystem4};
use crate::mpoly::{text, IntPoly};

/// Bumped whenever a derivation can produce different output.
pub const DERIVATION_REVISION: u32 = 1;
pub const CACHE_ENV: &str = "PERMRAT_CACHE";
const MANIFEST: &str = "manifest.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub sha256: String,
    pub terms: usize,
    pub degree: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemEntry {
    pub files: BTreeMap<String, CacheFile>,
    pub log: DerivationLog,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema: u32,
    pub code_version: String,
    pub systems: BTreeMap<String, SystemEntry>,
}

fn code_version() -> String {
    format!("{}+d{}", env!("CARGO_PKG_VERSION"), DERIVATION_REVISION)
}

impl Default for Manifest {
    fn default() -> Self {
        Manifest {
            schema: 1,
            code_version: code_version(),
            systems: BTreeMap::new(),
        }
    }
}

/// How a system was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CacheStatus {
    Loaded,
    Derived,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn corrupt(file: &str, reason: impl Into<String>) -> DerivationError {
    DerivationError::CacheCorrupt {
        file: file.to_string(),
        reason: reason.into(),
    }
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$PERMRAT_CACHE`, or `./cache`.
    pub fn from_env() -> Self {
        Cache::new(std::env::var_os(CACHE_ENV).map_or_else(|| PathBuf::from("cache"), PathBuf::from))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn manifest_path(&self) -> PathBuf {
        self.dir.join(MANIFEST)
    }

    /// The manifest, or `None` if there is none yet.
    pub fn manifest(&self) -> Result<Option<Manifest>, DerivationError> {
        let path = self.manifest_path();
        if !path.exists() {
            return Ok(None);
        }
        let bytes = fs::read(&path)?;
        serde_json::from_slice(&bytes)
            .map(Some)
            .map_err(|e| corrupt(MANIFEST, e.to_string()))
    }

    /// Writes the polynomials of one system and records them in the manifest.
    pub fn store(&self, system: &str, polys: &[(&str, &IntPoly)], log: &DerivationLog) -> Result<(), DerivationError> {
        fs::create_dir_all(&self.dir)?;
        let mut manifest = match self.manifest() {
            Ok(Some(m)) if m.code_version == code_version() => m,
            _ => Manifest::default(),
        };
        let mut entry = SystemEntry {
            files: BTreeMap::new(),
            log: log.clone(),
        };
        for (name, f) in polys {
            let file = format!("{system}_{name}.poly");
            let body = text::to_text(f);
            fs::write(self.dir.join(&file), &body)?;
            entry.files.insert(
                file,
                CacheFile {
                    sha256: sha256_hex(body.as_bytes()),
                    terms: f.len(),
                    degree: f.degree(),
                },
            );
        }
        manifest.systems.insert(system.to_string(), entry);
        let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        let tmp = self.dir.join("manifest.json.tmp");
        fs::write(&tmp, json + "\n")?;
        fs::rename(tmp, self.manifest_path())?;
        Ok(())
    }

    /// Loads the named polynomials of a system. `None` if the system is not
    /// cached or was derived by a different code version; an error if a
    /// file is missing, altered or unparsable.
    pub fn load(&self, system: &str, names: &[&str]) -> Result<Option<(Vec<IntPoly>, DerivationLog)>, DerivationError> {
        let Some(manifest) = self.manifest()? else {
            return Ok(None);
        };
        if manifest.code_version != code_version() {
            return Ok(None);
        }
        let Some(entry) = manifest.systems.get(system) else {
            return Ok(None);
        };
        let mut out = Vec::with_capacity(names.len());
        for name in names {
            let file = format!("{system}_{name}.poly");
            let meta = entry
                .files
                .get(&file)
                .ok_or_else(|| corrupt(&file, "not listed in manifest"))?;
            let bytes = fs::read(self.dir.join(&file)).map_err(|e| corrupt(&file, e.to_string()))?;
            let actual = sha256_hex(&bytes);
            if actual != meta.sha256 {
                return Err(corrupt(&file, format!("sha256 {actual}, manifest says {}", meta.sha256)));
            }
            let body = std::str::from_utf8(&bytes).map_err(|e| corrupt(&file, e.to_string()))?;
            let f = text::parse(body).map_err(|e| corrupt(&file, e.to_string()))?;
            if f.len() != meta.terms || f.degree() != meta.degree {
                return Err(corrupt(&file, "term count or degree differs from manifest"));
            }
            out.push(f);
        }
        Ok(Some((out, entry.log.clone())))
    }

    /// File name → sha256 for everything in the manifest.
    pub fn hashes(&self) -> BTreeMap<String, String> {
        let Ok(Some(m)) = self.manifest() else {
            return BTreeMap::new();
        };
        m.systems
            .values()
            .flat_map(|e| e.files.iter().map(|(k, v)| (k.clone(), v.sha256.clone())))
            .collect()
    }
}

/// Loads the n = 3 system, deriving and storing it if absent. With
/// `refresh`, a corrupt cache is rebuilt instead of reported.
pub fn load_or_derive_n3(cache: &Cache, refresh: bool) -> Result<(DerivedSystem3, CacheStatus), DerivationError> {
    match cache.load("n3", &["P", "Q", "G"]) {
        Ok(Some((mut v, log))) => {
            let g = v.pop().unwrap();
            let q = v.pop().unwrap();
            let p = v.pop().unwrap();
            return Ok((DerivedSystem3 { p, q, g, log }, CacheStatus::Loaded));
        }
        Ok(None) => {}
        Err(e @ DerivationError::CacheCorrupt { .. }) if !refresh => return Err(e),
        Err(DerivationError::CacheCorrupt { .. }) => {}
        Err(e) => return Err(e),
    }
    let sys = derive_n3()?;
    cache.store("n3", &[("P", &sys.p), ("Q", &sys.q), ("G", &sys.g)], &sys.log)?;
    Ok((sys, CacheStatus::Derived))
}

/// As [`load_or_derive_n3`], for n = 4.
pub fn load_or_derive_n4(cache: &Cache, refresh: bool) -> Result<(DerivedSystem4, CacheStatus), DerivationError> {
    const NAMES: [&str; 6] = ["A", "B", "P", "Q", "G", "L"];
    match cache.load("n4", &NAMES) {
        Ok(Some((v, log))) => {
            let [a, b, p, q, g, l]: [IntPoly; 6] = v.try_into().expect("six polynomials");
            return Ok((DerivedSystem4 { a, b, p, q, g, l, log }, CacheStatus::Loaded));
        }
        Ok(None) => {}
        Err(e @ DerivationError::CacheCorrupt { .. }) if !refresh => return Err(e),
        Err(DerivationError::CacheCorrupt { .. }) => {}
        Err(e) => return Err(e),
    }
    let sys = derive_n4()?;
    let polys = [
        ("A", &sys.a),
        ("B", &sys.b),
        ("P", &sys.p),
        ("Q", &sys.q),
        ("G", &sys.g),
        ("L", &sys.l),
    ];
    cache.store("n4", &polys, &sys.log)?;
    Ok((sys, CacheStatus::Derived))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::VarSet;

    fn sample() -> IntPoly {
        let vs = VarSet::indexed("Y", 2);
        IntPoly::int_var(&vs, "Y1").pow(3).sub(&IntPoly::int_const(&vs, 7))
    }

    #[test]
    fn store_then_load_is_identical() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        assert!(cache.load("x", &["F"]).unwrap().is_none());
        let f = sample();
        let mut log = DerivationLog::default();
        log.push("step", "detail");
        cache.store("x", &[("F", &f)], &log).unwrap();
        let (v, l) = cache.load("x", &["F"]).unwrap().unwrap();
        assert_eq!(v, vec![f]);
        assert_eq!(l, log);
        assert_eq!(cache.hashes().len(), 1);
    }

    #[test]
    fn tampering_is_detected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        cache.store("x", &[("F", &sample())], &DerivationLog::default()).unwrap();
        let path = dir.path().join("x_F.poly");
        let body = fs::read_to_string(&path).unwrap().replace("-7", "-8");
        fs::write(&path, body).unwrap();
        assert!(matches!(cache.load("x", &["F"]), Err(DerivationError::CacheCorrupt { .. })));
        fs::write(dir.path().join(MANIFEST), "{").unwrap();
        assert!(matches!(cache.load("x", &["F"]), Err(DerivationError::CacheCorrupt { .. })));
    }
}
