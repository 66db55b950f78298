//! Write-once cache of central elements, in memory and optionally on disk.
//!
//! Disk entries are JSON files `<key>.json` holding the cache version, the
//! key and the element record. Entries with another version are rebuilt.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::CentralElementSpec;
use crate::coeffring::Scalar;
use crate::error::{Error, Result};
use crate::hecke::{ElementRecord, HeckeElement};

pub const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry {
    version: u32,
    key: String,
    element: ElementRecord,
}

static GLOBAL: OnceLock<CentralCache> = OnceLock::new();

pub struct CentralCache {
    dir: Option<PathBuf>,
    mem: Mutex<HashMap<CentralElementSpec, HeckeElement<Scalar>>>,
}

impl CentralCache {
    pub fn in_memory() -> Self {
        CentralCache { dir: None, mem: Mutex::new(HashMap::new()) }
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Self {
        CentralCache { dir: Some(dir.into()), mem: Mutex::new(HashMap::new()) }
    }

    /// Process-wide cache; in memory unless [`CentralCache::init_global`]
    /// ran first.
    pub fn global() -> &'static CentralCache {
        GLOBAL.get_or_init(CentralCache::in_memory)
    }

    /// Backs the process-wide cache by `dir`. Fails once the cache is in use.
    pub fn init_global(dir: impl Into<PathBuf>) -> Result<()> {
        GLOBAL
            .set(CentralCache::with_dir(dir))
            .map_err(|_| Error::Cache("the process-wide cache is already in use".into()))
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path(&self, spec: &CentralElementSpec) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", spec.key())))
    }

    fn load(&self, spec: &CentralElementSpec) -> Result<Option<HeckeElement<Scalar>>> {
        let Some(path) = self.path(spec) else { return Ok(None) };
        let Ok(text) = fs::read_to_string(&path) else { return Ok(None) };
        let entry: Entry = match serde_json::from_str(&text) {
            Ok(e) => e,
            Err(_) => return Ok(None),
        };
        if entry.version != CACHE_VERSION || entry.key != spec.key() {
            return Ok(None);
        }
        let alg = spec.algebra()?;
        HeckeElement::from_record(&alg, &entry.element).map(Some)
    }

    fn store(&self, spec: &CentralElementSpec, h: &HeckeElement<Scalar>) -> Result<()> {
        let Some(path) = self.path(spec) else { return Ok(()) };
        let dir = path.parent().expect("cache file has a directory");
        fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        let entry = Entry { version: CACHE_VERSION, key: spec.key(), element: h.to_record() };
        let text = serde_json::to_string(&entry).map_err(|e| Error::Cache(e.to_string()))?;
        // write then rename, so readers never see a partial file
        let tmp = path.with_extension(format!("json.{}", std::process::id()));
        fs::write(&tmp, text).map_err(|e| Error::Cache(format!("{}: {e}", tmp.display())))?;
        fs::rename(&tmp, &path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
    }

    /// Cached element, if present in memory or on disk.
    pub fn lookup(&self, spec: &CentralElementSpec) -> Result<Option<HeckeElement<Scalar>>> {
        if let Some(h) = self.mem.lock().unwrap().get(spec) {
            return Ok(Some(h.clone()));
        }
        let found = self.load(spec)?;
        if let Some(h) = &found {
            self.mem.lock().unwrap().insert(*spec, h.clone());
        }
        Ok(found)
    }

    pub fn get(&self, spec: &CentralElementSpec) -> Result<HeckeElement<Scalar>> {
        if let Some(h) = self.lookup(spec)? {
            return Ok(h);
        }
        let h = spec.build()?;
        self.store(spec, &h)?;
        Ok(self.mem.lock().unwrap().entry(*spec).or_insert(h).clone())
    }
}

/// The element of `spec`, through the process-wide cache.
pub fn central_element(spec: &CentralElementSpec) -> Result<HeckeElement<Scalar>> {
    CentralCache::global().get(spec)
}
