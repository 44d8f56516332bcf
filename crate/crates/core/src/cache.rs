//! On-disk cache of built groups, keyed by a content hash of the spec.
//! Writes are atomic (write-temp-then-rename). The cache directory comes
//! from the CLI flag `--cache-dir`, overridden by the environment variable
//! `REFLFACT_CACHE`.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::{build_group, GroupKind, GroupSpec, RawGroupParts, ReflectionGroup};

pub const SCHEMA_VERSION: u32 = 1;

/// Content hash of a spec: the canonical spec string, the schema version,
/// and the bytes of any external generator files.
pub fn cache_key(spec: &GroupSpec) -> Result<String> {
    let mut hasher = Sha256::new();
    hasher.update(format!("reflfact-cache-v{SCHEMA_VERSION}:"));
    hasher.update(spec.to_string().as_bytes());
    for kind in &spec.factors {
        if let GroupKind::External(path) = kind {
            let bytes = std::fs::read(path)
                .map_err(|e| Error::Cache(format!("cannot hash {path}: {e}")))?;
            hasher.update(&bytes);
        }
    }
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    Ok(out)
}

fn cache_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("group-{key}.json"))
}

/// Serializes a built group into the cache directory atomically.
pub fn save_group(dir: &Path, group: &ReflectionGroup) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let key = cache_key(&group.spec)?;
    let path = cache_path(dir, &key);
    let tmp = dir.join(format!(".group-{key}.tmp-{}", std::process::id()));
    let raw = group.to_raw();
    let json = serde_json::to_vec(&raw)?;
    std::fs::write(&tmp, json)?;
    std::fs::rename(&tmp, &path)?;
    Ok(path)
}

/// Loads a cached group when present; `Ok(None)` on a cache miss.
pub fn load_group(dir: &Path, spec: &GroupSpec, caps: &Caps) -> Result<Option<ReflectionGroup>> {
    let key = cache_key(spec)?;
    let path = cache_path(dir, &key);
    if !path.exists() {
        return Ok(None);
    }
    let bytes = std::fs::read(&path)?;
    let raw: RawGroupParts = serde_json::from_slice(&bytes)
        .map_err(|e| Error::Cache(format!("corrupt cache file {}: {e}", path.display())))?;
    if raw.spec != *spec {
        return Err(Error::Cache(format!(
            "cache key collision: file {} stores {}",
            path.display(),
            raw.spec
        )));
    }
    Ok(Some(ReflectionGroup::from_raw(raw, caps)?))
}

/// Resolves the effective cache directory: `REFLFACT_CACHE` overrides the
/// flag value.
pub fn effective_cache_dir(flag: Option<&Path>) -> Option<PathBuf> {
    if let Ok(env) = std::env::var("REFLFACT_CACHE") {
        if !env.is_empty() {
            return Some(PathBuf::from(env));
        }
    }
    flag.map(Path::to_path_buf)
}

/// Builds the group, consulting and populating the cache when a directory is
/// given.
pub fn load_or_build(
    dir: Option<&Path>,
    spec: &GroupSpec,
    caps: &Caps,
) -> Result<ReflectionGroup> {
    if let Some(dir) = dir {
        if let Some(group) = load_group(dir, spec, caps)? {
            return Ok(group);
        }
        let group = build_group(spec, caps)?;
        save_group(dir, &group)?;
        Ok(group)
    } else {
        build_group(spec, caps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_preserves_everything() {
        let dir = std::env::temp_dir().join(format!("reflfact-test-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let caps = Caps::default();
        let spec = GroupSpec::parse("G(3,1,2)").unwrap();
        let built = build_group(&spec, &caps).unwrap();
        save_group(&dir, &built).unwrap();
        let loaded = load_group(&dir, &spec, &caps).unwrap().expect("cache hit");
        assert_eq!(loaded.order(), built.order());
        assert_eq!(loaded.degrees(), built.degrees());
        assert_eq!(loaded.reflections(), built.reflections());
        for a in 0..built.order() as u32 {
            assert_eq!(loaded.inv(a), built.inv(a));
            for b in 0..built.order() as u32 {
                assert_eq!(loaded.mul(a, b), built.mul(a, b));
            }
        }
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn miss_on_other_spec() {
        let dir = std::env::temp_dir().join(format!("reflfact-test-miss-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let caps = Caps::default();
        let built = build_group(&GroupSpec::parse("S3").unwrap(), &caps).unwrap();
        save_group(&dir, &built).unwrap();
        let other = GroupSpec::parse("S4").unwrap();
        assert!(load_group(&dir, &other, &caps).unwrap().is_none());
        let _ = std::fs::remove_dir_all(&dir);
    }
}
