//! Result cache: one JSON object mapping request keys to rendered stdout.
//! Writes go through a temp file in the same directory and a rename, so a
//! crash never leaves a half-written cache. A corrupt cache file is
//! reported and treated as empty, never fatal.

use std::fs;
use std::path::{Path, PathBuf};
use std::process;

use serde_json::{Map, Value};

/// The env var wins over the flag; no path means no caching.
pub fn resolve_path(flag: Option<PathBuf>) -> Option<PathBuf> {
    std::env::var_os("PUISEUX_CACHE")
        .map(PathBuf::from)
        .or(flag)
}

fn load(path: &Path) -> Map<String, Value> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(_) => return Map::new(),
    };
    match serde_json::from_str::<Value>(&text) {
        Ok(Value::Object(m)) => m,
        Ok(_) => {
            eprintln!("warning: cache {} is not a JSON object, ignoring it", path.display());
            Map::new()
        }
        Err(e) => {
            eprintln!("warning: cache {} is corrupt ({e}), ignoring it", path.display());
            Map::new()
        }
    }
}

pub fn lookup(path: &Path, key: &str) -> Option<String> {
    load(path).get(key)?.as_str().map(str::to_owned)
}

pub fn store(path: &Path, key: &str, value: &str) {
    let mut map = load(path);
    map.insert(key.to_owned(), Value::String(value.to_owned()));
    let body = serde_json::to_string(&Value::Object(map)).expect("cache serializes");
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp.{}", process::id()));
    let tmp = PathBuf::from(tmp);
    let write = fs::write(&tmp, body).and_then(|()| fs::rename(&tmp, path));
    if let Err(e) = write {
        eprintln!("warning: could not write cache {}: {e}", path.display());
        let _ = fs::remove_file(&tmp);
    }
}
