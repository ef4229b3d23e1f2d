//! `manifest.json`: the run record each stage updates.
//!
//! Top-level keys: `tool`, `version`, `config` (effective settings of the
//! latest stage), `stages` (per-stage timings and counts), `corpus`,
//! `graphs`, `analysis` and `ranking` (per entity kind), `warnings` (per
//! stage) and `files` (name to size and SHA-256 of every output).

use std::fs;
use std::io;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::output::{inventory, Staged, MANIFEST_FILE};

#[derive(Debug, Clone, PartialEq)]
pub struct Manifest {
    root: Map<String, Value>,
}

impl Default for Manifest {
    fn default() -> Self {
        let mut root = Map::new();
        root.insert("tool".into(), json!("coauthnet"));
        root.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        Manifest { root }
    }
}

impl Manifest {
    /// The manifest in `dir`, or `None` if there is none yet.
    pub fn load(dir: &Path) -> io::Result<Option<Manifest>> {
        let path = dir.join(MANIFEST_FILE);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e),
        };
        match serde_json::from_str::<Value>(&text) {
            Ok(Value::Object(root)) => Ok(Some(Manifest { root })),
            _ => Err(io::Error::new(
                io::ErrorKind::InvalidData,
                format!("{} is not a JSON object", path.display()),
            )),
        }
    }

    pub fn load_or_default(dir: &Path) -> io::Result<Manifest> {
        Ok(Self::load(dir)?.unwrap_or_default())
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.root.get(key)
    }

    /// `section.name`, if both levels exist.
    pub fn entry(&self, section: &str, name: &str) -> Option<&Value> {
        self.root.get(section)?.get(name)
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.root.insert(key.to_string(), value);
    }

    /// Sets `section.name`, creating the section if needed.
    pub fn set_entry(&mut self, section: &str, name: &str, value: Value) {
        let slot = self
            .root
            .entry(section.to_string())
            .or_insert_with(|| Value::Object(Map::new()));
        if !slot.is_object() {
            *slot = Value::Object(Map::new());
        }
        slot.as_object_mut()
            .expect("object")
            .insert(name.to_string(), value);
    }

    pub fn set_warnings(&mut self, stage: &str, warnings: &[String]) {
        self.set_entry("warnings", stage, json!(warnings));
    }

    /// Refreshes the file inventory from `dir` and writes the manifest.
    pub fn write(&mut self, dir: &Path) -> io::Result<()> {
        let mut files = Map::new();
        for (name, bytes, sha) in inventory(dir)? {
            files.insert(name, json!({ "bytes": bytes, "sha256": sha }));
        }
        self.root.insert("files".into(), Value::Object(files));
        let mut text =
            serde_json::to_string_pretty(&Value::Object(self.root.clone())).expect("serializable");
        text.push('\n');
        let mut staged = Staged::new();
        staged.add(MANIFEST_FILE, text);
        staged.commit(dir)
    }
}
