//! Output directory handling: the per-directory lock, staged
//! write-then-rename commits, and content digests.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

pub const LOCK_FILE: &str = ".coauthnet.lock";
pub const MANIFEST_FILE: &str = "manifest.json";

/// Exclusive claim on an output directory, released on drop.
#[derive(Debug)]
pub struct DirLock {
    path: PathBuf,
}

impl DirLock {
    pub fn acquire(dir: &Path) -> io::Result<DirLock> {
        fs::create_dir_all(dir)?;
        let path = dir.join(LOCK_FILE);
        let mut f = fs::OpenOptions::new()
            .write(true)
            .create_new(true)
            .open(&path)
            .map_err(|e| {
                if e.kind() == io::ErrorKind::AlreadyExists {
                    io::Error::new(
                        e.kind(),
                        format!(
                            "{} exists; another run is using this directory",
                            path.display()
                        ),
                    )
                } else {
                    e
                }
            })?;
        writeln!(f, "{}", std::process::id())?;
        Ok(DirLock { path })
    }
}

impl Drop for DirLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

/// Files produced by one stage, held in memory until [`commit`](Self::commit).
#[derive(Debug, Default)]
pub struct Staged {
    files: Vec<(String, Vec<u8>)>,
}

impl Staged {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, name: impl Into<String>, content: impl Into<Vec<u8>>) {
        self.files.push((name.into(), content.into()));
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.files.iter().map(|(n, _)| n.as_str())
    }

    /// Writes every file to a temporary name, then renames them all into
    /// place. On failure the temporaries are removed and no target file has
    /// been touched unless a rename itself failed part way.
    pub fn commit(self, dir: &Path) -> io::Result<()> {
        let mut temps = Vec::with_capacity(self.files.len());
        let written: io::Result<()> = (|| {
            for (name, content) in &self.files {
                let tmp = dir.join(format!(".{name}.tmp"));
                temps.push((tmp.clone(), dir.join(name)));
                let mut f = fs::File::create(&tmp)?;
                f.write_all(content)?;
                f.sync_all()?;
            }
            Ok(())
        })();
        if let Err(e) = written {
            for (tmp, _) in &temps {
                let _ = fs::remove_file(tmp);
            }
            return Err(e);
        }
        for (tmp, target) in &temps {
            fs::rename(tmp, target)?;
        }
        Ok(())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// `(name, size, sha256)` for every regular, non-hidden file in `dir`
/// except the manifest, sorted by name.
pub fn inventory(dir: &Path) -> io::Result<Vec<(String, u64, String)>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir)? {
        let entry = entry?;
        if !entry.file_type()?.is_file() {
            continue;
        }
        let name = entry.file_name().to_string_lossy().into_owned();
        if name.starts_with('.') || name == MANIFEST_FILE {
            continue;
        }
        let bytes = fs::read(entry.path())?;
        out.push((name, bytes.len() as u64, sha256_hex(&bytes)));
    }
    out.sort();
    Ok(out)
}
