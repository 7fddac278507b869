//! Run directories: `<root>/<name>/<timestamp>/{manifest.json, data.*, samples/}`.

use anyhow::{Context, Result};
use serde::Serialize;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

/// Format of the main data file of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Everything needed to replay a run.
#[derive(Debug, Serialize)]
pub struct Manifest<'a, P: Serialize> {
    pub command: &'a str,
    pub seed: u64,
    pub threads: usize,
    pub format: Format,
    pub git_describe: String,
    pub version: &'static str,
    pub created: String,
    pub parameters: P,
}

/// A fresh directory for one run.
pub struct RunDir {
    pub path: PathBuf,
}

impl RunDir {
    pub fn create(root: &Path, name: &str) -> Result<Self> {
        let stamp = chrono::Utc::now().format("%Y%m%dT%H%M%S%.3fZ").to_string();
        let base = root.join(name);
        let mut path = base.join(&stamp);
        let mut k = 1;
        while path.exists() {
            path = base.join(format!("{stamp}-{k}"));
            k += 1;
        }
        fs::create_dir_all(path.join("samples")).with_context(|| format!("cannot create {}", path.display()))?;
        Ok(Self { path })
    }

    pub fn file(&self, name: &str) -> PathBuf {
        self.path.join(name)
    }

    pub fn sample(&self, name: &str) -> PathBuf {
        self.path.join("samples").join(name)
    }

    pub fn write_manifest<P: Serialize>(&self, manifest: &Manifest<P>) -> Result<()> {
        write_json(&self.file("manifest.json"), manifest)
    }
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    fs::write(path, s).with_context(|| format!("cannot write {}", path.display()))
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// `git describe --always --dirty` of the working directory, or `unknown`.
pub fn git_describe() -> String {
    Command::new("git")
        .args(["describe", "--always", "--dirty"])
        .output()
        .ok()
        .filter(|o| o.status.success())
        .map(|o| String::from_utf8_lossy(&o.stdout).trim().to_string())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| "unknown".into())
}

pub fn now() -> String {
    chrono::Utc::now().to_rfc3339()
}
