//! Run manifests: every artifact-producing command records its exact
//! argument vector, seeds, input digests, and outputs next to its first
//! output file, and `tsa rerun <manifest>` replays the command.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use tsa_core::rng::fnv1a64;
use tsa_core::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub model_format_version: u32,
    /// Argument vector after the binary name; replaying it reproduces the
    /// outputs byte-identically.
    pub command: Vec<String>,
    pub seeds: BTreeMap<String, u64>,
    /// FNV-1a 64 digests of every input file, keyed by path as given.
    pub input_digests: BTreeMap<String, String>,
    pub outputs: Vec<String>,
    pub timings_ms: BTreeMap<String, u64>,
}

pub struct ManifestBuilder {
    command: Vec<String>,
    seeds: BTreeMap<String, u64>,
    inputs: BTreeMap<String, String>,
    outputs: Vec<PathBuf>,
    timings: BTreeMap<String, u64>,
    started: std::time::Instant,
}

impl ManifestBuilder {
    pub fn new(command: &[String]) -> Self {
        ManifestBuilder {
            command: command.to_vec(),
            seeds: BTreeMap::new(),
            inputs: BTreeMap::new(),
            outputs: Vec::new(),
            timings: BTreeMap::new(),
            started: std::time::Instant::now(),
        }
    }

    pub fn seed(&mut self, name: &str, value: u64) {
        self.seeds.insert(name.to_string(), value);
    }

    pub fn input(&mut self, path: &Path) -> Result<()> {
        let bytes = fs::read(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        self.inputs.insert(
            path.display().to_string(),
            format!("{:016x}", fnv1a64(&bytes)),
        );
        Ok(())
    }

    pub fn output(&mut self, path: &Path) {
        self.outputs.push(path.to_path_buf());
    }

    pub fn timing(&mut self, name: &str, ms: u64) {
        self.timings.insert(name.to_string(), ms);
    }

    /// Writes `<first_output>.manifest.json`.
    pub fn write(mut self) -> Result<()> {
        let first = match self.outputs.first() {
            Some(f) => f.clone(),
            None => return Ok(()),
        };
        self.timings
            .insert("total".into(), self.started.elapsed().as_millis() as u64);
        let manifest = RunManifest {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            model_format_version: tsa_core::crf::MODEL_VERSION,
            command: self.command,
            seeds: self.seeds,
            input_digests: self.inputs,
            outputs: self
                .outputs
                .iter()
                .map(|p| p.display().to_string())
                .collect(),
            timings_ms: self.timings,
        };
        let path = PathBuf::from(format!("{}.manifest.json", first.display()));
        let body = serde_json::to_string_pretty(&manifest)
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        fs::write(&path, body).map_err(|e| Error::io(path.display().to_string(), e))?;
        Ok(())
    }
}

pub fn read_manifest(path: &Path) -> Result<RunManifest> {
    let body =
        fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    serde_json::from_str(&body)
        .map_err(|e| Error::parse(path.display().to_string(), 1, e.to_string()))
}
