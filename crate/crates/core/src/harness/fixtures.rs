//! On-disk fixtures: `schema.json` plus `valid/*.json` and `invalid/*.json`
//! witnesses. A file named `ADVERSARIAL` marks schemas built to blow up.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::error::SchemaError;
use crate::json::{parse_json, JsonValue};
use crate::schema::{parse_schema, SchemaDocument};

/// A source label and the parsed instance, or why it could not be read.
pub type Labelled = (String, Result<JsonValue, String>);

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub dir: PathBuf,
    pub schema_bytes: usize,
    pub doc: SchemaDocument,
    pub valid: Vec<Labelled>,
    pub invalid: Vec<Labelled>,
    pub adversarial: bool,
}

impl Fixture {
    /// Witnesses of both kinds with their expected validity.
    pub fn witnesses(&self) -> impl Iterator<Item = (&str, &Result<JsonValue, String>, bool)> {
        self.valid
            .iter()
            .map(|(n, v)| (n.as_str(), v, true))
            .chain(self.invalid.iter().map(|(n, v)| (n.as_str(), v, false)))
    }

    pub fn all_witnesses(&self) -> Vec<Labelled> {
        self.valid.iter().chain(&self.invalid).cloned().collect()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Schema { path: String, source: SchemaError },
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> FixtureError + '_ {
    move |source| FixtureError::Io { path: path.display().to_string(), source }
}

/// The `.json` files of a directory, sorted by name, each parsed.
pub fn read_instances(dir: &Path) -> Result<Vec<Labelled>, FixtureError> {
    if !dir.is_dir() {
        return Ok(Vec::new());
    }
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_err(dir))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let bytes = fs::read(&p).map_err(io_err(&p))?;
            let name = p.file_name().expect("file").to_string_lossy().into_owned();
            Ok((name, parse_json(&bytes).map_err(|e| e.to_string())))
        })
        .collect()
}

pub fn load_fixture(dir: &Path) -> Result<Fixture, FixtureError> {
    let schema_path = dir.join("schema.json");
    let bytes = fs::read(&schema_path).map_err(io_err(&schema_path))?;
    let schema_err = |source: SchemaError| FixtureError::Schema { path: schema_path.display().to_string(), source };
    let value = parse_json(&bytes).map_err(|e| schema_err(e.into()))?;
    let doc = parse_schema(&value).map_err(schema_err)?;
    Ok(Fixture {
        name: dir.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default(),
        dir: dir.to_owned(),
        schema_bytes: bytes.len(),
        doc,
        valid: read_instances(&dir.join("valid"))?,
        invalid: read_instances(&dir.join("invalid"))?,
        adversarial: dir.join("ADVERSARIAL").exists(),
    })
}

/// Every fixture directory directly under `root`, sorted by name.
pub fn load_corpus(root: &Path) -> Result<Vec<Fixture>, FixtureError> {
    let mut dirs: Vec<PathBuf> = fs::read_dir(root)
        .map_err(io_err(root))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.join("schema.json").is_file())
        .collect();
    dirs.sort();
    dirs.iter().map(|d| load_fixture(d)).collect()
}
