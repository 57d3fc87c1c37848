//! Dataset manifests: the declarative JSON index tying images, annotations,
//! splits, and generation provenance together.
//!
//! A manifest lives as `manifest.json` inside its dataset directory; all
//! entry paths are relative to that directory so the whole tree can move.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::core::{read_annotations, CategorySet, GrayImage, Sample, SourceMeta};
use crate::error::Error;
use crate::Result;

/// Current manifest schema version.
pub const MANIFEST_VERSION: u32 = 1;

/// Dataset split. Augmentation is only ever applied to `Train`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Split {
    Train,
    Val,
    Test,
}

impl std::fmt::Display for Split {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Split::Train => write!(f, "train"),
            Split::Val => write!(f, "val"),
            Split::Test => write!(f, "test"),
        }
    }
}

impl std::str::FromStr for Split {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "train" => Ok(Split::Train),
            "val" => Ok(Split::Val),
            "test" => Ok(Split::Test),
            other => Err(Error::Config(format!(
                "unknown split {other:?} (expected train|val|test)"
            ))),
        }
    }
}

/// One image + annotation record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    /// Image path relative to the manifest directory.
    pub image: PathBuf,
    /// Annotation path relative to the manifest directory.
    pub annotation: PathBuf,
    /// Provenance: per-image seed, process tag, resolution, augmentation lineage.
    pub meta: SourceMeta,
}

/// Declarative index of a dataset directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub format_version: u32,
    pub split: Split,
    pub categories: CategorySet,
    /// Square image side in pixels for every entry.
    pub resolution: u32,
    /// Master seed the per-image seeds were derived from.
    pub master_seed: u64,
    /// Hash of the run configuration that produced this dataset (provenance).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config_hash: Option<String>,
    /// JSON blob describing the generator settings, for reproducibility.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<serde_json::Value>,
    pub entries: Vec<ManifestEntry>,
}

impl DatasetManifest {
    /// Canonical manifest file name inside a dataset directory.
    pub const FILE_NAME: &'static str = "manifest.json";

    pub fn new(split: Split, categories: CategorySet, resolution: u32, master_seed: u64) -> Self {
        DatasetManifest {
            format_version: MANIFEST_VERSION,
            split,
            categories,
            resolution,
            master_seed,
            config_hash: None,
            generator: None,
            entries: Vec::new(),
        }
    }

    /// Writes `manifest.json` into `dir` (pretty-printed, trailing newline,
    /// stable field order — reruns are byte-identical).
    pub fn save(&self, dir: impl AsRef<Path>) -> Result<PathBuf> {
        let path = dir.as_ref().join(Self::FILE_NAME);
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }

    /// Loads a manifest from either a dataset directory or a direct path to
    /// the JSON file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = if path.is_dir() {
            path.join(Self::FILE_NAME)
        } else {
            path.to_path_buf()
        };
        let text = std::fs::read_to_string(&file).map_err(|e| Error::io(&file, e))?;
        let manifest: DatasetManifest = serde_json::from_str(&text)?;
        if manifest.format_version != MANIFEST_VERSION {
            return Err(Error::Data(format!(
                "unsupported manifest version {} (expected {MANIFEST_VERSION})",
                manifest.format_version
            )));
        }
        Ok(manifest)
    }

    /// Directory containing a manifest file path (identity for directories).
    pub fn base_dir(manifest_path: &Path) -> PathBuf {
        if manifest_path.is_dir() {
            manifest_path.to_path_buf()
        } else {
            manifest_path
                .parent()
                .map(Path::to_path_buf)
                .unwrap_or_else(|| PathBuf::from("."))
        }
    }

    /// Loads the pixels and boxes of one entry.
    pub fn load_sample(&self, base_dir: impl AsRef<Path>, index: usize) -> Result<Sample> {
        let base = base_dir.as_ref();
        let entry = self.entries.get(index).ok_or_else(|| {
            Error::Data(format!(
                "entry index {index} out of range ({} entries)",
                self.entries.len()
            ))
        })?;
        let image = GrayImage::load_png(base.join(&entry.image))?;
        let boxes = read_annotations(base.join(&entry.annotation), self.categories.len() as u32)?;
        Ok(Sample::new(image, boxes, entry.meta.clone()))
    }

    /// Total instances per category id across all entries, read from the
    /// annotation files.
    pub fn category_totals(&self, base_dir: impl AsRef<Path>) -> Result<Vec<usize>> {
        let base = base_dir.as_ref();
        let mut totals = vec![0usize; self.categories.len()];
        for entry in &self.entries {
            let boxes =
                read_annotations(base.join(&entry.annotation), self.categories.len() as u32)?;
            for b in &boxes {
                totals[b.category as usize] += 1;
            }
        }
        Ok(totals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn save_load_round_trip_and_byte_stability() {
        let dir = tempfile::tempdir().unwrap();
        let mut m = DatasetManifest::new(Split::Train, CategorySet::adi(), 256, 42);
        m.entries.push(ManifestEntry {
            image: "images/img_000000.png".into(),
            annotation: "annotations/img_000000.txt".into(),
            meta: SourceMeta {
                seed: 7,
                process: "base".into(),
                resolution: 256,
                lineage: vec![],
            },
        });
        let p1 = m.save(dir.path()).unwrap();
        let bytes1 = std::fs::read(&p1).unwrap();
        let loaded = DatasetManifest::load(dir.path()).unwrap();
        assert_eq!(loaded, m);
        let p2 = loaded.save(dir.path()).unwrap();
        let bytes2 = std::fs::read(&p2).unwrap();
        assert_eq!(bytes1, bytes2, "re-saving must be byte-identical");
    }

    #[test]
    fn version_mismatch_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let mut m = DatasetManifest::new(Split::Val, CategorySet::adi(), 128, 0);
        m.format_version = 99;
        m.save(dir.path()).unwrap();
        assert!(DatasetManifest::load(dir.path()).is_err());
    }

    #[test]
    fn split_parsing() {
        assert_eq!("train".parse::<Split>().unwrap(), Split::Train);
        assert_eq!("val".parse::<Split>().unwrap(), Split::Val);
        assert!("training".parse::<Split>().is_err());
        assert_eq!(Split::Test.to_string(), "test");
    }
}
