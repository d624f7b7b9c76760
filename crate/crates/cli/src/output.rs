//! JSON report document and atomic file output.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};
use tri_jacobi::report::VerificationReport;

use crate::config::RunConfig;

/// Version string baked in at build time.
pub const VERSION: &str = env!("TRIJAC_VERSION");

#[derive(Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Serialize)]
pub struct Document<'a> {
    pub version: &'static str,
    pub catalogue: String,
    pub catalogue_sha256: String,
    pub config: &'a RunConfig,
    pub summary: Summary,
    pub reports: &'a [VerificationReport],
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl<'a> Document<'a> {
    pub fn new(
        cfg: &'a RunConfig,
        catalogue: String,
        catalogue_text: &str,
        reports: &'a [VerificationReport],
    ) -> Document<'a> {
        let passed = reports.iter().filter(|r| r.passed()).count();
        Document {
            version: VERSION,
            catalogue,
            catalogue_sha256: sha256_hex(catalogue_text.as_bytes()),
            config: cfg,
            summary: Summary {
                total: reports.len(),
                passed,
                failed: reports.len() - passed,
            },
            reports,
        }
    }
}

/// Write `contents` next to `path` and rename it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let name = path
        .file_name()
        .with_context(|| format!("{} is not a file path", path.display()))?;
    let tmp = dir.join(format!(
        ".{}.tmp{}",
        name.to_string_lossy(),
        std::process::id()
    ));
    let result = (|| -> Result<()> {
        let mut f = std::fs::File::create(&tmp)
            .with_context(|| format!("creating {}", tmp.display()))?;
        f.write_all(contents)?;
        f.sync_all()?;
        std::fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))
    })();
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.json");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
