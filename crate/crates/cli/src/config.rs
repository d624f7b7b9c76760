//! Run configuration: defaults, then a `key = value` file, then flags.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use tri_jacobi::report::Mode;

/// Environment variable naming the default catalogue file.
pub const CATALOGUE_ENV: &str = "TRIJAC_CATALOGUE";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RepChoice {
    Variable,
    Degree,
    Both,
}

/// Named groups of checks.
pub const SUITES: &[&str] = &[
    "relations",
    "structure",
    "subalgebras",
    "symmetry",
    "jacobi",
    "l3",
    "bispectral",
    "recurrence",
    "gram",
    "appendixA",
    "appendixB",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub n_max: i64,
    #[serde(serialize_with = "mode_name")]
    pub mode: Mode,
    pub samples: usize,
    pub seed: u64,
    pub representation: RepChoice,
    pub suites: Vec<String>,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub catalogue: Option<PathBuf>,
    pub timings: bool,
}

fn mode_name<S: serde::Serializer>(m: &Mode, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(m.as_str())
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            n_max: 6,
            mode: Mode::Symbolic,
            samples: 50,
            seed: 42,
            representation: RepChoice::Both,
            suites: Vec::new(),
            output: None,
            catalogue: None,
            timings: false,
        }
    }
}

pub fn parse_mode(s: &str) -> Result<Mode> {
    match s {
        "symbolic" => Ok(Mode::Symbolic),
        "sampled" | "sampled-exact" => Ok(Mode::Sampled),
        _ => bail!("unknown mode `{s}` (expected symbolic or sampled)"),
    }
}

pub fn parse_rep(s: &str) -> Result<RepChoice> {
    match s {
        "variable" => Ok(RepChoice::Variable),
        "degree" => Ok(RepChoice::Degree),
        "both" => Ok(RepChoice::Both),
        _ => bail!("unknown representation `{s}` (expected variable, degree or both)"),
    }
}

pub fn parse_suites(s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for name in s.split(',').map(str::trim).filter(|n| !n.is_empty()) {
        if name == "all" {
            out.extend(SUITES.iter().map(|s| s.to_string()));
        } else if SUITES.contains(&name) {
            out.push(name.to_string());
        } else {
            bail!("unknown suite `{name}` (expected one of {}, all)", SUITES.join(", "));
        }
    }
    Ok(out)
}

impl RunConfig {
    /// Apply one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |e: &dyn std::fmt::Display| anyhow!("{key}: {e}");
        match key {
            "nmax" | "n_max" => self.n_max = value.parse().map_err(|e| bad(&e))?,
            "mode" => self.mode = parse_mode(value)?,
            "samples" => self.samples = value.parse().map_err(|e| bad(&e))?,
            "seed" => self.seed = value.parse().map_err(|e| bad(&e))?,
            "rep" | "representation" => self.representation = parse_rep(value)?,
            "suite" | "suites" => self.suites = parse_suites(value)?,
            "out" | "output" => self.output = Some(PathBuf::from(value)),
            "catalogue" => self.catalogue = Some(PathBuf::from(value)),
            "timings" => self.timings = value.parse().map_err(|e| bad(&e))?,
            _ => bail!("unknown configuration key `{key}`"),
        }
        Ok(())
    }

    /// Read a configuration file; `#` starts a comment.
    pub fn load_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("{}:{}: expected key = value", path.display(), i + 1))?;
            self.set(key.trim(), value.trim())
                .with_context(|| format!("{}:{}", path.display(), i + 1))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max < 0 {
            bail!("nmax must be non-negative, got {}", self.n_max);
        }
        if self.mode == Mode::Sampled && self.samples == 0 {
            bail!("samples must be at least 1 in sampled mode");
        }
        Ok(())
    }

    /// Suites to run, all of them when none were named.
    pub fn selected_suites(&self) -> Vec<String> {
        if self.suites.is_empty() {
            SUITES.iter().map(|s| s.to_string()).collect()
        } else {
            self.suites.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_overrides() {
        let dir = std::env::temp_dir().join(format!("trijac-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.cfg");
        std::fs::write(&path, "# run\nnmax = 4\nmode = sampled\nsuite = relations, gram\n").unwrap();
        let mut cfg = RunConfig::default();
        cfg.load_file(&path).unwrap();
        assert_eq!(cfg.n_max, 4);
        assert_eq!(cfg.mode, Mode::Sampled);
        assert_eq!(cfg.suites, ["relations", "gram"]);
        cfg.set("nmax", "2").unwrap();
        assert_eq!(cfg.n_max, 2);
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn rejects_bad_values() {
        let mut cfg = RunConfig::default();
        assert!(cfg.set("mode", "fast").is_err());
        assert!(cfg.set("colour", "red").is_err());
        assert!(parse_suites("relations,bogus").is_err());
        cfg.n_max = -1;
        assert!(cfg.validate().is_err());
        cfg.n_max = 1;
        cfg.mode = Mode::Sampled;
        cfg.samples = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn all_expands() {
        assert_eq!(parse_suites("all").unwrap().len(), SUITES.len());
        assert_eq!(RunConfig::default().selected_suites().len(), SUITES.len());
    }
}
