//! Optional TOML configuration. Top-level keys apply to every subcommand, a
//! `[subcommand]` table overrides them, and command-line flags override both.

use std::path::Path;

use serde::de::DeserializeOwned;
use toml::Table;

use crate::CliError;

#[derive(Debug, Default)]
pub struct Config {
    root: Table,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let root: Table = text
            .parse()
            .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))?;
        Ok(Config { root })
    }

    /// `[section].key`, falling back to the top-level `key`.
    pub fn get<T: DeserializeOwned>(&self, section: &str, key: &str) -> Result<Option<T>, CliError> {
        let scoped = self.root.get(section).and_then(|s| s.as_table()).and_then(|t| t.get(key));
        let Some(value) = scoped.or_else(|| self.root.get(key).filter(|v| !v.is_table())) else {
            return Ok(None);
        };
        value
            .clone()
            .try_into()
            .map(Some)
            .map_err(|e| CliError::Usage(format!("config key {section}.{key}: {e}")))
    }

    /// Flag if given, else config, else `default`.
    pub fn pick<T: DeserializeOwned>(
        &self,
        section: &str,
        key: &str,
        flag: Option<T>,
        default: T,
    ) -> Result<T, CliError> {
        match flag {
            Some(v) => Ok(v),
            None => Ok(self.get(section, key)?.unwrap_or(default)),
        }
    }

    pub fn pick_opt<T: DeserializeOwned>(&self, section: &str, key: &str, flag: Option<T>) -> Result<Option<T>, CliError> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(section, key),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_beat_sections_beat_top_level() {
        let cfg = Config { root: "seed = 1\ncap = 5\n[solve]\nseed = 2\n".parse().unwrap() };
        assert_eq!(cfg.pick("solve", "seed", Some(3u64), 0).unwrap(), 3);
        assert_eq!(cfg.pick("solve", "seed", None, 0u64).unwrap(), 2);
        assert_eq!(cfg.pick("bench", "seed", None, 0u64).unwrap(), 1);
        assert_eq!(cfg.pick("solve", "cap", None, 0u64).unwrap(), 5);
        assert_eq!(cfg.pick("solve", "missing", None, 9u64).unwrap(), 9);
        assert!(cfg.get::<String>("solve", "seed").is_err());
    }
}
