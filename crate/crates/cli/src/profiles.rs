//! Flat key=value profiles naming the figure presets.
//!
//! A profile is looked up as `<name>.profile` first in
//! `$GAUSSTELE_PROFILE_DIR`, then in `./profiles`, and finally among the
//! copies embedded at build time, so presets work from any directory while
//! remaining overridable.

use crate::UsageError;
use std::collections::BTreeMap;
use std::path::PathBuf;

const EMBEDDED: [(&str, &str); 3] = [
    ("fig1", include_str!("../../../profiles/fig1.profile")),
    ("fig2", include_str!("../../../profiles/fig2.profile")),
    ("fig4", include_str!("../../../profiles/fig4.profile")),
];

pub struct Profile {
    name: String,
    entries: BTreeMap<String, String>,
}

impl Profile {
    pub fn load(name: &str) -> Result<Self, UsageError> {
        if !name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        {
            return Err(UsageError(format!("invalid profile name '{name}'")));
        }
        let file = format!("{name}.profile");
        let mut candidates = Vec::new();
        if let Ok(dir) = std::env::var("GAUSSTELE_PROFILE_DIR") {
            candidates.push(PathBuf::from(dir).join(&file));
        }
        candidates.push(PathBuf::from("profiles").join(&file));
        for path in candidates {
            if let Ok(text) = std::fs::read_to_string(&path) {
                return Self::parse(name, &text)
                    .map_err(|e| UsageError(format!("{}: {e}", path.display())));
            }
        }
        for (embedded_name, text) in EMBEDDED {
            if embedded_name == name {
                return Self::parse(name, text).map_err(UsageError);
            }
        }
        Err(UsageError(format!("unknown profile '{name}'")))
    }

    fn parse(name: &str, text: &str) -> Result<Self, String> {
        let mut entries = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key=value", lineno + 1))?;
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Self {
            name: name.to_string(),
            entries,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    fn raw(&self, key: &str) -> Result<&str, UsageError> {
        self.entries
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| UsageError(format!("profile '{}' is missing '{key}'", self.name)))
    }

    pub fn float(&self, key: &str) -> Result<f64, UsageError> {
        let raw = self.raw(key)?;
        raw.parse().map_err(|_| {
            UsageError(format!(
                "profile '{}': bad number '{raw}' for '{key}'",
                self.name
            ))
        })
    }

    pub fn float_list(&self, key: &str) -> Result<Vec<f64>, UsageError> {
        let raw = self.raw(key)?;
        raw.split(',')
            .map(|tok| {
                tok.trim().parse().map_err(|_| {
                    UsageError(format!(
                        "profile '{}': bad number '{tok}' for '{key}'",
                        self.name
                    ))
                })
            })
            .collect()
    }

    /// Semicolon-separated (n_th, n_s) pairs.
    pub fn panels(&self, key: &str) -> Result<Vec<(f64, f64)>, UsageError> {
        let raw = self.raw(key)?;
        raw.split(';')
            .map(|pair| {
                let mut it = pair.split(',').map(str::trim);
                let bad = || UsageError(format!("profile '{}': bad panel '{pair}'", self.name));
                let a = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                let b = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                if it.next().is_some() {
                    return Err(bad());
                }
                Ok((a, b))
            })
            .collect()
    }

    pub fn zeta(&self, key: &str) -> Result<crate::ZetaPolicy, UsageError> {
        self.raw(key)?.parse().map_err(UsageError)
    }
}
