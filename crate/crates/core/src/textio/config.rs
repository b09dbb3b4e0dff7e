//! Session configuration files.
//!
//! One `key = value` per line; blank lines and text after `#` are ignored.
//! Recognised keys: `ring`, `nvars`, `grid`, `caps`, `output` (`json` or
//! `text`) and `seed`. For example:
//!
//! ```text
//! ring = Z/6
//! nvars = 1
//! caps = points=4096,fixpoint=500000
//! output = json
//! seed = 7
//! ```

use std::fmt::Write as _;

use crate::caps::Caps;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputMode {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SessionConfig {
    pub ring: Option<String>,
    pub nvars: Option<usize>,
    pub grid: Option<String>,
    pub caps: Caps,
    pub output: OutputMode,
    pub seed: Option<u64>,
}

impl SessionConfig {
    /// Serializes in the same format [`parse_config`] reads.
    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        if let Some(r) = &self.ring {
            let _ = writeln!(out, "ring = {r}");
        }
        if let Some(n) = self.nvars {
            let _ = writeln!(out, "nvars = {n}");
        }
        if let Some(g) = &self.grid {
            let _ = writeln!(out, "grid = {g}");
        }
        let _ = writeln!(
            out,
            "caps = points={},fixpoint={},enumeration={}",
            self.caps.points, self.caps.fixpoint, self.caps.enumeration
        );
        let mode = match self.output {
            OutputMode::Json => "json",
            OutputMode::Text => "text",
        };
        let _ = writeln!(out, "output = {mode}");
        if let Some(s) = self.seed {
            let _ = writeln!(out, "seed = {s}");
        }
        out
    }
}

fn config_error<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        message: format!("line {line}: {}", message.into()),
        position: 0,
    })
}

/// `points=<N>,fixpoint=<M>,enumeration=<K>`; omitted keys keep `base` values.
pub fn parse_caps(s: &str, base: Caps) -> Result<Caps> {
    let mut caps = base;
    let mut offset = 0;
    for part in s.split(',') {
        let position = offset;
        offset += part.len() + 1;
        let Some((k, v)) = part.split_once('=') else {
            return Err(Error::Parse {
                message: format!("expected key=value in caps, found '{}'", part.trim()),
                position,
            });
        };
        let bad = || Error::Parse {
            message: format!("invalid cap value '{}'", v.trim()),
            position,
        };
        match k.trim() {
            "points" => caps.points = v.trim().parse().map_err(|_| bad())?,
            "fixpoint" => caps.fixpoint = v.trim().parse().map_err(|_| bad())?,
            "enumeration" => caps.enumeration = v.trim().parse().map_err(|_| bad())?,
            other => {
                return Err(Error::Parse {
                    message: format!("unknown cap '{other}'"),
                    position,
                })
            }
        }
    }
    Ok(caps)
}

pub fn parse_config(text: &str) -> Result<SessionConfig> {
    let mut cfg = SessionConfig::default();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return config_error(line, "expected key = value");
        };
        let value = value.trim();
        match key.trim() {
            "ring" => cfg.ring = Some(value.to_string()),
            "nvars" => {
                cfg.nvars = Some(
                    value
                        .parse()
                        .or_else(|_| config_error(line, "nvars must be a nonnegative integer"))?,
                )
            }
            "grid" => cfg.grid = Some(value.to_string()),
            "caps" => {
                cfg.caps = parse_caps(value, cfg.caps)
                    .or_else(|e| config_error(line, e.to_string()))?
            }
            "output" => {
                cfg.output = match value {
                    "json" => OutputMode::Json,
                    "text" => OutputMode::Text,
                    _ => return config_error(line, "output must be json or text"),
                }
            }
            "seed" => {
                cfg.seed = Some(
                    value
                        .parse()
                        .or_else(|_| config_error(line, "seed must be a u64"))?,
                )
            }
            other => return config_error(line, format!("unknown key '{other}'")),
        }
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let text = "# session\nring = Z/6\nnvars=1\n\ncaps = points=4096 # more\nseed = 7\noutput = text\n";
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.ring.as_deref(), Some("Z/6"));
        assert_eq!(cfg.nvars, Some(1));
        assert_eq!(cfg.caps.points, 4096);
        assert_eq!(cfg.caps.fixpoint, Caps::default().fixpoint);
        assert_eq!(cfg.output, OutputMode::Text);
        assert_eq!(cfg.seed, Some(7));
        assert_eq!(parse_config(&cfg.to_config_string()).unwrap(), cfg);
    }

    #[test]
    fn grid_values_keep_their_equals_signs() {
        let cfg = parse_config("grid = X1={0,1};X2=*").unwrap();
        assert_eq!(cfg.grid.as_deref(), Some("X1={0,1};X2=*"));
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(parse_config("ring Z").is_err());
        assert!(parse_config("colour = red").is_err());
        assert!(parse_config("output = xml").is_err());
        assert!(parse_caps("points=x", Caps::default()).is_err());
        assert!(parse_caps("widgets=3", Caps::default()).is_err());
    }
}
