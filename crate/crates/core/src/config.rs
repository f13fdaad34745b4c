use crate::error::{Error, Result};

/// Size limits for the exponential computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// Maximum number of variables (vertices) enumerated by Hochster's formula.
    pub hochster: usize,
    /// Maximum number of generators for the Taylor complex.
    pub taylor: usize,
    /// Maximum vertex count for graph enumeration.
    pub enumerate: usize,
}

pub const GUARD_OVERRIDE_ENV: &str = "COVERDEPTH_GUARD_OVERRIDE";

impl Default for Guards {
    fn default() -> Self {
        Guards { hochster: 18, taylor: 12, enumerate: 7 }
    }
}

impl Guards {
    /// Applies a `key=value[,key=value]` override string
    /// (keys: `hochster`, `taylor`, `enumerate`).
    pub fn with_override(mut self, spec: &str) -> Result<Self> {
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("guard override `{part}` is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("guard override `{part}` has a non-integer value")))?;
            if value == 0 {
                return Err(Error::Parse(format!("guard `{key}` must be positive")));
            }
            match key.trim() {
                "hochster" => self.hochster = value,
                "taylor" => self.taylor = value,
                "enumerate" => self.enumerate = value,
                other => return Err(Error::Parse(format!("unknown guard `{other}`"))),
            }
        }
        Ok(self)
    }

    /// Applies the override environment variable when it is set.
    pub fn from_env(self) -> Result<Self> {
        match std::env::var(GUARD_OVERRIDE_ENV) {
            Ok(spec) => self.with_override(&spec),
            Err(_) => Ok(self),
        }
    }
}
