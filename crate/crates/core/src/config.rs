//! Run configuration shared by every verification and report.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{is_prime, MonomialOrder, DEFAULT_CHARACTERISTIC};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub characteristic: u32,
    pub order: MonomialOrder,
    /// Nonzero parameter values at which family fibres are sampled.
    pub t_samples: Vec<i64>,
    /// Twists at which cohomology is compared; `None` picks a window from
    /// the regularity of the curves involved.
    pub window: Option<(i64, i64)>,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            characteristic: DEFAULT_CHARACTERISTIC,
            order: MonomialOrder::Grevlex,
            t_samples: vec![1, 2, 3, 5],
            window: None,
            seed: 0,
            out_dir: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.characteristic) {
            return Err(Error::NonPrimeCharacteristic(self.characteristic));
        }
        let p = self.characteristic as i64;
        if self.t_samples.is_empty() || self.t_samples.iter().any(|t| t.rem_euclid(p) == 0) {
            return Err(Error::OutOfRange("t samples must be nonempty and nonzero".into()));
        }
        if let Some((lo, hi)) = self.window {
            if lo > hi {
                return Err(Error::OutOfRange(format!("empty window [{lo}, {hi}]")));
            }
        }
        Ok(())
    }

    pub fn with_characteristic(mut self, p: u32) -> Self {
        self.characteristic = p;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, t: &[i64]) -> Self {
        self.t_samples = t.to_vec();
        self
    }

    pub fn with_window(mut self, window: Option<(i64, i64)>) -> Self {
        self.window = window;
        self
    }
}

/// Parses `lo:hi` or `lo,hi`.
pub fn parse_window(s: &str) -> Result<(i64, i64)> {
    let parts: Vec<&str> = s.split([':', ',']).map(str::trim).collect();
    match parts.as_slice() {
        [lo, hi] => {
            let lo = lo.parse().map_err(|_| Error::Invalid(format!("bad window `{s}`")))?;
            let hi = hi.parse().map_err(|_| Error::Invalid(format!("bad window `{s}`")))?;
            if lo > hi {
                return Err(Error::OutOfRange(format!("empty window [{lo}, {hi}]")));
            }
            Ok((lo, hi))
        }
        _ => Err(Error::Invalid(format!("bad window `{s}`: expected lo:hi"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        RunConfig::default().validate().unwrap();
        assert!(RunConfig::default().with_characteristic(4).validate().is_err());
        assert!(RunConfig::default().with_samples(&[0, 1]).validate().is_err());
        assert_eq!(parse_window("-5:8").unwrap(), (-5, 8));
        assert!(parse_window("3:1").is_err());
        let json = serde_json::to_string(&RunConfig::default()).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&json).unwrap(), RunConfig::default());
    }
}
