//! Runtime configuration: the k cap, overridable through the environment.
//! Grid and phase defaults live on the clap arguments themselves.

use anyhow::{bail, Result};

pub const KCAP_ENV: &str = "KSPHERE_KCAP";

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub k_cap: u32,
}

impl Config {
    pub fn load() -> Result<Self> {
        let mut cfg = Config { k_cap: 15 };
        if let Ok(raw) = std::env::var(KCAP_ENV) {
            let k: u32 = raw
                .trim()
                .parse()
                .map_err(|_| anyhow::anyhow!("{KCAP_ENV} must be an integer, got '{raw}'"))?;
            if k.is_multiple_of(2) || k < 3 {
                bail!("{KCAP_ENV} must be odd and >= 3, got {k}");
            }
            cfg.k_cap = k;
        }
        Ok(cfg)
    }

    /// Enforce the configured cap; resource errors exit with code 3.
    pub fn check_k(&self, k: u32) -> ksphere::Result<()> {
        if k > self.k_cap {
            return Err(ksphere::Error::Resource(format!(
                "k = {k} exceeds the configured cap {} (override with {KCAP_ENV})",
                self.k_cap
            )));
        }
        Ok(())
    }
}
