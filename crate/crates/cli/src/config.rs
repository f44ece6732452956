//! Tolerance configuration: defaults, optional TOML file pointed to by
//! the HMINK_CONFIG environment variable, and per-invocation flag overrides.

use hmink_core::QuadratureConfig;
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub quadrature: QuadratureSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSection {
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub max_subdivisions: Option<u32>,
}

/// Resolve the quadrature configuration: defaults, then the HMINK_CONFIG
/// file when set, then the command-line flags.
pub fn resolve(rel_tol: Option<f64>, abs_tol: Option<f64>) -> Result<QuadratureConfig, String> {
    let mut cfg = QuadratureConfig::default();
    if let Ok(path) = std::env::var("HMINK_CONFIG") {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read config file {path}: {e}"))?;
        let file: FileConfig =
            toml::from_str(&text).map_err(|e| format!("cannot parse config file {path}: {e}"))?;
        if let Some(v) = file.quadrature.rel_tol {
            cfg.rel_tol = v;
        }
        if let Some(v) = file.quadrature.abs_tol {
            cfg.abs_tol = v;
        }
        if let Some(v) = file.quadrature.max_subdivisions {
            cfg.max_subdivisions = v;
        }
    }
    if let Some(v) = rel_tol {
        cfg.rel_tol = v;
    }
    if let Some(v) = abs_tol {
        cfg.abs_tol = v;
    }
    if !(cfg.rel_tol > 0.0 && cfg.abs_tol > 0.0) {
        return Err("tolerances must be positive".into());
    }
    Ok(cfg)
}
