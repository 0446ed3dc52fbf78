//! Run configuration: defaults, optional JSON file, command-line overrides.

use std::path::{Path, PathBuf};

use qmarket_core::Method;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_TIMES: [f64; 6] = [0.0, 1800.0, 3600.0, 7200.0, 14400.0, 28800.0];

/// Fully resolved simulation settings; echoed to `run.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub q: i64,
    pub alpha: f64,
    pub mu: f64,
    pub beta: f64,
    pub omega: f64,
    pub dt: f64,
    pub times: Vec<f64>,
    pub price_base: Option<f64>,
    pub method: String,
    pub output_dir: PathBuf,
    pub emit_svg: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            q: 10,
            alpha: 0.2,
            mu: 1.0,
            beta: 0.1,
            omega: 1e-4,
            dt: 1.0,
            times: DEFAULT_TIMES.to_vec(),
            price_base: None,
            method: Method::UnitaryMidpoint.as_str().into(),
            output_dir: PathBuf::from("qmarket-out"),
            emit_svg: false,
        }
    }
}

/// Any subset of [`RunConfig`] fields, as read from a file or from flags.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub q: Option<i64>,
    pub alpha: Option<f64>,
    pub mu: Option<f64>,
    pub beta: Option<f64>,
    pub omega: Option<f64>,
    pub dt: Option<f64>,
    pub times: Option<Vec<f64>>,
    pub price_base: Option<f64>,
    pub method: Option<String>,
    pub output_dir: Option<PathBuf>,
    pub emit_svg: Option<bool>,
}

impl PartialConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Io(std::io::Error::new(
                e.kind(),
                format!("cannot read config {}: {e}", path.display()),
            ))
        })?;
        serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("bad config {}: {e}", path.display())))
    }

    /// Fields set in `other` win.
    pub fn overlay(self, other: PartialConfig) -> PartialConfig {
        PartialConfig {
            q: other.q.or(self.q),
            alpha: other.alpha.or(self.alpha),
            mu: other.mu.or(self.mu),
            beta: other.beta.or(self.beta),
            omega: other.omega.or(self.omega),
            dt: other.dt.or(self.dt),
            times: other.times.or(self.times),
            price_base: other.price_base.or(self.price_base),
            method: other.method.or(self.method),
            output_dir: other.output_dir.or(self.output_dir),
            emit_svg: other.emit_svg.or(self.emit_svg),
        }
    }

    pub fn resolve(self) -> Result<RunConfig, CliError> {
        let d = RunConfig::default();
        let cfg = RunConfig {
            q: self.q.unwrap_or(d.q),
            alpha: self.alpha.unwrap_or(d.alpha),
            mu: self.mu.unwrap_or(d.mu),
            beta: self.beta.unwrap_or(d.beta),
            omega: self.omega.unwrap_or(d.omega),
            dt: self.dt.unwrap_or(d.dt),
            times: self.times.unwrap_or(d.times),
            price_base: self.price_base.or(d.price_base),
            method: self.method.unwrap_or(d.method),
            output_dir: self.output_dir.unwrap_or(d.output_dir),
            emit_svg: self.emit_svg.unwrap_or(d.emit_svg),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl RunConfig {
    pub fn method(&self) -> Result<Method, CliError> {
        self.method.parse().map_err(|_| {
            CliError::Invalid(format!(
                "--method must be 'unitary-midpoint' or 'rk4', got '{}'",
                self.method
            ))
        })
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Invalid(msg));
        if self.q < 1 {
            return bad(format!(
                "--q must be a positive integer (price limit in percent), got {}",
                self.q
            ));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return bad(format!("--alpha must be positive, got {}", self.alpha));
        }
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return bad(format!("--mu must be positive, got {}", self.mu));
        }
        if !self.beta.is_finite() {
            return bad(format!("--beta must be finite, got {}", self.beta));
        }
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return bad(format!("--omega must be positive, got {}", self.omega));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad(format!("--dt must be positive, got {}", self.dt));
        }
        if let Some(p) = self.price_base {
            if !(p > 0.0 && p.is_finite()) {
                return bad(format!("--price-base must be positive, got {p}"));
            }
        }
        self.method()?;
        if self.times.is_empty() {
            return bad("--times needs at least one sample time".into());
        }
        for (i, &t) in self.times.iter().enumerate() {
            if !(t >= 0.0 && t.is_finite()) {
                return bad(format!("--times entries must be non-negative, got {t}"));
            }
            if i > 0 && t <= self.times[i - 1] {
                return bad("--times must be strictly increasing".into());
            }
            let ratio = t / self.dt;
            if (ratio - ratio.round()).abs() > 1e-9 * ratio.max(1.0) {
                return bad(format!(
                    "sample time {t} is not a multiple of --dt {}; pick a dt that divides every sample time",
                    self.dt
                ));
            }
        }
        Ok(())
    }
}
