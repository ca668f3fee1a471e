use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coherent::{DEFAULT_TOL, TRUNCATION_CAP};
use crate::deformation::DeformationProfile;
use crate::operators::Grid;
use crate::oscillator::PhysicalParams;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    Atomic,
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    pub hbar: f64,
    pub m0: f64,
    pub omega0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileConfig {
    pub name: String,
    #[serde(default)]
    pub params: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub xmin: f64,
    pub xmax: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationConfig {
    pub tol: f64,
    pub cap: usize,
}

/// Everything a command needs; JSON-serializable so it can be echoed into
/// every output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub units: Units,
    pub params: Option<ParamsConfig>,
    pub lambda: f64,
    pub profile: ProfileConfig,
    pub grid: GridConfig,
    pub figure_grid: GridConfig,
    pub truncation: TruncationConfig,
    pub figure_mode: bool,
    pub alpha: Vec<String>,
    pub t: Vec<f64>,
    pub n: Vec<usize>,
    pub out: PathBuf,
    pub format: Format,
}

/// Truncation order used for the first figure.
pub const FIGURE_TRUNCATION: usize = 10;

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            units: Units::Atomic,
            params: None,
            lambda: 2.0,
            profile: ProfileConfig { name: "const".into(), params: Vec::new() },
            grid: GridConfig { xmin: -6.0, xmax: 22.0, n: 1601 },
            figure_grid: GridConfig { xmin: -24.0, xmax: 40.0, n: 1281 },
            truncation: TruncationConfig { tol: DEFAULT_TOL, cap: TRUNCATION_CAP },
            figure_mode: false,
            alpha: vec!["0.5".into(), "1".into(), "2".into()],
            t: vec![0.0, 3.0, 5.0, 7.0],
            n: vec![0, 1, 2],
            out: PathBuf::from("pdem-out"),
            format: Format::Csv,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::config(format!("bad config {}: {e}", path.display())))
    }

    pub fn physical_params(&self) -> Result<PhysicalParams> {
        match (self.units, self.params) {
            (Units::Atomic, None) => Ok(PhysicalParams::atomic(self.lambda)),
            (Units::Atomic, Some(_)) => Err(Error::config("units = atomic conflicts with explicit params")),
            (Units::Explicit, Some(p)) => PhysicalParams::new(p.hbar, p.m0, p.omega0, self.lambda)
                .map_err(|e| Error::config(e.to_string())),
            (Units::Explicit, None) => Err(Error::config("units = explicit needs params {hbar, m0, omega0}")),
        }
    }

    pub fn deformation(&self) -> Result<DeformationProfile> {
        DeformationProfile::from_name(&self.profile.name, &self.profile.params)
            .map_err(|e| Error::config(e.to_string()))
    }

    pub fn verification_grid(&self) -> Result<Grid> {
        to_grid(&self.grid)
    }

    pub fn plot_grid(&self) -> Result<Grid> {
        to_grid(&self.figure_grid)
    }

    pub fn alphas(&self) -> Result<Vec<Complex64>> {
        self.alpha.iter().map(|s| parse_complex(s)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        self.physical_params()?;
        self.deformation()?;
        self.verification_grid()?;
        self.plot_grid()?;
        self.alphas()?;
        if !(self.truncation.tol > 0.0) {
            return Err(Error::config("truncation.tol must be positive"));
        }
        if self.truncation.cap == 0 || self.truncation.cap > TRUNCATION_CAP {
            return Err(Error::config(format!("truncation.cap must lie in 1..={TRUNCATION_CAP}")));
        }
        if self.t.iter().any(|t| !t.is_finite()) {
            return Err(Error::config("times must be finite"));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

fn to_grid(g: &GridConfig) -> Result<Grid> {
    Grid::new(g.xmin, g.xmax, g.n).map_err(|e| Error::config(e.to_string()))
}

/// Parse `a`, `bi`, `a+bi`, `a-bi` (also `i`, `-i`, exponents like `1e-3+2i`).
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::config(format!("cannot parse complex number `{text}`"));
    if s.is_empty() {
        return Err(bad());
    }
    let num = |t: &str| -> Result<f64> {
        let v: f64 = t.parse().map_err(|_| bad())?;
        if v.is_finite() { Ok(v) } else { Err(bad()) }
    };
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(num(&s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (num(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => num(t)?,
    };
    Ok(Complex64::new(re, im))
}

/// `name` or `name:p1,p2,…`.
pub fn parse_profile(text: &str) -> Result<ProfileConfig> {
    let (name, rest) = match text.split_once(':') {
        Some((n, r)) => (n, Some(r)),
        None => (text, None),
    };
    let params = match rest {
        None | Some("") => Vec::new(),
        Some(r) => r
            .split([',', ':'])
            .map(|p| p.trim().parse::<f64>().map_err(|_| Error::config(format!("bad profile parameter `{p}`"))))
            .collect::<Result<_>>()?,
    };
    let cfg = ProfileConfig { name: name.trim().to_string(), params };
    DeformationProfile::from_name(&cfg.name, &cfg.params).map_err(|e| Error::config(e.to_string()))?;
    Ok(cfg)
}
