//! Run configuration: a flat TOML document whose keys mirror the command
//! line flags. Flags win over the file.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::equilibria::{Leader, Scenario, ScenarioSpec};
use crate::error::{Error, Result};
use crate::model::{ClassParams, MarketParams, StickinessKind, Transfers};
use crate::numerics::{Region, DEFAULT_GRID};

/// Every key optional, as read from a file or from flags.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub scenario: Option<Scenario>,
    pub d0: Option<f64>,
    pub d: Option<f64>,
    pub ps: Option<f64>,
    pub pa: Option<f64>,
    pub gamma: Option<f64>,
    pub dl: Option<f64>,
    pub dh: Option<f64>,
    pub d2: Option<f64>,
    pub stickiness: Option<StickinessKind>,
    pub leader: Option<Leader>,
    pub sweep: Option<String>,
    pub out: Option<PathBuf>,
    pub verify: Option<bool>,
    pub epsilon: Option<f64>,
    pub grid: Option<usize>,
    pub region: Option<String>,
    pub resolution: Option<String>,
}

macro_rules! overlay_fields {
    ($base:ident, $top:ident, $($f:ident),*) => {
        PartialConfig { $($f: $top.$f.or($base.$f)),* }
    };
}

impl PartialConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Keys set in `top` replace those in `self`.
    pub fn overlay(self, top: PartialConfig) -> PartialConfig {
        let base = self;
        overlay_fields!(
            base, top, scenario, d0, d, ps, pa, gamma, dl, dh, d2, stickiness, leader, sweep, out, verify, epsilon,
            grid, region, resolution
        )
    }
}

/// A swept parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    D0,
    D,
    Ps,
    Pa,
    Gamma,
    Dl,
    Dh,
    D2,
    /// Side payment as a fraction of `pmax`.
    Eta,
}

impl SweepParam {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepParam::D0 => "d0",
            SweepParam::D => "d",
            SweepParam::Ps => "ps",
            SweepParam::Pa => "pa",
            SweepParam::Gamma => "gamma",
            SweepParam::Dl => "dl",
            SweepParam::Dh => "dh",
            SweepParam::D2 => "d2",
            SweepParam::Eta => "eta",
        }
    }
}

impl std::str::FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use SweepParam::*;
        [D0, D, Ps, Pa, Gamma, Dl, Dh, D2, Eta]
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::Config(format!("cannot sweep `{s}`")))
    }
}

/// `param:start:stop:step`, both ends included when hit exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SweepSpec {
    pub fn values(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..n).map(|k| self.start + k as f64 * self.step).collect()
    }
}

impl std::str::FromStr for SweepSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [param, start, stop, step] = parts[..] else {
            return Err(Error::Config(format!("sweep must be param:start:stop:step, got `{s}`")));
        };
        let num = |v: &str| v.parse::<f64>().map_err(|_| Error::Config(format!("bad number `{v}` in sweep `{s}`")));
        let spec = SweepSpec { param: param.parse()?, start: num(start)?, stop: num(stop)?, step: num(step)? };
        if !(spec.step > 0.0) || !(spec.stop >= spec.start) || !spec.start.is_finite() || !spec.stop.is_finite() {
            return Err(Error::Config(format!("sweep range must be non-empty with a positive step, got `{s}`")));
        }
        Ok(spec)
    }
}

fn parse_numbers(text: &str, n: usize, what: &str) -> Result<Vec<f64>> {
    let values: Vec<f64> = text
        .split(':')
        .map(|v| v.parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Config(format!("bad {what} `{text}`")))?;
    if values.len() != n {
        return Err(Error::Config(format!("{what} needs {n} colon-separated numbers, got `{text}`")));
    }
    Ok(values)
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Option<Scenario>,
    pub d0: f64,
    pub d: f64,
    pub ps: f64,
    pub pa: f64,
    pub gamma: Option<f64>,
    pub split: Option<(f64, f64, f64)>,
    pub stickiness: Option<StickinessKind>,
    pub leader: Option<Leader>,
    pub sweep: Option<SweepSpec>,
    pub out: Option<PathBuf>,
    pub verify: bool,
    /// Nash tolerance in units of `Umax`.
    pub epsilon: f64,
    pub grid: usize,
    pub region: Option<Region>,
    pub resolution: (usize, usize),
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::from_partial(PartialConfig::default()).expect("defaults are valid")
    }
}

impl RunConfig {
    pub fn from_partial(p: PartialConfig) -> Result<Self> {
        let split = match (p.dl, p.dh, p.d2) {
            (None, None, None) => None,
            (Some(dl), Some(dh), Some(d2)) => Some((dl, dh, d2)),
            _ => return Err(Error::Config("dl, dh and d2 must be given together".into())),
        };
        let region = match &p.region {
            None => None,
            Some(text) => {
                let v = parse_numbers(text, 4, "region")?;
                Some(Region { x: (v[0], v[1]), y: (v[2], v[3]) })
            }
        };
        let resolution = match &p.resolution {
            None => (21, 21),
            Some(text) => {
                let v = parse_numbers(text, 2, "resolution")?;
                if v.iter().any(|x| x.fract() != 0.0 || *x < 2.0) {
                    return Err(Error::Config(format!("resolution must be two integers >= 2, got `{text}`")));
                }
                (v[0] as usize, v[1] as usize)
            }
        };
        let epsilon = p.epsilon.unwrap_or(1e-6);
        if !(epsilon > 0.0) {
            return Err(Error::Config(format!("epsilon must be positive, got {epsilon}")));
        }
        let grid = p.grid.unwrap_or(DEFAULT_GRID);
        if grid < 2 {
            return Err(Error::Config(format!("grid must be at least 2, got {grid}")));
        }
        Ok(RunConfig {
            scenario: p.scenario,
            d0: p.d0.unwrap_or(1.0),
            d: p.d.unwrap_or(1.0),
            ps: p.ps.unwrap_or(0.0),
            pa: p.pa.unwrap_or(0.0),
            gamma: p.gamma,
            split,
            stickiness: p.stickiness,
            leader: p.leader,
            sweep: p.sweep.as_deref().map(str::parse).transpose()?,
            out: p.out,
            verify: p.verify.unwrap_or(false),
            epsilon,
            grid,
            region,
            resolution,
        })
    }

    pub fn scenario(&self) -> Result<Scenario> {
        self.scenario.ok_or_else(|| Error::Config("no scenario given".into()))
    }

    pub fn params(&self) -> Result<MarketParams> {
        MarketParams::new(self.d0, self.d)
    }

    /// The scenario spec this configuration describes, validated.
    pub fn spec(&self) -> Result<ScenarioSpec> {
        let scenario = self.scenario()?;
        let mut spec = ScenarioSpec::new(scenario, self.params()?).with_transfers(Transfers::new(self.ps, self.pa)?);
        match (self.gamma, self.split) {
            (Some(g), Some((dl, dh, d2))) => spec = spec.with_class(ClassParams::with_split(g, dl, dh, d2)?),
            (Some(g), None) => spec = spec.with_class(ClassParams::new(g)?),
            (None, Some(_)) => return Err(Error::Config("dl, dh, d2 need gamma as well".into())),
            (None, None) => {}
        }
        if let Some(k) = self.stickiness {
            spec = spec.with_kind(k);
        }
        if let Some(l) = self.leader {
            spec = spec.with_leader(l);
        }
        spec.validate()?;
        Ok(spec)
    }

    /// This configuration with the swept parameter set to `x`.
    pub fn with_param(&self, param: SweepParam, x: f64) -> RunConfig {
        let mut c = self.clone();
        let split = c.split.get_or_insert((f64::NAN, f64::NAN, f64::NAN));
        match param {
            SweepParam::D0 => c.d0 = x,
            SweepParam::D => c.d = x,
            SweepParam::Ps => c.ps = x,
            SweepParam::Pa => c.pa = x,
            SweepParam::Gamma => c.gamma = Some(x),
            SweepParam::Dl => split.0 = x,
            SweepParam::Dh => split.1 = x,
            SweepParam::D2 => split.2 = x,
            SweepParam::Eta => c.ps = x * c.d0 / c.d,
        }
        if self.split.is_none() && !matches!(param, SweepParam::Dl | SweepParam::Dh | SweepParam::D2) {
            c.split = None;
        }
        c
    }

    /// One-line description for CSV headers.
    pub fn metadata(&self) -> String {
        let mut m = format!("usage-pricing {}", env!("CARGO_PKG_VERSION"));
        if let Some(s) = self.scenario {
            m += &format!(" scenario={s}");
        }
        m += &format!(" d0={} d={} ps={} pa={}", self.d0, self.d, self.ps, self.pa);
        if let Some(g) = self.gamma {
            m += &format!(" gamma={g}");
        }
        if let Some((dl, dh, d2)) = self.split {
            m += &format!(" dl={dl} dh={dh} d2={d2}");
        }
        if let Some(k) = self.stickiness {
            m += &format!(" stickiness={k}");
        }
        if let Some(l) = self.leader {
            m += &format!(" leader={l}");
        }
        if let Some(s) = self.sweep {
            m += &format!(" sweep={}:{}:{}:{}", s.param.as_str(), s.start, s.stop, s.step);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_round_trip_and_overlay() {
        let file = PartialConfig::from_toml_str(
            "scenario = \"duopoly\"\nstickiness = \"slackness\"\nd0 = 2.0\nsweep = \"eta:0:0.3:0.01\"\n",
        )
        .unwrap();
        let flags = PartialConfig { d0: Some(3.0), ..Default::default() };
        let merged = RunConfig::from_partial(file.overlay(flags)).unwrap();
        assert_eq!(merged.d0, 3.0);
        assert_eq!(merged.stickiness, Some(StickinessKind::Slackness));
        assert_eq!(merged.sweep.unwrap().values().len(), 31);
        assert!(PartialConfig::from_toml_str("bogus = 1").is_err());
    }

    #[test]
    fn sweep_parsing() {
        assert!("gamma:1:0:0.1".parse::<SweepSpec>().is_err());
        assert!("gamma:0:1:0".parse::<SweepSpec>().is_err());
        assert!("wat:0:1:0.1".parse::<SweepSpec>().is_err());
        let s: SweepSpec = "eta:-0.037:-0.001:0.001".parse().unwrap();
        assert_eq!(s.values().len(), 37);
    }

    #[test]
    fn spec_requires_fields() {
        let mut c = RunConfig { scenario: Some(Scenario::Stackelberg), ..Default::default() };
        assert!(c.spec().is_err());
        c.leader = Some(Leader::Cp);
        assert!(c.spec().is_ok());
        c.gamma = Some(1.0);
        assert!(c.spec().is_err());
    }

    #[test]
    fn eta_sets_side_payment() {
        let c = RunConfig { d0: 2.0, d: 4.0, ..Default::default() };
        assert_eq!(c.with_param(SweepParam::Eta, 0.1).ps, 0.05);
        assert_eq!(c.with_param(SweepParam::Eta, 0.1).split, None);
    }
}
