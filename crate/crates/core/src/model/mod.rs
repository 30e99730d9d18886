//! Market primitives: parameters, demand response and revenue functions.
//!
//! Everything here is a pure evaluation. Demand clamps at zero past `pmax`
//! so that utilities are total functions on the price box, which the
//! numeric oracle relies on.

pub(crate) mod demand;
mod stickiness;
pub(crate) mod utility;

use std::fmt;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

pub use demand::{class_split, linear_demand, ClassSplit};
pub use stickiness::stickiness_share;
pub use utility::{utilities_duopoly, utilities_multiclass, utilities_two_player};

/// Demand intercept and sensitivity. `pmax` and `umax` are derived once at
/// construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MarketParams {
    d0: f64,
    d: f64,
    pmax: f64,
    umax: f64,
}

impl MarketParams {
    pub fn new(d0: f64, d: f64) -> Result<Self> {
        if !(d0.is_finite() && d0 > 0.0) {
            return Err(Error::domain(format!("D0 must be positive, got {d0}")));
        }
        if !(d.is_finite() && d > 0.0) {
            return Err(Error::domain(format!("d must be positive, got {d}")));
        }
        let pmax = d0 / d;
        Ok(MarketParams { d0, d, pmax, umax: d0 * pmax })
    }

    /// Demand at zero usage price.
    pub fn d0(&self) -> f64 {
        self.d0
    }

    /// Demand sensitivity to the total usage price.
    pub fn d(&self) -> f64 {
        self.d
    }

    /// Total usage price at which demand reaches zero, `D0 / d`.
    pub fn pmax(&self) -> f64 {
        self.pmax
    }

    /// Revenue scale `D0² / d`.
    pub fn umax(&self) -> f64 {
        self.umax
    }
}

impl Default for MarketParams {
    fn default() -> Self {
        MarketParams { d0: 1.0, d: 1.0, pmax: 1.0, umax: 1.0 }
    }
}

/// Regulated per-volume transfers. `ps > 0` means the CP pays the ISP.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Transfers {
    pub ps: f64,
    pub pa: f64,
}

impl Transfers {
    pub fn new(ps: f64, pa: f64) -> Result<Self> {
        if !ps.is_finite() {
            return Err(Error::domain(format!("ps must be finite, got {ps}")));
        }
        if !(pa.is_finite() && pa >= 0.0) {
            return Err(Error::domain(format!("pa must be non-negative, got {pa}")));
        }
        Ok(Transfers { ps, pa })
    }

    pub fn side_payment(ps: f64) -> Result<Self> {
        Self::new(ps, 0.0)
    }

    /// Checks `|ps| <= pmax` for the given market.
    pub fn check_against(&self, params: &MarketParams) -> Result<()> {
        if self.ps.abs() > params.pmax() {
            return Err(Error::domain(format!("|ps| <= pmax violated: ps = {}, pmax = {}", self.ps, params.pmax())));
        }
        Ok(())
    }
}

/// Per-volume demand coefficients used when the single sensitivity `d` is
/// split across the low class, the high class and the CP price.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitCoefficients {
    pub dl: f64,
    pub dh: f64,
    pub d2: f64,
}

impl SplitCoefficients {
    /// True when `d2 = dl + dh`, the condition for a line of collaborative optima.
    pub fn is_balanced(&self) -> bool {
        (self.d2 - (self.dl + self.dh)).abs() <= 1e-12 * self.d2.abs().max(1.0)
    }
}

/// Class-choice sensitivity and optional split demand coefficients for the
/// two-class ISP.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassParams {
    gamma: f64,
    split: Option<SplitCoefficients>,
}

impl ClassParams {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::domain(format!("gamma must be positive, got {gamma}")));
        }
        Ok(ClassParams { gamma, split: None })
    }

    pub fn with_split(gamma: f64, dl: f64, dh: f64, d2: f64) -> Result<Self> {
        let mut class = Self::new(gamma)?;
        for (name, v) in [("dl", dl), ("dh", dh), ("d2", d2)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::domain(format!("{name} must be non-negative, got {v}")));
            }
        }
        if dh > d2 {
            return Err(Error::domain(format!(
                "dh <= d2 required for phi^-1(dh/d2) to exist, got dh = {dh}, d2 = {d2}"
            )));
        }
        class.split = Some(SplitCoefficients { dl, dh, d2 });
        Ok(class)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn split(&self) -> Option<SplitCoefficients> {
        self.split
    }
}

/// Customer stickiness model for the two-CP market.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StickinessKind {
    /// Share inversely proportional to own price.
    Reciprocal,
    /// Share proportional to own price slackness `pmax - p`.
    Slackness,
}

impl fmt::Display for StickinessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StickinessKind::Reciprocal => "reciprocal",
            StickinessKind::Slackness => "slackness",
        })
    }
}

impl std::str::FromStr for StickinessKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reciprocal" => Ok(StickinessKind::Reciprocal),
            "slackness" => Ok(StickinessKind::Slackness),
            other => Err(Error::Config(format!("unknown stickiness kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PriceName {
    P1,
    P2,
    P3,
    Pl,
    Ph,
}

impl PriceName {
    pub fn as_str(&self) -> &'static str {
        match self {
            PriceName::P1 => "p1",
            PriceName::P2 => "p2",
            PriceName::P3 => "p3",
            PriceName::Pl => "pl",
            PriceName::Ph => "ph",
        }
    }
}

impl fmt::Display for PriceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ordered named prices. The order is the coordinate order used by the
/// scenario's game view.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceProfile {
    entries: Vec<(PriceName, f64)>,
}

impl PriceProfile {
    pub fn new(entries: Vec<(PriceName, f64)>) -> Self {
        PriceProfile { entries }
    }

    pub fn two_player(p1: f64, p2: f64) -> Self {
        Self::new(vec![(PriceName::P1, p1), (PriceName::P2, p2)])
    }

    pub fn multiclass(pl: f64, ph: f64, p2: f64) -> Self {
        Self::new(vec![(PriceName::Pl, pl), (PriceName::Ph, ph), (PriceName::P2, p2)])
    }

    pub fn duopoly(p1: f64, p2: f64, p3: f64) -> Self {
        Self::new(vec![(PriceName::P1, p1), (PriceName::P2, p2), (PriceName::P3, p3)])
    }

    pub fn get(&self, name: PriceName) -> Option<f64> {
        self.entries.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
    }

    /// Like [`get`](Self::get) but panics on a missing name; for internal use
    /// where the scenario fixes the layout.
    pub(crate) fn at(&self, name: PriceName) -> f64 {
        self.get(name).unwrap_or_else(|| panic!("price {name} missing from profile"))
    }

    pub fn entries(&self) -> &[(PriceName, f64)] {
        &self.entries
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|&(_, v)| v).collect()
    }

    pub fn names(&self) -> Vec<PriceName> {
        self.entries.iter().map(|&(n, _)| n).collect()
    }

    /// Checks every price lies in `[0, pmax]` (with a round-off allowance).
    pub fn check_bounds(&self, pmax: f64) -> Result<()> {
        let slack = 1e-12 * pmax;
        for &(name, v) in &self.entries {
            if !(v >= -slack && v <= pmax + slack) {
                return Err(Error::domain(format!("{name} = {v} outside [0, {pmax}]")));
            }
        }
        Ok(())
    }
}

impl Serialize for PriceProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.entries.len()))?;
        for (name, v) in &self.entries {
            map.serialize_entry(name.as_str(), v)?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_scales() {
        let p = MarketParams::new(3.0, 2.0).unwrap();
        assert_eq!(p.pmax(), 1.5);
        assert_eq!(p.umax(), 4.5);
        assert_eq!(MarketParams::default(), MarketParams::new(1.0, 1.0).unwrap());
    }

    #[test]
    fn rejects_bad_params() {
        assert!(MarketParams::new(0.0, 1.0).is_err());
        assert!(MarketParams::new(1.0, -1.0).is_err());
        assert!(Transfers::new(0.1, -0.1).is_err());
        assert!(ClassParams::new(0.0).is_err());
        assert!(ClassParams::with_split(1.0, 0.5, 1.5, 1.0).is_err());
        let t = Transfers::side_payment(1.5).unwrap();
        assert!(t.check_against(&MarketParams::default()).is_err());
    }

    #[test]
    fn profile_bounds() {
        let p = PriceProfile::two_player(0.2, 0.9);
        assert!(p.check_bounds(1.0).is_ok());
        assert!(PriceProfile::two_player(-0.1, 0.2).check_bounds(1.0).is_err());
        assert_eq!(p.get(PriceName::P2), Some(0.9));
        assert_eq!(p.get(PriceName::P3), None);
    }
}
