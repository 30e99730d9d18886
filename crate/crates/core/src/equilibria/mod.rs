//! Equilibrium solvers for every pricing scenario.
//!
//! Closed forms are used wherever they are consistent with the model. The
//! two-class scenarios have no usable closed form and are solved by the
//! numeric oracle; their printed reference values are kept in
//! [`paper_reference`] for the discrepancy report.

mod basic;
mod duopoly;
mod multiclass;
mod reference;
mod stackelberg;
mod views;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ClassParams, ClassSplit, MarketParams, PriceProfile, StickinessKind, Transfers};

pub use crate::numerics::Stability;
pub use basic::{
    solve_advertising_collaboration, solve_advertising_competition, solve_basic_collaboration, solve_basic_competition,
    solve_side_payment,
};
pub use duopoly::{duopoly_threshold, psi, solve_duopoly, solve_duopoly_side_payments};
pub use multiclass::{
    coalition_revenue, solve_multiclass_collab_boundary, solve_multiclass_competition, solve_multiclass_line, Branch,
    CollabBranches, LineFamily, LineSolution, OracleCheckedOutcome,
};
pub use reference::{compare_outcomes, paper_reference, Comparison, CONSISTENCY_THRESHOLD};
pub use stackelberg::solve_stackelberg;
pub use views::{evaluate_utilities, oracle_outcome, scenario_game, verify_outcome, ScenarioGame};

/// The pricing game being played.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    BasicCompetition,
    BasicCollaboration,
    SidePayment,
    AdCompetition,
    AdCollaboration,
    MulticlassCollab,
    MulticlassLine,
    MulticlassCompetition,
    Duopoly,
    DuopolySidePayment,
    Stackelberg,
}

impl Scenario {
    pub const ALL: [Scenario; 11] = [
        Scenario::BasicCompetition,
        Scenario::BasicCollaboration,
        Scenario::SidePayment,
        Scenario::AdCompetition,
        Scenario::AdCollaboration,
        Scenario::MulticlassCollab,
        Scenario::MulticlassLine,
        Scenario::MulticlassCompetition,
        Scenario::Duopoly,
        Scenario::DuopolySidePayment,
        Scenario::Stackelberg,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Scenario::BasicCompetition => "basic-competition",
            Scenario::BasicCollaboration => "basic-collaboration",
            Scenario::SidePayment => "side-payment",
            Scenario::AdCompetition => "ad-competition",
            Scenario::AdCollaboration => "ad-collaboration",
            Scenario::MulticlassCollab => "multiclass-collab",
            Scenario::MulticlassLine => "multiclass-line",
            Scenario::MulticlassCompetition => "multiclass-competition",
            Scenario::Duopoly => "duopoly",
            Scenario::DuopolySidePayment => "duopoly-side-payment",
            Scenario::Stackelberg => "stackelberg",
        }
    }

    pub fn is_multiclass(&self) -> bool {
        matches!(self, Scenario::MulticlassCollab | Scenario::MulticlassLine | Scenario::MulticlassCompetition)
    }

    pub fn is_duopoly(&self) -> bool {
        matches!(self, Scenario::Duopoly | Scenario::DuopolySidePayment)
    }

    /// Which of `(ps, pa)` the scenario reads.
    fn uses_transfers(&self) -> (bool, bool) {
        match self {
            Scenario::SidePayment | Scenario::DuopolySidePayment => (true, false),
            Scenario::AdCompetition | Scenario::Stackelberg => (true, true),
            Scenario::AdCollaboration => (false, true),
            _ => (false, false),
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown scenario `{s}`")))
    }
}

/// Who moves first in the leader-follower game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Leader {
    Isp,
    Cp,
}

impl FromStr for Leader {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "isp" => Ok(Leader::Isp),
            "cp" => Ok(Leader::Cp),
            other => Err(Error::Config(format!("unknown leader `{other}`"))),
        }
    }
}

impl fmt::Display for Leader {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Leader::Isp => "isp",
            Leader::Cp => "cp",
        })
    }
}

/// A scenario plus the parameters it needs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioSpec {
    pub scenario: Scenario,
    pub params: MarketParams,
    pub transfers: Transfers,
    pub class: Option<ClassParams>,
    pub kind: Option<StickinessKind>,
    pub leader: Option<Leader>,
}

impl ScenarioSpec {
    pub fn new(scenario: Scenario, params: MarketParams) -> Self {
        ScenarioSpec { scenario, params, transfers: Transfers::default(), class: None, kind: None, leader: None }
    }

    pub fn with_transfers(mut self, transfers: Transfers) -> Self {
        self.transfers = transfers;
        self
    }

    pub fn with_class(mut self, class: ClassParams) -> Self {
        self.class = Some(class);
        self
    }

    pub fn with_kind(mut self, kind: StickinessKind) -> Self {
        self.kind = Some(kind);
        self
    }

    pub fn with_leader(mut self, leader: Leader) -> Self {
        self.leader = Some(leader);
        self
    }

    /// Checks that optional fields are present exactly when the scenario
    /// uses them and that unused transfers are zero.
    pub fn validate(&self) -> Result<()> {
        let sc = self.scenario;
        let need_class = sc.is_multiclass();
        let need_kind = sc == Scenario::Duopoly;
        let need_leader = sc == Scenario::Stackelberg;
        let presence = [
            ("class parameters (gamma)", self.class.is_some(), need_class),
            ("stickiness kind", self.kind.is_some(), need_kind),
            ("leader", self.leader.is_some(), need_leader),
        ];
        for (what, present, needed) in presence {
            if present && !needed {
                return Err(Error::domain(format!("{sc} does not take {what}")));
            }
            if needed && !present {
                return Err(Error::domain(format!("{sc} requires {what}")));
            }
        }
        if let Some(class) = &self.class {
            let wants_split = sc == Scenario::MulticlassLine;
            if class.split().is_some() != wants_split {
                return Err(Error::domain(if wants_split {
                    format!("{sc} requires split coefficients dl, dh, d2")
                } else {
                    format!("{sc} does not take split coefficients")
                }));
            }
        }
        let (ps_used, pa_used) = sc.uses_transfers();
        if !ps_used && self.transfers.ps != 0.0 {
            return Err(Error::domain(format!("{sc} does not take a side payment ps")));
        }
        if !pa_used && self.transfers.pa != 0.0 {
            return Err(Error::domain(format!("{sc} does not take an advertising rate pa")));
        }
        self.transfers.check_against(&self.params)
    }

    pub(crate) fn class_params(&self) -> Result<&ClassParams> {
        self.class.as_ref().ok_or_else(|| Error::domain(format!("{} requires class parameters", self.scenario)))
    }
}

/// Which constraint binds at an equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    Interior,
    BoundaryP1Zero,
    BoundaryP2Zero,
    BoundaryPlZero,
    Line,
    NoLine,
    BelowThreshold,
    Invalid,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Where an outcome's numbers come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Source {
    ClosedForm,
    Oracle,
    PaperPrinted,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Prices, demand and per-player revenue at an equilibrium.
///
/// Collaborative scenarios report each provider's equal share of the pooled
/// revenue, so `utilities.iter().sum()` is the coalition's total.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumOutcome {
    pub prices: PriceProfile,
    pub demand: f64,
    pub class_split: Option<ClassSplit>,
    pub utilities: Vec<f64>,
    pub regime: Regime,
    pub stability: Stability,
    pub source: Source,
}

impl EquilibriumOutcome {
    pub fn total_utility(&self) -> f64 {
        self.utilities.iter().sum()
    }

    /// Largest gap between the stored utilities and a fresh evaluation of
    /// the model at the stored prices, relative to `Umax`.
    pub fn consistency_gap(&self, spec: &ScenarioSpec) -> f64 {
        let fresh = evaluate_utilities(spec, &self.prices);
        self.utilities.iter().zip(&fresh).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) / spec.params.umax()
    }
}

/// Solves any scenario, returning every equilibrium it has.
///
/// The two-class collaboration returns both boundary branches, the
/// equilibrium-line scenario a representative point (the line midpoint or
/// the boundary attractor), and the side-paid duopoly one or two roots.
pub fn solve(spec: &ScenarioSpec) -> Result<Vec<EquilibriumOutcome>> {
    spec.validate()?;
    let params = &spec.params;
    let t = spec.transfers;
    Ok(match spec.scenario {
        Scenario::BasicCompetition => vec![solve_basic_competition(params)],
        Scenario::BasicCollaboration => vec![solve_basic_collaboration(params)],
        Scenario::SidePayment => vec![solve_side_payment(params, t.ps)?],
        Scenario::AdCompetition => vec![solve_advertising_competition(params, t.ps, t.pa)?],
        Scenario::AdCollaboration => vec![solve_advertising_collaboration(params, t.pa)?],
        Scenario::MulticlassCollab => {
            let b = solve_multiclass_collab_boundary(params, spec.class_params()?)?;
            vec![b.p2_zero, b.pl_zero]
        }
        Scenario::MulticlassLine => vec![solve_multiclass_line(params, spec.class_params()?)?.representative()],
        Scenario::MulticlassCompetition => vec![solve_multiclass_competition(params, spec.class_params()?)?.outcome],
        Scenario::Duopoly => {
            let kind = spec.kind.ok_or_else(|| Error::domain("duopoly requires a stickiness kind"))?;
            vec![solve_duopoly(params, kind)]
        }
        Scenario::DuopolySidePayment => solve_duopoly_side_payments(params, t.ps)?,
        Scenario::Stackelberg => {
            let leader = spec.leader.ok_or_else(|| Error::domain("stackelberg requires a leader"))?;
            vec![solve_stackelberg(params, &t, leader)?]
        }
    })
}
