//! Pure-strategy games on price boxes: best responses, damped
//! best-response dynamics, ε-Nash verification and the symmetric
//! stability probe.
//!
//! Every player owns exactly one price coordinate. Scenarios where a
//! provider sets several prices pin the others or expose them as separate
//! coordinates of a team game.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::optimize::argmax_1d;
use crate::error::{Error, Result};

/// `utility(player, profile)`; must be defined on the whole box.
pub type UtilityFn = Arc<dyn Fn(usize, &[f64]) -> f64 + Send + Sync>;

/// Adapter exposing a scenario as an n-player game over price coordinates.
#[derive(Clone)]
pub struct GameView {
    bounds: Vec<(f64, f64)>,
    utility: UtilityFn,
    coupling: Option<(usize, usize)>,
}

impl fmt::Debug for GameView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GameView")
            .field("bounds", &self.bounds)
            .field("coupling", &self.coupling)
            .finish_non_exhaustive()
    }
}

impl GameView {
    pub fn new(bounds: Vec<(f64, f64)>, utility: UtilityFn) -> Self {
        assert!(bounds.iter().all(|&(lo, hi)| lo <= hi), "empty price interval");
        GameView { bounds, utility, coupling: None }
    }

    /// Ties coordinate `follower` to coordinate `leader`: dynamics keep
    /// them equal and the stability probe moves them together. Used for
    /// the symmetric two-CP market.
    pub fn with_coupling(mut self, leader: usize, follower: usize) -> Self {
        assert!(leader < self.n_players() && follower < self.n_players() && leader != follower);
        self.coupling = Some((leader, follower));
        self
    }

    pub fn n_players(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self, player: usize) -> (f64, f64) {
        self.bounds[player]
    }

    pub fn coupling(&self) -> Option<(usize, usize)> {
        self.coupling
    }

    pub fn utility(&self, player: usize, profile: &[f64]) -> f64 {
        (self.utility)(player, profile)
    }

    /// Best unilateral price for `player` and the utility it earns.
    fn deviation(&self, player: usize, profile: &[f64], grid_points: usize) -> (f64, f64) {
        let (lo, hi) = self.bounds[player];
        let mut trial = profile.to_vec();
        let m = argmax_1d(
            |x| {
                trial[player] = x;
                self.utility(player, &trial)
            },
            lo,
            hi,
            grid_points,
        );
        (m.x, m.value)
    }
}

/// The player's utility-maximizing price against `profile` (its own entry
/// is ignored).
pub fn best_response(game: &GameView, player: usize, profile: &[f64], grid_points: usize) -> f64 {
    game.deviation(player, profile, grid_points).0
}

#[derive(Debug, Clone, Copy)]
pub struct DynamicsOptions {
    /// Weight on the best response; `1` is undamped.
    pub damping: f64,
    /// Convergence threshold on the largest price move in one sweep.
    pub tol: f64,
    pub max_iter: usize,
    pub grid_points: usize,
}

impl Default for DynamicsOptions {
    fn default() -> Self {
        DynamicsOptions { damping: 0.5, tol: 1e-8, max_iter: 1000, grid_points: super::DEFAULT_GRID }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPoint {
    pub profile: Vec<f64>,
    /// Number of sweeps performed, the converging one included.
    pub iterations: usize,
}

/// Damped simultaneous best-response iteration.
///
/// Each sweep replaces `x` by `(1 - α) x + α BR(x)`. Stops once no price
/// moves by more than `tol`; returns [`Error::Divergence`] with the last
/// profile when `max_iter` sweeps did not settle.
pub fn best_response_dynamics(game: &GameView, initial: &[f64], opts: &DynamicsOptions) -> Result<FixedPoint> {
    if !(opts.damping > 0.0 && opts.damping <= 1.0) {
        return Err(Error::domain(format!("damping must lie in (0, 1], got {}", opts.damping)));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {}", opts.tol)));
    }
    if initial.len() != game.n_players() {
        return Err(Error::domain(format!(
            "profile has {} prices, game has {} players",
            initial.len(),
            game.n_players()
        )));
    }
    let mut x: Vec<f64> = initial.iter().zip(&game.bounds).map(|(&p, &(lo, hi))| p.clamp(lo, hi)).collect();
    if let Some((a, b)) = game.coupling {
        x[b] = x[a];
    }

    for iteration in 1..=opts.max_iter {
        let mut next = x.clone();
        for player in 0..game.n_players() {
            if matches!(game.coupling, Some((_, b)) if b == player) {
                continue;
            }
            let br = best_response(game, player, &x, opts.grid_points);
            next[player] = (1.0 - opts.damping) * x[player] + opts.damping * br;
        }
        if let Some((a, b)) = game.coupling {
            next[b] = next[a];
        }
        let change = next.iter().zip(&x).map(|(n, o)| (n - o).abs()).fold(0.0, f64::max);
        x = next;
        if change <= opts.tol {
            return Ok(FixedPoint { profile: x, iterations: iteration });
        }
    }
    Err(Error::Divergence { iterations: opts.max_iter, last: x })
}

/// Result of an ε-Nash check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    /// Largest utility improvement found for each player (never negative).
    pub gains: Vec<f64>,
    /// Where that improvement was found.
    pub deviations: Vec<f64>,
    pub epsilon: f64,
    pub passed: bool,
}

impl Verification {
    pub fn max_gain(&self) -> f64 {
        self.gains.iter().copied().fold(0.0, f64::max)
    }
}

/// Scans every player's unilateral deviations on a uniform grid with
/// golden-section polish; passes when no player gains more than `epsilon`.
pub fn verify_epsilon_nash(game: &GameView, profile: &[f64], grid_points: usize, epsilon: f64) -> Verification {
    assert_eq!(profile.len(), game.n_players(), "profile does not match game");
    let mut gains = Vec::with_capacity(profile.len());
    let mut deviations = Vec::with_capacity(profile.len());
    for player in 0..game.n_players() {
        let current = game.utility(player, profile);
        let (x, best) = game.deviation(player, profile, grid_points.max(2));
        gains.push((best - current).max(0.0));
        deviations.push(x);
    }
    let passed = gains.iter().all(|&g| g <= epsilon);
    Verification { gains, deviations, epsilon, passed }
}

/// Stability tag of a symmetric equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Stability {
    Stable,
    Unstable,
    NotApplicable,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::Stable => "Stable",
            Stability::Unstable => "Unstable",
            Stability::NotApplicable => "NotApplicable",
        })
    }
}

/// Sign test on the coupled players' own marginal utility.
///
/// Both coupled coordinates are moved together to `p̄ - h` and `p̄ + h`
/// (other prices unchanged) and the leader coordinate's marginal utility is
/// taken there. `(+, -)` is stable, `(-, +)` unstable; anything else is an
/// [`Error::AmbiguousStability`].
pub fn stability_probe(game: &GameView, profile: &[f64], h: f64) -> Result<Stability> {
    let (a, b) =
        game.coupling.ok_or_else(|| Error::Unsupported("stability probe needs a coupled pair of players".into()))?;
    if !(h > 0.0) {
        return Err(Error::domain(format!("probe step must be positive, got {h}")));
    }
    let centre = profile[a];
    let (lo, hi) = game.bounds[a];
    if centre - h < lo || centre + h > hi {
        return Err(Error::domain(format!("probe [{}, {}] leaves [{lo}, {hi}]", centre - h, centre + h)));
    }
    let fd = 1e-3 * h;
    let marginal = |q: f64| {
        let mut p = profile.to_vec();
        p[a] = q;
        p[b] = q;
        let mut up = p.clone();
        up[a] = q + fd;
        let mut down = p;
        down[a] = q - fd;
        (game.utility(a, &up) - game.utility(a, &down)) / (2.0 * fd)
    };
    let below = marginal(centre - h);
    let above = marginal(centre + h);
    match (below > 0.0, above > 0.0, below < 0.0, above < 0.0) {
        (true, _, _, true) => Ok(Stability::Stable),
        (_, true, true, _) => Ok(Stability::Unstable),
        _ => Err(Error::AmbiguousStability { below, above }),
    }
}
