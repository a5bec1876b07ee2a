//! Relay placement sweep: the relay moves over a rectangular grid of plane
//! positions while the dialog nodes stay fixed, and each position is scored by
//! the best DF and cut-set rates over a `(beta, gamma)` sample grid, next to
//! the direct two-way baseline.

use alloc::format;
use alloc::vec::Vec;

use crate::allocator::{allocate_rate_objective, RateObjective};
use crate::channel::TimeAllocation;
use crate::error::{Error, Result};
use crate::gaussian::{df_phase_mi, ub_phase_mi, ChannelGains, CoherenceParams, PlaneNetwork, Point, PowerConstraints};
use crate::math;
use crate::region::{inner_region_df, outer_region, twc_region};

/// Relative slack when checking that a step divides a range.
const DIVIDES_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    /// Grid spacing in plane units.
    pub step: f64,
    /// Spacing of the `beta` and `gamma` samples in `[0, 1]`.
    pub bg_step: f64,
    pub alpha: f64,
    pub powers: PowerConstraints,
    pub objective: RateObjective,
    pub node1: Point,
    pub node3: Point,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            x_min: -0.5,
            x_max: 1.5,
            y_min: -1.0,
            y_max: 1.0,
            step: 0.1,
            bg_step: 0.1,
            alpha: 3.0,
            powers: PowerConstraints { p1: 10.0, p2: 10.0, p3: 10.0 },
            objective: RateObjective::MaxMin,
            node1: Point::new(0.0, 0.0),
            node3: Point::new(1.0, 0.0),
        }
    }
}

/// Points `min, min + step, ..` up to `max`. When `step` divides the range
/// the points are interpolated so both ends are hit exactly.
fn axis(name: &str, min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !(min.is_finite() && max.is_finite()) || min > max {
        return Err(Error::Config(format!("{name} range [{min}, {max}] is empty or not finite")));
    }
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::Config(format!("grid step must be positive, got {step}")));
    }
    let span = max - min;
    let intervals = math::round(span / step);
    if intervals > 1e6 {
        return Err(Error::Config(format!("{name} range needs more than 1e6 grid points")));
    }
    if (intervals * step - span).abs() <= DIVIDES_TOL * span.max(1.0) {
        let n = intervals as usize;
        if n == 0 {
            return Ok(alloc::vec![min]);
        }
        return Ok((0..=n).map(|i| min + span * (i as f64) / (n as f64)).collect());
    }
    let n = (span / step) as usize;
    Ok((0..=n).map(|i| min + step * i as f64).collect())
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        self.x_axis()?;
        self.y_axis()?;
        self.bg_samples()?;
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(Error::Config(format!("alpha must be positive, got {}", self.alpha)));
        }
        self.powers.check().map_err(|e| Error::Config(format!("{e}")))?;
        if let RateObjective::WeightedSumRate(l) = self.objective {
            RateObjective::weighted(l).map_err(|e| Error::Config(format!("{e}")))?;
        }
        if self.node1.distance(&self.node3) <= 0.0 {
            return Err(Error::Config("dialog nodes coincide".into()));
        }
        Ok(())
    }

    pub fn x_axis(&self) -> Result<Vec<f64>> {
        axis("x", self.x_min, self.x_max, self.step)
    }

    pub fn y_axis(&self) -> Result<Vec<f64>> {
        axis("y", self.y_min, self.y_max, self.step)
    }

    /// `k / n` for `k = 0..=n`, where `n = 1 / bg_step` must be an integer.
    pub fn bg_samples(&self) -> Result<Vec<f64>> {
        let s = self.bg_step;
        if !(s.is_finite() && s > 0.0 && s <= 1.0) {
            return Err(Error::Config(format!("beta/gamma step must lie in (0, 1], got {s}")));
        }
        let n = math::round(1.0 / s);
        if (n * s - 1.0).abs() > DIVIDES_TOL {
            return Err(Error::Config(format!("beta/gamma step {s} does not divide [0, 1]")));
        }
        let n = n as usize;
        Ok((0..=n).map(|k| k as f64 / n as f64).collect())
    }

    /// Relay positions in row-major order: `y` outer, `x` inner.
    pub fn positions(&self) -> Result<Vec<Point>> {
        let xs = self.x_axis()?;
        let ys = self.y_axis()?;
        Ok(ys.iter().flat_map(|&y| xs.iter().map(move |&x| Point::new(x, y))).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridCell {
    pub position: Point,
    pub twc_rate: f64,
    pub df_rate: f64,
    pub ub_rate: f64,
    pub df_coherence: CoherenceParams,
    pub ub_coherence: CoherenceParams,
    pub tau_twc: TimeAllocation,
    pub tau_df: TimeAllocation,
    pub tau_ub: TimeAllocation,
    /// NaN when the baseline is zero.
    pub df_over_twc: f64,
    /// NaN when the upper bound is zero.
    pub df_over_ub: f64,
}

fn ratio(a: f64, b: f64) -> f64 {
    if b > 0.0 {
        a / b
    } else {
        f64::NAN
    }
}

/// One grid position together with its outcome; a failed cell does not stop
/// the sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub position: Point,
    pub outcome: Result<GridCell>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub nx: usize,
    pub ny: usize,
    /// Row-major, `y` outer.
    pub cells: Vec<SweepCell>,
}

impl SweepGrid {
    pub fn get(&self, ix: usize, iy: usize) -> Option<&SweepCell> {
        if ix >= self.nx {
            return None;
        }
        self.cells.get(iy * self.nx + ix)
    }

    pub fn ok_cells(&self) -> impl Iterator<Item = &GridCell> {
        self.cells.iter().filter_map(|c| c.outcome.as_ref().ok())
    }

    pub fn errors(&self) -> impl Iterator<Item = (Point, &Error)> {
        self.cells.iter().filter_map(|c| c.outcome.as_ref().err().map(|e| (c.position, e)))
    }

    /// Largest finite DF/TWC ratio, if any cell has one.
    pub fn max_df_over_twc(&self) -> Option<f64> {
        self.ok_cells().map(|c| c.df_over_twc).filter(|r| r.is_finite()).reduce(f64::max)
    }
}

fn twc_solve(g: &ChannelGains, p: &PowerConstraints, objective: RateObjective) -> Result<(f64, TimeAllocation)> {
    let mi = df_phase_mi(g, p, &CoherenceParams::NONE)?;
    let r = allocate_rate_objective(&twc_region(&mi), objective)?;
    Ok((r.objective, r.tau))
}

/// Maxmin rate of direct exchange over phases 1 and 2.
pub fn twc_baseline(g: &ChannelGains, p: &PowerConstraints) -> Result<f64> {
    twc_solve(g, p, RateObjective::MaxMin).map(|(v, _)| v)
}

/// Scores a relay position. Each bound keeps its own best `(beta, gamma)`;
/// ties keep the first sample, scanning `beta` outer and `gamma` inner.
pub fn evaluate_position(relay: Point, cfg: &SweepConfig) -> Result<GridCell> {
    let samples = cfg.bg_samples()?;
    let net = PlaneNetwork::new(cfg.node1, relay, cfg.node3, cfg.alpha)?;
    let g = net.gains()?;
    let p = cfg.powers;
    let (twc_rate, tau_twc) = twc_solve(&g, &p, cfg.objective)?;

    let mut df: Option<(f64, CoherenceParams, TimeAllocation)> = None;
    let mut ub: Option<(f64, CoherenceParams, TimeAllocation)> = None;
    for &beta in &samples {
        for &gamma in &samples {
            let c = CoherenceParams { beta, gamma };
            let r = allocate_rate_objective(&inner_region_df(&df_phase_mi(&g, &p, &c)?), cfg.objective)?;
            if df.as_ref().is_none_or(|d| r.objective > d.0) {
                df = Some((r.objective, c, r.tau));
            }
            let r = allocate_rate_objective(&outer_region(&ub_phase_mi(&g, &p, &c)?), cfg.objective)?;
            if ub.as_ref().is_none_or(|u| r.objective > u.0) {
                ub = Some((r.objective, c, r.tau));
            }
        }
    }
    let ((df_rate, df_coherence, tau_df), (ub_rate, ub_coherence, tau_ub)) = (df.unwrap(), ub.unwrap());
    Ok(GridCell {
        position: relay,
        twc_rate,
        df_rate,
        ub_rate,
        df_coherence,
        ub_coherence,
        tau_twc,
        tau_df,
        tau_ub,
        df_over_twc: ratio(df_rate, twc_rate),
        df_over_ub: ratio(df_rate, ub_rate),
    })
}

/// Assembles a grid from cells evaluated in any order, given as
/// `(row-major index, cell)` pairs.
pub fn assemble_grid(cfg: &SweepConfig, mut cells: Vec<(usize, SweepCell)>) -> Result<SweepGrid> {
    let nx = cfg.x_axis()?.len();
    let ny = cfg.y_axis()?.len();
    cells.sort_by_key(|(i, _)| *i);
    if cells.len() != nx * ny || cells.iter().enumerate().any(|(k, (i, _))| k != *i) {
        return Err(Error::Config("sweep cells do not cover the grid exactly once".into()));
    }
    Ok(SweepGrid { nx, ny, cells: cells.into_iter().map(|(_, c)| c).collect() })
}

/// Evaluates every grid position in order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepGrid> {
    cfg.validate()?;
    let cells = cfg
        .positions()?
        .into_iter()
        .enumerate()
        .map(|(i, position)| (i, SweepCell { position, outcome: evaluate_position(position, cfg) }))
        .collect();
    assemble_grid(cfg, cells)
}
