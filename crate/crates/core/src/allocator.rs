//! Optimal time allocation over the six phases for a fixed rate region.
//!
//! With the mutual informations fixed, every objective below is a linear
//! program in `(tau_1..tau_6, R13, R31)`: each region row becomes
//! `rate - sum_l c_l tau_l <= 0`, plus `sum_l tau_l <= 1`. Idle time is
//! allowed, so the time shares need not sum to one.

use alloc::vec;
use alloc::vec::Vec;

use crate::channel::{RateKind, RatePair, RateRegionSpec, TimeAllocation, NUM_PHASES};
use crate::error::{Error, Result};
use crate::gaussian::CoherenceParams;
use crate::lp::{solve_lp, Direction, LinearProgram, LpStatus, Sense};

const R13: usize = NUM_PHASES;
const R31: usize = NUM_PHASES + 1;
const T: usize = NUM_PHASES + 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RateObjective {
    /// Maximize `R13 + R31`.
    SumRate,
    /// Maximize `lambda R13 + (1 - lambda) R31`.
    WeightedSumRate(f64),
    /// Maximize `min(R13, R31)`.
    MaxMin,
}

impl RateObjective {
    pub fn weighted(lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::Domain(alloc::format!("lambda must lie in [0, 1], got {lambda}")));
        }
        Ok(Self::WeightedSumRate(lambda))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AllocationResult {
    pub tau: TimeAllocation,
    pub rates: RatePair,
    pub objective: f64,
    /// Coherence parameters the region was evaluated with, when known.
    pub coherence: Option<CoherenceParams>,
}

impl AllocationResult {
    pub fn with_coherence(mut self, c: CoherenceParams) -> Self {
        self.coherence = Some(c);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MinCostOutcome {
    Optimal(AllocationResult),
    /// The target rate pair is outside the region for every allocation.
    Infeasible,
}

fn tau_from(x: &[f64]) -> TimeAllocation {
    let mut tau = [0.0; NUM_PHASES];
    for (t, v) in tau.iter_mut().zip(x) {
        *t = v.max(0.0);
    }
    TimeAllocation(tau)
}

fn check_bounded(region: &RateRegionSpec) -> Result<()> {
    let has = |k: RateKind| region.constraints().iter().any(|c| c.kind == k || c.kind == RateKind::Sum);
    if !has(RateKind::R13) || !has(RateKind::R31) {
        return Err(Error::Model("region leaves a rate direction unbounded".into()));
    }
    Ok(())
}

fn add_simplex_row(lp: &mut LinearProgram) {
    let terms: Vec<(usize, f64)> = (0..NUM_PHASES).map(|l| (l, 1.0)).collect();
    lp.add_sparse_row(&terms, Sense::Le, 1.0);
}

/// Solves one of the rate objectives over `region`.
///
/// For [`RateObjective::MaxMin`] the reported rates are `(t, t)` with `t` the
/// optimal symmetric rate; the region is downward closed so this point is
/// always feasible at the returned `tau`.
pub fn allocate_rate_objective(region: &RateRegionSpec, objective: RateObjective) -> Result<AllocationResult> {
    check_bounded(region)?;
    if let RateObjective::WeightedSumRate(lambda) = objective {
        RateObjective::weighted(lambda)?;
    }
    let n = match objective {
        RateObjective::MaxMin => T + 1,
        _ => R31 + 1,
    };
    let mut cost = vec![0.0; n];
    match objective {
        RateObjective::SumRate => {
            cost[R13] = 1.0;
            cost[R31] = 1.0;
        }
        RateObjective::WeightedSumRate(lambda) => {
            cost[R13] = lambda;
            cost[R31] = 1.0 - lambda;
        }
        RateObjective::MaxMin => cost[T] = 1.0,
    }
    let mut lp = LinearProgram::new(Direction::Maximize, cost);
    for c in region.constraints() {
        let (a, b) = c.kind.weights();
        let mut row = vec![0.0; n];
        for (l, v) in c.coeffs.iter().enumerate() {
            row[l] = -v;
        }
        row[R13] = a;
        row[R31] = b;
        lp.add_row(row, Sense::Le, 0.0);
    }
    add_simplex_row(&mut lp);
    if objective == RateObjective::MaxMin {
        lp.add_sparse_row(&[(T, 1.0), (R13, -1.0)], Sense::Le, 0.0);
        lp.add_sparse_row(&[(T, 1.0), (R31, -1.0)], Sense::Le, 0.0);
    }

    let sol = solve_lp(&lp)?;
    match sol.status {
        LpStatus::Optimal => {}
        LpStatus::Unbounded => return Err(Error::Model("rate objective is unbounded".into())),
        // tau = 0, R = 0 is always feasible
        LpStatus::Infeasible => return Err(Error::Model("rate program reported infeasible".into())),
    }
    let tau = tau_from(&sol.x);
    let rates = match objective {
        RateObjective::MaxMin => {
            let t = sol.x[T].max(0.0);
            RatePair { r13: t, r31: t }
        }
        _ => RatePair { r13: sol.x[R13].max(0.0), r31: sol.x[R31].max(0.0) },
    };
    Ok(AllocationResult { tau, rates, objective: sol.objective, coherence: None })
}

/// Cheapest allocation that supports `target`, where phase `l` costs
/// `costs[l]` per unit of time.
pub fn allocate_min_cost(
    region: &RateRegionSpec,
    target: RatePair,
    costs: [f64; NUM_PHASES],
) -> Result<MinCostOutcome> {
    if costs.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
        return Err(Error::Domain(alloc::format!("phase costs must be finite and nonnegative: {costs:?}")));
    }
    let target = RatePair::new(target.r13, target.r31)?;
    let mut lp = LinearProgram::new(Direction::Minimize, costs.to_vec());
    for c in region.constraints() {
        lp.add_row(c.coeffs.to_vec(), Sense::Ge, c.load(&target));
    }
    add_simplex_row(&mut lp);

    let sol = solve_lp(&lp)?;
    match sol.status {
        LpStatus::Optimal => Ok(MinCostOutcome::Optimal(AllocationResult {
            tau: tau_from(&sol.x),
            rates: target,
            objective: sol.objective,
            coherence: None,
        })),
        LpStatus::Infeasible => Ok(MinCostOutcome::Infeasible),
        LpStatus::Unbounded => Err(Error::Model("cost program is unbounded".into())),
    }
}
