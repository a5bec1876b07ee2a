//! Outer (cut-set) and inner (decode-and-forward) rate regions for the
//! restricted half-duplex two-way relay channel, together with the small
//! linear programs that pick optimal time allocations over the six
//! information-carrying network states.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, parallel
//! sweeps and the command-line front end live in the `twrc` crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod allocator;
pub mod channel;
mod error;
pub mod gaussian;
pub mod lp;
mod math;
pub mod region;
pub mod sweep;
pub mod wireline;

pub use allocator::{
    allocate_min_cost, allocate_rate_objective, AllocationResult, MinCostOutcome, RateObjective,
};
pub use channel::{
    phase_state, rates_feasible, validate_allocation, NetworkState, PhaseId, RateConstraint,
    RateKind, RatePair, RateRegionSpec, RegionLabel, TimeAllocation, EPS_FEAS, NUM_PHASES,
};
pub use error::{Error, Result};
pub use gaussian::{
    awgn_capacity, channel_gain, df_phase_mi, ub_phase_mi, ChannelGains, CoherenceParams,
    PhaseMiTable, PlaneNetwork, Point, PowerConstraints,
};
pub use lp::{solve_lp, Direction, LinearProgram, LpSolution, LpStatus, Sense};
pub use region::{
    inner_region_df, outer_region, restrict_region, twc_region, validate_rate_split, SubRateSplit,
    DEFAULT_SPLIT_MARGIN,
};
pub use sweep::{assemble_grid, evaluate_position, run_sweep, twc_baseline, GridCell, SweepCell, SweepConfig, SweepGrid};
pub use wireline::{builtin_scheme, builtin_schemes, evaluate_scheme, validate_scheme, BitPipeScheme, Link, SchemeMetrics};
