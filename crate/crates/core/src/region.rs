//! Rate regions assembled from a [`PhaseMiTable`].
//!
//! * [`outer_region`]: the cut-set bound, two cuts per direction.
//! * [`inner_region_df`]: decode-and-forward, where the relay fully decodes
//!   whatever it hears in phases 1 to 3, plus one sum-rate row.
//! * [`twc_region`]: direct exchange in phases 1 and 2 only.
//!
//! All three are closed sets in `tau`: phases with `tau_l = 0` are admitted
//! and simply contribute nothing, which is the closure of the strict
//! `tau_l > 0` achievability statement.
//!
//! [`validate_rate_split`] checks a DF rate pair against the per-decoder
//! constraints of the random-coding argument directly, by searching for a
//! split of each message into six independently coded parts.

use alloc::vec;
use alloc::vec::Vec;

use crate::channel::{
    validate_allocation, PhaseId, RateConstraint, RateKind, RatePair, RateRegionSpec, RegionLabel, TimeAllocation,
    NUM_PHASES,
};
use crate::error::{Error, Result};
use crate::gaussian::PhaseMiTable;
use crate::lp::{solve_lp, Direction, LinearProgram, LpStatus, Sense};

fn row(kind: RateKind, coeffs: [f64; NUM_PHASES]) -> RateConstraint {
    RateConstraint::new(kind, coeffs)
}

fn build(label: RegionLabel, rows: Vec<RateConstraint>) -> RateRegionSpec {
    RateRegionSpec::new(label, rows).expect("PhaseMiTable entries must be finite and nonnegative")
}

/// Cut-set outer bound. Row order: the two R13 cuts, then the two R31 cuts.
///
/// Panics if `mi` has a negative or non-finite entry; see [`PhaseMiTable::check`].
pub fn outer_region(mi: &PhaseMiTable) -> RateRegionSpec {
    build(
        RegionLabel::Outer,
        vec![
            row(RateKind::R13, [mi.i1_23, 0.0, mi.i1_2g3, 0.0, 0.0, mi.i1_3g2]),
            row(RateKind::R13, [mi.i1_3, 0.0, 0.0, mi.i2_3, 0.0, mi.i12_3]),
            row(RateKind::R31, [0.0, mi.i3_12, mi.i3_2g1, 0.0, mi.i3_1g2, 0.0]),
            row(RateKind::R31, [0.0, mi.i3_1, 0.0, mi.i2_1, mi.i23_1, 0.0]),
        ],
    )
}

/// Decode-and-forward inner bound: the outer rows with the relay's own
/// observation in place of the joint broadcast observation, plus the sum-rate
/// row imposed by the relay decoding both directions.
pub fn inner_region_df(mi: &PhaseMiTable) -> RateRegionSpec {
    build(
        RegionLabel::InnerDf,
        vec![
            row(RateKind::R13, [mi.i1_2, 0.0, mi.i1_2g3, 0.0, 0.0, mi.i1_3g2]),
            row(RateKind::R13, [mi.i1_3, 0.0, 0.0, mi.i2_3, 0.0, mi.i12_3]),
            row(RateKind::R31, [0.0, mi.i3_2, mi.i3_2g1, 0.0, mi.i3_1g2, 0.0]),
            row(RateKind::R31, [0.0, mi.i3_1, 0.0, mi.i2_1, mi.i23_1, 0.0]),
            row(RateKind::Sum, [mi.i1_2, mi.i3_2, mi.i13_2, 0.0, mi.i3_1g2, mi.i1_3g2]),
        ],
    )
}

/// Two-way channel without relay: `R13 <= tau1 i1_3`, `R31 <= tau2 i3_1`.
pub fn twc_region(mi: &PhaseMiTable) -> RateRegionSpec {
    build(
        RegionLabel::Twc,
        vec![
            row(RateKind::R13, [mi.i1_3, 0.0, 0.0, 0.0, 0.0, 0.0]),
            row(RateKind::R31, [0.0, mi.i3_1, 0.0, 0.0, 0.0, 0.0]),
        ],
    )
}

/// Zeroes the coefficients of every phase not in `active`. Phases 7 and 8 are
/// ignored.
pub fn restrict_region(region: &RateRegionSpec, active: impl IntoIterator<Item = PhaseId>) -> RateRegionSpec {
    let mut keep = [false; NUM_PHASES];
    for p in active {
        if let Some(slot) = p.slot() {
            keep[slot] = true;
        }
    }
    region.with_coeffs(|l, v| if keep[l] { v } else { 0.0 })
}

/// Default slack used to turn the strict per-decoder inequalities into
/// non-strict ones.
pub const DEFAULT_SPLIT_MARGIN: f64 = 1e-6;

/// Rates of the twelve message parts: `parts[0..6]` make up `W13`,
/// `parts[6..12]` make up `W31`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubRateSplit {
    pub parts: [f64; 12],
}

impl SubRateSplit {
    /// Rate of part `m` in `1..=12`.
    pub fn part(&self, m: usize) -> f64 {
        self.parts[m - 1]
    }

    pub fn r13(&self) -> f64 {
        self.parts[..6].iter().sum()
    }

    pub fn r31(&self) -> f64 {
        self.parts[6..].iter().sum()
    }
}

/// The thirteen per-decoder constraints as `(parts, capacity)` with 1-based
/// part indices. Order: five at the relay, four at node 1, four at node 3.
pub fn split_constraints(tau: &TimeAllocation, mi: &PhaseMiTable) -> [(&'static [usize], f64); 13] {
    let t = tau.as_array();
    [
        // relay
        (&[1, 2, 3], t[0] * mi.i1_2),
        (&[7, 8, 9], t[1] * mi.i3_2),
        (&[4, 5], t[2] * mi.i1_2g3),
        (&[10, 11], t[2] * mi.i3_2g1),
        (&[4, 5, 10, 11], t[2] * mi.i13_2),
        // node 1
        (&[7, 10], t[3] * mi.i2_1),
        (&[8, 11], t[4] * mi.i2_1p5),
        (&[12], t[4] * mi.i3_1g2),
        (&[9], t[1] * mi.i3_1),
        // node 3
        (&[1, 4], t[3] * mi.i2_3),
        (&[2, 5], t[5] * mi.i2_3p6),
        (&[6], t[5] * mi.i1_3g2),
        (&[3], t[0] * mi.i1_3),
    ]
}

/// Searches for a split of `r` into twelve part rates meeting every
/// per-decoder constraint with `margin` to spare.
///
/// A strict constraint `sum < cap` becomes `sum <= max(cap - margin, 0)`: a
/// constraint whose capacity is below the margin forces its parts to zero
/// (those parts are simply not sent) instead of making the whole split
/// infeasible. Returns `Ok(None)` when no split exists.
pub fn validate_rate_split(
    r: &RatePair,
    tau: &TimeAllocation,
    mi: &PhaseMiTable,
    margin: f64,
) -> Result<Option<SubRateSplit>> {
    if !(margin > 0.0 && margin.is_finite()) {
        return Err(Error::Domain(alloc::format!("margin must be positive, got {margin}")));
    }
    validate_allocation(tau)?;

    let mut lp = LinearProgram::new(Direction::Minimize, vec![0.0; 12]);
    for (parts, cap) in split_constraints(tau, mi) {
        let terms: Vec<(usize, f64)> = parts.iter().map(|&m| (m - 1, 1.0)).collect();
        lp.add_sparse_row(&terms, Sense::Le, (cap - margin).max(0.0));
    }
    let forward: Vec<(usize, f64)> = (0..6).map(|i| (i, 1.0)).collect();
    let backward: Vec<(usize, f64)> = (6..12).map(|i| (i, 1.0)).collect();
    lp.add_sparse_row(&forward, Sense::Eq, r.r13);
    lp.add_sparse_row(&backward, Sense::Eq, r.r31);

    let sol = solve_lp(&lp)?;
    Ok(match sol.status {
        LpStatus::Optimal => {
            let mut parts = [0.0; 12];
            parts.copy_from_slice(&sol.x);
            Some(SubRateSplit { parts })
        }
        LpStatus::Infeasible | LpStatus::Unbounded => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::rates_feasible;
    use crate::gaussian::{df_phase_mi, CoherenceParams, PlaneNetwork, Point, PowerConstraints};

    fn unit_table() -> PhaseMiTable {
        PhaseMiTable {
            i1_2: 1.0,
            i1_3: 1.0,
            i1_23: 1.0,
            i3_2: 1.0,
            i3_1: 1.0,
            i3_12: 1.0,
            i1_2g3: 1.0,
            i3_2g1: 1.0,
            i13_2: 1.0,
            i2_3: 1.0,
            i2_1: 1.0,
            i3_1g2: 1.0,
            i23_1: 1.0,
            i2_1p5: 1.0,
            i1_3g2: 1.0,
            i12_3: 1.0,
            i2_3p6: 1.0,
        }
    }

    fn midpoint_table() -> PhaseMiTable {
        let g = PlaneNetwork::with_relay(Point::new(0.5, 0.0), 3.0).unwrap().gains().unwrap();
        df_phase_mi(&g, &PowerConstraints::uniform(10.0).unwrap(), &CoherenceParams::NONE).unwrap()
    }

    fn all_phases() -> impl Iterator<Item = PhaseId> {
        PhaseId::relevant()
    }

    #[test]
    fn region_sizes() {
        let t = midpoint_table();
        assert_eq!(outer_region(&t).constraints().len(), 4);
        assert_eq!(inner_region_df(&t).constraints().len(), 5);
        assert_eq!(twc_region(&t).constraints().len(), 2);
    }

    #[test]
    fn zero_table_collapses_to_origin() {
        let z = PhaseMiTable::default();
        let tau = TimeAllocation::uniform();
        for region in [outer_region(&z), inner_region_df(&z), twc_region(&z)] {
            assert_eq!(region.vertices(&tau), vec![RatePair::ZERO]);
            assert!(!rates_feasible(&region, &tau, &RatePair { r13: 1e-6, r31: 0.0 }));
        }
    }

    #[test]
    fn unit_table_rows() {
        let t = unit_table();
        let outer = outer_region(&t);
        assert_eq!(outer.constraints()[1].coeffs, [1.0, 0.0, 0.0, 1.0, 0.0, 1.0]);
        let mut t2 = t;
        t2.i23_1 = 7.0;
        assert_eq!(outer_region(&t2).constraints()[3].coeffs[4], 7.0);
    }

    #[test]
    fn inner_sum_row_uses_joint_relay_mi() {
        let mut t = midpoint_table();
        t.i13_2 = 42.0;
        let inner = inner_region_df(&t);
        let sum = inner.constraints().iter().find(|c| c.kind == RateKind::Sum).unwrap();
        assert_eq!(sum.coeffs[2], 42.0);
    }

    #[test]
    fn twc_only_uses_direct_links() {
        let t = midpoint_table();
        let twc = twc_region(&t);
        assert_eq!(twc.constraints()[0].coeffs, [t.i1_3, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(twc.constraints()[1].coeffs, [0.0, t.i3_1, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn restrict_identity_and_empty() {
        let t = midpoint_table();
        let outer = outer_region(&t);
        assert_eq!(restrict_region(&outer, all_phases()), outer);
        let none = restrict_region(&outer, core::iter::empty());
        assert_eq!(none.vertices(&TimeAllocation::uniform()), vec![RatePair::ZERO]);
        assert_eq!(none.label(), outer.label());
    }

    #[test]
    fn restrict_to_direct_phases() {
        let t = midpoint_table();
        let outer = outer_region(&t);
        let active = [PhaseId::new(1).unwrap(), PhaseId::new(2).unwrap()];
        let r = restrict_region(&outer, active);
        assert_eq!(r.constraints()[1].coeffs, [t.i1_3, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn zero_rates_always_split() {
        let t = midpoint_table();
        for tau in [TimeAllocation::IDLE, TimeAllocation::uniform()] {
            let s = validate_rate_split(&RatePair::ZERO, &tau, &t, DEFAULT_SPLIT_MARGIN).unwrap().unwrap();
            assert!(s.parts.iter().all(|v| *v == 0.0));
        }
    }

    #[test]
    fn split_bad_inputs() {
        let t = midpoint_table();
        let tau = TimeAllocation::uniform();
        assert!(validate_rate_split(&RatePair::ZERO, &tau, &t, 0.0).is_err());
        let bad = TimeAllocation([0.9, 0.9, 0.0, 0.0, 0.0, 0.0]);
        assert!(validate_rate_split(&RatePair::ZERO, &bad, &t, 1e-6).is_err());
    }

    #[test]
    fn split_at_midpoint_boundary() {
        let t = midpoint_table();
        let inner = inner_region_df(&t);
        let tau = TimeAllocation::uniform();
        for dir in [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (0.3, 1.0)] {
            let dir = RatePair { r13: dir.0, r31: dir.1 };
            let s = inner.max_scale_along(&tau, dir);
            let inside = dir.scaled(0.99 * s);
            let split = validate_rate_split(&inside, &tau, &t, DEFAULT_SPLIT_MARGIN).unwrap().unwrap();
            assert!((split.r13() - inside.r13).abs() < 1e-7);
            assert!((split.r31() - inside.r31).abs() < 1e-7);
            for (parts, cap) in split_constraints(&tau, &t) {
                let load: f64 = parts.iter().map(|&m| split.part(m)).sum();
                assert!(load <= cap + 1e-9);
            }
            assert!(validate_rate_split(&dir.scaled(1.01 * s), &tau, &t, DEFAULT_SPLIT_MARGIN).unwrap().is_none());
        }
    }

    #[test]
    fn sum_row_violation_has_no_split() {
        let mut t = unit_table();
        t.i13_2 = 0.2;
        let inner = inner_region_df(&t);
        let tau = TimeAllocation::uniform();
        let (a, b, s) = inner.caps(&tau);
        assert!((a - 0.5).abs() < 1e-12 && (b - 0.5).abs() < 1e-12 && (s - 0.7).abs() < 1e-12);
        let r = RatePair { r13: 0.4, r31: 0.4 };
        assert!(!rates_feasible(&inner, &tau, &r));
        assert!(validate_rate_split(&r, &tau, &t, DEFAULT_SPLIT_MARGIN).unwrap().is_none());
        let ok = RatePair { r13: 0.34, r31: 0.34 };
        assert!(validate_rate_split(&ok, &tau, &t, DEFAULT_SPLIT_MARGIN).unwrap().is_some());
    }
}
