//! Network states, phases, time allocations and the linear rate-constraint
//! algebra shared by the bound and allocation code.
//!
//! A network state `[s1 s2 s3]` marks which nodes transmit (`1`) and which
//! listen (`0`) during a channel use. Eight states exist; the all-transmit and
//! all-receive states carry no information, so every rate region in this crate
//! is written over the six remaining phases only. Deactivated inputs and
//! outputs are never represented explicitly; a phase simply contributes the
//! mutual-information terms that survive its activity pattern.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Number of information-carrying phases.
pub const NUM_PHASES: usize = 6;

/// Absolute tolerance for every inequality check on rates and time shares.
pub const EPS_FEAS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NetworkState {
    pub s1: bool,
    pub s2: bool,
    pub s3: bool,
}

impl NetworkState {
    pub const fn new(s1: bool, s2: bool, s3: bool) -> Self {
        Self { s1, s2, s3 }
    }

    /// Builds a state from `0`/`1` flags; any other value is rejected.
    pub fn from_flags(s1: u8, s2: u8, s3: u8) -> Result<Self> {
        let flag = |v: u8| match v {
            0 => Ok(false),
            1 => Ok(true),
            other => Err(Error::Domain(alloc::format!("activity flag must be 0 or 1, got {other}"))),
        };
        Ok(Self::new(flag(s1)?, flag(s2)?, flag(s3)?))
    }

    pub fn flags(&self) -> [u8; 3] {
        [self.s1 as u8, self.s2 as u8, self.s3 as u8]
    }

    /// Whether node `node` (1, 2 or 3) transmits in this state.
    pub fn transmits(&self, node: u8) -> Result<bool> {
        match node {
            1 => Ok(self.s1),
            2 => Ok(self.s2),
            3 => Ok(self.s3),
            other => Err(Error::InvalidNode(other)),
        }
    }

    pub fn transmitter_count(&self) -> usize {
        self.s1 as usize + self.s2 as usize + self.s3 as usize
    }

    /// True for the six states with one or two transmitters.
    pub fn is_relevant(&self) -> bool {
        matches!(self.transmitter_count(), 1 | 2)
    }
}

impl fmt::Display for NetworkState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.flags();
        write!(f, "[{a},{b},{c}]")
    }
}

/// Phase index `l` in `1..=8`. Phases 7 and 8 exist only for completeness of
/// the state alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhaseId(u8);

const PHASE_STATES: [NetworkState; 8] = [
    NetworkState::new(true, false, false),
    NetworkState::new(false, false, true),
    NetworkState::new(true, false, true),
    NetworkState::new(false, true, false),
    NetworkState::new(false, true, true),
    NetworkState::new(true, true, false),
    NetworkState::new(true, true, true),
    NetworkState::new(false, false, false),
];

impl PhaseId {
    pub fn new(l: u8) -> Result<Self> {
        if (1..=8).contains(&l) {
            Ok(Self(l))
        } else {
            Err(Error::InvalidPhase(l))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Zero-based slot in a six-entry coefficient vector, or `None` for the
    /// silent phases 7 and 8.
    pub fn slot(self) -> Option<usize> {
        (self.0 <= NUM_PHASES as u8).then(|| self.0 as usize - 1)
    }

    pub fn state(self) -> NetworkState {
        PHASE_STATES[self.0 as usize - 1]
    }

    /// The six information-carrying phases, in order.
    pub fn relevant() -> impl Iterator<Item = PhaseId> {
        (1..=NUM_PHASES as u8).map(PhaseId)
    }
}

pub fn phase_state(l: u8) -> Result<NetworkState> {
    PhaseId::new(l).map(PhaseId::state)
}

/// Fractions of channel uses spent in phases 1..=6.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeAllocation(pub [f64; NUM_PHASES]);

impl TimeAllocation {
    pub const IDLE: Self = Self([0.0; NUM_PHASES]);

    /// Builds and validates an allocation.
    pub fn new(tau: [f64; NUM_PHASES]) -> Result<Self> {
        let t = Self(tau);
        validate_allocation(&t)?;
        Ok(t)
    }

    pub fn uniform() -> Self {
        Self([1.0 / NUM_PHASES as f64; NUM_PHASES])
    }

    pub fn as_array(&self) -> &[f64; NUM_PHASES] {
        &self.0
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }
}

/// Checks `tau_l >= 0` for each phase, then `sum tau_l <= 1`, each within
/// [`EPS_FEAS`]. The first violation found is reported.
pub fn validate_allocation(tau: &TimeAllocation) -> Result<()> {
    for (i, &v) in tau.0.iter().enumerate() {
        if !v.is_finite() || v < -EPS_FEAS {
            return Err(Error::NonNegativityViolation { phase: i as u8 + 1, value: v });
        }
    }
    let sum = tau.total();
    if sum > 1.0 + EPS_FEAS {
        return Err(Error::SimplexViolation { sum });
    }
    Ok(())
}

/// Rate pair in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RatePair {
    pub r13: f64,
    pub r31: f64,
}

impl RatePair {
    pub const ZERO: Self = Self { r13: 0.0, r31: 0.0 };

    pub fn new(r13: f64, r31: f64) -> Result<Self> {
        if !(r13.is_finite() && r31.is_finite() && r13 >= 0.0 && r31 >= 0.0) {
            return Err(Error::Domain(alloc::format!(
                "rates must be finite and nonnegative, got ({r13}, {r31})"
            )));
        }
        Ok(Self { r13, r31 })
    }

    pub fn scaled(self, c: f64) -> Self {
        Self { r13: self.r13 * c, r31: self.r31 * c }
    }

    pub fn sum(&self) -> f64 {
        self.r13 + self.r31
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RateKind {
    R13,
    R31,
    /// `R13 + R31`.
    Sum,
}

impl RateKind {
    /// Coefficients of `(R13, R31)` on the left-hand side.
    pub fn weights(self) -> (f64, f64) {
        match self {
            RateKind::R13 => (1.0, 0.0),
            RateKind::R31 => (0.0, 1.0),
            RateKind::Sum => (1.0, 1.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RateKind::R13 => "R13",
            RateKind::R31 => "R31",
            RateKind::Sum => "R13+R31",
        }
    }
}

/// One row `rate(kind) <= sum_l coeffs[l] * tau_l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateConstraint {
    pub kind: RateKind,
    pub coeffs: [f64; NUM_PHASES],
}

impl RateConstraint {
    pub fn new(kind: RateKind, coeffs: [f64; NUM_PHASES]) -> Self {
        Self { kind, coeffs }
    }

    pub fn capacity(&self, tau: &TimeAllocation) -> f64 {
        self.coeffs.iter().zip(tau.0.iter()).map(|(c, t)| c * t).sum()
    }

    pub fn load(&self, r: &RatePair) -> f64 {
        let (a, b) = self.kind.weights();
        a * r.r13 + b * r.r31
    }

    pub fn holds(&self, tau: &TimeAllocation, r: &RatePair) -> bool {
        self.load(r) <= self.capacity(tau) + EPS_FEAS
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    /// Cut-set outer bound.
    Outer,
    /// Decode-and-forward inner bound.
    InnerDf,
    /// Direct two-way exchange without the relay.
    Twc,
}

impl RegionLabel {
    /// Expected `(R13 rows, R31 rows, SUM rows)`.
    fn shape(self) -> (usize, usize, usize) {
        match self {
            RegionLabel::Outer => (2, 2, 0),
            RegionLabel::InnerDf => (2, 2, 1),
            RegionLabel::Twc => (1, 1, 0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RegionLabel::Outer => "outer",
            RegionLabel::InnerDf => "inner-df",
            RegionLabel::Twc => "twc",
        }
    }
}

/// A rate region as an ordered list of linear constraints in `(R13, R31, tau)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RateRegionSpec {
    label: RegionLabel,
    constraints: Vec<RateConstraint>,
}

impl RateRegionSpec {
    /// Checks row counts against the label and that every coefficient is
    /// finite and nonnegative.
    pub fn new(label: RegionLabel, constraints: Vec<RateConstraint>) -> Result<Self> {
        let count = |k: RateKind| constraints.iter().filter(|c| c.kind == k).count();
        let got = (count(RateKind::R13), count(RateKind::R31), count(RateKind::Sum));
        if got != label.shape() {
            return Err(Error::Model(alloc::format!(
                "{} region needs (R13, R31, SUM) rows {:?}, got {:?}",
                label.name(),
                label.shape(),
                got
            )));
        }
        for c in &constraints {
            if c.coeffs.iter().any(|v| !v.is_finite() || *v < 0.0) {
                return Err(Error::Model(alloc::format!(
                    "{} row has a negative or non-finite coefficient: {:?}",
                    c.kind.name(),
                    c.coeffs
                )));
            }
        }
        Ok(Self { label, constraints })
    }

    pub fn label(&self) -> RegionLabel {
        self.label
    }

    pub fn constraints(&self) -> &[RateConstraint] {
        &self.constraints
    }

    /// Same region with every coefficient multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        let constraints = self
            .constraints
            .iter()
            .map(|r| RateConstraint::new(r.kind, r.coeffs.map(|v| v * c)))
            .collect();
        Self { label: self.label, constraints }
    }

    pub(crate) fn with_coeffs(&self, f: impl Fn(usize, f64) -> f64) -> Self {
        let constraints = self
            .constraints
            .iter()
            .map(|r| {
                let mut coeffs = r.coeffs;
                for (l, v) in coeffs.iter_mut().enumerate() {
                    *v = f(l, *v);
                }
                RateConstraint::new(r.kind, coeffs)
            })
            .collect();
        Self { label: self.label, constraints }
    }

    /// Tightest `(R13, R31, SUM)` capacities at `tau`; a missing row kind is
    /// reported as infinity.
    pub fn caps(&self, tau: &TimeAllocation) -> (f64, f64, f64) {
        let mut caps = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
        for c in &self.constraints {
            let v = c.capacity(tau);
            let slot = match c.kind {
                RateKind::R13 => &mut caps.0,
                RateKind::R31 => &mut caps.1,
                RateKind::Sum => &mut caps.2,
            };
            *slot = slot.min(v);
        }
        caps
    }

    pub fn contains(&self, tau: &TimeAllocation, r: &RatePair) -> bool {
        self.constraints.iter().all(|c| c.holds(tau, r))
    }

    /// Largest `s >= 0` with `s * dir` inside the region at `tau`. `dir` must
    /// be nonnegative and nonzero.
    pub fn max_scale_along(&self, tau: &TimeAllocation, dir: RatePair) -> f64 {
        self.constraints
            .iter()
            .filter_map(|c| {
                let w = c.load(&dir);
                (w > 0.0).then(|| c.capacity(tau).max(0.0) / w)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Corner points of the feasible rate polygon at `tau`, counter-clockwise
    /// from the origin.
    pub fn vertices(&self, tau: &TimeAllocation) -> Vec<RatePair> {
        let (a, b, s) = self.caps(tau);
        let a = a.min(s).max(0.0);
        let b = b.min(s).max(0.0);
        let mut out = Vec::with_capacity(5);
        let mut push = |r13: f64, r31: f64| {
            let p = RatePair { r13, r31 };
            if out.last().is_none_or(|q: &RatePair| (q.r13 - p.r13).abs() > EPS_FEAS || (q.r31 - p.r31).abs() > EPS_FEAS) {
                out.push(p);
            }
        };
        push(0.0, 0.0);
        push(a, 0.0);
        if a + b <= s {
            push(a, b);
        } else {
            push(a, s - a);
            push(s - b, b);
        }
        push(0.0, b);
        if out.len() > 1 {
            let first = out[0];
            let last = *out.last().unwrap();
            if (first.r13 - last.r13).abs() <= EPS_FEAS && (first.r31 - last.r31).abs() <= EPS_FEAS {
                out.pop();
            }
        }
        out
    }
}

/// True iff every constraint of `region` holds at `(r, tau)` within
/// [`EPS_FEAS`]. `tau` is assumed to have passed [`validate_allocation`].
pub fn rates_feasible(region: &RateRegionSpec, tau: &TimeAllocation, r: &RatePair) -> bool {
    region.contains(tau, r)
}
