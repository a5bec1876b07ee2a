//! Per-phase mutual informations of the scalar AWGN relay network.
//!
//! Every active output sees `Y_j = sum_i h_ij X_i + Z_j` with independent
//! unit-variance circularly-symmetric Gaussian noise, and every active input
//! obeys a per-symbol power constraint `E|X_i|^2 <= P_i`. Inputs are Gaussian,
//! so each mutual information reduces to `log2(1 + snr)` for a suitable
//! effective SNR.
//!
//! In the phases where the relay and a dialog node transmit together (5 and 6)
//! the dialog node spends a fraction `beta` (phase 5, node 3) or `gamma`
//! (phase 6, node 1) of its power repeating the relay's codeword, which makes
//! the two signals add coherently at the receiver.
//!
//! The outer bound evaluation ([`ub_phase_mi`]) also assumes Gaussian inputs.
//! This is optimal for the broadcast-cut terms: with one input and two
//! independent observations the pair is equivalent to a single observation with
//! gain `sqrt(h_a^2 + h_b^2)` (maximum-ratio combining), and a Gaussian input
//! maximizes the resulting point-to-point mutual information under a power
//! constraint. For the multiple-access cuts of phases 5 and 6 the cut-set bound
//! maximizes over correlated inputs; the correlation is swept through the same
//! `beta`/`gamma` parameter, with the maximization done by the caller.

use crate::error::{Error, Result};
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        math::hypot(self.x - other.x, self.y - other.y)
    }
}

/// Three nodes in the plane with a common path-loss exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneNetwork {
    pub node1: Point,
    pub node2: Point,
    pub node3: Point,
    pub alpha: f64,
}

/// Distances at or below this are treated as coincident nodes.
const MIN_DISTANCE: f64 = 1e-12;

impl PlaneNetwork {
    pub fn new(node1: Point, node2: Point, node3: Point, alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::Domain(alloc::format!("path-loss exponent must be positive, got {alpha}")));
        }
        let net = Self { node1, node2, node3, alpha };
        for (name, d) in [("d12", net.d12()), ("d13", net.d13()), ("d23", net.d23())] {
            if !(d.is_finite() && d > MIN_DISTANCE) {
                return Err(Error::Geometry(alloc::format!("{name} = {d}: coincident or invalid node positions")));
            }
        }
        Ok(net)
    }

    /// Dialog nodes at `(0, 0)` and `(1, 0)`, relay at `relay`.
    pub fn with_relay(relay: Point, alpha: f64) -> Result<Self> {
        Self::new(Point::new(0.0, 0.0), relay, Point::new(1.0, 0.0), alpha)
    }

    pub fn d12(&self) -> f64 {
        self.node1.distance(&self.node2)
    }

    pub fn d13(&self) -> f64 {
        self.node1.distance(&self.node3)
    }

    pub fn d23(&self) -> f64 {
        self.node2.distance(&self.node3)
    }

    /// Reciprocal amplitude gains `h_ij = h_ji = d_ij^(-alpha/2)`.
    pub fn gains(&self) -> Result<ChannelGains> {
        let h12 = channel_gain(self.d12(), self.alpha)?;
        let h13 = channel_gain(self.d13(), self.alpha)?;
        let h23 = channel_gain(self.d23(), self.alpha)?;
        ChannelGains::symmetric(h12, h13, h23)
    }
}

/// `d^(-alpha/2)`.
pub fn channel_gain(d: f64, alpha: f64) -> Result<f64> {
    if !(d.is_finite() && d > 0.0) {
        return Err(Error::Geometry(alloc::format!("distance must be positive, got {d}")));
    }
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::Domain(alloc::format!("path-loss exponent must be positive, got {alpha}")));
    }
    Ok(math::powf(d, -alpha / 2.0))
}

/// `log2(1 + snr)` in bits per channel use.
pub fn awgn_capacity(snr: f64) -> Result<f64> {
    if !snr.is_finite() || snr < 0.0 {
        return Err(Error::Domain(alloc::format!("snr must be finite and nonnegative, got {snr}")));
    }
    Ok(cap(snr))
}

#[inline]
fn cap(snr: f64) -> f64 {
    math::log2(1.0 + snr)
}

/// Noise-normalized amplitude gains; `hij` is the gain from node `i` to node `j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelGains {
    pub h12: f64,
    pub h13: f64,
    pub h21: f64,
    pub h23: f64,
    pub h31: f64,
    pub h32: f64,
}

impl ChannelGains {
    pub fn new(h12: f64, h13: f64, h21: f64, h23: f64, h31: f64, h32: f64) -> Result<Self> {
        let g = Self { h12, h13, h21, h23, h31, h32 };
        g.check()?;
        Ok(g)
    }

    /// Reciprocal links: `h21 = h12`, `h31 = h13`, `h32 = h23`.
    pub fn symmetric(h12: f64, h13: f64, h23: f64) -> Result<Self> {
        Self::new(h12, h13, h12, h23, h13, h23)
    }

    pub fn check(&self) -> Result<()> {
        let all = [self.h12, self.h13, self.h21, self.h23, self.h31, self.h32];
        if all.iter().any(|h| !(h.is_finite() && *h >= 0.0)) {
            return Err(Error::Domain(alloc::format!("gains must be finite and nonnegative: {all:?}")));
        }
        Ok(())
    }

    /// Relabels node 1 as node 3 and vice versa.
    pub fn swap_dialog(&self) -> Self {
        Self {
            h12: self.h32,
            h13: self.h31,
            h21: self.h23,
            h23: self.h21,
            h31: self.h13,
            h32: self.h12,
        }
    }
}

/// Per-node transmit powers relative to unit noise variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerConstraints {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

impl PowerConstraints {
    pub fn new(p1: f64, p2: f64, p3: f64) -> Result<Self> {
        let p = Self { p1, p2, p3 };
        p.check()?;
        Ok(p)
    }

    pub fn uniform(p: f64) -> Result<Self> {
        Self::new(p, p, p)
    }

    pub fn check(&self) -> Result<()> {
        let all = [self.p1, self.p2, self.p3];
        if all.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(Error::Domain(alloc::format!("powers must be finite and nonnegative: {all:?}")));
        }
        Ok(())
    }

    pub fn swap_dialog(&self) -> Self {
        Self { p1: self.p3, p2: self.p2, p3: self.p1 }
    }
}

/// Fractions of power that node 3 (`beta`, phase 5) and node 1 (`gamma`,
/// phase 6) spend transmitting coherently with the relay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceParams {
    pub beta: f64,
    pub gamma: f64,
}

impl CoherenceParams {
    pub const NONE: Self = Self { beta: 0.0, gamma: 0.0 };

    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        let c = Self { beta, gamma };
        c.check()?;
        Ok(c)
    }

    pub fn check(&self) -> Result<()> {
        if !((0.0..=1.0).contains(&self.beta) && (0.0..=1.0).contains(&self.gamma)) {
            return Err(Error::Domain(alloc::format!(
                "beta and gamma must lie in [0, 1], got ({}, {})",
                self.beta,
                self.gamma
            )));
        }
        Ok(())
    }

    pub fn swap_dialog(&self) -> Self {
        Self { beta: self.gamma, gamma: self.beta }
    }
}

/// Every mutual-information constant (bits per channel use) that appears in
/// the outer bound, the DF inner bound and the sub-rate split. Field names
/// read `i<inputs>_<outputs>[g<conditioning>]`, with a `p5`/`p6` suffix where
/// the same symbol is evaluated in a different phase.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhaseMiTable {
    // phase 1: node 1 broadcasts
    pub i1_2: f64,
    pub i1_3: f64,
    pub i1_23: f64,
    // phase 2: node 3 broadcasts
    pub i3_2: f64,
    pub i3_1: f64,
    pub i3_12: f64,
    // phase 3: nodes 1 and 3 to the relay
    pub i1_2g3: f64,
    pub i3_2g1: f64,
    pub i13_2: f64,
    // phase 4: relay broadcasts
    pub i2_3: f64,
    pub i2_1: f64,
    // phase 5: relay and node 3 to node 1
    pub i3_1g2: f64,
    pub i23_1: f64,
    pub i2_1p5: f64,
    // phase 6: relay and node 1 to node 3
    pub i1_3g2: f64,
    pub i12_3: f64,
    pub i2_3p6: f64,
}

const CHAIN_TOL: f64 = 1e-9;

impl PhaseMiTable {
    pub fn entries(&self) -> [(&'static str, f64); 17] {
        [
            ("i1_2", self.i1_2),
            ("i1_3", self.i1_3),
            ("i1_23", self.i1_23),
            ("i3_2", self.i3_2),
            ("i3_1", self.i3_1),
            ("i3_12", self.i3_12),
            ("i1_2g3", self.i1_2g3),
            ("i3_2g1", self.i3_2g1),
            ("i13_2", self.i13_2),
            ("i2_3", self.i2_3),
            ("i2_1", self.i2_1),
            ("i3_1g2", self.i3_1g2),
            ("i23_1", self.i23_1),
            ("i2_1p5", self.i2_1p5),
            ("i1_3g2", self.i1_3g2),
            ("i12_3", self.i12_3),
            ("i2_3p6", self.i2_3p6),
        ]
    }

    /// Nonnegativity, chain rule in phases 5 and 6, and joint-output
    /// dominance in phases 1 and 2.
    pub fn check(&self) -> Result<()> {
        for (name, v) in self.entries() {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Domain(alloc::format!("{name} = {v} is negative or not finite")));
            }
        }
        if (self.i23_1 - self.i2_1p5 - self.i3_1g2).abs() > CHAIN_TOL {
            return Err(Error::Domain("phase 5 chain rule i23_1 = i2_1p5 + i3_1g2 violated".into()));
        }
        if (self.i12_3 - self.i2_3p6 - self.i1_3g2).abs() > CHAIN_TOL {
            return Err(Error::Domain("phase 6 chain rule i12_3 = i2_3p6 + i1_3g2 violated".into()));
        }
        if self.i1_23 + CHAIN_TOL < self.i1_2.max(self.i1_3) {
            return Err(Error::Domain("i1_23 below one of its marginals".into()));
        }
        if self.i3_12 + CHAIN_TOL < self.i3_1.max(self.i3_2) {
            return Err(Error::Domain("i3_12 below one of its marginals".into()));
        }
        Ok(())
    }

    /// The table seen after relabelling node 1 as node 3 and vice versa.
    pub fn swap_dialog(&self) -> Self {
        Self {
            i1_2: self.i3_2,
            i1_3: self.i3_1,
            i1_23: self.i3_12,
            i3_2: self.i1_2,
            i3_1: self.i1_3,
            i3_12: self.i1_23,
            i1_2g3: self.i3_2g1,
            i3_2g1: self.i1_2g3,
            i13_2: self.i13_2,
            i2_3: self.i2_1,
            i2_1: self.i2_3,
            i3_1g2: self.i1_3g2,
            i23_1: self.i12_3,
            i2_1p5: self.i2_3p6,
            i1_3g2: self.i3_1g2,
            i12_3: self.i23_1,
            i2_3p6: self.i2_1p5,
        }
    }

    /// Every entry multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        let mut t = *self;
        for v in [
            &mut t.i1_2, &mut t.i1_3, &mut t.i1_23, &mut t.i3_2, &mut t.i3_1, &mut t.i3_12,
            &mut t.i1_2g3, &mut t.i3_2g1, &mut t.i13_2, &mut t.i2_3, &mut t.i2_1,
            &mut t.i3_1g2, &mut t.i23_1, &mut t.i2_1p5, &mut t.i1_3g2, &mut t.i12_3, &mut t.i2_3p6,
        ] {
            *v *= c;
        }
        t
    }
}

fn check_inputs(g: &ChannelGains, p: &PowerConstraints, c: &CoherenceParams) -> Result<()> {
    g.check()?;
    p.check()?;
    c.check()
}

/// SNR of a dialog node `d` and the relay `r` received together, with the
/// dialog node spending `frac` of its power coherently with the relay.
#[inline]
fn coherent_snr(h_d: f64, p_d: f64, h_r: f64, p_r: f64, frac: f64) -> f64 {
    h_d * h_d * p_d + h_r * h_r * p_r + 2.0 * h_d * h_r * math::sqrt(frac * p_d * p_r)
}

/// Terms shared by both bounds; the joint-output entries are left as the max
/// of their marginals.
fn common_mi(g: &ChannelGains, p: &PowerConstraints, c: &CoherenceParams) -> PhaseMiTable {
    let i1_2 = cap(g.h12 * g.h12 * p.p1);
    let i1_3 = cap(g.h13 * g.h13 * p.p1);
    let i3_2 = cap(g.h32 * g.h32 * p.p3);
    let i3_1 = cap(g.h31 * g.h31 * p.p3);

    let i3_1g2 = cap(g.h31 * g.h31 * (1.0 - c.beta) * p.p3);
    let i23_1 = cap(coherent_snr(g.h31, p.p3, g.h21, p.p2, c.beta));
    let i1_3g2 = cap(g.h13 * g.h13 * (1.0 - c.gamma) * p.p1);
    let i12_3 = cap(coherent_snr(g.h13, p.p1, g.h23, p.p2, c.gamma));

    PhaseMiTable {
        i1_2,
        i1_3,
        i1_23: i1_2.max(i1_3),
        i3_2,
        i3_1,
        i3_12: i3_2.max(i3_1),
        i1_2g3: i1_2,
        i3_2g1: i3_2,
        i13_2: cap(g.h12 * g.h12 * p.p1 + g.h32 * g.h32 * p.p3),
        i2_3: cap(g.h23 * g.h23 * p.p2),
        i2_1: cap(g.h21 * g.h21 * p.p2),
        i3_1g2,
        i23_1,
        i2_1p5: i23_1 - i3_1g2,
        i1_3g2,
        i12_3,
        i2_3p6: i12_3 - i1_3g2,
    }
}

/// Mutual informations of the DF scheme with Gaussian inputs.
///
/// `i1_23` and `i3_12` are not used by the DF region; they are filled with the
/// larger marginal so the table still satisfies its invariants.
pub fn df_phase_mi(g: &ChannelGains, p: &PowerConstraints, c: &CoherenceParams) -> Result<PhaseMiTable> {
    check_inputs(g, p, c)?;
    Ok(common_mi(g, p, c))
}

/// Mutual informations for the cut-set bound: as [`df_phase_mi`] but with the
/// broadcast cuts of phases 1 and 2 observed jointly by both receivers.
pub fn ub_phase_mi(g: &ChannelGains, p: &PowerConstraints, c: &CoherenceParams) -> Result<PhaseMiTable> {
    check_inputs(g, p, c)?;
    let mut t = common_mi(g, p, c);
    t.i1_23 = cap((g.h12 * g.h12 + g.h13 * g.h13) * p.p1);
    t.i3_12 = cap((g.h31 * g.h31 + g.h32 * g.h32) * p.p3);
    Ok(t)
}
