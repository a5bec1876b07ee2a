//! Independent oracles for the allocation LPs.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use twrc_core::{
    ChannelGains, CoherenceParams, PhaseMiTable, PlaneNetwork, Point, PowerConstraints, RateKind, RateRegionSpec,
    TimeAllocation,
};

/// Symmetric rate available at `tau`: every R13 row, every R31 row and half
/// of every sum row.
fn symmetric_cap(rows: &[(RateKind, [f64; 6])], tau: &[f64; 6]) -> f64 {
    let mut t = f64::INFINITY;
    for (kind, c) in rows {
        let cap: f64 = c.iter().zip(tau).map(|(a, b)| a * b).sum();
        let v = match kind {
            RateKind::Sum => cap / 2.0,
            _ => cap,
        };
        t = t.min(v);
    }
    t
}

fn rows_of(region: &RateRegionSpec) -> Vec<(RateKind, [f64; 6])> {
    region.constraints().iter().map(|c| (c.kind, c.coeffs)).collect()
}

/// Best maxmin rate over every `tau` on the grid `k / n` with `sum tau = 1`.
///
/// Every row capacity is nondecreasing in each `tau_l`, so the face
/// `sum tau = 1` dominates the interior and is all that needs searching.
pub fn grid_maxmin(region: &RateRegionSpec, n: usize) -> (f64, [f64; 6]) {
    let rows = rows_of(region);
    let h = 1.0 / n as f64;
    let mut best = (f64::NEG_INFINITY, [0.0; 6]);
    let mut tau = [0.0; 6];
    for a in 0..=n {
        tau[0] = a as f64 * h;
        for b in 0..=n - a {
            tau[1] = b as f64 * h;
            for c in 0..=n - a - b {
                tau[2] = c as f64 * h;
                for d in 0..=n - a - b - c {
                    tau[3] = d as f64 * h;
                    for e in 0..=n - a - b - c - d {
                        tau[4] = e as f64 * h;
                        tau[5] = (n - a - b - c - d - e) as f64 * h;
                        let v = symmetric_cap(&rows, &tau);
                        if v > best.0 {
                            best = (v, tau);
                        }
                    }
                }
            }
        }
    }
    best
}

/// Exact maxmin optimum by enumerating basic solutions of
/// `max t` s.t. `w t <= c . tau`, `sum tau <= 1`, `tau >= 0`, `t >= 0`:
/// every choice of 7 tight constraints out of the full set is solved as a
/// 7x7 system and the best feasible point kept.
pub fn vertex_maxmin(region: &RateRegionSpec) -> f64 {
    // rows of a . x <= b over x = (tau1..tau6, t)
    let mut a: Vec<[f64; 7]> = Vec::new();
    let mut b: Vec<f64> = Vec::new();
    for (kind, c) in rows_of(region) {
        let w = if kind == RateKind::Sum { 2.0 } else { 1.0 };
        a.push([-c[0], -c[1], -c[2], -c[3], -c[4], -c[5], w]);
        b.push(0.0);
    }
    a.push([1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0]);
    b.push(1.0);
    for l in 0..7 {
        let mut r = [0.0; 7];
        r[l] = -1.0;
        a.push(r);
        b.push(0.0);
    }
    let m = a.len();
    let mut best = 0.0f64;
    for subset in combinations(m, 7) {
        let mat = DMatrix::from_fn(7, 7, |i, j| a[subset[i]][j]);
        let rhs = DVector::from_fn(7, |i, _| b[subset[i]]);
        let Some(x) = mat.lu().solve(&rhs) else { continue };
        if !x.iter().all(|v| v.is_finite()) {
            continue;
        }
        let feasible = a.iter().zip(&b).all(|(row, bi)| {
            let lhs: f64 = row.iter().zip(x.iter()).map(|(p, q)| p * q).sum();
            lhs <= bi + 1e-9
        });
        if feasible {
            best = best.max(x[6]);
        }
    }
    best
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Table with independent entries uniform in `[0, 5]`; the phase 5 and 6
/// joint terms are chain-rule sums and the joint broadcast terms are drawn
/// above their marginals.
pub fn random_table<R: Rng>(rng: &mut R) -> PhaseMiTable {
    let mut u = || rng.gen_range(0.0..5.0);
    let mut t = PhaseMiTable {
        i1_2: u(),
        i1_3: u(),
        i3_2: u(),
        i3_1: u(),
        i1_2g3: u(),
        i3_2g1: u(),
        i13_2: u(),
        i2_3: u(),
        i2_1: u(),
        i3_1g2: u(),
        i2_1p5: u(),
        i1_3g2: u(),
        i2_3p6: u(),
        ..PhaseMiTable::default()
    };
    t.i23_1 = t.i3_1g2 + t.i2_1p5;
    t.i12_3 = t.i1_3g2 + t.i2_3p6;
    let lo1 = t.i1_2.max(t.i1_3);
    let lo3 = t.i3_2.max(t.i3_1);
    t.i1_23 = lo1 + rng.gen_range(0.0..=1.0) * (5.0 - lo1);
    t.i3_12 = lo3 + rng.gen_range(0.0..=1.0) * (5.0 - lo3);
    t.check().expect("generated table is consistent");
    t
}

/// Gaussian instance with the relay anywhere in `[-1, 2] x [-1.5, 1.5]`.
pub struct Instance {
    pub relay: Point,
    pub gains: ChannelGains,
    pub powers: PowerConstraints,
    pub coherence: CoherenceParams,
    pub tau: TimeAllocation,
}

pub fn random_instance<R: Rng>(rng: &mut R) -> Instance {
    loop {
        let relay = Point::new(rng.gen_range(-1.0..2.0), rng.gen_range(-1.5..1.5));
        let alpha = rng.gen_range(2.0..4.0);
        let Ok(net) = PlaneNetwork::with_relay(relay, alpha) else { continue };
        if net.d12() < 0.05 || net.d23() < 0.05 {
            continue;
        }
        let mut p = || rng.gen_range(0.0..20.0);
        let powers = PowerConstraints { p1: p(), p2: p(), p3: p() };
        let coherence = CoherenceParams { beta: rng.gen_range(0.0..=1.0), gamma: rng.gen_range(0.0..=1.0) };
        return Instance { relay, gains: net.gains().unwrap(), powers, coherence, tau: random_tau(rng) };
    }
}

/// Uniform on the simplex `sum tau = 1`, then shrunk by a random idle share.
pub fn random_tau<R: Rng>(rng: &mut R) -> TimeAllocation {
    let mut e = [0.0; 6];
    for v in &mut e {
        *v = -(1.0 - rng.gen::<f64>()).ln();
    }
    let s: f64 = e.iter().sum();
    let busy = rng.gen_range(0.5..=1.0);
    TimeAllocation(e.map(|v| busy * v / s))
}
