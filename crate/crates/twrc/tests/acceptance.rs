//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the report is printed on every `cargo test`; exits nonzero if any
//! criterion fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use twrc::run_sweep_parallel;
use twrc_core::{
    allocate_rate_objective, builtin_scheme, df_phase_mi, evaluate_position, evaluate_scheme, inner_region_df,
    outer_region, twc_baseline, ub_phase_mi, validate_rate_split, ChannelGains, PhaseMiTable, PlaneNetwork, Point,
    PowerConstraints, RateObjective, RatePair, SweepConfig, DEFAULT_SPLIT_MARGIN,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn wireline_reference_metrics() -> Outcome {
    let start = Instant::now();
    let expected = [
        ("twc", 1.0, 1.0, 1.0),
        ("two-step", 1.0, 2.0, 1.5),
        ("three-step", 4.0 / 3.0, 1.5, 1.5),
        ("three-step-alt", 4.0 / 3.0, 1.5, 0.75),
        ("four-step", 1.5, 4.0 / 3.0, 1.0),
    ];
    let mut exact = 0;
    let mut misses = Vec::new();
    for (name, bps, lpb, npb) in expected {
        let m = evaluate_scheme(&builtin_scheme(name).unwrap()).unwrap();
        for (label, got, want) in [("bps", m.bps, bps), ("lpb", m.lpb, lpb), ("npb", m.npb, npb)] {
            if got == want {
                exact += 1;
            } else {
                misses.push(format!("{name} {label} {got} != {want}"));
            }
        }
    }
    let t = start.elapsed();
    outcome(
        exact == 15 && t < Duration::from_secs(1),
        format!("{exact}/15 reference metrics exact, {}{}", secs(t), if misses.is_empty() { String::new() } else { format!("; {}", misses.join("; ")) }),
    )
}

fn twc_baseline_value() -> Outcome {
    let h13 = twrc_core::channel_gain(1.0, 3.0).unwrap();
    let g = ChannelGains::symmetric(0.0, h13, 0.0).unwrap();
    let v = twc_baseline(&g, &PowerConstraints::uniform(10.0).unwrap()).unwrap();
    let closed = 0.5 * 11f64.log2();
    outcome(
        (v - 1.7297).abs() <= 1e-4 && (v - closed).abs() <= 1e-12,
        format!("maxmin {v:.6}, closed form {closed:.6}"),
    )
}

fn midpoint_cfg(bg_step: f64) -> SweepConfig {
    SweepConfig { x_min: 0.5, x_max: 0.5, y_min: 0.0, y_max: 0.0, bg_step, ..SweepConfig::default() }
}

fn df_over_twc_midpoint() -> Outcome {
    let start = Instant::now();
    let cell = evaluate_position(Point::new(0.5, 0.0), &midpoint_cfg(0.05)).unwrap();
    let t = start.elapsed();
    let r = cell.df_over_twc;
    outcome(
        (1.25..=1.55).contains(&r) && t < Duration::from_secs(30),
        format!(
            "df/twc {r:.4} (df {:.4}, twc {:.4}, beta* {}, gamma* {}), {}",
            cell.df_rate,
            cell.twc_rate,
            cell.df_coherence.beta,
            cell.df_coherence.gamma,
            secs(t)
        ),
    )
}

fn ub_over_df() -> Outcome {
    let mid = evaluate_position(Point::new(0.5, 0.0), &midpoint_cfg(0.05)).unwrap();
    let mid_ratio = mid.ub_rate / mid.df_rate;

    let cfg = SweepConfig::default();
    let start = Instant::now();
    let grid = run_sweep_parallel(&cfg).unwrap();
    let t = start.elapsed();

    let net = |p: Point| PlaneNetwork::with_relay(p, cfg.alpha);
    let mut worst: (f64, Point) = (0.0, Point::default());
    let mut far_cells = 0;
    let mut contained = true;
    let mut grid_mid = f64::NAN;
    for cell in grid.ok_cells() {
        contained &= cell.df_rate <= cell.ub_rate + 1e-9;
        if cell.position == Point::new(0.5, 0.0) {
            grid_mid = cell.ub_rate / cell.df_rate;
        }
        let n = net(cell.position).unwrap();
        if n.d12() > 1.5 || n.d23() > 1.5 {
            far_cells += 1;
            let r = cell.ub_rate / cell.df_rate;
            if r > worst.0 {
                worst = (r, cell.position);
            }
        }
    }
    let pass = (1.10..=1.30).contains(&mid_ratio)
        && (1.10..=1.30).contains(&grid_mid)
        && worst.0 <= 1.12
        && contained
        && t < Duration::from_secs(600);
    outcome(
        pass,
        format!(
            "ub/df at (0.5,0) {mid_ratio:.4} (bg step 0.05), {grid_mid:.4} (bg step 0.1); worst ub/df over {far_cells} far cells {:.4} at ({:.1},{:.1}); df <= ub everywhere: {contained}; default sweep {} cells in {}",
            worst.0,
            worst.1.x,
            worst.1.y,
            grid.cells.len(),
            secs(t)
        ),
    )
}

fn lp_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let tables: Vec<PhaseMiTable> = (0..100).map(|_| common::random_table(&mut rng)).collect();
    // (lp - grid) for the inner and the outer region of every table
    let gaps: Vec<(f64, f64)> = tables
        .par_iter()
        .flat_map_iter(|t| {
            [inner_region_df(t), outer_region(t)].into_iter().map(|region| {
                let lp = allocate_rate_objective(&region, RateObjective::MaxMin).unwrap().objective;
                let (grid, _) = common::grid_maxmin(&region, 50);
                let exact = common::vertex_maxmin(&region);
                (lp - grid, (lp - exact).abs())
            })
        })
        .collect();
    let t = start.elapsed();
    let over = gaps.iter().filter(|g| g.0 > 2e-2).count();
    let below = gaps.iter().filter(|g| g.0 < -1e-9).count();
    let max_gap = gaps.iter().map(|g| g.0).fold(f64::NEG_INFINITY, f64::max);
    let max_exact = gaps.iter().map(|g| g.1).fold(0.0, f64::max);
    outcome(
        over == 0 && below == 0 && t < Duration::from_secs(120),
        format!(
            "{} LPs: {over} exceed the grid by more than 2e-2 (max {max_gap:.4}), {below} below the grid; max |lp - vertex enumeration| {max_exact:.1e}; {}",
            gaps.len(),
            secs(t)
        ),
    )
}

fn region_containment() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let mut mi_violations = 0;
    let mut point_violations = 0;
    let mut points = 0;
    for _ in 0..500 {
        let s = common::random_instance(&mut rng);
        let df = df_phase_mi(&s.gains, &s.powers, &s.coherence).unwrap();
        let ub = ub_phase_mi(&s.gains, &s.powers, &s.coherence).unwrap();
        for ((_, a), (_, b)) in df.entries().iter().zip(ub.entries().iter()) {
            if *a > *b + 1e-12 {
                mi_violations += 1;
            }
        }
        let inner = inner_region_df(&df);
        let outer = outer_region(&ub);
        let mut candidates = inner.vertices(&s.tau);
        for v in inner.vertices(&s.tau) {
            let c = rng.gen_range(0.0..=1.0);
            candidates.push(v.scaled(c));
        }
        for r in candidates {
            points += 1;
            debug_assert!(inner.contains(&s.tau, &r));
            if !outer.contains(&s.tau, &r) {
                point_violations += 1;
            }
        }
    }
    outcome(
        mi_violations == 0 && point_violations == 0,
        format!("500 samples: {mi_violations} df > ub table entries, {point_violations}/{points} inner points outside the outer region"),
    )
}

fn split_bridge() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    let mut inside_fail = Vec::new();
    let mut outside_pass = 0;
    let mut explained = 0;
    for i in 0..100 {
        let s = common::random_instance(&mut rng);
        let mi = df_phase_mi(&s.gains, &s.powers, &s.coherence).unwrap();
        let region = inner_region_df(&mi);
        let theta = rng.gen_range(0.0..=std::f64::consts::FRAC_PI_2);
        let dir = RatePair { r13: theta.cos(), r31: theta.sin() };
        let boundary = dir.scaled(region.max_scale_along(&s.tau, dir));
        let ok = |c: f64| validate_rate_split(&boundary.scaled(c), &s.tau, &mi, DEFAULT_SPLIT_MARGIN).unwrap().is_some();
        if !ok(0.99) {
            let t = s.tau.0;
            let r = boundary.scaled(0.99);
            // cuts through the split constraints that the region does not list
            let cut13 = t[0] * mi.i1_2 + t[3] * mi.i2_3 + t[5] * mi.i12_3;
            let cut31 = t[1] * mi.i3_2 + t[3] * mi.i2_1 + t[4] * mi.i23_1;
            if r.r13 > cut13 || r.r31 > cut31 {
                explained += 1;
            }
            inside_fail.push(format!("#{i} relay ({:.2},{:.2})", s.relay.x, s.relay.y));
        }
        if ok(1.01) {
            outside_pass += 1;
        }
    }
    let k = inside_fail.len();
    outcome(
        k == 0 && outside_pass == 0,
        format!(
            "100 instances: {k} pairs at 0.99x have no split ({explained} of them violate a relay/destination cut missing from the region), {outside_pass} pairs at 1.01x have one{}",
            if k > 0 { format!("; first: {}", inside_fail[..k.min(3)].join(", ")) } else { String::new() }
        ),
    )
}

fn sweep_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_twrc");
    let run = |name: &str, threads: Option<&str>| {
        let path = dir.path().join(name);
        let mut cmd = Command::new(bin);
        cmd.args(["sweep", "--out"]).arg(&path);
        if let Some(n) = threads {
            cmd.args(["--threads", n]);
        }
        let status = cmd.output().unwrap().status;
        assert!(status.success(), "sweep exited with {status}");
        std::fs::read(path).unwrap()
    };
    let a = run("a.csv", None);
    let b = run("b.csv", None);
    let c = run("c.csv", Some("1"));
    outcome(
        a == b && b == c,
        format!("3 default sweeps ({} bytes): identical {} / with 1 thread {}", a.len(), a == b, b == c),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("wireline reference metrics", wireline_reference_metrics),
        ("twc baseline", twc_baseline_value),
        ("df/twc at midpoint", df_over_twc_midpoint),
        ("ub/df claims", ub_over_df),
        ("lp oracle equivalence", lp_oracle_equivalence),
        ("region containment", region_containment),
        ("rate split bridge", split_bridge),
        ("sweep determinism", sweep_determinism),
    ];
    let mut passed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        println!("criterion {} ({name}): {} - {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        passed += o.pass as usize;
    }
    println!("acceptance: {passed}/{} criteria passed", criteria.len());
    if passed != criteria.len() {
        std::process::exit(1);
    }
}
