use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twrc_core::{
    allocate_min_cost, allocate_rate_objective, builtin_scheme, channel_gain, df_phase_mi, evaluate_scheme,
    inner_region_df, outer_region, twc_region, AllocationResult, ChannelGains, CoherenceParams, MinCostOutcome,
    PhaseMiTable, PlaneNetwork, Point, PowerConstraints, RateObjective, RatePair, RateRegionSpec, SweepConfig,
    TimeAllocation,
};

use crate::config::{objective_name, read_config};
use crate::error::{Error, Result};
use crate::grid_io::write_grid;
use crate::parallel::run_sweep_parallel;
use crate::report::{
    bound_name, finite, mi_map, AllocationReport, CapsReport, RegionReport, RowReport, SweepSummary, WirelineReport,
};
use crate::scheme_file::read_scheme;

#[derive(Debug, Parser)]
#[command(name = "twrc", version, about = "Rate regions and time allocation for the half-duplex two-way relay channel")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score a bit-pipe schedule; prints "bps lpb npb".
    Wireline(WirelineArgs),
    /// Optimal time allocation for one geometry.
    Allocate(AllocateArgs),
    /// Rate-region rows for one geometry.
    Region(RegionArgs),
    /// Relay-placement sweep written as CSV.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SchemeSource {
    /// twc, two-step, three-step, three-step-alt or four-step.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Schedule file, one step per line.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WirelineArgs {
    #[command(flatten)]
    pub source: SchemeSource,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct BoundArgs {
    /// Decode-and-forward inner bound.
    #[arg(long)]
    pub df: bool,
    /// Cut-set outer bound.
    #[arg(long)]
    pub ub: bool,
    /// Direct exchange without the relay.
    #[arg(long)]
    pub twc: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Df,
    Ub,
    Twc,
}

impl BoundArgs {
    fn get(&self) -> Bound {
        if self.df {
            Bound::Df
        } else if self.ub {
            Bound::Ub
        } else {
            Bound::Twc
        }
    }
}

#[derive(Debug, Args)]
pub struct GeometryArgs {
    /// Relay position in the plane.
    #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true)]
    pub relay: Option<Vec<f64>>,
    /// Node 1 position [default: 0 0].
    #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true)]
    pub node1: Option<Vec<f64>>,
    /// Node 3 position [default: 1 0].
    #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true)]
    pub node3: Option<Vec<f64>>,
    #[arg(long, conflicts_with_all = ["relay", "node1", "node3", "gains"])]
    pub d12: Option<f64>,
    #[arg(long, conflicts_with_all = ["relay", "node1", "node3", "gains"])]
    pub d13: Option<f64>,
    #[arg(long, conflicts_with_all = ["relay", "node1", "node3", "gains"])]
    pub d23: Option<f64>,
    /// Raw amplitude gains.
    #[arg(long, num_args = 6, value_names = ["H12", "H13", "H21", "H23", "H31", "H32"], conflicts_with_all = ["relay", "node1", "node3"])]
    pub gains: Option<Vec<f64>>,
    /// Path-loss exponent.
    #[arg(long, default_value_t = 3.0)]
    pub alpha: f64,
    /// Power of every node, unless overridden per node.
    #[arg(long, default_value_t = 10.0)]
    pub power: f64,
    #[arg(long)]
    pub p1: Option<f64>,
    #[arg(long)]
    pub p2: Option<f64>,
    #[arg(long)]
    pub p3: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    /// Search beta and gamma on a grid with this spacing instead of fixing them.
    #[arg(long, conflicts_with_all = ["beta", "gamma"])]
    pub bg_step: Option<f64>,
}

fn point(v: &Option<Vec<f64>>, default: Point) -> Point {
    v.as_ref().map_or(default, |v| Point::new(v[0], v[1]))
}

impl GeometryArgs {
    fn gains(&self, bound: Bound) -> Result<ChannelGains> {
        if let Some(h) = &self.gains {
            return Ok(ChannelGains::new(h[0], h[1], h[2], h[3], h[4], h[5])?);
        }
        let gain = |d: f64| channel_gain(d, self.alpha);
        if self.d12.is_some() || self.d13.is_some() || self.d23.is_some() {
            let d13 = self.d13.ok_or_else(|| Error::Usage("--d13 is required with --d12/--d23".into()))?;
            if bound == Bound::Twc {
                let h12 = self.d12.map(gain).transpose()?.unwrap_or(0.0);
                let h23 = self.d23.map(gain).transpose()?.unwrap_or(0.0);
                return Ok(ChannelGains::symmetric(h12, gain(d13)?, h23)?);
            }
            let (Some(d12), Some(d23)) = (self.d12, self.d23) else {
                return Err(Error::Usage("--df and --ub need all of --d12, --d13 and --d23".into()));
            };
            return Ok(ChannelGains::symmetric(gain(d12)?, gain(d13)?, gain(d23)?)?);
        }
        let n1 = point(&self.node1, Point::new(0.0, 0.0));
        let n3 = point(&self.node3, Point::new(1.0, 0.0));
        match (&self.relay, bound) {
            (Some(_), _) => Ok(PlaneNetwork::new(n1, point(&self.relay, Point::default()), n3, self.alpha)?.gains()?),
            (None, Bound::Twc) => Ok(ChannelGains::symmetric(0.0, gain(n1.distance(&n3))?, 0.0)?),
            (None, _) => Err(Error::Usage("--df and --ub need --relay, --d12/--d13/--d23 or --gains".into())),
        }
    }

    fn powers(&self) -> Result<PowerConstraints> {
        let p = self.power;
        Ok(PowerConstraints::new(self.p1.unwrap_or(p), self.p2.unwrap_or(p), self.p3.unwrap_or(p))?)
    }

    /// Coherence samples to try, in scan order.
    fn coherence(&self, bound: Bound) -> Result<Vec<CoherenceParams>> {
        if bound == Bound::Twc {
            return Ok(vec![CoherenceParams::NONE]);
        }
        match self.bg_step {
            None => Ok(vec![CoherenceParams::new(self.beta, self.gamma)?]),
            Some(s) => {
                let samples = SweepConfig { bg_step: s, ..SweepConfig::default() }.bg_samples()?;
                Ok(samples
                    .iter()
                    .flat_map(|&beta| samples.iter().map(move |&gamma| CoherenceParams { beta, gamma }))
                    .collect())
            }
        }
    }
}

fn build_region(bound: Bound, g: &ChannelGains, p: &PowerConstraints, c: &CoherenceParams) -> Result<(RateRegionSpec, PhaseMiTable)> {
    Ok(match bound {
        Bound::Df => {
            let mi = df_phase_mi(g, p, c)?;
            (inner_region_df(&mi), mi)
        }
        Bound::Ub => {
            let mi = twrc_core::ub_phase_mi(g, p, c)?;
            (outer_region(&mi), mi)
        }
        Bound::Twc => {
            let mi = df_phase_mi(g, p, &CoherenceParams::NONE)?;
            (twc_region(&mi), mi)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    /// Maximize R13 + R31.
    Srmax,
    /// Maximize lambda R13 + (1 - lambda) R31.
    Wsrmax,
    /// Maximize min(R13, R31).
    Maxmin,
    /// Cheapest allocation supporting --target under --costs.
    Tcmin,
}

impl ObjectiveArg {
    fn name(self) -> &'static str {
        match self {
            ObjectiveArg::Srmax => "srmax",
            ObjectiveArg::Wsrmax => "wsrmax",
            ObjectiveArg::Maxmin => "maxmin",
            ObjectiveArg::Tcmin => "tcmin",
        }
    }

    fn rate_objective(self, lambda: Option<f64>) -> Result<RateObjective> {
        match (self, lambda) {
            (ObjectiveArg::Wsrmax, Some(l)) => Ok(RateObjective::weighted(l)?),
            (ObjectiveArg::Wsrmax, None) => Err(Error::Usage("--objective wsrmax needs --lambda".into())),
            (_, Some(_)) => Err(Error::Usage("--lambda is only valid with --objective wsrmax".into())),
            (ObjectiveArg::Srmax, None) => Ok(RateObjective::SumRate),
            (ObjectiveArg::Maxmin, None) => Ok(RateObjective::MaxMin),
            (ObjectiveArg::Tcmin, None) => Err(Error::Usage("tcmin is not a rate objective".into())),
        }
    }
}

#[derive(Debug, Args)]
pub struct AllocateArgs {
    #[command(flatten)]
    pub bound: BoundArgs,
    #[command(flatten)]
    pub geometry: GeometryArgs,
    #[arg(long, value_enum, default_value = "maxmin")]
    pub objective: ObjectiveArg,
    /// Weight on R13 for wsrmax.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Rate pair to support, for tcmin.
    #[arg(long, num_args = 2, value_names = ["R13", "R31"])]
    pub target: Option<Vec<f64>>,
    /// Cost per unit time of phases 1..6, for tcmin [default: all 1].
    #[arg(long, num_args = 6, value_names = ["C1", "C2", "C3", "C4", "C5", "C6"])]
    pub costs: Option<Vec<f64>>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    #[command(flatten)]
    pub bound: BoundArgs,
    #[command(flatten)]
    pub geometry: GeometryArgs,
    /// Also print the rate polygon at this allocation.
    #[arg(long, num_args = 6, value_names = ["T1", "T2", "T3", "T4", "T5", "T6"])]
    pub tau: Option<Vec<f64>>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// key = value file; flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub x_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub x_max: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub y_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub y_max: Option<f64>,
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long)]
    pub bg_step: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub power: Option<f64>,
    #[arg(long)]
    pub p1: Option<f64>,
    #[arg(long)]
    pub p2: Option<f64>,
    #[arg(long)]
    pub p3: Option<f64>,
    #[arg(long, value_enum)]
    pub objective: Option<ObjectiveArg>,
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Worker threads [default: all cores].
    #[arg(long)]
    pub threads: Option<usize>,
    /// Destination CSV.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub json: bool,
}

impl SweepArgs {
    pub fn config(&self) -> Result<SweepConfig> {
        let mut cfg = match &self.config {
            Some(path) => read_config(path)?,
            None => SweepConfig::default(),
        };
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut cfg.x_min, self.x_min);
        set(&mut cfg.x_max, self.x_max);
        set(&mut cfg.y_min, self.y_min);
        set(&mut cfg.y_max, self.y_max);
        set(&mut cfg.step, self.step);
        set(&mut cfg.bg_step, self.bg_step);
        set(&mut cfg.alpha, self.alpha);
        if let Some(p) = self.power {
            cfg.powers = PowerConstraints { p1: p, p2: p, p3: p };
        }
        set(&mut cfg.powers.p1, self.p1);
        set(&mut cfg.powers.p2, self.p2);
        set(&mut cfg.powers.p3, self.p3);
        match (self.objective, self.lambda) {
            (Some(ObjectiveArg::Tcmin), _) => return Err(Error::Usage("sweeps support srmax, wsrmax and maxmin".into())),
            (Some(o), l) => cfg.objective = o.rate_objective(l)?,
            (None, Some(l)) => match cfg.objective {
                RateObjective::WeightedSumRate(_) => cfg.objective = RateObjective::weighted(l)?,
                _ => return Err(Error::Usage("--lambda is only valid with wsrmax".into())),
            },
            (None, None) => {}
        }
        if self.threads == Some(0) {
            return Err(Error::Usage("--threads must be positive".into()));
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn io<T>(r: std::io::Result<T>) -> Result<T> {
    r.map_err(|e| Error::io("<stdout>", e))
}

fn json<T: serde::Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(v).expect("report types always serialize");
    io(writeln!(out, "{s}"))
}

fn fmt_tau(t: &TimeAllocation) -> String {
    t.0.iter().map(|v| format!("{v:.6}")).collect::<Vec<_>>().join(" ")
}

fn cmd_wireline(a: &WirelineArgs, out: &mut dyn Write) -> Result<()> {
    let scheme = match (&a.source.builtin, &a.source.file) {
        (Some(name), _) => builtin_scheme(name).ok_or_else(|| Error::Usage(format!("unknown builtin scheme '{name}'")))?,
        (None, Some(path)) => read_scheme(path)?,
        (None, None) => unreachable!("clap enforces one scheme source"),
    };
    let m = evaluate_scheme(&scheme)?;
    if a.json {
        json(out, &WirelineReport::new(&scheme.name, &m))
    } else {
        io(writeln!(out, "{:.4} {:.4} {:.4}", m.bps, m.lpb, m.npb))
    }
}

fn best_allocation(
    bound: Bound,
    g: &ChannelGains,
    p: &PowerConstraints,
    samples: &[CoherenceParams],
    objective: RateObjective,
) -> Result<AllocationResult> {
    let mut best: Option<AllocationResult> = None;
    for c in samples {
        let (region, _) = build_region(bound, g, p, c)?;
        let r = allocate_rate_objective(&region, objective)?.with_coherence(*c);
        if best.as_ref().is_none_or(|b| r.objective > b.objective) {
            best = Some(r);
        }
    }
    Ok(best.expect("at least one coherence sample"))
}

fn cmd_allocate(a: &AllocateArgs, out: &mut dyn Write) -> Result<()> {
    let bound = a.bound.get();
    let tcmin = a.objective == ObjectiveArg::Tcmin;
    if !tcmin && (a.target.is_some() || a.costs.is_some()) {
        return Err(Error::Usage("--target and --costs are only valid with --objective tcmin".into()));
    }
    if tcmin && a.lambda.is_some() {
        return Err(Error::Usage("--lambda is only valid with --objective wsrmax".into()));
    }
    if tcmin && a.geometry.bg_step.is_some() {
        return Err(Error::Usage("--bg-step is not supported with tcmin".into()));
    }
    let g = a.geometry.gains(bound)?;
    let p = a.geometry.powers()?;
    let samples = a.geometry.coherence(bound)?;

    let mut report = AllocationReport {
        bound: match bound {
            Bound::Df => "df",
            Bound::Ub => "ub",
            Bound::Twc => "twc",
        }
        .into(),
        objective: a.objective.name().into(),
        status: "optimal".into(),
        beta: samples[0].beta,
        gamma: samples[0].gamma,
        tau: None,
        r13: None,
        r31: None,
        value: None,
    };
    let result = if tcmin {
        let t = a.target.as_ref().ok_or_else(|| Error::Usage("--objective tcmin needs --target".into()))?;
        let target = RatePair::new(t[0], t[1])?;
        let costs: [f64; 6] = match &a.costs {
            Some(c) => c.as_slice().try_into().expect("clap enforces six costs"),
            None => [1.0; 6],
        };
        let (region, _) = build_region(bound, &g, &p, &samples[0])?;
        match allocate_min_cost(&region, target, costs)? {
            MinCostOutcome::Optimal(r) => Some(r),
            MinCostOutcome::Infeasible => {
                report.status = "infeasible".into();
                report.r13 = Some(target.r13);
                report.r31 = Some(target.r31);
                None
            }
        }
    } else {
        let objective = a.objective.rate_objective(a.lambda)?;
        let r = best_allocation(bound, &g, &p, &samples, objective)?;
        let c = r.coherence.unwrap_or(CoherenceParams::NONE);
        report.beta = c.beta;
        report.gamma = c.gamma;
        Some(r)
    };
    if let Some(r) = &result {
        report.tau = Some(r.tau.0);
        report.r13 = Some(r.rates.r13);
        report.r31 = Some(r.rates.r31);
        report.value = Some(r.objective);
    }

    if a.json {
        json(out, &report)?;
    } else if let Some(r) = &result {
        io(writeln!(
            out,
            "bound {}\nobjective {}\nbeta {:.6}\ngamma {:.6}\ntau {}\nr13 {:.6}\nr31 {:.6}\nvalue {:.6}",
            report.bound,
            report.objective,
            report.beta,
            report.gamma,
            fmt_tau(&r.tau),
            r.rates.r13,
            r.rates.r31,
            r.objective
        ))?;
    } else {
        io(writeln!(out, "infeasible"))?;
    }
    match result {
        Some(_) => Ok(()),
        None => Err(Error::Infeasible),
    }
}

fn cmd_region(a: &RegionArgs, out: &mut dyn Write) -> Result<()> {
    let bound = a.bound.get();
    if a.geometry.bg_step.is_some() {
        return Err(Error::Usage("--bg-step is not supported by region".into()));
    }
    let g = a.geometry.gains(bound)?;
    let p = a.geometry.powers()?;
    let c = a.geometry.coherence(bound)?[0];
    let (region, mi) = build_region(bound, &g, &p, &c)?;
    let tau = match &a.tau {
        Some(t) => Some(TimeAllocation::new(t.as_slice().try_into().expect("clap enforces six values"))?),
        None => None,
    };
    let report = RegionReport {
        bound: bound_name(region.label()).into(),
        beta: c.beta,
        gamma: c.gamma,
        mi: mi_map(&mi),
        rows: region.constraints().iter().map(|r| RowReport { kind: r.kind.name().into(), coeffs: r.coeffs }).collect(),
        tau: tau.map(|t| t.0),
        caps: tau.map(|t| {
            let (a, b, s) = region.caps(&t);
            CapsReport { r13: finite(a), r31: finite(b), sum: finite(s) }
        }),
        vertices: tau.map(|t| region.vertices(&t).iter().map(|v| [v.r13, v.r31]).collect()),
    };
    if a.json {
        return json(out, &report);
    }
    io(writeln!(out, "bound {} beta {:.6} gamma {:.6}", report.bound, c.beta, c.gamma))?;
    for row in &report.rows {
        let coeffs: Vec<String> = row.coeffs.iter().map(|v| format!("{v:.6}")).collect();
        io(writeln!(out, "{} <= tau . [{}]", row.kind, coeffs.join(" ")))?;
    }
    if let (Some(caps), Some(vs)) = (&report.caps, &report.vertices) {
        let f = |v: Option<f64>| v.map_or("inf".to_string(), |v| format!("{v:.6}"));
        io(writeln!(out, "caps r13 {} r31 {} sum {}", f(caps.r13), f(caps.r31), f(caps.sum)))?;
        let vs: Vec<String> = vs.iter().map(|v| format!("({:.6}, {:.6})", v[0], v[1])).collect();
        io(writeln!(out, "vertices {}", vs.join(" ")))?;
    }
    Ok(())
}

fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let cfg = a.config()?;
    let grid = match a.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Usage(format!("cannot start {n} threads: {e}")))?
            .install(|| run_sweep_parallel(&cfg))?,
        None => run_sweep_parallel(&cfg)?,
    };
    write_grid(&grid, &a.out)?;
    for (pos, e) in grid.errors() {
        io(writeln!(err, "warning: cell ({}, {}): {e}", pos.x, pos.y))?;
    }
    let summary = SweepSummary {
        cells: grid.cells.len(),
        ok: grid.ok_cells().count(),
        errors: grid.errors().count(),
        max_df_over_twc: grid.max_df_over_twc(),
        output: a.out.display().to_string(),
    };
    if a.json {
        return json(out, &summary);
    }
    let max = summary.max_df_over_twc.map_or("nan".to_string(), |v| format!("{v:.6}"));
    io(writeln!(
        out,
        "cells {} ok {} errors {} objective {} max_df_over_twc {}",
        summary.cells,
        summary.ok,
        summary.errors,
        objective_name(cfg.objective),
        max
    ))
}

pub fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Wireline(a) => cmd_wireline(a, out),
        Command::Allocate(a) => cmd_allocate(a, out),
        Command::Region(a) => cmd_region(a, out),
        Command::Sweep(a) => cmd_sweep(a, out, err),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
