//! `key = value` sweep configuration files.
//!
//! Recognised keys: `x_min x_max y_min y_max step bg_step alpha power p1 p2 p3
//! objective lambda node1 node3`. Points are written `x,y`. `power` sets all
//! three node powers and is applied before `p1`..`p3` regardless of order.

use std::path::Path;

use twrc_core::{Point, RateObjective, SweepConfig};

use crate::error::{Error, Result};

/// Objectives a sweep can maximize.
pub fn parse_objective(name: &str, lambda: Option<f64>) -> std::result::Result<RateObjective, String> {
    match (name, lambda) {
        ("maxmin", None) => Ok(RateObjective::MaxMin),
        ("srmax", None) => Ok(RateObjective::SumRate),
        ("wsrmax", Some(l)) => RateObjective::weighted(l).map_err(|e| e.to_string()),
        ("wsrmax", None) => Err("wsrmax needs lambda".into()),
        ("maxmin" | "srmax", Some(_)) => Err("lambda is only valid with wsrmax".into()),
        (other, _) => Err(format!("unknown objective '{other}'")),
    }
}

pub fn objective_name(o: RateObjective) -> &'static str {
    match o {
        RateObjective::SumRate => "srmax",
        RateObjective::WeightedSumRate(_) => "wsrmax",
        RateObjective::MaxMin => "maxmin",
    }
}

fn parse_point(v: &str) -> Option<Point> {
    let (x, y) = v.split_once(',')?;
    Some(Point::new(x.trim().parse().ok()?, y.trim().parse().ok()?))
}

pub fn parse_config(text: &str) -> Result<SweepConfig> {
    let mut cfg = SweepConfig::default();
    let mut power = None;
    let mut per_node = [None; 3];
    let mut objective = None;
    let mut lambda = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: i + 1, msg };
        let (key, value) = line.split_once('=').ok_or_else(|| err(format!("expected key = value, got '{line}'")))?;
        let (key, value) = (key.trim(), value.trim());
        let num = || value.parse::<f64>().map_err(|_| err(format!("{key}: not a number: '{value}'")));
        match key {
            "x_min" => cfg.x_min = num()?,
            "x_max" => cfg.x_max = num()?,
            "y_min" => cfg.y_min = num()?,
            "y_max" => cfg.y_max = num()?,
            "step" => cfg.step = num()?,
            "bg_step" => cfg.bg_step = num()?,
            "alpha" => cfg.alpha = num()?,
            "power" => power = Some(num()?),
            "p1" => per_node[0] = Some(num()?),
            "p2" => per_node[1] = Some(num()?),
            "p3" => per_node[2] = Some(num()?),
            "lambda" => lambda = Some(num()?),
            "objective" => objective = Some(value.to_string()),
            "node1" => cfg.node1 = parse_point(value).ok_or_else(|| err(format!("node1: expected x,y, got '{value}'")))?,
            "node3" => cfg.node3 = parse_point(value).ok_or_else(|| err(format!("node3: expected x,y, got '{value}'")))?,
            _ => return Err(err(format!("unknown key '{key}'"))),
        }
    }
    if let Some(p) = power {
        cfg.powers.p1 = p;
        cfg.powers.p2 = p;
        cfg.powers.p3 = p;
    }
    for (slot, v) in [&mut cfg.powers.p1, &mut cfg.powers.p2, &mut cfg.powers.p3].into_iter().zip(per_node) {
        if let Some(v) = v {
            *slot = v;
        }
    }
    if objective.is_some() || lambda.is_some() {
        let name = objective.as_deref().unwrap_or("maxmin");
        cfg.objective = parse_objective(name, lambda).map_err(|msg| Error::Parse { line: 0, msg })?;
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn read_config(path: &Path) -> Result<SweepConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text)
}

/// Renders a config that [`parse_config`] reads back unchanged.
pub fn format_config(cfg: &SweepConfig) -> String {
    let mut s = format!(
        "x_min = {}\nx_max = {}\ny_min = {}\ny_max = {}\nstep = {}\nbg_step = {}\nalpha = {}\np1 = {}\np2 = {}\np3 = {}\nnode1 = {},{}\nnode3 = {},{}\nobjective = {}\n",
        cfg.x_min,
        cfg.x_max,
        cfg.y_min,
        cfg.y_max,
        cfg.step,
        cfg.bg_step,
        cfg.alpha,
        cfg.powers.p1,
        cfg.powers.p2,
        cfg.powers.p3,
        cfg.node1.x,
        cfg.node1.y,
        cfg.node3.x,
        cfg.node3.y,
        objective_name(cfg.objective),
    );
    if let RateObjective::WeightedSumRate(l) = cfg.objective {
        s.push_str(&format!("lambda = {l}\n"));
    }
    s
}
