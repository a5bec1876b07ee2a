//! Bit-pipe schedules on the fully connected three-node wireline network.
//!
//! Every directed link carries one reliable bit per step and no node may send
//! and receive in the same step. A schedule is scored by delivered dialog bits
//! per step (bps), directed link uses per delivered bit (lpb) and transmitter
//! activations per delivered bit (npb), where an activation is one node
//! transmitting during one step, however many links it drives.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Link {
    pub src: u8,
    pub dst: u8,
    pub bit: String,
}

impl Link {
    pub fn new(src: u8, dst: u8, bit: impl Into<String>) -> Self {
        Self { src, dst, bit: bit.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitPipeScheme {
    pub name: String,
    pub steps: Vec<Vec<Link>>,
}

impl BitPipeScheme {
    pub fn new(name: impl Into<String>, steps: Vec<Vec<Link>>) -> Self {
        Self { name: name.into(), steps }
    }

    /// `copies` back-to-back repetitions, with the bits of copy `k > 0`
    /// relabelled `<bit>#k` so each copy carries fresh information.
    pub fn repeated(&self, copies: usize) -> Self {
        let mut steps = Vec::with_capacity(self.steps.len() * copies);
        for k in 0..copies {
            for step in &self.steps {
                steps.push(
                    step.iter()
                        .map(|l| {
                            let bit = if k == 0 { l.bit.clone() } else { format!("{}#{k}", l.bit) };
                            Link { src: l.src, dst: l.dst, bit }
                        })
                        .collect(),
                );
            }
        }
        Self { name: self.name.clone(), steps }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeMetrics {
    pub steps: usize,
    pub delivered_bits: usize,
    pub link_uses: usize,
    pub activations: usize,
    /// Delivered bits per step.
    pub bps: f64,
    /// Link uses per delivered bit.
    pub lpb: f64,
    /// Transmitter activations per delivered bit.
    pub npb: f64,
}

fn check_node(n: u8) -> Result<()> {
    if (1..=3).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidNode(n))
    }
}

struct Trace {
    link_uses: usize,
    activations: usize,
    delivered: usize,
}

/// Replays the schedule, tracking which node holds which bit.
fn trace(s: &BitPipeScheme) -> Result<Trace> {
    // bit -> originating dialog node
    let mut origin: BTreeMap<&str, u8> = BTreeMap::new();
    let mut holds: [BTreeSet<&str>; 3] = [BTreeSet::new(), BTreeSet::new(), BTreeSet::new()];
    let mut delivered: BTreeSet<&str> = BTreeSet::new();
    let mut out = Trace { link_uses: 0, activations: 0, delivered: 0 };

    for (i, step) in s.steps.iter().enumerate() {
        let step_no = i + 1;
        let mut senders = BTreeSet::new();
        let mut receivers = BTreeSet::new();
        let mut used = BTreeSet::new();
        for l in step {
            check_node(l.src)?;
            check_node(l.dst)?;
            if l.src == l.dst {
                return Err(Error::HalfDuplexViolation { step: step_no, node: l.src });
            }
            if !used.insert((l.src, l.dst)) {
                return Err(Error::DuplicateLink { step: step_no, src: l.src, dst: l.dst });
            }
            senders.insert(l.src);
            receivers.insert(l.dst);
        }
        if let Some(&node) = senders.intersection(&receivers).next() {
            return Err(Error::HalfDuplexViolation { step: step_no, node });
        }

        let mut received: Vec<(u8, &str)> = Vec::new();
        for l in step {
            let bit = l.bit.as_str();
            let src = l.src as usize - 1;
            if !holds[src].contains(bit) {
                if l.src != 2 && !origin.contains_key(bit) {
                    origin.insert(bit, l.src);
                    holds[src].insert(bit);
                } else {
                    return Err(Error::UnknownBitViolation { step: step_no, node: l.src, bit: bit.to_string() });
                }
            }
            received.push((l.dst, bit));
        }
        for (dst, bit) in received {
            holds[dst as usize - 1].insert(bit);
            let target = if origin[bit] == 1 { 3 } else { 1 };
            if dst == target {
                delivered.insert(bit);
            }
        }
        out.link_uses += step.len();
        out.activations += senders.len();
    }
    out.delivered = delivered.len();
    Ok(out)
}

/// Checks node ids, link reuse, the half-duplex rule and that every bit is
/// sent only by its originator or by a node that received it earlier.
pub fn validate_scheme(s: &BitPipeScheme) -> Result<()> {
    trace(s).map(|_| ())
}

pub fn evaluate_scheme(s: &BitPipeScheme) -> Result<SchemeMetrics> {
    let t = trace(s)?;
    if t.delivered == 0 {
        return Err(Error::Domain(format!("scheme '{}' delivers no dialog bits", s.name)));
    }
    let d = t.delivered as f64;
    Ok(SchemeMetrics {
        steps: s.steps.len(),
        delivered_bits: t.delivered,
        link_uses: t.link_uses,
        activations: t.activations,
        bps: d / s.steps.len() as f64,
        lpb: t.link_uses as f64 / d,
        npb: t.activations as f64 / d,
    })
}

fn step(links: &[(u8, u8, &str)]) -> Vec<Link> {
    links.iter().map(|&(s, d, b)| Link::new(s, d, b)).collect()
}

/// Names accepted by [`builtin_scheme`].
pub const BUILTIN_NAMES: [&str; 5] = ["twc", "two-step", "three-step", "three-step-alt", "four-step"];

/// One of the five reference schedules by name. `alt-three-step` is accepted
/// as an alias of `three-step-alt`.
pub fn builtin_scheme(name: &str) -> Option<BitPipeScheme> {
    let steps = match name {
        // direct exchange, relay idle
        "twc" => vec![step(&[(1, 3, "b1")]), step(&[(3, 1, "b2")])],
        // both to the relay, relay forwards both
        "two-step" => vec![
            step(&[(1, 2, "b1"), (3, 2, "b2")]),
            step(&[(2, 1, "b2"), (2, 3, "b1")]),
        ],
        "three-step" => vec![
            step(&[(1, 2, "b1"), (3, 2, "b2")]),
            step(&[(2, 1, "b2"), (3, 1, "b3")]),
            step(&[(2, 3, "b1"), (1, 3, "b4")]),
        ],
        // each dialog node broadcasts, relay forwards once
        "three-step-alt" | "alt-three-step" => vec![
            step(&[(1, 2, "b1"), (1, 3, "b2")]),
            step(&[(3, 2, "b3"), (3, 1, "b4")]),
            step(&[(2, 1, "b3"), (2, 3, "b1")]),
        ],
        "four-step" => vec![
            step(&[(1, 2, "b1"), (1, 3, "b2")]),
            step(&[(2, 3, "b1"), (1, 3, "b3")]),
            step(&[(3, 2, "b4"), (3, 1, "b5")]),
            step(&[(2, 1, "b4"), (3, 1, "b6")]),
        ],
        _ => return None,
    };
    let canonical = if name == "alt-three-step" { "three-step-alt" } else { name };
    Some(BitPipeScheme::new(canonical, steps))
}

pub fn builtin_schemes() -> Vec<BitPipeScheme> {
    BUILTIN_NAMES.iter().filter_map(|n| builtin_scheme(n)).collect()
}
