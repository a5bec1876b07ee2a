//! Plain-text bit-pipe schedules.
//!
//! One step per line, links separated by commas, each written `src>dst:bit`.
//! A line holding only `-` is an idle step. `#` starts a comment.
//!
//! ```text
//! # two-step relaying
//! 1>2:a, 3>2:b
//! 2>1:b, 2>3:a
//! ```

use std::path::Path;

use twrc_core::{validate_scheme, BitPipeScheme, Link};

use crate::error::{Error, Result};

fn parse_link(s: &str, line: usize) -> Result<Link> {
    let err = |msg: String| Error::Parse { line, msg };
    let (nodes, bit) = s.split_once(':').ok_or_else(|| err(format!("expected src>dst:bit, got '{s}'")))?;
    let (src, dst) = nodes.split_once('>').ok_or_else(|| err(format!("expected src>dst, got '{nodes}'")))?;
    let node = |t: &str| t.trim().parse::<u8>().map_err(|_| err(format!("bad node id '{}'", t.trim())));
    let bit = bit.trim();
    if bit.is_empty() || bit.contains(char::is_whitespace) {
        return Err(err(format!("bad bit label '{bit}'")));
    }
    Ok(Link::new(node(src)?, node(dst)?, bit))
}

/// Parses a schedule without checking it; see [`read_scheme`].
pub fn parse_scheme(name: &str, text: &str) -> Result<BitPipeScheme> {
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line == "-" {
            steps.push(Vec::new());
            continue;
        }
        let links = line
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| parse_link(s, i + 1))
            .collect::<Result<Vec<_>>>()?;
        steps.push(links);
    }
    if steps.is_empty() {
        return Err(Error::Parse { line: 0, msg: "scheme has no steps".into() });
    }
    Ok(BitPipeScheme::new(name, steps))
}

/// Reads and validates a schedule file. The scheme is named after the file stem.
pub fn read_scheme(path: &Path) -> Result<BitPipeScheme> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("scheme");
    let scheme = parse_scheme(name, &text)?;
    validate_scheme(&scheme)?;
    Ok(scheme)
}

pub fn format_scheme(s: &BitPipeScheme) -> String {
    let mut out = String::new();
    for step in &s.steps {
        if step.is_empty() {
            out.push('-');
        } else {
            let links: Vec<String> = step.iter().map(|l| format!("{}>{}:{}", l.src, l.dst, l.bit)).collect();
            out.push_str(&links.join(", "));
        }
        out.push('\n');
    }
    out
}
