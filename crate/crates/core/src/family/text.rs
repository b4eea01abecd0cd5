//! Plain-text family format.
//!
//! ```text
//! # optional comments
//! n=7
//! 1 2 3
//! 1 4 5
//! ```
//!
//! One member per line, strictly increasing 1-based elements. The empty
//! member is written `{}`. Blank lines are ignored.

use std::fmt::Write as _;

use super::{SetFamily, SubsetBits, MAX_GROUND};
use crate::error::{Error, Result};

pub fn parse_family(input: &str) -> Result<SetFamily> {
    let mut n: Option<usize> = None;
    let mut members = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        if let Some(value) = line.strip_prefix("n=") {
            if n.is_some() {
                return Err(err("duplicate header".into()));
            }
            let v: usize = value
                .trim()
                .parse()
                .map_err(|_| err(format!("bad ground size {value:?}")))?;
            if v == 0 || v > MAX_GROUND {
                return Err(err(format!(
                    "ground size {v} out of range 1..={MAX_GROUND}"
                )));
            }
            n = Some(v);
            continue;
        }
        let n = n.ok_or_else(|| err("member before the n=<int> header".into()))?;
        if line == "{}" {
            members.push(SubsetBits::empty(n));
            continue;
        }
        let mut set = SubsetBits::empty(n);
        let mut prev = 0usize;
        for tok in line.split_whitespace() {
            let e: usize = tok
                .parse()
                .map_err(|_| err(format!("bad element {tok:?}")))?;
            if e == 0 || e > n {
                return Err(err(format!("element {e} outside [1..={n}]")));
            }
            if e <= prev {
                return Err(err(format!(
                    "elements must be strictly increasing ({prev} then {e})"
                )));
            }
            prev = e;
            set.insert(e);
        }
        members.push(set);
    }
    let n = n.ok_or(Error::Parse {
        line: input.lines().count().max(1),
        message: "missing n=<int> header".into(),
    })?;
    SetFamily::new(n, members)
}

pub fn write_family(family: &SetFamily) -> String {
    let mut out = format!("n={}\n", family.n());
    for m in family.members() {
        if m.is_empty() {
            out.push_str("{}\n");
            continue;
        }
        let mut first = true;
        for e in m.elements() {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{e}");
        }
        out.push('\n');
    }
    out
}

impl std::fmt::Display for SetFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&write_family(self))
    }
}
