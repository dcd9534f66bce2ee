//! Text formats: partition systems and `key=value` provenance sidecars.
//!
//! Partition system:
//! ```text
//! p partition <u> <d> <m>
//! P <cell of 0> <cell of 1> ... <cell of u-1>     (m lines)
//! ```
//! Lines starting with `c` or `#` and blank lines are ignored.

use std::fmt::Write;

use subexp_core::Error;

use crate::error::Result;
use crate::partition::PartitionSystem;

fn parse_err(line: usize, message: impl Into<String>) -> crate::error::HardnessError {
    Error::Parse {
        line,
        message: message.into(),
    }
    .into()
}

pub fn write_partition_system(ps: &PartitionSystem) -> String {
    let mut out = format!(
        "p partition {} {} {}\n",
        ps.universe(),
        ps.cells(),
        ps.partition_count()
    );
    for i in 0..ps.partition_count() {
        out.push('P');
        for c in ps.partition(i) {
            write!(out, " {c}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_partition_system(text: &str) -> Result<PartitionSystem> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut parts = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
            continue;
        }
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(line_no, "duplicate header"));
                }
                if tok.next() != Some("partition") {
                    return Err(parse_err(line_no, "expected `p partition u d m`"));
                }
                let nums: Vec<usize> = tok
                    .map(|t| {
                        t.parse()
                            .map_err(|_| parse_err(line_no, format!("bad number {t:?}")))
                    })
                    .collect::<Result<_>>()?;
                let [u, d, m] = nums[..] else {
                    return Err(parse_err(line_no, "expected `p partition u d m`"));
                };
                header = Some((u, d, m));
            }
            Some("P") => {
                let Some((u, d, _)) = header else {
                    return Err(parse_err(line_no, "partition before header"));
                };
                let cells: Vec<usize> = tok
                    .map(|t| {
                        t.parse()
                            .map_err(|_| parse_err(line_no, format!("bad cell {t:?}")))
                    })
                    .collect::<Result<_>>()?;
                if cells.len() != u {
                    return Err(parse_err(
                        line_no,
                        format!("expected {u} cells, found {}", cells.len()),
                    ));
                }
                if let Some(&c) = cells.iter().find(|&&c| c >= d) {
                    return Err(parse_err(line_no, format!("cell {c} outside 0..{d}")));
                }
                parts.push(cells);
            }
            Some(other) => return Err(parse_err(line_no, format!("unknown line type {other:?}"))),
            None => unreachable!("blank lines are skipped"),
        }
    }
    let Some((u, d, m)) = header else {
        return Err(parse_err(last_line.max(1), "missing header"));
    };
    if parts.len() != m {
        return Err(parse_err(
            last_line.max(1),
            format!("expected {m} partitions, found {}", parts.len()),
        ));
    }
    PartitionSystem::new(u, d, parts)
}

/// Ordered `key=value` record of how an instance was produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Provenance {
    pub entries: Vec<(String, String)>,
}

impl Provenance {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.entries.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn write(&self) -> String {
        self.entries
            .iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| parse_err(i + 1, "expected key=value"))?;
            let k = k.trim();
            if k.is_empty() || k.contains(char::is_whitespace) {
                return Err(parse_err(i + 1, format!("bad key {k:?}")));
            }
            entries.push((k.to_string(), v.trim().to_string()));
        }
        Ok(Provenance { entries })
    }
}
