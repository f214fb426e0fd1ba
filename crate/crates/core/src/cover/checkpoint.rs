//! Resumable-scan bookkeeping: a plain text file recording the identity of
//! the scan and the indices of completed chunks.
//!
//! Format:
//! ```text
//! unising-checkpoint v1
//! r=3 p=47 d=23 strategy=scalar_normalized mode=least range=0..94143178827 chunk=1048576 functional=1,0,...
//! done 0
//! witness 1 2 0 ...
//! done 17
//! ```
//! A `witness` line records the digits of an uncovered vector found in the
//! most recently completed chunk, so a resumed deterministic run can keep
//! pruning above it.

use crate::error::{Error, Result};
use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

const MAGIC: &str = "unising-checkpoint v1";

pub struct Checkpoint {
    path: PathBuf,
    file: File,
}

pub struct CheckpointState {
    pub done: HashSet<u64>,
    /// Canonical value of the best recorded witness, if any.
    pub candidate: Option<u64>,
}

impl Checkpoint {
    /// Open or create a checkpoint for the scan identified by `header`.
    /// An existing file must carry the same header; its progress is returned.
    pub fn open(path: &Path, header: &str) -> Result<(Checkpoint, CheckpointState)> {
        let mut state = CheckpointState { done: HashSet::new(), candidate: None };
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            let mut lines = reader.lines();
            match lines.next().transpose()? {
                Some(l) if l == MAGIC => {}
                other => {
                    return Err(Error::Checkpoint(format!(
                        "{} does not start with '{MAGIC}' (got {other:?})",
                        path.display()
                    )))
                }
            }
            match lines.next().transpose()? {
                Some(l) if l == header => {}
                Some(l) => {
                    return Err(Error::Checkpoint(format!(
                        "scan identity changed\n  file:    {l}\n  request: {header}"
                    )))
                }
                None => return Err(Error::Checkpoint("missing header line".into())),
            }
            for line in lines {
                let line = line?;
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                if let Some(idx) = line.strip_prefix("done ") {
                    let idx =
                        idx.trim().parse::<u64>().map_err(|e| Error::Checkpoint(e.to_string()))?;
                    state.done.insert(idx);
                } else if let Some(digits) = line.strip_prefix("witness ") {
                    let v = parse_witness(digits, header)?;
                    state.candidate = Some(state.candidate.map_or(v, |c: u64| c.min(v)));
                } else {
                    return Err(Error::Checkpoint(format!("unrecognized line '{line}'")));
                }
            }
        } else {
            let mut f = File::create(path)?;
            writeln!(f, "{MAGIC}")?;
            writeln!(f, "{header}")?;
            f.sync_all()?;
        }
        let file = OpenOptions::new().append(true).open(path)?;
        Ok((Checkpoint { path: path.to_path_buf(), file }, state))
    }

    pub fn record_done(&mut self, chunk: u64, witness: Option<&[u64]>) -> Result<()> {
        if let Some(w) = witness {
            let digits: Vec<String> = w.iter().map(|c| c.to_string()).collect();
            writeln!(self.file, "witness {}", digits.join(" "))?;
        }
        writeln!(self.file, "done {chunk}")?;
        self.file.flush()?;
        Ok(())
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}

/// Witness digits back to a canonical value, using r and d from the header.
fn parse_witness(digits: &str, header: &str) -> Result<u64> {
    let mut r = None;
    let mut d = None;
    for tok in header.split_whitespace() {
        if let Some(v) = tok.strip_prefix("r=") {
            r = v.parse::<u64>().ok();
        } else if let Some(v) = tok.strip_prefix("d=") {
            d = v.parse::<usize>().ok();
        }
    }
    let (r, d) = match (r, d) {
        (Some(r), Some(d)) => (r, d),
        _ => return Err(Error::Checkpoint("header is missing r= or d=".into())),
    };
    let vals: Vec<u64> = digits
        .split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|e| Error::Checkpoint(e.to_string())))
        .collect::<Result<_>>()?;
    if vals.len() != d || vals.iter().any(|&c| c >= r) {
        return Err(Error::Checkpoint(format!("bad witness line '{digits}'")));
    }
    Ok(vals.iter().rev().fold(0u64, |acc, &c| acc * r + c))
}
