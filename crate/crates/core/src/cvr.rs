// Copyright 2026 The rcv-forensics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Cast vote record ingestion.
//!
//! Rosters are a single JSON document:
//!
//! ```json
//! {"candidates": [{"id": "H", "name": "Mike Hutchinson", "writein": false}]}
//! ```
//!
//! A CVR is newline-delimited JSON, one ballot per line. Each rank slot is an
//! array of candidate ids: `[]` is a skipped rank and two or more ids form an
//! overvote. Trailing empty slots may be omitted.
//!
//! ```json
//! {"ballot_id": "b2", "ranks": [["A"], ["B", "C"], ["D"]]}
//! ```

use crate::error::{Error, Result};
use crate::roster::{Cand, Candidate, CandidateRoster};
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Read};

/// A ballot as cast: one entry per rank slot, each holding zero, one or
/// several candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawBallot {
    pub ballot_id: String,
    pub slots: Vec<Vec<Cand>>,
}

impl RawBallot {
    /// Builds a ballot, deduplicating candidates inside each slot. A ballot
    /// always has at least one slot.
    pub fn new(ballot_id: impl Into<String>, slots: Vec<Vec<Cand>>) -> Self {
        let mut slots: Vec<Vec<Cand>> = slots
            .into_iter()
            .map(|slot| {
                let mut seen = Vec::with_capacity(slot.len());
                for c in slot {
                    if !seen.contains(&c) {
                        seen.push(c);
                    }
                }
                seen
            })
            .collect();
        if slots.is_empty() {
            slots.push(Vec::new());
        }
        RawBallot {
            ballot_id: ballot_id.into(),
            slots,
        }
    }

    /// Convenience constructor from a fully ranked, error-free order.
    pub fn ranked(ballot_id: impl Into<String>, order: &[Cand]) -> Self {
        Self::new(ballot_id, order.iter().map(|&c| vec![c]).collect())
    }
}

#[derive(Deserialize)]
struct RosterFile {
    candidates: Vec<Candidate>,
}

#[derive(Serialize, Deserialize)]
struct CvrLine {
    ballot_id: String,
    ranks: Vec<Vec<String>>,
}

fn json_error(e: serde_json::Error, line_offset: usize) -> Error {
    Error::Parse {
        line: e.line() + line_offset,
        message: e.to_string(),
    }
}

/// Reads a roster document, preserving candidate order.
pub fn load_roster(mut source: impl Read) -> Result<CandidateRoster> {
    let mut text = String::new();
    source.read_to_string(&mut text).map_err(|e| Error::Parse {
        line: 0,
        message: e.to_string(),
    })?;
    let doc: RosterFile = serde_json::from_str(&text).map_err(|e| json_error(e, 0))?;
    CandidateRoster::new(doc.candidates)
}

/// Parses a newline-delimited CVR. Blank lines are ignored; line numbers in
/// errors are 1-based.
pub fn parse_cvr(source: impl BufRead, roster: &CandidateRoster) -> Result<Vec<RawBallot>> {
    let mut ballots = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: CvrLine = serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        let mut slots = Vec::with_capacity(rec.ranks.len());
        for slot in &rec.ranks {
            let mut resolved = Vec::with_capacity(slot.len());
            for id in slot {
                let cand = roster.find(id).ok_or_else(|| Error::UnknownCandidate {
                    ballot_id: rec.ballot_id.clone(),
                    candidate: id.clone(),
                })?;
                resolved.push(cand);
            }
            slots.push(resolved);
        }
        ballots.push(RawBallot::new(rec.ballot_id, slots));
    }
    Ok(ballots)
}

/// Serializes one ballot as a CVR line (without the trailing newline).
pub fn ballot_line(ballot: &RawBallot, roster: &CandidateRoster) -> String {
    let rec = CvrLine {
        ballot_id: ballot.ballot_id.clone(),
        ranks: ballot.slots.iter().map(|s| roster.ids(s)).collect(),
    };
    serde_json::to_string(&rec).expect("CVR line serializes")
}

/// Serializes ballots in the line-oriented CVR format accepted by [`parse_cvr`].
pub fn emit_cvr(ballots: &[RawBallot], roster: &CandidateRoster) -> String {
    let mut out = String::new();
    for b in ballots {
        out.push_str(&ballot_line(b, roster));
        out.push('\n');
    }
    out
}
