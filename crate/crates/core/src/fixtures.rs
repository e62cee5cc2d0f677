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

//! Built-in ballot sets from the November 2022 Oakland District 4 School
//! Director election, plus a handful of hand-made malformed ballots.
//!
//! * `oakland-table1`: the aggregated three-candidate profile (26,432 ballots,
//!   write-ins dropped).
//! * `oakland-full-synthetic`: the same profile with write-in and blank-first
//!   ballots added back so that the official round totals are reproduced
//!   (26,569 ballots). It is not the real CVR.
//! * `table2-examples`: six differently malformed ballots over A..E that all
//!   mean A > B under Alameda rules.

use crate::cvr::RawBallot;
use crate::error::{Error, Result};
use crate::profile::PreferenceProfile;
use crate::roster::{Cand, Candidate, CandidateRoster};
use crate::sanitize::{sanitize_all, SanitizePolicy};

pub const OAKLAND_TABLE1: &str = "oakland-table1";
pub const OAKLAND_FULL_SYNTHETIC: &str = "oakland-full-synthetic";
pub const TABLE2_EXAMPLES: &str = "table2-examples";

pub const FIXTURE_NAMES: [&str; 3] = [OAKLAND_TABLE1, OAKLAND_FULL_SYNTHETIC, TABLE2_EXAMPLES];

/// Oakland ballot types (H = Hutchinson, M = Manigo, R = Resnick) and counts.
const OAKLAND_TYPES: [(&[&str], u64); 15] = [
    (&["H", "M", "R"], 2283),
    (&["H", "M"], 1280),
    (&["H", "R", "M"], 1807),
    (&["H", "R"], 530),
    (&["H"], 2327),
    (&["M", "H", "R"], 1734),
    (&["M", "H"], 2460),
    (&["M", "R", "H"], 1421),
    (&["M", "R"], 729),
    (&["M"], 1846),
    (&["R", "H", "M"], 2171),
    (&["R", "H"], 924),
    (&["R", "M", "H"], 2246),
    (&["R", "M"], 934),
    (&["R"], 3740),
];

/// Single-choice ballots turned into write-in-first / blank-first ballots
/// for the synthetic full CVR: (candidate, write-in first, blank first).
const SYNTHETIC_CONVERSIONS: [(&str, u64, u64); 3] = [("H", 80, 35), ("M", 14, 23), ("R", 38, 23)];

/// Ballots ranking only a write-in.
const SYNTHETIC_WRITEIN_ONLY: u64 = 137;

/// A named ballot set with its roster.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub roster: CandidateRoster,
    pub ballots: Vec<RawBallot>,
}

impl Fixture {
    /// Sanitizes the ballots into a profile.
    pub fn profile(&self, policy: SanitizePolicy) -> PreferenceProfile {
        sanitize_all(&self.ballots, policy, &self.roster).0
    }
}

pub fn load_builtin_fixture(name: &str) -> Result<Fixture> {
    match name {
        OAKLAND_TABLE1 => Ok(Fixture {
            name: OAKLAND_TABLE1,
            roster: oakland_official_roster(),
            ballots: oakland_table1_ballots(),
        }),
        OAKLAND_FULL_SYNTHETIC => Ok(Fixture {
            name: OAKLAND_FULL_SYNTHETIC,
            roster: oakland_roster(),
            ballots: oakland_full_synthetic_ballots(),
        }),
        TABLE2_EXAMPLES => Ok(Fixture {
            name: TABLE2_EXAMPLES,
            roster: abcde_roster(),
            ballots: table2_ballots(),
        }),
        _ => Err(Error::UnknownFixture {
            name: name.to_string(),
            available: FIXTURE_NAMES.iter().map(|s| s.to_string()).collect(),
        }),
    }
}

/// Hutchinson, Manigo, Resnick.
pub fn oakland_official_roster() -> CandidateRoster {
    CandidateRoster::new(vec![
        Candidate::official("H", "Mike Hutchinson"),
        Candidate::official("M", "Pecolia Manigo"),
        Candidate::official("R", "Nick Resnick"),
    ])
    .expect("static roster")
}

/// The three official candidates plus the two write-in lines on the ballot.
pub fn oakland_roster() -> CandidateRoster {
    let mut cands = oakland_official_roster().candidates().to_vec();
    cands.push(Candidate::writein("WI1", "Write-in 1"));
    cands.push(Candidate::writein("WI2", "Write-in 2"));
    CandidateRoster::new(cands).expect("static roster")
}

/// The `oakland-table1` profile, built directly.
pub fn oakland_table1_profile() -> PreferenceProfile {
    let mut p = PreferenceProfile::new(oakland_official_roster());
    for (ids, n) in OAKLAND_TYPES {
        p.add_ids(ids, n).expect("static profile");
    }
    p
}

fn resolve(roster: &CandidateRoster, ids: &[&str]) -> Vec<Cand> {
    roster.resolve(ids).expect("static ids")
}

struct IdGen {
    prefix: &'static str,
    next: u64,
}

impl IdGen {
    fn next(&mut self) -> String {
        self.next += 1;
        format!("{}-{:06}", self.prefix, self.next)
    }
}

fn oakland_table1_ballots() -> Vec<RawBallot> {
    let roster = oakland_official_roster();
    let mut ids = IdGen {
        prefix: "t1",
        next: 0,
    };
    let mut out = Vec::with_capacity(26_432);
    for (names, n) in OAKLAND_TYPES {
        let order = resolve(&roster, names);
        for _ in 0..n {
            out.push(RawBallot::ranked(ids.next(), &order));
        }
    }
    out
}

fn oakland_full_synthetic_ballots() -> Vec<RawBallot> {
    let roster = oakland_roster();
    let wi1 = roster.find("WI1").expect("static roster");
    let mut ids = IdGen {
        prefix: "syn",
        next: 0,
    };
    let mut out = Vec::with_capacity(26_569);
    for (names, n) in OAKLAND_TYPES {
        let order = resolve(&roster, names);
        let conversion = match names {
            [single] => SYNTHETIC_CONVERSIONS.iter().find(|(id, _, _)| id == single),
            _ => None,
        };
        let (writein_first, blank_first) = conversion.map_or((0, 0), |&(_, w, b)| (w, b));
        for _ in 0..n - writein_first - blank_first {
            out.push(RawBallot::ranked(ids.next(), &order));
        }
        for _ in 0..writein_first {
            out.push(RawBallot::new(ids.next(), vec![vec![wi1], order.clone()]));
        }
        for _ in 0..blank_first {
            out.push(RawBallot::new(ids.next(), vec![vec![], order.clone()]));
        }
    }
    for _ in 0..SYNTHETIC_WRITEIN_ONLY {
        out.push(RawBallot::new(ids.next(), vec![vec![wi1]]));
    }
    out
}

fn abcde_roster() -> CandidateRoster {
    CandidateRoster::new(
        ["A", "B", "C", "D", "E"]
            .iter()
            .map(|id| Candidate::official(id, &format!("Candidate {id}")))
            .collect(),
    )
    .expect("static roster")
}

fn table2_ballots() -> Vec<RawBallot> {
    let (a, b, c, d, e) = (Cand(0), Cand(1), Cand(2), Cand(3), Cand(4));
    let rows: [(&str, Vec<Vec<Cand>>); 6] = [
        ("ballot-1", vec![vec![a], vec![b], vec![], vec![], vec![]]),
        ("ballot-2", vec![vec![], vec![], vec![a], vec![b], vec![]]),
        ("ballot-3", vec![vec![], vec![a], vec![], vec![], vec![b]]),
        ("ballot-4", vec![vec![a], vec![b], vec![c, d], vec![e], vec![]]),
        ("ballot-5", vec![vec![], vec![a], vec![], vec![b], vec![c, d]]),
        ("ballot-6", vec![vec![a], vec![a], vec![b], vec![], vec![b]]),
    ];
    rows.into_iter()
        .map(|(id, slots)| RawBallot::new(id, slots))
        .collect()
}
