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

//! Detection of RCV pathologies, each reported as a replayable witness.
//!
//! All searches work on ballot types already present in the profile and
//! scan every edit size `t` linearly: the winner need not be monotone in
//! `t`, so bisection could miss or misplace a paradox.
//!
//! * spoiler: removing a set of losing candidates changes the winner;
//! * downward monotonicity: moving a loser one place down on `t` ballots of
//!   one type makes that loser win;
//! * upward monotonicity: moving the winner one place up makes them lose;
//! * no-show: `t` voters of one type abstain and get a result they prefer;
//! * compromise: `t` voters of one type rank a non-favourite first and get
//!   a result they prefer.
//!
//! Edits that end in an elimination tie (or leave no ballots) are never
//! witnesses; they are listed as boundary cases instead.

mod oracle;
mod search;

pub use oracle::{brute_force_oracle, OracleBounds};
pub use search::{
    audit, find_spoilers, search_compromise, search_monotonicity, search_noshow,
};

use crate::error::{Error, Result};
use crate::methods::{rcv_tabulate, RcvOptions};
use crate::profile::{prefers, promoted, shifted, CleanBallot, Direction, PreferenceProfile};
use crate::roster::{Cand, CandidateRoster};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MonotonicityDirection {
    /// A loser is moved down and wins.
    Downward,
    /// The winner is moved up and loses.
    Upward,
}

impl MonotonicityDirection {
    /// Direction in which the focal candidate is shifted.
    pub fn shift(self) -> Direction {
        match self {
            MonotonicityDirection::Downward => Direction::Down,
            MonotonicityDirection::Upward => Direction::Up,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MonotonicityDirection::Downward => "downward",
            MonotonicityDirection::Upward => "upward",
        }
    }
}

/// Shifting `focal_candidate` one place on any `t` in
/// `min_count..=max_count` ballots of `ballot_type` elects `new_winner`.
/// `t = min_count - 1` does not.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonotonicityWitness {
    pub direction: MonotonicityDirection,
    pub focal_candidate: Cand,
    pub ballot_type: CleanBallot,
    pub modified_type: CleanBallot,
    pub min_count: u64,
    pub max_count: u64,
    pub original_winner: Cand,
    pub new_winner: Cand,
}

/// Removing `count` ballots of `ballot_type` elects a candidate those
/// voters prefer. `count` is minimal for this (type, new winner) pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NoShowWitness {
    pub ballot_type: CleanBallot,
    pub count: u64,
    pub original_winner: Cand,
    pub new_winner: Cand,
}

/// Moving `promoted_candidate` to first place on `count` ballots of
/// `ballot_type` elects a candidate those voters prefer. `count` is minimal
/// for this (type, promoted candidate, new winner) triple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompromiseWitness {
    pub ballot_type: CleanBallot,
    pub promoted_candidate: Cand,
    pub count: u64,
    pub original_winner: Cand,
    pub new_winner: Cand,
}

/// Withdrawing the (losing) candidates in `removed` changes the winner.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpoilerWitness {
    pub removed: Vec<Cand>,
    pub original_winner: Cand,
    pub new_winner: Cand,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Monotonicity(MonotonicityWitness),
    NoShow(NoShowWitness),
    Compromise(CompromiseWitness),
    Spoiler(SpoilerWitness),
}

/// A single replayable profile edit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Edit {
    RemoveCandidates {
        removed: Vec<Cand>,
    },
    Shift {
        ballot_type: CleanBallot,
        candidate: Cand,
        direction: Direction,
        count: u64,
    },
    RemoveBallots {
        ballot_type: CleanBallot,
        count: u64,
    },
    Promote {
        ballot_type: CleanBallot,
        candidate: Cand,
        count: u64,
    },
}

impl Edit {
    pub fn apply(&self, profile: &PreferenceProfile) -> Result<PreferenceProfile> {
        match self {
            Edit::RemoveCandidates { removed } => {
                profile.remove_candidates(&removed.iter().copied().collect())
            }
            Edit::Shift {
                ballot_type,
                candidate,
                direction,
                count,
            } => profile.shift_candidate(ballot_type, *candidate, *direction, *count),
            Edit::RemoveBallots { ballot_type, count } => {
                profile.remove_ballots(ballot_type, *count)
            }
            Edit::Promote {
                ballot_type,
                candidate,
                count,
            } => {
                let to = promoted(&ballot_type.ranking, *candidate).ok_or_else(|| {
                    Error::BoundaryPosition {
                        candidate: profile.roster().id(*candidate).to_string(),
                        direction: "to first",
                    }
                })?;
                profile.replace_ballots(ballot_type, &to, *count)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundaryReason {
    /// Elimination tie between these candidates (base roster indices).
    Tie(Vec<Cand>),
    /// The edit removed every ballot.
    NoBallots,
}

/// An edit whose outcome is undefined under the tie policy in force.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundaryCase {
    pub edit: Edit,
    pub reason: BoundaryReason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome<W> {
    pub witnesses: Vec<W>,
    pub boundary: Vec<BoundaryCase>,
}

impl<W: Ord> SearchOutcome<W> {
    pub(crate) fn sorted(mut witnesses: Vec<W>, mut boundary: Vec<BoundaryCase>) -> Self {
        witnesses.sort();
        boundary.sort();
        SearchOutcome {
            witnesses,
            boundary,
        }
    }
}

/// Output of every search over one profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Findings {
    pub original_winner: Cand,
    pub spoilers: SearchOutcome<SpoilerWitness>,
    pub downward: SearchOutcome<MonotonicityWitness>,
    pub upward: SearchOutcome<MonotonicityWitness>,
    pub noshow: SearchOutcome<NoShowWitness>,
    pub compromise: SearchOutcome<CompromiseWitness>,
}

impl Findings {
    pub fn witness_count(&self) -> usize {
        self.spoilers.witnesses.len()
            + self.downward.witnesses.len()
            + self.upward.witnesses.len()
            + self.noshow.witnesses.len()
            + self.compromise.witnesses.len()
    }
}

/// Winner after an edit, or why there is none.
pub(crate) enum Outcome {
    Winner(Cand),
    Boundary(BoundaryReason),
}

/// Maps tie / empty-profile errors to boundary outcomes; other errors pass
/// through. Tied ids are resolved against `base`.
pub(crate) fn classify(
    base: &CandidateRoster,
    result: Result<Cand>,
) -> Result<Outcome> {
    match result {
        Ok(w) => Ok(Outcome::Winner(w)),
        Err(Error::Tie { candidates }) => {
            let mut tied = base.resolve(&candidates)?;
            tied.sort();
            Ok(Outcome::Boundary(BoundaryReason::Tie(tied)))
        }
        Err(Error::EmptyProfile) => Ok(Outcome::Boundary(BoundaryReason::NoBallots)),
        Err(e) => Err(e),
    }
}

fn check_cand(roster: &CandidateRoster, c: Cand) -> Result<()> {
    if roster.contains(c) {
        Ok(())
    } else {
        Err(Error::MalformedWitness(format!("candidate {c} not in roster")))
    }
}

fn check_type(profile: &PreferenceProfile, ballot: &CleanBallot, count: u64) -> Result<()> {
    for &c in &ballot.ranking {
        check_cand(profile.roster(), c)?;
    }
    let available = profile.count_of(ballot);
    if count > available {
        return Err(Error::MalformedWitness(format!(
            "ballot type {} holds {available} ballots, witness needs {count}",
            profile.roster().display_ranking(&ballot.ranking)
        )));
    }
    Ok(())
}

fn winner_after(profile: &PreferenceProfile, edit: &Edit, options: RcvOptions) -> Result<Option<Cand>> {
    let edited = edit.apply(profile)?;
    let base = profile.roster();
    match classify(base, rcv_tabulate(&edited, options).map(|r| r.winner))? {
        Outcome::Winner(w) => {
            // Removing candidates renumbers the roster.
            let id = edited.roster().id(w);
            Ok(Some(base.find(id).expect("ids survive edits")))
        }
        Outcome::Boundary(_) => Ok(None),
    }
}

/// Replays a witness against the profile with the profile-edit operations
/// and a fresh tabulation. Returns whether every claim holds.
pub fn verify_witness(
    profile: &PreferenceProfile,
    witness: &Witness,
    options: RcvOptions,
) -> Result<bool> {
    let roster = profile.roster();
    let base = rcv_tabulate(profile, options)?.winner;
    match witness {
        Witness::Monotonicity(w) => {
            check_cand(roster, w.focal_candidate)?;
            check_cand(roster, w.original_winner)?;
            check_cand(roster, w.new_winner)?;
            check_type(profile, &w.ballot_type, w.max_count)?;
            if w.min_count > w.max_count {
                return Err(Error::MalformedWitness("min_count exceeds max_count".into()));
            }
            let expected = shifted(&w.ballot_type.ranking, w.focal_candidate, w.direction.shift())
                .map(|r| w.ballot_type.with_ranking(r));
            if expected.as_ref() != Some(&w.modified_type) {
                return Err(Error::MalformedWitness(
                    "modified_type is not a one-place shift of ballot_type".into(),
                ));
            }
            let coherent = match w.direction {
                MonotonicityDirection::Downward => {
                    w.focal_candidate != base && w.new_winner == w.focal_candidate
                }
                MonotonicityDirection::Upward => {
                    w.focal_candidate == base && w.new_winner != w.focal_candidate
                }
            };
            if !coherent || w.original_winner != base {
                return Ok(false);
            }
            for t in w.min_count..=w.max_count {
                let edit = Edit::Shift {
                    ballot_type: w.ballot_type.clone(),
                    candidate: w.focal_candidate,
                    direction: w.direction.shift(),
                    count: t,
                };
                if winner_after(profile, &edit, options)? != Some(w.new_winner) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Witness::NoShow(w) => {
            check_cand(roster, w.original_winner)?;
            check_cand(roster, w.new_winner)?;
            check_type(profile, &w.ballot_type, w.count)?;
            if w.original_winner != base
                || w.new_winner == base
                || !prefers(&w.ballot_type.ranking, w.new_winner, base)
            {
                return Ok(false);
            }
            let edit = Edit::RemoveBallots {
                ballot_type: w.ballot_type.clone(),
                count: w.count,
            };
            Ok(winner_after(profile, &edit, options)? == Some(w.new_winner))
        }
        Witness::Compromise(w) => {
            check_cand(roster, w.promoted_candidate)?;
            check_cand(roster, w.original_winner)?;
            check_cand(roster, w.new_winner)?;
            check_type(profile, &w.ballot_type, w.count)?;
            if promoted(&w.ballot_type.ranking, w.promoted_candidate).is_none() {
                return Err(Error::MalformedWitness(
                    "promoted candidate must be ranked below first".into(),
                ));
            }
            if w.original_winner != base
                || w.new_winner == base
                || !prefers(&w.ballot_type.ranking, w.new_winner, base)
            {
                return Ok(false);
            }
            let edit = Edit::Promote {
                ballot_type: w.ballot_type.clone(),
                candidate: w.promoted_candidate,
                count: w.count,
            };
            Ok(winner_after(profile, &edit, options)? == Some(w.new_winner))
        }
        Witness::Spoiler(w) => {
            for &c in &w.removed {
                check_cand(roster, c)?;
            }
            check_cand(roster, w.original_winner)?;
            check_cand(roster, w.new_winner)?;
            let distinct: BTreeSet<Cand> = w.removed.iter().copied().collect();
            if w.removed.is_empty() || distinct.len() != w.removed.len() {
                return Err(Error::MalformedWitness(
                    "removed set must be non-empty and duplicate-free".into(),
                ));
            }
            if w.original_winner != base || w.new_winner == base || distinct.contains(&base) {
                return Ok(false);
            }
            let edit = Edit::RemoveCandidates {
                removed: w.removed.clone(),
            };
            Ok(winner_after(profile, &edit, options)? == Some(w.new_winner))
        }
    }
}
