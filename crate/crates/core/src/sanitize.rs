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

//! Ballot sanitization under jurisdiction policies.
//!
//! A raw ballot is scanned slot by slot, left to right:
//!
//! * an empty slot is skipped, unless the policy ends the ballot at the
//!   second consecutive empty slot;
//! * an overvote either ends the ballot (keeping what was already accepted)
//!   or is handled exactly like an empty slot;
//! * a single candidate is appended unless it was already ranked.
//!
//! Repeated candidates never end a ballot.

use crate::cvr::RawBallot;
use crate::profile::{CleanBallot, PreferenceProfile};
use crate::roster::CandidateRoster;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipPolicy {
    /// Blank ranks are ignored and later choices shift up.
    IgnoreAllSkips,
    /// Two blank ranks in a row discard everything after them.
    TwoConsecutiveSkipsTerminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OvervotePolicy {
    /// The overvote and every later rank are discarded.
    TruncateAtOvervote,
    /// The overvoted rank is treated as blank.
    SkipOvervote,
}

/// Only duplicate handling that any jurisdiction uses: later repeats are ignored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DuplicatePolicy {
    #[default]
    KeepFirstOccurrence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SanitizePolicy {
    pub skip_policy: SkipPolicy,
    pub overvote_policy: OvervotePolicy,
    #[serde(default)]
    pub duplicate_policy: DuplicatePolicy,
}

impl SanitizePolicy {
    pub const ALAMEDA: SanitizePolicy = SanitizePolicy::new(
        SkipPolicy::IgnoreAllSkips,
        OvervotePolicy::TruncateAtOvervote,
    );
    pub const MINNEAPOLIS: SanitizePolicy =
        SanitizePolicy::new(SkipPolicy::IgnoreAllSkips, OvervotePolicy::SkipOvervote);
    pub const ALASKA: SanitizePolicy = SanitizePolicy::new(
        SkipPolicy::TwoConsecutiveSkipsTerminate,
        OvervotePolicy::TruncateAtOvervote,
    );

    pub const fn new(skip_policy: SkipPolicy, overvote_policy: OvervotePolicy) -> Self {
        SanitizePolicy {
            skip_policy,
            overvote_policy,
            duplicate_policy: DuplicatePolicy::KeepFirstOccurrence,
        }
    }

    /// Looks up a named preset (`alameda`, `minneapolis`, `alaska`).
    pub fn preset(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "alameda" => Some(Self::ALAMEDA),
            "minneapolis" => Some(Self::MINNEAPOLIS),
            "alaska" => Some(Self::ALASKA),
            _ => None,
        }
    }

    /// Every combination of skip and overvote handling.
    pub fn all() -> [SanitizePolicy; 4] {
        [
            Self::ALAMEDA,
            Self::MINNEAPOLIS,
            Self::ALASKA,
            SanitizePolicy::new(
                SkipPolicy::TwoConsecutiveSkipsTerminate,
                OvervotePolicy::SkipOvervote,
            ),
        ]
    }
}

impl Default for SanitizePolicy {
    fn default() -> Self {
        Self::ALAMEDA
    }
}

/// Ballot-level counters collected by [`sanitize_all`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SanitizeStats {
    /// Ballots on which the scan reached an overvote and the overvote rule
    /// fired (truncation, or a skip under `SkipOvervote`).
    pub overvote_truncated: u64,
    /// Ballots with a blank rank followed later by a marked rank.
    pub skipped_then_ranked: u64,
    /// Ballots flagged `raw_first_invalid` whose clean ranking still holds an
    /// official candidate.
    pub raw_first_invalid_with_official: u64,
    pub total: u64,
}

struct Scan {
    ballot: CleanBallot,
    hit_overvote: bool,
}

fn scan(raw: &RawBallot, policy: SanitizePolicy, roster: &CandidateRoster) -> Scan {
    let raw_first_invalid = match raw.slots.first() {
        None => true,
        Some(first) => first.iter().all(|&c| roster.is_writein(c)),
    };
    let mut ranking = Vec::new();
    let mut blanks = 0usize;
    let mut hit_overvote = false;
    for slot in &raw.slots {
        let blank = match slot.len() {
            0 => true,
            1 => false,
            _ => {
                hit_overvote = true;
                match policy.overvote_policy {
                    OvervotePolicy::TruncateAtOvervote => break,
                    OvervotePolicy::SkipOvervote => true,
                }
            }
        };
        if blank {
            blanks += 1;
            if policy.skip_policy == SkipPolicy::TwoConsecutiveSkipsTerminate && blanks >= 2 {
                break;
            }
            continue;
        }
        blanks = 0;
        let c = slot[0];
        if !ranking.contains(&c) {
            ranking.push(c);
        }
    }
    Scan {
        ballot: CleanBallot {
            ranking,
            raw_first_invalid,
        },
        hit_overvote,
    }
}

/// Normalizes one ballot. Never fails; the worst case is an empty ranking.
pub fn sanitize_ballot(
    raw: &RawBallot,
    policy: SanitizePolicy,
    roster: &CandidateRoster,
) -> CleanBallot {
    scan(raw, policy, roster).ballot
}

fn skipped_then_ranked(raw: &RawBallot) -> bool {
    let mut seen_blank = false;
    for slot in &raw.slots {
        if slot.is_empty() {
            seen_blank = true;
        } else if seen_blank {
            return true;
        }
    }
    false
}

/// Sanitizes every ballot and aggregates the result into a profile.
pub fn sanitize_all(
    ballots: &[RawBallot],
    policy: SanitizePolicy,
    roster: &CandidateRoster,
) -> (PreferenceProfile, SanitizeStats) {
    let mut profile = PreferenceProfile::new(roster.clone());
    let mut stats = SanitizeStats::default();
    for raw in ballots {
        let Scan {
            ballot,
            hit_overvote,
        } = scan(raw, policy, roster);
        stats.total += 1;
        stats.overvote_truncated += hit_overvote as u64;
        stats.skipped_then_ranked += skipped_then_ranked(raw) as u64;
        if ballot.raw_first_invalid && ballot.ranking.iter().any(|&c| !roster.is_writein(c)) {
            stats.raw_first_invalid_with_official += 1;
        }
        profile.add_unchecked(ballot, 1);
    }
    (profile, stats)
}
