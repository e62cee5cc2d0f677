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

//! Instant-runoff tabulation.
//!
//! Write-ins can be dropped in one batch before the first real count, and
//! the tabulator can replay the Alameda County misconfiguration in which
//! ballots whose first rank was blank or a write-in were not counted in the
//! first official round (they rejoin after the first elimination).

use crate::error::{Error, Result};
use crate::profile::{CleanBallot, PreferenceProfile};
use crate::roster::{Cand, CandidateRoster};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WriteInPolicy {
    /// All write-ins are eliminated together before the first official count.
    #[default]
    EliminateFirst,
    TreatAsCandidates,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TiePolicy {
    /// Any elimination tie aborts the count.
    #[default]
    Error,
    /// Eliminate the tied candidate whose id sorts first. Exploratory use only.
    EliminateLexicographicallySmallest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct RcvOptions {
    #[serde(default)]
    pub writein_policy: WriteInPolicy,
    #[serde(default)]
    pub tie_policy: TiePolicy,
    /// Withhold flagged ballots from the first official round.
    #[serde(default)]
    pub buggy_first_round: bool,
}

impl RcvOptions {
    pub fn buggy() -> Self {
        RcvOptions {
            buggy_first_round: true,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.buggy_first_round && self.writein_policy != WriteInPolicy::EliminateFirst {
            return Err(Error::InvalidOptions(
                "buggy_first_round requires writein_policy = eliminate_first".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RoundKind {
    /// Batch removal of write-in candidates; no winner check.
    WriteInElimination,
    Count,
}

/// Where the ballots of one eliminated candidate went in the next round.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Transfer {
    pub from: Cand,
    pub to: BTreeMap<Cand, u64>,
    pub exhausted: u64,
    /// Ballots withheld by the first-round bug instead of transferring.
    pub pending: u64,
}

/// Where withheld ballots went once they rejoined the count.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PendingRelease {
    pub to: BTreeMap<Cand, u64>,
    pub exhausted: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundRecord {
    /// 1-based.
    pub number: usize,
    pub kind: RoundKind,
    /// Votes of every continuing candidate, in roster order.
    pub tallies: BTreeMap<Cand, u64>,
    pub exhausted: u64,
    pub pending: u64,
    /// Candidates eliminated at the end of this round.
    pub eliminated: Vec<Cand>,
    pub transfers: Vec<Transfer>,
    pub pending_release: Option<PendingRelease>,
}

impl RoundRecord {
    pub fn tally(&self, cand: Cand) -> Option<u64> {
        self.tallies.get(&cand).copied()
    }

    pub fn continuing_votes(&self) -> u64 {
        self.tallies.values().sum()
    }
}

/// An elimination tie resolved by [`TiePolicy::EliminateLexicographicallySmallest`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TieBreak {
    pub round: usize,
    pub tied: Vec<Cand>,
    pub eliminated: Cand,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TabulationResult {
    pub total: u64,
    pub rounds: Vec<RoundRecord>,
    pub winner: Cand,
    pub tie_breaks: Vec<TieBreak>,
}

impl TabulationResult {
    pub fn final_round(&self) -> &RoundRecord {
        self.rounds.last().expect("at least one round")
    }

    /// First round that counts votes (skips the write-in batch round).
    pub fn first_count(&self) -> &RoundRecord {
        self.rounds
            .iter()
            .find(|r| r.kind == RoundKind::Count)
            .expect("at least one counting round")
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    At(Cand),
    Exhausted,
    Pending,
}

fn top(ranking: &[Cand], continuing: &[bool]) -> Option<Cand> {
    ranking.iter().copied().find(|c| continuing[c.index()])
}

pub(crate) fn tie_error(roster: &CandidateRoster, tied: &[Cand]) -> Error {
    Error::Tie {
        candidates: roster.ids(tied),
    }
}

struct Count<'a> {
    roster: &'a CandidateRoster,
    entries: &'a [(&'a CleanBallot, u64)],
    states: Vec<State>,
    continuing: Vec<bool>,
    total: u64,
}

impl Count<'_> {
    fn record(&self, number: usize, kind: RoundKind) -> RoundRecord {
        let mut tallies: BTreeMap<Cand, u64> = self
            .roster
            .cands()
            .filter(|c| self.continuing[c.index()])
            .map(|c| (c, 0))
            .collect();
        let (mut exhausted, mut pending) = (0, 0);
        for ((_, n), s) in self.entries.iter().zip(&self.states) {
            match s {
                State::At(c) => *tallies.get_mut(c).expect("continuing") += n,
                State::Exhausted => exhausted += n,
                State::Pending => pending += n,
            }
        }
        debug_assert_eq!(tallies.values().sum::<u64>() + exhausted + pending, self.total);
        RoundRecord {
            number,
            kind,
            tallies,
            exhausted,
            pending,
            eliminated: Vec::new(),
            transfers: Vec::new(),
            pending_release: None,
        }
    }

    /// Moves ballots sitting on eliminated candidates to their next
    /// continuing choice. With `withhold`, flagged ballots go pending instead.
    fn transfer(&mut self, eliminated: &[Cand], withhold: bool) -> Vec<Transfer> {
        let mut transfers: Vec<Transfer> = eliminated
            .iter()
            .map(|&from| Transfer {
                from,
                ..Transfer::default()
            })
            .collect();
        for ((b, n), s) in self.entries.iter().zip(self.states.iter_mut()) {
            let State::At(from) = *s else { continue };
            let Some(t) = transfers.iter_mut().find(|t| t.from == from) else {
                continue;
            };
            *s = if withhold && b.raw_first_invalid {
                t.pending += n;
                State::Pending
            } else {
                match top(&b.ranking, &self.continuing) {
                    Some(c) => {
                        *t.to.entry(c).or_insert(0) += n;
                        State::At(c)
                    }
                    None => {
                        t.exhausted += n;
                        State::Exhausted
                    }
                }
            };
        }
        transfers
    }

    fn withhold_flagged(&mut self) {
        for ((b, _), s) in self.entries.iter().zip(self.states.iter_mut()) {
            if b.raw_first_invalid && matches!(s, State::At(_)) {
                *s = State::Pending;
            }
        }
    }

    fn release_pending(&mut self) -> Option<PendingRelease> {
        let mut release = PendingRelease::default();
        let mut any = false;
        for ((b, n), s) in self.entries.iter().zip(self.states.iter_mut()) {
            if *s != State::Pending {
                continue;
            }
            any = true;
            *s = match top(&b.ranking, &self.continuing) {
                Some(c) => {
                    *release.to.entry(c).or_insert(0) += n;
                    State::At(c)
                }
                None => {
                    release.exhausted += n;
                    State::Exhausted
                }
            };
        }
        any.then_some(release)
    }
}

/// Runs an instant-runoff count over a profile.
pub fn rcv_tabulate(profile: &PreferenceProfile, options: RcvOptions) -> Result<TabulationResult> {
    let entries: Vec<(&CleanBallot, u64)> = profile.entries().collect();
    tabulate_entries(profile.roster(), &entries, options)
}

/// Runs an instant-runoff count over loose `(ballot, count)` pairs. Entries
/// need not be merged; the result only depends on the multiset of ballots.
pub fn tabulate_entries(
    roster: &CandidateRoster,
    entries: &[(&CleanBallot, u64)],
    options: RcvOptions,
) -> Result<TabulationResult> {
    options.validate()?;
    let total: u64 = entries.iter().map(|(_, n)| n).sum();
    if total == 0 {
        return Err(Error::EmptyProfile);
    }
    let continuing = vec![true; roster.len()];
    let states = entries
        .iter()
        .map(|(b, _)| top(&b.ranking, &continuing).map_or(State::Exhausted, State::At))
        .collect();
    let mut count = Count {
        roster,
        entries,
        states,
        continuing,
        total,
    };
    let mut rounds = Vec::new();
    let mut tie_breaks = Vec::new();

    let writeins: Vec<Cand> = match options.writein_policy {
        WriteInPolicy::EliminateFirst => roster.cands().filter(|&c| roster.is_writein(c)).collect(),
        WriteInPolicy::TreatAsCandidates => Vec::new(),
    };
    if !writeins.is_empty() {
        let mut round = count.record(1, RoundKind::WriteInElimination);
        for &w in &writeins {
            count.continuing[w.index()] = false;
        }
        round.transfers = count.transfer(&writeins, options.buggy_first_round);
        round.eliminated = writeins;
        rounds.push(round);
    }
    if options.buggy_first_round {
        count.withhold_flagged();
    }
    if !count.continuing.iter().any(|&c| c) {
        return Err(Error::NoCandidates);
    }

    loop {
        let mut round = count.record(rounds.len() + 1, RoundKind::Count);
        let votes = round.continuing_votes();
        let (&leader, &best) = round
            .tallies
            .iter()
            .max_by_key(|(_, &v)| v)
            .expect("continuing candidates");
        if round.tallies.len() == 1 || 2 * best > votes {
            rounds.push(round);
            return Ok(TabulationResult {
                total,
                rounds,
                winner: leader,
                tie_breaks,
            });
        }
        let fewest = *round.tallies.values().min().expect("continuing candidates");
        let tied: Vec<Cand> = round
            .tallies
            .iter()
            .filter(|(_, &v)| v == fewest)
            .map(|(&c, _)| c)
            .collect();
        let loser = if tied.len() > 1 {
            match options.tie_policy {
                TiePolicy::Error => return Err(tie_error(roster, &tied)),
                TiePolicy::EliminateLexicographicallySmallest => {
                    let loser = *tied
                        .iter()
                        .min_by_key(|&&c| roster.id(c))
                        .expect("non-empty");
                    tie_breaks.push(TieBreak {
                        round: round.number,
                        tied,
                        eliminated: loser,
                    });
                    loser
                }
            }
        } else {
            tied[0]
        };
        count.continuing[loser.index()] = false;
        round.eliminated = vec![loser];
        round.transfers = count.transfer(&[loser], false);
        round.pending_release = count.release_pending();
        rounds.push(round);
    }
}
