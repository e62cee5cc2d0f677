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

//! Plurality and top-two plurality runoff. Both treat every roster
//! candidate, write-ins included, as an ordinary candidate.

use super::rcv::{tie_error, RoundKind, RoundRecord, TabulationResult, Transfer};
use super::{unique_argmax, ScoreResult};
use crate::error::{Error, Result};
use crate::profile::PreferenceProfile;
use crate::roster::Cand;
use std::collections::BTreeMap;

pub fn plurality(profile: &PreferenceProfile) -> Result<ScoreResult> {
    if profile.total() == 0 {
        return Err(Error::EmptyProfile);
    }
    let scores = profile.first_place_tally();
    let winner = unique_argmax(profile.roster(), &scores)?;
    Ok(ScoreResult { scores, winner })
}

fn count_round(
    profile: &PreferenceProfile,
    number: usize,
    continuing: &[Cand],
) -> (RoundRecord, BTreeMap<Cand, u64>) {
    let mut tallies: BTreeMap<Cand, u64> = continuing.iter().map(|&c| (c, 0)).collect();
    let mut exhausted = 0;
    for (b, n) in profile.entries() {
        match b.ranking.iter().find(|c| tallies.contains_key(c)) {
            Some(c) => *tallies.get_mut(c).expect("continuing") += n,
            None => exhausted += n,
        }
    }
    let record = RoundRecord {
        number,
        kind: RoundKind::Count,
        tallies: tallies.clone(),
        exhausted,
        pending: 0,
        eliminated: Vec::new(),
        transfers: Vec::new(),
        pending_release: None,
    };
    (record, tallies)
}

/// Keeps the two candidates with the most first choices and decides
/// between them head to head.
pub fn plurality_runoff(profile: &PreferenceProfile) -> Result<TabulationResult> {
    let total = profile.total();
    if total == 0 {
        return Err(Error::EmptyProfile);
    }
    let roster = profile.roster();
    let all: Vec<Cand> = roster.cands().collect();
    if all.is_empty() {
        return Err(Error::NoCandidates);
    }
    let (mut first, tallies) = count_round(profile, 1, &all);
    if all.len() <= 2 {
        let winner = unique_argmax(roster, &tallies)?;
        return Ok(TabulationResult {
            total,
            rounds: vec![first],
            winner,
            tie_breaks: Vec::new(),
        });
    }

    let mut order: Vec<(Cand, u64)> = tallies.iter().map(|(&c, &v)| (c, v)).collect();
    order.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let second = order[1].1;
    if order[2].1 == second {
        // A first-round majority wins against any runner-up.
        if 2 * order[0].1 > total {
            return Ok(TabulationResult {
                total,
                rounds: vec![first],
                winner: order[0].0,
                tie_breaks: Vec::new(),
            });
        }
        let tied: Vec<Cand> = order.iter().filter(|(_, v)| *v == second).map(|(c, _)| *c).collect();
        return Err(tie_error(roster, &tied));
    }
    let mut finalists = vec![order[0].0, order[1].0];
    finalists.sort();
    let eliminated: Vec<Cand> = all.iter().copied().filter(|c| !finalists.contains(c)).collect();

    let mut transfers: Vec<Transfer> = eliminated
        .iter()
        .map(|&from| Transfer {
            from,
            ..Transfer::default()
        })
        .collect();
    for (b, n) in profile.entries() {
        let Some(&from) = b.ranking.first() else { continue };
        let Some(t) = transfers.iter_mut().find(|t| t.from == from) else {
            continue;
        };
        match b.ranking.iter().find(|c| finalists.contains(c)) {
            Some(&to) => *t.to.entry(to).or_insert(0) += n,
            None => t.exhausted += n,
        }
    }
    first.eliminated = eliminated;
    first.transfers = transfers;

    let (runoff, final_tallies) = count_round(profile, 2, &finalists);
    let winner = unique_argmax(roster, &final_tallies)?;
    Ok(TabulationResult {
        total,
        rounds: vec![first, runoff],
        winner,
        tie_breaks: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::oakland_table1_profile;
    use crate::roster::{Candidate, CandidateRoster};

    fn ab() -> CandidateRoster {
        CandidateRoster::new(vec![Candidate::official("A", "A"), Candidate::official("B", "B")]).unwrap()
    }

    #[test]
    fn table1_plurality_is_resnick() {
        let res = plurality(&oakland_table1_profile()).unwrap();
        assert_eq!(res.winner, Cand(2));
    }

    #[test]
    fn single_ballot() {
        let mut p = PreferenceProfile::new(ab());
        p.add_ids(&["A", "B"], 1).unwrap();
        assert_eq!(plurality(&p).unwrap().winner, Cand(0));
    }

    #[test]
    fn plurality_tie() {
        let mut p = PreferenceProfile::new(ab());
        p.add_ids(&["A"], 5).unwrap();
        p.add_ids(&["B"], 5).unwrap();
        assert!(plurality(&p).unwrap_err().is_tie());
    }

    #[test]
    fn table1_runoff() {
        let res = plurality_runoff(&oakland_table1_profile()).unwrap();
        assert_eq!(res.rounds[0].eliminated, vec![Cand(1)]);
        let fin = res.final_round();
        assert_eq!((fin.tallies[&Cand(0)], fin.tallies[&Cand(2)]), (12421, 12165));
        assert_eq!(res.winner, Cand(0));
    }

    #[test]
    fn two_candidates_is_head_to_head() {
        let mut p = PreferenceProfile::new(ab());
        p.add_ids(&["A", "B"], 3).unwrap();
        p.add_ids(&["B"], 4).unwrap();
        let res = plurality_runoff(&p).unwrap();
        assert_eq!(res.rounds.len(), 1);
        assert_eq!(res.winner, Cand(1));
    }

    #[test]
    fn tie_for_second_slot() {
        let roster = CandidateRoster::new(
            ["A", "B", "C"].iter().map(|id| Candidate::official(id, id)).collect(),
        )
        .unwrap();
        let mut p = PreferenceProfile::new(roster);
        p.add_ids(&["A"], 5).unwrap();
        p.add_ids(&["B"], 3).unwrap();
        p.add_ids(&["C"], 3).unwrap();
        match plurality_runoff(&p).unwrap_err() {
            Error::Tie { candidates } => assert_eq!(candidates, vec!["B", "C"]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn majority_leader_skips_tied_runner_up() {
        let roster = CandidateRoster::new(
            ["A", "B", "C"].iter().map(|id| Candidate::official(id, id)).collect(),
        )
        .unwrap();
        let mut p = PreferenceProfile::new(roster);
        p.add_ids(&["A", "B"], 2).unwrap();
        p.add_ids(&["B"], 1).unwrap();
        p.add_ids(&["C"], 1).unwrap();
        assert!(plurality_runoff(&p).unwrap_err().is_tie());
        p.add_ids(&["A"], 1).unwrap();
        let r = plurality_runoff(&p).unwrap();
        assert_eq!(r.winner, Cand(0));
        assert_eq!(r.rounds.len(), 1);
    }
}
