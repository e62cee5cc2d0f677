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

//! Brute-force reference for the forensic searches on small elections.
//!
//! Nothing here touches the aggregated tabulator or the profile edits: the
//! profile is expanded into one record per voter, edits rewrite individual
//! records, and winners come from a separate ballot-by-ballot instant-runoff
//! count. Every adjacent swap, abstention, promotion and loser subset is
//! enumerated and then classified.

use super::{
    BoundaryCase, BoundaryReason, CompromiseWitness, Edit, Findings, MonotonicityDirection,
    MonotonicityWitness, NoShowWitness, SearchOutcome, SpoilerWitness,
};
use crate::error::{Error, Result};
use crate::methods::{RcvOptions, TiePolicy, WriteInPolicy};
use crate::profile::{CleanBallot, Direction, PreferenceProfile};
use crate::roster::{Cand, CandidateRoster};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBounds {
    pub max_candidates: usize,
    pub max_total_ballots: u64,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds {
            max_candidates: 4,
            max_total_ballots: 60,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Verdict {
    Winner(Cand),
    Undecided(BoundaryReason),
}

/// One record per voter.
#[derive(Clone)]
struct Voter {
    ranking: Vec<Cand>,
    flagged: bool,
}

fn naive_irv(
    roster: &CandidateRoster,
    voters: &[Voter],
    options: RcvOptions,
    withdrawn: &[Cand],
) -> Result<Verdict> {
    options.validate()?;
    if voters.is_empty() {
        return Ok(Verdict::Undecided(BoundaryReason::NoBallots));
    }
    let mut alive: Vec<Cand> = roster
        .cands()
        .filter(|c| !withdrawn.contains(c))
        .filter(|&c| {
            options.writein_policy == WriteInPolicy::TreatAsCandidates || !roster.is_writein(c)
        })
        .collect();
    if alive.is_empty() {
        return Err(Error::NoCandidates);
    }
    let mut first_count = true;
    loop {
        let mut votes: Vec<u64> = vec![0; alive.len()];
        for v in voters {
            if options.buggy_first_round && first_count && v.flagged {
                continue;
            }
            if let Some(c) = v.ranking.iter().find(|c| alive.contains(c)) {
                let slot = alive.iter().position(|a| a == c).expect("alive");
                votes[slot] += 1;
            }
        }
        if alive.len() == 1 {
            return Ok(Verdict::Winner(alive[0]));
        }
        let sum: u64 = votes.iter().sum();
        for (i, &v) in votes.iter().enumerate() {
            if 2 * v > sum {
                return Ok(Verdict::Winner(alive[i]));
            }
        }
        let low = *votes.iter().min().expect("alive");
        let mut tied: Vec<Cand> = alive
            .iter()
            .zip(&votes)
            .filter(|(_, &v)| v == low)
            .map(|(&c, _)| c)
            .collect();
        tied.sort();
        let out = if tied.len() == 1 {
            tied[0]
        } else if options.tie_policy == TiePolicy::EliminateLexicographicallySmallest {
            let mut by_id = tied.clone();
            by_id.sort_by(|a, b| roster.id(*a).cmp(roster.id(*b)));
            by_id[0]
        } else {
            return Ok(Verdict::Undecided(BoundaryReason::Tie(tied)));
        };
        alive.retain(|&c| c != out);
        first_count = false;
    }
}

fn expand(profile: &PreferenceProfile) -> Vec<Voter> {
    let mut voters = Vec::new();
    for (b, n) in profile.entries() {
        for _ in 0..n {
            voters.push(Voter {
                ranking: b.ranking.clone(),
                flagged: b.raw_first_invalid,
            });
        }
    }
    voters
}

fn matches(v: &Voter, b: &CleanBallot) -> bool {
    v.flagged == b.raw_first_invalid && v.ranking == b.ranking
}

/// Rewrites the first `t` voters of type `b` with `rewrite`, or drops them.
fn edit_voters(voters: &[Voter], b: &CleanBallot, t: u64, rewrite: Option<&[Cand]>) -> Vec<Voter> {
    let mut left = t;
    let mut out = Vec::with_capacity(voters.len());
    for v in voters {
        if left > 0 && matches(v, b) {
            left -= 1;
            if let Some(r) = rewrite {
                out.push(Voter {
                    ranking: r.to_vec(),
                    flagged: v.flagged,
                });
            }
        } else {
            out.push(v.clone());
        }
    }
    out
}

fn ranks_above(ranking: &[Cand], x: Cand, y: Cand) -> bool {
    let px = ranking.iter().position(|&c| c == x);
    let py = ranking.iter().position(|&c| c == y);
    match (px, py) {
        (Some(a), Some(b)) => a < b,
        (Some(_), None) => true,
        _ => false,
    }
}

/// Groups `(t, paradoxical winner)` results into maximal runs of
/// consecutive `t` sharing the same winner.
fn runs(results: &[(u64, Option<Cand>)]) -> Vec<(u64, u64, Cand)> {
    let mut out: Vec<(u64, u64, Cand)> = Vec::new();
    let mut prev: Option<(u64, Cand)> = None;
    for &(t, w) in results {
        match (w, prev) {
            (Some(w), Some((pt, pw))) if pw == w && pt + 1 == t => {
                out.last_mut().expect("open run").1 = t;
            }
            (Some(w), _) => out.push((t, t, w)),
            (None, _) => {}
        }
        prev = w.map(|w| (t, w));
    }
    out
}

/// Exhaustive pathology report by direct re-tabulation. Refuses profiles
/// larger than `bounds`.
pub fn brute_force_oracle(
    profile: &PreferenceProfile,
    options: RcvOptions,
    bounds: OracleBounds,
) -> Result<Findings> {
    let roster = profile.roster();
    if roster.len() > bounds.max_candidates {
        return Err(Error::OutOfBounds(format!(
            "{} candidates exceed the oracle limit of {}",
            roster.len(),
            bounds.max_candidates
        )));
    }
    if profile.total() > bounds.max_total_ballots {
        return Err(Error::OutOfBounds(format!(
            "{} ballots exceed the oracle limit of {}",
            profile.total(),
            bounds.max_total_ballots
        )));
    }
    let voters = expand(profile);
    if voters.is_empty() {
        return Err(Error::EmptyProfile);
    }
    let winner = match naive_irv(roster, &voters, options, &[])? {
        Verdict::Winner(w) => w,
        Verdict::Undecided(BoundaryReason::Tie(tied)) => {
            return Err(Error::Tie {
                candidates: roster.ids(&tied),
            })
        }
        Verdict::Undecided(BoundaryReason::NoBallots) => return Err(Error::EmptyProfile),
    };
    let types: Vec<(CleanBallot, u64)> = profile.entries().map(|(b, n)| (b.clone(), n)).collect();

    // Loser subsets, via bitmasks over the losers.
    let losers: Vec<Cand> = roster.cands().filter(|&c| c != winner).collect();
    let mut spoilers = Vec::new();
    let mut spoiler_boundary = Vec::new();
    for mask in 1u32..(1 << losers.len()) {
        let removed: Vec<Cand> = (0..losers.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| losers[i])
            .collect();
        match naive_irv(roster, &voters, options, &removed)? {
            Verdict::Winner(w) if w != winner => spoilers.push(SpoilerWitness {
                removed,
                original_winner: winner,
                new_winner: w,
            }),
            Verdict::Winner(_) => {}
            Verdict::Undecided(reason) => spoiler_boundary.push(BoundaryCase {
                edit: Edit::RemoveCandidates { removed },
                reason,
            }),
        }
    }

    // Every adjacent swap (upper, lower) -> (lower, upper) on every type.
    // Pushing `upper` down is a downward probe when `upper` lost; lifting
    // `lower` is an upward probe when `lower` won.
    let mut downward = Vec::new();
    let mut upward = Vec::new();
    let mut down_boundary = Vec::new();
    let mut up_boundary = Vec::new();
    for (b, n) in &types {
        for i in 0..b.ranking.len().saturating_sub(1) {
            let (upper, lower) = (b.ranking[i], b.ranking[i + 1]);
            let mut swapped = b.ranking.clone();
            swapped.swap(i, i + 1);
            let mut down_hits = Vec::new();
            let mut up_hits = Vec::new();
            for t in 1..=*n {
                let edited = edit_voters(&voters, b, t, Some(&swapped));
                let verdict = naive_irv(roster, &edited, options, &[])?;
                if upper != winner {
                    let hit = match &verdict {
                        Verdict::Winner(w) if *w == upper => Some(upper),
                        _ => None,
                    };
                    down_hits.push((t, hit));
                    if let Verdict::Undecided(reason) = &verdict {
                        down_boundary.push(BoundaryCase {
                            edit: Edit::Shift {
                                ballot_type: b.clone(),
                                candidate: upper,
                                direction: Direction::Down,
                                count: t,
                            },
                            reason: reason.clone(),
                        });
                    }
                }
                if lower == winner {
                    let hit = match &verdict {
                        Verdict::Winner(w) if *w != winner => Some(*w),
                        _ => None,
                    };
                    up_hits.push((t, hit));
                    if let Verdict::Undecided(reason) = &verdict {
                        up_boundary.push(BoundaryCase {
                            edit: Edit::Shift {
                                ballot_type: b.clone(),
                                candidate: lower,
                                direction: Direction::Up,
                                count: t,
                            },
                            reason: reason.clone(),
                        });
                    }
                }
            }
            let modified = b.with_ranking(swapped);
            for (lo, hi, w) in runs(&down_hits) {
                downward.push(MonotonicityWitness {
                    direction: MonotonicityDirection::Downward,
                    focal_candidate: upper,
                    ballot_type: b.clone(),
                    modified_type: modified.clone(),
                    min_count: lo,
                    max_count: hi,
                    original_winner: winner,
                    new_winner: w,
                });
            }
            for (lo, hi, w) in runs(&up_hits) {
                upward.push(MonotonicityWitness {
                    direction: MonotonicityDirection::Upward,
                    focal_candidate: lower,
                    ballot_type: b.clone(),
                    modified_type: modified.clone(),
                    min_count: lo,
                    max_count: hi,
                    original_winner: winner,
                    new_winner: w,
                });
            }
        }
    }

    // Abstentions.
    let mut noshow = Vec::new();
    let mut noshow_boundary = Vec::new();
    for (b, n) in &types {
        let mut seen: BTreeMap<Cand, u64> = BTreeMap::new();
        for t in 1..=*n {
            let edited = edit_voters(&voters, b, t, None);
            match naive_irv(roster, &edited, options, &[])? {
                Verdict::Winner(w) => {
                    if w != winner && ranks_above(&b.ranking, w, winner) && !seen.contains_key(&w) {
                        seen.insert(w, t);
                    }
                }
                Verdict::Undecided(reason) => noshow_boundary.push(BoundaryCase {
                    edit: Edit::RemoveBallots {
                        ballot_type: b.clone(),
                        count: t,
                    },
                    reason,
                }),
            }
        }
        for (w, t) in seen {
            noshow.push(NoShowWitness {
                ballot_type: b.clone(),
                count: t,
                original_winner: winner,
                new_winner: w,
            });
        }
    }

    // Promotions of every non-first choice.
    let mut compromise = Vec::new();
    let mut compromise_boundary = Vec::new();
    for (b, n) in &types {
        for i in 1..b.ranking.len() {
            let c = b.ranking[i];
            let mut lifted = vec![c];
            lifted.extend(b.ranking[..i].iter().copied());
            lifted.extend(b.ranking[i + 1..].iter().copied());
            let mut seen: BTreeMap<Cand, u64> = BTreeMap::new();
            for t in 1..=*n {
                let edited = edit_voters(&voters, b, t, Some(&lifted));
                match naive_irv(roster, &edited, options, &[])? {
                    Verdict::Winner(w) => {
                        if w != winner && ranks_above(&b.ranking, w, winner) {
                            seen.entry(w).or_insert(t);
                        }
                    }
                    Verdict::Undecided(reason) => compromise_boundary.push(BoundaryCase {
                        edit: Edit::Promote {
                            ballot_type: b.clone(),
                            candidate: c,
                            count: t,
                        },
                        reason,
                    }),
                }
            }
            for (w, t) in seen {
                compromise.push(CompromiseWitness {
                    ballot_type: b.clone(),
                    promoted_candidate: c,
                    count: t,
                    original_winner: winner,
                    new_winner: w,
                });
            }
        }
    }

    Ok(Findings {
        original_winner: winner,
        spoilers: SearchOutcome::sorted(spoilers, spoiler_boundary),
        downward: SearchOutcome::sorted(downward, down_boundary),
        upward: SearchOutcome::sorted(upward, up_boundary),
        noshow: SearchOutcome::sorted(noshow, noshow_boundary),
        compromise: SearchOutcome::sorted(compromise, compromise_boundary),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::oakland_table1_profile;
    use crate::forensics::audit;
    use crate::roster::Candidate;

    fn abc() -> CandidateRoster {
        CandidateRoster::new(["A", "B", "C"].iter().map(|id| Candidate::official(id, id)).collect())
            .unwrap()
    }

    /// Small profile with the Oakland cycle shape, A > C > B > A, and
    /// distinct first-place counts.
    fn toy_cycle() -> PreferenceProfile {
        let mut p = PreferenceProfile::new(abc());
        for (ids, n) in [
            (&["A", "B", "C"][..], 2),
            (&["A", "C", "B"][..], 3),
            (&["B", "A", "C"][..], 4),
            (&["B", "C", "A"][..], 2),
            (&["C", "A", "B"][..], 2),
            (&["C", "B", "A"][..], 3),
            (&["C"][..], 1),
        ] {
            p.add_ids(ids, n).unwrap();
        }
        p
    }

    #[test]
    fn toy_profile_has_a_cycle() {
        let p = toy_cycle();
        assert_eq!(p.total(), 17);
        let a = crate::methods::condorcet_analysis(&p.pairwise_matrix());
        assert!(a.cycle.is_some());
        assert!(a.condorcet_winner.is_none());
    }

    #[test]
    fn toy_cycle_matches_searches() {
        let p = toy_cycle();
        for options in [
            RcvOptions::default(),
            RcvOptions {
                tie_policy: TiePolicy::EliminateLexicographicallySmallest,
                ..RcvOptions::default()
            },
        ] {
            let oracle = brute_force_oracle(&p, options, OracleBounds::default());
            let searched = audit(&p, options, usize::MAX);
            assert_eq!(oracle, searched);
        }
    }

    #[test]
    fn unanimous_winner_has_no_findings() {
        let mut p = PreferenceProfile::new(abc());
        p.add_ids(&["A", "B", "C"], 5).unwrap();
        p.add_ids(&["A", "C", "B"], 4).unwrap();
        let f = brute_force_oracle(&p, RcvOptions::default(), OracleBounds::default()).unwrap();
        assert_eq!(f.witness_count(), 0);
    }

    #[test]
    fn refuses_large_profiles() {
        let err = brute_force_oracle(&oakland_table1_profile(), RcvOptions::default(), OracleBounds::default())
            .unwrap_err();
        assert!(matches!(err, Error::OutOfBounds(_)));
    }

    #[test]
    fn run_grouping() {
        let a = Cand(0);
        let b = Cand(1);
        let hits = [(1, None), (2, Some(a)), (3, Some(a)), (4, Some(b)), (5, None), (6, Some(a))];
        assert_eq!(runs(&hits), vec![(2, 3, a), (4, 4, b), (6, 6, a)]);
    }
}
