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

//! Linear t-scans over loose ballot entries.
//!
//! Each probe rebuilds the entry list with `t` ballots moved (or dropped)
//! and re-runs [`tabulate_entries`]; the profile itself is never cloned.
//! Jobs are independent, so the outer loop runs on rayon and the merged
//! output is sorted.

use super::{
    classify, BoundaryCase, BoundaryReason, CompromiseWitness, Edit, Findings,
    MonotonicityDirection, MonotonicityWitness, NoShowWitness, Outcome, SearchOutcome,
    SpoilerWitness,
};
use crate::error::Result;
use crate::methods::{rcv_tabulate, tabulate_entries, RcvOptions};
use crate::profile::{prefers, promoted, shifted, CleanBallot, PreferenceProfile};
use crate::roster::Cand;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

struct Prober<'a> {
    profile: &'a PreferenceProfile,
    entries: Vec<(&'a CleanBallot, u64)>,
    options: RcvOptions,
}

impl<'a> Prober<'a> {
    fn new(profile: &'a PreferenceProfile, options: RcvOptions) -> Self {
        Prober {
            profile,
            entries: profile.entries().collect(),
            options,
        }
    }

    /// Winner once `t` ballots of entry `index` are replaced by `to` (or
    /// dropped when `to` is `None`).
    fn probe(&self, index: usize, t: u64, to: Option<&CleanBallot>) -> Result<Outcome> {
        let mut edited: Vec<(&CleanBallot, u64)> = Vec::with_capacity(self.entries.len() + 1);
        for (i, &(b, n)) in self.entries.iter().enumerate() {
            let n = if i == index { n - t } else { n };
            if n > 0 {
                edited.push((b, n));
            }
        }
        if let Some(to) = to {
            edited.push((to, t));
        }
        let result = tabulate_entries(self.profile.roster(), &edited, self.options).map(|r| r.winner);
        classify(self.profile.roster(), result)
    }
}

fn base_winner(profile: &PreferenceProfile, options: RcvOptions) -> Result<Cand> {
    Ok(rcv_tabulate(profile, options)?.winner)
}

type Partial<W> = Result<(Vec<W>, Vec<BoundaryCase>)>;

fn merge<W: Ord + Send>(parts: Vec<Partial<W>>) -> Result<SearchOutcome<W>> {
    let mut witnesses = Vec::new();
    let mut boundary = Vec::new();
    for part in parts {
        let (w, b) = part?;
        witnesses.extend(w);
        boundary.extend(b);
    }
    Ok(SearchOutcome::sorted(witnesses, boundary))
}

/// Tries every non-empty set of losing candidates with at most
/// `max_subset_size` members.
pub fn find_spoilers(
    profile: &PreferenceProfile,
    options: RcvOptions,
    max_subset_size: usize,
) -> Result<SearchOutcome<SpoilerWitness>> {
    let winner = base_winner(profile, options)?;
    let roster = profile.roster();
    let losers: Vec<Cand> = roster.cands().filter(|&c| c != winner).collect();
    let mut subsets: Vec<Vec<Cand>> = Vec::new();
    let limit = max_subset_size.min(losers.len());
    for size in 1..=limit {
        combinations(&losers, size, &mut Vec::new(), 0, &mut subsets);
    }
    let parts: Vec<Partial<SpoilerWitness>> = subsets
        .into_par_iter()
        .map(|removed| {
            let set: BTreeSet<Cand> = removed.iter().copied().collect();
            let reduced = profile.remove_candidates(&set)?;
            let result = rcv_tabulate(&reduced, options)
                .map(|r| roster.find(reduced.roster().id(r.winner)).expect("ids survive edits"));
            match classify(roster, result)? {
                Outcome::Winner(w) if w != winner => Ok((
                    vec![SpoilerWitness {
                        removed,
                        original_winner: winner,
                        new_winner: w,
                    }],
                    vec![],
                )),
                Outcome::Winner(_) => Ok((vec![], vec![])),
                Outcome::Boundary(reason) => Ok((
                    vec![],
                    vec![BoundaryCase {
                        edit: Edit::RemoveCandidates { removed },
                        reason,
                    }],
                )),
            }
        })
        .collect();
    merge(parts)
}

fn combinations(
    items: &[Cand],
    size: usize,
    current: &mut Vec<Cand>,
    from: usize,
    out: &mut Vec<Vec<Cand>>,
) {
    if current.len() == size {
        out.push(current.clone());
        return;
    }
    for i in from..items.len() {
        current.push(items[i]);
        combinations(items, size, current, i + 1, out);
        current.pop();
    }
}

/// Shifts a losing candidate down (or the winner up) by one place on
/// `t = 1..=count` ballots of each existing type, reporting each maximal run
/// of `t` that produces the same paradoxical winner.
pub fn search_monotonicity(
    profile: &PreferenceProfile,
    options: RcvOptions,
    direction: MonotonicityDirection,
) -> Result<SearchOutcome<MonotonicityWitness>> {
    let winner = base_winner(profile, options)?;
    let prober = Prober::new(profile, options);
    let focal: Vec<Cand> = match direction {
        MonotonicityDirection::Downward => profile.roster().cands().filter(|&c| c != winner).collect(),
        MonotonicityDirection::Upward => vec![winner],
    };
    let shift = direction.shift();
    let mut jobs = Vec::new();
    for &cand in &focal {
        for (index, &(b, n)) in prober.entries.iter().enumerate() {
            if let Some(ranking) = shifted(&b.ranking, cand, shift) {
                jobs.push((cand, index, n, b.with_ranking(ranking)));
            }
        }
    }
    let parts: Vec<Partial<MonotonicityWitness>> = jobs
        .into_par_iter()
        .map(|(cand, index, n, modified)| {
            let ballot_type = prober.entries[index].0;
            let mut witnesses = Vec::new();
            let mut boundary = Vec::new();
            // (start, end, new winner) of the run being extended.
            let mut run: Option<(u64, u64, Cand)> = None;
            let mut close = |run: &mut Option<(u64, u64, Cand)>| {
                if let Some((lo, hi, w)) = run.take() {
                    witnesses.push(MonotonicityWitness {
                        direction,
                        focal_candidate: cand,
                        ballot_type: ballot_type.clone(),
                        modified_type: modified.clone(),
                        min_count: lo,
                        max_count: hi,
                        original_winner: winner,
                        new_winner: w,
                    });
                }
            };
            for t in 1..=n {
                let paradox = match prober.probe(index, t, Some(&modified))? {
                    Outcome::Winner(w) => match direction {
                        MonotonicityDirection::Downward => (w == cand).then_some(w),
                        MonotonicityDirection::Upward => (w != cand).then_some(w),
                    },
                    Outcome::Boundary(reason) => {
                        boundary.push(BoundaryCase {
                            edit: Edit::Shift {
                                ballot_type: ballot_type.clone(),
                                candidate: cand,
                                direction: shift,
                                count: t,
                            },
                            reason,
                        });
                        None
                    }
                };
                match (paradox, run.as_mut()) {
                    (Some(w), Some((_, hi, rw))) if *rw == w => *hi = t,
                    (Some(w), _) => {
                        close(&mut run);
                        run = Some((t, t, w));
                    }
                    (None, _) => close(&mut run),
                }
            }
            close(&mut run);
            Ok((witnesses, boundary))
        })
        .collect();
    merge(parts)
}

/// Minimal `t` per preferred new winner for one edit family on one type.
fn scan_minimal(
    n: u64,
    mut probe: impl FnMut(u64) -> Result<Outcome>,
    wanted: impl Fn(Cand) -> bool,
    mut on_boundary: impl FnMut(u64, BoundaryReason),
) -> Result<BTreeMap<Cand, u64>> {
    let mut first: BTreeMap<Cand, u64> = BTreeMap::new();
    for t in 1..=n {
        match probe(t)? {
            Outcome::Winner(w) if wanted(w) => {
                first.entry(w).or_insert(t);
            }
            Outcome::Winner(_) => {}
            Outcome::Boundary(reason) => on_boundary(t, reason),
        }
    }
    Ok(first)
}

/// Removes `t = 1..=count` ballots of each type and reports the smallest
/// abstention that elects a candidate those voters prefer.
pub fn search_noshow(
    profile: &PreferenceProfile,
    options: RcvOptions,
) -> Result<SearchOutcome<NoShowWitness>> {
    let winner = base_winner(profile, options)?;
    let prober = Prober::new(profile, options);
    let parts: Vec<Partial<NoShowWitness>> = (0..prober.entries.len())
        .into_par_iter()
        .map(|index| {
            let (b, n) = prober.entries[index];
            let mut boundary = Vec::new();
            let minimal = scan_minimal(
                n,
                |t| prober.probe(index, t, None),
                |w| w != winner && prefers(&b.ranking, w, winner),
                |t, reason| {
                    boundary.push(BoundaryCase {
                        edit: Edit::RemoveBallots {
                            ballot_type: b.clone(),
                            count: t,
                        },
                        reason,
                    })
                },
            )?;
            let witnesses = minimal
                .into_iter()
                .map(|(w, t)| NoShowWitness {
                    ballot_type: b.clone(),
                    count: t,
                    original_winner: winner,
                    new_winner: w,
                })
                .collect();
            Ok((witnesses, boundary))
        })
        .collect();
    merge(parts)
}

/// Moves each non-first choice `c` of each type to the top on
/// `t = 1..=count` ballots and reports the smallest such compromise that
/// elects a candidate those voters prefer.
pub fn search_compromise(
    profile: &PreferenceProfile,
    options: RcvOptions,
) -> Result<SearchOutcome<CompromiseWitness>> {
    let winner = base_winner(profile, options)?;
    let prober = Prober::new(profile, options);
    let mut jobs = Vec::new();
    for (index, &(b, _)) in prober.entries.iter().enumerate() {
        for &c in b.ranking.iter().skip(1) {
            let to = b.with_ranking(promoted(&b.ranking, c).expect("ranked below first"));
            jobs.push((index, c, to));
        }
    }
    let parts: Vec<Partial<CompromiseWitness>> = jobs
        .into_par_iter()
        .map(|(index, c, to)| {
            let (b, n) = prober.entries[index];
            let mut boundary = Vec::new();
            let minimal = scan_minimal(
                n,
                |t| prober.probe(index, t, Some(&to)),
                |w| w != winner && prefers(&b.ranking, w, winner),
                |t, reason| {
                    boundary.push(BoundaryCase {
                        edit: Edit::Promote {
                            ballot_type: b.clone(),
                            candidate: c,
                            count: t,
                        },
                        reason,
                    })
                },
            )?;
            let witnesses = minimal
                .into_iter()
                .map(|(w, t)| CompromiseWitness {
                    ballot_type: b.clone(),
                    promoted_candidate: c,
                    count: t,
                    original_winner: winner,
                    new_winner: w,
                })
                .collect();
            Ok((witnesses, boundary))
        })
        .collect();
    merge(parts)
}

/// Runs every search. `max_subset_size` bounds the spoiler search.
pub fn audit(
    profile: &PreferenceProfile,
    options: RcvOptions,
    max_subset_size: usize,
) -> Result<Findings> {
    Ok(Findings {
        original_winner: base_winner(profile, options)?,
        spoilers: find_spoilers(profile, options, max_subset_size)?,
        downward: search_monotonicity(profile, options, MonotonicityDirection::Downward)?,
        upward: search_monotonicity(profile, options, MonotonicityDirection::Upward)?,
        noshow: search_noshow(profile, options)?,
        compromise: search_compromise(profile, options)?,
    })
}
