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

//! Preference profiles: aggregated clean ballots, tallies, pairwise
//! comparisons and the ballot edits used by the forensic searches.
//!
//! Profiles are immutable values. Every edit returns a new profile and
//! conserves the ballot total, except [`PreferenceProfile::remove_ballots`].

use crate::error::{Error, Result};
use crate::roster::{Cand, Candidate, CandidateRoster};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Strict, gap-free ranking produced by sanitization.
///
/// `raw_first_invalid` records whether the as-cast first slot was blank or
/// held only write-ins. Edits never change it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CleanBallot {
    pub ranking: Vec<Cand>,
    pub raw_first_invalid: bool,
}

impl CleanBallot {
    pub fn new(ranking: Vec<Cand>) -> Self {
        CleanBallot {
            ranking,
            raw_first_invalid: false,
        }
    }

    pub fn flagged(ranking: Vec<Cand>) -> Self {
        CleanBallot {
            ranking,
            raw_first_invalid: true,
        }
    }

    pub fn position(&self, cand: Cand) -> Option<usize> {
        position(&self.ranking, cand)
    }

    /// Same flag, different ranking.
    pub fn with_ranking(&self, ranking: Vec<Cand>) -> Self {
        CleanBallot {
            ranking,
            raw_first_invalid: self.raw_first_invalid,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Up => "up",
            Direction::Down => "down",
        }
    }

    pub fn reverse(self) -> Self {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
        }
    }
}

pub fn position(ranking: &[Cand], cand: Cand) -> Option<usize> {
    ranking.iter().position(|&c| c == cand)
}

/// Swaps `cand` with its neighbour one position up or down. `None` when the
/// candidate is absent or already at that end of the ranking.
pub fn shifted(ranking: &[Cand], cand: Cand, direction: Direction) -> Option<Vec<Cand>> {
    let i = position(ranking, cand)?;
    let j = match direction {
        Direction::Up => i.checked_sub(1)?,
        Direction::Down => {
            if i + 1 >= ranking.len() {
                return None;
            }
            i + 1
        }
    };
    let mut out = ranking.to_vec();
    out.swap(i, j);
    Some(out)
}

/// Moves `cand` to the front, keeping the order of everything else.
/// `None` when the candidate is absent or already first.
pub fn promoted(ranking: &[Cand], cand: Cand) -> Option<Vec<Cand>> {
    let i = position(ranking, cand)?;
    if i == 0 {
        return None;
    }
    let mut out = Vec::with_capacity(ranking.len());
    out.push(cand);
    out.extend(ranking.iter().copied().filter(|&c| c != cand));
    Some(out)
}

/// Whether the ranking puts `x` strictly above `y`. Unranked candidates sit
/// below every ranked one and are tied with each other.
pub fn prefers(ranking: &[Cand], x: Cand, y: Cand) -> bool {
    match (position(ranking, x), position(ranking, y)) {
        (Some(px), Some(py)) => px < py,
        (Some(_), None) => true,
        _ => false,
    }
}

/// Multiset of clean ballots over a roster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceProfile {
    roster: CandidateRoster,
    entries: BTreeMap<CleanBallot, u64>,
}

impl PreferenceProfile {
    pub fn new(roster: CandidateRoster) -> Self {
        PreferenceProfile {
            roster,
            entries: BTreeMap::new(),
        }
    }

    pub fn roster(&self) -> &CandidateRoster {
        &self.roster
    }

    fn validate(&self, ranking: &[Cand]) -> Result<()> {
        for (i, &c) in ranking.iter().enumerate() {
            if !self.roster.contains(c) {
                return Err(Error::Validation(format!("candidate {c} not in roster")));
            }
            if ranking[..i].contains(&c) {
                return Err(Error::Validation(format!(
                    "candidate {} ranked twice",
                    self.roster.id(c)
                )));
            }
        }
        Ok(())
    }

    /// Adds `count` copies of a ballot, merging with an existing entry.
    pub fn add(&mut self, ballot: CleanBallot, count: u64) -> Result<()> {
        self.validate(&ballot.ranking)?;
        self.add_unchecked(ballot, count);
        Ok(())
    }

    pub(crate) fn add_unchecked(&mut self, ballot: CleanBallot, count: u64) {
        if count > 0 {
            *self.entries.entry(ballot).or_insert(0) += count;
        }
    }

    /// Adds ballots given by candidate ids, e.g. `add_ids(&["H", "M"], 1280)`.
    pub fn add_ids(&mut self, ids: &[&str], count: u64) -> Result<()> {
        let ranking = self.roster.resolve(ids)?;
        self.add(CleanBallot::new(ranking), count)
    }

    /// Entries in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&CleanBallot, u64)> + Clone + '_ {
        self.entries.iter().map(|(b, &n)| (b, n))
    }

    pub fn num_types(&self) -> usize {
        self.entries.len()
    }

    pub fn count_of(&self, ballot: &CleanBallot) -> u64 {
        self.entries.get(ballot).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Counts per ranking, merging entries that differ only in their flag.
    pub fn ranking_counts(&self) -> BTreeMap<Vec<Cand>, u64> {
        let mut out = BTreeMap::new();
        for (b, n) in self.entries() {
            *out.entry(b.ranking.clone()).or_insert(0) += n;
        }
        out
    }

    /// First-choice counts for every roster candidate (zeros included).
    /// Empty rankings are not counted; the `raw_first_invalid` flag is ignored.
    pub fn first_place_tally(&self) -> BTreeMap<Cand, u64> {
        let mut tally: BTreeMap<Cand, u64> = self.roster.cands().map(|c| (c, 0)).collect();
        for (b, n) in self.entries() {
            if let Some(&first) = b.ranking.first() {
                *tally.get_mut(&first).expect("validated ranking") += n;
            }
        }
        tally
    }

    pub fn pairwise_matrix(&self) -> PairwiseMatrix {
        let n = self.roster.len();
        let mut m = PairwiseMatrix {
            size: n,
            cells: vec![0; n * n],
        };
        let mut ranked = vec![false; n];
        for (b, count) in self.entries() {
            ranked.iter_mut().for_each(|r| *r = false);
            for (i, &x) in b.ranking.iter().enumerate() {
                for &y in &b.ranking[i + 1..] {
                    m.cells[x.index() * n + y.index()] += count;
                }
                ranked[x.index()] = true;
            }
            for &x in &b.ranking {
                for (y, &is_ranked) in ranked.iter().enumerate() {
                    if !is_ranked {
                        m.cells[x.index() * n + y] += count;
                    }
                }
            }
        }
        m
    }

    /// Deletes candidates from the roster and from every ranking, shifting
    /// later choices up. Ids are kept; indices are renumbered.
    pub fn remove_candidates(&self, doomed: &BTreeSet<Cand>) -> Result<PreferenceProfile> {
        if let Some(c) = doomed.iter().find(|c| !self.roster.contains(**c)) {
            return Err(Error::Validation(format!("candidate {c} not in roster")));
        }
        let mut remap = vec![None; self.roster.len()];
        let mut kept: Vec<Candidate> = Vec::new();
        for c in self.roster.cands() {
            if !doomed.contains(&c) {
                remap[c.index()] = Some(Cand(kept.len() as u32));
                kept.push(self.roster.get(c).expect("in roster").clone());
            }
        }
        let mut out = PreferenceProfile::new(CandidateRoster::unchecked_official(kept)?);
        for (b, n) in self.entries() {
            let ranking = b.ranking.iter().filter_map(|c| remap[c.index()]).collect();
            out.add_unchecked(b.with_ranking(ranking), n);
        }
        Ok(out)
    }

    fn take(&mut self, ballot: &CleanBallot, count: u64) -> Result<()> {
        let available = self.count_of(ballot);
        if count > available {
            return Err(Error::InsufficientBallots {
                requested: count,
                available,
            });
        }
        if count == available {
            self.entries.remove(ballot);
        } else if count > 0 {
            *self.entries.get_mut(ballot).expect("present") -= count;
        }
        Ok(())
    }

    /// Moves `count` ballots of `from` to the ranking `to`, keeping the flag.
    pub fn replace_ballots(
        &self,
        from: &CleanBallot,
        to: &[Cand],
        count: u64,
    ) -> Result<PreferenceProfile> {
        self.validate(to)?;
        let mut out = self.clone();
        out.take(from, count)?;
        out.add_unchecked(from.with_ranking(to.to_vec()), count);
        Ok(out)
    }

    /// Swaps `candidate` with its neighbour on `count` ballots of type `ballot`.
    pub fn shift_candidate(
        &self,
        ballot: &CleanBallot,
        candidate: Cand,
        direction: Direction,
        count: u64,
    ) -> Result<PreferenceProfile> {
        if !self.roster.contains(candidate) {
            return Err(Error::Validation(format!("candidate {candidate} not in roster")));
        }
        let to = shifted(&ballot.ranking, candidate, direction).ok_or_else(|| {
            Error::BoundaryPosition {
                candidate: self.roster.id(candidate).to_string(),
                direction: direction.as_str(),
            }
        })?;
        self.replace_ballots(ballot, &to, count)
    }

    /// Drops `count` ballots of type `ballot`.
    pub fn remove_ballots(&self, ballot: &CleanBallot, count: u64) -> Result<PreferenceProfile> {
        let mut out = self.clone();
        out.take(ballot, count)?;
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = ProfileDoc {
            schema_version: PROFILE_SCHEMA_VERSION,
            roster: RosterOut {
                candidates: self.roster.candidates().to_vec(),
            },
            entries: self
                .entries()
                .map(|(b, n)| EntryDoc {
                    ranking: self.roster.ids(&b.ranking),
                    raw_first_invalid: b.raw_first_invalid,
                    count: n,
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("profile serializes")
    }

    pub fn from_json(text: &str) -> Result<PreferenceProfile> {
        let doc: ProfileDocIn = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        if doc.schema_version != PROFILE_SCHEMA_VERSION {
            return Err(Error::Validation(format!(
                "unsupported profile schema_version {}",
                doc.schema_version
            )));
        }
        let roster = CandidateRoster::new(doc.roster.candidates)?;
        let mut profile = PreferenceProfile::new(roster);
        for e in doc.entries {
            if e.count == 0 {
                return Err(Error::Validation("profile entry with count 0".into()));
            }
            let ranking = profile.roster.resolve(&e.ranking)?;
            profile.add(
                CleanBallot {
                    ranking,
                    raw_first_invalid: e.raw_first_invalid,
                },
                e.count,
            )?;
        }
        Ok(profile)
    }
}

pub const PROFILE_SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
struct RosterOut {
    candidates: Vec<Candidate>,
}

#[derive(Serialize)]
struct ProfileDoc {
    schema_version: u32,
    roster: RosterOut,
    entries: Vec<EntryDoc>,
}

#[derive(Serialize, Deserialize)]
struct EntryDoc {
    ranking: Vec<String>,
    #[serde(default)]
    raw_first_invalid: bool,
    count: u64,
}

#[derive(Deserialize)]
struct RosterIn {
    candidates: Vec<Candidate>,
}

#[derive(Deserialize)]
struct ProfileDocIn {
    schema_version: u32,
    roster: RosterIn,
    entries: Vec<EntryDoc>,
}

/// Head-to-head counts: `get(x, y)` is the number of ballots ranking `x`
/// above `y`, with unranked candidates below all ranked ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairwiseMatrix {
    size: usize,
    cells: Vec<u64>,
}

impl PairwiseMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, x: Cand, y: Cand) -> u64 {
        self.cells[x.index() * self.size + y.index()]
    }

    /// Strict majority of the ballots expressing a preference between the two.
    pub fn beats(&self, x: Cand, y: Cand) -> bool {
        x != y && self.get(x, y) > self.get(y, x)
    }

    pub fn cands(&self) -> impl Iterator<Item = Cand> {
        (0..self.size).map(|i| Cand(i as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roster::Candidate;
    use proptest::prelude::*;

    fn abc() -> CandidateRoster {
        CandidateRoster::new(vec![
            Candidate::official("A", "Alice"),
            Candidate::official("B", "Bob"),
            Candidate::official("C", "Carol"),
        ])
        .unwrap()
    }

    fn r(ids: &[u32]) -> Vec<Cand> {
        ids.iter().map(|&i| Cand(i)).collect()
    }

    #[test]
    fn empty_total() {
        assert_eq!(PreferenceProfile::new(abc()).total(), 0);
    }

    #[test]
    fn single_ballot_tally_and_pairwise() {
        let mut p = PreferenceProfile::new(abc());
        p.add_ids(&["A", "B"], 1).unwrap();
        assert_eq!(p.first_place_tally()[&Cand(0)], 1);
        let m = p.pairwise_matrix();
        let (a, b, c) = (Cand(0), Cand(1), Cand(2));
        assert_eq!((m.get(a, b), m.get(a, c), m.get(b, c)), (1, 1, 1));
        assert_eq!((m.get(b, a), m.get(c, a), m.get(c, b)), (0, 0, 0));
    }

    #[test]
    fn rejects_duplicate_ranking() {
        let mut p = PreferenceProfile::new(abc());
        assert!(p.add(CleanBallot::new(r(&[0, 0])), 1).is_err());
        assert!(p.add(CleanBallot::new(r(&[7])), 1).is_err());
    }

    #[test]
    fn shift_boundaries_and_insufficient() {
        let mut p = PreferenceProfile::new(abc());
        p.add_ids(&["A", "B", "C"], 5).unwrap();
        let b = CleanBallot::new(r(&[0, 1, 2]));
        assert!(matches!(
            p.shift_candidate(&b, Cand(0), Direction::Up, 1),
            Err(Error::BoundaryPosition { .. })
        ));
        assert!(matches!(
            p.shift_candidate(&b, Cand(2), Direction::Down, 1),
            Err(Error::BoundaryPosition { .. })
        ));
        assert!(matches!(
            p.shift_candidate(&b, Cand(0), Direction::Down, 6),
            Err(Error::InsufficientBallots { requested: 6, available: 5 })
        ));
        assert_eq!(p.shift_candidate(&b, Cand(0), Direction::Down, 0).unwrap(), p);
        let q = p.shift_candidate(&b, Cand(0), Direction::Down, 2).unwrap();
        assert_eq!(q.count_of(&CleanBallot::new(r(&[1, 0, 2]))), 2);
        assert_eq!(q.count_of(&b), 3);
    }

    #[test]
    fn remove_all_of_a_type() {
        let mut p = PreferenceProfile::new(abc());
        p.add_ids(&["A"], 3).unwrap();
        p.add_ids(&["B"], 1).unwrap();
        let q = p.remove_ballots(&CleanBallot::new(r(&[0])), 3).unwrap();
        assert_eq!(q.num_types(), 1);
        assert_eq!(q.total(), 1);
        assert_eq!(p.remove_ballots(&CleanBallot::new(r(&[0])), 0).unwrap(), p);
    }

    #[test]
    fn remove_every_candidate() {
        let mut p = PreferenceProfile::new(abc());
        p.add_ids(&["A", "C"], 2).unwrap();
        let all: BTreeSet<Cand> = p.roster().cands().collect();
        let q = p.remove_candidates(&all).unwrap();
        assert!(q.roster().is_empty());
        assert_eq!(q.total(), 2);
        assert_eq!(q.count_of(&CleanBallot::new(vec![])), 2);
        assert_eq!(p.remove_candidates(&BTreeSet::new()).unwrap(), p);
    }

    #[test]
    fn promote_and_prefers() {
        assert_eq!(promoted(&r(&[2, 0, 1]), Cand(1)), Some(r(&[1, 2, 0])));
        assert_eq!(promoted(&r(&[2, 0, 1]), Cand(2)), None);
        assert!(prefers(&r(&[2]), Cand(2), Cand(0)));
        assert!(!prefers(&r(&[2]), Cand(0), Cand(1)));
        assert!(prefers(&r(&[0, 1]), Cand(0), Cand(1)));
    }

    #[test]
    fn json_round_trip() {
        let mut p = PreferenceProfile::new(abc());
        p.add_ids(&["A", "B"], 4).unwrap();
        p.add(CleanBallot::flagged(r(&[2])), 2).unwrap();
        p.add(CleanBallot::new(vec![]), 1).unwrap();
        let text = p.to_json().to_string();
        assert_eq!(PreferenceProfile::from_json(&text).unwrap(), p);
    }

    fn arb_profile() -> impl Strategy<Value = PreferenceProfile> {
        prop::collection::vec(
            (Just(vec![0u32, 1, 2, 3]).prop_shuffle(), 0usize..=4, any::<bool>(), 1u64..20),
            0..12,
        )
        .prop_map(|items| {
            let roster = CandidateRoster::new(
                ["A", "B", "C", "D"]
                    .iter()
                    .map(|id| Candidate::official(id, id))
                    .collect(),
            )
            .unwrap();
            let mut p = PreferenceProfile::new(roster);
            for (perm, k, flag, n) in items {
                let ballot = CleanBallot {
                    ranking: perm[..k].iter().map(|&i| Cand(i)).collect(),
                    raw_first_invalid: flag,
                };
                p.add(ballot, n).unwrap();
            }
            p
        })
    }

    proptest! {
        #[test]
        fn pairwise_consistency(p in arb_profile()) {
            let m = p.pairwise_matrix();
            for x in m.cands() {
                for y in m.cands() {
                    if x == y { continue; }
                    let neither = p.entries()
                        .filter(|(b, _)| !b.ranking.contains(&x) && !b.ranking.contains(&y))
                        .map(|(_, n)| n)
                        .sum::<u64>();
                    prop_assert_eq!(m.get(x, y) + m.get(y, x) + neither, p.total());
                }
            }
        }

        #[test]
        fn remove_candidates_commutes(p in arb_profile(), a in 0u32..4, b in 0u32..4) {
            prop_assume!(a != b);
            let both: BTreeSet<Cand> = [Cand(a), Cand(b)].into_iter().collect();
            let joint = p.remove_candidates(&both).unwrap();
            let first = p.remove_candidates(&[Cand(a)].into_iter().collect()).unwrap();
            let b_new = first.roster().find(p.roster().id(Cand(b))).unwrap();
            let seq = first.remove_candidates(&[b_new].into_iter().collect()).unwrap();
            prop_assert_eq!(joint.total(), p.total());
            prop_assert_eq!(seq, joint);
        }

        #[test]
        fn shift_up_then_down_restores(p in arb_profile(), pick in any::<prop::sample::Index>(), frac in 0.0f64..=1.0) {
            prop_assume!(p.num_types() > 0);
            let (ballot, n) = p.entries().nth(pick.index(p.num_types())).map(|(b, n)| (b.clone(), n)).unwrap();
            prop_assume!(ballot.ranking.len() >= 2);
            let cand = ballot.ranking[1];
            let t = (n as f64 * frac) as u64;
            let up = p.shift_candidate(&ballot, cand, Direction::Up, t).unwrap();
            prop_assert_eq!(up.total(), p.total());
            let moved = ballot.with_ranking(shifted(&ballot.ranking, cand, Direction::Up).unwrap());
            let back = up.shift_candidate(&moved, cand, Direction::Down, t).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn equality_ignores_insertion_order(p in arb_profile()) {
            let mut rev = PreferenceProfile::new(p.roster().clone());
            let items: Vec<_> = p.entries().map(|(b, n)| (b.clone(), n)).collect();
            for (b, n) in items.into_iter().rev() {
                rev.add(b, n).unwrap();
            }
            prop_assert_eq!(rev, p);
        }
    }
}
