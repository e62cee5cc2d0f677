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

//! Candidates and candidate rosters.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Position of a candidate within its roster.
///
/// Every ranking, tally and witness refers to candidates through this index;
/// the roster maps it back to the textual id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cand(pub u32);

impl Cand {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Cand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub id: String,
    pub name: String,
    #[serde(rename = "writein", default)]
    pub is_writein: bool,
}

impl Candidate {
    pub fn official(id: &str, name: &str) -> Self {
        Candidate {
            id: id.to_string(),
            name: name.to_string(),
            is_writein: false,
        }
    }

    pub fn writein(id: &str, name: &str) -> Self {
        Candidate {
            id: id.to_string(),
            name: name.to_string(),
            is_writein: true,
        }
    }
}

/// Ordered list of candidates with unique ids and names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateRoster {
    candidates: Vec<Candidate>,
    #[serde(skip)]
    by_id: BTreeMap<String, Cand>,
}

#[derive(Deserialize)]
struct RosterDoc {
    candidates: Vec<Candidate>,
}

impl<'de> Deserialize<'de> for CandidateRoster {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = RosterDoc::deserialize(d)?;
        CandidateRoster::new(doc.candidates).map_err(serde::de::Error::custom)
    }
}

impl CandidateRoster {
    /// Builds a roster, rejecting duplicate ids or names and rosters without
    /// any official candidate.
    pub fn new(candidates: Vec<Candidate>) -> Result<Self> {
        let roster = Self::unchecked_official(candidates)?;
        if !roster.candidates.iter().any(|c| !c.is_writein) {
            return Err(Error::Validation(
                "roster must contain at least one official (non-write-in) candidate".into(),
            ));
        }
        Ok(roster)
    }

    /// Same as [`CandidateRoster::new`] but allows rosters made only of
    /// write-ins (or empty ones), which arise when candidates are removed.
    pub(crate) fn unchecked_official(candidates: Vec<Candidate>) -> Result<Self> {
        let mut by_id = BTreeMap::new();
        let mut names = BTreeSet::new();
        for (i, c) in candidates.iter().enumerate() {
            if c.id.is_empty() {
                return Err(Error::Validation(format!("candidate #{i} has an empty id")));
            }
            if by_id.insert(c.id.clone(), Cand(i as u32)).is_some() {
                return Err(Error::Validation(format!("duplicate candidate id {:?}", c.id)));
            }
            if !names.insert(c.name.as_str()) {
                return Err(Error::Validation(format!(
                    "duplicate candidate name {:?}",
                    c.name
                )));
            }
        }
        Ok(CandidateRoster { candidates, by_id })
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    /// All candidate indices in roster order.
    pub fn cands(&self) -> impl Iterator<Item = Cand> + '_ {
        (0..self.candidates.len()).map(|i| Cand(i as u32))
    }

    pub fn get(&self, cand: Cand) -> Option<&Candidate> {
        self.candidates.get(cand.index())
    }

    pub fn contains(&self, cand: Cand) -> bool {
        cand.index() < self.candidates.len()
    }

    /// Looks a candidate up by its textual id.
    pub fn find(&self, id: &str) -> Option<Cand> {
        self.by_id.get(id).copied()
    }

    /// Textual id of a candidate.
    ///
    /// Panics if `cand` is not part of this roster.
    pub fn id(&self, cand: Cand) -> &str {
        &self.candidates[cand.index()].id
    }

    pub fn name(&self, cand: Cand) -> &str {
        &self.candidates[cand.index()].name
    }

    pub fn is_writein(&self, cand: Cand) -> bool {
        self.candidates[cand.index()].is_writein
    }

    pub fn ids(&self, cands: &[Cand]) -> Vec<String> {
        cands.iter().map(|&c| self.id(c).to_string()).collect()
    }

    /// Resolves a list of textual ids.
    pub fn resolve(&self, ids: &[impl AsRef<str>]) -> Result<Vec<Cand>> {
        ids.iter()
            .map(|id| {
                self.find(id.as_ref())
                    .ok_or_else(|| Error::Validation(format!("unknown candidate id {:?}", id.as_ref())))
            })
            .collect()
    }

    /// Renders a ranking as `H > M > R`.
    pub fn display_ranking(&self, ranking: &[Cand]) -> String {
        if ranking.is_empty() {
            return "(empty)".to_string();
        }
        ranking
            .iter()
            .map(|&c| self.id(c))
            .collect::<Vec<_>>()
            .join(" > ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_id_rejected() {
        let err = CandidateRoster::new(vec![
            Candidate::official("H", "Mike Hutchinson"),
            Candidate::official("H", "Someone Else"),
        ])
        .unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn duplicate_name_rejected() {
        let err = CandidateRoster::new(vec![
            Candidate::official("A", "Same"),
            Candidate::official("B", "Same"),
        ])
        .unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn needs_an_official_candidate() {
        assert!(CandidateRoster::new(vec![Candidate::writein("WI1", "Write-in 1")]).is_err());
        assert!(CandidateRoster::unchecked_official(vec![]).is_ok());
    }

    #[test]
    fn lookup_round_trips() {
        let r = CandidateRoster::new(vec![
            Candidate::official("A", "Alice"),
            Candidate::writein("W", "Write-in"),
        ])
        .unwrap();
        assert_eq!(r.find("W"), Some(Cand(1)));
        assert_eq!(r.id(Cand(0)), "A");
        assert!(r.is_writein(Cand(1)));
        assert_eq!(r.display_ranking(&[Cand(1), Cand(0)]), "W > A");
        assert!(r.resolve(&["A", "Z"]).is_err());
    }
}
