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

//! Borda count over partial ballots.
//!
//! On a ballot ranking `k` candidates the `i`-th choice (1-based) earns
//! `n_points - i`. Unranked candidates earn nothing under the pessimistic
//! model and `n_points - k - 1` each under the optimistic one.

use super::{unique_argmax, ScoreResult};
use crate::error::{Error, Result};
use crate::profile::PreferenceProfile;
use crate::roster::Cand;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BordaModel {
    Optimistic,
    Pessimistic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BordaConfig {
    pub model: BordaModel,
    /// Points for a first choice plus one; usually the number of rankable
    /// candidates.
    pub n_points: u32,
}

impl BordaConfig {
    pub fn new(model: BordaModel, n_points: u32) -> Self {
        BordaConfig { model, n_points }
    }
}

pub fn borda_scores(profile: &PreferenceProfile, config: BordaConfig) -> Result<BTreeMap<Cand, u64>> {
    let n = config.n_points as u64;
    if n < 2 {
        return Err(Error::Config(format!("n_points must be at least 2, got {n}")));
    }
    let roster = profile.roster();
    let mut scores: BTreeMap<Cand, u64> = roster.cands().map(|c| (c, 0)).collect();
    for (b, count) in profile.entries() {
        let k = b.ranking.len() as u64;
        if k > n {
            return Err(Error::Config(format!(
                "ballot {} ranks {k} candidates but n_points is {n}",
                roster.display_ranking(&b.ranking)
            )));
        }
        for (i, c) in b.ranking.iter().enumerate() {
            *scores.get_mut(c).expect("roster candidate") += (n - 1 - i as u64) * count;
        }
        if config.model == BordaModel::Optimistic {
            let filler = n.saturating_sub(k + 1);
            if filler > 0 {
                for (c, s) in scores.iter_mut() {
                    if !b.ranking.contains(c) {
                        *s += filler * count;
                    }
                }
            }
        }
    }
    Ok(scores)
}

pub fn borda(profile: &PreferenceProfile, config: BordaConfig) -> Result<ScoreResult> {
    let scores = borda_scores(profile, config)?;
    let winner = unique_argmax(profile.roster(), &scores)?;
    Ok(ScoreResult { scores, winner })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::oakland_table1_profile;
    use crate::roster::{Candidate, CandidateRoster};

    fn five() -> PreferenceProfile {
        PreferenceProfile::new(
            CandidateRoster::new(
                ["A", "B", "C", "D", "E"].iter().map(|id| Candidate::official(id, id)).collect(),
            )
            .unwrap(),
        )
    }

    #[test]
    fn worked_five_candidate_ballot() {
        let mut p = five();
        p.add_ids(&["A", "B"], 1).unwrap();
        let pm = borda_scores(&p, BordaConfig::new(BordaModel::Pessimistic, 5)).unwrap();
        assert_eq!(pm.values().copied().collect::<Vec<_>>(), vec![4, 3, 0, 0, 0]);
        let om = borda_scores(&p, BordaConfig::new(BordaModel::Optimistic, 5)).unwrap();
        assert_eq!(om.values().copied().collect::<Vec<_>>(), vec![4, 3, 2, 2, 2]);
    }

    #[test]
    fn full_ballot_models_agree() {
        let mut p = five();
        p.add_ids(&["C", "A", "E", "B", "D"], 1).unwrap();
        for model in [BordaModel::Optimistic, BordaModel::Pessimistic] {
            let s = borda_scores(&p, BordaConfig::new(model, 5)).unwrap();
            assert_eq!(s.values().sum::<u64>(), 5 * 4 / 2);
        }
    }

    #[test]
    fn table1_models() {
        let p = oakland_table1_profile();
        let om = borda(&p, BordaConfig::new(BordaModel::Optimistic, 3)).unwrap();
        assert_eq!(om.scores.values().copied().collect::<Vec<_>>(), vec![29329, 29190, 28690]);
        assert_eq!(om.winner, Cand(0));
        let pm = borda(&p, BordaConfig::new(BordaModel::Pessimistic, 3)).unwrap();
        assert_eq!(pm.scores.values().copied().collect::<Vec<_>>(), vec![23743, 23123, 24517]);
        assert_eq!(pm.winner, Cand(2));
    }

    #[test]
    fn too_long_ballot_is_config_error() {
        let mut p = five();
        p.add_ids(&["A", "B", "C"], 1).unwrap();
        assert!(matches!(
            borda_scores(&p, BordaConfig::new(BordaModel::Pessimistic, 2)),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            borda_scores(&p, BordaConfig::new(BordaModel::Pessimistic, 1)),
            Err(Error::Config(_))
        ));
    }
}
