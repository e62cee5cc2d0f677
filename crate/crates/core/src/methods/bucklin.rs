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

use super::{unique_argmax, ScoreResult};
use crate::error::{Error, Result};
use crate::profile::PreferenceProfile;
use crate::roster::Cand;
use std::collections::BTreeMap;

/// Number of ballots ranking each candidate within the top `k` positions.
pub fn bucklin_scores(profile: &PreferenceProfile, k: usize) -> Result<BTreeMap<Cand, u64>> {
    if k == 0 {
        return Err(Error::Config("bucklin k must be at least 1".into()));
    }
    let mut scores: BTreeMap<Cand, u64> = profile.roster().cands().map(|c| (c, 0)).collect();
    for (b, n) in profile.entries() {
        for c in b.ranking.iter().take(k) {
            *scores.get_mut(c).expect("roster candidate") += n;
        }
    }
    Ok(scores)
}

pub fn bucklin_topk(profile: &PreferenceProfile, k: usize) -> Result<ScoreResult> {
    let scores = bucklin_scores(profile, k)?;
    let winner = unique_argmax(profile.roster(), &scores)?;
    Ok(ScoreResult { scores, winner })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::oakland_table1_profile;

    #[test]
    fn table1_top_two() {
        let res = bucklin_topk(&oakland_table1_profile(), 2).unwrap();
        assert_eq!(res.scores.values().copied().collect::<Vec<_>>(), vec![15516, 14933, 14502]);
        assert_eq!(res.winner, Cand(0));
    }

    #[test]
    fn k1_is_first_place_tally() {
        let p = oakland_table1_profile();
        assert_eq!(bucklin_scores(&p, 1).unwrap(), p.first_place_tally());
    }

    #[test]
    fn large_k_counts_every_ranked_candidate_once() {
        let p = oakland_table1_profile();
        let s = bucklin_scores(&p, 10).unwrap();
        let ranked: u64 = p.entries().map(|(b, n)| b.ranking.len() as u64 * n).sum();
        assert_eq!(s.values().sum::<u64>(), ranked);
    }

    #[test]
    fn k0_rejected() {
        assert!(bucklin_scores(&oakland_table1_profile(), 0).is_err());
    }
}
