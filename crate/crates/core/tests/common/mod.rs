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


//! Seeded random elections shared by the integration tests.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rcv_forensics::methods::{RcvOptions, TiePolicy, WriteInPolicy};
use rcv_forensics::{Cand, Candidate, CandidateRoster, CleanBallot, PreferenceProfile};

/// Roster of `n` candidates `A`, `B`, ...; the last `writeins` are write-ins.
pub fn roster(n: usize, writeins: usize) -> CandidateRoster {
    let cands = (0..n)
        .map(|i| {
            let id = ((b'A' + i as u8) as char).to_string();
            if i + writeins >= n {
                Candidate::writein(&id, &format!("Write-in {id}"))
            } else {
                Candidate::official(&id, &format!("Candidate {id}"))
            }
        })
        .collect();
    CandidateRoster::new(cands).expect("valid roster")
}

/// A profile over 2..=`max_cands` candidates (possibly one write-in) with
/// at most `max_total` ballots spread over a handful of types.
pub fn random_profile(rng: &mut impl Rng, max_cands: usize, max_total: u64) -> PreferenceProfile {
    let n = rng.gen_range(2..=max_cands);
    random_profile_with(rng, n, 6, max_total)
}

/// Like [`random_profile`] with exactly `n` candidates and up to
/// `max_types` ballot types.
pub fn random_profile_with(
    rng: &mut impl Rng,
    n: usize,
    max_types: usize,
    max_total: u64,
) -> PreferenceProfile {
    let writeins = if n >= 3 && rng.gen_bool(0.3) { 1 } else { 0 };
    let mut p = PreferenceProfile::new(roster(n, writeins));
    let all: Vec<Cand> = (0..n as u32).map(Cand).collect();
    let types = rng.gen_range(1..=max_types);
    let per_type = (max_total / types as u64).max(1);
    for _ in 0..types {
        let count = rng.gen_range(1..=per_type);
        let mut perm = all.clone();
        perm.shuffle(rng);
        let len = rng.gen_range(0..=n);
        perm.truncate(len);
        let flagged = rng.gen_bool(0.2);
        let ballot = if flagged {
            CleanBallot::flagged(perm)
        } else {
            CleanBallot::new(perm)
        };
        p.add(ballot, count).expect("roster candidates");
    }
    p
}

/// Random valid options for `roster`.
pub fn random_options(rng: &mut impl Rng) -> RcvOptions {
    let writein_policy = if rng.gen_bool(0.8) {
        WriteInPolicy::EliminateFirst
    } else {
        WriteInPolicy::TreatAsCandidates
    };
    RcvOptions {
        writein_policy,
        tie_policy: if rng.gen_bool(0.5) {
            TiePolicy::Error
        } else {
            TiePolicy::EliminateLexicographicallySmallest
        },
        buggy_first_round: writein_policy == WriteInPolicy::EliminateFirst && rng.gen_bool(0.3),
    }
}
