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

//! Winner-selection methods.

mod borda;
mod bucklin;
mod condorcet;
mod plurality;
mod rcv;

pub use borda::{borda, borda_scores, BordaConfig, BordaModel};
pub use bucklin::{bucklin_scores, bucklin_topk};
pub use condorcet::{condorcet_analysis, CondorcetAnalysis};
pub use plurality::{plurality, plurality_runoff};
pub use rcv::{
    rcv_tabulate, tabulate_entries, PendingRelease, RcvOptions, RoundKind, RoundRecord,
    TabulationResult, TieBreak, TiePolicy, Transfer, WriteInPolicy,
};

use crate::error::Result;
use crate::roster::{Cand, CandidateRoster};
use std::collections::BTreeMap;

/// Per-candidate scores with a unique winner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreResult {
    pub scores: BTreeMap<Cand, u64>,
    pub winner: Cand,
}

/// Candidate with the strictly highest score, or a tie error naming every
/// candidate sharing the maximum.
pub(crate) fn unique_argmax(roster: &CandidateRoster, scores: &BTreeMap<Cand, u64>) -> Result<Cand> {
    let best = scores.values().copied().max().unwrap_or(0);
    let leaders: Vec<Cand> = scores
        .iter()
        .filter(|(_, &v)| v == best)
        .map(|(&c, _)| c)
        .collect();
    match leaders.as_slice() {
        [one] => Ok(*one),
        _ => Err(rcv::tie_error(roster, &leaders)),
    }
}
