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

//! Condorcet winner, majority cycles and minimax (worst loss margin).

use crate::profile::PairwiseMatrix;
use crate::roster::Cand;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondorcetAnalysis {
    pub condorcet_winner: Option<Cand>,
    /// A directed cycle of the strict-majority relation, starting at its
    /// lowest-indexed member; each candidate beats the next, and the last
    /// beats the first.
    pub cycle: Option<Vec<Cand>>,
    /// Largest head-to-head loss margin of each candidate (0 if undefeated).
    pub minimax_scores: BTreeMap<Cand, u64>,
}

impl CondorcetAnalysis {
    /// Every candidate with the smallest worst-loss margin.
    pub fn minimax_leaders(&self) -> Vec<Cand> {
        let best = self.minimax_scores.values().copied().min().unwrap_or(0);
        self.minimax_scores
            .iter()
            .filter(|(_, &v)| v == best)
            .map(|(&c, _)| c)
            .collect()
    }
}

pub fn condorcet_analysis(matrix: &PairwiseMatrix) -> CondorcetAnalysis {
    let cands: Vec<Cand> = matrix.cands().collect();
    let condorcet_winner = cands
        .iter()
        .copied()
        .find(|&x| cands.iter().all(|&y| y == x || matrix.beats(x, y)));
    let minimax_scores = cands
        .iter()
        .map(|&x| {
            let worst = cands
                .iter()
                .filter(|&&y| y != x)
                .map(|&y| matrix.get(y, x).saturating_sub(matrix.get(x, y)))
                .max()
                .unwrap_or(0);
            (x, worst)
        })
        .collect();
    CondorcetAnalysis {
        condorcet_winner,
        cycle: find_cycle(matrix),
        minimax_scores,
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Mark {
    New,
    OnStack,
    Done,
}

fn find_cycle(matrix: &PairwiseMatrix) -> Option<Vec<Cand>> {
    let n = matrix.size();
    let mut marks = vec![Mark::New; n];
    let mut stack = Vec::new();
    for start in matrix.cands() {
        if marks[start.index()] == Mark::New {
            if let Some(cycle) = dfs(matrix, start, &mut marks, &mut stack) {
                return Some(cycle);
            }
        }
    }
    None
}

fn dfs(
    matrix: &PairwiseMatrix,
    x: Cand,
    marks: &mut [Mark],
    stack: &mut Vec<Cand>,
) -> Option<Vec<Cand>> {
    marks[x.index()] = Mark::OnStack;
    stack.push(x);
    for y in matrix.cands() {
        if !matrix.beats(x, y) {
            continue;
        }
        match marks[y.index()] {
            Mark::OnStack => {
                let from = stack.iter().position(|&c| c == y).expect("on stack");
                let mut cycle = stack[from..].to_vec();
                let lowest = cycle
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, c)| **c)
                    .map(|(i, _)| i)
                    .expect("non-empty");
                cycle.rotate_left(lowest);
                return Some(cycle);
            }
            Mark::New => {
                if let Some(cycle) = dfs(matrix, y, marks, stack) {
                    return Some(cycle);
                }
            }
            Mark::Done => {}
        }
    }
    stack.pop();
    marks[x.index()] = Mark::Done;
    None
}
