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

//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A document or line could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Well-formed input that breaks a data invariant (duplicate ids, bad rankings, ...).
    #[error("validation error: {0}")]
    Validation(String),

    #[error("ballot {ballot_id}: unknown candidate id {candidate:?}")]
    UnknownCandidate { ballot_id: String, candidate: String },

    #[error("unknown fixture {name:?}; available fixtures: {}", available.join(", "))]
    UnknownFixture {
        name: String,
        available: Vec<String>,
    },

    /// Several candidates are tied where a unique choice is required.
    #[error("tie between candidates {}", candidates.join(", "))]
    Tie { candidates: Vec<String> },

    #[error("profile contains no ballots")]
    EmptyProfile,

    #[error("no continuing candidates")]
    NoCandidates,

    #[error("insufficient ballots: requested {requested}, profile holds {available}")]
    InsufficientBallots { requested: u64, available: u64 },

    /// A shift was requested past the top or bottom of a ranking.
    #[error("candidate {candidate} cannot be shifted {direction} on this ballot type")]
    BoundaryPosition {
        candidate: String,
        direction: &'static str,
    },

    #[error("invalid options: {0}")]
    InvalidOptions(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("refused: {0}")]
    OutOfBounds(String),

    #[error("malformed witness: {0}")]
    MalformedWitness(String),
}

impl Error {
    pub fn is_tie(&self) -> bool {
        matches!(self, Error::Tie { .. })
    }
}
