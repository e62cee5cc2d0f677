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


//! Ranked-choice tabulation, ballot sanitization and paradox forensics.
//!
//! Raw cast vote records are parsed by [`cvr`], normalized by [`sanitize`]
//! into a [`PreferenceProfile`], and then counted by the rules in
//! [`methods`] or probed for paradoxes by [`forensics`]. [`report`] renders
//! results as versioned JSON or plain text.

pub mod cvr;
pub mod error;
pub mod fixtures;
pub mod forensics;
pub mod methods;
pub mod profile;
pub mod report;
pub mod roster;
pub mod sanitize;

pub use error::{Error, Result};
pub use profile::{CleanBallot, PreferenceProfile};
pub use roster::{Cand, Candidate, CandidateRoster};
pub use sanitize::SanitizePolicy;
