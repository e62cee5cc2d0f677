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


//! Run configuration: a TOML file whose keys mirror the long flags, with
//! flags taking precedence.

use rcv_forensics::methods::{BordaModel, RcvOptions, TiePolicy, WriteInPolicy};
use rcv_forensics::sanitize::{OvervotePolicy, SkipPolicy};
use rcv_forensics::SanitizePolicy;
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Rcv,
    Plurality,
    Runoff,
    Borda,
    Bucklin,
    Condorcet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Optimistic,
    Pessimistic,
}

impl From<Model> for BordaModel {
    fn from(m: Model) -> Self {
        match m {
            Model::Optimistic => BordaModel::Optimistic,
            Model::Pessimistic => BordaModel::Pessimistic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Skip {
    IgnoreAllSkips,
    TwoConsecutiveSkipsTerminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Overvote {
    TruncateAtOvervote,
    SkipOvervote,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum WriteIns {
    EliminateFirst,
    TreatAsCandidates,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Ties {
    Error,
    Lexicographic,
}

/// `checks` may be written as a string (`"all"`, `"spoiler,noshow"`) or an
/// array of names.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum CheckList {
    One(String),
    Many(Vec<String>),
}

impl CheckList {
    pub fn joined(&self) -> String {
        match self {
            CheckList::One(s) => s.clone(),
            CheckList::Many(v) => v.join(","),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub fixture: Option<String>,
    pub input: Option<PathBuf>,
    pub roster: Option<PathBuf>,
    pub profile: Option<PathBuf>,
    pub policy: Option<String>,
    pub skip_policy: Option<Skip>,
    pub overvote_policy: Option<Overvote>,
    pub writeins: Option<WriteIns>,
    pub tie_policy: Option<Ties>,
    pub buggy_first_round: Option<bool>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub method: Option<Method>,
    pub model: Option<Model>,
    pub n_points: Option<u32>,
    pub k: Option<usize>,
    pub checks: Option<CheckList>,
    pub max_subset_size: Option<usize>,
    pub fail_on_findings: Option<bool>,
    pub cleaned: Option<PathBuf>,
    pub profile_out: Option<PathBuf>,
}

impl FileConfig {
    /// Reads a config file. Relative paths inside it resolve against the
    /// file's directory.
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let mut cfg: FileConfig =
            toml::from_str(&text).map_err(|e| format!("config {}: {e}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [
            &mut cfg.input,
            &mut cfg.roster,
            &mut cfg.profile,
            &mut cfg.output,
            &mut cfg.cleaned,
            &mut cfg.profile_out,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }
}

/// Where ballots come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Fixture(String),
    Cvr { input: PathBuf, roster: PathBuf },
    Profile(PathBuf),
}

pub fn resolve_source(
    fixture: Option<String>,
    input: Option<PathBuf>,
    roster: Option<PathBuf>,
    profile: Option<PathBuf>,
) -> Result<Source, String> {
    match (fixture, input, roster, profile) {
        (Some(f), None, None, None) => Ok(Source::Fixture(f)),
        (None, Some(input), Some(roster), None) => Ok(Source::Cvr { input, roster }),
        (None, Some(_), None, None) => Err("--input requires --roster".into()),
        (None, None, Some(_), None) => Err("--roster requires --input".into()),
        (None, None, None, Some(p)) => Ok(Source::Profile(p)),
        (None, None, None, None) => {
            Err("no ballot source: give --fixture, --input with --roster, or --profile".into())
        }
        _ => Err("give exactly one ballot source: --fixture, --input/--roster, or --profile".into()),
    }
}

pub fn resolve_policy(
    preset: Option<&str>,
    skip: Option<Skip>,
    overvote: Option<Overvote>,
) -> Result<SanitizePolicy, String> {
    let mut policy = match preset {
        Some(name) => SanitizePolicy::preset(name).ok_or_else(|| {
            format!("unknown policy {name:?}; expected alameda, minneapolis or alaska")
        })?,
        None => SanitizePolicy::default(),
    };
    if let Some(s) = skip {
        policy.skip_policy = match s {
            Skip::IgnoreAllSkips => SkipPolicy::IgnoreAllSkips,
            Skip::TwoConsecutiveSkipsTerminate => SkipPolicy::TwoConsecutiveSkipsTerminate,
        };
    }
    if let Some(o) = overvote {
        policy.overvote_policy = match o {
            Overvote::TruncateAtOvervote => OvervotePolicy::TruncateAtOvervote,
            Overvote::SkipOvervote => OvervotePolicy::SkipOvervote,
        };
    }
    Ok(policy)
}

pub fn resolve_options(writeins: Option<WriteIns>, ties: Option<Ties>, buggy: bool) -> RcvOptions {
    RcvOptions {
        writein_policy: match writeins.unwrap_or(WriteIns::EliminateFirst) {
            WriteIns::EliminateFirst => WriteInPolicy::EliminateFirst,
            WriteIns::TreatAsCandidates => WriteInPolicy::TreatAsCandidates,
        },
        tie_policy: match ties.unwrap_or(Ties::Error) {
            Ties::Error => TiePolicy::Error,
            Ties::Lexicographic => TiePolicy::EliminateLexicographicallySmallest,
        },
        buggy_first_round: buggy,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sources_are_exclusive() {
        assert_eq!(
            resolve_source(Some("x".into()), None, None, None),
            Ok(Source::Fixture("x".into()))
        );
        assert!(resolve_source(Some("x".into()), Some("a".into()), Some("b".into()), None).is_err());
        assert!(resolve_source(None, Some("a".into()), None, None).is_err());
        assert!(resolve_source(None, None, None, None).is_err());
    }

    #[test]
    fn explicit_fields_override_preset() {
        let p = resolve_policy(Some("alameda"), None, Some(Overvote::SkipOvervote)).unwrap();
        assert_eq!(p, SanitizePolicy::MINNEAPOLIS);
        assert!(resolve_policy(Some("nowhere"), None, None).is_err());
    }

    #[test]
    fn config_parses_and_rejects_unknown_keys() {
        let cfg: FileConfig = toml::from_str(
            "fixture = \"oakland-table1\"\nmethod = \"borda\"\nmodel = \"pessimistic\"\nn_points = 3\nchecks = [\"spoiler\", \"noshow\"]\n",
        )
        .unwrap();
        assert_eq!(cfg.method, Some(Method::Borda));
        assert_eq!(cfg.checks.unwrap().joined(), "spoiler,noshow");
        assert!(toml::from_str::<FileConfig>("nonsense = 1").is_err());
    }
}
