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


//! Versioned reports for the command-line front end.
//!
//! Every report is a plain serializable struct holding candidate ids and
//! integers; the text renderer reads the same struct, so both formats carry
//! identical numbers.

use crate::error::{Error, Result};
use crate::forensics::{
    self, BoundaryCase, BoundaryReason, CompromiseWitness, Edit, MonotonicityDirection,
    MonotonicityWitness, NoShowWitness, SearchOutcome, SpoilerWitness,
};
use crate::methods::{
    borda, bucklin_topk, condorcet_analysis, plurality, plurality_runoff, rcv_tabulate,
    BordaConfig, BordaModel, CondorcetAnalysis, RcvOptions, RoundKind, ScoreResult,
    TabulationResult,
};
use crate::profile::{CleanBallot, PreferenceProfile};
use crate::roster::{Cand, CandidateRoster};
use crate::sanitize::{SanitizePolicy, SanitizeStats};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt::Write as _;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// JSON and text rendering of a report.
pub trait Render: Serialize {
    fn to_text(&self) -> String;

    fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateView {
    pub id: String,
    pub name: String,
    pub writein: bool,
}

fn roster_view(roster: &CandidateRoster) -> Vec<CandidateView> {
    roster
        .candidates()
        .iter()
        .map(|c| CandidateView {
            id: c.id.clone(),
            name: c.name.clone(),
            writein: c.is_writein,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub candidate: String,
    pub votes: u64,
}

fn tallies(roster: &CandidateRoster, it: impl IntoIterator<Item = (Cand, u64)>) -> Vec<Tally> {
    it.into_iter()
        .map(|(c, votes)| Tally {
            candidate: roster.id(c).to_string(),
            votes,
        })
        .collect()
}

fn ids(roster: &CandidateRoster, cands: &[Cand]) -> Vec<String> {
    roster.ids(cands)
}

fn label(candidates: &[CandidateView], id: &str) -> String {
    match candidates.iter().find(|c| c.id == id) {
        Some(c) if c.name != c.id => format!("{} ({})", c.id, c.name),
        _ => id.to_string(),
    }
}

// ---------------------------------------------------------------- sanitize

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankingCount {
    pub ranking: Vec<String>,
    pub raw_first_invalid: bool,
    pub count: u64,
}

fn ranking_counts(profile: &PreferenceProfile) -> Vec<RankingCount> {
    let roster = profile.roster();
    let mut rows: Vec<RankingCount> = profile
        .entries()
        .map(|(b, n)| RankingCount {
            ranking: ids(roster, &b.ranking),
            raw_first_invalid: b.raw_first_invalid,
            count: n,
        })
        .collect();
    rows.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.ranking.cmp(&b.ranking)));
    rows
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SanitizeReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub policy: SanitizePolicy,
    pub candidates: Vec<CandidateView>,
    pub stats: SanitizeStats,
    pub ballot_types: usize,
    pub rankings: Vec<RankingCount>,
}

impl SanitizeReport {
    pub fn new(policy: SanitizePolicy, profile: &PreferenceProfile, stats: SanitizeStats) -> Self {
        SanitizeReport {
            schema_version: REPORT_SCHEMA_VERSION,
            command: "sanitize",
            policy,
            candidates: roster_view(profile.roster()),
            stats,
            ballot_types: profile.num_types(),
            rankings: ranking_counts(profile),
        }
    }
}

fn ranking_text(ranking: &[String]) -> String {
    if ranking.is_empty() {
        "(empty)".to_string()
    } else {
        ranking.join(" > ")
    }
}

impl Render for SanitizeReport {
    fn to_text(&self) -> String {
        let mut s = String::new();
        let p = &self.policy;
        let _ = writeln!(
            s,
            "policy: skip={} overvote={} duplicate={}",
            enum_name(&p.skip_policy),
            enum_name(&p.overvote_policy),
            enum_name(&p.duplicate_policy)
        );
        let st = &self.stats;
        let _ = writeln!(s, "ballots: {}", st.total);
        let _ = writeln!(s, "overvote_truncated: {}", st.overvote_truncated);
        let _ = writeln!(s, "skipped_then_ranked: {}", st.skipped_then_ranked);
        let _ = writeln!(
            s,
            "raw_first_invalid_with_official: {}",
            st.raw_first_invalid_with_official
        );
        let _ = writeln!(s, "ballot types: {}", self.ballot_types);
        for r in &self.rankings {
            let flag = if r.raw_first_invalid { "  [first rank invalid]" } else { "" };
            let _ = writeln!(s, "  {:>8}  {}{}", r.count, ranking_text(&r.ranking), flag);
        }
        s
    }
}

fn enum_name<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        _ => String::new(),
    }
}

// --------------------------------------------------------------- tabulate

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferView {
    pub from: String,
    pub to: Vec<Tally>,
    pub exhausted: u64,
    pub pending: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PendingReleaseView {
    pub to: Vec<Tally>,
    pub exhausted: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundView {
    pub number: usize,
    pub kind: RoundKind,
    pub tallies: Vec<Tally>,
    pub continuing: u64,
    pub exhausted: u64,
    pub pending: u64,
    pub eliminated: Vec<String>,
    pub transfers: Vec<TransferView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pending_release: Option<PendingReleaseView>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TieBreakView {
    pub round: usize,
    pub tied: Vec<String>,
    pub eliminated: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundsView {
    pub total: u64,
    pub rounds: Vec<RoundView>,
    pub tie_breaks: Vec<TieBreakView>,
}

impl RoundsView {
    fn new(roster: &CandidateRoster, r: &TabulationResult) -> Self {
        let rounds = r
            .rounds
            .iter()
            .map(|round| RoundView {
                number: round.number,
                kind: round.kind,
                tallies: tallies(roster, round.tallies.iter().map(|(&c, &v)| (c, v))),
                continuing: round.continuing_votes(),
                exhausted: round.exhausted,
                pending: round.pending,
                eliminated: ids(roster, &round.eliminated),
                transfers: round
                    .transfers
                    .iter()
                    .map(|t| TransferView {
                        from: roster.id(t.from).to_string(),
                        to: tallies(roster, t.to.iter().map(|(&c, &v)| (c, v))),
                        exhausted: t.exhausted,
                        pending: t.pending,
                    })
                    .collect(),
                pending_release: round.pending_release.as_ref().map(|p| PendingReleaseView {
                    to: tallies(roster, p.to.iter().map(|(&c, &v)| (c, v))),
                    exhausted: p.exhausted,
                }),
            })
            .collect();
        RoundsView {
            total: r.total,
            rounds,
            tie_breaks: r
                .tie_breaks
                .iter()
                .map(|t| TieBreakView {
                    round: t.round,
                    tied: ids(roster, &t.tied),
                    eliminated: roster.id(t.eliminated).to_string(),
                })
                .collect(),
        }
    }

    fn write_text(&self, s: &mut String, candidates: &[CandidateView]) {
        let _ = writeln!(s, "ballots: {}", self.total);
        for r in &self.rounds {
            let kind = match r.kind {
                RoundKind::WriteInElimination => " (write-in elimination)",
                RoundKind::Count => "",
            };
            let _ = writeln!(s, "round {}{}", r.number, kind);
            for t in &r.tallies {
                let _ = writeln!(s, "  {:<28} {:>8}", label(candidates, &t.candidate), t.votes);
            }
            let _ = writeln!(s, "  {:<28} {:>8}", "continuing", r.continuing);
            let _ = writeln!(s, "  {:<28} {:>8}", "exhausted", r.exhausted);
            if r.pending > 0 {
                let _ = writeln!(s, "  {:<28} {:>8}", "pending", r.pending);
            }
            if !r.eliminated.is_empty() {
                let _ = writeln!(s, "  eliminated: {}", r.eliminated.join(", "));
            }
            for t in &r.transfers {
                let mut parts: Vec<String> =
                    t.to.iter().map(|x| format!("{} +{}", x.candidate, x.votes)).collect();
                parts.push(format!("exhausted +{}", t.exhausted));
                if t.pending > 0 {
                    parts.push(format!("pending +{}", t.pending));
                }
                let _ = writeln!(s, "  transfer from {}: {}", t.from, parts.join(", "));
            }
            if let Some(p) = &r.pending_release {
                let mut parts: Vec<String> =
                    p.to.iter().map(|x| format!("{} +{}", x.candidate, x.votes)).collect();
                parts.push(format!("exhausted +{}", p.exhausted));
                let _ = writeln!(s, "  pending released: {}", parts.join(", "));
            }
        }
        for t in &self.tie_breaks {
            let _ = writeln!(
                s,
                "tie broken in round {} among {}: eliminated {} (lexicographic rule)",
                t.round,
                t.tied.join(", "),
                t.eliminated
            );
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScoresView {
    pub scores: Vec<Tally>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairwiseRow {
    pub candidate: String,
    /// Ballots preferring `candidate` to each roster candidate, in roster order.
    pub over: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CondorcetView {
    pub pairwise: Vec<PairwiseRow>,
    pub condorcet_winner: Option<String>,
    pub cycle: Option<Vec<String>>,
    pub minimax_scores: Vec<Tally>,
    pub minimax_leaders: Vec<String>,
}

impl CondorcetView {
    fn new(profile: &PreferenceProfile) -> Self {
        let roster = profile.roster();
        let m = profile.pairwise_matrix();
        let a: CondorcetAnalysis = condorcet_analysis(&m);
        CondorcetView {
            pairwise: m
                .cands()
                .map(|x| PairwiseRow {
                    candidate: roster.id(x).to_string(),
                    over: m.cands().map(|y| m.get(x, y)).collect(),
                })
                .collect(),
            condorcet_winner: a.condorcet_winner.map(|c| roster.id(c).to_string()),
            cycle: a.cycle.as_ref().map(|c| ids(roster, c)),
            minimax_scores: tallies(roster, a.minimax_scores.iter().map(|(&c, &v)| (c, v))),
            minimax_leaders: ids(roster, &a.minimax_leaders()),
        }
    }

    fn write_text(&self, s: &mut String) {
        let head: Vec<&str> = self.pairwise.iter().map(|r| r.candidate.as_str()).collect();
        let _ = write!(s, "pairwise (row over column):\n  {:<8}", "");
        for h in &head {
            let _ = write!(s, " {:>8}", h);
        }
        s.push('\n');
        for row in &self.pairwise {
            let _ = write!(s, "  {:<8}", row.candidate);
            for (i, v) in row.over.iter().enumerate() {
                if row.candidate == head[i] {
                    let _ = write!(s, " {:>8}", "-");
                } else {
                    let _ = write!(s, " {:>8}", v);
                }
            }
            s.push('\n');
        }
        let _ = writeln!(
            s,
            "condorcet winner: {}",
            self.condorcet_winner.as_deref().unwrap_or("none")
        );
        match &self.cycle {
            Some(c) => {
                let _ = writeln!(s, "majority cycle: {} -> {}", c.join(" -> "), c[0]);
            }
            None => {
                let _ = writeln!(s, "majority cycle: none");
            }
        }
        let _ = writeln!(s, "minimax (worst loss margin):");
        for t in &self.minimax_scores {
            let _ = writeln!(s, "  {:<8} {:>8}", t.candidate, t.votes);
        }
        let _ = writeln!(s, "minimax best: {}", self.minimax_leaders.join(", "));
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MethodOutput {
    Rounds(RoundsView),
    Scores(ScoresView),
    Condorcet(CondorcetView),
}

/// Method selection for [`TabulateReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum MethodSpec {
    Rcv { options: RcvOptions },
    Plurality,
    Runoff,
    Borda { model: BordaModel, n_points: u32 },
    Bucklin { k: usize },
    Condorcet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TabulateReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub method: MethodSpec,
    pub candidates: Vec<CandidateView>,
    pub ballots: u64,
    /// Unique winner; `None` only for a Condorcet analysis without one.
    pub winner: Option<String>,
    pub result: MethodOutput,
}

impl TabulateReport {
    /// Runs `method`. Ties surface as [`Error::Tie`].
    pub fn run(profile: &PreferenceProfile, method: MethodSpec) -> Result<Self> {
        let roster = profile.roster();
        let scores = |r: ScoreResult| {
            (
                Some(roster.id(r.winner).to_string()),
                MethodOutput::Scores(ScoresView {
                    scores: tallies(roster, r.scores),
                }),
            )
        };
        let (winner, result) = match method {
            MethodSpec::Rcv { options } => {
                let r = rcv_tabulate(profile, options)?;
                (
                    Some(roster.id(r.winner).to_string()),
                    MethodOutput::Rounds(RoundsView::new(roster, &r)),
                )
            }
            MethodSpec::Runoff => {
                let r = plurality_runoff(profile)?;
                (
                    Some(roster.id(r.winner).to_string()),
                    MethodOutput::Rounds(RoundsView::new(roster, &r)),
                )
            }
            MethodSpec::Plurality => scores(plurality(profile)?),
            MethodSpec::Borda { model, n_points } => {
                scores(borda(profile, BordaConfig::new(model, n_points))?)
            }
            MethodSpec::Bucklin { k } => scores(bucklin_topk(profile, k)?),
            MethodSpec::Condorcet => {
                let view = CondorcetView::new(profile);
                (view.condorcet_winner.clone(), MethodOutput::Condorcet(view))
            }
        };
        Ok(TabulateReport {
            schema_version: REPORT_SCHEMA_VERSION,
            command: "tabulate",
            method,
            candidates: roster_view(roster),
            ballots: profile.total(),
            winner,
            result,
        })
    }
}

fn method_title(m: &MethodSpec) -> String {
    match m {
        MethodSpec::Rcv { options } => format!(
            "rcv (write-ins: {}, ties: {}, buggy first round: {})",
            enum_name(&options.writein_policy),
            enum_name(&options.tie_policy),
            options.buggy_first_round
        ),
        MethodSpec::Plurality => "plurality".into(),
        MethodSpec::Runoff => "plurality runoff".into(),
        MethodSpec::Borda { model, n_points } => {
            format!("borda ({}, n = {})", enum_name(model), n_points)
        }
        MethodSpec::Bucklin { k } => format!("bucklin (top {k})"),
        MethodSpec::Condorcet => "condorcet".into(),
    }
}

impl Render for TabulateReport {
    fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "method: {}", method_title(&self.method));
        match &self.result {
            MethodOutput::Rounds(r) => r.write_text(&mut s, &self.candidates),
            MethodOutput::Scores(v) => {
                let _ = writeln!(s, "ballots: {}", self.ballots);
                for t in &v.scores {
                    let _ = writeln!(s, "  {:<28} {:>8}", label(&self.candidates, &t.candidate), t.votes);
                }
            }
            MethodOutput::Condorcet(v) => {
                let _ = writeln!(s, "ballots: {}", self.ballots);
                v.write_text(&mut s);
            }
        }
        let _ = writeln!(
            s,
            "winner: {}",
            self.winner
                .as_deref()
                .map(|w| label(&self.candidates, w))
                .unwrap_or_else(|| "none".into())
        );
        s
    }
}

// ---------------------------------------------------------------- compare

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowOutcome {
    Winner,
    Tie,
    Cycle,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompareRow {
    pub method: &'static str,
    pub outcome: RowOutcome,
    pub winner: Option<String>,
    /// Tied candidates, or the members of the majority cycle.
    pub candidates: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompareReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub options: RcvOptions,
    pub borda_n_points: u32,
    pub candidates: Vec<CandidateView>,
    pub ballots: u64,
    pub rows: Vec<CompareRow>,
}

fn row(roster: &CandidateRoster, method: &'static str, r: Result<Cand>) -> Result<CompareRow> {
    match r {
        Ok(w) => Ok(CompareRow {
            method,
            outcome: RowOutcome::Winner,
            winner: Some(roster.id(w).to_string()),
            candidates: Vec::new(),
        }),
        Err(Error::Tie { candidates }) => Ok(CompareRow {
            method,
            outcome: RowOutcome::Tie,
            winner: None,
            candidates,
        }),
        Err(e) => Err(e),
    }
}

impl CompareReport {
    /// Every method side by side. Borda uses one point level per roster
    /// candidate; per-method ties become `tie` rows.
    pub fn run(profile: &PreferenceProfile, options: RcvOptions) -> Result<Self> {
        let roster = profile.roster();
        let n = roster.len().max(2) as u32;
        let analysis = condorcet_analysis(&profile.pairwise_matrix());
        let condorcet = match (&analysis.condorcet_winner, &analysis.cycle) {
            (Some(w), _) => CompareRow {
                method: "condorcet",
                outcome: RowOutcome::Winner,
                winner: Some(roster.id(*w).to_string()),
                candidates: Vec::new(),
            },
            (None, Some(cycle)) => CompareRow {
                method: "condorcet",
                outcome: RowOutcome::Cycle,
                winner: None,
                candidates: ids(roster, cycle),
            },
            (None, None) => CompareRow {
                method: "condorcet",
                outcome: RowOutcome::None,
                winner: None,
                candidates: Vec::new(),
            },
        };
        let leaders = analysis.minimax_leaders();
        let minimax = match leaders.as_slice() {
            [one] => row(roster, "minimax", Ok(*one))?,
            _ => CompareRow {
                method: "minimax",
                outcome: RowOutcome::Tie,
                winner: None,
                candidates: ids(roster, &leaders),
            },
        };
        let rows = vec![
            row(roster, "rcv", rcv_tabulate(profile, options).map(|r| r.winner))?,
            row(roster, "plurality", plurality(profile).map(|r| r.winner))?,
            row(roster, "runoff", plurality_runoff(profile).map(|r| r.winner))?,
            row(
                roster,
                "borda-om",
                borda(profile, BordaConfig::new(BordaModel::Optimistic, n)).map(|r| r.winner),
            )?,
            row(
                roster,
                "borda-pm",
                borda(profile, BordaConfig::new(BordaModel::Pessimistic, n)).map(|r| r.winner),
            )?,
            row(roster, "bucklin-2", bucklin_topk(profile, 2).map(|r| r.winner))?,
            condorcet,
            minimax,
        ];
        Ok(CompareReport {
            schema_version: REPORT_SCHEMA_VERSION,
            command: "compare",
            options,
            borda_n_points: n,
            candidates: roster_view(roster),
            ballots: profile.total(),
            rows,
        })
    }

    pub fn row(&self, method: &str) -> Option<&CompareRow> {
        self.rows.iter().find(|r| r.method == method)
    }
}

impl Render for CompareReport {
    fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "ballots: {}", self.ballots);
        let _ = writeln!(s, "borda points: n = {}", self.borda_n_points);
        for r in &self.rows {
            let cell = match r.outcome {
                RowOutcome::Winner => label(&self.candidates, r.winner.as_deref().unwrap_or("")),
                RowOutcome::Tie => format!("tie ({})", r.candidates.join(", ")),
                RowOutcome::Cycle => format!(
                    "none (cycle {} -> {})",
                    r.candidates.join(" -> "),
                    r.candidates.first().map(String::as_str).unwrap_or("")
                ),
                RowOutcome::None => "none".into(),
            };
            let _ = writeln!(s, "  {:<10} {}", r.method, cell);
        }
        s
    }
}

// ------------------------------------------------------------------ audit

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Condorcet,
    Spoiler,
    Monotonicity,
    Noshow,
    Compromise,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::Condorcet,
        Check::Spoiler,
        Check::Monotonicity,
        Check::Noshow,
        Check::Compromise,
    ];

    pub fn parse(name: &str) -> Option<Check> {
        match name.trim().to_ascii_lowercase().as_str() {
            "condorcet" => Some(Check::Condorcet),
            "spoiler" | "spoilers" => Some(Check::Spoiler),
            "monotonicity" => Some(Check::Monotonicity),
            "noshow" | "no-show" => Some(Check::Noshow),
            "compromise" => Some(Check::Compromise),
            _ => None,
        }
    }

    /// Parses a comma-separated list; `all` selects everything.
    pub fn parse_list(list: &str) -> Result<BTreeSet<Check>> {
        let mut out = BTreeSet::new();
        for part in list.split(',').filter(|p| !p.trim().is_empty()) {
            if part.trim().eq_ignore_ascii_case("all") {
                out.extend(Check::ALL);
            } else {
                out.insert(Check::parse(part).ok_or_else(|| {
                    Error::Config(format!(
                        "unknown check {:?}; expected all, condorcet, spoiler, monotonicity, noshow or compromise",
                        part.trim()
                    ))
                })?);
            }
        }
        if out.is_empty() {
            return Err(Error::Config("no checks selected".into()));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallotView {
    pub ranking: Vec<String>,
    pub raw_first_invalid: bool,
}

fn ballot_view(roster: &CandidateRoster, b: &CleanBallot) -> BallotView {
    BallotView {
        ranking: ids(roster, &b.ranking),
        raw_first_invalid: b.raw_first_invalid,
    }
}

fn ballot_text(b: &BallotView) -> String {
    let mut s = ranking_text(&b.ranking);
    if b.raw_first_invalid {
        s.push_str(" [first rank invalid]");
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityView {
    pub direction: &'static str,
    pub focal_candidate: String,
    pub ballot_type: BallotView,
    pub modified_type: BallotView,
    pub min_count: u64,
    pub max_count: u64,
    pub original_winner: String,
    pub new_winner: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoShowView {
    pub ballot_type: BallotView,
    pub count: u64,
    pub original_winner: String,
    pub new_winner: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompromiseView {
    pub ballot_type: BallotView,
    pub promoted_candidate: String,
    pub count: u64,
    pub original_winner: String,
    pub new_winner: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpoilerView {
    pub removed: Vec<String>,
    pub original_winner: String,
    pub new_winner: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryView {
    pub edit: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ballot_type: Option<BallotView>,
    pub candidates: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
    /// Candidates tied for elimination; empty when no ballots remained.
    pub tied: Vec<String>,
}

fn boundary_view(roster: &CandidateRoster, b: &BoundaryCase) -> BoundaryView {
    let tied = match &b.reason {
        BoundaryReason::Tie(t) => ids(roster, t),
        BoundaryReason::NoBallots => Vec::new(),
    };
    let (edit, ballot_type, candidates, direction, count) = match &b.edit {
        Edit::RemoveCandidates { removed } => ("remove_candidates", None, ids(roster, removed), None, None),
        Edit::Shift {
            ballot_type,
            candidate,
            direction,
            count,
        } => (
            "shift",
            Some(ballot_view(roster, ballot_type)),
            vec![roster.id(*candidate).to_string()],
            Some(direction.as_str()),
            Some(*count),
        ),
        Edit::RemoveBallots { ballot_type, count } => (
            "remove_ballots",
            Some(ballot_view(roster, ballot_type)),
            Vec::new(),
            None,
            Some(*count),
        ),
        Edit::Promote {
            ballot_type,
            candidate,
            count,
        } => (
            "promote",
            Some(ballot_view(roster, ballot_type)),
            vec![roster.id(*candidate).to_string()],
            None,
            Some(*count),
        ),
    };
    BoundaryView {
        edit,
        ballot_type,
        candidates,
        direction,
        count,
        tied,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Section<W> {
    pub witnesses: Vec<W>,
    pub boundary: Vec<BoundaryView>,
}

fn section<W, V>(
    roster: &CandidateRoster,
    out: &SearchOutcome<W>,
    view: impl Fn(&W) -> V,
) -> Section<V> {
    Section {
        witnesses: out.witnesses.iter().map(view).collect(),
        boundary: out.boundary.iter().map(|b| boundary_view(roster, b)).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub options: RcvOptions,
    pub checks: Vec<Check>,
    pub max_subset_size: usize,
    pub candidates: Vec<CandidateView>,
    pub ballots: u64,
    pub original_winner: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condorcet: Option<CondorcetView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spoilers: Option<Section<SpoilerView>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub downward: Option<Section<MonotonicityView>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upward: Option<Section<MonotonicityView>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noshow: Option<Section<NoShowView>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compromise: Option<Section<CompromiseView>>,
}

fn mono_view(roster: &CandidateRoster, w: &MonotonicityWitness) -> MonotonicityView {
    MonotonicityView {
        direction: w.direction.as_str(),
        focal_candidate: roster.id(w.focal_candidate).to_string(),
        ballot_type: ballot_view(roster, &w.ballot_type),
        modified_type: ballot_view(roster, &w.modified_type),
        min_count: w.min_count,
        max_count: w.max_count,
        original_winner: roster.id(w.original_winner).to_string(),
        new_winner: roster.id(w.new_winner).to_string(),
    }
}

impl AuditReport {
    /// Runs the selected searches. A tie in the unedited election is an
    /// error. `max_subset_size` is clamped to the number of losers.
    pub fn run(
        profile: &PreferenceProfile,
        options: RcvOptions,
        checks: &BTreeSet<Check>,
        max_subset_size: usize,
    ) -> Result<Self> {
        let roster = profile.roster();
        let winner = rcv_tabulate(profile, options)?.winner;
        let max_subset_size = max_subset_size.min(roster.len().saturating_sub(1));
        let id = |c: Cand| roster.id(c).to_string();
        let has = |c: Check| checks.contains(&c);

        let condorcet = has(Check::Condorcet).then(|| CondorcetView::new(profile));
        let spoilers = if has(Check::Spoiler) {
            let out = forensics::find_spoilers(profile, options, max_subset_size)?;
            Some(section(roster, &out, |w: &SpoilerWitness| SpoilerView {
                removed: ids(roster, &w.removed),
                original_winner: id(w.original_winner),
                new_winner: id(w.new_winner),
            }))
        } else {
            None
        };
        let (downward, upward) = if has(Check::Monotonicity) {
            let down =
                forensics::search_monotonicity(profile, options, MonotonicityDirection::Downward)?;
            let up = forensics::search_monotonicity(profile, options, MonotonicityDirection::Upward)?;
            (
                Some(section(roster, &down, |w| mono_view(roster, w))),
                Some(section(roster, &up, |w| mono_view(roster, w))),
            )
        } else {
            (None, None)
        };
        let noshow = if has(Check::Noshow) {
            let out = forensics::search_noshow(profile, options)?;
            Some(section(roster, &out, |w: &NoShowWitness| NoShowView {
                ballot_type: ballot_view(roster, &w.ballot_type),
                count: w.count,
                original_winner: id(w.original_winner),
                new_winner: id(w.new_winner),
            }))
        } else {
            None
        };
        let compromise = if has(Check::Compromise) {
            let out = forensics::search_compromise(profile, options)?;
            Some(section(roster, &out, |w: &CompromiseWitness| CompromiseView {
                ballot_type: ballot_view(roster, &w.ballot_type),
                promoted_candidate: id(w.promoted_candidate),
                count: w.count,
                original_winner: id(w.original_winner),
                new_winner: id(w.new_winner),
            }))
        } else {
            None
        };
        Ok(AuditReport {
            schema_version: REPORT_SCHEMA_VERSION,
            command: "audit",
            options,
            checks: checks.iter().copied().collect(),
            max_subset_size,
            candidates: roster_view(roster),
            ballots: profile.total(),
            original_winner: id(winner),
            condorcet,
            spoilers,
            downward,
            upward,
            noshow,
            compromise,
        })
    }

    /// Number of pathologies found, counting a majority cycle as one.
    pub fn finding_count(&self) -> usize {
        let cycle = self
            .condorcet
            .as_ref()
            .is_some_and(|c| c.cycle.is_some()) as usize;
        cycle
            + self.spoilers.as_ref().map_or(0, |s| s.witnesses.len())
            + self.downward.as_ref().map_or(0, |s| s.witnesses.len())
            + self.upward.as_ref().map_or(0, |s| s.witnesses.len())
            + self.noshow.as_ref().map_or(0, |s| s.witnesses.len())
            + self.compromise.as_ref().map_or(0, |s| s.witnesses.len())
    }
}

fn boundary_text(s: &mut String, boundary: &[BoundaryView]) {
    if boundary.is_empty() {
        return;
    }
    let _ = writeln!(s, "  boundary cases (outcome undefined under the tie policy): {}", boundary.len());
    for b in boundary {
        let mut what = String::from(b.edit);
        if !b.candidates.is_empty() {
            let _ = write!(what, " {}", b.candidates.join(", "));
        }
        if let Some(d) = b.direction {
            let _ = write!(what, " {d}");
        }
        if let Some(n) = b.count {
            let _ = write!(what, " on {n}");
        }
        if let Some(t) = &b.ballot_type {
            let _ = write!(what, " of {}", ballot_text(t));
        }
        let why = if b.tied.is_empty() {
            "no ballots left".to_string()
        } else {
            format!("tie between {}", b.tied.join(", "))
        };
        let _ = writeln!(s, "    {what}: {why}");
    }
}

fn mono_text(s: &mut String, title: &str, sec: &Section<MonotonicityView>) {
    let _ = writeln!(s, "{title}: {} witness(es)", sec.witnesses.len());
    for w in &sec.witnesses {
        let _ = writeln!(
            s,
            "  shift {} {} on t in [{}, {}] of {} -> {}: winner {} becomes {}",
            w.focal_candidate,
            if w.direction == "downward" { "down" } else { "up" },
            w.min_count,
            w.max_count,
            ballot_text(&w.ballot_type),
            ballot_text(&w.modified_type),
            w.original_winner,
            w.new_winner
        );
    }
    boundary_text(s, &sec.boundary);
}

impl Render for AuditReport {
    fn to_text(&self) -> String {
        let mut s = String::new();
        let o = &self.options;
        let _ = writeln!(
            s,
            "rcv options: write-ins {}, ties {}, buggy first round {}",
            enum_name(&o.writein_policy),
            enum_name(&o.tie_policy),
            o.buggy_first_round
        );
        let _ = writeln!(s, "ballots: {}", self.ballots);
        let _ = writeln!(s, "rcv winner: {}", label(&self.candidates, &self.original_winner));
        if let Some(c) = &self.condorcet {
            c.write_text(&mut s);
        }
        if let Some(sec) = &self.spoilers {
            let _ = writeln!(
                s,
                "spoilers (subsets up to {}): {} witness(es)",
                self.max_subset_size, sec.witnesses.len()
            );
            for w in &sec.witnesses {
                let _ = writeln!(
                    s,
                    "  remove {{{}}}: winner {} becomes {}",
                    w.removed.join(", "),
                    w.original_winner,
                    w.new_winner
                );
            }
            boundary_text(&mut s, &sec.boundary);
        }
        if let Some(sec) = &self.downward {
            mono_text(&mut s, "downward monotonicity", sec);
        }
        if let Some(sec) = &self.upward {
            mono_text(&mut s, "upward monotonicity", sec);
        }
        if let Some(sec) = &self.noshow {
            let _ = writeln!(s, "no-show: {} witness(es)", sec.witnesses.len());
            for w in &sec.witnesses {
                let _ = writeln!(
                    s,
                    "  remove {} of {}: winner {} becomes {}",
                    w.count,
                    ballot_text(&w.ballot_type),
                    w.original_winner,
                    w.new_winner
                );
            }
            boundary_text(&mut s, &sec.boundary);
        }
        if let Some(sec) = &self.compromise {
            let _ = writeln!(s, "compromise: {} witness(es)", sec.witnesses.len());
            for w in &sec.witnesses {
                let _ = writeln!(
                    s,
                    "  promote {} on {} of {}: winner {} becomes {}",
                    w.promoted_candidate,
                    w.count,
                    ballot_text(&w.ballot_type),
                    w.original_winner,
                    w.new_winner
                );
            }
            boundary_text(&mut s, &sec.boundary);
        }
        let _ = writeln!(s, "findings: {}", self.finding_count());
        s
    }
}
