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


mod config;

use clap::{Args, Parser, Subcommand};
use config::{
    resolve_options, resolve_policy, resolve_source, FileConfig, Format, Method, Model, Overvote,
    Skip, Source, Ties, WriteIns,
};
use rcv_forensics::cvr::{load_roster, parse_cvr, RawBallot};
use rcv_forensics::fixtures::load_builtin_fixture;
use rcv_forensics::report::{
    AuditReport, Check, CompareReport, MethodSpec, Render, SanitizeReport, TabulateReport,
};
use rcv_forensics::sanitize::{sanitize_all, sanitize_ballot};
use rcv_forensics::{CandidateRoster, Error, PreferenceProfile, SanitizePolicy};
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_FINDINGS: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DATA: u8 = 3;
const EXIT_TIE: u8 = 4;

/// Ranked-choice tabulation and paradox forensics.
#[derive(Parser)]
#[command(name = "rcv-forensics", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize raw ballots under a jurisdiction policy.
    Sanitize(SanitizeArgs),
    /// Count an election under one method.
    Tabulate(TabulateArgs),
    /// Winner under every method, side by side.
    Compare(CompareArgs),
    /// Search for paradoxes and print replayable witnesses.
    Audit(AuditArgs),
}

#[derive(Args)]
struct Common {
    /// TOML file with defaults for any of these flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Built-in fixture: oakland-table1, oakland-full-synthetic, table2-examples.
    #[arg(long)]
    fixture: Option<String>,
    /// Line-oriented JSON cast vote record.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Candidate roster JSON for --input.
    #[arg(long)]
    roster: Option<PathBuf>,
    /// Preference profile JSON, as written by `sanitize --profile-out`.
    #[arg(long)]
    profile: Option<PathBuf>,
    /// Sanitization preset: alameda, minneapolis or alaska.
    #[arg(long)]
    policy: Option<String>,
    #[arg(long, value_enum)]
    skip_policy: Option<Skip>,
    #[arg(long, value_enum)]
    overvote_policy: Option<Overvote>,
    #[arg(long, value_enum)]
    writeins: Option<WriteIns>,
    #[arg(long, value_enum)]
    tie_policy: Option<Ties>,
    /// Withhold ballots with an invalid first rank from the first official round.
    #[arg(long)]
    buggy_first_round: bool,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SanitizeArgs {
    #[command(flatten)]
    common: Common,
    /// Write the cleaned ballots as a CVR.
    #[arg(long)]
    cleaned: Option<PathBuf>,
    /// Write the aggregated preference profile as JSON.
    #[arg(long)]
    profile_out: Option<PathBuf>,
}

#[derive(Args)]
struct TabulateArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Borda treatment of unranked candidates.
    #[arg(long, value_enum)]
    model: Option<Model>,
    /// Borda point levels; defaults to the roster size.
    #[arg(long)]
    n_points: Option<u32>,
    /// Bucklin depth.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct AuditArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated: all, condorcet, spoiler, monotonicity, noshow, compromise.
    #[arg(long)]
    checks: Option<String>,
    /// Largest set of losers removed together by the spoiler search.
    #[arg(long)]
    max_subset_size: Option<usize>,
    /// Exit with status 1 when anything is found.
    #[arg(long)]
    fail_on_findings: bool,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(String),
    Tie(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
            CliError::Tie(_) => EXIT_TIE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Tie(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Tie { .. } => CliError::Tie(e.to_string()),
            Error::Config(_) | Error::InvalidOptions(_) | Error::UnknownFixture { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Data(e.to_string()),
        }
    }
}

/// Common flags merged over the config file.
struct Resolved {
    file: FileConfig,
    source: Source,
    policy: SanitizePolicy,
    options: rcv_forensics::methods::RcvOptions,
    format: Format,
    output: Option<PathBuf>,
}

fn resolve(common: Common) -> Result<Resolved, CliError> {
    let file = match &common.config {
        Some(path) => FileConfig::load(path).map_err(CliError::Usage)?,
        None => FileConfig::default(),
    };
    // A source given on the command line replaces the configured one.
    let flag_source = common.fixture.is_some()
        || common.input.is_some()
        || common.roster.is_some()
        || common.profile.is_some();
    let source = if flag_source {
        resolve_source(common.fixture, common.input, common.roster, common.profile)
    } else {
        resolve_source(
            file.fixture.clone(),
            file.input.clone(),
            file.roster.clone(),
            file.profile.clone(),
        )
    }
    .map_err(CliError::Usage)?;
    let policy = resolve_policy(
        common.policy.as_deref().or(file.policy.as_deref()),
        common.skip_policy.or(file.skip_policy),
        common.overvote_policy.or(file.overvote_policy),
    )
    .map_err(CliError::Usage)?;
    let options = resolve_options(
        common.writeins.or(file.writeins),
        common.tie_policy.or(file.tie_policy),
        common.buggy_first_round || file.buggy_first_round.unwrap_or(false),
    );
    options.validate()?;
    Ok(Resolved {
        format: common.format.or(file.format).unwrap_or(Format::Text),
        output: common.output.or_else(|| file.output.clone()),
        file,
        source,
        policy,
        options,
    })
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))
}

fn with_path(path: &Path, e: Error) -> CliError {
    match CliError::from(e) {
        CliError::Data(m) => CliError::Data(format!("{}: {m}", path.display())),
        other => other,
    }
}

/// Raw ballots and roster for a fixture or CVR source.
fn load_raw(source: &Source) -> Result<(CandidateRoster, Vec<RawBallot>), CliError> {
    match source {
        Source::Fixture(name) => {
            let f = load_builtin_fixture(name)?;
            Ok((f.roster, f.ballots))
        }
        Source::Cvr { input, roster } => {
            let roster_data = load_roster(open(roster)?).map_err(|e| with_path(roster, e))?;
            let ballots = parse_cvr(open(input)?, &roster_data).map_err(|e| with_path(input, e))?;
            Ok((roster_data, ballots))
        }
        Source::Profile(_) => Err(CliError::Usage(
            "sanitize needs raw ballots: give --fixture or --input/--roster".into(),
        )),
    }
}

fn load_profile(r: &Resolved) -> Result<PreferenceProfile, CliError> {
    match &r.source {
        Source::Profile(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
            PreferenceProfile::from_json(&text).map_err(|e| with_path(path, e))
        }
        source => {
            let (roster, ballots) = load_raw(source)?;
            Ok(sanitize_all(&ballots, r.policy, &roster).0)
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))
}

fn emit<R: Render>(r: &Resolved, report: &R) -> Result<(), CliError> {
    let text = match r.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    match &r.output {
        Some(path) => write_file(path, &text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Data(format!("cannot write output: {e}")))
        }
    }
}

fn cleaned_cvr(ballots: &[RawBallot], policy: SanitizePolicy, roster: &CandidateRoster) -> String {
    let mut out = String::new();
    for raw in ballots {
        let clean = sanitize_ballot(raw, policy, roster);
        let line = serde_json::json!({
            "ballot_id": raw.ballot_id,
            "ranks": clean.ranking.iter().map(|&c| vec![roster.id(c)]).collect::<Vec<_>>(),
            "raw_first_invalid": clean.raw_first_invalid,
        });
        out.push_str(&line.to_string());
        out.push('\n');
    }
    out
}

fn cmd_sanitize(args: SanitizeArgs) -> Result<u8, CliError> {
    let r = resolve(args.common)?;
    let (roster, ballots) = load_raw(&r.source)?;
    let (profile, stats) = sanitize_all(&ballots, r.policy, &roster);
    if let Some(path) = args.cleaned.or_else(|| r.file.cleaned.clone()) {
        write_file(&path, &cleaned_cvr(&ballots, r.policy, &roster))?;
    }
    if let Some(path) = args.profile_out.or_else(|| r.file.profile_out.clone()) {
        let mut json = serde_json::to_string_pretty(&profile.to_json()).expect("profile serializes");
        json.push('\n');
        write_file(&path, &json)?;
    }
    emit(&r, &SanitizeReport::new(r.policy, &profile, stats))?;
    Ok(0)
}

fn cmd_tabulate(args: TabulateArgs) -> Result<u8, CliError> {
    let r = resolve(args.common)?;
    let profile = load_profile(&r)?;
    let f = &r.file;
    let method = match args.method.or(f.method).unwrap_or(Method::Rcv) {
        Method::Rcv => MethodSpec::Rcv { options: r.options },
        Method::Plurality => MethodSpec::Plurality,
        Method::Runoff => MethodSpec::Runoff,
        Method::Borda => MethodSpec::Borda {
            model: args.model.or(f.model).unwrap_or(Model::Optimistic).into(),
            n_points: args
                .n_points
                .or(f.n_points)
                .unwrap_or(profile.roster().len() as u32),
        },
        Method::Bucklin => MethodSpec::Bucklin {
            k: args.k.or(f.k).unwrap_or(2),
        },
        Method::Condorcet => MethodSpec::Condorcet,
    };
    emit(&r, &TabulateReport::run(&profile, method)?)?;
    Ok(0)
}

fn cmd_compare(args: CompareArgs) -> Result<u8, CliError> {
    let r = resolve(args.common)?;
    let profile = load_profile(&r)?;
    emit(&r, &CompareReport::run(&profile, r.options)?)?;
    Ok(0)
}

fn cmd_audit(args: AuditArgs) -> Result<u8, CliError> {
    let r = resolve(args.common)?;
    let f = &r.file;
    let checks = args
        .checks
        .or_else(|| f.checks.as_ref().map(|c| c.joined()))
        .unwrap_or_else(|| "all".into());
    let checks = Check::parse_list(&checks)?;
    let max_subset_size = args.max_subset_size.or(f.max_subset_size).unwrap_or(usize::MAX);
    let fail = args.fail_on_findings || f.fail_on_findings.unwrap_or(false);
    let profile = load_profile(&r)?;
    let report = AuditReport::run(&profile, r.options, &checks, max_subset_size)?;
    emit(&r, &report)?;
    Ok(if fail && report.finding_count() > 0 {
        EXIT_FINDINGS
    } else {
        0
    })
}

fn init_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("RCV_FORENSICS_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            CliError::Usage(format!(
                "RCV_FORENSICS_THREADS must be a positive integer, got {value:?}"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|_| match cli.command {
        Command::Sanitize(a) => cmd_sanitize(a),
        Command::Tabulate(a) => cmd_tabulate(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Audit(a) => cmd_audit(a),
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("rcv-forensics: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
