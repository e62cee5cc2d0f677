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


//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rcv_forensics::fixtures::{
    load_builtin_fixture, oakland_table1_profile, OAKLAND_FULL_SYNTHETIC, TABLE2_EXAMPLES,
};
use rcv_forensics::forensics::{
    audit, brute_force_oracle, find_spoilers, search_compromise, search_monotonicity,
    search_noshow, verify_witness, Edit, MonotonicityDirection, MonotonicityWitness, OracleBounds,
    Witness,
};
use rcv_forensics::methods::{
    borda_scores, condorcet_analysis, rcv_tabulate, BordaConfig, BordaModel, RcvOptions,
    RoundKind, TabulationResult,
};
use rcv_forensics::report::CompareReport;
use rcv_forensics::sanitize::{sanitize_all, sanitize_ballot};
use rcv_forensics::{Cand, CleanBallot, PreferenceProfile, SanitizePolicy};
use std::process::ExitCode;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const H: Cand = Cand(0);
const M: Cand = Cand(1);
const R: Cand = Cand(2);

fn tallies(r: &TabulationResult, round: usize, cands: &[Cand]) -> Vec<u64> {
    cands.iter().map(|&c| r.rounds[round].tally(c).unwrap_or(0)).collect()
}

fn synthetic() -> PreferenceProfile {
    load_builtin_fixture(OAKLAND_FULL_SYNTHETIC)
        .expect("builtin")
        .profile(SanitizePolicy::ALAMEDA)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c1_rounds() -> Outcome {
    let r = rcv_tabulate(&oakland_table1_profile(), RcvOptions::default()).map_err(err)?;
    ensure!(r.rounds.len() == 2, "expected 2 rounds, got {}", r.rounds.len());
    let first = tallies(&r, 0, &[H, M, R]);
    ensure!(first == [8227, 8190, 10015], "round 1 {first:?}");
    ensure!(r.rounds[0].eliminated == [M], "eliminated {:?}", r.rounds[0].eliminated);
    let t = &r.rounds[0].transfers[0];
    ensure!(
        t.from == M && t.to.get(&H) == Some(&4194) && t.to.get(&R) == Some(&2150),
        "transfers {t:?}"
    );
    let fin = tallies(&r, 1, &[H, R]);
    ensure!(fin == [12421, 12165], "final {fin:?}");
    ensure!(r.winner == H, "winner {}", r.winner);
    Ok("8227/8190/10015; M out; H +4194, R +2150; final 12421-12165; winner H".into())
}

fn c2_pairwise() -> Outcome {
    let m = oakland_table1_profile().pairwise_matrix();
    let got = [
        m.get(M, H),
        m.get(H, M),
        m.get(R, M),
        m.get(M, R),
        m.get(H, R),
        m.get(R, H),
    ];
    ensure!(
        got == [11370, 11322, 12352, 11753, 12421, 12165],
        "pairwise {got:?}"
    );
    let a = condorcet_analysis(&m);
    ensure!(a.condorcet_winner.is_none(), "unexpected Condorcet winner");
    ensure!(a.cycle == Some(vec![H, R, M]), "cycle {:?}", a.cycle);
    Ok("M>H 11370/11322, R>M 12352/11753, H>R 12421/12165; cycle H->R->M->H".into())
}

fn c3_bug() -> Outcome {
    let p = synthetic();
    ensure!(p.total() == 26569, "total {}", p.total());
    let buggy = rcv_tabulate(&p, RcvOptions::buggy()).map_err(err)?;
    ensure!(
        buggy.rounds[0].kind == RoundKind::WriteInElimination,
        "no write-in round in buggy mode"
    );
    let first = tallies(&buggy, 1, &[H, M, R]);
    ensure!(first == [8112, 8153, 9954], "buggy first official round {first:?}");
    ensure!(buggy.winner == R, "buggy winner {}", buggy.winner);
    let fin = tallies(&buggy, buggy.rounds.len() - 1, &[R, M]);
    ensure!(fin == [12352, 11753], "buggy final {fin:?}");

    let correct = rcv_tabulate(&p, RcvOptions::default()).map_err(err)?;
    let wi1 = p.roster().find("WI1").expect("WI1");
    let wround: Vec<u64> = tallies(&correct, 0, &[H, M, R, wi1]);
    ensure!(wround == [8147, 8176, 9977, 269], "write-in round {wround:?}");
    let official = tallies(&correct, 1, &[H, M, R]);
    ensure!(official == [8227, 8190, 10015], "first official round {official:?}");
    ensure!(correct.winner == H, "correct winner {}", correct.winner);
    Ok("buggy 8112/8153/9954 -> R 12352-11753; correct 8147/8176/9977/269 -> 8227/8190/10015 -> H".into())
}

fn c4_borda() -> Outcome {
    let p = oakland_table1_profile();
    let om = borda_scores(&p, BordaConfig::new(BordaModel::Optimistic, 3)).map_err(err)?;
    let pm = borda_scores(&p, BordaConfig::new(BordaModel::Pessimistic, 3)).map_err(err)?;
    let om: Vec<u64> = om.values().copied().collect();
    let pm: Vec<u64> = pm.values().copied().collect();
    ensure!(om == [29329, 29190, 28690], "optimistic {om:?}");
    ensure!(pm == [23743, 23123, 24517], "pessimistic {pm:?}");
    Ok("OM 29329/29190/28690; PM 23743/23123/24517".into())
}

/// Full-data Borda rows; needs the real cast vote record on disk.
fn c4_full_data() -> Option<Outcome> {
    let cvr = std::env::var_os("RCV_FORENSICS_REAL_CVR")?;
    let roster = std::env::var_os("RCV_FORENSICS_REAL_ROSTER")?;
    Some((|| {
        let roster = rcv_forensics::cvr::load_roster(std::fs::File::open(&roster).map_err(err)?)
            .map_err(err)?;
        let reader = std::io::BufReader::new(std::fs::File::open(&cvr).map_err(err)?);
        let ballots = rcv_forensics::cvr::parse_cvr(reader, &roster).map_err(err)?;
        let (p, _) = sanitize_all(&ballots, SanitizePolicy::ALAMEDA, &roster);
        let ids = ["H", "M", "R"].map(|id| p.roster().find(id).expect("roster has H, M, R"));
        let pick = |m| -> Result<Vec<u64>, String> {
            let s = borda_scores(&p, BordaConfig::new(m, 5)).map_err(err)?;
            Ok(ids.iter().map(|c| s[c]).collect())
        };
        let om = pick(BordaModel::Optimistic)?;
        let pm = pick(BordaModel::Pessimistic)?;
        ensure!(om == [82962, 82823, 82287], "optimistic {om:?}");
        ensure!(pm == [61969, 60831, 61480], "pessimistic {pm:?}");
        Ok("OM 82962/82823/82287; PM 61969/60831/61480".into())
    })())
}

fn mono(dir: MonotonicityDirection, ballot: &[Cand], t: u64, new_winner: Cand) -> Witness {
    let b = CleanBallot::new(ballot.to_vec());
    let (focal, modified) = match dir {
        MonotonicityDirection::Downward => (ballot[0], vec![ballot[1], ballot[0], ballot[2]]),
        MonotonicityDirection::Upward => (ballot[1], vec![ballot[1], ballot[0], ballot[2]]),
    };
    Witness::Monotonicity(MonotonicityWitness {
        direction: dir,
        focal_candidate: focal,
        ballot_type: b,
        modified_type: CleanBallot::new(modified),
        min_count: t,
        max_count: t,
        original_winner: H,
        new_winner,
    })
}

fn c5_witnesses() -> Outcome {
    let p = oakland_table1_profile();
    let opts = RcvOptions::default();
    let rmh = CleanBallot::new(vec![R, M, H]);
    let rhm = CleanBallot::new(vec![R, H, M]);

    let down = search_monotonicity(&p, opts, MonotonicityDirection::Downward).map_err(err)?;
    let d = down
        .witnesses
        .iter()
        .find(|w| w.ballot_type == rmh && w.modified_type == CleanBallot::new(vec![M, R, H]))
        .ok_or("no downward witness on R>M>H")?;
    ensure!(d.min_count == 38, "downward min_count {}", d.min_count);
    ensure!(
        verify_witness(&p, &mono(MonotonicityDirection::Downward, &[R, M, H], 40, R), opts).map_err(err)?,
        "t = 40 does not verify"
    );

    let up = search_monotonicity(&p, opts, MonotonicityDirection::Upward).map_err(err)?;
    let u = up
        .witnesses
        .iter()
        .find(|w| w.ballot_type == rhm && w.modified_type == CleanBallot::new(vec![H, R, M]))
        .ok_or("no upward witness on R>H>M")?;
    ensure!(u.min_count == 1826, "upward min_count {}", u.min_count);
    ensure!(
        verify_witness(&p, &mono(MonotonicityDirection::Upward, &[R, H, M], 2000, u.new_winner), opts)
            .map_err(err)?,
        "t = 2000 does not verify"
    );

    let comp = search_compromise(&p, opts).map_err(err)?;
    let c = comp
        .witnesses
        .iter()
        .find(|w| w.ballot_type == rmh && w.promoted_candidate == M && w.new_winner == M)
        .ok_or("no compromise witness promoting M on R>M>H")?;
    ensure!(c.count <= 1800, "compromise minimal count {} above 1800", c.count);
    let edited = Edit::Promote {
        ballot_type: rmh.clone(),
        candidate: M,
        count: 1800,
    }
    .apply(&p)
    .map_err(err)?;
    let r = rcv_tabulate(&edited, opts).map_err(err)?;
    let fin = tallies(&r, r.rounds.len() - 1, &[M, H]);
    ensure!(r.winner == M && fin == [11370, 11322], "1800-ballot compromise final {fin:?}");

    let s = synthetic();
    let bopts = RcvOptions::buggy();
    let noshow = search_noshow(&s, bopts).map_err(err)?;
    ensure!(
        noshow
            .witnesses
            .iter()
            .any(|w| w.ballot_type == CleanBallot::new(vec![M, H, R]) && w.count == 42),
        "no 42-ballot no-show witness on M>H>R"
    );
    let bup = search_monotonicity(&s, bopts, MonotonicityDirection::Upward).map_err(err)?;
    ensure!(
        bup.witnesses.iter().any(|w| w.min_count == 42),
        "no 42-ballot upward witness in buggy mode"
    );
    let bdown = search_monotonicity(&s, bopts, MonotonicityDirection::Downward).map_err(err)?;
    ensure!(
        bdown.witnesses.is_empty(),
        "buggy mode has {} downward witnesses",
        bdown.witnesses.len()
    );
    Ok(format!(
        "downward min 38 (t=40 ok), upward min 1826 (t=2000 ok), compromise M min {} (t=1800 -> 11370-11322); buggy: no-show 42, upward 42, no downward",
        c.count
    ))
}

fn c6_spoiler() -> Outcome {
    let p = oakland_table1_profile();
    let out = find_spoilers(&p, RcvOptions::default(), 1).map_err(err)?;
    let w = out
        .witnesses
        .iter()
        .find(|w| w.removed == [R])
        .ok_or("removing R is not a spoiler")?;
    ensure!(w.new_winner == M, "winner without R is {}", w.new_winner);
    Ok("removing R elects M".into())
}

fn c7_compare() -> Outcome {
    let t1 = CompareReport::run(&oakland_table1_profile(), RcvOptions::default()).map_err(err)?;
    let syn = CompareReport::run(&synthetic(), RcvOptions::default()).map_err(err)?;
    let winner = |r: &CompareReport, m: &str| r.row(m).and_then(|x| x.winner.clone()).unwrap_or_default();
    let expected = [
        ("plurality", "R"),
        ("rcv", "H"),
        ("borda-om", "H"),
        ("borda-pm", "R"),
        ("bucklin-2", "H"),
        ("minimax", "H"),
    ];
    for (m, w) in expected {
        ensure!(winner(&t1, m) == w, "{m}: {} (expected {w})", winner(&t1, m));
    }
    ensure!(winner(&syn, "runoff") == "R", "runoff with write-ins: {}", winner(&syn, "runoff"));
    ensure!(winner(&syn, "plurality") == "R", "synthetic plurality: {}", winner(&syn, "plurality"));
    ensure!(winner(&syn, "rcv") == "H", "synthetic rcv: {}", winner(&syn, "rcv"));
    Ok("plurality R, runoff (write-ins) R, rcv H, borda-om H, borda-pm R, bucklin-2 H, minimax H".into())
}

fn c8_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2022);

    // Sanitization idempotence on clean ballots.
    for _ in 0..1000 {
        let p = common::random_profile(&mut rng, 5, 1);
        let (b, _) = p.entries().next().expect("one ballot");
        let raw = rcv_forensics::cvr::RawBallot::ranked("x", &b.ranking);
        for policy in SanitizePolicy::all() {
            let clean = sanitize_ballot(&raw, policy, p.roster());
            let flag = b.ranking.first().is_none_or(|&c| p.roster().is_writein(c));
            ensure!(
                clean.ranking == b.ranking && clean.raw_first_invalid == flag,
                "sanitizing a clean ballot changed it"
            );
        }
    }

    let t2 = load_builtin_fixture(TABLE2_EXAMPLES).map_err(err)?;
    let counts = t2.profile(SanitizePolicy::ALAMEDA).ranking_counts();
    ensure!(
        counts.len() == 1 && counts.values().next() == Some(&6),
        "table2-examples rankings {counts:?}"
    );

    // Per-round conservation.
    let mut rounds = 0;
    for _ in 0..1000 {
        let p = common::random_profile(&mut rng, 6, 500);
        let opts = common::random_options(&mut rng);
        let Ok(r) = rcv_tabulate(&p, opts) else { continue };
        for round in &r.rounds {
            rounds += 1;
            ensure!(
                round.continuing_votes() + round.exhausted + round.pending == p.total(),
                "round {} of a random profile leaks ballots",
                round.number
            );
        }
    }

    // Borda dominance.
    for _ in 0..300 {
        let p = common::random_profile(&mut rng, 6, 200);
        let n = p.roster().len() as u32 + rand::Rng::gen_range(&mut rng, 0..3);
        let om = borda_scores(&p, BordaConfig::new(BordaModel::Optimistic, n.max(2))).map_err(err)?;
        let pm = borda_scores(&p, BordaConfig::new(BordaModel::Pessimistic, n.max(2))).map_err(err)?;
        ensure!(om.iter().all(|(c, v)| *v >= pm[c]), "optimistic below pessimistic");
    }

    // Oracle equivalence.
    let mut compared = 0;
    let mut with_findings = 0;
    let mut attempts = 0;
    while compared < 200 && attempts < 5000 {
        attempts += 1;
        let n = rand::Rng::gen_range(&mut rng, 3..=4);
        let p = common::random_profile_with(&mut rng, n, 10, 60);
        let opts = common::random_options(&mut rng);
        let oracle = brute_force_oracle(&p, opts, OracleBounds::default());
        let searched = audit(&p, opts, usize::MAX);
        ensure!(
            oracle == searched,
            "searches disagree with the oracle on {p:?} under {opts:?}"
        );
        if let Ok(f) = searched {
            compared += 1;
            with_findings += (f.witness_count() > 0) as usize;
        }
    }
    ensure!(compared >= 50, "only {compared} comparable random profiles");
    ensure!(with_findings > 0, "no random profile produced any witness");
    Ok(format!(
        "idempotence x1000, table2-examples -> A>B x6, conservation over {rounds} rounds, OM >= PM x300, oracle agreement on {compared} profiles ({with_findings} with findings)"
    ))
}

fn c9_discrepancy() -> Outcome {
    const REFERENCE: u64 = 598;
    let p = oakland_table1_profile();
    let out = search_monotonicity(&p, RcvOptions::default(), MonotonicityDirection::Downward)
        .map_err(err)?;
    let w = out
        .witnesses
        .iter()
        .find(|w| w.ballot_type == CleanBallot::new(vec![R, M, H]))
        .ok_or("no downward witness on R>M>H")?;
    ensure!(w.max_count == 299, "computed max_count {} (derived bound is 299)", w.max_count);
    ensure!(w.max_count != REFERENCE, "computed bound matches the reference figure");
    let just_past = Edit::Shift {
        ballot_type: w.ballot_type.clone(),
        candidate: R,
        direction: rcv_forensics::profile::Direction::Down,
        count: w.max_count + 1,
    }
    .apply(&p)
    .map_err(err)?;
    let beyond = rcv_tabulate(&just_past, RcvOptions::default()).map_err(err)?.winner;
    ensure!(beyond != R, "t = {} still elects R", w.max_count + 1);
    Ok(format!(
        "computed max_count {} vs reference figure {REFERENCE}: UNRESOLVED DISCREPANCY (t = {} elects {})",
        w.max_count,
        w.max_count + 1,
        p.roster().id(beyond)
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 round reproduction", c1_rounds),
        ("2 pairwise reproduction", c2_pairwise),
        ("3 bug replication", c3_bug),
        ("4 borda reproduction", c4_borda),
        ("5 paradox witnesses", c5_witnesses),
        ("6 spoiler reproduction", c6_spoiler),
        ("7 method disagreement", c7_compare),
        ("8 property suite", c8_properties),
        ("9 documented discrepancy", c9_discrepancy),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
        if name.starts_with('4') {
            match c4_full_data() {
                None => println!(
                    "SKIP  criterion 4 full-data rows: set RCV_FORENSICS_REAL_CVR and RCV_FORENSICS_REAL_ROSTER to run"
                ),
                Some(Ok(detail)) => println!("PASS  criterion 4 full-data rows: {detail}"),
                Some(Err(why)) => {
                    failed += 1;
                    println!("FAIL  criterion 4 full-data rows: {why}");
                }
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criterion check(s) failed");
        ExitCode::FAILURE
    }
}
