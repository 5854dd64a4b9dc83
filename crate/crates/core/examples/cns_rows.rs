//! Prints the CNS case-study solution counts per constraint selection.
//! Usage: cns_rows [row ...] where row is like fp, pr+fp, pr+nr+tp.

use std::time::Instant;

use bnsynth_core::format::parse_problem;
use bnsynth_core::synthesis::{Mode, SynthesisOptions, SynthesisProblem};
use bnsynth_core::synthesize;

fn select(problem: &SynthesisProblem, row: &str) -> SynthesisProblem {
    let parts: Vec<&str> = row.split('+').collect();
    let has = |k: &str| parts.contains(&k);
    SynthesisProblem::new(
        problem.graph().clone(),
        problem.observations().to_vec(),
        if has("pr") { problem.pr().to_vec() } else { vec![] },
        if has("nr") { problem.nr().to_vec() } else { vec![] },
        if has("fp") { problem.fp().to_vec() } else { vec![] },
        if has("tp") { problem.tp().to_vec() } else { vec![] },
    )
    .unwrap()
}

fn main() {
    let text = include_str!("../data/cns.json");
    let (_, problem) = parse_problem(text).unwrap();
    println!("candidate space: {}", problem.candidate_space_size().unwrap());
    let rows: Vec<String> = std::env::args().skip(1).collect();
    let rows = if rows.is_empty() {
        vec!["fp".into(), "pr+fp".into(), "pr+nr+fp".into()]
    } else {
        rows
    };
    for row in rows {
        let sub = select(&problem, &row);
        let start = Instant::now();
        let outcome = synthesize(
            &sub,
            &SynthesisOptions { mode: Mode::Count, with_witness: false, ..Default::default() },
        )
        .unwrap();
        println!(
            "{row}: count = {} in {:.2}s (candidates {} leaves {} completions {} reach {})",
            outcome.count,
            start.elapsed().as_secs_f64(),
            outcome.stats.candidates_tried,
            outcome.stats.leaves_checked,
            outcome.stats.completions_tried,
            outcome.stats.reach_checks,
        );
    }
}
