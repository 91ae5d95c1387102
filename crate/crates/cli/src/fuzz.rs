use qubit_monogamy::convexroof::RoofConfig;
use qubit_monogamy::fuzz::{run_campaign, FuzzConfig, FuzzOutcome, Witness};
use qubit_monogamy::monogamy::TheoremId;
use qubit_monogamy::RngSeed;

use crate::args::{expand, FuzzArgs};
use crate::manifest::RunManifest;
use crate::output::{csv_bytes, emit, num};
use crate::Verdict;

pub const HEADER: [&str; 7] = [
    "state_id", "theorem", "alpha", "lhs", "rhs", "margin", "outcome",
];

fn rows(outcome: &FuzzOutcome) -> Vec<Vec<String>> {
    outcome
        .rows
        .iter()
        .map(|row| {
            let r = &row.result;
            vec![
                row.state_id.to_string(),
                r.theorem.tag().to_string(),
                num(r.alpha),
                num(r.lhs),
                num(r.rhs),
                num(r.margin),
                r.outcome.tag().to_string(),
            ]
        })
        .collect()
}

fn witness(w: &Option<Witness>) -> String {
    w.as_ref().map_or("none".into(), |w| {
        format!("{} ({:+.6e})", w.reference, w.value)
    })
}

fn summary(outcome: &FuzzOutcome) -> String {
    let mut lines = Vec::new();
    for s in &outcome.summaries {
        let min = s.min_margin.map_or("n/a".into(), |m| {
            format!("{m:.6e} (state {})", s.min_state.unwrap_or(0))
        });
        let mut line = format!(
            "{}: {} checks, min margin {min}, {} violations, {} inconclusive",
            s.theorem, s.checks, s.violations, s.inconclusive
        );
        if s.theorem == TheoremId::T6iSquared {
            line.push_str(" (diagnostic, not counted)");
        }
        if s.vacuous > 0 {
            line.push_str(&format!(", {} vacuous", s.vacuous));
        }
        if s.theorem == TheoremId::T2 {
            line.push_str(&format!(
                ", {} strict, {} states filtered",
                s.strict, outcome.t2_filtered
            ));
        }
        lines.push(line);
    }
    if let Some(sign) = &outcome.sign {
        lines.push(format!(
            "sign witnesses at α={}: positive {}, negative {}",
            sign.alpha,
            witness(&sign.positive),
            witness(&sign.negative)
        ));
    }
    lines.join("\n")
}

pub fn run(args: &FuzzArgs, manifest: &RunManifest) -> anyhow::Result<Verdict> {
    let mut cfg = FuzzConfig::new(
        args.qubits as usize,
        args.count as usize,
        RngSeed(args.seed),
        expand(&args.theorems),
    );
    cfg.alphas = args.alphas.clone();
    cfg.focus = args.focus;
    cfg.t2_min_pair_concurrence = args.t2_min_concurrence;
    cfg.roof = RoofConfig {
        restarts: args.roof.restarts,
        ..RoofConfig::default()
    };
    let outcome = run_campaign(&cfg)?;
    emit(
        &csv_bytes(manifest, &HEADER, &rows(&outcome))?,
        args.out.as_ref(),
    )?;
    eprintln!("{}", summary(&outcome));
    Ok(if outcome.has_violation() {
        Verdict::Violation
    } else {
        Verdict::Clean
    })
}
