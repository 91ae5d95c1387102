use std::fmt::Write;

use serde::Serialize;

use qubit_monogamy::monogamy::{classify_pure3, Classification, DEFAULT_CLASSIFY_ALPHAS};

use crate::args::ClassifyArgs;
use crate::manifest::RunManifest;
use crate::output::{emit, json_bytes, load_state_arg};
use crate::Verdict;

#[derive(Serialize)]
struct ClassifyOutput<'a> {
    state: &'a str,
    note: Option<String>,
    #[serde(flatten)]
    classification: &'a Classification,
}

fn note(c: &Classification) -> Option<String> {
    c.detected_at.map(|a| {
        if a > 2.0 {
            "detected at α>2".to_string()
        } else {
            "detected at α=2".to_string()
        }
    })
}

fn table(state: &str, c: &Classification) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "state: {state}");
    let _ = writeln!(s, "label: {}", c.label);
    if let Some(n) = note(c) {
        let _ = writeln!(
            s,
            "note: {n} (first α = {})",
            c.detected_at.unwrap_or_default()
        );
    }
    let _ = writeln!(
        s,
        "purities: {:.12} {:.12} {:.12}",
        c.purities[0], c.purities[1], c.purities[2]
    );
    let _ = writeln!(s, "focus  alpha          residual");
    for r in &c.residuals {
        let _ = writeln!(s, "{:<6} {:<14} {:+.11e}", r.focus, r.alpha, r.value);
    }
    s
}

pub fn run(args: &ClassifyArgs, manifest: &RunManifest) -> anyhow::Result<Verdict> {
    let psi = load_state_arg(&args.state)?;
    let grid = args
        .alpha_grid
        .as_deref()
        .unwrap_or(&DEFAULT_CLASSIFY_ALPHAS);
    let c = classify_pure3(&psi, grid)?;
    let bytes = if args.json {
        json_bytes(
            manifest,
            &ClassifyOutput {
                state: &args.state,
                note: note(&c),
                classification: &c,
            },
        )?
    } else {
        let mut text = manifest.comment_lines();
        text.push_str(&table(&args.state, &c));
        text.into_bytes()
    };
    emit(&bytes, None)?;
    Ok(Verdict::Clean)
}
