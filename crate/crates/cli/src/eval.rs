use serde::Serialize;

use qubit_monogamy::convexroof::RoofConfig;
use qubit_monogamy::measures::{
    coa_2q, concurrence_2q, concurrence_pure, eof_2q, eof_pure, three_tangle,
};
use qubit_monogamy::monogamy::{run_checks, MonogamyReport, TheoremId};
use qubit_monogamy::{Bipartition, PureState, RngSeed};

use crate::args::{expand, EvalArgs, Measure, TheoremArg};
use crate::manifest::RunManifest;
use crate::output::{emit, json_bytes, load_state_arg};
use crate::Verdict;

#[derive(Serialize)]
struct PairValue {
    partner: usize,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<bool>,
}

#[derive(Serialize)]
struct CutAndPairs {
    /// Focus qubit against all others.
    a_rest: f64,
    pairs: Vec<PairValue>,
}

#[derive(Default, Serialize)]
struct Measures {
    #[serde(skip_serializing_if = "Option::is_none")]
    concurrence: Option<CutAndPairs>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eof: Option<CutAndPairs>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tangle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coa: Option<Vec<PairValue>>,
}

#[derive(Serialize)]
struct StateInfo<'a> {
    descriptor: &'a str,
    n_qubits: usize,
}

#[derive(Serialize)]
struct EvalOutput<'a> {
    state: StateInfo<'a>,
    measures: Measures,
    report: MonogamyReport,
}

fn measures(psi: &PureState, a: usize, wanted: &[Measure]) -> anyhow::Result<Measures> {
    let n = psi.n_qubits();
    let cut = Bipartition::single(a, n)?;
    let partners: Vec<usize> = (0..n).filter(|&b| b != a).collect();
    let mut m = Measures::default();
    if wanted.contains(&Measure::Concurrence) {
        let pairs = partners
            .iter()
            .map(|&b| {
                let value = concurrence_2q(&psi.reduce(&[a, b])?)?;
                Ok(PairValue {
                    partner: b,
                    value,
                    exact: None,
                })
            })
            .collect::<anyhow::Result<_>>()?;
        m.concurrence = Some(CutAndPairs {
            a_rest: concurrence_pure(psi, &cut)?,
            pairs,
        });
    }
    if wanted.contains(&Measure::Eof) {
        let pairs = partners
            .iter()
            .map(|&b| {
                let value = eof_2q(&psi.reduce(&[a, b])?)?;
                Ok(PairValue {
                    partner: b,
                    value,
                    exact: None,
                })
            })
            .collect::<anyhow::Result<_>>()?;
        m.eof = Some(CutAndPairs {
            a_rest: eof_pure(psi, &cut)?,
            pairs,
        });
    }
    if wanted.contains(&Measure::Tangle) && n == 3 {
        m.tangle = Some(three_tangle(psi, a)?);
    }
    if wanted.contains(&Measure::Coa) {
        m.coa = Some(
            partners
                .iter()
                .map(|&b| {
                    let coa = coa_2q(&psi.reduce(&[a, b])?)?;
                    Ok(PairValue {
                        partner: b,
                        value: coa.value,
                        exact: Some(coa.exact),
                    })
                })
                .collect::<anyhow::Result<_>>()?,
        );
    }
    Ok(m)
}

fn default_theorems(n: usize) -> Vec<TheoremArg> {
    use TheoremArg::*;
    match n {
        0..=2 => vec![],
        3 => vec![Ckw, DualCkw, T1, T2, T4, T5, T6],
        _ => vec![Ckw, DualCkw, T1, T2, T4, T5],
    }
}

pub fn run(args: &EvalArgs, manifest: &RunManifest) -> anyhow::Result<Verdict> {
    let psi = load_state_arg(&args.state)?;
    let n = psi.n_qubits();
    anyhow::ensure!(n >= 2, "eval needs at least 2 qubits, got {n}");
    anyhow::ensure!(
        args.focus < n,
        "focus qubit {} out of range 0..{n}",
        args.focus
    );

    let theorems: Vec<TheoremId> = expand(args.theorems.as_deref().unwrap_or(&default_theorems(n)));
    let cfg = RoofConfig {
        restarts: args.roof.restarts,
        seed: RngSeed(args.roof_seed),
        ..RoofConfig::default()
    };
    let results = if theorems.is_empty() {
        Vec::new()
    } else {
        run_checks(&psi, args.focus, &theorems, args.alpha.as_deref(), &cfg)?
    };
    let mut alpha_grid: Vec<f64> = results.iter().map(|r| r.alpha).collect();
    alpha_grid.sort_by(f64::total_cmp);
    alpha_grid.dedup();

    let report = MonogamyReport {
        state_descriptor: args.state.clone(),
        focus_qubit: args.focus,
        alpha_grid,
        results,
    };
    let violation = report.has_violation();
    let body = EvalOutput {
        state: StateInfo {
            descriptor: &args.state,
            n_qubits: n,
        },
        measures: measures(&psi, args.focus, &args.measures)?,
        report,
    };
    let bytes = json_bytes(manifest, &body)?;
    emit(&bytes, None)?;
    if let Some(path) = &args.out {
        emit(&bytes, Some(path))?;
    }
    Ok(if violation {
        Verdict::Violation
    } else {
        Verdict::Clean
    })
}
