use std::f64::consts::SQRT_2;

use qubit_monogamy::figures::{alpha_grid, eoa_bound_curve, w_residuals};

use crate::args::{Figure, FigureArgs};
use crate::manifest::RunManifest;
use crate::output::{csv_bytes, emit, num, opt_num};
use crate::Verdict;

pub fn run(args: &FigureArgs, manifest: &RunManifest) -> anyhow::Result<Verdict> {
    let (default_min, default_max) = match args.which {
        Figure::WResiduals => (2.0, 6.0),
        Figure::EoaBound => (SQRT_2, 4.0),
    };
    let grid = alpha_grid(
        args.alpha_min.unwrap_or(default_min),
        args.alpha_max.unwrap_or(default_max),
        args.points,
    )?;
    let bytes = match args.which {
        Figure::WResiduals => {
            let rows: Vec<Vec<String>> = w_residuals(&grid)?
                .iter()
                .map(|r| vec![num(r.alpha), opt_num(r.concurrence), num(r.eof)])
                .collect();
            csv_bytes(manifest, &["alpha", "tau_concurrence", "tau_eof"], &rows)?
        }
        Figure::EoaBound => {
            let rows: Vec<Vec<String>> = eoa_bound_curve(&grid)?
                .iter()
                .map(|r| vec![num(r.alpha), num(r.bound)])
                .collect();
            csv_bytes(manifest, &["alpha", "eoa_lower_bound"], &rows)?
        }
    };
    emit(&bytes, args.out.as_ref())?;
    Ok(Verdict::Clean)
}
