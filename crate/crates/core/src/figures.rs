//! Data series behind the residual-versus-α and assistance-bound plots.

use serde::{Deserialize, Serialize};

use crate::measures::{residual_concurrence, residual_eof, CONCURRENCE_ALPHA_MIN, EOF_ALPHA_MIN};
use crate::monogamy::eoa_bound;
use crate::states::named_state;
use crate::{Error, Result};

/// `points` evenly spaced values from `min` to `max` inclusive; the last
/// value is exactly `max`.
pub fn alpha_grid(min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    if !(min.is_finite() && max.is_finite()) || min >= max {
        return Err(Error::Bounds(format!("α range [{min}, {max}] is empty")));
    }
    if points < 2 {
        return Err(Error::Bounds(format!(
            "need at least 2 points, got {points}"
        )));
    }
    let step = (max - min) / (points - 1) as f64;
    let mut grid: Vec<f64> = (0..points).map(|i| min + step * i as f64).collect();
    grid[points - 1] = max;
    Ok(grid)
}

fn require_min(grid: &[f64], floor: f64, regime: &'static str) -> Result<()> {
    match grid.iter().find(|&&a| a < floor) {
        Some(&alpha) => Err(Error::Regime { alpha, regime }),
        None => Ok(()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WResidualRow {
    pub alpha: f64,
    /// `τ^C_α(W)`; absent below α = 2.
    pub concurrence: Option<f64>,
    pub eof: f64,
}

/// Residual concurrence and EoF of the W state over `grid` (all α ≥ √2).
pub fn w_residuals(grid: &[f64]) -> Result<Vec<WResidualRow>> {
    require_min(grid, EOF_ALPHA_MIN, "α ≥ √2")?;
    let w = named_state("w3")?;
    grid.iter()
        .map(|&alpha| {
            let concurrence = if alpha >= CONCURRENCE_ALPHA_MIN {
                Some(residual_concurrence(&w, 0, alpha)?.value)
            } else {
                None
            };
            Ok(WResidualRow {
                alpha,
                concurrence,
                eof: residual_eof(&w, 0, alpha)?.value,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub alpha: f64,
    pub bound: f64,
}

/// Lower bound on `E_a(ρ_{AB})` of the GHZ-minus-W superposition over
/// `grid` (all α ≥ √2).
pub fn eoa_bound_curve(grid: &[f64]) -> Result<Vec<BoundRow>> {
    require_min(grid, EOF_ALPHA_MIN, "α ≥ √2")?;
    let psi = named_state("ghz_minus_w")?;
    grid.iter()
        .map(|&alpha| {
            Ok(BoundRow {
                alpha,
                bound: eoa_bound(&psi, 0, 1, alpha)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn grid_endpoints() {
        let g = alpha_grid(SQRT_2, 4.0, 7).unwrap();
        assert_eq!((g[0], g[6], g.len()), (SQRT_2, 4.0, 7));
        assert!(alpha_grid(2.0, 2.0, 3).is_err());
        assert!(alpha_grid(2.0, 3.0, 1).is_err());
        assert!(alpha_grid(f64::NAN, 3.0, 4).is_err());
    }

    #[test]
    fn w_residual_series() {
        let rows = w_residuals(&alpha_grid(SQRT_2, 6.0, 50).unwrap()).unwrap();
        assert_eq!(rows[0].concurrence, None);
        assert!(rows[0].eof > 0.0);
        let last = rows.last().unwrap();
        let expected = 64.0 / 27.0 * (8.0 / 27.0 - 2.0 / 27.0);
        assert!((last.concurrence.unwrap() - expected).abs() < 1e-12);

        let at2 = w_residuals(&[2.0]).unwrap()[0];
        assert!(at2.concurrence.unwrap().abs() < 1e-9);
        assert!(w_residuals(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn bound_curve_anchor_and_shape() {
        let rows = eoa_bound_curve(&alpha_grid(SQRT_2, 4.0, 41).unwrap()).unwrap();
        assert!((rows[0].bound - 0.623).abs() < 2e-3);
        assert!(rows.windows(2).all(|w| w[1].bound <= w[0].bound + 1e-9));
        assert!(eoa_bound_curve(&[1.2]).is_err());
    }
}
